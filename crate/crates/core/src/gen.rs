//! Deterministic random test data and the bundled geometries.
//!
//! Every generator draws from a `ChaCha8Rng`, so a seed fixes every case.
//! Sizes are kept small (low degree, few terms) because flow jets grow
//! quickly with the order.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::admissibility::extend_admissible;
use crate::field::{TimeDepVectorField, VectorField};
use crate::foliation::tangency_ideal;
use crate::geometry::{ObstructionSpec, Setup, SheafSpec, SubspaceY};
use crate::poly::{Monomial, Poly, Vars};
use crate::scalar::Scalar;
use crate::symplectic::{ham_field, ham_field_td, DarbouxSpace};

/// An RNG for one named stream under a global seed.
pub fn stream(seed: u64, label: &str) -> ChaCha8Rng {
    // FNV-1a keeps stream seeds stable across platforms and releases.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// Mostly small integers, sometimes halves, occasionally Gaussian.
pub fn coeff(rng: &mut impl Rng) -> Scalar {
    let mut n: i64 = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        n = -n;
    }
    match rng.gen_range(0..10) {
        0 => Scalar::gaussian(n, rng.gen_range(-2..=2)),
        1 | 2 => Scalar::from_frac(n, 2),
        _ => Scalar::from_int(n),
    }
}

fn monomial(rng: &mut impl Rng, nvars: usize, allowed: &[usize], deg: u32) -> Monomial {
    let mut e = vec![0u16; nvars];
    for _ in 0..deg {
        if let Some(&v) = allowed.choose(rng) {
            e[v] += 1;
        }
    }
    Monomial::from_exponents(&e)
}

/// Up to `terms` random terms of degree `≤ max_deg` in `allowed`.
pub fn poly(rng: &mut impl Rng, vars: &Arc<Vars>, allowed: &[usize], max_deg: u32, terms: usize) -> Poly {
    let mut p = Poly::zero(vars);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_deg);
        p = &p + &Poly::monomial(vars, monomial(rng, vars.len(), allowed, d), coeff(rng));
    }
    p
}

/// A random element of `I_Y^power`.
pub fn poly_in_ideal_power(rng: &mut impl Rng, vars: &Arc<Vars>, y: &SubspaceY, power: u32, extra_deg: u32, terms: usize) -> Poly {
    if power == 0 {
        return poly(rng, vars, &(0..y.dim()).collect::<Vec<_>>(), extra_deg, terms);
    }
    if y.vanishing().is_empty() {
        return Poly::zero(vars);
    }
    let all: Vec<usize> = (0..y.dim()).collect();
    let mut p = Poly::zero(vars);
    for _ in 0..terms {
        let lead = Poly::monomial(vars, monomial(rng, vars.len(), y.vanishing(), power), Scalar::from_int(1));
        p = &p + &(&lead * &poly(rng, vars, &all, extra_deg, 1));
    }
    p
}

pub fn field(rng: &mut impl Rng, vars: &Arc<Vars>, max_deg: u32, terms: usize) -> VectorField {
    let dim = vars.len() - 1;
    let chart: Vec<usize> = (0..dim).collect();
    VectorField::new(vars, (0..dim).map(|_| poly(rng, vars, &chart, max_deg, terms)).collect()).unwrap()
}

/// Components involve `x` and `t`, with `t`-degree at most `max_tdeg`.
pub fn td_field(rng: &mut impl Rng, vars: &Arc<Vars>, max_deg: u32, max_tdeg: u32, terms: usize) -> TimeDepVectorField {
    let mut out = TimeDepVectorField::zero(vars);
    for k in 0..=max_tdeg {
        out = out.add(&field(rng, vars, max_deg, terms).to_time_dep().times_t_pow(k));
    }
    out
}

/// A named bundled geometry.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub name: String,
    pub setup: Setup,
}

fn symplectic(name: &str, n: usize, vanishing: &[usize]) -> Geometry {
    let s = DarbouxSpace::new(n);
    let vars = s.vars();
    let y = SubspaceY::new(2 * n, vanishing).unwrap();
    Geometry { name: name.into(), setup: Setup::new(&vars, y, SheafSpec::Hamiltonian(s.clone()), ObstructionSpec::Perp(s)) }
}

pub fn symplectic_geometries() -> Vec<Geometry> {
    vec![
        symplectic("C2 Y={x=0}", 1, &[0]),
        symplectic("C4 Y={x1=x2=0}", 2, &[0, 1]),
        symplectic("C4 Y={x1=0}", 2, &[0]),
        symplectic("C4 Y={x1=y1=0}", 2, &[0, 2]),
    ]
}

fn foliation(name: &str, vars: &Arc<Vars>, gens: Vec<VectorField>, vanishing: &[usize], twisted: bool) -> Geometry {
    let y = SubspaceY::new(vars.len() - 1, vanishing).unwrap();
    let g = if twisted { ObstructionSpec::TangencyTwist(gens.clone()) } else { ObstructionSpec::FullRestriction };
    Geometry { name: name.into(), setup: Setup::new(vars, y, SheafSpec::FoliationSpan(gens), g) }
}

/// `span{(1, x)}` on `C²` with `Y = {y = 0}`.
pub fn parabola_foliation(twisted: bool) -> Geometry {
    let v = Vars::chart_named(["x", "y"]).unwrap();
    let x = Poly::var(&v, 0);
    let g = VectorField::new(&v, vec![Poly::one(&v), x]).unwrap();
    let name = if twisted { "span(1,x) Y={y=0} twisted" } else { "span(1,x) Y={y=0}" };
    foliation(name, &v, vec![g], &[1], twisted)
}

/// `span{(1,0,y), (0,1,x)}` on `C³` with `Y = {z = 0}`.
pub fn contact_like_foliation(twisted: bool) -> Geometry {
    let v = Vars::chart_named(["x", "y", "z"]).unwrap();
    let x = Poly::var(&v, 0);
    let y = Poly::var(&v, 1);
    let z0 = Poly::zero(&v);
    let g1 = VectorField::new(&v, vec![Poly::one(&v), z0.clone(), y]).unwrap();
    let g2 = VectorField::new(&v, vec![z0, Poly::one(&v), x]).unwrap();
    let name = if twisted { "span((1,0,y),(0,1,x)) Y={z=0} twisted" } else { "span((1,0,y),(0,1,x)) Y={z=0}" };
    foliation(name, &v, vec![g1, g2], &[2], twisted)
}

/// A rank-one foliation `e₁ + Σ a_j e_j` on `C³` with `Y = {x3 = 0}`;
/// rank one makes it involutive.
pub fn random_line_foliation(rng: &mut impl Rng) -> Geometry {
    let v = Vars::chart(3);
    let chart = [0, 1, 2];
    let comps = vec![Poly::one(&v), poly(rng, &v, &chart, 1, 2), poly(rng, &v, &chart, 1, 2)];
    let g = VectorField::new(&v, comps).unwrap();
    foliation("random line field Y={x3=0} twisted", &v, vec![g], &[2], true)
}

pub fn foliation_geometries() -> Vec<Geometry> {
    vec![parabola_foliation(true), contact_like_foliation(true), parabola_foliation(false), contact_like_foliation(false)]
}

fn free_and_all(setup: &Setup) -> Vec<usize> {
    (0..setup.dim()).collect()
}

/// A random time-independent field in `F`.
pub fn f_field(rng: &mut impl Rng, setup: &Setup) -> VectorField {
    let vars = &setup.vars;
    let all = free_and_all(setup);
    match &setup.sheaf {
        SheafSpec::FullTangent => field(rng, vars, 2, 2),
        SheafSpec::Hamiltonian(s) => ham_field(&poly(rng, vars, &all, 3, 3), s),
        SheafSpec::FoliationSpan(gens) => gens
            .iter()
            .fold(VectorField::zero(vars), |acc, g| acc.add(&g.mul_poly(&poly(rng, vars, &all, 1, 2)))),
        SheafSpec::ConstantSpan(gens) => {
            gens.iter().fold(VectorField::zero(vars), |acc, g| acc.add(&g.scale(&coeff(rng))))
        }
    }
}

/// A random `Δ ∈ F` with `Δ|_Y ∈ G`.
pub fn g_correction(rng: &mut impl Rng, setup: &Setup) -> VectorField {
    let vars = &setup.vars;
    let all = free_and_all(setup);
    match (&setup.sheaf, &setup.obstruction) {
        (SheafSpec::Hamiltonian(s), ObstructionSpec::Perp(_)) => {
            ham_field(&poly_in_ideal_power(rng, vars, &setup.y, 1, 2, 2), s)
        }
        (SheafSpec::FoliationSpan(gens), ObstructionSpec::TangencyTwist(_)) => {
            let ideal = tangency_ideal(gens, &setup.y);
            gens.iter().fold(VectorField::zero(vars), |acc, g| {
                let mut f = poly_in_ideal_power(rng, vars, &setup.y, 1, 1, 1);
                for h in &ideal.generators {
                    f = &f + &(h * &poly(rng, vars, &all, 1, 1));
                }
                acc.add(&g.mul_poly(&f))
            })
        }
        _ => f_field(rng, setup),
    }
}

/// A time-dependent `P ∈ F` whose `t`-coefficients vanish to high order
/// along `Y`, so that `A` and `A + P` share their `n`-jets on `Y` and their
/// admissibility defects there.
pub fn agreeing_perturbation(rng: &mut impl Rng, setup: &Setup, n: usize, max_tdeg: u32) -> TimeDepVectorField {
    let vars = &setup.vars;
    let mut out = TimeDepVectorField::zero(vars);
    for k in 0..=max_tdeg {
        let c = match &setup.sheaf {
            SheafSpec::Hamiltonian(s) => ham_field(&poly_in_ideal_power(rng, vars, &setup.y, n as u32 + 1, 1, 2), s),
            SheafSpec::FoliationSpan(gens) => gens.iter().fold(VectorField::zero(vars), |acc, g| {
                acc.add(&g.mul_poly(&poly_in_ideal_power(rng, vars, &setup.y, n as u32, 1, 1)))
            }),
            _ => {
                let dim = setup.dim();
                let comps = (0..dim).map(|_| poly_in_ideal_power(rng, vars, &setup.y, n as u32, 1, 1)).collect();
                VectorField::new(vars, comps).unwrap()
            }
        };
        out = out.add(&c.to_time_dep().times_t_pow(k));
    }
    out
}

/// An `n`-admissible field: a random seed in `F` extended `n − 1` times
/// with random corrections. Returns the field and the corrections used.
pub fn admissible_field(rng: &mut impl Rng, setup: &Setup, n: usize) -> (TimeDepVectorField, VectorField, Vec<VectorField>) {
    let seed = f_field(rng, setup);
    let mut a = seed.to_time_dep();
    let mut deltas = Vec::new();
    for k in 1..n {
        let d = g_correction(rng, setup);
        a = extend_admissible(&a, &d, k, setup).expect("generated data satisfies the extension hypotheses").field;
        deltas.push(d);
    }
    (a, seed, deltas)
}

/// A random time-dependent Hamiltonian field.
pub fn hamiltonian_td(rng: &mut impl Rng, space: &DarbouxSpace, max_deg: u32, max_tdeg: u32) -> TimeDepVectorField {
    let vars = space.vars();
    let chart: Vec<usize> = (0..space.dim()).collect();
    let t = space.dim();
    let mut h = Poly::zero(&vars);
    for k in 0..=max_tdeg {
        h = &h + &poly(rng, &vars, &chart, max_deg, 2).mul_var_pow(t, k as u16);
    }
    ham_field_td(&h, space)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let v = Vars::chart(2);
        let a = poly(&mut stream(7, "a"), &v, &[0, 1], 3, 4);
        let b = poly(&mut stream(7, "a"), &v, &[0, 1], 3, 4);
        assert_eq!(a, b);
    }

    #[test]
    fn bundled_geometries_are_consistent() {
        for g in symplectic_geometries().into_iter().chain(foliation_geometries()) {
            assert!(g.setup.sheaf.check_bracket_closed(None).unwrap().closed(), "{}", g.name);
            for c in g.setup.obstruction.check_within(&g.setup.sheaf, &g.setup.y, None).unwrap() {
                assert!(c.is_member(), "{}", g.name);
            }
        }
    }

    #[test]
    fn generated_corrections_are_valid() {
        let mut rng = stream(1, "corrections");
        for g in symplectic_geometries().into_iter().chain(foliation_geometries()) {
            for _ in 0..3 {
                let d = g_correction(&mut rng, &g.setup);
                assert!(g.setup.sheaf.contains_field(&d, None).is_member(), "{}", g.name);
                assert!(g.setup.g_membership(&g.setup.restrict(&d)).is_member(), "{}", g.name);
            }
        }
    }
}
