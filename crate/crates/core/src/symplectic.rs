//! Standard Darboux space `(C^{2N}, ω = Σ dx_i ∧ dy_i)` and Hamiltonian
//! vector fields, with `ι_{X_H} ω = dH`, so `X_H = (∂H/∂y, −∂H/∂x)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{TimeDepVectorField, VectorField};
use crate::geometry::{MembershipCertificate, SubspaceY};
use crate::jet::{flow_jet, TangentFieldOnY};
use crate::poly::{Poly, Vars};
use crate::scalar::Scalar;

/// Coordinates `x₁..x_N, y₁..y_N` followed by `t`. For `N = 1` they are
/// named `x, y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DarbouxSpace {
    n: usize,
    vars: Arc<Vars>,
}

impl DarbouxSpace {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "half-dimension must be positive");
        let names: Vec<String> = if n == 1 {
            vec!["x".into(), "y".into()]
        } else {
            (1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("y{i}"))).collect()
        };
        DarbouxSpace { n, vars: Vars::chart_named(names).expect("distinct names") }
    }

    /// Use a caller-supplied chart; the first half of the chart variables
    /// pair with the second half.
    pub fn with_vars(vars: &Arc<Vars>) -> Result<Self> {
        let dim = vars.len().checked_sub(1).filter(|d| d % 2 == 0 && *d > 0);
        match (dim, vars.time()) {
            (Some(d), Some(t)) if t == d => Ok(DarbouxSpace { n: d / 2, vars: vars.clone() }),
            _ => Err(Error::Invalid("a Darboux chart needs an even number of coordinates followed by t".into())),
        }
    }

    pub fn half_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn vars(&self) -> Arc<Vars> {
        self.vars.clone()
    }

    /// The coordinate paired with `i` by ω.
    pub fn partner(&self, i: usize) -> usize {
        if i < self.n {
            i + self.n
        } else {
            i - self.n
        }
    }

    /// `ω(e_i, e_j)`.
    pub fn omega(&self, i: usize, j: usize) -> i64 {
        if j == i + self.n && i < self.n {
            1
        } else if i == j + self.n && j < self.n {
            -1
        } else {
            0
        }
    }
}

fn ham_components(h: &Poly, space: &DarbouxSpace) -> Vec<Poly> {
    let n = space.n;
    (0..2 * n).map(|i| if i < n { h.partial(i + n) } else { -h.partial(i - n) }).collect()
}

/// `X_H`; `H` must not involve `t`.
pub fn ham_field(h: &Poly, space: &DarbouxSpace) -> VectorField {
    VectorField::new(&space.vars, ham_components(h, space)).expect("Hamiltonian must be time-independent")
}

/// `X_{H_t}` for a time-dependent Hamiltonian.
pub fn ham_field_td(h: &Poly, space: &DarbouxSpace) -> TimeDepVectorField {
    TimeDepVectorField::new(&space.vars, ham_components(h, space)).expect("Darboux chart")
}

/// The bracket with `[X_H, X_K] = X_{{H,K}}`:
/// `{H, K} = Σ ∂H/∂y_i·∂K/∂x_i − ∂H/∂x_i·∂K/∂y_i`.
pub fn poisson_bracket(h: &Poly, k: &Poly, space: &DarbouxSpace) -> Poly {
    let n = space.n;
    (0..n).fold(Poly::zero(&space.vars), |acc, i| {
        let a = &h.partial(i + n) * &k.partial(i);
        let b = &h.partial(i) * &k.partial(i + n);
        &(&acc + &a) - &b
    })
}

/// Coefficients of `ι_A ω = Σ A^{x_i} dy_i − A^{y_i} dx_i`, one per
/// coordinate differential.
pub fn contraction(components: &[Poly], space: &DarbouxSpace) -> Vec<Poly> {
    let n = space.n;
    (0..2 * n).map(|i| if i < n { -&components[i + n] } else { components[i - n].clone() }).collect()
}

/// `Σ a_j dz_j` is closed in the directions `idx`.
pub fn is_closed(form: &[Poly], idx: &[usize]) -> bool {
    first_non_closed(form, idx).is_none()
}

fn first_non_closed(form: &[Poly], idx: &[usize]) -> Option<(usize, usize)> {
    for (a, &j) in idx.iter().enumerate() {
        for &k in &idx[a + 1..] {
            if form[k].partial(j) != form[j].partial(k) {
                return Some((j, k));
            }
        }
    }
    None
}

/// Primitive of a closed form in the directions `idx` by the straight-line
/// homotopy: `c·z^μ dz_j ↦ c·z^μ·z_j/(|μ|+1)`, where `|μ|` counts only those
/// directions. Other variables are parameters.
pub fn primitive(form: &[Poly], idx: &[usize]) -> Poly {
    let vars = form[0].vars().clone();
    let mut g = Poly::zero(&vars);
    for &j in idx {
        for (m, c) in form[j].terms() {
            let deg: u32 = idx.iter().map(|&i| m.exp(i) as u32).sum();
            let mut mm = m.clone();
            mm.0[j] += 1;
            let term = Poly::monomial(&vars, mm, c * &Scalar::from_frac(1, deg as i64 + 1));
            g = &g + &term;
        }
    }
    g
}

/// Hamiltonian iff `ι_A ω` is closed; members carry a primitive `H` with
/// `X_H = A` as witness.
pub fn is_hamiltonian(a: &VectorField, space: &DarbouxSpace) -> MembershipCertificate {
    if a.dim() != space.dim() {
        return MembershipCertificate::NonMember { reason: format!("field has dimension {}, space has {}", a.dim(), space.dim()) };
    }
    let form = contraction(a.components(), space);
    let all: Vec<usize> = (0..space.dim()).collect();
    if let Some((j, k)) = first_non_closed(&form, &all) {
        let names = space.vars.names();
        return MembershipCertificate::NonMember {
            reason: format!("d(ι_A ω) has a nonzero d{}∧d{} component", names[j], names[k]),
        };
    }
    let h = primitive(&form, &all);
    if ham_field(&h, space) != *a {
        return MembershipCertificate::Inconclusive { reason: "primitive does not reproduce the field".into() };
    }
    MembershipCertificate::Member { witness: vec![h] }
}

/// A 1-form along `Y`: one coefficient per ambient coordinate differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFormOnY {
    pub y: SubspaceY,
    pub coeffs: Vec<Poly>,
}

impl OneFormOnY {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }
}

/// `η = ω(A, ·)` along `Y` and its pull-back `ξ` to `Y`.
pub fn contraction_forms(v: &TangentFieldOnY, space: &DarbouxSpace) -> (OneFormOnY, OneFormOnY) {
    let y = v.subspace().clone();
    let eta = contraction(v.components(), space);
    let xi = eta.iter().enumerate().map(|(i, c)| if y.is_vanishing(i) { Poly::zero(c.vars()) } else { c.clone() }).collect();
    (OneFormOnY { y: y.clone(), coeffs: eta }, OneFormOnY { y, coeffs: xi })
}

/// `G = g + Σ_s η_s·z_s` with `dg = ξ` on `Y` and `s` over the vanishing
/// coordinates; then `X_G|_Y = A`.
pub fn hamiltonian_extension(v: &TangentFieldOnY, space: &DarbouxSpace) -> Result<Poly> {
    let y = v.subspace();
    if y.dim() != space.dim() {
        return Err(Error::DimensionMismatch { expected: space.dim(), found: y.dim() });
    }
    let (eta, xi) = contraction_forms(v, space);
    let free = y.free();
    if let Some((j, k)) = first_non_closed(&xi.coeffs, &free) {
        let names = space.vars.names();
        return Err(Error::Hypothesis(format!("ξ is not closed: dξ has a nonzero d{}∧d{} component", names[j], names[k])));
    }
    let mut g = primitive(&xi.coeffs, &free);
    for &s in y.vanishing() {
        g = &g + &eta.coeffs[s].mul_var_pow(s, 1);
    }
    let back = TangentFieldOnY::restrict(&ham_field(&g, space), y);
    if back != *v {
        return Err(Error::Invalid(format!("extension {g} restricts to {back}, not {v}")));
    }
    Ok(g)
}

/// `ω(v, e) = 0` along `Y` for every coordinate direction `e` of `Y`,
/// i.e. `ξ = 0`.
pub fn perp_membership(v: &TangentFieldOnY, space: &DarbouxSpace) -> MembershipCertificate {
    let (_, xi) = contraction_forms(v, space);
    match xi.coeffs.iter().position(|c| !c.is_zero()) {
        None => MembershipCertificate::Member { witness: v.components().to_vec() },
        Some(i) => MembershipCertificate::NonMember {
            reason: format!("ω(v, ∂/∂{}) = {} is not zero on Y", space.vars.name(i), xi.coeffs[i]),
        },
    }
}

#[derive(Clone, Debug)]
pub struct BracketPerpReport {
    pub bracket: VectorField,
    pub restricted: TangentFieldOnY,
    pub certificate: MembershipCertificate,
}

/// For Hamiltonian `F`, `G` agreeing along `Y`, `[F, G]|_Y` is perpendicular to `Y`.
pub fn check_bracket_perp(f: &VectorField, g: &VectorField, y: &SubspaceY, space: &DarbouxSpace) -> Result<BracketPerpReport> {
    for (name, a) in [("first", f), ("second", g)] {
        if !is_hamiltonian(a, space).is_member() {
            return Err(Error::Hypothesis(format!("{name} field {a} is not Hamiltonian")));
        }
    }
    if TangentFieldOnY::restrict(f, y) != TangentFieldOnY::restrict(g, y) {
        return Err(Error::Hypothesis("fields differ along Y".into()));
    }
    let bracket = f.bracket(g)?;
    let restricted = TangentFieldOnY::restrict(&bracket, y);
    let certificate = perp_membership(&restricted, space);
    Ok(BracketPerpReport { bracket, restricted, certificate })
}

/// `Φ_t^*ω − ω` modulo `t^{n+1}` for `Φ` the order-`n` flow jet of `A`, as
/// a matrix of coefficients `(i, j)`.
pub fn pullback_form_along_flow(a: &TimeDepVectorField, n: usize, space: &DarbouxSpace) -> Result<Vec<Vec<Poly>>> {
    for (k, c) in a.time_coefficients().iter().enumerate() {
        if !is_hamiltonian(c, space).is_member() {
            return Err(Error::Hypothesis(format!("coefficient of t^{k} is not Hamiltonian")));
        }
    }
    let dim = space.dim();
    let t = dim;
    let jet = flow_jet(a, n);
    let phi: Vec<Poly> = (0..dim).map(|i| jet.coordinate(i)).collect();
    // jac[k][i] = ∂Φ_k/∂x_i
    let jac: Vec<Vec<Poly>> = phi.iter().map(|p| (0..dim).map(|i| p.partial(i)).collect()).collect();
    let vars = space.vars();
    let mut out = vec![vec![Poly::zero(&vars); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Poly::zero(&vars);
            for k in 0..space.n {
                let l = k + space.n;
                let p = jac[k][i].mul_truncated(&jac[l][j], t, n as u32);
                let q = jac[k][j].mul_truncated(&jac[l][i], t, n as u32);
                acc = &acc + &(&p - &q);
            }
            out[i][j] = &acc - &Poly::constant(&vars, Scalar::from_int(space.omega(i, j)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> (DarbouxSpace, Poly, Poly) {
        let s = DarbouxSpace::new(1);
        let v = s.vars();
        (s, Poly::var(&v, 0), Poly::var(&v, 1))
    }

    #[test]
    fn hamiltonian_of_coordinate() {
        let (s, x, _) = c2();
        let v = s.vars();
        assert_eq!(ham_field(&x, &s).components(), &[Poly::zero(&v), -Poly::one(&v)]);
        assert!(ham_field(&Poly::constant(&v, Scalar::from_int(7)), &s).is_zero());
    }

    #[test]
    fn poisson_compatibility() {
        let s = DarbouxSpace::new(2);
        let v = s.vars();
        let z: Vec<Poly> = (0..4).map(|i| Poly::var(&v, i)).collect();
        let h = &(&z[0] * &z[3]) + &z[1].pow(2);
        let k = &(&z[2] * &z[1]) + &(&z[0].pow(2) * &z[2]);
        let lhs = ham_field(&h, &s).bracket(&ham_field(&k, &s)).unwrap();
        assert_eq!(lhs, ham_field(&poisson_bracket(&h, &k, &s), &s));
    }

    #[test]
    fn hamiltonian_recognition() {
        let (s, x, y) = c2();
        let v = s.vars();
        let h = &(&x * &y) + &x.pow(3);
        let cert = is_hamiltonian(&ham_field(&h, &s), &s);
        assert_eq!(ham_field(&cert.witness().unwrap()[0], &s), ham_field(&h, &s));
        let bad = VectorField::new(&v, vec![x.clone(), Poly::zero(&v)]).unwrap();
        assert!(!is_hamiltonian(&bad, &s).is_member());
        assert!(is_hamiltonian(&VectorField::zero(&v), &s).is_member());
    }

    #[test]
    fn worked_extension() {
        let (s, x, y) = c2();
        let v = s.vars();
        let sub = SubspaceY::new(2, &[0]).unwrap();
        let a = TangentFieldOnY::new(&sub, vec![Poly::one(&v), y.clone()]).unwrap();
        let (eta, xi) = contraction_forms(&a, &s);
        assert_eq!(eta.coeffs, vec![-&y, Poly::one(&v)]);
        assert_eq!(xi.coeffs, vec![Poly::zero(&v), Poly::one(&v)]);
        let g = hamiltonian_extension(&a, &s).unwrap();
        assert_eq!(g, &y - &(&x * &y));
        assert_eq!(ham_field(&g, &s).components(), &[&Poly::one(&v) - &x, y]);
        assert!(hamiltonian_extension(&TangentFieldOnY::zero(&sub, &v), &s).unwrap().is_zero());
    }

    #[test]
    fn non_closed_xi_is_rejected() {
        let s = DarbouxSpace::new(2);
        let v = s.vars();
        let x2 = Poly::var(&v, 1);
        let sub = SubspaceY::new(4, &[0]).unwrap();
        // ξ = x2·dy1 on Y = {x1 = 0}: not closed.
        let a = TangentFieldOnY::new(&sub, vec![Poly::zero(&v), Poly::zero(&v), Poly::zero(&v), Poly::zero(&v)]).unwrap();
        assert!(hamiltonian_extension(&a, &s).is_ok());
        let b = TangentFieldOnY::new(&sub, vec![x2, Poly::zero(&v), Poly::zero(&v), Poly::zero(&v)]).unwrap();
        assert!(matches!(hamiltonian_extension(&b, &s), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn bracket_of_agreeing_pair_is_perp() {
        let (s, x, y) = c2();
        let sub = SubspaceY::new(2, &[0]).unwrap();
        let f = ham_field(&(&x * &y), &s);
        let g = ham_field(&(&(&x * &y) + &(&x.pow(2) * &y)), &s);
        let r = check_bracket_perp(&f, &g, &sub, &s).unwrap();
        // X_{xy} = (x, −y), X_{xy + x²y} = (x + x², −y − 2xy).
        assert_eq!(r.bracket.components(), &[x.pow(2), (&x * &y).scale(&Scalar::from_int(-2))]);
        assert!(r.restricted.is_zero());
        assert!(r.certificate.is_member());
        assert!(check_bracket_perp(&f, &f, &sub, &s).unwrap().certificate.is_member());
    }

    #[test]
    fn flow_preserves_omega() {
        let (s, x, y) = c2();
        let v = s.vars();
        let t = Poly::var(&v, 2);
        let a = ham_field_td(&(&(&x * &y) + &(&t * &x.pow(2))), &s);
        for row in pullback_form_along_flow(&a, 3, &s).unwrap() {
            assert!(row.iter().all(Poly::is_zero));
        }
        let bad = TimeDepVectorField::new(&v, vec![x, Poly::zero(&v)]).unwrap();
        assert!(pullback_form_along_flow(&bad, 2, &s).is_err());
    }
}
