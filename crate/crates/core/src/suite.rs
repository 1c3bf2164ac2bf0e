//! The randomized invariant suite behind `verify-paper`.
//!
//! Each check draws its cases from a named stream under one global seed, so
//! a report depends only on the seed and the case counts. Cases may run in
//! parallel; results are collected in case order.

use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::admissibility::{
    admissibility_defect, check_extension, derivative_shift_residual, extend_admissible, extension_congruences, mixed_sequence_check,
    difference_in_g,
};
use crate::error::{Error, Result};
use crate::field::{
    iterated_lie_d, iterated_lie_on_dt, iterated_lie_on_dt_product, lie_bracket, lie_d, DtTaggedField, TimeDepVectorField, VectorField,
};
use crate::foliation::{check_foliation_bracket, tangency_ideal, velocity_in_foliation};
use crate::gen::{self, Geometry};
use crate::geometry::{MembershipCertificate, ObstructionSpec, Setup, SheafSpec, SubspaceY};
use crate::jet::{difference_formula, flow_jet, jet_difference, TangentFieldOnY};
use crate::lifting::{cech_cocycle, cech_glue, default_splitting, lift_to_order, DeformationProblem};
use crate::parse::parse_poly;
use crate::poly::{Poly, Vars};
use crate::scalar::Scalar;
use crate::series::substitute_time_curve;
use crate::symplectic::{
    check_bracket_perp, contraction, ham_field, hamiltonian_extension, pullback_form_along_flow, poisson_bracket, DarbouxSpace,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Overrides the per-check case count of every randomized check.
    pub cases: Option<usize>,
    pub jobs: usize,
    pub degree_bound: Option<u32>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 42, cases: None, jobs: 1, degree_bound: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub criterion: Option<u8>,
    pub description: String,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    /// The first few failing or inconclusive cases with reasons.
    pub problems: Vec<String>,
}

impl CheckReport {
    pub fn green(&self) -> bool {
        self.failed == 0 && self.inconclusive == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub checks: Vec<CheckReport>,
    pub total_cases: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

impl SuiteReport {
    pub fn all_green(&self) -> bool {
        self.failed == 0 && self.inconclusive == 0
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Pass,
    Fail(String),
    Inconclusive(String),
}

use Outcome::{Fail, Pass};

fn verdict(cert: &MembershipCertificate, what: &str) -> Outcome {
    match cert {
        MembershipCertificate::Member { .. } => Pass,
        MembershipCertificate::NonMember { reason } => Fail(format!("{what}: non-member ({reason})")),
        MembershipCertificate::Inconclusive { reason } => Outcome::Inconclusive(format!("{what}: {reason}")),
    }
}

/// Combine outcomes; the first failure wins over inconclusive.
fn all(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
    let mut pending = Pass;
    for o in outcomes {
        match o {
            Fail(_) => return o,
            Outcome::Inconclusive(_) if matches!(pending, Pass) => pending = o,
            _ => {}
        }
    }
    pending
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Pass
    } else {
        Fail(msg())
    }
}

type CaseFn = fn(&mut ChaCha8Rng, usize, &SuiteConfig) -> Result<Outcome>;

struct Check {
    name: &'static str,
    criterion: Option<u8>,
    description: &'static str,
    default_cases: usize,
    /// Fixed checks ignore the `cases` override.
    fixed: bool,
    run: CaseFn,
}

const MAX_PROBLEMS: usize = 5;

fn checks() -> Vec<Check> {
    macro_rules! c {
        ($name:expr, $crit:expr, $cases:expr, $fixed:expr, $f:expr, $desc:expr) => {
            Check { name: $name, criterion: $crit, description: $desc, default_cases: $cases, fixed: $fixed, run: $f }
        };
    }
    vec![
        c!("lie-calculus", Some(1), 100, false, case_lie_calculus, "bracket with t^n B and the D(A)-derivative of t^n/n! B; product-manifold oracle"),
        c!("difference-formula", Some(2), 90, false, case_difference_formula, "(n+1)-jet gap of pairs with equal n-jets equals the iterated-derivative formula, n = 1, 2, 3"),
        c!("extension", Some(3), 60, false, case_extension, "extension is (n+1)-admissible, keeps the n-jet, adds the correction; congruences and derivative shift, n = 1, 2"),
        c!("difference-in-g", Some(4), 60, false, case_difference_in_g, "(n+1)-jet difference of admissible pairs with equal n-jets lies in G"),
        c!("mixed-sequences", Some(5), 10, false, case_mixed_sequences, "every mixed {D(A), D(B)} sequence of length n <= 3 lands in G"),
        c!("lifting", Some(6), 20, false, case_lifting, "order-4 lifting: admissible, seed preserved, per-order differences equal corrections"),
        c!("cech", Some(6), 10, false, case_cech, "3-chart cocycle: antisymmetry, cocycle identity, G-membership, gluing"),
        c!("hamiltonian-extension", Some(7), 30, false, case_ham_extension, "the Hamiltonian extension reproduces the field on Y"),
        c!("bracket-perp", Some(7), 30, false, case_bracket_perp, "bracket of Hamiltonian fields agreeing on Y lies in the perp module"),
        c!("omega-pullback", Some(7), 20, false, case_omega_pullback, "the flow of a Hamiltonian field preserves omega mod t^(n+1), n <= 4"),
        c!("foliation-examples", Some(8), 1, true, case_foliation_examples, "tangency ideal of span(1,x) along y = 0 and the bracket [A, (1+y)A] = xA"),
        c!("velocity", Some(8), 20, false, case_velocity, "flow velocity lies in the transported foliation mod t^4"),
        c!("ring-axioms", None, 50, false, case_ring_axioms, "ring axioms, Leibniz rule, restriction and evaluation homomorphisms, parse round trip"),
        c!("substitution", None, 30, false, case_substitution, "substitution is a ring homomorphism"),
        c!("jacobi", None, 30, false, case_jacobi, "Jacobi identity for chart and product brackets"),
        c!("hering", None, 20, false, case_hering, "expansion of ad^(m-1)_{D(A)} D(B) acting on a test field"),
        c!("dt-sign", None, 30, false, case_dt_sign, "iterated derivatives applied to d/dt agree with the product oracle and with the self-derivative up to sign"),
        c!("flow-ode", None, 20, false, case_flow_ode, "flow jets solve the defining ODE and truncate compatibly"),
        c!("obstruction-axiom", None, 24, false, case_obstruction_axiom, "brackets of F-fields agreeing on Y restrict into G; restrictions of F lie in F_Y"),
        c!("g-module", None, 24, false, case_g_module, "G is closed under addition and scaling"),
        c!("sheaf-closure", None, 8, true, case_sheaf_closure, "bundled sheaves are bracket closed and G lies in F_Y"),
        c!("poisson", None, 30, false, case_poisson, "[X_H, X_K] = X_{H,K} and contraction of X_H with omega is dH"),
        c!("defect-sign", None, 30, false, case_defect_sign, "admissibility defects are minus the iterated derivatives of d/dt"),
    ]
}

pub fn check_names() -> Vec<&'static str> {
    checks().iter().map(|c| c.name).collect()
}

fn run_case(check: &Check, i: usize, cfg: &SuiteConfig) -> Outcome {
    let mut rng = gen::stream(cfg.seed, &format!("{}/{i}", check.name));
    match catch_unwind(AssertUnwindSafe(|| (check.run)(&mut rng, i, cfg))) {
        Ok(Ok(o)) => o,
        Ok(Err(e)) => Fail(format!("error: {e}")),
        Err(p) => Fail(format!("panic: {}", p.downcast_ref::<String>().map(String::as_str).or(p.downcast_ref::<&str>().copied()).unwrap_or("?"))),
    }
}

fn run_one(check: &Check, cfg: &SuiteConfig) -> CheckReport {
    let n = if check.fixed { check.default_cases } else { cfg.cases.unwrap_or(check.default_cases) };
    let case = |i: usize| run_case(check, i, cfg);
    let outcomes: Vec<Outcome> = if cfg.jobs > 1 { (0..n).into_par_iter().map(case).collect() } else { (0..n).map(case).collect() };
    let mut report = CheckReport {
        name: check.name.into(),
        criterion: check.criterion,
        description: check.description.into(),
        cases: n,
        passed: 0,
        failed: 0,
        inconclusive: 0,
        problems: Vec::new(),
    };
    for (i, o) in outcomes.into_iter().enumerate() {
        let msg = match o {
            Pass => {
                report.passed += 1;
                continue;
            }
            Fail(m) => {
                report.failed += 1;
                m
            }
            Outcome::Inconclusive(m) => {
                report.inconclusive += 1;
                format!("inconclusive: {m}")
            }
        };
        if report.problems.len() < MAX_PROBLEMS {
            report.problems.push(format!("case {i}: {msg}"));
        }
    }
    report
}

fn with_pool<T: Send>(cfg: &SuiteConfig, f: impl FnOnce() -> T + Send) -> T {
    if cfg.jobs > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build() {
            Ok(pool) => return pool.install(f),
            Err(_) => return f(),
        }
    }
    f()
}

/// Run one named check.
pub fn run_check(name: &str, cfg: &SuiteConfig) -> Result<CheckReport> {
    let check = checks().into_iter().find(|c| c.name == name).ok_or_else(|| Error::Invalid(format!("unknown check `{name}`")))?;
    Ok(with_pool(cfg, || run_one(&check, cfg)))
}

/// Case `i` of a named check on its own, for reproducing a failure.
pub fn run_single(name: &str, i: usize, cfg: &SuiteConfig) -> Result<Outcome> {
    let check = checks().into_iter().find(|c| c.name == name).ok_or_else(|| Error::Invalid(format!("unknown check `{name}`")))?;
    Ok(run_case(&check, i, cfg))
}

/// All checks for one criterion.
pub fn run_criterion(criterion: u8, cfg: &SuiteConfig) -> Vec<CheckReport> {
    let list: Vec<Check> = checks().into_iter().filter(|c| c.criterion == Some(criterion)).collect();
    with_pool(cfg, || list.iter().map(|c| run_one(c, cfg)).collect())
}

pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let list = checks();
    let reports: Vec<CheckReport> = with_pool(cfg, || list.iter().map(|c| run_one(c, cfg)).collect());
    SuiteReport {
        seed: cfg.seed,
        total_cases: reports.iter().map(|r| r.cases).sum(),
        failed: reports.iter().map(|r| r.failed).sum(),
        inconclusive: reports.iter().map(|r| r.inconclusive).sum(),
        checks: reports,
    }
}

fn random_subspace(rng: &mut ChaCha8Rng, dim: usize) -> SubspaceY {
    let mut idx: Vec<usize> = (0..dim).collect();
    idx.shuffle(rng);
    let k = rng.gen_range(1..=dim.saturating_sub(1).max(1));
    let mut v = idx[..k].to_vec();
    v.sort_unstable();
    SubspaceY::new(dim, &v).unwrap()
}

fn with_bound(mut g: Geometry, cfg: &SuiteConfig) -> Setup {
    g.setup.degree_bound = cfg.degree_bound;
    g.setup
}

fn symplectic_setup(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Setup {
    with_bound(gen::symplectic_geometries().choose(rng).unwrap().clone(), cfg)
}

/// A foliated geometry: a bundled one or a random line field.
fn foliation_setup(rng: &mut ChaCha8Rng, cfg: &SuiteConfig) -> Setup {
    let mut list = gen::foliation_geometries();
    list.push(gen::random_line_foliation(rng));
    with_bound(list.choose(rng).unwrap().clone(), cfg)
}

fn any_setup(rng: &mut ChaCha8Rng, i: usize, cfg: &SuiteConfig) -> Setup {
    if i % 2 == 0 {
        symplectic_setup(rng, cfg)
    } else {
        foliation_setup(rng, cfg)
    }
}

fn case_lie_calculus(rng: &mut ChaCha8Rng, i: usize, _: &SuiteConfig) -> Result<Outcome> {
    let dim = 1 + i % 3;
    let v = Vars::chart(dim);
    let a = gen::td_field(rng, &v, 3, 1, 2);
    let b = gen::td_field(rng, &v, 3, 1, 2);
    let n: u32 = rng.gen_range(1..=4);
    let tb = b.times_t_pow(n);
    let f1 = lie_bracket(&a, &tb)?.sub(&lie_bracket(&a, &b)?.times_t_pow(n));
    let bn = b.times_t_pow_over_factorial(n);
    let rhs = lie_d(&a, &b)?.times_t_pow_over_factorial(n).add(&b.times_t_pow_over_factorial(n - 1));
    let f3 = lie_d(&a, &bn)?.sub(&rhs);
    let oracle = DtTaggedField::d_of(&a).bracket(&DtTaggedField::pure(&b))?;
    Ok(all([
        ensure(f1.is_zero(), || format!("t^n-linearity residual {f1}")),
        ensure(f3.is_zero(), || format!("derivative residual {f3}")),
        ensure(oracle.is_pure() && oracle.xpart == lie_d(&a, &b)?, || "product oracle differs from the D(A)-derivative".into()),
    ]))
}

fn case_difference_formula(rng: &mut ChaCha8Rng, i: usize, _: &SuiteConfig) -> Result<Outcome> {
    let n = 1 + i % 3;
    let dim = rng.gen_range(2..=3);
    let v = Vars::chart(dim);
    let y = random_subspace(rng, dim);
    let a = gen::td_field(rng, &v, 2, 1, 2);
    let mut p = TimeDepVectorField::zero(&v);
    for k in 0..=n {
        let comps = (0..dim).map(|_| gen::poly_in_ideal_power(rng, &v, &y, (n - k) as u32, 1, 1)).collect();
        p = p.add(&TimeDepVectorField::new(&v, comps)?.times_t_pow(k as u32));
    }
    let b = a.add(&p);
    let gap = jet_difference(&flow_jet(&b, n + 1), &flow_jet(&a, n + 1), &y)?;
    let formula = TangentFieldOnY::restrict(&difference_formula(&vec![a.clone(); n], &b)?, &y);
    Ok(ensure(gap == formula, || format!("n = {n}: jet gap {gap} but formula gives {formula}")))
}

fn case_extension(rng: &mut ChaCha8Rng, i: usize, cfg: &SuiteConfig) -> Result<Outcome> {
    let n = 1 + i % 2;
    let setup = any_setup(rng, i / 2, cfg);
    let (a, _, _) = gen::admissible_field(rng, &setup, n);
    let delta = gen::g_correction(rng, &setup);
    let ext = extend_admissible(&a, &delta, n, &setup)?;
    let check = check_extension(&a, &ext.field, &delta, n, &setup)?;
    let cong = extension_congruences(&a, &delta, &ext.e, n)?;
    let f = gen::td_field(rng, &setup.vars, 2, 1, 2);
    let shift = derivative_shift_residual(&a, &delta, &ext.e, n, &f)?;
    Ok(all([
        if check.admissibility.inconclusive() { Outcome::Inconclusive("admissibility of the extension".into()) } else { Pass },
        ensure(check.admissibility.admissible(), || format!("extension is not {}-admissible", n + 1)),
        ensure(check.jets_agree, || "n-jets changed on Y".into()),
        ensure(check.difference_matches, || format!("difference {} is not the correction", check.difference)),
        ensure(cong.holds(), || "congruence residual is nonzero".into()),
        ensure(shift.is_zero(), || format!("derivative shift residual {shift}")),
    ]))
}

fn case_difference_in_g(rng: &mut ChaCha8Rng, i: usize, cfg: &SuiteConfig) -> Result<Outcome> {
    let setup = any_setup(rng, i, cfg);
    let n = rng.gen_range(1..=2);
    let (a, b) = if (i / 2) % 2 == 0 {
        let (a, _, _) = gen::admissible_field(rng, &setup, n);
        let b = a.add(&gen::agreeing_perturbation(rng, &setup, n, 1));
        (a, b)
    } else {
        let (a0, _, _) = gen::admissible_field(rng, &setup, n);
        let d1 = gen::g_correction(rng, &setup);
        let d2 = gen::g_correction(rng, &setup);
        (extend_admissible(&a0, &d1, n, &setup)?.field, extend_admissible(&a0, &d2, n, &setup)?.field)
    };
    let r = difference_in_g(&a, &b, n, &setup)?;
    Ok(verdict(&r.certificate, &format!("difference {}", r.difference)))
}

fn case_mixed_sequences(rng: &mut ChaCha8Rng, i: usize, cfg: &SuiteConfig) -> Result<Outcome> {
    let setup = any_setup(rng, i, cfg);
    // One order above what the sequences need, so that length-3 values
    // are not forced to vanish by the last extension step.
    let (a, _, _) = gen::admissible_field(rng, &setup, 4);
    let b = a.add(&gen::agreeing_perturbation(rng, &setup, 3, 1));
    let mut out = Vec::new();
    for n in 1..=3 {
        for (pattern, v, cert) in mixed_sequence_check(&a, &b, n, &setup)? {
            let word: String = pattern.iter().map(|&p| if p { 'B' } else { 'A' }).collect();
            out.push(verdict(&cert, &format!("sequence {word}: {v}")));
        }
    }
    Ok(all(out))
}

fn case_lifting(rng: &mut ChaCha8Rng, i: usize, cfg: &SuiteConfig) -> Result<Outcome> {
    let setup = any_setup(rng, i, cfg);
    let seed = gen::f_field(rng, &setup);
    let corrections = (0..3).map(|_| gen::g_correction(rng, &setup)).collect();
    let r = lift_to_order(&DeformationProblem { setup, seed, corrections, order: 4 })?;
    if r.report.inconclusive() {
        return Ok(Outcome::Inconclusive("final admissibility".into()));
    }
    Ok(ensure(r.passed(), || {
        format!(
            "admissible {}, seed preserved {}, coherent {}, corrections matched {:?}",
            r.report.admissible(),
            r.seed_preserved,
            r.coherent,
            r.stages.iter().map(|s| s.matches_correction).collect::<Vec<_>>()
        )
    }))
}

fn case_cech(rng: &mut ChaCha8Rng, i: usize, cfg: &SuiteConfig) -> Result<Outcome> {
    let setup = any_setup(rng, i, cfg);
    let n = rng.gen_range(1..=2);
    let (a, _, _) = gen::admissible_field(rng, &setup, n);
    let deltas: Vec<VectorField> = (0..3).map(|_| gen::g_correction(rng, &setup)).collect();
    let charts = deltas.iter().map(|d| Ok(extend_admissible(&a, d, n, &setup)?.field)).collect::<Result<Vec<_>>>()?;
    let data = cech_cocycle(&charts, n, &setup)?;
    let expected = setup.restrict(&deltas[0].sub(&deltas[1]));
    let glued = cech_glue(&data, &default_splitting(&data), &setup);
    let certs = data.certificates.iter().map(|((j, k), c)| verdict(c, &format!("C_{j}{k}")));
    Ok(all(
        [
            ensure(data.antisymmetric(), || "cocycle is not antisymmetric".into()),
            ensure(data.cocycle_identity(), || "cocycle identity fails".into()),
            ensure(data.cocycle[0][1] == expected, || format!("C_01 = {} but corrections differ by {expected}", data.cocycle[0][1])),
            ensure(glued.is_ok(), || format!("gluing failed: {}", glued.as_ref().err().unwrap())),
        ]
        .into_iter()
        .chain(certs),
    ))
}

fn case_ham_extension(rng: &mut ChaCha8Rng, i: usize, _: &SuiteConfig) -> Result<Outcome> {
    let (space, y, v) = if i == 0 {
        let s = DarbouxSpace::new(1);
        let vars = s.vars();
        let y = SubspaceY::new(2, &[0])?;
        let v = TangentFieldOnY::new(&y, vec![Poly::one(&vars), Poly::var(&vars, 1)])?;
        let g = hamiltonian_extension(&v, &s)?;
        let expected = parse_poly("y - x*y", &vars)?;
        if g != expected {
            return Ok(Fail(format!("worked example gives {g}, expected {expected}")));
        }
        (s, y, v)
    } else if i % 3 == 1 {
        // Y a curve: any tangent field on it has a closed contraction.
        let s = DarbouxSpace::new(1);
        let vars = s.vars();
        let y = SubspaceY::new(2, &[0])?;
        let comps = vec![gen::poly(rng, &vars, &[1], 3, 3), gen::poly(rng, &vars, &[1], 3, 3)];
        (s, y.clone(), TangentFieldOnY::new(&y, comps)?)
    } else {
        let setup = symplectic_setup(rng, &SuiteConfig::default());
        let SheafSpec::Hamiltonian(s) = &setup.sheaf else { unreachable!() };
        let h = gen::poly(rng, &setup.vars, &(0..s.dim()).collect::<Vec<_>>(), 3, 4);
        (s.clone(), setup.y.clone(), setup.restrict(&ham_field(&h, s)))
    };
    let g = hamiltonian_extension(&v, &space)?;
    let back = TangentFieldOnY::restrict(&ham_field(&g, &space), &y);
    Ok(ensure(back == v, || format!("X_G restricts to {back}, expected {v}")))
}

fn case_bracket_perp(rng: &mut ChaCha8Rng, _: usize, cfg: &SuiteConfig) -> Result<Outcome> {
    let setup = symplectic_setup(rng, cfg);
    let SheafSpec::Hamiltonian(s) = &setup.sheaf else { unreachable!() };
    let h = gen::poly(rng, &setup.vars, &(0..s.dim()).collect::<Vec<_>>(), 3, 3);
    let q = gen::poly_in_ideal_power(rng, &setup.vars, &setup.y, 2, 1, 2);
    let r = check_bracket_perp(&ham_field(&h, s), &ham_field(&(&h + &q), s), &setup.y, s)?;
    Ok(verdict(&r.certificate, &format!("bracket {}", r.restricted)))
}

fn case_omega_pullback(rng: &mut ChaCha8Rng, i: usize, _: &SuiteConfig) -> Result<Outcome> {
    let n = 1 + i % 4;
    let space = DarbouxSpace::new(if i % 2 == 0 { 1 } else { 2 });
    let a = gen::hamiltonian_td(rng, &space, 3, 1);
    let residual = pullback_form_along_flow(&a, n, &space)?;
    Ok(ensure(residual.iter().flatten().all(Poly::is_zero), || format!("n = {n}: nonzero residual for {a}")))
}

fn case_foliation_examples(_: &mut ChaCha8Rng, _: usize, cfg: &SuiteConfig) -> Result<Outcome> {
    let g = gen::parabola_foliation(true);
    let setup = with_bound(g, cfg);
    let SheafSpec::FoliationSpan(gens) = &setup.sheaf else { unreachable!() };
    let v = &setup.vars;
    let x = Poly::var(v, 0);
    let y = Poly::var(v, 1);
    let ideal = tangency_ideal(gens, &setup.y);
    let a = gens[0].clone();
    let b = a.mul_poly(&(&Poly::one(v) + &y));
    let r = check_foliation_bracket(&a, &b, gens, &setup.y, setup.degree_bound)?;
    Ok(all([
        ensure(ideal.generators == vec![x.clone()], || format!("tangency ideal is {ideal}, expected (x)")),
        ensure(r.bracket == a.mul_poly(&x), || format!("bracket is {}, expected x*A", r.bracket)),
        verdict(&r.certificate, "bracket in the twisted module"),
        ensure(r.vanishes_on_t, || "bracket does not vanish on the tangency locus".into()),
    ]))
}

fn case_velocity(rng: &mut ChaCha8Rng, _: usize, cfg: &SuiteConfig) -> Result<Outcome> {
    let setup = foliation_setup(rng, cfg);
    let gens = setup.sheaf.generators().to_vec();
    let v = &setup.vars;
    let all_idx: Vec<usize> = (0..setup.dim()).collect();
    let mut a = TimeDepVectorField::zero(v);
    for k in 0..=1 {
        for g in &gens {
            a = a.add(&g.mul_poly(&gen::poly(rng, v, &all_idx, 1, 2)).to_time_dep().times_t_pow(k));
        }
    }
    let r = velocity_in_foliation(&a, &gens, 4, setup.degree_bound)?;
    Ok(verdict(&r.certificate, &format!("velocity of {a}")))
}

fn case_ring_axioms(rng: &mut ChaCha8Rng, _: usize, _: &SuiteConfig) -> Result<Outcome> {
    let v = Vars::chart(3);
    let idx = [0, 1, 2, 3];
    let p = gen::poly(rng, &v, &idx, 3, 4);
    let q = gen::poly(rng, &v, &idx, 3, 4);
    let r = gen::poly(rng, &v, &idx, 3, 4);
    let y = random_subspace(rng, 3);
    let pt: Vec<Scalar> = (0..4).map(|_| Scalar::from_int(rng.gen_range(-3..=3))).collect();
    let ev = |f: &Poly| f.evaluate(&pt);
    let leibniz = (0..4).all(|k| (&p * &q).partial(k) == &(&p.partial(k) * &q) + &(&p * &q.partial(k)));
    Ok(all([
        ensure(&p + &q == &q + &p && &p * &q == &q * &p, || "commutativity".into()),
        ensure(&(&p + &q) + &r == &p + &(&q + &r) && &(&p * &q) * &r == &p * &(&q * &r), || "associativity".into()),
        ensure(&p * &(&q + &r) == &(&p * &q) + &(&p * &r), || "distributivity".into()),
        ensure((&p - &p).is_zero() && &p * &Poly::one(&v) == p, || "identities".into()),
        ensure(leibniz, || "Leibniz rule".into()),
        ensure(y.restrict(&(&p * &q)) == &y.restrict(&p) * &y.restrict(&q), || "restriction is not multiplicative".into()),
        ensure(ev(&(&p * &q))? == &ev(&p)? * &ev(&q)? && ev(&(&p + &q))? == &ev(&p)? + &ev(&q)?, || "evaluation".into()),
        ensure(parse_poly(&p.to_string(), &v)? == p, || format!("parse round trip of {p}")),
    ]))
}

fn case_substitution(rng: &mut ChaCha8Rng, _: usize, _: &SuiteConfig) -> Result<Outcome> {
    let v = Vars::chart(2);
    let idx = [0, 1, 2];
    let p = gen::poly(rng, &v, &idx, 3, 3);
    let q = gen::poly(rng, &v, &idx, 3, 3);
    let subs: Vec<Poly> = (0..3).map(|_| gen::poly(rng, &v, &idx, 2, 2)).collect();
    let s = |f: &Poly| f.substitute(&subs, &v);
    Ok(all([
        ensure(s(&(&p * &q))? == &s(&p)? * &s(&q)?, || "substitution is not multiplicative".into()),
        ensure(s(&(&p + &q))? == &s(&p)? + &s(&q)?, || "substitution is not additive".into()),
    ]))
}

fn case_jacobi(rng: &mut ChaCha8Rng, i: usize, _: &SuiteConfig) -> Result<Outcome> {
    let v = Vars::chart(2 + i % 2);
    let f: Vec<VectorField> = (0..3).map(|_| gen::field(rng, &v, 2, 2)).collect();
    let jac = f[0].bracket(&f[1].bracket(&f[2])?)?.add(&f[1].bracket(&f[2].bracket(&f[0])?)?).add(&f[2].bracket(&f[0].bracket(&f[1])?)?);
    let d: Vec<DtTaggedField> = (0..3).map(|_| DtTaggedField::d_of(&gen::td_field(rng, &v, 2, 1, 2))).collect();
    let pj = d[0].bracket(&d[1].bracket(&d[2])?)?.add(&d[1].bracket(&d[2].bracket(&d[0])?)?).add(&d[2].bracket(&d[0].bracket(&d[1])?)?);
    Ok(all([
        ensure(jac.is_zero(), || format!("chart Jacobi residual {jac}")),
        ensure(pj.xpart.is_zero() && pj.dtcoeff.is_zero(), || "product Jacobi residual".into()),
    ]))
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64)
}

fn case_hering(rng: &mut ChaCha8Rng, i: usize, _: &SuiteConfig) -> Result<Outcome> {
    let v = Vars::chart(2);
    let m = 2 + i % 2;
    let da = DtTaggedField::d_of(&gen::td_field(rng, &v, 2, 1, 2));
    let db = DtTaggedField::d_of(&gen::td_field(rng, &v, 2, 1, 2));
    let z = DtTaggedField { xpart: gen::td_field(rng, &v, 2, 1, 2), dtcoeff: gen::poly(rng, &v, &[0, 1, 2], 2, 2) };
    let mut r = db.clone();
    for _ in 1..m {
        r = da.bracket(&r)?;
    }
    let lhs = r.bracket(&z)?;
    let ad = |x: &DtTaggedField, w: DtTaggedField, k: usize| -> Result<DtTaggedField> { (0..k).try_fold(w, |acc, _| x.bracket(&acc)) };
    let mut rhs = DtTaggedField { xpart: TimeDepVectorField::zero(&v), dtcoeff: Poly::zero(&v) };
    for k in 0..m {
        let inner = ad(&da, z.clone(), k)?;
        let term = ad(&da, db.bracket(&inner)?, m - 1 - k)?;
        let c = binomial(m - 1, k) * if k % 2 == 0 { 1 } else { -1 };
        rhs = rhs.add(&term.scale(&Scalar::from_int(c)));
    }
    Ok(ensure(lhs == rhs, || format!("m = {m}: expansion differs")))
}

fn case_dt_sign(rng: &mut ChaCha8Rng, i: usize, _: &SuiteConfig) -> Result<Outcome> {
    let v = Vars::chart(2);
    let m = 1 + i % 3;
    let a = gen::td_field(rng, &v, 2, 1, 2);
    let seq: Vec<TimeDepVectorField> = (0..m).map(|_| gen::td_field(rng, &v, 2, 1, 2)).collect();
    let own = iterated_lie_on_dt(&vec![a.clone(); m])?;
    let direct = iterated_lie_on_dt(&seq)?;
    let product = iterated_lie_on_dt_product(&seq)?;
    Ok(all([
        ensure(own == iterated_lie_d(&a, &a, m)?.neg(), || "sign relation with the self-derivative".into()),
        ensure(product.is_pure() && product.xpart == direct, || "product oracle disagrees".into()),
    ]))
}

fn case_flow_ode(rng: &mut ChaCha8Rng, i: usize, _: &SuiteConfig) -> Result<Outcome> {
    let dim = 1 + i % 3;
    let v = Vars::chart(dim);
    let a = gen::td_field(rng, &v, 2, 1, 2);
    let n = 4;
    let jet = flow_jet(&a, n);
    let t = dim;
    let curve = (0..dim).map(|k| (v.name(k).to_string(), jet.coordinate(k))).collect();
    let mut out = Vec::new();
    for k in 0..dim {
        let lhs = jet.coordinate(k).partial(t).truncate_time(n as u32 - 1);
        let rhs = substitute_time_curve(a.component(k), &curve, n - 1)?;
        out.push(ensure(lhs == rhs, || format!("ODE residual in coordinate {k}")));
        out.push(ensure(jet.coeff(k, 0) == &Poly::var(&v, k), || "initial condition".into()));
    }
    for m in 1..n {
        out.push(ensure(jet.truncate(m)? == flow_jet(&a, m), || format!("truncation to order {m}")));
    }
    Ok(all(out))
}

fn bundled(rng: &mut ChaCha8Rng, i: usize, cfg: &SuiteConfig) -> Setup {
    let list: Vec<Geometry> = gen::symplectic_geometries().into_iter().chain(gen::foliation_geometries()).collect();
    if i < list.len() {
        with_bound(list[i].clone(), cfg)
    } else {
        any_setup(rng, i, cfg)
    }
}

/// A field in `F` vanishing along `Y`.
fn f_field_vanishing_on_y(rng: &mut ChaCha8Rng, setup: &Setup) -> VectorField {
    let v = &setup.vars;
    match &setup.sheaf {
        SheafSpec::Hamiltonian(s) => ham_field(&gen::poly_in_ideal_power(rng, v, &setup.y, 2, 1, 2), s),
        sheaf => sheaf
            .generators()
            .iter()
            .fold(VectorField::zero(v), |acc, g| acc.add(&g.mul_poly(&gen::poly_in_ideal_power(rng, v, &setup.y, 1, 1, 2)))),
    }
}

fn case_obstruction_axiom(rng: &mut ChaCha8Rng, i: usize, cfg: &SuiteConfig) -> Result<Outcome> {
    let setup = bundled(rng, i % 8 + if i >= 16 { 8 } else { 0 }, cfg);
    let a1 = gen::f_field(rng, &setup);
    let a2 = a1.add(&f_field_vanishing_on_y(rng, &setup));
    let cert = setup.axiom_check(&a1, &a2)?;
    let image = setup.sheaf.contains_restricted(&setup.restrict(&a1), setup.degree_bound);
    Ok(all([verdict(&cert, "restricted bracket"), verdict(&image, "restriction in F_Y")]))
}

fn case_g_module(rng: &mut ChaCha8Rng, i: usize, cfg: &SuiteConfig) -> Result<Outcome> {
    let setup = bundled(rng, i % 8 + if i >= 16 { 8 } else { 0 }, cfg);
    let v1 = setup.restrict(&gen::g_correction(rng, &setup));
    let v2 = setup.restrict(&gen::g_correction(rng, &setup));
    let c = gen::coeff(rng);
    Ok(verdict(&setup.g_membership(&v1.add(&v2.scale(&c))), "combination"))
}

fn case_sheaf_closure(rng: &mut ChaCha8Rng, i: usize, cfg: &SuiteConfig) -> Result<Outcome> {
    let setup = bundled(rng, i, cfg);
    let closure = setup.sheaf.check_bracket_closed(setup.degree_bound)?;
    let mut out = vec![ensure(closure.closed(), || format!("{} is not bracket closed", setup.sheaf.kind()))];
    if !matches!(setup.obstruction, ObstructionSpec::FullRestriction) {
        for c in setup.obstruction.check_within(&setup.sheaf, &setup.y, setup.degree_bound)? {
            out.push(verdict(&c, "G generator in F_Y"));
        }
    }
    Ok(all(out))
}

fn case_poisson(rng: &mut ChaCha8Rng, i: usize, _: &SuiteConfig) -> Result<Outcome> {
    let s = DarbouxSpace::new(1 + i % 2);
    let v = s.vars();
    let idx: Vec<usize> = (0..s.dim()).collect();
    let h = gen::poly(rng, &v, &idx, 3, 3);
    let k = gen::poly(rng, &v, &idx, 3, 3);
    let lhs = ham_field(&h, &s).bracket(&ham_field(&k, &s))?;
    let rhs = ham_field(&poisson_bracket(&h, &k, &s), &s);
    let iota = contraction(ham_field(&h, &s).components(), &s);
    let dh: Vec<Poly> = idx.iter().map(|&j| h.partial(j)).collect();
    Ok(all([
        ensure(lhs == rhs, || format!("[X_H, X_K] = {lhs} but X_(H,K) = {rhs}")),
        ensure(iota == dh, || "contraction with omega is not dH".into()),
    ]))
}

fn case_defect_sign(rng: &mut ChaCha8Rng, i: usize, _: &SuiteConfig) -> Result<Outcome> {
    let dim = 2 + i % 2;
    let v = Vars::chart(dim);
    let y = random_subspace(rng, dim);
    let setup = Setup::new(&v, y, SheafSpec::FullTangent, ObstructionSpec::FullRestriction);
    let a = gen::td_field(rng, &v, 2, 1, 2);
    let n = 3;
    let defects = admissibility_defect(&a, n, &setup)?;
    let mut out = Vec::new();
    for m in 1..=n {
        let on_dt = setup.restrict(&iterated_lie_on_dt(&vec![a.clone(); m])?.at_time_zero());
        out.push(ensure(defects[m - 1] == on_dt.neg(), || format!("m = {m}")));
    }
    Ok(all(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut n = check_names();
        let len = n.len();
        n.sort_unstable();
        n.dedup();
        assert_eq!(n.len(), len);
    }

    #[test]
    fn small_run_is_green_and_reproducible() {
        let cfg = SuiteConfig { seed: 3, cases: Some(2), jobs: 2, degree_bound: None };
        let a = run_check("lie-calculus", &cfg).unwrap();
        let b = run_check("lie-calculus", &SuiteConfig { jobs: 1, ..cfg.clone() }).unwrap();
        assert!(a.green(), "{a:?}");
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(run_check("nope", &cfg).is_err());
    }
}
