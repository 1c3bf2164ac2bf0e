//! The ambient setup: a coordinate subspace `Y`, a bracket-closed sheaf `F`
//! of vector fields and an obstruction sheaf `G ⊆ F_Y`, with decidable
//! membership.
//!
//! Membership in a module `I·⟨G₁,…,G_r⟩` is decided by exact linear algebra
//! on coefficient monomials. Solutions are verified by expansion. Failures
//! are certified by evaluation at sample points when possible; otherwise the
//! verdict is inconclusive and callers must treat it as a failed check.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{TimeDepVectorField, VectorField};
use crate::foliation;
use crate::jet::TangentFieldOnY;
use crate::linsolve::{in_span, solve_columns};
use crate::poly::{Monomial, Poly, Vars};
use crate::scalar::Scalar;
use crate::symplectic::{self, DarbouxSpace};

/// `{x_s = 0 : s ∈ vanishing}` inside a chart of dimension `dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceY {
    dim: usize,
    vanishing: Vec<usize>,
}

impl SubspaceY {
    pub fn new(dim: usize, vanishing: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = vanishing.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&s| s >= dim) {
            return Err(Error::InvalidSubspace(format!("coordinate index {bad} outside dimension {dim}")));
        }
        Ok(SubspaceY { dim, vanishing: set.into_iter().collect() })
    }

    /// The whole chart.
    pub fn full(dim: usize) -> Self {
        SubspaceY { dim, vanishing: Vec::new() }
    }

    pub fn from_names(vars: &Vars, names: &[impl AsRef<str>]) -> Result<Self> {
        let dim = vars.len() - usize::from(vars.time().is_some());
        let idx = names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                match vars.index_of(n) {
                    Some(i) if Some(i) != vars.time() => Ok(i),
                    _ => Err(Error::UnknownVariable(n.to_string())),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        SubspaceY::new(dim, &idx)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vanishing(&self) -> &[usize] {
        &self.vanishing
    }

    pub fn is_vanishing(&self, i: usize) -> bool {
        self.vanishing.binary_search(&i).is_ok()
    }

    /// Coordinates of `Y` itself.
    pub fn free(&self) -> Vec<usize> {
        (0..self.dim).filter(|i| !self.is_vanishing(*i)).collect()
    }

    pub fn restrict(&self, p: &Poly) -> Poly {
        p.restrict(&self.vanishing)
    }
}

/// An ideal given by generators; no generators is the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub generators: Vec<Poly>,
}

impl Ideal {
    pub fn new(generators: Vec<Poly>) -> Self {
        Ideal { generators: generators.into_iter().filter(|p| !p.is_zero()).collect() }
    }

    pub fn unit(vars: &Arc<Vars>) -> Self {
        Ideal { generators: vec![Poly::one(vars)] }
    }

    pub fn zero() -> Self {
        Ideal { generators: Vec::new() }
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// True when some generator is a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(Poly::is_constant)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.generators.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

/// Outcome of a membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipCertificate {
    /// Coefficients that reproduce the target exactly when expanded.
    Member { witness: Vec<Poly> },
    NonMember { reason: String },
    Inconclusive { reason: String },
}

impl MembershipCertificate {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipCertificate::Member { .. })
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, MembershipCertificate::Inconclusive { .. })
    }

    pub fn verdict(&self) -> &'static str {
        match self {
            MembershipCertificate::Member { .. } => "member",
            MembershipCertificate::NonMember { .. } => "non-member",
            MembershipCertificate::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn witness(&self) -> Option<&[Poly]> {
        match self {
            MembershipCertificate::Member { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            MembershipCertificate::Member { .. } => None,
            MembershipCertificate::NonMember { reason } | MembershipCertificate::Inconclusive { reason } => Some(reason),
        }
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            verdict: self.verdict().to_string(),
            witness: self.witness().map(|w| w.iter().map(|p| p.to_string()).collect()),
            reason: self.reason().map(str::to_string),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateJson {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

fn monomials_up_to(nvars: usize, allowed: &[usize], max_deg: u32) -> Vec<Monomial> {
    fn rec(allowed: &[usize], left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        match allowed.split_first() {
            None => out.push(Monomial::from_exponents(cur)),
            Some((&v, rest)) => {
                for e in 0..=left {
                    cur[v] = e as u16;
                    rec(rest, left - e, cur, out);
                }
                cur[v] = 0;
            }
        }
    }
    let mut out = Vec::new();
    rec(allowed, max_deg, &mut vec![0; nvars], &mut out);
    out
}

fn only_in(m: &Monomial, allowed: &[usize]) -> bool {
    m.0.iter().enumerate().all(|(i, &e)| e == 0 || allowed.contains(&i))
}

fn vector_key_map(v: &[Poly]) -> BTreeMap<(usize, Monomial), Scalar> {
    let mut out = BTreeMap::new();
    for (c, p) in v.iter().enumerate() {
        for (m, s) in p.terms() {
            out.insert((c, m.clone()), s.clone());
        }
    }
    out
}

/// Sample points `{0, 1, −1, 2}^k` over the mentioned variables, zeros first.
fn sample_points(vars: &Arc<Vars>, mentioned: &[usize], limit: usize) -> Vec<Vec<Scalar>> {
    let values = [0i64, 1, -1, 2];
    let k = mentioned.len();
    let total = 4usize.saturating_pow(k as u32).min(limit);
    (0..total)
        .map(|mut code| {
            let mut pt = vec![Scalar::zero(); vars.len()];
            for &v in mentioned {
                pt[v] = Scalar::from_int(values[code % 4]);
                code /= 4;
            }
            pt
        })
        .collect()
}

fn point_text(vars: &Vars, mentioned: &[usize], pt: &[Scalar]) -> String {
    let parts: Vec<String> = mentioned.iter().map(|&v| format!("{}={}", vars.name(v), pt[v])).collect();
    parts.join(", ")
}

/// Decide whether `target = Σ_i f_i·G_i` with every `f_i ∈ I`, where the
/// coefficient polynomials may only involve `coeff_vars`.
///
/// `bound` caps the degree of each `f_i`; by default it is the target degree
/// plus the largest generator degree plus two.
pub fn solve_module_membership(
    target: &[Poly],
    generators: &[Vec<Poly>],
    ideal: &Ideal,
    coeff_vars: &[usize],
    bound: Option<u32>,
) -> MembershipCertificate {
    solve_module_membership_mod(target, generators, ideal, coeff_vars, bound, None)
}

/// As [`solve_module_membership`], with equality only required modulo
/// `var^{order+1}` when `modulo = Some((var, order))`.
pub fn solve_module_membership_mod(
    target: &[Poly],
    generators: &[Vec<Poly>],
    ideal: &Ideal,
    coeff_vars: &[usize],
    bound: Option<u32>,
    modulo: Option<(usize, u32)>,
) -> MembershipCertificate {
    let reduce = |p: Poly| match modulo {
        Some((v, o)) => p.truncate(v, o),
        None => p,
    };
    let target: Vec<Poly> = target.iter().cloned().map(reduce).collect();
    let target = &target[..];
    let Some(first) = target.first() else {
        return MembershipCertificate::Member { witness: Vec::new() };
    };
    let vars = first.vars().clone();
    let zero_witness = || vec![Poly::zero(&vars); generators.len()];
    if target.iter().all(Poly::is_zero) {
        return MembershipCertificate::Member { witness: zero_witness() };
    }
    if generators.is_empty() || ideal.is_zero_ideal() {
        return MembershipCertificate::NonMember { reason: "the module is zero and the target is not".into() };
    }
    let target_deg = target.iter().map(Poly::degree).max().unwrap_or(0);
    let gen_deg = generators.iter().flat_map(|g| g.iter().map(Poly::degree)).max().unwrap_or(0);
    let bound = bound.unwrap_or(target_deg + gen_deg + 2);

    // products[i][k] = h_k · G_i
    let products: Vec<Vec<Vec<Poly>>> =
        generators.iter().map(|g| ideal.generators.iter().map(|h| g.iter().map(|c| c * h).collect()).collect()).collect();

    let attempt = |cands: &[BTreeSet<Monomial>]| -> Option<Vec<Poly>> {
        let mut cols = Vec::new();
        let mut labels = Vec::new();
        let nk = ideal.generators.len();
        for (i, per_k) in products.iter().enumerate() {
            for (k, prod) in per_k.iter().enumerate() {
                for mu in &cands[i * nk + k] {
                    let m = Poly::monomial(&vars, mu.clone(), Scalar::from_int(1));
                    let col: Vec<Poly> = prod.iter().map(|c| reduce(c * &m)).collect();
                    cols.push(vector_key_map(&col));
                    labels.push((i, k, mu.clone()));
                }
            }
        }
        let sol = solve_columns(&cols, &vector_key_map(target))?;
        let mut witness = zero_witness();
        for ((i, k, mu), a) in labels.into_iter().zip(sol) {
            if !a.is_zero() {
                let term = &Poly::monomial(&vars, mu, a) * &ideal.generators[k];
                witness[i] = &witness[i] + &term;
            }
        }
        Some(witness)
    };

    let verify = |w: &[Poly]| -> bool {
        (0..target.len()).all(|c| {
            let sum = w.iter().zip(generators).fold(Poly::zero(&vars), |acc, (f, g)| &acc + &(f * &g[c]));
            reduce(sum) == target[c]
        })
    };

    let nk = ideal.generators.len();
    // Stage 1: monomial quotients of target terms by product terms.
    let mut cands: Vec<BTreeSet<Monomial>> = vec![BTreeSet::new(); generators.len() * nk];
    for (i, per_k) in products.iter().enumerate() {
        for (k, prod) in per_k.iter().enumerate() {
            let set = &mut cands[i * nk + k];
            set.insert(Monomial::one(vars.len()));
            for (c, tp) in target.iter().enumerate() {
                for (tm, _) in tp.terms() {
                    for (pm, _) in prod[c].terms() {
                        if let Some(q) = tm.div(pm) {
                            let in_range = modulo.map_or(true, |(v, o)| q.exp(v) as u32 <= o);
                            if only_in(&q, coeff_vars) && in_range && q.degree() + ideal.generators[k].degree() <= bound {
                                set.insert(q);
                            }
                        }
                    }
                }
            }
        }
    }
    if let Some(w) = attempt(&cands) {
        if verify(&w) {
            return MembershipCertificate::Member { witness: w };
        }
        return MembershipCertificate::Inconclusive { reason: "solver witness failed verification".into() };
    }
    if coeff_vars.is_empty() && modulo.is_none() {
        return MembershipCertificate::NonMember { reason: "no constant combination of the generators equals the target".into() };
    }

    // Evaluation obstruction: at any point the target value must lie in the
    // span of the values of h_k·G_i.
    let mut mentioned: BTreeSet<usize> = BTreeSet::new();
    for p in target.iter().chain(generators.iter().flatten()).chain(&ideal.generators) {
        for (m, _) in p.terms() {
            mentioned.extend(m.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i));
        }
    }
    let mentioned: Vec<usize> = mentioned.into_iter().filter(|&v| modulo.map_or(true, |(m, _)| m != v)).collect();
    for pt in sample_points(&vars, &mentioned, 1024) {
        let tv: Vec<Scalar> = target.iter().map(|p| p.evaluate(&pt).expect("full point")).collect();
        if tv.iter().all(Zero::is_zero) {
            continue;
        }
        let vecs: Vec<Vec<Scalar>> = products
            .iter()
            .flatten()
            .map(|prod| prod.iter().map(|p| p.evaluate(&pt).expect("full point")).collect())
            .collect();
        if !in_span(&vecs, &tv) {
            return MembershipCertificate::NonMember {
                reason: format!("at {} the target value is outside the span of the module's values", point_text(&vars, &mentioned, &pt)),
            };
        }
    }

    // Stage 2: every coefficient monomial up to the bound.
    let mut full = Vec::with_capacity(cands.len());
    let mut size = 0usize;
    for _ in 0..generators.len() {
        for h in &ideal.generators {
            let deg = bound.saturating_sub(h.degree());
            let ms: BTreeSet<Monomial> = monomials_up_to(vars.len(), coeff_vars, deg)
                .into_iter()
                .filter(|m| modulo.map_or(true, |(v, o)| m.exp(v) as u32 <= o))
                .collect();
            size += ms.len();
            full.push(ms);
        }
    }
    if size > 20_000 {
        return MembershipCertificate::Inconclusive { reason: format!("degree bound {bound} needs {size} unknowns") };
    }
    match attempt(&full) {
        Some(w) if verify(&w) => MembershipCertificate::Member { witness: w },
        Some(_) => MembershipCertificate::Inconclusive { reason: "solver witness failed verification".into() },
        None => MembershipCertificate::Inconclusive {
            reason: format!("no representation with coefficient degree at most {bound} and no evaluation obstruction found"),
        },
    }
}

/// The sheaf `F` of admissible directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SheafSpec {
    FullTangent,
    Hamiltonian(DarbouxSpace),
    /// `O_X`-span of the generators (a regular foliation).
    FoliationSpan(Vec<VectorField>),
    /// `C`-span of the generators.
    ConstantSpan(Vec<VectorField>),
}

/// The obstruction sheaf `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObstructionSpec {
    /// `G = F_Y`.
    FullRestriction,
    /// Fields along `Y` that are ω-perpendicular to `T_Y`.
    Perp(DarbouxSpace),
    /// `J_T ⊗ F_Y` for the foliation spanned by the generators.
    TangencyTwist(Vec<VectorField>),
    /// `I·⟨generators⟩` over `O_Y`.
    ExplicitModule { generators: Vec<Vec<Poly>>, ideal: Ideal },
}

#[derive(Clone, Debug)]
pub struct BracketClosure {
    /// `(i, j, certificate for [G_i, G_j] ∈ F)`.
    pub pairs: Vec<(usize, usize, MembershipCertificate)>,
}

impl BracketClosure {
    pub fn closed(&self) -> bool {
        self.pairs.iter().all(|(_, _, c)| c.is_member())
    }
}

fn to_pure(vs: &[VectorField]) -> Vec<Vec<Poly>> {
    vs.iter().map(|v| v.components().to_vec()).collect()
}

impl SheafSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            SheafSpec::FullTangent => "full-tangent",
            SheafSpec::Hamiltonian(_) => "hamiltonian",
            SheafSpec::FoliationSpan(_) => "foliation",
            SheafSpec::ConstantSpan(_) => "constant-span",
        }
    }

    pub fn generators(&self) -> &[VectorField] {
        match self {
            SheafSpec::FoliationSpan(g) | SheafSpec::ConstantSpan(g) => g,
            _ => &[],
        }
    }

    /// Re-express pairwise brackets of generators in the span.
    pub fn check_bracket_closed(&self, bound: Option<u32>) -> Result<BracketClosure> {
        let gens = self.generators();
        let mut pairs = Vec::new();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let br = gens[i].bracket(&gens[j])?;
                pairs.push((i, j, self.contains_field(&br, bound)));
            }
        }
        Ok(BracketClosure { pairs })
    }

    /// Membership of a time-independent field.
    pub fn contains_field(&self, a: &VectorField, bound: Option<u32>) -> MembershipCertificate {
        match self {
            SheafSpec::FullTangent => MembershipCertificate::Member { witness: a.components().to_vec() },
            SheafSpec::Hamiltonian(space) => symplectic::is_hamiltonian(a, space),
            SheafSpec::FoliationSpan(gens) => {
                let coeff_vars: Vec<usize> = (0..a.dim()).collect();
                solve_module_membership(a.components(), &to_pure(gens), &Ideal::unit(a.vars()), &coeff_vars, bound)
            }
            SheafSpec::ConstantSpan(gens) => {
                solve_module_membership(a.components(), &to_pure(gens), &Ideal::unit(a.vars()), &[], Some(0))
            }
        }
    }

    /// Every `t`-coefficient must lie in `F`; the witness is returned with
    /// the `t`-powers reattached.
    pub fn contains(&self, a: &TimeDepVectorField, bound: Option<u32>) -> MembershipCertificate {
        let t = a.time_index();
        let mut combined: Option<Vec<Poly>> = None;
        for (k, c) in a.time_coefficients().iter().enumerate() {
            match self.contains_field(c, bound) {
                MembershipCertificate::Member { witness } => {
                    let shifted: Vec<Poly> = witness.iter().map(|w| w.mul_var_pow(t, k as u16)).collect();
                    combined = Some(match combined {
                        None => shifted,
                        Some(prev) => prev.iter().zip(&shifted).map(|(a, b)| a + b).collect(),
                    });
                }
                MembershipCertificate::NonMember { reason } => {
                    return MembershipCertificate::NonMember { reason: format!("coefficient of t^{k}: {reason}") }
                }
                MembershipCertificate::Inconclusive { reason } => {
                    return MembershipCertificate::Inconclusive { reason: format!("coefficient of t^{k}: {reason}") }
                }
            }
        }
        MembershipCertificate::Member { witness: combined.unwrap_or_default() }
    }

    /// Membership of a field along `Y` in `F_Y`.
    pub fn contains_restricted(&self, v: &TangentFieldOnY, bound: Option<u32>) -> MembershipCertificate {
        let y = v.subspace();
        match self {
            SheafSpec::FullTangent => MembershipCertificate::Member { witness: v.components().to_vec() },
            SheafSpec::Hamiltonian(space) => match symplectic::hamiltonian_extension(v, space) {
                Ok(g) => MembershipCertificate::Member { witness: vec![g] },
                Err(e) => MembershipCertificate::NonMember { reason: e.to_string() },
            },
            SheafSpec::FoliationSpan(gens) => {
                let restricted: Vec<Vec<Poly>> = gens.iter().map(|g| TangentFieldOnY::restrict(g, y).components().to_vec()).collect();
                solve_module_membership(v.components(), &restricted, &Ideal::unit(v.vars()), &y.free(), bound)
            }
            SheafSpec::ConstantSpan(gens) => {
                let restricted: Vec<Vec<Poly>> = gens.iter().map(|g| TangentFieldOnY::restrict(g, y).components().to_vec()).collect();
                solve_module_membership(v.components(), &restricted, &Ideal::unit(v.vars()), &[], Some(0))
            }
        }
    }

    /// A field in `F` whose restriction to `Y` is `v`, built from a
    /// membership witness.
    pub fn extend_from_y(&self, v: &TangentFieldOnY, bound: Option<u32>) -> Result<VectorField> {
        let cert = self.contains_restricted(v, bound);
        let witness = match cert {
            MembershipCertificate::Member { witness } => witness,
            MembershipCertificate::NonMember { reason } => {
                return Err(Error::Hypothesis(format!("{v} is not the restriction of a field in F: {reason}")))
            }
            MembershipCertificate::Inconclusive { reason } => return Err(Error::Inconclusive(reason)),
        };
        let ext = match self {
            SheafSpec::FullTangent => v.to_vector_field(),
            SheafSpec::Hamiltonian(space) => symplectic::ham_field(&witness[0], space),
            SheafSpec::FoliationSpan(gens) | SheafSpec::ConstantSpan(gens) => gens
                .iter()
                .zip(&witness)
                .fold(VectorField::zero(v.vars()), |acc, (g, f)| acc.add(&g.mul_poly(f))),
        };
        debug_assert_eq!(&TangentFieldOnY::restrict(&ext, v.subspace()), v);
        Ok(ext)
    }
}

impl ObstructionSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ObstructionSpec::FullRestriction => "full-restriction",
            ObstructionSpec::Perp(_) => "perp",
            ObstructionSpec::TangencyTwist(_) => "tangency-twist",
            ObstructionSpec::ExplicitModule { .. } => "explicit-module",
        }
    }

    /// `v ∈ G`.
    pub fn contains(&self, v: &TangentFieldOnY, sheaf: &SheafSpec, bound: Option<u32>) -> MembershipCertificate {
        let y = v.subspace();
        match self {
            ObstructionSpec::FullRestriction => sheaf.contains_restricted(v, bound),
            ObstructionSpec::Perp(space) => symplectic::perp_membership(v, space),
            ObstructionSpec::TangencyTwist(gens) => foliation::jt_twist_membership(v, gens, bound),
            ObstructionSpec::ExplicitModule { generators, ideal } => {
                solve_module_membership(v.components(), generators, ideal, &y.free(), bound)
            }
        }
    }

    /// `G ⊆ F_Y`, checked on module generators where `G` has them.
    pub fn check_within(&self, sheaf: &SheafSpec, y: &SubspaceY, bound: Option<u32>) -> Result<Vec<MembershipCertificate>> {
        let gens: Vec<TangentFieldOnY> = match self {
            ObstructionSpec::FullRestriction | ObstructionSpec::Perp(_) => Vec::new(),
            ObstructionSpec::TangencyTwist(gens) => {
                let ideal = foliation::tangency_ideal(gens, y);
                let mut out = Vec::new();
                for g in gens {
                    let r = TangentFieldOnY::restrict(g, y);
                    for h in &ideal.generators {
                        out.push(TangentFieldOnY::new(y, r.components().iter().map(|c| c * h).collect())?);
                    }
                }
                out
            }
            ObstructionSpec::ExplicitModule { generators, ideal } => {
                let mut out = Vec::new();
                for g in generators {
                    for h in &ideal.generators {
                        out.push(TangentFieldOnY::new(y, g.iter().map(|c| c * h).collect())?);
                    }
                }
                out
            }
        };
        Ok(gens.iter().map(|g| sheaf.contains_restricted(g, bound)).collect())
    }
}

/// `Y`, `F` and `G` together with the degree bound used by membership solves.
#[derive(Clone, Debug)]
pub struct Setup {
    pub vars: Arc<Vars>,
    pub y: SubspaceY,
    pub sheaf: SheafSpec,
    pub obstruction: ObstructionSpec,
    pub degree_bound: Option<u32>,
}

impl Setup {
    pub fn new(vars: &Arc<Vars>, y: SubspaceY, sheaf: SheafSpec, obstruction: ObstructionSpec) -> Self {
        Setup { vars: vars.clone(), y, sheaf, obstruction, degree_bound: None }
    }

    pub fn dim(&self) -> usize {
        self.y.dim()
    }

    pub fn f_membership(&self, a: &TimeDepVectorField) -> MembershipCertificate {
        self.sheaf.contains(a, self.degree_bound)
    }

    pub fn g_membership(&self, v: &TangentFieldOnY) -> MembershipCertificate {
        self.obstruction.contains(v, &self.sheaf, self.degree_bound)
    }

    pub fn restrict(&self, a: &VectorField) -> TangentFieldOnY {
        TangentFieldOnY::restrict(a, &self.y)
    }

    /// Spot-check the obstruction-sheaf axiom on a pair of `F`-fields with
    /// equal restriction: `[A₁, A₂]|_Y ∈ G`.
    pub fn axiom_check(&self, a1: &VectorField, a2: &VectorField) -> Result<MembershipCertificate> {
        if self.restrict(a1) != self.restrict(a2) {
            return Err(Error::Hypothesis("fields differ along Y".into()));
        }
        Ok(self.g_membership(&self.restrict(&a1.bracket(a2)?)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart2() -> (Arc<Vars>, Poly, Poly) {
        let v = Vars::chart_named(["x", "y"]).unwrap();
        (v.clone(), Poly::var(&v, 0), Poly::var(&v, 1))
    }

    fn vf(v: &Arc<Vars>, c: Vec<Poly>) -> VectorField {
        VectorField::new(v, c).unwrap()
    }

    #[test]
    fn subspace_validation() {
        assert!(SubspaceY::new(2, &[2]).is_err());
        let y = SubspaceY::new(3, &[2, 0, 2]).unwrap();
        assert_eq!(y.vanishing(), &[0, 2]);
        assert_eq!(y.free(), vec![1]);
    }

    #[test]
    fn module_member_with_ideal() {
        let (v, x, y) = chart2();
        let g1 = vec![Poly::one(&v), &y + &Poly::one(&v)];
        let target: Vec<Poly> = g1.iter().map(|c| c * &x).collect();
        let cert = solve_module_membership(&target, &[g1], &Ideal::new(vec![x.clone()]), &[0, 1], None);
        assert_eq!(cert.witness().unwrap(), &[x]);
    }

    #[test]
    fn module_non_member_by_evaluation() {
        let (v, x, y) = chart2();
        let g1 = vec![Poly::one(&v), y];
        let cert = solve_module_membership(&g1.clone(), &[g1], &Ideal::new(vec![x]), &[0, 1], None);
        assert!(matches!(cert, MembershipCertificate::NonMember { .. }), "{cert:?}");
    }

    #[test]
    fn module_zero_target() {
        let (v, x, _) = chart2();
        let cert = solve_module_membership(&[Poly::zero(&v)], &[vec![x.clone()]], &Ideal::new(vec![x]), &[0], None);
        assert_eq!(cert.witness().unwrap(), &[Poly::zero(&v)]);
    }

    #[test]
    fn foliation_span_membership() {
        let (v, _, y) = chart2();
        let f = SheafSpec::FoliationSpan(vec![vf(&v, vec![Poly::one(&v), Poly::zero(&v)])]);
        let c = f.contains_field(&vf(&v, vec![y.clone(), Poly::zero(&v)]), None);
        assert_eq!(c.witness().unwrap(), &[y]);
        let c = f.contains_field(&vf(&v, vec![Poly::zero(&v), Poly::one(&v)]), None);
        assert!(matches!(c, MembershipCertificate::NonMember { .. }));
        let g = vf(&v, vec![Poly::one(&v), Poly::zero(&v)]);
        assert_eq!(f.contains_field(&g, None).witness().unwrap(), &[Poly::one(&v)]);
    }

    #[test]
    fn bracket_closure() {
        let (v, x, y) = chart2();
        let dx = SheafSpec::FoliationSpan(vec![vf(&v, vec![Poly::one(&v), Poly::zero(&v)])]);
        assert!(dx.check_bracket_closed(None).unwrap().closed());
        let span = SheafSpec::ConstantSpan(vec![vf(&v, vec![y, Poly::zero(&v)]), vf(&v, vec![Poly::zero(&v), x])]);
        let report = span.check_bracket_closed(None).unwrap();
        assert!(!report.closed());
        assert!(matches!(report.pairs[0].2, MembershipCertificate::NonMember { .. }));
        assert!(SheafSpec::Hamiltonian(DarbouxSpace::new(1)).check_bracket_closed(None).unwrap().closed());
    }

    #[test]
    fn perp_examples() {
        let space = DarbouxSpace::new(1);
        let v = space.vars();
        let y = Poly::var(&v, 1);
        let sub = SubspaceY::new(2, &[0]).unwrap();
        let g = ObstructionSpec::Perp(space.clone());
        let f = SheafSpec::Hamiltonian(space);
        let member = TangentFieldOnY::new(&sub, vec![Poly::zero(&v), -&y]).unwrap();
        assert!(g.contains(&member, &f, None).is_member());
        let non = TangentFieldOnY::new(&sub, vec![Poly::one(&v), Poly::zero(&v)]).unwrap();
        assert!(matches!(g.contains(&non, &f, None), MembershipCertificate::NonMember { .. }));
        assert!(g.contains(&TangentFieldOnY::zero(&sub, &v), &f, None).is_member());
    }

    #[test]
    fn extension_through_foliation_witness() {
        let (v, x, y) = chart2();
        let gen = vf(&v, vec![Poly::one(&v), x.clone()]);
        let f = SheafSpec::FoliationSpan(vec![gen]);
        let sub = SubspaceY::new(2, &[1]).unwrap();
        let w = TangentFieldOnY::new(&sub, vec![x.clone(), x.pow(2)]).unwrap();
        let ext = f.extend_from_y(&w, None).unwrap();
        assert_eq!(TangentFieldOnY::restrict(&ext, &sub), w);
        let bad = TangentFieldOnY::new(&sub, vec![Poly::zero(&v), Poly::one(&v)]).unwrap();
        assert!(f.extend_from_y(&bad, None).is_err());
        let _ = y;
    }
}
