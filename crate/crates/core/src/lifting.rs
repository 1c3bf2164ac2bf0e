//! Order-by-order lifting of a first-order deformation, and the Čech
//! cocycle / splitting / gluing step on a formal cover.
//!
//! In the formal cover every chart is the same coordinate chart and every
//! overlap is all of `Y`, so a cover is just a family of chart fields.

use std::fmt;

use crate::admissibility::{extend_admissible, is_admissible, AdmissibilityReport};
use crate::error::{Error, Result};
use crate::field::{TimeDepVectorField, VectorField};
use crate::geometry::{MembershipCertificate, Setup};
use crate::jet::{flow_jet, jet_difference, JetSection, TangentFieldOnY};

/// Raise an `n`-admissible field to an `(n+1)`-admissible one whose
/// `(n+1)`-st jet differs from the old one by `Δ|_Y` (zero by default).
pub fn lift_once(a: &TimeDepVectorField, delta: Option<&VectorField>, n: usize, setup: &Setup) -> Result<TimeDepVectorField> {
    let zero = VectorField::zero(a.vars());
    Ok(extend_admissible(a, delta.unwrap_or(&zero), n, setup)?.field)
}

#[derive(Clone, Debug)]
pub struct DeformationProblem {
    pub setup: Setup,
    /// A field in `F`; its restriction to `Y` is the first-order deformation.
    pub seed: VectorField,
    /// `corrections[n-1]` is the `Δ` used when passing from order `n` to
    /// `n+1`; missing entries are zero.
    pub corrections: Vec<VectorField>,
    pub order: usize,
}

#[derive(Clone, Debug)]
pub struct LiftStage {
    /// The field is admissible to this order after the stage.
    pub order: usize,
    pub field: TimeDepVectorField,
    /// `(n+1)`-jet difference introduced at this stage on `Y`.
    pub difference: TangentFieldOnY,
    pub matches_correction: bool,
}

#[derive(Clone, Debug)]
pub struct LiftResult {
    pub field: TimeDepVectorField,
    pub jet: JetSection,
    pub report: AdmissibilityReport,
    pub stages: Vec<LiftStage>,
    /// The order-1 jet on `Y` is the seed's restriction.
    pub seed_preserved: bool,
    /// Truncations of the final jet to each order `m` agree on `Y` with the
    /// stage that first reached order `m`.
    pub coherent: bool,
}

impl LiftResult {
    pub fn passed(&self) -> bool {
        self.report.admissible() && self.seed_preserved && self.coherent && self.stages.iter().all(|s| s.matches_correction)
    }
}

pub fn lift_to_order(problem: &DeformationProblem) -> Result<LiftResult> {
    let setup = &problem.setup;
    let seed = problem.seed.to_time_dep();
    let n_top = problem.order.max(1);
    match setup.f_membership(&seed) {
        MembershipCertificate::Member { .. } => {}
        other => return Err(Error::Hypothesis(format!("seed is not in F: {}", other.reason().unwrap_or("")))),
    }
    let zero = VectorField::zero(seed.vars());
    let mut current = seed.clone();
    let mut stages = Vec::new();
    let mut intermediates = vec![(1usize, seed.clone())];
    for n in 1..n_top {
        let delta = problem.corrections.get(n - 1).unwrap_or(&zero);
        let next = extend_admissible(&current, delta, n, setup).map_err(|e| Error::Hypothesis(format!("order {n}: {e}")))?.field;
        let difference = jet_difference(&flow_jet(&next, n + 1), &flow_jet(&current, n + 1), &setup.y)?;
        let matches_correction = difference == setup.restrict(delta);
        stages.push(LiftStage { order: n + 1, field: next.clone(), difference, matches_correction });
        intermediates.push((n + 1, next.clone()));
        current = next;
    }
    let jet = flow_jet(&current, n_top);
    let report = is_admissible(&current, n_top, setup)?;
    let on_y = jet.restrict(&setup.y);
    let seed_y = setup.restrict(&problem.seed);
    let seed_preserved = (0..jet.dim()).all(|i| on_y.coeff(i, 1) == seed_y.component(i));
    let mut coherent = true;
    for (m, f) in &intermediates {
        if on_y.truncate(*m)? != flow_jet(f, *m).restrict(&setup.y) {
            coherent = false;
        }
    }
    Ok(LiftResult { field: current, jet, report, stages, seed_preserved, coherent })
}

/// Chart fields, their pairwise `(n+1)`-jet differences on `Y` and the
/// membership certificates of those differences.
#[derive(Clone, Debug)]
pub struct CechData {
    pub charts: Vec<TimeDepVectorField>,
    pub order: usize,
    /// `cocycle[j][k] = C_jk = τ_j − τ_k` on `Y`.
    pub cocycle: Vec<Vec<TangentFieldOnY>>,
    /// Certificates for `C_jk`, `j < k`, in row-major order.
    pub certificates: Vec<((usize, usize), MembershipCertificate)>,
}

impl CechData {
    pub fn antisymmetric(&self) -> bool {
        let k = self.charts.len();
        (0..k).all(|a| (0..k).all(|b| self.cocycle[a][b] == self.cocycle[b][a].neg()))
    }

    /// `C_jk + C_kl + C_lj = 0` for every triple.
    pub fn cocycle_identity(&self) -> bool {
        let k = self.charts.len();
        (0..k).all(|a| (0..k).all(|b| (0..k).all(|c| self.cocycle[a][b].add(&self.cocycle[b][c]).add(&self.cocycle[c][a]).is_zero())))
    }

    pub fn in_g(&self) -> bool {
        self.certificates.iter().all(|(_, c)| c.is_member())
    }
}

impl fmt::Display for CechData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((j, k), _) in &self.certificates {
            writeln!(f, "C_{j}{k} = {}", self.cocycle[*j][*k])?;
        }
        Ok(())
    }
}

pub fn cech_cocycle(charts: &[TimeDepVectorField], n: usize, setup: &Setup) -> Result<CechData> {
    if charts.is_empty() {
        return Err(Error::EmptySequence);
    }
    for (j, c) in charts.iter().enumerate() {
        if !is_admissible(c, n, setup)?.admissible() {
            return Err(Error::Hypothesis(format!("chart {j} is not {n}-admissible")));
        }
    }
    let jets: Vec<JetSection> = charts.iter().map(|c| flow_jet(c, n + 1)).collect();
    let k = charts.len();
    let mut cocycle = vec![Vec::with_capacity(k); k];
    for j in 0..k {
        for l in 0..k {
            let d = jet_difference(&jets[j], &jets[l], &setup.y).map_err(|e| Error::Hypothesis(format!("charts {j}, {l}: {e}")))?;
            cocycle[j].push(d);
        }
    }
    let mut certificates = Vec::new();
    for j in 0..k {
        for l in j + 1..k {
            certificates.push(((j, l), setup.g_membership(&cocycle[j][l])));
        }
    }
    Ok(CechData { charts: charts.to_vec(), order: n, cocycle, certificates })
}

/// `C_0 = 0`, `C_k = C_{0k}`, which satisfies `C_jk = C_k − C_j` for a cocycle.
pub fn default_splitting(data: &CechData) -> Vec<TangentFieldOnY> {
    (0..data.charts.len()).map(|k| data.cocycle[0][k].clone()).collect()
}

#[derive(Clone, Debug)]
pub struct GlueResult {
    pub corrected: Vec<TimeDepVectorField>,
    /// The common `(n+1)`-jet on `Y`.
    pub jet: JetSection,
}

/// Correct chart `j` by an `F`-extension of `C_j`; afterwards all charts
/// induce the same `(n+1)`-jet on `Y`.
pub fn cech_glue(data: &CechData, splitting: &[TangentFieldOnY], setup: &Setup) -> Result<GlueResult> {
    let k = data.charts.len();
    if splitting.len() != k {
        return Err(Error::DimensionMismatch { expected: k, found: splitting.len() });
    }
    for j in 0..k {
        for l in 0..k {
            let residual = data.cocycle[j][l].sub(&splitting[l].sub(&splitting[j]));
            if !residual.is_zero() {
                return Err(Error::Hypothesis(format!("splitting mismatch at ({j}, {l}): residual {residual}")));
            }
        }
    }
    let n = data.order;
    let mut corrected = Vec::with_capacity(k);
    for (j, (chart, c)) in data.charts.iter().zip(splitting).enumerate() {
        if !setup.g_membership(c).is_member() {
            return Err(Error::Hypothesis(format!("C_{j} = {c} is not in G")));
        }
        let ext = setup.sheaf.extend_from_y(c, setup.degree_bound)?;
        corrected.push(extend_admissible(chart, &ext, n, setup)?.field);
    }
    let jets: Vec<JetSection> = corrected.iter().map(|c| flow_jet(c, n + 1).restrict(&setup.y)).collect();
    if let Some(j) = jets.iter().position(|jt| *jt != jets[0]) {
        return Err(Error::Invalid(format!("corrected chart {j} does not match chart 0 on Y")));
    }
    Ok(GlueResult { corrected, jet: jets.into_iter().next().unwrap() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ObstructionSpec, SheafSpec, SubspaceY};
    use crate::poly::Poly;
    use crate::symplectic::{ham_field, DarbouxSpace};

    fn setup() -> (Setup, DarbouxSpace, Poly, Poly) {
        let s = DarbouxSpace::new(1);
        let v = s.vars();
        let st = Setup::new(&v, SubspaceY::new(2, &[0]).unwrap(), SheafSpec::Hamiltonian(s.clone()), ObstructionSpec::Perp(s.clone()));
        (st, s.clone(), Poly::var(&v, 0), Poly::var(&v, 1))
    }

    #[test]
    fn time_independent_seed_lifts_to_itself() {
        let (st, s, x, y) = setup();
        let seed = ham_field(&(&x * &y), &s);
        let r = lift_to_order(&DeformationProblem { setup: st, seed: seed.clone(), corrections: vec![], order: 4 }).unwrap();
        assert_eq!(r.field, seed.to_time_dep());
        assert!(r.passed());
    }

    #[test]
    fn symplectic_lift_with_correction() {
        let (st, s, x, y) = setup();
        let seed = ham_field(&(&x * &y), &s);
        let problem = DeformationProblem { setup: st, seed, corrections: vec![ham_field(&x, &s)], order: 2 };
        let r = lift_to_order(&problem).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.stages[0].difference, problem.setup.restrict(&ham_field(&x, &s)));
    }

    #[test]
    fn three_chart_cocycle_and_glue() {
        let (st, s, x, y) = setup();
        let a = ham_field(&(&x * &y), &s).to_time_dep();
        let deltas = [ham_field(&x, &s), ham_field(&(&x * &y.pow(2)), &s), ham_field(&Poly::zero(x.vars()), &s)];
        let charts: Vec<TimeDepVectorField> = deltas.iter().map(|d| lift_once(&a, Some(d), 1, &st).unwrap()).collect();
        let data = cech_cocycle(&charts, 1, &st).unwrap();
        assert!(data.antisymmetric() && data.cocycle_identity() && data.in_g());
        assert_eq!(data.cocycle[0][1], st.restrict(&deltas[0].sub(&deltas[1])));
        let split = default_splitting(&data);
        let glued = cech_glue(&data, &split, &st).unwrap();
        assert_eq!(glued.corrected.len(), 3);
        let bad: Vec<TangentFieldOnY> = split.iter().map(|c| c.neg()).collect();
        assert!(cech_glue(&data, &bad, &st).is_err());
    }

    #[test]
    fn single_chart_has_empty_cocycle() {
        let (st, s, x, y) = setup();
        let a = ham_field(&(&x * &y), &s).to_time_dep();
        let data = cech_cocycle(&[a], 2, &st).unwrap();
        assert!(data.certificates.is_empty());
        let g = cech_glue(&data, &default_splitting(&data), &st).unwrap();
        assert_eq!(g.corrected.len(), 1);
    }
}
