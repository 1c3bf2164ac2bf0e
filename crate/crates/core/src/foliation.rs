//! Regular foliations spanned by polynomial fields, the tangency locus `T`
//! of a coordinate subspace, and the twisted obstruction sheaf `J_T ⊗ F_Y`.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{TimeDepVectorField, VectorField};
use crate::geometry::{solve_module_membership, solve_module_membership_mod, Ideal, MembershipCertificate, SheafSpec, SubspaceY};
use crate::jet::{flow_jet, velocity_series, TangentFieldOnY};
use crate::linsolve::in_span;
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::series::substitute_time_curve;

/// The ideal of `T` in `Y`, generated by the normal components of the
/// foliation generators restricted to `Y`.
pub type TangencyIdeal = Ideal;

pub fn tangency_ideal(gens: &[VectorField], y: &SubspaceY) -> TangencyIdeal {
    let mut out = Vec::new();
    for g in gens {
        for &s in y.vanishing() {
            out.push(y.restrict(g.component(s)));
        }
    }
    Ideal::new(out)
}

/// Membership in `J_T ⊗ F_Y`.
pub fn jt_twist_membership(v: &TangentFieldOnY, gens: &[VectorField], bound: Option<u32>) -> MembershipCertificate {
    let y = v.subspace();
    let ideal = tangency_ideal(gens, y);
    let restricted: Vec<Vec<Poly>> = gens.iter().map(|g| TangentFieldOnY::restrict(g, y).components().to_vec()).collect();
    solve_module_membership(v.components(), &restricted, &ideal, &y.free(), bound)
}

fn grid(dim: usize, coords: &[usize]) -> Vec<Vec<Scalar>> {
    let values = [0i64, 1, -1, 2];
    let total = 4usize.pow(coords.len().min(4) as u32);
    (0..total)
        .map(|mut code| {
            let mut pt = vec![Scalar::zero(); dim + 1];
            for &c in coords.iter().take(4) {
                pt[c] = Scalar::from_int(values[code % 4]);
                code /= 4;
            }
            pt
        })
        .collect()
}

/// Spot-check that the generators are pointwise independent at a few
/// rational points.
pub fn check_regular(gens: &[VectorField]) -> Result<()> {
    let Some(first) = gens.first() else { return Ok(()) };
    let dim = first.dim();
    for pt in grid(dim, &(0..dim).collect::<Vec<_>>()).into_iter().take(16) {
        let vals: Vec<Vec<Scalar>> = gens.iter().map(|g| g.evaluate(&pt)).collect::<Result<_>>()?;
        for k in 0..vals.len() {
            if in_span(&vals[..k], &vals[k]) {
                let p: Vec<String> = pt[..dim].iter().map(|s| s.to_string()).collect();
                return Err(Error::Hypothesis(format!("generators are dependent at ({})", p.join(", "))));
            }
        }
    }
    Ok(())
}

/// Sample points of `T` on a grid over `Y`, found by evaluating the ideal.
pub fn sample_tangency_points(ideal: &Ideal, y: &SubspaceY) -> Vec<Vec<Scalar>> {
    grid(y.dim(), &y.free())
        .into_iter()
        .filter(|pt| ideal.generators.iter().all(|h| h.evaluate(pt).map(|v| v.is_zero()).unwrap_or(false)))
        .collect()
}

#[derive(Clone, Debug)]
pub struct FoliationBracketReport {
    pub bracket: VectorField,
    pub restricted: TangentFieldOnY,
    pub certificate: MembershipCertificate,
    pub tangency_points: usize,
    pub vanishes_on_t: bool,
}

impl FoliationBracketReport {
    pub fn passed(&self) -> bool {
        self.certificate.is_member() && self.vanishes_on_t
    }
}

/// For `A, B ∈ F` agreeing along `Y`, `[A, B]|_Y ∈ J_T ⊗ F_Y` and vanishes on `T`.
pub fn check_foliation_bracket(
    a: &VectorField,
    b: &VectorField,
    gens: &[VectorField],
    y: &SubspaceY,
    bound: Option<u32>,
) -> Result<FoliationBracketReport> {
    let sheaf = SheafSpec::FoliationSpan(gens.to_vec());
    for (name, f) in [("first", a), ("second", b)] {
        if !sheaf.contains_field(f, bound).is_member() {
            return Err(Error::Hypothesis(format!("{name} field {f} is not in the foliation")));
        }
    }
    if TangentFieldOnY::restrict(a, y) != TangentFieldOnY::restrict(b, y) {
        return Err(Error::Hypothesis("fields differ along Y".into()));
    }
    let bracket = a.bracket(b)?;
    let restricted = TangentFieldOnY::restrict(&bracket, y);
    let certificate = jt_twist_membership(&restricted, gens, bound);
    let points = sample_tangency_points(&tangency_ideal(gens, y), y);
    let mut vanishes_on_t = true;
    for pt in &points {
        if restricted.components().iter().any(|c| !c.evaluate(pt).map(|v| v.is_zero()).unwrap_or(false)) {
            vanishes_on_t = false;
        }
    }
    Ok(FoliationBracketReport { bracket, restricted, certificate, tangency_points: points.len(), vanishes_on_t })
}

#[derive(Clone, Debug)]
pub struct VelocityReport {
    /// `d/dt Φ_t` modulo `tⁿ`.
    pub velocity: Vec<Poly>,
    /// Generators along the flow, `G_i(Φ_t(x))` modulo `tⁿ`.
    pub transported: Vec<Vec<Poly>>,
    /// Witness `f_i(x, t)` with velocity `≡ Σ f_i·G_i∘Φ` modulo `tⁿ`.
    pub certificate: MembershipCertificate,
}

/// The velocity of the flow of `A ∈ F` lies in the pull-back of the
/// foliation, modulo `tⁿ`.
pub fn velocity_in_foliation(a: &TimeDepVectorField, gens: &[VectorField], n: usize, bound: Option<u32>) -> Result<VelocityReport> {
    if n == 0 {
        return Err(Error::Invalid("velocity needs order at least 1".into()));
    }
    let sheaf = SheafSpec::FoliationSpan(gens.to_vec());
    if !sheaf.contains(a, bound).is_member() {
        return Err(Error::Hypothesis(format!("{a} is not a time-dependent field in the foliation")));
    }
    let vars = a.vars().clone();
    let t = a.time_index();
    let top = (n - 1) as u32;
    let velocity: Vec<Poly> = velocity_series(a, n).iter().map(|p| p.truncate_time(top)).collect();
    let jet = flow_jet(a, n);
    let curve: HashMap<String, Poly> = (0..a.dim()).map(|i| (vars.name(i).to_string(), jet.coordinate(i))).collect();
    let transported: Vec<Vec<Poly>> = gens
        .iter()
        .map(|g| g.components().iter().map(|c| substitute_time_curve(c, &curve, n - 1)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let coeff_vars: Vec<usize> = (0..=a.dim()).collect();
    let certificate = solve_module_membership_mod(&velocity, &transported, &Ideal::unit(&vars), &coeff_vars, bound, Some((t, top)));
    Ok(VelocityReport { velocity, transported, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Vars;
    use std::sync::Arc;

    fn plane() -> (Arc<Vars>, Poly, Poly, VectorField) {
        let v = Vars::chart_named(["x", "y"]).unwrap();
        let x = Poly::var(&v, 0);
        let y = Poly::var(&v, 1);
        let g = VectorField::new(&v, vec![Poly::one(&v), x.clone()]).unwrap();
        (v, x, y, g)
    }

    #[test]
    fn tangency_of_parabola_leaves() {
        let (v, x, y, g) = plane();
        let sub = SubspaceY::new(2, &[1]).unwrap();
        assert_eq!(tangency_ideal(&[g.clone()], &sub), Ideal::new(vec![x.clone()]));
        let transverse = VectorField::new(&v, vec![x.clone(), Poly::one(&v)]).unwrap();
        assert!(tangency_ideal(&[transverse], &sub).is_unit());
        let tangent = VectorField::new(&v, vec![Poly::one(&v), y.clone()]).unwrap();
        assert!(tangency_ideal(&[tangent], &sub).is_zero_ideal());
    }

    #[test]
    fn twisted_membership() {
        let (v, x, _, g) = plane();
        let sub = SubspaceY::new(2, &[1]).unwrap();
        let gy = TangentFieldOnY::restrict(&g, &sub);
        let xg = TangentFieldOnY::new(&sub, gy.components().iter().map(|c| c * &x).collect()).unwrap();
        assert!(jt_twist_membership(&xg, &[g.clone()], None).is_member());
        assert!(matches!(jt_twist_membership(&gy, &[g.clone()], None), MembershipCertificate::NonMember { .. }));
        assert!(jt_twist_membership(&TangentFieldOnY::zero(&sub, &v), &[g], None).is_member());
    }

    #[test]
    fn bracket_vanishes_on_tangency_locus() {
        let (v, x, y, g) = plane();
        let sub = SubspaceY::new(2, &[1]).unwrap();
        let b = g.mul_poly(&(&Poly::one(&v) + &y));
        let r = check_foliation_bracket(&g, &b, &[g.clone()], &sub, None).unwrap();
        assert_eq!(r.bracket, g.mul_poly(&x));
        assert!(r.passed());
        assert_eq!(r.tangency_points, 1);
        assert!(check_foliation_bracket(&g, &g, &[g.clone()], &sub, None).unwrap().passed());
    }

    #[test]
    fn velocity_witnesses() {
        let (v, x, _, g) = plane();
        let t = Poly::var(&v, 2);
        let r = velocity_in_foliation(&g.to_time_dep(), &[g.clone()], 4, None).unwrap();
        assert_eq!(r.certificate.witness().unwrap(), &[Poly::one(&v)]);
        let r = velocity_in_foliation(&g.to_time_dep().mul_poly(&t), &[g.clone()], 4, None).unwrap();
        assert_eq!(r.certificate.witness().unwrap(), &[t.clone()]);
        let r = velocity_in_foliation(&g.mul_poly(&x).to_time_dep(), &[g.clone()], 3, None).unwrap();
        let phi1 = flow_jet(&g.mul_poly(&x).to_time_dep(), 3).coordinate(0).truncate_time(2);
        assert_eq!(r.certificate.witness().unwrap(), &[phi1]);
    }

    #[test]
    fn regularity_spot_check() {
        let (v, x, _, g) = plane();
        assert!(check_regular(&[g.clone()]).is_ok());
        let degenerate = VectorField::new(&v, vec![x.clone(), x]).unwrap();
        assert!(check_regular(&[degenerate]).is_err());
    }
}
