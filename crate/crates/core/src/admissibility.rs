//! Admissible time-dependent fields and the one-step extension that raises
//! admissibility while prescribing the next jet difference on `Y`.

use crate::error::{Error, Result};
use crate::field::{iterated_lie_on_dt_at_zero, lie_bracket, lie_d, lie_d_powers_mod, TimeDepVectorField, VectorField};
use crate::geometry::{MembershipCertificate, Setup};
use crate::jet::{flow_jet, jet_difference, TangentFieldOnY};
use crate::scalar::Scalar;

/// `(Lie^m_{D(A)} A)₀|_Y` for `m = 1..=n`, with membership verdicts in `G`.
#[derive(Clone, Debug)]
pub struct AdmissibilityReport {
    pub order: usize,
    pub defects: Vec<TangentFieldOnY>,
    pub verdicts: Vec<MembershipCertificate>,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        self.verdicts.iter().all(MembershipCertificate::is_member)
    }

    pub fn inconclusive(&self) -> bool {
        self.verdicts.iter().any(MembershipCertificate::is_inconclusive)
    }
}

pub fn admissibility_defect(a: &TimeDepVectorField, n: usize, setup: &Setup) -> Result<Vec<TangentFieldOnY>> {
    let powers = lie_d_powers_mod(a, a, n)?;
    Ok(powers[1..].iter().map(|p| setup.restrict(&p.at_time_zero())).collect())
}

/// Admissibility of `A ∈ F` up to order `n`. A field outside `F` is a
/// precondition failure, not an inadmissible field.
pub fn is_admissible(a: &TimeDepVectorField, n: usize, setup: &Setup) -> Result<AdmissibilityReport> {
    match setup.f_membership(a) {
        MembershipCertificate::Member { .. } => {}
        other => {
            return Err(Error::Hypothesis(format!("{a} is not a time-dependent field in F: {}", other.reason().unwrap_or(""))))
        }
    }
    let defects = admissibility_defect(a, n, setup)?;
    let verdicts = defects.iter().map(|d| setup.g_membership(d)).collect();
    Ok(AdmissibilityReport { order: n, defects, verdicts })
}

/// `A + tⁿ/n!·Δ + t^{n+1}/(n+1)!·E`.
pub fn extension_field(a: &TimeDepVectorField, delta: &VectorField, e: &VectorField, n: usize) -> TimeDepVectorField {
    a.add(&delta.to_time_dep().times_t_pow_over_factorial(n as u32))
        .add(&e.to_time_dep().times_t_pow_over_factorial(n as u32 + 1))
}

/// `E = −n·[A₀, Δ] − (Lie^{n+1}_{D(A)} A)₀`.
pub fn correction_term(a: &TimeDepVectorField, delta: &VectorField, n: usize) -> Result<VectorField> {
    let top = lie_d_powers_mod(a, a, n + 1)?.pop().unwrap().at_time_zero();
    let br = a.at_time_zero().bracket(delta)?;
    Ok(br.scale(&Scalar::from_int(-(n as i64))).sub(&top))
}

#[derive(Clone, Debug)]
pub struct Extension {
    pub field: TimeDepVectorField,
    pub e: VectorField,
}

/// Given `A` `n`-admissible and `Δ ∈ F` with `Δ|_Y ∈ G`, build `B`,
/// `(n+1)`-admissible, with the same `n`-jets as `A` on `Y` and `(n+1)`-st
/// jet difference `Δ|_Y`. All hypotheses are checked.
pub fn extend_admissible(a: &TimeDepVectorField, delta: &VectorField, n: usize, setup: &Setup) -> Result<Extension> {
    if n == 0 {
        return Err(Error::Invalid("extension order must be at least 1".into()));
    }
    if !setup.sheaf.contains_field(delta, setup.degree_bound).is_member() {
        return Err(Error::Hypothesis(format!("Δ = {delta} is not in F")));
    }
    let dy = setup.restrict(delta);
    if !setup.g_membership(&dy).is_member() {
        return Err(Error::Hypothesis(format!("Δ|_Y = {dy} is not in G")));
    }
    let report = is_admissible(a, n, setup)?;
    if !report.admissible() {
        let m = report.verdicts.iter().position(|v| !v.is_member()).unwrap() + 1;
        return Err(Error::Hypothesis(format!("A is not {n}-admissible: defect at m = {m} is {}", report.defects[m - 1])));
    }
    let e = correction_term(a, delta, n)?;
    Ok(Extension { field: extension_field(a, delta, &e, n), e })
}

/// The three conclusions for `B` built from `A` and `Δ`.
#[derive(Clone, Debug)]
pub struct ExtensionCheck {
    pub admissibility: AdmissibilityReport,
    pub jets_agree: bool,
    pub difference: TangentFieldOnY,
    pub difference_matches: bool,
}

impl ExtensionCheck {
    pub fn passed(&self) -> bool {
        self.admissibility.admissible() && self.jets_agree && self.difference_matches
    }
}

pub fn check_extension(a: &TimeDepVectorField, b: &TimeDepVectorField, delta: &VectorField, n: usize, setup: &Setup) -> Result<ExtensionCheck> {
    let admissibility = is_admissible(b, n + 1, setup)?;
    let ja = flow_jet(a, n + 1);
    let jb = flow_jet(b, n + 1);
    let jets_agree = ja.truncate(n)?.restrict(&setup.y) == jb.truncate(n)?.restrict(&setup.y);
    let difference = jet_difference(&jb, &ja, &setup.y)?;
    let difference_matches = difference == setup.restrict(delta);
    Ok(ExtensionCheck { admissibility, jets_agree, difference, difference_matches })
}

/// Residuals of the two congruences relating the iterated derivatives of
/// `B = A + tⁿ/n!·Δ + t^{n+1}/(n+1)!·E` to those of `A`; all must vanish.
#[derive(Clone, Debug)]
pub struct CongruenceReport {
    /// `m = 1..=n`: `Lie^m_{D(B)}B − Lie^m_{D(A)}A − t^{n−m}/(n−m)!·Δ mod t^{n−m+1}`.
    pub low: Vec<TimeDepVectorField>,
    /// `Lie^{n+1}_{D(B)}B − Lie^{n+1}_{D(A)}A − E − n[A, Δ] mod t`.
    pub top: TimeDepVectorField,
}

impl CongruenceReport {
    pub fn holds(&self) -> bool {
        self.low.iter().all(TimeDepVectorField::is_zero) && self.top.is_zero()
    }
}

pub fn extension_congruences(a: &TimeDepVectorField, delta: &VectorField, e: &VectorField, n: usize) -> Result<CongruenceReport> {
    let b = extension_field(a, delta, e, n);
    let pa = lie_d_powers_mod(a, a, n + 1)?;
    let pb = lie_d_powers_mod(&b, &b, n + 1)?;
    let d = delta.to_time_dep();
    let low = (1..=n)
        .map(|m| {
            let k = (n - m) as u32;
            pb[m].sub(&pa[m]).sub(&d.times_t_pow_over_factorial(k)).truncate_time(k)
        })
        .collect();
    let br = lie_bracket(a, &d)?.scale(&Scalar::from_int(n as i64));
    let top = pb[n + 1].sub(&pa[n + 1]).sub(&e.to_time_dep()).sub(&br).truncate_time(0);
    Ok(CongruenceReport { low, top })
}

/// `Lie_{D(B)}F − Lie_{D(A)}F − tⁿ/n!·[Δ, F] − t^{n+1}/(n+1)!·[E, F]`.
pub fn derivative_shift_residual(
    a: &TimeDepVectorField,
    delta: &VectorField,
    e: &VectorField,
    n: usize,
    f: &TimeDepVectorField,
) -> Result<TimeDepVectorField> {
    let b = extension_field(a, delta, e, n);
    let lhs = lie_d(&b, f)?.sub(&lie_d(a, f)?);
    let r1 = lie_bracket(&delta.to_time_dep(), f)?.times_t_pow_over_factorial(n as u32);
    let r2 = lie_bracket(&e.to_time_dep(), f)?.times_t_pow_over_factorial(n as u32 + 1);
    Ok(lhs.sub(&r1).sub(&r2))
}

#[derive(Clone, Debug)]
pub struct DifferenceReport {
    pub difference: TangentFieldOnY,
    pub certificate: MembershipCertificate,
}

/// For `n`-admissible `A`, `B` with equal `n`-jets on `Y`, the difference of
/// their `(n+1)`-jets on `Y`, certified in `G`.
pub fn difference_in_g(a: &TimeDepVectorField, b: &TimeDepVectorField, n: usize, setup: &Setup) -> Result<DifferenceReport> {
    for (name, f) in [("A", a), ("B", b)] {
        let r = is_admissible(f, n, setup)?;
        if !r.admissible() {
            return Err(Error::Hypothesis(format!("{name} is not {n}-admissible")));
        }
    }
    let difference = jet_difference(&flow_jet(b, n + 1), &flow_jet(a, n + 1), &setup.y)?;
    let certificate = setup.g_membership(&difference);
    Ok(DifferenceReport { difference, certificate })
}

/// For every sequence of `D(A)`, `D(B)` of length `n`, the restriction of
/// `(Lie_{D(F₁)}∘…∘Lie_{D(Fₙ)} ∂/∂t)₀` to `Y` and its membership in `G`.
pub fn mixed_sequence_check(
    a: &TimeDepVectorField,
    b: &TimeDepVectorField,
    n: usize,
    setup: &Setup,
) -> Result<Vec<(Vec<bool>, TangentFieldOnY, MembershipCertificate)>> {
    let mut out = Vec::with_capacity(1 << n);
    for code in 0..(1u32 << n) {
        let pattern: Vec<bool> = (0..n).map(|i| code >> i & 1 == 1).collect();
        let seq: Vec<TimeDepVectorField> = pattern.iter().map(|&is_b| if is_b { b.clone() } else { a.clone() }).collect();
        let v = setup.restrict(&iterated_lie_on_dt_at_zero(&seq)?);
        let cert = setup.g_membership(&v);
        out.push((pattern, v, cert));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{iterated_lie_d, iterated_lie_on_dt};
    use crate::geometry::{ObstructionSpec, SheafSpec, SubspaceY};
    use crate::poly::Poly;
    use crate::symplectic::{ham_field, DarbouxSpace};

    fn symplectic_setup() -> (Setup, Poly, Poly, Poly) {
        let s = DarbouxSpace::new(1);
        let v = s.vars();
        let setup = Setup::new(&v, SubspaceY::new(2, &[0]).unwrap(), SheafSpec::Hamiltonian(s.clone()), ObstructionSpec::Perp(s));
        (setup, Poly::var(&v, 0), Poly::var(&v, 1), Poly::var(&v, 2))
    }

    fn space(setup: &Setup) -> DarbouxSpace {
        match &setup.sheaf {
            SheafSpec::Hamiltonian(s) => s.clone(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn time_independent_fields_are_admissible() {
        let (setup, x, y, _) = symplectic_setup();
        let a = ham_field(&(&x * &y), &space(&setup)).to_time_dep();
        let r = is_admissible(&a, 4, &setup).unwrap();
        assert!(r.admissible());
        assert!(r.defects.iter().all(TangentFieldOnY::is_zero));
    }

    #[test]
    fn first_defect_and_sign_relation() {
        let (setup, x, y, t) = symplectic_setup();
        let s = space(&setup);
        let a0 = ham_field(&(&x * &y), &s).to_time_dep();
        let a1 = ham_field(&x.pow(2), &s).to_time_dep();
        let a = a0.add(&a1.mul_poly(&t));
        let d = admissibility_defect(&a, 2, &setup).unwrap();
        // (Lie_{D(A)} A)₀ = A₁.
        assert_eq!(d[0], setup.restrict(&a1.at_time_zero()));
        for m in 1..=2 {
            let seq = vec![a.clone(); m];
            let via_dt = iterated_lie_on_dt(&seq).unwrap();
            assert_eq!(via_dt, iterated_lie_d(&a, &a, m).unwrap().neg());
        }
        let r = is_admissible(&a, 2, &setup).unwrap();
        assert_eq!(r.verdicts.len(), 2);
        // X_{x²} = (0, −2x) vanishes on Y.
        assert!(r.admissible());
    }

    #[test]
    fn non_members_are_rejected_up_front() {
        let (setup, x, _, _) = symplectic_setup();
        let v = x.vars().clone();
        let a = TimeDepVectorField::new(&v, vec![x.clone(), Poly::zero(&v)]).unwrap();
        assert!(matches!(is_admissible(&a, 1, &setup), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn worked_extension() {
        let (setup, x, y, _) = symplectic_setup();
        let s = space(&setup);
        let a = ham_field(&(&x * &y), &s).to_time_dep();
        let delta = ham_field(&x, &s);
        let ext = extend_admissible(&a, &delta, 1, &setup).unwrap();
        let check = check_extension(&a, &ext.field, &delta, 1, &setup).unwrap();
        assert!(check.passed(), "{check:?}");
        assert!(extension_congruences(&a, &delta, &ext.e, 1).unwrap().holds());
        let zero = VectorField::zero(&delta.vars().clone());
        let same = extend_admissible(&a, &zero, 2, &setup).unwrap();
        assert_eq!(same.field, a);
    }

    #[test]
    fn difference_in_perp_for_agreeing_hamiltonians() {
        let (setup, x, y, _) = symplectic_setup();
        let s = space(&setup);
        let a = ham_field(&(&x * &y), &s).to_time_dep();
        let b = ham_field(&(&(&x * &y) + &(&x.pow(2) * &y)), &s).to_time_dep();
        let r = difference_in_g(&a, &b, 1, &setup).unwrap();
        assert!(r.certificate.is_member());
        assert!(difference_in_g(&a, &a, 1, &setup).unwrap().difference.is_zero());
        for (_, _, c) in mixed_sequence_check(&a, &b, 2, &setup).unwrap() {
            assert!(c.is_member());
        }
    }

    #[test]
    fn shift_identity() {
        let (setup, x, y, t) = symplectic_setup();
        let s = space(&setup);
        let a = ham_field(&(&x * &y), &s).to_time_dep().add(&ham_field(&y.pow(2), &s).to_time_dep().mul_poly(&t));
        let delta = ham_field(&(&x * &x), &s);
        let e = ham_field(&(&x * &y.pow(2)), &s);
        let f = ham_field(&(&y * &x.pow(2)), &s).to_time_dep().mul_poly(&t);
        assert!(derivative_shift_residual(&a, &delta, &e, 2, &f).unwrap().is_zero());
    }

    #[test]
    fn extension_hypotheses_are_validated() {
        let (setup, x, y, _) = symplectic_setup();
        let s = space(&setup);
        let a = ham_field(&(&x * &y), &s).to_time_dep();
        // X_y = (1, 0) restricts outside Perp.
        assert!(matches!(extend_admissible(&a, &ham_field(&y, &s), 1, &setup), Err(Error::Hypothesis(_))));
    }
}
