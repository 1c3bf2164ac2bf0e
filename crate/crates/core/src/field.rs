//! Polynomial vector fields on a coordinate chart, time-dependent fields on
//! the product with the time axis, and the Lie calculus relating them.
//!
//! A chart's variable list is the chart coordinates followed by the time
//! variable, so component `i` of a field is the coefficient of `∂/∂x_i`
//! where `x_i` is variable `i`.
//!
//! Conventions: `[A, B]_i = Σ_j A_j ∂_j B_i − B_j ∂_j A_i` (the Lie derivative
//! `Lie_A B`), and `D(A) = ∂/∂t + A`. For a time-dependent `B` without a
//! `∂/∂t` component, `Lie_{D(A)} B = ∂B/∂t + [A, B]`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Poly, Vars};
use crate::scalar::Scalar;
use crate::series::{at_time_zero, times_t_pow_over_factorial};

fn check_chart(vars: &Arc<Vars>) -> Result<usize> {
    match vars.time() {
        Some(t) if t + 1 == vars.len() => Ok(t),
        _ => Err(Error::Invalid("chart variables must end with the time variable".into())),
    }
}

fn check_components(vars: &Arc<Vars>, components: &[Poly]) -> Result<()> {
    let dim = check_chart(vars)?;
    if components.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: components.len() });
    }
    for c in components {
        if **c.vars() != **vars {
            return Err(Error::VariableMismatch { left: vars.names().join(","), right: c.vars().names().join(",") });
        }
    }
    Ok(())
}

fn bracket_components(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let dim = a.len();
    (0..dim)
        .map(|i| {
            let mut acc = Poly::zero(a[0].vars());
            for j in 0..dim {
                if !a[j].is_zero() {
                    let d = b[i].partial(j);
                    if !d.is_zero() {
                        acc = &acc + &(&a[j] * &d);
                    }
                }
                if !b[j].is_zero() {
                    let d = a[i].partial(j);
                    if !d.is_zero() {
                        acc = &acc - &(&b[j] * &d);
                    }
                }
            }
            acc
        })
        .collect()
}

/// [`bracket_components`] modulo `t^(order+1)`.
fn bracket_components_mod(a: &[Poly], b: &[Poly], t: usize, order: u32) -> Vec<Poly> {
    let dim = a.len();
    (0..dim)
        .map(|i| {
            let mut acc = Poly::zero(a[0].vars());
            for j in 0..dim {
                let d = b[i].partial(j);
                if !a[j].is_zero() && !d.is_zero() {
                    acc = &acc + &a[j].mul_truncated(&d, t, order);
                }
                let d = a[i].partial(j);
                if !b[j].is_zero() && !d.is_zero() {
                    acc = &acc - &b[j].mul_truncated(&d, t, order);
                }
            }
            acc
        })
        .collect()
}

fn fmt_components(f: &mut fmt::Formatter<'_>, comps: &[Poly]) -> fmt::Result {
    write!(f, "(")?;
    for (i, c) in comps.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, ")")
}

/// A time-dependent vector field `Σ tⁱ Aᵢ`: components are polynomials in
/// the chart variables and `t`, with no `∂/∂t` component.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TimeDepVectorField {
    vars: Arc<Vars>,
    components: Vec<Poly>,
}

/// A time-independent polynomial vector field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    vars: Arc<Vars>,
    components: Vec<Poly>,
}

impl TimeDepVectorField {
    pub fn new(vars: &Arc<Vars>, components: Vec<Poly>) -> Result<Self> {
        check_components(vars, &components)?;
        Ok(TimeDepVectorField { vars: vars.clone(), components })
    }

    pub fn zero(vars: &Arc<Vars>) -> Self {
        let dim = check_chart(vars).expect("chart variables");
        TimeDepVectorField { vars: vars.clone(), components: vec![Poly::zero(vars); dim] }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn vars(&self) -> &Arc<Vars> {
        &self.vars
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn time_index(&self) -> usize {
        self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn time_degree(&self) -> u32 {
        self.components.iter().map(Poly::time_degree).max().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().map(Poly::degree).max().unwrap_or(0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        if *self.vars != *other.vars {
            return Err(Error::VariableMismatch {
                left: self.vars.names().join(","),
                right: other.vars.names().join(","),
            });
        }
        Ok(())
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        TimeDepVectorField { vars: self.vars.clone(), components: self.components.iter().map(f).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Poly, &Poly) -> Poly) -> Self {
        TimeDepVectorField {
            vars: self.vars.clone(),
            components: self.components.iter().zip(&other.components).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn neg(&self) -> Self {
        self.map(|p| -p)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map(|p| p.scale(c))
    }

    /// Multiply every component by the function `f`.
    pub fn mul_poly(&self, f: &Poly) -> Self {
        self.map(|p| p * f)
    }

    /// `tᵏ/k! · self`.
    pub fn times_t_pow_over_factorial(&self, k: u32) -> Self {
        self.map(|p| times_t_pow_over_factorial(p, k))
    }

    /// `tᵏ · self`.
    pub fn times_t_pow(&self, k: u32) -> Self {
        let t = self.time_index();
        self.map(|p| p.mul_var_pow(t, k as u16))
    }

    /// Componentwise `∂/∂t`.
    pub fn dt(&self) -> Self {
        let t = self.time_index();
        self.map(|p| p.partial(t))
    }

    /// Keep `t^0..t^order`.
    pub fn truncate_time(&self, order: u32) -> Self {
        self.map(|p| p.truncate_time(order))
    }

    /// The field at `t = 0`.
    pub fn at_time_zero(&self) -> VectorField {
        VectorField { vars: self.vars.clone(), components: self.components.iter().map(at_time_zero).collect() }
    }

    /// Coefficient of `tᵏ`, a time-independent field.
    pub fn time_coefficient(&self, k: u32) -> VectorField {
        let t = self.time_index();
        VectorField { vars: self.vars.clone(), components: self.components.iter().map(|p| p.coeff_of(t, k as u16)).collect() }
    }

    /// The fields `A₀, A₁, …` with `self = Σ tⁱ Aᵢ`.
    pub fn time_coefficients(&self) -> Vec<VectorField> {
        (0..=self.time_degree()).map(|k| self.time_coefficient(k)).collect()
    }

    pub fn from_time_coefficients(vars: &Arc<Vars>, coeffs: &[VectorField]) -> Result<Self> {
        let mut acc = TimeDepVectorField::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            acc = acc.try_add(&c.to_time_dep().times_t_pow(k as u32))?;
        }
        Ok(acc)
    }

    /// `Some` when no component mentions `t`.
    pub fn as_time_independent(&self) -> Option<VectorField> {
        let t = self.time_index();
        if self.components.iter().any(|p| p.mentions(t)) {
            None
        } else {
            Some(VectorField { vars: self.vars.clone(), components: self.components.clone() })
        }
    }

    /// Restrict every component to the subspace where `vanishing` are zero.
    pub fn restrict(&self, vanishing: &[usize]) -> Self {
        self.map(|p| p.restrict(vanishing))
    }
}

impl VectorField {
    pub fn new(vars: &Arc<Vars>, components: Vec<Poly>) -> Result<Self> {
        check_components(vars, &components)?;
        let t = vars.time().unwrap();
        if let Some(p) = components.iter().find(|p| p.mentions(t)) {
            return Err(Error::TimeDependent(p.to_string()));
        }
        Ok(VectorField { vars: vars.clone(), components })
    }

    pub fn zero(vars: &Arc<Vars>) -> Self {
        TimeDepVectorField::zero(vars).at_time_zero()
    }

    /// The coordinate field `∂/∂x_i`.
    pub fn coordinate(vars: &Arc<Vars>, i: usize) -> Self {
        let mut f = VectorField::zero(vars);
        f.components[i] = Poly::one(vars);
        f
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn vars(&self) -> &Arc<Vars> {
        &self.vars
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().map(Poly::degree).max().unwrap_or(0)
    }

    pub fn to_time_dep(&self) -> TimeDepVectorField {
        TimeDepVectorField { vars: self.vars.clone(), components: self.components.clone() }
    }

    fn lift(f: TimeDepVectorField) -> Self {
        VectorField { vars: f.vars, components: f.components }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.to_time_dep().try_add(&other.to_time_dep()).map(VectorField::lift)
    }

    pub fn add(&self, other: &Self) -> Self {
        VectorField::lift(self.to_time_dep().add(&other.to_time_dep()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        VectorField::lift(self.to_time_dep().sub(&other.to_time_dep()))
    }

    pub fn neg(&self) -> Self {
        VectorField::lift(self.to_time_dep().neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        VectorField::lift(self.to_time_dep().scale(c))
    }

    /// Multiply by a function of the chart variables; panics if `f` involves `t`.
    pub fn mul_poly(&self, f: &Poly) -> Self {
        assert!(!f.mentions(self.dim()), "multiplier depends on time");
        VectorField::lift(self.to_time_dep().mul_poly(f))
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        lie_bracket(&self.to_time_dep(), &other.to_time_dep()).map(VectorField::lift)
    }

    pub fn restrict(&self, vanishing: &[usize]) -> Self {
        VectorField { vars: self.vars.clone(), components: self.components.iter().map(|p| p.restrict(vanishing)).collect() }
    }

    /// Evaluate at a point of the chart (time is irrelevant).
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Vec<Scalar>> {
        let mut full = point.to_vec();
        if full.len() == self.dim() {
            full.push(Scalar::default());
        }
        self.components.iter().map(|p| p.evaluate(&full)).collect()
    }
}

impl fmt::Display for TimeDepVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_components(f, &self.components)
    }
}

impl fmt::Debug for TimeDepVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TimeDepVectorField{self}")
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_components(f, &self.components)
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField{self}")
    }
}

/// `xpart + dtcoeff·∂/∂t` on the product of the chart with the time axis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DtTaggedField {
    pub xpart: TimeDepVectorField,
    pub dtcoeff: Poly,
}

impl DtTaggedField {
    /// `D(A) = ∂/∂t + A`.
    pub fn d_of(a: &TimeDepVectorField) -> Self {
        DtTaggedField { xpart: a.clone(), dtcoeff: Poly::one(a.vars()) }
    }

    /// `∂/∂t` itself.
    pub fn dt(vars: &Arc<Vars>) -> Self {
        DtTaggedField { xpart: TimeDepVectorField::zero(vars), dtcoeff: Poly::one(vars) }
    }

    pub fn pure(a: &TimeDepVectorField) -> Self {
        DtTaggedField { xpart: a.clone(), dtcoeff: Poly::zero(a.vars()) }
    }

    pub fn is_pure(&self) -> bool {
        self.dtcoeff.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        DtTaggedField { xpart: self.xpart.add(&other.xpart), dtcoeff: &self.dtcoeff + &other.dtcoeff }
    }

    pub fn sub(&self, other: &Self) -> Self {
        DtTaggedField { xpart: self.xpart.sub(&other.xpart), dtcoeff: &self.dtcoeff - &other.dtcoeff }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        DtTaggedField { xpart: self.xpart.scale(c), dtcoeff: self.dtcoeff.scale(c) }
    }

    /// Full Lie bracket on the product, differentiating in `x` and `t`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.xpart.check_same(&other.xpart)?;
        let vars = self.xpart.vars().clone();
        let mut a = self.xpart.components.clone();
        a.push(self.dtcoeff.clone());
        let mut b = other.xpart.components.clone();
        b.push(other.dtcoeff.clone());
        let mut c = bracket_components(&a, &b);
        let dtcoeff = c.pop().unwrap();
        Ok(DtTaggedField { xpart: TimeDepVectorField { vars, components: c }, dtcoeff })
    }
}

/// `[A, B]` using chart derivatives only; `t` is a parameter.
pub fn lie_bracket(a: &TimeDepVectorField, b: &TimeDepVectorField) -> Result<TimeDepVectorField> {
    a.check_same(b)?;
    Ok(TimeDepVectorField { vars: a.vars.clone(), components: bracket_components(&a.components, &b.components) })
}

/// `Lie_{D(A)} B = ∂B/∂t + [A, B]`.
pub fn lie_d(a: &TimeDepVectorField, b: &TimeDepVectorField) -> Result<TimeDepVectorField> {
    Ok(b.dt().add(&lie_bracket(a, b)?))
}

/// `Lie^m_{D(A)} B`; `m = 0` returns `B`.
pub fn iterated_lie_d(a: &TimeDepVectorField, b: &TimeDepVectorField, m: usize) -> Result<TimeDepVectorField> {
    a.check_same(b)?;
    let mut cur = b.clone();
    for _ in 0..m {
        cur = lie_d(a, &cur)?;
    }
    Ok(cur)
}

/// All of `Lie^m_{D(A)} B` for `m = 0..=n`, sharing intermediate work.
pub fn lie_d_powers(a: &TimeDepVectorField, b: &TimeDepVectorField, n: usize) -> Result<Vec<TimeDepVectorField>> {
    a.check_same(b)?;
    let mut out = vec![b.clone()];
    for _ in 0..n {
        let next = lie_d(a, out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

/// `Lie_{D(A)} B` modulo `t^(order+1)`; exact when `B` is known modulo
/// `t^(order+2)`.
fn lie_d_mod(a: &TimeDepVectorField, b: &TimeDepVectorField, order: u32) -> TimeDepVectorField {
    let t = a.time_index();
    let a = a.truncate_time(order);
    let br = bracket_components_mod(&a.components, &b.truncate_time(order).components, t, order);
    let br = TimeDepVectorField { vars: a.vars.clone(), components: br };
    b.dt().truncate_time(order).add(&br)
}

/// Like [`lie_d_powers`], but entry `m` is only kept modulo `t^(n−m+1)`,
/// which is all that is needed to evaluate every entry at `t = 0`. Avoids
/// the growth of the high `t`-coefficients.
pub fn lie_d_powers_mod(a: &TimeDepVectorField, b: &TimeDepVectorField, n: usize) -> Result<Vec<TimeDepVectorField>> {
    a.check_same(b)?;
    let mut out = vec![b.truncate_time(n as u32)];
    for m in 1..=n {
        let next = lie_d_mod(a, out.last().unwrap(), (n - m) as u32);
        out.push(next);
    }
    Ok(out)
}

/// [`iterated_lie_on_dt`] evaluated at `t = 0`, truncating as it goes.
pub fn iterated_lie_on_dt_at_zero(seq: &[TimeDepVectorField]) -> Result<VectorField> {
    let (last, rest) = seq.split_last().ok_or(Error::EmptySequence)?;
    for f in rest {
        last.check_same(f)?;
    }
    let mut cur = last.dt().neg().truncate_time(rest.len() as u32);
    for (k, f) in rest.iter().rev().enumerate() {
        cur = lie_d_mod(f, &cur, (rest.len() - k - 1) as u32);
    }
    Ok(cur.at_time_zero())
}

/// `Lie_{D(F₁)} ∘ … ∘ Lie_{D(Fₙ)} (∂/∂t)`.
///
/// The innermost step `[D(Fₙ), ∂/∂t] = −∂Fₙ/∂t` has no `∂/∂t` part, so the
/// result is a field without `∂/∂t` component.
pub fn iterated_lie_on_dt(seq: &[TimeDepVectorField]) -> Result<TimeDepVectorField> {
    let (last, rest) = seq.split_last().ok_or(Error::EmptySequence)?;
    for f in rest {
        last.check_same(f)?;
    }
    let mut cur = last.dt().neg();
    for f in rest.iter().rev() {
        cur = lie_d(f, &cur)?;
    }
    Ok(cur)
}

/// Brute-force counterpart of [`iterated_lie_on_dt`] through full brackets on
/// the product; asserts the `∂/∂t` coefficient of every intermediate is zero.
pub fn iterated_lie_on_dt_product(seq: &[TimeDepVectorField]) -> Result<DtTaggedField> {
    let (last, _) = seq.split_last().ok_or(Error::EmptySequence)?;
    let mut cur = DtTaggedField::dt(last.vars());
    for f in seq.iter().rev() {
        cur = DtTaggedField::d_of(f).bracket(&cur)?;
        if !cur.is_pure() {
            return Err(Error::Hypothesis(format!("bracket acquired a ∂/∂t component: {}", cur.dtcoeff)));
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart() -> (Arc<Vars>, Poly, Poly, Poly) {
        let v = Vars::chart_named(["x", "y"]).unwrap();
        (v.clone(), Poly::var(&v, 0), Poly::var(&v, 1), Poly::var(&v, 2))
    }

    fn td(v: &Arc<Vars>, c: Vec<Poly>) -> TimeDepVectorField {
        TimeDepVectorField::new(v, c).unwrap()
    }

    #[test]
    fn truncated_powers_agree_at_time_zero() {
        let v = Vars::chart(2);
        for seed in 0..6 {
            let mut rng = crate::gen::stream(seed, "powers");
            let a = crate::gen::td_field(&mut rng, &v, 2, 2, 2);
            let b = crate::gen::td_field(&mut rng, &v, 2, 2, 2);
            let full = lie_d_powers(&a, &b, 4).unwrap();
            let cut = lie_d_powers_mod(&a, &b, 4).unwrap();
            for m in 0..=4 {
                assert_eq!(full[m].truncate_time((4 - m) as u32), cut[m]);
            }
            let seq = vec![a.clone(), b.clone(), a.clone()];
            assert_eq!(iterated_lie_on_dt(&seq).unwrap().at_time_zero(), iterated_lie_on_dt_at_zero(&seq).unwrap());
        }
    }

    #[test]
    fn bracket_of_field_with_itself_vanishes() {
        let (v, x, y, t) = chart();
        let a = td(&v, vec![&(&x * &y) + &t, y.pow(2)]);
        assert!(lie_bracket(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn bracket_of_rotation_pieces() {
        let (v, x, y, _) = chart();
        let z = Poly::zero(&v);
        let a = td(&v, vec![y.clone(), z.clone()]);
        let b = td(&v, vec![z, x.clone()]);
        assert_eq!(lie_bracket(&a, &b).unwrap(), td(&v, vec![-&x, y]));
    }

    #[test]
    fn bracket_rejects_dimension_mismatch() {
        let (v, x, _, _) = chart();
        let w = Vars::chart(3);
        let a = td(&v, vec![x.clone(), x]);
        let b = TimeDepVectorField::zero(&w);
        assert!(lie_bracket(&a, &b).is_err());
        assert!(TimeDepVectorField::new(&v, vec![Poly::zero(&v)]).is_err());
    }

    #[test]
    fn lie_d_is_time_derivative_for_zero_field() {
        let (v, _, _, t) = chart();
        let b = td(&v, vec![t.clone(), Poly::zero(&v)]);
        let got = lie_d(&TimeDepVectorField::zero(&v), &b).unwrap();
        assert_eq!(got, td(&v, vec![Poly::one(&v), Poly::zero(&v)]));
    }

    #[test]
    fn time_independent_field_has_vanishing_derivatives() {
        let (v, x, y, _) = chart();
        let a = td(&v, vec![&x * &y, -&y]);
        for m in 1..4 {
            assert!(iterated_lie_d(&a, &a, m).unwrap().is_zero());
        }
    }

    #[test]
    fn twice_differentiated_quadratic_time() {
        let (v, _, _, t) = chart();
        let c = td(&v, vec![Poly::constant(&v, Scalar::from_int(3)), Poly::one(&v)]);
        let b = c.mul_poly(&t.pow(2));
        let got = iterated_lie_d(&TimeDepVectorField::zero(&v), &b, 2).unwrap();
        assert_eq!(got, c.scale(&Scalar::from_int(2)));
    }

    #[test]
    fn lie_d_matches_product_bracket() {
        let (v, x, y, t) = chart();
        let a = td(&v, vec![&x * &t, &y + &t.pow(2)]);
        let b = td(&v, vec![&y * &t, x.pow(2)]);
        let product = DtTaggedField::d_of(&a).bracket(&DtTaggedField::pure(&b)).unwrap();
        assert!(product.is_pure());
        assert_eq!(product.xpart, lie_d(&a, &b).unwrap());
    }

    #[test]
    fn iterated_on_dt_matches_product_oracle() {
        let (v, x, y, t) = chart();
        let a = td(&v, vec![t.clone(), Poly::zero(&v)]);
        let b = TimeDepVectorField::zero(&v);
        let seq = [b.clone(), a.clone()];
        let direct = iterated_lie_on_dt(&seq).unwrap();
        let oracle = iterated_lie_on_dt_product(&seq).unwrap();
        assert_eq!(direct, oracle.xpart);
        // [D(B), −∂A/∂t] with B = 0 and ∂A/∂t = (1, 0) constant gives 0.
        assert!(direct.is_zero());
        let c = td(&v, vec![&x * &t, &y * &t.pow(2)]);
        let seq = [c.clone(), a, c];
        assert_eq!(iterated_lie_on_dt(&seq).unwrap(), iterated_lie_on_dt_product(&seq).unwrap().xpart);
    }

    #[test]
    fn iterated_on_dt_rejects_empty() {
        assert!(matches!(iterated_lie_on_dt(&[]), Err(Error::EmptySequence)));
    }

    #[test]
    fn time_zero_substitution() {
        let (v, x, y, t) = chart();
        let a = td(&v, vec![&x + &t.pow(2), &y * &t]);
        assert_eq!(a.at_time_zero(), VectorField::new(&v, vec![x.clone(), Poly::zero(&v)]).unwrap());
        let b = td(&v, vec![x.clone(), y.clone()]).times_t_pow(1);
        assert!(b.at_time_zero().is_zero());
        let coeffs = a.time_coefficients();
        assert_eq!(coeffs.len(), 3);
        assert_eq!(coeffs[0], a.at_time_zero());
        assert_eq!(TimeDepVectorField::from_time_coefficients(&v, &coeffs).unwrap(), a);
    }

    #[test]
    fn vector_field_rejects_time() {
        let (v, x, _, t) = chart();
        assert!(matches!(VectorField::new(&v, vec![x, t]), Err(Error::TimeDependent(_))));
    }
}
