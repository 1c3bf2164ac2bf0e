//! Flow jets of time-dependent vector fields as families over the chart,
//! their truncation and restriction, and the affine difference of jets with
//! equal lower-order parts.
//!
//! Two jets of order `n+1` whose order-`n` parts coincide differ by a tangent
//! vector. We normalise it as `(n+1)!·(c_{n+1} − c'_{n+1})`, which is what the
//! iterated-bracket difference formula produces.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{lie_bracket, lie_d, TimeDepVectorField, VectorField};
use crate::geometry::SubspaceY;
use crate::poly::{Poly, Vars};
use crate::scalar::Scalar;
use crate::series::Composer;

/// `x ↦` order-`n` jet of the integral curve through `x`: coordinate `i` is
/// `Σ_m coeffs[i][m](x)·tᵐ`, with `coeffs[i][0] = x_i` for a flow jet.
#[derive(Clone, PartialEq, Eq)]
pub struct JetSection {
    vars: Arc<Vars>,
    order: usize,
    coeffs: Vec<Vec<Poly>>,
}

impl JetSection {
    pub fn new(vars: &Arc<Vars>, coeffs: Vec<Vec<Poly>>) -> Result<Self> {
        let dim = vars.len() - 1;
        if coeffs.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: coeffs.len() });
        }
        let order = coeffs.first().map_or(0, |c| c.len().saturating_sub(1));
        if coeffs.iter().any(|c| c.len() != order + 1) {
            return Err(Error::Invalid("jet coordinates have different orders".into()));
        }
        Ok(JetSection { vars: vars.clone(), order, coeffs })
    }

    /// The constant jet `x ↦ x`.
    pub fn identity(vars: &Arc<Vars>, order: usize) -> Self {
        let dim = vars.len() - 1;
        let coeffs = (0..dim)
            .map(|i| {
                let mut c = vec![Poly::zero(vars); order + 1];
                c[0] = Poly::var(vars, i);
                c
            })
            .collect();
        JetSection { vars: vars.clone(), order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn vars(&self) -> &Arc<Vars> {
        &self.vars
    }

    pub fn coeffs(&self) -> &[Vec<Poly>] {
        &self.coeffs
    }

    /// Coefficient of `tᵐ` in coordinate `i`.
    pub fn coeff(&self, i: usize, m: usize) -> &Poly {
        &self.coeffs[i][m]
    }

    /// Coordinate `i` as a polynomial in `(x, t)`.
    pub fn coordinate(&self, i: usize) -> Poly {
        let t = self.dim();
        self.coeffs[i].iter().enumerate().fold(Poly::zero(&self.vars), |acc, (m, c)| &acc + &c.mul_var_pow(t, m as u16))
    }

    pub fn truncate(&self, m: usize) -> Result<Self> {
        if m > self.order {
            return Err(Error::TruncationOrder { requested: m, order: self.order });
        }
        Ok(JetSection { vars: self.vars.clone(), order: m, coeffs: self.coeffs.iter().map(|c| c[..=m].to_vec()).collect() })
    }

    pub fn restrict(&self, y: &SubspaceY) -> Self {
        let v = y.vanishing();
        JetSection {
            vars: self.vars.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.iter().map(|p| p.restrict(v)).collect()).collect(),
        }
    }

    /// `{order, dim, coeffs: [[poly-string]]}`.
    pub fn to_json(&self) -> JetJson {
        JetJson {
            order: self.order,
            dim: self.dim(),
            coeffs: self.coeffs.iter().map(|c| c.iter().map(|p| p.to_string()).collect()).collect(),
        }
    }
}

impl fmt::Debug for JetSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JetSection").field("order", &self.order).field("coeffs", &self.coeffs).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetJson {
    pub order: usize,
    pub dim: usize,
    pub coeffs: Vec<Vec<String>>,
}

/// A vector field along `Y`: components are functions on `Y`, so no
/// vanishing coordinate occurs. The ambient variable list is kept.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TangentFieldOnY {
    y: SubspaceY,
    components: Vec<Poly>,
}

impl TangentFieldOnY {
    pub fn new(y: &SubspaceY, components: Vec<Poly>) -> Result<Self> {
        if components.len() != y.dim() {
            return Err(Error::DimensionMismatch { expected: y.dim(), found: components.len() });
        }
        for p in &components {
            if let Some(&s) = y.vanishing().iter().find(|&&s| p.mentions(s)) {
                return Err(Error::InvalidSubspace(format!("component {p} mentions vanishing coordinate {}", p.vars().name(s))));
            }
        }
        Ok(TangentFieldOnY { y: y.clone(), components })
    }

    pub fn zero(y: &SubspaceY, vars: &Arc<Vars>) -> Self {
        TangentFieldOnY { y: y.clone(), components: vec![Poly::zero(vars); y.dim()] }
    }

    /// Restrict an ambient field to `Y`.
    pub fn restrict(f: &VectorField, y: &SubspaceY) -> Self {
        TangentFieldOnY { y: y.clone(), components: f.components().iter().map(|p| p.restrict(y.vanishing())).collect() }
    }

    pub fn subspace(&self) -> &SubspaceY {
        &self.y
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn vars(&self) -> &Arc<Vars> {
        self.components[0].vars()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        TangentFieldOnY { y: self.y.clone(), components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        TangentFieldOnY { y: self.y.clone(), components: self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Self {
        TangentFieldOnY { y: self.y.clone(), components: self.components.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        TangentFieldOnY { y: self.y.clone(), components: self.components.iter().map(|a| a.scale(c)).collect() }
    }

    /// The same components read as an ambient field, constant in the normal
    /// directions. Its restriction to `Y` is `self`.
    pub fn to_vector_field(&self) -> VectorField {
        VectorField::new(self.vars(), self.components.clone()).expect("restricted field has chart variables")
    }
}

impl fmt::Display for TangentFieldOnY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_vector_field(), f)
    }
}

impl fmt::Debug for TangentFieldOnY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TangentFieldOnY{self}")
    }
}

/// Order-`n` jet of the flow of `A` through every point.
///
/// `c_{m+1} = [tᵐ] A(γ_{≤m}(t), t) / (m+1)`; composition is memoised so each
/// step only computes the new coefficient.
pub fn flow_jet(a: &TimeDepVectorField, n: usize) -> JetSection {
    let vars = a.vars().clone();
    let dim = a.dim();
    let mut curve: Vec<Vec<Poly>> = (0..dim).map(|i| vec![Poly::var(&vars, i)]).collect();
    curve.push(Vec::new());
    let mut composer = Composer::new(&vars, curve).expect("curve covers every variable");
    let mut coeffs: Vec<Vec<Poly>> = (0..dim).map(|i| vec![Poly::var(&vars, i)]).collect();
    for m in 0..n {
        let inv = Scalar::from_frac(1, (m + 1) as i64);
        let next: Vec<Poly> = (0..dim).map(|i| composer.coefficient(a.component(i), m).scale(&inv)).collect();
        for (i, c) in next.into_iter().enumerate() {
            composer.push(i, c.clone());
            coeffs[i].push(c);
        }
    }
    JetSection { vars, order: n, coeffs }
}

pub fn truncate_jet(j: &JetSection, m: usize) -> Result<JetSection> {
    j.truncate(m)
}

pub fn jet_restrict(j: &JetSection, y: &SubspaceY) -> JetSection {
    j.restrict(y)
}

/// `(n+1)!·(c_{n+1}(J1) − c_{n+1}(J2))` on `Y` for jets of order `n+1` whose
/// order-`n` parts agree on `Y`.
pub fn jet_difference(j1: &JetSection, j2: &JetSection, y: &SubspaceY) -> Result<TangentFieldOnY> {
    if j1.order != j2.order {
        return Err(Error::JetOrderMismatch(j1.order, j2.order));
    }
    if j1.dim() != j2.dim() || j1.dim() != y.dim() {
        return Err(Error::DimensionMismatch { expected: j1.dim(), found: j2.dim() });
    }
    if j1.order == 0 {
        return Err(Error::Invalid("affine difference needs jets of order at least 1".into()));
    }
    let top = j1.order;
    let v = y.vanishing();
    for m in 0..top {
        for i in 0..j1.dim() {
            if j1.coeffs[i][m].restrict(v) != j2.coeffs[i][m].restrict(v) {
                return Err(Error::JetMismatch { order: m, coordinate: i });
            }
        }
    }
    let k = Scalar::factorial(top as u32);
    let comps = (0..j1.dim()).map(|i| (&j1.coeffs[i][top] - &j2.coeffs[i][top]).restrict(v).scale(&k)).collect();
    TangentFieldOnY::new(y, comps)
}

/// `(Lie_{D(A₁)} ∘ … ∘ Lie_{D(Aₙ)} D(B))₀`.
///
/// The innermost bracket `[D(Aₙ), D(B)]` has no `∂/∂t` part and equals
/// `∂B/∂t − ∂Aₙ/∂t + [Aₙ, B]`.
pub fn difference_formula(a_seq: &[TimeDepVectorField], b: &TimeDepVectorField) -> Result<VectorField> {
    let (last, rest) = a_seq.split_last().ok_or(Error::EmptySequence)?;
    let mut cur = b.dt().sub(&last.dt()).add(&lie_bracket(last, b)?);
    for a in rest.iter().rev() {
        cur = lie_d(a, &cur)?;
    }
    Ok(cur.at_time_zero())
}

/// `d/dt` of the order-`n` flow jet, one polynomial in `(x, t)` per
/// coordinate, exact modulo `tⁿ`.
pub fn velocity_series(a: &TimeDepVectorField, n: usize) -> Vec<Poly> {
    let jet = flow_jet(a, n);
    let t = a.dim();
    (0..a.dim()).map(|i| jet.coordinate(i).partial(t)).collect()
}
