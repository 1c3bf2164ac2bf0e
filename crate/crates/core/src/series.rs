//! Truncated power series in the time variable with polynomial coefficients,
//! and Taylor-mode composition `p(γ(t), t) mod t^{n+1}`.
//!
//! Composition works coefficient by coefficient: the `k`-th coefficient of a
//! product only needs coefficients `0..=k` of its factors, so a curve can be
//! grown one coefficient at a time (as the flow-jet recursion does) while
//! every intermediate monomial series is memoised.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Vars};
use crate::scalar::Scalar;

/// `Σ_k coeffs[k]·t^k`; coefficients never mention the time variable.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub coeffs: Vec<Poly>,
}

fn time_index(vars: &Vars) -> usize {
    vars.time().expect("series need a time variable")
}

impl Series {
    /// Split `p` by powers of `t`, keeping `t^0..t^order`.
    pub fn from_poly(p: &Poly, order: usize) -> Series {
        let t = time_index(p.vars());
        Series { coeffs: (0..=order).map(|k| p.coeff_of(t, k as u16)).collect() }
    }

    pub fn to_poly(&self, vars: &Arc<Vars>) -> Poly {
        let t = time_index(vars);
        let mut out = Poly::zero(vars);
        for (k, c) in self.coeffs.iter().enumerate() {
            out = &out + &c.mul_var_pow(t, k as u16);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Termwise `d/dt`, losing one order.
    pub fn derivative(&self) -> Series {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Scalar::from_int(k as i64)))
            .collect();
        Series { coeffs }
    }
}

/// Memoising evaluator of `p(γ(t), t)` for polynomials `p` over `vars`.
pub struct Composer {
    vars: Arc<Vars>,
    time: usize,
    /// Indexed by variable; the time slot is unused.
    curve: Vec<Vec<Poly>>,
    nodes: HashMap<Monomial, Vec<Poly>>,
}

impl Composer {
    /// `curve[i]` holds the known coefficients of `γ_i` for each non-time
    /// variable `i`; the entry for the time variable is ignored.
    pub fn new(vars: &Arc<Vars>, curve: Vec<Vec<Poly>>) -> Result<Self> {
        if curve.len() != vars.len() {
            let missing = vars.names().get(curve.len()).cloned().unwrap_or_default();
            return Err(Error::MissingSubstitution(missing));
        }
        Ok(Composer { vars: vars.clone(), time: time_index(vars), curve, nodes: HashMap::new() })
    }

    /// Append the next known coefficient of `γ_var`.
    pub fn push(&mut self, var: usize, coeff: Poly) {
        self.curve[var].push(coeff);
    }

    fn curve_coeff(&self, var: usize, k: usize) -> Option<&Poly> {
        self.curve[var].get(k)
    }

    fn ensure(&mut self, mu: &Monomial, k: usize) {
        let have = self.nodes.get(mu).map_or(0, Vec::len);
        if have > k {
            return;
        }
        if mu.is_one() {
            let entry = self.nodes.entry(mu.clone()).or_default();
            while entry.len() <= k {
                let c = if entry.is_empty() { Poly::one(&self.vars) } else { Poly::zero(&self.vars) };
                entry.push(c);
            }
            return;
        }
        let j = (0..mu.0.len()).rev().find(|&j| mu.0[j] > 0).unwrap();
        let mut parent = mu.clone();
        parent.0[j] -= 1;
        self.ensure(&parent, k);
        for kk in have..=k {
            let mut acc = Poly::zero(&self.vars);
            let pc = &self.nodes[&parent];
            for i in 0..=kk {
                let a = &pc[i];
                if a.is_zero() {
                    continue;
                }
                let b = self
                    .curve_coeff(j, kk - i)
                    .unwrap_or_else(|| panic!("curve coefficient {} of `{}` not yet known", kk - i, self.vars.name(j)));
                if b.is_zero() {
                    continue;
                }
                acc = &acc + &(a * b);
            }
            self.nodes.entry(mu.clone()).or_default().push(acc);
        }
    }

    /// `[t^k] p(γ(t), t)`.
    pub fn coefficient(&mut self, p: &Poly, k: usize) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in p.terms() {
            let tk = m.exp(self.time) as usize;
            if tk > k {
                continue;
            }
            let mut base = m.clone();
            base.0[self.time] = 0;
            self.ensure(&base, k - tk);
            let node = &self.nodes[&base][k - tk];
            if !node.is_zero() {
                out = &out + &node.scale(c);
            }
        }
        out
    }

    /// `p(γ(t), t) mod t^{order+1}`.
    pub fn compose(&mut self, p: &Poly, order: usize) -> Series {
        Series { coeffs: (0..=order).map(|k| self.coefficient(p, k)).collect() }
    }
}

/// Substitute a curve into `p` and truncate at `t^{order}`.
///
/// `curve` maps every non-time variable to a polynomial over the same
/// variable list (normally in `t`, possibly also in the chart variables);
/// the time variable maps to itself.
pub fn substitute_time_curve(p: &Poly, curve: &HashMap<String, Poly>, order: usize) -> Result<Poly> {
    let vars = p.vars().clone();
    let t = vars.time().ok_or_else(|| Error::Invalid("polynomial has no time variable".into()))?;
    let mut coeffs = Vec::with_capacity(vars.len());
    for i in 0..vars.len() {
        if i == t {
            coeffs.push(Vec::new());
            continue;
        }
        let g = curve.get(vars.name(i)).ok_or_else(|| Error::MissingSubstitution(vars.name(i).to_string()))?;
        g.check_compatible(p)?;
        coeffs.push(Series::from_poly(g, order).coeffs);
    }
    let mut composer = Composer::new(&vars, coeffs)?;
    Ok(composer.compose(p, order).to_poly(&vars))
}

/// Substitute `t = 0`.
pub fn at_time_zero(p: &Poly) -> Poly {
    match p.vars().time() {
        Some(t) => p.coeff_of(t, 0),
        None => p.clone(),
    }
}

/// Multiply by `t^k / k!`.
pub fn times_t_pow_over_factorial(p: &Poly, k: u32) -> Poly {
    let t = time_index(p.vars());
    p.mul_var_pow(t, k as u16).scale(&Scalar::inv_factorial(k))
}

#[allow(dead_code)]
pub(crate) fn is_zero_all(ps: &[Poly]) -> bool {
    ps.iter().all(Poly::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Arc<Vars>, Poly, Poly, Poly) {
        let v = Vars::new(["x", "y", "t"], Some("t")).unwrap();
        (v.clone(), Poly::var(&v, 0), Poly::var(&v, 1), Poly::var(&v, 2))
    }

    fn curve(pairs: &[(&str, Poly)]) -> HashMap<String, Poly> {
        pairs.iter().map(|(n, p)| (n.to_string(), p.clone())).collect()
    }

    #[test]
    fn square_along_shifted_line() {
        let (v, x, y, t) = setup();
        let one = Poly::one(&v);
        let c = curve(&[("x", &one + &t), ("y", y.clone())]);
        let got = substitute_time_curve(&x.pow(2), &c, 2).unwrap();
        assert_eq!(got, &(&one + &t.scale(&Scalar::from_int(2))) + &t.pow(2));
    }

    #[test]
    fn truncation_drops_high_powers() {
        let (_, x, y, t) = setup();
        let c = curve(&[("x", t.pow(3)), ("y", y)]);
        assert!(substitute_time_curve(&x, &c, 2).unwrap().is_zero());
    }

    #[test]
    fn product_along_curve() {
        let (v, x, y, t) = setup();
        let c = curve(&[("x", t.clone()), ("y", &Poly::one(&v) + &t)]);
        let got = substitute_time_curve(&(&x * &y), &c, 2).unwrap();
        assert_eq!(got, &t + &t.pow(2));
    }

    #[test]
    fn missing_substitution_is_reported() {
        let (_, x, _, t) = setup();
        let c = curve(&[("x", t)]);
        assert!(matches!(substitute_time_curve(&x, &c, 2), Err(Error::MissingSubstitution(n)) if n == "y"));
    }

    #[test]
    fn time_variable_maps_to_itself() {
        let (_, x, y, t) = setup();
        let c = curve(&[("x", &x + &t), ("y", y.clone())]);
        let got = substitute_time_curve(&(&t * &x), &c, 3).unwrap();
        assert_eq!(got, &(&t * &x) + &t.pow(2));
    }

    #[test]
    fn series_roundtrip_and_derivative() {
        let (v, x, _, t) = setup();
        let p = &(&x + &(&t * &x)) + &t.pow(2).scale(&Scalar::from_frac(1, 2));
        let s = Series::from_poly(&p, 2);
        assert_eq!(s.to_poly(&v), p);
        assert_eq!(s.derivative().to_poly(&v), &x + &t);
    }
}
