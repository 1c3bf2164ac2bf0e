//! Sparse multivariate polynomials over the Gaussian rationals.
//!
//! A [`Poly`] carries its ordered variable list ([`Vars`]); binary operations
//! require equal lists. Terms live in a `BTreeMap` keyed by [`Monomial`]
//! under graded-lexicographic order, so iteration and the canonical text form
//! are reproducible. Zero coefficients are never stored.
//!
//! One variable may be marked as the time variable. It behaves like any other
//! variable; truncation in it is always an explicit call.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Ordered variable names, with an optional distinguished time variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Vars {
    names: Vec<String>,
    time: Option<usize>,
}

impl Vars {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, time: Option<&str>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Invalid(format!("duplicate variable `{n}`")));
            }
        }
        let time = match time {
            Some(t) => Some(
                names.iter().position(|n| n == t).ok_or_else(|| Error::UnknownVariable(t.to_string()))?,
            ),
            None => None,
        };
        Ok(Arc::new(Vars { names, time }))
    }

    /// Chart variables `x1..xd` followed by the time variable `t`.
    pub fn chart(dim: usize) -> Arc<Self> {
        let mut names: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
        names.push("t".to_string());
        Arc::new(Vars { names, time: Some(dim) })
    }

    /// Named chart variables followed by `t`.
    pub fn chart_named<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.iter().any(|n| n == "t") {
            return Err(Error::Invalid("`t` is reserved for the time variable".into()));
        }
        names.push("t".to_string());
        Vars::new(names, Some("t"))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn time(&self) -> Option<usize> {
        self.time
    }

    /// Indices of all non-time variables, in order.
    pub fn space_indices(&self) -> Vec<usize> {
        (0..self.names.len()).filter(|&i| Some(i) != self.time).collect()
    }
}

/// Exponent vector, one entry per variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, idx: usize) -> Self {
        let mut m = Monomial::one(n);
        m.0[idx] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, idx: usize) -> u16 {
        self.0[idx]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if b > a {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// earliest variable.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone)]
pub struct Poly {
    vars: Arc<Vars>,
    terms: BTreeMap<Monomial, Scalar>,
}

fn same_vars(a: &Arc<Vars>, b: &Arc<Vars>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn mismatch(a: &Vars, b: &Vars) -> Error {
    Error::VariableMismatch { left: a.names.join(","), right: b.names.join(",") }
}

impl Poly {
    pub fn zero(vars: &Arc<Vars>) -> Self {
        Poly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Arc<Vars>) -> Self {
        Poly::constant(vars, Scalar::one())
    }

    pub fn constant(vars: &Arc<Vars>, c: Scalar) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn var(vars: &Arc<Vars>, idx: usize) -> Self {
        assert!(idx < vars.len(), "variable index out of range");
        let mut p = Poly::zero(vars);
        p.terms.insert(Monomial::var(vars.len(), idx), Scalar::one());
        p
    }

    pub fn var_named(vars: &Arc<Vars>, name: &str) -> Result<Self> {
        let idx = vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Poly::var(vars, idx))
    }

    /// The time variable as a polynomial; panics if the list has none.
    pub fn time(vars: &Arc<Vars>) -> Self {
        Poly::var(vars, vars.time().expect("variable list has no time variable"))
    }

    pub fn monomial(vars: &Arc<Vars>, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent vector length");
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(vars: &Arc<Vars>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "exponent vector length");
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Arc<Vars> {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&Monomial::one(self.vars.len())).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map(Monomial::degree).unwrap_or(0)
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(idx) as u32).max().unwrap_or(0)
    }

    pub fn mentions(&self, idx: usize) -> bool {
        self.terms.keys().any(|m| m.exp(idx) > 0)
    }

    /// Degree in the time variable (0 if there is none).
    pub fn time_degree(&self) -> u32 {
        self.vars.time().map(|t| self.degree_in(t)).unwrap_or(0)
    }

    pub fn check_compatible(&self, other: &Poly) -> Result<()> {
        if same_vars(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(mismatch(&self.vars, &other.vars))
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        Ok(self.mul_filtered(other, |_| true))
    }

    /// Product keeping only monomials accepted by `keep`; used for truncated
    /// multiplication without materialising dropped terms.
    pub fn mul_filtered(&self, other: &Poly, keep: impl Fn(&Monomial) -> bool) -> Poly {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if !keep(&m) {
                    continue;
                }
                let c = ca * cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += &c;
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Poly { vars: self.vars.clone(), terms }
    }

    /// Product truncated to degree `<= order` in variable `idx`.
    pub fn mul_truncated(&self, other: &Poly, idx: usize, order: u32) -> Poly {
        assert!(same_vars(&self.vars, &other.vars), "{}", mismatch(&self.vars, &other.vars));
        self.mul_filtered(other, |m| (m.exp(idx) as u32) <= order)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by `var^k`.
    pub fn mul_var_pow(&self, idx: usize, k: u16) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m = m.clone();
                m.0[idx] += k;
                (m, c.clone())
            })
            .collect();
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn partial(&self, idx: usize) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(idx);
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[idx] -= 1;
            out.add_term(dm, &(c * &Scalar::from_int(e as i64)));
        }
        out
    }

    pub fn partial_named(&self, name: &str) -> Result<Poly> {
        let idx = self.vars.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.partial(idx))
    }

    /// Drop every monomial with positive degree in one of `vanishing`,
    /// i.e. set those variables to zero.
    pub fn restrict(&self, vanishing: &[usize]) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| vanishing.iter().all(|&s| m.exp(s) == 0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Poly { vars: self.vars.clone(), terms }
    }

    /// Coefficient of `var^k`, as a polynomial not involving `var`.
    pub fn coeff_of(&self, idx: usize, k: u16) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(idx) == k)
            .map(|(m, c)| {
                let mut m = m.clone();
                m.0[idx] = 0;
                (m, c.clone())
            })
            .collect();
        Poly { vars: self.vars.clone(), terms }
    }

    /// Keep terms of degree `<= order` in `idx`.
    pub fn truncate(&self, idx: usize, order: u32) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(idx) as u32 <= order)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Poly { vars: self.vars.clone(), terms }
    }

    /// Truncate in the time variable: keep `t^0..t^order`.
    pub fn truncate_time(&self, order: u32) -> Poly {
        let t = self.vars.time().expect("variable list has no time variable");
        self.truncate(t, order)
    }

    /// Evaluate at a point given as one scalar per variable.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.vars.len() {
            let missing = self.vars.names.get(point.len()).cloned().unwrap_or_default();
            return Err(Error::MissingAssignment(missing));
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    v = &v * &point[i].pow(e as u32);
                }
            }
            acc += &v;
        }
        Ok(acc)
    }

    /// Evaluate with values looked up by name; every variable must be assigned.
    pub fn evaluate_named(&self, values: &HashMap<String, Scalar>) -> Result<Scalar> {
        let point = self
            .vars
            .names
            .iter()
            .map(|n| values.get(n).cloned().ok_or_else(|| Error::MissingAssignment(n.clone())))
            .collect::<Result<Vec<_>>>()?;
        self.evaluate(&point)
    }

    /// Substitute `var_i ↦ subs[i]` for every variable. The substitutes may
    /// live over a different variable list (all over the same one).
    pub fn substitute(&self, subs: &[Poly], target: &Arc<Vars>) -> Result<Poly> {
        if subs.len() != self.vars.len() {
            let missing = self.vars.names.get(subs.len()).cloned().unwrap_or_default();
            return Err(Error::MissingSubstitution(missing));
        }
        for s in subs {
            if !same_vars(s.vars(), target) {
                return Err(mismatch(s.vars(), target));
            }
        }
        let mut cache: HashMap<(usize, u16), Poly> = HashMap::new();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = cache.entry((i, e)).or_insert_with(|| subs[i].pow(e as u32)).clone();
                term = &term * &pw;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Re-express over another variable list by name. Fails if a mentioned
    /// variable is missing from `target`.
    pub fn rebase(&self, target: &Arc<Vars>) -> Result<Poly> {
        if same_vars(&self.vars, target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.vars.names.iter().map(|n| target.index_of(n)).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut nm = Monomial::one(target.len());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| Error::UnknownVariable(self.vars.names[i].clone()))?;
                nm.0[j] += e;
            }
            out.add_term(nm, c);
        }
        Ok(out)
    }

    /// Largest absolute numerator/denominator bit length among coefficients;
    /// a cheap size measure for generators and reports.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| {
                [c.re.numer().bits(), c.re.denom().bits(), c.im.numer().bits(), c.im.denom().bits()]
                    .into_iter()
                    .max()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.vars.hash(state);
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn fmt_monomial(vars: &Vars, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars.names[i].clone()),
            _ => parts.push(format!("{}^{}", vars.names[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    /// Canonical text: terms in descending graded-lex order, e.g.
    /// `3/2*x1^2*x2 - x2 + (0+1i)*t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = c.signed_parts();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = fmt_monomial(&self.vars, m);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars.names.join(","), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> (Arc<Vars>, Poly, Poly) {
        let v = Vars::new(["x", "y", "t"], Some("t")).unwrap();
        let x = Poly::var(&v, 0);
        let y = Poly::var(&v, 1);
        (v, x, y)
    }

    #[test]
    fn difference_of_squares() {
        let (_, x, y) = xy();
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, &x.pow(2) - &y.pow(2));
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn adding_zero_is_identity() {
        let (v, x, y) = xy();
        let p = &(&x * &y) + &Poly::constant(&v, Scalar::from_int(3));
        assert_eq!(&p + &Poly::zero(&v), p);
    }

    #[test]
    fn gaussian_coefficients_cancel() {
        let (v, x, _) = xy();
        let a = &Poly::constant(&v, Scalar::gaussian(1, 1)) * &x;
        let b = &Poly::constant(&v, Scalar::gaussian(1, -1)) * &x;
        assert_eq!(&a * &b, x.pow(2).scale(&Scalar::from_int(2)));
    }

    #[test]
    fn mismatched_variables_are_rejected() {
        let (_, x, _) = xy();
        let w = Vars::new(["x", "z"], None).unwrap();
        let z = Poly::var(&w, 1);
        assert!(matches!(x.try_add(&z), Err(Error::VariableMismatch { .. })));
        assert!(x.try_mul(&z).is_err());
    }

    #[test]
    fn partial_derivatives() {
        let (v, x, y) = xy();
        assert_eq!((&x.pow(2) * &y).partial(0), (&x * &y).scale(&Scalar::from_int(2)));
        assert!(Poly::constant(&v, Scalar::from_int(7)).partial(2).is_zero());
        let p = &x.pow(2) + &y.pow(3).scale(&Scalar::from_int(3));
        assert_eq!(p.partial_named("y").unwrap(), y.pow(2).scale(&Scalar::from_int(9)));
        assert!(matches!(p.partial_named("w"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn restriction_drops_vanishing_monomials() {
        let (v, x, y) = xy();
        assert_eq!((&x + &y.pow(2)).restrict(&[0]), y.pow(2));
        assert!((&x * &y).restrict(&[0]).is_zero());
        let one = Poly::one(&v);
        assert_eq!((&one + &x).pow(2).restrict(&[0]), one);
    }

    #[test]
    fn evaluation() {
        let (_, x, y) = xy();
        let p = &x.pow(2) + &y;
        let pt = [Scalar::from_int(2), Scalar::from_int(3), Scalar::zero()];
        assert_eq!(p.evaluate(&pt).unwrap(), Scalar::from_int(7));
        let ii = [Scalar::i(), Scalar::i(), Scalar::zero()];
        assert_eq!((&x * &y).evaluate(&ii).unwrap(), Scalar::from_int(-1));
        assert!(matches!(p.evaluate(&pt[..2]), Err(Error::MissingAssignment(n)) if n == "t"));
        let q = &p + &Poly::constant(p.vars(), Scalar::from_frac(1, 3));
        assert_eq!(q.evaluate(&[Scalar::zero(), Scalar::zero(), Scalar::zero()]).unwrap(), q.constant_term());
    }

    #[test]
    fn canonical_text_orders_by_graded_lex() {
        let v = Vars::new(["x1", "x2", "t"], Some("t")).unwrap();
        let x1 = Poly::var(&v, 0);
        let x2 = Poly::var(&v, 1);
        let t = Poly::var(&v, 2);
        let p = &(&x1.pow(2) * &x2).scale(&Scalar::from_frac(3, 2)) + &t.scale(&Scalar::i());
        assert_eq!(p.to_string(), "3/2*x1^2*x2 + (0+1i)*t");
        assert_eq!((-&x2).to_string(), "-x2");
    }

    #[test]
    fn substitution_composes() {
        let (v, x, y) = xy();
        let p = &x * &y;
        let subs = [&y + &Poly::one(&v), x.clone(), Poly::time(&v)];
        assert_eq!(p.substitute(&subs, &v).unwrap(), &(&y * &x) + &x);
        assert!(p.substitute(&subs[..1], &v).is_err());
    }

    #[test]
    fn coefficient_extraction_and_truncation() {
        let (v, x, _) = xy();
        let t = Poly::time(&v);
        let p = &(&x + &(&t * &x)) + &t.pow(3);
        assert_eq!(p.coeff_of(2, 1), x);
        assert_eq!(p.truncate_time(1), &x + &(&t * &x));
        assert_eq!(p.time_degree(), 3);
    }
}
