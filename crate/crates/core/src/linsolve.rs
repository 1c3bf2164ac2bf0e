//! Exact sparse linear systems over Gaussian rationals.
//!
//! Rows are reduced incrementally into echelon form with pivots normalised
//! to one, so each row can be added as it is generated and an inconsistency
//! is detected as soon as it appears.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::scalar::Scalar;

pub type SparseRow = BTreeMap<usize, Scalar>;

#[derive(Clone, Debug, Default)]
pub struct EchelonSystem {
    ncols: usize,
    /// Pivot column ↦ (row, rhs); each row has its pivot as first key with coefficient 1.
    pivots: HashMap<usize, (SparseRow, Scalar)>,
    inconsistent: bool,
}

impl EchelonSystem {
    pub fn new(ncols: usize) -> Self {
        EchelonSystem { ncols, pivots: HashMap::new(), inconsistent: false }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// Add the equation `Σ row[c]·x_c = rhs`; returns `false` once the
    /// system has become inconsistent.
    pub fn push(&mut self, mut row: SparseRow, mut rhs: Scalar) -> bool {
        if self.inconsistent {
            return false;
        }
        row.retain(|_, v| !v.is_zero());
        let mut cursor = 0usize;
        loop {
            let next = row.range(cursor..).next().map(|(&c, v)| (c, v.clone()));
            let Some((col, coef)) = next else { break };
            if let Some((prow, prhs)) = self.pivots.get(&col) {
                for (&c, v) in prow {
                    let e = row.entry(c).or_insert_with(Scalar::zero);
                    *e -= &(&coef * v);
                    if e.is_zero() {
                        row.remove(&c);
                    }
                }
                rhs -= &(&coef * prhs);
            }
            cursor = col + 1;
        }
        let Some((&lead, lead_coef)) = row.iter().next() else {
            if !rhs.is_zero() {
                self.inconsistent = true;
            }
            return !self.inconsistent;
        };
        let inv = lead_coef.inv().expect("nonzero pivot");
        if !inv.is_one() {
            for v in row.values_mut() {
                *v *= &inv;
            }
            rhs *= &inv;
        }
        self.pivots.insert(lead, (row, rhs));
        true
    }

    /// A particular solution with every free variable set to zero.
    pub fn solve(&self) -> Option<Vec<Scalar>> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.ncols];
        let mut cols: Vec<usize> = self.pivots.keys().copied().collect();
        cols.sort_unstable_by(|a, b| b.cmp(a));
        for p in cols {
            let (row, rhs) = &self.pivots[&p];
            let mut val = rhs.clone();
            for (&c, v) in row.range(p + 1..) {
                if !x[c].is_zero() {
                    val -= &(v * &x[c]);
                }
            }
            x[p] = val;
        }
        Some(x)
    }
}

/// Solve `Σ_j a_j·columns[j] = target` where vectors are sparse over a
/// common index set; returns one solution when consistent.
pub fn solve_columns<K: Ord + Clone>(columns: &[BTreeMap<K, Scalar>], target: &BTreeMap<K, Scalar>) -> Option<Vec<Scalar>> {
    let mut rows: BTreeMap<K, SparseRow> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (k, v) in col {
            if !v.is_zero() {
                rows.entry(k.clone()).or_default().insert(j, v.clone());
            }
        }
    }
    let mut sys = EchelonSystem::new(columns.len());
    for (k, v) in target {
        if !v.is_zero() && !rows.contains_key(k) {
            return None;
        }
    }
    for (k, row) in rows {
        let rhs = target.get(&k).cloned().unwrap_or_else(Scalar::zero);
        if !sys.push(row, rhs) {
            return None;
        }
    }
    sys.solve()
}

/// Whether `target` lies in the span of `vectors` (dense, equal length).
pub fn in_span(vectors: &[Vec<Scalar>], target: &[Scalar]) -> bool {
    let cols: Vec<BTreeMap<usize, Scalar>> =
        vectors.iter().map(|v| v.iter().cloned().enumerate().filter(|(_, s)| !s.is_zero()).collect()).collect();
    let t: BTreeMap<usize, Scalar> = target.iter().cloned().enumerate().filter(|(_, s)| !s.is_zero()).collect();
    solve_columns(&cols, &t).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, s(v))).collect()
    }

    #[test]
    fn solves_small_system() {
        let mut sys = EchelonSystem::new(2);
        assert!(sys.push(row(&[(0, 1), (1, 1)]), s(3)));
        assert!(sys.push(row(&[(0, 1), (1, -1)]), s(1)));
        assert_eq!(sys.solve().unwrap(), vec![s(2), s(1)]);
    }

    #[test]
    fn detects_inconsistency() {
        let mut sys = EchelonSystem::new(1);
        sys.push(row(&[(0, 2)]), s(2));
        assert!(!sys.push(row(&[(0, 1)]), s(2)));
        assert!(sys.solve().is_none());
    }

    #[test]
    fn complex_pivots() {
        let mut sys = EchelonSystem::new(1);
        sys.push([(0, Scalar::i())].into_iter().collect(), s(1));
        assert_eq!(sys.solve().unwrap(), vec![-Scalar::i()]);
    }

    #[test]
    fn span_membership() {
        let v = vec![vec![s(1), s(0), s(1)], vec![s(0), s(1), s(1)]];
        assert!(in_span(&v, &[s(2), s(3), s(5)]));
        assert!(!in_span(&v, &[s(0), s(0), s(1)]));
    }

    proptest! {
        #[test]
        fn recovered_solution_satisfies_system(
            a in proptest::collection::vec(proptest::collection::vec(-3i64..4, 4), 1..6),
            x in proptest::collection::vec(-5i64..6, 4),
        ) {
            let mut sys = EchelonSystem::new(4);
            for r in &a {
                let rhs = r.iter().zip(&x).map(|(c, v)| c * v).sum::<i64>();
                let sr: SparseRow = r.iter().enumerate().map(|(c, &v)| (c, s(v))).collect();
                prop_assert!(sys.push(sr, s(rhs)));
            }
            let sol = sys.solve().unwrap();
            for r in &a {
                let lhs = r.iter().zip(&sol).fold(Scalar::zero(), |acc, (c, v)| &acc + &(&s(*c) * v));
                let rhs = r.iter().zip(&x).map(|(c, v)| c * v).sum::<i64>();
                prop_assert_eq!(lhs, s(rhs));
            }
        }
    }
}
