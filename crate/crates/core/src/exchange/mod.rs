//! Skew-symmetrizable exchange matrices and their mutations.
//!
//! Directions are zero-based throughout the library.

mod cartan;
mod finite;
mod quiver;

use std::collections::VecDeque;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::IntMatrix;

pub use cartan::{
    all_principal_minors_positive, cartan_counterpart, classify_cartan, standard_cartan, CartanMatrix, DynkinKind, DynkinLabel,
};
pub use finite::{canonical_form, classify, is_finite_type, Classification, FiniteTypeBudget, DEFAULT_CLASS_BUDGET, DEFAULT_DEPTH_BUDGET};
pub use quiver::{from_quiver, mutate_quiver, to_quiver, to_quiver_extended, Quiver};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExchangeError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix rows have inconsistent lengths")]
    Ragged,
    #[error("matrix is not skew-symmetrizable: {0}")]
    NotSkewSymmetrizable(String),
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("direction {k} out of range for rank {n}")]
    BadDirection { k: usize, n: usize },
    #[error("matrix is decomposable")]
    Decomposable,
    #[error("search budget exceeded after {explored} matrices")]
    BudgetExceeded { explored: usize },
    #[error("integer overflow during mutation")]
    Overflow,
}

/// Positive part `[a]_+`.
#[inline]
pub fn pos(a: i64) -> i64 {
    a.max(0)
}

/// Square skew-symmetrizable integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IntMatrix", into = "IntMatrix")]
pub struct ExchangeMatrix {
    b: IntMatrix,
}

impl TryFrom<IntMatrix> for ExchangeMatrix {
    type Error = ExchangeError;
    fn try_from(b: IntMatrix) -> Result<Self, Self::Error> {
        ExchangeMatrix::new(b)
    }
}

impl From<ExchangeMatrix> for IntMatrix {
    fn from(m: ExchangeMatrix) -> Self {
        m.b
    }
}

impl fmt::Debug for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.b)
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(&self.b).expect("matrix json"))
    }
}

impl ExchangeMatrix {
    pub fn new(b: IntMatrix) -> Result<Self, ExchangeError> {
        let n = b.len();
        if b.iter().any(|r| r.len() != n) {
            return Err(ExchangeError::NotSquare);
        }
        find_skew_symmetrizer(&b)?;
        Ok(ExchangeMatrix { b })
    }

    pub(crate) fn new_unchecked(b: IntMatrix) -> Self {
        ExchangeMatrix { b }
    }

    pub fn zero(n: usize) -> Self {
        ExchangeMatrix { b: vec![vec![0; n]; n] }
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn rows(&self) -> &IntMatrix {
        &self.b
    }

    pub fn skew_symmetrizer(&self) -> Vec<i64> {
        find_skew_symmetrizer(&self.b).expect("validated at construction")
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| self.b[i][j] == -self.b[j][i]))
    }

    pub fn mutate(&self, k: usize) -> Self {
        mutate_matrix(self, k, None)
    }

    pub fn neg(&self) -> Self {
        ExchangeMatrix {
            b: self.b.iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        ExchangeMatrix {
            b: crate::linalg::transpose(&self.b),
        }
    }

    /// Simultaneous permutation `b'_{ij} = b_{p(i) p(j)}`.
    pub fn permuted(&self, p: &[usize]) -> Self {
        let n = self.n();
        ExchangeMatrix {
            b: (0..n).map(|i| (0..n).map(|j| self.b[p[i]][p[j]]).collect()).collect(),
        }
    }

    pub fn max_abs(&self) -> i64 {
        self.b.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }
}

/// Minimal positive integer `d` with `d_i b_ij = -d_j b_ji`.
///
/// Each connected component of the nonzero pattern is solved independently
/// and scaled so that its entries have gcd one.
pub fn find_skew_symmetrizer(b: &IntMatrix) -> Result<Vec<i64>, ExchangeError> {
    let n = b.len();
    if b.iter().any(|r| r.len() != n) {
        return Err(ExchangeError::NotSquare);
    }
    for i in 0..n {
        if b[i][i] != 0 {
            return Err(ExchangeError::NotSkewSymmetrizable(format!("nonzero diagonal at {}", i + 1)));
        }
        for j in 0..n {
            if (b[i][j] == 0) != (b[j][i] == 0) || (b[i][j] != 0 && b[i][j].signum() == b[j][i].signum()) {
                return Err(ExchangeError::NotSkewSymmetrizable(format!(
                    "sign pattern at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let mut d: Vec<Option<Ratio<i128>>> = vec![None; n];
    let mut out = vec![0i64; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(Ratio::from_integer(1));
        let mut comp = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].unwrap();
            for j in 0..n {
                if b[i][j] == 0 {
                    continue;
                }
                let dj = di * Ratio::new(-(b[i][j] as i128), b[j][i] as i128);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        comp.push(j);
                        queue.push_back(j);
                    }
                    Some(e) if e != dj => {
                        return Err(ExchangeError::NotSkewSymmetrizable(format!(
                            "inconsistent ratios around ({}, {})",
                            i + 1,
                            j + 1
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        let l = comp.iter().fold(1i128, |acc, &i| acc.lcm(d[i].unwrap().denom()));
        let ints: Vec<i128> = comp.iter().map(|&i| (d[i].unwrap() * l).to_integer()).collect();
        let g = ints.iter().fold(0i128, |acc, x| acc.gcd(x));
        for (&i, v) in comp.iter().zip(ints) {
            out[i] = i64::try_from(v / g).map_err(|_| ExchangeError::NotSkewSymmetrizable("symmetrizer overflow".into()))?;
        }
    }
    Ok(out)
}

fn mutate_rows(b: &IntMatrix, n: usize, k: usize, eps: Option<i64>) -> Result<IntMatrix, ExchangeError> {
    let mut out = b.clone();
    for (i, row) in b.iter().enumerate() {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -row[j]
            } else {
                let (bik, bkj) = (row[k], b[k][j]);
                let extra = match eps {
                    None => bik
                        .checked_mul(pos(bkj))
                        .zip(pos(-bik).checked_mul(bkj))
                        .and_then(|(a, c)| a.checked_add(c)),
                    Some(e) => bik
                        .checked_mul(pos(e * bkj))
                        .zip(pos(-e * bik).checked_mul(bkj))
                        .and_then(|(a, c)| a.checked_add(c)),
                };
                extra.and_then(|x| row[j].checked_add(x)).ok_or(ExchangeError::Overflow)?
            };
        }
    }
    Ok(out)
}

/// Mutation in direction `k`, optionally through the sign-`eps` form of the
/// exchange rule. Both forms give the same result.
pub fn mutate_matrix(b: &ExchangeMatrix, k: usize, eps: Option<i64>) -> ExchangeMatrix {
    try_mutate_matrix(b, k, eps).expect("matrix mutation")
}

pub fn try_mutate_matrix(b: &ExchangeMatrix, k: usize, eps: Option<i64>) -> Result<ExchangeMatrix, ExchangeError> {
    let n = b.n();
    if k >= n {
        return Err(ExchangeError::BadDirection { k, n });
    }
    Ok(ExchangeMatrix::new_unchecked(mutate_rows(&b.b, n, k, eps)?))
}

/// Exchange matrix with `m` extra coefficient rows.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtendedExchangeMatrix {
    pub top: ExchangeMatrix,
    pub bottom: IntMatrix,
}

impl fmt::Debug for ExtendedExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

impl ExtendedExchangeMatrix {
    pub fn new(top: ExchangeMatrix, bottom: IntMatrix) -> Result<Self, ExchangeError> {
        if bottom.iter().any(|r| r.len() != top.n()) {
            return Err(ExchangeError::Ragged);
        }
        Ok(ExtendedExchangeMatrix { top, bottom })
    }

    /// Splits an `(n+m) x n` matrix into its principal part and coefficient rows.
    pub fn from_rows(rows: IntMatrix) -> Result<Self, ExchangeError> {
        let n = rows.first().map_or(0, |r| r.len());
        if rows.len() < n || rows.iter().any(|r| r.len() != n) {
            return Err(ExchangeError::Ragged);
        }
        let top = ExchangeMatrix::new(rows[..n].to_vec())?;
        ExtendedExchangeMatrix::new(top, rows[n..].to_vec())
    }

    pub fn n(&self) -> usize {
        self.top.n()
    }

    pub fn m(&self) -> usize {
        self.bottom.len()
    }

    pub fn rows(&self) -> IntMatrix {
        let mut r = self.top.rows().clone();
        r.extend(self.bottom.iter().cloned());
        r
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        if i < self.n() {
            self.top.get(i, j)
        } else {
            self.bottom[i - self.n()][j]
        }
    }
}

/// Mutation applying the exchange rule to all `n + m` rows.
pub fn mutate_extended(bt: &ExtendedExchangeMatrix, k: usize) -> ExtendedExchangeMatrix {
    try_mutate_extended(bt, k, None).expect("extended mutation")
}

pub fn try_mutate_extended(bt: &ExtendedExchangeMatrix, k: usize, eps: Option<i64>) -> Result<ExtendedExchangeMatrix, ExchangeError> {
    let n = bt.n();
    if k >= n {
        return Err(ExchangeError::BadDirection { k, n });
    }
    let rows = mutate_rows(&bt.rows(), n, k, eps)?;
    Ok(ExtendedExchangeMatrix {
        top: ExchangeMatrix::new_unchecked(rows[..n].to_vec()),
        bottom: rows[n..].to_vec(),
    })
}

/// Connected components of the nonzero pattern, each sorted ascending.
pub fn decompose(b: &ExchangeMatrix) -> Vec<Vec<usize>> {
    let n = b.n();
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && b.get(i, j) != 0 {
                    seen[j] = true;
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        blocks.push(comp);
    }
    blocks
}

/// Submatrix on the given indices.
pub fn restrict(b: &ExchangeMatrix, idx: &[usize]) -> ExchangeMatrix {
    ExchangeMatrix::new_unchecked(idx.iter().map(|&i| idx.iter().map(|&j| b.get(i, j)).collect()).collect())
}

/// True when the digraph with an arrow `i -> j` for each `b_ij > 0` has no
/// directed cycle.
pub fn is_acyclic(b: &ExchangeMatrix) -> bool {
    let n = b.n();
    let mut indeg = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if b.get(i, j) > 0 {
                indeg[j] += 1;
            }
        }
    }
    let mut ready: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut done = 0;
    while let Some(i) = ready.pop() {
        done += 1;
        for j in 0..n {
            if b.get(i, j) > 0 {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.push(j);
                }
            }
        }
    }
    done == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> ExchangeMatrix {
        ExchangeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn symmetrizers() {
        let b = m(&[&[0, 6, -3], &[-12, 0, 6], &[2, -2, 0]]);
        assert_eq!(b.skew_symmetrizer(), vec![2, 1, 3]);
        assert_eq!(m(&[&[0, -1], &[1, 0]]).skew_symmetrizer(), vec![1, 1]);
        assert_eq!(m(&[&[0, -1], &[2, 0]]).skew_symmetrizer(), vec![2, 1]);
        assert_eq!(m(&[&[0, -1], &[3, 0]]).skew_symmetrizer(), vec![3, 1]);
        assert!(ExchangeMatrix::new(vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(ExchangeMatrix::new(vec![vec![0, -2], vec![-2, 0]]).is_err());
        assert!(ExchangeMatrix::new(vec![vec![0, 1, 1], vec![-1, 0, 1], vec![-2, -1, 0]]).is_err());
        assert!(ExchangeMatrix::new(vec![vec![1]]).is_err());
    }

    #[test]
    fn three_by_three_example() {
        let b = m(&[&[0, 6, -3], &[-12, 0, 6], &[2, -2, 0]]);
        let b1 = b.mutate(0);
        assert_eq!(b1.rows(), &vec![vec![0, -6, 3], vec![12, 0, -30], vec![-2, 10, 0]]);
        assert_eq!(b1.skew_symmetrizer(), vec![2, 1, 3]);
        assert_eq!(crate::linalg::det(b.rows()), crate::linalg::det(b1.rows()));
    }

    #[test]
    fn four_by_four_example() {
        let b = m(&[&[0, 3, -2, 2], &[-3, 0, 4, 0], &[2, -4, 0, 1], &[-2, 0, -1, 0]]);
        assert_eq!(
            b.mutate(0).rows(),
            &vec![vec![0, -3, 2, -2], vec![3, 0, -2, 0], vec![-2, 2, 0, 5], vec![2, 0, -5, 0]]
        );
    }

    #[test]
    fn grassmannian_first_step() {
        let bt = ExtendedExchangeMatrix::from_rows(vec![
            vec![0, -1],
            vec![1, 0],
            vec![-1, 0],
            vec![1, 0],
            vec![-1, 1],
            vec![0, -1],
            vec![0, 1],
        ])
        .unwrap();
        let bt1 = mutate_extended(&bt, 0);
        assert_eq!(
            bt1.rows(),
            vec![
                vec![0, 1],
                vec![-1, 0],
                vec![1, -1],
                vec![-1, 0],
                vec![1, 0],
                vec![0, -1],
                vec![0, 1]
            ]
        );
        assert_eq!(mutate_extended(&bt1, 0), bt);
    }

    #[test]
    fn acyclicity_and_blocks() {
        assert!(is_acyclic(&m(&[&[0, -1], &[3, 0]])));
        assert!(!is_acyclic(&m(&[&[0, 2, -2], &[-2, 0, 2], &[2, -2, 0]])));
        let b = m(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, -2], &[0, 0, 1, 0]]);
        assert_eq!(decompose(&b), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(decompose(&ExchangeMatrix::zero(2)), vec![vec![0], vec![1]]);
    }

    #[test]
    fn bad_direction() {
        let b = m(&[&[0, 1], &[-1, 0]]);
        assert_eq!(try_mutate_matrix(&b, 2, None), Err(ExchangeError::BadDirection { k: 2, n: 2 }));
    }

    /// Skew-symmetrizable matrix `D^{-1} S` style: a random skew-symmetric `S`
    /// with rows scaled so that `b_ij = s_ij * d_j`.
    pub(crate) fn arb_skew_symmetrizable(max_n: usize, max_entry: i64) -> impl Strategy<Value = ExchangeMatrix> {
        (1..=max_n).prop_flat_map(move |n| {
            (
                proptest::collection::vec(-max_entry..=max_entry, n * n),
                proptest::collection::vec(1i64..=3, n),
            )
                .prop_map(move |(v, d)| {
                    let mut b = vec![vec![0i64; n]; n];
                    for i in 0..n {
                        for j in i + 1..n {
                            let s = v[i * n + j];
                            b[i][j] = s * d[j];
                            b[j][i] = -s * d[i];
                        }
                    }
                    ExchangeMatrix::new(b).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn mutation_laws(b in arb_skew_symmetrizable(5, 3), k in 0usize..5) {
            let k = k % b.n();
            let b1 = b.mutate(k);
            prop_assert_eq!(b1.mutate(k), b.clone());
            prop_assert_eq!(mutate_matrix(&b, k, Some(1)), b1.clone());
            prop_assert_eq!(mutate_matrix(&b, k, Some(-1)), b1.clone());
            prop_assert_eq!(crate::linalg::det(b.rows()), crate::linalg::det(b1.rows()));
            let d = b.skew_symmetrizer();
            for i in 0..b.n() {
                for j in 0..b.n() {
                    prop_assert_eq!(d[i] * b1.get(i, j), -d[j] * b1.get(j, i));
                }
            }
        }

        #[test]
        fn block_compatibility(b1 in arb_skew_symmetrizable(3, 3), b2 in arb_skew_symmetrizable(3, 3), k in 0usize..3) {
            let (n1, n2) = (b1.n(), b2.n());
            let mut rows = vec![vec![0i64; n1 + n2]; n1 + n2];
            for i in 0..n1 { for j in 0..n1 { rows[i][j] = b1.get(i, j); } }
            for i in 0..n2 { for j in 0..n2 { rows[n1 + i][n1 + j] = b2.get(i, j); } }
            let b = ExchangeMatrix::new(rows).unwrap();
            let k = k % n1;
            let mb = b.mutate(k);
            let idx1: Vec<usize> = (0..n1).collect();
            let idx2: Vec<usize> = (n1..n1 + n2).collect();
            prop_assert_eq!(restrict(&mb, &idx1), b1.mutate(k));
            prop_assert_eq!(restrict(&mb, &idx2), b2);
        }
    }
}
