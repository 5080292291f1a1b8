//! Quivers without loops or 2-cycles and their mutations.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{ExchangeError, ExchangeMatrix, ExtendedExchangeMatrix};

/// Quiver on `n` mutable vertices `0..n` followed by `frozen` frozen vertices.
/// `arrows[(i, j)]` is the number of arrows `i -> j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub n: usize,
    pub frozen: usize,
    pub arrows: BTreeMap<(usize, usize), u64>,
}

impl Quiver {
    pub fn empty(n: usize) -> Self {
        Quiver {
            n,
            frozen: 0,
            arrows: BTreeMap::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n + self.frozen
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u64 {
        self.arrows.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Graphviz rendering; frozen vertices are boxes.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph quiver {\n");
        for v in 0..self.vertex_count() {
            let shape = if v < self.n { "circle" } else { "box" };
            let _ = writeln!(s, "  v{} [label=\"{}\", shape={}];", v + 1, v + 1, shape);
        }
        for (&(i, j), &m) in &self.arrows {
            if m == 1 {
                let _ = writeln!(s, "  v{} -> v{};", i + 1, j + 1);
            } else {
                let _ = writeln!(s, "  v{} -> v{} [label=\"{}\"];", i + 1, j + 1, m);
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Quiver with `b_ij` arrows `i -> j` whenever `b_ij > 0`.
pub fn to_quiver(b: &ExchangeMatrix) -> Result<Quiver, ExchangeError> {
    if !b.is_skew_symmetric() {
        return Err(ExchangeError::NotSkewSymmetric);
    }
    let n = b.n();
    let mut arrows = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if b.get(i, j) > 0 {
                arrows.insert((i, j), b.get(i, j) as u64);
            }
        }
    }
    Ok(Quiver { n, frozen: 0, arrows })
}

/// Quiver of an extended matrix; coefficient row `i` becomes frozen vertex
/// `n + i`.
pub fn to_quiver_extended(bt: &ExtendedExchangeMatrix) -> Result<Quiver, ExchangeError> {
    let mut q = to_quiver(&bt.top)?;
    let n = bt.n();
    q.frozen = bt.m();
    for (r, row) in bt.bottom.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x > 0 {
                q.arrows.insert((n + r, j), x as u64);
            } else if x < 0 {
                q.arrows.insert((j, n + r), (-x) as u64);
            }
        }
    }
    Ok(q)
}

/// Exchange matrix of the mutable part.
pub fn from_quiver(q: &Quiver) -> ExchangeMatrix {
    let n = q.n;
    let mut b = vec![vec![0i64; n]; n];
    for (&(i, j), &m) in &q.arrows {
        if i < n && j < n {
            b[i][j] += m as i64;
            b[j][i] -= m as i64;
        }
    }
    ExchangeMatrix::new_unchecked(b)
}

/// Quiver mutation: add `p q` arrows `i -> j` for each path `i -> k -> j`,
/// cancel 2-cycles, then reverse every arrow at `k`. Arrows between frozen
/// vertices are not tracked.
pub fn mutate_quiver(q: &Quiver, k: usize) -> Result<Quiver, ExchangeError> {
    if k >= q.n {
        return Err(ExchangeError::BadDirection { k, n: q.n });
    }
    let total = q.vertex_count();
    let mut count: BTreeMap<(usize, usize), i64> = q.arrows.iter().map(|(&e, &m)| (e, m as i64)).collect();
    let ins: Vec<(usize, u64)> = (0..total).filter_map(|i| q.arrows.get(&(i, k)).map(|&m| (i, m))).collect();
    let outs: Vec<(usize, u64)> = (0..total).filter_map(|j| q.arrows.get(&(k, j)).map(|&m| (j, m))).collect();
    for &(i, p) in &ins {
        for &(j, r) in &outs {
            if i >= q.n && j >= q.n {
                continue;
            }
            *count.entry((i, j)).or_insert(0) += (p * r) as i64;
        }
    }
    let mut arrows = BTreeMap::new();
    for (&(i, j), &m) in &count {
        if i == k || j == k {
            arrows.insert((j, i), m as u64);
            continue;
        }
        if i > j && count.contains_key(&(j, i)) {
            continue;
        }
        let back = count.get(&(j, i)).copied().unwrap_or(0);
        let net = m - back;
        if net > 0 {
            arrows.insert((i, j), net as u64);
        } else if net < 0 {
            arrows.insert((j, i), (-net) as u64);
        }
    }
    Ok(Quiver {
        n: q.n,
        frozen: q.frozen,
        arrows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::mutate_extended;
    use proptest::prelude::*;

    #[test]
    fn example_quiver() {
        let b = ExchangeMatrix::new(vec![vec![0, 3, -2, 2], vec![-3, 0, 4, 0], vec![2, -4, 0, 1], vec![-2, 0, -1, 0]]).unwrap();
        let q = to_quiver(&b).unwrap();
        let mut mults: Vec<u64> = q.arrows.values().copied().collect();
        mults.sort_unstable();
        assert_eq!(mults, vec![1, 2, 2, 3, 4]);
        let q1 = mutate_quiver(&q, 0).unwrap();
        assert_eq!(
            from_quiver(&q1).rows(),
            &vec![vec![0, -3, 2, -2], vec![3, 0, -2, 0], vec![-2, 2, 0, 5], vec![2, 0, -5, 0]]
        );
    }

    #[test]
    fn empty_quiver() {
        let q = Quiver::empty(3);
        assert_eq!(mutate_quiver(&q, 1).unwrap(), q);
        assert!(to_quiver(&ExchangeMatrix::new(vec![vec![0, -1], vec![2, 0]]).unwrap()).is_err());
    }

    #[test]
    fn dot_marks_frozen() {
        let bt = ExtendedExchangeMatrix::from_rows(vec![vec![0, -1], vec![1, 0], vec![-1, 0]]).unwrap();
        let q = to_quiver_extended(&bt).unwrap();
        let dot = q.to_dot();
        assert!(dot.contains("v3 [label=\"3\", shape=box]"));
        assert!(dot.contains("v1 -> v3"));
    }

    fn arb_skew(max_n: usize) -> impl Strategy<Value = ExchangeMatrix> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
                let mut b = vec![vec![0i64; n]; n];
                for i in 0..n {
                    for j in i + 1..n {
                        b[i][j] = v[i * n + j];
                        b[j][i] = -v[i * n + j];
                    }
                }
                ExchangeMatrix::new(b).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn quiver_commutes_with_matrix(b in arb_skew(6), path in proptest::collection::vec(0usize..6, 0..6)) {
            let mut q = to_quiver(&b).unwrap();
            prop_assert_eq!(from_quiver(&q), b.clone());
            let mut m = b;
            for k in path {
                let k = k % m.n();
                q = mutate_quiver(&q, k).unwrap();
                m = m.mutate(k);
                prop_assert_eq!(from_quiver(&q), m.clone());
                prop_assert_eq!(to_quiver(&m).unwrap(), q.clone());
            }
        }

        #[test]
        fn extended_quiver_commutes(b in arb_skew(4), frozen in proptest::collection::vec(-2i64..=2, 8), k in 0usize..4) {
            let n = b.n();
            let bottom: Vec<Vec<i64>> = frozen.chunks(4).map(|c| c[..n].to_vec()).collect();
            let bt = ExtendedExchangeMatrix::new(b, bottom).unwrap();
            let k = k % n;
            let q = mutate_quiver(&to_quiver_extended(&bt).unwrap(), k).unwrap();
            prop_assert_eq!(q, to_quiver_extended(&mutate_extended(&bt, k)).unwrap());
        }
    }
}
