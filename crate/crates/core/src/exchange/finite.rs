//! Canonical forms up to simultaneous permutation and the finite-type search
//! over a mutation class.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::{cartan_counterpart, classify_cartan, decompose, restrict, DynkinLabel, ExchangeError, ExchangeMatrix};

pub const DEFAULT_CLASS_BUDGET: usize = 10_000;
pub const DEFAULT_DEPTH_BUDGET: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteTypeBudget {
    pub max_matrices: usize,
    pub max_depth: usize,
}

impl Default for FiniteTypeBudget {
    fn default() -> Self {
        FiniteTypeBudget {
            max_matrices: DEFAULT_CLASS_BUDGET,
            max_depth: DEFAULT_DEPTH_BUDGET,
        }
    }
}

fn vertex_invariant(b: &ExchangeMatrix, v: usize) -> Vec<i64> {
    let mut pairs: Vec<(i64, i64)> = (0..b.n()).filter(|&w| w != v).map(|w| (b.get(v, w), b.get(w, v))).collect();
    pairs.sort_unstable();
    pairs.into_iter().flat_map(|(x, y)| [x, y]).collect()
}

/// Lexicographically least relabeling of `b` and the permutation producing it
/// (`canonical[i][j] = b[p[i]][p[j]]`).
///
/// Positions are filled one at a time. The key of a vertex placed at
/// position `k` is its permutation invariant followed by its entries against
/// the already placed vertices, so each prefix of the key sequence depends
/// only on the corresponding prefix of the permutation and all minimal
/// prefixes can be kept level by level.
pub fn canonical_form(b: &ExchangeMatrix) -> (ExchangeMatrix, Vec<usize>) {
    let n = b.n();
    let inv: Vec<Vec<i64>> = (0..n).map(|v| vertex_invariant(b, v)).collect();
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for k in 0..n {
        let mut best: Option<Vec<i64>> = None;
        let mut next: Vec<Vec<usize>> = Vec::new();
        for prefix in &frontier {
            for v in 0..n {
                if prefix.contains(&v) {
                    continue;
                }
                let mut key = inv[v].clone();
                for &u in prefix {
                    key.push(b.get(u, v));
                    key.push(b.get(v, u));
                }
                debug_assert_eq!(prefix.len(), k);
                match best.as_ref().map(|bk| key.cmp(bk)) {
                    Some(std::cmp::Ordering::Greater) => continue,
                    Some(std::cmp::Ordering::Less) | None => {
                        best = Some(key);
                        next.clear();
                    }
                    Some(std::cmp::Ordering::Equal) => {}
                }
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        frontier = next;
    }
    let p = frontier.swap_remove(0);
    (b.permuted(&p), p)
}

/// Searches the mutation class of an indecomposable `b` for a matrix whose
/// Cartan counterpart is of finite type.
///
/// Returns `Ok(None)` when the pattern is definitely of infinite type: either
/// the class was exhausted without a hit, or some member has an entry pair
/// with `|b_ij b_ji| >= 4` (its rank-2 restriction is then of infinite type).
/// The label's relabeling refers to the matching member of the class.
pub fn is_finite_type(b: &ExchangeMatrix, budget: FiniteTypeBudget) -> Result<Option<DynkinLabel>, ExchangeError> {
    let n = b.n();
    if n == 0 || decompose(b).len() != 1 {
        return Err(ExchangeError::Decomposable);
    }
    if n == 2 {
        let p = (b.get(0, 1) * b.get(1, 0)).abs();
        return Ok(if p <= 3 { classify_cartan(&cartan_counterpart(b)) } else { None });
    }
    let mut seen: HashSet<ExchangeMatrix> = HashSet::new();
    let mut queue: VecDeque<(ExchangeMatrix, usize)> = VecDeque::new();
    let start = canonical_form(b).0;
    seen.insert(start.clone());
    queue.push_back((start, 0));
    let mut truncated = false;
    while let Some((m, depth)) = queue.pop_front() {
        for i in 0..n {
            for j in i + 1..n {
                if (m.get(i, j) * m.get(j, i)).abs() >= 4 {
                    return Ok(None);
                }
            }
        }
        if let Some(label) = classify_cartan(&cartan_counterpart(&m)) {
            return Ok(Some(label));
        }
        if depth >= budget.max_depth {
            truncated = true;
            continue;
        }
        for k in 0..n {
            let c = canonical_form(&super::try_mutate_matrix(&m, k, None)?).0;
            if seen.contains(&c) {
                continue;
            }
            if seen.len() >= budget.max_matrices {
                return Err(ExchangeError::BudgetExceeded { explored: seen.len() });
            }
            seen.insert(c.clone());
            queue.push_back((c, depth + 1));
        }
    }
    if truncated {
        Err(ExchangeError::BudgetExceeded { explored: seen.len() })
    } else {
        Ok(None)
    }
}

/// Outcome of classifying a possibly decomposable matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Classification {
    /// One label per indecomposable block, blocks listed by smallest vertex.
    Finite {
        blocks: Vec<Vec<usize>>,
        labels: Vec<DynkinLabel>,
    },
    Infinite,
    Unknown {
        explored: usize,
    },
}

impl Classification {
    /// `A2`, `A1 x A1`, `infinite` or `unknown (budget)`.
    pub fn label(&self) -> String {
        match self {
            Classification::Finite { labels, .. } => labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" x "),
            Classification::Infinite => "infinite".into(),
            Classification::Unknown { .. } => "unknown (budget)".into(),
        }
    }
}

/// Classifies each indecomposable block with [`is_finite_type`].
pub fn classify(b: &ExchangeMatrix, budget: FiniteTypeBudget) -> Result<Classification, ExchangeError> {
    let blocks = decompose(b);
    let mut labels = Vec::with_capacity(blocks.len());
    let mut unknown = None;
    for block in &blocks {
        match is_finite_type(&restrict(b, block), budget) {
            Ok(Some(l)) => labels.push(l),
            Ok(None) => return Ok(Classification::Infinite),
            Err(ExchangeError::BudgetExceeded { explored }) => unknown = Some(explored),
            Err(e) => return Err(e),
        }
    }
    Ok(match unknown {
        Some(explored) => Classification::Unknown { explored },
        None => Classification::Finite { blocks, labels },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExchangeMatrix {
        ExchangeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn brute_canonical(b: &ExchangeMatrix) -> ExchangeMatrix {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = b.n();
        let inv: Vec<Vec<i64>> = (0..n).map(|v| vertex_invariant(b, v)).collect();
        perms(n)
            .into_iter()
            .min_by_key(|p| {
                let mut key = Vec::new();
                for k in 0..n {
                    key.extend(inv[p[k]].iter().copied());
                    for j in 0..k {
                        key.push(b.get(p[j], p[k]));
                        key.push(b.get(p[k], p[j]));
                    }
                }
                key
            })
            .map(|p| b.permuted(&p))
            .unwrap()
    }

    #[test]
    fn canonical_form_is_class_invariant() {
        let b = m(&[&[0, 3, -2, 2], &[-3, 0, 4, 0], &[2, -4, 0, 1], &[-2, 0, -1, 0]]);
        let (c, p) = canonical_form(&b);
        assert_eq!(b.permuted(&p), c);
        assert_eq!(c, brute_canonical(&b));
        for q in [[1, 0, 3, 2], [3, 2, 1, 0], [2, 0, 1, 3]] {
            assert_eq!(canonical_form(&b.permuted(&q)).0, c);
        }
        let z = ExchangeMatrix::zero(5);
        assert_eq!(canonical_form(&z).0, z);
    }

    #[test]
    fn rank_two() {
        let l = |rows: &[&[i64]]| {
            is_finite_type(&m(rows), FiniteTypeBudget::default())
                .unwrap()
                .map(|l| l.to_string())
        };
        assert_eq!(l(&[&[0, -1], &[1, 0]]).as_deref(), Some("A2"));
        assert_eq!(l(&[&[0, -1], &[2, 0]]).as_deref(), Some("B2"));
        assert_eq!(l(&[&[0, -1], &[3, 0]]).as_deref(), Some("G2"));
        assert_eq!(l(&[&[0, -2], &[2, 0]]), None);
        assert_eq!(l(&[&[0, -1], &[4, 0]]), None);
        assert_eq!(
            is_finite_type(&ExchangeMatrix::zero(2), FiniteTypeBudget::default()),
            Err(ExchangeError::Decomposable)
        );
    }

    #[test]
    fn higher_rank() {
        let budget = FiniteTypeBudget::default();
        let oriented_cycle = m(&[&[0, 1, -1], &[-1, 0, 1], &[1, -1, 0]]);
        assert_eq!(is_finite_type(&oriented_cycle, budget).unwrap().unwrap().to_string(), "A3");
        let markov = m(&[&[0, 2, -2], &[-2, 0, 2], &[2, -2, 0]]);
        assert_eq!(is_finite_type(&markov, budget), Ok(None));
        let d4 = m(&[&[0, 1, 0, 0], &[-1, 0, 1, 1], &[0, -1, 0, 0], &[0, -1, 0, 0]]);
        assert_eq!(is_finite_type(&d4.mutate(1).mutate(0), budget).unwrap().unwrap().to_string(), "D4");
        let affine_a2 = m(&[&[0, 1, 1], &[-1, 0, 1], &[-1, -1, 0]]);
        assert_eq!(is_finite_type(&affine_a2, budget), Ok(None));
    }

    #[test]
    fn small_budget_is_reported() {
        let d5 = m(&[
            &[0, 1, 0, 0, 0],
            &[-1, 0, 1, 0, 0],
            &[0, -1, 0, 1, 1],
            &[0, 0, -1, 0, 0],
            &[0, 0, -1, 0, 0],
        ]);
        let scrambled = d5.mutate(2).mutate(1).mutate(3).mutate(2);
        let tight = FiniteTypeBudget {
            max_matrices: 1,
            max_depth: 0,
        };
        let r = is_finite_type(&scrambled, tight);
        if classify_cartan(&cartan_counterpart(&canonical_form(&scrambled).0)).is_none() {
            assert!(matches!(r, Err(ExchangeError::BudgetExceeded { .. })));
        }
        assert_eq!(
            is_finite_type(&scrambled, FiniteTypeBudget::default())
                .unwrap()
                .unwrap()
                .to_string(),
            "D5"
        );
    }

    #[test]
    fn classify_blocks() {
        let budget = FiniteTypeBudget::default();
        assert_eq!(classify(&ExchangeMatrix::zero(2), budget).unwrap().label(), "A1 x A1");
        assert_eq!(classify(&m(&[&[0, -1], &[3, 0]]), budget).unwrap().label(), "G2");
        assert_eq!(classify(&m(&[&[0, -2], &[2, 0]]), budget).unwrap(), Classification::Infinite);
        let tight = FiniteTypeBudget {
            max_matrices: 2,
            max_depth: 1,
        };
        let d4 = m(&[&[0, 1, 1, 1], &[-1, 0, 0, 0], &[-1, 0, 0, 0], &[-1, 0, 0, 0]]);
        assert_eq!(classify(&d4, budget).unwrap().label(), "D4");
        let cyclic = m(&[&[0, 1, -1, 0], &[-1, 0, 1, 1], &[1, -1, 0, 0], &[0, -1, 0, 0]]);
        assert!(matches!(classify(&cyclic, tight).unwrap(), Classification::Unknown { .. }));
    }
}
