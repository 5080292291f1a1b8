//! Cartan counterparts and recognition of Dynkin diagrams of finite type.
//!
//! Standard matrices follow the convention where a double edge between `i`
//! and `j` with `a_ij = -1, a_ji = -2` points towards `j`:
//!
//! * `B_n`: `a_{n,n-1} = -2`, `C_n`: `a_{n-1,n} = -2`
//! * `D_n`: chain `1..n-2`, with `n-1` and `n` attached to `n-2`
//! * `E_n`: chain `1,3,4,...,n` with `2` attached to `4`
//! * `F_4`: `a_32 = -2`, `G_2`: `a_21 = -3`
//!
//! `B_2` and `C_2` coincide up to relabeling and are reported as `B2`.

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{find_skew_symmetrizer, ExchangeMatrix};
use crate::linalg::{det, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CartanMatrix(pub IntMatrix);

impl CartanMatrix {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    fn is_well_formed(&self) -> bool {
        let n = self.n();
        let a = &self.0;
        a.iter().all(|r| r.len() == n)
            && (0..n).all(|i| a[i][i] == 2 && (0..n).all(|j| i == j || (a[i][j] <= 0 && (a[i][j] == 0) == (a[j][i] == 0))))
    }

    /// `d_i a_ij = d_j a_ji` for some positive `d`.
    pub fn is_symmetrizable(&self) -> bool {
        if !self.is_well_formed() {
            return false;
        }
        let n = self.n();
        let b: IntMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Less => -self.0[i][j],
                        std::cmp::Ordering::Greater => self.0[i][j],
                        std::cmp::Ordering::Equal => 0,
                    })
                    .collect()
            })
            .collect();
        find_skew_symmetrizer(&b).is_ok()
    }

    fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && self.0[i][j] != 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DynkinKind {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// Dynkin type with the vertex relabeling: vertex `i` of the classified
/// matrix is vertex `relabel[i]` of the standard diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DynkinLabel {
    pub kind: DynkinKind,
    pub n: usize,
    pub relabel: Vec<usize>,
}

impl DynkinLabel {
    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for DynkinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.n)
    }
}

/// `a_ii = 2`, `a_ij = -|b_ij|`.
pub fn cartan_counterpart(b: &ExchangeMatrix) -> CartanMatrix {
    let n = b.n();
    CartanMatrix(
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 2 } else { -b.get(i, j).abs() }).collect())
            .collect(),
    )
}

/// Standard Cartan matrix of the given type, or `None` for an invalid rank.
pub fn standard_cartan(kind: DynkinKind, n: usize) -> Option<CartanMatrix> {
    let valid = match kind {
        DynkinKind::A => n >= 1,
        DynkinKind::B | DynkinKind::C => n >= 2,
        DynkinKind::D => n >= 4,
        DynkinKind::E => (6..=8).contains(&n),
        DynkinKind::F => n == 4,
        DynkinKind::G => n == 2,
    };
    if !valid {
        return None;
    }
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut edge = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match kind {
        DynkinKind::A | DynkinKind::B | DynkinKind::C | DynkinKind::F | DynkinKind::G => {
            for i in 0..n - 1 {
                edge(i, i + 1);
            }
        }
        DynkinKind::D => {
            for i in 0..n - 2 {
                edge(i, i + 1);
            }
            edge(n - 3, n - 1);
        }
        DynkinKind::E => {
            edge(0, 2);
            edge(1, 3);
            for i in 2..n - 1 {
                edge(i, i + 1);
            }
        }
    }
    match kind {
        DynkinKind::B => a[n - 1][n - 2] = -2,
        DynkinKind::C => a[n - 2][n - 1] = -2,
        DynkinKind::F => a[2][1] = -2,
        DynkinKind::G => a[1][0] = -3,
        _ => {}
    }
    Some(CartanMatrix(a))
}

/// Oracle: every principal minor is positive.
pub fn all_principal_minors_positive(a: &CartanMatrix) -> bool {
    let n = a.n();
    (1u32..(1 << n)).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let sub: IntMatrix = idx.iter().map(|&i| idx.iter().map(|&j| a.0[i][j]).collect()).collect();
        det(&sub).is_positive()
    })
}

fn neighbors(a: &CartanMatrix, i: usize) -> Vec<usize> {
    (0..a.n()).filter(|&j| j != i && a.0[i][j] != 0).collect()
}

/// Walks from `start` away from `prev` along a path, returning the visited
/// vertices in order.
fn arm(a: &CartanMatrix, start: usize, prev: usize) -> Vec<usize> {
    let mut out = vec![start];
    let (mut cur, mut from) = (start, prev);
    loop {
        let next: Vec<usize> = neighbors(a, cur).into_iter().filter(|&j| j != from).collect();
        if next.len() != 1 {
            return out;
        }
        from = cur;
        cur = next[0];
        out.push(cur);
    }
}

/// Dynkin label of an indecomposable Cartan matrix, or `None` when it is
/// not of finite type. Decomposable input yields `None`.
pub fn classify_cartan(a: &CartanMatrix) -> Option<DynkinLabel> {
    if !a.is_well_formed() || !a.is_connected() {
        return None;
    }
    let n = a.n();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if a.0[i][j] != 0 {
                let w = a.0[i][j] * a.0[j][i];
                if w >= 4 {
                    return None;
                }
                edges.push((i, j, w));
            }
        }
    }
    if edges.len() != n - 1 {
        return None;
    }
    let label = shape_label(a, &edges)?;
    let std = standard_cartan(label.kind, label.n)?;
    let r = &label.relabel;
    let ok = (0..n).all(|i| (0..n).all(|j| a.0[i][j] == std.0[r[i]][r[j]]));
    ok.then_some(label)
}

fn shape_label(a: &CartanMatrix, edges: &[(usize, usize, i64)]) -> Option<DynkinLabel> {
    let n = a.n();
    if n == 1 {
        return Some(DynkinLabel {
            kind: DynkinKind::A,
            n: 1,
            relabel: vec![0],
        });
    }
    let deg: Vec<usize> = (0..n).map(|i| neighbors(a, i).len()).collect();
    let heavy: Vec<&(usize, usize, i64)> = edges.iter().filter(|e| e.2 > 1).collect();
    let path_from = |start: usize| -> Vec<usize> {
        let next = neighbors(a, start)[0];
        let mut p = vec![start];
        p.extend(arm(a, next, start));
        p
    };
    let from_order = |kind: DynkinKind, order: &[usize]| -> DynkinLabel {
        let mut relabel = vec![0; n];
        for (pos, &v) in order.iter().enumerate() {
            relabel[v] = pos;
        }
        DynkinLabel { kind, n, relabel }
    };
    let is_path = deg.iter().all(|&d| d <= 2);
    match heavy.as_slice() {
        [] if is_path => {
            let start = (0..n).find(|&i| deg[i] == 1)?;
            Some(from_order(DynkinKind::A, &path_from(start)))
        }
        [] => {
            let centers: Vec<usize> = (0..n).filter(|&i| deg[i] >= 3).collect();
            if centers.len() != 1 || deg[centers[0]] != 3 {
                return None;
            }
            let c = centers[0];
            let mut arms: Vec<Vec<usize>> = neighbors(a, c).into_iter().map(|s| arm(a, s, c)).collect();
            arms.sort_by_key(|v| v.len());
            let lens: Vec<usize> = arms.iter().map(|v| v.len()).collect();
            match lens.as_slice() {
                [1, 1, _] => {
                    let mut order: Vec<usize> = arms[2].iter().rev().copied().collect();
                    order.push(c);
                    order.push(arms[0][0]);
                    order.push(arms[1][0]);
                    Some(from_order(DynkinKind::D, &order))
                }
                [1, 2, k] if (2..=4).contains(k) => {
                    let mut relabel = vec![0; n];
                    relabel[arms[0][0]] = 1;
                    relabel[arms[1][0]] = 2;
                    relabel[arms[1][1]] = 0;
                    relabel[c] = 3;
                    for (pos, &v) in arms[2].iter().enumerate() {
                        relabel[v] = 4 + pos;
                    }
                    Some(DynkinLabel {
                        kind: DynkinKind::E,
                        n,
                        relabel,
                    })
                }
                _ => None,
            }
        }
        [&(i, j, 3)] if n == 2 => {
            let order = if a.0[j][i] == -3 { [i, j] } else { [j, i] };
            Some(from_order(DynkinKind::G, &order))
        }
        [&(i, j, 2)] if is_path => {
            if n == 2 {
                let order = if a.0[j][i] == -2 { [i, j] } else { [j, i] };
                return Some(from_order(DynkinKind::B, &order));
            }
            let (ei, ej) = (deg[i] == 1, deg[j] == 1);
            if ei || ej {
                let (end, nb) = if ei { (i, j) } else { (j, i) };
                let mut order = path_from(end);
                order.reverse();
                let kind = if a.0[end][nb] == -2 { DynkinKind::B } else { DynkinKind::C };
                return Some(from_order(kind, &order));
            }
            if n == 4 {
                let start = (0..n).find(|&v| deg[v] == 1)?;
                let mut order = path_from(start);
                if a.0[order[2]][order[1]] != -2 {
                    order.reverse();
                }
                return Some(from_order(DynkinKind::F, &order));
            }
            None
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(rows: &[&[i64]]) -> CartanMatrix {
        CartanMatrix(rows.iter().map(|r| r.to_vec()).collect())
    }

    fn label(a: &CartanMatrix) -> Option<String> {
        classify_cartan(a).map(|l| l.to_string())
    }

    #[test]
    fn rank_two_counterparts() {
        let a2 = cartan_counterpart(&ExchangeMatrix::new(vec![vec![0, -1], vec![1, 0]]).unwrap());
        assert_eq!(a2, c(&[&[2, -1], &[-1, 2]]));
        let g2 = cartan_counterpart(&ExchangeMatrix::new(vec![vec![0, -1], vec![3, 0]]).unwrap());
        assert_eq!(g2, c(&[&[2, -1], &[-3, 2]]));
        assert_eq!(cartan_counterpart(&ExchangeMatrix::zero(2)), c(&[&[2, 0], &[0, 2]]));
        assert_eq!(label(&a2).as_deref(), Some("A2"));
        assert_eq!(label(&g2).as_deref(), Some("G2"));
        assert_eq!(label(&c(&[&[2, -1], &[-2, 2]])).as_deref(), Some("B2"));
        assert_eq!(label(&c(&[&[2, -2], &[-1, 2]])).as_deref(), Some("B2"));
    }

    #[test]
    fn rank_three_examples() {
        assert_eq!(label(&c(&[&[2, -1, 0], &[-1, 2, -1], &[0, -2, 2]])).as_deref(), Some("B3"));
        assert_eq!(label(&c(&[&[2, -1, 0], &[-1, 2, -2], &[0, -1, 2]])).as_deref(), Some("C3"));
        assert_eq!(label(&c(&[&[2, 0, -1], &[0, 2, -1], &[-1, -1, 2]])).as_deref(), Some("A3"));
        assert_eq!(label(&c(&[&[2, -2], &[-2, 2]])), None);
        assert_eq!(label(&c(&[&[2]])).as_deref(), Some("A1"));
        assert_eq!(label(&c(&[&[2, 0], &[0, 2]])), None);
    }

    #[test]
    fn standard_matrices_round_trip() {
        let kinds = [
            (DynkinKind::A, 1..=7),
            (DynkinKind::B, 2..=7),
            (DynkinKind::C, 3..=7),
            (DynkinKind::D, 4..=7),
            (DynkinKind::E, 6..=8),
            (DynkinKind::F, 4..=4),
            (DynkinKind::G, 2..=2),
        ];
        for (kind, ns) in kinds {
            for n in ns {
                let a = standard_cartan(kind, n).unwrap();
                let l = classify_cartan(&a).unwrap();
                assert_eq!((l.kind, l.n), (kind, n));
                assert!(all_principal_minors_positive(&a), "{kind:?}{n}");
                let p: Vec<usize> = (0..n).rev().collect();
                let pa = CartanMatrix((0..n).map(|i| (0..n).map(|j| a.0[p[i]][p[j]]).collect()).collect());
                let pl = classify_cartan(&pa).unwrap();
                assert_eq!((pl.kind, pl.n), (kind, n));
            }
        }
        let e9_like = {
            let mut a = standard_cartan(DynkinKind::E, 8).unwrap().0;
            for r in a.iter_mut() {
                r.push(0);
            }
            a.push(vec![0; 9]);
            a[8][8] = 2;
            a[7][8] = -1;
            a[8][7] = -1;
            CartanMatrix(a)
        };
        assert_eq!(classify_cartan(&e9_like), None);
        assert!(!all_principal_minors_positive(&e9_like));
    }

    fn exhaust(n: usize, entries: &[i64], f: &mut dyn FnMut(&CartanMatrix)) {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut choices: Vec<(i64, i64)> = vec![(0, 0)];
        for &x in entries {
            for &y in entries {
                choices.push((-x, -y));
            }
        }
        let total = choices.len().pow(pairs.len() as u32);
        for code in 0..total {
            let mut a = vec![vec![0i64; n]; n];
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = 2;
            }
            let mut rest = code;
            for &(i, j) in &pairs {
                let (x, y) = choices[rest % choices.len()];
                rest /= choices.len();
                a[i][j] = x;
                a[j][i] = y;
            }
            f(&CartanMatrix(a));
        }
    }

    #[test]
    fn shape_matching_agrees_with_minor_test() {
        let mut checked = 0;
        let mut finite = 0;
        for (n, entries) in [(1usize, &[1i64, 2, 3][..]), (2, &[1, 2, 3]), (3, &[1, 2, 3]), (4, &[1, 2])] {
            exhaust(n, entries, &mut |a| {
                if !a.is_symmetrizable() || !a.is_connected() {
                    return;
                }
                checked += 1;
                let shape = classify_cartan(a).is_some();
                if shape {
                    finite += 1;
                }
                assert_eq!(shape, all_principal_minors_positive(a), "{:?}", a.0);
            });
        }
        assert!(checked > 1000 && finite > 50, "{checked} {finite}");
    }
}
