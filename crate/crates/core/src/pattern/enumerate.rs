//! Breadth-first enumeration of the exchange graph of unlabeled seeds.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{initial_seed, PatternError, PrincipalSeed};
use crate::exchange::ExchangeMatrix;
use crate::linalg::IntMatrix;
use crate::polyring::Poly;

pub const DEFAULT_SEED_BUDGET: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateBudget {
    pub max_seeds: usize,
    /// Cap on the size of any exchange polynomial.
    pub max_terms: usize,
}

impl Default for EnumerateBudget {
    fn default() -> Self {
        EnumerateBudget {
            max_seeds: DEFAULT_SEED_BUDGET,
            max_terms: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    /// Zero-based direction in the labeling of `from`.
    pub direction: usize,
}

#[derive(Debug, Clone)]
pub struct ExchangeGraphResult {
    /// Canonical representatives in discovery order; the first is initial.
    pub seeds: Vec<PrincipalSeed>,
    pub edges: Vec<GraphEdge>,
    /// Distinct cluster variables as `(g-vector, F-polynomial)`.
    pub cluster_variables: Vec<(Vec<i64>, Poly)>,
    pub complete: bool,
}

fn column(m: &IntMatrix, i: usize) -> Vec<i64> {
    m.iter().map(|r| r[i]).collect()
}

/// Relabels so that columns are sorted by g-vector, then c-vector, then
/// B-column.
fn canonicalize(seed: &PrincipalSeed) -> PrincipalSeed {
    let n = seed.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (column(&seed.g, i), column(&seed.c, i), column(seed.b.rows(), i)));
    let mut sigma = vec![0; n];
    for (pos, &i) in order.iter().enumerate() {
        sigma[i] = pos;
    }
    seed.apply_permutation(&sigma).expect("valid permutation")
}

/// Explores all seeds reachable from the principal seed of `b`. Stops with
/// `complete = false` when either budget is reached.
pub fn enumerate(b: &ExchangeMatrix, budget: EnumerateBudget) -> ExchangeGraphResult {
    let n = b.n();
    let start = canonicalize(&initial_seed(b));
    let mut index: HashMap<IntMatrix, usize> = HashMap::new();
    index.insert(start.g.clone(), 0);
    let mut seeds = vec![start];
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    let mut complete = true;
    while !frontier.is_empty() {
        let results: Vec<(usize, usize, Result<PrincipalSeed, PatternError>)> = frontier
            .par_iter()
            .flat_map_iter(|&s| {
                let seed = &seeds[s];
                (0..n).map(move |k| (s, k, seed.mutate_bounded(k, None, Some(budget.max_terms)).map(|t| canonicalize(&t))))
            })
            .collect();
        let mut next = Vec::new();
        for (s, k, r) in results {
            let Ok(t) = r else {
                complete = false;
                continue;
            };
            let to = match index.get(&t.g) {
                Some(&i) => i,
                None => {
                    if seeds.len() >= budget.max_seeds {
                        complete = false;
                        continue;
                    }
                    let i = seeds.len();
                    index.insert(t.g.clone(), i);
                    seeds.push(t);
                    next.push(i);
                    i
                }
            };
            edges.push(GraphEdge { from: s, to, direction: k });
        }
        frontier = next;
    }
    let mut seen: HashMap<(Vec<i64>, Poly), ()> = HashMap::new();
    let mut cluster_variables = Vec::new();
    for s in &seeds {
        for i in 0..n {
            let key = (s.g_vector(i), s.f[i].clone());
            if seen.insert(key.clone(), ()).is_none() {
                cluster_variables.push(key);
            }
        }
    }
    ExchangeGraphResult {
        seeds,
        edges,
        cluster_variables,
        complete,
    }
}

impl ExchangeGraphResult {
    /// Undirected edges, each listed once.
    pub fn undirected_edges(&self) -> Vec<GraphEdge> {
        let mut out: Vec<GraphEdge> = Vec::new();
        for e in &self.edges {
            if e.from < e.to || (e.from == e.to && !out.contains(e)) {
                out.push(*e);
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph exchange {\n");
        for (i, seed) in self.seeds.iter().enumerate() {
            let g: Vec<String> = (0..seed.n()).map(|j| format!("{:?}", seed.g_vector(j))).collect();
            let _ = writeln!(s, "  s{} [label=\"{}\"];", i, g.join(" "));
        }
        for e in self.undirected_edges() {
            let _ = writeln!(s, "  s{} -- s{} [label=\"{}\"];", e.from, e.to, e.direction + 1);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "complete": self.complete,
            "seed_count": self.seeds.len(),
            "variable_count": self.cluster_variables.len(),
            "seeds": self.seeds.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({"from": e.from, "to": e.to, "direction": e.direction + 1})).collect::<Vec<_>>(),
            "cluster_variables": self.cluster_variables.iter().map(|(g, f)| json!({
                "g": g,
                "f": f.to_json(),
                "f_text": f.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn angle(v: &[i64]) -> f64 {
    let a = (v[1] as f64).atan2(v[0] as f64);
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

/// Rank-2 G-fan: for every seed its two g-vectors in counterclockwise order,
/// seeds sorted by the angle of their first ray.
pub fn g_fan(result: &ExchangeGraphResult) -> Result<Vec<[[i64; 2]; 2]>, PatternError> {
    let mut cones = Vec::with_capacity(result.seeds.len());
    for s in &result.seeds {
        if s.n() != 2 {
            return Err(PatternError::Malformed("the G-fan export needs rank 2".into()));
        }
        let (a, b) = (s.g_vector(0), s.g_vector(1));
        let cross = a[0] * b[1] - a[1] * b[0];
        let (p, q) = if cross > 0 { (a, b) } else { (b, a) };
        cones.push([[p[0], p[1]], [q[0], q[1]]]);
    }
    cones.sort_by(|x, y| angle(&x[0]).total_cmp(&angle(&y[0])));
    Ok(cones)
}

/// SVG drawing of the rank-2 G-fan.
pub fn g_fan_svg(result: &ExchangeGraphResult) -> Result<String, PatternError> {
    let cones = g_fan(result)?;
    let (size, c, r) = (400.0, 200.0, 180.0);
    let end = |v: &[i64; 2]| {
        let len = ((v[0] * v[0] + v[1] * v[1]) as f64).sqrt();
        (c + r * v[0] as f64 / len, c - r * v[1] as f64 / len)
    };
    let mut s = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n");
    let palette = ["#c6dbef", "#fdd0a2", "#c7e9c0", "#dadaeb", "#fcbba1", "#d9d9d9"];
    for (i, cone) in cones.iter().enumerate() {
        let (x1, y1) = end(&cone[0]);
        let (x2, y2) = end(&cone[1]);
        let _ = writeln!(
            s,
            "  <path d=\"M {c} {c} L {x1:.2} {y1:.2} A {r} {r} 0 0 0 {x2:.2} {y2:.2} Z\" fill=\"{}\" stroke=\"none\"/>",
            palette[i % palette.len()]
        );
    }
    let mut rays: Vec<[i64; 2]> = cones.iter().flat_map(|k| [k[0], k[1]]).collect();
    rays.sort();
    rays.dedup();
    for v in &rays {
        let (x, y) = end(v);
        let _ = writeln!(s, "  <line x1=\"{c}\" y1=\"{c}\" x2=\"{x:.2}\" y2=\"{y:.2}\" stroke=\"black\"/>");
        let _ = writeln!(
            s,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">({}, {})</text>",
            x + 4.0,
            y - 4.0,
            v[0],
            v[1]
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExchangeMatrix {
        ExchangeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn rank_two_counts() {
        for (b, count) in [
            (m(&[&[0, -1], &[1, 0]]), 5),
            (m(&[&[0, -1], &[2, 0]]), 6),
            (m(&[&[0, -1], &[3, 0]]), 8),
            (ExchangeMatrix::zero(2), 4),
        ] {
            let r = enumerate(&b, EnumerateBudget::default());
            assert!(r.complete);
            assert_eq!(r.seeds.len(), count);
            assert_eq!(r.cluster_variables.len(), count);
            assert_eq!(r.undirected_edges().len(), count);
        }
    }

    #[test]
    fn rank_one_and_three() {
        let r = enumerate(&ExchangeMatrix::zero(1), EnumerateBudget::default());
        assert_eq!((r.seeds.len(), r.cluster_variables.len()), (2, 2));
        let a3 = m(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]]);
        let r = enumerate(&a3, EnumerateBudget::default());
        assert!(r.complete);
        assert_eq!((r.seeds.len(), r.cluster_variables.len()), (14, 9));
    }

    #[test]
    fn infinite_type_is_incomplete() {
        let r = enumerate(
            &m(&[&[0, -2], &[2, 0]]),
            EnumerateBudget {
                max_seeds: 30,
                max_terms: 10_000,
            },
        );
        assert!(!r.complete);
        assert!(r.seeds.len() <= 30);
    }

    #[test]
    fn fan_is_counterclockwise() {
        let r = enumerate(&m(&[&[0, -1], &[1, 0]]), EnumerateBudget::default());
        let fan = g_fan(&r).unwrap();
        assert_eq!(fan.len(), 5);
        for [a, b] in &fan {
            assert!(a[0] * b[1] - a[1] * b[0] > 0);
        }
        assert_eq!(fan[0], [[1, 0], [0, 1]]);
        let svg = g_fan_svg(&r).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("(0, -1)"));
        assert!(r.to_dot().contains("s0 -- "));
        assert_eq!(r.to_json()["seed_count"], json!(5));
    }
}
