//! Mutation sessions: a history tree of seeds with a cursor, and the JSON
//! snapshots served over HTTP.

use serde_json::{json, Value};
use thiserror::Error;

use cluster_core::exchange::{classify, to_quiver, to_quiver_extended, ExchangeMatrix, ExtendedExchangeMatrix, FiniteTypeBudget, Quiver};
use cluster_core::gca::{gca_duality_check, GcaSeed};
use cluster_core::pattern::{verify_invariants, GeometricSeed, PatternError, PrincipalSeed};
use cluster_core::polyring::Poly;

use crate::input::SeedInput;
use crate::CliError;

/// Default cap on the number of terms of any expression produced by a
/// session mutation.
pub const DEFAULT_MAX_TERMS: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SessionError {
    #[error("unknown session {0:?}")]
    NotFound(String),
    #[error("unknown history node {0}")]
    UnknownNode(usize),
    #[error("already at the initial seed")]
    AtRoot,
    #[error(transparent)]
    Cli(#[from] CliError),
}

/// The seed held by a session.
#[derive(Debug, Clone)]
pub enum SeedState {
    Principal(PrincipalSeed),
    Gca(GcaSeed),
    Geometric(GeometricSeed),
}

fn permute_geometric(seed: &GeometricSeed, sigma: &[usize]) -> GeometricSeed {
    let (n, m) = (seed.bt.n(), seed.bt.m());
    let mut inv = vec![0; n];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    let src = seed.bt.rows();
    let row = |r: usize| if r < n { inv[r] } else { r };
    let rows = (0..n + m).map(|r| (0..n).map(|c| src[row(r)][inv[c]]).collect()).collect();
    let mut out = seed.clone();
    out.bt = ExtendedExchangeMatrix::from_rows(rows).expect("relabeled matrix stays valid");
    out.x = (0..n).map(|i| seed.x[inv[i]].clone()).collect();
    out
}

fn columns(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.first().map_or(0, Vec::len);
    (0..n).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

fn quiver_json(q: Result<Quiver, impl std::fmt::Display>) -> Value {
    match q {
        Ok(q) => json!({
            "n": q.n,
            "frozen": q.frozen,
            "arrows": q.arrows.iter().map(|(&(i, j), &m)| json!({"from": i + 1, "to": j + 1, "multiplicity": m})).collect::<Vec<_>>(),
        }),
        Err(_) => Value::Null,
    }
}

fn d_vector(p: &Poly, n: usize) -> Result<Vec<i64>, CliError> {
    let m = p.min_exponent_vector(0..n).map_err(PatternError::from)?;
    Ok(m.into_iter().map(|e| -(e as i64)).collect())
}

impl SeedState {
    pub fn from_input(input: &SeedInput) -> Result<SeedState, CliError> {
        Ok(match input {
            SeedInput::Exchange(_) => SeedState::Principal(input.principal()?),
            SeedInput::Gca { b, data } => SeedState::Gca(SeedInput::gca(b, data)?),
            SeedInput::Geometric { bt, vars } => SeedState::Geometric(SeedInput::geometric(bt, vars.as_deref())?),
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SeedState::Principal(_) => "principal",
            SeedState::Gca(_) => "gca",
            SeedState::Geometric(_) => "geometric",
        }
    }

    pub fn n(&self) -> usize {
        match self {
            SeedState::Principal(s) => s.n(),
            SeedState::Gca(s) => s.n(),
            SeedState::Geometric(s) => s.n(),
        }
    }

    /// Zero-based directions from the initial seed.
    pub fn path(&self) -> &[usize] {
        match self {
            SeedState::Principal(s) => &s.path,
            SeedState::Gca(s) => &s.path,
            SeedState::Geometric(s) => &s.path,
        }
    }

    /// Mutation in the zero-based direction `k`; any expression above
    /// `max_terms` terms is reported as a budget error.
    pub fn mutate(&self, k: usize, max_terms: usize) -> Result<SeedState, CliError> {
        Ok(match self {
            SeedState::Principal(s) => SeedState::Principal(s.mutate_bounded(k, None, Some(max_terms))?),
            SeedState::Gca(s) => SeedState::Gca(s.mutate_bounded(k, None, Some(max_terms))?),
            SeedState::Geometric(s) => {
                let t = s.mutate(k)?;
                if let Some(p) = t.x.iter().find(|p| p.len() > max_terms) {
                    return Err(CliError::Budget(format!("cluster variable with {} terms", p.len())));
                }
                SeedState::Geometric(t)
            }
        })
    }

    /// The seed in its module JSON schema.
    pub fn to_json(&self) -> Value {
        match self {
            SeedState::Principal(s) => s.to_json(),
            SeedState::Gca(s) => s.to_json(),
            SeedState::Geometric(s) => s.to_json(),
        }
    }

    /// Equality of seeds, ignoring the path.
    pub fn same_seed(&self, other: &SeedState) -> bool {
        match (self, other) {
            (SeedState::Principal(a), SeedState::Principal(b)) => a == b,
            (SeedState::Gca(a), SeedState::Gca(b)) => a == b,
            (SeedState::Geometric(a), SeedState::Geometric(b)) => a.bt == b.bt && a.x == b.x,
            _ => false,
        }
    }

    fn labels(&self) -> Vec<Value> {
        match self {
            SeedState::Principal(s) => columns(&s.g).into_iter().map(|g| json!(g)).collect(),
            SeedState::Gca(s) => columns(&s.g).into_iter().map(|g| json!(g)).collect(),
            SeedState::Geometric(s) => s.x.iter().map(|p| json!(p.to_string())).collect(),
        }
    }

    fn permuted(&self, sigma: &[usize]) -> Option<SeedState> {
        Some(match self {
            SeedState::Principal(s) => SeedState::Principal(s.apply_permutation(sigma).ok()?),
            SeedState::Gca(s) => SeedState::Gca(s.apply_permutation(sigma).ok()?),
            SeedState::Geometric(s) => SeedState::Geometric(permute_geometric(s, sigma)),
        })
    }

    /// A permutation `sigma` with `self` relabeled by `sigma` equal to
    /// `other`, if one exists. Cluster variables within a seed are distinct,
    /// so matching them fixes `sigma`.
    pub fn relabeling_to(&self, other: &SeedState) -> Option<Vec<usize>> {
        if self.kind() != other.kind() || self.n() != other.n() {
            return None;
        }
        let (mine, theirs) = (self.labels(), other.labels());
        let sigma: Vec<usize> = mine.iter().map(|l| theirs.iter().position(|t| t == l)).collect::<Option<_>>()?;
        let p = self.permuted(&sigma)?;
        p.same_seed(other).then_some(sigma)
    }

    /// Matrix, quiver, cluster variables, F-polynomials, c/g/d-vectors and
    /// invariant checks, all as JSON text forms.
    pub fn view(&self) -> Result<Value, CliError> {
        let n = self.n();
        Ok(match self {
            SeedState::Principal(s) => {
                let xs = (0..n).map(|i| s.cluster_variable(i)).collect::<Result<Vec<_>, _>>()?;
                let report = verify_invariants(s);
                json!({
                    "matrix": s.b.rows(),
                    "quiver": quiver_json(to_quiver(&s.b)),
                    "cluster_variables": xs.iter().map(|p| p.to_factored_string()).collect::<Vec<_>>(),
                    "f": s.f.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "c_vectors": columns(&s.c),
                    "g_vectors": columns(&s.g),
                    "d_vectors": xs.iter().map(|p| d_vector(p, n)).collect::<Result<Vec<_>, _>>()?,
                    "invariants": {"passed": report.passed(), "checks": report.checks},
                })
            }
            SeedState::Gca(s) => {
                let xs = (0..n).map(|i| s.cluster_variable(i)).collect::<Result<Vec<_>, _>>()?;
                let report = gca_duality_check(s)?;
                json!({
                    "matrix": s.b.rows(),
                    "quiver": quiver_json(to_quiver(&s.b)),
                    "cluster_variables": xs.iter().map(|p| p.to_factored_string()).collect::<Vec<_>>(),
                    "f": s.f.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "c_vectors": columns(&s.c),
                    "g_vectors": columns(&s.g),
                    "d_vectors": xs.iter().map(|p| d_vector(p, n)).collect::<Result<Vec<_>, _>>()?,
                    "invariants": {"passed": report.passed(), "checks": report.checks},
                })
            }
            SeedState::Geometric(s) => {
                let ok = s.frozen_exponents_nonneg();
                json!({
                    "matrix": s.bt.rows(),
                    "quiver": quiver_json(to_quiver_extended(&s.bt)),
                    "cluster_variables": s.x.iter().map(|p| p.to_factored_string()).collect::<Vec<_>>(),
                    "f": Value::Null,
                    "c_vectors": Value::Null,
                    "g_vectors": Value::Null,
                    "d_vectors": s.x.iter().map(|p| d_vector(p, n)).collect::<Result<Vec<_>, _>>()?,
                    "invariants": {"passed": ok, "checks": [{
                        "name": "strong_laurent",
                        "passed": ok,
                        "detail": if ok { "" } else { "a frozen variable has a negative exponent" },
                    }]},
                })
            }
        })
    }
}

/// Classification of the principal part, with its display label.
pub fn finite_type_badge(b: &ExchangeMatrix) -> Value {
    match classify(b, FiniteTypeBudget::default()) {
        Ok(c) => {
            let mut v = serde_json::to_value(&c).expect("serializable");
            v["label"] = json!(c.label());
            v
        }
        Err(e) => json!({"status": "unknown", "label": "unknown (budget)", "detail": e.to_string()}),
    }
}

#[derive(Debug, Clone)]
struct Node {
    seed: SeedState,
    parent: Option<usize>,
    /// Zero-based direction of the edge from the parent.
    direction: Option<usize>,
    children: Vec<usize>,
    view: Value,
}

/// A history tree of seeds rooted at the initial seed. Undo and goto move
/// the cursor; nodes are never removed.
#[derive(Debug, Clone)]
pub struct Session {
    pub id: String,
    nodes: Vec<Node>,
    cursor: usize,
    finite_type: Value,
    max_terms: usize,
}

impl Session {
    pub fn new(id: impl Into<String>, input: &SeedInput, max_terms: usize) -> Result<Session, CliError> {
        let seed = SeedState::from_input(input)?;
        let view = seed.view()?;
        Ok(Session {
            id: id.into(),
            nodes: vec![Node {
                seed,
                parent: None,
                direction: None,
                children: Vec::new(),
                view,
            }],
            cursor: 0,
            finite_type: finite_type_badge(&input.exchange_matrix()),
            max_terms,
        })
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn current(&self) -> &SeedState {
        &self.nodes[self.cursor].seed
    }

    /// Mutates the current seed in the zero-based direction `k`, reusing an
    /// existing child along the same edge.
    pub fn mutate(&mut self, k: usize) -> Result<(), SessionError> {
        let node = &self.nodes[self.cursor];
        if let Some(&c) = node.children.iter().find(|&&c| self.nodes[c].direction == Some(k)) {
            self.cursor = c;
            return Ok(());
        }
        let seed = node.seed.mutate(k, self.max_terms)?;
        let view = seed.view()?;
        let id = self.nodes.len();
        self.nodes.push(Node {
            seed,
            parent: Some(self.cursor),
            direction: Some(k),
            children: Vec::new(),
            view,
        });
        self.nodes[self.cursor].children.push(id);
        self.cursor = id;
        Ok(())
    }

    pub fn undo(&mut self) -> Result<(), SessionError> {
        self.cursor = self.nodes[self.cursor].parent.ok_or(SessionError::AtRoot)?;
        Ok(())
    }

    pub fn goto(&mut self, node: usize) -> Result<(), SessionError> {
        if node >= self.nodes.len() {
            return Err(SessionError::UnknownNode(node));
        }
        self.cursor = node;
        Ok(())
    }

    fn ancestors(&self, mut node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while let Some(p) = self.nodes[node].parent {
            out.push(p);
            node = p;
        }
        out
    }

    /// The state at the cursor. Depends only on the cursor node and its
    /// ancestors, so mutate followed by undo restores an equal snapshot.
    pub fn snapshot(&self) -> Value {
        let node = &self.nodes[self.cursor];
        let seed = &node.seed;
        let same: Vec<Value> = self
            .ancestors(self.cursor)
            .into_iter()
            .rev()
            .filter_map(|a| {
                self.nodes[a].seed.relabeling_to(seed).map(|sigma| {
                    json!({
                        "node": a,
                        "permutation": sigma.iter().map(|s| s + 1).collect::<Vec<_>>(),
                        "identical": sigma.iter().enumerate().all(|(i, &s)| i == s),
                    })
                })
            })
            .collect();
        let mut v = json!({
            "id": self.id,
            "node": self.cursor,
            "parent": node.parent,
            "direction": node.direction.map(|k| k + 1),
            "kind": seed.kind(),
            "n": seed.n(),
            "path": seed.path().iter().map(|k| k + 1).collect::<Vec<_>>(),
            "seed": seed.to_json(),
            "finite_type": self.finite_type,
            "same_as": same,
        });
        for (k, x) in node.view.as_object().expect("view is an object") {
            v[k] = x.clone();
        }
        v
    }

    /// The explored history tree.
    pub fn graph(&self) -> Value {
        json!({
            "id": self.id,
            "cursor": self.cursor,
            "nodes": self.nodes.iter().enumerate().map(|(i, n)| json!({
                "node": i,
                "parent": n.parent,
                "direction": n.direction.map(|k| k + 1),
                "path": n.seed.path().iter().map(|k| k + 1).collect::<Vec<_>>(),
                "children": n.children,
            })).collect::<Vec<_>>(),
            "edges": self.nodes.iter().enumerate().filter_map(|(i, n)| {
                n.parent.map(|p| json!({"from": p, "to": i, "direction": n.direction.map(|k| k + 1)}))
            }).collect::<Vec<_>>(),
        })
    }
}
