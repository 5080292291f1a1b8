//! Replay of the worked examples against embedded tables.
//!
//! Each fixture fixes a path and the expected data at every step. A replay
//! recomputes everything from the initial matrix and lists each difference.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::exchange::{ExchangeMatrix, ExtendedExchangeMatrix};
use crate::gca::{gca_duality_check, right_companion_specialize, GcaError, GcaSeed, MutationData};
use crate::linalg::IntMatrix;
use crate::pattern::{enumerate, initial_seed, EnumerateBudget, FreeSeed, GeometricSeed, PatternError};
use crate::polyring::{Poly, VarArena};
use crate::semifield::SfRational;

pub const EXAMPLES: [&str; 6] = ["a2", "b2", "g2", "a1xa1", "gr25", "gca-b2"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GoldenError {
    #[error("unknown example {0:?}")]
    Unknown(String),
    #[error("fixture {name}: {msg}")]
    Fixture { name: String, msg: String },
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Gca(#[from] GcaError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenReport {
    pub name: String,
    /// Number of individual comparisons made.
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Raw JSON text of an embedded fixture.
pub fn fixture(name: &str) -> Option<&'static str> {
    Some(match name {
        "a2" => include_str!("../fixtures/a2.json"),
        "b2" => include_str!("../fixtures/b2.json"),
        "g2" => include_str!("../fixtures/g2.json"),
        "a1xa1" => include_str!("../fixtures/a1xa1.json"),
        "gr25" => include_str!("../fixtures/gr25.json"),
        "gca-b2" => include_str!("../fixtures/gca-b2.json"),
        _ => return None,
    })
}

pub fn replay(name: &str) -> Result<GoldenReport, GoldenError> {
    let text = fixture(name).ok_or_else(|| GoldenError::Unknown(name.into()))?;
    let v: Value = serde_json::from_str(text).map_err(|e| bad(name, e))?;
    replay_value(name, &v)
}

/// Replays a fixture document, which may differ from the embedded one.
pub fn replay_value(name: &str, v: &Value) -> Result<GoldenReport, GoldenError> {
    let mut r = Recorder {
        name: name.into(),
        checked: 0,
        mismatches: Vec::new(),
    };
    if v.get("bt").is_some() {
        replay_geometric(&mut r, v)?;
    } else if v.get("data").is_some() {
        replay_gca(&mut r, v)?;
    } else {
        replay_principal(&mut r, v)?;
    }
    Ok(GoldenReport {
        name: r.name,
        checked: r.checked,
        mismatches: r.mismatches,
    })
}

struct Recorder {
    name: String,
    checked: usize,
    mismatches: Vec<String>,
}

impl Recorder {
    fn expect(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.mismatches.push(msg());
        }
    }

    fn field<T: serde::de::DeserializeOwned>(&self, v: &Value, key: &str) -> Result<T, GoldenError> {
        serde_json::from_value(v[key].clone()).map_err(|e| bad(&self.name, format!("{key}: {e}")))
    }

    fn poly(&self, arena: &Arc<VarArena>, s: &str) -> Result<Poly, GoldenError> {
        Poly::parse(arena, s).map_err(|e| bad(&self.name, format!("{s:?}: {e}")))
    }

    fn path(&self, v: &Value) -> Result<Vec<usize>, GoldenError> {
        let p: Vec<usize> = self.field(v, "path")?;
        if p.contains(&0) {
            return Err(bad(&self.name, "path entries are one-based"));
        }
        Ok(p.into_iter().map(|k| k - 1).collect())
    }

    fn steps(&self, v: &Value, len: usize) -> Result<Vec<Value>, GoldenError> {
        let s: Vec<Value> = self.field(v, "steps")?;
        if s.len() != len + 1 {
            return Err(bad(&self.name, format!("expected {} steps", len + 1)));
        }
        Ok(s)
    }

    fn permutation(&self, v: &Value) -> Result<(usize, Vec<usize>), GoldenError> {
        let len: usize = self.field(&v["period"], "length")?;
        let p: Vec<usize> = self.field(&v["period"], "permutation")?;
        Ok((len, p.into_iter().map(|k| k.wrapping_sub(1)).collect()))
    }
}

fn bad(name: &str, msg: impl ToString) -> GoldenError {
    GoldenError::Fixture {
        name: name.into(),
        msg: msg.to_string(),
    }
}

fn compare_cgf(r: &mut Recorder, t: usize, step: &Value, c: &IntMatrix, g: &IntMatrix, f: &[Poly]) -> Result<(), GoldenError> {
    let ec: IntMatrix = r.field(step, "c")?;
    let eg: IntMatrix = r.field(step, "g")?;
    let ef: Vec<String> = r.field(step, "f")?;
    r.expect(&ec == c, || format!("t={t}: C is {c:?}, expected {ec:?}"));
    r.expect(&eg == g, || format!("t={t}: G is {g:?}, expected {eg:?}"));
    for (i, s) in ef.iter().enumerate() {
        let want = r.poly(f[i].arena(), s)?;
        r.expect(want == f[i], || format!("t={t}: F{} is {}, expected {s}", i + 1, f[i]));
    }
    Ok(())
}

fn replay_principal(r: &mut Recorder, v: &Value) -> Result<(), GoldenError> {
    let b = ExchangeMatrix::new(r.field(v, "b")?).map_err(|e| bad(&r.name, e))?;
    let path = r.path(v)?;
    let steps = r.steps(v, path.len())?;

    let start = initial_seed(&b);
    let free_start = FreeSeed::new(&b);
    let (mut p, mut free) = (start.clone(), free_start.clone());
    let mut free_seeds = vec![free.clone()];
    for (t, step) in steps.iter().enumerate() {
        compare_cgf(r, t, step, &p.c, &p.g, &p.f)?;
        if let Some(ys) = step.get("y") {
            let ys: Vec<[String; 2]> = serde_json::from_value(ys.clone()).map_err(|e| bad(&r.name, e))?;
            for (i, [num, den]) in ys.iter().enumerate() {
                let arena = free.y_arena().clone();
                let want = SfRational::new(r.poly(&arena, num)?, r.poly(&arena, den)?).map_err(|e| bad(&r.name, e))?;
                let got = free.y_value(i)?;
                let same = got.equals(&want).map_err(PatternError::from)?;
                r.expect(same, || {
                    format!("t={t}: y{} is ({})/({}), expected ({num})/({den})", i + 1, got.num(), got.den())
                });
            }
        }
        if t < path.len() {
            p = p.mutate(path[t])?;
            free = free.mutate(path[t])?;
            free_seeds.push(free.clone());
        }
    }

    let (len, sigma) = r.permutation(v)?;
    r.expect(len == path.len(), || {
        format!("period {len} differs from the path length {}", path.len())
    });
    let target = start.apply_permutation(&sigma)?;
    r.expect(p == target, || {
        format!("the principal seed after {len} steps is not the permuted initial seed")
    });
    let same = free.same_seed(&free_start.apply_permutation(&sigma)?)?;
    r.expect(same, || {
        format!("the free-coefficient seed after {len} steps is not the permuted initial seed")
    });

    if let Some(list) = v.get("free_cluster_variables") {
        let list: Vec<[String; 2]> = serde_json::from_value(list.clone()).map_err(|e| bad(&r.name, e))?;
        let arena = free_start.arena().clone();
        let want: Vec<(Poly, Poly)> = list
            .iter()
            .map(|[a, b]| Ok((r.poly(&arena, a)?, r.poly(&arena, b)?)))
            .collect::<Result<_, GoldenError>>()?;
        let mut got: Vec<(Poly, Poly)> = Vec::new();
        for s in &free_seeds {
            for i in 0..s.n() {
                let (num, den) = s.x_parts(i)?;
                if !got.iter().any(|(a, b)| a * &den == &num * b) {
                    got.push((num, den));
                }
            }
        }
        r.expect(got.len() == want.len(), || {
            format!("{} distinct cluster variables, expected {}", got.len(), want.len())
        });
        for (a, b) in &want {
            let found = got.iter().any(|(num, den)| &(num * b) == &(a * den));
            r.expect(found, || format!("cluster variable ({a})/({b}) not reached"));
        }
    }

    let graph = enumerate(&b, EnumerateBudget::default());
    r.expect(graph.complete, || "enumeration did not complete".into());
    let seeds: usize = r.field(v, "seed_count")?;
    let vars: usize = r.field(v, "variable_count")?;
    r.expect(graph.seeds.len() == seeds, || {
        format!("{} seeds, expected {seeds}", graph.seeds.len())
    });
    r.expect(graph.cluster_variables.len() == vars, || {
        format!("{} cluster variables, expected {vars}", graph.cluster_variables.len())
    });

    let mut want: Vec<Vec<i64>> = r.field(v, "d_vectors")?;
    let n = b.n();
    let mut got: Vec<Vec<i64>> = Vec::new();
    for s in &graph.seeds {
        for i in 0..n {
            let d = s.d_vector(i)?;
            let initial = (0..n).any(|j| d.iter().enumerate().all(|(l, &x)| x == if l == j { -1 } else { 0 }));
            if !initial && !got.contains(&d) {
                got.push(d);
            }
        }
    }
    got.sort();
    want.sort();
    r.expect(got == want, || format!("d-vectors {got:?}, expected {want:?}"));
    Ok(())
}

fn eval_laurent(p: &Poly, point: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (m, c) in p.terms() {
        let mut t = BigRational::from_integer(c.to_big());
        for (x, &e) in point.iter().zip(m.iter()) {
            if e >= 0 {
                t *= num_traits::pow(x.clone(), e as usize);
            } else {
                t /= num_traits::pow(x.clone(), (-e) as usize);
            }
        }
        acc += t;
    }
    acc
}

fn replay_geometric(r: &mut Recorder, v: &Value) -> Result<(), GoldenError> {
    let names: Vec<String> = r.field(v, "vars")?;
    let bts: Vec<IntMatrix> = r.field(v, "bt")?;
    let path = r.path(v)?;
    if bts.len() != path.len() + 1 {
        return Err(bad(&r.name, "one matrix per step expected"));
    }
    let arena = VarArena::new(names.clone());
    let bt0 = ExtendedExchangeMatrix::from_rows(bts[0].clone()).map_err(|e| bad(&r.name, e))?;
    let start = GeometricSeed::with_arena(bt0, arena.clone())?;

    let plucker: HashMap<String, String> = r.field(v, "plucker")?;
    let labels: Vec<Vec<String>> = r.field(v, "labels")?;
    // Plucker coordinates of the points (1, t_i) on the moment curve.
    let ts = [0i64, 1, 3, 7, 12];
    let p_of = |label: &str| -> Option<BigRational> {
        let d: Vec<usize> = label.chars().map(|c| c.to_digit(10).map(|x| x as usize)).collect::<Option<_>>()?;
        let (i, j) = (*d.first()?, *d.get(1)?);
        (d.len() == 2 && (1..=5).contains(&i) && (1..=5).contains(&j)).then(|| BigRational::from_integer((ts[j - 1] - ts[i - 1]).into()))
    };
    let point: Vec<BigRational> = names
        .iter()
        .map(|n| {
            plucker
                .get(n)
                .and_then(|l| p_of(l))
                .ok_or_else(|| bad(&r.name, format!("no Plucker label for {n}")))
        })
        .collect::<Result<_, _>>()?;

    let mut s = start.clone();
    for (t, want) in bts.iter().enumerate() {
        let got = s.bt.rows();
        r.expect(&got == want, || format!("t={t}: extended matrix is {got:?}, expected {want:?}"));
        r.expect(s.frozen_exponents_nonneg(), || {
            format!("t={t}: a frozen variable appears with a negative exponent")
        });
        if let Some(ls) = labels.get(t) {
            for (i, l) in ls.iter().enumerate() {
                let want = p_of(l).ok_or_else(|| bad(&r.name, format!("bad label {l}")))?;
                let got = eval_laurent(&s.x[i], &point);
                r.expect(got == want, || format!("t={t}: x{} is not the Plucker coordinate p{l}", i + 1));
            }
        }
        if t < path.len() {
            s = s.mutate(path[t])?;
        }
    }

    let ptolemy: String = r.field(v, "ptolemy")?;
    let lhs = &start.mutate(0)?.x[0] * &start.x[0];
    let rhs = r.poly(&arena, &ptolemy)?;
    r.expect(lhs == rhs, || format!("x1 x1' = {lhs}, expected {ptolemy}"));

    let alternating: Vec<usize> = (0..10).map(|i| i % 2).collect();
    let back = start.mutate_path(&alternating)?;
    r.expect(back.x == start.x && back.bt == start.bt, || {
        "ten alternating mutations do not return to the initial seed".into()
    });
    Ok(())
}

fn replay_gca(r: &mut Recorder, v: &Value) -> Result<(), GoldenError> {
    let data = MutationData::from_json(&v["data"])?;
    let b = ExchangeMatrix::new(r.field(v, "b")?).map_err(|e| bad(&r.name, e))?;
    let path = r.path(v)?;
    let steps = r.steps(v, path.len())?;
    let start = GcaSeed::initial(&b, data)?;
    let companion_b: IntMatrix = b
        .rows()
        .iter()
        .map(|row| row.iter().zip(&start.data.r).map(|(x, &ri)| x * ri as i64).collect())
        .collect();
    if let Some(name) = v.get("companion").and_then(Value::as_str) {
        let other: Value = fixture(name)
            .and_then(|t| serde_json::from_str(t).ok())
            .ok_or_else(|| GoldenError::Unknown(name.into()))?;
        let ob: IntMatrix = r.field(&other, "b")?;
        r.expect(ob == companion_b, || {
            format!("B0 R is {companion_b:?}, the {name} matrix is {ob:?}")
        });
    }
    let mut ordinary = initial_seed(&ExchangeMatrix::new(companion_b).map_err(|e| bad(&r.name, e))?);

    let mut s = start.clone();
    for (t, step) in steps.iter().enumerate() {
        compare_cgf(r, t, step, &s.c, &s.g, &s.f)?;
        let report = gca_duality_check(&s)?;
        for c in report.checks.iter().filter(|c| !c.passed) {
            r.mismatches.push(format!("t={t}: {} fails: {}", c.name, c.detail));
        }
        r.checked += report.checks.len();
        let spec = right_companion_specialize(&s)?;
        r.expect(spec == ordinary, || {
            format!("t={t}: the z = 0 specialization differs from the ordinary pattern of B0 R")
        });
        if t < path.len() {
            s = s.mutate(path[t])?;
            ordinary = ordinary.mutate(path[t])?;
        }
    }
    let (len, sigma) = r.permutation(v)?;
    r.expect(len == path.len(), || {
        format!("period {len} differs from the path length {}", path.len())
    });
    let identity = sigma.iter().enumerate().all(|(i, &s)| i == s);
    r.expect(identity && s == start, || {
        format!("the seed after {len} steps is not the initial seed")
    });
    Ok(())
}
