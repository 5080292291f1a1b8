//! Command implementations. Each returns data; printing and exit codes are
//! left to the binary.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use cluster_core::exchange::{classify, Classification, ExchangeMatrix, FiniteTypeBudget};
use cluster_core::gca::{companion_patterns, gca_duality_check, right_companion_specialize, GcaError, GcaSeed};
use cluster_core::golden::{replay, GoldenReport, EXAMPLES};
use cluster_core::pattern::{
    check_separation, enumerate, verify_invariants, EnumerateBudget, ExchangeGraphResult, FreeSeed, GeometricSeed, PatternError,
    PrincipalSeed,
};

use crate::input::SeedInput;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Semifield {
    #[default]
    Principal,
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Emit {
    #[default]
    Seed,
    Vars,
}

fn free_json(seed: &FreeSeed, vars: bool) -> Result<Value, CliError> {
    let n = seed.n();
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for i in 0..n {
        let (num, den) = seed.x_parts(i)?;
        xs.push(json!({"num": num.to_string(), "den": den.to_string()}));
        let y = seed.y_value(i)?;
        ys.push(json!({"num": y.num().to_string(), "den": y.den().to_string()}));
    }
    let mut v = json!({
        "b": seed.b.rows(),
        "x": xs,
        "y": ys,
        "path": seed.path.iter().map(|k| k + 1).collect::<Vec<_>>(),
    });
    if vars {
        v["cluster_variables"] = json!(xs
            .iter()
            .map(|x| format!("({}) / ({})", x["num"].as_str().unwrap(), x["den"].as_str().unwrap()))
            .collect::<Vec<_>>());
    }
    Ok(v)
}

fn principal_walk(b: &ExchangeMatrix, path: &[usize], max_terms: usize) -> Result<PrincipalSeed, CliError> {
    let mut s = cluster_core::pattern::initial_seed(b);
    for &k in path {
        s = s.mutate_bounded(k, None, Some(max_terms))?;
    }
    Ok(s)
}

fn gca_walk(s: GcaSeed, path: &[usize], max_terms: usize) -> Result<GcaSeed, CliError> {
    let mut s = s;
    for &k in path {
        s = s.mutate_bounded(k, None, Some(max_terms))?;
    }
    Ok(s)
}

/// Mutates the initial seed along `path` (zero-based) and returns the seed
/// document, with text forms of the cluster variables under [`Emit::Vars`].
pub fn mutate(input: &SeedInput, path: &[usize], semifield: Semifield, emit: Emit, max_terms: usize) -> Result<Value, CliError> {
    let vars = emit == Emit::Vars;
    let text = |xs: Vec<cluster_core::polyring::Poly>| json!(xs.iter().map(|p| p.to_factored_string()).collect::<Vec<_>>());
    match (input, semifield) {
        (SeedInput::Exchange(b), Semifield::Principal) => {
            let s = principal_walk(b, path, max_terms)?;
            let mut v = s.to_json();
            if vars {
                v["cluster_variables"] = text((0..s.n()).map(|i| s.cluster_variable(i)).collect::<Result<_, _>>()?);
            }
            Ok(v)
        }
        (SeedInput::Exchange(b), Semifield::Free) => {
            let s = FreeSeed::new(b).with_term_budget(max_terms as u64).mutate_path(path)?;
            free_json(&s, vars)
        }
        (SeedInput::Gca { b, data }, Semifield::Principal) => {
            let s = gca_walk(SeedInput::gca(b, data)?, path, max_terms)?;
            let mut v = s.to_json();
            if vars {
                v["cluster_variables"] = text((0..s.n()).map(|i| s.cluster_variable(i)).collect::<Result<_, _>>()?);
            }
            Ok(v)
        }
        (SeedInput::Geometric { bt, vars: names }, Semifield::Principal) => {
            let s = SeedInput::geometric(bt, names.as_deref())?.mutate_path(path)?;
            Ok(s.to_json())
        }
        (_, Semifield::Free) => Err(CliError::Input("--semifield free needs a plain exchange matrix".into())),
    }
}

/// `N seeds, M cluster variables, complete` (or `incomplete`).
pub fn enumerate_summary(r: &ExchangeGraphResult) -> String {
    format!(
        "{} seeds, {} cluster variables, {}",
        r.seeds.len(),
        r.cluster_variables.len(),
        if r.complete { "complete" } else { "incomplete" }
    )
}

pub fn enumerate_graph(input: &SeedInput, max_seeds: usize, max_terms: usize) -> Result<ExchangeGraphResult, CliError> {
    let SeedInput::Exchange(b) = input else {
        return Err(CliError::Input("enumerate needs a plain exchange matrix".into()));
    };
    Ok(enumerate(b, EnumerateBudget { max_seeds, max_terms }))
}

pub fn classify_matrix(input: &SeedInput, max_matrices: Option<usize>) -> Result<Classification, CliError> {
    let mut budget = FiniteTypeBudget::default();
    if let Some(m) = max_matrices {
        budget.max_matrices = m;
    }
    Ok(classify(&input.exchange_matrix(), budget)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub walk: usize,
    /// One-based path to the offending seed.
    pub path: Vec<usize>,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub kind: &'static str,
    pub n: usize,
    pub walks: usize,
    pub depth: usize,
    pub seed: u64,
    pub seeds_checked: usize,
    /// Walks cut short by the expression size budget.
    pub stopped_early: usize,
    pub separation_verified: usize,
    pub separation_skipped: usize,
    pub violations: Vec<Violation>,
    pub passed: bool,
}

fn random_path(rng: &mut ChaCha8Rng, n: usize, depth: usize) -> Vec<usize> {
    let mut path: Vec<usize> = Vec::with_capacity(depth);
    for _ in 0..depth {
        let k = loop {
            let k = rng.gen_range(0..n);
            if n == 1 || path.last() != Some(&k) {
                break k;
            }
        };
        path.push(k);
    }
    path
}

fn one_based(p: &[usize]) -> Vec<usize> {
    p.iter().map(|k| k + 1).collect()
}

struct Walk<'a> {
    index: usize,
    report: &'a mut VerifyReport,
}

impl Walk<'_> {
    fn fail(&mut self, path: &[usize], check: &str, detail: impl Into<String>) {
        self.report.violations.push(Violation {
            walk: self.index,
            path: one_based(path),
            check: check.into(),
            detail: detail.into(),
        });
    }

    fn principal(&mut self, b: &ExchangeMatrix, path: &[usize], max_terms: usize) {
        let mut s = cluster_core::pattern::initial_seed(b);
        let mut walked = 0;
        loop {
            self.report.seeds_checked += 1;
            for c in verify_invariants(&s).failures() {
                self.fail(&s.path, c.name, c.detail.clone());
            }
            let Some(&k) = path.get(walked) else { break };
            let t = match s.mutate_bounded(k, None, Some(max_terms)) {
                Ok(t) => t,
                Err(PatternError::Budget(_)) => {
                    self.report.stopped_early += 1;
                    break;
                }
                Err(e) => return self.fail(&s.path, "mutation", e.to_string()),
            };
            match s.mutate_eps(k, Some(-1)) {
                Ok(e) if e == t => {}
                Ok(_) => self.fail(&t.path, "eps_independence", "mutation with eps = -1 differs"),
                Err(e) => self.fail(&t.path, "eps_independence", e.to_string()),
            }
            match t.mutate_bounded(k, None, Some(max_terms)) {
                Ok(back) if back == s => {}
                Ok(_) => self.fail(&t.path, "involution", "mutating twice does not restore the seed"),
                Err(PatternError::Budget(_)) => {}
                Err(e) => self.fail(&t.path, "involution", e.to_string()),
            }
            s = t;
            walked += 1;
        }
        match check_separation(b, &path[..walked]) {
            Ok(r) => {
                self.report.separation_verified += r.verified;
                if let Some((p, msg)) = r.failure {
                    self.report.violations.push(Violation {
                        walk: self.index,
                        path: p,
                        check: "separation".into(),
                        detail: msg,
                    });
                }
            }
            Err(PatternError::Budget(_)) => self.report.separation_skipped += 1,
            Err(e) => self.fail(&path[..walked], "separation", e.to_string()),
        }
    }

    fn gca(&mut self, initial: &GcaSeed, path: &[usize], max_terms: usize) {
        let mut s = initial.clone();
        let mut walked = 0;
        loop {
            self.report.seeds_checked += 1;
            match gca_duality_check(&s) {
                Ok(r) => {
                    for c in r.checks.iter().filter(|c| !c.passed) {
                        self.fail(&s.path, c.name, c.detail.clone());
                    }
                }
                Err(e) => self.fail(&s.path, "duality", e.to_string()),
            }
            match (companion_patterns(&s), right_companion_specialize(&s)) {
                (Ok((_, right)), Ok(spec)) if right == spec => {}
                (Ok(_), Ok(_)) => self.fail(&s.path, "specialization", "z -> 0 limit differs from the right companion"),
                (Err(e), _) | (_, Err(e)) => self.fail(&s.path, "specialization", e.to_string()),
            }
            let Some(&k) = path.get(walked) else { break };
            let t = match s.mutate_bounded(k, None, Some(max_terms)) {
                Ok(t) => t,
                Err(GcaError::Pattern(PatternError::Budget(_))) => {
                    self.report.stopped_early += 1;
                    break;
                }
                Err(e) => return self.fail(&s.path, "mutation", e.to_string()),
            };
            match t.mutate_bounded(k, None, Some(max_terms)) {
                Ok(back) if back == s => {}
                Ok(_) => self.fail(&t.path, "involution", "mutating twice does not restore the seed"),
                Err(GcaError::Pattern(PatternError::Budget(_))) => {}
                Err(e) => self.fail(&t.path, "involution", e.to_string()),
            }
            s = t;
            walked += 1;
        }
    }

    fn geometric(&mut self, initial: &GeometricSeed, path: &[usize], max_terms: usize) {
        let mut s = initial.clone();
        let mut walked = 0;
        loop {
            self.report.seeds_checked += 1;
            if !s.frozen_exponents_nonneg() {
                self.fail(&s.path, "strong_laurent", "a frozen variable has a negative exponent");
            }
            let Some(&k) = path.get(walked) else { break };
            let t = match s.mutate(k) {
                Ok(t) if t.x.iter().all(|p| p.len() <= max_terms) => t,
                Ok(_) => {
                    self.report.stopped_early += 1;
                    break;
                }
                Err(e) => return self.fail(&s.path, "mutation", e.to_string()),
            };
            match t.mutate(k) {
                Ok(back) if back.bt == s.bt && back.x == s.x => {}
                Ok(_) => self.fail(&t.path, "involution", "mutating twice does not restore the seed"),
                Err(e) => self.fail(&t.path, "involution", e.to_string()),
            }
            s = t;
            walked += 1;
        }
    }
}

/// Runs `walks` random walks of length `depth` from the initial seed and
/// checks every structural invariant along the way. Deterministic in `seed`.
pub fn verify(input: &SeedInput, walks: usize, depth: usize, seed: u64, max_terms: usize) -> Result<VerifyReport, CliError> {
    let n = input.n();
    let mut report = VerifyReport {
        kind: match input {
            SeedInput::Exchange(_) => "principal",
            SeedInput::Gca { .. } => "gca",
            SeedInput::Geometric { .. } => "geometric",
        },
        n,
        walks,
        depth,
        seed,
        seeds_checked: 0,
        stopped_early: 0,
        separation_verified: 0,
        separation_skipped: 0,
        violations: Vec::new(),
        passed: true,
    };
    let gca = match input {
        SeedInput::Gca { b, data } => Some(SeedInput::gca(b, data)?),
        _ => None,
    };
    let geometric = match input {
        SeedInput::Geometric { bt, vars } => Some(SeedInput::geometric(bt, vars.as_deref())?),
        _ => None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for index in 0..walks {
        let path = random_path(&mut rng, n, depth);
        let mut w = Walk {
            index,
            report: &mut report,
        };
        match input {
            SeedInput::Exchange(b) => w.principal(b, &path, max_terms),
            SeedInput::Gca { .. } => w.gca(gca.as_ref().expect("built above"), &path, max_terms),
            SeedInput::Geometric { .. } => w.geometric(geometric.as_ref().expect("built above"), &path, max_terms),
        }
    }
    report.passed = report.violations.is_empty();
    Ok(report)
}

/// Replays the named golden examples; `None` replays all of them.
pub fn examples(name: Option<&str>) -> Result<Vec<GoldenReport>, CliError> {
    let names: Vec<&str> = match name {
        Some(n) => vec![n],
        None => EXAMPLES.to_vec(),
    };
    names
        .into_iter()
        .map(|n| {
            replay(n).map_err(|e| match e {
                cluster_core::golden::GoldenError::Unknown(_) => {
                    CliError::Input(format!("unknown example {n:?}; expected one of {}", EXAMPLES.join(", ")))
                }
                e => CliError::Verification(e.to_string()),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn input(v: Value) -> SeedInput {
        SeedInput::from_value(&v).unwrap()
    }

    #[test]
    fn verify_is_deterministic_and_empty_passes() {
        let a2 = input(json!([[0, 1], [-1, 0]]));
        let r = verify(&a2, 0, 8, 1, 10_000).unwrap();
        assert!(r.passed);
        assert_eq!(r.seeds_checked, 0);
        let r1 = verify(&a2, 5, 6, 7, 10_000).unwrap();
        let r2 = verify(&a2, 5, 6, 7, 10_000).unwrap();
        assert!(r1.passed);
        assert_eq!(r1.seeds_checked, 35);
        assert_eq!(serde_json::to_value(&r1).unwrap(), serde_json::to_value(&r2).unwrap());
    }

    #[test]
    fn verify_other_kinds() {
        let gca = input(json!({"b": [[0, -1], [1, 0]], "data": {"r": [2, 1], "z": [[1, "z", 1], [1, 1]]}}));
        assert!(verify(&gca, 3, 6, 0, 10_000).unwrap().passed);
        let geo = input(json!({"bt": [[0, 1], [-1, 0], [1, 0], [0, -1]]}));
        assert!(verify(&geo, 3, 6, 0, 10_000).unwrap().passed);
    }

    #[test]
    fn free_and_principal_mutate() {
        let a2 = input(json!([[0, 1], [-1, 0]]));
        let v = mutate(&a2, &[0], Semifield::Free, Emit::Vars, 10_000).unwrap();
        assert_eq!(v["path"], json!([1]));
        assert_eq!(v["cluster_variables"].as_array().unwrap().len(), 2);
        let p = mutate(&a2, &[0], Semifield::Principal, Emit::Seed, 10_000).unwrap();
        assert_eq!(p["f"][0], json!([{"exps": [1, 0], "coeff": "1"}, {"exps": [0, 0], "coeff": "1"}]));
        let geo = input(json!({"bt": [[0, 1], [-1, 0], [1, 0]]}));
        assert!(mutate(&geo, &[0], Semifield::Free, Emit::Seed, 10).is_err());
    }

    #[test]
    fn example_names() {
        assert_eq!(examples(Some("a2")).unwrap().len(), 1);
        assert!(matches!(examples(Some("e8")), Err(CliError::Input(_))));
    }
}
