//! Generalized cluster patterns with mutation data `(r, z)`.
//!
//! The exchange binomial `1 + y` in direction `k` is replaced by the monic
//! reciprocal polynomial `sum_s z_{k,s} y^s` of degree `r_k`. The `z` are
//! formal variables living next to `y` in the arena of the F-polynomials.
//! Ordinary C- and G-patterns of `R B` and `B R` (the left and right
//! companions) are related to the generalized ones by conjugation with
//! `R = diag(r)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exchange::{pos, ExchangeError, ExchangeMatrix};
use crate::linalg::{identity, rat_is_identity, rat_mul, rat_transpose, to_rational, IntMatrix, RatMatrix};
use crate::pattern::{initial_seed, term_bound, Check, PatternError, PrincipalSeed};
use crate::polyring::{sum_polys, Poly, VarArena};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GcaError {
    #[error("mutation degree of direction {0} must be positive")]
    BadDegree(usize),
    #[error("z[{i}] must list {expected} entries")]
    WrongLength { i: usize, expected: usize },
    #[error("z[{i}] must start and end with 1")]
    NonMonic { i: usize },
    #[error("z[{i}][{s}] differs from z[{i}][r - {s}]")]
    ReciprocityViolated { i: usize, s: usize },
    #[error("invalid coefficient name {0:?}")]
    BadName(String),
    #[error("malformed generalized seed: {0}")]
    Malformed(String),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Exchange(#[from] ExchangeError),
}

/// Mutation degrees `r` and coefficients `z[i][s]` (`None` meaning 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationData {
    pub r: Vec<usize>,
    pub z: Vec<Vec<Option<String>>>,
    arena: Arc<VarArena>,
    z_index: Vec<Vec<Option<usize>>>,
}

/// Checks monicity and reciprocity and interns the `z` names after `y1..yn`.
pub fn validate_data(r: &[usize], z: &[Vec<Option<String>>]) -> Result<MutationData, GcaError> {
    let n = r.len();
    if z.len() != n {
        return Err(GcaError::Malformed(format!("expected {n} coefficient lists")));
    }
    let mut names: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    let mut z_index = Vec::with_capacity(n);
    for (i, (&ri, zi)) in r.iter().zip(z).enumerate() {
        if ri == 0 {
            return Err(GcaError::BadDegree(i + 1));
        }
        if zi.len() != ri + 1 {
            return Err(GcaError::WrongLength {
                i: i + 1,
                expected: ri + 1,
            });
        }
        if zi[0].is_some() || zi[ri].is_some() {
            return Err(GcaError::NonMonic { i: i + 1 });
        }
        let mut idx = Vec::with_capacity(ri + 1);
        for s in 0..=ri {
            if zi[s] != zi[ri - s] {
                return Err(GcaError::ReciprocityViolated { i: i + 1, s });
            }
            idx.push(match &zi[s] {
                None => None,
                Some(name) => {
                    let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                    if !valid || names[..n].contains(name) {
                        return Err(GcaError::BadName(name.clone()));
                    }
                    Some(match names.iter().position(|m| m == name) {
                        Some(p) => p,
                        None => {
                            names.push(name.clone());
                            names.len() - 1
                        }
                    })
                }
            });
        }
        z_index.push(idx);
    }
    Ok(MutationData {
        r: r.to_vec(),
        z: z.to_vec(),
        arena: VarArena::new(names),
        z_index,
    })
}

impl MutationData {
    /// Generic data: `z[i][s]` is the formal variable `z{i}_{min(s, r-s)}`.
    pub fn generic(r: &[usize]) -> Result<MutationData, GcaError> {
        let z: Vec<Vec<Option<String>>> = r
            .iter()
            .enumerate()
            .map(|(i, &ri)| {
                (0..=ri)
                    .map(|s| (s != 0 && s != ri).then(|| format!("z{}_{}", i + 1, s.min(ri - s))))
                    .collect()
            })
            .collect();
        validate_data(r, &z)
    }

    /// Ordinary data `r = (1, ..., 1)`.
    pub fn ordinary(n: usize) -> MutationData {
        MutationData::generic(&vec![1; n]).expect("valid")
    }

    pub fn n(&self) -> usize {
        self.r.len()
    }

    /// Arena `y1..yn` followed by the `z` variables.
    pub fn arena(&self) -> &Arc<VarArena> {
        &self.arena
    }

    /// The polynomial `P_k(y) = sum_s z_{k,s} y^s` in the arena extended by a
    /// final variable `y`.
    pub fn exchange_polynomial(&self, k: usize) -> Poly {
        let mut names = self.arena.names().to_vec();
        names.push("y".into());
        let arena = VarArena::new(names);
        let nv = arena.len();
        let terms = (0..=self.r[k])
            .map(|s| {
                let mut e = vec![0i32; nv];
                e[nv - 1] = s as i32;
                if let Some(v) = self.z_index[k][s] {
                    e[v] = 1;
                }
                Poly::monomial(&arena, &e, 1)
            })
            .collect();
        sum_polys(&arena, terms)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r,
            "z": self.z.iter().map(|zi| zi.iter().map(|v| match v {
                None => json!(1),
                Some(name) => json!(name),
            }).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<MutationData, GcaError> {
        let r: Vec<usize> = serde_json::from_value(v["r"].clone()).map_err(|e| GcaError::Malformed(format!("r: {e}")))?;
        let zs = v["z"].as_array().ok_or_else(|| GcaError::Malformed("z must be a list".into()))?;
        let mut z = Vec::with_capacity(zs.len());
        for zi in zs {
            let zi = zi.as_array().ok_or_else(|| GcaError::Malformed("z entries must be lists".into()))?;
            let mut row = Vec::with_capacity(zi.len());
            for e in zi {
                row.push(match e {
                    Value::Number(x) if x.as_i64() == Some(1) => None,
                    Value::String(s) if s == "1" => None,
                    Value::String(s) => Some(s.clone()),
                    other => return Err(GcaError::Malformed(format!("z entry {other} is neither 1 nor a name"))),
                });
            }
            z.push(row);
        }
        validate_data(&r, &z)
    }
}

/// Principal-coefficient seed of a generalized cluster pattern.
#[derive(Debug, Clone)]
pub struct GcaSeed {
    pub data: MutationData,
    pub b0: ExchangeMatrix,
    pub b: ExchangeMatrix,
    pub c: IntMatrix,
    pub g: IntMatrix,
    /// F-polynomials over `(y, z)`.
    pub f: Vec<Poly>,
    /// Zero-based mutation directions from the initial seed.
    pub path: Vec<usize>,
}

impl PartialEq for GcaSeed {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data && self.b0 == other.b0 && self.b == other.b && self.c == other.c && self.g == other.g && self.f == other.f
    }
}

fn scale_cols(m: &IntMatrix, r: &[usize]) -> IntMatrix {
    m.iter()
        .map(|row| row.iter().zip(r).map(|(x, &ri)| x * ri as i64).collect())
        .collect()
}

fn scale_rows(m: &IntMatrix, r: &[usize]) -> IntMatrix {
    m.iter()
        .zip(r)
        .map(|(row, &ri)| row.iter().map(|x| x * ri as i64).collect())
        .collect()
}

impl GcaSeed {
    pub fn initial(b: &ExchangeMatrix, data: MutationData) -> Result<GcaSeed, GcaError> {
        let n = b.n();
        if data.n() != n {
            return Err(GcaError::Malformed(format!(
                "mutation data has rank {}, matrix has rank {n}",
                data.n()
            )));
        }
        Ok(GcaSeed {
            f: vec![Poly::one(data.arena()); n],
            data,
            b0: b.clone(),
            b: b.clone(),
            c: identity(n),
            g: identity(n),
            path: Vec::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    pub fn arena(&self) -> &Arc<VarArena> {
        self.data.arena()
    }

    pub fn c_vector(&self, i: usize) -> Vec<i64> {
        self.c.iter().map(|r| r[i]).collect()
    }

    pub fn g_vector(&self, i: usize) -> Vec<i64> {
        self.g.iter().map(|r| r[i]).collect()
    }

    pub fn mutate(&self, k: usize) -> Result<GcaSeed, GcaError> {
        self.mutate_eps(k, None)
    }

    /// Mutation through the sign-`eps` forms of the B-, C- and G-recursions.
    pub fn mutate_eps(&self, k: usize, eps: Option<i64>) -> Result<GcaSeed, GcaError> {
        self.mutate_bounded(k, eps, None)
    }

    /// Mutation that fails with a budget error when the exchange polynomial
    /// could have more than `max_terms` monomials.
    pub fn mutate_bounded(&self, k: usize, eps: Option<i64>, max_terms: Option<usize>) -> Result<GcaSeed, GcaError> {
        let n = self.n();
        if k >= n {
            return Err(PatternError::BadDirection { k, n }.into());
        }
        let rk = self.data.r[k] as i64;
        let e = eps.unwrap_or(1);
        let ovf = || GcaError::Exchange(ExchangeError::Overflow);
        let step = |x_ik: i64, b_kj: i64| -> Option<i64> {
            if eps.is_none() {
                x_ik.checked_mul(pos(rk * b_kj))?.checked_add(pos(-x_ik * rk).checked_mul(b_kj)?)
            } else {
                x_ik.checked_mul(pos(e * rk * b_kj))?
                    .checked_add(pos(-e * x_ik * rk).checked_mul(b_kj)?)
            }
        };

        let mut b = self.b.rows().clone();
        let mut c = self.c.clone();
        for j in 0..n {
            let bkj = self.b.get(k, j);
            for i in 0..n {
                b[i][j] = if i == k || j == k {
                    -self.b.get(i, j)
                } else {
                    step(self.b.get(i, k), bkj)
                        .and_then(|d| d.checked_add(self.b.get(i, j)))
                        .ok_or_else(ovf)?
                };
                c[i][j] = if j == k {
                    -self.c[i][k]
                } else {
                    step(self.c[i][k], bkj).and_then(|d| d.checked_add(self.c[i][j])).ok_or_else(ovf)?
                };
            }
        }

        let mut g = self.g.clone();
        for i in 0..n {
            let mut s = -self.g[i][k];
            for l in 0..n {
                let (blk, clk) = (self.b.get(l, k), self.c[l][k]);
                s += self.g[i][l] * pos(-e * blk * rk) - self.b0.get(i, l) * pos(-e * clk * rk);
            }
            g[i][k] = s;
        }

        if let Some(limit) = max_terms {
            let bound: f64 = (0..=rk)
                .map(|s| {
                    let e: Vec<i64> = (0..n).map(|j| pos(-self.b.get(j, k) * rk) + s * self.b.get(j, k)).collect();
                    term_bound(&self.f, &e)
                })
                .sum();
            if bound > limit as f64 {
                return Err(PatternError::Budget(format!("exchange polynomial may reach {bound:.0} terms")).into());
            }
        }
        let arena = self.arena().clone();
        let nv = arena.len();
        let mut terms = Vec::with_capacity(self.data.r[k] + 1);
        for s in 0..=self.data.r[k] as i64 {
            let mut mono = vec![0i32; nv];
            for j in 0..n {
                let x = self.c[j][k];
                mono[j] = i32::try_from(pos(-x * rk) + s * x).map_err(|_| ovf())?;
            }
            if let Some(v) = self.data.z_index[k][s as usize] {
                mono[v] += 1;
            }
            let mut t = Poly::monomial(&arena, &mono, 1);
            for j in 0..n {
                let x = self.b.get(j, k);
                let p = pos(-x * rk) + s * x;
                if p > 0 {
                    t = &t * &self.f[j].pow(u32::try_from(p).map_err(|_| ovf())?);
                }
            }
            terms.push(t);
        }
        let m = sum_polys(&arena, terms);
        let mut f = self.f.clone();
        f[k] = m.exact_div(&self.f[k]).map_err(PatternError::from)?;

        let mut path = self.path.clone();
        path.push(k);
        Ok(GcaSeed {
            data: self.data.clone(),
            b0: self.b0.clone(),
            b: ExchangeMatrix::new(b)?,
            c,
            g,
            f,
            path,
        })
    }

    pub fn mutate_path(&self, path: &[usize]) -> Result<GcaSeed, GcaError> {
        let mut s = self.clone();
        for &k in path {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Arena `x1..xn` followed by the `y` and `z` variables.
    pub fn xyz_arena(&self) -> Arc<VarArena> {
        let n = self.n();
        VarArena::new((1..=n).map(|i| format!("x{i}")).chain(self.arena().names().iter().cloned()))
    }

    /// `x_{i;t} = x^{g_i} F_i(yhat, z)` with `yhat_j = y_j prod_l x_l^{b0_lj}`,
    /// in [`GcaSeed::xyz_arena`].
    pub fn cluster_variable(&self, i: usize) -> Result<Poly, GcaError> {
        let n = self.n();
        let arena = self.xyz_arena();
        let nv = arena.len();
        let images: Vec<Poly> = (0..self.arena().len())
            .map(|v| {
                let mut e = vec![0i32; nv];
                e[n + v] = 1;
                if v < n {
                    for l in 0..n {
                        e[l] = self.b0.get(l, v) as i32;
                    }
                }
                Poly::monomial(&arena, &e, 1)
            })
            .collect();
        let fy = self.f[i].substitute(&arena, &images).map_err(PatternError::from)?;
        let mut e = vec![0i32; nv];
        for l in 0..n {
            e[l] = i32::try_from(self.g[l][i]).map_err(|_| PatternError::Budget("g-vector exceeds i32".into()))?;
        }
        Ok(fy.shift(&e))
    }

    /// Negated minimal `x`-exponents of the `i`-th cluster variable.
    pub fn d_vector(&self, i: usize) -> Result<Vec<i64>, GcaError> {
        let v = self.cluster_variable(i)?;
        let m = v.min_exponent_vector(0..self.n()).map_err(PatternError::from)?;
        Ok(m.into_iter().map(|e| -(e as i64)).collect())
    }

    /// Relabeling: component `sigma[i]` of the result is component `i`. The
    /// mutation data is attached to the initial labels and is unchanged.
    pub fn apply_permutation(&self, sigma: &[usize]) -> Result<GcaSeed, GcaError> {
        let n = self.n();
        let mut inv = vec![usize::MAX; n];
        if sigma.len() != n {
            return Err(GcaError::Malformed("permutation length".into()));
        }
        for (i, &s) in sigma.iter().enumerate() {
            if s >= n || inv[s] != usize::MAX {
                return Err(GcaError::Malformed("not a permutation".into()));
            }
            inv[s] = i;
        }
        let cols = |m: &IntMatrix| -> IntMatrix { m.iter().map(|r| (0..n).map(|i| r[inv[i]]).collect()).collect() };
        Ok(GcaSeed {
            data: self.data.clone(),
            b0: self.b0.clone(),
            b: self.b.permuted(&inv),
            c: cols(&self.c),
            g: cols(&self.g),
            f: (0..n).map(|i| self.f[inv[i]].clone()).collect(),
            path: self.path.clone(),
        })
    }

    /// Seed document `{data, b0, b, c, g, f, path}`; the path is one-based.
    pub fn to_json(&self) -> Value {
        json!({
            "data": self.data.to_json(),
            "vars": self.arena().names(),
            "b0": self.b0.rows(),
            "b": self.b.rows(),
            "c": self.c,
            "g": self.g,
            "f": self.f.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            "path": self.path.iter().map(|k| k + 1).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<GcaSeed, GcaError> {
        let data = MutationData::from_json(&v["data"])?;
        let mat = |key: &str| -> Result<IntMatrix, GcaError> {
            serde_json::from_value(v[key].clone()).map_err(|e| GcaError::Malformed(format!("{key}: {e}")))
        };
        let mut seed = GcaSeed::initial(&ExchangeMatrix::new(mat("b0")?)?, data)?;
        let n = seed.n();
        seed.b = ExchangeMatrix::new(mat("b")?)?;
        seed.c = mat("c")?;
        seed.g = mat("g")?;
        for (name, m) in [("b", seed.b.rows()), ("c", &seed.c), ("g", &seed.g)] {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(GcaError::Malformed(format!("{name} must be {n}x{n}")));
            }
        }
        let fs = v["f"].as_array().ok_or_else(|| GcaError::Malformed("f must be a list".into()))?;
        if fs.len() != n {
            return Err(GcaError::Malformed(format!("expected {n} F-polynomials")));
        }
        let arena = seed.arena().clone();
        seed.f = fs
            .iter()
            .map(|p| Poly::from_json(&arena, p).map_err(|e| GcaError::Pattern(e.into())))
            .collect::<Result<_, _>>()?;
        let path: Vec<usize> = match v.get("path") {
            None | Some(Value::Null) => Vec::new(),
            Some(p) => serde_json::from_value(p.clone()).map_err(|e| GcaError::Malformed(format!("path: {e}")))?,
        };
        if path.iter().any(|&k| k == 0 || k > n) {
            return Err(GcaError::Malformed("path entries must lie in 1..=n".into()));
        }
        seed.path = path.into_iter().map(|k| k - 1).collect();
        Ok(seed)
    }
}

/// Principal seeds of the ordinary patterns of `R B0` (left) and `B0 R`
/// (right), mutated along the path of `seed`.
pub fn companion_patterns(seed: &GcaSeed) -> Result<(PrincipalSeed, PrincipalSeed), GcaError> {
    let r = &seed.data.r;
    let left_b = ExchangeMatrix::new(scale_rows(seed.b0.rows(), r))?;
    let right_b = ExchangeMatrix::new(scale_cols(seed.b0.rows(), r))?;
    let left = initial_seed(&left_b).mutate_path(&seed.path)?;
    let right = initial_seed(&right_b).mutate_path(&seed.path)?;
    Ok((left, right))
}

fn rat_diag(d: &[BigRational]) -> RatMatrix {
    let n = d.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        d[i].clone()
                    } else {
                        BigRational::from_integer(0.into())
                    }
                })
                .collect()
        })
        .collect()
}

fn rats(v: impl IntoIterator<Item = i64>) -> Vec<BigRational> {
    v.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect()
}

fn check(name: &'static str, ok: bool, detail: impl FnOnce() -> String) -> Check {
    Check {
        name,
        passed: ok,
        detail: if ok { String::new() } else { detail() },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GcaReport {
    pub checks: Vec<Check>,
}

impl GcaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The three duality identities, the companion relations for `C` and `G`,
/// and positivity of the F-polynomials.
pub fn gca_duality_check(seed: &GcaSeed) -> Result<GcaReport, GcaError> {
    let r = &seed.data.r;
    let ri: Vec<i64> = r.iter().map(|&x| x as i64).collect();
    let rm = rat_diag(&rats(ri.iter().copied()));
    let rinv = rat_diag(&ri.iter().map(|&x| BigRational::new(1.into(), x.into())).collect::<Vec<_>>());
    let gt = rat_transpose(&to_rational(&seed.g));
    let c = to_rational(&seed.c);
    let identity_with = |d: &[i64], inner: &RatMatrix| -> bool {
        let dm = rat_diag(&rats(d.iter().copied()));
        let dinv = rat_diag(&d.iter().map(|&x| BigRational::new(1.into(), x.into())).collect::<Vec<_>>());
        rat_is_identity(&rat_mul(&rat_mul(&rat_mul(&dinv, inner), &dm), &c))
    };
    let d_left = ExchangeMatrix::new(scale_rows(seed.b0.rows(), r))?.skew_symmetrizer();
    let d_right = ExchangeMatrix::new(scale_cols(seed.b0.rows(), r))?.skew_symmetrizer();
    let d_gen = seed.b0.skew_symmetrizer();
    let mut checks = vec![
        check("duality_left", identity_with(&d_left, &rat_mul(&rat_mul(&rinv, &gt), &rm)), || {
            "D^-1 R^-1 G^T R D C is not the identity".into()
        }),
        check(
            "duality_right",
            identity_with(&d_right, &rat_mul(&rat_mul(&rm, &gt), &rinv)),
            || "D^-1 R G^T R^-1 D C is not the identity".into(),
        ),
        check("duality", identity_with(&d_gen, &gt), || "D^-1 G^T D C is not the identity".into()),
    ];

    let (left, right) = companion_patterns(seed)?;
    let conj = |m: &IntMatrix, pre: &RatMatrix, post: &RatMatrix| rat_mul(&rat_mul(pre, &to_rational(m)), post);
    checks.push(check("c_equals_left_c", seed.c == left.c, || {
        format!("C = {:?}, left C = {:?}", seed.c, left.c)
    }));
    checks.push(check(
        "c_equals_conjugated_right_c",
        to_rational(&seed.c) == conj(&right.c, &rm, &rinv),
        || format!("C = {:?}, right C = {:?}", seed.c, right.c),
    ));
    checks.push(check("g_equals_right_g", seed.g == right.g, || {
        format!("G = {:?}, right G = {:?}", seed.g, right.g)
    }));
    checks.push(check(
        "g_equals_conjugated_left_g",
        to_rational(&seed.g) == conj(&left.g, &rinv, &rm),
        || format!("G = {:?}, left G = {:?}", seed.g, left.g),
    ));
    let bad_f = (0..seed.n()).find(|&i| !seed.f[i].constant_term().is_one() || !seed.f[i].has_nonneg_coeffs());
    checks.push(check("f_positive_unit_constant", bad_f.is_none(), || {
        format!("F{} fails", bad_f.unwrap() + 1)
    }));
    Ok(GcaReport { checks })
}

/// Sets every `z` to zero and replaces each `y_j^{r_j}` by `y_j`, giving a
/// seed of the ordinary pattern of `B0 R`.
pub fn right_companion_specialize(seed: &GcaSeed) -> Result<PrincipalSeed, GcaError> {
    let n = seed.n();
    let r = &seed.data.r;
    let mut out = initial_seed(&ExchangeMatrix::new(scale_cols(seed.b0.rows(), r))?);
    out.b = ExchangeMatrix::new(scale_cols(seed.b.rows(), r))?;
    out.c = seed
        .c
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &x)| {
                    let v = x * r[j] as i64;
                    if v % r[i] as i64 != 0 {
                        Err(GcaError::Malformed("C is not conjugate to an integer matrix".into()))
                    } else {
                        Ok(v / r[i] as i64)
                    }
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    out.g = seed.g.clone();
    let zvars: Vec<usize> = (n..seed.arena().len()).collect();
    let y_arena = out.y_arena().clone();
    out.f = seed
        .f
        .iter()
        .map(|p| {
            let dropped = p.drop_vars(&zvars);
            let mut terms = Vec::with_capacity(dropped.len());
            for (m, c) in dropped.terms() {
                let mut e = smallvec::SmallVec::<[i32; 8]>::from_elem(0, n);
                for j in 0..n {
                    if m[j] % r[j] as i32 != 0 {
                        return Err(GcaError::Malformed(format!("exponent of y{} is not a multiple of {}", j + 1, r[j])));
                    }
                    e[j] = m[j] / r[j] as i32;
                }
                terms.push((e, c.clone()));
            }
            Ok(Poly::from_terms(&y_arena, terms))
        })
        .collect::<Result<_, _>>()?;
    out.path = seed.path.clone();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> GcaSeed {
        let data = validate_data(&[2, 1], &[vec![None, Some("z".into()), None], vec![None, None]]).unwrap();
        GcaSeed::initial(&ExchangeMatrix::new(vec![vec![0, -1], vec![1, 0]]).unwrap(), data).unwrap()
    }

    fn p(s: &GcaSeed, t: &str) -> Poly {
        Poly::parse(s.arena(), t).unwrap()
    }

    #[test]
    fn data_validation() {
        assert!(matches!(
            validate_data(&[3], &[vec![None, Some("a".into()), Some("b".into()), None]]),
            Err(GcaError::ReciprocityViolated { .. })
        ));
        assert!(matches!(
            validate_data(&[2], &[vec![Some("a".into()), None, Some("a".into())]]),
            Err(GcaError::NonMonic { .. })
        ));
        assert!(matches!(validate_data(&[0], &[vec![None]]), Err(GcaError::BadDegree(1))));
        assert!(matches!(
            validate_data(&[2], &[vec![None, Some("y1".into()), None]]),
            Err(GcaError::BadName(_))
        ));
        let d = MutationData::generic(&[2, 1]).unwrap();
        assert_eq!(d.arena().names(), &["y1", "y2", "z1_1"]);
        let poly = d.exchange_polynomial(0);
        assert_eq!(poly.to_string(), "1 + z1_1*y + y^2");
        assert_eq!(MutationData::ordinary(2).exchange_polynomial(1).to_string(), "1 + y");
        let back = MutationData::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn example_walk() {
        let s0 = example();
        let s1 = s0.mutate(0).unwrap();
        assert_eq!(s1.f[0], p(&s1, "1 + z*y1 + y1^2"));
        let s2 = s1.mutate(1).unwrap();
        assert_eq!(s2.f[1], p(&s2, "1 + y2 + z*y1*y2 + y1^2*y2"));
        let s3 = s2.mutate(0).unwrap();
        assert_eq!(s3.f[0], p(&s3, "1 + 2*y2 + y2^2 + z*y1*y2 + z*y1*y2^2 + y1^2*y2^2"));
        let s6 = s0.mutate_path(&[0, 1, 0, 1, 0, 1]).unwrap();
        assert_eq!(s6, s0);
        assert_eq!(s2.mutate(1).unwrap(), s1);
    }

    #[test]
    fn identities_along_walk() {
        let mut s = example();
        for k in [0, 1, 0, 1, 0, 1, 1, 0] {
            let report = gca_duality_check(&s).unwrap();
            assert!(report.passed(), "{:?}", report.checks);
            let spec = right_companion_specialize(&s).unwrap();
            let (_, right) = companion_patterns(&s).unwrap();
            assert_eq!(spec, right);
            assert_eq!(s.mutate_eps(k, Some(-1)).unwrap(), s.mutate(k).unwrap());
            s = s.mutate(k).unwrap();
        }
    }

    #[test]
    fn ordinary_data_reduces() {
        let b = ExchangeMatrix::new(vec![vec![0, -1, 0], vec![2, 0, -1], vec![0, 1, 0]]).unwrap();
        let s = GcaSeed::initial(&b, MutationData::ordinary(3)).unwrap();
        let p = initial_seed(&b);
        let path = [0, 1, 2, 1, 0, 2];
        let (g, o) = (s.mutate_path(&path).unwrap(), p.mutate_path(&path).unwrap());
        assert_eq!((&g.b, &g.c, &g.g), (&o.b, &o.c, &o.g));
        let names: Vec<String> = g.arena().names().to_vec();
        assert_eq!(names, vec!["y1", "y2", "y3"]);
        for i in 0..3 {
            assert_eq!(g.f[i].to_string(), o.f[i].to_string());
        }
    }

    #[test]
    fn budget_is_reported() {
        let data = MutationData::generic(&[3, 3]).unwrap();
        let b = ExchangeMatrix::new(vec![vec![0, -2], vec![2, 0]]).unwrap();
        let s = GcaSeed::initial(&b, data).unwrap().mutate_path(&[0, 1]).unwrap();
        let err = s.mutate_bounded(1, None, Some(10)).unwrap_err();
        assert!(matches!(err, GcaError::Pattern(PatternError::Budget(_))));
        assert!(s.mutate_bounded(1, None, Some(1_000_000)).is_ok());
    }

    #[test]
    fn cluster_variables() {
        let s1 = example().mutate(0).unwrap();
        let x1 = s1.cluster_variable(0).unwrap();
        let arena = s1.xyz_arena();
        assert_eq!(x1, Poly::parse(&arena, "x1^-1 + z*y1*x1^-1*x2 + y1^2*x1^-1*x2^2").unwrap());
        assert_eq!(s1.d_vector(0).unwrap(), vec![1, 0]);
        assert_eq!(s1.d_vector(1).unwrap(), vec![0, -1]);
        let swapped = s1.apply_permutation(&[1, 0]).unwrap();
        assert_eq!(swapped.f[1], s1.f[0]);
        assert_eq!(swapped.apply_permutation(&[1, 0]).unwrap(), s1);
    }

    #[test]
    fn json_round_trip() {
        let s = example().mutate_path(&[0, 1]).unwrap();
        let back = GcaSeed::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.path, vec![0, 1]);
    }
}
