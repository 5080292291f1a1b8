//! Sparse multivariate (Laurent) polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Every polynomial lives over a [`VarArena`], an ordered list of variable
//! names shared through an `Arc`. Exponents are stored densely against the
//! arena; terms are kept sorted by graded-lexicographic order with the
//! leading term first. The zero polynomial has no terms.

mod int;
mod text;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

pub use int::Int;
pub use text::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable arena mismatch")]
    ArenaMismatch,
    #[error("not divisible")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no substitution given for variable {0}")]
    MissingVariable(String),
    #[error("negative power of a non-monomial")]
    NegativePower,
    #[error("zero polynomial has no exponent vector")]
    ZeroPolynomial,
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("malformed polynomial json: {0}")]
    Json(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Ordered list of named variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarArena {
    names: Vec<String>,
}

impl VarArena {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Self> {
        Arc::new(VarArena {
            names: names.into_iter().map(Into::into).collect(),
        })
    }

    /// `prefix1..prefixN` for each `(prefix, count)`.
    pub fn indexed(groups: &[(&str, usize)]) -> Arc<Self> {
        let mut names = Vec::new();
        for (p, n) in groups {
            for i in 1..=*n {
                names.push(format!("{p}{i}"));
            }
        }
        Arc::new(VarArena { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Dense exponent vector over an arena.
pub type Monomial = SmallVec<[i32; 8]>;

fn mono_degree(m: &[i32]) -> i64 {
    m.iter().map(|&e| e as i64).sum()
}

/// Graded lexicographic comparison, first variable largest.
pub fn grlex_cmp(a: &[i32], b: &[i32]) -> std::cmp::Ordering {
    mono_degree(a).cmp(&mono_degree(b)).then_with(|| a.cmp(b))
}

#[derive(Clone, PartialEq, Eq)]
struct GrlexKey(Monomial);

impl Ord for GrlexKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        grlex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for GrlexKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone)]
pub struct Poly {
    arena: Arc<VarArena>,
    terms: Vec<(Monomial, Int)>,
}

/// Polynomial with nonnegative exponents.
pub type IntPoly = Poly;
/// Polynomial whose exponents may be negative.
pub type LaurentPoly = Poly;

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_arena(&self.arena, &other.arena) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

fn same_arena(a: &Arc<VarArena>, b: &Arc<VarArena>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

impl Poly {
    pub fn zero(arena: &Arc<VarArena>) -> Poly {
        Poly {
            arena: arena.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(arena: &Arc<VarArena>, c: impl Into<Int>) -> Poly {
        let c = c.into();
        if c.is_zero() {
            return Poly::zero(arena);
        }
        Poly {
            arena: arena.clone(),
            terms: vec![(SmallVec::from_elem(0, arena.len()), c)],
        }
    }

    pub fn one(arena: &Arc<VarArena>) -> Poly {
        Poly::constant(arena, 1)
    }

    pub fn var(arena: &Arc<VarArena>, i: usize) -> Poly {
        let mut m: Monomial = SmallVec::from_elem(0, arena.len());
        m[i] = 1;
        Poly {
            arena: arena.clone(),
            terms: vec![(m, Int::ONE)],
        }
    }

    pub fn monomial(arena: &Arc<VarArena>, exps: &[i32], c: impl Into<Int>) -> Poly {
        assert_eq!(exps.len(), arena.len(), "exponent vector length");
        let c = c.into();
        if c.is_zero() {
            return Poly::zero(arena);
        }
        Poly {
            arena: arena.clone(),
            terms: vec![(SmallVec::from_slice(exps), c)],
        }
    }

    /// Builds a canonical polynomial from arbitrary terms.
    pub fn from_terms(arena: &Arc<VarArena>, terms: impl IntoIterator<Item = (Monomial, Int)>) -> Poly {
        let mut v: Vec<(Monomial, Int)> = terms.into_iter().collect();
        for (m, _) in &v {
            assert_eq!(m.len(), arena.len(), "exponent vector length");
        }
        v.sort_unstable_by(|a, b| grlex_cmp(&b.0, &a.0));
        Poly {
            arena: arena.clone(),
            terms: merge_sorted_runs(v),
        }
    }

    pub fn arena(&self) -> &Arc<VarArena> {
        &self.arena
    }

    pub fn terms(&self) -> &[(Monomial, Int)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one() && self.terms[0].0.iter().all(|&e| e == 0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.iter().all(|&e| e >= 0))
    }

    pub fn leading(&self) -> Option<&(Monomial, Int)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.iter().map(|(m, _)| mono_degree(m)).max()
    }

    /// Largest exponent of variable `i`.
    pub fn degree_in(&self, i: usize) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m[i]).max()
    }

    pub fn coeff(&self, exps: &[i32]) -> Int {
        self.terms
            .iter()
            .find(|(m, _)| m.as_slice() == exps)
            .map(|(_, c)| c.clone())
            .unwrap_or(Int::ZERO)
    }

    pub fn constant_term(&self) -> Int {
        match self.terms.last() {
            Some((m, c)) if m.iter().all(|&e| e == 0) => c.clone(),
            _ => self
                .terms
                .iter()
                .find(|(m, _)| m.iter().all(|&e| e == 0))
                .map(|(_, c)| c.clone())
                .unwrap_or(Int::ZERO),
        }
    }

    pub fn has_nonneg_coeffs(&self) -> bool {
        self.terms.iter().all(|(_, c)| !c.is_negative())
    }

    /// Componentwise minimum exponent over variables `vars`.
    pub fn min_exponent_vector(&self, vars: std::ops::Range<usize>) -> Result<Vec<i32>, PolyError> {
        let mut it = self.terms.iter();
        let (first, _) = it.next().ok_or(PolyError::ZeroPolynomial)?;
        let mut out: Vec<i32> = first[vars.clone()].to_vec();
        for (m, _) in it {
            for (o, &e) in out.iter_mut().zip(&m[vars.clone()]) {
                *o = (*o).min(e);
            }
        }
        Ok(out)
    }

    /// Componentwise minimum exponent over all variables.
    pub fn min_exponents(&self) -> Result<Vec<i32>, PolyError> {
        self.min_exponent_vector(0..self.arena.len())
    }

    /// Componentwise maximum exponent over all variables.
    pub fn max_exponents(&self) -> Result<Vec<i32>, PolyError> {
        let mut it = self.terms.iter();
        let (first, _) = it.next().ok_or(PolyError::ZeroPolynomial)?;
        let mut out: Vec<i32> = first.to_vec();
        for (m, _) in it {
            for (o, &e) in out.iter_mut().zip(m.iter()) {
                *o = (*o).max(e);
            }
        }
        Ok(out)
    }

    /// Gcd of the coefficients, positive; zero for the zero polynomial.
    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g.abs()
    }

    /// Writes a nonzero `self` as `c * x^m * p` with `c` its content, `x^m`
    /// its minimal monomial and `p` a content-free polynomial.
    pub fn primitive_split(&self) -> Result<(Int, Vec<i32>, Poly), PolyError> {
        let m = self.min_exponents()?;
        let c = self.content();
        let terms = self
            .terms
            .iter()
            .map(|(mm, cc)| {
                let e: Monomial = mm.iter().zip(&m).map(|(a, b)| a - b).collect();
                (e, cc.div_exact(&c).expect("content divides"))
            })
            .collect();
        Ok((
            c,
            m,
            Poly {
                arena: self.arena.clone(),
                terms,
            },
        ))
    }

    /// Value at an integer point; every exponent must be nonnegative.
    pub fn eval_at(&self, point: &[BigInt]) -> Result<BigInt, PolyError> {
        if !self.is_polynomial() {
            return Err(PolyError::NegativePower);
        }
        let mut cache: Vec<Vec<BigInt>> = point.iter().map(|p| vec![BigInt::from(1), p.clone()]).collect();
        let mut s = BigInt::from(0);
        for (m, c) in &self.terms {
            let mut t = c.to_big();
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while cache[i].len() <= e {
                    let next = cache[i].last().unwrap() * &point[i];
                    cache[i].push(next);
                }
                t *= &cache[i][e];
            }
            s += t;
        }
        Ok(s)
    }

    fn check_arena(&self, other: &Poly) -> Result<(), PolyError> {
        if same_arena(&self.arena, &other.arena) {
            Ok(())
        } else {
            Err(PolyError::ArenaMismatch)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_arena(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_arena(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_arena(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match grlex_cmp(&a[i].0, &b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            out.push((m.clone(), if negate { c.neg() } else { c.clone() }));
        }
        Poly {
            arena: self.arena.clone(),
            terms: out,
        }
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.arena);
        }
        if other.is_monomial() {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.is_monomial() {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Int> = HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb.iter()).map(|(x, y)| x + y).collect();
                acc.entry(m).and_modify(|c| c.add_assign(&ca.mul(cb))).or_insert_with(|| ca.mul(cb));
            }
        }
        let mut terms: Vec<(Monomial, Int)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| grlex_cmp(&b.0, &a.0));
        Poly {
            arena: self.arena.clone(),
            terms,
        }
    }

    /// Multiplies by `c * x^m`. Grlex order is preserved under shifts.
    pub fn mul_term(&self, m: &[i32], c: &Int) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.arena);
        }
        Poly {
            arena: self.arena.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.iter().zip(m).map(|(x, y)| x + y).collect(), cc.mul(c)))
                .collect(),
        }
    }

    pub fn shift(&self, m: &[i32]) -> Poly {
        self.mul_term(m, &Int::ONE)
    }

    pub fn scale(&self, c: &Int) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.arena);
        }
        Poly {
            arena: self.arena.clone(),
            terms: self.terms.iter().map(|(m, cc)| (m.clone(), cc.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            arena: self.arena.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        if self.is_monomial() {
            let (m, c) = &self.terms[0];
            let mm: Monomial = m.iter().map(|x| x * e as i32).collect();
            return Poly::monomial(&self.arena, &mm, c.pow(e));
        }
        let mut result = Poly::one(&self.arena);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Integer power allowing negative exponents on monomials with unit
    /// coefficient.
    pub fn powi(&self, e: i32) -> Result<Poly, PolyError> {
        if e >= 0 {
            return Ok(self.pow(e as u32));
        }
        if !self.is_monomial() {
            return Err(PolyError::NegativePower);
        }
        let (m, c) = &self.terms[0];
        let inv = Int::ONE.div_exact(c).ok_or(PolyError::NegativePower)?;
        let mm: Monomial = m.iter().map(|x| -x).collect();
        Ok(Poly::monomial(&self.arena, &mm, inv).pow((-e) as u32))
    }

    /// Exact quotient `self / den`.
    ///
    /// Both sides are first shifted to have no monomial content; the shifted
    /// dividend is then reduced leading-term-first. The first leading term
    /// that is not a multiple of the divisor's leading term proves that no
    /// Laurent quotient exists.
    pub fn exact_div(&self, den: &Poly) -> Result<Poly, PolyError> {
        self.check_arena(den)?;
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Poly::zero(&self.arena));
        }
        if den.is_monomial() {
            let (dm, dc) = &den.terms[0];
            let neg: Monomial = dm.iter().map(|x| -x).collect();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let q = c.div_exact(dc).ok_or(PolyError::NotDivisible)?;
                terms.push((m.iter().zip(neg.iter()).map(|(a, b)| a + b).collect(), q));
            }
            return Ok(Poly {
                arena: self.arena.clone(),
                terms,
            });
        }
        let nmin = self.min_exponents()?;
        let dmin = den.min_exponents()?;
        let neg = |v: &[i32]| -> Monomial { v.iter().map(|x| -x).collect() };
        let n0 = self.shift(&neg(&nmin));
        let d0 = den.shift(&neg(&dmin));
        let (nmax, dmax) = (n0.max_exponents()?, d0.max_exponents()?);
        if nmax.iter().zip(&dmax).any(|(n, d)| d > n) {
            return Err(PolyError::NotDivisible);
        }
        let q0 = divide_polynomial(&n0, &d0)?;
        let shift: Monomial = nmin.iter().zip(dmin.iter()).map(|(a, b)| a - b).collect();
        Ok(q0.shift(&shift))
    }

    /// Replaces variable `i` of `self` by `images[i]`.
    ///
    /// All images must share one target arena. A negative exponent is only
    /// allowed when the corresponding image is a unit monomial.
    pub fn substitute(&self, target: &Arc<VarArena>, images: &[Poly]) -> Result<Poly, PolyError> {
        if images.len() != self.arena.len() {
            let missing = self.arena.names.get(images.len()).cloned().unwrap_or_default();
            return Err(PolyError::MissingVariable(missing));
        }
        for im in images {
            if !same_arena(&im.arena, target) {
                return Err(PolyError::ArenaMismatch);
            }
        }
        let n = target.len();
        let mono_images: Option<Vec<(&Monomial, &Int)>> = images
            .iter()
            .map(|p| {
                if p.is_monomial() {
                    Some((&p.terms[0].0, &p.terms[0].1))
                } else {
                    None
                }
            })
            .collect();
        if let Some(mi) = mono_images {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let mut out: Monomial = SmallVec::from_elem(0, n);
                let mut coef = c.clone();
                for (v, &e) in m.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let (im, ic) = mi[v];
                    for (o, x) in out.iter_mut().zip(im.iter()) {
                        *o += x * e;
                    }
                    if e > 0 {
                        coef = coef.mul(&ic.pow(e as u32));
                    } else {
                        let inv = Int::ONE.div_exact(ic).ok_or(PolyError::NegativePower)?;
                        coef = coef.mul(&inv.pow((-e) as u32));
                    }
                }
                terms.push((out, coef));
            }
            return Ok(Poly::from_terms(target, terms));
        }
        let mut cache: HashMap<(usize, i32), Poly> = HashMap::new();
        let mut acc: Vec<Poly> = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (v, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = match cache.get(&(v, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = images[v].powi(e)?;
                        cache.insert((v, e), p.clone());
                        p
                    }
                };
                t = t.mul_unchecked(&p);
            }
            acc.push(t);
        }
        Ok(sum_polys(target, acc))
    }

    /// Embeds into `target`, sending variable `i` to `map[i]`.
    pub fn embed(&self, target: &Arc<VarArena>, map: &[usize]) -> Poly {
        let n = target.len();
        Poly::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut out: Monomial = SmallVec::from_elem(0, n);
                for (i, &e) in m.iter().enumerate() {
                    out[map[i]] += e;
                }
                (out, c.clone())
            }),
        )
    }

    /// Embeds by variable name. Every variable of `self` must exist in `target`.
    pub fn embed_by_name(&self, target: &Arc<VarArena>) -> Result<Poly, PolyError> {
        let map = self
            .arena
            .names
            .iter()
            .map(|n| target.index_of(n).ok_or_else(|| PolyError::UnknownVariable(n.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.embed(target, &map))
    }

    /// Sets the listed variables to zero.
    pub fn drop_vars(&self, vars: &[usize]) -> Poly {
        Poly {
            arena: self.arena.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m[v] == 0))
                .cloned()
                .collect(),
        }
    }

    /// Sets the listed variables to one.
    pub fn set_vars_one(&self, vars: &[usize]) -> Poly {
        Poly::from_terms(
            &self.arena,
            self.terms.iter().map(|(m, c)| {
                let mut mm = m.clone();
                for &v in vars {
                    mm[v] = 0;
                }
                (mm, c.clone())
            }),
        )
    }

    /// Evaluates with every variable set to `1`.
    pub fn eval_ones(&self) -> Int {
        let mut s = Int::ZERO;
        for (_, c) in &self.terms {
            s.add_assign(c);
        }
        s
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(m, c)| TermJson {
                exps: m.to_vec(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_json_terms(arena: &Arc<VarArena>, terms: &[TermJson]) -> Result<Poly, PolyError> {
        let mut v = Vec::with_capacity(terms.len());
        for t in terms {
            if t.exps.len() != arena.len() {
                return Err(PolyError::Json(format!(
                    "expected {} exponents, found {}",
                    arena.len(),
                    t.exps.len()
                )));
            }
            let c: Int = t
                .coeff
                .parse()
                .map_err(|_| PolyError::Json(format!("bad coefficient {:?}", t.coeff)))?;
            v.push((SmallVec::from_slice(&t.exps), c));
        }
        Ok(Poly::from_terms(arena, v))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json_terms()).expect("terms serialize")
    }

    pub fn from_json(arena: &Arc<VarArena>, v: &serde_json::Value) -> Result<Poly, PolyError> {
        let terms: Vec<TermJson> = serde_json::from_value(v.clone()).map_err(|e| PolyError::Json(e.to_string()))?;
        Poly::from_json_terms(arena, &terms)
    }
}

/// JSON form of one term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<i32>,
    pub coeff: String,
}

fn merge_sorted_runs(v: Vec<(Monomial, Int)>) -> Vec<(Monomial, Int)> {
    let mut out: Vec<(Monomial, Int)> = Vec::with_capacity(v.len());
    for (m, c) in v {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => lc.add_assign(&c),
            _ => {
                if let Some((_, lc)) = out.last() {
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if let Some((_, lc)) = out.last() {
        if lc.is_zero() {
            out.pop();
        }
    }
    out
}

/// Sums many polynomials over one arena.
pub fn sum_polys(arena: &Arc<VarArena>, polys: Vec<Poly>) -> Poly {
    let total: usize = polys.iter().map(|p| p.terms.len()).sum();
    let mut all = Vec::with_capacity(total);
    for p in polys {
        all.extend(p.terms);
    }
    Poly::from_terms(arena, all)
}

/// Product of polynomials, smallest first.
pub fn product(arena: &Arc<VarArena>, mut polys: Vec<Poly>) -> Poly {
    polys.sort_by_key(|p| p.len());
    let mut acc = Poly::one(arena);
    for p in polys {
        acc = acc.mul_unchecked(&p);
    }
    acc
}

fn divide_polynomial(num: &Poly, den: &Poly) -> Result<Poly, PolyError> {
    let (lm, lc) = den.terms[0].clone();
    let mut rem: BTreeMap<GrlexKey, Int> = num.terms.iter().map(|(m, c)| (GrlexKey(m.clone()), c.clone())).collect();
    let mut quot: Vec<(Monomial, Int)> = Vec::new();
    while let Some((GrlexKey(rm), rc)) = rem.pop_last() {
        if rm.iter().zip(lm.iter()).any(|(a, b)| a < b) {
            return Err(PolyError::NotDivisible);
        }
        let qc = rc.div_exact(&lc).ok_or(PolyError::NotDivisible)?;
        let qm: Monomial = rm.iter().zip(lm.iter()).map(|(a, b)| a - b).collect();
        for (dm, dc) in &den.terms[1..] {
            let m: Monomial = qm.iter().zip(dm.iter()).map(|(a, b)| a + b).collect();
            let delta = qc.mul(dc).neg();
            let key = GrlexKey(m);
            match rem.get_mut(&key) {
                Some(c) => {
                    c.add_assign(&delta);
                    if c.is_zero() {
                        rem.remove(&key);
                    }
                }
                None => {
                    rem.insert(key, delta);
                }
            }
        }
        quot.push((qm, qc));
    }
    Ok(Poly {
        arena: num.arena.clone(),
        terms: quot,
    })
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("arena mismatch")
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("arena mismatch")
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("arena mismatch")
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
