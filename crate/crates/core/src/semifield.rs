//! Semifield elements: tropical monomials, subtraction-free rational
//! functions and the trivial semifield, together with specialization and
//! tropicalization.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{Int, Poly, PolyError, VarArena};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemifieldError {
    #[error("generator count mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("cannot combine {0:?} with {1:?}")]
    TagMismatch(SemifieldTag, SemifieldTag),
    #[error("subtraction-free rational needs nonzero nonnegative numerator and denominator")]
    NotSubtractionFree,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Laurent monomial `prod u_i^{a_i}` with coefficient one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TropMonomial(pub Vec<i64>);

impl TropMonomial {
    pub fn one(m: usize) -> Self {
        TropMonomial(vec![0; m])
    }

    pub fn generator(m: usize, i: usize) -> Self {
        let mut v = vec![0; m];
        v[i] = 1;
        TropMonomial(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn check(&self, other: &Self) -> Result<(), SemifieldError> {
        if self.0.len() == other.0.len() {
            Ok(())
        } else {
            Err(SemifieldError::DimensionMismatch(self.0.len(), other.0.len()))
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SemifieldError> {
        self.check(other)?;
        Ok(TropMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn inv(&self) -> Self {
        TropMonomial(self.0.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, e: i64) -> Self {
        TropMonomial(self.0.iter().map(|a| a * e).collect())
    }
}

impl fmt::Display for TropMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if any {
                f.write_str("*")?;
            }
            any = true;
            write!(f, "u{}", i + 1)?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        if !any {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Tropical sum: componentwise minimum of exponents.
pub fn trop_sum(a: &TropMonomial, b: &TropMonomial) -> Result<TropMonomial, SemifieldError> {
    a.check(b)?;
    Ok(TropMonomial(a.0.iter().zip(&b.0).map(|(x, y)| *x.min(y)).collect()))
}

/// Ratio of two polynomials with nonnegative coefficients.
///
/// Not reduced to lowest terms. Construction divides out the common integer
/// content and moves the monomial content of each side into a single
/// Laurent monomial split between numerator and denominator.
#[derive(Clone)]
pub struct SfRational {
    num: Poly,
    den: Poly,
}

impl SfRational {
    pub fn new(num: Poly, den: Poly) -> Result<Self, SemifieldError> {
        if num.is_zero() || den.is_zero() || !num.has_nonneg_coeffs() || !den.has_nonneg_coeffs() {
            return Err(SemifieldError::NotSubtractionFree);
        }
        if num.arena() != den.arena() && num.arena().names() != den.arena().names() {
            return Err(PolyError::ArenaMismatch.into());
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        let g = num.content().gcd(&den.content());
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&Poly::constant(num.arena(), g.clone())).expect("content"),
                den.exact_div(&Poly::constant(den.arena(), g)).expect("content"),
            )
        };
        let mn = num.min_exponents().expect("nonzero");
        let md = den.min_exponents().expect("nonzero");
        let net: Vec<i32> = mn.iter().zip(&md).map(|(a, b)| a - b).collect();
        let pos: Vec<i32> = net.iter().map(|&e| e.max(0)).zip(&mn).map(|(p, m)| p - m).collect();
        let neg: Vec<i32> = net.iter().map(|&e| (-e).max(0)).zip(&md).map(|(p, m)| p - m).collect();
        SfRational {
            num: num.shift(&pos),
            den: den.shift(&neg),
        }
    }

    pub fn from_poly(p: Poly) -> Result<Self, SemifieldError> {
        let one = Poly::one(p.arena());
        SfRational::new(p, one)
    }

    pub fn one(arena: &Arc<VarArena>) -> Self {
        SfRational {
            num: Poly::one(arena),
            den: Poly::one(arena),
        }
    }

    pub fn generator(arena: &Arc<VarArena>, i: usize) -> Self {
        SfRational {
            num: Poly::var(arena, i),
            den: Poly::one(arena),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn arena(&self) -> &Arc<VarArena> {
        self.num.arena()
    }

    pub fn add(&self, other: &Self) -> Result<Self, SemifieldError> {
        sf_arith(self, other, SfOp::Add)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SemifieldError> {
        sf_arith(self, other, SfOp::Mul)
    }

    pub fn div(&self, other: &Self) -> Result<Self, SemifieldError> {
        sf_arith(self, other, SfOp::Div)
    }

    pub fn inv(&self) -> Self {
        SfRational {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        SfRational::normalized(base.num.pow(e), base.den.pow(e))
    }

    /// Cross-multiplication equality.
    pub fn equals(&self, other: &Self) -> Result<bool, SemifieldError> {
        Ok(self.num.try_mul(&other.den)? == other.num.try_mul(&self.den)?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"num": self.num.to_json(), "den": self.den.to_json()})
    }

    pub fn from_json(arena: &Arc<VarArena>, v: &serde_json::Value) -> Result<Self, SemifieldError> {
        let num = Poly::from_json(arena, &v["num"])?;
        let den = Poly::from_json(arena, &v["den"])?;
        SfRational::new(num, den)
    }
}

impl PartialEq for SfRational {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl fmt::Display for SfRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for SfRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SfRational({self})")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SfOp {
    Add,
    Mul,
    Div,
}

/// Arithmetic in the universal semifield.
pub fn sf_arith(a: &SfRational, b: &SfRational, op: SfOp) -> Result<SfRational, SemifieldError> {
    let (num, den) = match op {
        SfOp::Add => {
            if a.den == b.den {
                (a.num.try_add(&b.num)?, a.den.clone())
            } else {
                (a.num.try_mul(&b.den)?.try_add(&b.num.try_mul(&a.den)?)?, a.den.try_mul(&b.den)?)
            }
        }
        SfOp::Mul => (a.num.try_mul(&b.num)?, a.den.try_mul(&b.den)?),
        SfOp::Div => (a.num.try_mul(&b.den)?, a.den.try_mul(&b.num)?),
    };
    Ok(SfRational::normalized(num, den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemifieldTag {
    Trop,
    Sf,
    Trivial,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SemifieldValue {
    Trop(TropMonomial),
    Sf(SfRational),
    Trivial,
}

impl SemifieldValue {
    pub fn tag(&self) -> SemifieldTag {
        match self {
            SemifieldValue::Trop(_) => SemifieldTag::Trop,
            SemifieldValue::Sf(_) => SemifieldTag::Sf,
            SemifieldValue::Trivial => SemifieldTag::Trivial,
        }
    }

    fn mismatch(&self, other: &Self) -> SemifieldError {
        SemifieldError::TagMismatch(self.tag(), other.tag())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SemifieldError> {
        match (self, other) {
            (SemifieldValue::Trop(a), SemifieldValue::Trop(b)) => Ok(SemifieldValue::Trop(a.mul(b)?)),
            (SemifieldValue::Sf(a), SemifieldValue::Sf(b)) => Ok(SemifieldValue::Sf(a.mul(b)?)),
            (SemifieldValue::Trivial, SemifieldValue::Trivial) => Ok(SemifieldValue::Trivial),
            _ => Err(self.mismatch(other)),
        }
    }

    /// The semifield addition.
    pub fn oplus(&self, other: &Self) -> Result<Self, SemifieldError> {
        match (self, other) {
            (SemifieldValue::Trop(a), SemifieldValue::Trop(b)) => Ok(SemifieldValue::Trop(trop_sum(a, b)?)),
            (SemifieldValue::Sf(a), SemifieldValue::Sf(b)) => Ok(SemifieldValue::Sf(a.add(b)?)),
            (SemifieldValue::Trivial, SemifieldValue::Trivial) => Ok(SemifieldValue::Trivial),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn inv(&self) -> Self {
        match self {
            SemifieldValue::Trop(a) => SemifieldValue::Trop(a.inv()),
            SemifieldValue::Sf(a) => SemifieldValue::Sf(a.inv()),
            SemifieldValue::Trivial => SemifieldValue::Trivial,
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        match self {
            SemifieldValue::Trop(a) => SemifieldValue::Trop(a.pow(e)),
            SemifieldValue::Sf(a) => SemifieldValue::Sf(a.pow(e)),
            SemifieldValue::Trivial => SemifieldValue::Trivial,
        }
    }

    /// Multiplicative identity shaped like `self`.
    pub fn unit_like(&self) -> Self {
        match self {
            SemifieldValue::Trop(a) => SemifieldValue::Trop(TropMonomial::one(a.len())),
            SemifieldValue::Sf(a) => SemifieldValue::Sf(SfRational::one(a.arena())),
            SemifieldValue::Trivial => SemifieldValue::Trivial,
        }
    }

    /// Exact equality; rational values compare by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        match (self, other) {
            (SemifieldValue::Trop(a), SemifieldValue::Trop(b)) => a == b,
            (SemifieldValue::Sf(a), SemifieldValue::Sf(b)) => a.equals(b).unwrap_or(false),
            (SemifieldValue::Trivial, SemifieldValue::Trivial) => true,
            _ => false,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            SemifieldValue::Trop(a) => serde_json::json!({"trop": a}),
            SemifieldValue::Sf(a) => serde_json::json!({"sf": a.to_json()}),
            SemifieldValue::Trivial => serde_json::json!("trivial"),
        }
    }
}

impl fmt::Display for SemifieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemifieldValue::Trop(a) => write!(f, "{a}"),
            SemifieldValue::Sf(a) => write!(f, "{a}"),
            SemifieldValue::Trivial => f.write_str("1"),
        }
    }
}

/// Image of a polynomial with nonnegative coefficients under the
/// homomorphism sending generator `i` to `assignment[i]`.
pub fn specialize_poly(p: &Poly, target: SemifieldTag, assignment: &[SemifieldValue]) -> Result<SemifieldValue, SemifieldError> {
    if assignment.len() != p.arena().len() {
        return Err(SemifieldError::DimensionMismatch(assignment.len(), p.arena().len()));
    }
    if let Some(bad) = assignment.iter().find(|a| a.tag() != target) {
        return Err(SemifieldError::TagMismatch(target, bad.tag()));
    }
    if p.is_zero() || !p.has_nonneg_coeffs() {
        return Err(SemifieldError::NotSubtractionFree);
    }
    match target {
        SemifieldTag::Trivial => Ok(SemifieldValue::Trivial),
        SemifieldTag::Trop => {
            let mons: Vec<&TropMonomial> = assignment
                .iter()
                .map(|a| match a {
                    SemifieldValue::Trop(t) => t,
                    _ => unreachable!(),
                })
                .collect();
            let width = mons.first().map(|t| t.len()).unwrap_or(0);
            let mut acc: Option<TropMonomial> = None;
            for (m, _) in p.terms() {
                let mut t = TropMonomial::one(width);
                for (i, &e) in m.iter().enumerate() {
                    if e != 0 {
                        t = t.mul(&mons[i].pow(e as i64))?;
                    }
                }
                acc = Some(match acc {
                    None => t,
                    Some(a) => trop_sum(&a, &t)?,
                });
            }
            Ok(SemifieldValue::Trop(acc.expect("nonzero")))
        }
        SemifieldTag::Sf => {
            let rats: Vec<&SfRational> = assignment
                .iter()
                .map(|a| match a {
                    SemifieldValue::Sf(r) => r,
                    _ => unreachable!(),
                })
                .collect();
            let Some(first) = rats.first() else {
                return Ok(SemifieldValue::Sf(SfRational::from_poly(p.clone())?));
            };
            let arena = first.arena().clone();
            let lo = p.min_exponents()?;
            let hi = p.max_exponents()?;
            let mut num_terms = Vec::with_capacity(p.len());
            for (m, c) in p.terms() {
                let mut t = Poly::constant(&arena, c.clone());
                for (i, &e) in m.iter().enumerate() {
                    let (n, d) = (rats[i].num(), rats[i].den());
                    t = t.try_mul(&n.pow((e - lo[i]) as u32))?;
                    t = t.try_mul(&d.pow((hi[i] - e) as u32))?;
                }
                num_terms.push(t);
            }
            let mut num = crate::polyring::sum_polys(&arena, num_terms);
            let mut den = Poly::one(&arena);
            for i in 0..rats.len() {
                den = den.try_mul(&rats[i].den().pow((hi[i] - lo[i]) as u32))?;
                if lo[i] != 0 {
                    let r = rats[i].pow(lo[i] as i64);
                    num = num.try_mul(r.num())?;
                    den = den.try_mul(r.den())?;
                }
            }
            Ok(SemifieldValue::Sf(SfRational::new(num, den)?))
        }
    }
}

/// Specialization of a subtraction-free rational function.
pub fn specialize(f: &SfRational, target: SemifieldTag, assignment: &[SemifieldValue]) -> Result<SemifieldValue, SemifieldError> {
    let n = specialize_poly(f.num(), target, assignment)?;
    let d = specialize_poly(f.den(), target, assignment)?;
    n.mul(&d.inv())
}

/// Leading Laurent monomial: minimal exponents of the numerator minus those
/// of the denominator.
pub fn tropicalize(f: &SfRational) -> TropMonomial {
    let n = f.num().min_exponents().expect("nonzero");
    let d = f.den().min_exponents().expect("nonzero");
    TropMonomial(n.iter().zip(&d).map(|(a, b)| (*a - *b) as i64).collect())
}

/// Tropicalization of a single polynomial.
pub fn tropicalize_poly(p: &Poly) -> Result<TropMonomial, SemifieldError> {
    Ok(TropMonomial(p.min_exponents()?.into_iter().map(i64::from).collect()))
}

/// Positive integer as a value of the given semifield.
pub fn integer_value(c: &Int, like: &SemifieldValue) -> SemifieldValue {
    match like {
        SemifieldValue::Sf(r) => {
            SemifieldValue::Sf(SfRational::new(Poly::constant(r.arena(), c.clone()), Poly::one(r.arena())).expect("positive"))
        }
        other => other.unit_like(),
    }
}
