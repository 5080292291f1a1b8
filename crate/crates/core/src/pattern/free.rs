//! Seeds with free coefficients: cluster variables in `Q_sf(y)(x)` and
//! coefficients in `Q_sf(y)`, mutated directly.
//!
//! Values are kept factored as `q * x^m * prod a_i^{e_i}` with `q` a positive
//! rational, `x^m` a Laurent monomial over `(x, y)` and each atom `a_i` a
//! content-free polynomial without monomial content. Every sum produced by a
//! mutation is divided by the atoms already known to the seed; whatever is
//! left over becomes a new atom. Equality cancels identical atoms first and
//! only expands the remainder. Each atom carries its value at a fixed
//! integer probe point, which rejects most trial divisions and proves most
//! inequalities without expansion.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::{exps_i32, initial_seed, PatternError, PrincipalSeed};
use crate::exchange::{pos, ExchangeMatrix};
use crate::polyring::{Int, Poly, PolyError, VarArena};
use crate::semifield::SfRational;

/// Default cap on term pairs spent by one operation.
pub const DEFAULT_TERM_BUDGET: u64 = 1_000_000;

const PROBE_PRIMES: [u32; 16] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59];

fn probe_point(nv: usize) -> Vec<BigInt> {
    (0..nv).map(|i| BigInt::from(PROBE_PRIMES[i % 16] + 60 * (i / 16) as u32)).collect()
}

#[derive(Debug)]
struct Atom {
    poly: Poly,
    probe: BigInt,
}

fn same_atom(a: &Arc<Atom>, b: &Arc<Atom>) -> bool {
    Arc::ptr_eq(a, b) || (a.probe == b.probe && a.poly == b.poly)
}

struct Budget {
    left: u64,
}

impl Budget {
    fn charge(&mut self, pairs: u64) -> Result<(), PatternError> {
        if pairs > self.left {
            return Err(PatternError::Budget(format!(
                "more than the allowed term pairs ({} left, {pairs} needed)",
                self.left
            )));
        }
        self.left -= pairs;
        Ok(())
    }

    fn mul(&mut self, a: &Poly, b: &Poly) -> Result<Poly, PatternError> {
        self.charge(a.len() as u64 * b.len() as u64)?;
        Ok(a.try_mul(b)?)
    }

    fn pow(&mut self, a: &Poly, e: u32) -> Result<Poly, PatternError> {
        let mut acc = Poly::one(a.arena());
        for _ in 0..e {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }
}

/// Subtraction-free rational function in factored form.
#[derive(Clone, Debug)]
pub struct Factored {
    coeff: BigRational,
    mono: Vec<i32>,
    atoms: Vec<(Arc<Atom>, i32)>,
}

impl Factored {
    fn one(nv: usize) -> Self {
        Factored {
            coeff: BigRational::one(),
            mono: vec![0; nv],
            atoms: Vec::new(),
        }
    }

    fn monomial(mono: Vec<i32>) -> Self {
        Factored {
            coeff: BigRational::one(),
            mono,
            atoms: Vec::new(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.coeff.is_one() && self.mono.iter().all(|&e| e == 0) && self.atoms.is_empty()
    }

    /// Number of distinct atoms.
    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    fn mul(&self, other: &Factored) -> Factored {
        let mut atoms = self.atoms.clone();
        for (a, e) in &other.atoms {
            match atoms.iter_mut().find(|(b, _)| same_atom(a, b)) {
                Some(slot) => slot.1 += e,
                None => atoms.push((a.clone(), *e)),
            }
        }
        atoms.retain(|(_, e)| *e != 0);
        Factored {
            coeff: &self.coeff * &other.coeff,
            mono: self.mono.iter().zip(&other.mono).map(|(a, b)| a + b).collect(),
            atoms,
        }
    }

    fn pow(&self, e: i32) -> Factored {
        if e == 0 {
            return Factored::one(self.mono.len());
        }
        let coeff = if e > 0 {
            num_traits::pow(self.coeff.clone(), e as usize)
        } else {
            num_traits::pow(self.coeff.recip(), (-e) as usize)
        };
        Factored {
            coeff,
            mono: self.mono.iter().map(|m| m * e).collect(),
            atoms: self.atoms.iter().map(|(a, x)| (a.clone(), x * e)).collect(),
        }
    }

    fn inv(&self) -> Factored {
        self.pow(-1)
    }

    fn div(&self, other: &Factored) -> Factored {
        self.mul(&other.inv())
    }

    fn probe(&self, point: &[BigInt]) -> BigRational {
        let mut num = self.coeff.numer().clone();
        let mut den = self.coeff.denom().clone();
        for (p, &e) in point.iter().zip(&self.mono) {
            if e > 0 {
                num *= num_traits::pow(p.clone(), e as usize);
            } else if e < 0 {
                den *= num_traits::pow(p.clone(), (-e) as usize);
            }
        }
        for (a, e) in &self.atoms {
            if *e > 0 {
                num *= num_traits::pow(a.probe.clone(), *e as usize);
            } else {
                den *= num_traits::pow(a.probe.clone(), (-*e) as usize);
            }
        }
        BigRational::new(num, den)
    }

    /// Expanded numerator and denominator.
    fn expand(&self, arena: &Arc<VarArena>, budget: &mut Budget) -> Result<(Poly, Poly), PatternError> {
        let side = |sign: i32, c: &BigInt, budget: &mut Budget| -> Result<Poly, PatternError> {
            let m: Vec<i32> = self.mono.iter().map(|&e| (sign * e).max(0)).collect();
            let mut acc = Poly::monomial(arena, &m, Int::from(c.clone()));
            for (a, e) in &self.atoms {
                if sign * e > 0 {
                    let p = budget.pow(&a.poly, (sign * e) as u32)?;
                    acc = budget.mul(&acc, &p)?;
                }
            }
            Ok(acc)
        };
        Ok((side(1, self.coeff.numer(), budget)?, side(-1, self.coeff.denom(), budget)?))
    }
}

/// Atoms known to one walk.
#[derive(Clone, Debug, Default)]
struct AtomTable {
    atoms: Vec<Arc<Atom>>,
}

impl AtomTable {
    /// Factors a nonzero polynomial with positive coefficients over the known
    /// atoms; the cofactor, if not a unit, becomes a new atom, recorded when
    /// `record` is set.
    fn absorb(&mut self, s: &Poly, point: &[BigInt], record: bool, budget: &mut Budget) -> Result<Factored, PatternError> {
        let (c, m, mut p) = s.primitive_split()?;
        let mut out = Factored {
            coeff: BigRational::from_integer(c.to_big()),
            mono: m,
            atoms: Vec::new(),
        };
        if p.is_one() {
            return Ok(out);
        }
        let mut value = p.eval_at(point)?;
        for a in &self.atoms {
            let mut e = 0;
            while !p.is_one() && a.poly.len() <= p.len() && value.is_multiple_of(&a.probe) {
                budget.charge(p.len() as u64)?;
                match p.exact_div(&a.poly) {
                    Ok(q) => {
                        p = q;
                        value /= &a.probe;
                        e += 1;
                    }
                    Err(PolyError::NotDivisible) => break,
                    Err(err) => return Err(err.into()),
                }
            }
            if e > 0 {
                out.atoms.push((a.clone(), e));
            }
            if p.is_one() {
                return Ok(out);
            }
        }
        let atom = Arc::new(Atom { poly: p, probe: value });
        if record {
            self.atoms.push(atom.clone());
        }
        out.atoms.push((atom, 1));
        Ok(out)
    }

    /// `u + v`, with the common factor pulled out before expanding.
    fn add(
        &mut self,
        u: &Factored,
        v: &Factored,
        arena: &Arc<VarArena>,
        point: &[BigInt],
        budget: &mut Budget,
    ) -> Result<Factored, PatternError> {
        let mut common = Factored::one(u.mono.len());
        common.mono = u.mono.iter().zip(&v.mono).map(|(a, b)| *a.min(b)).collect();
        for (a, e) in u.atoms.iter().chain(&v.atoms) {
            if common.atoms.iter().any(|(b, _)| same_atom(a, b)) {
                continue;
            }
            let find = |w: &Factored| w.atoms.iter().find(|(b, _)| same_atom(a, b)).map_or(0, |(_, x)| *x);
            let lo = find(u).min(find(v)).min(*e);
            if lo != 0 {
                common.atoms.push((a.clone(), lo));
            }
        }
        let l = u.coeff.denom().lcm(v.coeff.denom());
        common.coeff = BigRational::new(BigInt::one(), l);
        let (pu, _) = u.div(&common).expand(arena, budget)?;
        let (pv, _) = v.div(&common).expand(arena, budget)?;
        let sum = self.absorb(&pu.try_add(&pv)?, point, true, budget)?;
        Ok(common.mul(&sum))
    }
}

/// Exact equality of two factored values.
fn factored_eq(a: &Factored, b: &Factored, arena: &Arc<VarArena>, point: &[BigInt], budget: &mut Budget) -> Result<bool, PatternError> {
    let q = a.div(b);
    if q.is_one() {
        return Ok(true);
    }
    if !q.probe(point).is_one() {
        return Ok(false);
    }
    let (n, d) = q.expand(arena, budget)?;
    Ok(n == d)
}

/// Seed `(x, y, B)` with coefficients in the universal semifield of the
/// initial coefficients.
#[derive(Clone)]
pub struct FreeSeed {
    pub b: ExchangeMatrix,
    /// Zero-based mutation directions from the initial seed.
    pub path: Vec<usize>,
    x: Vec<Factored>,
    y: Vec<Factored>,
    arena: Arc<VarArena>,
    y_arena: Arc<VarArena>,
    point: Arc<Vec<BigInt>>,
    table: AtomTable,
    term_budget: u64,
}

impl fmt::Debug for FreeSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeSeed").field("b", &self.b).field("path", &self.path).finish()
    }
}

impl FreeSeed {
    /// Initial seed `x_i`, `y_i` over the arena `x1..xn, y1..yn`.
    pub fn new(b: &ExchangeMatrix) -> FreeSeed {
        let n = b.n();
        let arena = VarArena::indexed(&[("x", n), ("y", n)]);
        let unit = |i: usize| {
            let mut m = vec![0; 2 * n];
            m[i] = 1;
            Factored::monomial(m)
        };
        FreeSeed {
            b: b.clone(),
            path: Vec::new(),
            x: (0..n).map(unit).collect(),
            y: (n..2 * n).map(unit).collect(),
            point: Arc::new(probe_point(2 * n)),
            arena,
            y_arena: VarArena::indexed(&[("y", n)]),
            table: AtomTable::default(),
            term_budget: DEFAULT_TERM_BUDGET,
        }
    }

    /// Per-operation cap on term pairs.
    pub fn with_term_budget(mut self, pairs: u64) -> FreeSeed {
        self.term_budget = pairs;
        self
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    pub fn arena(&self) -> &Arc<VarArena> {
        &self.arena
    }

    pub fn y_arena(&self) -> &Arc<VarArena> {
        &self.y_arena
    }

    fn budget(&self) -> Budget {
        Budget { left: self.term_budget }
    }

    pub fn x_factored(&self, i: usize) -> &Factored {
        &self.x[i]
    }

    /// Cluster variable `i` as numerator and denominator over `(x, y)`.
    pub fn x_parts(&self, i: usize) -> Result<(Poly, Poly), PatternError> {
        self.x[i].expand(&self.arena, &mut self.budget())
    }

    /// Coefficient `i` as an element of the universal semifield in `y`.
    pub fn y_value(&self, i: usize) -> Result<SfRational, PatternError> {
        let n = self.n();
        let (num, den) = self.y[i].expand(&self.arena, &mut self.budget())?;
        let map: Vec<usize> = (0..2 * n).map(|v| v.saturating_sub(n)).collect();
        Ok(SfRational::new(num.embed(&self.y_arena, &map), den.embed(&self.y_arena, &map))?)
    }

    pub fn mutate(&self, k: usize) -> Result<FreeSeed, PatternError> {
        let n = self.n();
        if k >= n {
            return Err(PatternError::BadDirection { k, n });
        }
        let mut out = self.clone();
        let mut budget = self.budget();
        let one = Factored::one(2 * n);
        let yk = &self.y[k];
        let one_plus = out.table.add(&one, yk, &self.arena, &self.point, &mut budget)?;

        let (mut up, mut down) = (yk.clone(), one.clone());
        for j in 0..n {
            let bjk = self.b.get(j, k) as i32;
            if bjk > 0 {
                up = up.mul(&self.x[j].pow(bjk));
            } else if bjk < 0 {
                down = down.mul(&self.x[j].pow(-bjk));
            }
        }
        let sum = out.table.add(&up, &down, &self.arena, &self.point, &mut budget)?;
        out.x[k] = sum.div(&one_plus).div(&self.x[k]);

        for j in 0..n {
            if j == k {
                out.y[j] = yk.inv();
                continue;
            }
            let bkj = self.b.get(k, j);
            let e = i32::try_from(bkj).map_err(|_| PatternError::Budget("entry exceeds i32".into()))?;
            out.y[j] = self.y[j].mul(&yk.pow(pos(bkj) as i32)).mul(&one_plus.pow(-e));
        }
        out.b = self.b.mutate(k);
        out.path.push(k);
        Ok(out)
    }

    pub fn mutate_path(&self, path: &[usize]) -> Result<FreeSeed, PatternError> {
        let mut s = self.clone();
        for &k in path {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Relabeling: component `sigma[i]` of the result is component `i`.
    pub fn apply_permutation(&self, sigma: &[usize]) -> Result<FreeSeed, PatternError> {
        let n = self.n();
        let mut inv = vec![usize::MAX; n];
        if sigma.len() != n {
            return Err(PatternError::Malformed("permutation length".into()));
        }
        for (i, &s) in sigma.iter().enumerate() {
            if s >= n || inv[s] != usize::MAX {
                return Err(PatternError::Malformed("not a permutation".into()));
            }
            inv[s] = i;
        }
        let mut out = self.clone();
        out.b = self.b.permuted(&inv);
        out.x = (0..n).map(|i| self.x[inv[i]].clone()).collect();
        out.y = (0..n).map(|i| self.y[inv[i]].clone()).collect();
        Ok(out)
    }

    /// Equality of `B`, every cluster variable and every coefficient.
    pub fn same_seed(&self, other: &FreeSeed) -> Result<bool, PatternError> {
        if self.b != other.b || self.arena.names() != other.arena.names() {
            return Ok(false);
        }
        let mut budget = self.budget();
        for (a, b) in self.x.iter().zip(&other.x).chain(self.y.iter().zip(&other.y)) {
            if !factored_eq(a, b, &self.arena, &self.point, &mut budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Value of `F` at `(y1..yn)` inside the `(x, y)` arena.
    fn f_at_y(&self, f: &Poly) -> Poly {
        let n = self.n();
        f.embed(&self.arena, &(n..2 * n).collect::<Vec<_>>())
    }

    /// Compares this seed with the separation-formula reconstruction from a
    /// principal seed reached along the same path. Returns the first
    /// discrepancy.
    pub fn compare_with_principal(&self, p: &PrincipalSeed) -> Result<Option<String>, PatternError> {
        let n = self.n();
        if p.b != self.b {
            return Ok(Some("exchange matrices differ".into()));
        }
        let mut budget = self.budget();
        let mut table = self.table.clone();
        let mut fy = Vec::with_capacity(n);
        for j in 0..n {
            fy.push(table.absorb(&self.f_at_y(&p.f[j]), &self.point, false, &mut budget)?);
        }
        for i in 0..n {
            let xv = p.cluster_variable(i)?;
            budget.charge(xv.len() as u64)?;
            let numer = table.absorb(&xv, &self.point, false, &mut budget)?;
            let predicted = numer.div(&fy[i]);
            if !factored_eq(&self.x[i], &predicted, &self.arena, &self.point, &mut budget)? {
                return Ok(Some(format!("cluster variable {} differs from x^g F(yhat) / F(y)", i + 1)));
            }
        }
        for i in 0..n {
            let mut m = vec![0i32; 2 * n];
            for (j, e) in exps_i32(p.c_vector(i))?.into_iter().enumerate() {
                m[n + j] = e;
            }
            let mut predicted = Factored::monomial(m);
            for (j, f) in fy.iter().enumerate() {
                let bji = p.b.get(j, i) as i32;
                if bji != 0 {
                    predicted = predicted.mul(&f.pow(bji));
                }
            }
            if !factored_eq(&self.y[i], &predicted, &self.arena, &self.point, &mut budget)? {
                return Ok(Some(format!("coefficient {} differs from y^c prod F^b", i + 1)));
            }
        }
        Ok(None)
    }
}

/// Free-coefficient mutation in direction `k`.
pub fn mutate_free(seed: &FreeSeed, k: usize) -> Result<FreeSeed, PatternError> {
    seed.mutate(k)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    /// Seeds at which both formulas were checked exactly.
    pub verified: usize,
    /// Seeds not checked because an expression exceeded the size budget.
    pub skipped: usize,
    /// First discrepancy, with its one-based path.
    pub failure: Option<(Vec<usize>, String)>,
}

impl SeparationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.skipped == 0
    }

    fn merge(&mut self, other: SeparationReport) {
        self.verified += other.verified;
        self.skipped += other.skipped;
        if self.failure.is_none() {
            self.failure = other.failure;
        }
    }
}

fn one_based(path: &[usize]) -> Vec<usize> {
    path.iter().map(|k| k + 1).collect()
}

/// Checks both separation formulas at every seed along `path`, mutating a
/// free-coefficient seed and a principal seed side by side.
pub fn check_separation(b: &ExchangeMatrix, path: &[usize]) -> Result<SeparationReport, PatternError> {
    let mut free = FreeSeed::new(b);
    let mut principal = initial_seed(b);
    let mut report = SeparationReport::default();
    for step in 0..=path.len() {
        if step > 0 {
            free = free.mutate(path[step - 1])?;
            principal = principal.mutate(path[step - 1])?;
        }
        if let Some(msg) = free.compare_with_principal(&principal)? {
            report.failure = Some((one_based(&path[..step]), msg));
            return Ok(report);
        }
        report.verified += 1;
    }
    Ok(report)
}

/// Number of seeds reached by paths of length `1..=rest` without immediate
/// repeats, from a seed entered by some direction.
fn subtree_size(n: usize, rest: usize) -> usize {
    let mut total = 0;
    let mut level = 1;
    for _ in 0..rest {
        level *= n.saturating_sub(1);
        total += level;
    }
    total
}

fn sweep_from(free: &FreeSeed, principal: &PrincipalSeed, depth: usize, max_terms: usize, report: &mut SeparationReport) {
    let n = free.n();
    match free.compare_with_principal(principal) {
        Ok(None) => report.verified += 1,
        Ok(Some(msg)) => {
            report.verified += 1;
            if report.failure.is_none() {
                report.failure = Some((one_based(&free.path), msg));
            }
        }
        Err(_) => report.skipped += 1,
    }
    if free.path.len() == depth {
        return;
    }
    for k in 0..n {
        if free.path.last() == Some(&k) {
            continue;
        }
        let next = free
            .mutate(k)
            .and_then(|f| principal.mutate_bounded(k, None, Some(max_terms)).map(|p| (f, p)));
        match next {
            Ok((f, p)) => sweep_from(&f, &p, depth, max_terms, report),
            Err(_) => report.skipped += 1 + subtree_size(n, depth - free.path.len() - 1),
        }
    }
}

/// Checks the separation formulas at every seed reached from each matrix by
/// a path of length at most `depth` without immediate repeats. Seeds whose
/// expressions exceed `term_budget` are counted as skipped, together with
/// everything below them.
pub fn separation_sweep(matrices: &[ExchangeMatrix], depth: usize, term_budget: u64) -> SeparationReport {
    let max_terms = usize::try_from(term_budget).unwrap_or(usize::MAX);
    matrices
        .par_iter()
        .map(|b| {
            let mut r = SeparationReport::default();
            sweep_from(
                &FreeSeed::new(b).with_term_budget(term_budget),
                &initial_seed(b),
                depth,
                max_terms,
                &mut r,
            );
            r
        })
        .reduce(SeparationReport::default, |mut a, b| {
            a.merge(b);
            a
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExchangeMatrix {
        ExchangeMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn a2_first_step() {
        let s = FreeSeed::new(&m(&[&[0, -1], &[1, 0]])).mutate(0).unwrap();
        let (num, den) = s.x_parts(0).unwrap();
        let a = s.arena();
        assert_eq!(num, Poly::parse(a, "1 + x2*y1").unwrap());
        assert_eq!(den, Poly::parse(a, "x1*(1 + y1)").unwrap());
        let y2 = s.y_value(1).unwrap();
        assert_eq!(y2, SfRational::from_poly(Poly::parse(s.y_arena(), "y2*(1 + y1)").unwrap()).unwrap());
        assert_eq!(s.y_value(0).unwrap(), SfRational::generator(s.y_arena(), 0).inv());
    }

    #[test]
    fn a2_pentagon_is_transposition() {
        let s0 = FreeSeed::new(&m(&[&[0, -1], &[1, 0]]));
        let s5 = s0.mutate_path(&[0, 1, 0, 1, 0]).unwrap();
        assert!(s5.same_seed(&s0.apply_permutation(&[1, 0]).unwrap()).unwrap());
        assert!(!s5.same_seed(&s0).unwrap());
    }

    #[test]
    fn periods_and_involution() {
        let b2 = m(&[&[0, -1], &[2, 0]]);
        let s0 = FreeSeed::new(&b2);
        let s6 = s0.mutate_path(&[0, 1, 0, 1, 0, 1]).unwrap();
        assert!(s6.same_seed(&s0).unwrap());
        let s = s0.mutate_path(&[1, 0]).unwrap();
        assert!(s.mutate(0).unwrap().mutate(0).unwrap().same_seed(&s).unwrap());
        let g2 = m(&[&[0, -1], &[3, 0]]);
        let t0 = FreeSeed::new(&g2);
        assert!(t0.mutate_path(&[0, 1, 0, 1, 0, 1, 0, 1]).unwrap().same_seed(&t0).unwrap());
    }

    #[test]
    fn separation_along_paths() {
        let r = check_separation(&m(&[&[0, -1], &[1, 0]]), &[0, 1, 0, 1, 0]).unwrap();
        assert!(r.passed());
        assert_eq!(r.verified, 6);
        assert_eq!(check_separation(&m(&[&[0]]), &[]).unwrap().verified, 1);
        let b = m(&[&[0, 2, -2], &[-1, 0, 1], &[1, -1, 0]]);
        assert!(check_separation(&b, &[0, 1, 2, 0]).unwrap().passed());
    }

    #[test]
    fn detects_mismatch() {
        let b = m(&[&[0, -1], &[1, 0]]);
        let free = FreeSeed::new(&b).mutate(0).unwrap();
        let principal = initial_seed(&b).mutate(1).unwrap();
        assert!(free.compare_with_principal(&principal).unwrap().is_some());
    }

    #[test]
    fn budget_is_enforced() {
        let b = m(&[&[0, 2, -2], &[-2, 0, 2], &[2, -2, 0]]);
        let s = FreeSeed::new(&b).with_term_budget(50);
        let r = s.mutate_path(&[0, 1, 2, 0, 1, 2]);
        assert!(matches!(r, Err(PatternError::Budget(_))));
    }

    #[test]
    fn small_sweep() {
        let mats = [m(&[&[0, -1], &[1, 0]]), m(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]])];
        let r = separation_sweep(&mats, 4, DEFAULT_TERM_BUDGET);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.verified, (1 + 2 + 2 + 2 + 2) + (1 + 3 + 6 + 12 + 24));
        assert_eq!(subtree_size(3, 2), 6);
    }
}
