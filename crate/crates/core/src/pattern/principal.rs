//! Principal-coefficient seeds `(B_t, C_t, G_t, F_t)` over a fixed initial
//! matrix `B_{t0}`.

use std::sync::Arc;

use serde_json::{json, Value};

use super::{exps_i32, PatternError};
use crate::exchange::{pos, try_mutate_extended, ExchangeMatrix, ExtendedExchangeMatrix};
use crate::linalg::{identity, IntMatrix};
use crate::polyring::{product, Poly, VarArena};
use crate::semifield::{specialize_poly, SemifieldTag, SemifieldValue};

#[derive(Clone, Debug)]
pub struct PrincipalSeed {
    pub b0: ExchangeMatrix,
    pub b: ExchangeMatrix,
    pub c: IntMatrix,
    pub g: IntMatrix,
    pub f: Vec<Poly>,
    /// Zero-based mutation directions from the initial seed.
    pub path: Vec<usize>,
    y_arena: Arc<VarArena>,
    xy_arena: Arc<VarArena>,
}

impl PartialEq for PrincipalSeed {
    /// Seeds are equal when all of `B_t, C_t, G_t, F_t` agree; the path is
    /// ignored.
    fn eq(&self, other: &Self) -> bool {
        self.b0 == other.b0 && self.b == other.b && self.c == other.c && self.g == other.g && self.f == other.f
    }
}

/// `C = G = I`, `F = 1`, `B_t = B_{t0} = B`.
pub fn initial_seed(b: &ExchangeMatrix) -> PrincipalSeed {
    let n = b.n();
    let y_arena = VarArena::indexed(&[("y", n)]);
    let xy_arena = VarArena::indexed(&[("x", n), ("y", n)]);
    PrincipalSeed {
        b0: b.clone(),
        b: b.clone(),
        c: identity(n),
        g: identity(n),
        f: vec![Poly::one(&y_arena); n],
        path: Vec::new(),
        y_arena,
        xy_arena,
    }
}

/// Upper bound on the number of monomials of `prod_j F_j^{e_j}` from the
/// degree box of the factors.
pub(crate) fn term_bound(f: &[Poly], e: &[i64]) -> f64 {
    let nv = f.first().map_or(0, |p| p.arena().len());
    let mut bound = 1.0f64;
    for v in 0..nv {
        let deg: f64 = f.iter().zip(e).map(|(p, &x)| x as f64 * p.degree_in(v).unwrap_or(0) as f64).sum();
        bound *= deg + 1.0;
    }
    bound
}

impl PrincipalSeed {
    pub fn n(&self) -> usize {
        self.b.n()
    }

    pub fn y_arena(&self) -> &Arc<VarArena> {
        &self.y_arena
    }

    pub fn xy_arena(&self) -> &Arc<VarArena> {
        &self.xy_arena
    }

    /// `i`-th c-vector (column of `C_t`).
    pub fn c_vector(&self, i: usize) -> Vec<i64> {
        self.c.iter().map(|r| r[i]).collect()
    }

    /// `i`-th g-vector (column of `G_t`).
    pub fn g_vector(&self, i: usize) -> Vec<i64> {
        self.g.iter().map(|r| r[i]).collect()
    }

    pub fn mutate(&self, k: usize) -> Result<PrincipalSeed, PatternError> {
        self.mutate_eps(k, None)
    }

    /// Mutation through the sign-`eps` forms of the C- and G-recursions.
    pub fn mutate_eps(&self, k: usize, eps: Option<i64>) -> Result<PrincipalSeed, PatternError> {
        self.mutate_bounded(k, eps, None)
    }

    /// Mutation that fails with [`PatternError::Budget`] when the exchange
    /// polynomial could have more than `max_terms` monomials.
    pub fn mutate_bounded(&self, k: usize, eps: Option<i64>, max_terms: Option<usize>) -> Result<PrincipalSeed, PatternError> {
        let n = self.n();
        if k >= n {
            return Err(PatternError::BadDirection { k, n });
        }
        let bt = ExtendedExchangeMatrix::new(self.b.clone(), self.c.clone())?;
        let bt1 = try_mutate_extended(&bt, k, eps)?;

        let e = eps.unwrap_or(1);
        let mut g = self.g.clone();
        for i in 0..n {
            let mut s = -self.g[i][k];
            for l in 0..n {
                let (blk, clk) = (self.b.get(l, k), self.c[l][k]);
                if eps.is_none() {
                    s += self.g[i][l] * pos(-blk) - self.b0.get(i, l) * pos(-clk);
                } else {
                    s += self.g[i][l] * pos(-e * blk) - self.b0.get(i, l) * pos(-e * clk);
                }
            }
            g[i][k] = s;
        }

        let ck = self.c_vector(k);
        let bk: Vec<i64> = (0..n).map(|j| self.b.get(j, k)).collect();
        let plus_b: Vec<i64> = bk.iter().map(|&x| pos(x)).collect();
        let minus_b: Vec<i64> = bk.iter().map(|&x| pos(-x)).collect();
        if let Some(limit) = max_terms {
            let bound = term_bound(&self.f, &plus_b).max(term_bound(&self.f, &minus_b));
            if bound > limit as f64 {
                return Err(PatternError::Budget(format!("exchange polynomial may reach {bound:.0} terms")));
            }
        }
        let half = |cexp: Vec<i64>, bexp: &[i64]| -> Result<Poly, PatternError> {
            let mono = Poly::monomial(&self.y_arena, &exps_i32(cexp)?, 1);
            let mut factors = vec![mono];
            for (j, &x) in bexp.iter().enumerate() {
                if x > 0 {
                    factors.push(self.f[j].pow(x as u32));
                }
            }
            Ok(product(&self.y_arena, factors))
        };
        let m1 = half(ck.iter().map(|&x| pos(x)).collect(), &plus_b)?;
        let m2 = half(ck.iter().map(|&x| pos(-x)).collect(), &minus_b)?;
        let fk = (&m1 + &m2).exact_div(&self.f[k])?;
        let mut f = self.f.clone();
        f[k] = fk;

        let mut path = self.path.clone();
        path.push(k);
        Ok(PrincipalSeed {
            b0: self.b0.clone(),
            b: bt1.top,
            c: bt1.bottom,
            g,
            f,
            path,
            y_arena: self.y_arena.clone(),
            xy_arena: self.xy_arena.clone(),
        })
    }

    pub fn mutate_path(&self, path: &[usize]) -> Result<PrincipalSeed, PatternError> {
        let mut s = self.clone();
        for &k in path {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// `yhat_j = y_j prod_l x_l^{b0_lj}` in the `(x, y)` arena.
    pub fn yhat(&self) -> Vec<Poly> {
        let n = self.n();
        (0..n)
            .map(|j| {
                let mut e = vec![0i32; 2 * n];
                for l in 0..n {
                    e[l] = self.b0.get(l, j) as i32;
                }
                e[n + j] = 1;
                Poly::monomial(&self.xy_arena, &e, 1)
            })
            .collect()
    }

    /// Cluster variable `x_{i;t} = x^{g_i} F_i(yhat)` with coefficients in
    /// the tropical semifield of `y`.
    pub fn cluster_variable(&self, i: usize) -> Result<Poly, PatternError> {
        let n = self.n();
        let fy = self.f[i].substitute(&self.xy_arena, &self.yhat())?;
        let mut e = vec![0i32; 2 * n];
        for (l, slot) in e.iter_mut().take(n).enumerate() {
            *slot = i32::try_from(self.g[l][i]).map_err(|_| PatternError::Budget("g-vector exceeds i32".into()))?;
        }
        Ok(fy.shift(&e))
    }

    /// Coefficient `y_{i;t} = prod_j y_j^{c_ji} prod_j F_j|_P(y)^{b_ji}` in the
    /// semifield of `assignment`, which gives the images of the initial
    /// coefficients.
    pub fn coefficient(&self, i: usize, target: SemifieldTag, assignment: &[SemifieldValue]) -> Result<SemifieldValue, PatternError> {
        let n = self.n();
        if assignment.len() != n {
            return Err(PatternError::Malformed(format!("expected {n} coefficient values")));
        }
        let mut acc = assignment[0].unit_like();
        for j in 0..n {
            acc = acc.mul(&assignment[j].pow(self.c[j][i]))?;
            let bji = self.b.get(j, i);
            if bji != 0 {
                let fj = specialize_poly(&self.f[j], target, assignment)?;
                acc = acc.mul(&fj.pow(bji))?;
            }
        }
        Ok(acc)
    }

    /// Negated minimal `x`-exponents of the `i`-th cluster variable.
    pub fn d_vector(&self, i: usize) -> Result<Vec<i64>, PatternError> {
        let v = self.cluster_variable(i)?;
        Ok(v.min_exponent_vector(0..self.n())?.into_iter().map(|e| -(e as i64)).collect())
    }

    /// Relabeling by `sigma`: component `sigma[i]` of the result is component
    /// `i` of `self`. Rows of `C` and `G` and the initial matrix are fixed.
    pub fn apply_permutation(&self, sigma: &[usize]) -> Result<PrincipalSeed, PatternError> {
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
        let cols = |m: &IntMatrix| -> IntMatrix { m.iter().map(|r| (0..n).map(|i| r[inv[i]]).collect()).collect() };
        Ok(PrincipalSeed {
            b0: self.b0.clone(),
            b: self.b.permuted(&inv),
            c: cols(&self.c),
            g: cols(&self.g),
            f: (0..n).map(|i| self.f[inv[i]].clone()).collect(),
            path: self.path.clone(),
            y_arena: self.y_arena.clone(),
            xy_arena: self.xy_arena.clone(),
        })
    }

    /// Seed document `{b0, b, c, g, f, path}`; the path is one-based.
    pub fn to_json(&self) -> Value {
        json!({
            "b0": self.b0.rows(),
            "b": self.b.rows(),
            "c": self.c,
            "g": self.g,
            "f": self.f.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            "path": self.path.iter().map(|k| k + 1).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<PrincipalSeed, PatternError> {
        let mat = |key: &str| -> Result<IntMatrix, PatternError> {
            serde_json::from_value(v[key].clone()).map_err(|e| PatternError::Malformed(format!("{key}: {e}")))
        };
        let b0 = ExchangeMatrix::new(mat("b0")?)?;
        let mut seed = initial_seed(&b0);
        let n = b0.n();
        seed.b = ExchangeMatrix::new(mat("b")?)?;
        seed.c = mat("c")?;
        seed.g = mat("g")?;
        for (name, m) in [("b", seed.b.rows()), ("c", &seed.c), ("g", &seed.g)] {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(PatternError::Malformed(format!("{name} must be {n}x{n}")));
            }
        }
        let fs = v["f"]
            .as_array()
            .ok_or_else(|| PatternError::Malformed("f must be a list".into()))?;
        if fs.len() != n {
            return Err(PatternError::Malformed(format!("expected {n} F-polynomials")));
        }
        seed.f = fs.iter().map(|p| Poly::from_json(&seed.y_arena, p)).collect::<Result<_, _>>()?;
        let path: Vec<usize> = match v.get("path") {
            None | Some(Value::Null) => Vec::new(),
            Some(p) => serde_json::from_value(p.clone()).map_err(|e| PatternError::Malformed(format!("path: {e}")))?,
        };
        if path.iter().any(|&k| k == 0 || k > n) {
            return Err(PatternError::Malformed("path entries must lie in 1..=n".into()));
        }
        seed.path = path.into_iter().map(|k| k - 1).collect();
        Ok(seed)
    }
}

/// Whether `mu_l mu_k` and `mu_k mu_l` agree on the principal seed of `b`.
pub fn check_commutation(b: &ExchangeMatrix, k: usize, l: usize) -> Result<bool, PatternError> {
    let s = initial_seed(b);
    let a = s.mutate(k)?.mutate(l)?;
    let c = s.mutate(l)?.mutate(k)?;
    Ok(a == c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::new(vec![vec![0, -1], vec![1, 0]]).unwrap()
    }

    fn y(s: &PrincipalSeed, text: &str) -> Poly {
        Poly::parse(s.y_arena(), text).unwrap()
    }

    #[test]
    fn a2_third_seed() {
        let s = initial_seed(&a2()).mutate_path(&[0, 1, 0]).unwrap();
        assert_eq!(s.c, vec![vec![1, -1], vec![0, -1]]);
        assert_eq!(s.g, vec![vec![1, 0], vec![-1, -1]]);
        assert_eq!(s.f, vec![y(&s, "1 + y2"), y(&s, "1 + y2 + y1*y2")]);
    }

    #[test]
    fn involution_and_eps() {
        let s0 = initial_seed(&a2());
        let s = s0.mutate_path(&[0, 1]).unwrap();
        assert_eq!(s.mutate(1).unwrap().mutate(1).unwrap(), s);
        let mut p = s0.clone();
        let mut q = s0.clone();
        for k in [0, 1, 0, 1, 0] {
            p = p.mutate_eps(k, Some(1)).unwrap();
            q = q.mutate_eps(k, Some(-1)).unwrap();
            assert_eq!(p, q);
            assert_eq!(p, s0.mutate_path(&p.path).unwrap());
        }
    }

    #[test]
    fn a2_cluster_variables() {
        let s = initial_seed(&a2()).mutate_path(&[0, 1]).unwrap();
        let x = s.cluster_variable(1).unwrap();
        assert_eq!(x, Poly::parse(s.xy_arena(), "x1^-1*x2^-1*(x1 + y2 + y1*y2*x2)").unwrap());
        let s0 = initial_seed(&a2());
        assert_eq!(s0.cluster_variable(0).unwrap(), Poly::var(s0.xy_arena(), 0));
        assert_eq!(s0.d_vector(0).unwrap(), vec![-1, 0]);
        assert_eq!(s.d_vector(1).unwrap(), vec![1, 1]);
    }

    #[test]
    fn b2_fourth_seed() {
        let b2 = ExchangeMatrix::new(vec![vec![0, -1], vec![2, 0]]).unwrap();
        let s = initial_seed(&b2).mutate_path(&[0, 1, 0]).unwrap();
        assert_eq!(s.f[0], y(&s, "1 + 2*y2 + y2^2 + y1*y2^2"));
        assert_eq!(s.g_vector(0), vec![1, -2]);
    }

    #[test]
    fn tropical_coefficient() {
        use crate::semifield::TropMonomial;
        let s = initial_seed(&a2()).mutate(0).unwrap();
        let gens = [
            SemifieldValue::Trop(TropMonomial::generator(2, 0)),
            SemifieldValue::Trop(TropMonomial::generator(2, 1)),
        ];
        let y2 = s.coefficient(1, SemifieldTag::Trop, &gens).unwrap();
        assert_eq!(y2, SemifieldValue::Trop(TropMonomial(s.c_vector(1))));
        assert_eq!(
            s.coefficient(0, SemifieldTag::Trop, &gens).unwrap(),
            SemifieldValue::Trop(TropMonomial(vec![-1, 0]))
        );
    }

    #[test]
    fn permutation_of_a2_period() {
        let s0 = initial_seed(&a2());
        let s5 = s0.mutate_path(&[0, 1, 0, 1, 0]).unwrap();
        assert_eq!(s5, s0.apply_permutation(&[1, 0]).unwrap());
        assert_eq!(s0.apply_permutation(&[0, 1]).unwrap(), s0);
    }

    #[test]
    fn commutation() {
        let z = ExchangeMatrix::zero(2);
        assert!(check_commutation(&z, 0, 1).unwrap());
        assert!(!check_commutation(&a2(), 0, 1).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let s = initial_seed(&a2()).mutate_path(&[0, 1, 0]).unwrap();
        let v = s.to_json();
        assert_eq!(v["path"], json!([1, 2, 1]));
        let back = PrincipalSeed::from_json(&v).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.path, s.path);
        let mut bad = v.clone();
        bad["path"] = json!([3]);
        assert!(PrincipalSeed::from_json(&bad).is_err());
    }

    #[test]
    fn rank_one() {
        let s = initial_seed(&ExchangeMatrix::zero(1));
        let s1 = s.mutate(0).unwrap();
        assert_eq!(s1.f[0], y(&s1, "1 + y1"));
        assert_eq!(s1.mutate(0).unwrap(), s);
        assert!(matches!(s.mutate(1), Err(PatternError::BadDirection { .. })));
    }
}
