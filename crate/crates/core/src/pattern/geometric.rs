//! Seeds of geometric type: an extended exchange matrix whose bottom rows
//! record frozen variables `u`.

use std::sync::Arc;

use serde_json::{json, Value};

use super::PatternError;
use crate::exchange::{pos, try_mutate_extended, ExtendedExchangeMatrix};
use crate::polyring::{Poly, VarArena};

#[derive(Clone, Debug, PartialEq)]
pub struct GeometricSeed {
    pub bt: ExtendedExchangeMatrix,
    /// Cluster variables as Laurent polynomials over `(x, u)`.
    pub x: Vec<Poly>,
    /// Zero-based mutation directions from the initial seed.
    pub path: Vec<usize>,
    arena: Arc<VarArena>,
}

impl GeometricSeed {
    /// Initial seed over `x1..xn, u1..um`.
    pub fn new(bt: ExtendedExchangeMatrix) -> GeometricSeed {
        let arena = VarArena::indexed(&[("x", bt.n()), ("u", bt.m())]);
        GeometricSeed::with_arena(bt, arena).expect("arena matches")
    }

    /// Initial seed over a caller-supplied arena listing the `n` cluster
    /// variables followed by the `m` frozen ones.
    pub fn with_arena(bt: ExtendedExchangeMatrix, arena: Arc<VarArena>) -> Result<GeometricSeed, PatternError> {
        if arena.len() != bt.n() + bt.m() {
            return Err(PatternError::Malformed(format!("expected {} variable names", bt.n() + bt.m())));
        }
        Ok(GeometricSeed {
            x: (0..bt.n()).map(|i| Poly::var(&arena, i)).collect(),
            bt,
            path: Vec::new(),
            arena,
        })
    }

    pub fn n(&self) -> usize {
        self.bt.n()
    }

    pub fn arena(&self) -> &Arc<VarArena> {
        &self.arena
    }

    pub fn mutate(&self, k: usize) -> Result<GeometricSeed, PatternError> {
        let (n, m) = (self.bt.n(), self.bt.m());
        if k >= n {
            return Err(PatternError::BadDirection { k, n });
        }
        let mut up = vec![0i32; n + m];
        let mut down = vec![0i32; n + m];
        for r in 0..m {
            let c = self.bt.get(n + r, k) as i32;
            up[n + r] = c.max(0);
            down[n + r] = (-c).max(0);
        }
        let (mut p, mut q) = (Poly::monomial(&self.arena, &up, 1), Poly::monomial(&self.arena, &down, 1));
        for j in 0..n {
            let b = self.bt.get(j, k);
            if b > 0 {
                p = &p * &self.x[j].pow(pos(b) as u32);
            } else if b < 0 {
                q = &q * &self.x[j].pow(pos(-b) as u32);
            }
        }
        let mut x = self.x.clone();
        x[k] = (&p + &q).exact_div(&self.x[k])?;
        let mut path = self.path.clone();
        path.push(k);
        Ok(GeometricSeed {
            bt: try_mutate_extended(&self.bt, k, None)?,
            x,
            path,
            arena: self.arena.clone(),
        })
    }

    pub fn mutate_path(&self, path: &[usize]) -> Result<GeometricSeed, PatternError> {
        let mut s = self.clone();
        for &k in path {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Strong Laurent property: no cluster variable has a negative frozen
    /// exponent.
    pub fn frozen_exponents_nonneg(&self) -> bool {
        let n = self.n();
        self.x
            .iter()
            .all(|p| p.terms().iter().all(|(mono, _)| mono[n..].iter().all(|&e| e >= 0)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "bt": self.bt.rows(),
            "vars": self.arena.names(),
            "x": self.x.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            "x_text": self.x.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "path": self.path.iter().map(|k| k + 1).collect::<Vec<_>>(),
        })
    }
}

/// Geometric mutation in direction `k`.
pub fn mutate_geometric(seed: &GeometricSeed, k: usize) -> Result<GeometricSeed, PatternError> {
    seed.mutate(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gr25() -> GeometricSeed {
        let bt = ExtendedExchangeMatrix::from_rows(vec![
            vec![0, -1],
            vec![1, 0],
            vec![-1, 0],
            vec![1, 0],
            vec![-1, 1],
            vec![0, -1],
            vec![0, 1],
        ])
        .unwrap();
        GeometricSeed::new(bt)
    }

    #[test]
    fn exchange_relation() {
        let s = gr25();
        let s1 = s.mutate(0).unwrap();
        let x1 = &s1.x[0];
        let lhs = x1 * &s.x[0];
        let a = s.arena();
        assert_eq!(lhs, Poly::parse(a, "u2*x2 + u1*u3").unwrap());
        assert!(s1.frozen_exponents_nonneg());
        assert_eq!(s1.mutate(0).unwrap().x, s.x);
    }

    #[test]
    fn json_lists_variables() {
        let v = gr25().mutate(1).unwrap().to_json();
        assert_eq!(v["path"], json!([2]));
        assert_eq!(v["vars"][2], json!("u1"));
    }

    proptest! {
        #[test]
        fn strong_laurent(path in proptest::collection::vec(0usize..2, 0..10)) {
            let mut s = gr25();
            for k in path {
                s = s.mutate(k).unwrap();
                prop_assert!(s.frozen_exponents_nonneg());
            }
        }
    }
}
