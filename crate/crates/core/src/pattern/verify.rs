use serde::Serialize;

use super::PrincipalSeed;
use crate::linalg::{det, diag, mul, rat_diag_inv, rat_is_identity, rat_mul, rat_transpose, to_rational};
use crate::semifield::tropicalize_poly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub checks: Vec<Check>,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

fn check(name: &'static str, failure: Option<String>) -> Check {
    Check {
        name,
        passed: failure.is_none(),
        detail: failure.unwrap_or_default(),
    }
}

/// Evaluates the seven structural invariants of a principal-coefficient seed.
pub fn verify_invariants(seed: &PrincipalSeed) -> InvariantReport {
    let n = seed.n();
    let mut checks = Vec::with_capacity(7);

    let incoherent = (0..n).find(|&i| {
        let c = seed.c_vector(i);
        c.iter().any(|&x| x > 0) && c.iter().any(|&x| x < 0)
    });
    checks.push(check(
        "sign_coherence",
        incoherent.map(|i| format!("c-vector {} has mixed signs", i + 1)),
    ));

    let bad_const = (0..n).find(|&i| !seed.f[i].constant_term().is_one());
    checks.push(check(
        "f_constant_term",
        bad_const.map(|i| format!("F{} has constant term {}", i + 1, seed.f[i].constant_term())),
    ));

    let negative = (0..n).find(|&i| !seed.f[i].has_nonneg_coeffs());
    checks.push(check(
        "f_nonnegative",
        negative.map(|i| format!("F{} has a negative coefficient", i + 1)),
    ));

    let (dc, dg) = (det(&seed.c), det(&seed.g));
    let unimodular = dc == dg && (dc == 1.into() || dc == (-1).into());
    checks.push(check("unimodularity", (!unimodular).then(|| format!("det C = {dc}, det G = {dg}"))));

    let d = seed.b0.skew_symmetrizer();
    let lhs = rat_mul(
        &rat_mul(
            &rat_mul(&rat_diag_inv(&d), &rat_transpose(&to_rational(&seed.g))),
            &to_rational(&diag(&d)),
        ),
        &to_rational(&seed.c),
    );
    checks.push(check(
        "duality",
        (!rat_is_identity(&lhs)).then(|| "D^-1 G^T D C is not the identity".to_string()),
    ));

    let gb = mul(&seed.g, seed.b.rows());
    let bc = mul(seed.b0.rows(), &seed.c);
    checks.push(check("gb_equals_b0c", (gb != bc).then(|| format!("G B = {gb:?}, B0 C = {bc:?}"))));

    let nontrivial = (0..n).find(|&i| tropicalize_poly(&seed.f[i]).map(|t| !t.is_one()).unwrap_or(true));
    checks.push(check(
        "tropical_f_is_one",
        nontrivial.map(|i| format!("F{} tropicalizes to a nontrivial monomial", i + 1)),
    ));

    InvariantReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::ExchangeMatrix;
    use crate::pattern::initial_seed;

    #[test]
    fn rank_two_periods_pass() {
        for b in [[[0, -1], [1, 0]], [[0, -1], [2, 0]], [[0, -1], [3, 0]], [[0, -2], [2, 0]]] {
            let b = ExchangeMatrix::new(b.iter().map(|r| r.to_vec()).collect()).unwrap();
            let mut s = initial_seed(&b);
            for step in 0..8 {
                let r = verify_invariants(&s);
                assert!(r.passed(), "{:?}", r.failures());
                assert_eq!(r.checks.len(), 7);
                s = s.mutate(step % 2).unwrap();
            }
        }
    }

    #[test]
    fn detects_broken_seed() {
        let b = ExchangeMatrix::new(vec![vec![0, -1], vec![1, 0]]).unwrap();
        let mut s = initial_seed(&b).mutate(0).unwrap();
        s.c[0][0] = 2;
        s.c[1][0] = -1;
        let r = verify_invariants(&s);
        let failed: Vec<&str> = r.failures().iter().map(|c| c.name).collect();
        assert!(failed.contains(&"sign_coherence"));
        assert!(failed.contains(&"gb_equals_b0c"));
    }
}
