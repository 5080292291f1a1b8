//! Seeds and cluster patterns: principal coefficients (C-, G-matrices and
//! F-polynomials), free coefficients, geometric type, and exchange-graph
//! enumeration.

mod enumerate;
mod free;
mod geometric;
mod principal;
mod verify;

use thiserror::Error;

use crate::exchange::ExchangeError;
use crate::polyring::PolyError;
use crate::semifield::SemifieldError;

pub use enumerate::{enumerate, g_fan, g_fan_svg, EnumerateBudget, ExchangeGraphResult, GraphEdge, DEFAULT_SEED_BUDGET};
pub use free::{check_separation, mutate_free, separation_sweep, Factored, FreeSeed, SeparationReport, DEFAULT_TERM_BUDGET};
pub use geometric::{mutate_geometric, GeometricSeed};
pub(crate) use principal::term_bound;
pub use principal::{check_commutation, initial_seed, PrincipalSeed};
pub use verify::{verify_invariants, Check, InvariantReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("direction {k} out of range for rank {n}")]
    BadDirection { k: usize, n: usize },
    #[error("expression size budget exceeded ({0})")]
    Budget(String),
    #[error("malformed seed: {0}")]
    Malformed(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Exchange(#[from] ExchangeError),
    #[error(transparent)]
    Semifield(#[from] SemifieldError),
}

/// Monomial exponent vectors as `i32`, rejecting values that do not fit.
pub(crate) fn exps_i32(v: impl IntoIterator<Item = i64>) -> Result<Vec<i32>, PatternError> {
    v.into_iter()
        .map(|e| i32::try_from(e).map_err(|_| PatternError::Budget("exponent exceeds i32".into())))
        .collect()
}
