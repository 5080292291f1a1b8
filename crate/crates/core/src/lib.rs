//! Exact-arithmetic cluster algebra engine.

pub mod exchange;
pub mod gca;
pub mod golden;
pub mod linalg;
pub mod pattern;
pub mod polyring;
pub mod semifield;
