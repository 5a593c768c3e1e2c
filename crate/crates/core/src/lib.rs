//! Exact equations of Brauer–Severi varieties of cyclic algebras over Q.

pub mod arith;
pub mod descent;
pub mod error;
pub mod golden;
pub mod models;
pub mod numfield;
pub mod veronese;

pub use error::{Error, Result};
