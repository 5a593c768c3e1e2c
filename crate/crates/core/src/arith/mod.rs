//! Exact arithmetic: rationals, polynomials, matrices and their parsers.

pub mod mat;
pub(crate) mod modp;
pub mod mpoly;
pub(crate) mod parse;
pub mod rat;
pub mod scalar;
pub mod upoly;

pub use mat::Mat;
pub use mpoly::{mpoly_normalize, parse_expr, parse_mpoly, Atom, Exps, MPoly};
pub use rat::Rat;
pub use scalar::Scalar;
pub use upoly::{discriminant, irreducible_mod_p, parse_upoly, UPoly};
