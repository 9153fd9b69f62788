//! Exact frieze patterns of type Λ_p.
//!
//! Arithmetic lives in [`field`] (the ring Z[λ_L] with λ_L = 2cos(π/L)). On top of it:
//! polygon dissections and their entry labels ([`dissection`]), finite friezes
//! ([`frieze`]), periodic infinite friezes and strip p-angulations ([`strip`]), and
//! rank-2 Cartan graphs with their root systems ([`cartan`]).

pub mod cartan;
pub mod chebyshev;
pub mod dissection;
pub mod error;
pub mod field;
pub mod frieze;
pub mod io;
pub mod poly;
pub mod render;
pub mod strip;

pub use error::{Error, Result};
pub use field::{as_integer_multiple, embed_lambda, minimal_polynomial, FieldContext, FieldElement, Sign};
