//! Essential monomial bases of highest-weight modules over basic Lie
//! superalgebras, the flat degeneration of `R(lambda)` into a monomial
//! superalgebra, and toric supervariety certificates.

pub mod degeneration;
pub mod error;
pub mod essential;
pub mod lie;
pub mod linalg;
pub mod module;
pub mod pipeline;
pub mod polytope;
pub mod superpoly;
pub mod toric;

pub use error::{Error, Result};
