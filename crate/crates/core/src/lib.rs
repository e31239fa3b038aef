//! Exact gauges, positive cones and Baer–Krull liftings on matrix algebras
//! with involution over ℚ(x_1,…,x_r) with its lex monomial valuation.

pub mod algebra;
pub mod cli;
pub mod cones;
pub mod error;
pub mod gauges;
pub mod quatmat;
pub mod sampling;
pub mod symfield;

pub use error::{Error, Result};
