//! Chain-level algebra for Floer complexes: graded complexes with Koszul signs,
//! gluing-table calculus, products, and a Morse-theoretic torus oracle.

pub mod error;
pub mod graded;
pub mod linalg;

pub use error::{Error, Result};
pub mod floer;
pub mod report;

pub use report::{CheckResult, Report, Severity};
pub mod tqft;
pub mod morse;
pub mod products;
