//! Weak Lefschetz property analysis for quotients of polynomial rings by
//! powers of generic linear forms.

pub mod algebra;
pub mod analyzer;
pub mod error;
pub mod exact;
pub mod gt;
pub mod hilbert;
pub mod oracle;
pub mod surface;

pub use algebra::{AlgebraSpec, Family};
pub use error::{Error, Result};
