//! Numeric substrate: exact combinatorics, prime-field arithmetic, and
//! dense rank computation.

mod combinatorics;
mod field;
mod matrix;

pub use combinatorics::{binom, binom_signed, binom_u64, eulerian, BigCount};
pub use field::{multinomial_mod_p, FieldElement, PrimeField, MERSENNE_31, MIN_PRIME};
pub use matrix::{rank, DenseMatrix, MAX_ENTRIES};
