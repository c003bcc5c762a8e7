//! Exact integer polynomial arithmetic and real algebraic numbers.

mod algebraic;
mod charpoly;
mod poly;
mod sturm;

pub use algebraic::{AlgebraicJson, AlgebraicReal};
pub use charpoly::char_poly;
pub use poly::{format_rational, parse_rational, IntPolynomial, RatPoly};
pub use sturm::SturmSequence;

use crate::error::Result;

/// True iff `d` divides `p` over the rationals. Errors when `d = 0`.
pub fn poly_divides(d: &IntPolynomial, p: &IntPolynomial) -> Result<bool> {
    d.divides(p)
}
