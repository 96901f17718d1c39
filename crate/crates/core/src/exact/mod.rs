//! Exact integer / rational arithmetic: polynomials, fraction-free
//! elimination and rational matrices.

mod matrix;
mod poly;

pub use matrix::{bareiss_det, bareiss_rank, IntMatrix, RationalMatrix};
pub use poly::{square_free_part, ExactPoly, RatPoly};

use num_bigint::BigInt;
use num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
