use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Monic integer polynomial, coefficients in ascending order of degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactPoly {
    coefficients: Vec<BigInt>,
}

impl ExactPoly {
    /// Builds from ascending coefficients; trailing zeros are trimmed.
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.len() > 1 && coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            coefficients.push(BigInt::zero());
        }
        Self { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coefficients.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// `sum |c_k| |x|^k`, the natural scale for judging `|p(x)|` small.
    pub fn magnitude_f64(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x.abs() + c.abs().to_f64().unwrap_or(f64::INFINITY))
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coefficients.iter().cloned().map(BigRational::from_integer).collect())
    }
}

impl fmt::Display for ExactPoly {
    /// Renders as e.g. `t^4 - 3t^2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() && !(k == 0 && first) {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for ExactPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        strings.serialize(s)
    }
}

/// Polynomial over the rationals, ascending coefficients, no trailing zeros.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coefficients: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coefficients: Vec<BigRational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(
            coefficients
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    fn leading(&self) -> Option<&BigRational> {
        self.coefficients.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lead) => Self::new(self.coefficients.iter().map(|c| c / lead).collect()),
        }
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dlead = divisor.leading().expect("division by the zero polynomial");
        let ddeg = divisor.coefficients.len() - 1;
        let mut rem = self.coefficients.clone();
        if rem.len() <= ddeg {
            return (Self::new(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - ddeg];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + ddeg] / dlead;
            if !c.is_zero() {
                for (j, d) in divisor.coefficients.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(ddeg);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).1.is_zero()
    }
}

/// Square-free part of a positive integer: `m / k^2` for the largest square `k^2 | m`.
pub fn square_free_part(mut m: u64) -> u64 {
    assert!(m > 0, "square-free part of zero");
    let mut out = 1;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    out * m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(ExactPoly::from_i64(&[1, 0, -3, 0, 1]).to_string(), "t^4 - 3t^2 + 1");
        assert_eq!(ExactPoly::from_i64(&[0, -2, 0, 1]).to_string(), "t^3 - 2t");
        assert_eq!(ExactPoly::from_i64(&[0, 1]).to_string(), "t");
        assert_eq!(ExactPoly::from_i64(&[1]).to_string(), "1");
        assert_eq!(ExactPoly::from_i64(&[0]).to_string(), "0");
        assert_eq!(ExactPoly::from_i64(&[-4, 2, 1]).to_string(), "t^2 + 2t - 4");
    }

    #[test]
    fn evaluation() {
        let p = ExactPoly::from_i64(&[1, 0, -3, 0, 1]);
        assert_eq!(p.eval(&BigInt::from(2)), BigInt::from(5));
        assert!((p.eval_f64(1.618_033_988_749_895)).abs() < 1e-12);
        assert_eq!(p.degree(), 4);
        assert!(p.is_monic());
    }

    #[test]
    fn euclid() {
        // t^4 - 3t^2 + 1 and t^3 - 2t are coprime.
        let a = RatPoly::from_i64(&[1, 0, -3, 0, 1]);
        let b = RatPoly::from_i64(&[0, -2, 0, 1]);
        assert_eq!(a.gcd(&b), RatPoly::from_i64(&[1]));
        // (t - 1)(t + 2) and (t - 1)(t - 3) share t - 1.
        let c = RatPoly::from_i64(&[-2, 1, 1]);
        let d = RatPoly::from_i64(&[3, -4, 1]);
        assert_eq!(c.gcd(&d), RatPoly::from_i64(&[-1, 1]));
        let (q, r) = a.div_rem(&RatPoly::from_i64(&[-1, -1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, RatPoly::from_i64(&[-1, 1, 1]));
        assert!(RatPoly::from_i64(&[-2, 0, 1]).divides(&RatPoly::from_i64(&[0, -2, 0, 1])));
    }

    #[test]
    fn square_free() {
        assert_eq!(square_free_part(8), 2);
        assert_eq!(square_free_part(5), 5);
        assert_eq!(square_free_part(1), 1);
        assert_eq!(square_free_part(72), 2);
        assert_eq!(square_free_part(45), 5);
    }
}
