use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};

/// Shorthand for an integral rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Nonnegative square root of `r` when `r` is a rational square.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    let n = int_sqrt_exact(r.numer())?;
    let d = int_sqrt_exact(r.denom())?;
    Some(BigRational::new(n, d))
}

pub fn is_square(r: &BigRational) -> bool {
    rational_sqrt(r).is_some()
}

/// A nonzero squarefree integer naming the field `Q(sqrt d)`; `1` is `Q`.
///
/// Ordered by absolute value, negative before positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquarefreeLabel(BigInt);

impl SquarefreeLabel {
    pub fn one() -> Self {
        SquarefreeLabel(BigInt::one())
    }

    /// Checked constructor; rejects zero and integers with a square factor.
    pub fn new(d: impl Into<BigInt>) -> Result<Self> {
        let d = d.into();
        if d.is_zero() {
            return domain("zero is not a squarefree label");
        }
        let (s, _) = squarefree_of_int(&d);
        if s != d {
            return domain(format!("{d} is not squarefree"));
        }
        Ok(SquarefreeLabel(d))
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.0.clone())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Label of the product `self * other` modulo squares.
    pub fn mul(&self, other: &SquarefreeLabel) -> SquarefreeLabel {
        let g = self.0.gcd(&other.0);
        SquarefreeLabel(&self.0 * &other.0 / (&g * &g))
    }
}

impl Ord for SquarefreeLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .abs()
            .cmp(&other.0.abs())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for SquarefreeLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SquarefreeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for SquarefreeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D({})", self.0)
    }
}

impl From<i64> for SquarefreeLabel {
    /// Panics when `d` is zero or not squarefree; meant for literals.
    fn from(d: i64) -> Self {
        SquarefreeLabel::new(d).expect("squarefree literal")
    }
}

impl FromStr for SquarefreeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let d: BigInt = s
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("not an integer: {s:?}")))?;
        SquarefreeLabel::new(d)
    }
}

/// `n = s * q^2` with `s` squarefree carrying the sign of `n`.
fn squarefree_of_int(n: &BigInt) -> (BigInt, BigInt) {
    let mag = n.magnitude();
    let mut core = BigUint::one();
    let mut root = BigUint::one();
    if !mag.is_one() {
        for (p, e) in num_prime::nt_funcs::factorize(mag.clone()) {
            if e % 2 == 1 {
                core *= &p;
            }
            for _ in 0..e / 2 {
                root *= &p;
            }
        }
    }
    let sign = if n.is_negative() { Sign::Minus } else { Sign::Plus };
    (
        BigInt::from_biguint(sign, core),
        BigInt::from_biguint(Sign::Plus, root),
    )
}

/// Writes a nonzero rational as `d * q^2` with `d` squarefree and `q > 0`.
pub fn squarefree_part(r: &BigRational) -> Result<(SquarefreeLabel, BigRational)> {
    if r.is_zero() {
        return domain("squarefree part of zero");
    }
    let prod = r.numer() * r.denom();
    let (d, s) = squarefree_of_int(&prod);
    let q = BigRational::new(s, r.denom().clone());
    Ok((SquarefreeLabel(d), q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree_examples() {
        let (d, q) = squarefree_part(&int(12)).unwrap();
        assert_eq!((d, q), (SquarefreeLabel::from(3), int(2)));
        let (d, q) = squarefree_part(&rat(-75, 4)).unwrap();
        assert_eq!((d, q), (SquarefreeLabel::from(-3), rat(5, 2)));
        let (d, q) = squarefree_part(&int(1)).unwrap();
        assert_eq!((d, q), (SquarefreeLabel::one(), int(1)));
        assert!(squarefree_part(&int(0)).is_err());
    }

    #[test]
    fn label_order() {
        let mut v: Vec<SquarefreeLabel> =
            [10, -5, -2, -3, 2, -1].into_iter().map(SquarefreeLabel::from).collect();
        v.sort();
        let got: Vec<String> = v.iter().map(|d| d.to_string()).collect();
        assert_eq!(got, ["-1", "-2", "2", "-3", "-5", "10"]);
    }

    #[test]
    fn label_rejects_squares() {
        assert!(SquarefreeLabel::new(12).is_err());
        assert!("abc".parse::<SquarefreeLabel>().is_err());
        assert_eq!(SquarefreeLabel::from(-2).mul(&SquarefreeLabel::from(-5)), SquarefreeLabel::from(10));
        assert!(SquarefreeLabel::from(6).mul(&SquarefreeLabel::from(6)).is_one());
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&int(2)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
        assert_eq!(rational_sqrt(&int(0)), Some(int(0)));
    }
}
