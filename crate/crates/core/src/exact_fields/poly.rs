use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::tower::TowerElement;

/// Dense univariate polynomial over the rationals, ascending coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { c: coeffs }
    }

    /// From integer coefficients, constant term first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&n| BigRational::from_integer(n.into())).collect())
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(r: BigRational) -> Self {
        Poly::new(vec![r])
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    /// `x - r`.
    pub fn linear_root(r: &BigRational) -> Self {
        Poly::new(vec![-r, BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.c.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.c.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn eval_tower(&self, x: &TowerElement) -> TowerElement {
        let mut acc = TowerElement::zero(x.field());
        for a in self.c.iter().rev() {
            acc = (&acc * x).add_rational(a);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Poly::new(self.c.iter().map(|a| a * r).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    /// Euclidean division; panics when dividing by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = d.c[dd].recip();
        let mut r = self.c.clone();
        let mut q = vec![BigRational::zero(); self.c.len().saturating_sub(dd)];
        while r.len() > dd {
            let top = r.len() - 1;
            let coef = &r[top] * &lead_inv;
            if !coef.is_zero() {
                let shift = top - dd;
                for (i, di) in d.c.iter().enumerate() {
                    r[shift + i] -= &coef * di;
                }
                q[shift] = coef;
            }
            r.pop();
        }
        (Poly::new(q), Poly::new(r))
    }

    /// Exact quotient when `d` divides `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `p(x + h)`.
    pub fn shift(&self, h: &BigRational) -> Poly {
        let lin = Poly::new(vec![h.clone(), BigRational::one()]);
        let mut acc = Poly::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(a.clone());
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Primitive integer multiple with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self.c.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let ints: Vec<BigInt> = self.c.iter().map(|a| (a * &l).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
        if ints.last().is_some_and(Signed::is_negative) {
            g = -g;
        }
        ints.into_iter().map(|a| a / &g).collect()
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.c.len().max(rhs.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.c.len().max(rhs.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.c.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coef = i == 0 || !mag.is_one();
            if show_coef {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_fields::rational::{int, rat};

    #[test]
    fn arithmetic_and_display() {
        let p = Poly::from_ints(&[-1, 0, 1]);
        let q = Poly::from_ints(&[1, 1]);
        assert_eq!(p.divrem(&q), (Poly::from_ints(&[-1, 1]), Poly::zero()));
        assert_eq!(p.to_string(), "x^2 - 1");
        assert_eq!(Poly::from_ints(&[0, 12, 0, 0, 3]).to_string(), "3x^4 + 12x");
        assert_eq!(p.eval(&int(3)), int(8));
        assert_eq!(p.gcd(&Poly::from_ints(&[1, 2, 1])), q);
    }

    #[test]
    fn shift_and_derivative() {
        let p = Poly::from_ints(&[1, 0, 1]);
        assert_eq!(p.shift(&int(1)), Poly::from_ints(&[2, 2, 1]));
        assert_eq!(p.derivative(), Poly::from_ints(&[0, 2]));
    }

    #[test]
    fn primitive_integer_form() {
        let p = Poly::new(vec![rat(1, 2), int(0), rat(-3, 4)]);
        let v: Vec<i64> = p.primitive_integer().iter().map(|b| i64::try_from(b).unwrap()).collect();
        assert_eq!(v, [-2, 0, 3]);
    }
}
