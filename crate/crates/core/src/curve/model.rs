use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::point::Point;
use crate::error::{domain, Error, Result};
use crate::exact_fields::{int, Poly, TowerElement};

/// A long Weierstrass model `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Curve {
    a: [BigRational; 5],
    b2: BigRational,
    b4: BigRational,
    b6: BigRational,
    b8: BigRational,
    c4: BigRational,
    c6: BigRational,
    disc: BigRational,
    j: BigRational,
}

impl Curve {
    pub fn new(
        a1: BigRational,
        a2: BigRational,
        a3: BigRational,
        a4: BigRational,
        a6: BigRational,
    ) -> Result<Curve> {
        let b2 = &a1 * &a1 + &a2 * int(4);
        let b4 = &a4 * int(2) + &a1 * &a3;
        let b6 = &a3 * &a3 + &a6 * int(4);
        let b8 = &a1 * &a1 * &a6 + &a2 * &a6 * int(4) - &a1 * &a3 * &a4 + &a2 * &a3 * &a3
            - &a4 * &a4;
        let c4 = &b2 * &b2 - &b4 * int(24);
        let c6 = -(&b2 * &b2 * &b2) + &b2 * &b4 * int(36) - &b6 * int(216);
        let disc = -(&b2 * &b2 * &b8) - &b4 * &b4 * &b4 * int(8) - &b6 * &b6 * int(27)
            + &b2 * &b4 * &b6 * int(9);
        if disc.is_zero() {
            return Err(Error::Singular);
        }
        let j = &c4 * &c4 * &c4 / &disc;
        debug_assert_eq!(&b8 * int(4), &b2 * &b6 - &b4 * &b4);
        debug_assert_eq!(&disc * int(1728), &c4 * &c4 * &c4 - &c6 * &c6);
        Ok(Curve { a: [a1, a2, a3, a4, a6], b2, b4, b6, b8, c4, c6, disc, j })
    }

    pub fn from_coeffs(a: &[BigRational]) -> Result<Curve> {
        match a {
            [a1, a2, a3, a4, a6] => {
                Curve::new(a1.clone(), a2.clone(), a3.clone(), a4.clone(), a6.clone())
            }
            _ => domain(format!("expected 5 coefficients, got {}", a.len())),
        }
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Curve> {
        Curve::from_coeffs(&a.map(int))
    }

    pub fn coeffs(&self) -> &[BigRational; 5] {
        &self.a
    }

    pub fn a1(&self) -> &BigRational {
        &self.a[0]
    }
    pub fn a2(&self) -> &BigRational {
        &self.a[1]
    }
    pub fn a3(&self) -> &BigRational {
        &self.a[2]
    }
    pub fn a4(&self) -> &BigRational {
        &self.a[3]
    }
    pub fn a6(&self) -> &BigRational {
        &self.a[4]
    }
    pub fn b2(&self) -> &BigRational {
        &self.b2
    }
    pub fn b4(&self) -> &BigRational {
        &self.b4
    }
    pub fn b6(&self) -> &BigRational {
        &self.b6
    }
    pub fn b8(&self) -> &BigRational {
        &self.b8
    }
    pub fn c4(&self) -> &BigRational {
        &self.c4
    }
    pub fn c6(&self) -> &BigRational {
        &self.c6
    }
    pub fn disc(&self) -> &BigRational {
        &self.disc
    }
    pub fn j_invariant(&self) -> &BigRational {
        &self.j
    }

    pub fn is_b_form(&self) -> bool {
        self.a[0].is_zero() && self.a[2].is_zero()
    }

    /// `4x^3 + b2 x^2 + 2 b4 x + b6`, the square of the 2-division polynomial.
    pub fn two_division_cubic(&self) -> Poly {
        Poly::new(vec![self.b6.clone(), &self.b4 * int(2), self.b2.clone(), int(4)])
    }

    /// Right-hand side `x^3 + a2 x^2 + a4 x + a6`.
    pub fn rhs_cubic(&self) -> Poly {
        Poly::new(vec![self.a[4].clone(), self.a[3].clone(), self.a[1].clone(), BigRational::one()])
    }

    /// Whether `(x, y)` satisfies the equation.
    pub fn is_on_curve(&self, x: &TowerElement, y: &TowerElement) -> bool {
        let lhs = &(&y.square() + &(x * y).scale(&self.a[0])) + &y.scale(&self.a[2]);
        lhs == self.rhs_cubic().eval_tower(x)
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => self.is_on_curve(x, y),
        }
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, c: &BigRational, mono: &str) -> fmt::Result {
    if c.is_zero() {
        return Ok(());
    }
    let sign = if c.is_negative() { '-' } else { '+' };
    let mag = c.abs();
    if mag.is_one() && !mono.is_empty() {
        write!(f, " {sign} {mono}")
    } else if mag.is_integer() {
        write!(f, " {sign} {mag}{mono}")
    } else {
        write!(f, " {sign} ({mag}){mono}")
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2")?;
        fmt_term(f, &self.a[0], "xy")?;
        fmt_term(f, &self.a[2], "y")?;
        write!(f, " = x^3")?;
        fmt_term(f, &self.a[1], "x^2")?;
        fmt_term(f, &self.a[3], "x")?;
        fmt_term(f, &self.a[4], "")
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.a.iter().map(|c| c.to_string()).collect();
        write!(f, "Curve[{}]", a.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_examples() {
        assert_eq!(Curve::from_ints([0, 0, 0, 0, 1]).unwrap().disc(), &int(-432));
        assert_eq!(Curve::from_ints([0, 0, 0, -1, 0]).unwrap().disc(), &int(64));
        assert_eq!(Curve::from_ints([0, 0, 0, 0, 0]), Err(Error::Singular));
    }

    #[test]
    fn invariants_of_eleven_a() {
        let e = Curve::from_ints([0, -1, 1, -10, -20]).unwrap();
        assert_eq!(e.disc(), &int(-161051));
        assert_eq!(e.c4(), &int(496));
        assert_eq!(e.to_string(), "y^2 + y = x^3 - x^2 - 10x - 20");
    }
}
