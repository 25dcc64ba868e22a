use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use super::model::Curve;
use crate::error::{domain, Result};
use crate::exact_fields::{int, Embedding, TowerElement, TowerField};

/// A point on a Weierstrass model over some tower.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine { x: TowerElement, y: TowerElement },
}

impl Point {
    pub fn affine(x: TowerElement, y: TowerElement) -> Result<Point> {
        if x.field() != y.field() {
            return domain(format!("coordinates over {} and {}", x.field(), y.field()));
        }
        Ok(Point::Affine { x, y })
    }

    /// A rational point.
    pub fn rational(x: BigRational, y: BigRational) -> Point {
        let q = TowerField::rationals();
        Point::Affine {
            x: TowerElement::from_rational(&q, x),
            y: TowerElement::from_rational(&q, y),
        }
    }

    pub fn from_ints(x: i64, y: i64) -> Point {
        Point::rational(int(x), int(y))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&TowerElement> {
        match self {
            Point::Affine { x, .. } => Some(x),
            Point::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&TowerElement> {
        match self {
            Point::Affine { y, .. } => Some(y),
            Point::Infinity => None,
        }
    }

    pub fn field(&self) -> Option<&Arc<TowerField>> {
        self.x().map(TowerElement::field)
    }

    /// Rational coordinates, when both are rational.
    pub fn as_rational(&self) -> Option<(BigRational, BigRational)> {
        match self {
            Point::Affine { x, y } => Some((x.as_rational()?.clone(), y.as_rational()?.clone())),
            Point::Infinity => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        match self {
            Point::Affine { x, y } => x.is_rational() && y.is_rational(),
            Point::Infinity => true,
        }
    }

    /// The same point over a larger tower.
    pub fn promote(&self, target: &Arc<TowerField>) -> Result<Point> {
        match self {
            Point::Infinity => Ok(Point::Infinity),
            Point::Affine { x, y } => Ok(Point::Affine { x: x.promote(target)?, y: y.promote(target)? }),
        }
    }

    /// Rewrites rational coordinates over `field` regardless of the stored field.
    pub fn rational_over(&self, field: &Arc<TowerField>) -> Option<Point> {
        let (x, y) = self.as_rational()?;
        Some(Point::Affine {
            x: TowerElement::from_rational(field, x),
            y: TowerElement::from_rational(field, y),
        })
    }

    /// Preimage under an embedding, if the point is defined over the source.
    pub fn restrict(&self, emb: &Embedding) -> Option<Point> {
        match self {
            Point::Infinity => Some(Point::Infinity),
            Point::Affine { x, y } => Some(Point::Affine { x: emb.restrict(x)?, y: emb.restrict(y)? }),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "O"),
            Point::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Curve {
    pub fn neg(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => {
                let ny = -(&(y + &x.scale(self.a1())).add_rational(self.a3()));
                Point::Affine { x: x.clone(), y: ny }
            }
        }
    }

    pub fn add(&self, p: &Point, q: &Point) -> Result<Point> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return Ok(q.clone()),
            (_, Point::Infinity) => return Ok(p.clone()),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        if x1.field() != x2.field() {
            return domain(format!("adding points over {} and {}", x1.field(), x2.field()));
        }
        let (a1, a2, a3, a4, a6) = (self.a1(), self.a2(), self.a3(), self.a4(), self.a6());
        let (lambda, nu) = if x1 == x2 {
            let denom = (&y1.scale(&int(2)) + &x1.scale(a1)).add_rational(a3);
            let sum = (&(y1 + y2) + &x2.scale(a1)).add_rational(a3);
            if sum.is_zero() {
                return Ok(Point::Infinity);
            }
            let x1sq = x1.square();
            let slope_top = (&x1sq.scale(&int(3)) + &x1.scale(&(a2 * int(2)))).add_rational(a4);
            let num_l = &slope_top - &y1.scale(a1);
            let cube = &x1sq * x1;
            let icept_top = (&x1.scale(a4) - &cube).add_rational(&(a6 * int(2)));
            let num_n = &icept_top - &y1.scale(a3);
            let inv = denom.inv().expect("nonzero tangent denominator");
            (&num_l * &inv, &num_n * &inv)
        } else {
            let inv = (x2 - x1).inv().expect("distinct abscissae");
            let lambda = &(y2 - y1) * &inv;
            let nu = &(&(y1 * x2) - &(y2 * x1)) * &inv;
            (lambda, nu)
        };
        let lsq = &lambda.square() + &lambda.scale(a1);
        let x3 = (&lsq - &(x1 + x2)).add_rational(&-a2);
        let y3 = -(&(&lambda.add_rational(a1) * &x3) + &nu).add_rational(a3);
        Ok(Point::Affine { x: x3, y: y3 })
    }

    pub fn double(&self, p: &Point) -> Result<Point> {
        self.add(p, p)
    }

    pub fn sub(&self, p: &Point, q: &Point) -> Result<Point> {
        self.add(p, &self.neg(q))
    }

    /// `n * P` by double-and-add.
    pub fn mul(&self, n: i64, p: &Point) -> Result<Point> {
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Point::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.double(&base)?;
            }
        }
        Ok(acc)
    }

    /// Exact order when at most `bound`, otherwise `None`.
    pub fn order(&self, p: &Point, bound: u32) -> Result<Option<u32>> {
        let mut q = p.clone();
        for k in 1..=bound {
            if q.is_infinity() {
                return Ok(Some(k));
            }
            q = self.add(&q, p)?;
        }
        Ok(None)
    }
}
