use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::model::Curve;
use super::point::Point;
use crate::error::{domain, Result};
use crate::exact_fields::{int, SquarefreeLabel, TowerElement, TowerField};

/// The substitution `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`,
/// taking a model `E` to a model `E'`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isomorphism {
    pub u: BigRational,
    pub r: BigRational,
    pub s: BigRational,
    pub t: BigRational,
}

impl Isomorphism {
    pub fn new(u: BigRational, r: BigRational, s: BigRational, t: BigRational) -> Result<Self> {
        if u.is_zero() {
            return domain("isomorphism with u = 0");
        }
        Ok(Isomorphism { u, r, s, t })
    }

    pub fn identity() -> Self {
        Isomorphism {
            u: BigRational::one(),
            r: BigRational::zero(),
            s: BigRational::zero(),
            t: BigRational::zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Isomorphism::identity()
    }

    /// The image model `E'`.
    pub fn apply(&self, e: &Curve) -> Result<Curve> {
        let Isomorphism { u, r, s, t } = self;
        let (a1, a2, a3, a4, a6) = (e.a1(), e.a2(), e.a3(), e.a4(), e.a6());
        let u2 = u * u;
        let u3 = &u2 * u;
        let b1 = (a1 + s * int(2)) / u;
        let b2 = (a2 - s * a1 + r * int(3) - s * s) / &u2;
        let b3 = (a3 + r * a1 + t * int(2)) / &u3;
        let b4 = (a4 - s * a3 + r * a2 * int(2) - (t + r * s) * a1 + r * r * int(3) - s * t * int(2))
            / (&u2 * &u2);
        let b6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / (&u3 * &u3);
        Curve::new(b1, b2, b3, b4, b6)
    }

    /// Image of a point of `E` on `E'`.
    pub fn map_point(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => {
                let u2 = &self.u * &self.u;
                let xr = x.add_rational(&-&self.r);
                let nx = xr.scale(&u2.recip());
                let ny = (y - &xr.scale(&self.s)).add_rational(&-&self.t).scale(&(&u2 * &self.u).recip());
                Point::Affine { x: nx, y: ny }
            }
        }
    }

    pub fn inverse(&self) -> Self {
        let Isomorphism { u, r, s, t } = self;
        let u2 = u * u;
        Isomorphism {
            u: u.recip(),
            r: -r / &u2,
            s: -s / u,
            t: (r * s - t) / (&u2 * u),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Isomorphism) -> Self {
        let (u1, r1, s1, t1) = (&self.u, &self.r, &self.s, &self.t);
        let (u2, r2, s2, t2) = (&next.u, &next.r, &next.s, &next.t);
        let u1sq = u1 * u1;
        Isomorphism {
            u: u1 * u2,
            r: &u1sq * r2 + r1,
            s: u1 * s2 + s1,
            t: &u1sq * u1 * t2 + s1 * &u1sq * r2 + t1,
        }
    }
}

/// A model with `a1 = a3 = 0`: `y^2 = x^3 + (b2/4) x^2 + (b4/2) x + b6/4`.
pub fn to_b_form(e: &Curve) -> Result<(Curve, Isomorphism)> {
    let half = BigRational::new(1.into(), 2.into());
    let iso = Isomorphism {
        u: BigRational::one(),
        r: BigRational::zero(),
        s: -(e.a1() * &half),
        t: -(e.a3() * &half),
    };
    Ok((iso.apply(e)?, iso))
}

/// The model `y^2 = x^3 - (c4/48) x - c6/864`.
pub fn short_form(e: &Curve) -> Result<(Curve, Isomorphism)> {
    let (_, to_b) = to_b_form(e)?;
    let shift = Isomorphism {
        u: BigRational::one(),
        r: -(e.b2() / int(12)),
        s: BigRational::zero(),
        t: BigRational::zero(),
    };
    let iso = to_b.then(&shift);
    let short = iso.apply(e)?;
    debug_assert_eq!(short.a4(), &(-(e.c4() / int(48))));
    debug_assert_eq!(short.a6(), &(-(e.c6() / int(864))));
    Ok((short, iso))
}

/// `y^2 = x^3 + A D^2 x + B D^3` for the short model `y^2 = x^3 + A x + B`.
pub fn quadratic_twist(e: &Curve, d: &SquarefreeLabel) -> Result<Curve> {
    if d.is_one() {
        return domain("twist by 1");
    }
    let (short, _) = short_form(e)?;
    let dv = d.to_rational();
    let z = BigRational::zero();
    Curve::new(z.clone(), z.clone(), z, short.a4() * &dv * &dv, short.a6() * &dv * &dv * &dv)
}

/// Carries a point of the twist by `d` to `E` over a tower containing `sqrt d`.
pub fn twist_point_to_curve(
    e: &Curve,
    d: &SquarefreeLabel,
    p: &Point,
    field: &Arc<TowerField>,
) -> Result<Point> {
    let Point::Affine { x, y } = p.promote(field)? else {
        return Ok(Point::Infinity);
    };
    let Some(root) = TowerElement::sqrt_of_label(field, d) else {
        return domain(format!("{field} does not contain sqrt({d})"));
    };
    let dv = d.to_rational();
    let sx = x.scale(&dv.recip());
    let sy = (&y * &root).scale(&(&dv * &dv).recip());
    let (_, iso) = short_form(e)?;
    Ok(iso.inverse().map_point(&Point::Affine { x: sx, y: sy }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_fields::rat;

    #[test]
    fn b_form_example() {
        let e = Curve::from_ints([1, 1, 1, 0, 0]).unwrap();
        let (b, iso) = to_b_form(&e).unwrap();
        assert_eq!(b.coeffs(), &[int(0), rat(5, 4), int(0), rat(1, 2), rat(1, 4)]);
        let p = iso.map_point(&Point::from_ints(0, 0));
        assert!(b.contains(&p));
        let e2 = Curve::from_ints([0, 0, 0, 0, 1]).unwrap();
        let (b2, iso2) = to_b_form(&e2).unwrap();
        assert!(iso2.is_identity());
        assert_eq!(b2, e2);
    }

    #[test]
    fn twist_examples() {
        let e = Curve::from_ints([0, 0, 0, 0, 1]).unwrap();
        assert_eq!(quadratic_twist(&e, &(-3).into()).unwrap(), Curve::from_ints([0, 0, 0, 0, -27]).unwrap());
        let e = Curve::from_ints([0, 0, 0, -1, 0]).unwrap();
        assert_eq!(quadratic_twist(&e, &2.into()).unwrap(), Curve::from_ints([0, 0, 0, -4, 0]).unwrap());
        assert!(quadratic_twist(&e, &SquarefreeLabel::one()).is_err());
    }

    #[test]
    fn composition_and_inverse() {
        let e = Curve::from_ints([1, -1, 1, -6, -4]).unwrap();
        let f = Isomorphism::new(rat(2, 3), int(5), rat(-1, 2), int(7)).unwrap();
        let g = Isomorphism::new(int(-3), rat(1, 4), int(2), rat(-5, 3)).unwrap();
        let e1 = f.apply(&e).unwrap();
        let e2 = g.apply(&e1).unwrap();
        assert_eq!(f.then(&g).apply(&e).unwrap(), e2);
        assert_eq!(f.inverse().apply(&e1).unwrap(), e);
        assert_eq!(e1.disc(), &(e.disc() / rat(2, 3).pow(12)));
        assert!(f.then(&f.inverse()).is_identity());
    }

    #[test]
    fn twist_point_transport() {
        let e = Curve::from_ints([0, 0, 0, 0, 1]).unwrap();
        let d = SquarefreeLabel::from(-3);
        let et = quadratic_twist(&e, &d).unwrap();
        let p = Point::from_ints(3, 0);
        assert!(et.contains(&p));
        let k = TowerField::quadratic(&d).unwrap();
        let q = twist_point_to_curve(&e, &d, &p, &k).unwrap();
        assert!(e.contains(&q));
        assert_eq!(e.order(&q, 12).unwrap(), Some(2));
    }
}
