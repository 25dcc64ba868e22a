use num_rational::BigRational;
use num_traits::{One, Zero};

use super::iso::Isomorphism;
use super::model::Curve;
use super::point::Point;
use super::MAZUR_BOUND;
use crate::error::{domain, inconsistent, Result};
use crate::exact_fields::int;

/// `Y^2 + (1 - c) XY - b Y = X^3 - b X^2` with `(0,0)` of order `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateForm {
    pub b: BigRational,
    pub c: BigRational,
    pub order: u32,
    /// Takes the source model to the Tate model.
    pub iso: Isomorphism,
}

impl TateForm {
    pub fn curve(&self) -> Result<Curve> {
        tate_curve(&self.b, &self.c)
    }
}

pub fn tate_curve(b: &BigRational, c: &BigRational) -> Result<Curve> {
    let z = BigRational::zero();
    Curve::new(BigRational::one() - c, -b, -b, z.clone(), z)
}

/// Tate model attached to a rational point of order `n >= 4`.
pub fn tate_normal_form(e: &Curve, p: &Point) -> Result<TateForm> {
    let Some((x0, y0)) = p.as_rational() else {
        return domain("Tate normal form needs a rational affine point");
    };
    let n = match e.order(p, MAZUR_BOUND)? {
        Some(n) if n >= 4 => n,
        Some(n) => return domain(format!("point of order {n} < 4")),
        None => return domain("point is not of finite order"),
    };
    let z = BigRational::zero();
    let one = BigRational::one();
    let translate = Isomorphism::new(one.clone(), x0, z.clone(), y0)?;
    let e1 = translate.apply(e)?;
    let shear = Isomorphism::new(one, z.clone(), e1.a4() / e1.a3(), z.clone())?;
    let e2 = shear.apply(&e1)?;
    let scale = Isomorphism::new(e2.a3() / e2.a2(), z.clone(), z.clone(), z)?;
    let iso = translate.then(&shear).then(&scale);
    let t = iso.apply(e)?;
    let b = -t.a2().clone();
    let c = BigRational::one() - t.a1();
    if t.a3() != t.a2() || !t.a4().is_zero() || !t.a6().is_zero() {
        return inconsistent(format!("Tate reduction produced {t:?}"));
    }
    let image = iso.map_point(p);
    if image != Point::from_ints(0, 0) || t.order(&image, MAZUR_BOUND)? != Some(n) {
        return inconsistent("Tate reduction lost the distinguished point");
    }
    Ok(TateForm { b, c, order: n, iso })
}

/// The parameter `t` of the order-4, 6 and 8 families.
pub fn tate_parameter(tf: &TateForm) -> Result<BigRational> {
    let (b, c) = (&tf.b, &tf.c);
    match tf.order {
        4 => {
            if !c.is_zero() {
                return inconsistent("order 4 Tate form with c != 0");
            }
            Ok(b.clone())
        }
        6 => {
            if *b != c * c + c {
                return inconsistent("order 6 Tate form with b != c^2 + c");
            }
            Ok(c.clone())
        }
        8 => {
            if c.is_zero() {
                return inconsistent("order 8 Tate form with c = 0");
            }
            let t = b / c;
            let one = BigRational::one();
            if *c != (&t * int(2) - &one) * (&t - &one) / &t {
                return inconsistent("order 8 Tate form off the family");
            }
            Ok(t)
        }
        n => domain(format!("no parameter for order {n}")),
    }
}

/// The Tate model of the order-`n` family at parameter `t`, `n` in 4..=9.
pub fn tate_curve_from_parameter(n: u32, t: &BigRational) -> Result<TateForm> {
    let one = BigRational::one();
    let (b, c) = match n {
        4 => (t.clone(), BigRational::zero()),
        5 => (t.clone(), t.clone()),
        6 => (t * t + t, t.clone()),
        7 => (t * t * t - t * t, t * t - t),
        8 => {
            if t.is_zero() {
                return domain("t = 0 in the order 8 family");
            }
            let b = (t * int(2) - &one) * (t - &one);
            let c = &b / t;
            (b, c)
        }
        9 => {
            let c = t * t * (t - &one);
            let b = &c * (t * t - t + &one);
            (b, c)
        }
        _ => return domain(format!("no family for order {n}")),
    };
    let curve = tate_curve(&b, &c)?;
    if curve.order(&Point::from_ints(0, 0), MAZUR_BOUND)? != Some(n) {
        return domain(format!("parameter {t} degenerates the order {n} family"));
    }
    Ok(TateForm { b, c, order: n, iso: Isomorphism::identity() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_fields::rat;

    #[test]
    fn order_four_already_normal() {
        let e = Curve::from_ints([1, 1, 1, 0, 0]).unwrap();
        let tf = tate_normal_form(&e, &Point::from_ints(0, 0)).unwrap();
        assert_eq!((tf.b.clone(), tf.c.clone(), tf.order), (int(-1), int(0), 4));
        assert_eq!(tate_parameter(&tf).unwrap(), int(-1));
    }

    #[test]
    fn order_six_on_x3_plus_1() {
        let e = Curve::from_ints([0, 0, 0, 0, 1]).unwrap();
        let tf = tate_normal_form(&e, &Point::from_ints(2, 3)).unwrap();
        assert_eq!(tf.order, 6);
        assert_eq!(tf.b, &tf.c * &tf.c + &tf.c);
        assert_eq!((tf.b.clone(), tf.c.clone()), (rat(-2, 9), rat(-1, 3)));
        let t = tf.curve().unwrap();
        assert_eq!(t.order(&Point::from_ints(0, 0), 12).unwrap(), Some(6));
        assert_eq!(t.j_invariant(), e.j_invariant());
    }

    #[test]
    fn small_order_rejected() {
        let e = Curve::from_ints([0, 0, 0, 0, 1]).unwrap();
        assert!(tate_normal_form(&e, &Point::from_ints(-1, 0)).is_err());
        assert!(tate_normal_form(&e, &Point::from_ints(0, 1)).is_err());
    }

    #[test]
    fn parameter_examples() {
        let mk = |b, c, order| TateForm { b, c, order, iso: Isomorphism::identity() };
        assert_eq!(tate_parameter(&mk(int(-1), int(0), 4)).unwrap(), int(-1));
        assert_eq!(tate_parameter(&mk(int(6), int(2), 6)).unwrap(), int(2));
        assert_eq!(tate_parameter(&mk(int(10), rat(10, 3), 8)).unwrap(), int(3));
        assert!(tate_parameter(&mk(int(7), int(2), 6)).is_err());
        assert!(tate_parameter(&mk(int(1), int(1), 5)).is_err());
    }

    #[test]
    fn families_have_the_right_order() {
        for n in 4..=9 {
            let tf = tate_curve_from_parameter(n, &rat(3, 7)).unwrap();
            assert_eq!(tf.order, n);
        }
    }
}
