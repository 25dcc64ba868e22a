use std::collections::BTreeSet;
use std::sync::Arc;

use num_rational::BigRational;

use crate::curve::{to_b_form, Curve, Isomorphism, Point};
use crate::error::{domain, inconsistent, Error, Result};
use crate::exact_fields::{
    factor_quartic_over_q, int, rational_roots, roots_in_tower, squarefree_part, Embedding, Poly,
    SquarefreeLabel, TowerElement, TowerField,
};

/// The quartic whose roots `alpha` give the halves of a rational point.
///
/// For the b-form translated so that `P = (0, y0)` on
/// `y^2 = x^3 + A x^2 + B x + y0^2`, this is `x^4 - 2A x^2 - 8 y0 x + A^2 - 4B`,
/// and each root gives the half `((alpha^2 - A)/2, alpha (alpha^2 - A)/2 - y0)`.
pub struct HalvingQuartic {
    pub quartic: Poly,
    pub x0: BigRational,
    pub y0: BigRational,
    pub a: BigRational,
}

impl HalvingQuartic {
    /// Halves on the b-form for a root `alpha`.
    fn half(&self, alpha: &TowerElement) -> Point {
        let half = BigRational::new(1.into(), 2.into());
        let xt = alpha.square().add_rational(&-&self.a).scale(&half);
        let y = (alpha * &xt).add_rational(&-&self.y0);
        Point::Affine { x: xt.add_rational(&self.x0), y }
    }
}

/// `b` must be a b-form model and `(x0, y0)` a rational point on it.
fn quartic_on_b_form(b: &Curve, x0: &BigRational, y0: &BigRational) -> HalvingQuartic {
    let a = x0 * int(3) + b.a2();
    let bb = x0 * x0 * int(3) + b.a2() * x0 * int(2) + b.a4();
    let quartic = Poly::new(vec![
        &a * &a - &bb * int(4),
        -(y0 * int(8)),
        -(&a * int(2)),
        int(0),
        int(1),
    ]);
    HalvingQuartic { quartic, x0: x0.clone(), y0: y0.clone(), a }
}

/// The halving quartic of a rational point `P != O` of `E`.
pub fn halving_quartic(e: &Curve, p: &Point) -> Result<HalvingQuartic> {
    let (b, iso) = to_b_form(e)?;
    let Some((x0, y0)) = iso.map_point(p).as_rational() else {
        return domain("halving quartic needs a rational affine point");
    };
    Ok(quartic_on_b_form(&b, &x0, &y0))
}

/// Point halving on a fixed b-form over a fixed tower.
pub(crate) struct Halver {
    b: Curve,
    field: Arc<TowerField>,
    knapp: Option<KnappData>,
}

struct KnappData {
    roots: Vec<TowerElement>,
    emb: Embedding,
}

impl Halver {
    pub(crate) fn new(b: &Curve, field: &Arc<TowerField>) -> Result<Halver> {
        debug_assert!(b.is_b_form());
        let cubic = b.rhs_cubic();
        let rational = rational_roots(&cubic)?;
        let knapp = if rational.is_empty() {
            None
        } else {
            let mut big = field.clone();
            let lin = Poly::linear_root(&rational[0]);
            let rest = cubic.exact_div(&lin).expect("root divides");
            let disc = rest.coeff(1) * rest.coeff(1) - rest.coeff(0) * int(4);
            let (delta, _) = squarefree_part(&disc)?;
            if !delta.is_one() && !field.contains_sqrt(&delta) {
                big = field.extend(&delta)?;
            }
            let roots = roots_in_tower(&cubic, &big)?;
            if roots.len() != 3 {
                return inconsistent(format!("2-torsion of {b:?} not split over {big}"));
            }
            Some(KnappData { roots, emb: Embedding::new(field, &big)? })
        };
        Ok(Halver { b: b.clone(), field: field.clone(), knapp })
    }

    pub(crate) fn field(&self) -> &Arc<TowerField> {
        &self.field
    }

    /// All `Q` over the field with `2Q = P`, for `P` on the b-form.
    pub(crate) fn halves(&self, p: &Point) -> Result<Vec<Point>> {
        let p = p.promote(&self.field)?;
        let Point::Affine { x, y } = &p else {
            return domain("halving the point at infinity");
        };
        let out = if let (Some(x0), Some(y0)) = (x.as_rational(), y.as_rational()) {
            let hq = quartic_on_b_form(&self.b, x0, y0);
            roots_in_tower(&hq.quartic, &self.field)?
                .iter()
                .map(|alpha| hq.half(alpha))
                .collect()
        } else {
            self.knapp_halves(x, y)?
        };
        for q in &out {
            if self.b.double(q)? != p {
                return inconsistent(format!("half {q} does not double to {p}"));
            }
        }
        Ok(out)
    }

    fn knapp_halves(&self, x: &TowerElement, y: &TowerElement) -> Result<Vec<Point>> {
        let Some(kd) = &self.knapp else {
            return Err(Error::Unsupported(
                "halving an irrational point without rational 2-torsion".into(),
            ));
        };
        let up = |t: &TowerElement| kd.emb.apply(t);
        let (xb, yb) = (up(x), up(y));
        let target = Point::Affine { x: xb.clone(), y: yb.clone() };
        let mut r = Vec::with_capacity(3);
        for e in &kd.roots {
            match (&xb - e).sqrt() {
                Some(s) => r.push(s),
                None => return Ok(Vec::new()),
            }
        }
        let cubic = self.b.rhs_cubic();
        let mut out = Vec::new();
        for (s2, s3) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let r2 = if s2 > 0 { r[1].clone() } else { -&r[1] };
            let r3 = if s3 > 0 { r[2].clone() } else { -&r[2] };
            let qx = &(&(&xb + &(&r[0] * &r2)) + &(&r[0] * &r3)) + &(&r2 * &r3);
            let Some(qy) = cubic.eval_tower(&qx).sqrt() else { continue };
            for cand in [qy.clone(), -qy] {
                let q = Point::Affine { x: qx.clone(), y: cand };
                if self.b.double(&q)? == target {
                    if let Some(small) = q.restrict(&kd.emb) {
                        if !out.contains(&small) {
                            out.push(small);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// All `Q` over `field` with `2Q = P`.
pub fn halve_point(e: &Curve, p: &Point, field: &Arc<TowerField>) -> Result<Vec<Point>> {
    if p.is_infinity() {
        return domain("halving the point at infinity");
    }
    if !e.contains(p) {
        return domain(format!("{p} is not on {e}"));
    }
    let (b, iso) = to_b_form(e)?;
    let halver = Halver::new(&b, field)?;
    let back: Isomorphism = iso.inverse();
    let halves = halver.halves(&iso.map_point(p))?;
    Ok(halves.iter().map(|q| back.map_point(q)).collect())
}

/// Labels of the quadratic fields over which a rational point acquires a half.
pub fn halving_fields(e: &Curve, p: &Point) -> Result<BTreeSet<SquarefreeLabel>> {
    if p.is_infinity() {
        return domain("halving the point at infinity");
    }
    let hq = halving_quartic(e, p)?;
    let fact = factor_quartic_over_q(&hq.quartic)?;
    let mut out = BTreeSet::new();
    for g in fact.factors_of_degree(2) {
        let disc = g.coeff(1) * g.coeff(1) - g.coeff(0) * int(4);
        let (d, _) = squarefree_part(&disc)?;
        if d.is_one() {
            return inconsistent("irreducible quadratic with square discriminant");
        }
        out.insert(d);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halving_on_x3_plus_1() {
        let e = Curve::from_ints([0, 0, 0, 0, 1]).unwrap();
        let p = Point::from_ints(0, 1);
        assert_eq!(halving_quartic(&e, &p).unwrap().quartic, Poly::from_ints(&[0, -8, 0, 0, 1]));
        let q = TowerField::rationals();
        let mut halves = halve_point(&e, &p, &q).unwrap();
        halves.sort_by_key(|h| h.to_string());
        assert_eq!(halves, vec![Point::from_ints(0, -1), Point::from_ints(2, 3)]);
        let want: BTreeSet<SquarefreeLabel> = [SquarefreeLabel::from(-3)].into();
        assert_eq!(halving_fields(&e, &p).unwrap(), want);
        assert!(halve_point(&e, &Point::Infinity, &q).is_err());
    }

    #[test]
    fn halving_fields_two_torsion_family() {
        let e = Curve::from_ints([0, 3, 0, 4, 0]).unwrap();
        let p = Point::from_ints(0, 0);
        assert_eq!(halving_quartic(&e, &p).unwrap().quartic, Poly::from_ints(&[-7, 0, -6, 0, 1]));
        let want: BTreeSet<SquarefreeLabel> = [SquarefreeLabel::from(7), SquarefreeLabel::from(-1)].into();
        assert_eq!(halving_fields(&e, &p).unwrap(), want);
        let k = TowerField::quadratic(&7.into()).unwrap();
        let halves = halve_point(&e, &p, &k).unwrap();
        assert_eq!(halves.len(), 2);
        for h in &halves {
            assert_eq!(e.double(h).unwrap(), p.promote(&k).unwrap());
        }
    }

    #[test]
    fn knapp_halving_of_irrational_point() {
        // y^2 = x^3 - x over Q(i, sqrt 2): halve a half of (0,0) once more.
        let e = Curve::from_ints([0, 0, 0, -1, 0]).unwrap();
        let f = TowerField::new(&[SquarefreeLabel::from(-1), SquarefreeLabel::from(2)]).unwrap();
        let first = halve_point(&e, &Point::from_ints(0, 0), &f).unwrap();
        assert!(!first.is_empty());
        let irrational = first.iter().find(|q| !q.is_rational()).expect("irrational half");
        for q in halve_point(&e, irrational, &f).unwrap() {
            assert_eq!(e.double(&q).unwrap(), *irrational);
        }
    }
}
