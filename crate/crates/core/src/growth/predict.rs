use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::curve::{tate_normal_form, tate_parameter, to_b_form, Curve, Point};
use crate::error::{domain, inconsistent, Result};
use crate::exact_fields::{int, rational_roots, rational_sqrt, squarefree_part, SquarefreeLabel};
use crate::torsion::{division_polynomial, halving_fields, GroupStructure, TorsionContext, TorsionData};

type Labels = BTreeSet<SquarefreeLabel>;

fn label(r: &BigRational) -> Result<SquarefreeLabel> {
    Ok(squarefree_part(r)?.0)
}

fn pair(a: &BigRational, b: &BigRational) -> Result<Labels> {
    let (la, lb) = (label(a)?, label(b)?);
    if la == lb {
        return inconsistent(format!("predicted fields coincide at {la}"));
    }
    Ok([la, lb].into_iter().collect())
}

/// Closed-form growth fields for `G` in {C2, C4, C6, C8, C2xC2}; empty otherwise.
pub fn predict_even_growth_fields(e: &Curve, g: &GroupStructure) -> Result<Labels> {
    let ctx = TorsionContext::new(e)?;
    let data = ctx.over_q()?;
    if data.structure != *g {
        return domain(format!("curve has rational torsion {:?}, not {g:?}", data.structure));
    }
    predict_from(e, &data)
}

pub(crate) fn predict_from(e: &Curve, data: &TorsionData) -> Result<Labels> {
    let g = data.structure;
    let (b, _) = to_b_form(e)?;
    let roots = rational_roots(&b.rhs_cubic())?;
    match (g.n(), g.m()) {
        (1, 2) => {
            let x0 = &roots[0];
            let (a2, a4) = (b.a2(), b.a4());
            let big_a = x0 * int(3) + a2;
            let big_b = x0 * x0 * int(3) + x0 * a2 * int(2) + a4;
            match rational_sqrt(&big_b) {
                Some(s) => pair(&(&big_a + &s * int(2)), &(&big_a - &s * int(2))),
                None => Ok(Labels::new()),
            }
        }
        (1, 4) | (1, 6) | (1, 8) => {
            let tf = tate_normal_form(e, &data.generators[0])?;
            let t = tate_parameter(&tf)?;
            let one = BigRational::one();
            match g.m() {
                4 => match rational_sqrt(&-&t) {
                    Some(s) => pair(&(&one + &s * int(4)), &(&one - &s * int(4))),
                    None => Ok(Labels::new()),
                },
                6 => match rational_sqrt(&-&t) {
                    Some(s) => pair(
                        &((&one + &s) * (&one - &s * int(3))),
                        &((&one - &s) * (&one + &s * int(3))),
                    ),
                    None => Ok(Labels::new()),
                },
                _ => {
                    if t == one {
                        return inconsistent("order 8 parameter t = 1");
                    }
                    match rational_sqrt(&(&t / (&one - &t))) {
                        Some(s) => {
                            let s2 = &s * &s;
                            let base = &s2 * &s2 - &one;
                            pair(
                                &(&base * (&s2 + &s * int(2) - &one)),
                                &(&base * (&s2 - &s * int(2) - &one)),
                            )
                        }
                        None => Ok(Labels::new()),
                    }
                }
            }
        }
        (2, 2) => {
            let mut out = Labels::new();
            for (i, e0) in roots.iter().enumerate() {
                let others: Vec<_> = roots.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, r)| r).collect();
                let la = label(&(e0 - others[0]))?;
                let lb = label(&(e0 - others[1]))?;
                let d = match (la.is_one(), lb.is_one()) {
                    (true, true) => return inconsistent("2-torsion point halvable over Q with G = C2xC2"),
                    (true, false) => Some(lb),
                    (false, true) => Some(la),
                    (false, false) => (la == lb).then_some(la),
                };
                out.extend(d);
            }
            Ok(out)
        }
        _ => Ok(Labels::new()),
    }
}

/// Every quadratic field in which the torsion of `E` may grow.
pub fn candidate_fields(e: &Curve, g: &GroupStructure) -> Result<Labels> {
    let ctx = TorsionContext::new(e)?;
    let data = ctx.over_q()?;
    if data.structure != *g {
        return domain(format!("curve has rational torsion {:?}, not {g:?}", data.structure));
    }
    candidates_from(&ctx, &data)
}

pub(crate) fn candidates_from(ctx: &TorsionContext, data: &TorsionData) -> Result<Labels> {
    let e = ctx.curve();
    let mut out = Labels::new();
    out.insert(label(e.disc())?);
    out.insert((-1).into());
    out.insert((-3).into());
    let (b, _) = to_b_form(e)?;
    let cubic = b.rhs_cubic();
    let mut odd = vec![3u32, 5, 7];
    if !rational_roots(&division_polynomial(&b, 3)?)?.is_empty() {
        odd.push(9);
    }
    for l in odd {
        for x0 in rational_roots(&division_polynomial(&b, l)?)? {
            let v = cubic.eval(&x0);
            if !v.is_zero() && rational_sqrt(&v).is_none() {
                out.insert(label(&v)?);
            }
        }
    }
    for (p, _) in ctx.rational_two_primary_points()? {
        if !matches!(p, Point::Infinity) {
            out.extend(halving_fields(e, &p)?);
        }
    }
    out.extend(predict_from(e, data)?);
    out.remove(&SquarefreeLabel::one());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::tate_curve_from_parameter;
    use crate::exact_fields::rat;

    fn labels(ds: &[i64]) -> Labels {
        ds.iter().map(|&d| d.into()).collect()
    }

    #[test]
    fn order_four_family() {
        let e = tate_curve_from_parameter(4, &rat(-1, 1)).unwrap().curve().unwrap();
        let p = predict_even_growth_fields(&e, &GroupStructure::cyclic(4)).unwrap();
        assert_eq!(p, labels(&[5, -3]));
    }

    #[test]
    fn order_eight_family() {
        let e = tate_curve_from_parameter(8, &rat(4, 5)).unwrap().curve().unwrap();
        let p = predict_even_growth_fields(&e, &GroupStructure::cyclic(8)).unwrap();
        assert_eq!(p, labels(&[105, -15]));
    }

    #[test]
    fn full_two_torsion() {
        let e = Curve::from_ints([0, 0, 0, -1, 0]).unwrap();
        let p = predict_even_growth_fields(&e, &GroupStructure::of(2, 2)).unwrap();
        assert_eq!(p, labels(&[-1, 2]));
    }

    #[test]
    fn two_torsion_family() {
        let e = Curve::from_ints([0, 3, 0, 4, 0]).unwrap();
        let p = predict_even_growth_fields(&e, &GroupStructure::cyclic(2)).unwrap();
        assert_eq!(p, labels(&[7, -1]));
    }

    #[test]
    fn candidates_contain_known_fields() {
        let e = Curve::from_ints([0, 1, 1, -769, -8470]).unwrap();
        let c = candidate_fields(&e, &GroupStructure::trivial()).unwrap();
        assert!(c.contains(&(-3).into()));
        let e = Curve::from_ints([1, 0, 1, -5334, -150368]).unwrap();
        let c = candidate_fields(&e, &GroupStructure::cyclic(2)).unwrap();
        for d in [10, -5, -2, -3] {
            assert!(c.contains(&d.into()), "{d}");
        }
        assert!(c.contains(&label(e.disc()).unwrap()));
        assert!(!c.contains(&SquarefreeLabel::one()));
    }
}
