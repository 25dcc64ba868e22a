use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lifting::rational_roots;
use super::poly::Poly;
use super::rational::rational_sqrt;
use super::tower::{TowerElement, TowerField};
use crate::error::{domain, Result};

/// `unit * prod(factors)` with monic factors irreducible over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticFactorization {
    pub unit: BigRational,
    pub factors: Vec<Poly>,
}

impl QuarticFactorization {
    pub fn product(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, f| &acc * f)
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn factors_of_degree(&self, d: usize) -> impl Iterator<Item = &Poly> {
        self.factors.iter().filter(move |f| f.degree() == Some(d))
    }
}

/// `z^4 + p z^2 + q z + r` with `x = z + shift`.
struct Depressed {
    shift: BigRational,
    p: BigRational,
    q: BigRational,
    r: BigRational,
}

fn depress(g: &Poly) -> Depressed {
    let shift = -g.coeff(3) / BigRational::from_integer(4.into());
    let h = g.shift(&shift);
    Depressed { shift, p: h.coeff(2), q: h.coeff(1), r: h.coeff(0) }
}

impl Depressed {
    /// Roots `y` of `q^2 = 4 (2y - p)(y^2 - r)`.
    fn resolvent_roots(&self) -> Result<Vec<BigRational>> {
        let four = BigRational::from_integer(4.into());
        let eight = BigRational::from_integer(8.into());
        let res = Poly::new(vec![
            &four * &self.p * &self.r - &self.q * &self.q,
            -(&eight * &self.r),
            -(&four * &self.p),
            eight,
        ]);
        rational_roots(&res)
    }
}

fn quadratic(c0: BigRational, c1: BigRational) -> Poly {
    Poly::new(vec![c0, c1, BigRational::one()])
}

/// Splits a monic quartic without rational roots into two rational quadratics.
fn split_quartic(g: &Poly) -> Result<Option<(Poly, Poly)>> {
    let dep = depress(g);
    let two = BigRational::from_integer(2.into());
    for y in dep.resolvent_roots()? {
        let m = &two * &y - &dep.p;
        let pair = if m.is_zero() {
            rational_sqrt(&(&y * &y - &dep.r)).map(|w| {
                (quadratic(&y - &w, BigRational::zero()), quadratic(&y + &w, BigRational::zero()))
            })
        } else {
            rational_sqrt(&m).map(|k| {
                let off = &dep.q / (&two * &k);
                (quadratic(&y + &off, -k.clone()), quadratic(&y - &off, k))
            })
        };
        if let Some((a, b)) = pair {
            return Ok(Some((a.shift(&-dep.shift.clone()), b.shift(&-dep.shift.clone()))));
        }
    }
    Ok(None)
}

/// Factors a polynomial of degree 1 to 4 into irreducibles over the rationals.
pub fn factor_quartic_over_q(p: &Poly) -> Result<QuarticFactorization> {
    let deg = match p.degree() {
        Some(d @ 1..=4) => d,
        _ => return domain(format!("degree out of range 1..=4: {p}")),
    };
    let unit = p.leading().unwrap().clone();
    let mut rest = p.monic();
    let mut factors = Vec::new();
    for r in rational_roots(&rest)? {
        let lin = Poly::linear_root(&r);
        while let Some(q) = rest.exact_div(&lin) {
            factors.push(lin.clone());
            rest = q;
        }
    }
    match rest.degree() {
        Some(0) => {}
        Some(4) if deg == 4 => match split_quartic(&rest)? {
            Some((a, b)) => {
                factors.push(a);
                factors.push(b);
            }
            None => factors.push(rest),
        },
        _ => factors.push(rest),
    }
    factors.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(QuarticFactorization { unit, factors })
}

fn push_unique(v: &mut Vec<TowerElement>, x: TowerElement) {
    if !v.contains(&x) {
        v.push(x);
    }
}

/// Roots of `z^2 + b z + c` in the field of `b`.
fn quadratic_roots(b: &TowerElement, c: &TowerElement) -> Vec<TowerElement> {
    let four = BigRational::from_integer(4.into());
    let half = BigRational::new(1.into(), 2.into());
    let disc = &b.square() - &c.scale(&four);
    match disc.sqrt() {
        Some(w) => {
            let nb = -b;
            vec![(&nb + &w).scale(&half), (&nb - &w).scale(&half)]
        }
        None => Vec::new(),
    }
}

/// Roots in `field` of a rational polynomial of degree 1 to 4.
pub fn roots_in_tower(p: &Poly, field: &Arc<TowerField>) -> Result<Vec<TowerElement>> {
    let fact = factor_quartic_over_q(p)?;
    let lift = |r: &BigRational| TowerElement::from_rational(field, r.clone());
    let mut out = Vec::new();
    for f in &fact.factors {
        match f.degree() {
            Some(1) => push_unique(&mut out, lift(&-f.coeff(0))),
            Some(2) => {
                for z in quadratic_roots(&lift(&f.coeff(1)), &lift(&f.coeff(0))) {
                    push_unique(&mut out, z);
                }
            }
            Some(4) => {
                for z in irreducible_quartic_roots(f, field)? {
                    push_unique(&mut out, z);
                }
            }
            _ => {}
        }
    }
    debug_assert!(out.iter().all(|z| p.eval_tower(z).is_zero()));
    Ok(out)
}

fn irreducible_quartic_roots(g: &Poly, field: &Arc<TowerField>) -> Result<Vec<TowerElement>> {
    let dep = depress(g);
    let lift = |r: &BigRational| TowerElement::from_rational(field, r.clone());
    let two = BigRational::from_integer(2.into());
    let mut out = Vec::new();
    for y in dep.resolvent_roots()? {
        let m = &two * &y - &dep.p;
        let yt = lift(&y);
        let mut zs = Vec::new();
        if m.is_zero() {
            let Some(w) = lift(&(&y * &y - &dep.r)).sqrt() else { continue };
            let zero = TowerElement::zero(field);
            zs.extend(quadratic_roots(&zero, &(&yt - &w)));
            zs.extend(quadratic_roots(&zero, &(&yt + &w)));
        } else {
            let Some(k) = lift(&m).sqrt() else { continue };
            let off = lift(&dep.q).div(&k.scale(&two));
            zs.extend(quadratic_roots(&-&k, &(&yt + &off)));
            zs.extend(quadratic_roots(&k, &(&yt - &off)));
        }
        for z in zs {
            let x = z.add_rational(&dep.shift);
            if g.eval_tower(&x).is_zero() {
                push_unique(&mut out, x);
            }
        }
    }
    Ok(out)
}
