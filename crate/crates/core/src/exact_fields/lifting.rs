//! Root finding for rational polynomials by p-adic Newton lifting followed by
//! rational reconstruction and exact verification.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::rational::{rational_sqrt, SquarefreeLabel};
use super::tower::{TowerElement, TowerField};
use crate::error::{domain, inconsistent, Result};

const FIRST_PRIME: u64 = 101;
const PRIME_LIMIT: u64 = 60_000;
const CANDIDATE_PRIMES: usize = 3;

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = PRIME_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if sieve[i] {
                if i as u64 >= FIRST_PRIME {
                    out.push(i as u64);
                }
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
        }
        out
    })
}

fn reduce(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect()
}

fn eval_mod(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter().rev().fold(0u64, |acc, &a| ((acc as u128 * x as u128 + a as u128) % p as u128) as u64)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = pow_mod(b[db], p - 2, p);
    while r.len() > db {
        let top = r.len() - 1;
        let coef = (r[top] as u128 * inv as u128 % p as u128) as u64;
        if coef != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let idx = top - db + i;
                let sub = (coef as u128 * bi as u128 % p as u128) as u64;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
    }
    trim(r)
}

fn squarefree_mod(c: &[u64], p: u64) -> bool {
    let d: Vec<u64> = trim(
        c.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| (a as u128 * i as u128 % p as u128) as u64)
            .collect(),
    );
    if d.is_empty() {
        return c.len() <= 1;
    }
    let mut a = trim(c.to_vec());
    let mut b = d;
    while !b.is_empty() {
        let r = rem_mod(&a, &b, p);
        a = b;
        b = r;
    }
    a.len() == 1
}

fn roots_mod(c: &[u64], p: u64) -> Vec<u64> {
    (0..p).filter(|&x| eval_mod(c, x, p) == 0).collect()
}

fn eval_int(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, a| (acc * x + a).mod_floor(m))
}

fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Lifts simple roots modulo `p` to roots modulo `p^(2^j) > bound`.
fn lift(f: &[BigInt], p: u64, roots: &[u64], bound: &BigInt) -> (BigInt, Vec<BigInt>) {
    let df: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, a)| a * BigInt::from(i)).collect();
    let mut m = BigInt::from(p);
    let mut rs: Vec<BigInt> = roots.iter().map(|&r| BigInt::from(r)).collect();
    while &m <= bound {
        let m2 = &m * &m;
        for r in rs.iter_mut() {
            let fr = eval_int(f, r, &m2);
            let dfr = eval_int(&df, r, &m2);
            let inv = modinv(&dfr, &m2).expect("simple root lifts");
            *r = (&*r - fr * inv).mod_floor(&m2);
        }
        m = m2;
    }
    (m, rs)
}

/// `a/b` with `|a| <= n_bound`, `0 < b <= d_bound` and `a = b r mod m`.
fn reconstruct(r: &BigInt, m: &BigInt, n_bound: &BigInt, d_bound: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > n_bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > d_bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

struct Prepared {
    ints: Vec<BigInt>,
    poly: Poly,
    zero_root: bool,
}

fn prepare(p: &Poly) -> Result<Prepared> {
    if p.is_zero() {
        return domain("roots of the zero polynomial");
    }
    let mut ints = p.primitive_integer();
    let lead_zeros = ints.iter().take_while(|c| c.is_zero()).count();
    ints.drain(..lead_zeros);
    let poly = Poly::new(ints.iter().map(|c| BigRational::from_integer(c.clone())).collect());
    Ok(Prepared { ints, poly, zero_root: lead_zeros > 0 })
}

/// Twice a Mignotte-style bound on coefficients of factors of degree at most two.
fn factor_bound(f: &[BigInt]) -> BigInt {
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    (norm2.sqrt() + 1u32) * 2u32
}

/// A good prime for `f` and the roots of `f` modulo it.
fn choose_prime(f: &[BigInt], accept: impl Fn(u64) -> bool) -> Option<(u64, Vec<u64>)> {
    let mut best: Option<(u64, Vec<u64>)> = None;
    let mut found = 0;
    for &p in primes().iter().take(4000) {
        let c = reduce(f, p);
        if c.last() == Some(&0) || !accept(p) || !squarefree_mod(&c, p) {
            continue;
        }
        let roots = roots_mod(&c, p);
        if best.as_ref().is_none_or(|(_, r)| roots.len() < r.len()) {
            best = Some((p, roots));
        }
        found += 1;
        if found == CANDIDATE_PRIMES || best.as_ref().is_some_and(|(_, r)| r.is_empty()) {
            break;
        }
    }
    best
}

/// Replaces `f` by its squarefree part when no good prime exists.
fn squarefree_ints(poly: &Poly) -> Prepared {
    let g = poly.gcd(&poly.derivative());
    let q = poly.exact_div(&g).expect("gcd divides");
    let ints = q.primitive_integer();
    let poly = Poly::new(ints.iter().map(|c| BigRational::from_integer(c.clone())).collect());
    Prepared { ints, poly, zero_root: false }
}

fn lifted_roots(
    prep: Prepared,
    accept: impl Fn(u64) -> bool + Copy,
) -> Result<(Prepared, BigInt, Vec<BigInt>)> {
    if prep.ints.len() <= 1 {
        return Ok((prep, BigInt::one(), Vec::new()));
    }
    let (prep, (p, roots)) = match choose_prime(&prep.ints, accept) {
        Some(found) => (prep, found),
        None => {
            let zero_root = prep.zero_root;
            let mut sf = squarefree_ints(&prep.poly);
            sf.zero_root = zero_root;
            match choose_prime(&sf.ints, accept) {
                Some(found) => (sf, found),
                None => return inconsistent("no good prime for a squarefree polynomial"),
            }
        }
    };
    let bound = factor_bound(&prep.ints);
    let target = &bound * &bound * 2u32;
    let (m, lifted) = lift(&prep.ints, p, &roots, &target);
    Ok((prep, m, lifted))
}

fn push_unique<T: PartialEq>(v: &mut Vec<T>, x: T) {
    if !v.contains(&x) {
        v.push(x);
    }
}

/// All rational roots of a nonzero polynomial, ascending.
pub fn rational_roots(p: &Poly) -> Result<Vec<BigRational>> {
    let prep = prepare(p)?;
    let zero_root = prep.zero_root;
    let (prep, m, lifted) = lifted_roots(prep, |_| true)?;
    let bound = factor_bound(&prep.ints);
    let mut out = Vec::new();
    if zero_root {
        out.push(BigRational::zero());
    }
    for r in &lifted {
        if let Some(q) = reconstruct(r, &m, &bound, &bound) {
            if prep.poly.eval(&q).is_zero() {
                push_unique(&mut out, q);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// All roots of a rational polynomial lying in `Q(sqrt d)`, as elements of that field.
pub fn roots_in_quadratic_field(p: &Poly, d: &SquarefreeLabel) -> Result<Vec<TowerElement>> {
    let field = TowerField::quadratic(d)?;
    let prep = prepare(p)?;
    let zero_root = prep.zero_root;
    let dv = d.value().clone();
    let accept = |q: u64| {
        let r = dv.mod_floor(&BigInt::from(q)).to_u64().unwrap();
        r != 0 && pow_mod(r, (q - 1) / 2, q) == 1
    };
    let (prep, m, lifted) = lifted_roots(prep, accept)?;
    let bound = factor_bound(&prep.ints);
    let mut out: Vec<TowerElement> = Vec::new();
    if zero_root {
        out.push(TowerElement::zero(&field));
    }
    for r in &lifted {
        if let Some(q) = reconstruct(r, &m, &bound, &bound) {
            if prep.poly.eval(&q).is_zero() {
                push_unique(&mut out, TowerElement::from_rational(&field, q));
            }
        }
    }
    let sqrt_d = TowerElement::sqrt_of_label(&field, d).expect("generator");
    let half = BigRational::new(1.into(), 2.into());
    let d_rat = d.to_rational();
    for i in 0..lifted.len() {
        for j in i + 1..lifted.len() {
            let s = (-(&lifted[i] + &lifted[j])).mod_floor(&m);
            let t = (&lifted[i] * &lifted[j]).mod_floor(&m);
            let (Some(s), Some(t)) = (
                reconstruct(&s, &m, &bound, &bound),
                reconstruct(&t, &m, &bound, &bound),
            ) else {
                continue;
            };
            let disc = &s * &s - &t * BigRational::from_integer(4.into());
            if disc.is_zero() {
                continue;
            }
            let Some(c) = rational_sqrt(&(&disc / &d_rat)) else {
                continue;
            };
            let factor = Poly::new(vec![t.clone(), s.clone(), BigRational::one()]);
            if prep.poly.exact_div(&factor).is_none() {
                continue;
            }
            let root_part = sqrt_d.scale(&(c * &half));
            let base = TowerElement::from_rational(&field, -(&s * &half));
            for root in [&base + &root_part, &base - &root_part] {
                debug_assert!(p.eval_tower(&root).is_zero());
                push_unique(&mut out, root);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_fields::rational::{int, rat};

    #[test]
    fn rational_root_examples() {
        assert_eq!(rational_roots(&Poly::from_ints(&[0, 12, 0, 0, 3])).unwrap(), vec![int(0)]);
        assert_eq!(rational_roots(&Poly::from_ints(&[-1, 0, 1])).unwrap(), vec![int(-1), int(1)]);
        assert!(rational_roots(&Poly::from_ints(&[-7, 0, -6, 0, 1])).unwrap().is_empty());
        assert!(rational_roots(&Poly::zero()).is_err());
        assert!(rational_roots(&Poly::from_ints(&[5])).unwrap().is_empty());
    }

    #[test]
    fn non_integral_and_repeated_roots() {
        // (3x - 2)^2 (x + 5)
        let a = Poly::from_ints(&[-2, 3]);
        let p = &(&a * &a) * &Poly::from_ints(&[5, 1]);
        assert_eq!(rational_roots(&p).unwrap(), vec![int(-5), rat(2, 3)]);
    }

    #[test]
    fn large_roots_reconstruct() {
        let big = BigRational::new("123456789012345678901".parse().unwrap(), "97".parse().unwrap());
        let p = &Poly::linear_root(&big) * &Poly::from_ints(&[1, 0, 1]);
        assert_eq!(rational_roots(&p).unwrap(), vec![big]);
    }

    #[test]
    fn quadratic_field_roots() {
        let p = Poly::from_ints(&[-7, 0, -6, 0, 1]);
        let roots = roots_in_quadratic_field(&p, &SquarefreeLabel::from(7)).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(p.eval_tower(r).is_zero());
        }
        let roots = roots_in_quadratic_field(&p, &SquarefreeLabel::from(-1)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots_in_quadratic_field(&p, &SquarefreeLabel::from(2)).unwrap().is_empty());
    }

    #[test]
    fn mod_p_helpers() {
        assert!(!squarefree_mod(&[1, 2, 1], 101));
        assert!(squarefree_mod(&[100, 0, 1], 101));
    }
}
