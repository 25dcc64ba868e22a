use crate::curve::Curve;
use crate::error::{domain, Result};
use crate::exact_fields::{int, Poly};

/// Largest supported index.
pub const MAX_INDEX: u32 = 16;

/// `f_0, ..., f_n` where `f_k = psi_k` for odd `k` and `psi_k / psi_2` for even `k`.
pub fn division_polynomials(e: &Curve, n: u32) -> Result<Vec<Poly>> {
    if n == 0 || n > MAX_INDEX {
        return domain(format!("division polynomial index {n} outside 1..={MAX_INDEX}"));
    }
    let (b2, b4, b6, b8) = (e.b2(), e.b4(), e.b6(), e.b8());
    let big_f = e.two_division_cubic();
    let f2 = big_f.pow(2);
    let mut f = vec![
        Poly::zero(),
        Poly::one(),
        Poly::one(),
        Poly::new(vec![b8.clone(), b6 * int(3), b4 * int(3), b2.clone(), int(3)]),
        Poly::new(vec![
            b4 * b8 - b6 * b6,
            b2 * b8 - b4 * b6,
            b8 * int(10),
            b6 * int(10),
            b4 * int(5),
            b2.clone(),
            int(2),
        ]),
    ];
    for k in 5..=n as usize {
        let m = k / 2;
        let next = if k % 2 == 1 {
            let a = &f[m + 2] * &f[m].pow(3);
            let b = &f[m - 1] * &f[m + 1].pow(3);
            if m % 2 == 0 {
                &(&f2 * &a) - &b
            } else {
                &a - &(&f2 * &b)
            }
        } else {
            let a = &f[m + 2] * &f[m - 1].pow(2);
            let b = &f[m - 2] * &f[m + 1].pow(2);
            &f[m] * &(&a - &b)
        };
        f.push(next);
    }
    f.truncate(n as usize + 1);
    Ok(f)
}

/// `psi_n` for odd `n` and `psi_n / psi_2` for even `n`.
pub fn division_polynomial(e: &Curve, n: u32) -> Result<Poly> {
    Ok(division_polynomials(e, n)?.pop().expect("nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Point;
    use crate::exact_fields::rational_roots;

    #[test]
    fn small_examples() {
        let e = Curve::from_ints([0, 0, 0, 0, 1]).unwrap();
        assert_eq!(division_polynomial(&e, 1).unwrap(), Poly::one());
        assert_eq!(e.two_division_cubic(), Poly::from_ints(&[4, 0, 0, 4]));
        assert_eq!(division_polynomial(&e, 3).unwrap(), Poly::from_ints(&[0, 12, 0, 0, 3]));
        assert!(division_polynomial(&e, 0).is_err());
        assert!(division_polynomial(&e, 17).is_err());
    }

    #[test]
    fn degrees() {
        let e = Curve::from_ints([1, -1, 1, -6, -4]).unwrap();
        let f = division_polynomials(&e, 12).unwrap();
        for (k, p) in f.iter().enumerate().skip(1) {
            let want = if k % 2 == 1 { (k * k - 1) / 2 } else { (k * k - 4) / 2 };
            assert_eq!(p.degree(), Some(want), "index {k}");
        }
    }

    #[test]
    fn order_five_roots() {
        // 11a3 has a rational point of order 5 at x = 0.
        let e = Curve::from_ints([0, -1, 1, 0, 0]).unwrap();
        let roots = rational_roots(&division_polynomial(&e, 5).unwrap()).unwrap();
        assert!(roots.contains(&int(0)) && roots.contains(&int(1)));
        assert_eq!(e.order(&Point::from_ints(1, 0), 12).unwrap(), Some(5));
    }
}
