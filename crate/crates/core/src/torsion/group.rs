use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};

/// `C_n x C_m` with `n | m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupStructure {
    n: u32,
    m: u32,
}

impl GroupStructure {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n == 0 || m == 0 || !m.is_multiple_of(n) {
            return domain(format!("invalid group structure {n}x{m}"));
        }
        Ok(GroupStructure { n, m })
    }

    /// For literals known to be valid.
    pub const fn of(n: u32, m: u32) -> Self {
        assert!(n > 0 && m.is_multiple_of(n));
        GroupStructure { n, m }
    }

    pub const fn cyclic(m: u32) -> Self {
        GroupStructure { n: 1, m }
    }

    pub const fn trivial() -> Self {
        GroupStructure { n: 1, m: 1 }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.n * self.m
    }

    pub fn is_cyclic(&self) -> bool {
        self.n == 1
    }

    /// Invariant factors of a direct sum of cyclic groups.
    pub fn from_cyclic_factors(orders: &[u32]) -> Result<Self> {
        let mut by_prime: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for &o in orders {
            if o == 0 {
                return domain("cyclic factor of order 0");
            }
            for (p, e) in factor_small(o) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        let (mut n, mut m) = (1u32, 1u32);
        for (p, mut exps) in by_prime {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            if exps.len() > 2 {
                return Err(Error::Inconsistency(format!(
                    "{}-rank {} exceeds 2 in {orders:?}",
                    p,
                    exps.len()
                )));
            }
            m *= p.pow(exps[0]);
            if let Some(&e) = exps.get(1) {
                n *= p.pow(e);
            }
        }
        GroupStructure::new(n, m)
    }

    /// Whether `self` is isomorphic to a subgroup of `other`.
    pub fn embeds_in(&self, other: &GroupStructure) -> bool {
        other.n.is_multiple_of(self.n) && other.m.is_multiple_of(self.m)
    }

    /// Index-wise split into the 2-primary and odd parts.
    pub fn two_part(&self) -> (u32, u32) {
        (two_power(self.n), two_power(self.m))
    }

    pub fn odd_part(&self) -> (u32, u32) {
        (self.n / two_power(self.n), self.m / two_power(self.m))
    }

    /// Number of elements killed by `k`.
    pub fn count_killed_by(&self, k: u32) -> u32 {
        gcd(self.n, k) * gcd(self.m, k)
    }

    /// Human-readable name such as `C2xC6` or `C5`.
    pub fn name(&self) -> String {
        if self.n == 1 {
            format!("C{}", self.m)
        } else {
            format!("C{}xC{}", self.n, self.m)
        }
    }
}

fn two_power(k: u32) -> u32 {
    1 << k.trailing_zeros()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn factor_small(mut k: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= k {
        let mut e = 0;
        while k.is_multiple_of(p) {
            k /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if k > 1 {
        out.push((k, 1));
    }
    out
}

/// Serialized as `nxm`.
impl fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.n, self.m)
    }
}

impl fmt::Debug for GroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for GroupStructure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("group structure must look like nxm, got {s:?}"));
        let (a, b) = s.trim().split_once('x').ok_or_else(bad)?;
        let n = a.parse().map_err(|_| bad())?;
        let m = b.parse().map_err(|_| bad())?;
        GroupStructure::new(n, m)
    }
}
