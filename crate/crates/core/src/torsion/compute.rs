use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::divpoly::division_polynomial;
use super::group::GroupStructure;
use super::halving::Halver;
use crate::curve::{quadratic_twist, to_b_form, twist_point_to_curve, Curve, Isomorphism, Point, MAZUR_BOUND};
use crate::error::{domain, inconsistent, Result};
use crate::exact_fields::{rational_roots, rational_sqrt, SquarefreeLabel, TowerField};
use crate::growth::ClassificationTables;

/// Cap on the size of the 2-primary part over the rationals and quadratic fields.
const QUADRATIC_TWO_CAP: usize = 16;
/// Cap on the size of the 2-primary part over towers.
const TOWER_TWO_CAP: usize = 64;
const FILTER_PRIMES: usize = 12;

/// A torsion subgroup together with generators realizing its structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionData {
    pub structure: GroupStructure,
    /// Empty for the trivial group, one point when cyclic, else orders `(n, m)`.
    pub generators: Vec<Point>,
    pub field: Arc<TowerField>,
}

impl TorsionData {
    /// Checks generator orders and, for groups of order at most 64, that the
    /// generated subgroup has the stated size.
    pub fn verify(&self, e: &Curve) -> Result<()> {
        let (n, m) = (self.structure.n(), self.structure.m());
        let want: Vec<u32> = match (n, m) {
            (1, 1) => vec![],
            (1, m) => vec![m],
            (n, m) => vec![n, m],
        };
        if want.len() != self.generators.len() {
            return inconsistent(format!("{} generators for {:?}", self.generators.len(), self.structure));
        }
        for (g, &o) in self.generators.iter().zip(&want) {
            if !e.contains(g) || g.field().is_some_and(|f| f != &self.field) {
                return inconsistent(format!("generator {g} not on the curve over {}", self.field));
            }
            if e.order(g, o)? != Some(o) {
                return inconsistent(format!("generator {g} does not have order {o}"));
            }
        }
        if n * m <= 64 && want.len() == 2 {
            let mut seen = HashSet::new();
            let mut row = Point::Infinity;
            for _ in 0..n {
                let mut p = row.clone();
                for _ in 0..m {
                    seen.insert(p.clone());
                    p = e.add(&p, &self.generators[1])?;
                }
                row = e.add(&row, &self.generators[0])?;
            }
            if seen.len() != (n * m) as usize {
                return inconsistent(format!("generators span {} points, not {}", seen.len(), n * m));
            }
        }
        Ok(())
    }
}

/// The odd part of the rational torsion of `E` or of a quadratic twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddPart {
    pub label: SquarefreeLabel,
    /// Cyclic order, one of 1, 3, 5, 7, 9.
    pub order: u32,
    /// A generator on `E` itself for label 1, on the twist otherwise.
    pub generator: Point,
}

struct TwoPrimary {
    n: u32,
    m: u32,
    big: Point,
    small: Point,
    points: Vec<(Point, u32)>,
}

/// Per-curve torsion engine caching its rational twists' odd parts.
pub struct TorsionContext {
    curve: Curve,
    b: Curve,
    to_b: Isomorphism,
    odd: Mutex<HashMap<SquarefreeLabel, OddPart>>,
    over_q: OnceLock<TorsionData>,
    tables: ClassificationTables,
}

impl TorsionContext {
    pub fn new(e: &Curve) -> Result<Self> {
        let (b, to_b) = to_b_form(e)?;
        Ok(TorsionContext {
            curve: e.clone(),
            b,
            to_b,
            odd: Mutex::new(HashMap::new()),
            over_q: OnceLock::new(),
            tables: ClassificationTables,
        })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    /// Odd part of `E(Q)` for label 1, of `E_d(Q)` otherwise.
    pub fn odd_part(&self, d: &SquarefreeLabel) -> Result<OddPart> {
        if let Some(hit) = self.odd.lock().unwrap().get(d) {
            return Ok(hit.clone());
        }
        let model = if d.is_one() { self.curve.clone() } else { quadratic_twist(&self.curve, d)? };
        let (order, generator) = odd_torsion_rational(&model)?;
        let part = OddPart { label: d.clone(), order, generator };
        self.odd.lock().unwrap().insert(d.clone(), part.clone());
        Ok(part)
    }

    fn two_primary(&self, field: &Arc<TowerField>, cap: usize) -> Result<TwoPrimary> {
        let z = Point::Infinity;
        let roots = crate::exact_fields::roots_in_tower(&self.b.rhs_cubic(), field)?;
        if roots.is_empty() {
            return Ok(TwoPrimary { n: 1, m: 1, big: z.clone(), small: z, points: Vec::new() });
        }
        let halver = Halver::new(&self.b, field)?;
        let zero = crate::exact_fields::TowerElement::zero(field);
        let mut points: Vec<(Point, u32)> =
            roots.into_iter().map(|e| (Point::Affine { x: e, y: zero.clone() }, 2)).collect();
        let mut seen: HashSet<Point> = points.iter().map(|(p, _)| p.clone()).collect();
        let two_torsion = points.len();
        let mut frontier = points.clone();
        while let Some((p, o)) = frontier.pop() {
            for q in halver.halves(&p)? {
                if seen.insert(q.clone()) {
                    points.push((q.clone(), 2 * o));
                    frontier.push((q, 2 * o));
                    if points.len() + 1 > cap {
                        return inconsistent(format!("2-primary torsion over {} exceeds {cap}", halver.field()));
                    }
                }
            }
        }
        let size = (points.len() + 1) as u32;
        let (big, m) = points.iter().max_by_key(|(_, o)| *o).cloned().unwrap();
        if two_torsion == 1 {
            if size != m {
                return inconsistent("cyclic 2-primary part of the wrong size");
            }
            return Ok(TwoPrimary { n: 1, m, big, small: Point::Infinity, points });
        }
        let n = size / m;
        let big_two = self.b.mul(i64::from(m / 2), &big)?;
        let mut small = None;
        for (q, o) in &points {
            if *o == n && self.b.mul(i64::from(n / 2), q)? != big_two {
                small = Some(q.clone());
                break;
            }
        }
        let Some(small) = small else {
            return inconsistent("no complement to the largest cyclic 2-subgroup");
        };
        Ok(TwoPrimary { n, m, big, small, points })
    }

    /// Rational points of 2-power order with their orders, on `E`.
    pub fn rational_two_primary_points(&self) -> Result<Vec<(Point, u32)>> {
        let q = TowerField::rationals();
        let back = self.to_b.inverse();
        let two = self.two_primary(&q, QUADRATIC_TWO_CAP)?;
        Ok(two.points.iter().map(|(p, o)| (back.map_point(p), *o)).collect())
    }

    fn assemble(
        &self,
        field: &Arc<TowerField>,
        two: &TwoPrimary,
        odd: &[OddPart],
    ) -> Result<TorsionData> {
        let back = self.to_b.inverse();
        let mut comps: Vec<(Point, u32)> = Vec::new();
        comps.push((back.map_point(&two.big), two.m));
        comps.push((back.map_point(&two.small), two.n));
        for part in odd.iter().filter(|p| p.order > 1) {
            let g = if part.label.is_one() {
                part.generator.promote(field)?
            } else {
                twist_point_to_curve(&self.curve, &part.label, &part.generator, field)?
            };
            comps.push((g, part.order));
        }
        let orders: Vec<u32> = comps.iter().map(|(_, o)| *o).collect();
        let structure = GroupStructure::from_cyclic_factors(&orders)?;
        let mut by_prime: HashMap<u32, Vec<(Point, u32)>> = HashMap::new();
        for (p, o) in comps.into_iter().filter(|(_, o)| *o > 1) {
            let prime = smallest_prime(o);
            by_prime.entry(prime).or_default().push((p, o));
        }
        let mut gens = [Point::Infinity, Point::Infinity];
        for (_, mut list) in by_prime {
            list.sort_by_key(|p| std::cmp::Reverse(p.1));
            for (slot, (p, _)) in list.into_iter().enumerate() {
                let idx = 1 - slot;
                gens[idx] = self.curve.add(&gens[idx], &p.promote(field)?)?;
            }
        }
        let generators = match (structure.n(), structure.m()) {
            (1, 1) => vec![],
            (1, _) => vec![gens[1].clone()],
            _ => gens.to_vec(),
        };
        Ok(TorsionData { structure, generators, field: field.clone() })
    }

    /// `E(Q)_tors`.
    pub fn over_q(&self) -> Result<TorsionData> {
        if let Some(t) = self.over_q.get() {
            return Ok(t.clone());
        }
        let q = TowerField::rationals();
        let two = self.two_primary(&q, QUADRATIC_TWO_CAP)?;
        let odd = self.odd_part(&SquarefreeLabel::one())?;
        let data = self.assemble(&q, &two, &[odd])?;
        if !self.tables.phi1().contains(&data.structure) {
            return inconsistent(format!("rational torsion {:?} outside the rational list", data.structure));
        }
        Ok(self.over_q.get_or_init(|| data).clone())
    }

    /// `E(Q(sqrt d))_tors`.
    pub fn over_quadratic(&self, d: &SquarefreeLabel) -> Result<TorsionData> {
        if d.is_one() {
            return domain("quadratic field with label 1");
        }
        let g = self.over_q()?.structure;
        let k = TowerField::quadratic(d)?;
        let two = self.two_primary(&k, QUADRATIC_TWO_CAP)?;
        let odd = [self.odd_part(&SquarefreeLabel::one())?, self.odd_part(d)?];
        let data = self.assemble(&k, &two, &odd)?;
        let h = data.structure;
        if !self.tables.phi_q2().contains(&h) || !self.tables.phi_q2_of(&g).contains(&h) {
            return inconsistent(format!("torsion {h:?} over Q(sqrt {d}) impossible for G = {g:?}"));
        }
        Ok(data)
    }

    /// `E(F)_tors` for a multiquadratic tower `F`.
    pub fn over_tower(&self, field: &Arc<TowerField>) -> Result<TorsionData> {
        if field.is_rationals() {
            return self.over_q();
        }
        let two = self.two_primary(field, TOWER_TWO_CAP)?;
        let mut odd = vec![self.odd_part(&SquarefreeLabel::one())?];
        for d in field.subfield_labels() {
            odd.push(self.odd_part(&d)?);
        }
        let data = self.assemble(field, &two, &odd)?;
        if !self.tables.embeds_in_phi_q_2inf(&data.structure) {
            return inconsistent(format!("torsion {:?} over {field} fits no group over Q(2^inf)", data.structure));
        }
        Ok(data)
    }
}

fn smallest_prime(k: u32) -> u32 {
    (2..=k).find(|p| k.is_multiple_of(*p)).unwrap_or(k)
}

/// Point counts of good reductions, used to rule out odd torsion primes.
struct ReductionFilter {
    counts: Vec<(u64, u64)>,
}

impl ReductionFilter {
    fn new(b: &Curve) -> ReductionFilter {
        let coeffs = [b.a2(), b.a4(), b.a6()];
        let disc = b.disc();
        let mut counts = Vec::new();
        let mut p = 3u64;
        while counts.len() < FILTER_PRIMES && p < 400 {
            if is_small_prime(p) {
                let pb = BigInt::from(p);
                let integral = coeffs.iter().all(|c| !c.denom().is_multiple_of(&pb));
                let good = !disc.numer().is_multiple_of(&pb) && !disc.denom().is_multiple_of(&pb);
                if integral && good {
                    let red: Vec<u64> = coeffs.iter().map(|c| reduce_rational(c, p)).collect();
                    counts.push((p, count_points(red[0], red[1], red[2], p)));
                }
            }
            p += 2;
        }
        ReductionFilter { counts }
    }

    /// Whether a rational point of order `l` is compatible with the counts.
    fn allows(&self, l: u64) -> bool {
        let rad = smallest_prime(l as u32) as u64;
        self.counts
            .iter()
            .filter(|(p, _)| *p != rad)
            .all(|(_, n)| n % l == 0)
    }
}

fn is_small_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

fn reduce_rational(c: &BigRational, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let n = c.numer().mod_floor(&pb).to_u64().unwrap();
    let d = c.denom().mod_floor(&pb).to_u64().unwrap();
    n * pow_mod(d, p - 2, p) % p
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// `#E(F_p)` for `y^2 = x^3 + a2 x^2 + a4 x + a6`, `p` an odd prime.
fn count_points(a2: u64, a4: u64, a6: u64, p: u64) -> u64 {
    let mut total = 1;
    for x in 0..p {
        let v = ((x + a2) % p * x % p + a4) % p * x % p;
        let v = (v + a6) % p;
        total += if v == 0 {
            1
        } else if pow_mod(v, (p - 1) / 2, p) == 1 {
            2
        } else {
            0
        };
    }
    total
}

/// Points of exact order `l` on a b-form with rational abscissa among the roots of `psi_l`.
fn rational_points_of_order(b: &Curve, l: u32) -> Result<Vec<Point>> {
    let psi = division_polynomial(b, l)?;
    let cubic = b.rhs_cubic();
    let mut out = Vec::new();
    for x0 in rational_roots(&psi)? {
        let v = cubic.eval(&x0);
        if v.is_zero() {
            continue;
        }
        if let Some(y) = rational_sqrt(&v) {
            for yy in [y.clone(), -y] {
                let p = Point::rational(x0.clone(), yy);
                if b.order(&p, l)? == Some(l) {
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}

/// Odd part of `model(Q)_tors` and a generator on `model`.
fn odd_torsion_rational(model: &Curve) -> Result<(u32, Point)> {
    let (b, iso) = to_b_form(model)?;
    let filter = ReductionFilter::new(&b);
    let mut gens: Vec<(Point, u32)> = Vec::new();
    for l in [3u32, 5, 7] {
        if !filter.allows(u64::from(l)) {
            continue;
        }
        let pts = rational_points_of_order(&b, l)?;
        if pts.is_empty() {
            continue;
        }
        if pts.len() as u32 != l - 1 {
            return inconsistent(format!("{} rational points of order {l}", pts.len()));
        }
        let mut g = (pts[0].clone(), l);
        if l == 3 && filter.allows(9) {
            let nine = rational_points_of_order(&b, 9)?;
            match nine.len() {
                0 => {}
                6 => g = (nine[0].clone(), 9),
                k => return inconsistent(format!("{k} rational points of order 9")),
            }
        }
        gens.push(g);
    }
    let mut gen = Point::Infinity;
    let mut order = 1;
    for (p, o) in gens {
        gen = b.add(&gen, &p)?;
        order *= o;
    }
    if b.order(&gen, MAZUR_BOUND)? != Some(order) {
        return inconsistent(format!("odd generator of order other than {order}"));
    }
    Ok((order, iso.inverse().map_point(&gen)))
}

/// `E(Q)_tors` with generators.
pub fn torsion_over_q(e: &Curve) -> Result<TorsionData> {
    TorsionContext::new(e)?.over_q()
}

/// `E(Q(sqrt d))_tors` with generators.
pub fn torsion_over_quadratic(e: &Curve, d: &SquarefreeLabel) -> Result<TorsionData> {
    TorsionContext::new(e)?.over_quadratic(d)
}

/// `E(F)_tors` with generators.
pub fn torsion_over_tower(e: &Curve, field: &Arc<TowerField>) -> Result<TorsionData> {
    TorsionContext::new(e)?.over_tower(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(coeffs: [i64; 5], want: GroupStructure) {
        let e = Curve::from_ints(coeffs).unwrap();
        let t = torsion_over_q(&e).unwrap();
        assert_eq!(t.structure, want, "{coeffs:?}");
        t.verify(&e).unwrap();
    }

    #[test]
    fn rational_examples() {
        check([0, 0, 0, 0, 1], GroupStructure::cyclic(6));
        check([0, 0, 0, -1, 0], GroupStructure::of(2, 2));
        check([0, 0, 0, 0, 4], GroupStructure::cyclic(3));
        check([0, -1, 1, 0, 0], GroupStructure::cyclic(5));
        check([1, -1, 1, -3, 3], GroupStructure::cyclic(7));
        check([1, -1, 1, -1, -14], GroupStructure::cyclic(4));
        check([1, 1, 1, 35, -28], GroupStructure::cyclic(8));
        check([1, 0, 0, -45, 81], GroupStructure::cyclic(10));
        check([1, -1, 0, -123, -667], GroupStructure::trivial());
        check([1, 1, 1, -10, -10], GroupStructure::of(2, 4));
        check([1, -1, 1, -3002, 63929], GroupStructure::of(2, 6));
    }

    #[test]
    fn nine_and_twelve() {
        // 54b3
        check([1, -1, 1, -14, 29], GroupStructure::cyclic(9));
        check([1, -1, 1, -122, 1721], GroupStructure::cyclic(12));
    }

    #[test]
    fn quadratic_examples() {
        let e = Curve::from_ints([0, 0, 0, 0, -27]).unwrap();
        let t = torsion_over_quadratic(&e, &(-3).into()).unwrap();
        assert_eq!(t.structure, GroupStructure::of(2, 6));
        t.verify(&e).unwrap();
        let e = Curve::from_ints([0, 1, 1, -769, -8470]).unwrap();
        let ctx = TorsionContext::new(&e).unwrap();
        assert_eq!(ctx.over_quadratic(&(-3).into()).unwrap().structure, GroupStructure::cyclic(3));
        assert_eq!(ctx.over_quadratic(&5.into()).unwrap().structure, GroupStructure::trivial());
        assert!(ctx.over_quadratic(&SquarefreeLabel::one()).is_err());
    }

    #[test]
    fn tower_examples() {
        let e = Curve::from_ints([1, 1, 0, 220, 2192]).unwrap();
        let f = TowerField::new(&[(-7).into(), 21.into()]).unwrap();
        let t = torsion_over_tower(&e, &f).unwrap();
        assert_eq!(t.structure, GroupStructure::of(6, 6));
        t.verify(&e).unwrap();
        let q = TowerField::rationals();
        assert_eq!(torsion_over_tower(&e, &q).unwrap(), torsion_over_q(&e).unwrap());
    }
}
