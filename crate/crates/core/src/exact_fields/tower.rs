use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rational::{rational_sqrt, SquarefreeLabel};
use crate::error::{domain, Error, Result};

/// Largest number of generators a tower may carry.
pub const MAX_GENERATORS: usize = 4;

/// The multiquadratic field `Q(sqrt d_1, ..., sqrt d_k)`.
///
/// Elements are stored on the basis `e_S = prod_{i in S} sqrt d_i`, indexed by
/// subset bitmask, with `e_S * e_T = (prod_{i in S & T} d_i) * e_{S ^ T}`.
pub struct TowerField {
    gens: Vec<SquarefreeLabel>,
    prods: Vec<BigInt>,
    labels: Vec<SquarefreeLabel>,
    // e_S = scale[S] * sqrt(labels[S])
    scale: Vec<BigRational>,
    parent: Option<Arc<TowerField>>,
}

impl TowerField {
    pub fn rationals() -> Arc<TowerField> {
        Arc::new(TowerField {
            gens: Vec::new(),
            prods: vec![BigInt::one()],
            labels: vec![SquarefreeLabel::one()],
            scale: vec![BigRational::one()],
            parent: None,
        })
    }

    /// Builds the tower on the given generators, sorted into canonical order.
    pub fn new(generators: &[SquarefreeLabel]) -> Result<Arc<TowerField>> {
        let mut gens = generators.to_vec();
        gens.sort();
        if gens.iter().any(SquarefreeLabel::is_one) {
            return domain("generator 1 does not extend Q");
        }
        if gens.len() > MAX_GENERATORS {
            return domain(format!("at most {MAX_GENERATORS} generators supported"));
        }
        for mask in 1..(1usize << gens.len()) {
            let label = subset_label(&gens, mask);
            if label.is_one() {
                let picked: Vec<String> = (0..gens.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| gens[i].to_string())
                    .collect();
                return Err(Error::Dependency(format!(
                    "product of {{{}}} is a square",
                    picked.join(", ")
                )));
            }
        }
        let mut field = TowerField::rationals();
        for i in 0..gens.len() {
            field = Arc::new(TowerField::build(&gens[..=i], field));
        }
        Ok(field)
    }

    fn build(gens: &[SquarefreeLabel], parent: Arc<TowerField>) -> TowerField {
        let n = 1usize << gens.len();
        let mut prods = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        let mut scale = Vec::with_capacity(n);
        for mask in 0..n {
            let mut p = BigInt::one();
            for (i, g) in gens.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    p *= g.value();
                }
            }
            let label = subset_label(gens, mask);
            let ratio = BigRational::new(p.clone(), label.value().clone());
            scale.push(rational_sqrt(&ratio).expect("product over its core is a square"));
            prods.push(p);
            labels.push(label);
        }
        TowerField {
            gens: gens.to_vec(),
            prods,
            labels,
            scale,
            parent: Some(parent),
        }
    }

    pub fn quadratic(d: &SquarefreeLabel) -> Result<Arc<TowerField>> {
        TowerField::new(std::slice::from_ref(d))
    }

    /// Smallest tower containing every label, built greedily in canonical order.
    pub fn span<'a>(labels: impl IntoIterator<Item = &'a SquarefreeLabel>) -> Result<Arc<TowerField>> {
        let mut sorted: Vec<SquarefreeLabel> = labels.into_iter().cloned().collect();
        sorted.sort();
        sorted.dedup();
        let mut gens: Vec<SquarefreeLabel> = Vec::new();
        let mut field = TowerField::rationals();
        for d in sorted {
            if !field.contains_sqrt(&d) {
                gens.push(d);
                field = TowerField::new(&gens)?;
            }
        }
        Ok(field)
    }

    /// The tower with one more generator.
    pub fn extend(&self, d: &SquarefreeLabel) -> Result<Arc<TowerField>> {
        let mut gens = self.gens.clone();
        gens.push(d.clone());
        TowerField::new(&gens)
    }

    pub fn generators(&self) -> &[SquarefreeLabel] {
        &self.gens
    }

    pub fn k(&self) -> usize {
        self.gens.len()
    }

    pub fn degree(&self) -> usize {
        1 << self.gens.len()
    }

    pub fn is_rationals(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn parent(&self) -> Option<&Arc<TowerField>> {
        self.parent.as_ref()
    }

    /// Labels of the quadratic subfields.
    pub fn subfield_labels(&self) -> Vec<SquarefreeLabel> {
        let mut v: Vec<SquarefreeLabel> = self.labels[1..].to_vec();
        v.sort();
        v
    }

    pub fn contains_sqrt(&self, d: &SquarefreeLabel) -> bool {
        self.labels.contains(d)
    }

    /// `sqrt d` as `c * e_mask`, when it lies in the field.
    pub fn sqrt_of_label(&self, d: &SquarefreeLabel) -> Option<(usize, BigRational)> {
        let mask = self.labels.iter().position(|l| l == d)?;
        Some((mask, self.scale[mask].recip()))
    }

    fn basis_product(&self, s: usize, t: usize) -> (usize, &BigInt) {
        (s ^ t, &self.prods[s & t])
    }
}

fn subset_label(gens: &[SquarefreeLabel], mask: usize) -> SquarefreeLabel {
    gens.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .fold(SquarefreeLabel::one(), |acc, (_, g)| acc.mul(g))
}

impl PartialEq for TowerField {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for TowerField {}

impl Hash for TowerField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.gens.hash(state);
    }
}

impl fmt::Debug for TowerField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TowerField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "Q");
        }
        let g: Vec<String> = self.gens.iter().map(|d| format!("sqrt({d})")).collect();
        write!(f, "Q({})", g.join(", "))
    }
}

/// An element of a [`TowerField`] in subset-indexed coordinates.
#[derive(Clone)]
pub struct TowerElement {
    field: Arc<TowerField>,
    coords: Vec<BigRational>,
}

impl TowerElement {
    pub fn zero(field: &Arc<TowerField>) -> Self {
        TowerElement {
            field: field.clone(),
            coords: vec![BigRational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<TowerField>) -> Self {
        TowerElement::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &Arc<TowerField>, r: BigRational) -> Self {
        let mut x = TowerElement::zero(field);
        x.coords[0] = r;
        x
    }

    pub fn from_coords(field: &Arc<TowerField>, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != field.degree() {
            return domain(format!(
                "{} coordinates for a field of degree {}",
                coords.len(),
                field.degree()
            ));
        }
        Ok(TowerElement { field: field.clone(), coords })
    }

    /// The basis element `e_mask`.
    pub fn basis(field: &Arc<TowerField>, mask: usize) -> Self {
        let mut x = TowerElement::zero(field);
        x.coords[mask] = BigRational::one();
        x
    }

    /// `sqrt d` as an element, if the field contains it.
    pub fn sqrt_of_label(field: &Arc<TowerField>, d: &SquarefreeLabel) -> Option<Self> {
        let (mask, c) = field.sqrt_of_label(d)?;
        let mut x = TowerElement::zero(field);
        x.coords[mask] = c;
        Some(x)
    }

    pub fn field(&self) -> &Arc<TowerField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coords[0])
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        TowerElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        let mut x = self.clone();
        x.coords[0] += r;
        x
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = TowerElement::one(&self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn check_field(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "tower elements from different fields: {} and {}",
            self.field,
            other.field
        );
    }

    /// Splits `x = a + b sqrt(d_k)` over the parent field.
    fn split(&self) -> (TowerElement, TowerElement) {
        let parent = self.field.parent().expect("split of a rational").clone();
        let half = parent.degree();
        let a = TowerElement { field: parent.clone(), coords: self.coords[..half].to_vec() };
        let b = TowerElement { field: parent, coords: self.coords[half..].to_vec() };
        (a, b)
    }

    fn join(field: &Arc<TowerField>, a: TowerElement, b: TowerElement) -> Self {
        let mut coords = a.coords;
        coords.extend(b.coords);
        TowerElement { field: field.clone(), coords }
    }

    fn top_generator(&self) -> BigRational {
        self.field.gens.last().expect("nonrational field").to_rational()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.field.is_rationals() {
            return Some(TowerElement::from_rational(&self.field, self.coords[0].recip()));
        }
        let (a, b) = self.split();
        let d = self.top_generator();
        let norm = &a.square() - &b.square().scale(&d);
        let ni = norm.inv()?;
        Some(TowerElement::join(&self.field, &a * &ni, -(&b * &ni)))
    }

    /// `self / other`; panics on division by zero.
    pub fn div(&self, other: &Self) -> Self {
        self * &other.inv().expect("division by zero in tower")
    }

    /// A square root in the same field, when one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.field.is_rationals() {
            let r = rational_sqrt(&self.coords[0])?;
            return Some(TowerElement::from_rational(&self.field, r));
        }
        let (a, b) = self.split();
        let d = self.top_generator();
        let parent = a.field.clone();
        if b.is_zero() {
            if let Some(s) = a.sqrt() {
                return Some(TowerElement::join(&self.field, s, TowerElement::zero(&parent)));
            }
            let c = a.scale(&d.recip()).sqrt()?;
            return Some(TowerElement::join(&self.field, TowerElement::zero(&parent), c));
        }
        let n = (&a.square() - &b.square().scale(&d)).sqrt()?;
        let half = BigRational::new(1.into(), 2.into());
        for cand in [&a + &n, &a - &n] {
            let u2 = cand.scale(&half);
            if u2.is_zero() {
                continue;
            }
            if let Some(u) = u2.sqrt() {
                let v = b.div(&u.scale(&BigRational::from_integer(2.into())));
                return Some(TowerElement::join(&self.field, u, v));
            }
        }
        None
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// Image in a larger tower.
    pub fn promote(&self, target: &Arc<TowerField>) -> Result<Self> {
        if &self.field == target {
            return Ok(self.clone());
        }
        Ok(Embedding::new(&self.field, target)?.apply(self))
    }
}

/// Square root in a tower with a witness; `None` when `x` is not a square in `field`.
pub fn is_square_with_witness(x: &TowerElement, field: &Arc<TowerField>) -> Result<Option<TowerElement>> {
    Ok(x.promote(field)?.sqrt())
}

impl PartialEq for TowerElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coords == other.coords
    }
}

impl Eq for TowerElement {}

impl Hash for TowerElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.coords.hash(state);
    }
}

impl<'a> Add<&'a TowerElement> for &'a TowerElement {
    type Output = TowerElement;
    fn add(self, rhs: &TowerElement) -> TowerElement {
        self.check_field(rhs);
        TowerElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a TowerElement> for &'a TowerElement {
    type Output = TowerElement;
    fn sub(self, rhs: &TowerElement) -> TowerElement {
        self.check_field(rhs);
        TowerElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a TowerElement> for &'a TowerElement {
    type Output = TowerElement;
    fn mul(self, rhs: &TowerElement) -> TowerElement {
        self.check_field(rhs);
        let mut out = vec![BigRational::zero(); self.coords.len()];
        for (s, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (t, b) in rhs.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (m, p) = self.field.basis_product(s, t);
                let term = a * b;
                if p.is_one() {
                    out[m] += term;
                } else {
                    out[m] += term * BigRational::from_integer(p.clone());
                }
            }
        }
        TowerElement { field: self.field.clone(), coords: out }
    }
}

impl Neg for TowerElement {
    type Output = TowerElement;
    fn neg(self) -> TowerElement {
        TowerElement {
            field: self.field,
            coords: self.coords.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &TowerElement {
    type Output = TowerElement;
    fn neg(self) -> TowerElement {
        -self.clone()
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (mask, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if mask == 0 {
                terms.push(c.to_string());
                continue;
            }
            let radicals: Vec<String> = (0..self.field.k())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| format!("sqrt({})", self.field.gens[i]))
                .collect();
            let radical = radicals.join("*");
            if c.is_one() {
                terms.push(radical);
            } else if (-c).is_one() {
                terms.push(format!("-{radical}"));
            } else {
                terms.push(format!("({c})*{radical}"));
            }
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut s = terms[0].clone();
        for t in &terms[1..] {
            if let Some(rest) = t.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(t);
            }
        }
        write!(f, "{s}")
    }
}

impl fmt::Debug for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.field)
    }
}

/// The inclusion of one tower into another.
///
/// Every such inclusion sends basis elements to rational multiples of basis
/// elements, so it is stored as a mask map with scalars.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Arc<TowerField>,
    target: Arc<TowerField>,
    images: Vec<(usize, BigRational)>,
}

impl Embedding {
    pub fn new(source: &Arc<TowerField>, target: &Arc<TowerField>) -> Result<Self> {
        let mut gen_images = Vec::with_capacity(source.k());
        for g in &source.gens {
            match target.sqrt_of_label(g) {
                Some(img) => gen_images.push(img),
                None => {
                    return domain(format!("{source} does not embed in {target}: missing sqrt({g})"))
                }
            }
        }
        let mut images: Vec<(usize, BigRational)> = vec![(0, BigRational::one())];
        for s in 1..source.degree() {
            let low = s.trailing_zeros() as usize;
            let (m1, c1) = images[s & (s - 1)].clone();
            let (m2, c2) = &gen_images[low];
            let (m, p) = target.basis_product(m1, *m2);
            images.push((m, c1 * c2 * BigRational::from_integer(p.clone())));
        }
        Ok(Embedding { source: source.clone(), target: target.clone(), images })
    }

    pub fn source(&self) -> &Arc<TowerField> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TowerField> {
        &self.target
    }

    pub fn apply(&self, x: &TowerElement) -> TowerElement {
        assert!(x.field == self.source, "embedding applied to foreign element");
        let mut y = TowerElement::zero(&self.target);
        for (s, c) in x.coords.iter().enumerate() {
            if !c.is_zero() {
                let (m, k) = &self.images[s];
                y.coords[*m] += c * k;
            }
        }
        y
    }

    /// Preimage of `y`, when `y` lies in the source field.
    pub fn restrict(&self, y: &TowerElement) -> Option<TowerElement> {
        assert!(y.field == self.target, "restriction of foreign element");
        let mut hit = vec![false; self.target.degree()];
        let mut x = TowerElement::zero(&self.source);
        for (s, (m, k)) in self.images.iter().enumerate() {
            hit[*m] = true;
            x.coords[s] = &y.coords[*m] / k;
        }
        let outside_zero = y
            .coords
            .iter()
            .zip(&hit)
            .all(|(c, h)| *h || c.is_zero());
        outside_zero.then_some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_fields::rational::{int, rat};

    fn labels(ds: &[i64]) -> Vec<SquarefreeLabel> {
        ds.iter().map(|&d| SquarefreeLabel::from(d)).collect()
    }

    fn elt(f: &Arc<TowerField>, c: &[BigRational]) -> TowerElement {
        TowerElement::from_coords(f, c.to_vec()).unwrap()
    }

    #[test]
    fn canonical_generator_order() {
        let f = TowerField::new(&labels(&[10, -3, -2])).unwrap();
        assert_eq!(f.generators(), labels(&[-2, -3, 10]).as_slice());
        assert_eq!(f.degree(), 8);
    }

    #[test]
    fn dependent_generators_rejected() {
        let e = TowerField::new(&labels(&[-2, -5, 10])).unwrap_err();
        assert!(matches!(e, Error::Dependency(_)));
        assert!(TowerField::new(&labels(&[3, 3])).is_err());
        assert!(TowerField::new(&labels(&[1])).is_err());
    }

    #[test]
    fn span_of_thirty_a_seven_labels() {
        let f = TowerField::span(&labels(&[10, -5, -2, -3])).unwrap();
        assert_eq!(f.degree(), 8);
        assert!(f.contains_sqrt(&SquarefreeLabel::from(10)));
        assert!(f.contains_sqrt(&SquarefreeLabel::from(-30)));
        assert!(!f.contains_sqrt(&SquarefreeLabel::from(30)));
        assert!(!f.contains_sqrt(&SquarefreeLabel::from(7)));
    }

    #[test]
    fn sqrt_examples() {
        let q = TowerField::rationals();
        assert_eq!(TowerElement::from_rational(&q, int(9)).sqrt().unwrap().as_rational(), Some(&int(3)));
        let k2 = TowerField::quadratic(&SquarefreeLabel::from(2)).unwrap();
        let w = elt(&k2, &[int(3), int(2)]).sqrt().unwrap();
        assert_eq!(&w * &w, elt(&k2, &[int(3), int(2)]));
        let k3 = TowerField::quadratic(&SquarefreeLabel::from(3)).unwrap();
        assert!(TowerElement::from_rational(&k3, int(2)).sqrt().is_none());
    }

    #[test]
    fn sqrt_through_a_subfield_label() {
        let f = TowerField::new(&labels(&[-1, 2])).unwrap();
        let minus_two = TowerElement::from_rational(&f, int(-2));
        let w = minus_two.sqrt().unwrap();
        assert_eq!(w.square(), minus_two);
        let x = elt(&f, &[rat(1, 3), int(-2), int(5), rat(7, 2)]);
        let w = x.square().sqrt().unwrap();
        assert_eq!(w.square(), x.square());
    }

    #[test]
    fn inverse_in_depth_three() {
        let f = TowerField::new(&labels(&[-1, 2, -3])).unwrap();
        let x = elt(&f, &[int(1), int(2), int(0), int(-1), rat(1, 2), int(0), int(3), int(1)]);
        assert!((&x * &x.inv().unwrap()).is_one());
        assert!(TowerElement::zero(&f).inv().is_none());
    }

    #[test]
    fn embedding_roundtrip() {
        let small = TowerField::quadratic(&SquarefreeLabel::from(10)).unwrap();
        let big = TowerField::new(&labels(&[-2, -5])).unwrap();
        let emb = Embedding::new(&small, &big).unwrap();
        let x = elt(&small, &[int(1), int(1)]);
        let y = emb.apply(&x);
        assert_eq!(y.square(), emb.apply(&x.square()));
        assert_eq!(emb.restrict(&y), Some(x));
        let outside = TowerElement::sqrt_of_label(&big, &SquarefreeLabel::from(-2)).unwrap();
        assert_eq!(emb.restrict(&outside), None);
        assert!(Embedding::new(&big, &small).is_err());
    }

    #[test]
    fn display_format() {
        let k = TowerField::quadratic(&SquarefreeLabel::from(-1)).unwrap();
        assert_eq!(elt(&k, &[int(1), int(-1)]).to_string(), "1 - sqrt(-1)");
    }
}
