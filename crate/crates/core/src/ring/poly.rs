use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{same_ring, Coeff, Monomial, PolyRing};
use crate::error::{Error, Result};

/// A polynomial in canonical form: nonzero terms sorted in descending order.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Coeff)>,
}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Poly {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Poly {
        Poly::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Coeff) -> Poly {
        Poly::term(ring, Monomial::one(), c)
    }

    pub fn from_i64(ring: &Arc<PolyRing>, c: i64) -> Poly {
        Poly::constant(ring, ring.field.from_i64(c))
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: Coeff) -> Poly {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Poly { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Poly {
        Poly::term(ring, Monomial::var(i, &ring.weights), ring.field.one())
    }

    /// Build from arbitrary terms; combines duplicates and drops zeros.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, Coeff)>) -> Poly {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, Coeff)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = &ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn lead(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    /// Largest weighted degree of a term.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.deg()).max()
    }

    /// Homogeneity flag and common degree. The zero polynomial is homogeneous
    /// without a degree.
    pub fn degree_info(&self) -> (bool, Option<u32>) {
        match self.terms.first() {
            None => (true, None),
            Some((m, _)) => {
                let d = m.deg();
                if self.terms.iter().all(|(t, _)| t.deg() == d) {
                    (true, Some(d))
                } else {
                    (false, None)
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree_info().0
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn hdeg(&self) -> Option<u32> {
        self.degree_info().1
    }

    fn check(&self, other: &Poly) -> Result<()> {
        same_ring(&self.ring, &other.ring)
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.add_scaled(other, &self.ring.field.one(), &Monomial::one()))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.add_scaled(other, &self.ring.field.one().neg(), &Monomial::one()))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return Ok(big.mul_term(m, c));
        }
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), ca.mul(cb)));
            }
        }
        Ok(Poly::from_terms(&self.ring, terms))
    }

    /// `self + c * m * other`, computed by merging.
    pub fn add_scaled(&self, other: &Poly, c: &Coeff, m: &Monomial) -> Poly {
        let order = &self.ring.order;
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            let bm = b[j].0.mul(m);
            match order.cmp(&a[i].0, &bm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, b[j].1.mul(c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = a[i].1.add(&b[j].1.mul(c));
                    if !s.is_zero() {
                        out.push((bm, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            out.push((t.0.mul(m), t.1.mul(c)));
        }
        if c.is_zero() {
            out.retain(|t| !t.1.is_zero());
        }
        Poly { ring: self.ring.clone(), terms: out }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(t, d)| (t.mul(m), d.mul(c))).collect();
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// Substitution homomorphism: variable `i` of this ring goes to `images[i]`.
    pub fn ring_map(&self, target: &Arc<PolyRing>, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.ring.n() {
            return Err(Error::Arity { expected: self.ring.n(), got: images.len() });
        }
        for im in images {
            same_ring(im.ring(), target)?;
        }
        if self.ring.field != target.field {
            return Err(Error::RingMismatch("coefficient fields differ".into()));
        }
        let mut power_cache: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for i in 0..self.ring.n() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                let p = power_cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e))
                    .clone();
                t = &t * &p;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Re-express in another ring with the same variables (possibly a
    /// different order) or more variables appended after these.
    pub fn embed(&self, target: &Arc<PolyRing>) -> Poly {
        let n = self.ring.n();
        assert!(target.n() >= n && target.vars[..n] == self.ring.vars[..]);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (target.monomial(&m.exps(n)), c.clone()))
            .collect();
        Poly::from_terms(target, terms)
    }

    /// Inverse of [`Poly::embed`]; fails if a dropped variable occurs.
    pub fn restrict(&self, target: &Arc<PolyRing>) -> Option<Poly> {
        let n = target.n();
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let e = m.exps(self.ring.n());
            if e[n..].iter().any(|&x| x != 0) {
                return None;
            }
            terms.push((target.monomial(&e[..n]), c.clone()));
        }
        Some(Poly::from_terms(target, terms))
    }

    /// Evaluate at a point of the field.
    pub fn eval(&self, point: &[Coeff]) -> Coeff {
        let mut acc = self.ring.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    t = t.mul(x);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Homogeneous component of the given weighted degree.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.deg() == d).cloned().collect();
        Poly { ring: self.ring.clone(), terms }
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
            && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&self.ring.field.one().neg())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.ring.n();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_repr();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(format!("{abs}"));
            }
            for i in 0..n {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    e => factors.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse::parse_poly;
    use crate::ring::{Field, MonomialOrder};
    use proptest::prelude::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::standard(Field::Prime(32003), &["x", "y", "z"])
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Poly {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let prod = &p(&r, "x+y") * &p(&r, "x-y");
        assert_eq!(prod, p(&r, "x^2-y^2"));
        assert_eq!(prod.to_string(), "x^2 - y^2");
    }

    #[test]
    fn adding_zero() {
        let r = ring();
        assert_eq!(&p(&r, "x") + &Poly::zero(&r), p(&r, "x"));
    }

    #[test]
    fn modular_reduction_in_f5() {
        let r = PolyRing::standard(Field::Prime(5), &["x"]);
        assert_eq!(&p(&r, "3x") + &p(&r, "4x"), p(&r, "2x"));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let r = ring();
        let s = PolyRing::standard(Field::Prime(5), &["x"]);
        assert!(p(&r, "x").checked_add(&p(&s, "x")).is_err());
    }

    #[test]
    fn ring_map_examples() {
        let s = PolyRing::standard(Field::Prime(32003), &["x", "y", "T1", "T2"]);
        let t = PolyRing::standard(Field::Prime(32003), &["x", "y"]);
        let images = vec![p(&t, "x"), p(&t, "y"), p(&t, "x"), p(&t, "y")];
        assert_eq!(p(&s, "T1*T2").ring_map(&t, &images).unwrap(), p(&t, "x*y"));
        // gamma_1 = x*T1 recovers a_1 = x^2
        assert_eq!(p(&s, "x*T1").ring_map(&t, &images).unwrap(), p(&t, "x^2"));
        let r = ring();
        let id = vec![p(&r, "x"), p(&r, "y"), p(&r, "z")];
        let q = p(&r, "x^3 - 2*x*y*z + 7");
        assert_eq!(q.ring_map(&r, &id).unwrap(), q);
        assert!(q.ring_map(&r, &id[..2]).is_err());
    }

    #[test]
    fn degree_info_examples() {
        let r = ring();
        assert_eq!(p(&r, "x^2+x*y").degree_info(), (true, Some(2)));
        assert_eq!(p(&r, "x+x^2").degree_info(), (false, None));
        assert_eq!(Poly::zero(&r).degree_info(), (true, None));
    }

    #[test]
    fn lex_sorting() {
        let r = PolyRing::new(Field::Rationals, &["x", "y"], MonomialOrder::Lex).unwrap();
        let q = p(&r, "y^5 + x");
        assert_eq!(q.to_string(), "x + y^5");
    }

    fn arb_poly() -> impl Strategy<Value = Vec<(u32, u32, u32, i64)>> {
        prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -5i64..6), 0..5)
    }

    fn build(r: &Arc<PolyRing>, t: &[(u32, u32, u32, i64)]) -> Poly {
        Poly::from_terms(
            r,
            t.iter()
                .map(|&(a, b, c, k)| (r.monomial(&[a, b, c]), r.field.from_i64(k)))
                .collect(),
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            for r in [ring(), PolyRing::standard(Field::Rationals, &["x", "y", "z"])] {
                let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert!((&a - &a).is_zero());
            }
        }

        #[test]
        fn ring_map_is_multiplicative(a in arb_poly(), b in arb_poly(), imgs in prop::collection::vec(arb_poly(), 3)) {
            let r = ring();
            let (a, b) = (build(&r, &a), build(&r, &b));
            let images: Vec<Poly> = imgs.iter().map(|t| build(&r, t)).collect();
            let lhs = (&a * &b).ring_map(&r, &images).unwrap();
            let rhs = &a.ring_map(&r, &images).unwrap() * &b.ring_map(&r, &images).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn print_parse_round_trip(a in arb_poly()) {
            let r = PolyRing::standard(Field::Rationals, &["x", "y", "z"]);
            let q = build(&r, &a);
            prop_assert_eq!(parse_poly(&r, &q.to_string()).unwrap(), q);
        }
    }
}
