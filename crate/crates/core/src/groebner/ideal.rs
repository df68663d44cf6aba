//! Ideals of a polynomial ring and the classical ideal-theoretic operations.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::{
    component_poly, divide_with_cofactors, groebner_basis, kernel_mod, normal_form,
    poly_to_terms, GradedGb, Term,
};
use crate::error::{Error, Result};
use crate::ring::{same_ring, MonomialOrder, Poly, PolyRing};

/// An ideal given by generators, with a lazily computed reduced Gröbner basis
/// for the ring's order.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Poly>) -> Ideal {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring: ring.clone(), gens, gb: OnceLock::new() }
    }

    pub fn checked(ring: &Arc<PolyRing>, gens: Vec<Poly>) -> Result<Ideal> {
        for g in &gens {
            same_ring(g.ring(), ring)?;
        }
        Ok(Ideal::new(ring, gens))
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, vec![Poly::one(ring)])
    }

    /// The ideal generated by the variables with the given indices.
    pub fn of_vars(ring: &Arc<PolyRing>, idx: &[usize]) -> Ideal {
        Ideal::new(ring, idx.iter().map(|&i| Poly::var(ring, i)).collect())
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Reduced Gröbner basis, sorted ascending by leading monomial.
    pub fn gb(&self) -> &[Poly] {
        self.gb.get_or_init(|| {
            let gens: Vec<Vec<Term>> = self.gens.iter().map(|g| poly_to_terms(g, 0)).collect();
            groebner_basis(&self.ring, &[0], &gens)
                .into_iter()
                .map(|v| component_poly(&self.ring, &v, 0))
                .collect()
        })
    }

    /// Gröbner basis with respect to another order on the same variables,
    /// returned in a ring carrying that order.
    pub fn gb_in_order(&self, order: MonomialOrder) -> (Arc<PolyRing>, Vec<Poly>) {
        let r2 = self.ring.with_order(order);
        let moved = Ideal::new(&r2, self.gens.iter().map(|g| g.embed(&r2)).collect());
        let basis = moved.gb().to_vec();
        (r2, basis)
    }

    pub fn leading_monomials(&self) -> Vec<crate::ring::Monomial> {
        self.gb().iter().map(|g| g.lead_monomial().unwrap()).collect()
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        let basis: Vec<Vec<Term>> = self.gb().iter().map(|g| poly_to_terms(g, 0)).collect();
        let r = normal_form(&self.ring, &[0], &basis, &poly_to_terms(p, 0));
        component_poly(&self.ring, &r, 0)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        p.is_zero() || self.normal_form(p).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality by mutual containment.
    pub fn equals(&self, other: &Ideal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_unit(&self) -> bool {
        self.gb().iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Cofactors over the original generators and the remainder.
    pub fn divide_with_cofactors(&self, p: &Poly) -> (Vec<Poly>, Poly) {
        let gens: Vec<Vec<Term>> = self.gens.iter().map(|g| poly_to_terms(g, 0)).collect();
        let degs: Vec<i64> = self.gens.iter().map(|g| g.max_degree().unwrap() as i64).collect();
        let (cof, rem) = divide_with_cofactors(&self.ring, &[0], &gens, &degs, &poly_to_terms(p, 0));
        (cof, component_poly(&self.ring, &rem, 0))
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        Ideal::new(&self.ring, g).minimalized()
    }

    pub fn power(&self, k: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    pub fn mul_poly(&self, f: &Poly) -> Ideal {
        Ideal::new(&self.ring, self.gens.iter().map(|g| g * f).collect())
    }

    /// `(self : b)` for a single element, via syzygies of `(b, gens)`.
    pub fn colon_elem(&self, b: &Poly) -> Ideal {
        if b.is_zero() {
            return Ideal::unit(&self.ring);
        }
        let n: Vec<Vec<Term>> = self.gens.iter().map(|g| poly_to_terms(g, 0)).collect();
        let deg = b.max_degree().unwrap() as i64;
        let k = kernel_mod(&self.ring, &[0], &[poly_to_terms(b, 0)], &[deg], &n);
        let gens = k.iter().map(|v| component_poly(&self.ring, v, 0)).collect();
        Ideal::new(&self.ring, gens).minimalized()
    }

    /// `(self : other) = ∩_b (self : b)` over the generators of `other`.
    pub fn colon(&self, other: &Ideal) -> Ideal {
        let mut acc: Option<Ideal> = None;
        for b in &other.gens {
            let c = self.colon_elem(b);
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c),
            });
        }
        acc.unwrap_or_else(|| Ideal::unit(&self.ring))
    }

    /// Intersection through one auxiliary variable `t` of weight zero:
    /// eliminate `t` from `t*A + (1-t)*B`.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        if self.is_zero() || other.is_zero() {
            return Ideal::zero(&self.ring);
        }
        if self.is_unit() {
            return other.clone();
        }
        if other.is_unit() {
            return self.clone();
        }
        let n = self.ring.n();
        let t = self.ring.fresh_name("t");
        let ext = self
            .ring
            .extend(&[t], &[0], MonomialOrder::Elimination(1 << n))
            .expect("room for one more variable");
        let tv = Poly::var(&ext, n);
        let one_minus_t = &Poly::one(&ext) - &tv;
        let mut gens = Vec::new();
        for a in &self.gens {
            gens.push(&a.embed(&ext) * &tv);
        }
        for b in &other.gens {
            gens.push(&b.embed(&ext) * &one_minus_t);
        }
        let big = Ideal::new(&ext, gens);
        let kept: Vec<Poly> = big
            .gb()
            .iter()
            .filter_map(|g| g.restrict(&self.ring))
            .collect();
        Ideal::new(&self.ring, kept).minimalized()
    }

    /// `self : other^∞`, by iterated colon until the chain stabilises.
    pub fn saturate(&self, other: &Ideal) -> Ideal {
        let mut cur = self.clone();
        loop {
            let next = cur.colon(other);
            if cur.contains_ideal(&next) {
                return cur;
            }
            cur = next;
        }
    }

    /// Intersection with the subring in the variables outside `mask`.
    pub fn eliminate(&self, mask: u32) -> Ideal {
        let (r2, basis) = self.gb_in_order(MonomialOrder::Elimination(mask));
        let kept: Vec<Poly> = basis
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.support() & mask == 0))
            .map(|g| g.embed(&self.ring))
            .collect();
        let _ = r2;
        Ideal::new(&self.ring, kept)
    }

    /// `f ∈ √A` via Rabinowitsch: `1 ∈ (A, 1 - t f)`.
    pub fn radical_contains(&self, f: &Poly) -> bool {
        if f.is_zero() {
            return true;
        }
        let n = self.ring.n();
        let t = self.ring.fresh_name("t");
        let ext = self
            .ring
            .extend(&[t], &[1], MonomialOrder::Grevlex)
            .expect("room for one more variable");
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.embed(&ext)).collect();
        let tf = &Poly::var(&ext, n) * &f.embed(&ext);
        gens.push(&Poly::one(&ext) - &tf);
        Ideal::new(&ext, gens).is_unit()
    }

    /// Krull dimension of `R/A`; `-1` for the unit ideal.
    pub fn krull_dim(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let n = self.ring.n();
        let supports: Vec<u32> = self.leading_monomials().iter().map(|m| m.support()).collect();
        max_independent_set(n, &supports) as i64
    }

    /// `n - dim(R/A)`; `n + 1` for the unit ideal.
    pub fn height(&self) -> i64 {
        self.ring.n() as i64 - self.krull_dim()
    }

    /// Minimal homogeneous generators, chosen greedily degree by degree.
    pub fn min_gens_graded(&self) -> Vec<Poly> {
        let mut gens: Vec<Poly> = self.gens.clone();
        gens.sort_by(cmp_gen);
        let mut ggb = GradedGb::new(self.ring.clone(), vec![0]);
        let mut kept = Vec::new();
        for g in gens {
            let d = g.hdeg().expect("homogeneous generators") as i64;
            let v = poly_to_terms(&g, 0);
            if !ggb.contains(&v, d) {
                ggb.add(v);
                kept.push(g.monic());
            }
        }
        kept
    }

    /// Same ideal with minimal generators when homogeneous, otherwise the
    /// reduced Gröbner basis.
    pub fn minimalized(&self) -> Ideal {
        let gens = if self.is_homogeneous() {
            self.min_gens_graded()
        } else {
            self.gb().to_vec()
        };
        Ideal::new(&self.ring, gens)
    }

    /// Generators sorted by degree and then descending leading term, for
    /// reporting.
    pub fn sorted_gens(&self) -> Vec<Poly> {
        let mut g: Vec<Poly> = self.gens.iter().map(|p| p.monic()).collect();
        g.sort_by(cmp_gen);
        g.dedup();
        g
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.sorted_gens().iter().map(|p| p.to_string()).collect()
    }

    /// Reject ideals from different rings.
    pub fn check_ring(&self, other: &Ideal) -> Result<()> {
        same_ring(&self.ring, &other.ring)
    }

    pub fn require_homogeneous(&self) -> Result<()> {
        if self.is_homogeneous() {
            Ok(())
        } else {
            Err(Error::Precondition("generators must be homogeneous".into()))
        }
    }
}

fn cmp_gen(a: &Poly, b: &Poly) -> Ordering {
    let da = a.max_degree().unwrap_or(0);
    let db = b.max_degree().unwrap_or(0);
    da.cmp(&db).then_with(|| {
        let ord = &a.ring().order;
        for (x, y) in a.terms().iter().zip(b.terms().iter()) {
            match ord.cmp(&y.0, &x.0) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        a.len().cmp(&b.len())
    })
}

/// Size of a largest set of variables containing no support of a leading
/// monomial.
fn max_independent_set(n: usize, supports: &[u32]) -> usize {
    fn rec(i: usize, n: usize, chosen: u32, size: usize, supports: &[u32], best: &mut usize) {
        if size + (n - i) <= *best {
            return;
        }
        if i == n {
            *best = size;
            return;
        }
        let with = chosen | (1 << i);
        if !supports.iter().any(|&s| s & !with == 0) {
            rec(i + 1, n, with, size + 1, supports, best);
        }
        rec(i + 1, n, chosen, size, supports, best);
    }
    let mut best = 0;
    rec(0, n, 0, 0, supports, &mut best);
    best
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.to_strings();
        write!(f, "({})", g.join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
