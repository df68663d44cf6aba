//! Buchberger's algorithm over sparse vectors of a graded free module.
//!
//! Ideals are rank-one modules. Kernels, liftings and colons are all obtained
//! from one trick: generators are augmented by tag components living in a
//! lower block of the order, and the tag parts of the resulting basis record
//! how each element was built.

mod engine;
pub mod ideal;

use std::cmp::Ordering;
use std::cell::Cell;
use std::sync::Arc;

pub use engine::{GradedGb, GbEngine};

use crate::ring::{Coeff, Monomial, MonomialOrder, Poly, PolyRing};

/// One term `coeff * mon * e_comp` of a module element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mon: Monomial,
    pub comp: u32,
    pub coeff: Coeff,
}

/// Order on terms of a free module with twisted generators.
#[derive(Clone, Debug)]
pub struct ModuleOrder {
    pub mono: MonomialOrder,
    pub twists: Vec<i64>,
    pub blocks: Vec<u8>,
    pub degree_first: bool,
}

impl ModuleOrder {
    pub fn new(mono: MonomialOrder, twists: Vec<i64>) -> ModuleOrder {
        let blocks = vec![0; twists.len()];
        ModuleOrder { mono, twists, blocks, degree_first: true }
    }

    #[inline]
    pub fn tdeg(&self, m: &Monomial, comp: u32) -> i64 {
        m.deg() as i64 + self.twists[comp as usize]
    }

    #[inline]
    pub fn cmp(&self, am: &Monomial, ac: u32, bm: &Monomial, bc: u32) -> Ordering {
        if self.degree_first {
            let o = self.tdeg(am, ac).cmp(&self.tdeg(bm, bc));
            if o != Ordering::Equal {
                return o;
            }
        }
        let (ba, bb) = (self.blocks[ac as usize], self.blocks[bc as usize]);
        if ba != bb {
            return bb.cmp(&ba);
        }
        match self.mono.cmp(am, bm) {
            Ordering::Equal => bc.cmp(&ac),
            o => o,
        }
    }

    #[inline]
    pub fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp(&a.mon, a.comp, &b.mon, b.comp)
    }

    pub fn sort(&self, v: &mut [Term]) {
        v.sort_by(|a, b| self.cmp_terms(b, a));
    }

    /// Whether every vector is homogeneous with respect to the twists.
    pub fn all_homogeneous(&self, vs: &[Vec<Term>]) -> bool {
        vs.iter().all(|v| match v.first() {
            None => true,
            Some(t) => {
                let d = self.tdeg(&t.mon, t.comp);
                v.iter().all(|s| self.tdeg(&s.mon, s.comp) == d)
            }
        })
    }
}

/// Storage order used outside the engine: by component, then descending
/// monomial in the ring order.
pub fn storage_sort(ring: &PolyRing, v: &mut [Term]) {
    v.sort_by(|a, b| a.comp.cmp(&b.comp).then_with(|| ring.order.cmp(&b.mon, &a.mon)));
}

/// Combine duplicate terms and drop zeros, returning storage order.
pub fn normalize_terms(ring: &PolyRing, mut v: Vec<Term>) -> Vec<Term> {
    storage_sort(ring, &mut v);
    let mut out: Vec<Term> = Vec::with_capacity(v.len());
    for t in v {
        if let Some(last) = out.last_mut() {
            if last.comp == t.comp && last.mon == t.mon {
                last.coeff = last.coeff.add(&t.coeff);
                continue;
            }
        }
        out.push(t);
    }
    out.retain(|t| !t.coeff.is_zero());
    out
}

pub fn poly_to_terms(p: &Poly, comp: u32) -> Vec<Term> {
    p.terms()
        .iter()
        .map(|(m, c)| Term { mon: *m, comp, coeff: c.clone() })
        .collect()
}

/// Extract component `comp` of a vector in storage order as a polynomial.
pub fn component_poly(ring: &Arc<PolyRing>, v: &[Term], comp: u32) -> Poly {
    let terms: Vec<(Monomial, Coeff)> = v
        .iter()
        .filter(|t| t.comp == comp)
        .map(|t| (t.mon, t.coeff.clone()))
        .collect();
    Poly::from_terms(ring, terms)
}

thread_local! {
    static DEGREE_LIMIT: Cell<i64> = const { Cell::new(-1) };
}

/// Payload of the panic raised when the degree guard trips.
#[derive(Debug, Clone, Copy)]
pub struct DegreeLimitExceeded {
    pub limit: i64,
    pub reached: i64,
}

/// Set (or clear with `None`) the degree guard for Gröbner computations on
/// the current thread.
pub fn set_degree_limit(limit: Option<i64>) {
    DEGREE_LIMIT.with(|c| c.set(limit.unwrap_or(-1)));
}

pub fn degree_limit() -> Option<i64> {
    let v = DEGREE_LIMIT.with(|c| c.get());
    (v >= 0).then_some(v)
}

/// Reduced Gröbner basis of the submodule generated by `gens` inside the free
/// module with the given twists. Output vectors are in storage order.
pub fn groebner_basis(ring: &Arc<PolyRing>, twists: &[i64], gens: &[Vec<Term>]) -> Vec<Vec<Term>> {
    let mut order = ModuleOrder::new(ring.order.clone(), twists.to_vec());
    order.degree_first = order.all_homogeneous(gens);
    let mut e = GbEngine::new(ring.clone(), order);
    for g in gens {
        e.add_generator(g.clone());
    }
    e.complete();
    e.reduced_basis()
        .into_iter()
        .map(|mut v| {
            storage_sort(ring, &mut v);
            v
        })
        .collect()
}

/// `{u in R^m : G u in im N}` where `G` has columns `g` (of the given
/// degrees) and `N` has columns `n`, all inside a free module with `twists`.
/// Returned vectors live in `R^m`, storage order.
pub fn kernel_mod(
    ring: &Arc<PolyRing>,
    twists: &[i64],
    g: &[Vec<Term>],
    g_degrees: &[i64],
    n: &[Vec<Term>],
) -> Vec<Vec<Term>> {
    assert_eq!(g.len(), g_degrees.len());
    let p = twists.len() as u32;
    let m = g.len();
    let mut all_twists = twists.to_vec();
    all_twists.extend_from_slice(g_degrees);
    let mut blocks = vec![0u8; twists.len()];
    blocks.extend(std::iter::repeat_n(1u8, m));
    let mut inputs: Vec<Vec<Term>> = Vec::with_capacity(m + n.len());
    let one = ring.field.one();
    for (i, col) in g.iter().enumerate() {
        let mut v = col.clone();
        v.push(Term { mon: Monomial::one(), comp: p + i as u32, coeff: one.clone() });
        inputs.push(v);
    }
    for col in n {
        if !col.is_empty() {
            inputs.push(col.clone());
        }
    }
    let mut order = ModuleOrder {
        mono: ring.order.clone(),
        twists: all_twists,
        blocks,
        degree_first: true,
    };
    order.degree_first = order.all_homogeneous(&inputs);
    let mut e = GbEngine::new(ring.clone(), order);
    for v in inputs {
        e.add_generator(v);
    }
    e.complete();
    let mut out = Vec::new();
    for v in e.reduced_basis() {
        if v[0].comp >= p {
            let mut w: Vec<Term> = v
                .into_iter()
                .map(|t| Term { comp: t.comp - p, ..t })
                .collect();
            storage_sort(ring, &mut w);
            out.push(w);
        }
    }
    out
}

/// Express `v` in terms of `gens` when possible: returns the cofactors `c`
/// with `v = sum c_i gens_i` and the remainder (zero iff `v` is in the span).
pub fn divide_with_cofactors(
    ring: &Arc<PolyRing>,
    twists: &[i64],
    gens: &[Vec<Term>],
    gen_degrees: &[i64],
    v: &[Term],
) -> (Vec<Poly>, Vec<Term>) {
    let p = twists.len() as u32;
    let m = gens.len();
    let mut all_twists = twists.to_vec();
    all_twists.extend_from_slice(gen_degrees);
    let mut blocks = vec![0u8; twists.len()];
    blocks.extend(std::iter::repeat_n(1u8, m));
    let one = ring.field.one();
    let inputs: Vec<Vec<Term>> = gens
        .iter()
        .enumerate()
        .map(|(i, col)| {
            let mut w = col.clone();
            w.push(Term { mon: Monomial::one(), comp: p + i as u32, coeff: one.clone() });
            w
        })
        .collect();
    let mut order = ModuleOrder {
        mono: ring.order.clone(),
        twists: all_twists,
        blocks,
        degree_first: true,
    };
    order.degree_first = order.all_homogeneous(&inputs);
    let mut e = GbEngine::new(ring.clone(), order);
    for w in inputs {
        e.add_generator(w);
    }
    e.complete();
    let reduced = e.reduce_above_block(v.to_vec(), 1);
    let mut rem = Vec::new();
    let mut tags: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); m];
    for t in reduced {
        if t.comp < p {
            rem.push(t);
        } else {
            tags[(t.comp - p) as usize].push((t.mon, t.coeff.neg()));
        }
    }
    storage_sort(ring, &mut rem);
    let cof = tags.into_iter().map(|ts| Poly::from_terms(ring, ts)).collect();
    (cof, rem)
}

/// Normal form of `v` with respect to a reduced Gröbner basis previously
/// computed for the same twists.
pub fn normal_form(
    ring: &Arc<PolyRing>,
    twists: &[i64],
    basis: &[Vec<Term>],
    v: &[Term],
) -> Vec<Term> {
    let mut order = ModuleOrder::new(ring.order.clone(), twists.to_vec());
    order.degree_first = order.all_homogeneous(basis);
    let mut e = GbEngine::new(ring.clone(), order);
    for b in basis {
        e.push_basis_element(b.clone());
    }
    let mut r = e.reduce_full(v.to_vec());
    storage_sort(ring, &mut r);
    r
}
