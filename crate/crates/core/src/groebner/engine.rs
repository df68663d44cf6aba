use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::sync::Arc;

use super::{degree_limit, DegreeLimitExceeded, ModuleOrder, Term};
use crate::ring::{Coeff, Monomial, PolyRing};

struct Elem {
    v: Vec<Term>,
    lead: Monomial,
    comp: u32,
    mask: u64,
    sugar: i64,
    in_g: bool,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    alive: bool,
}

/// Incremental Buchberger engine with Gebauer–Möller pair management.
///
/// Vectors handed to the engine may be in any term order; everything stored
/// inside is sorted descending by the engine's [`ModuleOrder`].
pub struct GbEngine {
    ring: Arc<PolyRing>,
    order: ModuleOrder,
    elems: Vec<Elem>,
    /// Per component, indices of elements currently in the minimal basis.
    by_comp: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    queue: BinaryHeap<Reverse<(i64, usize)>>,
    rank_one: bool,
}

impl GbEngine {
    pub fn new(ring: Arc<PolyRing>, order: ModuleOrder) -> GbEngine {
        let ncomp = order.twists.len();
        GbEngine {
            ring,
            rank_one: ncomp == 1,
            order,
            elems: Vec::new(),
            by_comp: vec![Vec::new(); ncomp],
            pairs: Vec::new(),
            queue: BinaryHeap::new(),
        }
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    fn sugar_of(&self, v: &[Term]) -> i64 {
        v.iter().map(|t| self.order.tdeg(&t.mon, t.comp)).max().unwrap_or(0)
    }

    /// Add a generator of the module; it is reduced first and ignored if it
    /// reduces to zero.
    pub fn add_generator(&mut self, mut v: Vec<Term>) {
        v.retain(|t| !t.coeff.is_zero());
        self.order.sort(&mut v);
        let sugar = self.sugar_of(&v);
        let r = self.reduce_full(v);
        if !r.is_empty() {
            let s = sugar.max(self.sugar_of(&r));
            self.insert(r, s);
        }
    }

    /// Register an element that is already part of a Gröbner basis; no pairs
    /// are formed.
    pub fn push_basis_element(&mut self, mut v: Vec<Term>) {
        v.retain(|t| !t.coeff.is_zero());
        if v.is_empty() {
            return;
        }
        self.order.sort(&mut v);
        let v = make_monic(v);
        let idx = self.elems.len();
        let (lead, comp) = (v[0].mon, v[0].comp);
        self.elems.push(Elem {
            mask: lead.divmask(),
            sugar: self.sugar_of(&v),
            lead,
            comp,
            v,
            in_g: true,
        });
        self.by_comp[comp as usize].push(idx);
    }

    /// Process all pending pairs.
    pub fn complete(&mut self) {
        self.complete_to(i64::MAX);
    }

    /// Process pending pairs of sugar at most `d`. For homogeneous input the
    /// basis is then correct in all degrees up to `d`.
    pub fn complete_to(&mut self, d: i64) {
        while let Some(&Reverse((sugar, idx))) = self.queue.peek() {
            if sugar > d {
                break;
            }
            self.queue.pop();
            if !self.pairs[idx].alive {
                continue;
            }
            if let Some(limit) = degree_limit() {
                if sugar > limit {
                    std::panic::panic_any(DegreeLimitExceeded { limit, reached: sugar });
                }
            }
            self.pairs[idx].alive = false;
            let (i, j, lcm) = (self.pairs[idx].i, self.pairs[idx].j, self.pairs[idx].lcm);
            let s = self.spoly(i, j, &lcm);
            let r = self.reduce_full(s);
            if !r.is_empty() {
                let s2 = sugar.max(self.sugar_of(&r));
                self.insert(r, s2);
            }
        }
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Monomial) -> Vec<Term> {
        let (a, b) = (&self.elems[i], &self.elems[j]);
        let qa = a.lead.quotient_of(lcm);
        let qb = b.lead.quotient_of(lcm);
        let one = self.ring.field.one();
        let left: Vec<Term> = a
            .v
            .iter()
            .map(|t| Term { mon: t.mon.mul(&qa), comp: t.comp, coeff: t.coeff.clone() })
            .collect();
        sub_mul(&self.order, &left, 0, &one, &qb, &b.v)
    }

    fn find_reducer(&self, m: &Monomial, comp: u32) -> Option<usize> {
        let mask = m.divmask();
        self.by_comp[comp as usize]
            .iter()
            .copied()
            .find(|&k| {
                let e = &self.elems[k];
                e.mask & !mask == 0 && e.lead.divides(m)
            })
    }

    /// Fully reduce `v`; the result is in engine order.
    pub fn reduce_full(&self, mut v: Vec<Term>) -> Vec<Term> {
        v.retain(|t| !t.coeff.is_zero());
        self.order.sort(&mut v);
        self.reduce_from(v, 0, u8::MAX)
    }

    /// Reduce only terms whose component lies in a block below `block`;
    /// terms in higher-numbered blocks are left untouched.
    pub fn reduce_above_block(&self, mut v: Vec<Term>, block: u8) -> Vec<Term> {
        v.retain(|t| !t.coeff.is_zero());
        self.order.sort(&mut v);
        self.reduce_from(v, 0, block)
    }

    fn reduce_from(&self, mut v: Vec<Term>, mut done: usize, block: u8) -> Vec<Term> {
        while done < v.len() {
            let t = &v[done];
            if self.order.blocks[t.comp as usize] >= block {
                done += 1;
                continue;
            }
            match self.find_reducer(&t.mon, t.comp) {
                None => done += 1,
                Some(k) => {
                    let g = &self.elems[k];
                    let q = g.lead.quotient_of(&t.mon);
                    // elements are monic, so the multiplier is the coefficient itself
                    let c = t.coeff.clone();
                    v = sub_mul(&self.order, &v, done, &c, &q, &g.v);
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<Term>, sugar: i64) {
        let v = make_monic(v);
        let h = self.elems.len();
        let (lead, comp) = (v[0].mon, v[0].comp);
        let weights = self.ring.weights.clone();
        self.elems.push(Elem { mask: lead.divmask(), lead, comp, v, sugar, in_g: true });

        // candidate pairs (h, g) with g in the current basis, same component
        let cands: Vec<(usize, Monomial, bool)> = self.by_comp[comp as usize]
            .iter()
            .map(|&g| {
                let gl = &self.elems[g].lead;
                (g, lead.lcm(gl, &weights), self.rank_one && lead.coprime(gl))
            })
            .collect();

        // Gebauer–Möller: drop (h,g1) when another new pair has an lcm dividing it.
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (idx, c) in cands.iter().enumerate() {
            let (_, l1, disjoint) = c;
            let dominated = |other: &(usize, Monomial, bool)| other.1.divides(l1);
            let keep = *disjoint
                || (!cands[idx + 1..].iter().any(dominated) && !kept.iter().any(dominated));
            if keep {
                kept.push(*c);
            }
        }

        // old pairs made redundant by the new leading term
        for p in self.pairs.iter_mut().filter(|p| p.alive) {
            if self.elems[p.i].comp != comp || !lead.divides(&p.lcm) {
                continue;
            }
            let li = lead.lcm(&self.elems[p.i].lead, &weights);
            let lj = lead.lcm(&self.elems[p.j].lead, &weights);
            if li != p.lcm && lj != p.lcm {
                p.alive = false;
            }
        }

        for (g, l, disjoint) in kept {
            if disjoint {
                continue;
            }
            let eg = &self.elems[g];
            let eh = &self.elems[h];
            let sugar = (eg.sugar + (l.deg() - eg.lead.deg()) as i64)
                .max(eh.sugar + (l.deg() - eh.lead.deg()) as i64);
            let idx = self.pairs.len();
            self.pairs.push(Pair { i: g, j: h, lcm: l, alive: true });
            self.queue.push(Reverse((sugar, idx)));
        }

        // retire basis elements whose leading term is now divisible by lead(h)
        let elems = &mut self.elems;
        self.by_comp[comp as usize].retain(|&g| {
            if lead.divides(&elems[g].lead) {
                elems[g].in_g = false;
                false
            } else {
                true
            }
        });
        self.by_comp[comp as usize].push(h);
    }

    /// Reduced Gröbner basis, each vector in engine order, sorted by
    /// ascending leading term.
    pub fn reduced_basis(&self) -> Vec<Vec<Term>> {
        let mut idx: Vec<usize> = (0..self.elems.len()).filter(|&k| self.elems[k].in_g).collect();
        idx.sort_by(|&a, &b| {
            let (ea, eb) = (&self.elems[a], &self.elems[b]);
            self.order.cmp(&ea.lead, ea.comp, &eb.lead, eb.comp)
        });
        idx.into_iter()
            .map(|k| self.reduce_from(self.elems[k].v.clone(), 1, u8::MAX))
            .collect()
    }

    /// Leading terms of the current minimal basis.
    pub fn leads(&self) -> Vec<(Monomial, u32)> {
        self.elems
            .iter()
            .filter(|e| e.in_g)
            .map(|e| (e.lead, e.comp))
            .collect()
    }

    pub fn is_zero_after_reduction(&self, v: Vec<Term>) -> bool {
        let mut v = v;
        v.retain(|t| !t.coeff.is_zero());
        self.order.sort(&mut v);
        self.reduce_full(v).is_empty()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }
}

fn make_monic(v: Vec<Term>) -> Vec<Term> {
    if v[0].coeff.is_one() {
        return v;
    }
    let inv = v[0].coeff.inv();
    v.into_iter().map(|t| Term { coeff: t.coeff.mul(&inv), ..t }).collect()
}

/// `a - c * q * b`, keeping `a[..start]` verbatim.
fn sub_mul(
    order: &ModuleOrder,
    a: &[Term],
    start: usize,
    c: &Coeff,
    q: &Monomial,
    b: &[Term],
) -> Vec<Term> {
    let negc = c.neg();
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(&a[..start]);
    let (mut i, mut j) = (start, 0);
    while i < a.len() && j < b.len() {
        let bm = b[j].mon.mul(q);
        match order.cmp(&a[i].mon, a[i].comp, &bm, b[j].comp) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(Term { mon: bm, comp: b[j].comp, coeff: b[j].coeff.mul(&negc) });
                j += 1;
            }
            Ordering::Equal => {
                let s = a[i].coeff.add(&b[j].coeff.mul(&negc));
                if !s.is_zero() {
                    out.push(Term { mon: bm, comp: b[j].comp, coeff: s });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        out.push(Term { mon: t.mon.mul(q), comp: t.comp, coeff: t.coeff.mul(&negc) });
    }
    out
}

/// Degree-by-degree Gröbner basis supporting generators added in increasing
/// degree; used to extract minimal generating sets of graded modules.
pub struct GradedGb {
    engine: GbEngine,
    completed: i64,
}

impl GradedGb {
    pub fn new(ring: Arc<PolyRing>, twists: Vec<i64>) -> GradedGb {
        let order = ModuleOrder::new(ring.order.clone(), twists);
        GradedGb { engine: GbEngine::new(ring, order), completed: i64::MIN }
    }

    pub fn complete_to(&mut self, d: i64) {
        self.engine.complete_to(d);
        self.completed = self.completed.max(d);
    }

    /// Whether the homogeneous vector `v` of degree `d` lies in the span of
    /// the generators added so far.
    pub fn contains(&mut self, v: &[Term], d: i64) -> bool {
        self.complete_to(d);
        self.engine.is_zero_after_reduction(v.to_vec())
    }

    pub fn add(&mut self, v: Vec<Term>) {
        self.engine.add_generator(v);
    }

    pub fn engine(&self) -> &GbEngine {
        &self.engine
    }
}
