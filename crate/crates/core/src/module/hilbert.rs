//! Hilbert series of graded modules from monomial initial submodules.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::Vect;
use crate::groebner::groebner_basis;
use crate::ring::{Monomial, PolyRing};

/// `HS(M) = num(t) / (1-t)^n` with a Laurent numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub n: usize,
    pub num: BTreeMap<i64, i64>,
}

pub fn binom(a: i64, b: i64) -> i64 {
    if b < 0 || a < b {
        return 0;
    }
    let b = b.min(a - b);
    let mut r: i128 = 1;
    for i in 0..b {
        r = r * (a - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

impl HilbertSeries {
    /// Series of `F0 / im(rels)` for a standard graded ring.
    pub fn of_cokernel(ring: &Arc<PolyRing>, twists: &[i64], rels: &[Vect]) -> HilbertSeries {
        assert!(ring.is_standard_graded(), "Hilbert series need a standard grading");
        let n = ring.n();
        let gb = groebner_basis(ring, twists, rels);
        let mut per_comp: Vec<Vec<Monomial>> = vec![Vec::new(); twists.len()];
        // Storage order puts the lead term of a module element first only
        // within one component, so recover the engine lead explicitly.
        let order = crate::groebner::ModuleOrder::new(ring.order.clone(), twists.to_vec());
        for v in &gb {
            let lead = v
                .iter()
                .max_by(|a, b| order.cmp_terms(a, b))
                .expect("nonzero basis element");
            per_comp[lead.comp as usize].push(lead.mon);
        }
        let mut num: BTreeMap<i64, i64> = BTreeMap::new();
        for (c, mons) in per_comp.into_iter().enumerate() {
            let p = monomial_numerator(mons, n);
            for (k, coef) in p.into_iter().enumerate() {
                if coef != 0 {
                    *num.entry(k as i64 + twists[c]).or_default() += coef;
                }
            }
        }
        num.retain(|_, c| *c != 0);
        HilbertSeries { n, num }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// `dim_k M_d`.
    pub fn value(&self, d: i64) -> i64 {
        let n = self.n as i64;
        self.num
            .iter()
            .filter(|(&k, _)| d - k >= 0)
            .map(|(&k, &c)| c * binom(d - k + n - 1, n - 1))
            .sum()
    }

    /// Order of the pole at `t = 1`; `-1` for the zero module.
    pub fn dim(&self) -> i64 {
        if self.is_zero() {
            return -1;
        }
        let mut q = self.to_dense();
        let mut k = 0;
        while q.1.iter().sum::<i64>() == 0 {
            q.1 = divide_one_minus_t(&q.1);
            k += 1;
        }
        self.n as i64 - k
    }

    /// Multiplicity: the reduced numerator evaluated at 1.
    pub fn multiplicity(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        let mut q = self.to_dense().1;
        while q.iter().sum::<i64>() == 0 {
            q = divide_one_minus_t(&q);
        }
        q.iter().sum()
    }

    fn to_dense(&self) -> (i64, Vec<i64>) {
        let lo = *self.num.keys().next().unwrap();
        let hi = *self.num.keys().last().unwrap();
        let mut v = vec![0; (hi - lo + 1) as usize];
        for (&k, &c) in &self.num {
            v[(k - lo) as usize] = c;
        }
        (lo, v)
    }

    /// Shift so that `M(a)` is described: degrees lowered by `a`.
    pub fn twisted(&self, a: i64) -> HilbertSeries {
        HilbertSeries { n: self.n, num: self.num.iter().map(|(&k, &c)| (k - a, c)).collect() }
    }

    pub fn numerator_string(&self) -> String {
        if self.num.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (&k, &c)) in self.num.iter().enumerate() {
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                s.push(' ');
            }
            s.push_str(sign);
            if i > 0 {
                s.push(' ');
            }
            let a = c.abs();
            match k {
                0 => s.push_str(&a.to_string()),
                _ => {
                    if a != 1 {
                        s.push_str(&format!("{a}*"));
                    }
                    if k == 1 {
                        s.push('t');
                    } else {
                        s.push_str(&format!("t^{k}"));
                    }
                }
            }
        }
        s
    }
}

fn divide_one_minus_t(p: &[i64]) -> Vec<i64> {
    // p = (1 - t) q  ⇒  q_k = p_0 + ... + p_k
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = 0;
    for &c in &p[..p.len() - 1] {
        acc += c;
        q.push(acc);
    }
    q
}

fn mul_dense(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn add_dense(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (j, &y) in b.iter().enumerate() {
        a[j + shift] += y;
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.total_deg());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of `HS(R / M)` over `(1-t)^n` for a monomial ideal `M` in a
/// standard graded ring, by pivoting on a pure power.
pub fn monomial_numerator(gens: Vec<Monomial>, n: usize) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.coprime(b)));
    if pairwise_coprime {
        let mut acc = vec![1];
        for g in &gens {
            let d = g.total_deg() as usize;
            let mut f = vec![0; d + 1];
            f[0] = 1;
            f[d] = -1;
            acc = mul_dense(&acc, &f);
        }
        return acc;
    }
    // Pivot on the variable occurring in the most generators.
    let mut best = (0, 0usize);
    for v in 0..n {
        let c = gens.iter().filter(|g| g.exp(v) > 0).count();
        if c > best.1 {
            best = (v, c);
        }
    }
    let v = best.0;
    let e = gens.iter().map(|g| g.exp(v)).filter(|&e| e > 0).min().unwrap();
    let mut exps = vec![0u32; n];
    exps[v] = e;
    let weights = vec![1u32; n];
    let p = Monomial::from_exps(&exps, &weights);

    let mut plus = gens.clone();
    plus.push(p);
    let colon: Vec<Monomial> = gens.iter().map(|g| g.colon(&p, &weights)).collect();
    let mut out = monomial_numerator(plus, n);
    let rest = monomial_numerator(colon, n);
    add_dense(&mut out, &rest, e as usize);
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}
