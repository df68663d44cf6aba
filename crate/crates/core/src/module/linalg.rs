//! Degreewise linear algebra over the coefficient field: graded pieces of a
//! presented module as vector spaces, and ranks of the maps between them.

use std::collections::HashMap;
use std::sync::Arc;

use super::{FreeModule, Vect};
use crate::groebner::{groebner_basis, normal_form, Term};
use crate::ring::{Coeff, Monomial, PolyRing};

/// Rank of a matrix given by rows.
pub fn rank(mut rows: Vec<Vec<Coeff>>) -> usize {
    rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for x in rows[r].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    if !y.is_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// All monomials of total degree `d` in `n` variables, standard weights.
pub fn monomials_of_degree(n: usize, d: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let weights = vec![1u32; n];
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, w: &[u32], out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i == n - 1 {
            cur[i] = left;
            out.push(Monomial::from_exps(cur, w));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, w, out);
        }
        cur[i] = 0;
    }
    rec(0, d as u32, &mut cur, &weights, &mut out);
    out
}

/// The graded pieces of `F0 / im(rels)` as vector spaces with the standard
/// monomial basis.
pub struct GradedPieces {
    ring: Arc<PolyRing>,
    f0: FreeModule,
    gb: Vec<Vect>,
    cache: HashMap<i64, (Vec<(Monomial, u32)>, HashMap<(Monomial, u32), usize>)>,
}

impl GradedPieces {
    pub fn new(f0: &FreeModule, rels: &[Vect]) -> GradedPieces {
        let ring = f0.ring.clone();
        assert!(ring.is_standard_graded());
        let gb = groebner_basis(&ring, &f0.twists, rels);
        GradedPieces { ring, f0: f0.clone(), gb, cache: HashMap::new() }
    }

    fn piece(&mut self, d: i64) -> &(Vec<(Monomial, u32)>, HashMap<(Monomial, u32), usize>) {
        if !self.cache.contains_key(&d) {
            let order = crate::groebner::ModuleOrder::new(self.ring.order.clone(), self.f0.twists.clone());
            let leads: Vec<(Monomial, u32)> = self
                .gb
                .iter()
                .map(|v| {
                    let t = v.iter().max_by(|a, b| order.cmp_terms(a, b)).unwrap();
                    (t.mon, t.comp)
                })
                .collect();
            let mut basis = Vec::new();
            for (c, &tw) in self.f0.twists.iter().enumerate() {
                for m in monomials_of_degree(self.ring.n(), d - tw) {
                    if !leads.iter().any(|(l, lc)| *lc == c as u32 && l.divides(&m)) {
                        basis.push((m, c as u32));
                    }
                }
            }
            let index = basis.iter().enumerate().map(|(i, k)| (*k, i)).collect();
            self.cache.insert(d, (basis, index));
        }
        &self.cache[&d]
    }

    pub fn dim(&mut self, d: i64) -> usize {
        self.piece(d).0.len()
    }

    pub fn basis(&mut self, d: i64) -> Vec<(Monomial, u32)> {
        self.piece(d).0.clone()
    }

    /// Coordinates of the homogeneous vector `v` of degree `d`.
    pub fn coords(&mut self, d: i64, v: &[Term]) -> Vec<Coeff> {
        let nf = normal_form(&self.ring, &self.f0.twists, &self.gb, v);
        let field = self.ring.field;
        let (basis, index) = self.piece(d);
        let mut out = vec![field.zero(); basis.len()];
        for t in nf {
            let i = index[&(t.mon, t.comp)];
            out[i] = t.coeff;
        }
        out
    }
}

/// `dim_k H_i(x_1..x_n; M)_d` for every `i`, where `M = F0 / im(rels)`.
pub fn koszul_homology_on_variables(f0: &FreeModule, rels: &[Vect], d: i64) -> Vec<usize> {
    let ring = f0.ring.clone();
    let n = ring.n();
    let field = ring.field;
    let mut pieces = GradedPieces::new(f0, rels);
    // Subsets of size i in lex order of bit masks.
    let subsets: Vec<Vec<u32>> = (0..=n)
        .map(|i| (0u32..(1 << n)).filter(|s| s.count_ones() as usize == i).collect())
        .collect();
    let dims: Vec<usize> = (0..=n).map(|i| subsets[i].len() * pieces.dim(d - i as i64)).collect();
    // rank of d_i : K_i -> K_{i-1} in degree d
    let mut ranks = vec![0usize; n + 2];
    for i in 1..=n {
        let src_basis = pieces.basis(d - i as i64);
        let tgt_dim = pieces.dim(d - i as i64 + 1);
        let tgt_index: HashMap<u32, usize> =
            subsets[i - 1].iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let mut rows = Vec::new();
        for &s in &subsets[i] {
            for (m, c) in &src_basis {
                let mut row = vec![field.zero(); subsets[i - 1].len() * tgt_dim];
                let mut pos = 0;
                for l in 0..n {
                    if s & (1 << l) == 0 {
                        continue;
                    }
                    let sign = if pos % 2 == 0 { field.one() } else { field.one().neg() };
                    pos += 1;
                    let xm = m.mul(&Monomial::var(l, &ring.weights));
                    let v = vec![Term { mon: xm, comp: *c, coeff: field.one() }];
                    let co = pieces.coords(d - i as i64 + 1, &v);
                    let block = tgt_index[&(s & !(1 << l))] * tgt_dim;
                    for (k, x) in co.into_iter().enumerate() {
                        if !x.is_zero() {
                            row[block + k] = row[block + k].add(&x.mul(&sign));
                        }
                    }
                }
                rows.push(row);
            }
        }
        ranks[i] = rank(rows);
    }
    (0..=n).map(|i| dims[i] - ranks[i] - ranks[i + 1]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ideal::Ideal;
    use crate::module::Subquotient;
    use crate::ring::parse::parse_poly;
    use crate::ring::Field;

    #[test]
    fn rank_basics() {
        let f = Field::Prime(7);
        let c = |x: i64| f.from_i64(x);
        assert_eq!(rank(vec![vec![c(1), c(2)], vec![c(2), c(4)]]), 1);
        assert_eq!(rank(vec![vec![c(1), c(0)], vec![c(0), c(3)]]), 2);
        assert_eq!(rank(vec![vec![c(0), c(0)]]), 0);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(2, 0).len(), 1);
        assert!(monomials_of_degree(2, -1).is_empty());
    }

    #[test]
    fn koszul_on_variables_gives_tor() {
        let r = PolyRing::standard(Field::Prime(32003), &["x", "y"]);
        let i = Ideal::new(&r, vec![parse_poly(&r, "x").unwrap(), parse_poly(&r, "y").unwrap()]);
        let m = Subquotient::quotient_ring(&i);
        let p = m.presentation();
        // Tor_i(k, k) = ∧^i k^2 sits in degree i.
        assert_eq!(koszul_homology_on_variables(p.f0(), &p.rels.cols, 0), vec![1, 0, 0]);
        assert_eq!(koszul_homology_on_variables(p.f0(), &p.rels.cols, 1), vec![0, 2, 0]);
        assert_eq!(koszul_homology_on_variables(p.f0(), &p.rels.cols, 2), vec![0, 0, 1]);
    }
}
