//! Determinantal ideals and Fitting invariants.

use std::collections::HashMap;
use std::sync::Arc;

use super::Matrix;
use crate::groebner::ideal::Ideal;
use crate::ring::{Poly, PolyRing};

/// Determinant of a square polynomial matrix, by expansion along rows with
/// memoised column subsets.
pub fn determinant(ring: &Arc<PolyRing>, m: &[Vec<Poly>]) -> Poly {
    let k = m.len();
    if k == 0 {
        return Poly::one(ring);
    }
    let mut memo: HashMap<u64, Poly> = HashMap::new();
    fn rec(row: usize, cols: u64, m: &[Vec<Poly>], ring: &Arc<PolyRing>, memo: &mut HashMap<u64, Poly>) -> Poly {
        if row == m.len() {
            return Poly::one(ring);
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let mut acc = Poly::zero(ring);
        let mut pos = 0;
        for c in 0..m[row].len() {
            if cols & (1 << c) != 0 {
                continue;
            }
            if !m[row][c].is_zero() {
                let sub = rec(row + 1, cols | (1 << c), m, ring, memo);
                let t = &m[row][c] * &sub;
                acc = if pos % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            pos += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    rec(0, 0, m, ring, &mut memo)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Ideal of `k × k` minors; the unit ideal for `k <= 0`.
pub fn minors(m: &Matrix, k: i64) -> Ideal {
    let ring = m.ring().clone();
    if k <= 0 {
        return Ideal::unit(&ring);
    }
    let k = k as usize;
    if k > m.nrows() || k > m.ncols() {
        return Ideal::zero(&ring);
    }
    let rows = m.to_rows();
    let mut gens = Vec::new();
    for rs in subsets(m.nrows(), k) {
        for cs in subsets(m.ncols(), k) {
            let sub: Vec<Vec<Poly>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect()).collect();
            let d = determinant(&ring, &sub);
            if !d.is_zero() {
                gens.push(d);
            }
        }
    }
    let i = Ideal::new(&ring, gens);
    if i.is_homogeneous() {
        i.minimalized()
    } else {
        i
    }
}

/// `Fitt_j` of the cokernel of `m`: the `(rank F0 - j)`-minors.
pub fn fitting_ideal(m: &Matrix, j: usize) -> Ideal {
    minors(m, m.nrows() as i64 - j as i64)
}

/// Least `m` with `Fitt_m ⊄ p`, the number of generators of the module after
/// localising at the prime `p`.
pub fn local_mu(m: &Matrix, p: &Ideal) -> usize {
    for j in 0..=m.nrows() {
        let f = fitting_ideal(m, j);
        if f.gens().iter().any(|g| !p.contains(g)) {
            return j;
        }
    }
    m.nrows()
}
