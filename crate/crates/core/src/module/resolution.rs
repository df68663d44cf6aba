//! Minimal graded free resolutions by iterated minimal syzygies.

use std::collections::BTreeMap;

use super::subquotient::{kernel_cols, Presentation};
use super::{FreeModule, Matrix};

#[derive(Clone, Debug)]
pub struct Resolution {
    f0: FreeModule,
    /// `maps[i] : F_{i+1} -> F_i`.
    pub maps: Vec<Matrix>,
}

impl Resolution {
    /// Resolve the cokernel of a minimal presentation, stopping after `cap`
    /// maps or when the kernel vanishes.
    pub fn of_presentation(p: &Presentation, cap: usize) -> Resolution {
        let f0 = p.f0().clone();
        let mut maps = Vec::new();
        let mut cur = p.rels.clone();
        while cur.ncols() > 0 && maps.len() < cap {
            let next = kernel_cols(&cur);
            let src = cur.source();
            maps.push(cur);
            cur = Matrix::from_cols(src, next, 0);
        }
        Resolution { f0, maps }
    }

    /// Generator degrees of each free module `F_0, F_1, ...` (trailing zero
    /// modules omitted).
    pub fn twists(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        if self.f0.rank() == 0 {
            return out;
        }
        out.push(self.f0.twists.clone());
        for m in &self.maps {
            out.push(m.source_twists.clone());
        }
        while out.last().is_some_and(|t| t.is_empty()) {
            out.pop();
        }
        out
    }

    pub fn pd(&self) -> Option<usize> {
        let t = self.twists();
        if t.is_empty() {
            None
        } else {
            Some(t.len() - 1)
        }
    }

    /// `max_i (d - i)` over generator degrees `d` of `F_i`.
    pub fn regularity(&self) -> Option<i64> {
        self.twists()
            .iter()
            .enumerate()
            .flat_map(|(i, ts)| ts.iter().map(move |d| d - i as i64))
            .max()
    }

    /// Per homological degree, the pairs `(degree, multiplicity)`.
    pub fn betti_table(&self) -> Vec<Vec<(i64, usize)>> {
        self.twists()
            .iter()
            .map(|ts| {
                let mut m: BTreeMap<i64, usize> = BTreeMap::new();
                for &d in ts {
                    *m.entry(d).or_default() += 1;
                }
                m.into_iter().collect()
            })
            .collect()
    }

    pub fn total_betti(&self) -> Vec<usize> {
        self.twists().iter().map(|t| t.len()).collect()
    }

    /// Numerator `Σ (-1)^i t^d` of the Hilbert series over `(1-t)^n`.
    pub fn hilbert_numerator(&self) -> BTreeMap<i64, i64> {
        let mut out: BTreeMap<i64, i64> = BTreeMap::new();
        for (i, ts) in self.twists().iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for &d in ts {
                *out.entry(d).or_default() += sign;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Whether consecutive maps compose to zero and every map has entries in
    /// the irrelevant ideal.
    pub fn is_minimal_complex(&self) -> bool {
        for w in self.maps.windows(2) {
            if !w[0].compose(&w[1]).is_zero() {
                return false;
            }
        }
        self.maps
            .iter()
            .all(|m| m.cols.iter().all(|c| c.iter().all(|t| !t.mon.is_one())))
    }
}

#[cfg(test)]
mod tests {
    use crate::groebner::ideal::Ideal;
    use crate::module::Subquotient;
    use crate::ring::parse::parse_poly;
    use crate::ring::{Field, PolyRing};

    fn quotient(vars: &[&str], gens: &[&str]) -> Subquotient {
        let r = PolyRing::standard(Field::Prime(32003), vars);
        let i = Ideal::new(&r, gens.iter().map(|s| parse_poly(&r, s).unwrap()).collect());
        Subquotient::quotient_ring(&i)
    }

    #[test]
    fn resolution_examples() {
        let m = quotient(&["x", "y"], &["x"]);
        assert_eq!(m.resolution().twists(), vec![vec![0], vec![1]]);
        let m = quotient(&["x", "y"], &["x", "y"]);
        assert_eq!(m.resolution().total_betti(), vec![1, 2, 1]);
        let m = quotient(&["x", "y"], &["x^2", "x*y"]);
        let t = m.resolution().twists();
        assert_eq!(t, vec![vec![0], vec![2, 2], vec![3]]);
        assert!(m.resolution().is_minimal_complex());
    }

    #[test]
    fn numerator_matches_staircase() {
        for (vars, gens) in [
            (vec!["x", "y", "z"], vec!["x^2", "x*y", "y*z^2"]),
            (vec!["x", "y", "z"], vec!["x*y-z^2", "x^3"]),
            (vec!["a", "b", "c", "d"], vec!["a*d-b*c", "a*c-b^2", "b*d-c^2"]),
        ] {
            let m = quotient(&vars, &gens);
            let from_res = m.resolution().hilbert_numerator();
            for d in 0..=10 {
                let mut expect = 0i64;
                let n = vars.len() as i64;
                for (&k, &c) in &from_res {
                    if d - k >= 0 {
                        expect += c * crate::module::hilbert::binom(d - k + n - 1, n - 1);
                    }
                }
                assert_eq!(m.hilbert_function(d), expect, "degree {d}");
            }
        }
    }
}
