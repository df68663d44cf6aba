//! Labels for the total complex `D = Tot(K(γ; S) ⊗ Z(f))` and its
//! differential on individual basis elements.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::koszul::{removal_sign, KoszulComplex};
use crate::residual::ResidualDatum;
use crate::ring::{Poly, PolyRing};

/// Basis element `ε_P ⊗ e_Q ⊗ T^β`: `P` indexes the γ-exterior algebra,
/// `Q` the Koszul basis of `f`, `β ∈ Z^r` the `T`-exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub p: u32,
    pub q: u32,
    pub beta: Vec<i32>,
}

impl Label {
    pub fn new(p: u32, q: u32, beta: Vec<i32>) -> Label {
        Label { p, q, beta }
    }

    /// Homological degree `|P| + |Q|` in `D`.
    pub fn spot(&self) -> usize {
        (self.p.count_ones() + self.q.count_ones()) as usize
    }

    pub fn t_degree(&self) -> i32 {
        self.beta.iter().sum()
    }

    fn bumped(&self, p: u32, q: u32, l: usize) -> Label {
        let mut beta = self.beta.clone();
        beta[l] += 1;
        Label { p, q, beta }
    }
}

/// Everything the differential needs: degrees, the lifting matrix and the
/// Koszul complex of `f`.
pub struct Frame {
    pub ring: Arc<PolyRing>,
    pub r: usize,
    pub s: usize,
    pub fdeg: Vec<i64>,
    pub adeg: Vec<i64>,
    /// `c[j][i]`
    pub lifting: Vec<Vec<Poly>>,
    pub koszul: KoszulComplex,
}

impl Frame {
    pub fn new(rd: &ResidualDatum) -> crate::Result<Frame> {
        Ok(Frame {
            ring: rd.ring().clone(),
            r: rd.r(),
            s: rd.s,
            fdeg: rd.f_degrees(),
            adeg: rd.a_degrees(),
            lifting: rd.lifting.clone(),
            koszul: KoszulComplex::new(rd.ring(), rd.i.gens())?,
        })
    }

    /// Internal degree of a label.
    pub fn degree(&self, lab: &Label) -> i64 {
        let mut d = 0;
        for i in 0..self.s {
            if lab.p & (1 << i) != 0 {
                d += self.adeg[i];
            }
        }
        for l in 0..self.r {
            if lab.q & (1 << l) != 0 {
                d += self.fdeg[l];
            }
            d += lab.beta[l] as i64 * self.fdeg[l];
        }
        d
    }

    /// `d = d_γ + (-1)^{|P|} d_Z` on a single basis element.
    pub fn differential(&self, lab: &Label) -> Vec<(Label, Poly)> {
        let mut out = Vec::new();
        for i in 0..self.s {
            if lab.p & (1 << i) == 0 {
                continue;
            }
            let neg = removal_sign(lab.p, i);
            let p2 = lab.p & !(1 << i);
            for j in 0..self.r {
                let c = &self.lifting[j][i];
                if c.is_zero() {
                    continue;
                }
                out.push((lab.bumped(p2, lab.q, j), if neg { -c } else { c.clone() }));
            }
        }
        let outer = lab.p.count_ones() % 2 == 1;
        for l in 0..self.r {
            if lab.q & (1 << l) == 0 {
                continue;
            }
            let neg = removal_sign(lab.q, l) ^ outer;
            let one = Poly::one(&self.ring);
            out.push((lab.bumped(lab.p, lab.q & !(1 << l), l), if neg { -&one } else { one }));
        }
        out
    }
}

/// A finite `R`-linear combination of labels, optionally tagged by a Čech
/// index set.
pub type Chain = BTreeMap<(u32, Label), Poly>;

pub fn chain_add(c: &mut Chain, key: (u32, Label), p: Poly) {
    if p.is_zero() {
        return;
    }
    match c.get_mut(&key) {
        Some(v) => {
            let sum = &*v + &p;
            if sum.is_zero() {
                c.remove(&key);
            } else {
                *v = sum;
            }
        }
        None => {
            c.insert(key, p);
        }
    }
}

/// Apply the `D`-differential to every term, keeping the Čech tag.
pub fn apply_horizontal(frame: &Frame, c: &Chain) -> Chain {
    let mut out = Chain::new();
    for ((u, lab), coeff) in c {
        for (lab2, e) in frame.differential(lab) {
            chain_add(&mut out, (*u, lab2), &e * coeff);
        }
    }
    out
}

/// All `β ∈ Z^r_{>=0}` with `|β| = d`, in lex-descending order.
pub fn compositions(r: usize, d: i32) -> Vec<Vec<i32>> {
    fn rec(i: usize, r: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if i + 1 == r {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(i + 1, r, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d >= 0 && r > 0 {
        rec(0, r, d, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::ideal::Ideal;
    use crate::residual::make_residual;
    use crate::ring::parse::parse_poly;
    use crate::ring::Field;

    #[test]
    fn differential_squares_to_zero() {
        let r = PolyRing::standard(Field::Prime(32003), &["x", "y", "z"]);
        let id = |g: &[&str]| Ideal::new(&r, g.iter().map(|s| parse_poly(&r, s).unwrap()).collect());
        let rd = make_residual(&id(&["x", "y", "z"]), &id(&["x^2", "y^2+x*z"]), 2).unwrap();
        let frame = Frame::new(&rd).unwrap();
        for p in 0..4u32 {
            for q in 0..8u32 {
                let mut c = Chain::new();
                c.insert((0, Label::new(p, q, vec![1, 0, 2])), Poly::one(&r));
                let dd = apply_horizontal(&frame, &apply_horizontal(&frame, &c));
                assert!(dd.is_empty(), "p={p} q={q}");
                let deg = frame.degree(&Label::new(p, q, vec![1, 0, 2]));
                for ((_, lab), coeff) in apply_horizontal(&frame, &c) {
                    assert_eq!(frame.degree(&lab) + coeff.hdeg().unwrap() as i64, deg);
                }
            }
        }
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(3, 2).len(), 6);
        assert_eq!(compositions(2, 0), vec![vec![0, 0]]);
        assert!(compositions(2, -1).is_empty());
    }
}
