//! Koszul complexes of homogeneous sequences: cycles, boundaries, homology,
//! annihilators, sliding-depth checks and the cycle exact sequence obtained by
//! prepending one element.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::ideal::Ideal;
use crate::groebner::Term;
use crate::module::subquotient::{kernel_cols, minimal_generators, module_colon};
use crate::module::{FreeModule, Matrix, Subquotient, Vect};
use crate::ring::{Poly, PolyRing};

/// Index subsets of size `k` of `{0..r}` in lex order, as bit masks.
pub fn lex_subsets(r: usize, k: usize) -> Vec<u32> {
    fn rec(start: usize, r: usize, k: usize, cur: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..r {
            rec(i + 1, r, k - 1, cur | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    rec(0, r, k, 0, &mut out);
    out
}

/// Sign `(-1)^{#{m in S : m < l}}` for removing `l` from `S`.
pub fn removal_sign(s: u32, l: usize) -> bool {
    (s & ((1u32 << l) - 1)).count_ones() % 2 == 1
}

pub struct KoszulComplex {
    ring: Arc<PolyRing>,
    f: Vec<Poly>,
    degs: Vec<i64>,
    basis: Vec<Vec<u32>>,
    index: Vec<HashMap<u32, usize>>,
    diffs: Vec<Matrix>,
    cycles: Vec<OnceLock<Vec<Vect>>>,
    homology: Vec<OnceLock<Subquotient>>,
}

impl KoszulComplex {
    pub fn new(ring: &Arc<PolyRing>, f: &[Poly]) -> Result<KoszulComplex> {
        if f.is_empty() {
            return Err(Error::InvalidInput("empty sequence".into()));
        }
        if f.len() > 31 {
            return Err(Error::InvalidInput("sequence too long".into()));
        }
        let mut degs = Vec::new();
        for p in f {
            crate::ring::same_ring(p.ring(), ring)?;
            match p.degree_info() {
                (true, Some(d)) => degs.push(d as i64),
                _ => return Err(Error::Precondition("sequence must be homogeneous and nonzero".into())),
            }
        }
        let r = f.len();
        let basis: Vec<Vec<u32>> = (0..=r).map(|k| lex_subsets(r, k)).collect();
        let index: Vec<HashMap<u32, usize>> = basis
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, &s)| (s, i)).collect())
            .collect();
        let twist = |s: u32| (0..r).filter(|&l| s & (1 << l) != 0).map(|l| degs[l]).sum::<i64>();
        let comps: Vec<FreeModule> = basis
            .iter()
            .map(|b| FreeModule::new(ring, b.iter().map(|&s| twist(s)).collect()))
            .collect();
        let mut diffs = vec![Matrix::new(FreeModule::new(ring, Vec::new()), comps[0].twists.clone(), vec![Vec::new()])];
        for k in 1..=r {
            let mut cols = Vec::new();
            for &s in &basis[k] {
                let mut v = Vec::new();
                for l in 0..r {
                    if s & (1 << l) == 0 {
                        continue;
                    }
                    let t = index[k - 1][&(s & !(1 << l))] as u32;
                    let neg = removal_sign(s, l);
                    for (m, c) in f[l].terms() {
                        let c = if neg { c.neg() } else { c.clone() };
                        v.push(Term { mon: *m, comp: t, coeff: c });
                    }
                }
                cols.push(crate::groebner::normalize_terms(ring, v));
            }
            diffs.push(Matrix::new(comps[k - 1].clone(), comps[k].twists.clone(), cols));
        }
        Ok(KoszulComplex {
            ring: ring.clone(),
            f: f.to_vec(),
            degs,
            basis,
            index,
            diffs,
            cycles: (0..=r).map(|_| OnceLock::new()).collect(),
            homology: (0..=r).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    pub fn sequence(&self) -> &[Poly] {
        &self.f
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degs
    }

    /// Basis of `K_i` as subsets, in lex order.
    pub fn basis(&self, i: usize) -> &[u32] {
        &self.basis[i]
    }

    pub fn index_of(&self, s: u32) -> usize {
        self.index[s.count_ones() as usize][&s]
    }

    pub fn component(&self, i: usize) -> FreeModule {
        self.diffs[i].source()
    }

    /// `d_i : K_i -> K_{i-1}` for `1 <= i <= r`.
    pub fn differential(&self, i: usize) -> &Matrix {
        assert!(i >= 1 && i <= self.len());
        &self.diffs[i]
    }

    fn check(&self, i: usize) -> Result<()> {
        if i > self.len() {
            return Err(Error::InvalidInput(format!("index {i} outside 0..={}", self.len())));
        }
        Ok(())
    }

    /// Generators of `Z_i`.
    pub fn cycle_gens(&self, i: usize) -> &[Vect] {
        self.cycles[i].get_or_init(|| {
            let k = self.component(i);
            if i == 0 {
                return (0..k.rank()).map(|c| k.basis_vector(c)).collect();
            }
            kernel_cols(&self.diffs[i])
        })
    }

    /// Generators of `B_i`.
    pub fn boundary_gens(&self, i: usize) -> Vec<Vect> {
        if i >= self.len() {
            return Vec::new();
        }
        self.diffs[i + 1].cols.clone()
    }

    pub fn cycles(&self, i: usize) -> Result<Subquotient> {
        self.check(i)?;
        Ok(Subquotient::new(self.component(i), self.cycle_gens(i).to_vec(), Vec::new()))
    }

    pub fn boundaries(&self, i: usize) -> Result<Subquotient> {
        self.check(i)?;
        Ok(Subquotient::new(self.component(i), self.boundary_gens(i), Vec::new()))
    }

    pub fn homology(&self, i: usize) -> Result<&Subquotient> {
        self.check(i)?;
        Ok(self.homology[i].get_or_init(|| {
            Subquotient::new(self.component(i), self.cycle_gens(i).to_vec(), self.boundary_gens(i))
        }))
    }

    /// `b H_i` as the submodule `(b Z_i + B_i) / B_i` of `H_i`.
    pub fn mult_image(&self, i: usize, b: &Poly) -> Result<Subquotient> {
        Ok(self.homology(i)?.mult_image(b))
    }

    pub fn ann_homology(&self, i: usize) -> Result<Ideal> {
        let h = self.homology(i)?;
        if h.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        Ok(h.annihilator())
    }

    /// `∩ Ann(H_i)` over the given indices; zero homologies contribute the
    /// unit ideal.
    pub fn uniform_annihilator(&self, range: impl IntoIterator<Item = usize>) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for i in range {
            let a = self.ann_homology(i)?;
            if !a.is_unit() {
                acc = if acc.is_unit() { a } else { acc.intersect(&a) };
            }
        }
        Ok(acc)
    }

    fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.f.clone())
    }

    /// `SD_k` at level `t`: `depth H_i >= min{d-g, d-r+i+k}` for `i >= r-g-t`.
    pub fn sd_check(&self, k: i64, t: i64) -> SdReport {
        let (d, g, r) = (self.ring.n() as i64, self.ideal().height(), self.len() as i64);
        let mut rows = Vec::new();
        for i in (r - g - t).max(0)..=r {
            let depth = self.homology(i as usize).unwrap().depth();
            let bound = (d - g).min(d - r + i + k);
            rows.push(WitnessRow::new(i, depth, bound));
        }
        SdReport::new(Condition::Sd, k, t, d, g, r, rows)
    }

    /// `SDC_k` at level `t`: `depth Z_i >= min{d-r+i+k, d-g+2, d}` for
    /// `i >= r-g-t`.
    pub fn sdc_check(&self, k: i64, t: i64) -> SdReport {
        let (d, g, r) = (self.ring.n() as i64, self.ideal().height(), self.len() as i64);
        let mut rows = Vec::new();
        for i in (r - g - t).max(0)..=r {
            let depth = self.cycles(i as usize).unwrap().depth();
            let bound = (d - r + i + k).min(d - g + 2).min(d);
            rows.push(WitnessRow::new(i, depth, bound));
        }
        SdReport::new(Condition::Sdc, k, t, d, g, r, rows)
    }

    /// Every nonzero Koszul homology is Cohen–Macaulay.
    pub fn scm_check(&self) -> SdReport {
        let (d, g, r) = (self.ring.n() as i64, self.ideal().height(), self.len() as i64);
        let mut rows = Vec::new();
        for i in 0..=r {
            let h = self.homology(i as usize).unwrap();
            let depth = h.depth();
            // a CM module of dimension dim has depth dim; zero is vacuous
            let bound = if h.is_zero() { 0 } else { h.dim() };
            rows.push(WitnessRow::new(i, depth, bound));
        }
        SdReport::new(Condition::Scm, r - g, r - g, d, g, r, rows)
    }
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub enum Condition {
    Sd,
    Sdc,
    Scm,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessRow {
    pub i: i64,
    /// `None` stands for the zero module, whose depth is `+∞`.
    pub depth: Option<i64>,
    pub bound: i64,
    pub ok: bool,
}

impl WitnessRow {
    fn new(i: i64, depth: Option<i64>, bound: i64) -> WitnessRow {
        let ok = depth.is_none_or(|d| d >= bound);
        WitnessRow { i, depth, bound, ok }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SdReport {
    pub condition: Condition,
    pub k: i64,
    pub level: i64,
    pub d: i64,
    pub g: i64,
    pub r: i64,
    pub verdict: bool,
    pub witness: Vec<WitnessRow>,
}

impl SdReport {
    fn new(condition: Condition, k: i64, level: i64, d: i64, g: i64, r: i64, witness: Vec<WitnessRow>) -> SdReport {
        let verdict = witness.iter().all(|w| w.ok);
        SdReport { condition, k, level, d, g, r, verdict, witness }
    }
}

/// Result of checking `0 -> Z_j(f) -> Z_j(f0, f) -> Γ_{j-1} -> 0` with
/// `Γ = (B :_Z f0)` taken in the complex of `f`.
#[derive(Clone, Debug, Serialize)]
pub struct CycleSequenceReport {
    pub j: usize,
    pub inclusion_lands_in_cycles: bool,
    pub image_is_gamma: bool,
    pub kernel_is_cycles: bool,
    pub exact: bool,
}

/// Build both complexes and verify exactness of the cycle sequence at `j`.
pub fn cycle_sequence(f0: &Poly, rest: &[Poly], j: usize) -> Result<CycleSequenceReport> {
    let ring = f0.ring().clone();
    let mut all = vec![f0.clone()];
    all.extend_from_slice(rest);
    let big = KoszulComplex::new(&ring, &all)?;
    let small = KoszulComplex::new(&ring, rest)?;
    if j == 0 || j > all.len() {
        return Err(Error::InvalidInput(format!("j must lie in 1..={}", all.len())));
    }
    // Inclusion K(f) -> K(f0, f): index l of f becomes l + 1.
    let embed = |v: &Vect, i: usize| -> Vect {
        let mut out: Vec<Term> = v
            .iter()
            .map(|t| {
                let s = small.basis(i)[t.comp as usize] << 1;
                Term { mon: t.mon, comp: big.index_of(s) as u32, coeff: t.coeff.clone() }
            })
            .collect();
        crate::groebner::storage_sort(&ring, &mut out);
        out
    };
    // φ(e_0 ∧ w + v) = w.
    let phi = |v: &Vect| -> Vect {
        let mut out: Vec<Term> = v
            .iter()
            .filter_map(|t| {
                let s = big.basis(j)[t.comp as usize];
                (s & 1 == 1).then(|| Term {
                    mon: t.mon,
                    comp: small.index_of(s >> 1) as u32,
                    coeff: t.coeff.clone(),
                })
            })
            .collect();
        crate::groebner::storage_sort(&ring, &mut out);
        out
    };
    let kbig = big.component(j);
    let kprev = small.component(j - 1);
    let zbig = Subquotient::new(kbig.clone(), big.cycle_gens(j).to_vec(), Vec::new());

    let z_small: Vec<Vect> = if j <= rest.len() {
        small.cycle_gens(j).iter().map(|v| embed(v, j)).collect()
    } else {
        Vec::new()
    };
    let inclusion_lands_in_cycles = z_small.iter().all(|v| zbig.contains(v));

    let gamma = module_colon(&kprev, small.cycle_gens(j - 1), &small.boundary_gens(j - 1), f0);
    let image: Vec<Vect> = big.cycle_gens(j).iter().map(phi).collect();
    let gamma_m = Subquotient::new(kprev.clone(), gamma.clone(), Vec::new());
    let image_m = Subquotient::new(kprev.clone(), image.clone(), Vec::new());
    let image_is_gamma =
        image.iter().all(|v| gamma_m.contains(v)) && gamma.iter().all(|v| image_m.contains(v));

    // kernel of φ on Z'_j
    let phi_mat = Matrix::from_cols(kprev.clone(), image, 0);
    let phi_mat = Matrix::new(phi_mat.target.clone(), zbig_twists(&kbig, big.cycle_gens(j)), phi_mat.cols);
    let ker = kernel_cols(&phi_mat);
    let combo = Matrix::new(kbig.clone(), phi_mat.source_twists.clone(), big.cycle_gens(j).to_vec());
    let ker_vecs: Vec<Vect> = minimal_generators(&kbig, &ker.iter().map(|u| combo.apply(u)).collect::<Vec<_>>());
    let zs = Subquotient::new(kbig.clone(), z_small.clone(), Vec::new());
    let km = Subquotient::new(kbig, ker_vecs.clone(), Vec::new());
    let kernel_is_cycles =
        ker_vecs.iter().all(|v| zs.contains(v)) && z_small.iter().all(|v| km.contains(v));

    Ok(CycleSequenceReport {
        j,
        inclusion_lands_in_cycles,
        image_is_gamma,
        kernel_is_cycles,
        exact: inclusion_lands_in_cycles && image_is_gamma && kernel_is_cycles,
    })
}

fn zbig_twists(k: &FreeModule, gens: &[Vect]) -> Vec<i64> {
    gens.iter().map(|g| k.degree_of(g).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse::parse_poly;
    use crate::ring::Field;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::standard(Field::Prime(32003), vars)
    }

    fn seq(r: &Arc<PolyRing>, gens: &[&str]) -> Vec<Poly> {
        gens.iter().map(|s| parse_poly(r, s).unwrap()).collect()
    }

    fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
        Ideal::new(r, seq(r, gens))
    }

    #[test]
    fn ranks_and_complex() {
        let r = ring(&["x", "y", "z"]);
        let k = KoszulComplex::new(&r, &seq(&r, &["x"])).unwrap();
        assert_eq!(k.component(1).twists, vec![1]);
        let k = KoszulComplex::new(&r, &seq(&r, &["x", "y", "z^2"])).unwrap();
        let ranks: Vec<usize> = (0..=3).map(|i| k.component(i).rank()).collect();
        assert_eq!(ranks, vec![1, 3, 3, 1]);
        for i in 1..3 {
            assert!(k.differential(i).compose(k.differential(i + 1)).is_zero());
        }
        assert_eq!(lex_subsets(4, 2), vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
    }

    #[test]
    fn homology_examples() {
        let r = ring(&["x", "y"]);
        let k = KoszulComplex::new(&r, &seq(&r, &["x", "y"])).unwrap();
        assert!(k.homology(1).unwrap().is_zero());
        assert!(k.ann_homology(1).unwrap().is_unit());
        let h0 = k.homology(0).unwrap();
        assert!(h0.annihilator().equals(&ideal(&r, &["x", "y"])));

        let k = KoszulComplex::new(&r, &seq(&r, &["x^2*y", "x*y^2"])).unwrap();
        assert!(k.ann_homology(1).unwrap().equals(&ideal(&r, &["x*y"])));
        let xh = k.mult_image(1, &parse_poly(&r, "x").unwrap()).unwrap();
        assert!(xh.annihilator().equals(&ideal(&r, &["y"])));
        assert!(k.homology(5).is_err());

        let k = KoszulComplex::new(&r, &seq(&r, &["x^2", "y^2"])).unwrap();
        assert!(k.mult_image(1, &parse_poly(&r, "x*y").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn mult_image_hilbert_function() {
        // HF(b H) = HF(H) - HF(0 :_H b), with the kernel computed separately.
        let r = ring(&["x", "y", "z"]);
        let k = KoszulComplex::new(&r, &seq(&r, &["x^2", "x*y", "y*z"])).unwrap();
        let b = parse_poly(&r, "z").unwrap();
        let h = k.homology(1).unwrap();
        let bh = k.mult_image(1, &b).unwrap();
        let colon = module_colon(&k.component(1), k.cycle_gens(1), &k.boundary_gens(1), &b);
        let kernel = Subquotient::new(k.component(1), colon, k.boundary_gens(1));
        for d in 0..8 {
            let shifted = if d >= 1 { kernel.hilbert_function(d - 1) } else { 0 };
            assert_eq!(
                bh.hilbert_function(d),
                h.hilbert_function(d - 1) - shifted,
                "degree {d}"
            );
        }
    }

    #[test]
    fn scm_examples() {
        let r = ring(&["x", "y", "z"]);
        let k = KoszulComplex::new(&r, &seq(&r, &["x", "y", "z"])).unwrap();
        assert!(k.scm_check().verdict);
        let k = KoszulComplex::new(&r, &seq(&r, &["x^2", "x*y", "y^2"])).unwrap();
        let rep = k.scm_check();
        assert!(rep.verdict, "{rep:?}");
        for row in &rep.witness {
            if let Some(d) = row.depth {
                assert_eq!(d, k.homology(row.i as usize).unwrap().dim());
            }
        }
    }

    #[test]
    fn cycle_sequence_examples() {
        let r = ring(&["x", "y"]);
        let x = parse_poly(&r, "x").unwrap();
        assert!(cycle_sequence(&x, &seq(&r, &["y"]), 1).unwrap().exact);
        assert!(cycle_sequence(&x, &seq(&r, &["x"]), 1).unwrap().exact);
        assert!(cycle_sequence(&x, &seq(&r, &["x", "y"]), 2).unwrap().exact);
    }
}
