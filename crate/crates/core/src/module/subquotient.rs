//! Subquotients `(G + N) / N` of a twisted free module, minimal presentations
//! and the invariants derived from them.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::hilbert::HilbertSeries;
use super::resolution::Resolution;
use super::{vmul_poly, FreeModule, Matrix, Vect};
use crate::error::{Error, Result};
use crate::groebner::ideal::Ideal;
use crate::groebner::{component_poly, groebner_basis, kernel_mod, normal_form, GradedGb};
use crate::ring::{Poly, PolyRing};

/// A minimal presentation `F1 --rels--> F0 -> M -> 0`. The columns of `gens`
/// are the images in the ambient module of the basis of `F0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub gens: Vec<Vect>,
    pub rels: Matrix,
}

impl Presentation {
    pub fn f0(&self) -> &FreeModule {
        &self.rels.target
    }

    pub fn twists(&self) -> &[i64] {
        &self.rels.target.twists
    }
}

/// The graded module `(gens + rels) / rels` inside `ambient`.
#[derive(Clone)]
pub struct Subquotient {
    ambient: FreeModule,
    gens: Vec<Vect>,
    rels: Vec<Vect>,
    pres: OnceLock<Presentation>,
    res: OnceLock<Resolution>,
    hs: OnceLock<HilbertSeries>,
}

/// Indices of a minimal subset of `cands` generating `cands + base` modulo
/// `base`, scanning candidates by increasing degree.
pub fn minimal_subset(ambient: &FreeModule, base: &[Vect], cands: &[Vect]) -> Vec<usize> {
    let mut ggb = GradedGb::new(ambient.ring.clone(), ambient.twists.clone());
    for b in base {
        if !b.is_empty() {
            ggb.add(b.clone());
        }
    }
    let mut order: Vec<usize> = (0..cands.len()).filter(|&i| !cands[i].is_empty()).collect();
    order.sort_by_key(|&i| ambient.degree_of(&cands[i]).unwrap());
    let mut kept = Vec::new();
    for i in order {
        let d = ambient.degree_of(&cands[i]).unwrap();
        if !ggb.contains(&cands[i], d) {
            ggb.add(cands[i].clone());
            kept.push(i);
        }
    }
    kept
}

/// Minimal homogeneous generators of the submodule spanned by `vs`.
pub fn minimal_generators(ambient: &FreeModule, vs: &[Vect]) -> Vec<Vect> {
    minimal_subset(ambient, &[], vs).into_iter().map(|i| vs[i].clone()).collect()
}

impl Subquotient {
    pub fn new(ambient: FreeModule, gens: Vec<Vect>, rels: Vec<Vect>) -> Subquotient {
        let gens = gens.into_iter().filter(|g| !g.is_empty()).collect();
        let rels = rels.into_iter().filter(|g| !g.is_empty()).collect();
        Subquotient {
            ambient,
            gens,
            rels,
            pres: OnceLock::new(),
            res: OnceLock::new(),
            hs: OnceLock::new(),
        }
    }

    /// Like [`Subquotient::new`] but checks homogeneity.
    pub fn checked(ambient: FreeModule, gens: Vec<Vect>, rels: Vec<Vect>) -> Result<Subquotient> {
        for v in gens.iter().chain(&rels) {
            if !ambient.is_homogeneous(v) {
                return Err(Error::Precondition("module generators must be homogeneous".into()));
            }
        }
        Ok(Subquotient::new(ambient, gens, rels))
    }

    pub fn free(f: FreeModule) -> Subquotient {
        let gens = (0..f.rank()).map(|i| f.basis_vector(i)).collect();
        Subquotient::new(f, gens, Vec::new())
    }

    /// `F / im(rels)`.
    pub fn cokernel(m: &Matrix) -> Subquotient {
        let f = m.target.clone();
        let gens = (0..f.rank()).map(|i| f.basis_vector(i)).collect();
        Subquotient::new(f, gens, m.cols.clone())
    }

    /// `R / I`.
    pub fn quotient_ring(i: &Ideal) -> Subquotient {
        let f = FreeModule::new(i.ring(), vec![0]);
        let rels = i.gens().iter().map(|g| f.from_polys(std::slice::from_ref(g))).collect();
        Subquotient::new(f.clone(), vec![f.basis_vector(0)], rels)
    }

    /// The ideal `I` as a submodule of `R`.
    pub fn of_ideal(i: &Ideal) -> Subquotient {
        let f = FreeModule::new(i.ring(), vec![0]);
        let gens = i.gens().iter().map(|g| f.from_polys(std::slice::from_ref(g))).collect();
        Subquotient::new(f, gens, Vec::new())
    }

    /// `(I + J) / J` inside `R`.
    pub fn ideal_quotient(i: &Ideal, j: &Ideal) -> Subquotient {
        let f = FreeModule::new(i.ring(), vec![0]);
        let gens = i.gens().iter().map(|g| f.from_polys(std::slice::from_ref(g))).collect();
        let rels = j.gens().iter().map(|g| f.from_polys(std::slice::from_ref(g))).collect();
        Subquotient::new(f, gens, rels)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ambient.ring
    }

    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    pub fn gens(&self) -> &[Vect] {
        &self.gens
    }

    pub fn rels(&self) -> &[Vect] {
        &self.rels
    }

    /// `M(a)`: the same module with degrees lowered by `a`.
    pub fn twist(&self, a: i64) -> Subquotient {
        let f = FreeModule::new(self.ring(), self.ambient.twists.iter().map(|t| t - a).collect());
        Subquotient::new(f, self.gens.clone(), self.rels.clone())
    }

    pub fn presentation(&self) -> &Presentation {
        self.pres.get_or_init(|| {
            let ring = self.ring().clone();
            let kept = minimal_subset(&self.ambient, &self.rels, &self.gens);
            let gens: Vec<Vect> = kept.iter().map(|&i| self.gens[i].clone()).collect();
            let degs: Vec<i64> = gens.iter().map(|g| self.ambient.degree_of(g).unwrap()).collect();
            let f0 = FreeModule::new(&ring, degs.clone());
            let syz = if gens.is_empty() {
                Vec::new()
            } else {
                kernel_mod(&ring, &self.ambient.twists, &gens, &degs, &self.rels)
            };
            let rels = minimal_generators(&f0, &syz);
            Presentation { gens, rels: Matrix::from_cols(f0, rels, 0) }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.presentation().gens.is_empty()
    }

    /// Number of minimal generators.
    pub fn mu(&self) -> usize {
        self.presentation().gens.len()
    }

    pub fn resolution(&self) -> &Resolution {
        self.res.get_or_init(|| Resolution::of_presentation(self.presentation(), self.ring().n() + 1))
    }

    pub fn hilbert_series(&self) -> &HilbertSeries {
        self.hs.get_or_init(|| {
            let p = self.presentation();
            HilbertSeries::of_cokernel(self.ring(), p.twists(), &p.rels.cols)
        })
    }

    pub fn hilbert_function(&self, d: i64) -> i64 {
        self.hilbert_series().value(d)
    }

    /// Krull dimension, `-1` for the zero module.
    pub fn dim(&self) -> i64 {
        self.hilbert_series().dim()
    }

    /// Projective dimension; `None` for the zero module.
    pub fn pd(&self) -> Option<usize> {
        self.resolution().pd()
    }

    /// `n - pd`; `None` (read as `+∞`) for the zero module.
    pub fn depth(&self) -> Option<i64> {
        self.pd().map(|p| self.ring().n() as i64 - p as i64)
    }

    pub fn is_cm(&self) -> bool {
        match self.depth() {
            None => true,
            Some(d) => d == self.dim(),
        }
    }

    pub fn regularity(&self) -> Option<i64> {
        self.resolution().regularity()
    }

    /// Least degree of a nonzero element.
    pub fn beg(&self) -> Option<i64> {
        self.presentation().twists().iter().copied().min()
    }

    /// Whether the ambient vector `v` lies in `gens + rels`.
    pub fn contains(&self, v: &[crate::groebner::Term]) -> bool {
        if v.is_empty() {
            return true;
        }
        let mut all = self.gens.clone();
        all.extend(self.rels.iter().cloned());
        let gb = groebner_basis(self.ring(), &self.ambient.twists, &all);
        normal_form(self.ring(), &self.ambient.twists, &gb, v).is_empty()
    }

    /// Whether the ambient vector `v` is zero in the module, i.e. lies in the
    /// relation submodule.
    pub fn is_zero_element(&self, v: &[crate::groebner::Term]) -> bool {
        if v.is_empty() {
            return true;
        }
        let gb = groebner_basis(self.ring(), &self.ambient.twists, &self.rels);
        normal_form(self.ring(), &self.ambient.twists, &gb, v).is_empty()
    }

    /// `Ann(M) = ∩_g (N : g)` over the minimal generators.
    pub fn annihilator(&self) -> Ideal {
        let ring = self.ring().clone();
        let p = self.presentation();
        let f0 = p.f0();
        let mut acc: Option<Ideal> = None;
        for c in 0..f0.rank() {
            let e = f0.basis_vector(c);
            let k = kernel_mod(&ring, &f0.twists, &[e], &[f0.twists[c]], &p.rels.cols);
            let gens = k.iter().map(|v| component_poly(&ring, v, 0)).collect();
            let col = Ideal::new(&ring, gens);
            acc = Some(match acc {
                None => col,
                Some(a) => a.intersect(&col),
            });
            if acc.as_ref().unwrap().is_unit() {
                break;
            }
        }
        acc.unwrap_or_else(|| Ideal::unit(&ring)).minimalized()
    }

    /// The submodule `b * M`, with the same relations.
    pub fn mult_image(&self, b: &Poly) -> Subquotient {
        let ring = self.ring().clone();
        let gens = self.gens.iter().map(|g| vmul_poly(&ring, b, g)).collect();
        Subquotient::new(self.ambient.clone(), gens, self.rels.clone())
    }

    /// Summary of the standard invariants; Hilbert values for degrees
    /// `0..=hf_top`.
    pub fn invariants(&self, hf_top: i64) -> InvariantReport {
        let hs = self.hilbert_series();
        InvariantReport {
            dim: self.dim(),
            depth: self.depth(),
            pd: self.pd(),
            reg: self.regularity(),
            beg: self.beg(),
            is_cm: self.is_cm(),
            mu: self.mu(),
            betti: self.resolution().betti_table(),
            hilbert_numerator: hs.numerator_string(),
            hilbert_function: (0..=hf_top).map(|d| hs.value(d)).collect(),
        }
    }
}

impl std::fmt::Debug for Subquotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subquotient(rank {}, {} gens, {} rels)",
            self.ambient.rank(),
            self.gens.len(),
            self.rels.len()
        )
    }
}

/// Invariants of a graded module, as reported by the command-line tool.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub dim: i64,
    pub depth: Option<i64>,
    pub pd: Option<usize>,
    pub reg: Option<i64>,
    pub beg: Option<i64>,
    pub is_cm: bool,
    pub mu: usize,
    pub betti: Vec<Vec<(i64, usize)>>,
    pub hilbert_numerator: String,
    pub hilbert_function: Vec<i64>,
}

/// `ker(out) / im(inc)` for maps of free modules with `out ∘ inc = 0`.
pub fn homology_at(inc: &Matrix, out: &Matrix) -> Result<Subquotient> {
    if !out.compose(inc).is_zero() {
        return Err(Error::Precondition("composition of the maps is not zero".into()));
    }
    let f = out.source();
    let z = kernel_cols(out);
    Ok(Subquotient::new(f, z, inc.cols.clone()))
}

/// Generators of the kernel of a map of free modules.
pub fn kernel_cols(m: &Matrix) -> Vec<Vect> {
    if m.ncols() == 0 {
        return Vec::new();
    }
    let ring = m.ring();
    let k = kernel_mod(ring, &m.target.twists, &m.cols, &m.source_twists, &[]);
    minimal_generators(&m.source(), &k)
}

/// `(B :_Z f) = {z ∈ Z : f z ∈ B}` for submodules `B ⊆ Z` of `ambient`.
pub fn module_colon(ambient: &FreeModule, z: &[Vect], b: &[Vect], f: &Poly) -> Vec<Vect> {
    let ring = ambient.ring.clone();
    let z: Vec<Vect> = z.iter().filter(|v| !v.is_empty()).cloned().collect();
    if z.is_empty() {
        return Vec::new();
    }
    let fz: Vec<Vect> = z.iter().map(|v| vmul_poly(&ring, f, v)).collect();
    let fdeg = f.hdeg().map(|d| d as i64).unwrap_or(0);
    let degs: Vec<i64> = z.iter().map(|v| ambient.degree_of(v).unwrap() + fdeg).collect();
    let k = kernel_mod(&ring, &ambient.twists, &fz, &degs, b);
    let src = FreeModule::new(&ring, degs.iter().map(|d| d - fdeg).collect());
    let combo = Matrix::new(ambient.clone(), src.twists.clone(), z);
    let out: Vec<Vect> = k.iter().map(|u| combo.apply(u)).collect();
    minimal_generators(ambient, &out)
}
