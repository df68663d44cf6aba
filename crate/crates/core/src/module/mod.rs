//! Graded modules over a polynomial ring, realised as subquotients of twisted
//! free modules.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{component_poly, normalize_terms, poly_to_terms, Term};
use crate::ring::{Coeff, Monomial, Poly, PolyRing};

pub mod ext;
pub mod fitting;
pub mod hilbert;
pub mod linalg;
pub mod resolution;
pub mod subquotient;

pub use hilbert::HilbertSeries;
pub use resolution::Resolution;
pub use subquotient::{Presentation, Subquotient};

/// A vector of a free module: terms in storage order (component ascending,
/// then descending monomial).
pub type Vect = Vec<Term>;

/// `F = ⊕ R(-d_i)`, recorded by the generator degrees `d_i`.
#[derive(Clone, Debug)]
pub struct FreeModule {
    pub ring: Arc<PolyRing>,
    pub twists: Vec<i64>,
}

impl FreeModule {
    pub fn new(ring: &Arc<PolyRing>, twists: Vec<i64>) -> FreeModule {
        FreeModule { ring: ring.clone(), twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn basis_vector(&self, i: usize) -> Vect {
        vec![Term { mon: Monomial::one(), comp: i as u32, coeff: self.ring.field.one() }]
    }

    /// Degree of a homogeneous nonzero vector.
    pub fn degree_of(&self, v: &[Term]) -> Option<i64> {
        v.first().map(|t| t.mon.deg() as i64 + self.twists[t.comp as usize])
    }

    pub fn is_homogeneous(&self, v: &[Term]) -> bool {
        match self.degree_of(v) {
            None => true,
            Some(d) => v.iter().all(|t| t.mon.deg() as i64 + self.twists[t.comp as usize] == d),
        }
    }

    pub fn from_polys(&self, entries: &[Poly]) -> Vect {
        let mut v = Vec::new();
        for (i, p) in entries.iter().enumerate() {
            v.extend(poly_to_terms(p, i as u32));
        }
        normalize_terms(&self.ring, v)
    }

    pub fn to_polys(&self, v: &[Term]) -> Vec<Poly> {
        (0..self.rank()).map(|i| component_poly(&self.ring, v, i as u32)).collect()
    }

    /// Direct sum with another free module.
    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let mut t = self.twists.clone();
        t.extend_from_slice(&other.twists);
        FreeModule::new(&self.ring, t)
    }
}

/// `a + c * m * b`.
pub fn vadd_scaled(ring: &PolyRing, a: &[Term], c: &Coeff, m: &Monomial, b: &[Term]) -> Vect {
    let mut out: Vec<Term> = a.to_vec();
    for t in b {
        out.push(Term { mon: t.mon.mul(m), comp: t.comp, coeff: t.coeff.mul(c) });
    }
    normalize_terms(ring, out)
}

pub fn vadd(ring: &PolyRing, a: &[Term], b: &[Term]) -> Vect {
    vadd_scaled(ring, a, &ring.field.one(), &Monomial::one(), b)
}

pub fn vneg(v: &[Term]) -> Vect {
    v.iter().map(|t| Term { coeff: t.coeff.neg(), ..t.clone() }).collect()
}

/// `p * v`.
pub fn vmul_poly(ring: &PolyRing, p: &Poly, v: &[Term]) -> Vect {
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        for t in v {
            out.push(Term { mon: t.mon.mul(m), comp: t.comp, coeff: t.coeff.mul(c) });
        }
    }
    normalize_terms(ring, out)
}

/// Move every component `c` of `v` to `c + offset`.
pub fn vshift(v: &[Term], offset: u32) -> Vect {
    v.iter().map(|t| Term { comp: t.comp + offset, ..t.clone() }).collect()
}

/// A graded homomorphism `⊕ R(-s_j) -> target`, stored by columns.
#[derive(Clone, Debug)]
pub struct Matrix {
    pub target: FreeModule,
    pub source_twists: Vec<i64>,
    pub cols: Vec<Vect>,
}

impl Matrix {
    pub fn new(target: FreeModule, source_twists: Vec<i64>, cols: Vec<Vect>) -> Matrix {
        assert_eq!(source_twists.len(), cols.len());
        Matrix { target, source_twists, cols }
    }

    /// Build from columns, taking the source twists from the column degrees.
    /// Zero columns get twist `default_twist`.
    pub fn from_cols(target: FreeModule, cols: Vec<Vect>, default_twist: i64) -> Matrix {
        let twists = cols.iter().map(|c| target.degree_of(c).unwrap_or(default_twist)).collect();
        Matrix::new(target, twists, cols)
    }

    /// Row-major polynomial entries.
    pub fn from_rows(ring: &Arc<PolyRing>, target_twists: Vec<i64>, rows: &[Vec<Poly>]) -> Result<Matrix> {
        let target = FreeModule::new(ring, target_twists);
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) || rows.len() != target.rank() {
            return Err(Error::InvalidInput("ragged matrix".into()));
        }
        let cols: Vec<Vect> = (0..ncols)
            .map(|j| target.from_polys(&rows.iter().map(|r| r[j].clone()).collect::<Vec<_>>()))
            .collect();
        Ok(Matrix::from_cols(target, cols, 0))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.target.ring
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn source(&self) -> FreeModule {
        FreeModule::new(self.ring(), self.source_twists.clone())
    }

    pub fn entry(&self, i: usize, j: usize) -> Poly {
        component_poly(self.ring(), &self.cols[j], i as u32)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// Image of a source vector.
    pub fn apply(&self, v: &[Term]) -> Vect {
        let ring = self.ring();
        let mut out = Vec::new();
        for t in v {
            for s in &self.cols[t.comp as usize] {
                out.push(Term { mon: s.mon.mul(&t.mon), comp: s.comp, coeff: s.coeff.mul(&t.coeff) });
            }
        }
        normalize_terms(ring, out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Matrix) -> Matrix {
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        Matrix::new(self.target.clone(), other.source_twists.clone(), cols)
    }

    /// The dual map `Hom(target, R(-g)) -> Hom(source, R(-g))`.
    pub fn dual(&self, g: i64) -> Matrix {
        let ring = self.ring().clone();
        let target = FreeModule::new(&ring, self.source_twists.iter().map(|s| g - s).collect());
        let mut cols: Vec<Vec<Term>> = vec![Vec::new(); self.nrows()];
        for (j, c) in self.cols.iter().enumerate() {
            for t in c {
                cols[t.comp as usize].push(Term { mon: t.mon, comp: j as u32, coeff: t.coeff.clone() });
            }
        }
        let cols = cols.into_iter().map(|c| normalize_terms(&ring, c)).collect();
        let source_twists = self.target.twists.iter().map(|s| g - s).collect();
        Matrix::new(target, source_twists, cols)
    }

    /// Whether every column is homogeneous of its recorded source degree.
    pub fn is_graded(&self) -> bool {
        self.cols.iter().zip(&self.source_twists).all(|(c, &s)| {
            c.iter().all(|t| t.mon.deg() as i64 + self.target.twists[t.comp as usize] == s)
        })
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| self.entry(i, j)).collect())
            .collect()
    }
}

/// Text form `[p_1, ..., p_r]` of a vector.
pub fn vector_to_string(ring: &Arc<PolyRing>, rank: usize, v: &[Term]) -> String {
    let parts: Vec<String> = (0..rank)
        .map(|i| component_poly(ring, v, i as u32).to_string())
        .collect();
    format!("[{}]", parts.join(", "))
}
