//! Assembly of `_kZ^+`: the strand `(D_i)_[k]` for `i <= k`, the
//! inverse-polynomial tail `H^r_g(D_{i+r-1})_[k]` for `i > k`, and `τ_k`
//! joining them.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Serialize;

use super::cech::{zigzag, HomotopyChoice};
use super::chain::{compositions, Frame, Label};
use crate::error::{Error, Result};
use crate::groebner::{normalize_terms, Term};
use crate::koszul::lex_subsets;
use crate::module::hilbert::binom;
use crate::module::subquotient::{kernel_cols, minimal_generators};
use crate::module::{FreeModule, Matrix, Subquotient, Vect};
use crate::residual::ResidualDatum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpotKind {
    Head,
    Tail,
}

/// One component: a direct sum of copies of cycle modules `Z_q`, each copy
/// indexed by an exterior basis element `ε_P` and a `T`-exponent, realised
/// inside the free module on all labels.
pub struct Component {
    pub kind: SpotKind,
    pub spot: usize,
    pub labels: Vec<Label>,
    pub ambient: FreeModule,
    pub gens: Vec<Vect>,
    /// `(|Q|, number of Z_q copies)`.
    pub blocks: Vec<(usize, usize)>,
    index: HashMap<Label, usize>,
}

impl Component {
    fn build(frame: &Frame, kind: SpotKind, spot: usize, k: usize) -> Component {
        let (r, s) = (frame.r, frame.s);
        // homological degree in D and the T-exponents of this strand
        let (dspot, betas): (usize, Vec<Vec<i32>>) = match kind {
            SpotKind::Head => (spot, compositions(r, k as i32 - spot as i32)),
            SpotKind::Tail => {
                let dspot = spot + r - 1;
                let len = dspot as i32 - k as i32 - r as i32;
                let betas = compositions(r, len)
                    .into_iter()
                    .map(|a| a.iter().map(|e| -(e + 1)).collect())
                    .collect();
                (dspot, betas)
            }
        };
        let mut labels = Vec::new();
        let mut gens: Vec<Vect> = Vec::new();
        let mut blocks = Vec::new();
        let mut index = HashMap::new();
        for q in 0..r.min(dspot + 1) {
            let pn = dspot - q;
            if pn > s {
                continue;
            }
            let qs = lex_subsets(r, q);
            let zgens = frame.koszul.cycle_gens(q).to_vec();
            let mut copies = 0;
            for &p in &lex_subsets(s, pn) {
                for beta in &betas {
                    copies += 1;
                    let base = labels.len();
                    for &qm in &qs {
                        let lab = Label::new(p, qm, beta.clone());
                        index.insert(lab.clone(), labels.len());
                        labels.push(lab);
                    }
                    for z in &zgens {
                        gens.push(
                            z.iter()
                                .map(|t| Term { mon: t.mon, comp: (base + t.comp as usize) as u32, coeff: t.coeff.clone() })
                                .collect(),
                        );
                    }
                }
            }
            blocks.push((q, copies));
        }
        let ambient = FreeModule::new(&frame.ring, labels.iter().map(|l| frame.degree(l)).collect());
        for g in gens.iter_mut() {
            crate::groebner::storage_sort(&frame.ring, g);
        }
        Component { kind, spot, labels, ambient, gens, blocks, index }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, lab: &Label) -> Option<usize> {
        self.index.get(lab).copied()
    }

    /// The component as a module, generated by the `Z_q` copies.
    pub fn module(&self) -> Subquotient {
        Subquotient::new(self.ambient.clone(), self.gens.clone(), Vec::new())
    }

    fn gen_twists(&self) -> Vec<i64> {
        self.gens.iter().map(|g| self.ambient.degree_of(g).unwrap_or(0)).collect()
    }
}

/// `_kZ^+` with realised maps between the ambient free modules.
pub struct ZPlusComplex {
    pub k: usize,
    pub s: usize,
    pub r: usize,
    pub components: Vec<Component>,
    /// `maps[i] : spot i -> spot i-1` for `i >= 1`; `maps[0]` is empty.
    pub maps: Vec<Matrix>,
    homology: Vec<OnceLock<Subquotient>>,
}

fn to_vect(target: &Component, terms: Vec<(Label, crate::ring::Poly)>, truncate: bool) -> Result<Vect> {
    let mut out = Vec::new();
    for (lab, p) in terms {
        match target.index_of(&lab) {
            Some(i) => {
                for (m, c) in p.terms() {
                    out.push(Term { mon: *m, comp: i as u32, coeff: c.clone() });
                }
            }
            None if truncate && lab.beta.iter().any(|&b| b >= 0) => {}
            None => return Err(Error::Internal(format!("differential left the component: {lab:?}"))),
        }
    }
    Ok(normalize_terms(&target.ambient.ring, out))
}

impl ZPlusComplex {
    pub fn assemble(rd: &ResidualDatum, k: usize) -> Result<ZPlusComplex> {
        ZPlusComplex::assemble_with(rd, k, HomotopyChoice::Min)
    }

    pub fn assemble_with(rd: &ResidualDatum, k: usize, choice: HomotopyChoice) -> Result<ZPlusComplex> {
        check_datum(rd)?;
        let frame = Frame::new(rd)?;
        let (r, s) = (frame.r, frame.s);
        if k > s {
            return Err(Error::InvalidInput(format!("k = {k} exceeds s = {s}")));
        }
        let components: Vec<Component> = (0..=s)
            .map(|i| {
                let kind = if i <= k { SpotKind::Head } else { SpotKind::Tail };
                Component::build(&frame, kind, i, k)
            })
            .collect();
        let mut maps = vec![Matrix::new(FreeModule::new(&frame.ring, Vec::new()), Vec::new(), Vec::new())];
        for i in 1..=s {
            let (src, tgt) = (&components[i], &components[i - 1]);
            let mut cols = Vec::with_capacity(src.rank());
            for lab in &src.labels {
                let col = if src.kind == SpotKind::Tail && tgt.kind == SpotKind::Head {
                    to_vect(tgt, zigzag(&frame, lab, choice)?, false)?
                } else {
                    to_vect(tgt, frame.differential(lab), src.kind == SpotKind::Tail)?
                };
                cols.push(col);
            }
            maps.push(Matrix::new(tgt.ambient.clone(), src.ambient.twists.clone(), cols));
        }
        let zc = ZPlusComplex { k, s, r, components, maps, homology: (0..=s).map(|_| OnceLock::new()).collect() };
        if !zc.is_complex() {
            return Err(Error::Internal("consecutive maps of _kZ^+ do not compose to zero".into()));
        }
        Ok(zc)
    }

    /// Consecutive compositions vanish on the generators (including across τ).
    pub fn is_complex(&self) -> bool {
        for i in 2..=self.s {
            for g in &self.components[i].gens {
                if !self.maps[i - 1].apply(&self.maps[i].apply(g)).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Images of the generators of spot `i` (inside the ambient of spot
    /// `i-1`) lie in the submodule generated there.
    pub fn maps_preserve_cycles(&self) -> bool {
        (1..=self.s).all(|i| {
            let tgt = self.components[i - 1].module();
            self.components[i].gens.iter().all(|g| tgt.contains(&self.maps[i].apply(g)))
        })
    }

    pub fn homology(&self, i: usize) -> Result<&Subquotient> {
        if i > self.s {
            return Err(Error::InvalidInput(format!("spot {i} outside 0..={}", self.s)));
        }
        Ok(self.homology[i].get_or_init(|| self.compute_homology(i)))
    }

    fn compute_homology(&self, i: usize) -> Subquotient {
        let c = &self.components[i];
        let cycles = if i == 0 {
            c.gens.clone()
        } else {
            let imgs: Vec<Vect> = c.gens.iter().map(|g| self.maps[i].apply(g)).collect();
            let m = Matrix::new(self.components[i - 1].ambient.clone(), c.gen_twists(), imgs);
            let combo = Matrix::new(c.ambient.clone(), c.gen_twists(), c.gens.clone());
            let vs: Vec<Vect> = kernel_cols(&m).iter().map(|u| combo.apply(u)).collect();
            minimal_generators(&c.ambient, &vs)
        };
        let bounds = if i < self.s {
            self.components[i + 1].gens.iter().map(|g| self.maps[i + 1].apply(g)).collect()
        } else {
            Vec::new()
        };
        Subquotient::new(c.ambient.clone(), cycles, bounds)
    }

    /// Whether `H_i = 0` for every `i >= 1`.
    pub fn is_acyclic(&self) -> bool {
        (1..=self.s).all(|i| self.homology(i).unwrap().is_zero())
    }

    /// Whether every homology module vanishes.
    pub fn is_exact(&self) -> bool {
        (0..=self.s).all(|i| self.homology(i).unwrap().is_zero())
    }

    /// Per spot and cycle index: built copies against the binomial count.
    pub fn rank_audit(&self) -> Vec<RankAuditRow> {
        let mut rows = Vec::new();
        for c in &self.components {
            for &(q, copies) in &c.blocks {
                let expected = match c.kind {
                    SpotKind::Head => {
                        binom(self.s as i64, c.spot as i64 - q as i64)
                            * binom((self.k - c.spot) as i64 + self.r as i64 - 1, self.r as i64 - 1)
                    }
                    SpotKind::Tail => {
                        let dspot = (c.spot + self.r - 1) as i64;
                        binom(self.s as i64, dspot - q as i64)
                            * binom(dspot - self.k as i64 - 1, self.r as i64 - 1)
                    }
                };
                rows.push(RankAuditRow { spot: c.spot, kind: c.kind, q, copies, expected: expected as usize });
            }
        }
        rows
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankAuditRow {
    pub spot: usize,
    pub kind: SpotKind,
    pub q: usize,
    pub copies: usize,
    pub expected: usize,
}

pub(crate) fn check_datum(rd: &ResidualDatum) -> Result<()> {
    if rd.a.gens().iter().all(|g| g.is_zero()) {
        return Err(Error::InvalidInput("the zero ideal a is not allowed".into()));
    }
    if !rd.i.is_homogeneous() || !rd.a.is_homogeneous() {
        return Err(Error::Precondition("_kZ^+ needs homogeneous I and a".into()));
    }
    if rd.r() + rd.s > 31 {
        return Err(Error::InvalidInput("too many generators".into()));
    }
    Ok(())
}
