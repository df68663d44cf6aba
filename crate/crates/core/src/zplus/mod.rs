//! The residual approximation complexes `_kZ^+`, disguised residual
//! intersections and symmetric powers of `I/a`.

pub mod cech;
pub mod chain;
pub mod complex;

use std::sync::Arc;

use serde::Serialize;

pub use cech::HomotopyChoice;
pub use complex::{Component, RankAuditRow, SpotKind, ZPlusComplex};

use crate::error::{Error, Result};
use crate::groebner::component_poly;
use crate::groebner::ideal::Ideal;
use crate::groebner::Term;
use crate::koszul::KoszulComplex;
use crate::module::subquotient::module_colon;
use crate::module::{FreeModule, Subquotient, Vect};
use crate::residual::{symmetric_relations, syzygies, ResidualDatum};
use crate::ring::{MonomialOrder, Poly, PolyRing};

/// `Sym(I) = S/L` with `S = R[T_1..T_r]`, the forms `γ_i` and `g = (T)`.
pub struct SymPresentation {
    pub ext: Arc<PolyRing>,
    pub l: Ideal,
    pub gamma: Vec<Poly>,
    pub g_ideal: Ideal,
}

pub fn sym_defining_ideal(rd: &ResidualDatum) -> SymPresentation {
    let (ext, l, gamma) = symmetric_relations(rd, MonomialOrder::Grevlex);
    let n = rd.ring().n();
    let g_ideal = Ideal::new(&ext, (0..rd.r()).map(|j| Poly::var(&ext, n + j)).collect());
    SymPresentation { l: Ideal::new(&ext, l), gamma, g_ideal, ext }
}

/// `Sym^k(I/a) = (S/(L + (γ)))_[k]`, presented on the `T`-monomials of
/// degree `k` with relations `m·g` for `g` a generator of `L` or `γ`.
pub fn sym_power_direct(rd: &ResidualDatum, k: usize) -> Subquotient {
    let ring = rd.ring().clone();
    let r = rd.r();
    let fdeg = rd.f_degrees();
    let monos = chain::compositions(r, k as i32);
    let pos: std::collections::HashMap<Vec<i32>, usize> =
        monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let twist = |m: &[i32]| m.iter().zip(&fdeg).map(|(&e, &d)| e as i64 * d).sum::<i64>();
    let ambient = FreeModule::new(&ring, monos.iter().map(|m| twist(m)).collect());
    // linear forms in T as coefficient vectors over f
    let fm = FreeModule::new(&ring, fdeg.clone());
    let mut linear: Vec<Vec<Poly>> = syzygies(rd.i.gens()).iter().map(|z| fm.to_polys(z)).collect();
    for i in 0..rd.s {
        let col: Vec<Poly> = (0..r).map(|j| rd.lifting[j][i].clone()).collect();
        if col.iter().any(|p| !p.is_zero()) {
            linear.push(col);
        }
    }
    let mut rels = Vec::new();
    if k >= 1 {
        for m in chain::compositions(r, k as i32 - 1) {
            for u in &linear {
                let mut v = Vec::new();
                for (j, uj) in u.iter().enumerate() {
                    let mut m2 = m.clone();
                    m2[j] += 1;
                    let idx = pos[&m2] as u32;
                    for (mon, c) in uj.terms() {
                        v.push(Term { mon: *mon, comp: idx, coeff: c.clone() });
                    }
                }
                rels.push(crate::groebner::normalize_terms(&ring, v));
            }
        }
    }
    let gens = (0..ambient.rank()).map(|i| ambient.basis_vector(i)).collect();
    Subquotient::new(ambient, gens, rels)
}

/// The disguised residual intersection `K`, with `H_0(_0Z^+) = R/K`: the
/// ideal generated by the image of `τ_0` in `(D_0)_[0] = R`.
pub fn disguised_residual(rd: &ResidualDatum) -> Result<Ideal> {
    disguised_residual_with(rd, HomotopyChoice::Min)
}

pub fn disguised_residual_with(rd: &ResidualDatum, choice: HomotopyChoice) -> Result<Ideal> {
    let z = ZPlusComplex::assemble_with(rd, 0, choice)?;
    let ring = rd.ring().clone();
    let gens: Vec<Poly> = if z.s == 0 {
        Vec::new()
    } else {
        z.components[1]
            .gens
            .iter()
            .map(|g| component_poly(&ring, &z.maps[1].apply(g), 0))
            .filter(|p| !p.is_zero())
            .collect()
    };
    let k = Ideal::new(&ring, gens);
    Ok(if k.is_homogeneous() && !k.is_zero() { k.minimalized() } else { k })
}

/// Oracle for `H_i(_0Z^+)` when `I = (b, a_1..a_s)`: the module
/// `Z_i(a) / (B_i(a) :_{Z_i(a)} b)`, isomorphic to `b H_i(a)` up to a shift
/// by `deg b`, built from Koszul data alone.
pub fn hd_structure_oracle(rd: &ResidualDatum, i: usize) -> Result<Subquotient> {
    if rd.r() != rd.s + 1 || rd.i.gens()[1..] != *rd.a.gens() {
        return Err(Error::Precondition("the oracle needs I = (b, a_1, ..., a_s) with b first".into()));
    }
    let b = &rd.i.gens()[0];
    let k = KoszulComplex::new(rd.ring(), rd.a.gens())?;
    if i > rd.s {
        return Ok(Subquotient::new(FreeModule::new(rd.ring(), Vec::new()), Vec::new(), Vec::new()));
    }
    let amb = k.component(i);
    let z = k.cycle_gens(i).to_vec();
    let colon = module_colon(&amb, &z, &k.boundary_gens(i), b);
    Ok(Subquotient::new(amb, z, colon))
}

/// The lifting `a_i = f_{i+1}` for `I = (b, a_1..a_s)`.
pub fn principal_extension(b: &Poly, a: &[Poly]) -> Result<ResidualDatum> {
    let ring = b.ring().clone();
    let mut f = vec![b.clone()];
    f.extend_from_slice(a);
    let s = a.len();
    let mut lifting = vec![vec![Poly::zero(&ring); s]; s + 1];
    for i in 0..s {
        lifting[i + 1][i] = Poly::one(&ring);
    }
    crate::residual::with_lifting(&Ideal::new(&ring, f), &Ideal::new(&ring, a.to_vec()), s, lifting)
}

#[derive(Clone, Debug, Serialize)]
pub struct AcyclicityReport {
    pub k: usize,
    pub s: usize,
    pub g: i64,
    /// `k <= min{s, s-g+2}`.
    pub in_theorem_range: bool,
    /// `H_i = 0` for `i = 1..=s`.
    pub higher_homology_zero: Vec<bool>,
    pub acyclic: bool,
    pub h0_is_zero: bool,
    pub h0_depth: Option<i64>,
    pub h0_dim: i64,
    /// `H_0` is Cohen–Macaulay of codimension `s`.
    pub h0_cm_codim_s: bool,
}

pub fn acyclicity_report(z: &ZPlusComplex, rd: &ResidualDatum) -> AcyclicityReport {
    let n = rd.ring().n() as i64;
    let higher: Vec<bool> = (1..=z.s).map(|i| z.homology(i).unwrap().is_zero()).collect();
    let h0 = z.homology(0).unwrap();
    let (depth, dim) = (h0.depth(), h0.dim());
    let s = z.s as i64;
    AcyclicityReport {
        k: z.k,
        s: z.s,
        g: rd.g,
        in_theorem_range: (z.k as i64) <= s.min(s - rd.g + 2),
        acyclic: higher.iter().all(|&b| b),
        higher_homology_zero: higher,
        h0_is_zero: h0.is_zero(),
        h0_depth: depth,
        h0_dim: dim,
        h0_cm_codim_s: !h0.is_zero() && depth == Some(n - s) && dim == n - s,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    pub k: usize,
    pub sd: bool,
    pub scm: bool,
    pub sdc1_at_level: bool,
    pub cycle_depths_ok: bool,
    pub low_homology_depths_ok: bool,
    pub theorem: [bool; 5],
    pub proposition: [bool; 4],
    pub any: bool,
}

/// The acyclicity hypotheses of the main theorem, items (i)–(v), and of the
/// companion proposition, items (1)–(4), evaluated on `I`.
pub fn hypothesis_check(rd: &ResidualDatum, k: usize) -> Result<HypothesisReport> {
    let kc = KoszulComplex::new(rd.ring(), rd.i.gens())?;
    let (d, g, r, s, kk) = (rd.ring().n() as i64, rd.g, rd.r() as i64, rd.s as i64, k as i64);
    let sd = kc.sd_check(0, r - g).verdict;
    let scm = kc.scm_check().verdict;
    let sdc1_at_level = kc.sdc_check(1, s - g - kk).verdict;
    let cycle_depths_ok = (0..=k.min(rd.r())).all(|i| {
        kc.cycles(i).unwrap().depth().is_none_or(|dep| dep >= d - s + kk)
    });
    let low_homology_depths_ok = (0..k.min(rd.r() + 1)).all(|i| {
        kc.homology(i).unwrap().depth().is_none_or(|dep| dep >= (d - s + kk - 2).min(d - g))
    });
    let theorem = [
        r + kk <= s && sd,
        r + kk > s && sdc1_at_level && cycle_depths_ok,
        kk <= s - r + 2 && sd,
        low_homology_depths_ok && sd,
        scm,
    ];
    let proposition = [
        (1..=2).contains(&s) && s == kk,
        r + kk > s && kk <= 2 && sdc1_at_level,
        r + kk <= s && sd,
        r + kk > s && kk >= 3 && sdc1_at_level && cycle_depths_ok,
    ];
    let any = theorem.iter().chain(proposition.iter()).any(|&b| b);
    Ok(HypothesisReport {
        k,
        sd,
        scm,
        sdc1_at_level,
        cycle_depths_ok,
        low_homology_depths_ok,
        theorem,
        proposition,
        any,
    })
}

/// Whether `τ_k` built with the two homotopy choices has the same image.
pub fn independence_audit(rd: &ResidualDatum, k: usize) -> Result<bool> {
    if k >= rd.s {
        return Ok(true);
    }
    let a = ZPlusComplex::assemble_with(rd, k, HomotopyChoice::Min)?;
    let b = ZPlusComplex::assemble_with(rd, k, HomotopyChoice::Max)?;
    let image = |z: &ZPlusComplex| -> Vec<Vect> {
        z.components[k + 1].gens.iter().map(|g| z.maps[k + 1].apply(g)).collect()
    };
    let (ia, ib) = (image(&a), image(&b));
    let amb = a.components[k].ambient.clone();
    let ma = Subquotient::new(amb.clone(), ia.clone(), Vec::new());
    let mb = Subquotient::new(amb, ib.clone(), Vec::new());
    Ok(ia.iter().all(|v| mb.contains(v)) && ib.iter().all(|v| ma.contains(v)))
}

#[derive(Clone, Debug, Serialize)]
pub struct EndDegreeRow {
    pub d_index: usize,
    pub computed_end: Option<i64>,
    pub expected_end: i64,
}

/// End degree of `H^r_g(D_i)` in the `T`-grading, read off the tail
/// construction, against `i - r`.
pub fn tail_end_degrees(rd: &ResidualDatum) -> Vec<EndDegreeRow> {
    let r = rd.r();
    (r..r + rd.s)
        .map(|i| {
            // inverse monomials T^{-α} with α >= 1 exist in degree [k] iff
            // |α| = i - k >= r
            let computed = (0..=i as i64).rev().find(|&k| !chain::compositions(r, i as i32 - k as i32 - r as i32).is_empty());
            EndDegreeRow { d_index: i, computed_end: computed, expected_end: i as i64 - r as i64 }
        })
        .collect()
}

#[cfg(test)]
mod tests;
