//! Residual intersections `J = (a : I)`: lifting data, classification,
//! saturation residuals, random sections and single-element colons.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::ideal::Ideal;
use crate::groebner::poly_to_terms;
use crate::module::fitting::fitting_ideal;
use crate::module::linalg::monomials_of_degree;
use crate::module::subquotient::kernel_cols;
use crate::module::{FreeModule, Matrix, Vect};
use crate::ring::{Field, MonomialOrder, Poly, PolyRing};

/// `a ⊆ I` together with an expression `a_i = Σ_j c[j][i] f_j` and the colon
/// `J = (a : I)`.
#[derive(Clone, Debug)]
pub struct ResidualDatum {
    pub i: Ideal,
    pub a: Ideal,
    pub s: usize,
    pub g: i64,
    /// `lifting[j][i] = c_{ji}`, an `r × s` matrix.
    pub lifting: Vec<Vec<Poly>>,
    pub j: Ideal,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Classification {
    pub is_algebraic: bool,
    pub is_geometric: bool,
    pub is_arithmetic: bool,
    pub ht_j: i64,
    pub ht_i_plus_j: i64,
    /// Heights of `Fitt_0(I/a)` and `Fitt_1(I/a)`.
    pub fitting_witness: [i64; 2],
}

/// Homogeneous component of degree `d`.
fn degree_part(p: &Poly, d: i64) -> Poly {
    let terms = p
        .terms()
        .iter()
        .filter(|(m, _)| m.deg() as i64 == d)
        .cloned()
        .collect();
    Poly::from_terms(p.ring(), terms)
}

fn hdeg(p: &Poly) -> Option<i64> {
    p.hdeg().map(|d| d as i64)
}

impl ResidualDatum {
    pub fn ring(&self) -> &Arc<PolyRing> {
        self.i.ring()
    }

    pub fn r(&self) -> usize {
        self.i.gens().len()
    }

    /// Degrees of the generators of `I`.
    pub fn f_degrees(&self) -> Vec<i64> {
        self.i.gens().iter().map(|f| hdeg(f).unwrap_or(0)).collect()
    }

    /// Degrees of the generators of `a`; padded zero generators get the
    /// largest generator degree of `I`.
    pub fn a_degrees(&self) -> Vec<i64> {
        let top = self.f_degrees().into_iter().max().unwrap_or(0);
        self.a.gens().iter().map(|a| hdeg(a).unwrap_or(top)).collect()
    }

    /// `σ(a)`, the sum of the generator degrees of `a`.
    pub fn sigma(&self) -> i64 {
        self.a_degrees().iter().sum()
    }

    /// Check `a_i = Σ_j c_{ji} f_j` exactly.
    pub fn verify_lifting(&self) -> Result<()> {
        let ring = self.ring();
        for (i, ai) in self.a.gens().iter().enumerate() {
            let mut acc = Poly::zero(ring);
            for (j, fj) in self.i.gens().iter().enumerate() {
                acc = &acc + &(&self.lifting[j][i] * fj);
            }
            if &acc != ai {
                return Err(Error::Internal(format!("lifting identity fails for generator {}", i + 1)));
            }
        }
        Ok(())
    }

    /// Presentation `[Syz(f) | c]` of `I/a` on the generators of `I`.
    pub fn quotient_presentation(&self) -> Matrix {
        let ring = self.ring().clone();
        let target = FreeModule::new(&ring, self.f_degrees());
        let mut cols = syzygies(self.i.gens());
        let adeg = self.a_degrees();
        let mut twists: Vec<i64> = cols.iter().map(|c| target.degree_of(c).unwrap()).collect();
        for i in 0..self.s {
            let col: Vec<Poly> = (0..self.r()).map(|j| self.lifting[j][i].clone()).collect();
            cols.push(target.from_polys(&col));
            twists.push(adeg[i]);
        }
        Matrix::new(target, twists, cols)
    }

    pub fn classify(&self) -> Classification {
        let s = self.s as i64;
        let ht_j = self.j.height();
        let ht_i_plus_j = self.i.sum(&self.j).height();
        let pres = self.quotient_presentation();
        let fitt0 = fitting_ideal(&pres, 0).height();
        let fitt1 = fitting_ideal(&pres, 1).height();
        let is_algebraic = !self.j.is_unit() && ht_j >= s;
        let is_geometric = is_algebraic && ht_i_plus_j > s;
        let is_arithmetic = is_algebraic && fitt0 >= s && fitt1 > s;
        let c = Classification {
            is_algebraic,
            is_geometric,
            is_arithmetic,
            ht_j,
            ht_i_plus_j,
            fitting_witness: [fitt0, fitt1],
        };
        assert!(!c.is_geometric || c.is_arithmetic, "geometric residual that is not arithmetic: {c:?}");
        c
    }
}

/// Minimal generators of the syzygy module of `f`, as vectors in
/// `⊕ R(-deg f_j)`.
pub fn syzygies(f: &[Poly]) -> Vec<Vect> {
    let ring = f[0].ring().clone();
    let row = Matrix::from_cols(
        FreeModule::new(&ring, vec![0]),
        f.iter().map(|p| poly_to_terms(p, 0)).collect(),
        0,
    );
    kernel_cols(&row)
}

/// Build a residual datum, computing a lifting by division.
pub fn make_residual(i: &Ideal, a: &Ideal, s: usize) -> Result<ResidualDatum> {
    i.check_ring(a)?;
    let ring = i.ring().clone();
    if i.gens().is_empty() || i.gens().iter().any(|f| f.is_zero()) {
        return Err(Error::InvalidInput("I needs nonzero generators".into()));
    }
    if s == 0 {
        return Err(Error::InvalidInput("s must be positive".into()));
    }
    if a.gens().len() > s {
        return Err(Error::InvalidInput(format!("a has {} generators but s = {s}", a.gens().len())));
    }
    let mut agens = a.gens().to_vec();
    agens.resize(s, Poly::zero(&ring));
    let r = i.gens().len();
    let fdeg: Vec<i64> = i.gens().iter().map(|f| hdeg(f).unwrap_or(0)).collect();
    let mut lifting = vec![vec![Poly::zero(&ring); s]; r];
    for (col, ai) in agens.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        let (cof, rem) = i.divide_with_cofactors(ai);
        if !rem.is_zero() {
            return Err(Error::Precondition(format!("generator {ai} of a is not in I")));
        }
        for j in 0..r {
            lifting[j][col] = match hdeg(ai) {
                Some(d) if i.is_homogeneous() => degree_part(&cof[j], d - fdeg[j]),
                _ => cof[j].clone(),
            };
        }
    }
    with_lifting(i, &Ideal::new(&ring, agens), s, lifting)
}

/// Build a residual datum from an explicit lifting matrix, which is verified.
pub fn with_lifting(i: &Ideal, a: &Ideal, s: usize, lifting: Vec<Vec<Poly>>) -> Result<ResidualDatum> {
    let ring = i.ring().clone();
    let mut agens = a.gens().to_vec();
    agens.resize(s, Poly::zero(&ring));
    let r = i.gens().len();
    if lifting.len() != r || lifting.iter().any(|row| row.len() != s) {
        return Err(Error::Arity { expected: r * s, got: lifting.iter().map(|row| row.len()).sum() });
    }
    let a = Ideal::new(&ring, agens);
    let j = a.colon(i);
    let g = i.height();
    let rd = ResidualDatum { i: i.clone(), a, s, g, lifting, j };
    rd.verify_lifting().map_err(|_| Error::Precondition("lifting matrix does not express a in terms of I".into()))?;
    Ok(rd)
}

/// `((L + (γ)) : g^∞) ∩ R` where `S = R[T_1..T_r]`, `L` is the linear ideal
/// of syzygies and `g = (T_1..T_r)`.
pub fn sym_saturation_residual(rd: &ResidualDatum) -> Ideal {
    let ring = rd.ring().clone();
    let n = ring.n();
    let r = rd.r();
    let (ext, l, gamma) = symmetric_relations(rd, MonomialOrder::Grevlex);
    let mut gens = l;
    gens.extend(gamma);
    let tmask: u32 = ((1u32 << r) - 1) << n;
    let g = Ideal::new(&ext, (0..r).map(|j| Poly::var(&ext, n + j)).collect());
    let sat = Ideal::new(&ext, gens).saturate(&g);
    let kept: Vec<Poly> = sat
        .eliminate(tmask)
        .gens()
        .iter()
        .filter_map(|p| p.restrict(&ring))
        .collect();
    let out = Ideal::new(&ring, kept);
    if out.is_homogeneous() {
        out.minimalized()
    } else {
        out
    }
}

/// The ring `S = R[T_1..T_r]` with `deg T_j = deg f_j`, the generators of
/// `L` and the forms `γ_i = Σ_j c_{ji} T_j`.
pub fn symmetric_relations(rd: &ResidualDatum, order: MonomialOrder) -> (Arc<PolyRing>, Vec<Poly>, Vec<Poly>) {
    let ring = rd.ring();
    let n = ring.n();
    let names: Vec<String> = (1..=rd.r()).map(|j| ring.fresh_name(&format!("T{j}"))).collect();
    let weights: Vec<u32> = rd.f_degrees().iter().map(|&d| d.max(1) as u32).collect();
    let ext = ring.extend(&names, &weights, order).expect("room for the T variables");
    let t = |j: usize| Poly::var(&ext, n + j);
    let fm = FreeModule::new(ring, rd.f_degrees());
    let mut l = Vec::new();
    for z in syzygies(rd.i.gens()) {
        let mut acc = Poly::zero(&ext);
        for (j, u) in fm.to_polys(&z).iter().enumerate() {
            acc = &acc + &(&u.embed(&ext) * &t(j));
        }
        l.push(acc);
    }
    let gamma = (0..rd.s)
        .map(|i| {
            let mut acc = Poly::zero(&ext);
            for j in 0..rd.r() {
                acc = &acc + &(&rd.lifting[j][i].embed(&ext) * &t(j));
            }
            acc
        })
        .filter(|p| !p.is_zero())
        .collect();
    (ext, l, gamma)
}

#[derive(Clone, Debug, Serialize)]
pub struct ReesResidual {
    pub ideal: Vec<String>,
    pub iterations: usize,
    pub stabilized: bool,
}

/// Stable value of the increasing chain `(a I^i : I^{i+1})`, stopping when
/// two consecutive terms agree or after `max_iter` steps.
pub fn rees_saturation_residual(rd: &ResidualDatum, max_iter: usize) -> (Ideal, ReesResidual) {
    let mut prev = rd.a.colon(&rd.i);
    let mut power = Ideal::unit(rd.ring());
    let mut iterations = 1;
    let mut stabilized = false;
    while iterations < max_iter.max(1) {
        power = power.product(&rd.i);
        let next = rd.a.product(&power).colon(&power.product(&rd.i));
        iterations += 1;
        if next.equals(&prev) {
            stabilized = true;
            break;
        }
        prev = next;
    }
    let report = ReesResidual { ideal: prev.to_strings(), iterations, stabilized };
    (prev, report)
}

#[derive(Clone, Debug, Serialize)]
pub struct InclusionChain {
    pub j: Vec<String>,
    pub middle: Vec<String>,
    pub rees: ReesResidual,
    pub j_proper: bool,
    pub j_in_middle: bool,
    pub middle_in_rees: bool,
}

pub fn inclusion_chain(rd: &ResidualDatum, max_iter: usize) -> InclusionChain {
    let middle = sym_saturation_residual(rd);
    let (rees, report) = rees_saturation_residual(rd, max_iter);
    InclusionChain {
        j: rd.j.to_strings(),
        middle: middle.to_strings(),
        j_proper: !rd.j.is_unit(),
        j_in_middle: middle.contains_ideal(&rd.j),
        middle_in_rees: rees.contains_ideal(&middle),
        rees: report,
    }
}

/// A uniformly random element of the coefficient field.
pub fn random_coeff(ring: &PolyRing, rng: &mut ChaCha8Rng) -> crate::ring::Coeff {
    match ring.field {
        Field::Prime(p) => ring.field.from_i64(rng.gen_range(0..p as i64)),
        Field::Rationals => ring.field.from_i64(rng.gen_range(-9..=9)),
    }
}

/// A random form of degree `d` (zero for negative `d`).
pub fn random_form(ring: &Arc<PolyRing>, d: i64, rng: &mut ChaCha8Rng) -> Poly {
    if d < 0 {
        return Poly::zero(ring);
    }
    let terms = monomials_of_degree(ring.n(), d)
        .into_iter()
        .map(|m| (ring.monomial(&m.exps(ring.n())), random_coeff(ring, rng)))
        .collect();
    Poly::from_terms(ring, terms)
}

#[derive(Clone, Debug)]
pub struct RandomSection {
    pub datum: ResidualDatum,
    pub seed: u64,
    pub attempt: usize,
}

/// Random `a_i = Σ_j u_{ij} f_j` with forms `u_{ij}` of degree
/// `degrees[i] - deg f_j`, retried until `J` is proper with `ht J >= s`.
pub fn random_section(i: &Ideal, degrees: &[i64], tries: usize, seed: u64) -> Result<RandomSection> {
    i.require_homogeneous()?;
    let ring = i.ring().clone();
    let s = degrees.len();
    let fdeg: Vec<i64> = i.gens().iter().map(|f| hdeg(f).unwrap_or(0)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..tries {
        let mut lifting = vec![vec![Poly::zero(&ring); s]; fdeg.len()];
        let mut agens = Vec::new();
        for (col, &d) in degrees.iter().enumerate() {
            let mut acc = Poly::zero(&ring);
            for (j, f) in i.gens().iter().enumerate() {
                let u = random_form(&ring, d - fdeg[j], &mut rng);
                acc = &acc + &(&u * f);
                lifting[j][col] = u;
            }
            agens.push(acc);
        }
        let rd = with_lifting(i, &Ideal::new(&ring, agens), s, lifting)?;
        if !rd.j.is_unit() && rd.j.height() >= s as i64 {
            return Ok(RandomSection { datum: rd, seed, attempt });
        }
    }
    Err(Error::Precondition(format!(
        "no residual intersection found in {tries} tries for degrees {degrees:?}"
    )))
}

/// Search for `b ∈ I` with `(a : b) = J`: generators of `I` first, then a
/// bounded number of random combinations of top degree.
pub fn find_single_b(rd: &ResidualDatum, tries: usize, seed: u64) -> Result<Option<Poly>> {
    if !rd.classify().is_arithmetic {
        return Err(Error::Precondition("find_single_b needs an arithmetic residual intersection".into()));
    }
    if rd.j.is_unit() {
        return Ok(None);
    }
    for f in rd.i.gens() {
        if rd.a.colon_elem(f).equals(&rd.j) {
            return Ok(Some(f.clone()));
        }
    }
    let ring = rd.ring().clone();
    let fdeg = rd.f_degrees();
    let top = fdeg.iter().copied().max().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..tries {
        let mut b = Poly::zero(&ring);
        for (j, f) in rd.i.gens().iter().enumerate() {
            b = &b + &(&random_form(&ring, top - fdeg[j], &mut rng) * f);
        }
        if !b.is_zero() && rd.a.colon_elem(&b).equals(&rd.j) {
            return Ok(Some(b));
        }
    }
    Ok(None)
}
