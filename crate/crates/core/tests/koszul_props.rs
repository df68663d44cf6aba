use std::sync::Arc;

use proptest::prelude::*;
use resint::groebner::ideal::Ideal;
use resint::koszul::{cycle_sequence, KoszulComplex};
use resint::module::subquotient::module_colon;
use resint::module::Subquotient;
use resint::ring::{Field, Monomial, Poly, PolyRing};

fn ring4() -> Arc<PolyRing> {
    PolyRing::standard(Field::Prime(32003), &["x", "y", "z", "w"])
}

/// A homogeneous form of degree `d` from a few chosen monomials.
fn form(r: &Arc<PolyRing>, d: u32, picks: &[(usize, usize, i64)]) -> Poly {
    let mut p = Poly::zero(r);
    for &(a, b, c) in picks {
        let mut m = Monomial::one();
        let vars = [a % 4, b % 4];
        for v in vars.iter().take(d as usize) {
            m = m.mul(&Monomial::var(*v, &[1, 1, 1, 1]));
        }
        p = &p + &Poly::term(r, m, r.field.from_i64(c));
    }
    p
}

fn sequence() -> impl Strategy<Value = Vec<(u32, Vec<(usize, usize, i64)>)>> {
    prop::collection::vec(
        (1u32..=2, prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 1..=2)),
        2..=3,
    )
}

fn build(r: &Arc<PolyRing>, shape: &[(u32, Vec<(usize, usize, i64)>)]) -> Option<Vec<Poly>> {
    let f: Vec<Poly> = shape.iter().map(|(d, picks)| form(r, *d, picks)).collect();
    if f.iter().any(|p| p.is_zero()) {
        None
    } else {
        Some(f)
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, .. ProptestConfig::default() })]

    #[test]
    fn cycle_sequence_is_exact(shape in sequence(), j in 1usize..=2) {
        let r = ring4();
        if let Some(f) = build(&r, &shape) {
            let rep = cycle_sequence(&f[0], &f[1..], j).unwrap();
            prop_assert!(rep.exact, "{:?}", rep);
        }
    }

    #[test]
    fn rigidity(shape in sequence()) {
        let r = ring4();
        if let Some(f) = build(&r, &shape) {
            let k = KoszulComplex::new(&r, &f).unwrap();
            let g = Ideal::new(&r, f.clone()).height();
            for i in 0..=f.len() {
                if (i as i64) > f.len() as i64 - g {
                    prop_assert!(k.homology(i).unwrap().is_zero(), "H_{} nonzero", i);
                }
            }
            prop_assert!(!k.homology((f.len() as i64 - g) as usize).unwrap().is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, .. ProptestConfig::default() })]

    #[test]
    fn redundant_generator_keeps_sd(shape in sequence(), c in 1i64..5) {
        let r = ring4();
        if let Some(f) = build(&r, &shape) {
            if !f.iter().all(|p| p.hdeg() == f[0].hdeg()) {
                return Ok(());
            }
            let extra = &f[0] + &f[1].scale(&r.field.from_i64(c));
            if extra.is_zero() {
                return Ok(());
            }
            let mut g = f.clone();
            g.push(extra);
            let k1 = KoszulComplex::new(&r, &f).unwrap();
            let k2 = KoszulComplex::new(&r, &g).unwrap();
            let ht = Ideal::new(&r, f.clone()).height();
            let v1 = k1.sd_check(0, f.len() as i64 - ht).verdict;
            let v2 = k2.sd_check(0, g.len() as i64 - ht).verdict;
            prop_assert_eq!(v1, v2);
        }
    }

    #[test]
    fn sd_implies_sdc_next(shape in sequence(), k in 0i64..=1) {
        let r = ring4();
        if let Some(f) = build(&r, &shape) {
            let kc = KoszulComplex::new(&r, &f).unwrap();
            let t = f.len() as i64 - Ideal::new(&r, f.clone()).height();
            if kc.sd_check(k, t).verdict {
                prop_assert!(kc.sdc_check(k + 1, t).verdict);
            }
        }
    }

    #[test]
    fn mult_image_hilbert_function(shape in sequence(), bi in 0usize..4) {
        let r = ring4();
        if let Some(f) = build(&r, &shape) {
            let kc = KoszulComplex::new(&r, &f).unwrap();
            let b = Poly::var(&r, bi);
            let h = kc.homology(1).unwrap();
            let img = kc.mult_image(1, &b).unwrap();
            let amb = kc.component(1);
            let colon = module_colon(&amb, kc.cycle_gens(1), &kc.boundary_gens(1), &b);
            let kernel = Subquotient::new(amb, colon, kc.boundary_gens(1));
            for d in 0..8 {
                prop_assert_eq!(img.hilbert_function(d + 1), h.hilbert_function(d) - kernel.hilbert_function(d));
            }
        }
    }
}
