use super::*;
use crate::residual::make_residual;
use crate::ring::parse::parse_poly;
use crate::ring::Field;

fn ring(vars: &[&str]) -> Arc<PolyRing> {
    PolyRing::standard(Field::Prime(32003), vars)
}

fn ideal(r: &Arc<PolyRing>, g: &[&str]) -> Ideal {
    Ideal::new(r, g.iter().map(|s| parse_poly(r, s).unwrap()).collect())
}

fn same_hf(a: &Subquotient, b: &Subquotient, shift: i64, upto: i64) -> bool {
    (-2..=upto).all(|d| a.hilbert_function(d) == b.hilbert_function(d - shift))
}

#[test]
fn sym_presentation_examples() {
    let r = ring(&["x", "y"]);
    let rd = make_residual(&ideal(&r, &["x", "y"]), &ideal(&r, &["x^2", "y^2"]), 2).unwrap();
    let sp = sym_defining_ideal(&rd);
    assert_eq!(sp.l.gens().len(), 1);
    let t1 = Poly::var(&sp.ext, 2);
    let t2 = Poly::var(&sp.ext, 3);
    let expected = &(&Poly::var(&sp.ext, 1) * &t1) - &(&Poly::var(&sp.ext, 0) * &t2);
    assert!(sp.l.equals(&Ideal::new(&sp.ext, vec![expected])));
    assert_eq!(sp.gamma.len(), 2);
    assert_eq!(sp.g_ideal.gens().len(), 2);

    let rp = make_residual(&ideal(&r, &["x"]), &ideal(&r, &["x^2"]), 1).unwrap();
    assert!(sym_defining_ideal(&rp).l.is_zero());
}

#[test]
fn sym_power_linkage() {
    let r = ring(&["x", "y"]);
    let rd = make_residual(&ideal(&r, &["x", "y"]), &ideal(&r, &["x^2", "y^2"]), 2).unwrap();
    let s1 = sym_power_direct(&rd, 1);
    let hf: Vec<i64> = (0..5).map(|d| s1.hilbert_function(d)).collect();
    assert_eq!(hf, vec![0, 2, 1, 0, 0]);
    let s2 = sym_power_direct(&rd, 2);
    assert!(s2.annihilator().equals(&ideal(&r, &["x", "y"])));
    let s0 = sym_power_direct(&rd, 0);
    assert!(same_hf(&s0, &Subquotient::quotient_ring(&Ideal::zero(&r)), 0, 6));
}

#[test]
fn rank_audit_and_complex_axioms() {
    let r = ring(&["x", "y", "z"]);
    let rd = make_residual(&ideal(&r, &["x", "y", "z"]), &ideal(&r, &["x^2", "y^2+x*z", "z^3"]), 3).unwrap();
    for k in 0..=3 {
        let z = ZPlusComplex::assemble(&rd, k).unwrap();
        assert!(z.is_complex());
        assert!(z.maps_preserve_cycles());
        for row in z.rank_audit() {
            assert_eq!(row.copies, row.expected, "k={k} {row:?}");
        }
    }
    // k = 1 strand for the linkage datum: two copies of R plus one Z_1 at
    // spot 1, R^2 at spot 0
    let r2 = ring(&["x", "y"]);
    let rd = make_residual(&ideal(&r2, &["x", "y"]), &ideal(&r2, &["x^2", "y^2"]), 2).unwrap();
    let z = ZPlusComplex::assemble(&rd, 1).unwrap();
    assert_eq!(z.components[0].blocks, vec![(0, 2)]);
    assert_eq!(z.components[1].blocks, vec![(0, 2), (1, 1)]);
    assert_eq!(z.components[2].kind, SpotKind::Tail);
    assert_eq!(z.components[2].blocks, vec![(1, 1)]);
}

#[test]
fn h0_is_symmetric_power() {
    let r = ring(&["x", "y"]);
    let rd = make_residual(&ideal(&r, &["x", "y"]), &ideal(&r, &["x^2", "y^2"]), 2).unwrap();
    for k in 1..=2 {
        let z = ZPlusComplex::assemble(&rd, k).unwrap();
        let h0 = z.homology(0).unwrap();
        let sym = sym_power_direct(&rd, k);
        assert!(same_hf(h0, &sym, 0, 8), "k={k}");
        assert!(h0.annihilator().equals(&sym.annihilator()));
    }
}

#[test]
fn disguised_residual_examples() {
    let r = ring(&["x", "y"]);
    let rd = make_residual(&ideal(&r, &["x^2", "y^2", "x*y"]), &ideal(&r, &["x^2", "y^2"]), 2).unwrap();
    let k = disguised_residual(&rd).unwrap();
    assert!(k.equals(&ideal(&r, &["x", "y"])));
    assert!(k.equals(&rd.j));
    assert!(independence_audit(&rd, 0).unwrap());

    let rd = make_residual(&ideal(&r, &["x", "y"]), &ideal(&r, &["x", "y"]), 2).unwrap();
    assert!(disguised_residual(&rd).unwrap().is_unit());
    for k in 0..=2 {
        assert!(ZPlusComplex::assemble(&rd, k).unwrap().is_exact(), "k={k}");
    }
}

#[test]
fn principal_extension_oracle() {
    let r = ring(&["x", "y"]);
    let b = parse_poly(&r, "x").unwrap();
    let a = ideal(&r, &["x^2*y", "x*y^2"]);
    let rd = principal_extension(&b, a.gens()).unwrap();
    let h1 = hd_structure_oracle(&rd, 1).unwrap();
    assert!(h1.annihilator().equals(&ideal(&r, &["y"])));
    let z = ZPlusComplex::assemble(&rd, 0).unwrap();
    let zh1 = z.homology(1).unwrap();
    assert!(zh1.annihilator().equals(&ideal(&r, &["y"])));
    // the oracle is bH_1(deg b), so bH_1((1+1) deg b) is the oracle shifted by -deg b
    let found = (-8..=8).find(|&sh| same_hf(zh1, &h1, sh, 10));
    assert_eq!(found, Some(-(b.hdeg().unwrap() as i64)));
    let k = disguised_residual(&rd).unwrap();
    assert!(k.equals(&rd.a.colon_elem(&b)));

    let b = parse_poly(&r, "x*y").unwrap();
    let rd = principal_extension(&b, ideal(&r, &["x^2", "y^2"]).gens()).unwrap();
    assert!(hd_structure_oracle(&rd, 1).unwrap().is_zero());
    assert!(ZPlusComplex::assemble(&rd, 0).unwrap().is_acyclic());
}

#[test]
fn oracle_precondition() {
    let r = ring(&["x", "y"]);
    let rd = make_residual(&ideal(&r, &["x", "y"]), &ideal(&r, &["x^2", "y^2"]), 2).unwrap();
    assert!(matches!(hd_structure_oracle(&rd, 1), Err(Error::Precondition(_))));
}

#[test]
fn tail_end_degree_agrees() {
    let r = ring(&["x", "y", "z"]);
    let rd = make_residual(&ideal(&r, &["x", "y"]), &ideal(&r, &["x^2", "y^2", "x*y"]), 3).unwrap();
    for row in tail_end_degrees(&rd) {
        assert_eq!(row.computed_end, Some(row.expected_end));
    }
}

#[test]
fn rejects_zero_a() {
    let r = ring(&["x", "y"]);
    let rd = crate::residual::with_lifting(
        &ideal(&r, &["x", "y"]),
        &Ideal::zero(&r),
        1,
        vec![vec![Poly::zero(&r)], vec![Poly::zero(&r)]],
    )
    .unwrap();
    assert!(matches!(ZPlusComplex::assemble(&rd, 0), Err(Error::InvalidInput(_))));
}
