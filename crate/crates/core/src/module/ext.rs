//! Ext against twisted free modules, canonical modules, unmixedness and the
//! Cohen–Macaulay type.

use serde::Serialize;

use super::linalg::koszul_homology_on_variables;
use super::subquotient::kernel_cols;
use super::{FreeModule, Subquotient};
use crate::groebner::ideal::Ideal;

/// `Ext^i_R(M, R(t))`, by dualising the minimal free resolution of `M`.
pub fn ext_module(m: &Subquotient, t: i64, i: usize) -> Subquotient {
    let ring = m.ring().clone();
    let res = m.resolution();
    let levels = res.twists();
    let g = -t;
    if i >= levels.len() {
        return Subquotient::new(FreeModule::new(&ring, Vec::new()), Vec::new(), Vec::new());
    }
    let ambient = FreeModule::new(&ring, levels[i].iter().map(|d| g - d).collect());
    let gens = if i < res.maps.len() && res.maps[i].ncols() > 0 {
        kernel_cols(&res.maps[i].dual(g))
    } else {
        (0..ambient.rank()).map(|k| ambient.basis_vector(k)).collect()
    };
    let rels = if i >= 1 { res.maps[i - 1].dual(g).cols } else { Vec::new() };
    Subquotient::new(ambient, gens, rels)
}

/// `ω_M = Ext^c_R(M, R(-n))`.
pub fn canonical_module(m: &Subquotient, c: usize) -> Subquotient {
    ext_module(m, -(m.ring().n() as i64), c)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct UnmixedReport {
    pub is_unmixed: bool,
    /// Heights of associated primes, detected by `dim Ext^i(R/J, R) = n - i`.
    pub profile: Vec<i64>,
    pub height: i64,
}

pub fn unmixedness_test(j: &Ideal) -> UnmixedReport {
    let n = j.ring().n();
    let m = Subquotient::quotient_ring(j);
    let mut profile = Vec::new();
    for i in 0..=n {
        let e = ext_module(&m, 0, i);
        if !e.is_zero() && e.dim() == (n - i) as i64 {
            profile.push(i as i64);
        }
    }
    let height = j.height();
    UnmixedReport { is_unmixed: profile == vec![height], profile, height }
}

/// Cohen–Macaulay type `dim_k Ext^{depth M}(k, M)`, obtained from the Koszul
/// complex on the variables with coefficients in `M`: the Ext group has the
/// same dimension as `H_{n - depth}(x; M)`. Zero for the zero module.
pub fn cm_type(m: &Subquotient) -> usize {
    let Some(depth) = m.depth() else {
        return 0;
    };
    let n = m.ring().n() as i64;
    let spot = (n - depth) as usize;
    let p = m.presentation();
    // H_i(x; M) lives in degrees beg(M) + i ..= reg(M) + i.
    let lo = m.beg().unwrap() + spot as i64;
    let hi = m.regularity().unwrap() + spot as i64;
    (lo..=hi)
        .map(|d| koszul_homology_on_variables(p.f0(), &p.rels.cols, d)[spot])
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse::parse_poly;
    use crate::ring::{Field, PolyRing};
    use std::sync::Arc;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::standard(Field::Prime(32003), vars)
    }

    fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| parse_poly(r, s).unwrap()).collect())
    }

    #[test]
    fn type_examples() {
        let r1 = ring(&["x"]);
        assert_eq!(cm_type(&Subquotient::quotient_ring(&ideal(&r1, &["x^2"]))), 1);
        let r2 = ring(&["x", "y"]);
        let m = Subquotient::quotient_ring(&ideal(&r2, &["x^2", "x*y", "y^2"]));
        assert_eq!(cm_type(&m), 2);
        assert_eq!(m.resolution().total_betti().last(), Some(&2));
    }

    #[test]
    fn canonical_examples() {
        let r = ring(&["x", "y"]);
        let m = Subquotient::quotient_ring(&ideal(&r, &["x"]));
        let w = canonical_module(&m, 1);
        assert!(w.annihilator().equals(&ideal(&r, &["x"])));
        assert_eq!(w.presentation().twists(), &[1]);
        assert!(ext_module(&m, 0, 0).is_zero());

        let k = Subquotient::quotient_ring(&ideal(&r, &["x", "y"]));
        let w = canonical_module(&k, 2);
        assert_eq!(w.presentation().twists(), &[0]);
        assert_eq!(w.hilbert_function(0), 1);
        assert_eq!(w.hilbert_function(2), 0);
    }

    #[test]
    fn unmixed_examples() {
        let r = ring(&["x", "y"]);
        let u = unmixedness_test(&ideal(&r, &["x"]));
        assert_eq!((u.is_unmixed, u.profile.clone()), (true, vec![1]));
        let u = unmixedness_test(&ideal(&r, &["x^2", "x*y"]));
        assert_eq!((u.is_unmixed, u.profile.clone()), (false, vec![1, 2]));
        let u = unmixedness_test(&ideal(&r, &["x^2", "x*y", "y^2"]));
        assert_eq!((u.is_unmixed, u.profile), (true, vec![2]));
    }
}
