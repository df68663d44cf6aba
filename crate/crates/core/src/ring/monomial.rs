//! Monomials with packed exponents and the monomial orders used by the engine.

use std::cmp::Ordering;

/// Upper bound on the number of variables of any ring.
pub const MAX_VARS: usize = 32;

/// A monomial `x^e` together with its weighted degree.
///
/// The degree is computed against the weights of the ring that created the
/// monomial, so monomials from different rings must not be mixed.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { exps: [0; MAX_VARS], deg: 0 }
    }

    pub fn from_exps(exps: &[u32], weights: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Monomial::one();
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= u8::MAX as u32, "exponent {e} too large");
            m.exps[i] = e as u8;
            m.deg += e * weights[i];
        }
        m
    }

    pub fn var(i: usize, weights: &[u32]) -> Monomial {
        let mut m = Monomial::one();
        m.exps[i] = 1;
        m.deg = weights[i];
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exps(&self, n: usize) -> Vec<u32> {
        self.exps[..n].iter().map(|&e| e as u32).collect()
    }

    /// Weighted degree.
    #[inline]
    pub fn deg(&self) -> u32 {
        self.deg
    }

    /// Total degree ignoring weights.
    pub fn total_deg(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i]
                .checked_add(other.exps[i])
                .expect("exponent overflow");
        }
        Monomial { exps, deg: self.deg + other.deg }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = other.exps[i] - self.exps[i];
        }
        Monomial { exps, deg: other.deg - self.deg }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let mut m = Monomial::one();
        for i in 0..weights.len() {
            let e = self.exps[i].max(other.exps[i]);
            m.exps[i] = e;
            m.deg += e as u32 * weights[i];
        }
        m
    }

    /// Colon `self : other` of monomials, i.e. `self / gcd(self, other)`.
    pub fn colon(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let mut m = Monomial::one();
        for i in 0..weights.len() {
            let e = self.exps[i].saturating_sub(other.exps[i]);
            m.exps[i] = e;
            m.deg += e as u32 * weights[i];
        }
        m
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit mask used to reject divisibility tests quickly.
    #[inline]
    pub fn divmask(&self) -> u64 {
        let mut m = 0u64;
        for i in 0..MAX_VARS {
            let e = self.exps[i];
            if e >= 1 {
                m |= 1 << i;
            }
            if e >= 2 {
                m |= 1 << (i + 32);
            }
        }
        m
    }

    /// Support as a bit set of variable indices.
    pub fn support(&self) -> u32 {
        let mut s = 0u32;
        for i in 0..MAX_VARS {
            if self.exps[i] > 0 {
                s |= 1 << i;
            }
        }
        s
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// A monomial order. All orders except `Lex` compare weighted degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[derive(Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    /// Block order eliminating the variables in the bit mask: the plain
    /// exponent sum over masked variables is compared first, ties are broken
    /// by weighted grevlex.
    Elimination(u32),
}


impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Elimination(mask) => {
                let ca = masked_sum(a, *mask);
                let cb = masked_sum(b, *mask);
                ca.cmp(&cb).then_with(|| grevlex(a, b))
            }
        }
    }

    /// True when `deg` is the first comparison key.
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex)
    }
}

fn masked_sum(a: &Monomial, mask: u32) -> u32 {
    let mut s = 0;
    for i in 0..MAX_VARS {
        if mask & (1 << i) != 0 {
            s += a.exps[i] as u32;
        }
    }
    s
}

#[inline]
fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.deg.cmp(&b.deg) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..MAX_VARS).rev() {
        let (x, y) = (a.exps[i], b.exps[i]);
        if x != y {
            return y.cmp(&x);
        }
    }
    Ordering::Equal
}
