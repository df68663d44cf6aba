//! Exact coefficient fields: prime fields with word-size modulus and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default characteristic, the usual choice for desk-scale commutative algebra.
pub const DEFAULT_PRIME: u32 = 32003;

/// The coefficient field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u32),
    Rationals,
}

impl Default for Field {
    fn default() -> Self {
        Field::Prime(DEFAULT_PRIME)
    }
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not a prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Prime(p) => Coeff::Mod { v: 0, p: *p },
            Field::Rationals => Coeff::Rat(Box::new(BigRational::zero())),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            Field::Prime(p) => {
                let v = n.rem_euclid(*p as i64) as u32;
                Coeff::Mod { v, p: *p }
            }
            Field::Rationals => Coeff::Rat(Box::new(BigRational::from_integer(BigInt::from(n)))),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            Field::Prime(p) => {
                let r = n % BigInt::from(*p);
                let mut v = r.to_i64().unwrap();
                if v < 0 {
                    v += *p as i64;
                }
                Coeff::Mod { v: v as u32, p: *p }
            }
            Field::Rationals => Coeff::Rat(Box::new(BigRational::from_integer(n.clone()))),
        }
    }

    /// `num/den` as a field element; fails when `den` vanishes in the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::InvalidInput(format!(
                "denominator {den} is zero in {self}"
            )));
        }
        Ok(self.from_bigint(num).mul(&d.inv()))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Prime(p) => *p,
            Field::Rationals => 0,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "ZZ/{p}"),
            Field::Rationals => write!(f, "QQ"),
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Prime-field elements carry their modulus so that arithmetic
/// needs no external context.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Mod { v: u32, p: u32 },
    Rat(Box<BigRational>),
}

#[inline]
fn mod_inv(a: u32, p: u32) -> u32 {
    // extended Euclid on i64
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "element {a} is not invertible mod {p}");
    if t < 0 {
        t += p as i64;
    }
    t as u32
}

impl Coeff {
    #[inline]
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Mod { v, .. } => *v == 0,
            Coeff::Rat(q) => q.is_zero(),
        }
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Mod { v, .. } => *v == 1,
            Coeff::Rat(q) => q.is_one(),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Coeff::Mod { p, .. } => Field::Prime(*p),
            Coeff::Rat(_) => Field::Rationals,
        }
    }

    #[inline]
    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Mod { v: a, p }, Coeff::Mod { v: b, .. }) => {
                let s = *a as u64 + *b as u64;
                let p64 = *p as u64;
                Coeff::Mod { v: (if s >= p64 { s - p64 } else { s }) as u32, p: *p }
            }
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(Box::new(a.as_ref() + b.as_ref())),
            _ => panic!("coefficient field mismatch"),
        }
    }

    #[inline]
    pub fn sub(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Mod { v: a, p }, Coeff::Mod { v: b, .. }) => {
                let v = if a >= b { a - b } else { p - (b - a) };
                Coeff::Mod { v, p: *p }
            }
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(Box::new(a.as_ref() - b.as_ref())),
            _ => panic!("coefficient field mismatch"),
        }
    }

    #[inline]
    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Mod { v: a, p }, Coeff::Mod { v: b, .. }) => Coeff::Mod {
                v: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            },
            (Coeff::Rat(a), Coeff::Rat(b)) => Coeff::Rat(Box::new(a.as_ref() * b.as_ref())),
            _ => panic!("coefficient field mismatch"),
        }
    }

    #[inline]
    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Mod { v, p } => Coeff::Mod { v: if *v == 0 { 0 } else { p - v }, p: *p },
            Coeff::Rat(a) => Coeff::Rat(Box::new(-a.as_ref())),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Coeff {
        match self {
            Coeff::Mod { v, p } => {
                assert!(*v != 0, "division by zero");
                Coeff::Mod { v: mod_inv(*v, *p), p: *p }
            }
            Coeff::Rat(a) => {
                assert!(!a.is_zero(), "division by zero");
                Coeff::Rat(Box::new(a.recip()))
            }
        }
    }

    pub fn div(&self, other: &Coeff) -> Coeff {
        self.mul(&other.inv())
    }

    /// Signed representative used for printing; prime-field values are shown in
    /// the symmetric range.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Coeff::Mod { v, p } => {
                let v = *v as i64;
                let p = *p as i64;
                let s = if v > p / 2 { v - p } else { v };
                BigRational::from_integer(BigInt::from(s))
            }
            Coeff::Rat(a) => a.as_ref().clone(),
        }
    }

    pub fn is_negative_repr(&self) -> bool {
        self.to_rational().is_negative()
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.to_rational();
        if q.denom().is_one() {
            write!(f, "{}", q.numer())
        } else {
            write!(f, "{}/{}", q.numer(), q.denom())
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
