//! Residual intersections over graded polynomial rings.
//!
//! The crate is organised bottom-up: exact polynomial arithmetic in [`ring`],
//! a module Gröbner engine in [`groebner`], graded module machinery in
//! [`module`], Koszul complexes in [`koszul`], residual data in [`residual`],
//! the `_kZ^+` complexes in [`zplus`] and the command-line layer in [`cli`].
//!
//! ```
//! use resint::ring::parse::parse_poly;
//! use resint::ring::{Field, PolyRing};
//! use resint::{residual::make_residual, zplus::disguised_residual, Ideal};
//!
//! # fn main() -> resint::Result<()> {
//! let r = PolyRing::standard(Field::Prime(32003), &["x", "y"]);
//! let p = |s| parse_poly(&r, s).unwrap();
//! let i = Ideal::new(&r, vec![p("x^2"), p("y^2"), p("x*y")]);
//! let a = Ideal::new(&r, vec![p("x^2"), p("y^2")]);
//! let rd = make_residual(&i, &a, 2)?;
//! assert!(rd.j.equals(&disguised_residual(&rd)?));
//! # Ok(())
//! # }
//! ```

pub mod cli;
pub mod error;
pub mod groebner;
pub mod koszul;
pub mod module;
pub mod residual;
pub mod ring;
pub mod zplus;

pub use error::{Error, Result};
pub use groebner::ideal::Ideal;
pub use koszul::KoszulComplex;
pub use module::{FreeModule, Matrix, Subquotient, Vect};
pub use residual::ResidualDatum;
pub use ring::{Coeff, Field, Monomial, MonomialOrder, Poly, PolyRing};
