//! Polynomial rings over exact fields.

mod coeff;
mod monomial;
pub mod parse;
mod poly;

use std::fmt;
use std::sync::Arc;

pub use coeff::{is_prime, Coeff, Field, DEFAULT_PRIME};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use poly::Poly;

use crate::error::{Error, Result};

/// A polynomial ring `k[x_1..x_n]` with positive integer weights and a
/// monomial order. Rings are shared behind `Arc`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub field: Field,
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: Field, vars: &[&str], order: MonomialOrder) -> Result<Arc<PolyRing>> {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let w = vec![1; names.len()];
        PolyRing::with_weights(field, names, w, order)
    }

    pub fn with_weights(
        field: Field,
        vars: Vec<String>,
        weights: Vec<u32>,
        order: MonomialOrder,
    ) -> Result<Arc<PolyRing>> {
        if vars.is_empty() {
            return Err(Error::InvalidInput("a ring needs at least one variable".into()));
        }
        if vars.len() > MAX_VARS {
            return Err(Error::InvalidInput(format!(
                "at most {MAX_VARS} variables are supported"
            )));
        }
        if weights.len() != vars.len() {
            return Err(Error::Arity { expected: vars.len(), got: weights.len() });
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidInput(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidInput(format!("duplicate variable {v}")));
            }
        }
        Ok(Arc::new(PolyRing { field, vars, weights, order }))
    }

    /// Standard graded ring with grevlex order over the given field.
    pub fn standard(field: Field, vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(field, vars, MonomialOrder::Grevlex).expect("valid ring")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn monomial(&self, exps: &[u32]) -> Monomial {
        Monomial::from_exps(exps, &self.weights)
    }

    /// Same variables and weights, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<PolyRing> {
        Arc::new(PolyRing { order, ..self.clone() })
    }

    /// This ring extended by extra variables placed after the existing ones.
    pub fn extend(
        &self,
        names: &[String],
        weights: &[u32],
        order: MonomialOrder,
    ) -> Result<Arc<PolyRing>> {
        let mut vars = self.vars.clone();
        vars.extend(names.iter().cloned());
        let mut w = self.weights.clone();
        w.extend_from_slice(weights);
        PolyRing::with_weights(self.field, vars, w, order)
    }

    /// A variable name not used by this ring, built from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut i = 0;
        while self.vars.contains(&name) {
            i += 1;
            name = format!("{base}{i}");
        }
        name
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = match &self.order {
            MonomialOrder::Grevlex => "grevlex".to_string(),
            MonomialOrder::Lex => "lex".to_string(),
            MonomialOrder::Elimination(m) => format!("elim({m:#b})"),
        };
        write!(f, "{} [{}] {}", self.field, self.vars.join(","), order)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Ensure two rings agree, returning a descriptive error otherwise.
pub fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!("{a} vs {b}")))
    }
}
