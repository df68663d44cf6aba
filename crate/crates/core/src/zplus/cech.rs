//! Finite-support chains in `C^•_g ⊗ D` and the zig-zag that realises the
//! transgression `τ_k`.

use super::chain::{apply_horizontal, chain_add, Chain, Frame, Label};
use crate::error::{Error, Result};
use crate::ring::Poly;

/// Which admissible index the contracting homotopy removes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomotopyChoice {
    Min,
    Max,
}

fn below(u: u32, v: usize) -> u32 {
    (u & ((1u32 << v) - 1)).count_ones()
}

/// Čech differential: `e_U ↦ Σ_{v ∉ U} (-1)^{#{u ∈ U : u < v}} e_{U ∪ v}`.
pub fn apply_vertical(r: usize, c: &Chain) -> Chain {
    let mut out = Chain::new();
    for ((u, lab), coeff) in c {
        for v in 0..r {
            if u & (1 << v) != 0 {
                continue;
            }
            let p = if below(*u, v) % 2 == 1 { -coeff } else { coeff.clone() };
            chain_add(&mut out, (u | (1 << v), lab.clone()), p);
        }
    }
    out
}

/// Contracting homotopy on the multidegree `β` of each term: with `t` the
/// chosen index having `β_t >= 0`, `e_U ↦ ± e_{U∖t}` when `t ∈ U`.
pub fn homotopy(c: &Chain, choice: HomotopyChoice) -> Result<Chain> {
    let mut out = Chain::new();
    for ((u, lab), coeff) in c {
        let mut admissible = lab.beta.iter().enumerate().filter(|(_, &b)| b >= 0).map(|(i, _)| i);
        let t = match choice {
            HomotopyChoice::Min => admissible.next(),
            HomotopyChoice::Max => admissible.next_back(),
        };
        let Some(t) = t else {
            return Err(Error::Internal("homotopy applied in an all-negative multidegree".into()));
        };
        if u & (1 << t) == 0 {
            continue;
        }
        let p = if below(*u, t) % 2 == 1 { -coeff } else { coeff.clone() };
        chain_add(&mut out, (u & !(1 << t), lab.clone()), p);
    }
    Ok(out)
}

/// Lift a vertical cocycle `c` to `η` with `d_v η = c`, verifying the result.
pub fn cech_homotopy_lift(r: usize, c: &Chain, choice: HomotopyChoice) -> Result<Chain> {
    let eta = homotopy(c, choice)?;
    if &apply_vertical(r, &eta) != c {
        return Err(Error::Internal("Čech homotopy failed to lift a cocycle".into()));
    }
    Ok(eta)
}

/// Zig-zag from `C^r ⊗ D_{r+k}` down to `C^0 ⊗ D_k`: apply the horizontal
/// differential and lift vertically, `r` times.
pub fn zigzag(frame: &Frame, start: &Label, choice: HomotopyChoice) -> Result<Vec<(Label, Poly)>> {
    let r = frame.r;
    let full = (1u32 << r) - 1;
    let mut cur = Chain::new();
    cur.insert((full, start.clone()), Poly::one(&frame.ring));
    for _ in 0..r {
        let c = apply_horizontal(frame, &cur);
        cur = cech_homotopy_lift(r, &c, choice)?;
    }
    let mut out = Vec::new();
    for ((u, lab), coeff) in cur {
        if u != 0 || lab.beta.iter().any(|&b| b < 0) {
            return Err(Error::Internal("zig-zag did not land in C^0 ⊗ D".into()));
        }
        out.push((lab, coeff));
    }
    let landed: Chain = out.iter().map(|(l, p)| ((0, l.clone()), p.clone())).collect();
    if !apply_horizontal(frame, &landed).is_empty() {
        return Err(Error::Internal("image of τ is not a cycle of D".into()));
    }
    Ok(out)
}
