//! Tutte, corank-nullity, and chromatic polynomials.
//!
//! Three independent routes to the Tutte polynomial are implemented: the
//! corank-nullity subset expansion, deletion-contraction, and the basis
//! activities expansion. The default entry point computes all three and
//! fails loudly if they ever disagree.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::GraphInput;
use crate::matroid::Matroid;
use crate::nbc::char_poly;
use crate::poly::{BiPoly, UniPoly};
use crate::subsets::{all_subsets, Subset};
use crate::{Int, IntBiPoly, IntUniPoly};

/// Largest minor size for which the deletion-contraction memo key is the
/// exact canonical form (maximal cache sharing); larger minors fall back to
/// the labeled structural key, which is still collision-free.
pub const DC_MEMO_CANONICAL_GUARD: usize = 8;

/// Corank-nullity polynomial `R(M;u,v) = Σ_{A⊆E} u^{r-r(A)} v^{|A|-r(A)}`.
pub fn corank_nullity(m: &Matroid) -> IntBiPoly {
    let mut r = BiPoly::zero();
    for (corank, nullity, count) in corank_nullity_counts(m) {
        r.add_term([corank as u32, nullity as u32], Int::from(count));
    }
    r
}

fn corank_nullity_counts(m: &Matroid) -> Vec<(usize, usize, u64)> {
    let rank = m.rank();
    let mut counts: HashMap<(usize, usize), u64> = HashMap::new();
    for a in all_subsets(m.n()) {
        let ra = m.rank_of(a);
        *counts.entry((rank - ra, a.len() - ra)).or_insert(0) += 1;
    }
    let mut out: Vec<(usize, usize, u64)> = counts
        .into_iter()
        .map(|((c, n), count)| (c, n, count))
        .collect();
    out.sort();
    out
}

/// `Σ_{A⊆E} (x-1)^{r-r(A)} (y-1)^{|A|-r(A)}`.
pub fn tutte_via_subsets(m: &Matroid) -> IntBiPoly {
    let xm1: IntBiPoly = BiPoly::var(0).sub(&BiPoly::one());
    let ym1: IntBiPoly = BiPoly::var(1).sub(&BiPoly::one());
    let mut xp = vec![BiPoly::one()];
    for _ in 0..m.rank() {
        xp.push(xp.last().unwrap().mul(&xm1));
    }
    let mut yp = vec![BiPoly::one()];
    for _ in 0..(m.n() - m.rank()) {
        yp.push(yp.last().unwrap().mul(&ym1));
    }
    let mut t = BiPoly::zero();
    for (corank, nullity, count) in corank_nullity_counts(m) {
        t = t.add(&xp[corank].mul(&yp[nullity]).scale(&Int::from(count)));
    }
    t
}

/// Recursive deletion-contraction: strip loops and coloops (factors `y` and
/// `x`), then pivot on the smallest remaining element.
pub fn tutte_via_deletion_contraction(m: &Matroid) -> IntBiPoly {
    let mut memo: HashMap<Vec<u8>, IntBiPoly> = HashMap::new();
    dc(m, &mut memo)
}

fn dc(m: &Matroid, memo: &mut HashMap<Vec<u8>, IntBiPoly>) -> IntBiPoly {
    if m.n() == 0 {
        return BiPoly::one();
    }
    let key = if m.n() <= DC_MEMO_CANONICAL_GUARD {
        m.canonical_key_with_guard(DC_MEMO_CANONICAL_GUARD)
    } else {
        m.structural_key()
    };
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let loops = m.loops();
    let coloops = m.coloops();
    let value = if !loops.is_empty() || !coloops.is_empty() {
        let (rest, _) = m.delete(loops.union(coloops));
        let factor: IntBiPoly =
            BiPoly::monomial([coloops.len() as u32, loops.len() as u32], Int::from(1));
        factor.mul(&dc(&rest, memo))
    } else {
        let e = Subset::singleton(1);
        let (del, _) = m.delete(e);
        let (con, _) = m.contract(e);
        dc(&del, memo).add(&dc(&con, memo))
    };
    memo.insert(key, value.clone());
    value
}

/// `Σ_B x^{#internally active} y^{#externally active}` with the ambient
/// label order: an element of `B` is internally active when it is smallest
/// in its fundamental cocircuit, an element outside `B` externally active
/// when smallest in its fundamental circuit.
pub fn tutte_via_activities(m: &Matroid) -> IntBiPoly {
    let mut t = BiPoly::zero();
    let full = m.full_set();
    for b in m.bases() {
        let mut internal = 0u32;
        for e in b.elements() {
            let stem = b.without(e);
            let blocked = full
                .difference(*b)
                .elements()
                .any(|f| f < e && m.is_basis(stem.with(f)));
            if !blocked {
                internal += 1;
            }
        }
        let mut external = 0u32;
        for f in full.difference(*b).elements() {
            let blocked = b
                .elements()
                .any(|e| e < f && m.is_basis(b.without(e).with(f)));
            if !blocked {
                external += 1;
            }
        }
        t.add_term([internal, external], Int::from(1));
    }
    t
}

/// Tutte polynomial, computed by all three methods and cross-checked.
pub fn tutte(m: &Matroid) -> Result<IntBiPoly> {
    let subsets = tutte_via_subsets(m);
    let dc = tutte_via_deletion_contraction(m);
    let act = tutte_via_activities(m);
    if subsets != dc || subsets != act {
        return Err(Error::CrossCheckFailed(format!(
            "Tutte methods disagree: subsets {:?}, deletion-contraction {:?}, activities {:?}",
            subsets, dc, act
        )));
    }
    Ok(subsets)
}

/// `χ(λ) = (-1)^r T(1-λ, 0)`, the standard bridge between the Tutte and
/// characteristic polynomials. Cross-checked against the nbc route.
pub fn tutte_to_char(m: &Matroid) -> Result<IntUniPoly> {
    let t = tutte_via_subsets(m);
    let one_minus_lambda: UniPoly<Int> = UniPoly::const_minus_var(1);
    let composed = t.compose(&[one_minus_lambda, UniPoly::zero()]);
    let chi = if m.rank() % 2 == 0 {
        composed
    } else {
        composed.neg()
    };
    let direct = char_poly(m)?;
    if chi != direct {
        return Err(Error::CrossCheckFailed(format!(
            "characteristic polynomial via Tutte {:?} differs from nbc/Möbius route {:?}",
            chi, direct
        )));
    }
    Ok(chi)
}

/// Chromatic polynomial `P(G;x) = x^{c(G)} χ(M(G);x)`; zero when the graph
/// has a self-loop.
pub fn chromatic_poly(g: &GraphInput) -> Result<IntUniPoly> {
    let m = g.cycle_matroid()?;
    let chi = char_poly(&m)?;
    let c = g.components() as u32;
    let mut p = UniPoly::zero();
    for (exp, coeff) in chi.terms() {
        p.add_term([exp[0] + c], coeff.clone());
    }
    Ok(p)
}
