//! Elements of the exterior algebra on generators `e_1, ..., e_n`.
//!
//! A monomial `e_S` stands for the wedge of the generators of `S` in
//! increasing order; elements are finite sums with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::poly::Scalar;
use crate::subsets::Subset;

#[derive(Clone, PartialEq, Eq)]
pub struct ExteriorElement<C: Scalar> {
    terms: BTreeMap<Subset, C>,
}

impl<C: Scalar> ExteriorElement<C> {
    pub fn zero() -> Self {
        ExteriorElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(s: Subset, coeff: C) -> Self {
        let mut out = Self::zero();
        out.add_term(s, coeff);
        out
    }

    pub fn generator(e: usize) -> Self {
        Self::monomial(Subset::singleton(e), C::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: Subset, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn coeff(&self, s: Subset) -> C {
        self.terms.get(&s).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Subset, &C)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(*s, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&(-C::one()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero();
        for (s, c) in &self.terms {
            out.add_term(*s, c.clone() * k.clone());
        }
        out
    }

    /// Exterior product. Overlapping monomials annihilate; disjoint ones
    /// merge with the sign of the permutation sorting the concatenation.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (s1, c1) in &self.terms {
            for (s2, c2) in &other.terms {
                if !s1.is_disjoint_from(*s2) {
                    continue;
                }
                let sign = merge_sign(*s1, *s2);
                let mut c = c1.clone() * c2.clone();
                if sign < 0 {
                    c = -c;
                }
                out.add_term(s1.union(*s2), c);
            }
        }
        out
    }

    /// The boundary map `∂ e_{s_1...s_k} = Σ_i (-1)^{i-1} e_{S - s_i}`
    /// (elements listed increasing), extended linearly.
    pub fn boundary(&self) -> Self {
        let mut out = Self::zero();
        for (s, c) in &self.terms {
            for (i, x) in s.elements().enumerate() {
                let coeff = if i % 2 == 0 { c.clone() } else { -c.clone() };
                out.add_term(s.without(x), coeff);
            }
        }
        out
    }

    /// The component spanned by size-`k` monomials.
    pub fn degree_component(&self, k: usize) -> Self {
        let mut out = Self::zero();
        for (s, c) in &self.terms {
            if s.len() == k {
                out.add_term(*s, c.clone());
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut entries: Vec<(Subset, &C)> = self.terms.iter().map(|(s, c)| (*s, c)).collect();
        entries.sort_by(|a, b| b.0.glex_cmp(a.0));
        let mut out = String::new();
        for (i, (s, c)) in entries.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -(*c).clone() } else { (*c).clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff_txt = format!("{abs}");
            if coeff_txt != "1" || s.is_empty() {
                if coeff_txt.contains('/') {
                    out.push_str(&format!("({coeff_txt})"));
                } else {
                    out.push_str(&coeff_txt);
                }
            }
            if !s.is_empty() {
                out.push('e');
                out.push_str(&s.compact());
            }
        }
        out
    }
}

/// Sign of merging two disjoint increasing lists: parity of the number of
/// pairs `(a, b)` with `a` in the first set, `b` in the second, `a > b`.
fn merge_sign(s1: Subset, s2: Subset) -> i32 {
    let mut inversions = 0u32;
    for a in s1.elements() {
        let below = s2.mask() & ((1u32 << (a - 1)) - 1);
        inversions += below.count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl<C: Scalar> fmt::Debug for ExteriorElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl<C: Scalar> fmt::Display for ExteriorElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
