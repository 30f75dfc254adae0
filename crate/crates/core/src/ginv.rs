//! The G-invariant: the multiset of rank-increment sequences over all
//! orderings of the ground set, together with closed forms for paving
//! matroids, the corank-nullity specialization, and the weight-function
//! genericity counts it refines.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::poly::{factorial, rational_to_integer};
use crate::subsets::{for_each_permutation, subsets_of_size, Subset};
use crate::{Int, IntBiPoly, Rat, RatBiPoly};

/// Largest ground set for the all-permutations method; `n!` walks get slow
/// fast, and the chain method covers everything bigger.
pub const PERMUTATION_G_GUARD: usize = 9;

/// Cap on `k^n` when enumerating weight functions with values in `1..=k`.
pub const VALUE_ENUM_GUARD: u64 = 2_000_000;

/// A 0/1 rank-increment sequence `r_1 .. r_n`, with `r_j` stored in bit
/// `j - 1`.
///
/// Sequences sort by length, then by mask value. Mask order is a linear
/// extension of reverse dominance: if `s` dominates `t` then at the highest
/// position where they differ `s` has already spent its ones, so `s` has the
/// smaller mask. The dominance-greatest sequence `1..10..0` therefore comes
/// first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankSeq {
    n: usize,
    bits: u32,
}

impl RankSeq {
    pub fn new(n: usize, bits: u32) -> Result<RankSeq> {
        if n > 32 {
            return Err(Error::InvalidRankSequence(format!(
                "length {n} exceeds the supported maximum 32"
            )));
        }
        if n < 32 && bits >= (1u32 << n) {
            return Err(Error::InvalidRankSequence(format!(
                "mask {bits:#b} has increments beyond position {n}"
            )));
        }
        Ok(RankSeq { n, bits })
    }

    /// Parses `"110100"`, position 1 leftmost.
    pub fn parse(text: &str) -> Result<RankSeq> {
        if text.len() > 32 {
            return Err(Error::InvalidRankSequence(format!(
                "length {} exceeds the supported maximum 32",
                text.len()
            )));
        }
        let mut bits = 0u32;
        for (i, ch) in text.chars().enumerate() {
            match ch {
                '1' => bits |= 1 << i,
                '0' => {}
                other => {
                    return Err(Error::InvalidRankSequence(format!(
                        "unexpected character {other:?}, want 0 or 1"
                    )))
                }
            }
        }
        Ok(RankSeq { n: text.len(), bits })
    }

    /// Positions carrying a 1, as a subset of `{1, .., n}`.
    pub fn from_support(n: usize, support: Subset) -> Result<RankSeq> {
        RankSeq::new(n, support.mask())
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Number of increments, i.e. the rank of any matroid producing this
    /// sequence.
    pub fn ones(self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Increment at position `j`, 1-based.
    pub fn bit(self, j: usize) -> u8 {
        debug_assert!((1..=self.n).contains(&j));
        ((self.bits >> (j - 1)) & 1) as u8
    }

    /// Number of ones among positions `1..=j`.
    pub fn prefix_ones(self, j: usize) -> usize {
        debug_assert!(j <= self.n);
        if j == 0 {
            return 0;
        }
        let keep = if j >= 32 { u32::MAX } else { (1u32 << j) - 1 };
        (self.bits & keep).count_ones() as usize
    }

    pub fn support(self) -> Subset {
        Subset::from_mask(self.bits)
    }

    /// Sequence of the dual matroid: reverse the positions and flip every
    /// increment.
    pub fn dual(self) -> RankSeq {
        let mut bits = 0u32;
        for j in 1..=self.n {
            if self.bit(self.n + 1 - j) == 0 {
                bits |= 1 << (j - 1);
            }
        }
        RankSeq { n: self.n, bits }
    }

    /// Dominance order: every prefix of `self` has at least as many ones.
    /// Sequences of different lengths are incomparable.
    pub fn dominates(self, other: RankSeq) -> bool {
        if self.n != other.n {
            return false;
        }
        (1..=self.n).all(|j| self.prefix_ones(j) >= other.prefix_ones(j))
    }
}

impl fmt::Display for RankSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 1..=self.n {
            write!(f, "{}", self.bit(j))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RankSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// The G-invariant: for each ordering of the ground set, the rank-increment
/// sequence it produces; stored as sequence -> number of orderings.
///
/// Coefficients are nonnegative, supported on sequences of weight `rank`,
/// and sum to `n!`.
#[derive(Clone, PartialEq, Eq)]
pub struct GInvariant {
    n: usize,
    rank: usize,
    coeffs: BTreeMap<RankSeq, Int>,
}

impl GInvariant {
    pub fn from_terms(
        n: usize,
        rank: usize,
        terms: impl IntoIterator<Item = (RankSeq, Int)>,
    ) -> Result<GInvariant> {
        let mut g = GInvariant {
            n,
            rank,
            coeffs: BTreeMap::new(),
        };
        for (seq, c) in terms {
            if seq.n() != n || seq.ones() != rank {
                return Err(Error::InvalidRankSequence(format!(
                    "sequence {seq} does not have length {n} and weight {rank}"
                )));
            }
            g.add_assign(seq, c);
        }
        Ok(g)
    }

    fn add_assign(&mut self, seq: RankSeq, c: Int) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(seq).or_insert_with(Int::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&seq);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coeff(&self, seq: RankSeq) -> Int {
        self.coeffs.get(&seq).cloned().unwrap_or_else(Int::zero)
    }

    /// Terms in display order (dominance-greatest sequence first).
    pub fn terms(&self) -> impl Iterator<Item = (&RankSeq, &Int)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Sum of all coefficients; equals `n!` for an actual matroid.
    pub fn total(&self) -> Int {
        self.coeffs.values().sum()
    }

    /// E.g. `"144 [110100] + 576 [111000]"`; terms run dominance-least
    /// first, mirroring the solve order reversed.
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (seq, c) in self.coeffs.iter().rev() {
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&format!("{} [{seq}]", c.abs()));
        }
        out
    }
}

impl fmt::Debug for GInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// A rational combination of rank sequences of one length and weight.
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolVector {
    n: usize,
    rank: usize,
    coeffs: BTreeMap<RankSeq, Rat>,
}

impl SymbolVector {
    pub fn zero(n: usize, rank: usize) -> SymbolVector {
        SymbolVector {
            n,
            rank,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn unit(seq: RankSeq) -> SymbolVector {
        let mut v = SymbolVector::zero(seq.n(), seq.ones());
        v.coeffs.insert(seq, Rat::one());
        v
    }

    pub fn from_terms(
        n: usize,
        rank: usize,
        terms: impl IntoIterator<Item = (RankSeq, Rat)>,
    ) -> Result<SymbolVector> {
        let mut v = SymbolVector::zero(n, rank);
        for (seq, c) in terms {
            if seq.n() != n || seq.ones() != rank {
                return Err(Error::InvalidRankSequence(format!(
                    "sequence {seq} does not have length {n} and weight {rank}"
                )));
            }
            v.add_assign(seq, c);
        }
        Ok(v)
    }

    fn add_assign(&mut self, seq: RankSeq, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .coeffs
            .entry(seq)
            .or_insert_with(|| Rat::from(Int::zero()));
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&seq);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coeff(&self, seq: RankSeq) -> Rat {
        self.coeffs
            .get(&seq)
            .cloned()
            .unwrap_or_else(|| Rat::from(Int::zero()))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RankSeq, &Rat)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_scaled(&mut self, other: &SymbolVector, factor: &Rat) {
        debug_assert!(self.n == other.n && self.rank == other.rank);
        for (seq, c) in &other.coeffs {
            self.add_assign(*seq, c * factor);
        }
    }

    pub fn sub_scaled(&mut self, other: &SymbolVector, factor: &Rat) {
        self.add_scaled(other, &-factor.clone());
    }

    pub fn scale(&mut self, factor: &Rat) {
        if factor.is_zero() {
            self.coeffs.clear();
            return;
        }
        for c in self.coeffs.values_mut() {
            *c *= factor;
        }
    }

    /// E.g. `"4 [110100] - 3 [111000]"`; fractions print as `(1/2)`.
    pub fn to_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (seq, c) in self.coeffs.iter().rev() {
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let a = c.abs();
            if a.is_integer() {
                out.push_str(&format!("{} [{seq}]", a.to_integer()));
            } else {
                out.push_str(&format!("({a}) [{seq}]"));
            }
        }
        out
    }
}

impl fmt::Debug for SymbolVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Rank-increment sequence of one ordering; `perm` lists the elements in the
/// order they are added.
pub fn rank_sequence(m: &Matroid, perm: &[usize]) -> Result<RankSeq> {
    let n = m.n();
    if perm.len() != n {
        return Err(Error::InvalidInput(format!(
            "ordering has {} entries, the ground set has {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &e in perm {
        if !(1..=n).contains(&e) {
            return Err(Error::ElementOutOfRange { element: e, n });
        }
        if std::mem::replace(&mut seen[e - 1], true) {
            return Err(Error::InvalidInput(format!(
                "ordering repeats element {e}"
            )));
        }
    }
    Ok(RankSeq {
        n,
        bits: increment_bits(m, perm),
    })
}

fn increment_bits(m: &Matroid, perm: &[usize]) -> u32 {
    let mut bits = 0u32;
    let mut cur = Subset::EMPTY;
    let mut prev = 0usize;
    for (k, &e) in perm.iter().enumerate() {
        cur = cur.union(Subset::singleton(e));
        let r = m.rank_of(cur);
        if r > prev {
            bits |= 1 << k;
        }
        prev = r;
    }
    bits
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GMethod {
    /// Walk all `n!` orderings.
    Permutations,
    /// Dynamic program over subsets carrying partial sequences.
    ChainDp,
}

pub fn g_invariant(m: &Matroid, method: GMethod) -> Result<GInvariant> {
    match method {
        GMethod::Permutations => g_via_permutations(m),
        GMethod::ChainDp => Ok(g_via_chain_dp(m)),
    }
}

fn g_via_permutations(m: &Matroid) -> Result<GInvariant> {
    let n = m.n();
    if n > PERMUTATION_G_GUARD {
        return Err(Error::GuardExceeded {
            what: "permutation enumeration",
            limit: PERMUTATION_G_GUARD,
            actual: n,
        });
    }
    let mut counts: HashMap<u32, u64> = HashMap::new();
    for_each_permutation(n, |perm| {
        *counts.entry(increment_bits(m, perm)).or_insert(0) += 1;
    });
    let mut g = GInvariant {
        n,
        rank: m.rank(),
        coeffs: BTreeMap::new(),
    };
    for (bits, c) in counts {
        g.add_assign(RankSeq { n, bits }, Int::from(c));
    }
    Ok(g)
}

/// Counts orderings without listing them: the state after `k` steps is the
/// set of elements placed so far plus the increment sequence they produced,
/// and every unplaced element extends the chain by one subset.
fn g_via_chain_dp(m: &Matroid) -> GInvariant {
    let n = m.n();
    let mut frontier: HashMap<u32, HashMap<u32, u128>> = HashMap::new();
    frontier.insert(0, HashMap::from([(0u32, 1u128)]));
    for step in 1..=n {
        let mut next: HashMap<u32, HashMap<u32, u128>> = HashMap::new();
        for (mask, seqs) in frontier {
            let base_rank = m.rank_of(Subset::from_mask(mask));
            for e in 1..=n {
                let bit = 1u32 << (e - 1);
                if mask & bit != 0 {
                    continue;
                }
                let grew = m.rank_of(Subset::from_mask(mask | bit)) > base_rank;
                let inc = if grew { 1u32 << (step - 1) } else { 0 };
                let slot = next.entry(mask | bit).or_default();
                for (&sb, &cnt) in &seqs {
                    *slot.entry(sb | inc).or_insert(0) += cnt;
                }
            }
        }
        frontier = next;
    }
    let full = Subset::full(n).mask();
    let mut g = GInvariant {
        n,
        rank: m.rank(),
        coeffs: BTreeMap::new(),
    };
    if let Some(seqs) = frontier.get(&full) {
        for (&bits, &cnt) in seqs {
            g.add_assign(RankSeq { n, bits }, Int::from(cnt));
        }
    }
    g
}

/// G-invariant of the dual matroid, read off by reversing and flipping every
/// sequence.
pub fn g_dual(g: &GInvariant) -> GInvariant {
    let mut out = GInvariant {
        n: g.n,
        rank: g.n - g.rank,
        coeffs: BTreeMap::new(),
    };
    for (seq, c) in &g.coeffs {
        out.add_assign(seq.dual(), c.clone());
    }
    out
}

fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    factorial::<Int>(n) / (factorial::<Int>(k) * factorial::<Int>(n - k))
}

fn copoint_checks(n: usize, r: usize, copoints: &[Subset]) -> Result<()> {
    if r < 1 || r > n {
        return Err(Error::NotPaving(format!(
            "rank {r} is outside 1..={n}"
        )));
    }
    for (i, &x) in copoints.iter().enumerate() {
        if x.len() < r {
            return Err(Error::NotPaving(format!(
                "copoint {x} has fewer than {r} elements"
            )));
        }
        if x.len() == n {
            return Err(Error::NotPaving(format!(
                "copoint {x} is the whole ground set"
            )));
        }
        for &y in &copoints[..i] {
            if x.intersection(y).len() + 2 > r {
                return Err(Error::NotPaving(format!(
                    "copoints {x} and {y} share {} elements, at most {} allowed",
                    x.intersection(y).len(),
                    r.saturating_sub(2)
                )));
            }
        }
    }
    Ok(())
}

fn copoint_subsets(n: usize, copoints: &[Vec<usize>]) -> Result<Vec<Subset>> {
    let mut sets = Vec::with_capacity(copoints.len());
    for x in copoints {
        for &e in x {
            if !(1..=n).contains(&e) {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
        }
        sets.push(Subset::from_elements(x));
    }
    Ok(sets)
}

/// Paving matroid of rank `r` whose hyperplanes of size `>= r` are the given
/// copoints: the bases are the `r`-sets lying in none of them.
pub fn paving_matroid(n: usize, r: usize, copoints: &[Vec<usize>]) -> Result<Matroid> {
    let sets = copoint_subsets(n, copoints)?;
    copoint_checks(n, r, &sets)?;
    let bases: Vec<Subset> = subsets_of_size(n, r)
        .filter(|s| !sets.iter().any(|x| s.is_subset_of(*x)))
        .collect();
    if bases.is_empty() {
        return Err(Error::NotPaving(
            "every r-set lies inside a copoint".into(),
        ));
    }
    Matroid::from_basis_masks(n, bases)
}

/// Closed-form G-invariant of a paving matroid, from its rank and the sizes
/// of its nontrivial copoints (those with more than `r - 1` elements).
///
/// A trivial copoint contributes `(r-1)!(n-r+1)!` orderings with sequence
/// `1^r 0^(n-r)`; a copoint `X` contributes, for each `i` with
/// `r <= i <= |X| + 1`, `|X|!/(|X|-i+1)! * (n-|X|) * (n-i)!` orderings whose
/// last increment sits at position `i`.
pub fn paving_g_from_sizes(n: usize, r: usize, sizes: &[usize]) -> Result<GInvariant> {
    if r < 1 || r > n {
        return Err(Error::NotPaving(format!(
            "rank {r} is outside 1..={n}"
        )));
    }
    let mut trivial = binomial(n, r - 1);
    for &s in sizes {
        if s < r || s >= n {
            return Err(Error::NotPaving(format!(
                "copoint size {s} is outside {r}..={}",
                n - 1
            )));
        }
        trivial -= binomial(s, r - 1);
    }
    if trivial.is_negative() {
        return Err(Error::NotPaving(
            "copoint sizes cover more (r-1)-sets than exist".into(),
        ));
    }
    let mut g = GInvariant {
        n,
        rank: r,
        coeffs: BTreeMap::new(),
    };
    let top = RankSeq {
        n,
        bits: (1u32 << r) - 1,
    };
    g.add_assign(
        top,
        trivial * factorial::<Int>(r - 1) * factorial::<Int>(n - r + 1),
    );
    let head = (1u32 << (r - 1)) - 1;
    for &s in sizes {
        for i in r..=s + 1 {
            let orders = factorial::<Int>(s) / factorial::<Int>(s + 1 - i)
                * Int::from(n - s)
                * factorial::<Int>(n - i);
            g.add_assign(
                RankSeq {
                    n,
                    bits: head | (1u32 << (i - 1)),
                },
                orders,
            );
        }
    }
    Ok(g)
}

/// Closed-form G-invariant straight from a copoint presentation.
pub fn paving_g_from_copoints(
    n: usize,
    r: usize,
    copoints: &[Vec<usize>],
) -> Result<GInvariant> {
    let sets = copoint_subsets(n, copoints)?;
    copoint_checks(n, r, &sets)?;
    let sizes: Vec<usize> = sets.iter().map(|x| x.len()).collect();
    paving_g_from_sizes(n, r, &sizes)
}

/// Closed-form G-invariant of a sparse paving matroid with `alpha`
/// circuit-hyperplanes: all to `1^r 0^(n-r)` except `alpha * r!(n-r)!`
/// orderings shifted to `1^(r-1) 0 1 0^(n-r-1)`.
pub fn sparse_paving_g(n: usize, r: usize, alpha: usize) -> Result<GInvariant> {
    if r < 1 || r > n {
        return Err(Error::NotPaving(format!(
            "rank {r} is outside 1..={n}"
        )));
    }
    let total = binomial(n, r);
    let alpha_int = Int::from(alpha);
    if alpha_int > total {
        return Err(Error::NotPaving(format!(
            "{alpha} circuit-hyperplanes exceed the {total} possible r-sets"
        )));
    }
    if alpha > 0 && r == n {
        return Err(Error::NotPaving(
            "a circuit-hyperplane needs a position after the rank".into(),
        ));
    }
    let weight = factorial::<Int>(r) * factorial::<Int>(n - r);
    let mut g = GInvariant {
        n,
        rank: r,
        coeffs: BTreeMap::new(),
    };
    g.add_assign(
        RankSeq {
            n,
            bits: (1u32 << r) - 1,
        },
        (total - &alpha_int) * &weight,
    );
    if alpha > 0 {
        let bits = ((1u32 << (r - 1)) - 1) | (1u32 << r);
        g.add_assign(RankSeq { n, bits }, alpha_int * weight);
    }
    Ok(g)
}

/// Image of one rank sequence under the specialization onto corank-nullity
/// polynomials: sum over prefix lengths `m` of
/// `x^(r - w_m) y^(m - w_m) / (m! (n-m)!)` where `w_m` counts ones among the
/// first `m` positions.
fn symbol_rank_poly(seq: RankSeq) -> RatBiPoly {
    let n = seq.n();
    let r = seq.ones();
    let mut acc = RatBiPoly::zero();
    let mut w = 0usize;
    for m in 0..=n {
        if m > 0 {
            w += seq.bit(m) as usize;
        }
        let denom = factorial::<Rat>(m) * factorial::<Rat>(n - m);
        acc.add_term([(r - w) as u32, (m - w) as u32], Rat::one() / denom);
    }
    acc
}

/// Specializes a G-invariant to the Tutte polynomial: apply the
/// corank-nullity map symbol by symbol, then substitute `x-1, y-1`.
pub fn specialize_to_tutte(g: &GInvariant) -> Result<IntBiPoly> {
    let mut acc = RatBiPoly::zero();
    for (seq, c) in g.terms() {
        let sym = symbol_rank_poly(*seq);
        for (e, v) in sym.terms() {
            acc.add_term(*e, v * Rat::from(c.clone()));
        }
    }
    rational_to_integer(&acc.shift_vars(-1, -1), "Tutte specialization")
}

/// Tutte-plane specialization of a rational symbol combination; no
/// integrality is imposed.
pub fn specialize_symbol_vector(v: &SymbolVector) -> RatBiPoly {
    let mut acc = RatBiPoly::zero();
    for (seq, c) in v.terms() {
        let sym = symbol_rank_poly(*seq);
        for (e, w) in sym.terms() {
            acc.add_term(*e, w * c);
        }
    }
    acc.shift_vars(-1, -1)
}

/// True when the combination lies in the kernel of the Tutte specialization.
pub fn verify_syzygy(v: &SymbolVector) -> bool {
    specialize_symbol_vector(v).is_zero()
}

/// The freedom matroid of a rank sequence: with increments at positions
/// `b_1 < .. < b_r`, the bases are the `r`-sets `c_1 < .. < c_r` with
/// `c_j >= b_j` throughout.
pub fn freedom_matroid(seq: RankSeq) -> Result<Matroid> {
    let n = seq.n();
    let mins: Vec<usize> = seq.support().elements().collect();
    let r = mins.len();
    let bases: Vec<Subset> = subsets_of_size(n, r)
        .filter(|s| s.elements().zip(mins.iter()).all(|(c, &b)| c >= b))
        .collect();
    Matroid::from_basis_masks(n, bases)
}

/// Builds the same matroid one element at a time: a 1 appends a coloop, a 0
/// appends a freest-possible element of the current rank (a loop at rank 0).
pub fn freedom_matroid_incremental(seq: RankSeq) -> Result<Matroid> {
    let mut m = Matroid::empty();
    for j in 1..=seq.n() {
        let k = m.rank();
        let e = Subset::singleton(j);
        let mut bases: Vec<Subset> = if seq.bit(j) == 1 {
            m.bases().iter().map(|b| b.union(e)).collect()
        } else {
            m.bases().to_vec()
        };
        if seq.bit(j) == 0 && k > 0 {
            for i in subsets_of_size(j - 1, k - 1) {
                if m.is_independent(i) {
                    bases.push(i.union(e));
                }
            }
        }
        m = Matroid::from_basis_masks(j, bases)?;
    }
    Ok(m)
}

/// The expansion of each weight-`r` rank sequence of length `n` in the basis
/// of freedom-matroid G-invariants, solved by dominance triangularity.
pub struct FreedomBasis {
    pub n: usize,
    pub rank: usize,
    /// All weight-`rank` sequences in solve order, dominance-greatest first.
    pub order: Vec<RankSeq>,
    /// `expansion[s]` writes the symbol `[s]` as a combination of
    /// `G(freedom(t))` over sequences `t`.
    pub expansion: BTreeMap<RankSeq, SymbolVector>,
    /// G-invariants of the freedom matroids, for reuse and inspection.
    pub g_table: BTreeMap<RankSeq, GInvariant>,
}

pub fn freedom_expansion(n: usize, r: usize) -> Result<FreedomBasis> {
    if r > n {
        return Err(Error::InvalidInput(format!(
            "rank {r} exceeds ground-set size {n}"
        )));
    }
    let mut order: Vec<RankSeq> = subsets_of_size(n, r)
        .map(|s| RankSeq {
            n,
            bits: s.mask(),
        })
        .collect();
    order.sort();
    let mut expansion: BTreeMap<RankSeq, SymbolVector> = BTreeMap::new();
    let mut g_table: BTreeMap<RankSeq, GInvariant> = BTreeMap::new();
    for &sigma in &order {
        let g = g_via_chain_dp(&freedom_matroid(sigma)?);
        let diag = g.coeff(sigma);
        if diag.is_zero() {
            return Err(Error::CrossCheckFailed(format!(
                "freedom matroid of {sigma} misses its own sequence"
            )));
        }
        let mut v = SymbolVector::unit(sigma);
        for (s, c) in g.terms() {
            if *s == sigma {
                continue;
            }
            if !s.dominates(sigma) {
                return Err(Error::CrossCheckFailed(format!(
                    "freedom matroid of {sigma} produced non-dominating sequence {s}"
                )));
            }
            let prev = expansion.get(s).ok_or_else(|| {
                Error::CrossCheckFailed(format!(
                    "expansion of {s} not available while solving {sigma}"
                ))
            })?;
            let prev = prev.clone();
            v.sub_scaled(&prev, &Rat::from(c.clone()));
        }
        v.scale(&(Rat::one() / Rat::from(diag)));
        expansion.insert(sigma, v);
        g_table.insert(sigma, g);
    }
    Ok(FreedomBasis {
        n,
        rank: r,
        order,
        expansion,
        g_table,
    })
}

fn to_rat_bipoly(p: &IntBiPoly) -> RatBiPoly {
    p.map_coeffs(|c| Rat::from(c.clone()))
}

/// Writes the Tutte polynomial of `m` as a combination of Tutte polynomials
/// of freedom matroids, and certifies the recombination exactly.
pub fn tutte_in_freedom_basis(m: &Matroid) -> Result<SymbolVector> {
    let fb = freedom_expansion(m.n(), m.rank())?;
    let g = g_via_chain_dp(m);
    let mut c = SymbolVector::zero(m.n(), m.rank());
    for (s, gs) in g.terms() {
        let exp = fb.expansion.get(s).ok_or_else(|| {
            Error::CrossCheckFailed(format!("no expansion for sequence {s}"))
        })?;
        c.add_scaled(exp, &Rat::from(gs.clone()));
    }
    let mut recombined = RatBiPoly::zero();
    for (s, cs) in c.terms() {
        let t = to_rat_bipoly(&crate::tutte::tutte_via_subsets(&freedom_matroid(*s)?));
        for (e, v) in t.terms() {
            recombined.add_term(*e, v * cs);
        }
    }
    let direct = to_rat_bipoly(&crate::tutte::tutte_via_subsets(m));
    if recombined != direct {
        return Err(Error::CrossCheckFailed(
            "freedom recombination does not reproduce the Tutte polynomial".into(),
        ));
    }
    Ok(c)
}

/// Dimension of the span of the Tutte polynomials of all matroids with `n`
/// elements and rank `r`, computed on the freedom matroids that realize it.
pub fn tutte_span_dimension(n: usize, r: usize) -> Result<usize> {
    if r > n {
        return Err(Error::InvalidInput(format!(
            "rank {r} exceeds ground-set size {n}"
        )));
    }
    let mut polys = Vec::new();
    let mut monomials: BTreeSet<[u32; 2]> = BTreeSet::new();
    for s in subsets_of_size(n, r) {
        let seq = RankSeq { n, bits: s.mask() };
        let t = crate::tutte::tutte_via_subsets(&freedom_matroid(seq)?);
        monomials.extend(t.terms().map(|(e, _)| *e));
        polys.push(t);
    }
    let cols: Vec<[u32; 2]> = monomials.into_iter().collect();
    let rows: Vec<Vec<Rat>> = polys
        .iter()
        .map(|t| cols.iter().map(|e| Rat::from(t.coeff(*e))).collect())
        .collect();
    Ok(crate::linalg::rank(rows))
}

/// True when the given combination of Tutte polynomials of freedom matroids
/// vanishes identically.
pub fn freedom_tutte_relation(v: &SymbolVector) -> Result<bool> {
    let mut acc = RatBiPoly::zero();
    for (s, c) in v.terms() {
        let t = to_rat_bipoly(&crate::tutte::tutte_via_subsets(&freedom_matroid(*s)?));
        for (e, w) in t.terms() {
            acc.add_term(*e, w * c);
        }
    }
    Ok(acc.is_zero())
}

/// True when exactly one basis minimizes the total weight under `f`
/// (`f[e - 1]` is the weight of element `e`).
pub fn is_m_generic(m: &Matroid, f: &[u64]) -> Result<bool> {
    let n = m.n();
    if f.len() != n {
        return Err(Error::InvalidInput(format!(
            "weight function has {} values, the ground set has {n}",
            f.len()
        )));
    }
    if f.contains(&0) {
        return Err(Error::InvalidInput("weights must be positive".into()));
    }
    let mut best: Option<u128> = None;
    let mut count = 0usize;
    for b in m.bases() {
        let w: u128 = b.elements().map(|e| f[e - 1] as u128).sum();
        match &best {
            Some(cur) if w > *cur => {}
            Some(cur) if w == *cur => count += 1,
            _ => {
                best = Some(w);
                count = 1;
            }
        }
    }
    Ok(count == 1)
}

/// Enumerates all weight functions with values in `1..=k` and counts, per
/// sorted value multiset, how many make the matroid weight-generic.
pub fn f_invariant_truncated(m: &Matroid, k: u64) -> Result<BTreeMap<Vec<u64>, Int>> {
    let n = m.n();
    if k == 0 {
        return Err(Error::InvalidInput("weights must be positive".into()));
    }
    let mut total = 1u64;
    for _ in 0..n {
        total = total.checked_mul(k).unwrap_or(u64::MAX);
        if total > VALUE_ENUM_GUARD {
            return Err(Error::GuardExceeded {
                what: "weight-function enumeration",
                limit: VALUE_ENUM_GUARD as usize,
                actual: usize::try_from(total).unwrap_or(usize::MAX),
            });
        }
    }
    let mut counts: BTreeMap<Vec<u64>, Int> = BTreeMap::new();
    let mut f = vec![1u64; n];
    loop {
        if is_m_generic(m, &f)? {
            let mut key = f.clone();
            key.sort_unstable();
            *counts.entry(key).or_insert_with(Int::zero) += 1;
        }
        let mut pos = n;
        while pos > 0 && f[pos - 1] == k {
            f[pos - 1] = 1;
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
        f[pos - 1] += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::Matroid;

    fn seq(text: &str) -> RankSeq {
        RankSeq::parse(text).unwrap()
    }

    fn k4() -> Matroid {
        crate::graph::GraphInput::complete(4).cycle_matroid().unwrap()
    }

    fn p_matroid() -> Matroid {
        paving_matroid(6, 3, &[vec![1, 2, 3, 4], vec![4, 5, 6]]).unwrap()
    }

    #[test]
    fn sequence_parse_display_and_order() {
        let s = seq("110100");
        assert_eq!(s.to_string(), "110100");
        assert_eq!(s.ones(), 3);
        assert_eq!(s.bit(1), 1);
        assert_eq!(s.bit(3), 0);
        assert_eq!(format!("{s:?}"), "[110100]");
        assert!(seq("111000") < seq("110100"));
        assert!(seq("110100") < seq("110010"));
        assert!(RankSeq::parse("10201").is_err());
        assert!(RankSeq::new(3, 0b1000).is_err());
    }

    #[test]
    fn mask_order_extends_reverse_dominance() {
        for a in subsets_of_size(7, 3) {
            for b in subsets_of_size(7, 3) {
                let s = RankSeq::new(7, a.mask()).unwrap();
                let t = RankSeq::new(7, b.mask()).unwrap();
                if s.dominates(t) && s != t {
                    assert!(s < t, "{s} dominates {t} but sorts after it");
                }
            }
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(seq("110100").dominates(seq("101010")));
        assert!(!seq("101010").dominates(seq("110100")));
        assert!(seq("1100").dominates(seq("1100")));
        assert!(!seq("1100").dominates(seq("110")));
        let top = seq("1100");
        for s in subsets_of_size(4, 2) {
            assert!(top.dominates(RankSeq::new(4, s.mask()).unwrap()));
        }
    }

    #[test]
    fn dual_reverses_and_flips() {
        assert_eq!(seq("110100").dual(), seq("110100"));
        assert_eq!(seq("1010").dual(), seq("1010"));
        assert_eq!(seq("1100").dual(), seq("1100"));
        assert_eq!(seq("110").dual(), seq("100"));
        assert_eq!(seq("10").dual().dual(), seq("10"));
    }

    #[test]
    fn rank_sequences_of_orderings() {
        let m = k4();
        let star_first = rank_sequence(&m, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(star_first.to_string(), "111000");
        let triangle_first = rank_sequence(&m, &[1, 2, 4, 3, 5, 6]).unwrap();
        assert_eq!(triangle_first.to_string(), "110100");
        assert!(m.bases().contains(&star_first.support()));
        assert!(rank_sequence(&m, &[1, 2, 3]).is_err());
        assert!(rank_sequence(&m, &[1, 2, 3, 4, 5, 5]).is_err());
    }

    #[test]
    fn uniform_g_is_concentrated() {
        for (r, n) in [(0, 0), (0, 3), (2, 4), (3, 5)] {
            let m = Matroid::uniform(r, n).unwrap();
            let g = g_invariant(&m, GMethod::Permutations).unwrap();
            assert_eq!(g.num_terms(), 1);
            let top = RankSeq::new(n, (1u32 << r) - 1).unwrap();
            assert_eq!(g.coeff(top), factorial::<Int>(n));
            assert_eq!(g.total(), factorial::<Int>(n));
        }
    }

    #[test]
    fn complete_graph_g_three_ways() {
        let m = k4();
        let brute = g_invariant(&m, GMethod::Permutations).unwrap();
        let chain = g_invariant(&m, GMethod::ChainDp).unwrap();
        let closed = sparse_paving_g(6, 3, 4).unwrap();
        assert_eq!(brute, chain);
        assert_eq!(brute, closed);
        assert_eq!(brute.to_text(), "144 [110100] + 576 [111000]");
        assert_eq!(brute.total(), factorial::<Int>(6));
    }

    #[test]
    fn paving_example_g_two_ways() {
        let m = p_matroid();
        assert_eq!(m.bases().len(), 15);
        let chain = g_invariant(&m, GMethod::ChainDp).unwrap();
        let closed =
            paving_g_from_copoints(6, 3, &[vec![1, 2, 3, 4], vec![4, 5, 6]]).unwrap();
        assert_eq!(chain, closed);
        assert_eq!(
            chain.to_text(),
            "48 [110010] + 132 [110100] + 540 [111000]"
        );
        assert_eq!(chain.total(), factorial::<Int>(6));
    }

    #[test]
    fn permutation_guard_trips() {
        let m = Matroid::uniform(3, 10).unwrap();
        assert!(matches!(
            g_invariant(&m, GMethod::Permutations),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(g_invariant(&m, GMethod::ChainDp).is_ok());
    }

    #[test]
    fn paving_validation() {
        assert!(matches!(
            paving_matroid(6, 3, &[vec![1, 2, 3, 4], vec![3, 4, 5]]),
            Err(Error::NotPaving(_))
        ));
        assert!(matches!(
            paving_matroid(6, 3, &[vec![1, 2]]),
            Err(Error::NotPaving(_))
        ));
        assert!(matches!(
            paving_matroid(4, 2, &[vec![1, 2, 3, 4]]),
            Err(Error::NotPaving(_))
        ));
        assert!(matches!(
            paving_g_from_sizes(6, 3, &[5, 5, 5, 5, 5, 5, 5]),
            Err(Error::NotPaving(_))
        ));
        assert!(matches!(
            sparse_paving_g(4, 4, 1),
            Err(Error::NotPaving(_))
        ));
    }

    #[test]
    fn sparse_paving_with_no_circuit_hyperplanes_is_uniform() {
        let g = sparse_paving_g(5, 2, 0).unwrap();
        let u = g_invariant(&Matroid::uniform(2, 5).unwrap(), GMethod::ChainDp).unwrap();
        assert_eq!(g, u);
    }

    #[test]
    fn dual_g_matches_g_of_dual() {
        for m in [
            k4(),
            p_matroid(),
            Matroid::uniform(2, 5).unwrap(),
            Matroid::uniform(1, 2).unwrap(),
        ] {
            let g = g_invariant(&m, GMethod::ChainDp).unwrap();
            let gd = g_invariant(&m.dual(), GMethod::ChainDp).unwrap();
            assert_eq!(g_dual(&g), gd);
            assert_eq!(g_dual(&g_dual(&g)), g);
        }
    }

    #[test]
    fn specialization_hits_small_tutte_polynomials() {
        let u12 = Matroid::uniform(1, 2).unwrap();
        let g = g_invariant(&u12, GMethod::Permutations).unwrap();
        let t = specialize_to_tutte(&g).unwrap();
        assert_eq!(t.to_text(["x", "y"]), "x + y");

        let m = k4();
        let g = g_invariant(&m, GMethod::ChainDp).unwrap();
        assert_eq!(
            specialize_to_tutte(&g).unwrap(),
            crate::tutte::tutte_via_subsets(&m)
        );

        let p = p_matroid();
        let g = g_invariant(&p, GMethod::ChainDp).unwrap();
        assert_eq!(
            specialize_to_tutte(&g).unwrap(),
            crate::tutte::tutte_via_subsets(&p)
        );
    }

    #[test]
    fn freedom_matroids_from_both_constructions() {
        let u = freedom_matroid(seq("11000")).unwrap();
        assert_eq!(u, Matroid::uniform(2, 5).unwrap());

        let f = freedom_matroid(seq("110100")).unwrap();
        assert_eq!(f.bases().len(), 19);
        assert!(!f.bases().contains(&Subset::from_elements(&[1, 2, 3])));

        let loops = freedom_matroid(seq("0011")).unwrap();
        assert_eq!(loops.loops(), Subset::from_elements(&[1, 2]));
        assert_eq!(loops.rank(), 2);

        for n in 0..=5usize {
            for bits in 0..(1u32 << n) {
                let s = RankSeq::new(n, bits).unwrap();
                assert_eq!(
                    freedom_matroid(s).unwrap(),
                    freedom_matroid_incremental(s).unwrap(),
                    "constructions disagree at {s}"
                );
            }
        }
    }

    #[test]
    fn freedom_expansion_is_triangular_with_matching_certificate() {
        let fb = freedom_expansion(6, 3).unwrap();
        assert_eq!(fb.order.len(), 20);
        for (sigma, g) in &fb.g_table {
            for (s, _) in g.terms() {
                assert!(s.dominates(*sigma));
            }
        }
        let top = seq("111000");
        let unit = fb.expansion.get(&top).unwrap();
        assert_eq!(unit.coeff(top), Rat::from(Int::from(1)) / Rat::from(factorial::<Int>(6)));
        assert_eq!(unit.terms().count(), 1);
    }

    #[test]
    fn tutte_of_complete_graph_in_freedom_basis() {
        let c = tutte_in_freedom_basis(&k4()).unwrap();
        assert_eq!(c.to_text(), "4 [110100] - 3 [111000]");
    }

    #[test]
    fn sparse_paving_tutte_recombination() {
        let m = paving_matroid(5, 2, &[vec![4, 5]]).unwrap();
        let c = tutte_in_freedom_basis(&m).unwrap();
        let direct = crate::tutte::tutte_via_subsets(&m);
        let mut acc = RatBiPoly::zero();
        for (s, cs) in c.terms() {
            let t = to_rat_bipoly(&crate::tutte::tutte_via_subsets(
                &freedom_matroid(*s).unwrap(),
            ));
            for (e, v) in t.terms() {
                acc.add_term(*e, v * cs);
            }
        }
        assert_eq!(acc, to_rat_bipoly(&direct));
    }

    #[test]
    fn syzygy_and_five_term_relation() {
        let one = Rat::from(Int::from(1));
        let syz = SymbolVector::from_terms(
            7,
            3,
            [
                (seq("1010100"), one.clone()),
                (seq("1011000"), -one.clone()),
                (seq("1100100"), -one.clone()),
                (seq("1101000"), one.clone()),
            ],
        )
        .unwrap();
        assert!(verify_syzygy(&syz));
        assert!(!verify_syzygy(&SymbolVector::unit(seq("1110000"))));

        let relation = SymbolVector::from_terms(
            7,
            3,
            [
                (seq("1010100"), one.clone()),
                (seq("1011000"), -one.clone()),
                (seq("1100100"), -one.clone()),
                (seq("1101000"), one.clone() + one.clone()),
                (seq("1110000"), -one.clone()),
            ],
        )
        .unwrap();
        assert!(freedom_tutte_relation(&relation).unwrap());
        assert!(!freedom_tutte_relation(&syz).unwrap());
        assert!(verify_syzygy(&SymbolVector::zero(7, 3)));
    }

    #[test]
    fn tutte_span_small_case() {
        assert_eq!(tutte_span_dimension(6, 3).unwrap(), 10);
        assert_eq!(tutte_span_dimension(4, 2).unwrap(), 5);
        assert_eq!(tutte_span_dimension(3, 3).unwrap(), 1);
    }

    #[test]
    fn weight_genericity_counts() {
        let u12 = Matroid::uniform(1, 2).unwrap();
        assert!(is_m_generic(&u12, &[1, 2]).unwrap());
        assert!(!is_m_generic(&u12, &[2, 2]).unwrap());
        assert!(is_m_generic(&u12, &[0, 1]).is_err());
        assert!(is_m_generic(&u12, &[1]).is_err());

        let counts = f_invariant_truncated(&u12, 2).unwrap();
        assert_eq!(counts.len(), 1);
        assert_eq!(counts.get(&vec![1, 2]), Some(&Int::from(2)));

        let k4counts = f_invariant_truncated(&k4(), 2).unwrap();
        let total: Int = k4counts.values().sum();
        assert!(total > Int::zero());
        assert!(matches!(
            f_invariant_truncated(&Matroid::uniform(2, 8).unwrap(), 20),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn text_rendering() {
        let g = GInvariant::from_terms(
            4,
            2,
            [
                (seq("1100"), Int::from(20)),
                (seq("1010"), Int::from(4)),
            ],
        )
        .unwrap();
        assert_eq!(g.to_text(), "4 [1010] + 20 [1100]");
        assert_eq!(GInvariant::from_terms(3, 1, []).unwrap().to_text(), "0");
        let v = SymbolVector::from_terms(
            4,
            2,
            [(seq("1100"), Rat::from(Int::from(1)) / Rat::from(Int::from(2)))],
        )
        .unwrap();
        assert_eq!(v.to_text(), "(1/2) [1100]");
        assert!(GInvariant::from_terms(4, 2, [(seq("1000"), Int::one())]).is_err());
    }
}
