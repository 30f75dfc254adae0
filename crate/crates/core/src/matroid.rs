//! Matroids presented by their bases.
//!
//! The basis family is the internal normal form: every constructor reduces to
//! it and validates the exchange axiom, so any value of type [`Matroid`] is a
//! genuine matroid. Rank and independence queries go through lazily built
//! per-subset tables (2^n entries), which bounds the ground set at
//! [`SUBSET_ENUM_GUARD`] elements; that is ample for the desk-scale objects
//! this crate targets.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::subsets::{all_subsets, for_each_permutation, Subset};
use crate::Int;

/// Largest ground set for which 2^n tables are built.
pub const SUBSET_ENUM_GUARD: usize = 20;

/// Largest ground set for which `canonical_key` minimizes over all n!
/// relabelings by default; above it a documented isomorphism-invariant
/// fingerprint (not a canonical form) is used instead.
pub const EXACT_CANONICAL_GUARD: usize = 10;

#[derive(Clone)]
struct RankTables {
    indep: Vec<bool>,
    rank: Vec<u8>,
}

/// One flat of the lattice, with its rank and Möbius value `μ(cl(∅), X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub set: Subset,
    pub rank: usize,
    pub mobius: Int,
}

/// All flats ordered by rank, then lexicographically by element sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatLattice {
    pub flats: Vec<Flat>,
}

impl FlatLattice {
    pub fn mobius_of(&self, set: Subset) -> Option<&Int> {
        self.flats.iter().find(|f| f.set == set).map(|f| &f.mobius)
    }
}

#[derive(Clone)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<Subset>,
    tables: OnceLock<RankTables>,
    circuits: OnceLock<Vec<Subset>>,
    flats: OnceLock<FlatLattice>,
    canon: OnceLock<Vec<u8>>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rank == other.rank && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl std::hash::Hash for Matroid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.rank.hash(state);
        self.bases.hash(state);
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid(n={}, r={}, bases=[", self.n, self.rank)?;
        for (i, b) in self.bases.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", b.compact())?;
        }
        write!(f, "])")
    }
}

impl Matroid {
    // ---- constructors ----

    /// Builds a matroid from explicit bases (element lists, labels `1..=n`).
    pub fn from_bases(n: usize, bases: &[Vec<usize>]) -> Result<Matroid> {
        let mut masks = Vec::with_capacity(bases.len());
        for b in bases {
            for &e in b {
                if e < 1 || e > n {
                    return Err(Error::ElementOutOfRange { element: e, n });
                }
            }
            let s = Subset::from_elements(b);
            if s.len() != b.len() {
                return Err(Error::InvalidCircuitFamily(format!(
                    "repeated element in basis {b:?}"
                )));
            }
            masks.push(s);
        }
        Matroid::from_basis_masks(n, masks)
    }

    /// Core constructor: dedupes, sorts and validates the exchange axiom.
    pub fn from_basis_masks(n: usize, mut bases: Vec<Subset>) -> Result<Matroid> {
        if n > SUBSET_ENUM_GUARD {
            return Err(Error::GroundSetTooLarge {
                n,
                max: SUBSET_ENUM_GUARD,
            });
        }
        bases.sort();
        bases.dedup();
        if bases.is_empty() {
            return Err(Error::EmptyBasisFamily);
        }
        let full = Subset::full(n);
        for b in &bases {
            if !b.is_subset_of(full) {
                let e = b.difference(full).min_element().unwrap();
                return Err(Error::ElementOutOfRange { element: e, n });
            }
        }
        let rank = bases[0].len();
        if bases.iter().any(|b| b.len() != rank) {
            let mut sizes: Vec<usize> = bases.iter().map(|b| b.len()).collect();
            sizes.sort();
            sizes.dedup();
            return Err(Error::UnequalBasisCardinalities(sizes));
        }
        let set: HashSet<u32> = bases.iter().map(|b| b.mask()).collect();
        for b1 in &bases {
            for b2 in &bases {
                if b1 == b2 {
                    continue;
                }
                for x in b1.difference(*b2).elements() {
                    let stem = b1.without(x);
                    let ok = b2
                        .difference(*b1)
                        .elements()
                        .any(|y| set.contains(&stem.with(y).mask()));
                    if !ok {
                        return Err(Error::ExchangeAxiomViolation {
                            basis1: b1.compact(),
                            basis2: b2.compact(),
                            element: x,
                        });
                    }
                }
            }
        }
        Ok(Matroid {
            n,
            rank,
            bases,
            tables: OnceLock::new(),
            circuits: OnceLock::new(),
            flats: OnceLock::new(),
            canon: OnceLock::new(),
        })
    }

    /// Uniform matroid U_{r,n}.
    pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
        if r > n {
            return Err(Error::InvalidCircuitFamily(format!(
                "uniform rank {r} exceeds ground set size {n}"
            )));
        }
        let bases = crate::subsets::subsets_of_size(n, r).collect();
        Matroid::from_basis_masks(n, bases)
    }

    /// Free matroid: every subset independent.
    pub fn free(n: usize) -> Matroid {
        Matroid::uniform(n, n).expect("free matroid is always valid")
    }

    /// The empty matroid (no elements, one empty basis).
    pub fn empty() -> Matroid {
        Matroid::free(0)
    }

    /// Builds a matroid from a generating family of circuits.
    ///
    /// The family is closed under weak elimination (for circuits C1 ≠ C2
    /// sharing `e`, some circuit lies inside `C1 ∪ C2 - e`; the freest choice
    /// takes that whole set) and the rank is capped at the largest listed
    /// circuit size, matching the usual convention for rank-`r` point
    /// configurations presented by their small circuits. An empty family
    /// yields the free matroid. The derived maximal independent sets must
    /// satisfy the exchange axiom or an error is returned.
    pub fn from_circuits(n: usize, circuits: &[Vec<usize>]) -> Result<Matroid> {
        if n > SUBSET_ENUM_GUARD {
            return Err(Error::GroundSetTooLarge {
                n,
                max: SUBSET_ENUM_GUARD,
            });
        }
        let mut family: Vec<Subset> = Vec::new();
        for c in circuits {
            for &e in c {
                if e < 1 || e > n {
                    return Err(Error::ElementOutOfRange { element: e, n });
                }
            }
            let s = Subset::from_elements(c);
            if s.is_empty() {
                return Err(Error::InvalidCircuitFamily(
                    "the empty set cannot be a circuit".into(),
                ));
            }
            family.push(s);
        }
        minimalize(&mut family);
        let cap = family.iter().map(|c| c.len()).max().unwrap_or(n).min(n);

        // Close under weak elimination, always taking the full union-minus-e.
        loop {
            let mut added = false;
            let snapshot = family.clone();
            for (i, &c1) in snapshot.iter().enumerate() {
                for &c2 in snapshot.iter().skip(i + 1) {
                    let common = c1.intersection(c2);
                    if common.is_empty() {
                        continue;
                    }
                    for e in common.elements() {
                        let d = c1.union(c2).without(e);
                        if d.is_empty() {
                            return Err(Error::InvalidCircuitFamily(
                                "elimination produced the empty set".into(),
                            ));
                        }
                        if !family.iter().any(|c| c.is_subset_of(d)) {
                            family.push(d);
                            added = true;
                        }
                    }
                }
            }
            if !added {
                break;
            }
            minimalize(&mut family);
        }

        // Independent: bounded by the cap and containing no derived circuit.
        let mut best = 0usize;
        let mut maximal: Vec<Subset> = Vec::new();
        for s in all_subsets(n) {
            if s.len() > cap || family.iter().any(|c| c.is_subset_of(s)) {
                continue;
            }
            let extendable = (1..=n).any(|x| {
                !s.contains(x)
                    && s.len() + 1 <= cap
                    && !family.iter().any(|c| c.is_subset_of(s.with(x)))
            });
            if extendable {
                continue;
            }
            best = best.max(s.len());
            maximal.push(s);
        }
        if maximal.iter().any(|s| s.len() != best) {
            return Err(Error::InvalidCircuitFamily(
                "maximal independent sets have unequal sizes".into(),
            ));
        }
        Matroid::from_basis_masks(n, maximal)
            .map_err(|e| Error::InvalidCircuitFamily(e.to_string()))
    }

    // ---- basic queries ----

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    pub fn num_bases(&self) -> usize {
        self.bases.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn is_basis(&self, s: Subset) -> bool {
        self.bases.binary_search(&s).is_ok()
    }

    fn tables(&self) -> &RankTables {
        self.tables.get_or_init(|| {
            let size = 1usize << self.n;
            let mut indep = vec![false; size];
            for b in &self.bases {
                indep[b.mask() as usize] = true;
            }
            for mask in (1..size).rev() {
                if indep[mask] {
                    let mut rest = mask as u32;
                    while rest != 0 {
                        let low = rest & rest.wrapping_neg();
                        indep[(mask as u32 & !low) as usize] = true;
                        rest &= rest - 1;
                    }
                }
            }
            let mut rank = vec![0u8; size];
            for mask in 1..size {
                if indep[mask] {
                    rank[mask] = (mask as u32).count_ones() as u8;
                } else {
                    let mut best = 0u8;
                    let mut rest = mask as u32;
                    while rest != 0 {
                        let low = rest & rest.wrapping_neg();
                        best = best.max(rank[(mask as u32 & !low) as usize]);
                        rest &= rest - 1;
                    }
                    rank[mask] = best;
                }
            }
            RankTables { indep, rank }
        })
    }

    pub fn rank_of(&self, s: Subset) -> usize {
        self.tables().rank[s.mask() as usize] as usize
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.tables().indep[s.mask() as usize]
    }

    pub fn closure(&self, s: Subset) -> Subset {
        let r = self.rank_of(s);
        let mut out = s;
        for x in 1..=self.n {
            if !s.contains(x) && self.rank_of(s.with(x)) == r {
                out = out.with(x);
            }
        }
        out
    }

    pub fn is_flat(&self, s: Subset) -> bool {
        self.closure(s) == s
    }

    /// Minimal dependent sets, in graded lexicographic order.
    pub fn circuits(&self) -> &[Subset] {
        self.circuits.get_or_init(|| {
            let t = self.tables();
            let mut out: Vec<Subset> = Vec::new();
            for s in all_subsets(self.n) {
                if s.is_empty() || t.indep[s.mask() as usize] {
                    continue;
                }
                let minimal = s
                    .elements()
                    .all(|x| t.indep[s.without(x).mask() as usize]);
                if minimal {
                    out.push(s);
                }
            }
            out.sort_by(|a, b| a.glex_cmp(*b));
            out
        })
    }

    pub fn loops(&self) -> Subset {
        let mut covered = Subset::EMPTY;
        for b in &self.bases {
            covered = covered.union(*b);
        }
        covered.complement(self.n)
    }

    pub fn coloops(&self) -> Subset {
        let mut common = self.full_set();
        for b in &self.bases {
            common = common.intersection(*b);
        }
        common
    }

    pub fn is_loopless(&self) -> bool {
        self.loops().is_empty()
    }

    pub fn is_simple(&self) -> bool {
        self.is_loopless() && self.circuits().iter().all(|c| c.len() >= 3)
    }

    /// The lattice of flats with Möbius values computed bottom-up:
    /// `μ(bottom) = 1` and each flat's value makes its lower interval sum
    /// to zero.
    pub fn flat_lattice(&self) -> &FlatLattice {
        self.flats.get_or_init(|| {
            let t = self.tables();
            let mut flats: Vec<(Subset, usize)> = Vec::new();
            for s in all_subsets(self.n) {
                let r = t.rank[s.mask() as usize];
                let closed = (1..=self.n).all(|x| {
                    s.contains(x) || t.rank[s.with(x).mask() as usize] > r
                });
                if closed {
                    flats.push((s, r as usize));
                }
            }
            flats.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.seq_lex_cmp(b.0)));
            let mut mobius: Vec<Int> = Vec::with_capacity(flats.len());
            for i in 0..flats.len() {
                if i == 0 {
                    mobius.push(Int::from(1));
                    continue;
                }
                let mut sum = Int::from(0);
                for j in 0..i {
                    if flats[j].0.is_subset_of(flats[i].0) {
                        sum += &mobius[j];
                    }
                }
                mobius.push(-sum);
            }
            FlatLattice {
                flats: flats
                    .into_iter()
                    .zip(mobius)
                    .map(|((set, rank), mobius)| Flat { set, rank, mobius })
                    .collect(),
            }
        })
    }

    // ---- derived matroids ----

    pub fn dual(&self) -> Matroid {
        let bases = self
            .bases
            .iter()
            .map(|b| b.complement(self.n))
            .collect();
        Matroid::from_basis_masks(self.n, bases).expect("dual of a matroid is a matroid")
    }

    /// Minor `(M \ delete) / contract` on the remaining elements, relabeled
    /// `1..` in increasing original order. Returns the matroid together with
    /// the label map sending each new label (by position, 1-based) to its
    /// original label.
    pub fn minor(&self, delete: Subset, contract: Subset) -> Result<(Matroid, Vec<usize>)> {
        if let Some(e) = delete.intersection(contract).min_element() {
            return Err(Error::MinorSetsOverlap(e));
        }
        let keep = self.full_set().difference(delete).difference(contract);
        let label_map: Vec<usize> = keep.elements().collect();
        let mut new_bit = vec![usize::MAX; self.n + 1];
        for (i, e) in label_map.iter().enumerate() {
            new_bit[*e] = i;
        }
        let rc = self.rank_of(contract);
        let k = self.rank_of(keep.union(contract)) - rc;
        let mut bases = Vec::new();
        // iterate subsets of keep
        let keep_mask = keep.mask();
        let mut sub = keep_mask;
        loop {
            let s = Subset::from_mask(sub);
            if s.len() == k && self.rank_of(s.union(contract)) == rc + k {
                let mut relabeled = 0u32;
                for e in s.elements() {
                    relabeled |= 1 << new_bit[e];
                }
                bases.push(Subset::from_mask(relabeled));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & keep_mask;
        }
        let m = Matroid::from_basis_masks(label_map.len(), bases)
            .expect("a minor of a matroid is a matroid");
        Ok((m, label_map))
    }

    pub fn delete(&self, d: Subset) -> (Matroid, Vec<usize>) {
        self.minor(d, Subset::EMPTY).expect("disjoint by construction")
    }

    pub fn contract(&self, c: Subset) -> (Matroid, Vec<usize>) {
        self.minor(Subset::EMPTY, c).expect("disjoint by construction")
    }

    /// Restriction to `s` (deletes the complement).
    pub fn restriction(&self, s: Subset) -> (Matroid, Vec<usize>) {
        self.delete(s.complement(self.n))
    }

    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let n = self.n + other.n;
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for b1 in &self.bases {
            for b2 in &other.bases {
                bases.push(Subset::from_mask(b1.mask() | (b2.mask() << self.n)));
            }
        }
        Matroid::from_basis_masks(n, bases)
    }

    /// Removes loops and all but the smallest element of each parallel
    /// class. Returns the simplification and the kept original labels.
    pub fn simplify(&self) -> (Matroid, Vec<usize>) {
        let loops = self.loops();
        let mut keep = Subset::EMPTY;
        for x in 1..=self.n {
            if loops.contains(x) {
                continue;
            }
            let class_min = self
                .closure(Subset::singleton(x))
                .difference(loops)
                .min_element()
                .unwrap();
            if class_min == x {
                keep = keep.with(x);
            }
        }
        self.restriction(keep)
    }

    /// Indicator vectors of the bases (vertices of the base polytope),
    /// sorted lexicographically.
    pub fn base_polytope_vertices(&self) -> Vec<Vec<u8>> {
        let mut out: Vec<Vec<u8>> = self
            .bases
            .iter()
            .map(|b| {
                (1..=self.n)
                    .map(|e| u8::from(b.contains(e)))
                    .collect()
            })
            .collect();
        out.sort();
        out
    }

    /// Rebuilds the matroid with permuted labels (`perm[i]` is the new label
    /// of old element `i + 1`).
    pub fn relabel(&self, perm: &[usize]) -> Matroid {
        assert_eq!(perm.len(), self.n);
        let bases = self
            .bases
            .iter()
            .map(|b| {
                let mut mask = 0u32;
                for e in b.elements() {
                    mask |= 1 << (perm[e - 1] - 1);
                }
                Subset::from_mask(mask)
            })
            .collect();
        Matroid::from_basis_masks(self.n, bases).expect("relabeling preserves matroids")
    }

    // ---- keys ----

    /// Byte string equal across isomorphic matroids when `n` is within
    /// [`EXACT_CANONICAL_GUARD`]: the sorted basis family is minimized over
    /// all n! relabelings. Above the guard an isomorphism-invariant
    /// fingerprint (ground size, rank, basis count, flat rank/size profile)
    /// is returned instead; it is *not* canonical and may collide.
    pub fn canonical_key(&self) -> Vec<u8> {
        self.canon
            .get_or_init(|| self.canonical_key_with_guard(EXACT_CANONICAL_GUARD))
            .clone()
    }

    pub fn canonical_key_with_guard(&self, guard: usize) -> Vec<u8> {
        if self.n <= guard {
            let mut best: Option<Vec<u32>> = None;
            let mut scratch: Vec<u32> = vec![0; self.bases.len()];
            for_each_permutation(self.n, |perm| {
                for (i, b) in self.bases.iter().enumerate() {
                    let mut mask = 0u32;
                    for e in b.elements() {
                        mask |= 1 << (perm[e - 1] - 1);
                    }
                    scratch[i] = mask;
                }
                scratch.sort_unstable();
                match &best {
                    Some(cur) if scratch.as_slice() >= cur.as_slice() => {}
                    _ => best = Some(scratch.clone()),
                }
            });
            let mut bytes = vec![b'C', self.n as u8, self.rank as u8];
            for mask in best.unwrap() {
                bytes.extend_from_slice(&mask.to_le_bytes());
            }
            bytes
        } else {
            let mut profile: BTreeMap<(usize, usize), u32> = BTreeMap::new();
            for f in &self.flat_lattice().flats {
                *profile.entry((f.rank, f.set.len())).or_insert(0) += 1;
            }
            let mut bytes = vec![b'H', self.n as u8, self.rank as u8];
            bytes.extend_from_slice(&(self.bases.len() as u32).to_le_bytes());
            for ((r, s), count) in profile {
                bytes.push(r as u8);
                bytes.push(s as u8);
                bytes.extend_from_slice(&count.to_le_bytes());
            }
            bytes
        }
    }

    /// Byte string determined by the labeled structure (no relabeling):
    /// collision-free, suitable for memoization keys.
    pub fn structural_key(&self) -> Vec<u8> {
        let mut bytes = vec![b'S', self.n as u8, self.rank as u8];
        for b in &self.bases {
            bytes.extend_from_slice(&b.mask().to_le_bytes());
        }
        bytes
    }
}

fn minimalize(family: &mut Vec<Subset>) {
    family.sort_by(|a, b| a.glex_cmp(*b));
    family.dedup();
    let snapshot = family.clone();
    family.retain(|s| !snapshot.iter().any(|t| t != s && t.is_subset_of(*s)));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_cycle() -> Matroid {
        Matroid::from_circuits(
            6,
            &[vec![1, 2, 3], vec![1, 5, 6], vec![2, 4, 6], vec![3, 4, 5]],
        )
        .unwrap()
    }

    #[test]
    fn from_bases_accepts_uniform_and_rejects_mixed_sizes() {
        let u13 = Matroid::from_bases(3, &[vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(u13.rank(), 1);
        assert_eq!(u13, Matroid::uniform(1, 3).unwrap());

        let err = Matroid::from_bases(2, &[vec![1], vec![1, 2]]).unwrap_err();
        assert!(matches!(err, Error::UnequalBasisCardinalities(_)));
    }

    #[test]
    fn exchange_violation_reports_a_witness() {
        let err = Matroid::from_bases(4, &[vec![1, 2], vec![3, 4]]).unwrap_err();
        match err {
            Error::ExchangeAxiomViolation { element, .. } => {
                assert!(element == 1 || element == 2 || element == 3 || element == 4)
            }
            other => panic!("expected exchange violation, got {other:?}"),
        }
    }

    #[test]
    fn circuit_presentation_of_k4_yields_sixteen_bases() {
        let k = k4_cycle();
        assert_eq!(k.n(), 6);
        assert_eq!(k.rank(), 3);
        assert_eq!(k.num_bases(), 16);
        // all 3-subsets except the four triangles
        assert!(!k.is_basis(Subset::from_elements(&[1, 2, 3])));
        assert!(k.is_basis(Subset::from_elements(&[1, 2, 4])));
        // the same matroid from explicit bases
        let all3: Vec<Vec<usize>> = crate::subsets::subsets_of_size(6, 3)
            .filter(|s| {
                ![
                    Subset::from_elements(&[1, 2, 3]),
                    Subset::from_elements(&[1, 5, 6]),
                    Subset::from_elements(&[2, 4, 6]),
                    Subset::from_elements(&[3, 4, 5]),
                ]
                .contains(s)
            })
            .map(|s| s.elements().collect())
            .collect();
        assert_eq!(k, Matroid::from_bases(6, &all3).unwrap());
    }

    #[test]
    fn elimination_closure_derives_the_four_element_circuits() {
        let k = k4_cycle();
        let circuits: Vec<Subset> = k.circuits().to_vec();
        let expect: Vec<Subset> = [
            vec![1, 2, 3],
            vec![1, 5, 6],
            vec![2, 4, 6],
            vec![3, 4, 5],
            vec![1, 2, 4, 5],
            vec![1, 3, 4, 6],
            vec![2, 3, 5, 6],
        ]
        .iter()
        .map(|v| Subset::from_elements(v))
        .collect();
        assert_eq!(circuits.len(), 7);
        for c in expect {
            assert!(circuits.contains(&c), "missing circuit {c}");
        }
    }

    #[test]
    fn two_disjoint_triangles_capped_at_rank_three() {
        // rank-3 configuration of two disjoint 3-point lines
        let m = Matroid::from_circuits(6, &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.num_bases(), 18);
        assert!(!m.is_independent(Subset::from_elements(&[1, 2, 4, 5])));
    }

    #[test]
    fn parallel_extension_presented_by_its_two_circuits() {
        // circuits {12}, {134} force 234 dependent by elimination
        let m = Matroid::from_circuits(4, &[vec![1, 2], vec![1, 3, 4]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(!m.is_independent(Subset::from_elements(&[2, 3, 4])));
        assert!(m.is_independent(Subset::from_elements(&[3, 4])));
    }

    #[test]
    fn empty_circuit_family_gives_free_matroid() {
        let m = Matroid::from_circuits(3, &[]).unwrap();
        assert_eq!(m, Matroid::free(3));
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn rank_closure_and_flats_of_k4() {
        let k = k4_cycle();
        assert_eq!(k.rank_of(Subset::from_elements(&[1, 2])), 2);
        assert_eq!(k.rank_of(Subset::from_elements(&[1, 2, 3])), 2);
        assert_eq!(k.rank_of(Subset::from_elements(&[1, 2, 4])), 3);
        assert_eq!(
            k.closure(Subset::from_elements(&[1, 2])),
            Subset::from_elements(&[1, 2, 3])
        );
        assert_eq!(
            k.closure(Subset::from_elements(&[1, 2, 4])),
            Subset::full(6)
        );

        let lattice = k.flat_lattice();
        assert_eq!(lattice.flats.len(), 1 + 6 + 7 + 1);
        let ranks: Vec<usize> = lattice.flats.iter().map(|f| f.rank).collect();
        assert!(ranks.windows(2).all(|w| w[0] <= w[1]));
        // Möbius: bottom 1, points -1, 3-point lines 2, 2-point lines 1, top -6
        assert_eq!(*lattice.mobius_of(Subset::EMPTY).unwrap(), Int::from(1));
        assert_eq!(
            *lattice.mobius_of(Subset::singleton(4)).unwrap(),
            Int::from(-1)
        );
        assert_eq!(
            *lattice
                .mobius_of(Subset::from_elements(&[1, 2, 3]))
                .unwrap(),
            Int::from(2)
        );
        assert_eq!(
            *lattice.mobius_of(Subset::from_elements(&[1, 4])).unwrap(),
            Int::from(1)
        );
        assert_eq!(*lattice.mobius_of(Subset::full(6)).unwrap(), Int::from(-6));
        // each interval below a flat sums to zero
        for f in &lattice.flats {
            if f.set == Subset::EMPTY {
                continue;
            }
            let mut sum = Int::from(0);
            for g in &lattice.flats {
                if g.set.is_subset_of(f.set) {
                    sum += &g.mobius;
                }
            }
            assert_eq!(sum, Int::from(0));
        }
    }

    #[test]
    fn free_matroid_lattice_is_boolean() {
        let m = Matroid::free(1);
        let l = m.flat_lattice();
        assert_eq!(l.flats.len(), 2);
        assert_eq!(l.flats[0].mobius, Int::from(1));
        assert_eq!(l.flats[1].mobius, Int::from(-1));
    }

    #[test]
    fn dual_complements_bases() {
        let k = k4_cycle();
        let d = k.dual();
        assert_eq!(d.rank(), 3);
        assert_eq!(d.num_bases(), 16);
        assert_eq!(d.dual(), k);
        let u = Matroid::uniform(1, 3).unwrap();
        assert_eq!(u.dual(), Matroid::uniform(2, 3).unwrap());
    }

    #[test]
    fn contracting_an_element_of_k4_gives_rank_two() {
        let k = k4_cycle();
        let (c, map) = k.contract(Subset::singleton(1));
        assert_eq!(c.rank(), 2);
        assert_eq!(c.n(), 5);
        assert_eq!(map, vec![2, 3, 4, 5, 6]);
        // contracting edge 1 of K4 merges two vertices; edges 2,3 become
        // parallel (they joined the merged pair to the same vertex)
        assert!(!c.is_independent(Subset::from_elements(&[1, 2])));

        let (d, dmap) = k.delete(Subset::singleton(6));
        assert_eq!(d.rank(), 3);
        assert_eq!(d.n(), 5);
        assert_eq!(dmap, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn contracting_dependent_set_uses_its_rank() {
        let k = k4_cycle();
        let (c, _) = k.contract(Subset::from_elements(&[1, 2, 3]));
        // rank(123) = 2, so the contraction has rank 1
        assert_eq!(c.rank(), 1);
        assert_eq!(c.n(), 3);
    }

    #[test]
    fn minor_rejects_overlap() {
        let k = k4_cycle();
        let err = k
            .minor(Subset::from_elements(&[1, 2]), Subset::from_elements(&[2]))
            .unwrap_err();
        assert_eq!(err, Error::MinorSetsOverlap(2));
    }

    #[test]
    fn direct_sum_multiplies_bases() {
        let a = Matroid::uniform(1, 2).unwrap();
        let b = Matroid::uniform(2, 3).unwrap();
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.n(), 5);
        assert_eq!(s.rank(), 3);
        assert_eq!(s.num_bases(), 2 * 3);
        assert!(s.is_basis(Subset::from_elements(&[1, 3, 4])));
        assert!(!s.is_basis(Subset::from_elements(&[1, 2, 3])));
    }

    #[test]
    fn simplify_keeps_least_representatives() {
        // loop 1, parallel class {2,3}, free element 4
        let m = Matroid::from_bases(4, &[vec![2, 4], vec![3, 4]]).unwrap();
        let (s, kept) = m.simplify();
        assert_eq!(kept, vec![2, 4]);
        assert_eq!(s, Matroid::free(2));
        let k = k4_cycle();
        let (sk, kept_k) = k.simplify();
        assert_eq!(kept_k, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(sk, k);
    }

    #[test]
    fn canonical_key_separates_non_isomorphic_same_size() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        // rank 2 on 4 elements with one parallel pair: bases all pairs but 12
        let near: Vec<Vec<usize>> = vec![
            vec![1, 3],
            vec![1, 4],
            vec![2, 3],
            vec![2, 4],
            vec![3, 4],
        ];
        let m = Matroid::from_bases(4, &near).unwrap();
        assert_ne!(u24.canonical_key(), m.canonical_key());
    }

    #[test]
    fn canonical_key_is_relabeling_invariant() {
        let k = k4_cycle();
        let relabeled = k.relabel(&[4, 2, 6, 1, 3, 5]);
        assert_ne!(k, relabeled);
        assert_eq!(k.canonical_key(), relabeled.canonical_key());
        assert_ne!(k.structural_key(), relabeled.structural_key());
    }

    #[test]
    fn base_polytope_vertices_are_sorted_indicators() {
        let u12 = Matroid::uniform(1, 2).unwrap();
        assert_eq!(u12.base_polytope_vertices(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn loops_and_coloops_detected() {
        let m = Matroid::from_bases(3, &[vec![2], vec![3]]).unwrap();
        assert_eq!(m.loops(), Subset::singleton(1));
        assert!(m.coloops().is_empty());
        let f = Matroid::free(2);
        assert_eq!(f.coloops(), Subset::full(2));
        assert!(f.is_simple());
        assert!(!m.is_simple());
    }
}
