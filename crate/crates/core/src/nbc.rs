//! Broken circuits and the characteristic polynomial.
//!
//! With elements ordered `1 < 2 < ... < n`, each circuit `C` breaks to
//! `C - min(C)`. A subset containing no broken circuit ("nbc") is
//! automatically independent, and the signed count of nbc sets by size gives
//! the characteristic polynomial. [`char_poly`] computes that route and the
//! Möbius-over-flats route and insists they agree; the raw signed subset
//! expansion is also exported as an independent oracle.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::poly::UniPoly;
use crate::subsets::{all_subsets, Subset};
use crate::{Int, IntUniPoly};

/// A broken circuit together with the element that completes it back to a
/// circuit. When several completions exist the smallest is kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BrokenCircuit {
    pub set: Subset,
    pub tip: usize,
}

/// Broken circuits in graded lexicographic order, one entry per distinct set.
pub fn broken_circuits(m: &Matroid) -> Result<Vec<BrokenCircuit>> {
    if let Some(e) = m.loops().min_element() {
        return Err(Error::LoopPresent(e));
    }
    let mut by_set: BTreeMap<Subset, usize> = BTreeMap::new();
    for c in m.circuits() {
        let tip = c.min_element().expect("circuits are nonempty");
        let set = c.without(tip);
        let entry = by_set.entry(set).or_insert(tip);
        *entry = (*entry).min(tip);
    }
    let mut out: Vec<BrokenCircuit> = by_set
        .into_iter()
        .map(|(set, tip)| BrokenCircuit { set, tip })
        .collect();
    out.sort_by(|a, b| a.set.glex_cmp(b.set));
    Ok(out)
}

/// All nbc sets of a loopless matroid, grouped and counted.
#[derive(Clone, Debug)]
pub struct NbcCatalog {
    pub broken: Vec<BrokenCircuit>,
    /// Every nbc subset, in graded lexicographic order.
    pub sets: Vec<Subset>,
    /// `counts_by_size[k]` is the number of nbc sets of size `k`.
    pub counts_by_size: Vec<usize>,
    /// nbc sets grouped by the flat they span.
    pub by_flat: BTreeMap<Subset, Vec<Subset>>,
}

pub fn nbc_catalog(m: &Matroid) -> Result<NbcCatalog> {
    let broken = broken_circuits(m)?;
    let mut sets = Vec::new();
    let mut counts_by_size = vec![0usize; m.rank() + 1];
    let mut by_flat: BTreeMap<Subset, Vec<Subset>> = BTreeMap::new();
    for s in all_subsets(m.n()) {
        if broken.iter().any(|b| b.set.is_subset_of(s)) {
            continue;
        }
        debug_assert!(m.is_independent(s), "an nbc set must be independent");
        sets.push(s);
        counts_by_size[s.len()] += 1;
        by_flat.entry(m.closure(s)).or_default().push(s);
    }
    sets.sort_by(|a, b| a.glex_cmp(*b));
    for group in by_flat.values_mut() {
        group.sort_by(|a, b| a.glex_cmp(*b));
    }
    Ok(NbcCatalog {
        broken,
        sets,
        counts_by_size,
        by_flat,
    })
}

impl NbcCatalog {
    pub fn is_nbc(&self, s: Subset) -> bool {
        !self.broken.iter().any(|b| b.set.is_subset_of(s))
    }
}

/// Characteristic polynomial in `λ`, computed by the nbc count and by
/// Möbius inversion over the flat lattice; the two must agree. A matroid
/// with loops has the zero polynomial.
pub fn char_poly(m: &Matroid) -> Result<IntUniPoly> {
    if !m.is_loopless() {
        return Ok(UniPoly::zero());
    }
    let via_nbc = char_poly_via_nbc(m)?;
    let via_flats = char_poly_via_flats(m);
    if via_nbc != via_flats {
        return Err(Error::CrossCheckFailed(format!(
            "characteristic polynomial mismatch: nbc route {:?} vs flat route {:?}",
            via_nbc, via_flats
        )));
    }
    Ok(via_nbc)
}

/// `Σ_k (-1)^k (#nbc sets of size k) λ^{r-k}`.
pub fn char_poly_via_nbc(m: &Matroid) -> Result<IntUniPoly> {
    let catalog = nbc_catalog(m)?;
    let r = m.rank();
    let mut p = UniPoly::zero();
    for (k, &count) in catalog.counts_by_size.iter().enumerate() {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        p.add_term([(r - k) as u32], Int::from(sign) * Int::from(count));
    }
    Ok(p)
}

/// `Σ_{flats X} μ(X) λ^{r - r(X)}`, and zero when loops exist (the lattice
/// sum alone would silently compute the simplification instead).
pub fn char_poly_via_flats(m: &Matroid) -> IntUniPoly {
    if !m.is_loopless() {
        return UniPoly::zero();
    }
    let r = m.rank();
    let mut p = UniPoly::zero();
    for f in &m.flat_lattice().flats {
        p.add_term([(r - f.rank) as u32], f.mobius.clone());
    }
    p
}

/// Signed subset expansion `Σ_{A ⊆ E} (-1)^{|A|} λ^{r - r(A)}`. Agrees with
/// the other routes on loopless matroids and vanishes when loops exist;
/// exported as a slow independent oracle.
pub fn char_poly_via_subsets(m: &Matroid) -> IntUniPoly {
    let r = m.rank();
    let mut p = UniPoly::zero();
    for a in all_subsets(m.n()) {
        let sign = if a.len() % 2 == 0 { 1 } else { -1 };
        p.add_term([(r - m.rank_of(a)) as u32], Int::from(sign));
    }
    p
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
    fn broken_circuits_of_k4() {
        let k = k4_cycle();
        let bc = broken_circuits(&k).unwrap();
        let sets: Vec<Subset> = bc.iter().map(|b| b.set).collect();
        let expect: Vec<Subset> = [
            vec![2, 3],
            vec![4, 5],
            vec![4, 6],
            vec![5, 6],
            vec![2, 4, 5],
            vec![3, 4, 6],
            vec![3, 5, 6],
        ]
        .iter()
        .map(|v| Subset::from_elements(v))
        .collect();
        assert_eq!(sets, expect);
        // tips: each triangle breaks at its least edge
        assert_eq!(bc[0].tip, 1); // {2,3} from 123
        assert_eq!(bc[1].tip, 3); // {4,5} from 345
    }

    #[test]
    fn nbc_counts_of_k4_are_falling_factorial_coefficients() {
        let k = k4_cycle();
        let catalog = nbc_catalog(&k).unwrap();
        assert_eq!(catalog.counts_by_size, vec![1, 6, 11, 6]);
        assert_eq!(catalog.sets.len(), 24);
        // every maximal nbc set contains element 1
        for s in catalog.sets.iter().filter(|s| s.len() == 3) {
            assert!(s.contains(1), "nbc basis {s} must contain the least element");
        }
    }

    #[test]
    fn nbc_sets_group_by_flat_with_mobius_counts() {
        let k = k4_cycle();
        let catalog = nbc_catalog(&k).unwrap();
        for f in &k.flat_lattice().flats {
            let count = catalog.by_flat.get(&f.set).map_or(0, |v| v.len());
            let expected = if f.mobius >= Int::from(0) {
                f.mobius.clone()
            } else {
                -f.mobius.clone()
            };
            assert_eq!(Int::from(count), expected, "flat {}", f.set);
        }
    }

    #[test]
    fn char_poly_of_k4_matches_chromatic_factorization() {
        let k = k4_cycle();
        let p = char_poly(&k).unwrap();
        assert_eq!(p.to_text(["λ"]), "λ^3 - 6λ^2 + 11λ - 6");
        assert_eq!(p, char_poly_via_subsets(&k));
    }

    #[test]
    fn char_poly_of_uniforms() {
        // U_{2,3}: λ^2 - 3λ + 2
        let u = Matroid::uniform(2, 3).unwrap();
        assert_eq!(char_poly(&u).unwrap().to_text(["λ"]), "λ^2 - 3λ + 2");
        // boolean matroid: (λ-1)^n
        let f = Matroid::free(3);
        assert_eq!(
            char_poly(&f).unwrap().to_text(["λ"]),
            "λ^3 - 3λ^2 + 3λ - 1"
        );
    }

    #[test]
    fn loops_zero_the_polynomial_and_block_the_catalog() {
        let m = Matroid::from_bases(2, &[vec![2]]).unwrap();
        assert!(char_poly(&m).unwrap().is_zero());
        assert!(char_poly_via_subsets(&m).is_zero());
        assert_eq!(nbc_catalog(&m).unwrap_err(), Error::LoopPresent(1));
    }

    #[test]
    fn parallel_elements_shrink_nbc_but_not_rank() {
        // two parallel pairs {1,2} and {3,4}: χ = (λ-1)^2 after simplification
        let m = Matroid::from_bases(4, &[vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]])
            .unwrap();
        let p = char_poly(&m).unwrap();
        assert_eq!(p.to_text(["λ"]), "λ^2 - 2λ + 1");
        let (s, _) = m.simplify();
        assert_eq!(p, char_poly(&s).unwrap());
    }
}
