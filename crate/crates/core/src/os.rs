//! The graded algebra obtained from the exterior algebra on the ground set
//! by killing boundaries of circuit monomials.
//!
//! Monomials indexed by nbc sets form a basis of the quotient; [`reduce`]
//! rewrites any element onto that basis. Graded dimensions are therefore nbc
//! counts, and they are cross-checked against Möbius values of the flat
//! lattice every time they are computed.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::One;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::nbc::{char_poly, nbc_catalog, NbcCatalog};
use crate::poly::UniPoly;
use crate::subsets::Subset;
use crate::{Int, IntUniPoly, Rat, RatExterior};

/// Rewriting context for one simple matroid: its nbc catalog plus a
/// write-once cache of monomial normal forms. Concurrent use is safe; racing
/// threads may duplicate a computation but always cache the same value.
pub struct OsContext {
    matroid: Matroid,
    catalog: NbcCatalog,
    cache: Mutex<HashMap<u32, RatExterior>>,
}

impl std::fmt::Debug for OsContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "OsContext({:?}, {} nbc sets)",
            self.matroid,
            self.catalog.sets.len()
        )
    }
}

impl OsContext {
    /// Fails on non-simple input: loops kill the algebra and parallel
    /// elements make the nbc monomials fail to span. Simplify first.
    pub fn new(m: &Matroid) -> Result<OsContext> {
        if !m.is_simple() {
            let reason = if m.is_loopless() {
                "matroid has parallel elements"
            } else {
                "matroid has loops"
            };
            return Err(Error::NotSimple(reason.into()));
        }
        let catalog = nbc_catalog(m)?;
        Ok(OsContext {
            matroid: m.clone(),
            catalog,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn catalog(&self) -> &NbcCatalog {
        &self.catalog
    }

    /// Normal form modulo the ideal: the unique representative supported on
    /// nbc monomials. Linear in the input; per-monomial results are cached.
    pub fn reduce(&self, a: &RatExterior) -> RatExterior {
        let mut out = RatExterior::zero();
        for (s, c) in a.terms() {
            out = out.add(&self.reduce_monomial(s).scale(c));
        }
        out
    }

    /// Normal form of the single monomial `e_s`.
    pub fn reduce_monomial(&self, s: Subset) -> RatExterior {
        if let Some(hit) = self.cache.lock().unwrap().get(&s.mask()) {
            return hit.clone();
        }
        let value = if !self.matroid.is_independent(s) {
            RatExterior::zero()
        } else if self.catalog.is_nbc(s) {
            RatExterior::monomial(s, Rat::one())
        } else {
            // Glex-least broken circuit inside s, with its completing tip m.
            let bc = self
                .catalog
                .broken
                .iter()
                .find(|b| b.set.is_subset_of(s))
                .expect("a non-nbc independent set contains a broken circuit");
            let m = bc.tip;
            debug_assert!(!s.contains(m), "s u tip would be dependent");
            // In the quotient the boundary of e_{s u m} vanishes, which
            // solves for e_s in terms of glex-smaller or dependent
            // monomials: e_s = sum_{t != p} (-1)^{t-p+1} e_{(s u m) - j_t},
            // p the position of m in the sorted union.
            let j = s.with(m);
            let elems: Vec<usize> = j.elements().collect();
            let p = elems.iter().position(|&x| x == m).unwrap();
            let mut out = RatExterior::zero();
            for (t, &jt) in elems.iter().enumerate() {
                if t == p {
                    continue;
                }
                let reduced = self.reduce_monomial(j.without(jt));
                let sign = if (t as i64 - p as i64) % 2 != 0 {
                    Rat::one()
                } else {
                    -Rat::one()
                };
                out = out.add(&reduced.scale(&sign));
            }
            out
        };
        self.cache
            .lock()
            .unwrap()
            .entry(s.mask())
            .or_insert(value)
            .clone()
    }
}

/// Graded dimensions of the quotient: per spanned flat and per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OsDimensions {
    /// One entry per flat, in lattice order (rank, then element sequence).
    pub by_flat: Vec<(Subset, usize)>,
    /// `by_degree[k]` is the dimension in degree `k`.
    pub by_degree: Vec<usize>,
}

/// Counts nbc sets per spanned flat and per size, then cross-checks every
/// flat count against `(-1)^{rank} μ(flat)` before returning.
pub fn os_dimensions(ctx: &OsContext) -> Result<OsDimensions> {
    let m = ctx.matroid();
    let mut by_flat = Vec::new();
    let mut by_degree = vec![0usize; m.rank() + 1];
    for f in &m.flat_lattice().flats {
        let count = ctx.catalog().by_flat.get(&f.set).map_or(0, |v| v.len());
        let signed_mobius = if f.rank % 2 == 0 {
            f.mobius.clone()
        } else {
            -f.mobius.clone()
        };
        if Int::from(count) != signed_mobius {
            return Err(Error::CrossCheckFailed(format!(
                "flat {} has {} nbc sets but signed Möbius value {}",
                f.set, count, signed_mobius
            )));
        }
        by_flat.push((f.set, count));
        by_degree[f.rank] += count;
    }
    debug_assert_eq!(by_degree, ctx.catalog().counts_by_size);
    Ok(OsDimensions { by_flat, by_degree })
}

/// `Σ_k (dim in degree k) t^k`, cross-checked against the characteristic
/// polynomial transform before returning.
pub fn hilbert_series(ctx: &OsContext) -> Result<IntUniPoly> {
    let dims = os_dimensions(ctx)?;
    let mut h = UniPoly::zero();
    for (k, &d) in dims.by_degree.iter().enumerate() {
        h.add_term([k as u32], Int::from(d));
    }
    let chi = char_poly(ctx.matroid())?;
    let transformed = hilbert_from_char(&chi, ctx.matroid().rank());
    if h != transformed {
        return Err(Error::CrossCheckFailed(format!(
            "Hilbert series {:?} differs from transformed characteristic polynomial {:?}",
            h, transformed
        )));
    }
    Ok(h)
}

/// The substitution `(-t)^r χ(-1/t)` expanded exactly: the coefficient of
/// `λ^j` in `χ` contributes `(-1)^{r+j}` times itself at `t^{r-j}`.
pub fn hilbert_from_char(chi: &IntUniPoly, r: usize) -> IntUniPoly {
    let mut h = UniPoly::zero();
    for (exp, c) in chi.terms() {
        let j = exp[0] as usize;
        let coeff = if (r + j) % 2 == 0 {
            c.clone()
        } else {
            -c.clone()
        };
        h.add_term([(r - j) as u32], coeff);
    }
    h
}

/// What checking a degree-1-induced map certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Degree1MapReport {
    /// Images of boundaries of all source circuits reduce to zero.
    pub ideal_preserved: bool,
    /// The degree-1 matrix is invertible, so the induced map is surjective.
    pub degree1_invertible: bool,
    /// Source and target Hilbert series agree.
    pub hilbert_match: bool,
}

impl Degree1MapReport {
    /// Surjective graded map plus equal dimensions pins an isomorphism.
    pub fn certifies_isomorphism(&self) -> bool {
        self.ideal_preserved && self.degree1_invertible && self.hilbert_match
    }
}

/// Extends `images` (one degree-1 element per source generator)
/// multiplicatively and reports whether the map descends to the quotients
/// and whether it certifies an isomorphism.
pub fn verify_degree1_map(
    src: &OsContext,
    dst: &OsContext,
    images: &BTreeMap<usize, RatExterior>,
) -> Result<Degree1MapReport> {
    let n_src = src.matroid().n();
    let n_dst = dst.matroid().n();
    for e in 1..=n_src {
        let image = images.get(&e).ok_or(Error::MissingImage(e))?;
        for (s, _) in image.terms() {
            if s.len() != 1 {
                return Err(Error::ImageNotDegreeOne(e));
            }
            let x = s.min_element().unwrap();
            if x > n_dst {
                return Err(Error::ElementOutOfRange { element: x, n: n_dst });
            }
        }
    }

    let map_monomial = |s: Subset| -> RatExterior {
        let mut acc = RatExterior::monomial(Subset::EMPTY, Rat::one());
        for e in s.elements() {
            acc = acc.wedge(&images[&e]);
        }
        acc
    };
    let map_element = |a: &RatExterior| -> RatExterior {
        let mut out = RatExterior::zero();
        for (s, c) in a.terms() {
            out = out.add(&map_monomial(s).scale(c));
        }
        out
    };

    let mut ideal_preserved = true;
    for c in src.matroid().circuits() {
        let generator = RatExterior::monomial(*c, Rat::one()).boundary();
        if !dst.reduce(&map_element(&generator)).is_zero() {
            ideal_preserved = false;
            break;
        }
    }

    let degree1_invertible = n_src == n_dst && {
        let rows: Vec<Vec<Rat>> = (1..=n_src)
            .map(|e| {
                (1..=n_dst)
                    .map(|x| images[&e].coeff(Subset::singleton(x)))
                    .collect()
            })
            .collect();
        crate::linalg::rank(rows) == n_src
    };

    let hilbert_match = hilbert_series(src)? == hilbert_series(dst)?;

    Ok(Degree1MapReport {
        ideal_preserved,
        degree1_invertible,
        hilbert_match,
    })
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

    fn six_point_pair() -> (Matroid, Matroid) {
        let m1 = Matroid::from_circuits(6, &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        let m2 = Matroid::from_circuits(6, &[vec![1, 2, 3], vec![3, 4, 5]]).unwrap();
        (m1, m2)
    }

    fn one() -> Rat {
        Rat::one()
    }

    #[test]
    fn rewriting_the_smallest_broken_circuit_of_k4() {
        let ctx = OsContext::new(&k4_cycle()).unwrap();
        let w23 = ctx.reduce_monomial(Subset::from_elements(&[2, 3]));
        assert_eq!(w23.to_text(), "e13 - e12");
        // dependent monomials die
        assert!(ctx
            .reduce_monomial(Subset::from_elements(&[1, 2, 3]))
            .is_zero());
        // nbc monomials are fixed points
        for s in &ctx.catalog().sets.clone() {
            assert_eq!(ctx.reduce_monomial(*s), RatExterior::monomial(*s, one()));
        }
    }

    #[test]
    fn circuit_boundaries_reduce_to_zero() {
        let m = k4_cycle();
        let ctx = OsContext::new(&m).unwrap();
        for c in m.circuits() {
            let gen = RatExterior::monomial(*c, one()).boundary();
            assert!(ctx.reduce(&gen).is_zero(), "circuit {c}");
        }
        // and boundaries of dependent sets too
        let dep = RatExterior::monomial(Subset::from_elements(&[1, 2, 3, 4]), one());
        assert!(ctx.reduce(&dep.boundary()).is_zero());
    }

    #[test]
    fn normal_form_lives_on_a_single_flat() {
        let m = k4_cycle();
        let ctx = OsContext::new(&m).unwrap();
        for s in crate::subsets::all_subsets(6).filter(|s| m.is_independent(*s)) {
            let nf = ctx.reduce_monomial(s);
            assert!(!nf.is_zero(), "independent monomials survive");
            let flat = m.closure(s);
            for (t, _) in nf.terms() {
                assert_eq!(m.closure(t), flat);
                assert_eq!(t.len(), s.len());
            }
        }
    }

    #[test]
    fn dimensions_of_k4_by_flat_and_degree() {
        let m = k4_cycle();
        let ctx = OsContext::new(&m).unwrap();
        let dims = os_dimensions(&ctx).unwrap();
        assert_eq!(dims.by_degree, vec![1, 6, 11, 6]);
        let lookup: BTreeMap<Subset, usize> = dims.by_flat.iter().copied().collect();
        assert_eq!(lookup[&Subset::from_elements(&[1, 2, 3])], 2);
        assert_eq!(lookup[&Subset::full(6)], 6);
        assert_eq!(lookup[&Subset::EMPTY], 1);
        assert_eq!(lookup[&Subset::from_elements(&[1, 4])], 1);
    }

    #[test]
    fn hilbert_series_matches_char_poly_transform() {
        let ctx = OsContext::new(&k4_cycle()).unwrap();
        assert_eq!(
            hilbert_series(&ctx).unwrap().to_text(["t"]),
            "6t^3 + 11t^2 + 6t + 1"
        );
        let u11 = Matroid::uniform(1, 1).unwrap();
        let ctx1 = OsContext::new(&u11).unwrap();
        assert_eq!(hilbert_series(&ctx1).unwrap().to_text(["t"]), "t + 1");
    }

    #[test]
    fn six_point_matroids_share_char_poly_and_hilbert() {
        let (m1, m2) = six_point_pair();
        let chi1 = char_poly(&m1).unwrap();
        let chi2 = char_poly(&m2).unwrap();
        assert_eq!(chi1.to_text(["λ"]), "λ^3 - 6λ^2 + 13λ - 8");
        assert_eq!(chi1, chi2);
        let h1 = hilbert_series(&OsContext::new(&m1).unwrap()).unwrap();
        let h2 = hilbert_series(&OsContext::new(&m2).unwrap()).unwrap();
        assert_eq!(h1, h2);
        assert_eq!(h1.to_text(["t"]), "8t^3 + 13t^2 + 6t + 1");
    }

    #[test]
    fn explicit_map_between_six_point_algebras_checks_out() {
        let (m1, m2) = six_point_pair();
        let src = OsContext::new(&m1).unwrap();
        let dst = OsContext::new(&m2).unwrap();
        let mut images: BTreeMap<usize, RatExterior> = BTreeMap::new();
        for e in [1usize, 2, 3, 6] {
            images.insert(e, RatExterior::generator(e));
        }
        // e4 -> e3 - e5 + e6, e5 -> e4 - e5 + e6
        let mut img4 = RatExterior::generator(3);
        img4 = img4.sub(&RatExterior::generator(5));
        img4 = img4.add(&RatExterior::generator(6));
        images.insert(4, img4);
        let mut img5 = RatExterior::generator(4);
        img5 = img5.sub(&RatExterior::generator(5));
        img5 = img5.add(&RatExterior::generator(6));
        images.insert(5, img5);

        let report = verify_degree1_map(&src, &dst, &images).unwrap();
        assert!(report.ideal_preserved);
        assert!(report.degree1_invertible);
        assert!(report.hilbert_match);
        assert!(report.certifies_isomorphism());
    }

    #[test]
    fn identity_labels_do_not_map_the_first_ideal_into_the_second() {
        let (m1, m2) = six_point_pair();
        let src = OsContext::new(&m1).unwrap();
        let dst = OsContext::new(&m2).unwrap();
        let images: BTreeMap<usize, RatExterior> = (1..=6)
            .map(|e| (e, RatExterior::generator(e)))
            .collect();
        let report = verify_degree1_map(&src, &dst, &images).unwrap();
        assert!(!report.ideal_preserved);
        assert!(report.hilbert_match);
        assert!(!report.certifies_isomorphism());
    }

    #[test]
    fn identity_map_on_k4_is_an_isomorphism() {
        let m = k4_cycle();
        let src = OsContext::new(&m).unwrap();
        let dst = OsContext::new(&m).unwrap();
        let images: BTreeMap<usize, RatExterior> = (1..=6)
            .map(|e| (e, RatExterior::generator(e)))
            .collect();
        let report = verify_degree1_map(&src, &dst, &images).unwrap();
        assert!(report.certifies_isomorphism());
    }

    #[test]
    fn degree_one_validation_errors() {
        let m = k4_cycle();
        let src = OsContext::new(&m).unwrap();
        let dst = OsContext::new(&m).unwrap();
        let mut images: BTreeMap<usize, RatExterior> = (1..=5)
            .map(|e| (e, RatExterior::generator(e)))
            .collect();
        assert_eq!(
            verify_degree1_map(&src, &dst, &images).unwrap_err(),
            Error::MissingImage(6)
        );
        images.insert(
            6,
            RatExterior::monomial(Subset::from_elements(&[1, 2]), one()),
        );
        assert_eq!(
            verify_degree1_map(&src, &dst, &images).unwrap_err(),
            Error::ImageNotDegreeOne(6)
        );
    }

    #[test]
    fn non_simple_input_is_rejected() {
        let loopy = Matroid::from_bases(2, &[vec![2]]).unwrap();
        assert!(matches!(
            OsContext::new(&loopy).unwrap_err(),
            Error::NotSimple(_)
        ));
        let parallel = Matroid::from_bases(2, &[vec![1], vec![2]]).unwrap();
        assert!(matches!(
            OsContext::new(&parallel).unwrap_err(),
            Error::NotSimple(_)
        ));
    }

    #[test]
    fn reduce_is_idempotent_linear_and_multiplicative() {
        let m = k4_cycle();
        let ctx = OsContext::new(&m).unwrap();
        let a = RatExterior::monomial(Subset::from_elements(&[2, 3]), one());
        let b = RatExterior::monomial(Subset::from_elements(&[4, 6]), one());
        let ra = ctx.reduce(&a);
        assert_eq!(ctx.reduce(&ra), ra);
        let sum = ctx.reduce(&a.add(&b));
        assert_eq!(sum, ra.add(&ctx.reduce(&b)));
        // reduce(a ∧ b) = reduce(reduce(a) ∧ reduce(b))
        let prod = ctx.reduce(&a.wedge(&b));
        let prod2 = ctx.reduce(&ra.wedge(&ctx.reduce(&b)));
        assert_eq!(prod, prod2);
    }
}
