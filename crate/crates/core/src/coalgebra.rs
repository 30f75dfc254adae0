//! Restriction-contraction comultiplication and the convolution identities
//! it induces for corank-nullity and chromatic polynomials.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::GraphInput;
use crate::matroid::{Matroid, EXACT_CANONICAL_GUARD};
use crate::poly::scalar_pow;
use crate::subsets::all_subsets;
use crate::tutte::{chromatic_poly, corank_nullity};
use crate::{Int, IntBiPoly, IntQuadPoly, IntUniPoly, Rat, RatBiPoly};

/// Largest ground set expanded symbolically in four variables.
pub const SYMBOLIC_CONVOLUTION_GUARD: usize = 6;

/// Largest vertex count for the symbolic chromatic convolution.
pub const CHROMATIC_SYMBOLIC_GUARD: usize = 6;

/// Largest vertex count for the sampled chromatic convolution; the identity
/// sums one chromatic polynomial per vertex subset.
pub const CHROMATIC_NUMERIC_GUARD: usize = 12;

/// One summand of the comultiplication: a restriction tensor a contraction,
/// with a multiplicity counting how many subsets produced the pair.
#[derive(Clone, Debug)]
pub struct TensorTerm {
    pub left: Matroid,
    pub right: Matroid,
    pub multiplicity: Int,
}

/// Sum of restriction-contraction pairs over all ground-set subsets.
///
/// Within the exact-canonicalization guard the terms are grouped by the
/// isomorphism classes of the pair; beyond it every subset keeps its own
/// term.
#[derive(Clone, Debug)]
pub struct TensorSum {
    pub grouped: bool,
    pub terms: Vec<TensorTerm>,
}

impl TensorSum {
    /// Total multiplicity; `2^n` for the comultiplication of an `n`-element
    /// matroid.
    pub fn total_multiplicity(&self) -> Int {
        self.terms.iter().map(|t| &t.multiplicity).sum()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// One line per term, e.g. `"6 x {n=1 r=1} (x) {n=5 r=2}"`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.terms {
            out.push_str(&format!(
                "{} x {{n={} r={}}} (x) {{n={} r={}}}\n",
                t.multiplicity,
                t.left.n(),
                t.left.rank(),
                t.right.n(),
                t.right.rank()
            ));
        }
        out
    }
}

/// Comultiplication: the sum over all subsets `A` of `(M|A) tensor (M/A)`.
pub fn comultiply(m: &Matroid) -> TensorSum {
    let n = m.n();
    if n <= EXACT_CANONICAL_GUARD {
        let mut map: BTreeMap<(Vec<u8>, Vec<u8>), TensorTerm> = BTreeMap::new();
        for a in all_subsets(n) {
            let (left, _) = m.restriction(a);
            let (right, _) = m.contract(a);
            let key = (left.canonical_key(), right.canonical_key());
            map.entry(key)
                .and_modify(|t| t.multiplicity += 1)
                .or_insert(TensorTerm {
                    left,
                    right,
                    multiplicity: Int::one(),
                });
        }
        TensorSum {
            grouped: true,
            terms: map.into_values().collect(),
        }
    } else {
        let terms = all_subsets(n)
            .map(|a| TensorTerm {
                left: m.restriction(a).0,
                right: m.contract(a).0,
                multiplicity: Int::one(),
            })
            .collect();
        TensorSum {
            grouped: false,
            terms,
        }
    }
}

/// The corank-nullity data of every minor pair `(M|A, M/A)`, precomputed so
/// sampled verification reuses it across points.
struct ConvolutionTable {
    whole: RatBiPoly,
    parts: Vec<(usize, usize, RatBiPoly, RatBiPoly)>,
}

fn to_rat(p: &IntBiPoly) -> RatBiPoly {
    p.map_coeffs(|c| Rat::from(c.clone()))
}

fn convolution_table(m: &Matroid) -> ConvolutionTable {
    let rank = m.rank();
    let parts = all_subsets(m.n())
        .map(|a| {
            let (left, _) = m.restriction(a);
            let (right, _) = m.contract(a);
            (
                rank - m.rank_of(a),
                a.len() - m.rank_of(a),
                to_rat(&corank_nullity(&left)),
                to_rat(&corank_nullity(&right)),
            )
        })
        .collect();
    ConvolutionTable {
        whole: to_rat(&corank_nullity(m)),
        parts,
    }
}

/// Checks, at each sample point `(x, y, l, s)`, the convolution identity
///
/// `R(M; x*y, l*s) = sum over A of
///    x^(r - r(A)) (-s)^(|A| - r(A)) R(M|A; -x, -l) R(M/A; y, s)`.
pub fn verify_r_convolution(m: &Matroid, samples: &[[Rat; 4]]) -> bool {
    let table = convolution_table(m);
    samples.iter().all(|[x, y, l, s]| {
        let lhs = table.whole.eval_at(&(x * y), &(l * s));
        let mut rhs = Rat::from(Int::zero());
        for (corank, nullity, left, right) in &table.parts {
            rhs += scalar_pow(x, *corank)
                * scalar_pow(&-s.clone(), *nullity)
                * left.eval_at(&-x.clone(), &-l.clone())
                * right.eval_at(y, s);
        }
        lhs == rhs
    })
}

/// Expands both sides of the convolution identity as polynomials in the four
/// variables and compares them coefficient by coefficient.
pub fn verify_r_convolution_symbolic(m: &Matroid) -> Result<bool> {
    let n = m.n();
    if n > SYMBOLIC_CONVOLUTION_GUARD {
        return Err(Error::GuardExceeded {
            what: "symbolic convolution expansion",
            limit: SYMBOLIC_CONVOLUTION_GUARD,
            actual: n,
        });
    }
    let x = IntQuadPoly::var(0);
    let y = IntQuadPoly::var(1);
    let l = IntQuadPoly::var(2);
    let s = IntQuadPoly::var(3);
    let lhs = corank_nullity(m).compose(&[x.mul(&y), l.mul(&s)]);
    let mut rhs = IntQuadPoly::zero();
    let rank = m.rank();
    for a in all_subsets(n) {
        let (left, _) = m.restriction(a);
        let (right, _) = m.contract(a);
        let corank = (rank - m.rank_of(a)) as u32;
        let nullity = (a.len() - m.rank_of(a)) as u32;
        let sign = if nullity % 2 == 0 {
            Int::one()
        } else {
            -Int::one()
        };
        let prefactor = IntQuadPoly::monomial([corank, 0, 0, nullity], sign);
        let term = prefactor
            .mul(&corank_nullity(&left).compose(&[x.neg(), l.neg()]))
            .mul(&corank_nullity(&right).compose(&[y.clone(), s.clone()]));
        rhs = rhs.add(&term);
    }
    Ok(lhs == rhs)
}

fn chromatics_by_vertex_subset(g: &GraphInput) -> Result<Vec<IntUniPoly>> {
    let v = g.vertices;
    let mut polys = Vec::with_capacity(1 << v);
    for mask in 0..(1u32 << v) {
        let keep: Vec<usize> = (1..=v).filter(|i| (mask >> (i - 1)) & 1 == 1).collect();
        polys.push(chromatic_poly(&g.induced_subgraph(&keep)?)?);
    }
    Ok(polys)
}

/// Checks, at each sample `(x, y)`, the coloring convolution
/// `P(G; x + y) = sum over vertex subsets U of P(G[U]; x) P(G[V - U]; y)`.
pub fn verify_chromatic_convolution(g: &GraphInput, samples: &[(Rat, Rat)]) -> Result<bool> {
    let v = g.vertices;
    if v > CHROMATIC_NUMERIC_GUARD {
        return Err(Error::GuardExceeded {
            what: "vertex-subset convolution",
            limit: CHROMATIC_NUMERIC_GUARD,
            actual: v,
        });
    }
    let polys = chromatics_by_vertex_subset(g)?;
    let whole = chromatic_poly(g)?.map_coeffs(|c| Rat::from(c.clone()));
    let rat_polys: Vec<_> = polys
        .iter()
        .map(|p| p.map_coeffs(|c| Rat::from(c.clone())))
        .collect();
    let full = (1u32 << v) - 1;
    Ok(samples.iter().all(|(x, y)| {
        let lhs = whole.eval_at(&(x + y));
        let mut rhs = Rat::from(Int::zero());
        for mask in 0..=full {
            rhs += rat_polys[mask as usize].eval_at(x)
                * rat_polys[(full ^ mask) as usize].eval_at(y);
        }
        lhs == rhs
    }))
}

/// Expands the coloring convolution in two variables and compares.
pub fn verify_chromatic_convolution_symbolic(g: &GraphInput) -> Result<bool> {
    let v = g.vertices;
    if v > CHROMATIC_SYMBOLIC_GUARD {
        return Err(Error::GuardExceeded {
            what: "symbolic vertex-subset convolution",
            limit: CHROMATIC_SYMBOLIC_GUARD,
            actual: v,
        });
    }
    let polys = chromatics_by_vertex_subset(g)?;
    let x = IntBiPoly::var(0);
    let y = IntBiPoly::var(1);
    let lhs = chromatic_poly(g)?.compose(&[x.add(&y)]);
    let mut rhs = IntBiPoly::zero();
    let full = (1u32 << v) - 1;
    for mask in 0..=full {
        rhs = rhs.add(
            &polys[mask as usize]
                .compose(&[x.clone()])
                .mul(&polys[(full ^ mask) as usize].compose(&[y.clone()])),
        );
    }
    Ok(lhs == rhs)
}

/// SplitMix64 (the standard constants from Steele, Lea and Flood), kept
/// local so sample points stay reproducible without an RNG dependency.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// `count` tuples of `arity` rationals with numerators in `-9..=9` and
/// denominators in `1..=9`, reproducible from the seed.
pub fn rational_samples(seed: u64, count: usize, arity: usize) -> Vec<Vec<Rat>> {
    let mut gen = SplitMix64(seed);
    (0..count)
        .map(|_| {
            (0..arity)
                .map(|_| {
                    let numer = (gen.next() % 19) as i64 - 9;
                    let denom = (gen.next() % 9) as i64 + 1;
                    Rat::new(Int::from(numer), Int::from(denom))
                })
                .collect()
        })
        .collect()
}

/// The 4-tuples used by the sampled corank-nullity verification.
pub fn convolution_samples(seed: u64, count: usize) -> Vec<[Rat; 4]> {
    rational_samples(seed, count, 4)
        .into_iter()
        .map(|v| {
            let mut it = v.into_iter();
            [
                it.next().unwrap(),
                it.next().unwrap(),
                it.next().unwrap(),
                it.next().unwrap(),
            ]
        })
        .collect()
}

/// The pairs used by the sampled chromatic verification.
pub fn chromatic_samples(seed: u64, count: usize) -> Vec<(Rat, Rat)> {
    rational_samples(seed, count, 2)
        .into_iter()
        .map(|v| {
            let mut it = v.into_iter();
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect()
}
