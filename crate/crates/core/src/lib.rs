//! Exact-arithmetic matroid invariants.
//!
//! Matroids enter through bases, circuits, graphs, or rank-sequence
//! presentations and everything downstream is computed exactly over
//! arbitrary-precision integers and rationals: characteristic and Tutte
//! polynomials (by several independent routes that are cross-checked),
//! broken-circuit catalogs and the graded module they span, a full-flag
//! rank-sequence invariant with its specializations, expansions in the
//! basis of freedom matroids, and a split-and-recombine identity for the
//! corank-nullity polynomial. The companion binary exposes the same
//! operations on JSON documents.

pub mod catalog;
pub mod coalgebra;
pub mod doc;
pub mod error;
pub mod exterior;
pub mod ginv;
pub mod graph;
mod linalg;
pub mod matroid;
pub mod nbc;
pub mod os;
pub mod poly;
pub mod subsets;
pub mod tutte;

pub use coalgebra::{TensorSum, TensorTerm};
pub use doc::{Constructor, MatroidDocument};
pub use error::{Error, Result};
pub use exterior::ExteriorElement;
pub use ginv::{FreedomBasis, GInvariant, GMethod, RankSeq, SymbolVector};
pub use graph::GraphInput;
pub use matroid::{Flat, FlatLattice, Matroid};
pub use poly::{BiPoly, Poly, QuadPoly, Scalar, UniPoly};
pub use subsets::Subset;

/// Arbitrary-precision integer used throughout.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational used throughout.
pub type Rat = num_rational::BigRational;

pub type IntUniPoly = UniPoly<Int>;
pub type RatUniPoly = UniPoly<Rat>;
pub type IntBiPoly = BiPoly<Int>;
pub type RatBiPoly = BiPoly<Rat>;
pub type IntQuadPoly = QuadPoly<Int>;
pub type RatQuadPoly = QuadPoly<Rat>;
pub type RatExterior = ExteriorElement<Rat>;
