//! Bitmask subsets of a ground set `{1, .., n}` and small enumeration helpers.
//!
//! Element labels are 1-based everywhere in the public API; bit `e - 1` of the
//! mask holds element `e`. Ground sets are capped at 32 elements by the `u32`
//! representation (the enumeration guards elsewhere are far stricter).

use std::cmp::Ordering;
use std::fmt;

/// A subset of `{1, .., n}` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_mask(mask: u32) -> Subset {
        Subset(mask)
    }

    /// Full ground set `{1, .., n}`.
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= 32);
        if n == 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Subset {
        debug_assert!((1..=32).contains(&e));
        Subset(1 << (e - 1))
    }

    pub fn from_elements(elements: &[usize]) -> Subset {
        let mut mask = 0u32;
        for &e in elements {
            debug_assert!((1..=32).contains(&e));
            mask |= 1 << (e - 1);
        }
        Subset(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        e >= 1 && e <= 32 && self.0 & (1 << (e - 1)) != 0
    }

    pub fn with(self, e: usize) -> Subset {
        Subset(self.0 | Subset::singleton(e).0)
    }

    pub fn without(self, e: usize) -> Subset {
        Subset(self.0 & !Subset::singleton(e).0)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint_from(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut mask = self.0;
        std::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let bit = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                Some(bit + 1)
            }
        })
    }

    pub fn min_element(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    /// Lexicographic order on the ascending element sequences, with a proper
    /// prefix sorting before its extensions ({1} < {1,2} < {1,3} < {2}).
    pub fn seq_lex_cmp(self, other: Subset) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let diff = self.0 ^ other.0;
        let low = diff & diff.wrapping_neg();
        // The set holding the lowest differing element has the smaller element
        // at that slot, hence sorts first; if one runs out it is a prefix.
        if self.0 & low != 0 {
            if other.0 >> low.trailing_zeros() == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if self.0 >> low.trailing_zeros() == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Graded lexicographic order: by cardinality, then by `seq_lex_cmp`.
    pub fn glex_cmp(self, other: Subset) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.seq_lex_cmp(other))
    }

    /// Compact form used in displays: `124` while all labels are single
    /// digits, `{1,10,12}` otherwise.
    pub fn compact(self) -> String {
        if self.is_empty() {
            return "{}".to_string();
        }
        if self.0 >> 9 == 0 {
            self.elements().map(|e| e.to_string()).collect()
        } else {
            format!("{self}")
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All subsets of `{1, .., n}` in ascending mask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    debug_assert!(n < 32);
    (0u32..(1u32 << n)).map(Subset)
}

/// All `k`-element subsets of `{1, .., n}` in ascending mask order, by
/// Gosper's hack.
pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = Subset> {
    debug_assert!(n < 32 && k <= n);
    let limit = 1u32 << n;
    let mut cur = if k == 0 { None } else { Some((1u32 << k) - 1) };
    let mut empty_emitted = false;
    std::iter::from_fn(move || {
        if k == 0 {
            if empty_emitted {
                return None;
            }
            empty_emitted = true;
            return Some(Subset(0));
        }
        let c = cur?;
        if c >= limit {
            return None;
        }
        let low = c & c.wrapping_neg();
        let ripple = c + low;
        let next = ripple | (((c ^ ripple) >> 2) / low);
        cur = Some(next);
        Some(Subset(c))
    })
}

/// Calls `f` on every permutation of `[1, .., n]` (Heap's algorithm; the
/// visiting order is unspecified but deterministic).
pub fn for_each_permutation<F: FnMut(&[usize])>(n: usize, mut f: F) {
    let mut items: Vec<usize> = (1..=n).collect();
    if n == 0 {
        f(&items);
        return;
    }
    let mut c = vec![0usize; n];
    f(&items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(&items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}
