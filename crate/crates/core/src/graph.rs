//! Cycle matroids of finite multigraphs.

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subsets::{all_subsets, Subset};

/// A multigraph on vertices `1..=vertices`; edges are listed in order and
/// take matroid labels `1..=edges.len()`. Self-loops and parallel edges are
/// allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphInput {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphInput {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<GraphInput> {
        for &(u, v) in &edges {
            for e in [u, v] {
                if e < 1 || e > vertices {
                    return Err(Error::ElementOutOfRange {
                        element: e,
                        n: vertices,
                    });
                }
            }
        }
        Ok(GraphInput { vertices, edges })
    }

    /// The complete graph on `v` vertices, edges ordered lexicographically.
    pub fn complete(v: usize) -> GraphInput {
        let mut edges = Vec::new();
        for a in 1..=v {
            for b in (a + 1)..=v {
                edges.push((a, b));
            }
        }
        GraphInput { vertices: v, edges }
    }

    /// Number of connected components (isolated vertices count).
    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices);
        for &(u, v) in &self.edges {
            uf.union(u - 1, v - 1);
        }
        uf.count
    }

    /// Induced subgraph on the given vertices, which are relabeled `1..` in
    /// sorted order; only edges with both endpoints kept survive.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<GraphInput> {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != keep.len() {
            return Err(Error::InvalidInput(
                "vertex list repeats a vertex".into(),
            ));
        }
        let mut new_label = vec![0usize; self.vertices + 1];
        for (i, &v) in sorted.iter().enumerate() {
            if v < 1 || v > self.vertices {
                return Err(Error::ElementOutOfRange {
                    element: v,
                    n: self.vertices,
                });
            }
            new_label[v] = i + 1;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| new_label[u] != 0 && new_label[v] != 0)
            .map(|&(u, v)| (new_label[u], new_label[v]))
            .collect();
        Ok(GraphInput {
            vertices: sorted.len(),
            edges,
        })
    }

    /// Cycle matroid: a set of edges is independent iff it is a forest.
    pub fn cycle_matroid(&self) -> Result<Matroid> {
        let n = self.edges.len();
        if n > crate::matroid::SUBSET_ENUM_GUARD {
            return Err(Error::GroundSetTooLarge {
                n,
                max: crate::matroid::SUBSET_ENUM_GUARD,
            });
        }
        let rank = self.vertices - self.components();
        let mut bases = Vec::new();
        for s in all_subsets(n) {
            if s.len() == rank && self.is_forest(s) {
                bases.push(s);
            }
        }
        Matroid::from_basis_masks(n, bases)
    }

    fn is_forest(&self, edge_set: Subset) -> bool {
        let mut uf = UnionFind::new(self.vertices);
        for e in edge_set.elements() {
            let (u, v) = self.edges[e - 1];
            if u == v || !uf.union(u - 1, v - 1) {
                return false;
            }
        }
        true
    }

    /// Counts proper colorings with `k` colors by brute force. Intended as
    /// a test oracle; exponential in the vertex count.
    pub fn count_proper_colorings(&self, k: u64) -> Result<crate::Int> {
        if self.vertices > 12 {
            return Err(Error::GuardExceeded {
                what: "brute-force coloring vertex count",
                limit: 12,
                actual: self.vertices,
            });
        }
        if k == 0 {
            let trivially_one = self.vertices == 0;
            return Ok(crate::Int::from(u8::from(trivially_one)));
        }
        let mut color = vec![0u64; self.vertices];
        let mut count = crate::Int::from(0);
        loop {
            let proper = self
                .edges
                .iter()
                .all(|&(u, v)| u != v && color[u - 1] != color[v - 1]);
            if proper {
                count += 1;
            }
            // odometer increment
            let mut i = 0;
            loop {
                if i == self.vertices {
                    return Ok(count);
                }
                color[i] += 1;
                if color[i] < k {
                    break;
                }
                color[i] = 0;
                i += 1;
            }
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
    count: usize,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            count: n,
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    /// Returns false if `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.count -= 1;
        true
    }
}
