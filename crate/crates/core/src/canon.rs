//! Canonical labelling via partition refinement and backtracking.
//!
//! The canonical form of a graph is the lexicographically smallest adjacency
//! encoding over all vertex relabellings, computed with the usual
//! individualisation-refinement search rather than brute force:
//!
//! 1. refine the vertex partition to equitability (every vertex in a cell has
//!    the same number of neighbours in every cell),
//! 2. if the partition is discrete, read off a candidate labelling,
//! 3. otherwise branch on the vertices of the first smallest cell.
//!
//! Two prunings keep highly symmetric inputs (complete graphs, stars,
//! complete multipartite graphs) from exploding factorially: discovered
//! automorphisms collapse branch candidates into orbits, and a node whose
//! cells are pairwise homogeneous (every cross-cell bipartite block complete
//! or empty, every cell internally complete or empty) is closed immediately
//! because every completion below it yields the same encoding.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;
use crate::graph6::{emit_graph6, parse_graph6};

/// A canonical form: the graph6 encoding of the canonically relabelled graph.
///
/// Two graphs are isomorphic iff their canonical forms are byte-equal, so
/// this doubles as a dictionary key for "up to isomorphism" collections.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    /// The canonical graph6 bytes.
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Reconstructs the canonical representative graph.
    pub fn to_graph(&self) -> Graph {
        parse_graph6(&self.0).expect("canonical form stores valid graph6")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.0)
    }
}

/// Canonical form of `g`.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    CanonicalForm(emit_graph6(&canonical_graph(g)))
}

/// The canonically relabelled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    g.relabel(&canonical_labeling(g))
}

/// A permutation `perm` (old label -> new label) such that `g.relabel(&perm)`
/// has the lexicographically smallest adjacency rows among all relabellings.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let mut search = Search {
        g,
        n: g.order(),
        best_key: None,
        best_perm: Vec::new(),
        autos: Vec::new(),
    };
    let mut cells = alloc::vec![crate::graph::full_mask(g.order())];
    refine(g, &mut cells);
    let mut prefix = Vec::new();
    search.descend(&cells, &mut prefix);
    search.best_perm
}

/// True iff the two graphs are isomorphic (equal orders, equal canonical
/// forms).
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.size() == b.size() && canonical_form(a) == canonical_form(b)
}

// ============================================================================
// Refinement
// ============================================================================

/// Splits cells until the partition is equitable.  Cells are bitmasks and the
/// cell order is significant: subcells are ordered by ascending neighbour
/// count, which keeps the whole procedure permutation-covariant.
fn refine(g: &Graph, cells: &mut Vec<u64>) {
    'restart: loop {
        for s in 0..cells.len() {
            let splitter = cells[s];
            for c in 0..cells.len() {
                let cell = cells[c];
                if cell.count_ones() <= 1 {
                    continue;
                }
                // Bucket the cell members by neighbour count in `splitter`.
                let mut buckets: Vec<(u32, u64)> = Vec::new();
                let mut t = cell;
                while t != 0 {
                    let v = t.trailing_zeros() as usize;
                    t &= t - 1;
                    let k = (g.neighbors(v) & splitter).count_ones();
                    match buckets.iter_mut().find(|(bk, _)| *bk == k) {
                        Some((_, mask)) => *mask |= 1 << v,
                        None => buckets.push((k, 1 << v)),
                    }
                }
                if buckets.len() > 1 {
                    buckets.sort_unstable_by_key(|&(k, _)| k);
                    cells.splice(c..=c, buckets.into_iter().map(|(_, m)| m));
                    continue 'restart;
                }
            }
        }
        return;
    }
}

/// True iff every cell pair is a complete or empty block (and every cell is
/// internally complete or empty).  At such a node every discrete refinement
/// produces the same adjacency encoding, so one completion suffices.  Relies
/// on the partition being equitable.
fn homogeneous(g: &Graph, cells: &[u64]) -> bool {
    for &c in cells {
        let rep = c.trailing_zeros() as usize;
        for &d in cells {
            let k = (g.neighbors(rep) & d).count_ones();
            let all = d.count_ones() - (c == d) as u32;
            if k != 0 && k != all {
                return false;
            }
        }
    }
    true
}

// ============================================================================
// Backtracking search
// ============================================================================

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    best_key: Option<Vec<u64>>,
    best_perm: Vec<usize>,
    /// Automorphisms discovered at leaves (old label -> old label).
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, cells: &[u64], prefix: &mut Vec<usize>) {
        if cells.len() == self.n || homogeneous(self.g, cells) {
            self.leaf(cells);
            return;
        }

        // Branch on the first smallest non-singleton cell.
        let (target, _) = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .expect("non-discrete partition has a non-singleton cell");

        let mut tried: Vec<usize> = Vec::new();
        let mut t = cells[target];
        while t != 0 {
            let v = t.trailing_zeros() as usize;
            t &= t - 1;

            // Orbit pruning: skip `v` if an automorphism fixing the current
            // prefix pointwise maps it onto an already-tried candidate.
            let reps = self.orbit_reps(prefix);
            if tried.iter().any(|&u| reps[u] == reps[v]) {
                continue;
            }
            tried.push(v);

            let mut child: Vec<u64> = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1 << v);
            child.push(cells[target] & !(1 << v));
            child.extend_from_slice(&cells[target + 1..]);
            refine(self.g, &mut child);

            prefix.push(v);
            self.descend(&child, prefix);
            prefix.pop();
        }
    }

    /// Closes a node: reads the labelling off the cell order (cells may still
    /// be non-singleton at a homogeneous node; members are taken ascending).
    fn leaf(&mut self, cells: &[u64]) {
        let mut perm = alloc::vec![0usize; self.n];
        let mut next = 0;
        for &cell in cells {
            let mut t = cell;
            while t != 0 {
                let v = t.trailing_zeros() as usize;
                t &= t - 1;
                perm[v] = next;
                next += 1;
            }
        }
        debug_assert_eq!(next, self.n);

        let mut key = alloc::vec![0u64; self.n];
        for (u, v) in self.g.edges() {
            key[perm[u]] |= 1 << perm[v];
            key[perm[v]] |= 1 << perm[u];
        }

        match &self.best_key {
            None => {
                self.best_key = Some(key);
                self.best_perm = perm;
            }
            Some(best) => {
                if key < *best {
                    self.best_key = Some(key);
                    self.best_perm = perm;
                } else if key == *best {
                    // Equal encodings expose an automorphism: map each vertex
                    // to the one playing its role in the stored labelling.
                    let mut best_inv = alloc::vec![0usize; self.n];
                    for (old, &new) in self.best_perm.iter().enumerate() {
                        best_inv[new] = old;
                    }
                    let auto: Vec<usize> = (0..self.n).map(|v| best_inv[perm[v]]).collect();
                    if auto.iter().enumerate().any(|(v, &a)| v != a) {
                        debug_assert!(self.is_automorphism(&auto));
                        self.autos.push(auto);
                    }
                }
            }
        }
    }

    /// Orbit representatives under the discovered automorphisms that fix
    /// every vertex of `prefix`.
    fn orbit_reps(&self, prefix: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], v: usize) -> usize {
            let mut r = v;
            while parent[r] != r {
                r = parent[r];
            }
            let mut v = v;
            while parent[v] != r {
                let next = parent[v];
                parent[v] = r;
                v = next;
            }
            r
        }
        for auto in &self.autos {
            if prefix.iter().any(|&p| auto[p] != p) {
                continue;
            }
            for v in 0..self.n {
                let (a, b) = (find(&mut parent, v), find(&mut parent, auto[v]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..self.n).map(|v| find(&mut parent, v)).collect()
    }

    #[cfg(debug_assertions)]
    fn is_automorphism(&self, perm: &[usize]) -> bool {
        self.g
            .edges()
            .iter()
            .all(|&(u, v)| self.g.has_edge(perm[u], perm[v]))
    }

    #[cfg(not(debug_assertions))]
    fn is_automorphism(&self, _perm: &[usize]) -> bool {
        true
    }
}

// ============================================================================
// Tests
// ============================================================================
