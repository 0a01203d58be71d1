//! Simple undirected graphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` bitmask per vertex, which keeps every
//! operation the completion engine needs (degree, non-neighbour scans,
//! complement, relabelling) branch-free and cheap.  Vertices are `0..n`.
//!
//! Invariants maintained by every constructor and mutator:
//! * symmetry: bit `u` of `adj[v]` is set iff bit `v` of `adj[u]` is set,
//! * irreflexivity: bit `v` of `adj[v]` is never set,
//! * no stray bits at positions `>= n`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Hard upper bound on the order of any graph handled by this crate.
pub const MAX_VERTICES: usize = 64;

/// Bitmask with bits `0..n` set.
#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    debug_assert!(n <= 64);
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

// ============================================================================
// Errors
// ============================================================================

/// Construction errors for graphs and graph families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// Requested order is 0 or exceeds [`MAX_VERTICES`].
    OrderOutOfRange(usize),
    /// An edge referenced a vertex id `>= n`.
    VertexOutOfRange { vertex: usize, order: usize },
    /// An edge joined a vertex to itself.
    SelfLoop(usize),
    /// The same edge was listed twice.
    DuplicateEdge(usize, usize),
    /// A family parameter was out of its admissible range (e.g. a cycle of
    /// order 2).
    InvalidFamily(&'static str),
    /// A composite (union, join, pearl) would exceed [`MAX_VERTICES`].
    CompositeTooLarge(usize),
    /// A pearl needs at least two parts.
    TooFewParts(usize),
    /// A pearl link referenced a vertex outside its part.
    BadLink { part: usize, vertex: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::OrderOutOfRange(n) => {
                write!(f, "graph order {} outside 1..={}", n, MAX_VERTICES)
            }
            GraphError::VertexOutOfRange { vertex, order } => {
                write!(f, "vertex {} out of range for order {}", vertex, order)
            }
            GraphError::SelfLoop(v) => write!(f, "self-loop at vertex {}", v),
            GraphError::DuplicateEdge(u, v) => write!(f, "edge {{{}, {}}} listed twice", u, v),
            GraphError::InvalidFamily(what) => write!(f, "invalid family parameter: {}", what),
            GraphError::CompositeTooLarge(n) => {
                write!(f, "composite order {} exceeds {}", n, MAX_VERTICES)
            }
            GraphError::TooFewParts(k) => write!(f, "pearl needs at least 2 parts, got {}", k),
            GraphError::BadLink { part, vertex } => {
                write!(f, "pearl link vertex {} outside part {}", vertex, part)
            }
        }
    }
}

impl core::error::Error for GraphError {}

// ============================================================================
// Graph
// ============================================================================

/// An undirected simple graph on `1..=64` vertices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph of the given order.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::OrderOutOfRange(n));
        }
        Ok(Graph { n, adj: alloc::vec![0; n] })
    }

    /// Builds a graph from an explicit edge list, rejecting self-loops,
    /// duplicates and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, order: n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, order: n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Number of vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        let total: u32 = self.adj.iter().map(|m| m.count_ones()).sum();
        (total / 2) as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.adj[u] >> v & 1 == 1
    }

    /// Inserts the edge `{u, v}`; idempotent.
    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u < self.n && v < self.n && u != v);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    /// Deletes the edge `{u, v}`; idempotent.
    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u < self.n && v < self.n && u != v);
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    /// Neighbourhood of `v` as a bitmask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        debug_assert!(v < self.n);
        self.adj[v]
    }

    /// Vertices not adjacent to `v`, excluding `v` itself, as a bitmask.
    #[inline]
    pub fn non_neighbors(&self, v: usize) -> u64 {
        debug_assert!(v < self.n);
        full_mask(self.n) & !self.adj[v] & !(1 << v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        debug_assert!(v < self.n);
        self.adj[v].count_ones() as usize
    }

    /// Degrees of all vertices, indexed by vertex.
    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// True iff every pair of distinct vertices is adjacent.
    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|v| self.adj[v] == full_mask(self.n) & !(1 << v))
    }

    /// True iff the graph has no edges.
    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|&m| m == 0)
    }

    /// All edges `{u, v}` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            let mut t = self.adj[u] & !(full_mask(u + 1));
            while t != 0 {
                let v = t.trailing_zeros() as usize;
                t &= t - 1;
                out.push((u, v));
            }
        }
        out
    }

    /// Complement graph on the same vertex set.
    pub fn complement(&self) -> Graph {
        let mask = full_mask(self.n);
        let adj = (0..self.n)
            .map(|v| mask & !self.adj[v] & !(1u64 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Disjoint union; `other`'s vertices are shifted up by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::CompositeTooLarge(n));
        }
        let mut adj = Vec::with_capacity(n);
        adj.extend_from_slice(&self.adj);
        adj.extend(other.adj.iter().map(|&m| m << self.n));
        Ok(Graph { n, adj })
    }

    /// Join: disjoint union plus all edges between the two parts.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut g = self.disjoint_union(other)?;
        let left = full_mask(self.n);
        let right = full_mask(g.n) & !left;
        for v in 0..self.n {
            g.adj[v] |= right;
        }
        for v in self.n..g.n {
            g.adj[v] |= left;
        }
        Ok(g)
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    ///
    /// `perm` must be a permutation of `0..n`; this is only debug-checked.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        debug_assert_eq!(
            {
                let mut seen = 0u64;
                for &p in perm {
                    seen |= 1 << p;
                }
                seen
            },
            full_mask(self.n)
        );
        let mut g = Graph { n: self.n, adj: alloc::vec![0; self.n] };
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Subgraph induced by the vertices in `keep` (a bitmask); the survivors
    /// are renumbered in increasing order of their old labels.
    pub fn induced_subgraph(&self, keep: u64) -> Result<Graph, GraphError> {
        let keep = keep & full_mask(self.n);
        let mut map = alloc::vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if keep >> v & 1 == 1 {
                map[v] = next;
                next += 1;
            }
        }
        let mut g = Graph::empty(next)?;
        for (u, v) in self.edges() {
            if map[u] != usize::MAX && map[v] != usize::MAX {
                g.add_edge(map[u], map[v]);
            }
        }
        Ok(g)
    }

    /// True iff the graph has exactly one connected component.
    pub fn is_connected(&self) -> bool {
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            let mut t = frontier;
            while t != 0 {
                let v = t.trailing_zeros() as usize;
                t &= t - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == full_mask(self.n)
    }

    /// Number of vertices of degree exactly 1 whose unique neighbour has
    /// degree at least 2, i.e. leaves hanging off a larger structure.  A
    /// `K_2` component has two degree-1 vertices but neither counts here.
    pub fn pendant_count(&self) -> usize {
        (0..self.n)
            .filter(|&v| {
                self.degree(v) == 1 && {
                    let u = self.adj[v].trailing_zeros() as usize;
                    self.degree(u) >= 2
                }
            })
            .count()
    }

    /// Number of isolated (degree 0) vertices.
    pub fn isolated_count(&self) -> usize {
        self.adj.iter().filter(|&&m| m == 0).count()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

// ============================================================================
// Families and composites
// ============================================================================

/// The standard graph families the tooling knows how to build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Path `P_n`, `n >= 1` (a single vertex is permitted).
    Path(usize),
    /// Cycle `C_n`, `n >= 3`.
    Cycle(usize),
    /// Complete graph `K_n`.
    Complete(usize),
    /// Edgeless graph `N_n`.
    Null(usize),
    /// Complete bipartite `K_{m,n}` with part sizes `m, n >= 1`.
    CompleteBipartite(usize, usize),
    /// Star `S_{1,n}`: one centre joined to `n >= 1` leaves (order `n + 1`).
    Star(usize),
    /// Wheel `W_{1,n}`: one hub joined to every vertex of a rim `C_n`,
    /// `n >= 3` (order `n + 1`).
    Wheel(usize),
    /// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`
    /// (`5+i ~ 5+((i+2) mod 5)`), spokes `i ~ 5+i`.
    Petersen,
}

/// Builds a member of one of the supported families.
pub fn generate(family: &Family) -> Result<Graph, GraphError> {
    match *family {
        Family::Path(n) => {
            let mut g = Graph::empty(n)?;
            for v in 1..n {
                g.add_edge(v - 1, v);
            }
            Ok(g)
        }
        Family::Cycle(n) => {
            if n < 3 {
                return Err(GraphError::InvalidFamily("cycle needs order >= 3"));
            }
            let mut g = Graph::empty(n)?;
            for v in 0..n {
                g.add_edge(v, (v + 1) % n);
            }
            Ok(g)
        }
        Family::Complete(n) => {
            let g = Graph::empty(n)?;
            Ok(g.complement())
        }
        Family::Null(n) => Graph::empty(n),
        Family::CompleteBipartite(m, n) => {
            if m == 0 || n == 0 {
                return Err(GraphError::InvalidFamily("bipartite parts must be non-empty"));
            }
            Graph::empty(m)?.join(&Graph::empty(n)?)
        }
        Family::Star(leaves) => {
            if leaves == 0 {
                return Err(GraphError::InvalidFamily("star needs at least one leaf"));
            }
            Graph::empty(1)?.join(&Graph::empty(leaves)?)
        }
        Family::Wheel(rim) => {
            if rim < 3 {
                return Err(GraphError::InvalidFamily("wheel needs rim >= 3"));
            }
            Graph::empty(1)?.join(&generate(&Family::Cycle(rim))?)
        }
        Family::Petersen => {
            let mut g = Graph::empty(10)?;
            for i in 0..5 {
                g.add_edge(i, (i + 1) % 5); // outer cycle
                g.add_edge(5 + i, 5 + (i + 2) % 5); // inner pentagram
                g.add_edge(i, 5 + i); // spoke
            }
            Ok(g)
        }
    }
}

/// Chains `parts` into a "pearled" graph: consecutive parts are linked by a
/// single edge from the last vertex of part `i` to the first vertex of part
/// `i + 1` (under each part's own vertex order).
pub fn pearl(parts: &[Graph]) -> Result<Graph, GraphError> {
    let links: Vec<(usize, usize)> = parts
        .windows(2)
        .map(|w| (w[0].order() - 1, 0))
        .collect();
    pearl_with_links(parts, &links)
}

/// As [`pearl`], but with an explicit link pair per consecutive part pair:
/// `links[i] = (a, b)` joins vertex `a` of part `i` to vertex `b` of part
/// `i + 1` (both in part-local numbering).
pub fn pearl_with_links(parts: &[Graph], links: &[(usize, usize)]) -> Result<Graph, GraphError> {
    if parts.len() < 2 {
        return Err(GraphError::TooFewParts(parts.len()));
    }
    if links.len() != parts.len() - 1 {
        return Err(GraphError::InvalidFamily("need exactly one link per consecutive pair"));
    }
    let mut g = parts[0].clone();
    let mut offset = 0;
    for (i, part) in parts.iter().enumerate().skip(1) {
        let (a, b) = links[i - 1];
        if a >= parts[i - 1].order() {
            return Err(GraphError::BadLink { part: i - 1, vertex: a });
        }
        if b >= part.order() {
            return Err(GraphError::BadLink { part: i, vertex: b });
        }
        let prev_offset = offset;
        offset += parts[i - 1].order();
        g = g.disjoint_union(part)?;
        g.add_edge(prev_offset + a, offset + b);
    }
    Ok(g)
}

// ============================================================================
// Edge-list text format
// ============================================================================

/// Errors from [`parse_edge_list`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeListError {
    /// The `"n m"` header line is missing or unreadable.
    BadHeader,
    /// An edge line did not consist of two vertex ids.
    BadEdgeLine(usize),
    /// The header declared a different number of edges than were listed.
    EdgeCountMismatch { declared: usize, found: usize },
    /// The edges themselves were invalid.
    Graph(GraphError),
}

impl fmt::Display for EdgeListError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeListError::BadHeader => write!(f, "missing or malformed `n m` header line"),
            EdgeListError::BadEdgeLine(no) => write!(f, "line {}: expected `u v`", no),
            EdgeListError::EdgeCountMismatch { declared, found } => {
                write!(f, "header declared {} edges but {} were listed", declared, found)
            }
            EdgeListError::Graph(e) => write!(f, "{}", e),
        }
    }
}

impl core::error::Error for EdgeListError {}

impl From<GraphError> for EdgeListError {
    fn from(e: GraphError) -> Self {
        EdgeListError::Graph(e)
    }
}

/// Parses the plain-text edge-list format: a `"n m"` header line followed by
/// `m` lines `"u v"` (0-indexed).  Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (_, header) = lines.next().ok_or(EdgeListError::BadHeader)?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(EdgeListError::BadHeader)?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(EdgeListError::BadHeader)?;
    if it.next().is_some() {
        return Err(EdgeListError::BadHeader);
    }

    let mut edges = Vec::with_capacity(m);
    for (no, line) in lines {
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(EdgeListError::BadEdgeLine(no))?;
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(EdgeListError::BadEdgeLine(no))?;
        if it.next().is_some() {
            return Err(EdgeListError::BadEdgeLine(no));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(EdgeListError::EdgeCountMismatch { declared: m, found: edges.len() });
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Inverse of [`parse_edge_list`].
pub fn emit_edge_list(g: &Graph) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.order(), g.size());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u, v);
    }
    out
}

// ============================================================================
// Tests
// ============================================================================
