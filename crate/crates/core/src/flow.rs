//! Capacity-respecting assignment of items to one of two owners each.
//!
//! The one-iteration completability question reduces to: give every missing
//! edge to one of its two endpoints such that no vertex receives more edges
//! than its budget.  That is a tiny bipartite flow problem; this module
//! solves it by plain augmenting-path max-flow and, on failure, extracts the
//! witnessing bottleneck (a vertex set whose internal missing edges exceed
//! its total budget) from the final residual graph.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

/// A failed assignment, with the blocking vertex set as evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocking {
    /// Vertex set `S` (bitmask) with more internal items than total capacity.
    pub vertices: u64,
    /// Items both of whose owners lie inside `S`.
    pub items_inside: usize,
    /// Total capacity of `S`.
    pub capacity: usize,
}

/// Assigns each item to one of its two candidate owners, subject to
/// per-owner capacities.  Returns the owner index per item, or the blocking
/// set if no full assignment exists.
pub fn assign_items(
    items: &[(usize, usize)],
    capacity: &[usize],
) -> Result<Vec<usize>, Blocking> {
    let n = capacity.len();
    debug_assert!(n <= 64);
    let source = 0;
    let item_base = 1;
    let owner_base = item_base + items.len();
    let sink = owner_base + n;

    let mut net = FlowNet::new(sink + 1);
    for (i, &(u, v)) in items.iter().enumerate() {
        debug_assert!(u < n && v < n && u != v);
        net.arc(source, item_base + i, 1);
        net.arc(item_base + i, owner_base + u, 1);
        net.arc(item_base + i, owner_base + v, 1);
    }
    for (v, &c) in capacity.iter().enumerate() {
        net.arc(owner_base + v, sink, c);
    }

    let flow = net.max_flow(source, sink);
    if flow == items.len() {
        let owners = items
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| {
                if net.arc_saturated(item_base + i, owner_base + u) {
                    u
                } else {
                    debug_assert!(net.arc_saturated(item_base + i, owner_base + v));
                    v
                }
            })
            .collect();
        return Ok(owners);
    }

    // Residual reachability from the source.  Every reachable owner is
    // saturated, and every item inside the cut has both owners reachable, so
    // the reachable owners form a deficient set.
    let reach = net.residual_reachable(source);
    let mut vertices = 0u64;
    for v in 0..n {
        if reach[owner_base + v] {
            vertices |= 1 << v;
        }
    }
    let items_inside = items
        .iter()
        .filter(|&&(u, v)| vertices >> u & 1 == 1 && vertices >> v & 1 == 1)
        .count();
    let capacity_sum = (0..n)
        .filter(|&v| vertices >> v & 1 == 1)
        .map(|v| capacity[v])
        .sum();
    debug_assert!(items_inside > capacity_sum, "blocking set must be deficient");
    Err(Blocking { vertices, items_inside, capacity: capacity_sum })
}

// ============================================================================
// Minimal max-flow network
// ============================================================================

struct Arc {
    to: usize,
    cap: usize,
    flow: usize,
}

struct FlowNet {
    /// Arcs in pairs: arc `2k` and its reverse `2k + 1`.
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(nodes: usize) -> FlowNet {
        FlowNet { arcs: Vec::new(), adj: alloc::vec![Vec::new(); nodes] }
    }

    fn arc(&mut self, from: usize, to: usize, cap: usize) {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, flow: 0 });
        self.arcs.push(Arc { to: from, cap: 0, flow: 0 });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
    }

    fn residual(&self, id: usize) -> usize {
        let arc = &self.arcs[id];
        if id % 2 == 0 {
            arc.cap - arc.flow
        } else {
            // Reverse arc: residual equals the forward flow.
            self.arcs[id - 1].flow
        }
    }

    fn push(&mut self, id: usize, amount: usize) {
        if id % 2 == 0 {
            self.arcs[id].flow += amount;
        } else {
            self.arcs[id - 1].flow -= amount;
        }
    }

    /// Edmonds-Karp: repeatedly push along a shortest augmenting path.
    fn max_flow(&mut self, source: usize, sink: usize) -> usize {
        let mut total = 0;
        loop {
            let mut pred: Vec<Option<usize>> = alloc::vec![None; self.adj.len()];
            let mut queue = VecDeque::new();
            queue.push_back(source);
            while let Some(v) = queue.pop_front() {
                if v == sink {
                    break;
                }
                for &id in &self.adj[v] {
                    let to = self.arcs[id].to;
                    if to != source && pred[to].is_none() && self.residual(id) > 0 {
                        pred[to] = Some(id);
                        queue.push_back(to);
                    }
                }
            }
            if pred[sink].is_none() {
                return total;
            }
            let mut bottleneck = usize::MAX;
            let mut v = sink;
            while v != source {
                let id = pred[v].expect("path reconstructed");
                bottleneck = bottleneck.min(self.residual(id));
                v = self.other_end(id);
            }
            let mut v = sink;
            while v != source {
                let id = pred[v].expect("path reconstructed");
                self.push(id, bottleneck);
                v = self.other_end(id);
            }
            total += bottleneck;
        }
    }

    fn other_end(&self, id: usize) -> usize {
        // The tail of arc `id` is the head of its partner.
        self.arcs[id ^ 1].to
    }

    fn arc_saturated(&self, from: usize, to: usize) -> bool {
        self.adj[from]
            .iter()
            .any(|&id| id % 2 == 0 && self.arcs[id].to == to && self.arcs[id].flow == self.arcs[id].cap && self.arcs[id].cap > 0)
    }

    fn residual_reachable(&self, source: usize) -> Vec<bool> {
        let mut seen = alloc::vec![false; self.adj.len()];
        seen[source] = true;
        let mut queue = VecDeque::new();
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &id in &self.adj[v] {
                let to = self.arcs[id].to;
                if !seen[to] && self.residual(id) > 0 {
                    seen[to] = true;
                    queue.push_back(to);
                }
            }
        }
        seen
    }
}

// ============================================================================
// Tests
// ============================================================================
