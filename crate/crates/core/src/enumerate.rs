//! Enumeration of all graphs of a given order, up to isomorphism.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::Graph;

/// Largest order [`enumerate_graph_classes`] accepts.
pub const MAX_ENUMERATION_ORDER: usize = 8;

/// Error from [`enumerate_graph_classes`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    /// Order 0 or above [`MAX_ENUMERATION_ORDER`].
    OrderOutOfRange(usize),
}

impl fmt::Display for EnumerateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerateError::OrderOutOfRange(n) => {
                write!(f, "enumeration order {} outside 1..={}", n, MAX_ENUMERATION_ORDER)
            }
        }
    }
}

impl core::error::Error for EnumerateError {}

/// All isomorphism classes of graphs of the given order, as canonical
/// representatives sorted by (size, canonical bytes).
///
/// Orders up to 7 walk every one of the `2^(n(n-1)/2)` labelled graphs and
/// deduplicate by canonical form.  Order 8 would need `2^28` labelled graphs,
/// so it instead extends each order-7 class by one new vertex in every
/// possible way — every order-8 graph arises this way because deleting a
/// vertex of it lands in some order-7 class.
pub fn enumerate_graph_classes(n: usize) -> Result<Vec<Graph>, EnumerateError> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(EnumerateError::OrderOutOfRange(n));
    }
    let forms = if n <= 7 {
        exhaustive_classes(n)
    } else {
        let parents = enumerate_graph_classes(n - 1)?;
        extend_classes(&parents)
    };
    let mut reps: Vec<Graph> = forms.iter().map(CanonicalForm::to_graph).collect();
    reps.sort_by_key(|g| (g.size(), canonical_form(g)));
    Ok(reps)
}

fn exhaustive_classes(n: usize) -> BTreeSet<CanonicalForm> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut seen = BTreeSet::new();
    for bits in 0u32..1 << pairs.len() {
        let mut g = Graph::empty(n).expect("order checked");
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if bits >> i & 1 == 1 {
                g.add_edge(u, v);
            }
        }
        seen.insert(canonical_form(&g));
    }
    seen
}

fn extend_classes(parents: &[Graph]) -> BTreeSet<CanonicalForm> {
    let mut seen = BTreeSet::new();
    for parent in parents {
        let n = parent.order();
        for nbrs in 0u64..1 << n {
            let mut g = parent
                .disjoint_union(&Graph::empty(1).expect("single vertex"))
                .expect("order within bounds");
            let mut t = nbrs;
            while t != 0 {
                let u = t.trailing_zeros() as usize;
                t &= t - 1;
                g.add_edge(u, n);
            }
            seen.insert(canonical_form(&g));
        }
    }
    seen
}

// ============================================================================
// Tests
// ============================================================================
