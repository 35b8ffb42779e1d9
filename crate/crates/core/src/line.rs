//! The line digraph transform and its arc count.

use crate::digraph::{Arc, Digraph};

/// `L(G)`: vertex `i` stands for the root arc `labels[i]`, and `(i, j)` is an
/// arc whenever `labels[i].head == labels[j].tail`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineDigraph {
    pub graph: Digraph,
    pub labels: Vec<Arc>,
}

/// Builds `L(G)` with vertices in the root's lexicographic arc order.
pub fn line_digraph(root: &Digraph) -> LineDigraph {
    let labels = root.arcs().to_vec();
    // labels are sorted by tail, so the arcs leaving a root vertex form a
    // contiguous index range.
    let mut first = vec![0usize; root.vertex_count() + 1];
    for a in &labels {
        first[a.tail + 1] += 1;
    }
    for v in 0..root.vertex_count() {
        first[v + 1] += first[v];
    }
    let mut arcs = Vec::with_capacity(phi(root) as usize);
    for (i, a) in labels.iter().enumerate() {
        arcs.extend((first[a.head]..first[a.head + 1]).map(|j| Arc::new(i, j)));
    }
    // emitted in (i, j) order already: i increases, and j is a sorted range
    LineDigraph {
        graph: Digraph::from_sorted_unchecked(labels.len(), arcs),
        labels,
    }
}

/// `sum_v d+(v) * d-(v)`, the number of arcs of `L(G)`.
pub fn phi(g: &Digraph) -> u64 {
    g.vertices()
        .map(|v| (g.out_degree(v) * g.in_degree(v)) as u64)
        .sum()
}

/// Largest `phi` over digraphs with `m` arcs:
/// `(m/2)^2 + m/2` for even `m`, `((m-1)/2)^2 + m - 1` for odd `m`.
pub const fn max_arcs(m: u64) -> u64 {
    let p = m / 2;
    if m % 2 == 0 {
        p * p + p
    } else {
        p * p + 2 * p
    }
}
