//! Generators for the extremal digraphs and the arc-degree check for optima.
//!
//! Vertex numbering is fixed so that generated graphs are reproducible:
//!
//! * `gen_o(m)`: vertex 0 is the center; `1..=m/2` each form a 2-circuit with
//!   it; for odd `m`, vertex `m/2 + 1` has a single arc into the center.
//! * `gen_max_line(m)`: side A is `0..|A|`, side B follows; B-vertex `i`
//!   returns to A-vertex `i`.
//! * `gen_star`: center 0, then circuit partners, then in-leaves, then
//!   out-leaves.

use serde::{Deserialize, Serialize};

use crate::digraph::{Arc, Digraph};
use crate::error::{Error, Result};

/// The root with `m` arcs maximizing `phi`: a center sharing `m / 2`
/// 2-circuits, plus one incoming arc when `m` is odd.
pub fn gen_o(m: usize) -> Result<Digraph> {
    if m < 2 {
        return Err(Error::InvalidSize {
            size: m,
            reason: "the extremal root needs at least 2 arcs",
        });
    }
    let p = m / 2;
    let mut arcs: Vec<(usize, usize)> = (1..=p).flat_map(|i| [(0, i), (i, 0)]).collect();
    if m % 2 == 1 {
        arcs.push((p + 1, 0));
    }
    Digraph::from_arcs(p + 1 + m % 2, arcs)
}

/// The line digraph of order `m` with the most arcs, built directly: a
/// complete orientation from side A to side B plus one return arc per
/// B-vertex. Side A holds the extra vertex when `m` is odd.
pub fn gen_max_line(m: usize) -> Result<Digraph> {
    if m < 2 {
        return Err(Error::InvalidSize {
            size: m,
            reason: "the extremal line digraph needs at least 2 vertices",
        });
    }
    let p = m / 2;
    let side_a = p + m % 2;
    let mut arcs = Vec::with_capacity(side_a * p + p);
    for a in 0..side_a {
        for b in 0..p {
            arcs.push((a, side_a + b));
        }
    }
    for i in 0..p {
        arcs.push((side_a + i, i));
    }
    Digraph::from_arcs(m, arcs)
}

/// A star around one center: `x` arcs in, `y` arcs out, `c` of them paired
/// into 2-circuits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StarSpec {
    pub x: usize,
    pub y: usize,
    pub c: usize,
}

impl StarSpec {
    pub fn new(x: usize, y: usize, c: usize) -> Result<Self> {
        let spec = StarSpec { x, y, c };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let invalid = |reason| Error::InvalidSpec {
            x: self.x,
            y: self.y,
            c: self.c,
            reason,
        };
        if self.x + self.y == 0 {
            return Err(invalid("the star needs at least one arc"));
        }
        if self.c > self.x.min(self.y) {
            return Err(invalid("c must not exceed min(x, y)"));
        }
        Ok(())
    }

    pub fn outer_vertices(&self) -> usize {
        self.x + self.y - self.c
    }
}

pub fn gen_star(spec: StarSpec) -> Result<Digraph> {
    spec.validate()?;
    let StarSpec { x, y, c } = spec;
    let mut arcs = Vec::with_capacity(x + y);
    for v in 1..=c {
        arcs.push((0, v));
        arcs.push((v, 0));
    }
    let first_in = c + 1;
    for v in first_in..first_in + (x - c) {
        arcs.push((v, 0));
    }
    let first_out = first_in + (x - c);
    for v in first_out..first_out + (y - c) {
        arcs.push((0, v));
    }
    Digraph::from_arcs(1 + spec.outer_vertices(), arcs)
}

/// Least value of `d-(u) + d+(v)` over arcs `(u, v)` of an optimal digraph
/// with `m` arcs: `m/2 + 1` for even `m`, `(m-1)/2` for odd `m`.
pub const fn arc_degree_threshold(m: usize) -> usize {
    if m % 2 == 0 {
        m / 2 + 1
    } else {
        (m - 1) / 2
    }
}

/// True iff every arc `(u, v)` has `d-(u) + d+(v) >= arc_degree_threshold(m)`.
///
/// Removing `(u, v)` costs exactly `d-(u) + d+(v)` arcs of the line digraph,
/// so a digraph failing this check cannot be optimal.
pub fn check_arc_degree_bound(g: &Digraph) -> bool {
    let threshold = arc_degree_threshold(g.arc_count());
    g.arcs()
        .iter()
        .all(|&Arc { tail, head }| g.in_degree(tail) + g.out_degree(head) >= threshold)
}
