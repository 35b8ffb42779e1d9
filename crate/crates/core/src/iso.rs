//! Isomorphism testing and canonical forms.
//!
//! Two independent routes are provided:
//!
//! * [`canonical_form`] runs individualization-refinement on a bitset copy of
//!   the graph and keeps the lexicographically least relabeled arc list.
//!   Twin vertices and automorphisms found at the leaves prune the search.
//! * [`are_isomorphic`] refines both graphs jointly and backtracks over
//!   candidate images, checking arcs at the first discrete partition.
//!
//! Isolated vertices are ignored by both: they have no effect on `phi` or on
//! the line digraph.

use std::cmp::Ordering;
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::digraph::{Arc, Digraph, Vertex};
use crate::error::{Error, Result};

/// Largest number of non-isolated vertices [`canonical_form`] accepts.
pub const CANONICAL_VERTEX_LIMIT: usize = 16;

/// Automorphisms kept for pruning; more may be found but are dropped.
const STORED_AUTOMORPHISMS: usize = 128;

/// Relabeling-invariant fingerprint: the arc list of the canonically
/// relabeled digraph (isolated vertices stripped) and its vertex count.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    n: usize,
    arcs: Vec<Arc>,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// The canonical representative itself.
    pub fn to_digraph(&self) -> Digraph {
        Digraph::from_sorted_unchecked(self.n, self.arcs.clone())
    }

    pub(crate) fn from_small(g: &SmallDigraph, arcs: &[(u8, u8)]) -> Self {
        CanonicalForm {
            n: g.n,
            arcs: arcs
                .iter()
                .map(|&(t, h)| Arc::new(t as usize, h as usize))
                .collect(),
        }
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} [", self.n)?;
        for (i, a) in self.arcs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

/// Canonical form of `g`. Fails with `TooLarge` when `g` has more than
/// [`CANONICAL_VERTEX_LIMIT`] non-isolated vertices.
pub fn canonical_form(g: &Digraph) -> Result<CanonicalForm> {
    let g = g.without_isolated();
    if g.vertex_count() > CANONICAL_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            what: "non-isolated vertex count",
            value: g.vertex_count(),
            limit: CANONICAL_VERTEX_LIMIT,
        });
    }
    let small = SmallDigraph::from_digraph(&g);
    Ok(CanonicalForm::from_small(&small, &canonical_arcs(&small)))
}

/// Digraph on at most 16 vertices with one bit row per vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct SmallDigraph {
    pub n: usize,
    pub out: [u16; CANONICAL_VERTEX_LIMIT],
    pub inc: [u16; CANONICAL_VERTEX_LIMIT],
}

impl SmallDigraph {
    pub fn new(n: usize) -> Self {
        debug_assert!(n <= CANONICAL_VERTEX_LIMIT);
        SmallDigraph {
            n,
            out: [0; CANONICAL_VERTEX_LIMIT],
            inc: [0; CANONICAL_VERTEX_LIMIT],
        }
    }

    pub fn from_digraph(g: &Digraph) -> Self {
        let mut s = SmallDigraph::new(g.vertex_count());
        for a in g.arcs() {
            s.add_arc(a.tail, a.head);
        }
        s
    }

    #[cfg(test)]
    pub fn from_arcs(n: usize, arcs: &[Arc]) -> Self {
        let mut s = SmallDigraph::new(n);
        for a in arcs {
            s.add_arc(a.tail, a.head);
        }
        s
    }

    pub fn add_arc(&mut self, t: usize, h: usize) {
        self.out[t] |= 1 << h;
        self.inc[h] |= 1 << t;
    }

    pub fn has_arc(&self, t: usize, h: usize) -> bool {
        self.out[t] >> h & 1 == 1
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones() as usize
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inc[v].count_ones() as usize
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |t| bits(self.out[t]).map(move |h| (t, h)))
    }

    pub fn to_digraph(&self) -> Digraph {
        Digraph::from_sorted_unchecked(self.n, self.arcs().map(|(t, h)| Arc::new(t, h)).collect())
    }

    /// Swapping two twins is an automorphism.
    fn twins(&self, u: usize, v: usize) -> bool {
        let (bu, bv) = (1u16 << u, 1u16 << v);
        self.out[u] & !bv == self.out[v] & !bu
            && self.inc[u] & !bv == self.inc[v] & !bu
            && self.has_arc(u, v) == self.has_arc(v, u)
    }
}

fn bits(mut word: u16) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let i = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(i)
        }
    })
}

/// An ordered partition stored as a dense cell index per vertex.
#[derive(Clone, Copy)]
struct Coloring {
    color: [u8; CANONICAL_VERTEX_LIMIT],
    cells: usize,
}

impl Coloring {
    fn unit(n: usize) -> Self {
        Coloring {
            color: [0; CANONICAL_VERTEX_LIMIT],
            cells: usize::from(n > 0),
        }
    }

    /// Moves `v` into a singleton cell just before the rest of its cell.
    fn individualize(&self, n: usize, v: usize) -> Self {
        let mut next = *self;
        let cv = self.color[v];
        for u in 0..n {
            let c = self.color[u];
            if c > cv || (c == cv && u != v) {
                next.color[u] = c + 1;
            }
        }
        next.cells += 1;
        next
    }

    /// Equitable refinement: splits cells by the number of out- and
    /// in-neighbors in every cell until nothing changes.
    fn refine(&mut self, g: &SmallDigraph) {
        let n = g.n;
        type Key = [u8; 2 * CANONICAL_VERTEX_LIMIT + 1];
        loop {
            let mut masks = [0u16; CANONICAL_VERTEX_LIMIT];
            for v in 0..n {
                masks[self.color[v] as usize] |= 1 << v;
            }
            let mut keys: [(Key, usize); CANONICAL_VERTEX_LIMIT] =
                [([0; 2 * CANONICAL_VERTEX_LIMIT + 1], 0); CANONICAL_VERTEX_LIMIT];
            for v in 0..n {
                let key = &mut keys[v].0;
                key[0] = self.color[v];
                for c in 0..self.cells {
                    key[1 + c] = (g.out[v] & masks[c]).count_ones() as u8;
                    key[1 + CANONICAL_VERTEX_LIMIT + c] = (g.inc[v] & masks[c]).count_ones() as u8;
                }
                keys[v].1 = v;
            }
            let keys = &mut keys[..n];
            keys.sort_unstable();
            let mut cells = 0;
            for i in 0..n {
                if i > 0 && keys[i].0 != keys[i - 1].0 {
                    cells += 1;
                }
                self.color[keys[i].1] = cells as u8;
            }
            let cells = if n == 0 { 0 } else { cells + 1 };
            if cells == self.cells {
                return;
            }
            self.cells = cells;
        }
    }

    /// First cell with two or more members, as a bit mask.
    fn target_cell(&self, n: usize) -> Option<u16> {
        let mut sizes = [0u8; CANONICAL_VERTEX_LIMIT];
        for v in 0..n {
            sizes[self.color[v] as usize] += 1;
        }
        let c = (0..self.cells).find(|&c| sizes[c] > 1)?;
        Some(
            (0..n)
                .filter(|&v| self.color[v] as usize == c)
                .fold(0u16, |m, v| m | 1 << v),
        )
    }
}

struct Canonizer<'a> {
    g: &'a SmallDigraph,
    best: Vec<(u8, u8)>,
    best_labeling: [u8; CANONICAL_VERTEX_LIMIT],
    has_best: bool,
    automorphisms: Vec<[u8; CANONICAL_VERTEX_LIMIT]>,
    scratch: Vec<(u8, u8)>,
}

impl Canonizer<'_> {
    fn search(&mut self, coloring: Coloring, prefix: &mut Vec<usize>) {
        let n = self.g.n;
        let Some(cell) = coloring.target_cell(n) else {
            self.leaf(&coloring);
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for v in bits(cell) {
            if tried.iter().any(|&u| self.g.twins(u, v)) || self.in_tried_orbit(prefix, &tried, v) {
                continue;
            }
            tried.push(v);
            let mut child = coloring.individualize(n, v);
            child.refine(self.g);
            prefix.push(v);
            self.search(child, prefix);
            prefix.pop();
        }
    }

    fn in_tried_orbit(&self, prefix: &[usize], tried: &[usize], v: usize) -> bool {
        if tried.is_empty() || self.automorphisms.is_empty() {
            return false;
        }
        let mut orbits = UnionFind::<usize>::new(self.g.n);
        let mut any = false;
        for perm in &self.automorphisms {
            if prefix.iter().all(|&p| perm[p] as usize == p) {
                any = true;
                for x in 0..self.g.n {
                    orbits.union(x, perm[x] as usize);
                }
            }
        }
        any && tried.iter().any(|&u| orbits.equiv(u, v))
    }

    fn leaf(&mut self, coloring: &Coloring) {
        let label = &coloring.color;
        self.scratch.clear();
        self.scratch
            .extend(self.g.arcs().map(|(t, h)| (label[t], label[h])));
        self.scratch.sort_unstable();
        let order = if self.has_best {
            self.scratch.cmp(&self.best)
        } else {
            Ordering::Less
        };
        match order {
            Ordering::Less => {
                std::mem::swap(&mut self.best, &mut self.scratch);
                self.best_labeling = *label;
                self.has_best = true;
            }
            Ordering::Equal if self.automorphisms.len() < STORED_AUTOMORPHISMS => {
                // v -> the vertex the best leaf gave the same label
                let n = self.g.n;
                let mut inverse = [0u8; CANONICAL_VERTEX_LIMIT];
                for v in 0..n {
                    inverse[self.best_labeling[v] as usize] = v as u8;
                }
                let mut perm = [0u8; CANONICAL_VERTEX_LIMIT];
                for v in 0..n {
                    perm[v] = inverse[label[v] as usize];
                }
                self.automorphisms.push(perm);
            }
            _ => {}
        }
    }
}

/// Least relabeled arc list over the refined search tree of `g`.
pub(crate) fn canonical_arcs(g: &SmallDigraph) -> Vec<(u8, u8)> {
    let mut coloring = Coloring::unit(g.n);
    coloring.refine(g);
    let mut canonizer = Canonizer {
        g,
        best: Vec::new(),
        best_labeling: [0; CANONICAL_VERTEX_LIMIT],
        has_best: false,
        automorphisms: Vec::new(),
        scratch: Vec::new(),
    };
    canonizer.search(coloring, &mut Vec::new());
    canonizer.best
}

/// True iff the non-isolated parts of `a` and `b` are isomorphic.
pub fn are_isomorphic(a: &Digraph, b: &Digraph) -> bool {
    let a = a.without_isolated();
    let b = b.without_isolated();
    if a.vertex_count() != b.vertex_count() || a.arc_count() != b.arc_count() {
        return false;
    }
    let profile = |g: &Digraph| {
        let mut d: Vec<(usize, usize)> = g
            .vertices()
            .map(|v| (g.in_degree(v), g.out_degree(v)))
            .collect();
        d.sort_unstable();
        d
    };
    if profile(&a) != profile(&b) {
        return false;
    }
    let start = JointColoring {
        left: vec![0; a.vertex_count()],
        right: vec![0; b.vertex_count()],
        cells: usize::from(a.vertex_count() > 0),
    };
    let matcher = Matcher { a: &a, b: &b };
    match matcher.refine(start) {
        Some(c) => matcher.extend(c),
        None => false,
    }
}

#[derive(Clone)]
struct JointColoring {
    left: Vec<usize>,
    right: Vec<usize>,
    cells: usize,
}

struct Matcher<'a> {
    a: &'a Digraph,
    b: &'a Digraph,
}

type Signature = (usize, Vec<usize>, Vec<usize>);

impl Matcher<'_> {
    fn signature(g: &Digraph, color: &[usize], v: Vertex) -> Signature {
        let mut out: Vec<usize> = g.out_neighbors(v).iter().map(|&w| color[w]).collect();
        let mut inc: Vec<usize> = g.in_neighbors(v).iter().map(|&w| color[w]).collect();
        out.sort_unstable();
        inc.sort_unstable();
        (color[v], out, inc)
    }

    /// Refines both colorings with a shared ranking of signatures. Returns
    /// `None` as soon as some cell has different sizes on the two sides.
    fn refine(&self, mut c: JointColoring) -> Option<JointColoring> {
        loop {
            let left: Vec<Signature> = self
                .a
                .vertices()
                .map(|v| Self::signature(self.a, &c.left, v))
                .collect();
            let right: Vec<Signature> = self
                .b
                .vertices()
                .map(|v| Self::signature(self.b, &c.right, v))
                .collect();
            let mut all: Vec<&Signature> = left.iter().chain(&right).collect();
            all.sort_unstable();
            all.dedup();
            let rank = |s: &Signature| all.binary_search(&s).expect("signature present");
            let new_left: Vec<usize> = left.iter().map(rank).collect();
            let new_right: Vec<usize> = right.iter().map(rank).collect();
            let cells = all.len();
            let mut balance = vec![0isize; cells];
            for &x in &new_left {
                balance[x] += 1;
            }
            for &x in &new_right {
                balance[x] -= 1;
            }
            if balance.iter().any(|&d| d != 0) {
                return None;
            }
            let stable = cells == c.cells;
            c = JointColoring {
                left: new_left,
                right: new_right,
                cells,
            };
            if stable {
                return Some(c);
            }
        }
    }

    fn extend(&self, c: JointColoring) -> bool {
        let n = self.a.vertex_count();
        if c.cells == n {
            // colors are now a bijection on both sides
            let mut right_of = vec![0; n];
            for (w, &col) in c.right.iter().enumerate() {
                right_of[col] = w;
            }
            return self
                .a
                .arcs()
                .iter()
                .all(|arc| self.b.has_arc(right_of[c.left[arc.tail]], right_of[c.left[arc.head]]));
        }
        let mut sizes = vec![0; c.cells];
        for &x in &c.left {
            sizes[x] += 1;
        }
        let target = (0..c.cells).find(|&x| sizes[x] > 1).expect("non-discrete coloring");
        let v = c.left.iter().position(|&x| x == target).expect("cell is non-empty");
        let mut tried: Vec<Vertex> = Vec::new();
        for w in (0..n).filter(|&w| c.right[w] == target) {
            if tried.iter().any(|&u| twins(self.b, u, w)) {
                continue;
            }
            tried.push(w);
            let child = JointColoring {
                left: individualize(&c.left, v),
                right: individualize(&c.right, w),
                cells: c.cells + 1,
            };
            if let Some(refined) = self.refine(child) {
                if self.extend(refined) {
                    return true;
                }
            }
        }
        false
    }
}

fn individualize(color: &[usize], v: Vertex) -> Vec<usize> {
    let cv = color[v];
    color
        .iter()
        .enumerate()
        .map(|(u, &c)| if c > cv || (c == cv && u != v) { c + 1 } else { c })
        .collect()
}

fn twins(g: &Digraph, u: Vertex, v: Vertex) -> bool {
    let strip = |list: &[Vertex], other: Vertex| -> Vec<Vertex> {
        list.iter().copied().filter(|&x| x != other).collect()
    };
    strip(g.out_neighbors(u), v) == strip(g.out_neighbors(v), u)
        && strip(g.in_neighbors(u), v) == strip(g.in_neighbors(v), u)
        && g.has_arc(u, v) == g.has_arc(v, u)
}
