//! Simple loop-free digraphs over dense vertex indices.
//!
//! A [`Digraph`] is immutable once built. Every operation that changes the
//! structure returns a new value, so graphs can be shared freely between
//! worker threads.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// An ordered pair `(tail, head)` with `tail != head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub tail: Vertex,
    pub head: Vertex,
}

impl Arc {
    pub const fn new(tail: Vertex, head: Vertex) -> Self {
        Arc { tail, head }
    }

    pub const fn reversed(self) -> Self {
        Arc {
            tail: self.head,
            head: self.tail,
        }
    }
}

impl From<(Vertex, Vertex)> for Arc {
    fn from((tail, head): (Vertex, Vertex)) -> Self {
        Arc { tail, head }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.tail, self.head)
    }
}

/// Simple loop-free digraph on vertices `0..n`.
///
/// Arcs are kept sorted lexicographically, and both adjacency lists are
/// strictly increasing, so equal arc sets always produce equal values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    arcs: Vec<Arc>,
    out_adj: Vec<Vec<Vertex>>,
    in_adj: Vec<Vec<Vertex>>,
}

impl Digraph {
    /// The digraph on `n` vertices with no arcs.
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            arcs: Vec::new(),
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
        }
    }

    /// Builds a digraph from `(tail, head)` pairs, rejecting loops,
    /// duplicates and out-of-range endpoints. Input order is irrelevant.
    pub fn from_arcs<I, A>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = A>,
        A: Into<Arc>,
    {
        let mut list: Vec<Arc> = Vec::new();
        for arc in arcs {
            let arc = arc.into();
            for v in [arc.tail, arc.head] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if arc.tail == arc.head {
                return Err(Error::LoopArc { vertex: arc.tail });
            }
            list.push(arc);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateArc {
                tail: w[0].tail,
                head: w[0].head,
            });
        }
        Ok(Self::from_sorted_unchecked(n, list))
    }

    /// `arcs` must be sorted, duplicate free, loop free and in range.
    pub(crate) fn from_sorted_unchecked(n: usize, arcs: Vec<Arc>) -> Self {
        debug_assert!(arcs.windows(2).all(|w| w[0] < w[1]));
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for a in &arcs {
            debug_assert!(a.tail != a.head && a.tail < n && a.head < n);
            out_adj[a.tail].push(a.head);
            in_adj[a.head].push(a.tail);
        }
        // out lists come out sorted from the arc order; in lists do too because
        // tails are visited in increasing order.
        Digraph {
            n,
            arcs,
            out_adj,
            in_adj,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs in lexicographic `(tail, head)` order.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_adj[v].len()
    }

    /// `(in_degree, out_degree)` of `v`.
    pub fn degrees(&self, v: Vertex) -> Result<(usize, usize)> {
        self.check_vertex(v)?;
        Ok((self.in_degree(v), self.out_degree(v)))
    }

    pub fn has_arc(&self, tail: Vertex, head: Vertex) -> bool {
        tail < self.n && self.out_adj[tail].binary_search(&head).is_ok()
    }

    pub fn is_isolated(&self, v: Vertex) -> bool {
        self.out_adj[v].is_empty() && self.in_adj[v].is_empty()
    }

    pub fn transpose(&self) -> Self {
        let mut arcs: Vec<Arc> = self.arcs.iter().map(|a| a.reversed()).collect();
        arcs.sort_unstable();
        Self::from_sorted_unchecked(self.n, arcs)
    }

    /// Deletes `v` with its incident arcs. Vertices above `v` shift down by one.
    pub fn remove_vertex(&self, v: Vertex) -> Result<Self> {
        self.check_vertex(v)?;
        let shift = |x: Vertex| if x > v { x - 1 } else { x };
        let arcs = self
            .arcs
            .iter()
            .filter(|a| a.tail != v && a.head != v)
            .map(|a| Arc::new(shift(a.tail), shift(a.head)))
            .collect();
        Ok(Self::from_sorted_unchecked(self.n - 1, arcs))
    }

    pub fn remove_arc(&self, tail: Vertex, head: Vertex) -> Result<Self> {
        self.check_vertex(tail)?;
        self.check_vertex(head)?;
        let target = Arc::new(tail, head);
        let pos = self
            .arcs
            .binary_search(&target)
            .map_err(|_| Error::ArcNotPresent { tail, head })?;
        let mut arcs = self.arcs.clone();
        arcs.remove(pos);
        Ok(Self::from_sorted_unchecked(self.n, arcs))
    }

    /// Returns a copy with one more arc.
    pub fn with_arc(&self, tail: Vertex, head: Vertex) -> Result<Self> {
        self.check_vertex(tail)?;
        self.check_vertex(head)?;
        if tail == head {
            return Err(Error::LoopArc { vertex: tail });
        }
        let arc = Arc::new(tail, head);
        match self.arcs.binary_search(&arc) {
            Ok(_) => Err(Error::DuplicateArc { tail, head }),
            Err(pos) => {
                let mut arcs = self.arcs.clone();
                arcs.insert(pos, arc);
                Ok(Self::from_sorted_unchecked(self.n, arcs))
            }
        }
    }

    /// Weak connectivity. The graphs on zero or one vertex count as connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in self.out_adj[v].iter().chain(&self.in_adj[v]) {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.n
    }

    /// All pairs `(u, v)` with `u < v` such that both `(u, v)` and `(v, u)`
    /// are arcs, in lexicographic order.
    pub fn two_circuits(&self) -> Vec<(Vertex, Vertex)> {
        self.arcs
            .iter()
            .filter(|a| a.tail < a.head && self.has_arc(a.head, a.tail))
            .map(|a| (a.tail, a.head))
            .collect()
    }

    /// Places `other` after `self`; its vertex `v` becomes `self.n + v`.
    pub fn disjoint_union(&self, other: &Digraph) -> Self {
        let off = self.n;
        let arcs = self
            .arcs
            .iter()
            .copied()
            .chain(other.arcs.iter().map(|a| Arc::new(a.tail + off, a.head + off)))
            .collect();
        Self::from_sorted_unchecked(self.n + other.n, arcs)
    }

    /// Applies the vertex permutation `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidSize {
                size: perm.len(),
                reason: "permutation length must equal the vertex count",
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n {
                return Err(Error::VertexOutOfRange { vertex: p, n: self.n });
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidSize {
                    size: p,
                    reason: "relabeling is not a permutation",
                });
            }
        }
        let mut arcs: Vec<Arc> = self
            .arcs
            .iter()
            .map(|a| Arc::new(perm[a.tail], perm[a.head]))
            .collect();
        arcs.sort_unstable();
        Ok(Self::from_sorted_unchecked(self.n, arcs))
    }

    /// Drops isolated vertices, keeping the relative order of the rest.
    pub fn without_isolated(&self) -> Self {
        let mut index = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in self.vertices() {
            if !self.is_isolated(v) {
                index[v] = next;
                next += 1;
            }
        }
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc::new(index[a.tail], index[a.head]))
            .collect();
        Self::from_sorted_unchecked(next, arcs)
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }
}
