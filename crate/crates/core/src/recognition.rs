//! Line digraph recognition by forbidden patterns, and root reconstruction.
//!
//! A loop-free digraph is the line digraph of a simple loop-free digraph
//! exactly when it contains none of the following embeddings (all listed
//! vertices pairwise distinct):
//!
//! | pattern   | tuple          | arcs                                   |
//! |-----------|----------------|----------------------------------------|
//! | Eight     | `(v, a, b)`    | `v->a, a->v, v->b, b->v`               |
//! | Shortcut  | `(x, y, z)`    | `x->y, y->z, x->z`                     |
//! | Deviation | `(u, a, b, v)` | `u->a, a->v, u->b, b->v`               |
//! | BadZ      | `(a, b, c, d)` | `a->c, b->c, b->d`, with `a->d` absent |
//!
//! Each pattern has a [`PatternDetector`]; a [`DetectorRegistry`] runs them
//! in a fixed order so the reported witness never depends on scheduling.

use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::digraph::{Arc, Digraph, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternKind {
    Eight,
    Shortcut,
    Deviation,
    BadZ,
}

impl PatternKind {
    pub const ALL: [PatternKind; 4] = [
        PatternKind::Eight,
        PatternKind::Shortcut,
        PatternKind::Deviation,
        PatternKind::BadZ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PatternKind::Eight => "eight",
            PatternKind::Shortcut => "shortcut",
            PatternKind::Deviation => "deviation",
            PatternKind::BadZ => "bad-z",
        }
    }

    fn arity(self) -> usize {
        match self {
            PatternKind::Eight | PatternKind::Shortcut => 3,
            PatternKind::Deviation | PatternKind::BadZ => 4,
        }
    }
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A concrete embedding of a forbidden pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternWitness {
    pub kind: PatternKind,
    pub vertices: Vec<Vertex>,
}

impl PatternWitness {
    /// Arcs that must be present in the host.
    pub fn required_arcs(&self) -> Vec<Arc> {
        let v = &self.vertices;
        let pairs: &[(usize, usize)] = match self.kind {
            PatternKind::Eight => &[(0, 1), (1, 0), (0, 2), (2, 0)],
            PatternKind::Shortcut => &[(0, 1), (1, 2), (0, 2)],
            PatternKind::Deviation => &[(0, 1), (1, 3), (0, 2), (2, 3)],
            PatternKind::BadZ => &[(0, 2), (1, 2), (1, 3)],
        };
        pairs.iter().map(|&(i, j)| Arc::new(v[i], v[j])).collect()
    }

    /// Arcs that must be absent from the host.
    pub fn forbidden_arcs(&self) -> Vec<Arc> {
        match self.kind {
            PatternKind::BadZ => vec![Arc::new(self.vertices[0], self.vertices[3])],
            _ => Vec::new(),
        }
    }

    /// Re-checks the embedding against `host`.
    pub fn validate(&self, host: &Digraph) -> bool {
        let v = &self.vertices;
        if v.len() != self.kind.arity() || v.iter().any(|&x| x >= host.vertex_count()) {
            return false;
        }
        let distinct = v
            .iter()
            .enumerate()
            .all(|(i, x)| v[..i].iter().all(|y| y != x));
        distinct
            && self
                .required_arcs()
                .iter()
                .all(|a| host.has_arc(a.tail, a.head))
            && self
                .forbidden_arcs()
                .iter()
                .all(|a| !host.has_arc(a.tail, a.head))
    }
}

impl fmt::Display for PatternWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for v in &self.vertices {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognitionVerdict {
    pub is_line: bool,
    pub witness: Option<PatternWitness>,
}

/// Searches for one forbidden pattern. Implementations return the
/// lexicographically first embedding of their tuple, or `None`.
pub trait PatternDetector: Send + Sync {
    fn kind(&self) -> PatternKind;

    fn name(&self) -> &'static str {
        self.kind().name()
    }

    fn find(&self, host: &Digraph) -> Option<PatternWitness>;
}

pub struct EightDetector;
pub struct ShortcutDetector;
pub struct DeviationDetector;
pub struct BadZDetector;

impl PatternDetector for EightDetector {
    fn kind(&self) -> PatternKind {
        PatternKind::Eight
    }

    fn find(&self, h: &Digraph) -> Option<PatternWitness> {
        h.vertices().find_map(|v| {
            let mut partners = h
                .out_neighbors(v)
                .iter()
                .copied()
                .filter(|&a| h.has_arc(a, v));
            let a = partners.next()?;
            let b = partners.next()?;
            Some(witness(PatternKind::Eight, &[v, a, b]))
        })
    }
}

impl PatternDetector for ShortcutDetector {
    fn kind(&self) -> PatternKind {
        PatternKind::Shortcut
    }

    fn find(&self, h: &Digraph) -> Option<PatternWitness> {
        for x in h.vertices() {
            for &y in h.out_neighbors(x) {
                for &z in h.out_neighbors(y) {
                    if z != x && h.has_arc(x, z) {
                        return Some(witness(PatternKind::Shortcut, &[x, y, z]));
                    }
                }
            }
        }
        None
    }
}

impl PatternDetector for DeviationDetector {
    fn kind(&self) -> PatternKind {
        PatternKind::Deviation
    }

    fn find(&self, h: &Digraph) -> Option<PatternWitness> {
        for u in h.vertices() {
            let succ = h.out_neighbors(u);
            for &a in succ {
                for &b in succ {
                    if b == a {
                        continue;
                    }
                    // common successors of a and b other than u
                    let hit = intersect(h.out_neighbors(a), h.out_neighbors(b)).find(|&v| v != u);
                    if let Some(v) = hit {
                        return Some(witness(PatternKind::Deviation, &[u, a, b, v]));
                    }
                }
            }
        }
        None
    }
}

impl PatternDetector for BadZDetector {
    fn kind(&self) -> PatternKind {
        PatternKind::BadZ
    }

    fn find(&self, h: &Digraph) -> Option<PatternWitness> {
        for a in h.vertices() {
            let succ_a = h.out_neighbors(a);
            // every b sharing a successor with a, in increasing order
            let mut partners: Vec<Vertex> = succ_a
                .iter()
                .flat_map(|&c| h.in_neighbors(c).iter().copied())
                .filter(|&b| b != a)
                .collect();
            partners.sort_unstable();
            partners.dedup();
            for b in partners {
                for c in intersect(succ_a, h.out_neighbors(b)) {
                    for &d in h.out_neighbors(b) {
                        if d != c && d != a && !h.has_arc(a, d) {
                            return Some(witness(PatternKind::BadZ, &[a, b, c, d]));
                        }
                    }
                }
            }
        }
        None
    }
}

fn witness(kind: PatternKind, vertices: &[Vertex]) -> PatternWitness {
    PatternWitness {
        kind,
        vertices: vertices.to_vec(),
    }
}

/// Merge-style intersection of two strictly increasing lists.
fn intersect<'a>(xs: &'a [Vertex], ys: &'a [Vertex]) -> impl Iterator<Item = Vertex> + 'a {
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || {
        while i < xs.len() && j < ys.len() {
            match xs[i].cmp(&ys[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                    return Some(xs[i - 1]);
                }
            }
        }
        None
    })
}

/// Ordered collection of pattern detectors, addressable by name.
pub struct DetectorRegistry {
    detectors: Vec<Box<dyn PatternDetector>>,
}

impl Default for DetectorRegistry {
    /// Eight, Shortcut, Deviation, BadZ, in that order.
    fn default() -> Self {
        let mut registry = DetectorRegistry::empty();
        registry.register(Box::new(EightDetector));
        registry.register(Box::new(ShortcutDetector));
        registry.register(Box::new(DeviationDetector));
        registry.register(Box::new(BadZDetector));
        registry
    }
}

impl DetectorRegistry {
    pub fn empty() -> Self {
        DetectorRegistry {
            detectors: Vec::new(),
        }
    }

    /// Appends a detector. A detector with the same name is replaced in place.
    pub fn register(&mut self, detector: Box<dyn PatternDetector>) {
        match self.detectors.iter().position(|d| d.name() == detector.name()) {
            Some(i) => self.detectors[i] = detector,
            None => self.detectors.push(detector),
        }
    }

    pub fn get(&self, name: &str) -> Result<&dyn PatternDetector> {
        self.detectors
            .iter()
            .find(|d| d.name() == name)
            .map(|d| d.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: "pattern detector",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.detectors.iter().map(|d| d.name()).collect()
    }

    /// First witness in registration order.
    pub fn detect(&self, host: &Digraph) -> RecognitionVerdict {
        let witness = self.detectors.iter().find_map(|d| d.find(host));
        RecognitionVerdict {
            is_line: witness.is_none(),
            witness,
        }
    }

    /// Same verdict as [`detect`](Self::detect), running every detector on
    /// its own thread. The winner is picked by registration order.
    pub fn detect_parallel(&self, host: &Digraph) -> RecognitionVerdict {
        use rayon::prelude::*;
        let found: Vec<Option<PatternWitness>> =
            self.detectors.par_iter().map(|d| d.find(host)).collect();
        let witness = found.into_iter().flatten().next();
        RecognitionVerdict {
            is_line: witness.is_none(),
            witness,
        }
    }
}

pub fn find_eight(h: &Digraph) -> Option<PatternWitness> {
    EightDetector.find(h)
}

pub fn find_shortcut(h: &Digraph) -> Option<PatternWitness> {
    ShortcutDetector.find(h)
}

pub fn find_deviation(h: &Digraph) -> Option<PatternWitness> {
    DeviationDetector.find(h)
}

pub fn find_bad_z(h: &Digraph) -> Option<PatternWitness> {
    BadZDetector.find(h)
}

pub fn is_line_digraph(h: &Digraph) -> RecognitionVerdict {
    DetectorRegistry::default().detect(h)
}

/// Rebuilds a root `G` with `L(G)` isomorphic to `h`.
///
/// Each vertex `i` of `h` gets a tail symbol and a head symbol; every arc
/// `(i, j)` glues the head of `i` to the tail of `j`. The glued classes are
/// the root vertices, numbered by first appearance, and vertex `i` of `h`
/// becomes the root arc `(class(tail_i), class(head_i))`.
pub fn reconstruct_root(h: &Digraph) -> Result<Digraph> {
    if let Some(w) = is_line_digraph(h).witness {
        return Err(Error::NotLineDigraph(w));
    }
    let n = h.vertex_count();
    let tail = |i: usize| 2 * i;
    let head = |i: usize| 2 * i + 1;
    let mut classes = UnionFind::<usize>::new(2 * n);
    for a in h.arcs() {
        classes.union(head(a.tail), tail(a.head));
    }
    let mut ids = vec![usize::MAX; 2 * n];
    let mut next = 0;
    let mut class_id = |symbol: usize| {
        let rep = classes.find(symbol);
        if ids[rep] == usize::MAX {
            ids[rep] = next;
            next += 1;
        }
        ids[rep]
    };
    let mut arcs = Vec::with_capacity(n);
    for i in 0..n {
        let t = class_id(tail(i));
        let hd = class_id(head(i));
        arcs.push((t, hd));
    }
    Digraph::from_arcs(next, arcs).map_err(|e| {
        Error::InternalInconsistency(format!(
            "endpoint identification produced an invalid root ({e}) for an accepted digraph"
        ))
    })
}
