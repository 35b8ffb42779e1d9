//! Enumeration of connected roots up to isomorphism, and machine checks of
//! the maximum-`phi` results over them.
//!
//! Classes with `k + 1` arcs are grown from the classes with `k` arcs by
//! adding one arc, either between existing vertices or to a fresh vertex,
//! and deduplicated by canonical form. Every connected digraph with `k + 1`
//! arcs is reached this way: dropping an arc of a 2-circuit, an arc off a
//! spanning tree, or a leaf arc (with its leaf) leaves a connected digraph
//! with `k` arcs.
//!
//! Only connected roots are searched. That loses nothing, because the
//! closed-form maximum is strictly superadditive
//! (`max_arcs(k) + max_arcs(m - k) < max_arcs(m)`), so no disconnected
//! digraph can tie a connected optimum.
//!
//! Search strategies implement [`SearchStrategy`] and are looked up by name
//! in a [`StrategyRegistry`]. Work inside one level is split across a rayon
//! pool and merged through sets, so results do not depend on the worker
//! count.

use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::extremal::check_arc_degree_bound;
use crate::iso::{canonical_arcs, CanonicalForm, SmallDigraph, CANONICAL_VERTEX_LIMIT};
use crate::line::{line_digraph, max_arcs};

pub const EXHAUSTIVE_LIMIT: usize = 7;
pub const BRANCH_AND_BOUND_LIMIT: usize = 9;

/// Largest arc count the branch-and-bound strategy is cross-checked against
/// exhaustive search on before it runs past the exhaustive limit.
const CROSS_CHECK_UP_TO: usize = 6;

/// Packed canonical arc list: bits 0..5 hold the vertex count, then one byte
/// per arc (tail in the high nibble).
type PackedForm = u128;

fn pack(n: usize, arcs: &[(u8, u8)]) -> PackedForm {
    debug_assert!(arcs.len() <= 15 && n <= CANONICAL_VERTEX_LIMIT);
    arcs.iter().enumerate().fold(n as u128, |acc, (i, &(t, h))| {
        acc | (u128::from(t << 4 | h) << (5 + 8 * i))
    })
}

fn unpack(key: PackedForm, arc_count: usize) -> SmallDigraph {
    let mut g = SmallDigraph::new((key & 0x1f) as usize);
    for i in 0..arc_count {
        let byte = (key >> (5 + 8 * i)) as u8;
        g.add_arc(usize::from(byte >> 4), usize::from(byte & 0xf));
    }
    g
}

fn canonical_key(g: &SmallDigraph) -> PackedForm {
    pack(g.n, &canonical_arcs(g))
}

fn form_of(key: PackedForm, arc_count: usize) -> CanonicalForm {
    let g = unpack(key, arc_count);
    let arcs: Vec<(u8, u8)> = g.arcs().map(|(t, h)| (t as u8, h as u8)).collect();
    CanonicalForm::from_small(&g, &arcs)
}

/// Every one-arc extension of `g` that stays connected, as `(tail, head)`;
/// an endpoint equal to `g.n` is a fresh vertex.
fn extensions(g: &SmallDigraph) -> impl Iterator<Item = (usize, usize)> + '_ {
    let n = g.n;
    let inner = (0..n)
        .flat_map(move |t| (0..n).map(move |h| (t, h)))
        .filter(move |&(t, h)| t != h && !g.has_arc(t, h));
    let fresh = (0..n)
        .filter(move |_| n < CANONICAL_VERTEX_LIMIT)
        .flat_map(move |v| [(v, n), (n, v)]);
    inner.chain(fresh)
}

fn extend(g: &SmallDigraph, t: usize, h: usize) -> SmallDigraph {
    let mut child = *g;
    child.n = child.n.max(t + 1).max(h + 1);
    child.add_arc(t, h);
    child
}

/// How many worker threads a search may use. `jobs <= 1` runs on the
/// calling thread without a pool.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Workers {
    pub jobs: usize,
}

impl Default for Workers {
    fn default() -> Self {
        Workers { jobs: 1 }
    }
}

impl Workers {
    pub fn new(jobs: usize) -> Self {
        Workers { jobs: jobs.max(1) }
    }

    fn run<T: Send>(&self, task: impl FnOnce() -> T + Send) -> Result<T> {
        if self.jobs <= 1 {
            return Ok(task());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| Error::InternalInconsistency(format!("thread pool: {e}")))?;
        Ok(pool.install(task))
    }

    /// Canonical keys of all kept children of `parents`, sorted.
    fn grow<F>(&self, parents: &[PackedForm], arc_count: usize, keep: F) -> Vec<PackedForm>
    where
        F: Fn(&SmallDigraph, u64) -> bool + Sync,
    {
        let children_of = |set: &mut HashSet<PackedForm>, &key: &PackedForm| {
            let g = unpack(key, arc_count);
            let base = small_phi(&g);
            for (t, h) in extensions(&g) {
                let child = extend(&g, t, h);
                let gained = base + (child.in_degree(t) + child.out_degree(h)) as u64;
                if keep(&child, gained) {
                    set.insert(canonical_key(&child));
                }
            }
        };
        let set = if self.jobs <= 1 {
            parents.iter().fold(HashSet::new(), |mut set, p| {
                children_of(&mut set, p);
                set
            })
        } else {
            parents
                .par_iter()
                .fold(HashSet::new, |mut set, p| {
                    children_of(&mut set, p);
                    set
                })
                .reduce(HashSet::new, |a, b| {
                    let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                    big.extend(small);
                    big
                })
        };
        let mut keys: Vec<PackedForm> = set.into_iter().collect();
        keys.sort_unstable();
        keys
    }
}

fn small_phi(g: &SmallDigraph) -> u64 {
    (0..g.n)
        .map(|v| (g.in_degree(v) * g.out_degree(v)) as u64)
        .sum()
}

fn single_arc() -> PackedForm {
    let mut g = SmallDigraph::new(2);
    g.add_arc(0, 1);
    canonical_key(&g)
}

fn check_arc_count(m: usize, limit: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidSize {
            size: m,
            reason: "roots need at least one arc",
        });
    }
    if m > limit {
        return Err(Error::TooLarge {
            what: "arc count",
            value: m,
            limit,
        });
    }
    Ok(())
}

/// All classes of connected roots with exactly `m` arcs, as packed keys.
fn all_classes(m: usize, workers: &Workers) -> Result<Vec<PackedForm>> {
    check_arc_count(m, EXHAUSTIVE_LIMIT)?;
    workers.run(|| {
        let mut level = vec![single_arc()];
        for k in 1..m {
            level = workers.grow(&level, k, |_, _| true);
        }
        level
    })
}

/// Delivers one representative per isomorphism class of connected simple
/// loop-free digraphs with exactly `m` arcs and no isolated vertices, in
/// canonical-form order. Returns the number of classes.
pub fn enumerate_connected<F>(m: usize, sink: F) -> Result<usize>
where
    F: FnMut(&Digraph),
{
    enumerate_connected_with(m, &Workers::default(), sink)
}

pub fn enumerate_connected_with<F>(m: usize, workers: &Workers, mut sink: F) -> Result<usize>
where
    F: FnMut(&Digraph),
{
    let mut forms: Vec<CanonicalForm> = all_classes(m, workers)?
        .into_iter()
        .map(|k| form_of(k, m))
        .collect();
    forms.sort_unstable();
    for f in &forms {
        sink(&f.to_digraph());
    }
    Ok(forms.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    BranchAndBound,
}

/// What a strategy found over the roots with `m` arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub max_phi: u64,
    /// Every class reaching `max_phi`, sorted.
    pub optimal: Vec<CanonicalForm>,
    pub roots_examined: u64,
    /// For odd `m >= 7` and complete searches: number of roots whose line
    /// digraph has no vertex of total degree at most `(m - 1) / 2`.
    pub degree_counterexamples: Option<u64>,
}

pub trait SearchStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn mode(&self) -> SearchMode;

    /// Largest supported arc count.
    fn limit(&self) -> usize;

    fn search(&self, m: usize, workers: &Workers) -> Result<SearchOutcome>;
}

/// Every class is generated and scored.
pub struct Exhaustive;

/// Classes are grown level by level, dropping partial digraphs whose best
/// possible completion stays below a greedy incumbent.
///
/// Adding an arc `(u, v)` raises `phi` by `d-(u) + d+(v)`. With `k` arcs
/// placed, maximum in- and out-degrees `din`, `dout`, the `j`-th further arc
/// (from 0) gains at most `min(din + dout + j + min(j, 1), k + j + 1)`: the
/// first term because the earlier new arcs can raise `d-(u) + d+(v)` by one
/// each, plus one for a reversed arc counted on both sides; the second
/// because arcs into `u` and out of `v` share at most that reversed arc.
pub struct BranchAndBound;

fn collect_outcome(
    m: usize,
    keys: &[PackedForm],
    workers: &Workers,
    degree_lemma: bool,
) -> Result<SearchOutcome> {
    let scored: Vec<(u64, bool)> = workers.run(|| {
        let score = |&key: &PackedForm| {
            let g = unpack(key, m);
            let low_degree = !degree_lemma || has_low_degree_line_vertex(&g.to_digraph());
            (small_phi(&g), low_degree)
        };
        if workers.jobs <= 1 {
            keys.iter().map(score).collect()
        } else {
            keys.par_iter().map(score).collect()
        }
    })?;
    let max_phi = scored.iter().map(|s| s.0).max().unwrap_or(0);
    let mut optimal: Vec<CanonicalForm> = keys
        .iter()
        .zip(&scored)
        .filter(|(_, s)| s.0 == max_phi)
        .map(|(&k, _)| form_of(k, m))
        .collect();
    optimal.sort_unstable();
    let degree_counterexamples =
        degree_lemma.then(|| scored.iter().filter(|s| !s.1).count() as u64);
    Ok(SearchOutcome {
        max_phi,
        optimal,
        roots_examined: keys.len() as u64,
        degree_counterexamples,
    })
}

/// True iff `L(root)` has a vertex of total degree at most `(m - 1) / 2`.
pub fn has_low_degree_line_vertex(root: &Digraph) -> bool {
    let m = root.arc_count();
    let line = line_digraph(root).graph;
    line.vertices()
        .any(|v| line.in_degree(v) + line.out_degree(v) <= (m.saturating_sub(1)) / 2)
}

fn degree_lemma_applies(m: usize) -> bool {
    m >= 7 && m % 2 == 1
}

impl SearchStrategy for Exhaustive {
    fn name(&self) -> &'static str {
        "exhaustive"
    }

    fn mode(&self) -> SearchMode {
        SearchMode::Exhaustive
    }

    fn limit(&self) -> usize {
        EXHAUSTIVE_LIMIT
    }

    fn search(&self, m: usize, workers: &Workers) -> Result<SearchOutcome> {
        let keys = all_classes(m, workers)?;
        collect_outcome(m, &keys, workers, degree_lemma_applies(m))
    }
}

impl BranchAndBound {
    /// Upper bound on `phi` over all completions of `g` to `m` arcs.
    fn completion_bound(g: &SmallDigraph, m: usize) -> u64 {
        let k = g.arcs().count();
        let max_in = (0..g.n).map(|v| g.in_degree(v)).max().unwrap_or(0);
        let max_out = (0..g.n).map(|v| g.out_degree(v)).max().unwrap_or(0);
        let gains: usize = (0..m.saturating_sub(k))
            .map(|j| (max_in + max_out + j + j.min(1)).min(k + j + 1))
            .sum();
        small_phi(g) + gains as u64
    }

    /// Greedy completion: always add the arc with the largest gain.
    fn incumbent(m: usize) -> u64 {
        let mut g = SmallDigraph::new(2);
        g.add_arc(0, 1);
        for _ in 1..m {
            let best = extensions(&g)
                .map(|(t, h)| {
                    let gain = if t < g.n && h < g.n {
                        g.in_degree(t) + g.out_degree(h)
                    } else if t < g.n {
                        g.in_degree(t)
                    } else {
                        g.out_degree(h)
                    };
                    (gain, t, h)
                })
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)).then(b.2.cmp(&a.2)));
            match best {
                Some((_, t, h)) => g = extend(&g, t, h),
                None => break,
            }
        }
        small_phi(&g)
    }

    fn cross_check(workers: &Workers) -> Result<()> {
        for m in 1..=CROSS_CHECK_UP_TO {
            let full = Exhaustive.search(m, workers)?;
            let pruned = BranchAndBound.run(m, workers)?;
            if full.max_phi != pruned.max_phi || full.optimal != pruned.optimal {
                return Err(Error::InternalInconsistency(format!(
                    "branch and bound disagrees with exhaustive search at m = {m}"
                )));
            }
        }
        Ok(())
    }

    fn run(&self, m: usize, workers: &Workers) -> Result<SearchOutcome> {
        check_arc_count(m, BRANCH_AND_BOUND_LIMIT)?;
        let target = Self::incumbent(m);
        let keys = workers.run(|| {
            let mut level = vec![single_arc()];
            for k in 1..m {
                let last = k + 1 == m;
                level = workers.grow(&level, k, |child, child_phi| {
                    if last {
                        child_phi >= target
                    } else {
                        Self::completion_bound(child, m) >= target
                    }
                });
            }
            level
        })?;
        collect_outcome(m, &keys, workers, false)
    }
}

impl SearchStrategy for BranchAndBound {
    fn name(&self) -> &'static str {
        "bnb"
    }

    fn mode(&self) -> SearchMode {
        SearchMode::BranchAndBound
    }

    fn limit(&self) -> usize {
        BRANCH_AND_BOUND_LIMIT
    }

    /// Beyond the exhaustive limit, the pruning is first checked against
    /// exhaustive search on every `m <= 6`.
    fn search(&self, m: usize, workers: &Workers) -> Result<SearchOutcome> {
        check_arc_count(m, BRANCH_AND_BOUND_LIMIT)?;
        if m > EXHAUSTIVE_LIMIT {
            Self::cross_check(workers)?;
        }
        self.run(m, workers)
    }
}

/// Search strategies by name.
pub struct StrategyRegistry {
    strategies: Vec<Box<dyn SearchStrategy>>,
    aliases: Vec<(&'static str, &'static str)>,
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        let mut registry = StrategyRegistry {
            strategies: Vec::new(),
            aliases: vec![("branch-and-bound", "bnb"), ("branch_and_bound", "bnb")],
        };
        registry.register(Box::new(Exhaustive));
        registry.register(Box::new(BranchAndBound));
        registry
    }
}

impl StrategyRegistry {
    /// Adds a strategy, replacing any registered under the same name.
    pub fn register(&mut self, strategy: Box<dyn SearchStrategy>) {
        self.strategies.retain(|s| s.name() != strategy.name());
        self.strategies.push(strategy);
    }

    pub fn get(&self, name: &str) -> Result<&dyn SearchStrategy> {
        let name = self
            .aliases
            .iter()
            .find(|(alias, _)| *alias == name)
            .map_or(name, |(_, target)| target);
        self.strategies
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: "search strategy",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.strategies.iter().map(|s| s.name()).collect()
    }
}

/// Outcome of one lemma check over the optima (or over all roots).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Pass,
    Fail,
    NotApplicable,
}

impl Check {
    fn when(applies: bool, holds: impl FnOnce() -> bool) -> Self {
        match (applies, applies && holds()) {
            (false, _) => Check::NotApplicable,
            (true, true) => Check::Pass,
            (true, false) => Check::Fail,
        }
    }

    pub fn is_failure(self) -> bool {
        self == Check::Fail
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaChecks {
    /// Every optimum contains a 2-circuit (`m >= 4`).
    pub two_circuit_present: Check,
    /// Every optimum has a vertex incident to all arcs (`m >= 7`).
    pub star_incidence: Check,
    /// Every optimum passes [`check_arc_degree_bound`].
    pub arc_degree_bound: Check,
    /// Every root's line digraph has a vertex of total degree at most
    /// `(m - 1) / 2` (odd `m >= 7`, complete searches only).
    pub odd_order_degree_lemma: Check,
}

impl LemmaChecks {
    pub fn all_hold(&self) -> bool {
        ![
            self.two_circuit_present,
            self.star_incidence,
            self.arc_degree_bound,
            self.odd_order_degree_lemma,
        ]
        .iter()
        .any(|c| c.is_failure())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub m: usize,
    pub max_phi_found: u64,
    pub formula_value: u64,
    pub optimal_classes: Vec<CanonicalForm>,
    pub lemma_checks: LemmaChecks,
    pub roots_examined: u64,
    pub mode: SearchMode,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    /// True when the search matches the closed form and no check failed.
    pub fn consistent(&self) -> bool {
        self.max_phi_found == self.formula_value && self.lemma_checks.all_hold()
    }
}

fn has_universal_vertex(g: &Digraph) -> bool {
    g.vertices().any(|v| {
        g.arcs()
            .iter()
            .all(|a| a.tail == v || a.head == v)
    })
}

/// Searches all connected roots with `m` arcs using the named strategy.
pub fn verify_max(m: usize, mode: &str, workers: &Workers) -> Result<VerificationReport> {
    let registry = StrategyRegistry::default();
    verify_max_with(registry.get(mode)?, m, workers)
}

pub fn verify_max_with(
    strategy: &dyn SearchStrategy,
    m: usize,
    workers: &Workers,
) -> Result<VerificationReport> {
    check_arc_count(m, strategy.limit())?;
    let started = Instant::now();
    let outcome = strategy.search(m, workers)?;
    let formula_value = max_arcs(m as u64);
    if outcome.max_phi > formula_value {
        return Err(Error::BoundViolated {
            m,
            found: outcome.max_phi,
            bound: formula_value,
        });
    }
    let optima: Vec<Digraph> = outcome.optimal.iter().map(|f| f.to_digraph()).collect();
    let lemma_checks = LemmaChecks {
        two_circuit_present: Check::when(m >= 4, || {
            optima.iter().all(|g| !g.two_circuits().is_empty())
        }),
        star_incidence: Check::when(m >= 7, || optima.iter().all(has_universal_vertex)),
        arc_degree_bound: Check::when(true, || optima.iter().all(check_arc_degree_bound)),
        odd_order_degree_lemma: match outcome.degree_counterexamples {
            None => Check::NotApplicable,
            Some(0) => Check::Pass,
            Some(_) => Check::Fail,
        },
    };
    Ok(VerificationReport {
        m,
        max_phi_found: outcome.max_phi,
        formula_value,
        optimal_classes: outcome.optimal,
        lemma_checks,
        roots_examined: outcome.roots_examined,
        mode: strategy.mode(),
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}
