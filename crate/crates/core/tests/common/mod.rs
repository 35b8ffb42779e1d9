//! Brute-force references shared by the integration tests. Nothing here goes
//! through the library's canonical labeling or enumeration code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use maxline::Digraph;

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let mut out = Vec::new();
    heap(n, &mut (0..n).collect(), &mut out);
    out
}

/// Least relabeled arc list over every permutation, with the vertex count.
/// Keeps isolated vertices, so `n` is part of the key.
pub fn brute_key(n: usize, arcs: &[(usize, usize)], perms: &[Vec<usize>]) -> (usize, Vec<(usize, usize)>) {
    let best = perms
        .iter()
        .map(|p| {
            let mut relabeled: Vec<(usize, usize)> = arcs.iter().map(|&(t, h)| (p[t], p[h])).collect();
            relabeled.sort_unstable();
            relabeled
        })
        .min()
        .unwrap_or_default();
    (n, best)
}

pub fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|t| (0..n).map(move |h| (t, h)))
        .filter(|(t, h)| t != h)
        .collect()
}

/// Every `k`-subset of `items`, as index vectors, in lexicographic order.
pub fn subsets(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            if len - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, len, k, &mut Vec::new(), &mut out);
    out
}

fn weakly_connected(n: usize, arcs: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] == x {
            x
        } else {
            let r = find(p, p[x]);
            p[x] = r;
            r
        }
    }
    for &(t, h) in arcs {
        let (a, b) = (find(&mut parent, t), find(&mut parent, h));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == root)
}

/// Isomorphism classes of connected digraphs with `m` arcs and no isolated
/// vertices, found by brute force over labeled arc subsets.
pub fn labeled_connected_classes(m: usize) -> BTreeSet<(usize, Vec<(usize, usize)>)> {
    let mut classes = BTreeSet::new();
    for n in 2..=m + 1 {
        let pairs = ordered_pairs(n);
        let perms = permutations(n);
        for subset in subsets(pairs.len(), m) {
            let arcs: Vec<(usize, usize)> = subset.iter().map(|&i| pairs[i]).collect();
            let mut touched = vec![false; n];
            for &(t, h) in &arcs {
                touched[t] = true;
                touched[h] = true;
            }
            if touched.iter().all(|&x| x) && weakly_connected(n, &arcs) {
                classes.insert(brute_key(n, &arcs, &perms));
            }
        }
    }
    classes
}

pub fn arc_pairs(g: &Digraph) -> Vec<(usize, usize)> {
    g.arcs().iter().map(|a| (a.tail, a.head)).collect()
}

pub fn key_of(g: &Digraph) -> (usize, Vec<(usize, usize)>) {
    brute_key(g.vertex_count(), &arc_pairs(g), &permutations(g.vertex_count()))
}
