#![allow(dead_code)]

use std::collections::BTreeMap;

use netmotifs::graphio::{normalize, DirectedGraph, RawEdgeList};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Erdős–Rényi style digraph: each ordered pair present with probability `p`.
pub fn random_digraph(n: u64, p: f64, seed: u64) -> Option<DirectedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    normalize(&RawEdgeList::from_pairs(pairs)).ok().map(|(g, _)| g)
}

pub fn graph_from(edges: &[(u64, u64)]) -> DirectedGraph {
    normalize(&RawEdgeList::from_pairs(edges.iter().copied()))
        .unwrap()
        .0
}

fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Minimum row-major bit value over relabelings of a small adjacency matrix.
pub fn brute_canonical(m: &[Vec<bool>]) -> u32 {
    let k = m.len();
    all_permutations(k)
        .iter()
        .map(|p| {
            let mut bits = 0u32;
            for i in 0..k {
                for j in 0..k {
                    bits <<= 1;
                    if m[p[i]][p[j]] {
                        bits |= 1;
                    }
                }
            }
            bits
        })
        .min()
        .unwrap()
}

fn weakly_connected(m: &[Vec<bool>]) -> bool {
    let k = m.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for i in 0..k {
        for j in 0..k {
            if m[i][j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let root = find(&mut parent, 0);
    (0..k).all(|i| find(&mut parent, i) == root)
}

fn subsets(n: u32, k: usize, start: u32, cur: &mut Vec<u32>, out: &mut dyn FnMut(&[u32])) {
    if cur.len() == k {
        out(cur);
        return;
    }
    for v in start..n {
        cur.push(v);
        subsets(n, k, v + 1, cur, out);
        cur.pop();
    }
}

/// Census by testing every `k`-subset of nodes.
pub fn brute_census(g: &DirectedGraph, k: usize) -> BTreeMap<u32, u64> {
    let mut counts = BTreeMap::new();
    let n = g.node_count() as u32;
    subsets(n, k, 0, &mut Vec::new(), &mut |nodes| {
        let m: Vec<Vec<bool>> = (0..k)
            .map(|i| (0..k).map(|j| i != j && g.has_edge(nodes[i], nodes[j])).collect())
            .collect();
        if weakly_connected(&m) {
            *counts.entry(brute_canonical(&m)).or_insert(0) += 1;
        }
    });
    counts
}

/// Sparse scale-free-ish digraph: preferential attachment tree plus extra random edges.
pub fn sparse_software_like(nodes: u64, edges: usize, seed: u64) -> DirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    let mut ends: Vec<u64> = vec![0];
    for v in 1..nodes {
        let u = ends[rng.random_range(0..ends.len())];
        if rng.random_bool(0.5) {
            pairs.push((v, u));
        } else {
            pairs.push((u, v));
        }
        ends.push(u);
        ends.push(v);
    }
    let mut set: std::collections::HashSet<(u64, u64)> = pairs.iter().copied().collect();
    while pairs.len() < edges {
        let u = ends[rng.random_range(0..ends.len())];
        let v = rng.random_range(0..nodes);
        if u != v && set.insert((u, v)) {
            pairs.push((u, v));
        }
    }
    graph_from(&pairs)
}
