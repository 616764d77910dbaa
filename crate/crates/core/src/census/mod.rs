//! Exact census of weakly connected induced subgraphs with 3 or 4 nodes.
//!
//! Enumeration follows the ESU scheme: every connected node set is grown
//! from its smallest node, extending only with nodes that are larger than
//! the root and not already adjacent to the partial set, so each set is
//! reached exactly once.

mod canon;

pub use canon::{canonical_id, enumerate_classes, Adjacency, ClassTable, MotifId, MotifSize};

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphio::DirectedGraph;

/// Node set of one subgraph occurrence, ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgraphInstance {
    nodes: [u32; 4],
    len: u8,
}

impl SubgraphInstance {
    pub fn new(nodes: &[u32]) -> Self {
        assert!(nodes.len() <= 4);
        let mut buf = [0u32; 4];
        buf[..nodes.len()].copy_from_slice(nodes);
        buf[..nodes.len()].sort_unstable();
        SubgraphInstance {
            nodes: buf,
            len: nodes.len() as u8,
        }
    }

    pub fn nodes(&self) -> &[u32] {
        &self.nodes[..self.len as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusResult {
    pub size: MotifSize,
    /// Only classes that occur at least once are present.
    pub counts: BTreeMap<MotifId, u64>,
    pub instances: Option<BTreeMap<MotifId, Vec<SubgraphInstance>>>,
}

impl CensusResult {
    pub fn count(&self, motif: MotifId) -> u64 {
        self.counts.get(&motif).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Greedy disjoint-packing count per class; `None` without retained instances.
    pub fn uniqueness(&self, motif: MotifId) -> Option<u64> {
        let inst = self.instances.as_ref()?;
        Some(inst.get(&motif).map_or(0, |v| uniqueness(v)))
    }
}

struct Accumulator {
    counts: Vec<u64>,
    instances: Vec<(u16, SubgraphInstance)>,
}

impl Accumulator {
    fn new(classes: usize) -> Self {
        Accumulator {
            counts: vec![0; classes],
            instances: Vec::new(),
        }
    }

    fn merge(mut self, other: Accumulator) -> Self {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self.instances.extend(other.instances);
        self
    }
}

struct Esu<'a> {
    graph: &'a DirectedGraph,
    neighbors: &'a [Vec<u32>],
    table: &'static ClassTable,
    k: usize,
    retain: bool,
}

impl Esu<'_> {
    fn is_neighbor(&self, u: u32, v: u32) -> bool {
        self.neighbors[u as usize].binary_search(&v).is_ok()
    }

    fn record(&self, nodes: &[u32], acc: &mut Accumulator) {
        let k = self.k;
        let mut adj = Adjacency::empty(k);
        for i in 0..k {
            for j in 0..k {
                if i != j && self.graph.has_edge(nodes[i], nodes[j]) {
                    adj.set(i, j);
                }
            }
        }
        let slot = self
            .table
            .slot(adj.bits())
            .expect("ESU only yields connected node sets");
        acc.counts[slot] += 1;
        if self.retain {
            acc.instances.push((slot as u16, SubgraphInstance::new(nodes)));
        }
    }

    fn extend(&self, sub: &mut [u32; 4], len: usize, mut ext: Vec<u32>, root: u32, acc: &mut Accumulator) {
        if len + 1 == self.k {
            for &w in &ext {
                sub[len] = w;
                self.record(&sub[..self.k], acc);
            }
            return;
        }
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            for &u in &self.neighbors[w as usize] {
                if u <= root {
                    continue;
                }
                let known = sub[..len].iter().any(|&s| s == u || self.is_neighbor(s, u));
                if !known {
                    next.push(u);
                }
            }
            sub[len] = w;
            self.extend(sub, len + 1, next, root, acc);
        }
    }

    fn from_root(&self, root: u32, acc: &mut Accumulator) {
        let ext: Vec<u32> = self.neighbors[root as usize]
            .iter()
            .copied()
            .filter(|&u| u > root)
            .collect();
        let mut sub = [root, 0, 0, 0];
        self.extend(&mut sub, 1, ext, root, acc);
    }
}

/// Counts every weakly connected induced subgraph on `size` nodes once.
pub fn census(g: &DirectedGraph, size: MotifSize, retain_instances: bool) -> Result<CensusResult> {
    let k = size.nodes();
    if g.node_count() < k {
        return Err(Error::TooFewNodes {
            nodes: g.node_count(),
            size: k,
        });
    }
    let table = ClassTable::get(size);
    let neighbors = g.undirected_neighbors();
    let esu = Esu {
        graph: g,
        neighbors: &neighbors,
        table,
        k,
        retain: retain_instances,
    };

    let acc = (0..g.node_count() as u32)
        .into_par_iter()
        .fold(
            || Accumulator::new(table.len()),
            |mut acc, root| {
                esu.from_root(root, &mut acc);
                acc
            },
        )
        .reduce(|| Accumulator::new(table.len()), Accumulator::merge);

    let counts = table
        .classes()
        .iter()
        .zip(&acc.counts)
        .filter(|(_, &c)| c > 0)
        .map(|(&m, &c)| (m, c))
        .collect();

    let instances = retain_instances.then(|| {
        let mut by_class: BTreeMap<MotifId, Vec<SubgraphInstance>> = BTreeMap::new();
        for (slot, inst) in acc.instances {
            by_class
                .entry(table.classes()[slot as usize])
                .or_default()
                .push(inst);
        }
        for v in by_class.values_mut() {
            v.sort_unstable();
        }
        by_class
    });

    Ok(CensusResult {
        size,
        counts,
        instances,
    })
}

/// Number of node-disjoint occurrences picked greedily in ascending tuple order.
pub fn uniqueness(instances: &[SubgraphInstance]) -> u64 {
    let mut sorted: Vec<&SubgraphInstance> = instances.iter().collect();
    sorted.sort_unstable();
    let mut used: HashSet<u32> = HashSet::new();
    let mut picked = 0;
    for inst in sorted {
        if inst.nodes().iter().all(|n| !used.contains(n)) {
            used.extend(inst.nodes().iter().copied());
            picked += 1;
        }
    }
    picked
}
