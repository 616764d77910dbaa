//! Canonical integer IDs for 3- and 4-node directed subgraphs.
//!
//! An adjacency matrix is read row-major as a binary number with `M[0][0]`
//! as the most significant bit. The canonical ID of a subgraph is the
//! smallest such number over all simultaneous row/column relabelings, which
//! yields the familiar triad IDs (6, 12, 36, 38, ..., 238).

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of nodes in a motif.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "usize", try_from = "usize")]
pub enum MotifSize {
    Three,
    Four,
}

impl MotifSize {
    pub const ALL: [MotifSize; 2] = [MotifSize::Three, MotifSize::Four];

    pub fn nodes(self) -> usize {
        match self {
            MotifSize::Three => 3,
            MotifSize::Four => 4,
        }
    }

    pub fn from_nodes(k: usize) -> Result<Self> {
        match k {
            3 => Ok(MotifSize::Three),
            4 => Ok(MotifSize::Four),
            other => Err(Error::InvalidSize(other)),
        }
    }
}

impl From<MotifSize> for usize {
    fn from(s: MotifSize) -> usize {
        s.nodes()
    }
}

impl TryFrom<usize> for MotifSize {
    type Error = Error;
    fn try_from(k: usize) -> Result<Self> {
        MotifSize::from_nodes(k)
    }
}

impl fmt::Display for MotifSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.nodes())
    }
}

/// Small dense adjacency matrix packed into the low `k*k` bits of a `u32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Adjacency {
    k: usize,
    bits: u32,
}

impl Adjacency {
    pub fn empty(k: usize) -> Self {
        Adjacency { k, bits: 0 }
    }

    pub fn from_bits(k: usize, bits: u32) -> Self {
        debug_assert!(k * k <= 32);
        Adjacency { k, bits }
    }

    pub fn from_edges(k: usize, edges: &[(usize, usize)]) -> Self {
        let mut a = Adjacency::empty(k);
        for &(u, v) in edges {
            a.set(u, v);
        }
        a
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    #[inline]
    fn mask(k: usize, i: usize, j: usize) -> u32 {
        1 << (k * k - 1 - (i * k + j))
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits & Self::mask(self.k, i, j) != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        self.bits |= Self::mask(self.k, i, j);
    }

    pub fn edge_count(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.k;
        (0..k)
            .flat_map(move |i| (0..k).map(move |j| (i, j)))
            .filter(|&(i, j)| self.get(i, j))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.k).all(|i| !self.get(i, i))
    }

    /// `M'[i][j] = M[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> Adjacency {
        let mut out = Adjacency::empty(self.k);
        for i in 0..self.k {
            for j in 0..self.k {
                if self.get(perm[i], perm[j]) {
                    out.set(i, j);
                }
            }
        }
        out
    }

    /// Connectivity with edge directions ignored.
    pub fn is_weakly_connected(&self) -> bool {
        let k = self.k;
        let mut reached = 1u32;
        let mut frontier = vec![0usize];
        while let Some(u) = frontier.pop() {
            for v in 0..k {
                if reached & (1 << v) == 0 && (self.get(u, v) || self.get(v, u)) {
                    reached |= 1 << v;
                    frontier.push(v);
                }
            }
        }
        reached.count_ones() as usize == k
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn min_over_relabelings(adj: Adjacency, perms: &[Vec<usize>]) -> u32 {
    perms
        .iter()
        .map(|p| adj.permuted(p).bits())
        .min()
        .expect("at least one permutation")
}

/// Precomputed canonical IDs for every `k x k` pattern of one motif size.
pub struct ClassTable {
    size: MotifSize,
    /// Canonical bits for every zero-diagonal pattern, indexed by raw bits.
    canon: Vec<u32>,
    /// Connected canonical classes in ascending ID order.
    classes: Vec<MotifId>,
    /// Raw bits -> index into `classes`, or `u16::MAX` when disconnected.
    slot: Vec<u16>,
}

impl ClassTable {
    fn build(size: MotifSize) -> ClassTable {
        let k = size.nodes();
        let perms = permutations(k);
        let total = 1usize << (k * k);
        let diagonal: u32 = (0..k).map(|i| Adjacency::mask(k, i, i)).sum();

        let mut canon = vec![0u32; total];
        let mut connected = BTreeSet::new();
        for bits in 0..total as u32 {
            if bits & diagonal != 0 {
                continue;
            }
            let adj = Adjacency::from_bits(k, bits);
            let c = min_over_relabelings(adj, &perms);
            canon[bits as usize] = c;
            if adj.is_weakly_connected() {
                connected.insert(c);
            }
        }
        let classes: Vec<MotifId> = connected.iter().map(|&id| MotifId { size, id }).collect();
        let mut slot = vec![u16::MAX; total];
        for bits in 0..total as u32 {
            if bits & diagonal == 0 && Adjacency::from_bits(k, bits).is_weakly_connected() {
                let c = canon[bits as usize];
                slot[bits as usize] = classes.binary_search_by_key(&c, |m| m.id).unwrap() as u16;
            }
        }
        ClassTable {
            size,
            canon,
            classes,
            slot,
        }
    }

    pub fn get(size: MotifSize) -> &'static ClassTable {
        static THREE: OnceLock<ClassTable> = OnceLock::new();
        static FOUR: OnceLock<ClassTable> = OnceLock::new();
        match size {
            MotifSize::Three => THREE.get_or_init(|| ClassTable::build(MotifSize::Three)),
            MotifSize::Four => FOUR.get_or_init(|| ClassTable::build(MotifSize::Four)),
        }
    }

    pub fn size(&self) -> MotifSize {
        self.size
    }

    /// Connected classes ordered by ascending ID.
    pub fn classes(&self) -> &[MotifId] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Classes ordered by (edge count, ID), the row order used in reports.
    pub fn classes_by_edges(&self) -> Vec<MotifId> {
        let mut v = self.classes.clone();
        v.sort_by_key(|m| (m.edge_count(), m.id));
        v
    }

    #[inline]
    pub fn canonical_bits(&self, raw: u32) -> u32 {
        self.canon[raw as usize]
    }

    /// Index into [`classes`](Self::classes) for a raw pattern, `None` when disconnected.
    #[inline]
    pub fn slot(&self, raw: u32) -> Option<usize> {
        match self.slot[raw as usize] {
            u16::MAX => None,
            s => Some(s as usize),
        }
    }

    pub fn index_of(&self, motif: MotifId) -> Option<usize> {
        if motif.size != self.size {
            return None;
        }
        self.classes.binary_search(&motif).ok()
    }
}

/// An isomorphism class of weakly connected directed subgraphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MotifId {
    pub size: MotifSize,
    pub id: u32,
}

impl MotifId {
    /// Validates that `id` names a connected canonical class of `size`.
    pub fn new(size: MotifSize, id: u32) -> Result<Self> {
        let m = MotifId { size, id };
        match ClassTable::get(size).index_of(m) {
            Some(_) => Ok(m),
            None => Err(Error::InvalidArgument(format!(
                "{id} is not a canonical {size}-node motif ID"
            ))),
        }
    }

    pub fn triad(id: u32) -> Result<Self> {
        MotifId::new(MotifSize::Three, id)
    }

    pub fn tetrad(id: u32) -> Result<Self> {
        MotifId::new(MotifSize::Four, id)
    }

    /// The canonical representative's adjacency matrix.
    pub fn adjacency(&self) -> Adjacency {
        Adjacency::from_bits(self.size.nodes(), self.id)
    }

    pub fn edge_count(&self) -> u32 {
        self.id.count_ones()
    }
}

impl fmt::Display for MotifId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)
    }
}

/// Canonical ID of a `k x k` boolean adjacency matrix with zero diagonal.
///
/// The matrix does not need to be connected; disconnected patterns get the
/// same minimal-bits ID but are not members of [`enumerate_classes`].
pub fn canonical_id<R: AsRef<[bool]>>(rows: &[R]) -> Result<MotifId> {
    let k = rows.len();
    let size = MotifSize::from_nodes(k)?;
    let mut adj = Adjacency::empty(k);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_ref();
        if row.len() != k {
            return Err(Error::InvalidArgument(format!(
                "adjacency row {i} has {} entries, expected {k}",
                row.len()
            )));
        }
        for (j, &x) in row.iter().enumerate() {
            if x {
                if i == j {
                    return Err(Error::NonzeroDiagonal(i));
                }
                adj.set(i, j);
            }
        }
    }
    Ok(canonical_of(size, adj))
}

pub(crate) fn canonical_of(size: MotifSize, adj: Adjacency) -> MotifId {
    MotifId {
        size,
        id: ClassTable::get(size).canonical_bits(adj.bits()),
    }
}

/// All weakly connected isomorphism classes with `size` nodes.
pub fn enumerate_classes(size: MotifSize) -> BTreeSet<MotifId> {
    let k = size.nodes();
    let perms = permutations(k);
    let mut out = BTreeSet::new();
    let offdiag: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .collect();
    for pattern in 0u32..(1 << offdiag.len()) {
        let mut adj = Adjacency::empty(k);
        for (b, &(i, j)) in offdiag.iter().enumerate() {
            if pattern & (1 << b) != 0 {
                adj.set(i, j);
            }
        }
        if adj.is_weakly_connected() {
            out.insert(MotifId {
                size,
                id: min_over_relabelings(adj, &perms),
            });
        }
    }
    out
}
