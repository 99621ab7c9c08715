//! Finite posets stored as dense strict-order matrices.
//!
//! Besides the usual queries this module provides homogeneous sets,
//! quotients by homogeneous partitions, lexicographic sums over an outer
//! poset, and the generalized lexicographic product of graphs. The
//! group-specific constructions live in [`structure`].

pub mod structure;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation is reflexive at {0}")]
    Reflexive(usize),
    #[error("relation is not antisymmetric: {0} < {1} and {1} < {0}")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive: {0} < {1} < {2} but not {0} < {2}")]
    NotTransitive(usize, usize, usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("not a partition: vertex {0} is missing or repeated")]
    NotPartition(usize),
    #[error("block {block} is not homogeneous: vertex {vertex} splits it")]
    NotHomogeneous { block: usize, vertex: usize },
    #[error("family has {got} members but the outer structure has {expected} vertices")]
    FamilySize { expected: usize, got: usize },
    #[error("poset has {size} vertices, above the cap of {cap}")]
    SizeCap { size: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    /// `up[x]`: all `y` with `x < y`.
    up: Vec<FixedBitSet>,
    /// `down[x]`: all `y` with `y < x`.
    down: Vec<FixedBitSet>,
    labels: Option<Vec<u64>>,
}

/// `{"vertices":[{"id":..,"label":..}], "less_than":[[a,b],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDump {
    pub vertices: Vec<VertexDump>,
    pub less_than: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDump {
    pub id: usize,
    pub label: Option<u64>,
}

impl Poset {
    /// Builds a poset from strict up-sets and validates it.
    pub fn from_rows(up: Vec<FixedBitSet>, labels: Option<Vec<u64>>) -> Result<Poset, PosetError> {
        let n = up.len();
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(PosetError::LabelCount {
                    expected: n,
                    got: l.len(),
                });
            }
        }
        let up: Vec<FixedBitSet> = up
            .into_iter()
            .map(|mut row| {
                row.grow(n);
                row
            })
            .collect();
        for x in 0..n {
            if up[x].contains(x) {
                return Err(PosetError::Reflexive(x));
            }
            for y in up[x].ones() {
                if up[y].contains(x) {
                    return Err(PosetError::NotAntisymmetric(x, y));
                }
                if !up[y].is_subset(&up[x]) {
                    let z = up[y].difference(&up[x]).next().unwrap();
                    return Err(PosetError::NotTransitive(x, y, z));
                }
            }
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in up[x].ones() {
                down[y].insert(x);
            }
        }
        Ok(Poset { up, down, labels })
    }

    /// Builds a poset from a strict-order predicate.
    pub fn from_relation(
        n: usize,
        less: impl Fn(usize, usize) -> bool,
        labels: Option<Vec<u64>>,
    ) -> Result<Poset, PosetError> {
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in up.iter_mut().enumerate() {
            for y in 0..n {
                if less(x, y) {
                    row.insert(y);
                }
            }
        }
        Poset::from_rows(up, labels)
    }

    /// `0 < 1 < ... < k-1`.
    pub fn chain(k: usize) -> Poset {
        Poset::from_relation(k, |a, b| a < b, None).unwrap()
    }

    pub fn antichain(k: usize) -> Poset {
        Poset::from_relation(k, |_, _| false, None).unwrap()
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    #[inline]
    pub fn less(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        x == y || self.less(x, y) || self.less(y, x)
    }

    pub fn up(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn down(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<u64>) -> Result<Poset, PosetError> {
        if labels.len() != self.len() {
            return Err(PosetError::LabelCount {
                expected: self.len(),
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Number of elements on a longest chain ending just below `x`, for every `x`.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        // A vertex has strictly fewer predecessors than anything above it.
        order.sort_by_key(|&x| self.down[x].count_ones(..));
        let mut h = vec![0; n];
        for &x in &order {
            h[x] = self.down[x].ones().map(|y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }

    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for x in 0..self.len() {
            for y in self.up[x].ones() {
                if !self.up[x].ones().any(|m| self.less(m, y)) {
                    edges.push((x, y));
                }
            }
        }
        edges
    }

    pub fn comparability_graph(&self) -> Graph {
        let mut g = Graph::new(self.len());
        for x in 0..self.len() {
            for y in self.up[x].ones() {
                g.add_edge(x, y);
            }
        }
        g
    }

    /// Induced subposet on `vertices`, renumbered in the given order.
    pub fn subposet(&self, vertices: &[usize]) -> Poset {
        let labels = self
            .labels
            .as_ref()
            .map(|l| vertices.iter().map(|&v| l[v]).collect());
        Poset::from_relation(
            vertices.len(),
            |a, b| self.less(vertices[a], vertices[b]),
            labels,
        )
        .expect("induced subposets are posets")
    }

    fn to_set(&self, set: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.extend(set.iter().copied());
        s
    }

    pub fn is_chain(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|x| set.ones().all(|y| self.comparable(x, y)))
    }

    pub fn is_antichain(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|x| self.up[x].is_disjoint(set))
    }

    /// An outside vertex that is neither above all, below all nor
    /// incomparable to all of `set`.
    fn splitter(&self, set: &FixedBitSet) -> Option<usize> {
        (0..self.len()).find(|&y| !set.contains(y) && self.splits(y, set))
    }

    fn splits(&self, y: usize, set: &FixedBitSet) -> bool {
        !(set.is_subset(&self.down[y])
            || set.is_subset(&self.up[y])
            || (set.is_disjoint(&self.down[y]) && set.is_disjoint(&self.up[y])))
    }

    /// Every vertex outside `set` is above all of it, below all of it, or
    /// incomparable to all of it.
    pub fn is_homogeneous(&self, set: &FixedBitSet) -> bool {
        self.splitter(set).is_none()
    }

    pub fn is_homogeneous_slice(&self, set: &[usize]) -> bool {
        self.is_homogeneous(&self.to_set(set))
    }

    /// Smallest homogeneous superset of `set`. A vertex that splits a set
    /// splits every superset not containing it, so adding splitters until
    /// none remain gives the unique minimum.
    pub fn homogeneous_closure(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut closure = set.clone();
        closure.grow(self.len());
        loop {
            let splitters: Vec<usize> = (0..self.len())
                .filter(|&y| !closure.contains(y) && self.splits(y, &closure))
                .collect();
            if splitters.is_empty() {
                return closure;
            }
            closure.extend(splitters);
        }
    }

    /// `set` is a homogeneous chain and no strictly larger homogeneous
    /// chain contains it.
    pub fn is_maximal_homogeneous_chain(&self, set: &FixedBitSet) -> bool {
        self.is_chain(set)
            && self.is_homogeneous(set)
            && self.no_extension(set, |s| self.is_chain(s))
    }

    pub fn is_maximal_homogeneous_antichain(&self, set: &FixedBitSet) -> bool {
        self.is_antichain(set)
            && self.is_homogeneous(set)
            && self.no_extension(set, |s| self.is_antichain(s))
    }

    // Any homogeneous superset containing z contains the closure of set ∪ {z}.
    fn no_extension(&self, set: &FixedBitSet, shape: impl Fn(&FixedBitSet) -> bool) -> bool {
        (0..self.len()).filter(|&z| !set.contains(z)).all(|z| {
            let mut grown = set.clone();
            grown.grow(self.len());
            grown.insert(z);
            !shape(&self.homogeneous_closure(&grown))
        })
    }

    /// `map` is a bijection onto `other` preserving and reflecting `<`, and
    /// labels when both posets carry them.
    pub fn is_isomorphism(&self, other: &Poset, map: &[usize]) -> bool {
        let n = self.len();
        if other.len() != n || map.len() != n {
            return false;
        }
        let mut hit = FixedBitSet::with_capacity(n);
        if map.iter().any(|&m| m >= n || hit.put(m)) {
            return false;
        }
        if let (Some(a), Some(b)) = (&self.labels, &other.labels) {
            if (0..n).any(|x| a[x] != b[map[x]]) {
                return false;
            }
        }
        (0..n).all(|x| (0..n).all(|y| self.less(x, y) == other.less(map[x], map[y])))
    }

    pub fn dump(&self) -> PosetDump {
        PosetDump {
            vertices: (0..self.len())
                .map(|id| VertexDump {
                    id,
                    label: self.labels.as_ref().map(|l| l[id]),
                })
                .collect(),
            less_than: (0..self.len())
                .flat_map(|x| self.up[x].ones().map(move |y| [x, y]))
                .collect(),
        }
    }
}

/// Disjoint blocks covering a poset, each homogeneous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousPartition {
    blocks: Vec<Vec<usize>>,
}

impl HomogeneousPartition {
    /// Validates `blocks` against `p`. Blocks are stored sorted, ordered by
    /// their least member.
    pub fn new(p: &Poset, blocks: Vec<Vec<usize>>) -> Result<HomogeneousPartition, PosetError> {
        let mut seen = FixedBitSet::with_capacity(p.len());
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        for &v in blocks.iter().flatten() {
            if v >= p.len() || seen.put(v) {
                return Err(PosetError::NotPartition(v));
            }
        }
        if let Some(v) = (0..p.len()).find(|&v| !seen.contains(v)) {
            return Err(PosetError::NotPartition(v));
        }
        for (i, block) in blocks.iter().enumerate() {
            if let Some(vertex) = p.splitter(&p.to_set(block)) {
                return Err(PosetError::NotHomogeneous { block: i, vertex });
            }
        }
        Ok(HomogeneousPartition { blocks })
    }

    pub fn singletons(p: &Poset) -> HomogeneousPartition {
        HomogeneousPartition {
            blocks: (0..p.len()).map(|v| vec![v]).collect(),
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

#[derive(Debug, Clone)]
pub struct Quotient {
    /// Poset on blocks, labeled by block size.
    pub poset: Poset,
    pub blocks: Vec<Vec<usize>>,
    pub block_of: Vec<usize>,
}

/// `S_1 < S_2` iff some `x ∈ S_1`, `y ∈ S_2` have `x < y`; for a
/// homogeneous partition this is the same as every such pair.
pub fn quotient(p: &Poset, part: &HomogeneousPartition) -> Result<Quotient, PosetError> {
    let part = HomogeneousPartition::new(p, part.blocks.clone())?;
    let blocks = part.blocks;
    let mut block_of = vec![0; p.len()];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            block_of[v] = i;
        }
    }
    let k = blocks.len();
    let mut up = vec![FixedBitSet::with_capacity(k); k];
    for x in 0..p.len() {
        for y in p.up(x).ones() {
            if block_of[x] != block_of[y] {
                up[block_of[x]].insert(block_of[y]);
            }
        }
    }
    let labels = blocks.iter().map(|b| b.len() as u64).collect();
    let poset = Poset::from_rows(up, Some(labels))?;
    Ok(Quotient {
        poset,
        blocks,
        block_of,
    })
}

#[derive(Debug, Clone)]
pub struct LexSum {
    pub poset: Poset,
    /// `(outer vertex, inner vertex)` for each vertex of the sum.
    pub coords: Vec<(usize, usize)>,
}

/// Substitutes `inner[x]` for every vertex `x` of `outer`:
/// `(x1, y1) < (x2, y2)` iff `x1 = x2` and `y1 < y2` in `inner[x1]`, or
/// `x1 < x2` in `outer`.
pub fn lexicographic_sum(outer: &Poset, inner: &[Poset]) -> Result<LexSum, PosetError> {
    if inner.len() != outer.len() {
        return Err(PosetError::FamilySize {
            expected: outer.len(),
            got: inner.len(),
        });
    }
    let coords: Vec<(usize, usize)> = inner
        .iter()
        .enumerate()
        .flat_map(|(x, q)| (0..q.len()).map(move |y| (x, y)))
        .collect();
    let poset = Poset::from_relation(
        coords.len(),
        |a, b| {
            let ((x1, y1), (x2, y2)) = (coords[a], coords[b]);
            (x1 == x2 && inner[x1].less(y1, y2)) || outer.less(x1, x2)
        },
        None,
    )?;
    Ok(LexSum { poset, coords })
}

#[derive(Debug, Clone)]
pub struct LexProduct {
    pub graph: Graph,
    pub coords: Vec<(usize, usize)>,
}

/// `H[F]`: vertices `(v, w)` with `w ∈ F_v`; `(v1, w1) ~ (v2, w2)` iff
/// `v1 ~ v2` in `H`, or `v1 = v2` and `w1 ~ w2` in `F_v1`.
pub fn generalized_lex_product(h: &Graph, family: &[Graph]) -> Result<LexProduct, PosetError> {
    if family.len() != h.len() {
        return Err(PosetError::FamilySize {
            expected: h.len(),
            got: family.len(),
        });
    }
    let coords: Vec<(usize, usize)> = family
        .iter()
        .enumerate()
        .flat_map(|(v, f)| (0..f.len()).map(move |w| (v, w)))
        .collect();
    let mut graph = Graph::new(coords.len());
    for a in 0..coords.len() {
        for b in a + 1..coords.len() {
            let ((v1, w1), (v2, w2)) = (coords[a], coords[b]);
            if h.has_edge(v1, v2) || (v1 == v2 && family[v1].has_edge(w1, w2)) {
                graph.add_edge(a, b);
            }
        }
    }
    Ok(LexProduct { graph, coords })
}
