//! Posets attached to a group: the element poset `L_G`, the decomposition
//! of the power graph over the cyclic-subgroup poset, and isomorphism of
//! labeled cyclic-subgroup posets.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{generalized_lex_product, HomogeneousPartition, Poset, PosetError};
use crate::graph::Graph;
use crate::group::{ClassOrdering, ElementId, Group};
use crate::numtheory::totient;
use crate::power::power_graph;

/// Largest poset `labeled_poset_iso` accepts by default.
pub const DEFAULT_ISO_CAP: usize = 200;

/// `L_G`: the group elements under `≺` with ascending-id class ordering.
pub fn element_poset(g: &Group) -> Poset {
    element_poset_with(g, &ClassOrdering::ascending(g))
}

pub fn element_poset_with(g: &Group, ordering: &ClassOrdering) -> Poset {
    let mut up = vec![FixedBitSet::with_capacity(g.order()); g.order()];
    for x in g.elements() {
        for y in g.elements() {
            if ordering.precedes(g, x, y) {
                up[x.index()].insert(y.index());
            }
        }
    }
    Poset::from_rows(up, None).expect("class order is a partial order")
}

/// The generator classes as a partition of `L_G`.
pub fn generator_partition(g: &Group, l_g: &Poset) -> Result<HomogeneousPartition, PosetError> {
    let blocks = g
        .cyclic_subgroups()
        .generator_partition()
        .into_iter()
        .map(|class| class.into_iter().map(ElementId::index).collect())
        .collect();
    HomogeneousPartition::new(l_g, blocks)
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub holds: bool,
    /// Image of each element as `(subgroup index, rank inside its class)`.
    pub bijection: Vec<(usize, usize)>,
    /// `φ(|C|)` for each cyclic subgroup `C`, in subgroup-index order.
    pub inner_sizes: Vec<u64>,
    #[serde(skip)]
    pub subgroup_graph: Graph,
}

/// Compares the power graph with the lexicographic product of the
/// cyclic-subgroup comparability graph and complete graphs `K_φ(|C|)`.
pub fn verify_structure_theorem(g: &Group) -> StructureReport {
    let cp = g.cyclic_subgroup_poset();
    let subgroup_graph = cp.to_poset().comparability_graph();
    let inner_sizes: Vec<u64> = cp.labels.iter().map(|&s| totient(s)).collect();
    let family: Vec<Graph> = inner_sizes.iter().map(|&k| Graph::complete(k as usize)).collect();
    let product = generalized_lex_product(&subgroup_graph, &family)
        .expect("one inner graph per subgroup");

    let cs = g.cyclic_subgroups();
    let ordering = ClassOrdering::ascending(g);
    let mut offset = vec![0usize; inner_sizes.len()];
    for i in 1..offset.len() {
        offset[i] = offset[i - 1] + inner_sizes[i - 1] as usize;
    }
    let bijection: Vec<(usize, usize)> = g
        .elements()
        .map(|x| (cs.index_of(x), ordering.rank(x)))
        .collect();
    let map: Vec<usize> = bijection.iter().map(|&(c, r)| offset[c] + r).collect();
    let holds = map
        .iter()
        .all(|&m| m < product.coords.len())
        && map
            .iter()
            .zip(&bijection)
            .all(|(&m, &coord)| product.coords[m] == coord)
        && power_graph(g).graph().is_isomorphism(&product.graph, &map);
    StructureReport {
        holds,
        bijection,
        inner_sizes,
        subgroup_graph,
    }
}

/// An order isomorphism `p1 -> p2` that preserves labels, or `None`.
pub fn labeled_poset_iso(p1: &Poset, p2: &Poset) -> Result<Option<Vec<usize>>, PosetError> {
    labeled_poset_iso_capped(p1, p2, DEFAULT_ISO_CAP)
}

pub fn labeled_poset_iso_capped(
    p1: &Poset,
    p2: &Poset,
    cap: usize,
) -> Result<Option<Vec<usize>>, PosetError> {
    for p in [p1, p2] {
        if p.len() > cap {
            return Err(PosetError::SizeCap { size: p.len(), cap });
        }
    }
    if p1.len() != p2.len() {
        return Ok(None);
    }
    let (s1, s2) = (signatures(p1), signatures(p2));
    let (mut a, mut b) = (s1.clone(), s2.clone());
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Ok(None);
    }

    // Level by level; within a level, rarest signature first.
    let rarity = |s: &Signature| s1.iter().filter(|t| *t == s).count();
    let mut order: Vec<usize> = (0..p1.len()).collect();
    order.sort_by_key(|&v| (s1[v].0, rarity(&s1[v]), v));
    let candidates: Vec<Vec<usize>> = order
        .iter()
        .map(|&v| (0..p2.len()).filter(|&w| s2[w] == s1[v]).collect())
        .collect();

    let mut search = Search {
        p1,
        p2,
        order: &order,
        candidates: &candidates,
        map: vec![usize::MAX; p1.len()],
        used: FixedBitSet::with_capacity(p2.len()),
    };
    Ok(search.extend(0).then_some(search.map))
}

/// Isomorphism of power graphs, decided on the labeled cyclic-subgroup posets.
pub fn power_graph_iso(g1: &Group, g2: &Group) -> Result<bool, PosetError> {
    if g1.order() != g2.order() {
        return Ok(false);
    }
    let p1 = g1.cyclic_subgroup_poset().to_poset();
    let p2 = g2.cyclic_subgroup_poset().to_poset();
    Ok(labeled_poset_iso(&p1, &p2)?.is_some())
}

/// `(height, label, up-degree, down-degree)`.
type Signature = (usize, u64, usize, usize);

fn signatures(p: &Poset) -> Vec<Signature> {
    let heights = p.heights();
    (0..p.len())
        .map(|v| {
            (
                heights[v],
                p.labels().map_or(0, |l| l[v]),
                p.up(v).count_ones(..),
                p.down(v).count_ones(..),
            )
        })
        .collect()
}

struct Search<'a> {
    p1: &'a Poset,
    p2: &'a Poset,
    order: &'a [usize],
    candidates: &'a [Vec<usize>],
    map: Vec<usize>,
    used: FixedBitSet,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        let Some(&v) = self.order.get(depth) else {
            return true;
        };
        for &w in &self.candidates[depth] {
            if self.used.contains(w) || !self.consistent(depth, v, w) {
                continue;
            }
            self.map[v] = w;
            self.used.insert(w);
            if self.extend(depth + 1) {
                return true;
            }
            self.used.set(w, false);
            self.map[v] = usize::MAX;
        }
        false
    }

    fn consistent(&self, depth: usize, v: usize, w: usize) -> bool {
        self.order[..depth].iter().all(|&u| {
            let m = self.map[u];
            self.p1.less(u, v) == self.p2.less(m, w) && self.p1.less(v, u) == self.p2.less(w, m)
        })
    }
}
