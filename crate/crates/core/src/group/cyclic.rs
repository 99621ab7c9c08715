use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{ElementId, Group};
use crate::numtheory::totient;

/// A cyclic subgroup `<x>` with its generator set `[x]`.
#[derive(Debug, Clone)]
pub struct CyclicSubgroup {
    /// Least element id generating the subgroup.
    pub generator: ElementId,
    pub members: FixedBitSet,
    pub gens: FixedBitSet,
    pub size: usize,
}

impl CyclicSubgroup {
    pub fn member_ids(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.members.ones().map(ElementId::from_index)
    }

    pub fn generator_ids(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.gens.ones().map(ElementId::from_index)
    }
}

/// All cyclic subgroups, sorted by `(size, generator)`. Index order is
/// therefore a linear extension of inclusion, with `{e}` at index 0.
#[derive(Debug, Clone)]
pub struct CyclicSubgroups {
    subgroups: Vec<CyclicSubgroup>,
    of_element: Vec<usize>,
}

impl CyclicSubgroups {
    pub(super) fn compute(g: &Group) -> CyclicSubgroups {
        let n = g.order();
        let mut found: Vec<CyclicSubgroup> = Vec::new();
        let mut assigned = vec![usize::MAX; n];
        for x in g.elements() {
            if assigned[x.index()] != usize::MAX {
                continue;
            }
            let o = g.element_order(x);
            let mut members = FixedBitSet::with_capacity(n);
            let mut gens = FixedBitSet::with_capacity(n);
            let mut y = ElementId::IDENTITY;
            for k in 0..o {
                members.insert(y.index());
                if crate::numtheory::gcd(k, o) == 1 {
                    gens.insert(y.index());
                    assigned[y.index()] = found.len();
                }
                y = g.op(y, x);
            }
            found.push(CyclicSubgroup {
                generator: x,
                members,
                gens,
                size: o as usize,
            });
        }

        let mut order: Vec<usize> = (0..found.len()).collect();
        order.sort_by_key(|&i| (found[i].size, found[i].generator));
        let mut rank = vec![0; found.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let mut slots: Vec<Option<CyclicSubgroup>> = found.into_iter().map(Some).collect();
        let subgroups = order.iter().map(|&old| slots[old].take().unwrap()).collect();
        let of_element = assigned.into_iter().map(|old| rank[old]).collect();
        CyclicSubgroups { subgroups, of_element }
    }

    pub fn subgroups(&self) -> &[CyclicSubgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// Index of `<x>` in [`subgroups`](Self::subgroups).
    #[inline]
    pub fn index_of(&self, x: ElementId) -> usize {
        self.of_element[x.index()]
    }

    /// `C_i ⊆ C_j`.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        let gi = self.subgroups[i].generator.index();
        self.subgroups[j].members.contains(gi)
    }

    /// The partition of the group into generator classes `[x]`, each class
    /// listed in ascending element order, classes in subgroup-index order.
    pub fn generator_partition(&self) -> Vec<Vec<ElementId>> {
        self.subgroups
            .iter()
            .map(|c| c.generator_ids().collect())
            .collect()
    }
}

/// Cyclic subgroups ordered by inclusion and labeled by their order.
#[derive(Debug, Clone, Serialize)]
pub struct CyclicPoset {
    /// Canonical generator of each subgroup.
    pub generators: Vec<ElementId>,
    /// Subgroup orders.
    pub labels: Vec<u64>,
    /// `less[i]` lists every `j` with `C_i ⊊ C_j`.
    #[serde(skip)]
    pub less: Vec<FixedBitSet>,
}

impl CyclicPoset {
    pub(super) fn new(cs: &CyclicSubgroups) -> CyclicPoset {
        let k = cs.len();
        let mut less = vec![FixedBitSet::with_capacity(k); k];
        for (i, row) in less.iter_mut().enumerate() {
            for j in 0..k {
                if i != j && cs.contains(i, j) {
                    row.insert(j);
                }
            }
        }
        CyclicPoset {
            generators: cs.subgroups().iter().map(|c| c.generator).collect(),
            labels: cs.subgroups().iter().map(|c| c.size as u64).collect(),
            less,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_less(&self, i: usize, j: usize) -> bool {
        self.less[i].contains(j)
    }

    /// Cover relations `(i, j)`: `C_i ⊊ C_j` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for i in 0..self.len() {
            for j in self.less[i].ones() {
                let covered = self.less[i].ones().any(|m| m != j && self.less[m].contains(j));
                if !covered {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    pub fn to_poset(&self) -> crate::poset::Poset {
        crate::poset::Poset::from_rows(self.less.clone(), Some(self.labels.clone()))
            .expect("subgroup inclusion is a partial order")
    }
}

/// Outcome of `Σ φ(|C|) = |G|` over all cyclic subgroups `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EulerSum {
    pub sum: u64,
    pub holds: bool,
}

impl EulerSum {
    pub(super) fn of(g: &Group) -> EulerSum {
        let sum = g
            .cyclic_subgroups()
            .subgroups()
            .iter()
            .map(|c| totient(c.size as u64))
            .sum();
        EulerSum {
            sum,
            holds: sum == g.order() as u64,
        }
    }
}

/// An ordering imposed inside every generator class `[x]`, stored as the
/// rank of each element within its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassOrdering {
    rank: Vec<u32>,
}

impl ClassOrdering {
    /// Ascending element id inside each class.
    pub fn ascending(g: &Group) -> ClassOrdering {
        ClassOrdering::from_classes(g, &g.cyclic_subgroups().generator_partition())
            .expect("generator partition is a valid ordering")
    }

    /// Builds an ordering from one list per class. Returns `None` unless the
    /// lists are exactly the generator classes, each in some order.
    pub fn from_classes(g: &Group, classes: &[Vec<ElementId>]) -> Option<ClassOrdering> {
        let cs = g.cyclic_subgroups();
        let mut rank = vec![u32::MAX; g.order()];
        let mut seen_classes = FixedBitSet::with_capacity(cs.len());
        for class in classes {
            let first = class.first()?;
            let idx = cs.index_of(*first);
            if seen_classes.put(idx) || class.len() != cs.subgroups()[idx].gens.count_ones(..) {
                return None;
            }
            for (r, &x) in class.iter().enumerate() {
                if cs.index_of(x) != idx || rank[x.index()] != u32::MAX {
                    return None;
                }
                rank[x.index()] = r as u32;
            }
        }
        if rank.contains(&u32::MAX) {
            return None;
        }
        Some(ClassOrdering { rank })
    }

    #[inline]
    pub fn rank(&self, x: ElementId) -> usize {
        self.rank[x.index()] as usize
    }

    /// `x ≺ y`: same class with `x` ranked earlier, or `<x> ⊊ <y>`.
    pub fn precedes(&self, g: &Group, x: ElementId, y: ElementId) -> bool {
        let cs = g.cyclic_subgroups();
        if cs.index_of(x) == cs.index_of(y) {
            self.rank(x) < self.rank(y)
        } else {
            g.generated(y).contains(x.index())
        }
    }

    /// The classes listed in rank order, in subgroup-index order.
    pub fn classes(&self, g: &Group) -> Vec<Vec<ElementId>> {
        g.cyclic_subgroups()
            .generator_partition()
            .into_iter()
            .map(|mut class| {
                class.sort_by_key(|&x| self.rank(x));
                class
            })
            .collect()
    }
}
