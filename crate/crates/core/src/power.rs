//! Power digraph, power graph and the class-ordered transitive orientation.

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{is_transitive, Digraph, Graph};
use crate::group::{ClassOrdering, ElementId, Group};
use crate::numtheory::totient;

/// Arc `x -> y` whenever `x != y` and `y` is a power of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerDigraph {
    digraph: Digraph,
}

/// `x ~ y` whenever one of them is a power of the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerGraph {
    graph: Graph,
}

/// Arc `x -> y` whenever `y ≺ x` for a fixed ordering of each generator
/// class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    digraph: Digraph,
}

pub fn power_digraph(g: &Group) -> PowerDigraph {
    let mut digraph = Digraph::new(g.order());
    for x in g.elements() {
        for y in g.generated(x).ones() {
            if y != x.index() {
                digraph.add_arc(x.index(), y);
            }
        }
    }
    PowerDigraph { digraph }
}

pub fn power_graph(g: &Group) -> PowerGraph {
    PowerGraph {
        graph: power_digraph(g).digraph.underlying(),
    }
}

pub fn transitive_orientation(g: &Group) -> Orientation {
    transitive_orientation_with(g, &ClassOrdering::ascending(g))
}

pub fn transitive_orientation_with(g: &Group, ordering: &ClassOrdering) -> Orientation {
    let mut digraph = Digraph::new(g.order());
    for x in g.elements() {
        // Everything below x lies in <x>.
        for y in g.generated(x).ones().map(ElementId::from_index) {
            if ordering.precedes(g, y, x) {
                digraph.add_arc(x.index(), y.index());
            }
        }
    }
    Orientation { digraph }
}

impl PowerDigraph {
    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn to_dot(&self, g: &Group) -> String {
        self.digraph.to_dot("power_digraph", g.names())
    }
}

impl Orientation {
    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn is_transitive(&self) -> bool {
        is_transitive(&self.digraph)
    }

    pub fn to_dot(&self, g: &Group) -> String {
        self.digraph.to_dot("orientation", g.names())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighborhoods {
    pub open: FixedBitSet,
    pub closed: FixedBitSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("separating set needs two distinct vertices, got {0} twice")]
pub struct SameVertex(pub ElementId);

impl PowerGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn adjacent(&self, x: ElementId, y: ElementId) -> bool {
        self.graph.has_edge(x.index(), y.index())
    }

    /// Distance in the power graph: 0, 1 or 2. The identity (vertex 0) is
    /// adjacent to every other vertex, so the graph is connected with
    /// diameter at most 2 and no pair is ever unreachable.
    pub fn distance(&self, x: ElementId, y: ElementId) -> u8 {
        if x == y {
            0
        } else if self.adjacent(x, y) {
            1
        } else {
            assert!(
                self.adjacent(x, ElementId::IDENTITY) && self.adjacent(y, ElementId::IDENTITY),
                "vertex 0 must be universal in a power graph"
            );
            2
        }
    }

    pub fn neighborhoods(&self, x: ElementId) -> Neighborhoods {
        let open = self.graph.neighbors(x.index()).clone();
        let mut closed = open.clone();
        closed.insert(x.index());
        Neighborhoods { open, closed }
    }

    /// `R{x,y}` as a bitset: `x`, `y`, and every other vertex adjacent to
    /// exactly one of them.
    pub fn separating_bits(&self, x: ElementId, y: ElementId) -> FixedBitSet {
        let mut r = self.graph.neighbors(x.index()).clone();
        r.symmetric_difference_with(self.graph.neighbors(y.index()));
        r.insert(x.index());
        r.insert(y.index());
        r
    }

    /// `R{x,y} = { z : d(x,z) != d(y,z) }`, ascending.
    pub fn separating_set(&self, x: ElementId, y: ElementId) -> Result<Vec<ElementId>, SameVertex> {
        if x == y {
            return Err(SameVertex(x));
        }
        Ok(self.separating_bits(x, y).ones().map(ElementId::from_index).collect())
    }

    pub fn to_dot(&self, g: &Group) -> String {
        self.graph.to_dot("power_graph", g.names())
    }
}

/// Clique number against the number of colors of the height colouring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Perfection {
    pub omega: u64,
    pub chi: u64,
    pub holds: bool,
}

/// `omega` is the heaviest chain of cyclic subgroups weighted by `φ(|C|)`;
/// `chi` is the number of colors used when each element is colored by its
/// height in the class-ordered poset. The coloring is checked proper.
pub fn perfection_check(g: &Group) -> Perfection {
    let cs = g.cyclic_subgroups();
    let subgroups = cs.subgroups();
    let mut heaviest = vec![0u64; subgroups.len()];
    for i in 0..subgroups.len() {
        let below = (0..i)
            .filter(|&j| cs.contains(j, i))
            .map(|j| heaviest[j])
            .max()
            .unwrap_or(0);
        heaviest[i] = below + totient(subgroups[i].size as u64);
    }
    let omega = heaviest.iter().copied().max().unwrap_or(0);

    // (subgroup index, rank) is a linear extension of ≺.
    let ordering = ClassOrdering::ascending(g);
    let mut elements: Vec<ElementId> = g.elements().collect();
    elements.sort_by_key(|&x| (cs.index_of(x), ordering.rank(x)));
    let mut height = vec![0u64; g.order()];
    for &y in &elements {
        height[y.index()] = 1 + g
            .generated(y)
            .ones()
            .map(ElementId::from_index)
            .filter(|&x| ordering.precedes(g, x, y))
            .map(|x| height[x.index()])
            .max()
            .unwrap_or(0);
    }
    let pg = power_graph(g);
    let proper = pg
        .graph()
        .edges()
        .iter()
        .all(|&(u, v)| height[u] != height[v]);
    let mut used: Vec<u64> = height.clone();
    used.sort_unstable();
    used.dedup();
    let chi = used.len() as u64;
    Perfection {
        omega,
        chi,
        holds: proper && chi == omega,
    }
}
