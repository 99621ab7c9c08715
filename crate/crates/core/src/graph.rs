//! Dense simple graphs and loopless digraphs on vertices `0..n`, with DOT
//! and JSON export.

use std::collections::VecDeque;
use std::fmt::Write;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
}

/// `{"n": .., "edges": [[i, j], ..]}` with `i < j`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

/// `{"n": .., "arcs": [[from, to], ..]}`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcList {
    pub n: usize,
    pub arcs: Vec<[usize; 2]>,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph {
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            g.adj[u].insert_range(..);
            g.adj[u].set(u, false);
        }
        g
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "simple graphs have no loops");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> &FixedBitSet {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones(..)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|u| self.adj[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    /// Breadth-first distances from `src`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for v in self.adj[u].ones() {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// True when `map` (a bijection `self -> other`) preserves adjacency and
    /// non-adjacency.
    pub fn is_isomorphism(&self, other: &Graph, map: &[usize]) -> bool {
        if self.len() != other.len() || map.len() != self.len() {
            return false;
        }
        let mut hit = FixedBitSet::with_capacity(self.len());
        for &m in map {
            if m >= other.len() || hit.put(m) {
                return false;
            }
        }
        (0..self.len()).all(|u| {
            (u + 1..self.len()).all(|v| self.has_edge(u, v) == other.has_edge(map[u], map[v]))
        })
    }

    pub fn edge_list(&self) -> EdgeList {
        EdgeList {
            n: self.len(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_dot(&self, name: &str, labels: &[String]) -> String {
        let mut out = format!("graph {name} {{\n");
        write_nodes(&mut out, self.len(), labels);
        for (u, v) in self.edges() {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<FixedBitSet>,
}

impl Digraph {
    pub fn new(n: usize) -> Digraph {
        Digraph {
            out: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    pub fn add_arc(&mut self, from: usize, to: usize) {
        assert_ne!(from, to, "digraphs here have no loops");
        self.out[from].insert(to);
    }

    #[inline]
    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.out[from].contains(to)
    }

    pub fn successors(&self, u: usize) -> &FixedBitSet {
        &self.out[u]
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|a| a.count_ones(..)).sum()
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|u| self.out[u].ones().map(move |v| (u, v)))
            .collect()
    }

    /// Every arc of `self` is an arc of `other`.
    pub fn is_subgraph_of(&self, other: &Digraph) -> bool {
        self.len() == other.len() && self.out.iter().zip(&other.out).all(|(a, b)| a.is_subset(b))
    }

    /// The graph joining `u, v` whenever either arc is present.
    pub fn underlying(&self) -> Graph {
        let mut g = Graph::new(self.len());
        for (u, v) in self.arcs() {
            g.add_edge(u, v);
        }
        g
    }

    /// Exactly one of `(u, v)`, `(v, u)` for every edge of `g`, and no other arcs.
    pub fn is_orientation_of(&self, g: &Graph) -> bool {
        self.len() == g.len()
            && (0..self.len()).all(|u| {
                (u + 1..self.len()).all(|v| {
                    let arcs = self.has_arc(u, v) as u8 + self.has_arc(v, u) as u8;
                    arcs == g.has_edge(u, v) as u8
                })
            })
    }

    pub fn arc_list(&self) -> ArcList {
        ArcList {
            n: self.len(),
            arcs: self.arcs().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_dot(&self, name: &str, labels: &[String]) -> String {
        let mut out = format!("digraph {name} {{\n");
        write_nodes(&mut out, self.len(), labels);
        for (u, v) in self.arcs() {
            writeln!(out, "  {u} -> {v};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// `(u, v), (v, w)` arcs imply a `(u, w)` arc.
pub fn is_transitive(d: &Digraph) -> bool {
    (0..d.len()).all(|u| {
        d.successors(u).ones().all(|v| {
            let next = d.successors(v);
            // A 2-cycle would force a loop.
            !next.contains(u) && next.is_subset(d.successors(u))
        })
    })
}

fn write_nodes(out: &mut String, n: usize, labels: &[String]) {
    for v in 0..n {
        let label = labels.get(v).map(String::as_str).unwrap_or("");
        let escaped = label.replace('\\', "\\\\").replace('"', "\\\"");
        writeln!(out, "  {v} [label=\"{escaped}\"];").unwrap();
    }
}
