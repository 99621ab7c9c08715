//! Brute-force checks that share no reasoning with the formulas: exact
//! metric dimension by resolving-set search and small-graph isomorphism.

use std::fmt;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::Serialize;

use crate::graph::Graph;
use crate::group::ElementId;
use crate::metric::TwinPartition;
use crate::power::PowerGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_vertices: usize,
    pub max_candidates: u64,
    pub max_time: Duration,
}

impl SearchBudget {
    pub fn for_dim() -> SearchBudget {
        SearchBudget {
            max_vertices: 48,
            max_candidates: 50_000_000,
            max_time: Duration::from_secs(60),
        }
    }

    pub fn for_iso() -> SearchBudget {
        SearchBudget {
            max_vertices: 16,
            max_candidates: 50_000_000,
            max_time: Duration::from_secs(60),
        }
    }

    pub fn with_seconds(self, secs: u64) -> SearchBudget {
        SearchBudget {
            max_time: Duration::from_secs(secs.max(1)),
            ..self
        }
    }

    pub fn with_max_vertices(self, max_vertices: usize) -> SearchBudget {
        SearchBudget {
            max_vertices: max_vertices.max(1),
            ..self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BudgetExceeded {
    Vertices { n: usize, max: usize },
    Candidates { max: u64 },
    Time { seconds: u64 },
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BudgetExceeded::Vertices { n, max } => write!(f, "{n} vertices exceed the limit of {max}"),
            BudgetExceeded::Candidates { max } => write!(f, "more than {max} candidate sets"),
            BudgetExceeded::Time { seconds } => write!(f, "time limit of {seconds}s reached"),
        }
    }
}

impl std::error::Error for BudgetExceeded {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DimOutcome {
    Exact {
        dim: usize,
        witness: Vec<ElementId>,
    },
    Inconclusive {
        lower: usize,
        upper: usize,
        reason: BudgetExceeded,
    },
}

struct Meter {
    budget: SearchBudget,
    start: Instant,
    count: u64,
}

impl Meter {
    fn new(budget: &SearchBudget) -> Meter {
        Meter {
            budget: *budget,
            start: Instant::now(),
            count: 0,
        }
    }

    fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.count += 1;
        if self.count > self.budget.max_candidates {
            return Err(BudgetExceeded::Candidates {
                max: self.budget.max_candidates,
            });
        }
        if self.count % 1024 == 0 && self.start.elapsed() > self.budget.max_time {
            return Err(BudgetExceeded::Time {
                seconds: self.budget.max_time.as_secs(),
            });
        }
        Ok(())
    }
}

/// All-pairs BFS distances, `u8::MAX` for unreachable pairs.
fn distance_matrix(g: &Graph) -> Vec<Vec<u8>> {
    (0..g.len())
        .map(|s| {
            g.bfs_distances(s)
                .into_iter()
                .map(|d| d.map_or(u8::MAX, |d| d.min(254) as u8))
                .collect()
        })
        .collect()
}

// 3^80 < 2^128.
const DIGITS_PER_WORD: usize = 80;

fn resolves(dist: &[Vec<u8>], set: &[usize]) -> bool {
    let n = dist.len();
    let words = set.len().div_ceil(DIGITS_PER_WORD).max(1);
    let mut keys: Vec<Vec<u128>> = Vec::with_capacity(n);
    for v in 0..n {
        let mut key = vec![0u128; words];
        for (i, &s) in set.iter().enumerate() {
            let d = dist[v][s];
            if d > 2 {
                // Not base 3 any more.
                return resolves_slow(dist, set);
            }
            let digit = d as u128;
            let w = &mut key[i / DIGITS_PER_WORD];
            *w = *w * 3 + digit;
        }
        keys.push(key);
    }
    keys.sort_unstable();
    keys.windows(2).all(|w| w[0] != w[1])
}

fn resolves_slow(dist: &[Vec<u8>], set: &[usize]) -> bool {
    let mut keys: Vec<Vec<u8>> = dist.iter().map(|row| set.iter().map(|&s| row[s]).collect()).collect();
    keys.sort_unstable();
    keys.windows(2).all(|w| w[0] != w[1])
}

/// The distance vectors to `w` separate every pair of vertices.
pub fn is_resolving(pg: &PowerGraph, w: &[ElementId]) -> bool {
    let dist = distance_matrix(pg.graph());
    let set: Vec<usize> = w.iter().map(|x| x.index()).collect();
    resolves(&dist, &set)
}

/// Exact metric dimension by search over sets of increasing size.
///
/// Any resolving set misses at most one vertex of each twin class, and
/// swapping two twins is an automorphism, so it suffices to always leave
/// out the largest member of a class and choose which classes to take in
/// full. The search starts from `|G| - |classes|`.
pub fn brute_force_dim(pg: &PowerGraph, tp: &TwinPartition, budget: &SearchBudget) -> DimOutcome {
    let n = pg.len();
    let lower0 = n - tp.len();
    let upper0 = n.saturating_sub(1);
    if n > budget.max_vertices {
        return DimOutcome::Inconclusive {
            lower: lower0,
            upper: upper0,
            reason: BudgetExceeded::Vertices {
                n,
                max: budget.max_vertices,
            },
        };
    }
    let dist = distance_matrix(pg.graph());
    let mut forced = Vec::with_capacity(lower0);
    let mut optional = Vec::with_capacity(tp.len());
    for class in tp.classes() {
        let (last, rest) = class.members.split_last().expect("classes are nonempty");
        forced.extend(rest.iter().map(|x| x.index()));
        optional.push(last.index());
    }
    optional.sort_unstable();

    let mut meter = Meter::new(budget);
    for extra in 0..=optional.len() {
        for chosen in optional.iter().copied().combinations(extra) {
            if let Err(reason) = meter.tick() {
                return DimOutcome::Inconclusive {
                    lower: lower0 + extra,
                    upper: upper0,
                    reason,
                };
            }
            let mut set = forced.clone();
            set.extend(chosen);
            set.sort_unstable();
            if resolves(&dist, &set) {
                return DimOutcome::Exact {
                    dim: set.len(),
                    witness: set.into_iter().map(ElementId::from_index).collect(),
                };
            }
        }
    }
    unreachable!("the full vertex set always resolves")
}

/// An adjacency-preserving bijection `g1 -> g2`, if one exists.
pub fn graph_iso(g1: &Graph, g2: &Graph, budget: &SearchBudget) -> Result<Option<Vec<usize>>, BudgetExceeded> {
    for g in [g1, g2] {
        if g.len() > budget.max_vertices {
            return Err(BudgetExceeded::Vertices {
                n: g.len(),
                max: budget.max_vertices,
            });
        }
    }
    if g1.len() != g2.len() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let (s1, s2) = (vertex_signatures(g1), vertex_signatures(g2));
    if s1.iter().sorted().ne(s2.iter().sorted()) {
        return Ok(None);
    }
    // Most constrained first, then grow along edges.
    let n = g1.len();
    let mut order = Vec::with_capacity(n);
    let mut placed = FixedBitSet::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed.contains(v))
            .max_by_key(|&v| {
                let links = order.iter().filter(|&&u| g1.has_edge(u, v)).count();
                let rarity = s1.iter().filter(|s| **s == s1[v]).count();
                (links, std::cmp::Reverse(rarity), std::cmp::Reverse(v))
            })
            .unwrap();
        placed.insert(next);
        order.push(next);
    }
    let candidates: Vec<Vec<usize>> = order
        .iter()
        .map(|&v| (0..n).filter(|&w| s2[w] == s1[v]).collect())
        .collect();
    let mut search = IsoSearch {
        g1,
        g2,
        order: &order,
        candidates: &candidates,
        map: vec![usize::MAX; n],
        used: FixedBitSet::with_capacity(n),
        meter: Meter::new(budget),
    };
    Ok(search.extend(0)?.then_some(search.map))
}

/// Degree and sorted neighbour degrees.
fn vertex_signatures(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    (0..g.len())
        .map(|v| {
            let nd = g.neighbors(v).ones().map(|u| g.degree(u)).sorted().collect();
            (g.degree(v), nd)
        })
        .collect()
}

struct IsoSearch<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
    order: &'a [usize],
    candidates: &'a [Vec<usize>],
    map: Vec<usize>,
    used: FixedBitSet,
    meter: Meter,
}

impl IsoSearch<'_> {
    fn extend(&mut self, depth: usize) -> Result<bool, BudgetExceeded> {
        let Some(&v) = self.order.get(depth) else {
            return Ok(true);
        };
        for i in 0..self.candidates[depth].len() {
            let w = self.candidates[depth][i];
            if self.used.contains(w) {
                continue;
            }
            self.meter.tick()?;
            let consistent = self.order[..depth]
                .iter()
                .all(|&u| self.g1.has_edge(u, v) == self.g2.has_edge(self.map[u], w));
            if !consistent {
                continue;
            }
            self.map[v] = w;
            self.used.insert(w);
            if self.extend(depth + 1)? {
                return Ok(true);
            }
            self.used.set(w, false);
            self.map[v] = usize::MAX;
        }
        Ok(false)
    }
}
