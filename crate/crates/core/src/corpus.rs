//! The built-in group corpus and the per-group theorem checks run over it.

use serde::Serialize;

use crate::graph::Graph;
use crate::group::{GroupSpec, Group};
use crate::metric::{class_structure_check, twin_partition};
use crate::poset::structure::verify_structure_theorem;
use crate::power::{perfection_check, power_digraph, transitive_orientation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub spec: GroupSpec,
    pub order: u64,
}

impl CorpusEntry {
    fn new(spec: GroupSpec) -> CorpusEntry {
        let order = spec.order().expect("corpus specs have known orders");
        CorpusEntry { spec, order }
    }

    pub fn name(&self) -> String {
        self.spec.to_string()
    }
}

/// `Z(1..=40)`, `D(1..=12)`, `Q(8|16|32)`, `S(3)`, `S(4)`, `A(4)` and
/// `E(2,k) x Z(3^m)` up to order 72, in that order.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    out.extend((1..=40).map(|n| CorpusEntry::new(GroupSpec::Cyclic(n))));
    out.extend((1..=12).map(|n| CorpusEntry::new(GroupSpec::Dihedral(n))));
    out.extend([8, 16, 32].map(|n| CorpusEntry::new(GroupSpec::Quaternion(n))));
    out.push(CorpusEntry::new(GroupSpec::Symmetric(3)));
    out.push(CorpusEntry::new(GroupSpec::Symmetric(4)));
    out.push(CorpusEntry::new(GroupSpec::Alternating(4)));
    for k in 1..=6u32 {
        for m in 1..=4u32 {
            if 2u64.pow(k) * 3u64.pow(m) <= 72 {
                out.push(CorpusEntry::new(GroupSpec::Product(
                    Box::new(GroupSpec::ElementaryAbelian { p: 2, k: k as u64 }),
                    Box::new(GroupSpec::Cyclic(3u64.pow(m))),
                )));
            }
        }
    }
    out
}

pub fn corpus_up_to(max_order: u64) -> Vec<CorpusEntry> {
    corpus().into_iter().filter(|e| e.order <= max_order).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Structural checks that must hold for every finite group.
pub fn theorem_checks(g: &Group) -> Vec<Check> {
    let mut checks = Vec::new();
    let orientation = transitive_orientation(g);
    let digraph = power_digraph(g);
    checks.push(Check {
        name: "orientation is transitive",
        passed: orientation.is_transitive(),
        detail: format!("{} arcs", orientation.digraph().arc_count()),
    });
    checks.push(Check {
        name: "orientation inside power digraph",
        passed: orientation.digraph().is_subgraph_of(digraph.digraph())
            && orientation.digraph().is_orientation_of(&digraph.digraph().underlying()),
        detail: format!("{} of {} arcs", orientation.digraph().arc_count(), digraph.digraph().arc_count()),
    });
    let structure = verify_structure_theorem(g);
    let complete = structure.subgroup_graph == Graph::complete(structure.subgroup_graph.len());
    checks.push(Check {
        name: "lexicographic product decomposition",
        passed: structure.holds,
        detail: format!(
            "{} cyclic subgroups{}",
            structure.inner_sizes.len(),
            if complete { ", complete graph" } else { "" }
        ),
    });
    let euler = g.euler_sum_check();
    checks.push(Check {
        name: "euler sum",
        passed: euler.holds,
        detail: format!("sum {} for order {}", euler.sum, g.order()),
    });
    let perf = perfection_check(g);
    checks.push(Check {
        name: "chromatic number equals clique number",
        passed: perf.holds,
        detail: format!("chi {} omega {}", perf.chi, perf.omega),
    });
    let tp = twin_partition(g);
    let cls = class_structure_check(g, &tp);
    checks.push(Check {
        name: "twin class structure",
        passed: cls.holds,
        detail: if cls.holds {
            format!("{} classes", tp.len())
        } else {
            cls.failures.join("; ")
        },
    });
    checks
}
