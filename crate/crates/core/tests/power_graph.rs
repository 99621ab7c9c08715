mod common;

use common::{corpus_groups, group};
use powergraph::graph::Graph;
use powergraph::group::{ClassOrdering, ElementId, Group};
use powergraph::poset::structure::element_poset_with;
use powergraph::power::{
    perfection_check, power_digraph, power_graph, transitive_orientation, transitive_orientation_with,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

/// Edges from explicit powers `x^k`.
fn naive_power_graph(g: &Group) -> Graph {
    let n = g.order();
    let mut out = Graph::new(n);
    for x in g.elements() {
        for k in 1..=n as u64 {
            let y = g.pow(x, k);
            if y != x {
                out.add_edge(x.index(), y.index());
            }
        }
    }
    out
}

#[test]
fn power_graph_matches_explicit_powers() {
    for (name, g) in corpus_groups() {
        assert_eq!(*power_graph(&g).graph(), naive_power_graph(&g), "{name}");
    }
}

#[test]
fn orientation_over_corpus() {
    for (name, g) in corpus_groups() {
        let o = transitive_orientation(&g);
        let d = power_digraph(&g);
        assert!(o.is_transitive(), "{name}");
        assert!(o.digraph().is_subgraph_of(d.digraph()), "{name}");
        assert!(o.digraph().is_orientation_of(power_graph(&g).graph()), "{name}");
    }
}

#[test]
fn closed_form_distances_match_bfs() {
    for (name, g) in corpus_groups() {
        let pg = power_graph(&g);
        for x in g.elements() {
            let bfs = pg.graph().bfs_distances(x.index());
            for y in g.elements() {
                assert_eq!(Some(pg.distance(x, y) as u32), bfs[y.index()], "{name}");
            }
        }
    }
}

#[test]
fn separating_sets_match_distance_definition() {
    for (name, g) in corpus_groups().into_iter().filter(|(_, g)| g.order() <= 24) {
        let pg = power_graph(&g);
        let dist: Vec<Vec<Option<u32>>> = (0..g.order()).map(|v| pg.graph().bfs_distances(v)).collect();
        for x in g.elements() {
            for y in g.elements().filter(|&y| y != x) {
                let expected: Vec<ElementId> = g
                    .elements()
                    .filter(|z| dist[x.index()][z.index()] != dist[y.index()][z.index()])
                    .collect();
                assert_eq!(pg.separating_set(x, y).unwrap(), expected, "{name}");
            }
        }
    }
}

/// Largest clique by exhaustive search over subsets.
fn max_clique(g: &Graph) -> u64 {
    let n = g.len();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if members.len() as u64 > best
            && members.iter().all(|&a| members.iter().all(|&b| a == b || g.has_edge(a, b)))
        {
            best = members.len() as u64;
        }
    }
    best
}

#[test]
fn clique_number_by_exhaustion() {
    for (name, g) in corpus_groups().into_iter().filter(|(_, g)| g.order() <= 12) {
        let p = perfection_check(&g);
        assert_eq!(p.omega, max_clique(power_graph(&g).graph()), "{name}");
        assert!(p.holds, "{name}");
    }
}

#[test]
fn perfection_over_corpus() {
    for (name, g) in corpus_groups() {
        let p = perfection_check(&g);
        assert!(p.holds, "{name}: chi {} omega {}", p.chi, p.omega);
    }
}

fn shuffled_ordering(g: &Group, seed: u64) -> ClassOrdering {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let classes: Vec<Vec<ElementId>> = g
        .cyclic_subgroups()
        .generator_partition()
        .into_iter()
        .map(|mut c| {
            c.shuffle(&mut rng);
            c
        })
        .collect();
    ClassOrdering::from_classes(g, &classes).unwrap()
}

const SAMPLE: [&str; 8] = ["Z(12)", "Z(30)", "D(5)", "Q(16)", "S(4)", "A(4)", "E(2,2)xZ(9)", "Z(2)xZ(8)"];

proptest! {
    #[test]
    fn any_class_ordering_gives_transitive_orientation(which in 0..SAMPLE.len(), seed in any::<u64>()) {
        let g = group(SAMPLE[which]);
        let ord = shuffled_ordering(&g, seed);
        let o = transitive_orientation_with(&g, &ord);
        prop_assert!(o.is_transitive());
        prop_assert!(o.digraph().is_orientation_of(power_graph(&g).graph()));
        prop_assert!(o.digraph().is_subgraph_of(power_digraph(&g).digraph()));
        let l = element_poset_with(&g, &ord);
        let pg = power_graph(&g);
        prop_assert_eq!(&l.comparability_graph(), pg.graph());
    }
}
