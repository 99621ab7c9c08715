//! Acceptance gate: one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{corpus_groups, group, heisenberg};
use powergraph::graph::Graph;
use powergraph::group::Group;
use powergraph::metric::{
    dim_cyclic_closedform, dim_formula, psi_membership, psi_membership_by_separators, resolving_involutions,
    resolving_involutions_cyclic_closedform, twin_partition, twin_partition_cyclic_closedform,
};
use powergraph::oracle::{graph_iso, SearchBudget};
use powergraph::poset::structure::{power_graph_iso, verify_structure_theorem};
use powergraph::poset::{generalized_lex_product, lexicographic_sum, Poset};
use powergraph::power::{perfection_check, power_digraph, power_graph, transitive_orientation};
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cyclic_formula_path() -> Outcome {
    for n in 1..=500u64 {
        let r = dim_formula(&group(&format!("Z({n})")), None);
        let closed = dim_cyclic_closedform(n);
        ensure(r.dim_formula as u64 == closed, || {
            format!("Z({n}): formula {} closed form {closed}", r.dim_formula)
        })?;
    }
    ensure(dim_cyclic_closedform(30) == 23, || "Z(30) is not 23".into())?;
    Ok("500 cyclic groups agree".into())
}

fn cyclic_oracle_path() -> Outcome {
    for n in 2..=40u64 {
        let r = dim_formula(&group(&format!("Z({n})")), Some(&SearchBudget::for_dim()));
        ensure(r.dim_oracle == Some(r.dim_formula), || {
            format!("Z({n}): formula {} oracle {:?}", r.dim_formula, r.oracle)
        })?;
    }
    Ok("39 cyclic groups agree".into())
}

fn noncyclic_corpus() -> Outcome {
    let mut specs: Vec<String> = (1..=12).map(|n| format!("D({n})")).collect();
    specs.extend(["Q(8)", "Q(16)", "Q(32)", "S(3)", "S(4)", "A(4)"].map(String::from));
    specs.extend(
        ["E(2,2)xZ(3)", "E(2,2)xZ(9)", "E(2,3)xZ(3)", "E(2,3)xZ(9)", "E(2,4)xZ(3)"].map(String::from),
    );
    let budget = SearchBudget::for_dim()
        .with_max_vertices(72)
        .with_seconds(300);
    let mut psi_members = 0;
    for s in &specs {
        let g = group(s);
        let r = dim_formula(&g, Some(&budget));
        ensure(r.dim_oracle == Some(r.dim_formula), || {
            format!("{s}: formula {} oracle {:?}", r.dim_formula, r.oracle)
        })?;
        psi_members += r.psi.member as usize;
        if s == "E(2,2)xZ(3)" {
            ensure(r.dim_formula == 5, || format!("{s}: expected 5, got {}", r.dim_formula))?;
        }
    }
    ensure(psi_members >= 5, || format!("only {psi_members} groups in the +1 case"))?;
    Ok(format!("{} groups agree, {psi_members} in the +1 case", specs.len()))
}

fn orientation_suite(corpus: &[(String, Group)]) -> Outcome {
    for (name, g) in corpus {
        let o = transitive_orientation(g);
        ensure(o.is_transitive(), || format!("{name}: not transitive"))?;
        ensure(o.digraph().is_subgraph_of(power_digraph(g).digraph()), || {
            format!("{name}: arc outside the power digraph")
        })?;
        ensure(o.digraph().is_orientation_of(power_graph(g).graph()), || {
            format!("{name}: not an orientation of the power graph")
        })?;
    }
    Ok(format!("{} groups", corpus.len()))
}

fn structure_theorem(corpus: &[(String, Group)]) -> Outcome {
    for (name, g) in corpus {
        ensure(verify_structure_theorem(g).holds, || format!("{name}: bijection fails"))?;
    }
    Ok(format!("{} groups", corpus.len()))
}

fn euler_identity(corpus: &[(String, Group)]) -> Outcome {
    for (name, g) in corpus {
        let e = g.euler_sum_check();
        ensure(e.holds, || format!("{name}: sum {} for order {}", e.sum, g.order()))?;
    }
    Ok(format!("{} groups", corpus.len()))
}

fn perfection(corpus: &[(String, Group)]) -> Outcome {
    for (name, g) in corpus {
        let p = perfection_check(g);
        ensure(p.holds, || format!("{name}: chi {} omega {}", p.chi, p.omega))?;
    }
    Ok(format!("{} groups", corpus.len()))
}

fn isomorphism_criterion(corpus: &[(String, Group)]) -> Outcome {
    let small: Vec<&(String, Group)> = corpus.iter().filter(|(_, g)| g.order() <= 16).collect();
    let budget = SearchBudget::for_iso();
    let mut pairs = 0;
    for (i, (n1, g1)) in small.iter().map(|e| (&e.0, &e.1)).enumerate() {
        for (n2, g2) in small[i..].iter().map(|e| (&e.0, &e.1)) {
            if g1.order() != g2.order() {
                continue;
            }
            let by_poset = power_graph_iso(g1, g2).map_err(|e| e.to_string())?;
            let by_graph = graph_iso(power_graph(g1).graph(), power_graph(g2).graph(), &budget)
                .map_err(|e| format!("{n1} vs {n2}: {e}"))?;
            ensure(by_poset == by_graph.is_some(), || {
                format!("{n1} vs {n2}: poset {by_poset}, graph {}", by_graph.is_some())
            })?;
            pairs += 1;
        }
    }
    let h = heisenberg();
    let e = group("E(3,3)");
    ensure(power_graph_iso(&h, &e).map_err(|e| e.to_string())?, || {
        "Heisenberg group vs E(3,3) not isomorphic".into()
    })?;
    ensure(h.is_abelian() != e.is_abelian(), || "underlying groups should differ".into())?;
    Ok(format!("{pairs} pairs plus the order-27 pair"))
}

fn characterizations(corpus: &[(String, Group)]) -> Outcome {
    for n in 1..=200u64 {
        let g = group(&format!("Z({n})"));
        let sizes: Vec<u64> = twin_partition(&g).sizes().into_iter().map(|s| s as u64).collect();
        ensure(sizes == twin_partition_cyclic_closedform(n), || format!("Z({n}): twin classes {sizes:?}"))?;
        let w = resolving_involutions(&g).len();
        ensure(w == resolving_involutions_cyclic_closedform(n), || {
            format!("Z({n}): {w} resolving involutions")
        })?;
    }
    let mut checked = 0;
    for (name, g) in corpus.iter().filter(|(_, g)| !g.is_cyclic()) {
        let direct = psi_membership(g).member;
        let other = psi_membership_by_separators(g).map_err(|e| e.to_string())?;
        ensure(direct == other, || format!("{name}: direct {direct}, separators {other}"))?;
        checked += 1;
    }
    Ok(format!("200 cyclic groups, {checked} noncyclic groups"))
}

fn random_poset(rng: &mut impl Rng, max: usize) -> Poset {
    let n = rng.gen_range(1..=max);
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            rel[i][j] = rng.gen_bool(0.4);
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i][m] && rel[m][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    Poset::from_relation(n, |a, b| rel[a][b], None).expect("closure of a DAG")
}

fn lex_commutation() -> Outcome {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    for trial in 0..100 {
        let outer = random_poset(&mut rng, 6);
        let inner: Vec<Poset> = (0..outer.len()).map(|_| random_poset(&mut rng, 3)).collect();
        let sum = lexicographic_sum(&outer, &inner).map_err(|e| e.to_string())?;
        let graphs: Vec<Graph> = inner.iter().map(Poset::comparability_graph).collect();
        let product = generalized_lex_product(&outer.comparability_graph(), &graphs).map_err(|e| e.to_string())?;
        ensure(sum.coords == product.coords && sum.poset.comparability_graph() == product.graph, || {
            format!("trial {trial}: graphs differ")
        })?;
    }
    Ok("100 random families".into())
}

fn main() -> ExitCode {
    let corpus = corpus_groups();
    let criteria: Vec<(&str, Duration, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("cyclic dimension, formula vs closed form, n <= 500", Duration::from_secs(30), Box::new(cyclic_formula_path)),
        ("cyclic dimension, oracle vs formula, 2 <= n <= 40", Duration::from_secs(120), Box::new(cyclic_oracle_path)),
        ("noncyclic corpus, oracle vs formula", Duration::from_secs(300), Box::new(noncyclic_corpus)),
        ("orientation transitive and inside power digraph", Duration::from_secs(10), Box::new(|| orientation_suite(&corpus))),
        ("lexicographic product decomposition", Duration::MAX, Box::new(|| structure_theorem(&corpus))),
        ("euler sum equals group order", Duration::MAX, Box::new(|| euler_identity(&corpus))),
        ("height colouring is proper and chi equals omega", Duration::MAX, Box::new(|| perfection(&corpus))),
        ("poset isomorphism criterion vs graph isomorphism", Duration::MAX, Box::new(|| isomorphism_criterion(&corpus))),
        ("twin classes, resolving involutions and psi cross-checks", Duration::MAX, Box::new(|| characterizations(&corpus))),
        ("comparability commutes with lexicographic sums", Duration::MAX, Box::new(lex_commutation)),
    ];
    let mut failed = 0;
    for (i, (title, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => Err(format!("{detail}, but took longer than {:.0?}", limit)),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("{tag} {:>2} {title}: {detail} ({:.2?})", i + 1, elapsed);
        failed += outcome.is_err() as usize;
    }
    if failed == 0 {
        println!("all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
