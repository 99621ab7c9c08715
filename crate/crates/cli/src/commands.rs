use std::fmt::Write as _;
use std::fs;

use anyhow::{Context, Result};
use powergraph::corpus::{corpus_up_to, theorem_checks, Check};
use powergraph::graph::Digraph;
use powergraph::group::{build_group_with, parse_group_spec, BuildOptions, ElementId, Group, GroupError, DEFAULT_ORDER_CAP};
use powergraph::metric::{class_structure_check, dim_formula, resolving_involutions, twin_partition, DimReport, PsiReport};
use powergraph::oracle::{graph_iso, DimOutcome, SearchBudget};
use powergraph::poset::structure::power_graph_iso;
use powergraph::power::{power_digraph, power_graph, transitive_orientation};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Flags, GraphKind};

/// Largest order the corpus run hands to the dimension oracle.
const CORPUS_ORACLE_MAX_ORDER: u64 = 48;
/// Vertex limit for the generic isomorphism oracle behind `iso --verify`.
const ISO_ORACLE_MAX_VERTICES: usize = 64;

pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

fn build(spec: &str, f: &Flags) -> Result<Group, GroupError> {
    let parsed = parse_group_spec(spec)?;
    let opts = BuildOptions {
        max_order: f.max_order.unwrap_or(DEFAULT_ORDER_CAP),
    };
    build_group_with(&parsed, &opts)
}

fn load(spec: &str, f: &Flags) -> Result<Group> {
    build(spec, f).with_context(|| format!("group {spec:?}"))
}

fn write_dot(f: &Flags, dot: impl FnOnce() -> String) -> Result<()> {
    if let Some(path) = &f.dot {
        fs::write(path, dot()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn names(g: &Group, xs: impl IntoIterator<Item = ElementId>) -> Vec<String> {
    xs.into_iter().map(|x| g.name(x).to_string()).collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn info(spec: &str, f: &Flags) -> Result<Report> {
    let g = load(spec, f)?;
    write_dot(f, || power_graph(&g).to_dot(&g))?;
    let hist = g.order_histogram();
    let euler = g.euler_sum_check();
    let subgroups = g.cyclic_subgroups().len();
    let involutions = names(&g, g.involutions());
    let maximal = names(&g, g.maximal_involutions());

    let mut text = String::new();
    writeln!(text, "group: {spec}").unwrap();
    writeln!(text, "order: {}", g.order()).unwrap();
    writeln!(text, "abelian: {}, cyclic: {}", yes_no(g.is_abelian()), yes_no(g.is_cyclic())).unwrap();
    let hist_text: Vec<String> = hist.iter().map(|(o, c)| format!("{o}:{c}")).collect();
    writeln!(text, "element orders (order:count): {}", hist_text.join(" ")).unwrap();
    writeln!(text, "cyclic subgroups: {subgroups}").unwrap();
    let mark = if euler.holds { "ok" } else { "MISMATCH" };
    writeln!(text, "euler sum: {} ({mark}, order {})", euler.sum, g.order()).unwrap();
    writeln!(text, "involutions: {} [{}]", involutions.len(), involutions.join(", ")).unwrap();
    writeln!(text, "maximal involutions: {} [{}]", maximal.len(), maximal.join(", ")).unwrap();

    let json = json!({
        "group": spec,
        "order": g.order(),
        "abelian": g.is_abelian(),
        "cyclic": g.is_cyclic(),
        "element_orders": hist.iter().map(|(o, c)| (o.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
        "cyclic_subgroups": subgroups,
        "euler_sum": euler,
        "involutions": involutions,
        "maximal_involutions": maximal,
    });
    Ok(Report {
        text,
        json,
        ok: euler.holds,
    })
}

fn subgroup_hasse(g: &Group) -> (Digraph, Vec<String>) {
    let cp = g.cyclic_subgroup_poset();
    let mut d = Digraph::new(cp.labels.len());
    for (lo, hi) in cp.hasse_edges() {
        d.add_arc(hi, lo);
    }
    let labels = cp
        .generators
        .iter()
        .zip(&cp.labels)
        .map(|(&x, size)| format!("<{}> ({size})", g.name(x)))
        .collect();
    (d, labels)
}

pub fn graph(spec: &str, kind: GraphKind, f: &Flags) -> Result<Report> {
    let g = load(spec, f)?;
    let mut text = String::new();
    let json;
    match kind {
        GraphKind::Graph => {
            let pg = power_graph(&g);
            write_dot(f, || pg.to_dot(&g))?;
            writeln!(text, "power graph of {spec}: {} vertices, {} edges", pg.len(), pg.graph().edge_count()).unwrap();
            for (u, v) in pg.graph().edges() {
                writeln!(text, "{} -- {}", g.names()[u], g.names()[v]).unwrap();
            }
            json = serde_json::to_value(pg.graph().edge_list())?;
        }
        GraphKind::Digraph | GraphKind::Orientation => {
            let (d, dot, title) = if kind == GraphKind::Digraph {
                let pd = power_digraph(&g);
                let dot = pd.to_dot(&g);
                (pd.digraph().clone(), dot, "power digraph")
            } else {
                let o = transitive_orientation(&g);
                let dot = o.to_dot(&g);
                (o.digraph().clone(), dot, "transitive orientation")
            };
            write_dot(f, || dot)?;
            writeln!(text, "{title} of {spec}: {} vertices, {} arcs", d.len(), d.arc_count()).unwrap();
            for (u, v) in d.arcs() {
                writeln!(text, "{} -> {}", g.names()[u], g.names()[v]).unwrap();
            }
            json = serde_json::to_value(d.arc_list())?;
        }
        GraphKind::Subgroups => {
            let (hasse, labels) = subgroup_hasse(&g);
            write_dot(f, || hasse.to_dot("cyclic_subgroups", &labels))?;
            writeln!(text, "cyclic subgroups of {spec}: {}, {} covering pairs", labels.len(), hasse.arc_count()).unwrap();
            for (hi, lo) in hasse.arcs() {
                writeln!(text, "{} > {}", labels[hi], labels[lo]).unwrap();
            }
            json = serde_json::to_value(g.cyclic_subgroup_poset().to_poset().dump())?;
        }
    }
    Ok(Report { text, json, ok: true })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Verdict {
    Match,
    Mismatch,
    Inconclusive,
    NotRun,
}

impl Verdict {
    fn of(report: &DimReport) -> Verdict {
        match (&report.oracle, report.agreement()) {
            (None, _) => Verdict::NotRun,
            (_, Some(true)) => Verdict::Match,
            (_, Some(false)) => Verdict::Mismatch,
            (_, None) => Verdict::Inconclusive,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Verdict::Match => "MATCH",
            Verdict::Mismatch => "MISMATCH",
            Verdict::Inconclusive => "inconclusive",
            Verdict::NotRun => "-",
        }
    }

    fn failed(self) -> bool {
        self == Verdict::Mismatch
    }
}

fn psi_text(psi: &PsiReport) -> String {
    match (psi.member, psi.p) {
        (true, Some(p)) => format!("member (p = {p})"),
        _ => {
            let reasons: Vec<String> = psi
                .failures
                .iter()
                .map(|r| serde_json::to_value(r).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default())
                .collect();
            format!("not a member ({})", reasons.join(", "))
        }
    }
}

fn dim_budget(f: &Flags) -> SearchBudget {
    SearchBudget::for_dim().with_seconds(f.budget_seconds)
}

pub fn dim(spec: &str, f: &Flags) -> Result<Report> {
    let g = load(spec, f)?;
    write_dot(f, || power_graph(&g).to_dot(&g))?;
    let budget = dim_budget(f);
    let r = dim_formula(&g, f.verify.then_some(&budget));
    let verdict = Verdict::of(&r);

    let mut text = String::new();
    writeln!(text, "group: {spec}").unwrap();
    writeln!(text, "order: {}", r.order).unwrap();
    writeln!(text, "twin classes: {}", r.u_count).unwrap();
    writeln!(text, "resolving involutions: {}", r.w.len()).unwrap();
    writeln!(text, "psi: {}", psi_text(&r.psi)).unwrap();
    writeln!(text, "lower bound: {}", r.lower_bound).unwrap();
    writeln!(text, "dim (formula): {}", r.dim_formula).unwrap();
    match &r.oracle {
        Some(DimOutcome::Exact { dim, witness }) => {
            writeln!(text, "dim (oracle): {dim} {}", verdict.label()).unwrap();
            writeln!(text, "witness: [{}]", names(&g, witness.iter().copied()).join(", ")).unwrap();
        }
        Some(DimOutcome::Inconclusive { lower, upper, reason }) => {
            writeln!(text, "dim (oracle): inconclusive, {reason}; between {lower} and {upper}").unwrap();
        }
        None => {}
    }

    let mut json = serde_json::to_value(&r)?;
    json["verification"] = json!({ "status": verdict, "oracle": r.oracle });
    Ok(Report {
        text,
        json,
        ok: !verdict.failed(),
    })
}

pub fn classes(spec: &str, f: &Flags) -> Result<Report> {
    let g = load(spec, f)?;
    write_dot(f, || power_graph(&g).to_dot(&g))?;
    let tp = twin_partition(&g);
    let w = resolving_involutions(&g);
    let structure = class_structure_check(&g, &tp);

    let mut text = String::new();
    writeln!(text, "twin classes of {spec}: {}", tp.len()).unwrap();
    for c in tp.classes() {
        let kind = serde_json::to_value(c.kind)?;
        writeln!(
            text,
            "  {:<11} {:>3}  [{}]",
            kind.as_str().unwrap_or_default(),
            c.members.len(),
            names(&g, c.members.iter().copied()).join(", ")
        )
        .unwrap();
    }
    writeln!(text, "resolving involutions: {}", w.len()).unwrap();
    for r in &w {
        let pairs: Vec<String> = r.pairs.iter().map(|&(x, y)| format!("{{{}, {}}}", g.name(x), g.name(y))).collect();
        writeln!(text, "  {}: {}", g.name(r.w), pairs.join(" ")).unwrap();
    }
    if structure.holds {
        writeln!(text, "class structure: ok").unwrap();
    } else {
        writeln!(text, "class structure: FAIL").unwrap();
        for line in &structure.failures {
            writeln!(text, "  {line}").unwrap();
        }
    }

    let json = json!({
        "group": spec,
        "classes": tp.classes().iter().map(|c| json!({
            "kind": c.kind,
            "members": c.members,
            "names": names(&g, c.members.iter().copied()),
        })).collect::<Vec<_>>(),
        "resolving_involutions": w,
        "class_structure": { "holds": structure.holds, "failures": structure.failures },
    });
    Ok(Report {
        text,
        json,
        ok: structure.holds,
    })
}

pub fn iso(first: &str, second: &str, f: &Flags) -> Result<Report> {
    let g1 = load(first, f)?;
    let g2 = load(second, f)?;
    let by_poset = power_graph_iso(&g1, &g2)?;
    let mut text = format!(
        "{first} vs {second}: power graphs {}\n",
        if by_poset { "isomorphic" } else { "NOT isomorphic" }
    );
    let mut check = json!(null);
    let mut ok = true;
    if f.verify {
        let budget = SearchBudget::for_iso()
            .with_max_vertices(ISO_ORACLE_MAX_VERTICES)
            .with_seconds(f.budget_seconds);
        let (p1, p2) = (power_graph(&g1), power_graph(&g2));
        match graph_iso(p1.graph(), p2.graph(), &budget) {
            Ok(found) => {
                let agree = found.is_some() == by_poset;
                ok = agree;
                let status = if agree { "AGREE" } else { "DISAGREE" };
                writeln!(text, "graph oracle: {} ({status})", if found.is_some() { "isomorphic" } else { "NOT isomorphic" }).unwrap();
                check = json!({ "status": status.to_lowercase(), "isomorphic": found.is_some(), "mapping": found });
            }
            Err(e) => {
                writeln!(text, "graph oracle: inconclusive, {e}").unwrap();
                check = json!({ "status": "inconclusive", "reason": e });
            }
        }
    }
    let json = json!({ "first": first, "second": second, "isomorphic": by_poset, "verification": check });
    Ok(Report { text, json, ok })
}

fn render_checks(spec: &str, checks: &[Check]) -> Report {
    let mut text = String::new();
    for c in checks {
        writeln!(text, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail).unwrap();
    }
    let ok = checks.iter().all(|c| c.passed);
    writeln!(text, "{spec}: {}", if ok { "all checks passed" } else { "some checks FAILED" }).unwrap();
    Report {
        text,
        json: json!({ "group": spec, "passed": ok, "checks": checks }),
        ok,
    }
}

pub fn verify(spec: &str, f: &Flags) -> Result<Report> {
    let g = match build(spec, f) {
        Ok(g) => g,
        Err(GroupError::Axiom(v)) => {
            let check = Check {
                name: "group axioms",
                passed: false,
                detail: v.to_string(),
            };
            return Ok(render_checks(spec, &[check]));
        }
        Err(e) => return Err(e).with_context(|| format!("group {spec:?}")),
    };
    write_dot(f, || power_graph(&g).to_dot(&g))?;
    Ok(render_checks(spec, &theorem_checks(&g)))
}

#[derive(Debug, Serialize)]
struct CorpusRow {
    group: String,
    order: u64,
    checks_passed: bool,
    failed_checks: Vec<String>,
    u_count: usize,
    w_count: usize,
    psi: bool,
    dim_formula: usize,
    dim_oracle: Option<usize>,
    status: Verdict,
}

impl CorpusRow {
    fn ok(&self) -> bool {
        self.checks_passed && !self.status.failed()
    }
}

fn corpus_row(name: String, order: u64, g: &Group, budget: &SearchBudget) -> CorpusRow {
    let checks = theorem_checks(g);
    let r = dim_formula(g, (order <= CORPUS_ORACLE_MAX_ORDER).then_some(budget));
    CorpusRow {
        group: name,
        order,
        checks_passed: checks.iter().all(|c| c.passed),
        failed_checks: checks.iter().filter(|c| !c.passed).map(|c| c.name.to_string()).collect(),
        u_count: r.u_count,
        w_count: r.w.len(),
        psi: r.psi.member,
        dim_formula: r.dim_formula,
        dim_oracle: r.dim_oracle,
        status: Verdict::of(&r),
    }
}

pub fn corpus(f: &Flags) -> Result<Report> {
    let entries = corpus_up_to(f.max_order.unwrap_or(u64::MAX));
    let budget = dim_budget(f);
    let rows: Vec<CorpusRow> = entries
        .par_iter()
        .map(|e| -> Result<CorpusRow> {
            let opts = BuildOptions { max_order: e.order };
            let g = build_group_with(&e.spec, &opts).with_context(|| e.name())?;
            Ok(corpus_row(e.name(), e.order, &g, &budget))
        })
        .collect::<Result<_>>()?;

    let mut text = String::new();
    writeln!(
        text,
        "{:<14} {:>5} {:>6} {:>4} {:>3} {:>4} {:>7} {:>6}  {}",
        "group", "order", "checks", "|U|", "|W|", "psi", "formula", "oracle", "status"
    )
    .unwrap();
    for r in &rows {
        let oracle = r.dim_oracle.map_or("-".to_string(), |d| d.to_string());
        writeln!(
            text,
            "{:<14} {:>5} {:>6} {:>4} {:>3} {:>4} {:>7} {:>6}  {}",
            r.group,
            r.order,
            if r.checks_passed { "pass" } else { "FAIL" },
            r.u_count,
            r.w_count,
            yes_no(r.psi),
            r.dim_formula,
            oracle,
            r.status.label()
        )
        .unwrap();
    }
    let failures = rows.iter().filter(|r| !r.ok()).count();
    let matched = rows.iter().filter(|r| r.status == Verdict::Match).count();
    writeln!(
        text,
        "{} groups, {matched} oracle matches, {failures} failures",
        rows.len()
    )
    .unwrap();
    let json = json!({ "rows": rows, "failures": failures });
    Ok(Report {
        text,
        json,
        ok: failures == 0,
    })
}
