#![allow(dead_code)]

use std::path::PathBuf;

use powergraph::corpus::corpus;
use powergraph::group::{build_group, parse_group_spec, Group};

pub fn group(spec: &str) -> Group {
    build_group(&parse_group_spec(spec).unwrap()).unwrap()
}

/// Every corpus group with its name, in corpus order.
pub fn corpus_groups() -> Vec<(String, Group)> {
    corpus()
        .into_iter()
        .map(|e| (e.name(), build_group(&e.spec).unwrap()))
        .collect()
}

pub fn heisenberg_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/heisenberg27.tbl")
}

pub fn heisenberg() -> Group {
    group(&format!("table:{}", heisenberg_path().display()))
}
