//! Power graphs of finite groups: construction, orientation, poset
//! decomposition and metric dimension, with brute-force cross-checks.

pub mod corpus;
pub mod graph;
pub mod group;
pub mod metric;
pub mod numtheory;
pub mod oracle;
pub mod poset;
pub mod power;
