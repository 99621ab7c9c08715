//! Finite groups as validated Cayley tables.
//!
//! Every group, whatever family it came from, ends up as an explicit `n × n`
//! table with the identity at index 0. Element orders and inverses are
//! cached at construction; the cyclic-subgroup structure is computed on
//! first use and cached.

mod cyclic;
mod families;
mod spec;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

pub use cyclic::{ClassOrdering, CyclicPoset, CyclicSubgroup, CyclicSubgroups, EulerSum};
pub use families::{build_group, build_group_with, parse_table, BuildOptions, DEFAULT_ORDER_CAP};
pub use spec::{parse_group_spec, GroupSpec, ParseError};

/// Index of an element inside its group's table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ElementId(pub u32);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> ElementId {
        ElementId(i as u32)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A group axiom that a candidate table fails, with the offending elements
/// given as indices of the table as it was supplied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    Closure { a: usize, b: usize, value: usize },
    Identity,
    Inverse { a: usize },
    Associativity { a: usize, b: usize, c: usize, left: usize, right: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AxiomViolation::Closure { a, b, value } => {
                write!(f, "closure: {a}·{b} = {value} is not an element")
            }
            AxiomViolation::Identity => write!(f, "identity: no two-sided identity element"),
            AxiomViolation::Inverse { a } => write!(f, "inverses: element {a} has no inverse"),
            AxiomViolation::Associativity { a, b, c, left, right } => write!(
                f,
                "associativity: triple ({a}, {b}, {c}) gives ({a}·{b})·{c} = {left} but {a}·({b}·{c}) = {right}"
            ),
        }
    }
}

#[derive(Debug, Error)]
pub enum GroupError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("malformed table: {0}")]
    TableFormat(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("group axiom violated, {0}")]
    Axiom(AxiomViolation),
    #[error("group order {order} exceeds the cap of {cap}")]
    OrderCap { order: u64, cap: u64 },
}

#[derive(Debug)]
pub struct Group {
    n: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    order_of: Vec<u64>,
    names: Vec<String>,
    cyclic: OnceLock<CyclicSubgroups>,
}

impl Group {
    /// Validates `table` (row-major, `table[a * n + b] = a·b`) as a group and
    /// renumbers the identity to index 0 by swapping it with the element at 0.
    ///
    /// `names` are carried through the renumbering; when empty, elements are
    /// named by their index in the supplied table.
    pub fn from_table(n: usize, table: Vec<u32>, names: Vec<String>) -> Result<Group, GroupError> {
        if n == 0 {
            return Err(GroupError::TableFormat("a group has at least one element".into()));
        }
        if table.len() != n * n {
            return Err(GroupError::TableFormat(format!(
                "expected {} entries for order {n}, got {}",
                n * n,
                table.len()
            )));
        }
        if !names.is_empty() && names.len() != n {
            return Err(GroupError::TableFormat(format!(
                "expected {n} element names, got {}",
                names.len()
            )));
        }
        let at = |a: usize, b: usize| table[a * n + b] as usize;

        for a in 0..n {
            for b in 0..n {
                if at(a, b) >= n {
                    return Err(GroupError::Axiom(AxiomViolation::Closure { a, b, value: at(a, b) }));
                }
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or(GroupError::Axiom(AxiomViolation::Identity))?;

        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or(GroupError::Axiom(AxiomViolation::Inverse { a }))?;
            inverse[a] = b as u32;
        }

        if let Some((a, b, c)) = associativity_witness(n, &table) {
            return Err(GroupError::Axiom(AxiomViolation::Associativity {
                a,
                b,
                c,
                left: at(at(a, b), c),
                right: at(a, at(b, c)),
            }));
        }

        // Swap the identity into slot 0.
        let swap = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut renumbered = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                renumbered[swap(a) * n + swap(b)] = swap(at(a, b)) as u32;
            }
        }
        let mut new_inverse = vec![0u32; n];
        for a in 0..n {
            new_inverse[swap(a)] = swap(inverse[a] as usize) as u32;
        }
        let mut new_names: Vec<String> = if names.is_empty() {
            (0..n).map(|i| i.to_string()).collect()
        } else {
            names
        };
        new_names.swap(0, identity);

        let mut group = Group {
            n,
            table: renumbered,
            inverse: new_inverse,
            order_of: Vec::new(),
            names: new_names,
            cyclic: OnceLock::new(),
        };
        group.order_of = (0..n).map(|x| group.compute_order(ElementId::from_index(x))).collect();
        Ok(group)
    }

    fn compute_order(&self, x: ElementId) -> u64 {
        let mut k = 1;
        let mut y = x;
        while y != ElementId::IDENTITY {
            y = self.op(y, x);
            k += 1;
        }
        k
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn identity(&self) -> ElementId {
        ElementId::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.n).map(ElementId::from_index)
    }

    #[inline]
    pub fn op(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.table[a.index() * self.n + b.index()])
    }

    #[inline]
    pub fn inverse(&self, a: ElementId) -> ElementId {
        ElementId(self.inverse[a.index()])
    }

    /// `x^k` for `k >= 0`.
    pub fn pow(&self, x: ElementId, k: u64) -> ElementId {
        let k = k % self.order_of[x.index()];
        (0..k).fold(ElementId::IDENTITY, |acc, _| self.op(acc, x))
    }

    /// Least `k >= 1` with `x^k = e`.
    #[inline]
    pub fn element_order(&self, x: ElementId) -> u64 {
        self.order_of[x.index()]
    }

    pub fn name(&self, x: ElementId) -> &str {
        &self.names[x.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Raw row-major table (`a·b` at `a * n + b`), identity at 0.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.order_of.iter().any(|&o| o as usize == self.n)
    }

    pub fn involutions(&self) -> Vec<ElementId> {
        self.elements().filter(|&x| self.element_order(x) == 2).collect()
    }

    /// Number of elements of each order.
    pub fn order_histogram(&self) -> BTreeMap<u64, usize> {
        let mut hist = BTreeMap::new();
        for &o in &self.order_of {
            *hist.entry(o).or_insert(0) += 1;
        }
        hist
    }

    /// The cyclic subgroups of the group, computed on first use.
    pub fn cyclic_subgroups(&self) -> &CyclicSubgroups {
        self.cyclic.get_or_init(|| CyclicSubgroups::compute(self))
    }

    /// Members of `<x>`.
    pub fn generated(&self, x: ElementId) -> &FixedBitSet {
        let cs = self.cyclic_subgroups();
        &cs.subgroups()[cs.index_of(x)].members
    }

    /// `[x]`: every `y` with `<y> = <x>`, ascending.
    pub fn generator_class(&self, x: ElementId) -> Vec<ElementId> {
        let cs = self.cyclic_subgroups();
        cs.subgroups()[cs.index_of(x)]
            .gens
            .ones()
            .map(ElementId::from_index)
            .collect()
    }

    /// True when `<x>` is properly contained in `<y>`.
    pub fn generates_proper_subgroup_of(&self, x: ElementId, y: ElementId) -> bool {
        let cs = self.cyclic_subgroups();
        cs.index_of(x) != cs.index_of(y) && self.generated(y).contains(x.index())
    }

    /// Involutions whose cyclic subgroup is maximal under inclusion.
    pub fn maximal_involutions(&self) -> Vec<ElementId> {
        let cs = self.cyclic_subgroups();
        self.involutions()
            .into_iter()
            .filter(|&x| {
                let members = self.generated(x);
                !cs.subgroups()
                    .iter()
                    .any(|c| c.size > members.count_ones(..) && c.members.contains(x.index()))
            })
            .collect()
    }

    pub fn cyclic_subgroup_poset(&self) -> CyclicPoset {
        CyclicPoset::new(self.cyclic_subgroups())
    }

    pub fn euler_sum_check(&self) -> EulerSum {
        EulerSum::of(self)
    }

    /// Direct product with lexicographic pairing: `(a, b)` has index
    /// `a * |other| + b`.
    pub fn direct_product(&self, other: &Group) -> Result<Group, GroupError> {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let mut table = vec![0u32; n * n];
        for a1 in 0..n1 {
            for b1 in 0..n2 {
                let x = a1 * n2 + b1;
                for a2 in 0..n1 {
                    let a = self.table[a1 * n1 + a2] as usize;
                    for b2 in 0..n2 {
                        let b = other.table[b1 * n2 + b2] as usize;
                        table[x * n + a2 * n2 + b2] = (a * n2 + b) as u32;
                    }
                }
            }
        }
        let mut names = Vec::with_capacity(n);
        for a in 0..n1 {
            for b in 0..n2 {
                names.push(format!("({},{})", self.names[a], other.names[b]));
            }
        }
        Group::from_table(n, table, names)
    }

    pub(crate) fn rename_identity(&mut self, name: &str) {
        self.names[0] = name.to_string();
    }
}

/// Light's associativity test: with `S` generating the magma, the table is
/// associative iff `(x·s)·y = x·(s·y)` for every `x, y` and `s ∈ S`.
fn associativity_witness(n: usize, table: &[u32]) -> Option<(usize, usize, usize)> {
    let at = |a: usize, b: usize| table[a * n + b] as usize;
    let mut generated = FixedBitSet::with_capacity(n);
    let mut members: Vec<usize> = Vec::new();
    let mut gens = Vec::new();
    for g in 0..n {
        if generated.contains(g) {
            continue;
        }
        gens.push(g);
        let mut queue = vec![g];
        generated.insert(g);
        while let Some(x) = queue.pop() {
            members.push(x);
            for i in 0..members.len() {
                let m = members[i];
                for p in [at(m, x), at(x, m)] {
                    if !generated.contains(p) {
                        generated.insert(p);
                        queue.push(p);
                    }
                }
            }
        }
    }
    for &s in &gens {
        for x in 0..n {
            let xs = at(x, s);
            for y in 0..n {
                if at(xs, y) != at(x, at(s, y)) {
                    return Some((x, s, y));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_table(n: usize) -> Vec<u32> {
        (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect()
    }

    #[test]
    fn identity_is_renumbered_to_zero() {
        // Z(3) written with identity at index 2: a·b = (a + b + 1) mod 3.
        let n = 3;
        let table: Vec<u32> = (0..n * n).map(|i| ((i / n + i % n + 1) % n) as u32).collect();
        let g = Group::from_table(n, table, vec![]).unwrap();
        assert_eq!(g.name(ElementId(0)), "2");
        for x in g.elements() {
            assert_eq!(g.op(ElementId::IDENTITY, x), x);
            assert_eq!(g.op(x, g.inverse(x)), ElementId::IDENTITY);
        }
        assert_eq!(g.element_order(ElementId(1)), 3);
    }

    #[test]
    fn rejects_missing_identity() {
        let table = vec![0, 0, 0, 0];
        let err = Group::from_table(2, table, vec![]).unwrap_err();
        assert!(matches!(err, GroupError::Axiom(AxiomViolation::Identity)));
    }

    #[test]
    fn rejects_out_of_range_entry() {
        let mut table = cyclic_table(3);
        table[4] = 7;
        let err = Group::from_table(3, table, vec![]).unwrap_err();
        assert!(matches!(
            err,
            GroupError::Axiom(AxiomViolation::Closure { a: 1, b: 1, value: 7 })
        ));
    }

    #[test]
    fn rejects_loop_that_is_not_associative() {
        // A Latin square with identity 0 and two-sided inverses that is not
        // associative (the smallest such loop has order 5).
        let rows: [[u32; 5]; 5] = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ];
        let table = rows.iter().flatten().copied().collect();
        let err = Group::from_table(5, table, vec![]).unwrap_err();
        match err {
            GroupError::Axiom(AxiomViolation::Associativity { a, b, c, left, right }) => {
                let at = |x: usize, y: usize| rows[x][y] as usize;
                assert_eq!(left, at(at(a, b), c));
                assert_eq!(right, at(a, at(b, c)));
                assert_ne!(left, right);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn orders_in_cyclic_twelve() {
        let g = Group::from_table(12, cyclic_table(12), vec![]).unwrap();
        assert_eq!(g.element_order(ElementId(4)), 3);
        assert_eq!(g.element_order(ElementId(0)), 1);
        assert_eq!(g.pow(ElementId(5), 3), ElementId(3));
        assert!(g.is_cyclic() && g.is_abelian());
    }
}
