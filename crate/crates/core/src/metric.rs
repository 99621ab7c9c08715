//! Twin classes, resolving involutions, the family Ψ and the metric
//! dimension of power graphs, with closed forms for cyclic groups.

use fixedbitset::FixedBitSet;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::group::{ElementId, Group};
use crate::numtheory::{divisors, factorize, is_prime_power, prime_divisors, totient};
use crate::oracle::{brute_force_dim, DimOutcome, SearchBudget};
use crate::poset::structure::element_poset;
use crate::power::{power_graph, PowerGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("the group is cyclic; use the cyclic closed form")]
    Cyclic,
    #[error("element {0} is not an involution")]
    NotInvolution(ElementId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwinKind {
    Clique,
    Independent,
    Singleton,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwinClass {
    pub members: Vec<ElementId>,
    pub kind: TwinKind,
}

/// Classes of `x ≡ y ⇔ N(x) = N(y) or N[x] = N[y]`, ordered by least member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwinPartition {
    classes: Vec<TwinClass>,
    #[serde(skip)]
    class_of: Vec<usize>,
}

impl TwinPartition {
    pub fn classes(&self) -> &[TwinClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_index(&self, x: ElementId) -> usize {
        self.class_of[x.index()]
    }

    pub fn class_of(&self, x: ElementId) -> &TwinClass {
        &self.classes[self.class_index(x)]
    }

    /// Class sizes, largest first.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.classes.iter().map(|c| c.members.len()).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }
}

pub fn twin_partition(g: &Group) -> TwinPartition {
    twin_partition_of(&power_graph(g))
}

/// Pairwise neighbourhood comparison. The relation is transitive, so each
/// class is collected around its least member.
pub fn twin_partition_of(pg: &PowerGraph) -> TwinPartition {
    let n = pg.len();
    let graph = pg.graph();
    let closed: Vec<FixedBitSet> = (0..n)
        .map(|x| {
            let mut c = graph.neighbors(x).clone();
            c.insert(x);
            c
        })
        .collect();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let idx = classes.len();
        class_of[x] = idx;
        let mut members = vec![ElementId::from_index(x)];
        for y in x + 1..n {
            if class_of[y] == usize::MAX
                && (graph.neighbors(x) == graph.neighbors(y) || closed[x] == closed[y])
            {
                class_of[y] = idx;
                members.push(ElementId::from_index(y));
            }
        }
        let kind = match members.as_slice() {
            [_] => TwinKind::Singleton,
            [a, b, ..] if graph.has_edge(a.index(), b.index()) => TwinKind::Clique,
            _ => TwinKind::Independent,
        };
        classes.push(TwinClass { members, kind });
    }
    TwinPartition { classes, class_of }
}

/// Twin-class sizes of `Z_n`, largest first: one class for prime powers,
/// otherwise the generator classes with the bottom and top merged.
pub fn twin_partition_cyclic_closedform(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    if n == 1 || is_prime_power(n) {
        return vec![n];
    }
    let mut sizes: Vec<u64> = divisors(n)
        .into_iter()
        .filter(|&d| d != 1 && d != n)
        .map(totient)
        .collect();
    sizes.push(1 + totient(n));
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassStructure {
    pub holds: bool,
    pub failures: Vec<String>,
}

/// Checks the shape of every twin class: the class of the identity, clique
/// classes as nested prime-power generator classes, independent classes as
/// the maximal involutions, and, for noncyclic groups, the matching
/// homogeneous chains and antichains of `L_G`.
pub fn class_structure_check(g: &Group, tp: &TwinPartition) -> ClassStructure {
    let mut failures = Vec::new();
    let cs = g.cyclic_subgroups();
    let e_class = tp.class_index(g.identity());

    let expected_e: Vec<ElementId> = if g.is_cyclic() {
        if g.order() == 1 || is_prime_power(g.order() as u64) {
            g.elements().collect()
        } else {
            let top = cs.subgroups().last().unwrap();
            let mut v: Vec<ElementId> = std::iter::once(g.identity()).chain(top.generator_ids()).collect();
            v.sort_unstable();
            v
        }
    } else if is_generalized_quaternion(g) {
        vec![g.identity(), g.involutions()[0]]
    } else {
        vec![g.identity()]
    };
    if tp.classes[e_class].members != expected_e {
        failures.push(format!(
            "identity class has {} elements, expected {}",
            tp.classes[e_class].members.len(),
            expected_e.len()
        ));
    }

    let maximal_involutions = g.maximal_involutions();
    let l_g = (!g.is_cyclic()).then(|| element_poset(g));
    for (i, class) in tp.classes().iter().enumerate() {
        let first = class.members[0];
        let mut set = FixedBitSet::with_capacity(g.order());
        set.extend(class.members.iter().map(|x| x.index()));

        // Every class is a union of whole generator classes.
        let mut subgroups: Vec<usize> = class.members.iter().map(|&x| cs.index_of(x)).collect();
        subgroups.sort_unstable();
        subgroups.dedup();
        let union: usize = subgroups.iter().map(|&s| cs.subgroups()[s].gens.count_ones(..)).sum();
        if union != class.members.len() {
            failures.push(format!("class of {} splits a generator class", g.name(first)));
        }

        match class.kind {
            TwinKind::Independent => {
                if class.members != maximal_involutions {
                    failures.push(format!(
                        "independent class of {} is not the set of maximal involutions",
                        g.name(first)
                    ));
                }
            }
            _ if i == e_class => {}
            _ => {
                if !nested_prime_power_chain(g, &subgroups) {
                    failures.push(format!(
                        "clique class of {} is not a nested chain of prime-power classes",
                        g.name(first)
                    ));
                }
            }
        }

        if let Some(l) = &l_g {
            let ok = match class.kind {
                TwinKind::Clique => l.is_maximal_homogeneous_chain(&set),
                TwinKind::Independent => l.is_maximal_homogeneous_antichain(&set),
                TwinKind::Singleton => {
                    l.is_maximal_homogeneous_chain(&set) && l.is_maximal_homogeneous_antichain(&set)
                }
            };
            if !ok {
                failures.push(format!(
                    "class of {} is not a maximal homogeneous set of its kind",
                    g.name(first)
                ));
            }
        }
    }
    ClassStructure {
        holds: failures.is_empty(),
        failures,
    }
}

/// Noncyclic 2-group with a single involution.
fn is_generalized_quaternion(g: &Group) -> bool {
    let n = g.order() as u64;
    !g.is_cyclic() && n.is_power_of_two() && g.involutions().len() == 1
}

/// Subgroups (indices sorted by size) of orders `p^s, p^(s+1), ...`,
/// `s >= 1`, each inside the next.
fn nested_prime_power_chain(g: &Group, subgroups: &[usize]) -> bool {
    let cs = g.cyclic_subgroups();
    if subgroups.len() == 1 {
        return true;
    }
    let sizes: Vec<u64> = subgroups.iter().map(|&s| cs.subgroups()[s].size as u64).collect();
    let p = match factorize(sizes[0]).as_slice() {
        [(p, _)] => *p,
        _ => return false,
    };
    sizes.windows(2).all(|w| w[1] == w[0] * p)
        && subgroups.windows(2).all(|w| cs.contains(w[0], w[1]))
}

/// An involution `w` with every pair `{x, y}` outside its twin class that
/// has `R{x,y} = {x, y, w}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvingInvolution {
    pub w: ElementId,
    pub pairs: Vec<(ElementId, ElementId)>,
}

impl Serialize for ResolvingInvolution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            w: ElementId,
            pairs: PairList<'a>,
        }
        struct PairList<'a>(&'a [(ElementId, ElementId)]);
        impl Serialize for PairList<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for (x, y) in self.0 {
                    seq.serialize_element(&[x, y])?;
                }
                seq.end()
            }
        }
        Repr {
            w: self.w,
            pairs: PairList(&self.pairs),
        }
        .serialize(s)
    }
}

pub fn resolving_involutions(g: &Group) -> Vec<ResolvingInvolution> {
    let pg = power_graph(g);
    resolving_involutions_of(g, &pg, &twin_partition_of(&pg))
}

/// Exhaustive scan over pairs for each involution forming its own twin class.
pub fn resolving_involutions_of(g: &Group, pg: &PowerGraph, tp: &TwinPartition) -> Vec<ResolvingInvolution> {
    let n = g.order();
    let graph = pg.graph();
    let mut out = Vec::new();
    for w in g.involutions() {
        if tp.class_of(w).members.len() != 1 {
            continue;
        }
        let wi = w.index();
        let mut pairs = Vec::new();
        for x in 0..n {
            if x == wi {
                continue;
            }
            for y in x + 1..n {
                // w must see exactly one of x, y.
                if y == wi || graph.has_edge(wi, x) == graph.has_edge(wi, y) {
                    continue;
                }
                let mut r = graph.neighbors(x).clone();
                r.symmetric_difference_with(graph.neighbors(y));
                r.set(x, false);
                r.set(y, false);
                if r.count_ones(..) == 1 && r.contains(wi) {
                    pairs.push((ElementId::from_index(x), ElementId::from_index(y)));
                }
            }
        }
        if !pairs.is_empty() {
            out.push(ResolvingInvolution { w, pairs });
        }
    }
    out
}

/// `|W(Z_n)|`: 1 when `n = 2p^m` or `n = 2^m p` for an odd prime `p`.
pub fn resolving_involutions_cyclic_closedform(n: u64) -> usize {
    assert!(n >= 1);
    match factorize(n).as_slice() {
        [(2, r1), (_, r2)] if *r1 == 1 || *r2 == 1 => 1,
        _ => 0,
    }
}

/// For noncyclic `G` and an involution `w`: some cyclic `C` of order `2p^m`
/// (odd prime `p`) contains `w` and `C \ <w>` is homogeneous in `L_G`
/// restricted to `G \ {w}`.
pub fn resolving_involution_characterization(g: &Group, w: ElementId) -> Result<bool, MetricError> {
    if g.is_cyclic() {
        return Err(MetricError::Cyclic);
    }
    if g.element_order(w) != 2 {
        return Err(MetricError::NotInvolution(w));
    }
    let l_g = element_poset(g);
    let rest: Vec<usize> = (0..g.order()).filter(|&x| x != w.index()).collect();
    let sub = l_g.subposet(&rest);
    let w_members = g.generated(w);
    Ok(g.cyclic_subgroups().subgroups().iter().any(|c| {
        let size = c.size as u64;
        let shape = size % 2 == 0 && {
            let half = size / 2;
            half % 2 == 1 && half > 1 && is_prime_power(half)
        };
        if !shape || !c.members.contains(w.index()) {
            return false;
        }
        // Positions in `rest` of C \ <w>.
        let block: Vec<usize> = rest
            .iter()
            .enumerate()
            .filter(|&(_, &x)| c.members.contains(x) && !w_members.contains(x))
            .map(|(i, _)| i)
            .collect();
        sub.is_homogeneous_slice(&block)
    }))
}

/// A condition defining Ψ that the group fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PsiFailure {
    Cyclic,
    /// The prime divisors of `|G|` are not `{2, p}` for an odd prime `p`.
    PrimeDivisors,
    /// More than one subgroup of order `p`.
    OrderPSubgroups,
    /// Some element has order 4.
    ElementOfOrderFour,
    /// Some involution lies in no cyclic subgroup of order `2p`.
    InvolutionOutsideTwoP,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiReport {
    pub member: bool,
    pub p: Option<u64>,
    pub failures: Vec<PsiFailure>,
}

/// Direct test of the defining conditions. When the prime divisors are
/// not `{2, p}` the remaining conditions are not evaluated.
pub fn psi_membership(g: &Group) -> PsiReport {
    let mut failures = Vec::new();
    if g.is_cyclic() {
        failures.push(PsiFailure::Cyclic);
    }
    let primes = prime_divisors(g.order() as u64);
    let p = match primes.as_slice() {
        [2, p] => *p,
        _ => {
            failures.push(PsiFailure::PrimeDivisors);
            return PsiReport {
                member: false,
                p: None,
                failures,
            };
        }
    };
    let hist = g.order_histogram();
    if hist.get(&p).copied().unwrap_or(0) as u64 != p - 1 {
        failures.push(PsiFailure::OrderPSubgroups);
    }
    if hist.contains_key(&4) {
        failures.push(PsiFailure::ElementOfOrderFour);
    }
    let two_p: Vec<&FixedBitSet> = g
        .cyclic_subgroups()
        .subgroups()
        .iter()
        .filter(|c| c.size as u64 == 2 * p)
        .map(|c| &c.members)
        .collect();
    if g
        .involutions()
        .iter()
        .any(|w| !two_p.iter().any(|m| m.contains(w.index())))
    {
        failures.push(PsiFailure::InvolutionOutsideTwoP);
    }
    let member = failures.is_empty();
    PsiReport {
        member,
        p: member.then_some(p),
        failures,
    }
}

/// Second characterization of Ψ through separating sets of the identity:
/// some `x ≠ e` has `R{e,x} \ {e,x}` made of involutions, at least `r - 3`
/// of them non-maximal, where `r = max(|R{e,x}|, 4)`.
pub fn psi_membership_by_separators(g: &Group) -> Result<bool, MetricError> {
    if g.is_cyclic() {
        return Err(MetricError::Cyclic);
    }
    let pg = power_graph(g);
    let maximal = g.maximal_involutions();
    let e = g.identity();
    Ok(g.elements().filter(|&x| x != e).any(|x| {
        let r = pg.separating_set(e, x).expect("distinct");
        let inner: Vec<ElementId> = r.iter().copied().filter(|&z| z != e && z != x).collect();
        if inner.iter().any(|&z| g.element_order(z) != 2) {
            return false;
        }
        let non_maximal = inner.iter().filter(|z| !maximal.contains(z)).count();
        non_maximal + 3 >= r.len().max(4)
    }))
}

#[derive(Debug, Clone, Serialize)]
pub struct DimReport {
    pub order: usize,
    pub u_count: usize,
    pub w: Vec<ResolvingInvolution>,
    pub psi: PsiReport,
    pub lower_bound: usize,
    pub dim_formula: usize,
    /// Exact oracle value; `None` when not requested or inconclusive.
    pub dim_oracle: Option<usize>,
    #[serde(skip)]
    pub oracle: Option<DimOutcome>,
}

impl DimReport {
    /// `Some(true)` on agreement, `Some(false)` on a mismatch, `None` when
    /// the oracle did not produce an exact value.
    pub fn agreement(&self) -> Option<bool> {
        self.dim_oracle.map(|d| d == self.dim_formula)
    }
}

/// Metric dimension of the power graph from twin classes, resolving
/// involutions and Ψ. With a budget the brute-force oracle also runs.
pub fn dim_formula(g: &Group, verify: Option<&SearchBudget>) -> DimReport {
    let pg = power_graph(g);
    let tp = twin_partition_of(&pg);
    let w = resolving_involutions_of(g, &pg, &tp);
    let psi = psi_membership(g);
    let n = g.order();
    let lower_bound = n - tp.len() + w.len();
    let dim = if psi.member { n - tp.len() + 1 } else { lower_bound };
    let oracle = verify.map(|budget| brute_force_dim(&pg, &tp, budget));
    let dim_oracle = match &oracle {
        Some(DimOutcome::Exact { dim, .. }) => Some(*dim),
        _ => None,
    };
    DimReport {
        order: n,
        u_count: tp.len(),
        w,
        psi,
        lower_bound,
        dim_formula: dim,
        dim_oracle,
        oracle,
    }
}

/// Metric dimension of the power graph of `Z_n` from the factorization of `n`.
pub fn dim_cyclic_closedform(n: u64) -> u64 {
    assert!(n >= 1);
    let f = factorize(n);
    match f.as_slice() {
        [] | [_] => n - 1,
        [(2, 1), (_, r2)] => n - 2 * *r2 as u64,
        [(2, r1), (_, 1)] => n - 2 * *r1 as u64,
        _ => n + 1 - f.iter().map(|&(_, r)| r as u64 + 1).product::<u64>(),
    }
}
