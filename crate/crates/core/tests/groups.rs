mod common;

use common::{corpus_groups, group, heisenberg};
use powergraph::group::{ElementId, Group};
use proptest::prelude::*;

fn naive_gcd(a: u64, b: u64) -> u64 {
    (1..=a.min(b)).rev().find(|d| a % d == 0 && b % d == 0).unwrap_or(a.max(b))
}

fn naive_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| naive_gcd(k, n) == 1).count() as u64
}

/// Order of `x` by repeated multiplication.
fn naive_order(g: &Group, x: ElementId) -> u64 {
    let mut y = x;
    let mut k = 1;
    while y != g.identity() {
        y = g.op(y, x);
        k += 1;
    }
    k
}

#[test]
fn element_orders_match_repeated_multiplication() {
    for (name, g) in corpus_groups() {
        for x in g.elements() {
            assert_eq!(g.element_order(x), naive_order(&g, x), "{name} {}", g.name(x));
        }
    }
}

#[test]
fn generator_classes_have_totient_size() {
    for (name, g) in corpus_groups() {
        for x in g.elements() {
            let class = g.generator_class(x);
            assert_eq!(class.len() as u64, naive_phi(g.element_order(x)), "{name}");
            assert!(class.contains(&x));
        }
    }
}

#[test]
fn euler_sum_over_corpus() {
    for (name, g) in corpus_groups() {
        let e = g.euler_sum_check();
        assert!(e.holds, "{name}: {}", e.sum);
    }
}

#[test]
fn cyclic_groups_have_one_subgroup_per_divisor() {
    for n in 1..=60u64 {
        let g = group(&format!("Z({n})"));
        let divisors = (1..=n).filter(|d| n % d == 0).count();
        assert_eq!(g.cyclic_subgroups().len(), divisors, "Z({n})");
        assert!(g.is_cyclic());
    }
}

#[test]
fn heisenberg_table() {
    let h = heisenberg();
    assert_eq!(h.order(), 27);
    assert!(!h.is_abelian());
    assert!(h.elements().skip(1).all(|x| h.element_order(x) == 3));
    let e = group("E(3,3)");
    assert!(e.is_abelian());
    assert_eq!(h.order_histogram(), e.order_histogram());
    assert_eq!(h.cyclic_subgroups().len(), 14);
    assert_eq!(e.cyclic_subgroups().len(), 14);
}

#[test]
fn info_numbers() {
    let g = group("Z(12)");
    assert_eq!(g.cyclic_subgroups().len(), 6);
    assert_eq!(g.euler_sum_check().sum, 12);
    let q = group("Q(8)");
    assert_eq!(q.involutions().len(), 1);
    assert_eq!(q.cyclic_subgroups().len(), 5);
}

proptest! {
    #[test]
    fn product_orders_are_lcms(a in 1u64..=12, b in 1u64..=12) {
        let g = group(&format!("Z({a})xZ({b})"));
        prop_assert_eq!(g.order() as u64, a * b);
        for x in 0..a {
            for y in 0..b {
                let id = ElementId((x * b + y) as u32);
                let ox = a / naive_gcd(x, a).max(1);
                let oy = b / naive_gcd(y, b).max(1);
                let expected = ox * oy / naive_gcd(ox, oy);
                prop_assert_eq!(g.element_order(id), expected);
            }
        }
        prop_assert_eq!(g.is_cyclic(), naive_gcd(a, b) == 1);
    }

    #[test]
    fn relabeled_tables_keep_orders(n in 1usize..=16, seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        // Element i of the new table is perm[i] in Z_n.
        let table: Vec<u32> = (0..n * n)
            .map(|k| inv[(perm[k / n] + perm[k % n]) % n] as u32)
            .collect();
        let g = Group::from_table(n, table, Vec::new()).unwrap();
        prop_assert_eq!(g.order_histogram(), group(&format!("Z({n})")).order_histogram());
        prop_assert_eq!(g.element_order(g.identity()), 1);
        prop_assert!(g.is_cyclic());
    }
}
