use std::path::Path;

use itertools::Itertools;

use super::{Group, GroupError, GroupSpec};

pub const DEFAULT_ORDER_CAP: u64 = 2048;

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub max_order: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_order: DEFAULT_ORDER_CAP,
        }
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<Group, GroupError> {
    build_group_with(spec, &BuildOptions::default())
}

pub fn build_group_with(spec: &GroupSpec, opts: &BuildOptions) -> Result<Group, GroupError> {
    let mut g = build(spec, opts)?;
    if !matches!(spec, GroupSpec::Table(_)) {
        g.rename_identity("e");
    }
    Ok(g)
}

fn check_cap(order: Option<u64>, opts: &BuildOptions) -> Result<(), GroupError> {
    match order {
        Some(o) if o <= opts.max_order => Ok(()),
        o => Err(GroupError::OrderCap {
            order: o.unwrap_or(u64::MAX),
            cap: opts.max_order,
        }),
    }
}

fn build(spec: &GroupSpec, opts: &BuildOptions) -> Result<Group, GroupError> {
    match spec {
        GroupSpec::Table(path) => {
            let g = read_table(path)?;
            check_cap(Some(g.order() as u64), opts)?;
            Ok(g)
        }
        GroupSpec::Product(a, b) => {
            let ga = build(a, opts)?;
            let gb = build(b, opts)?;
            check_cap((ga.order() as u64).checked_mul(gb.order() as u64), opts)?;
            ga.direct_product(&gb)
        }
        atom => {
            check_cap(atom.order(), opts)?;
            match *atom {
                GroupSpec::Cyclic(n) => cyclic(n as usize),
                GroupSpec::Dihedral(n) => dihedral(n as usize),
                GroupSpec::Quaternion(n) => quaternion(n as usize),
                GroupSpec::Symmetric(n) => permutations(n as usize, false),
                GroupSpec::Alternating(n) => permutations(n as usize, true),
                GroupSpec::ElementaryAbelian { p, k } => elementary_abelian(p as usize, k as u32),
                GroupSpec::Table(_) | GroupSpec::Product(..) => unreachable!(),
            }
        }
    }
}

fn power_name(base: &str, i: usize) -> String {
    match i {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{i}"),
    }
}

fn or_e(s: String) -> String {
    if s.is_empty() {
        "e".into()
    } else {
        s
    }
}

fn from_fn(n: usize, names: Vec<String>, mut op: impl FnMut(usize, usize) -> usize) -> Result<Group, GroupError> {
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(op(a, b) as u32);
        }
    }
    Group::from_table(n, table, names)
}

fn cyclic(n: usize) -> Result<Group, GroupError> {
    let names = (0..n).map(|i| or_e(power_name("g", i))).collect();
    from_fn(n, names, |a, b| (a + b) % n)
}

/// `r^i s^j` at index `i + n*j`, with `s r s = r^-1`.
fn dihedral(n: usize) -> Result<Group, GroupError> {
    let names = (0..2 * n)
        .map(|x| {
            let (i, j) = (x % n, x / n);
            or_e(power_name("r", i) + if j == 1 { "s" } else { "" })
        })
        .collect();
    from_fn(2 * n, names, |a, b| {
        let (i, j) = (a % n, a / n);
        let (k, l) = (b % n, b / n);
        let rot = if j == 0 { i + k } else { i + n - k };
        rot % n + n * ((j + l) % 2)
    })
}

/// `a^i b^j` at index `i + m*j` where `m = order/2`, with `a^m = 1`,
/// `b^2 = a^(m/2)` and `b a b^-1 = a^-1`.
fn quaternion(order: usize) -> Result<Group, GroupError> {
    let m = order / 2;
    let half = m / 2;
    let names = (0..order)
        .map(|x| or_e(power_name("a", x % m) + if x >= m { "b" } else { "" }))
        .collect();
    from_fn(order, names, |x, y| {
        let (i, j) = (x % m, x / m);
        let (k, l) = (y % m, y / m);
        match (j, l) {
            (0, _) => (i + k) % m + m * l,
            (_, 0) => (i + m - k) % m + m,
            _ => (i + m - k + half) % m,
        }
    })
}

fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = vec![start + 1];
        seen[start] = true;
        let mut x = perm[start];
        while x != start {
            seen[x] = true;
            cycle.push(x + 1);
            x = perm[x];
        }
        out.push_str(&format!("({})", cycle.iter().join(" ")));
    }
    or_e(out)
}

fn is_even(perm: &[usize]) -> bool {
    let inversions = (0..perm.len())
        .tuple_combinations()
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    inversions % 2 == 0
}

/// Permutations of `{1..n}` in lexicographic order, multiplied as
/// `(στ)(i) = σ(τ(i))`.
fn permutations(n: usize, even_only: bool) -> Result<Group, GroupError> {
    let perms: Vec<Vec<usize>> = (0..n)
        .permutations(n)
        .filter(|p| !even_only || is_even(p))
        .collect();
    let index: std::collections::HashMap<&[usize], usize> =
        perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let names = perms.iter().map(|p| cycle_notation(p)).collect();
    let mut buf = vec![0; n];
    from_fn(perms.len(), names, |a, b| {
        for (i, slot) in buf.iter_mut().enumerate() {
            *slot = perms[a][perms[b][i]];
        }
        index[buf.as_slice()]
    })
}

/// Vectors over `Z_p` of length `k`, coordinate `i` in base-`p` digit `i`.
fn elementary_abelian(p: usize, k: u32) -> Result<Group, GroupError> {
    let n = p.pow(k);
    let digits = |mut x: usize| {
        (0..k)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect::<Vec<_>>()
    };
    let names = (0..n)
        .map(|x| or_e(if x == 0 { String::new() } else { format!("({})", digits(x).iter().join(",")) }))
        .collect();
    from_fn(n, names, |a, b| {
        let (da, db) = (digits(a), digits(b));
        da.iter()
            .zip(&db)
            .rev()
            .fold(0, |acc, (x, y)| acc * p + (x + y) % p)
    })
}

/// Parses the Cayley table file format: the order `n` on the first line,
/// then `n` lines of `n` whitespace-separated 0-based indices (row `a`,
/// entry `b` is `a·b`).
pub fn parse_table(text: &str) -> Result<(usize, Vec<u32>), GroupError> {
    let bad = |msg: String| GroupError::TableFormat(msg);
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| bad("empty table file".into()))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| bad(format!("line 1: expected the group order, found '{}'", header.trim())))?;
    if n == 0 {
        return Err(bad("line 1: order must be positive".into()));
    }
    let mut table = Vec::with_capacity(n * n);
    for row in 0..n {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| bad(format!("expected {n} rows, found {row}")))?;
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != n {
            return Err(bad(format!(
                "line {}: expected {n} entries, found {}",
                lineno + 1,
                entries.len()
            )));
        }
        for tok in entries {
            let v: u32 = tok
                .parse()
                .map_err(|_| bad(format!("line {}: '{tok}' is not an index", lineno + 1)))?;
            table.push(v);
        }
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(bad(format!("line {}: unexpected content after {n} rows", lineno + 1)));
    }
    Ok((n, table))
}

fn read_table(path: &Path) -> Result<Group, GroupError> {
    let text = std::fs::read_to_string(path).map_err(|source| GroupError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let (n, table) = parse_table(&text)?;
    Group::from_table(n, table, Vec::new())
}
