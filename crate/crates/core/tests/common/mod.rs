//! Fixtures and brute-force oracles shared by the integration tests. The
//! oracles work on plain integer pairs and never call the library's
//! enumeration or filtering code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use oie::{make_atomic, ComboSet, Interval, IntervalCombo, Oie};
use rand::Rng;

pub type Pair = (i128, i128);
pub type Row = Vec<Pair>;

pub fn atom(id: &str, ivs: &[Pair]) -> Oie {
    make_atomic(id.into(), ivs.iter().map(|&(s, e)| Interval::of(s, e))).unwrap()
}

pub fn dr_a() -> Oie {
    atom("Dr_A", &[(0, 1), (21, 22)])
}

pub fn dr_b() -> Oie {
    atom("Dr_B", &[(0, 1), (13, 14), (20, 22)])
}

pub fn dr_c() -> Oie {
    atom("Dr_C", &[(0, 1), (19, 22)])
}

pub fn combos(rows: &[&[Pair]]) -> ComboSet {
    ComboSet::from_combos(rows.iter().map(|r| IntervalCombo::of(r))).unwrap()
}

pub fn to_combo_set(rows: &BTreeSet<Row>) -> ComboSet {
    ComboSet::from_combos(rows.iter().map(|r| IntervalCombo::of(r))).unwrap()
}

pub fn rows_of(set: &ComboSet) -> BTreeSet<Row> {
    set.iter()
        .map(|c| {
            c.iter()
                .map(|iv| {
                    (
                        iv.start().value().to_integer(),
                        iv.end().value().to_integer(),
                    )
                })
                .collect()
        })
        .collect()
}

/// Position `k` takes a member of `family[order[k]]`.
pub fn oracle_product(family: &[Vec<Pair>], order: &[usize]) -> BTreeSet<Row> {
    let mut rows: Vec<Row> = vec![vec![]];
    for &o in order {
        let mut next = Vec::new();
        for r in &rows {
            for p in &family[o] {
                let mut r2 = r.clone();
                r2.push(*p);
                next.push(r2);
            }
        }
        rows = next;
    }
    if order.is_empty() {
        return BTreeSet::new();
    }
    rows.into_iter().collect()
}

pub fn oracle_domain(rows: &BTreeSet<Row>, alpha: i128, beta: i128) -> BTreeSet<Row> {
    let inside: BTreeSet<Row> = rows
        .iter()
        .filter(|r| r.iter().all(|&(s, e)| s >= alpha && e <= beta))
        .cloned()
        .collect();
    let n = match rows.iter().next() {
        Some(r) => r.len(),
        None => return BTreeSet::new(),
    };
    for k in 0..n {
        let starts = inside.iter().any(|r| r[k].0 == alpha);
        let ends = inside.iter().any(|r| r[k].1 == beta);
        if !(starts && ends) {
            return BTreeSet::new();
        }
    }
    inside
}

pub fn oracle_ascending(rows: &BTreeSet<Row>) -> BTreeSet<Row> {
    rows.iter()
        .filter(|r| {
            let mut ok = true;
            for i in 0..r.len() {
                for j in i + 1..r.len() {
                    if r[i].1 > r[j].0 {
                        ok = false;
                    }
                }
            }
            ok
        })
        .cloned()
        .collect()
}

pub fn oracle_bound(row: &[Pair]) -> Pair {
    let lo = row.iter().map(|p| p.0).min().unwrap();
    let hi = row.iter().map(|p| p.1).max().unwrap();
    (lo, hi)
}

/// Every permutation of `0..n` in lexicographic order, by repeated
/// next-permutation.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// A random interval with integer ends in `[0, horizon]`.
pub fn random_pair(rng: &mut impl Rng, horizon: i128) -> Pair {
    let s = rng.gen_range(0..horizon);
    let e = rng.gen_range(s + 1..=horizon);
    (s, e)
}

pub fn random_intervals(rng: &mut impl Rng, max_count: usize, horizon: i128) -> Vec<Pair> {
    let count = rng.gen_range(1..=max_count);
    let set: BTreeSet<Pair> = (0..count).map(|_| random_pair(rng, horizon)).collect();
    set.into_iter().collect()
}
