mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use oie::cli::expr::{parse_expression, Expr};
use oie::feasibility::partition_combos;
use oie::{
    apply_permutation, cartesian_by_index, combo_perm_equivalent, csa, csm, derive_intervals,
    intervals_family, oie_perm_equivalent, semigroup_op, validate_oie, Config, ConstraintSet,
    DomainWindow, IndexTuple, Interval, IntervalCombo, Oie, PermutationMap, Rational,
    SemigroupElement,
};
use proptest::prelude::*;

fn pair() -> impl Strategy<Value = Pair> {
    (0i128..8, 1i128..4).prop_map(|(s, l)| (s, s + l))
}

fn row(max_len: usize) -> impl Strategy<Value = Row> {
    prop::collection::vec(pair(), 1..=max_len)
}

fn family(max_n: usize) -> impl Strategy<Value = Vec<Vec<Pair>>> {
    prop::collection::vec(prop::collection::btree_set(pair(), 1..4), 2..=max_n)
        .prop_map(|sets| sets.into_iter().map(|s| s.into_iter().collect()).collect())
}

/// Each pattern lists, per atom, whether it is pinned and which member it pins.
fn patterns() -> impl Strategy<Value = Vec<Vec<(bool, usize)>>> {
    prop::collection::vec(prop::collection::vec((any::<bool>(), 0usize..4), 4), 0..3)
}

fn ids(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

fn build(
    fam: &[Vec<Pair>],
    pats: &[Vec<(bool, usize)>],
) -> (Vec<Oie>, ConstraintSet, Vec<BTreeMap<usize, Pair>>) {
    let names = ids(fam.len());
    let events: Vec<Oie> = names.iter().zip(fam).map(|(id, s)| atom(id, s)).collect();
    let mut cs = ConstraintSet::new();
    let mut plain = Vec::new();
    for pat in pats {
        let pinned: BTreeMap<usize, Pair> = fam
            .iter()
            .enumerate()
            .filter(|(j, _)| pat[*j].0)
            .map(|(j, set)| (j, set[pat[j].1 % set.len()]))
            .collect();
        if pinned.is_empty() {
            continue;
        }
        let pattern = pinned
            .iter()
            .map(|(&j, &(s, e))| (names[j].as_str().into(), Interval::of(s, e)))
            .collect();
        cs.forbid(pattern).unwrap();
        plain.push(pinned);
    }
    (events, cs, plain)
}

fn oracle_infeasible(row: &Row, order: &[usize], pats: &[BTreeMap<usize, Pair>]) -> bool {
    pats.iter().any(|p| {
        p.iter().all(|(j, iv)| {
            order
                .iter()
                .position(|o| o == j)
                .is_some_and(|k| row[k] == *iv)
        })
    })
}

fn oracle_feasible(
    fam: &[Vec<Pair>],
    order: &[usize],
    pats: &[BTreeMap<usize, Pair>],
) -> BTreeSet<Row> {
    oracle_product(fam, order)
        .into_iter()
        .filter(|r| !oracle_infeasible(r, order, pats))
        .collect()
}

fn horizon(fam: &[Vec<Pair>]) -> (i128, i128) {
    let lo = fam.iter().flatten().map(|p| p.0).min().unwrap();
    let hi = fam.iter().flatten().map(|p| p.1).max().unwrap();
    (lo, hi)
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = "e[a-z0-9_]{0,4}".prop_map(Expr::Ident);
    leaf.prop_recursive(3, 24, 4, |inner| {
        let kids = prop::collection::vec(inner, 2..4);
        prop_oneof![
            kids.clone().prop_map(Expr::Mul),
            kids.clone().prop_map(Expr::NatAdd),
            (kids, -50i128..50, 1i128..6, 1i128..40).prop_map(|(children, a, d, len)| {
                let alpha = Rational::new(a, d);
                Expr::Add {
                    children,
                    alpha,
                    beta: alpha + Rational::new(len, d),
                }
            }),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bound_is_permutation_invariant(r in row(5).prop_flat_map(|r| (Just(r.clone()), Just((0..r.len()).collect::<Vec<_>>()).prop_shuffle()))) {
        let (r, images) = r;
        let combo = IntervalCombo::of(&r);
        let moved = apply_permutation(&combo, &PermutationMap::new(images).unwrap()).unwrap();
        let (lo, hi) = oracle_bound(&r);
        prop_assert_eq!(combo.bound(), Interval::of(lo, hi));
        prop_assert_eq!(moved.bound(), combo.bound());
    }

    #[test]
    fn combo_equivalence_matches_brute_force(a in row(4), b in row(4)) {
        let (ca, cb) = (IntervalCombo::of(&a), IntervalCombo::of(&b));
        let brute = a.len() == b.len()
            && all_permutations(a.len()).into_iter().any(|p| {
                apply_permutation(&ca, &PermutationMap::new(p).unwrap()).unwrap() == cb
            });
        match combo_perm_equivalent(&ca, &cb) {
            Some(p) => {
                prop_assert!(brute);
                prop_assert_eq!(apply_permutation(&ca, &p).unwrap(), cb);
            }
            None => prop_assert!(!brute),
        }
    }

    #[test]
    fn permuted_row_is_always_equivalent(r in row(5).prop_flat_map(|r| (Just(r.clone()), Just((0..r.len()).collect::<Vec<_>>()).prop_shuffle()))) {
        let (r, images) = r;
        let combo = IntervalCombo::of(&r);
        let moved = apply_permutation(&combo, &PermutationMap::new(images).unwrap()).unwrap();
        let p = combo_perm_equivalent(&combo, &moved).unwrap();
        prop_assert_eq!(apply_permutation(&combo, &p).unwrap(), moved);
    }

    #[test]
    fn partition_matches_oracle(fam in family(3), pats in patterns(), pick in any::<prop::sample::Index>()) {
        let (events, cs, plain) = build(&fam, &pats);
        let orders = all_permutations(fam.len());
        let order = pick.get(&orders).clone();
        let idx = IndexTuple::new(order.clone()).unwrap();
        let (good, bad) = partition_combos(&events, &idx, &cs, &Config::default()).unwrap();
        let all = oracle_product(&fam, &order);
        let want_good = oracle_feasible(&fam, &order, &plain);
        prop_assert_eq!(rows_of(&good), want_good.clone());
        let want_bad: BTreeSet<Row> = all.difference(&want_good).cloned().collect();
        prop_assert_eq!(rows_of(&bad), want_bad);
    }

    #[test]
    fn relating_maps_products_onto_each_other(fam in family(4), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let events: Vec<Oie> = ids(fam.len()).iter().zip(&fam).map(|(id, s)| atom(id, s)).collect();
        let orders = all_permutations(fam.len());
        let ia = IndexTuple::new(a.get(&orders).clone()).unwrap();
        let ib = IndexTuple::new(b.get(&orders).clone()).unwrap();
        let limits = Config::default().limits;
        let family = intervals_family(&events);
        let pa = cartesian_by_index(&family, &ia, &limits).unwrap();
        let pb = cartesian_by_index(&family, &ib, &limits).unwrap();
        let m = ia.relating(&ib).unwrap();
        prop_assert_eq!(pa.permuted(&m).unwrap(), pb);
    }

    #[test]
    fn add_matches_oracle_and_validates(fam in family(3), pats in patterns()) {
        let (events, cs, plain) = build(&fam, &pats);
        let (alpha, beta) = horizon(&fam);
        let w = DomainWindow::new(alpha, beta).unwrap();
        let config = Config::default();
        let order: Vec<usize> = (0..fam.len()).collect();
        let got = csa(&events, &IndexTuple::ascending(fam.len()), &w, &cs, &config).unwrap();
        let want = oracle_domain(&oracle_feasible(&fam, &order, &plain), alpha, beta);
        if want.is_empty() {
            prop_assert!(got.is_void());
        } else {
            prop_assert_eq!(rows_of(got.details()), want);
            prop_assert_eq!(got.intervals(), &derive_intervals(got.details()));
            prop_assert!(validate_oie(&got).is_valid());
            prop_assert_eq!(got.atoms().len(), fam.len());
        }
    }

    #[test]
    fn add_is_stable_across_index_tuples(fam in family(3), pats in patterns()) {
        let (events, cs, _) = build(&fam, &pats);
        let (alpha, beta) = horizon(&fam);
        let w = DomainWindow::new(alpha, beta).unwrap();
        let config = Config::default();
        let base = csa(&events, &IndexTuple::ascending(fam.len()), &w, &cs, &config).unwrap();
        for idx in IndexTuple::all(fam.len()) {
            let other = csa(&events, &idx, &w, &cs, &config).unwrap();
            prop_assert_eq!(other.is_void(), base.is_void());
            prop_assert_eq!(other.intervals(), base.intervals());
            prop_assert!(oie_perm_equivalent(&base, &other).is_some());
        }
    }

    #[test]
    fn mul_matches_oracle_and_is_ordered(fam in family(3), pats in patterns(), pick in any::<prop::sample::Index>()) {
        let (events, cs, plain) = build(&fam, &pats);
        let orders = all_permutations(fam.len());
        let order = pick.get(&orders).clone();
        let got = csm(&events, &IndexTuple::new(order.clone()).unwrap(), &cs, &Config::default()).unwrap();
        let want = oracle_ascending(&oracle_feasible(&fam, &order, &plain));
        if want.is_empty() {
            prop_assert!(got.is_void());
        } else {
            prop_assert_eq!(rows_of(got.details()), want);
            for c in got.details() {
                for w in c.items().windows(2) {
                    prop_assert!(w[0].end() <= w[1].start());
                }
            }
            prop_assert!(validate_oie(&got).is_valid());
        }
    }

    #[test]
    fn results_round_trip_through_json(fam in family(3), pats in patterns()) {
        let (events, cs, _) = build(&fam, &pats);
        let (alpha, beta) = horizon(&fam);
        let config = Config::default();
        let add = csa(&events, &IndexTuple::ascending(fam.len()), &DomainWindow::new(alpha, beta).unwrap(), &cs, &config).unwrap();
        let mul = csm(&events, &IndexTuple::ascending(fam.len()), &cs, &config).unwrap();
        for o in [add, mul, events[0].clone()] {
            let text = serde_json::to_string(&o).unwrap();
            let back: Oie = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back, o);
        }
    }

    #[test]
    fn semigroup_matches_set_union(a in prop::collection::btree_set(1usize..=10, 0..5),
                                   b in prop::collection::btree_set(1usize..=10, 0..5),
                                   c in prop::collection::btree_set(1usize..=10, 0..5)) {
        let el = |s: &BTreeSet<usize>| if s.is_empty() { SemigroupElement::ABS } else { SemigroupElement::from_atoms(s.iter().copied()) };
        let (x, y, z) = (el(&a), el(&b), el(&c));
        let want = if a.is_empty() || b.is_empty() || !a.is_disjoint(&b) {
            SemigroupElement::ABS
        } else {
            el(&a.union(&b).copied().collect())
        };
        prop_assert_eq!(semigroup_op(x, y), want);
        prop_assert_eq!(semigroup_op(x, y), semigroup_op(y, x));
        prop_assert_eq!(semigroup_op(semigroup_op(x, y), z), semigroup_op(x, semigroup_op(y, z)));
    }

    #[test]
    fn expressions_round_trip(e in expr()) {
        let text = e.to_string();
        let back = parse_expression(&text).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.to_string(), text);
    }
}
