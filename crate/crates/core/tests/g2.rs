use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use k3g2_core::error::G2Error;
use k3g2_core::g2::*;
use k3g2_core::pairs::{census, classify_pairs, InvolutionPair, PairRule};
use k3g2_core::tables::*;
use k3g2_core::torus::ConstructionCase;

fn pairs() -> &'static [InvolutionPair] {
    static P: OnceLock<Vec<InvolutionPair>> = OnceLock::new();
    P.get_or_init(|| classify_pairs().unwrap())
}

fn catalog() -> Vec<LocusTriple> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/nikulin75.txt");
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let v: Vec<u32> = l.split_whitespace().map(|x| x.parse().unwrap()).collect();
            LocusTriple::new(v[0], v[1], v[2] as u8)
        })
        .collect()
}

fn t(r: u32, a: u32, d: u8) -> Option<LocusTriple> {
    Some(LocusTriple::new(r, a, d))
}

const CASE1_TABLE: [(u32, &[u32]); 10] = [
    (2, &[25, 29, 33, 37, 41, 45, 49, 53, 57, 61, 65]),
    (4, &[27, 31, 35, 39, 43, 47, 51, 55, 59, 63, 67]),
    (6, &[37, 41, 45, 49, 53, 57]),
    (8, &[39, 43, 47, 51, 55]),
    (10, &[41, 45, 49, 53, 57]),
    (12, &[43, 47, 51, 55, 59]),
    (14, &[45, 49]),
    (16, &[47]),
    (18, &[41, 45, 49]),
    (20, &[43, 47, 51]),
];

const CASE2_ROWS: [(u32, u32, u32, u32); 29] = [
    (4, 27, 22, 22),
    (4, 31, 21, 21),
    (4, 35, 20, 20),
    (4, 39, 19, 19),
    (4, 43, 18, 18),
    (4, 59, 14, 14),
    (4, 63, 13, 13),
    (4, 67, 12, 12),
    (6, 29, 23, 21),
    (6, 33, 22, 20),
    (6, 37, 21, 19),
    (6, 41, 20, 18),
    (6, 45, 19, 17),
    (6, 61, 15, 13),
    (6, 65, 14, 12),
    (6, 69, 13, 11),
    (6, 73, 12, 10),
    (8, 43, 21, 17),
    (8, 47, 20, 16),
    (8, 75, 13, 9),
    (20, 75, 22, 6),
    (20, 79, 21, 5),
    (20, 83, 20, 4),
    (20, 87, 19, 3),
    (22, 77, 23, 5),
    (22, 81, 22, 4),
    (22, 85, 21, 3),
    (22, 89, 20, 2),
    (24, 91, 21, 1),
];

#[test]
fn fixed_locus_topology_examples() {
    assert_eq!(fixed_locus_topology(10, 10, Some(0)).unwrap(), FixedLocusTopology::Empty);
    assert_eq!(fixed_locus_topology(10, 8, Some(0)).unwrap(), FixedLocusTopology::TwoElliptic);
    assert_eq!(fixed_locus_topology(11, 11, Some(1)).unwrap(), FixedLocusTopology::Generic { genus: 0, rational: 0 });
    assert_eq!(fixed_locus_topology(1, 1, Some(1)).unwrap(), FixedLocusTopology::Generic { genus: 10, rational: 0 });
    assert_eq!(fixed_locus_topology(9, 1, Some(1)).unwrap(), FixedLocusTopology::Generic { genus: 6, rational: 4 });
    assert!(fixed_locus_topology(10, 10, None).is_err());
    assert!(fixed_locus_topology(3, 2, Some(1)).is_err());
    assert_eq!(fixed_locus_betti(FixedLocusTopology::Generic { genus: 6, rational: 4 }).unwrap(), (5, 12));
    assert_eq!(fixed_locus_betti(FixedLocusTopology::TwoElliptic).unwrap(), (2, 4));
}

#[test]
fn orbifold_betti_numbers_are_0_0_23() {
    for case in ConstructionCase::ALL {
        for p in pairs() {
            let input = InvariantInput::from_tuple(&k3g2_core::pairs::invariant_tuple(p));
            if admissible(case, &input).admissible {
                assert_eq!(orbifold_betti(case, &input).unwrap(), (0, 0, 23));
            }
        }
    }
}

#[test]
fn case2_worked_example() {
    let input = InvariantInput::from_pair(LocusTriple::without_delta(1, 1), LocusTriple::without_delta(11, 11));
    assert_eq!(closed_form_betti(ConstructionCase::Case2, &input).unwrap(), (4, 67));
    let input = InvariantInput::new(t(1, 1, 1), t(11, 11, 1), t(10, 10, 0));
    let o = outcome(ConstructionCase::Case2, &input).unwrap();
    assert_eq!((o.b1, o.b2, o.b3), (0, 4, 67));
    assert_eq!(o.holonomy, HolonomyLabel::G2);
}

#[test]
fn derived_betti_numbers_agree_with_closed_forms_for_abelian_cases() {
    for case in [ConstructionCase::Case1, ConstructionCase::Case2, ConstructionCase::Case3] {
        for p in pairs() {
            let input = InvariantInput::from_tuple(&k3g2_core::pairs::invariant_tuple(p));
            if admissible(case, &input).admissible {
                assert!(cross_check(case, &input).unwrap().agrees(), "{case} {input:?}");
            }
        }
    }
}

#[test]
fn d4_closed_form_counts_each_circle_family_twice() {
    for p in pairs() {
        let input = InvariantInput::from_tuple(&k3g2_core::pairs::invariant_tuple(p));
        if !admissible(ConstructionCase::D4, &input).admissible {
            continue;
        }
        let c = cross_check(ConstructionCase::D4, &input).unwrap();
        assert_eq!(c.closed_form.0, 2 * c.derived.0);
        assert_eq!(c.closed_form.1 - 23, 2 * (c.derived.1 - 23));
        let locus = singular_locus(ConstructionCase::D4, &input).unwrap();
        assert!(locus.components.iter().all(|c| c.copies == 2 && !c.twisted));
    }
}

#[test]
fn case3_exclusions() {
    let base = |t2, t3| InvariantInput::new(t(10, 10, 0), t2, t3);
    let reject = |input: InvariantInput| admissible(ConstructionCase::Case3, &input).reason.unwrap();
    assert!(reject(base(t(10, 8, 0), t(2, 2, 0))).contains("TwoElliptic"));
    assert!(reject(base(t(9, 1, 1), t(3, 3, 1))).contains("r - a >= 4"));
    assert!(admissible(ConstructionCase::Case3, &base(t(11, 11, 1), t(1, 1, 1))).admissible);
    let lopsided = InvariantInput::new(t(10, 10, 0), t(2, 0, 0), t(10, 8, 0));
    assert!(!admissible(ConstructionCase::Case3, &lopsided).admissible);
    let ok = base(t(9, 9, 1), t(3, 3, 1));
    let o = outcome(ConstructionCase::Case3, &ok).unwrap();
    assert_eq!((o.b2, o.b3), (0, 119 - 4 * 12));
    assert!(o.locus.components.iter().all(|c| c.twisted && c.copies == 4));
}

#[test]
fn case3_rejects_r_plus_a_22_with_r_ne_a() {
    let input = InvariantInput::new(t(10, 10, 0), t(1, 1, 1), t(11, 11, 1));
    assert!(admissible(ConstructionCase::Case3, &input).admissible);
    assert_eq!(case3_exclusion(&LocusTriple::new(12, 10, 1), 2).as_deref(), Some("rho2: r + a = 22 with r != a"));
    assert_eq!(case3_exclusion(&LocusTriple::new(10, 8, 0), 3).as_deref(), Some("rho3: TwoElliptic excluded"));
    assert_eq!(case3_exclusion(&LocusTriple::new(9, 5, 1), 2).as_deref(), Some("rho2: r - a >= 4"));
    assert_eq!(case3_exclusion(&LocusTriple::new(10, 8, 1), 2), None);
}

#[test]
fn twisted_b1_of_equal_genus_pair_is_rejected() {
    assert!(matches!(twisted_b1(FixedLocusTopology::TwoElliptic), Err(G2Error::Inadmissible(_))));
}

#[test]
fn inputs_need_two_triples() {
    let input = InvariantInput::new(t(1, 1, 1), None, None);
    assert!(outcome(ConstructionCase::Case2, &input).is_err());
}

#[test]
fn case1_table_with_catalogue() {
    let cat = catalog();
    assert_eq!(cat.len(), 75);
    let inp = inputs(ConstructionCase::Case1, pairs(), Some(&cat));
    let e = entries(ConstructionCase::Case1, &inp).unwrap();
    let table = group_by_b2(&e);
    let expected: BTreeMap<u32, BTreeSet<u32>> =
        CASE1_TABLE.iter().map(|(b2, b3)| (*b2, b3.iter().copied().collect())).collect();
    assert_eq!(table, expected);
    assert!(e.iter().all(|x| x.barely));
}

#[test]
fn case1_catalogue_pairs_used_and_unused() {
    let cat = catalog();
    let inp = inputs(ConstructionCase::Case1, &[], Some(&cat));
    let e = entries(ConstructionCase::Case1, &inp).unwrap();
    let used: BTreeSet<(u32, u32)> = e.iter().map(|x| x.input.rho[1].map(|t| (t.r, t.a)).unwrap()).collect();
    let all: BTreeSet<(u32, u32)> = cat.iter().map(|t| (t.r, t.a)).collect();
    let unused: Vec<_> = all.difference(&used).copied().collect();
    let expected: Vec<_> = all.iter().copied().filter(|&(r, a)| r > 10 && r + a >= 20).collect();
    assert_eq!(unused, expected);
    assert_eq!(unused.len(), 19);
    assert!(used.contains(&(10, 10)));
    let mixed = inputs(ConstructionCase::Case1, pairs(), Some(&cat));
    let e = entries(ConstructionCase::Case1, &mixed).unwrap();
    let used: BTreeSet<(u32, u32)> = e.iter().map(|x| x.input.rho[1].map(|t| (t.r, t.a)).unwrap()).collect();
    let unused: BTreeSet<_> = all.difference(&used).copied().collect();
    let listed = [(11, 9), (11, 11), (12, 10), (18, 2), (19, 1), (19, 3), (20, 2)];
    assert!(listed.iter().all(|p| used.contains(p)));
    assert_eq!(unused.len(), 12);
    assert_eq!(unused, expected.iter().copied().filter(|p| !listed.contains(p)).collect());
}

#[test]
fn case2_sum_tables() {
    let inp = inputs(ConstructionCase::Case2, pairs(), None);
    let rows = sum_rows(ConstructionCase::Case2, &inp).unwrap();
    assert_eq!(rows.len(), 45);
    assert_eq!(rows.iter().filter(|r| r.kovalev_lee).count(), 25);
    let c = census(PairRule::Published).unwrap();
    let listed = list_sum_rows(&c.prime_tuples, &c.double_prime_tuples);
    assert_eq!(listed.len(), 60);
    assert_eq!(listed.iter().filter(|r| r.kovalev_lee).count(), 31);
    let new: Vec<_> = listed.iter().filter(|r| !r.kovalev_lee).map(|r| (r.b2, r.b3, r.sum_r, r.sum_a)).collect();
    assert_eq!(new, CASE2_ROWS.to_vec());
    let realised: BTreeSet<_> = rows.iter().map(|r| (r.b2, r.b3, r.sum_r, r.sum_a)).collect();
    let unrealised: Vec<_> = CASE2_ROWS.iter().filter(|r| !realised.contains(r)).collect();
    assert_eq!(unrealised.len(), 9);
}

#[test]
fn case3_values() {
    let inp = inputs(ConstructionCase::Case3, pairs(), None);
    let e = entries(ConstructionCase::Case3, &inp).unwrap();
    assert_eq!(distinct_pairs(&e), [(0, 71)].into_iter().collect());
    assert!(e.iter().all(|x| x.b2 == 0));
}

#[test]
fn d4_sum_set_equals_case2_sum_set() {
    let cat = catalog();
    for c in [None, Some(&cat[..])] {
        let s2: BTreeSet<_> = sum_rows(ConstructionCase::Case2, &inputs(ConstructionCase::Case2, pairs(), c))
            .unwrap()
            .iter()
            .map(|r| (r.sum_r, r.sum_a))
            .collect();
        let s4: BTreeSet<_> = sum_rows(ConstructionCase::D4, &inputs(ConstructionCase::D4, pairs(), c))
            .unwrap()
            .iter()
            .map(|r| (r.sum_r, r.sum_a))
            .collect();
        assert_eq!(s2, s4);
    }
}

#[test]
fn d4_betti_numbers_match_case2_sums() {
    let cat = catalog();
    let inp = inputs(ConstructionCase::D4, pairs(), Some(&cat));
    let rows = sum_rows(ConstructionCase::D4, &inp).unwrap();
    for r in &rows {
        assert_eq!((r.b2, r.b3), (4 + r.sum_r - r.sum_a, 115 - r.sum_r - 3 * r.sum_a));
    }
    assert_eq!(distinct_pairs(&entries(ConstructionCase::D4, &inp).unwrap()).len(), 74);
    assert_eq!(closed_form_pairs(ConstructionCase::D4, &inp).unwrap().len(), 74);
}
