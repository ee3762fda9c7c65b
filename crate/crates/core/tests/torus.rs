use std::collections::BTreeSet;

use k3g2_core::g2::{fixed_point_subgroup_order, outcome, InvariantInput, LocusTriple, Pi1Label};
use k3g2_core::torus::*;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn circles(set: &TorusFixedSet) -> BTreeSet<(Point, [i64; 3])> {
    assert_eq!(set.dimension, Some(1));
    set.components.iter().map(|c| (c.base_point, c.direction().unwrap())).collect()
}

fn family(points: &[[(i64, i64); 3]], dir: [i64; 3]) -> BTreeSet<(Point, [i64; 3])> {
    points.iter().map(|p| ([q(p[0].0, p[0].1), q(p[1].0, p[1].1), q(p[2].0, p[2].1)], dir)).collect()
}

fn quarter_grid(a: [(i64, i64); 3], free: usize) -> Vec<[(i64, i64); 3]> {
    let mut out = Vec::new();
    for e1 in 0..2 {
        for e2 in 0..2 {
            let mut p = a;
            let mut k = 0;
            for (i, c) in p.iter_mut().enumerate() {
                if i == free {
                    *c = (0, 1);
                    continue;
                }
                let e = if k == 0 { e1 } else { e2 };
                k += 1;
                *c = (c.0 * 2 + e * c.1, c.1 * 2);
            }
            out.push(p);
        }
    }
    out
}

#[test]
fn case1_fixed_sets() {
    let act = builtin_action(ConstructionCase::Case1).unwrap();
    assert!(fixed_set(&act.psi1).is_empty());
    assert!(fixed_set(&act.group.elements[act.element(1, 1)]).is_empty());
    let f2 = fixed_set(&act.psi2);
    assert_eq!(circles(&f2), family(&quarter_grid([(0, 1), (0, 1), (0, 1)], 1), [0, 1, 0]));
}

#[test]
fn case2_fixed_sets_are_separated_in_the_third_coordinate() {
    let act = builtin_action(ConstructionCase::Case2).unwrap();
    let f1 = circles(&fixed_set(&act.psi1));
    let f2 = circles(&fixed_set(&act.psi2));
    assert_eq!(f1.len(), 4);
    assert_eq!(f2.len(), 4);
    let third = |s: &BTreeSet<(Point, [i64; 3])>| s.iter().map(|(p, _)| p[2]).collect::<BTreeSet<_>>();
    assert_eq!(third(&f1), [q(0, 1), q(1, 2)].into_iter().collect());
    assert_eq!(third(&f2), [q(1, 4), q(3, 4)].into_iter().collect());
    assert!(fixed_set(&act.group.elements[act.element(1, 1)]).is_empty());
}

#[test]
fn case3_fixed_sets() {
    let act = builtin_action(ConstructionCase::Case3).unwrap();
    for (j, k) in [(1, 0), (0, 1), (1, 1)] {
        assert_eq!(circles(&fixed_set(&act.group.elements[act.element(j, k)])).len(), 4);
    }
}

#[test]
fn d4_group_and_fixed_sets() {
    let act = builtin_action(ConstructionCase::D4).unwrap();
    assert_eq!(act.group.order(), 8);
    assert!(act.group.is_dihedral());
    assert!(!act.group.is_abelian());
    let g = |j, k| act.group.elements[act.element(j, k)];
    for j in 1..4 {
        assert!(fixed_set(&g(j, 0)).is_empty(), "gamma_{j}0");
    }
    assert_eq!(circles(&fixed_set(&g(0, 1))), family(&quarter_grid([(0, 1), (0, 1), (0, 1)], 1), [0, 1, 0]));
    assert_eq!(circles(&fixed_set(&g(1, 1))), family(&quarter_grid([(1, 8), (1, 8), (0, 1)], 2), [0, 0, 1]));
    assert_eq!(circles(&fixed_set(&g(2, 1))), family(&quarter_grid([(1, 4), (0, 1), (0, 1)], 1), [0, 1, 0]));
    assert_eq!(circles(&fixed_set(&g(3, 1))), family(&quarter_grid([(3, 8), (1, 8), (0, 1)], 2), [0, 0, 1]));
}

// Fixed grid points of f, clustered by adjacency on the 1/n grid of the torus.
fn grid_clusters(f: &AffineTorusMap, n: i64) -> (BTreeSet<Point>, usize) {
    let fixed: BTreeSet<Point> = grid_points(n).into_iter().filter(|p| reduce_point(f.apply(p)) == *p).collect();
    let mut seen = BTreeSet::new();
    let mut clusters = 0;
    for &p in &fixed {
        if !seen.insert(p) {
            continue;
        }
        clusters += 1;
        let mut stack = vec![p];
        while let Some(x) = stack.pop() {
            for d in 0..27 {
                let off = [d % 3 - 1, d / 3 % 3 - 1, d / 9 - 1];
                let y = reduce_point([x[0] + q(off[0], n), x[1] + q(off[1], n), x[2] + q(off[2], n)]);
                if fixed.contains(&y) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    (fixed, clusters)
}

#[test]
fn grid_oracle_agrees_with_fixed_sets() {
    for case in ConstructionCase::ALL {
        let act = builtin_action(case).unwrap();
        for f in &act.group.elements {
            let set = fixed_set(f);
            let (grid_fixed, clusters) = grid_clusters(f, 8);
            for p in grid_points(8) {
                assert_eq!(set.locate(&p).is_some(), grid_fixed.contains(&p), "{case} {f} at {p:?}");
            }
            if !f.is_identity() {
                assert_eq!(clusters, set.components.len(), "{case} {f}");
            }
        }
    }
}

#[test]
fn fixed_point_subgroup_matches_fundamental_group_label() {
    let t = |r, a, d| Some(LocusTriple::new(r, a, d));
    let inputs = [
        (ConstructionCase::Case1, InvariantInput::new(t(1, 1, 1), t(11, 11, 1), t(10, 10, 0))),
        (ConstructionCase::Case2, InvariantInput::new(t(1, 1, 1), t(11, 11, 1), t(10, 10, 0))),
        (ConstructionCase::Case2, InvariantInput::new(t(10, 10, 0), t(9, 1, 1), t(3, 1, 1))),
        (ConstructionCase::Case3, InvariantInput::new(t(10, 10, 0), t(9, 9, 1), t(3, 3, 1))),
        (ConstructionCase::D4, InvariantInput::new(t(2, 0, 0), t(9, 9, 1), t(11, 11, 1))),
    ];
    for (case, input) in inputs {
        let o = outcome(case, &input).unwrap();
        let act = builtin_action(case).unwrap();
        let nonempty = [0, 1, 2].map(|i| input.rho[i].is_some_and(|t| !t.is_empty_locus().unwrap()));
        let full = fixed_point_subgroup_order(&act, nonempty) == act.group.order();
        assert_eq!(full, o.pi1 == Pi1Label::Trivial, "{case}");
    }
}

#[test]
fn display_and_parse() {
    let (psi1, _) = builtin_generators(ConstructionCase::Case1);
    assert_eq!(psi1.to_string(), "(1/2+x1, -x2, 1/2-x3)");
    for case in ConstructionCase::ALL {
        assert_eq!(case.label().parse::<ConstructionCase>().unwrap(), case);
    }
    assert!("5".parse::<ConstructionCase>().is_err());
}

#[test]
fn invalid_maps_are_rejected() {
    assert!(AffineTorusMap::new([[2, 0, 0], [0, 1, 0], [0, 0, 1]], [q(0, 1); 3]).is_err());
    assert!(AffineTorusMap::diagonal([1, 1, 1], [1, 0, 0], 3).is_err());
}

#[test]
fn labels_form_klein_four_group() {
    let all = [RhoLabel::IDENTITY, RhoLabel::RHO1, RhoLabel::RHO2, RhoLabel::RHO3];
    for a in all {
        assert_eq!(a.compose(a), RhoLabel::IDENTITY);
        for b in all {
            let s = a.compose(b).omega_signs();
            let (x, y) = (a.omega_signs(), b.omega_signs());
            assert_eq!(s, [x[0] * y[0], x[1] * y[1], x[2] * y[2]]);
        }
    }
    assert_eq!(RhoLabel::RHO1.compose(RhoLabel::RHO2), RhoLabel::RHO3);
}

fn translation() -> impl Strategy<Value = Point> {
    prop::array::uniform3(0i64..8).prop_map(|v| v.map(|x| q(x, 8)))
}

fn sign_map() -> impl Strategy<Value = AffineTorusMap> {
    (prop::array::uniform2(prop::bool::ANY), translation()).prop_map(|(s, t)| {
        let a = if s[0] { 1 } else { -1 };
        let b = if s[1] { 1 } else { -1 };
        let signs = [a, b, a * b];
        AffineTorusMap::new([[signs[0], 0, 0], [0, signs[1], 0], [0, 0, signs[2]]], t).unwrap()
    })
}

proptest! {
    #[test]
    fn fixed_set_components_are_fixed_and_canonical(f in sign_map(), p in translation()) {
        let set = fixed_set(&f);
        for c in &set.components {
            prop_assert_eq!(reduce_point(f.apply(&c.base_point)), c.base_point);
            prop_assert_eq!(&c.image(&f), c);
            let moved = reduce_point([
                c.base_point[0] + p[0] * c.directions.first().map_or(0, |d| d[0]),
                c.base_point[1] + p[0] * c.directions.first().map_or(0, |d| d[1]),
                c.base_point[2] + p[0] * c.directions.first().map_or(0, |d| d[2]),
            ]);
            prop_assert!(c.contains(&moved));
            prop_assert_eq!(&TorusComponent::canonical(moved, c.directions.clone()), c);
        }
        let on_grid = reduce_point(f.apply(&p)) == p;
        prop_assert_eq!(on_grid, set.locate(&p).is_some());
    }

    #[test]
    fn composition_and_inverse(f in sign_map(), g in sign_map(), p in translation()) {
        let fg = compose(&f, &g);
        prop_assert_eq!(reduce_point(fg.apply(&p)), reduce_point(f.apply(&g.apply(&p))));
        prop_assert!(compose(&f, &inverse(&f)).is_identity());
    }
}
