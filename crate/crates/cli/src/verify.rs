//! The self-verification suite behind `verify-paper`.

use std::collections::{BTreeMap, BTreeSet};

use k3g2_core::g2::{case3_exclusion, closed_form_betti, orbifold_betti, InvariantInput, LocusTriple};
use k3g2_core::involution::{
    delta_brute_force, delta_from_generators, double_prime_invariants, fixed_sublattice, prime_invariants,
    RhoDoublePrimeSpec, RhoPrimeSpec, SwapPair,
};
use k3g2_core::lattice::{discriminant_data, k3_gram, smith_normal_form};
use k3g2_core::pairs::{
    enumerate_double_prime_pairs, enumerate_prime_pairs_with, kovalev_lee_admissible, simple_triples,
    trivial_common_fixed, PairRule,
};
use k3g2_core::tables::{self, list_sum_rows};
use k3g2_core::torus::{
    builtin_action, fixed_set, grid_points, reduce_point, AffineTorusMap, ConstructionCase, Point, Rational,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::artifact::{Cell, Report, TableArtifact};
use crate::commands::{self, Context};
use crate::error::CliError;
use crate::published;

pub const TITLES: [&str; 11] = [
    "invariant tables",
    "pair census",
    "simple-triple census",
    "structural properties of classified pairs",
    "torus fixed sets",
    "orbifold Betti numbers",
    "case 1 table",
    "case 2 sums and new pairs",
    "case 3 values",
    "D4 pairs and literature diffs",
    "data validation",
];

/// Criteria that need the Nikulin catalogue.
pub const EXTERNAL: [u8; 2] = [7, 10];

/// Criteria bundled into the last one.
pub const SIMPLE_ONLY: [u8; 8] = [1, 2, 3, 4, 5, 6, 8, 9];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub details: Vec<String>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!("criterion {:>2}: {} {}", self.id, if self.passed { "PASS" } else { "FAIL" }, self.title)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub criteria: Vec<CriterionResult>,
    pub skipped: Vec<u8>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn failed_ids(&self) -> Vec<u8> {
        self.criteria.iter().filter(|c| !c.passed).map(|c| c.id).collect()
    }

    pub fn to_report(&self) -> Report {
        let mut summary: Vec<String> = self.criteria.iter().map(CriterionResult::line).collect();
        if !self.skipped.is_empty() {
            let ids: Vec<String> = self.skipped.iter().map(|i| i.to_string()).collect();
            summary.push(format!("skipped: {}", ids.join(", ")));
        }
        let rows = self
            .criteria
            .iter()
            .map(|c| vec![Cell::from(u32::from(c.id)), c.title.as_str().into(), c.passed.into()])
            .collect();
        let details = self
            .criteria
            .iter()
            .flat_map(|c| {
                c.details
                    .iter()
                    .enumerate()
                    .map(|(i, d)| vec![Cell::from(u32::from(c.id)), (i + 1).into(), d.as_str().into()])
            })
            .collect();
        Report {
            summary,
            tables: vec![
                TableArtifact::new("criteria", &["id", "title", "passed"], 1, rows),
                TableArtifact::new("details", &["id", "line", "text"], 2, details),
            ],
        }
    }
}

struct Checks {
    passed: bool,
    details: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Self { passed: true, details: Vec::new() }
    }

    fn check(&mut self, ok: bool, msg: impl Into<String>) {
        self.passed &= ok;
        self.details.push(format!("{}: {}", if ok { "ok" } else { "FAIL" }, msg.into()));
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.details.push(format!("note: {}", msg.into()));
    }

    fn finish(self, id: u8) -> CriterionResult {
        CriterionResult { id, title: TITLES[id as usize - 1].to_string(), passed: self.passed, details: self.details }
    }
}

fn show_pairs(set: &BTreeSet<(u32, u32)>) -> String {
    let v: Vec<String> = set.iter().map(|(a, b)| format!("({a},{b})")).collect();
    format!("{{{}}}", v.join(" "))
}

fn show_set<T: std::fmt::Debug>(set: &BTreeSet<T>) -> String {
    let v: Vec<String> = set.iter().map(|x| format!("{x:?}")).collect();
    format!("{{{}}}", v.join(" "))
}

fn table_from(rows: &[(u32, &[u32])]) -> BTreeSet<(u32, u32)> {
    rows.iter().flat_map(|(b2, b3s)| b3s.iter().map(move |b3| (*b2, *b3))).collect()
}

/// Row-by-row differences between two `(b², b³)` sets.
fn row_diff(got: &BTreeSet<(u32, u32)>, want: &BTreeSet<(u32, u32)>) -> Vec<String> {
    let mut rows: BTreeMap<u32, (Vec<u32>, Vec<u32>)> = BTreeMap::new();
    for &(b2, b3) in want.difference(got) {
        rows.entry(b2).or_default().0.push(b3);
    }
    for &(b2, b3) in got.difference(want) {
        rows.entry(b2).or_default().1.push(b3);
    }
    rows.into_iter().map(|(b2, (missing, extra))| format!("b2={b2}: missing {missing:?}, extra {extra:?}")).collect()
}

pub fn invariant_tables() -> Result<CriterionResult, CliError> {
    let mut c = Checks::new();
    for ((j, k, l), want) in published::DIAGONAL_PRIME_INVARIANTS {
        let got = prime_invariants(&RhoPrimeSpec::diagonal(j, k, l)?)?.triple();
        c.check(got == want, format!("rho'_{j}{k}{l} = {got:?}, expected {want:?}"));
    }
    for (m, want) in published::SWAP_PRIME_INVARIANTS {
        let mut got = BTreeSet::new();
        for pair in SwapPair::ALL {
            for k in 1..=4 {
                got.insert(prime_invariants(&RhoPrimeSpec::swap(pair, k, m)?)?.triple());
            }
        }
        c.check(got == BTreeSet::from([want]), format!("swap forms with m={m}: {}", show_set(&got)));
    }
    for (t, want) in published::DOUBLE_PRIME_INVARIANTS {
        let got = double_prime_invariants(&RhoDoublePrimeSpec::new(t)?)?.triple();
        c.check(got == want, format!("rho''{t} = {got:?}, expected {want:?}"));
    }
    Ok(c.finish(1))
}

pub fn pair_census(ctx: &Context) -> Result<CriterionResult, CliError> {
    let mut c = Checks::new();
    let census = ctx.census(ctx.rule)?;
    let rule = match ctx.rule {
        PairRule::Strict => "strict",
        PairRule::Published => "published",
    };
    c.note(format!("rule: {rule}"));
    c.check(
        census.family_counts == published::FAMILY_COUNTS,
        format!(
            "prime pair classes {:?} (sum {}), expected {:?} (sum {})",
            census.family_counts,
            census.prime_pairs,
            published::FAMILY_COUNTS,
            published::PRIME_PAIR_COUNT
        ),
    );
    let dp: Vec<(u8, u8)> = enumerate_double_prime_pairs().iter().map(|(a, b)| (a.index(), b.index())).collect();
    c.check(dp == published::DOUBLE_PRIME_INDEX_PAIRS, format!("double-prime pair classes {dp:?}"));
    c.check(
        census.total_pairs == published::TOTAL_PAIRS,
        format!("pair classes {}, expected {}", census.total_pairs, published::TOTAL_PAIRS),
    );
    let listed: BTreeSet<_> = published::PRIME_TUPLES.into_iter().collect();
    c.check(
        census.prime_tuples == listed,
        format!(
            "prime tuples {} (missing {}), expected {}",
            census.prime_tuples.len(),
            listed.difference(&census.prime_tuples).count(),
            listed.len()
        ),
    );
    let listed_dp: BTreeSet<_> = published::DOUBLE_PRIME_TUPLES.into_iter().collect();
    c.check(
        census.double_prime_tuples == listed_dp,
        format!("double-prime tuples {}", census.double_prime_tuples.len()),
    );
    c.check(
        census.tuples.len() == published::TUPLE_COUNT,
        format!("distinct tuples {}, expected {}", census.tuples.len(), published::TUPLE_COUNT),
    );
    if ctx.rule == PairRule::Strict {
        let p = ctx.census(PairRule::Published)?;
        let reproduced = p.family_counts == published::FAMILY_COUNTS
            && p.total_pairs == published::TOTAL_PAIRS
            && p.prime_tuples == listed
            && p.tuples.len() == published::TUPLE_COUNT;
        c.note(format!(
            "published rule (common fixed lattice tested on diagonal pairs only) gives {:?}, {} pairs, {} prime tuples, {} tuples: {}",
            p.family_counts,
            p.total_pairs,
            p.prime_tuples.len(),
            p.tuples.len(),
            if reproduced { "reproduces the counts" } else { "does not reproduce the counts" }
        ));
    }
    Ok(c.finish(2))
}

pub fn simple_census() -> Result<CriterionResult, CliError> {
    let mut c = Checks::new();
    let triples = simple_triples()?;
    c.check(triples.len() == published::SIMPLE_TRIPLE_COUNT, format!("{} triples", triples.len()));
    for t in published::SIMPLE_TRIPLE_EXAMPLES {
        c.check(triples.contains(&t), format!("contains {t:?}"));
    }
    Ok(c.finish(3))
}

pub fn structural(ctx: &Context) -> Result<CriterionResult, CliError> {
    let mut c = Checks::new();
    let k3 = k3_gram();
    let pairs = ctx.pairs()?;
    let failures: Vec<String> = pairs
        .par_iter()
        .enumerate()
        .map(|(i, p)| -> Result<Vec<String>, CliError> {
            let mut bad = Vec::new();
            let (a, b, m3) = (&p.rho1.matrix, &p.rho2.matrix, &p.rho3.matrix);
            for (name, m) in [("rho1", a), ("rho2", b), ("rho3", m3)] {
                if !(m * m).is_identity() {
                    bad.push(format!("pair {}: {name} is not an involution", i + 1));
                }
                if k3.gram().congruent(m) != *k3.gram() {
                    bad.push(format!("pair {}: {name} is not an isometry", i + 1));
                }
            }
            if a * b != b * a || a * b != *m3 {
                bad.push(format!("pair {}: rho1, rho2 do not commute to rho3", i + 1));
            }
            if !trivial_common_fixed(a, b) {
                bad.push(format!("pair {}: nontrivial common fixed lattice", i + 1));
            }
            if !(p.invariants[0].hyperbolic && p.invariants[1].hyperbolic) {
                bad.push(format!("pair {}: fixed lattice not hyperbolic", i + 1));
            }
            if p.invariants.iter().map(|t| t.r).sum::<u32>() != 22 {
                bad.push(format!("pair {}: r1 + r2 + r3 != 22", i + 1));
            }
            for (name, inv) in [("rho1", &p.rho1), ("rho2", &p.rho2), ("rho3", &p.rho3)] {
                let fixed = fixed_sublattice(inv);
                if fixed.rank() == 0 {
                    continue;
                }
                if !smith_normal_form(&fixed.basis).diagonal().iter().all(|d| *d == 1.into()) {
                    bad.push(format!("pair {}: fixed lattice of {name} not primitive", i + 1));
                }
                let disc = discriminant_data(&fixed.gram).map_err(k3g2_core::error::InvolutionError::from)?;
                if delta_brute_force(&fixed.gram, &disc) != delta_from_generators(&fixed.gram, &disc) {
                    bad.push(format!("pair {}: delta brute force disagrees with shortcut for {name}", i + 1));
                }
            }
            Ok(bad)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect();
    c.check(failures.is_empty(), format!("{} pairs, {} violations", pairs.len(), failures.len()));
    for f in failures.iter().take(20) {
        c.note(f.clone());
    }
    if ctx.rule == PairRule::Strict {
        let violating = enumerate_prime_pairs_with(PairRule::Published)
            .iter()
            .filter(|(a, b)| !trivial_common_fixed(&a.matrix(), &b.matrix()))
            .count();
        let dp = enumerate_double_prime_pairs().len();
        c.note(format!(
            "published rule: {} of its pairs have a nontrivial common fixed lattice ({violating} prime classes x {dp})",
            violating * dp
        ));
    }
    Ok(c.finish(4))
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Four circles `base + (e₁/2, e₂/2)` on the two coordinates other than `free`.
fn circle_family(base: Point, free: usize, dir: [i64; 3]) -> BTreeSet<(Point, [i64; 3])> {
    let mut out = BTreeSet::new();
    for e1 in 0..2 {
        for e2 in 0..2 {
            let mut p = base;
            let mut k = 0;
            for (i, x) in p.iter_mut().enumerate() {
                if i == free {
                    *x = q(0, 1);
                    continue;
                }
                *x += q(if k == 0 { e1 } else { e2 }, 2);
                k += 1;
            }
            out.insert((reduce_point(p), dir));
        }
    }
    out
}

fn circles(f: &AffineTorusMap) -> Option<BTreeSet<(Point, [i64; 3])>> {
    let set = fixed_set(f);
    if set.dimension != Some(1) {
        return None;
    }
    set.components.iter().map(|c| c.direction().map(|d| (c.base_point, d))).collect()
}

/// Fixed points of `f` on the `1/n` grid and their number of adjacency clusters.
pub fn grid_clusters(f: &AffineTorusMap, n: i64) -> (BTreeSet<Point>, usize) {
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

pub fn torus_fixed_sets() -> Result<CriterionResult, CliError> {
    let mut c = Checks::new();
    let zero = [q(0, 1); 3];

    let act = builtin_action(ConstructionCase::Case1)?;
    let g = |j, k| act.group.elements[act.element(j, k)];
    c.check(fixed_set(&g(1, 0)).is_empty() && fixed_set(&g(1, 1)).is_empty(), "case 1: psi1, psi3 fixed-point free");
    c.check(circles(&g(0, 1)) == Some(circle_family(zero, 1, [0, 1, 0])), "case 1: psi2 fixes 4 circles");

    let act = builtin_action(ConstructionCase::Case2)?;
    let g = |j, k| act.group.elements[act.element(j, k)];
    let third = |s: &Option<BTreeSet<(Point, [i64; 3])>>| -> BTreeSet<Rational> {
        s.iter().flatten().map(|(p, _)| p[2]).collect()
    };
    let (f1, f2) = (circles(&g(1, 0)), circles(&g(0, 1)));
    c.check(
        f1.as_ref().map(BTreeSet::len) == Some(4) && third(&f1) == BTreeSet::from([q(0, 1), q(1, 2)]),
        "case 2: psi1 fixes 4 circles at x3 in {0, 1/2}",
    );
    c.check(
        f2.as_ref().map(BTreeSet::len) == Some(4) && third(&f2) == BTreeSet::from([q(1, 4), q(3, 4)]),
        "case 2: psi2 fixes 4 circles at x3 in {1/4, 3/4}",
    );
    c.check(third(&f1).is_disjoint(&third(&f2)) && fixed_set(&g(1, 1)).is_empty(), "case 2: loci disjoint, psi3 free");

    let act = builtin_action(ConstructionCase::Case3)?;
    let ok = [(1, 0), (0, 1), (1, 1)]
        .iter()
        .all(|&(j, k)| circles(&act.group.elements[act.element(j, k)]).is_some_and(|s| s.len() == 4));
    c.check(ok, "case 3: each psi fixes 4 circles");

    let act = builtin_action(ConstructionCase::D4)?;
    let g = |j, k| act.group.elements[act.element(j, k)];
    c.check(act.group.order() == 8 && act.group.is_dihedral(), format!("D4: order {}, dihedral", act.group.order()));
    c.check((1..4).all(|j| fixed_set(&g(j, 0)).is_empty()), "D4: gamma_j0 fixed-point free for j != 0");
    let families = [
        (0, zero, 1, [0, 1, 0]),
        (1, [q(1, 8), q(1, 8), q(0, 1)], 2, [0, 0, 1]),
        (2, [q(1, 4), q(0, 1), q(0, 1)], 1, [0, 1, 0]),
        (3, [q(3, 8), q(1, 8), q(0, 1)], 2, [0, 0, 1]),
    ];
    for (j, base, free, dir) in families {
        c.check(circles(&g(j, 1)) == Some(circle_family(base, free, dir)), format!("D4: gamma_{j}1 circle family"));
    }

    let mut disagreements = Vec::new();
    for case in ConstructionCase::ALL {
        let act = builtin_action(case)?;
        for f in &act.group.elements {
            let set = fixed_set(f);
            let (grid, clusters) = grid_clusters(f, 8);
            let pointwise = grid_points(8).iter().all(|p| set.locate(p).is_some() == grid.contains(p));
            if !pointwise || (!f.is_identity() && clusters != set.components.len()) {
                disagreements.push(format!("case {case}: {f}"));
            }
        }
    }
    c.check(disagreements.is_empty(), format!("1/8-grid oracle: {} disagreements", disagreements.len()));
    for d in disagreements {
        c.note(d);
    }
    Ok(c.finish(5))
}

pub fn orbifold(ctx: &Context) -> Result<CriterionResult, CliError> {
    let mut c = Checks::new();
    for case in ConstructionCase::ALL {
        let inputs = ctx.inputs(case, false)?;
        let mut seen = BTreeSet::new();
        for (input, _) in &inputs {
            if k3g2_core::g2::admissible(case, input).admissible {
                seen.insert(orbifold_betti(case, input)?);
            }
        }
        c.check(
            seen == BTreeSet::from([published::ORBIFOLD_BETTI]),
            format!("case {case}: (b1,b2,b3) in {}", show_set(&seen)),
        );
    }
    Ok(c.finish(6))
}

fn require_catalog(ctx: &Context) -> Result<(), CliError> {
    match &ctx.nikulin {
        Some(_) => Ok(()),
        None => Err(CliError::InvalidData { path: "nikulin".into(), reason: "catalogue required".into() }),
    }
}

pub fn case1_table(ctx: &Context) -> Result<CriterionResult, CliError> {
    require_catalog(ctx)?;
    let mut c = Checks::new();
    let entries = ctx.entries(ConstructionCase::Case1, true)?;
    let got = tables::distinct_pairs(&entries);
    let want = table_from(&published::CASE1_TABLE);
    c.check(got == want, format!("{} pairs, expected {}", got.len(), want.len()));
    for d in row_diff(&got, &want) {
        c.note(d);
    }
    let unused = commands::case1_unused(ctx, &entries);
    c.check(!unused.contains(&(10, 10)), "(10,10) used");
    let listed: BTreeSet<(u32, u32)> = published::CASE1_EXCLUDED.into_iter().collect();
    let missing: BTreeSet<_> = listed.difference(&unused).copied().collect();
    let extra: BTreeSet<_> = unused.difference(&listed).copied().collect();
    c.note(format!("catalogue pairs excluded: {}", show_pairs(&unused)));
    c.note(format!("listed exclusions that are used: {}", show_pairs(&missing)));
    c.note(format!("excluded pairs not listed: {}", show_pairs(&extra)));
    Ok(c.finish(7))
}

pub fn case2(ctx: &Context) -> Result<CriterionResult, CliError> {
    let mut c = Checks::new();
    let ((r1, a1), (r2, a2), want) = published::CASE2_EXAMPLE;
    let example = InvariantInput::from_pair(LocusTriple::without_delta(r1, a1), LocusTriple::without_delta(r2, a2));
    let got = closed_form_betti(ConstructionCase::Case2, &example)?;
    c.check(got == want, format!("(({r1},{a1}),({r2},{a2})) gives {got:?}"));
    let rows = ctx.sum_rows(ConstructionCase::Case2, false)?;
    let kole = rows.iter().filter(|r| r.kovalev_lee).count();
    let new: Vec<_> = commands::new_rows(&rows).iter().map(|r| (r.b2, r.b3, r.sum_r, r.sum_a)).collect();
    c.check(
        rows.len() == published::CASE2_SUM_PAIRS,
        format!("sum pairs {}, expected {}", rows.len(), published::CASE2_SUM_PAIRS),
    );
    c.check(
        kole == published::CASE2_KOVALEV_LEE,
        format!("kovalev-lee admissible {kole}, expected {}", published::CASE2_KOVALEV_LEE),
    );
    c.check(new == published::CASE2_ROWS, format!("new rows {}, expected {}", new.len(), published::CASE2_ROWS.len()));
    let realised: BTreeSet<_> = new.iter().copied().collect();
    let unrealised: Vec<_> = published::CASE2_ROWS.iter().filter(|r| !realised.contains(r)).collect();
    c.note(format!("listed rows without a realising pair: {unrealised:?}"));
    let p = ctx.census(PairRule::Published)?;
    let listed = list_sum_rows(&p.prime_tuples, &p.double_prime_tuples);
    let listed_new: Vec<_> = listed.iter().filter(|r| !r.kovalev_lee).map(|r| (r.b2, r.b3, r.sum_r, r.sum_a)).collect();
    c.note(format!(
        "adding every listed 3H sum to every listed 2(-E8) sum: {} sums, {} kovalev-lee, {} new rows{}",
        listed.len(),
        listed.len() - listed_new.len(),
        listed_new.len(),
        if listed_new == published::CASE2_ROWS { ", equal to the listed rows" } else { "" }
    ));
    Ok(c.finish(8))
}

pub fn case3(ctx: &Context) -> Result<CriterionResult, CliError> {
    let mut c = Checks::new();
    let entries = ctx.entries(ConstructionCase::Case3, false)?;
    let values: BTreeSet<u32> = entries.iter().map(|e| e.b3).collect();
    let want: BTreeSet<u32> = published::CASE3_B3_VALUES.into_iter().collect();
    c.check(values == want, format!("b3 values {}, expected {}", show_set(&values), show_set(&want)));
    c.check(entries.iter().all(|e| e.b2 == 0), "b2 = 0 throughout");
    let barely: BTreeSet<u32> = entries.iter().filter(|e| e.barely).map(|e| e.b3).collect();
    c.check(barely == BTreeSet::from([published::CASE3_BARELY_B3]), format!("barely b3 values {}", show_set(&barely)));
    let reason = |r, a, d| case3_exclusion(&LocusTriple::new(r, a, d), 2).unwrap_or_default();
    c.check(reason(10, 8, 0).contains("TwoElliptic"), "(10,8,0) rejected");
    c.check(reason(9, 1, 1).contains("r - a >= 4"), "(9,1,1) rejected for r - a >= 4");
    c.check(reason(12, 10, 1).contains("r + a = 22"), "(12,10,1) rejected for r + a = 22, r != a");
    c.check(reason(11, 11, 1).is_empty(), "(11,11,1) accepted");
    Ok(c.finish(9))
}

pub fn d4(ctx: &Context) -> Result<CriterionResult, CliError> {
    require_catalog(ctx)?;
    let mut c = Checks::new();
    let got = commands::produced_pairs(ctx, ConstructionCase::D4, true)?;
    let want = table_from(&published::D4_TABLE);
    c.check(
        got.len() == published::D4_COUNT && got == want,
        format!("{} distinct pairs, expected {}", got.len(), published::D4_COUNT),
    );
    for d in row_diff(&got, &want) {
        c.note(d);
    }
    let remaining = got.difference(&ctx.literature.pairs(ConstructionCase::D4)).count();
    c.check(
        remaining == published::D4_LITERATURE_REMAINING,
        format!("D4 literature diff leaves {remaining}, expected {}", published::D4_LITERATURE_REMAINING),
    );
    let case2 = commands::produced_pairs(ctx, ConstructionCase::Case2, false)?;
    let case2_remaining: BTreeSet<_> =
        case2.difference(&ctx.literature.pairs(ConstructionCase::Case2)).copied().collect();
    let listed: BTreeSet<_> = published::CASE2_LITERATURE_REMAINING.into_iter().collect();
    c.check(case2_remaining == listed, format!("case 2 literature diff leaves {}", show_pairs(&case2_remaining)));

    let inputs = ctx.inputs(ConstructionCase::D4, true)?;
    let closed = tables::closed_form_pairs(ConstructionCase::D4, &inputs)?;
    c.note(format!("closed form over realised inputs: {} pairs", closed.len()));
    let p = ctx.census(PairRule::Published)?;
    let mut sums: BTreeSet<(u32, u32)> =
        list_sum_rows(&p.prime_tuples, &p.double_prime_tuples).iter().map(|r| (r.sum_r, r.sum_a)).collect();
    if let Some(cat) = ctx.catalog_triples() {
        for t1 in &cat {
            for t2 in &cat {
                if kovalev_lee_admissible(t1.r, t1.a, t2.r, t2.a) {
                    sums.insert((t1.r + t2.r, t1.a + t2.a));
                }
            }
        }
    }
    let formula: BTreeSet<(u32, u32)> = sums.iter().map(|&(r, a)| (8 + 2 * r - 2 * a, 207 - 2 * r - 6 * a)).collect();
    c.note(format!("closed form over listed sums and catalogue sums: {} pairs", formula.len()));
    for d in row_diff(&formula, &want) {
        c.note(format!("closed form: {d}"));
    }
    Ok(c.finish(10))
}

pub fn data_validation(ctx: &Context, skip_external: bool, simple: &[CriterionResult]) -> CriterionResult {
    let mut c = Checks::new();
    match (&ctx.nikulin, skip_external) {
        (Some(n), false) => {
            let problems = n.problems();
            c.check(problems.is_empty(), format!("Nikulin catalogue: {} triples", n.triples.len()));
            for p in problems {
                c.note(p);
            }
        }
        _ => c.note("Nikulin catalogue not checked"),
    }
    for r in simple {
        c.check(r.passed, format!("criterion {} ({})", r.id, r.title));
    }
    c.finish(11)
}

/// Runs one of criteria 1 to 10.
pub fn criterion(ctx: &Context, id: u8) -> Result<CriterionResult, CliError> {
    match id {
        1 => invariant_tables(),
        2 => pair_census(ctx),
        3 => simple_census(),
        4 => structural(ctx),
        5 => torus_fixed_sets(),
        6 => orbifold(ctx),
        7 => case1_table(ctx),
        8 => case2(ctx),
        9 => case3(ctx),
        10 => d4(ctx),
        _ => Err(CliError::VerificationFailed(format!("no criterion {id}"))),
    }
}

/// Runs criteria 1 to 11, or the simple-only subset and 11 when `skip_external`.
pub fn run(ctx: &Context, skip_external: bool) -> Result<VerifyReport, CliError> {
    let ids: Vec<u8> = (1..=10).filter(|i| !(skip_external && EXTERNAL.contains(i))).collect();
    ctx.pairs()?;
    ctx.census(ctx.rule)?;
    let mut criteria = ids.par_iter().map(|&i| criterion(ctx, i)).collect::<Result<Vec<_>, _>>()?;
    let simple: Vec<CriterionResult> = criteria.iter().filter(|c| SIMPLE_ONLY.contains(&c.id)).cloned().collect();
    criteria.push(data_validation(ctx, skip_external, &simple));
    let skipped = if skip_external { EXTERNAL.to_vec() } else { Vec::new() };
    Ok(VerifyReport { criteria, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{LiteratureCatalog, NikulinCatalog, BUNDLED_NIKULIN};

    #[test]
    fn corrupted_catalogue_fails_data_validation() {
        let mut lines: Vec<&str> = BUNDLED_NIKULIN.lines().collect();
        lines.pop();
        let cat = NikulinCatalog::parse(&lines.join("\n")).unwrap();
        let ctx = Context::new(PairRule::Strict, Some(cat), LiteratureCatalog::bundled());
        assert!(!data_validation(&ctx, false, &[]).passed);
        assert!(data_validation(&ctx, true, &[]).passed);
        let ctx = Context::new(PairRule::Strict, Some(NikulinCatalog::bundled()), LiteratureCatalog::bundled());
        assert!(data_validation(&ctx, false, &[]).passed);
    }

    #[test]
    fn grid_oracle_counts_circles() {
        let (psi1, _) = k3g2_core::torus::builtin_generators(ConstructionCase::Case3);
        let (fixed, clusters) = grid_clusters(&psi1, 8);
        assert_eq!(clusters, 4);
        assert_eq!(fixed.len(), 4 * 8);
    }

    #[test]
    fn circle_family_points() {
        let got = circle_family([q(1, 8), q(1, 8), q(0, 1)], 2, [0, 0, 1]);
        let want: BTreeSet<_> = [(1, 1), (1, 5), (5, 1), (5, 5)]
            .into_iter()
            .map(|(a, b)| ([q(a, 8), q(b, 8), q(0, 1)], [0, 0, 1]))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn row_diff_lists_missing_and_extra() {
        let got = BTreeSet::from([(2, 25), (2, 99)]);
        let want = BTreeSet::from([(2, 25), (2, 29)]);
        assert_eq!(row_diff(&got, &want), vec!["b2=2: missing [29], extra [99]".to_string()]);
    }

    #[test]
    fn independent_criteria_pass() {
        for r in [invariant_tables().unwrap(), simple_census().unwrap(), torus_fixed_sets().unwrap()] {
            assert!(r.passed, "{}: {:?}", r.line(), r.details);
        }
    }
}
