//! Report builders for each subcommand.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use k3g2_core::g2::LocusTriple;
use k3g2_core::pairs::{
    census, classify_pairs_with, enumerate_prime_pairs_with, invariant_tuple, simple_triples, InvolutionPair,
    PairCensus, PairFamily, PairRule,
};
use k3g2_core::tables::{self, BettiEntry, InputSource, SumRow};
use k3g2_core::torus::{builtin_action, fixed_set, ConstructionCase, Point};
use rayon::prelude::*;

use crate::artifact::{Cell, Report, TableArtifact};
use crate::data::{LiteratureCatalog, NikulinCatalog};
use crate::error::CliError;

/// Inputs shared by every command, with the expensive classification cached.
pub struct Context {
    pub rule: PairRule,
    pub nikulin: Option<NikulinCatalog>,
    pub literature: LiteratureCatalog,
    pairs: OnceLock<Vec<InvolutionPair>>,
    censuses: OnceLock<BTreeMap<PairRule, PairCensus>>,
}

impl Context {
    pub fn new(rule: PairRule, nikulin: Option<NikulinCatalog>, literature: LiteratureCatalog) -> Self {
        Self { rule, nikulin, literature, pairs: OnceLock::new(), censuses: OnceLock::new() }
    }

    /// Strict rule, bundled Nikulin and literature catalogues.
    pub fn bundled() -> Self {
        Self::new(PairRule::Strict, Some(NikulinCatalog::bundled()), LiteratureCatalog::bundled())
    }

    pub fn pairs(&self) -> Result<&[InvolutionPair], CliError> {
        if let Some(p) = self.pairs.get() {
            return Ok(p);
        }
        let p = classify_pairs_with(self.rule)?;
        Ok(self.pairs.get_or_init(|| p))
    }

    pub fn census(&self, rule: PairRule) -> Result<&PairCensus, CliError> {
        if self.censuses.get().is_none() {
            let all: Result<BTreeMap<_, _>, _> =
                [PairRule::Strict, PairRule::Published].into_par_iter().map(|r| census(r).map(|c| (r, c))).collect();
            let all = all?;
            let _ = self.censuses.set(all);
        }
        Ok(&self.censuses.get().expect("censuses initialised")[&rule])
    }

    pub fn catalog_triples(&self) -> Option<Vec<LocusTriple>> {
        self.nikulin.as_ref().map(NikulinCatalog::locus_triples)
    }

    pub fn inputs(
        &self,
        case: ConstructionCase,
        with_catalog: bool,
    ) -> Result<Vec<(k3g2_core::g2::InvariantInput, InputSource)>, CliError> {
        let cat = if with_catalog { self.catalog_triples() } else { None };
        Ok(tables::inputs(case, self.pairs()?, cat.as_deref()))
    }

    /// Outcomes of all admissible inputs, evaluated in parallel, in input order.
    pub fn entries(&self, case: ConstructionCase, with_catalog: bool) -> Result<Vec<BettiEntry>, CliError> {
        let inputs = self.inputs(case, with_catalog)?;
        let chunks: Result<Vec<Vec<BettiEntry>>, _> = inputs.par_chunks(64).map(|c| tables::entries(case, c)).collect();
        Ok(chunks?.into_iter().flatten().collect())
    }

    pub fn sum_rows(&self, case: ConstructionCase, with_catalog: bool) -> Result<Vec<SumRow>, CliError> {
        Ok(tables::sum_rows(case, &self.inputs(case, with_catalog)?)?)
    }
}

fn rule_label(rule: PairRule) -> &'static str {
    match rule {
        PairRule::Strict => "strict",
        PairRule::Published => "published",
    }
}

fn images(perm: &k3g2_core::perm::SignedPermutation) -> String {
    perm.signed_images().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn ra(t: (u32, u32)) -> String {
    format!("({},{})", t.0, t.1)
}

fn family_summary(counts: &[usize; 4]) -> String {
    let parts: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
    format!("{} = {}", counts.iter().sum::<usize>(), parts.join("+"))
}

fn tuple_table(name: &str, tuples: &BTreeSet<[(u32, u32); 3]>) -> TableArtifact {
    let rows = tuples.iter().map(|t| t.iter().flat_map(|&(r, a)| [Cell::from(r), Cell::from(a)]).collect()).collect();
    TableArtifact::new(name, &["r1", "a1", "r2", "a2", "r3", "a3"], 6, rows)
}

pub fn classify(ctx: &Context, prime_only: bool) -> Result<Report, CliError> {
    let c = ctx.census(ctx.rule)?;
    let rule = rule_label(ctx.rule);
    if prime_only {
        let rows = enumerate_prime_pairs_with(ctx.rule)
            .iter()
            .enumerate()
            .map(|(i, (a, b))| {
                vec![Cell::from(i + 1), PairFamily::of(a, b).label().into(), a.to_string().into(), b.to_string().into()]
            })
            .collect();
        let table = TableArtifact::new("prime-pairs", &["index", "family", "rho1", "rho2"], 1, rows);
        return Ok(Report {
            summary: vec![format!("prime pair classes ({rule}): {}", family_summary(&c.family_counts))],
            tables: vec![table],
        });
    }
    let pairs = ctx.pairs()?;
    let rows = pairs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let t = invariant_tuple(p);
            let d = t.delta.unwrap_or_default();
            vec![
                Cell::from(i + 1),
                p.family().label().into(),
                p.rho1.prime.to_string().into(),
                p.rho1.double_prime.to_string().into(),
                p.rho2.prime.to_string().into(),
                p.rho2.double_prime.to_string().into(),
                t.to_string().into(),
                format!("{},{},{}", d[0], d[1], d[2]).into(),
                images(&p.rho1.perm()).into(),
                images(&p.rho2.perm()).into(),
            ]
        })
        .collect();
    let table = TableArtifact::new(
        "pairs",
        &[
            "index",
            "family",
            "rho1_3h",
            "rho1_e8",
            "rho2_3h",
            "rho2_e8",
            "tuple",
            "delta",
            "rho1_images",
            "rho2_images",
        ],
        1,
        rows,
    );
    Ok(Report {
        summary: vec![
            format!("rule: {rule}"),
            format!("prime pair classes: {}", family_summary(&c.family_counts)),
            format!("double-prime pair classes: {}", c.double_prime_pairs),
            format!("pair classes: {}", c.total_pairs),
            format!("distinct tuples: {}", c.tuples.len()),
        ],
        tables: vec![table, tuple_table("tuples", &c.tuples)],
    })
}

pub fn tuples(ctx: &Context) -> Result<Report, CliError> {
    let c = ctx.census(ctx.rule)?;
    Ok(Report {
        summary: vec![
            format!("rule: {}", rule_label(ctx.rule)),
            format!("prime tuples: {}", c.prime_tuples.len()),
            format!("double-prime tuples: {}", c.double_prime_tuples.len()),
            format!("distinct tuples: {}", c.tuples.len()),
            format!("pairs with non-hyperbolic product: {}", c.non_hyperbolic_products),
        ],
        tables: vec![
            tuple_table("prime-tuples", &c.prime_tuples),
            tuple_table("double-prime-tuples", &c.double_prime_tuples),
            tuple_table("tuples", &c.tuples),
        ],
    })
}

pub fn simple(_: &Context) -> Result<Report, CliError> {
    let triples = simple_triples()?;
    let rows = triples.iter().map(|&(r, a, d)| vec![Cell::from(r), a.into(), u32::from(d).into()]).collect();
    Ok(Report {
        summary: vec![format!("simple triples: {}", triples.len())],
        tables: vec![TableArtifact::new("simple-triples", &["r", "a", "delta"], 3, rows)],
    })
}

fn grouped_table(name: &str, pairs: &BTreeSet<(u32, u32)>) -> TableArtifact {
    let mut by_b2: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for &(b2, b3) in pairs {
        by_b2.entry(b2).or_default().push(b3);
    }
    let rows = by_b2
        .into_iter()
        .map(|(b2, b3s)| {
            let list: Vec<String> = b3s.iter().map(|x| x.to_string()).collect();
            vec![Cell::from(b2), Cell::from(list.join(", "))]
        })
        .collect();
    TableArtifact::new(name, &["b2", "b3"], 1, rows)
}

fn pair_table(name: &str, pairs: &BTreeSet<(u32, u32)>) -> TableArtifact {
    TableArtifact::new(name, &["b2", "b3"], 2, pairs.iter().map(|&(a, b)| vec![a.into(), b.into()]).collect())
}

fn sum_table(name: &str, rows: &[SumRow], with_flag: bool) -> TableArtifact {
    let mut cols = vec!["b2", "b3", "sum_r", "sum_a"];
    if with_flag {
        cols.push("kovalev_lee");
    }
    let rows = rows
        .iter()
        .map(|r| {
            let mut row = vec![Cell::from(r.b2), r.b3.into(), r.sum_r.into(), r.sum_a.into()];
            if with_flag {
                row.push(r.kovalev_lee.into());
            }
            row
        })
        .collect();
    TableArtifact::new(name, &cols, 4, rows)
}

/// Catalogued `(r₂, a₂)` never used by an admissible Case 1 input.
pub fn case1_unused(ctx: &Context, entries: &[BettiEntry]) -> BTreeSet<(u32, u32)> {
    let all: BTreeSet<(u32, u32)> =
        ctx.nikulin.iter().flat_map(|n| n.triples.iter().map(|&(r, a, _)| (r, a))).collect();
    let used: BTreeSet<(u32, u32)> = entries.iter().filter_map(|e| e.input.rho[1].map(|t| (t.r, t.a))).collect();
    all.difference(&used).copied().collect()
}

/// Sum rows outside the Kovalev–Lee range.
pub fn new_rows(rows: &[SumRow]) -> Vec<SumRow> {
    rows.iter().filter(|r| !r.kovalev_lee).copied().collect()
}

pub fn betti(ctx: &Context, case: ConstructionCase, with_catalog: bool) -> Result<Report, CliError> {
    let mut summary = vec![format!(
        "case {case}, inputs: {}",
        if with_catalog && case != ConstructionCase::Case3 { "simple + kovalev-lee catalogue" } else { "simple" }
    )];
    let entries = ctx.entries(case, with_catalog)?;
    let distinct = tables::distinct_pairs(&entries);
    let mut out = Vec::new();
    match case {
        ConstructionCase::Case1 => {
            summary.push(format!("distinct pairs: {}", distinct.len()));
            if with_catalog {
                let unused = case1_unused(ctx, &entries);
                let list: Vec<String> = unused.iter().map(|&p| ra(p)).collect();
                summary.push(format!("catalogue pairs unused: {} {}", unused.len(), list.join(" ")));
            }
            out.push(grouped_table("case1", &distinct));
        }
        ConstructionCase::Case2 => {
            let rows = ctx.sum_rows(case, with_catalog)?;
            let new = new_rows(&rows);
            let barely: BTreeSet<(u32, u32)> = entries.iter().filter(|e| e.barely).map(|e| (e.b2, e.b3)).collect();
            summary.push(format!("sum pairs: {}", rows.len()));
            summary.push(format!("kovalev-lee admissible: {}", rows.len() - new.len()));
            summary.push(format!("new: {}", new.len()));
            summary.push(format!("barely pairs: {}", barely.len()));
            out.push(sum_table("case2-new", &new, false));
            out.push(sum_table("case2-sums", &rows, true));
            out.push(pair_table("case2-barely", &barely));
        }
        ConstructionCase::Case3 => {
            let values: BTreeSet<u32> = distinct.iter().map(|p| p.1).collect();
            let list: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            summary.push(format!("b3 values: {{{}}}", list.join(", ")));
            let rows = entries
                .iter()
                .map(|e| (e.b2, e.b3, e.barely))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .map(|(b2, b3, barely)| vec![Cell::from(b2), b3.into(), barely.into()])
                .collect();
            out.push(TableArtifact::new("case3", &["b2", "b3", "barely"], 3, rows));
        }
        ConstructionCase::D4 => {
            summary.push(format!("distinct pairs: {}", distinct.len()));
            out.push(grouped_table("d4", &distinct));
            out.push(pair_table("d4-pairs", &distinct));
        }
    }
    Ok(Report { summary, tables: out })
}

/// Pairs compared against the literature: the new Case 2 rows, or every D4 pair.
pub fn produced_pairs(
    ctx: &Context,
    case: ConstructionCase,
    with_catalog: bool,
) -> Result<BTreeSet<(u32, u32)>, CliError> {
    Ok(match case {
        ConstructionCase::Case2 => new_rows(&ctx.sum_rows(case, with_catalog)?).iter().map(|r| (r.b2, r.b3)).collect(),
        _ => tables::distinct_pairs(&ctx.entries(case, with_catalog)?),
    })
}

pub fn diff(case: ConstructionCase, produced: &BTreeSet<(u32, u32)>, literature: &LiteratureCatalog) -> Report {
    let known = literature.pairs(case);
    let remaining: BTreeSet<(u32, u32)> = produced.difference(&known).copied().collect();
    let found = produced
        .intersection(&known)
        .map(|&(b2, b3)| vec![Cell::from(b2), b3.into(), literature.sources(case, b2, b3).join("; ").into()])
        .collect();
    Report {
        summary: vec![
            format!("case {case}: produced {}", produced.len()),
            format!("in literature: {}", produced.len() - remaining.len()),
            format!("remaining: {}", remaining.len()),
        ],
        tables: vec![
            pair_table("remaining", &remaining),
            TableArtifact::new("known", &["b2", "b3", "source"], 2, found),
        ],
    }
}

pub fn diff_literature(ctx: &Context, case: ConstructionCase, with_catalog: bool) -> Result<Report, CliError> {
    Ok(diff(case, &produced_pairs(ctx, case, with_catalog)?, &ctx.literature))
}

pub fn format_point(p: &Point) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Element labels `g{j}{k}` for `(ψ¹)^j (ψ²)^k`, one per group element.
pub fn element_words(case: ConstructionCase) -> Result<Vec<(usize, usize, usize)>, CliError> {
    let act = builtin_action(case)?;
    let rot = if case == ConstructionCase::D4 { 4 } else { 2 };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for j in 0..rot {
        for k in 0..2 {
            let i = act.element(j, k);
            if seen.insert(i) {
                out.push((j, k, i));
            }
        }
    }
    Ok(out)
}

pub fn fixed_sets(case: ConstructionCase) -> Result<Report, CliError> {
    let act = builtin_action(case)?;
    let mut rows = Vec::new();
    for (j, k, i) in element_words(case)? {
        let f = &act.group.elements[i];
        let k3 = act.labels[i].rho_index().map_or("id".to_string(), |r| format!("rho{r}"));
        let set = fixed_set(f);
        let head = |c: usize| vec![Cell::from(format!("g{j}{k}")), f.to_string().into(), k3.clone().into(), c.into()];
        if f.is_identity() {
            let mut row = head(0);
            row.extend([Cell::from("all"), "".into(), "".into()]);
            rows.push(row);
            continue;
        }
        if set.components.is_empty() {
            let mut row = head(0);
            row.extend([Cell::from("empty"), "".into(), "".into()]);
            rows.push(row);
        }
        for (n, c) in set.components.iter().enumerate() {
            let dirs: Vec<String> = c.directions.iter().map(|d| format!("({},{},{})", d[0], d[1], d[2])).collect();
            let mut row = head(n + 1);
            row.extend([Cell::from(c.dimension()), format_point(&c.base_point).into(), dirs.join(" ").into()]);
            rows.push(row);
        }
    }
    Ok(Report {
        summary: vec![format!("case {case}: group order {}", act.group.order())],
        tables: vec![TableArtifact::new(
            "fixed-sets",
            &["element", "map", "k3_action", "component", "dimension", "base_point", "directions"],
            4,
            rows,
        )],
    })
}
