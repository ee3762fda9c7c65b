//! Betti-number tables over classified pairs and catalogued invariant triples.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::G2Error;
use crate::g2::{closed_form_betti, outcome, InvariantInput, LocusTriple};
use crate::pairs::{kovalev_lee_admissible, InvolutionPair};
use crate::torus::ConstructionCase;

/// Where an input tuple comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InputSource {
    /// A classified pair of simple involutions.
    Simple,
    /// A pair of catalogued triples satisfying the Kovalev–Lee criterion.
    KovalevLee,
}

impl InputSource {
    pub fn label(self) -> &'static str {
        match self {
            Self::Simple => "simple",
            Self::KovalevLee => "kovalev-lee",
        }
    }
}

fn triple(inv: &crate::involution::TwoElementaryInvariants) -> LocusTriple {
    LocusTriple::new(inv.r, inv.a, inv.delta)
}

/// Inputs for a construction: every classified pair, plus catalogued pairs
/// `(t₁, t₂)` with the Kovalev–Lee criterion placed in the two slots the
/// construction uses. Case 3 needs `ρ¹` itself and takes no catalogued pairs.
pub fn inputs(
    case: ConstructionCase,
    pairs: &[InvolutionPair],
    catalog: Option<&[LocusTriple]>,
) -> Vec<(InvariantInput, InputSource)> {
    let mut out: Vec<(InvariantInput, InputSource)> = pairs
        .iter()
        .map(|p| {
            let [a, b, c] = &p.invariants;
            (InvariantInput::new(Some(triple(a)), Some(triple(b)), Some(triple(c))), InputSource::Simple)
        })
        .collect();
    if let Some(cat) = catalog {
        let slots = match case {
            ConstructionCase::Case1 | ConstructionCase::Case2 => (0, 1),
            ConstructionCase::D4 => (1, 2),
            ConstructionCase::Case3 => return out,
        };
        for t1 in cat {
            for t2 in cat {
                if !kovalev_lee_admissible(t1.r, t1.a, t2.r, t2.a) {
                    continue;
                }
                let mut rho = [None; 3];
                rho[slots.0] = Some(*t1);
                rho[slots.1] = Some(*t2);
                out.push((InvariantInput { rho }, InputSource::KovalevLee));
            }
        }
    }
    out
}

/// One resolved manifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BettiEntry {
    pub b2: u32,
    pub b3: u32,
    pub barely: bool,
    pub source: InputSource,
    pub input: InvariantInput,
}

/// Outcomes of every admissible input.
pub fn entries(case: ConstructionCase, inputs: &[(InvariantInput, InputSource)]) -> Result<Vec<BettiEntry>, G2Error> {
    let mut out = Vec::new();
    for (input, source) in inputs {
        if !crate::g2::admissible(case, input).admissible {
            continue;
        }
        let o = outcome(case, input)?;
        out.push(BettiEntry { b2: o.b2, b3: o.b3, barely: o.barely, source: *source, input: *input });
    }
    Ok(out)
}

/// `b² ↦ {b³}`.
pub fn group_by_b2<'a>(entries: impl IntoIterator<Item = &'a BettiEntry>) -> BTreeMap<u32, BTreeSet<u32>> {
    let mut out: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    for e in entries {
        out.entry(e.b2).or_default().insert(e.b3);
    }
    out
}

/// Distinct `(b², b³)`.
pub fn distinct_pairs<'a>(entries: impl IntoIterator<Item = &'a BettiEntry>) -> BTreeSet<(u32, u32)> {
    entries.into_iter().map(|e| (e.b2, e.b3)).collect()
}

/// One row of the sum table: `(Σr, Σa)` over the two involutions with
/// fixed points, with the resulting Betti numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SumRow {
    pub sum_r: u32,
    pub sum_a: u32,
    pub b2: u32,
    pub b3: u32,
    pub kovalev_lee: bool,
}

/// Sum pairs over inputs whose two relevant loci are both nonempty.
///
/// Betti numbers are taken from a witness and checked to agree across all
/// witnesses of the same sum.
pub fn sum_rows(case: ConstructionCase, inputs: &[(InvariantInput, InputSource)]) -> Result<Vec<SumRow>, G2Error> {
    let slots = match case {
        ConstructionCase::Case2 => (1, 2),
        _ => (2, 3),
    };
    let mut rows: BTreeMap<(u32, u32), SumRow> = BTreeMap::new();
    for (input, _) in inputs {
        if !crate::g2::admissible(case, input).admissible {
            continue;
        }
        let (t1, t2) = (input.get(slots.0)?, input.get(slots.1)?);
        if t1.is_empty_locus()? || t2.is_empty_locus()? {
            continue;
        }
        let o = outcome(case, input)?;
        let row = SumRow {
            sum_r: t1.r + t2.r,
            sum_a: t1.a + t2.a,
            b2: o.b2,
            b3: o.b3,
            kovalev_lee: kovalev_lee_admissible(t1.r, t1.a, t2.r, t2.a),
        };
        match rows.get(&(row.sum_r, row.sum_a)) {
            Some(prev) if (prev.b2, prev.b3) != (row.b2, row.b3) => {
                return Err(G2Error::Inadmissible(alloc::format!(
                    "sum ({}, {}) yields two Betti pairs",
                    row.sum_r,
                    row.sum_a
                )));
            }
            Some(_) => {}
            None => {
                rows.insert((row.sum_r, row.sum_a), row);
            }
        }
    }
    let mut out: Vec<SumRow> = rows.into_values().collect();
    out.sort_by_key(|r| (r.b2, r.b3, r.sum_r, r.sum_a));
    Ok(out)
}

/// Distinct `(b², b³)` from the published closed forms, for comparison.
pub fn closed_form_pairs(
    case: ConstructionCase,
    inputs: &[(InvariantInput, InputSource)],
) -> Result<BTreeSet<(u32, u32)>, G2Error> {
    let mut out = BTreeSet::new();
    for (input, _) in inputs {
        if crate::g2::admissible(case, input).admissible {
            out.insert(closed_form_betti(case, input)?);
        }
    }
    Ok(out)
}

/// Sum rows formed by adding every `3H` pair sum to every `2(−E₈)` pair sum,
/// evaluated with the closed form for two nonempty loci.
pub fn list_sum_rows(
    prime_tuples: &BTreeSet<[(u32, u32); 3]>,
    double_prime_tuples: &BTreeSet<[(u32, u32); 3]>,
) -> Vec<SumRow> {
    let sums = |set: &BTreeSet<[(u32, u32); 3]>| -> BTreeSet<(u32, u32)> {
        set.iter().map(|t| (t[0].0 + t[1].0, t[0].1 + t[1].1)).collect()
    };
    let mut rows = BTreeSet::new();
    for (pr, pa) in sums(prime_tuples) {
        for (dr, da) in sums(double_prime_tuples) {
            let (r, a) = (pr + dr, pa + da);
            rows.insert(SumRow {
                sum_r: r,
                sum_a: a,
                b2: 4 + r - a,
                b3: 115 - r - 3 * a,
                kovalev_lee: r <= 11 || r + a < 22,
            });
        }
    }
    let mut out: Vec<SumRow> = rows.into_iter().collect();
    out.sort_by_key(|r| (r.b2, r.b3, r.sum_r, r.sum_a));
    out
}
