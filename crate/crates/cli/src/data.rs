//! Bundled and user-supplied data files.

use std::collections::BTreeSet;
use std::path::Path;

use k3g2_core::g2::LocusTriple;
use k3g2_core::torus::ConstructionCase;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const BUNDLED_NIKULIN: &str = include_str!("../../../data/nikulin75.txt");
pub const BUNDLED_LITERATURE: &str = include_str!("../../../data/literature.json");

pub const NIKULIN_COUNT: usize = 75;

/// Invariants `(r, a, δ)` of non-symplectic involutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NikulinCatalog {
    pub triples: BTreeSet<(u32, u32, u8)>,
}

impl NikulinCatalog {
    /// One `r a δ` triple per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut triples = BTreeSet::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [r, a, d] = fields.as_slice() else {
                return Err(format!("line {}: expected three fields", no + 1));
            };
            let parse = |s: &str| s.parse::<u32>().map_err(|e| format!("line {}: {e}", no + 1));
            let (r, a, d) = (parse(r)?, parse(a)?, parse(d)?);
            if d > 1 {
                return Err(format!("line {}: delta must be 0 or 1", no + 1));
            }
            if !triples.insert((r, a, d as u8)) {
                return Err(format!("line {}: duplicate triple", no + 1));
            }
        }
        Ok(Self { triples })
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED_NIKULIN).expect("bundled catalogue parses")
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadData { path: path.into(), source })?;
        Self::parse(&text).map_err(|reason| CliError::InvalidData { path: path.display().to_string(), reason })
    }

    /// Count and bounds `1 ≤ r ≤ 20`, `0 ≤ a ≤ 11`, `r − a ≥ 0`.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.triples.len() != NIKULIN_COUNT {
            out.push(format!("expected {NIKULIN_COUNT} triples, found {}", self.triples.len()));
        }
        for &(r, a, d) in &self.triples {
            if !(1..=20).contains(&r) || a > 11 || a > r {
                out.push(format!("({r},{a},{d}) out of bounds"));
            }
        }
        out
    }

    pub fn locus_triples(&self) -> Vec<LocusTriple> {
        self.triples.iter().map(|&(r, a, d)| LocusTriple::new(r, a, d)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LiteratureEntry {
    pub case: String,
    pub b2: u32,
    pub b3: u32,
    pub source: String,
}

/// Known `(b², b³)` with their source labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiteratureCatalog {
    pub entries: Vec<LiteratureEntry>,
}

impl LiteratureCatalog {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED_LITERATURE).expect("bundled literature catalogue parses")
    }

    pub fn pairs(&self, case: ConstructionCase) -> BTreeSet<(u32, u32)> {
        self.entries.iter().filter(|e| e.case == case.label()).map(|e| (e.b2, e.b3)).collect()
    }

    pub fn sources(&self, case: ConstructionCase, b2: u32, b3: u32) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|e| e.case == case.label() && e.b2 == b2 && e.b3 == b3)
            .map(|e| e.source.as_str())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_catalogue_is_valid() {
        let cat = NikulinCatalog::bundled();
        assert_eq!(cat.triples.len(), NIKULIN_COUNT);
        assert!(cat.problems().is_empty());
        for t in [(10, 10, 0), (10, 8, 0), (10, 10, 1), (1, 1, 1), (20, 2, 1)] {
            assert!(cat.triples.contains(&t), "{t:?}");
        }
    }

    #[test]
    fn dropping_a_row_is_reported() {
        let mut lines: Vec<&str> = BUNDLED_NIKULIN.lines().collect();
        lines.pop();
        let cat = NikulinCatalog::parse(&lines.join("\n")).unwrap();
        assert_eq!(cat.problems(), vec!["expected 75 triples, found 74".to_string()]);
    }

    #[test]
    fn parse_errors() {
        assert!(NikulinCatalog::parse("1 1").is_err());
        assert!(NikulinCatalog::parse("1 1 2").is_err());
        assert!(NikulinCatalog::parse("1 1 1\n1 1 1").is_err());
        assert!(NikulinCatalog::parse("1 x 1").is_err());
        let bad = NikulinCatalog::parse("21 1 1\n# comment\n3 5 1 # trailing").unwrap();
        assert_eq!(bad.problems().len(), 3);
    }

    #[test]
    fn missing_file() {
        let e = NikulinCatalog::load(Path::new("/nonexistent/nikulin.txt")).unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn bundled_literature_catalogue() {
        let lit = LiteratureCatalog::bundled();
        assert_eq!(lit.pairs(ConstructionCase::Case2).len(), 22);
        assert_eq!(lit.pairs(ConstructionCase::D4).len(), 28);
        assert_eq!(lit.pairs(ConstructionCase::Case3).len(), 3);
        assert_eq!(lit.sources(ConstructionCase::D4, 16, 135), vec!["Joyce"]);
        assert_eq!(lit.sources(ConstructionCase::Case2, 4, 43), vec!["Kovalev-Lee, Section 6.3"]);
    }
}
