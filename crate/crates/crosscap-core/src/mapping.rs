//! The curve-mapping table: recorded facts of the form `f(source) = target`
//! for specific words `f` and canonical curves, each checked against the
//! homology representation at load time.
//!
//! A passing check is a necessary condition only, so entries are axioms
//! with a machine shadow, not theorems. One core entry is recorded as
//! `flagged`: as written it is inconsistent with the composition convention
//! that validates every other entry, and holds with its two factors applied
//! in written left-to-right order. Flagged entries are unusable by the
//! transport machinery.

use serde::{Deserialize, Serialize};

use crate::homology::Rep;
use crate::surface::{canonical_curve, canonical_twist, CurveName, CurveSymbol};
use crate::word::{Gen, Letter, MacroTable, Word};
use crate::{Error, Result};

/// Whether an entry is one of the core mapping claims behind the
/// certificate builders, or an auxiliary fact enabling transports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MappingGroup {
    Core,
    Support,
}

/// Load-time verdict on one entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MappingStatus {
    Pass,
    /// The claim fails as written but holds for the reversed factor order;
    /// the consistent reading is stored.
    Flagged {
        corrected: Word,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingEntry {
    pub f: Word,
    pub source: CurveSymbol,
    pub target: CurveSymbol,
    pub anchor: String,
    pub group: MappingGroup,
    pub status: MappingStatus,
}

impl MappingEntry {
    pub fn is_flagged(&self) -> bool {
        matches!(self.status, MappingStatus::Flagged { .. })
    }
}

/// The mapping table at a fixed genus, every entry homology-checked.
#[derive(Debug, Clone)]
pub struct CurveMappingTable {
    genus: usize,
    entries: Vec<MappingEntry>,
}

impl CurveMappingTable {
    /// The canonical table; needs genus at least 7.
    pub fn canonical(genus: usize) -> Result<Self> {
        if genus < 7 {
            return Err(Error::UnsupportedGenus(format!(
                "the canonical mapping table needs genus >= 7, got {genus}"
            )));
        }
        let rep = Rep::new(genus)?;
        let curve = |name: CurveName| canonical_curve(name, genus).expect("canonical curve");
        let raw_core: Vec<(&str, CurveSymbol, CurveSymbol, &str)> = vec![
            ("x", curve(CurveName::Beta), curve(CurveName::Gamma), "x carries beta to gamma"),
            (
                "x",
                curve(CurveName::Alpha(3)),
                curve(CurveName::Alpha(5)),
                "x carries alpha3 to alpha5",
            ),
            ("x", curve(CurveName::Mu(4)), curve(CurveName::Mu(6)), "x carries mu4 to mu6"),
            (
                "w",
                CurveSymbol::positive([1, 2, 6, 7])?,
                CurveSymbol::positive([1, 2, 3, 4, 5, 7])?,
                "w carries the curve through crosscaps 1,2,6,7 to the one through 1,2,3,4,5,7",
            ),
            (
                "u5 u6",
                CurveSymbol::positive([1, 2, 6, 7])?,
                curve(CurveName::Delta),
                "u5 and u6 carry the curve through crosscaps 1,2,6,7 to delta",
            ),
            (
                "u6",
                CurveSymbol::positive([1, 2, 3, 4, 5, 7])?,
                curve(CurveName::Epsilon),
                "u6 carries the curve through crosscaps 1,2,3,4,5,7 to epsilon",
            ),
            (
                "u6 w u5^-1 u6^-1",
                curve(CurveName::Delta),
                curve(CurveName::Epsilon),
                "u6 w u5^-1 u6^-1 carries delta to epsilon",
            ),
            (
                "u4 u5 u3 u4",
                curve(CurveName::Delta),
                curve(CurveName::Beta),
                "u4 u5 u3 u4 carries delta to beta",
            ),
        ];
        let raw_support: Vec<(&str, CurveSymbol, CurveSymbol, &str)> = vec![
            (
                "u4 v",
                curve(CurveName::Alpha(4)),
                curve(CurveName::Beta),
                "u4 v carries alpha4 to beta",
            ),
            ("u4 v", curve(CurveName::Mu(5)), curve(CurveName::Mu(4)), "u4 v carries mu5 to mu4"),
            (
                "u6 w u5^-1 u6^-1",
                curve(CurveName::Mu(6)),
                curve(CurveName::Mu(6)),
                "u6 w u5^-1 u6^-1 fixes mu6; derived companion for transporting twists directed \
                 by mu6",
            ),
            (
                "u4 u5 u3 u4",
                curve(CurveName::Mu(6)),
                curve(CurveName::Mu(4)),
                "u4 u5 u3 u4 carries mu6 to mu4; derived companion for transporting twists \
                 directed by mu6",
            ),
        ];

        let mut entries = Vec::new();
        for (group, raw) in [(MappingGroup::Core, raw_core), (MappingGroup::Support, raw_support)] {
            for (f, source, target, anchor) in raw {
                let f = Word::parse(f)?;
                let status = Self::check_entry(&rep, &f, &source, &target)?;
                entries.push(MappingEntry {
                    f,
                    source,
                    target,
                    anchor: anchor.to_string(),
                    group,
                    status,
                });
            }
        }
        Ok(CurveMappingTable { genus, entries })
    }

    fn check_entry(
        rep: &Rep,
        f: &Word,
        source: &CurveSymbol,
        target: &CurveSymbol,
    ) -> Result<MappingStatus> {
        if rep.check_mapping_claim(f, source, target)? {
            return Ok(MappingStatus::Pass);
        }
        let reversed = Word::new(f.letters().iter().rev().copied().collect());
        if rep.check_mapping_claim(&reversed, source, target)? {
            return Ok(MappingStatus::Flagged { corrected: reversed });
        }
        Err(Error::InvalidCertificate(format!(
            "mapping entry {f} on {source} fails in homology in both factor orders"
        )))
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn entries(&self) -> &[MappingEntry] {
        &self.entries
    }

    /// Unflagged entry for `(f, source)`, with `f` compared modulo macro
    /// expansion. Flagged entries never transport anything.
    pub fn lookup(
        &self,
        f: &Word,
        source: &CurveSymbol,
        macros: &MacroTable,
    ) -> Option<&MappingEntry> {
        let f_exp = macros.expand(f).ok()?;
        self.entries.iter().find(|e| {
            !e.is_flagged()
                && e.source.indices() == source.indices()
                && macros.expand(&e.f).map(|w| w == f_exp).unwrap_or(false)
        })
    }

    /// (pass, flagged) counts within a group.
    pub fn group_counts(&self, group: MappingGroup) -> (usize, usize) {
        let mut pass = 0;
        let mut flagged = 0;
        for e in &self.entries {
            if e.group == group {
                if e.is_flagged() {
                    flagged += 1;
                } else {
                    pass += 1;
                }
            }
        }
        (pass, flagged)
    }
}

/// Kind of mapping-class-group symbol a letter names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    Twist,
    Transposition,
}

/// The defining curve pair `(direction, twist)` of a twist or transposition
/// letter.
pub fn symbol_curves(gen: Gen, genus: usize) -> Result<(SymbolKind, CurveSymbol, CurveSymbol)> {
    match gen {
        Gen::A(_) | Gen::B | Gen::C | Gen::D | Gen::E => {
            let t = canonical_twist(gen, genus)?;
            Ok((SymbolKind::Twist, t.direction_curve, t.twist_curve))
        }
        Gen::U(_) | Gen::V | Gen::W => {
            let t = crate::surface::canonical_transposition(gen, genus)?;
            Ok((SymbolKind::Transposition, t.direction_curve, t.twist_curve))
        }
        other => Err(Error::UnknownSymbol(format!(
            "`{other}` names a word, not a twist or transposition"
        ))),
    }
}

/// Curves supported by a letter: the annulus around the twist curve for a
/// twist, the Klein bottle around both defining curves for a transposition.
pub fn support_curves(gen: Gen, genus: usize) -> Result<Vec<CurveSymbol>> {
    let (kind, direction, twist) = symbol_curves(gen, genus)?;
    Ok(match kind {
        SymbolKind::Twist => vec![twist],
        SymbolKind::Transposition => vec![direction, twist],
    })
}

/// Find the letter naming the symbol with the given defining curves, if any.
pub fn letter_for_curves(
    kind: SymbolKind,
    direction: &CurveSymbol,
    twist: &CurveSymbol,
    genus: usize,
) -> Option<Gen> {
    let mut universe: Vec<Gen> = Vec::new();
    match kind {
        SymbolKind::Twist => {
            for i in 1..genus {
                universe.push(Gen::A(i as u8));
            }
            universe.extend([Gen::B, Gen::C, Gen::D, Gen::E]);
        }
        SymbolKind::Transposition => {
            for i in 1..genus {
                universe.push(Gen::U(i as u8));
            }
            universe.extend([Gen::V, Gen::W]);
        }
    }
    universe.into_iter().find(|&gen| {
        symbol_curves(gen, genus)
            .map(|(_, d, t)| d.indices() == direction.indices() && t.indices() == twist.indices())
            .unwrap_or(false)
    })
}

/// Assumption consumed by a derivation step: a named axiom with the
/// statement backing it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Assumption {
    pub tag: String,
    pub anchor: String,
}

impl Assumption {
    pub fn new(tag: impl Into<String>, anchor: impl Into<String>) -> Self {
        Assumption { tag: tag.into(), anchor: anchor.into() }
    }

    /// Tag for a consumed mapping entry.
    pub fn for_mapping(entry: &MappingEntry) -> Assumption {
        Assumption::new(
            format!("mapping({}; {}->{})", entry.f, entry.source, entry.target),
            entry.anchor.clone(),
        )
    }
}

/// Letter helper used by instance constructors.
pub fn letter(gen: Gen, exp: i8) -> Letter {
    Letter::new(gen, exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_table_has_the_expected_split() {
        let table = CurveMappingTable::canonical(7).unwrap();
        assert_eq!(table.group_counts(MappingGroup::Core), (7, 1));
        assert_eq!(table.group_counts(MappingGroup::Support), (4, 0));
        let flagged: Vec<&MappingEntry> =
            table.entries().iter().filter(|e| e.is_flagged()).collect();
        assert_eq!(flagged.len(), 1);
        assert_eq!(flagged[0].f, Word::parse("u5 u6").unwrap());
        match &flagged[0].status {
            MappingStatus::Flagged { corrected } => {
                assert_eq!(corrected, &Word::parse("u6 u5").unwrap());
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn flagged_entries_are_not_looked_up() {
        let table = CurveMappingTable::canonical(7).unwrap();
        let macros = MacroTable::standard();
        let src = CurveSymbol::positive([1, 2, 6, 7]).unwrap();
        assert!(table.lookup(&Word::parse("u5 u6").unwrap(), &src, &macros).is_none());
        let delta = canonical_curve(CurveName::Delta, 7).unwrap();
        assert!(table.lookup(&Word::parse("u6 w u5^-1 u6^-1").unwrap(), &delta, &macros).is_some());
    }

    #[test]
    fn lookup_is_macro_expansion_blind() {
        let table = CurveMappingTable::canonical(7).unwrap();
        let macros = MacroTable::standard();
        let beta = canonical_curve(CurveName::Beta, 7).unwrap();
        let expanded_x = macros.base_expansion(Gen::X).unwrap().clone();
        let entry = table.lookup(&expanded_x, &beta, &macros).unwrap();
        assert_eq!(entry.target, canonical_curve(CurveName::Gamma, 7).unwrap());
    }

    #[test]
    fn registry_roundtrip() {
        let g = 9;
        for i in 1..g {
            let (kind, d, t) = symbol_curves(Gen::U(i as u8), g).unwrap();
            assert_eq!(kind, SymbolKind::Transposition);
            assert_eq!(letter_for_curves(kind, &d, &t, g), Some(Gen::U(i as u8)));
        }
        let (kind, d, t) = symbol_curves(Gen::B, g).unwrap();
        assert_eq!(letter_for_curves(kind, &d, &t, g), Some(Gen::B));
        // v and b share curves but not kind.
        assert_eq!(letter_for_curves(SymbolKind::Transposition, &d, &t, g), Some(Gen::V));
        assert!(symbol_curves(Gen::X, g).is_err());
    }

    #[test]
    fn table_needs_genus_seven() {
        assert_eq!(CurveMappingTable::canonical(6).unwrap_err().kind(), "unsupported-genus");
        assert!(CurveMappingTable::canonical(12).is_ok());
    }
}
