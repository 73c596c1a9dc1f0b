//! The relation catalog and positional rewriting.
//!
//! Relations come in a few families. The four chain families share one
//! shape, `U t = t' U` for a two-letter conjugator `U`: the braid relations
//! among the transpositions, and the chains carrying one twist to the next.
//! On top of those sit the lantern relation, commutation instances derived
//! from the disjointness fixture table, transport instances derived from the
//! curve-mapping table, and the definitional expansions of the macro
//! letters. Every instance is validated against its homology shadow at
//! instantiation.
//!
//! Rewriting is strictly positional and literal: a step replaces one side of
//! an instance by the other at a stated position, and fails loudly when the
//! side does not occur there. Replay re-resolves every instance from the
//! tables, so a forged step cannot smuggle in an unrecorded fact.

use std::fmt;
use std::str::FromStr;

use crate::homology::Rep;
use crate::mapping::{
    letter_for_curves, support_curves, symbol_curves, Assumption, CurveMappingTable, SymbolKind,
};
use crate::surface::{Disjointness, FixtureTable};
use crate::word::{parse_letter, Gen, Letter, MacroTable, Word};
use crate::{Error, Result};

/// The four chain-shaped relation families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChainFamily {
    /// `u_i u_{i+1} u_i = u_{i+1} u_i u_{i+1}`.
    BraidU(u8),
    /// `u_i u_{i+1} a_i = a_{i+1} u_i u_{i+1}`.
    ChainUA(u8),
    /// `u_4 v u_4 = v u_4 v`.
    BraidUV,
    /// `u_4 v a_4 = b u_4 v`.
    ChainUVB,
}

impl ChainFamily {
    /// The conjugator `U` and the letter pair `(t, t')` with `U t = t' U`.
    pub fn shape(self) -> (Word, Gen, Gen) {
        match self {
            ChainFamily::BraidU(i) => (
                Word::new(vec![Letter::pos(Gen::U(i)), Letter::pos(Gen::U(i + 1))]),
                Gen::U(i),
                Gen::U(i + 1),
            ),
            ChainFamily::ChainUA(i) => (
                Word::new(vec![Letter::pos(Gen::U(i)), Letter::pos(Gen::U(i + 1))]),
                Gen::A(i),
                Gen::A(i + 1),
            ),
            ChainFamily::BraidUV => {
                (Word::new(vec![Letter::pos(Gen::U(4)), Letter::pos(Gen::V)]), Gen::U(4), Gen::V)
            }
            ChainFamily::ChainUVB => {
                (Word::new(vec![Letter::pos(Gen::U(4)), Letter::pos(Gen::V)]), Gen::A(4), Gen::B)
            }
        }
    }

    pub fn min_genus(self) -> usize {
        match self {
            ChainFamily::BraidU(i) | ChainFamily::ChainUA(i) => i as usize + 2,
            ChainFamily::BraidUV | ChainFamily::ChainUVB => 5,
        }
    }

    pub fn anchor(self) -> String {
        match self {
            ChainFamily::BraidU(i) | ChainFamily::ChainUA(i) => format!(
                "u{i} u{} carries alpha{i} to alpha{} and mu{} to mu{}",
                i + 1,
                i + 1,
                i + 1,
                i + 2
            ),
            ChainFamily::BraidUV | ChainFamily::ChainUVB => {
                "u4 v carries alpha4 to beta and mu5 to mu4".to_string()
            }
        }
    }
}

impl fmt::Display for ChainFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainFamily::BraidU(i) => write!(f, "braid-u({i})"),
            ChainFamily::ChainUA(i) => write!(f, "chain-ua({i})"),
            ChainFamily::BraidUV => write!(f, "braid-uv"),
            ChainFamily::ChainUVB => write!(f, "chain-uvb"),
        }
    }
}

/// Which reading of a chain relation an instance uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainForm {
    /// `U t = t' U`.
    Base,
    /// `t'^e = U t^e U^-1`.
    ConjUp(i8),
    /// `t^e = U^-1 t'^e U`.
    ConjDown(i8),
}

/// A reconstructible reference to a relation instance. Steps store these;
/// replay resolves them against its own tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationRef {
    Chain {
        family: ChainFamily,
        form: ChainForm,
    },
    Lantern,
    Commute {
        p: Letter,
        q: Letter,
    },
    /// `f s f^-1 = image` for a twist or transposition letter `s` with
    /// exponent; the image is recomputed from the mapping table.
    Transport {
        f: Word,
        letter: Letter,
    },
    /// Definitional expansion of a macro letter.
    MacroDef {
        letter: Letter,
    },
    /// `C u1^e C^-1 = l^e` for the standard conjugacy witness of `l`.
    Witness {
        letter: Letter,
    },
}

impl fmt::Display for RelationRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationRef::Chain { family, form } => match form {
                ChainForm::Base => write!(f, "{family}"),
                ChainForm::ConjUp(e) => write!(f, "{family}#up({e})"),
                ChainForm::ConjDown(e) => write!(f, "{family}#down({e})"),
            },
            RelationRef::Lantern => write!(f, "lantern"),
            RelationRef::Commute { p, q } => write!(f, "commute({p},{q})"),
            RelationRef::Transport { f: word, letter } => write!(f, "transport({word}; {letter})"),
            RelationRef::MacroDef { letter } => write!(f, "macro({letter})"),
            RelationRef::Witness { letter } => write!(f, "witness({letter})"),
        }
    }
}

fn parse_chain_family(s: &str) -> Option<ChainFamily> {
    match s {
        "braid-uv" => return Some(ChainFamily::BraidUV),
        "chain-uvb" => return Some(ChainFamily::ChainUVB),
        _ => {}
    }
    let inner = |prefix: &str| -> Option<u8> {
        s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?.parse().ok()
    };
    if let Some(i) = inner("braid-u") {
        return Some(ChainFamily::BraidU(i));
    }
    if let Some(i) = inner("chain-ua") {
        return Some(ChainFamily::ChainUA(i));
    }
    None
}

impl FromStr for RelationRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown rule `{s}`"));
        if s == "lantern" {
            return Ok(RelationRef::Lantern);
        }
        if let Some(rest) = s.strip_prefix("commute(") {
            let rest = rest.strip_suffix(')').ok_or_else(bad)?;
            let (p, q) = rest.split_once(',').ok_or_else(bad)?;
            return Ok(RelationRef::Commute {
                p: parse_letter(p.trim())?,
                q: parse_letter(q.trim())?,
            });
        }
        if let Some(rest) = s.strip_prefix("transport(") {
            let rest = rest.strip_suffix(')').ok_or_else(bad)?;
            let (word, letter) = rest.split_once(';').ok_or_else(bad)?;
            return Ok(RelationRef::Transport {
                f: Word::parse(word.trim())?,
                letter: parse_letter(letter.trim())?,
            });
        }
        if let Some(rest) = s.strip_prefix("macro(") {
            let rest = rest.strip_suffix(')').ok_or_else(bad)?;
            return Ok(RelationRef::MacroDef { letter: parse_letter(rest.trim())? });
        }
        if let Some(rest) = s.strip_prefix("witness(") {
            let rest = rest.strip_suffix(')').ok_or_else(bad)?;
            return Ok(RelationRef::Witness { letter: parse_letter(rest.trim())? });
        }
        // Chain families, with an optional #up/#down suffix.
        let (fam, form) = match s.split_once('#') {
            None => (s, ChainForm::Base),
            Some((fam, suffix)) => {
                let parse_exp = |inner: &str| -> Result<i8> {
                    match inner {
                        "1" | "+1" => Ok(1),
                        "-1" => Ok(-1),
                        _ => Err(bad()),
                    }
                };
                if let Some(inner) = suffix.strip_prefix("up(").and_then(|r| r.strip_suffix(')')) {
                    (fam, ChainForm::ConjUp(parse_exp(inner)?))
                } else if let Some(inner) =
                    suffix.strip_prefix("down(").and_then(|r| r.strip_suffix(')'))
                {
                    (fam, ChainForm::ConjDown(parse_exp(inner)?))
                } else {
                    return Err(bad());
                }
            }
        };
        let family = parse_chain_family(fam).ok_or_else(bad)?;
        Ok(RelationRef::Chain { family, form })
    }
}

/// Rewrite direction: replace the left side by the right, or back.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Reverse,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Forward => write!(f, "fwd"),
            Direction::Reverse => write!(f, "rev"),
        }
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fwd" => Ok(Direction::Forward),
            "rev" => Ok(Direction::Reverse),
            _ => Err(Error::Parse(format!("unknown direction `{s}`"))),
        }
    }
}

/// One concrete, positionally applicable relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationInstance {
    pub rule: RelationRef,
    /// Family label for listings.
    pub family: String,
    pub lhs: Word,
    pub rhs: Word,
    pub anchor: String,
    pub assumptions: Vec<Assumption>,
}

/// The catalog listing at one genus.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub instances: Vec<RelationInstance>,
    pub warnings: Vec<String>,
}

/// Kernel context: genus, tables, macros and the homology representation.
/// Everything instance resolution may consult lives here, so replaying a
/// certificate against a context re-derives each step's justification.
#[derive(Debug, Clone)]
pub struct Context {
    genus: usize,
    fixtures: FixtureTable,
    mapping: Option<CurveMappingTable>,
    macros: MacroTable,
    rep: Rep,
}

impl Context {
    /// Context with the built-in fixture table and, from genus 7 up, the
    /// canonical mapping table.
    pub fn new(genus: usize) -> Result<Self> {
        Context::with_fixtures(genus, FixtureTable::builtin(genus))
    }

    /// Context with a caller-supplied fixture table.
    pub fn with_fixtures(genus: usize, fixtures: FixtureTable) -> Result<Self> {
        let rep = Rep::new(genus)?;
        let mapping = if genus >= 7 { Some(CurveMappingTable::canonical(genus)?) } else { None };
        let ctx = Context { genus, fixtures, mapping, macros: MacroTable::standard(), rep };
        ctx.validate_macro_shadows()?;
        Ok(ctx)
    }

    /// Cross-check that each macro twist's definitional word has the same
    /// homology shadow as the twist it names.
    fn validate_macro_shadows(&self) -> Result<()> {
        if self.genus < 7 {
            return Ok(());
        }
        for gen in [Gen::C, Gen::D, Gen::E, Gen::W] {
            let (_, _, twist_curve) = symbol_curves(gen, self.genus)?;
            let expected = crate::homology::transvection(&twist_curve, self.genus)?;
            let word = self.macros.base_expansion(gen).unwrap();
            if self.rep.evaluate(word)? != expected {
                return Err(Error::InvalidCertificate(format!(
                    "macro `{gen}` expansion disagrees with its twist in homology"
                )));
            }
        }
        Ok(())
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn fixtures(&self) -> &FixtureTable {
        &self.fixtures
    }

    pub fn mapping(&self) -> Option<&CurveMappingTable> {
        self.mapping.as_ref()
    }

    pub fn macros(&self) -> &MacroTable {
        &self.macros
    }

    fn check_shadow(&self, instance: RelationInstance) -> Result<RelationInstance> {
        if instance.lhs == instance.rhs {
            return Err(Error::InvalidCertificate(format!(
                "instance {} is degenerate: both sides are `{}`",
                instance.rule, instance.lhs
            )));
        }
        let lhs = self.rep.evaluate(&instance.lhs)?;
        let rhs = self.rep.evaluate(&instance.rhs)?;
        if lhs != rhs {
            return Err(Error::InvalidCertificate(format!(
                "instance {} fails its homology shadow: {} vs {}",
                instance.rule, instance.lhs, instance.rhs
            )));
        }
        Ok(instance)
    }

    /// A chain-family instance in the requested form.
    pub fn chain_instance(&self, family: ChainFamily, form: ChainForm) -> Result<RelationInstance> {
        if self.genus < family.min_genus() {
            return Err(Error::UnsupportedGenus(format!(
                "{family} needs genus >= {}, got {}",
                family.min_genus(),
                self.genus
            )));
        }
        let (conj, t, t_prime) = family.shape();
        let (lhs, rhs) = match form {
            ChainForm::Base => (
                conj.concat(&Word::single(Letter::pos(t))),
                Word::single(Letter::pos(t_prime)).concat(&conj),
            ),
            ChainForm::ConjUp(e) => (
                Word::single(Letter::new(t_prime, e)),
                Word::join(&[&conj, &Word::single(Letter::new(t, e)), &conj.inverse()]),
            ),
            ChainForm::ConjDown(e) => (
                Word::single(Letter::new(t, e)),
                Word::join(&[&conj.inverse(), &Word::single(Letter::new(t_prime, e)), &conj]),
            ),
        };
        self.check_shadow(RelationInstance {
            rule: RelationRef::Chain { family, form },
            family: family.to_string(),
            lhs,
            rhs,
            anchor: family.anchor(),
            assumptions: Vec::new(),
        })
    }

    /// The lantern relation `a1 a3 a5 e = b c d`, gated on the recorded
    /// four-holed-sphere configuration.
    pub fn lantern_instance(&self) -> Result<RelationInstance> {
        if self.genus < 7 {
            return Err(Error::UnsupportedGenus(format!(
                "the lantern relation needs genus >= 7, got {}",
                self.genus
            )));
        }
        let boundary =
            [Gen::A(1), Gen::A(3), Gen::A(5), Gen::E].map(|g| support_curves(g, self.genus));
        for i in 0..4 {
            for j in (i + 1)..4 {
                let (ci, cj) = (boundary[i].as_ref().unwrap(), boundary[j].as_ref().unwrap());
                match self.fixtures.lookup(&ci[0], &cj[0]) {
                    Some(fx) if fx.status == Disjointness::Disjoint => {}
                    _ => {
                        return Err(Error::InvalidCertificate(format!(
                            "lantern configuration incomplete: no disjointness fixture for \
                             ({}, {})",
                            ci[0], cj[0]
                        )))
                    }
                }
            }
        }
        let config = "alpha1, alpha3, alpha5 and epsilon bound a four-holed sphere containing \
                      beta, gamma and delta";
        self.check_shadow(RelationInstance {
            rule: RelationRef::Lantern,
            family: "lantern".to_string(),
            lhs: Word::parse("a1 a3 a5 e")?,
            rhs: Word::parse("b c d")?,
            anchor: format!("lantern relation of the seven twists: {config}"),
            assumptions: vec![Assumption::new("lantern-config", config)],
        })
    }

    /// Commutation of two letters, derived from the fixture table: every
    /// cross pair of their supporting curves must be recorded disjoint.
    pub fn commute_instance(&self, p: Letter, q: Letter) -> Result<RelationInstance> {
        if p.gen == q.gen {
            return Err(Error::UnsupportedSpec(format!(
                "commute({p},{q}) is trivial; a letter always commutes with itself"
            )));
        }
        let sp = support_curves(p.gen, self.genus)?;
        let sq = support_curves(q.gen, self.genus)?;
        let mut assumptions = Vec::new();
        for cp in &sp {
            for cq in &sq {
                match self.fixtures.lookup(cp, cq) {
                    Some(fx) if fx.status == Disjointness::Disjoint => {
                        let a = Assumption::new(fx.tag.clone(), fx.anchor.clone());
                        if !assumptions.contains(&a) {
                            assumptions.push(a);
                        }
                    }
                    _ => {
                        return Err(Error::InvalidCertificate(format!(
                            "no disjointness fixture for ({cp}, {cq}); commute({p},{q}) is not \
                             derivable"
                        )))
                    }
                }
            }
        }
        self.check_shadow(RelationInstance {
            rule: RelationRef::Commute { p, q },
            family: "commute".to_string(),
            lhs: Word::new(vec![p, q]),
            rhs: Word::new(vec![q, p]),
            anchor: format!("{} and {} have disjoint supports", p.gen, q.gen),
            assumptions,
        })
    }

    /// Transport of a twist or transposition letter along `f`:
    /// `f s^e f^-1 = image^e`, with both curve images read off the mapping
    /// table. Never guesses: a missing or flagged entry is an error.
    pub fn transport_instance(&self, f: &Word, letter: Letter) -> Result<RelationInstance> {
        let table = self.mapping.as_ref().ok_or_else(|| {
            Error::Untransportable(format!("no mapping table at genus {}", self.genus))
        })?;
        f.validate_for_genus(self.genus)?;
        let (kind, direction, twist) = symbol_curves(letter.gen, self.genus)?;
        let dir_entry = table.lookup(f, &direction, &self.macros).ok_or_else(|| {
            Error::Untransportable(format!("no mapping entry for {f} on {direction}"))
        })?;
        let twist_entry = table.lookup(f, &twist, &self.macros).ok_or_else(|| {
            Error::Untransportable(format!("no mapping entry for {f} on {twist}"))
        })?;
        let image = letter_for_curves(kind, &dir_entry.target, &twist_entry.target, self.genus)
            .ok_or_else(|| {
                Error::Untransportable(format!(
                    "image pair ({}, {}) names no recorded {} letter",
                    dir_entry.target,
                    twist_entry.target,
                    match kind {
                        SymbolKind::Twist => "twist",
                        SymbolKind::Transposition => "transposition",
                    }
                ))
            })?;
        let lhs = Word::join(&[f, &Word::single(letter), &f.inverse()]);
        let rhs = Word::single(Letter::new(image, letter.exp));
        self.check_shadow(RelationInstance {
            rule: RelationRef::Transport { f: f.clone(), letter },
            family: "transport".to_string(),
            lhs,
            rhs,
            anchor: format!("conjugation transports the defining curves along {f}"),
            assumptions: vec![
                Assumption::for_mapping(dir_entry),
                Assumption::for_mapping(twist_entry),
            ],
        })
    }

    /// Definitional expansion of a macro letter.
    pub fn macro_instance(&self, letter: Letter) -> Result<RelationInstance> {
        let def = self.macros.defining_word(letter.gen).ok_or_else(|| {
            Error::UnknownSymbol(format!("`{}` has no defining word", letter.gen))
        })?;
        let rhs = if letter.exp == 1 { def.clone() } else { def.inverse() };
        self.check_shadow(RelationInstance {
            rule: RelationRef::MacroDef { letter },
            family: "macro".to_string(),
            lhs: Word::single(letter),
            rhs,
            anchor: format!("definitional expansion of {}", letter.gen),
            assumptions: Vec::new(),
        })
    }

    /// The standard conjugator `C` with `C u1 C^-1 = l`, built by chaining
    /// the braid relations (and the defining conjugation for `s2`, `s3`).
    pub fn witness_conjugator(&self, gen: Gen) -> Result<Word> {
        let chain_to_u1 = |top: u8| -> Word {
            // (u_{top-1} u_top)(u_{top-2} u_{top-1})...(u1 u2)
            let mut word = Word::empty();
            for i in (1..top).rev() {
                word.push(Letter::pos(Gen::U(i)));
                word.push(Letter::pos(Gen::U(i + 1)));
            }
            word
        };
        let conj = match gen {
            Gen::U(i) if i >= 1 => chain_to_u1(i),
            Gen::V => Word::parse("u4 v")?.concat(&chain_to_u1(4)),
            Gen::S2 => Word::parse("a3")?.concat(&chain_to_u1(2)),
            Gen::S3 => Word::parse("a3")?.concat(&chain_to_u1(3)),
            other => {
                return Err(Error::UnsupportedLetter(format!(
                    "no standard conjugacy witness for `{other}`"
                )))
            }
        };
        conj.validate_for_genus(self.genus)?;
        Ok(conj)
    }

    /// The witness relation `C u1^e C^-1 = l^e` as a one-step instance.
    /// Derivable from the chain relations alone; the two-step braid
    /// derivations are materialized by the witness builder.
    pub fn witness_instance(&self, letter: Letter) -> Result<RelationInstance> {
        let conj = self.witness_conjugator(letter.gen)?;
        let lhs = Word::join(&[
            &conj,
            &Word::single(Letter::new(Gen::U(1), letter.exp)),
            &conj.inverse(),
        ]);
        self.check_shadow(RelationInstance {
            rule: RelationRef::Witness { letter },
            family: "witness".to_string(),
            lhs,
            rhs: Word::single(letter),
            anchor: format!("standard conjugacy witness carrying u1 to {}", letter.gen),
            assumptions: Vec::new(),
        })
    }

    /// Resolve a stored reference against this context's tables.
    pub fn resolve(&self, rule: &RelationRef) -> Result<RelationInstance> {
        match rule {
            RelationRef::Chain { family, form } => self.chain_instance(*family, *form),
            RelationRef::Lantern => self.lantern_instance(),
            RelationRef::Commute { p, q } => self.commute_instance(*p, *q),
            RelationRef::Transport { f, letter } => self.transport_instance(f, *letter),
            RelationRef::MacroDef { letter } => self.macro_instance(*letter),
            RelationRef::Witness { letter } => self.witness_instance(*letter),
        }
    }

    /// Apply one side of `instance` at `pos`, replacing it by the other.
    pub fn apply(
        &self,
        word: &Word,
        instance: &RelationInstance,
        pos: usize,
        direction: Direction,
    ) -> Result<Word> {
        let (from, to) = match direction {
            Direction::Forward => (&instance.lhs, &instance.rhs),
            Direction::Reverse => (&instance.rhs, &instance.lhs),
        };
        if !word.occurs_at(from, pos) {
            return Err(Error::NoOccurrence(format!(
                "side `{from}` of {} does not occur at position {pos} of `{word}`",
                instance.rule
            )));
        }
        Ok(word.splice(pos, from.len(), to))
    }

    /// Letters eligible for fixture-derived commutation instances.
    fn commute_universe(&self) -> Vec<Gen> {
        let mut letters = Vec::new();
        for i in 1..self.genus {
            letters.push(Gen::A(i as u8));
            letters.push(Gen::U(i as u8));
        }
        if self.genus >= 5 {
            letters.push(Gen::B);
            letters.push(Gen::V);
        }
        if self.genus >= 7 {
            letters.extend([Gen::C, Gen::D, Gen::E, Gen::W]);
        }
        letters
    }

    /// The full catalog at this genus: chain instances, the lantern when
    /// the genus allows it (with a warning otherwise), and every
    /// fixture-derived commutation.
    pub fn catalog(&self) -> Result<Catalog> {
        let mut instances = Vec::new();
        let mut warnings = Vec::new();
        for i in 1..=self.genus.saturating_sub(2) {
            instances.push(self.chain_instance(ChainFamily::BraidU(i as u8), ChainForm::Base)?);
            instances.push(self.chain_instance(ChainFamily::ChainUA(i as u8), ChainForm::Base)?);
        }
        if self.genus >= 5 {
            instances.push(self.chain_instance(ChainFamily::BraidUV, ChainForm::Base)?);
            instances.push(self.chain_instance(ChainFamily::ChainUVB, ChainForm::Base)?);
        }
        if self.genus >= 7 {
            instances.push(self.lantern_instance()?);
        } else {
            warnings.push(format!(
                "genus {} < 7: catalog restricted, lantern relation omitted",
                self.genus
            ));
        }
        let universe = self.commute_universe();
        for (idx, &p) in universe.iter().enumerate() {
            for &q in &universe[idx + 1..] {
                if let Ok(instance) = self.commute_instance(Letter::pos(p), Letter::pos(q)) {
                    instances.push(instance);
                }
            }
        }
        Ok(Catalog { instances, warnings })
    }

    /// The conjugation identities `u_i a_i u_i^-1 = a_i^-1` and
    /// `v b v^-1 = b^-1`: a transposition inverts the twist it contains.
    /// Listed separately from the catalog; their homology shadows collapse
    /// to triviality because transvections are involutions.
    pub fn twist_inversion_identities(&self) -> Result<Vec<RelationInstance>> {
        let mut out = Vec::new();
        for i in 1..self.genus {
            let i = i as u8;
            let lhs = Word::new(vec![
                Letter::pos(Gen::U(i)),
                Letter::pos(Gen::A(i)),
                Letter::neg(Gen::U(i)),
            ]);
            let rhs = Word::single(Letter::neg(Gen::A(i)));
            out.push(self.check_shadow(RelationInstance {
                rule: RelationRef::Commute { p: Letter::pos(Gen::U(i)), q: Letter::pos(Gen::A(i)) },
                family: "twist-inversion".to_string(),
                lhs,
                rhs,
                anchor: format!("u{i} inverts the twist a{i} it contains"),
                assumptions: Vec::new(),
            })?);
        }
        if self.genus >= 5 {
            out.push(self.check_shadow(RelationInstance {
                rule: RelationRef::Commute { p: Letter::pos(Gen::V), q: Letter::pos(Gen::B) },
                family: "twist-inversion".to_string(),
                lhs: Word::parse("v b v^-1")?,
                rhs: Word::parse("b^-1")?,
                anchor: "v inverts the twist b it contains".to_string(),
                assumptions: Vec::new(),
            })?);
        }
        Ok(out)
    }
}
