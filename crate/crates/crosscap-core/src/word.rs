//! Free-group words over the named generators and the macro letters.
//!
//! The base alphabet consists of the Dehn twists `a1..a(g-1)`, `b` and the
//! crosscap transpositions `u1..u(g-1)`, `v`. The macro letters `c`, `d`,
//! `e`, `w`, `x`, `s2`, `s3` abbreviate fixed words over the base alphabet;
//! their defining words live in [`MacroTable`]. Words are plain letter
//! sequences; free reduction is a normal form, not an invariant.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A named generator or macro letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    /// Dehn twist about the two-sided curve `alpha_i`.
    A(u8),
    /// Dehn twist about `beta`.
    B,
    /// Crosscap transposition swapping the crosscaps `i` and `i+1`.
    U(u8),
    /// Crosscap transposition supported on the first four crosscaps.
    V,
    /// Macro twist about `gamma` (`c = x b x^-1`).
    C,
    /// Macro twist about `delta` (definitional word over the base letters).
    D,
    /// Macro twist about `epsilon` (conjugate of `d`).
    E,
    /// Macro transposition `w = x v x^-1`.
    W,
    /// Macro word `x = u2 u3 u4 u5 u1 u2 u3 u4`.
    X,
    /// Conjugated transposition `s2 = a3 u2 a3^-1`.
    S2,
    /// Conjugated transposition `s3 = a3 u3 a3^-1`.
    S3,
}

impl Gen {
    /// True for letters of the base alphabet `{a_i, b, u_i, v}`.
    pub fn is_base(self) -> bool {
        matches!(self, Gen::A(_) | Gen::B | Gen::U(_) | Gen::V)
    }

    /// True for macro letters with a defining word.
    pub fn is_macro(self) -> bool {
        !self.is_base()
    }

    /// Smallest genus for which this letter names a defined element.
    pub fn min_genus(self) -> usize {
        match self {
            Gen::A(i) | Gen::U(i) => i as usize + 1,
            Gen::B | Gen::V => 5,
            Gen::S2 | Gen::S3 => 5,
            Gen::X => 6,
            Gen::C | Gen::D | Gen::E | Gen::W => 7,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::A(i) => write!(f, "a{i}"),
            Gen::B => write!(f, "b"),
            Gen::U(i) => write!(f, "u{i}"),
            Gen::V => write!(f, "v"),
            Gen::C => write!(f, "c"),
            Gen::D => write!(f, "d"),
            Gen::E => write!(f, "e"),
            Gen::W => write!(f, "w"),
            Gen::X => write!(f, "x"),
            Gen::S2 => write!(f, "s2"),
            Gen::S3 => write!(f, "s3"),
        }
    }
}

/// One letter of a word: a generator with exponent `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Gen,
    pub exp: i8,
}

impl Letter {
    pub fn new(gen: Gen, exp: i8) -> Self {
        debug_assert!(exp == 1 || exp == -1);
        Letter { gen, exp }
    }

    pub fn pos(gen: Gen) -> Self {
        Letter { gen, exp: 1 }
    }

    pub fn neg(gen: Gen) -> Self {
        Letter { gen, exp: -1 }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, exp: -self.exp }
    }

    /// True when `other` cancels this letter.
    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.exp == -other.exp
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 1 {
            write!(f, "{}", self.gen)
        } else {
            write!(f, "{}^-1", self.gen)
        }
    }
}

/// A finite word over the generator alphabet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn single(l: Letter) -> Self {
        Word(vec![l])
    }

    /// The formal inverse: reversed sequence with flipped exponents.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Concatenation of several words.
    pub fn join(parts: &[&Word]) -> Word {
        let mut v = Vec::new();
        for p in parts {
            v.extend_from_slice(&p.0);
        }
        Word(v)
    }

    /// The unique freely reduced form. Stack-based single pass; adjacent
    /// inverse pairs cancel until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last().is_some_and(|t| t.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    /// True when `pattern` occurs literally at `pos`.
    pub fn occurs_at(&self, pattern: &Word, pos: usize) -> bool {
        pos + pattern.len() <= self.len() && self.0[pos..pos + pattern.len()] == pattern.0[..]
    }

    /// Replace the `len` letters at `pos` with `replacement`.
    pub fn splice(&self, pos: usize, len: usize, replacement: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() - len + replacement.len());
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(&replacement.0);
        v.extend_from_slice(&self.0[pos + len..]);
        Word(v)
    }

    /// Exponent sum of each generator, the image in the free abelianization.
    pub fn exponent_sums(&self) -> BTreeMap<Gen, i64> {
        let mut sums = BTreeMap::new();
        for l in &self.0 {
            *sums.entry(l.gen).or_insert(0) += l.exp as i64;
        }
        sums.retain(|_, v| *v != 0);
        sums
    }

    /// Check that every letter names an element defined at genus `g`.
    pub fn validate_for_genus(&self, g: usize) -> Result<()> {
        for l in &self.0 {
            if l.gen.min_genus() > g {
                return Err(Error::UnknownSymbol(format!(
                    "letter {} is not defined at genus {g}",
                    l.gen
                )));
            }
        }
        Ok(())
    }

    /// Parse a space-separated token word, e.g. `u1 u2 a1^-1`.
    pub fn parse(s: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            letters.push(parse_letter(tok)?);
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Word::parse(&s).map_err(D::Error::custom)
    }
}

fn parse_gen(name: &str) -> Result<Gen> {
    let bad = || Error::Parse(format!("unknown generator `{name}`"));
    match name {
        "b" => return Ok(Gen::B),
        "v" => return Ok(Gen::V),
        "c" => return Ok(Gen::C),
        "d" => return Ok(Gen::D),
        "e" => return Ok(Gen::E),
        "w" => return Ok(Gen::W),
        "x" => return Ok(Gen::X),
        "s2" => return Ok(Gen::S2),
        "s3" => return Ok(Gen::S3),
        _ => {}
    }
    let (head, idx) = name.split_at(1);
    let i: u8 = idx.parse().map_err(|_| bad())?;
    if i == 0 {
        return Err(bad());
    }
    match head {
        "a" => Ok(Gen::A(i)),
        "u" => Ok(Gen::U(i)),
        _ => Err(bad()),
    }
}

/// Parse one token with optional caret exponent, e.g. `a3^-1`.
pub fn parse_letter(tok: &str) -> Result<Letter> {
    let (name, exp) = match tok.split_once('^') {
        None => (tok, 1),
        Some((name, "1")) => (name, 1),
        Some((name, "-1")) => (name, -1),
        Some((_, e)) => {
            return Err(Error::Parse(format!(
                "unsupported exponent `^{e}` in `{tok}` (only ^1 and ^-1)"
            )))
        }
    };
    if name.is_empty() {
        return Err(Error::Parse(format!("empty generator in `{tok}`")));
    }
    Ok(Letter::new(parse_gen(name)?, exp))
}

/// Shorthand constructor used pervasively in tests and builders.
pub fn w(s: &str) -> Word {
    Word::parse(s).expect("literal word")
}

/// The defining words of the macro letters.
///
/// Each macro carries its displayed defining word (possibly referring to
/// earlier macros) and a fully expanded base-alphabet form computed at
/// construction; expansion is guaranteed to terminate because the table is
/// built in dependency order.
#[derive(Debug, Clone)]
pub struct MacroTable {
    defining: BTreeMap<Gen, Word>,
    base: BTreeMap<Gen, Word>,
}

impl MacroTable {
    /// The standard table for genus at least 7.
    pub fn standard() -> Self {
        let mut defining = BTreeMap::new();
        defining.insert(Gen::X, w("u2 u3 u4 u5 u1 u2 u3 u4"));
        defining.insert(Gen::W, w("x v x^-1"));
        defining.insert(Gen::C, w("x b x^-1"));
        defining.insert(Gen::S2, w("a3 u2 a3^-1"));
        defining.insert(Gen::S3, w("a3 u3 a3^-1"));
        defining.insert(
            Gen::D,
            w("u4^-1 u3^-1 u5^-1 u4^-1 u4 v u3 u4 a3 u4^-1 u3^-1 v^-1 u4^-1 u4 u5 u3 u4"),
        );
        defining.insert(Gen::E, w("u6 w u5^-1 u6^-1 d u6 u5 w^-1 u6^-1"));

        let mut base: BTreeMap<Gen, Word> = BTreeMap::new();
        // Dependency order: x before w and c, d before e.
        for gen in [Gen::X, Gen::S2, Gen::S3, Gen::D, Gen::W, Gen::C, Gen::E] {
            let def = &defining[&gen];
            let mut expanded = Vec::new();
            for l in def.letters() {
                if l.gen.is_base() {
                    expanded.push(*l);
                } else {
                    let sub = base
                        .get(&l.gen)
                        .unwrap_or_else(|| panic!("macro {} out of dependency order", l.gen));
                    let sub = if l.exp == 1 { sub.clone() } else { sub.inverse() };
                    expanded.extend_from_slice(sub.letters());
                }
            }
            base.insert(gen, Word::new(expanded));
        }
        MacroTable { defining, base }
    }

    /// An empty table; every macro expansion fails. Test hook.
    pub fn empty() -> Self {
        MacroTable { defining: BTreeMap::new(), base: BTreeMap::new() }
    }

    /// The displayed defining word (may itself contain macro letters).
    pub fn defining_word(&self, gen: Gen) -> Option<&Word> {
        self.defining.get(&gen)
    }

    /// The fully expanded base-alphabet form.
    pub fn base_expansion(&self, gen: Gen) -> Option<&Word> {
        self.base.get(&gen)
    }

    /// Expand every macro letter of `word` to base letters. No free
    /// reduction is applied; defining words are substituted verbatim.
    pub fn expand(&self, word: &Word) -> Result<Word> {
        let mut out = Vec::new();
        for l in word.letters() {
            if l.gen.is_base() {
                out.push(*l);
            } else {
                let exp = self.base.get(&l.gen).ok_or_else(|| {
                    Error::UnknownSymbol(format!("macro `{}` has no defining word", l.gen))
                })?;
                let exp = if l.exp == 1 { exp.clone() } else { exp.inverse() };
                out.extend_from_slice(exp.letters());
            }
        }
        Ok(Word::new(out))
    }
}

impl Default for MacroTable {
    fn default() -> Self {
        MacroTable::standard()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_display_roundtrip() {
        let s = "u1 u2 a1^-1 v b^-1 s2 x w^-1 e d c a12";
        let word = Word::parse(s).unwrap();
        assert_eq!(word.to_string(), s);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Word::parse("q3").is_err());
        assert!(Word::parse("a0").is_err());
        assert!(Word::parse("u2^2").is_err());
        assert!(Word::parse("^-1").is_err());
    }

    #[test]
    fn free_reduce_examples() {
        assert_eq!(w("u1 u1^-1").free_reduce(), Word::empty());
        assert_eq!(w("a3 u2 u2^-1 a3^-1").free_reduce(), Word::empty());
        let fixed = w("u4 v u4");
        assert_eq!(fixed.free_reduce(), fixed);
    }

    #[test]
    fn free_reduce_cancels_inverse_concat() {
        let word = w("a1 u2^-1 v b u3");
        assert_eq!(word.concat(&word.inverse()).free_reduce(), Word::empty());
    }

    #[test]
    fn splice_and_occurrence() {
        let word = w("u4 v u4");
        assert!(word.occurs_at(&w("v u4"), 1));
        assert!(!word.occurs_at(&w("v u4"), 0));
        assert_eq!(word.splice(0, 3, &w("v u4 v")), w("v u4 v"));
    }

    #[test]
    fn macro_expansion_s2() {
        let table = MacroTable::standard();
        assert_eq!(table.expand(&w("s2")).unwrap(), w("a3 u2 a3^-1"));
        assert_eq!(table.expand(&w("s2^-1")).unwrap(), w("a3 u2^-1 a3^-1"));
    }

    #[test]
    fn macro_expansion_w_is_x_v_x_inverse() {
        let table = MacroTable::standard();
        let x = w("u2 u3 u4 u5 u1 u2 u3 u4");
        let expected = Word::join(&[&x, &w("v"), &x.inverse()]);
        assert_eq!(table.expand(&w("w")).unwrap(), expected);
    }

    #[test]
    fn macro_expansion_d_matches_displayed_definition() {
        let table = MacroTable::standard();
        let outer = w("u4 u5 u3 u4");
        let inner = w("u4 v u3 u4");
        let expected = Word::join(&[&outer.inverse(), &inner, &w("a3"), &inner.inverse(), &outer]);
        assert_eq!(table.expand(&w("d")).unwrap(), expected);
        assert_eq!(table.defining_word(Gen::D).unwrap(), &expected);
    }

    #[test]
    fn macro_expansion_is_base_only() {
        let table = MacroTable::standard();
        for gen in [Gen::C, Gen::D, Gen::E, Gen::W, Gen::X, Gen::S2, Gen::S3] {
            let expanded = table.expand(&Word::single(Letter::pos(gen))).unwrap();
            assert!(expanded.letters().iter().all(|l| l.gen.is_base()), "{gen}");
        }
    }

    #[test]
    fn empty_table_reports_unknown_symbol() {
        let table = MacroTable::empty();
        let err = table.expand(&w("s2")).unwrap_err();
        assert_eq!(err.kind(), "unknown-symbol");
    }

    #[test]
    fn exponent_sums_collapse_conjugation() {
        let sums = w("u4 v a3 v^-1 u4^-1").exponent_sums();
        assert_eq!(sums.len(), 1);
        assert_eq!(sums[&Gen::A(3)], 1);
    }

    #[test]
    fn genus_validation() {
        assert!(w("u6").validate_for_genus(7).is_ok());
        assert!(w("u7").validate_for_genus(7).is_err());
        assert!(w("e").validate_for_genus(6).is_err());
    }
}
