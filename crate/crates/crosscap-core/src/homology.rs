//! The Z/2-homology representation.
//!
//! First homology with Z/2 coefficients has the crosscap cores as a basis;
//! the intersection form is the identity in that basis. A Dehn twist about a
//! two-sided curve acts as the GF(2) transvection `x -> x + <x,c>c` by the
//! curve's class, and a crosscap slide acts as the identity, so a crosscap
//! transposition shares its matrix with the twist it contains. Every word
//! identity and curve-mapping claim in the kernel gets checked against this
//! representation; a passing check is a necessary condition only and is
//! reported as "homology-consistent".
//!
//! Rows are `u64` bitmasks, so everything here is branch-light bit fiddling.

use serde::{Deserialize, Serialize};

use crate::surface::{CurveSymbol, MAX_GENUS};
use crate::word::{Gen, MacroTable, Word};
use crate::{Error, Result};

/// Matrix product order: the rightmost letter of a word acts first.
pub const COMPOSITION_CONVENTION: &str = "rightmost-first";

/// A vector over the two-element field, packed into a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct F2Vector {
    bits: u64,
    len: usize,
}

impl F2Vector {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_GENUS);
        F2Vector { bits: 0, len }
    }

    pub fn from_bits(bits: u64, len: usize) -> Self {
        assert!(len <= MAX_GENUS);
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        F2Vector { bits: bits & mask, len }
    }

    /// Basis vector `e_i` (1-based).
    pub fn basis(i: usize, len: usize) -> Self {
        assert!(i >= 1 && i <= len);
        F2Vector { bits: 1 << (i - 1), len }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.len);
        self.bits >> (i - 1) & 1 == 1
    }

    pub fn add(&self, other: &F2Vector) -> F2Vector {
        debug_assert_eq!(self.len, other.len);
        F2Vector { bits: self.bits ^ other.bits, len: self.len }
    }

    /// The diagonal Z/2 intersection form.
    pub fn pairing(&self, other: &F2Vector) -> u8 {
        debug_assert_eq!(self.len, other.len);
        ((self.bits & other.bits).count_ones() % 2) as u8
    }

    /// `e_i` indices with bit set, 1-based.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.len).filter(|&i| self.get(i)).collect()
    }
}

impl std::fmt::Display for F2Vector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 1..=self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

/// The homology class of a canonical curve: the indicator vector of its
/// index set in the crosscap basis.
pub fn homology_class(indices: &[usize], genus: usize) -> Result<F2Vector> {
    let curve = CurveSymbol::positive(indices.iter().copied())?;
    curve.validate_for_genus(genus)?;
    let mut bits = 0u64;
    for &i in curve.indices() {
        bits |= 1 << (i - 1);
    }
    Ok(F2Vector { bits, len: genus })
}

/// A square GF(2) matrix; `rows[i]` is the bitmask of row `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct F2Matrix {
    rows: Vec<u64>,
    size: usize,
}

impl F2Matrix {
    pub fn identity(size: usize) -> Self {
        assert!(size <= MAX_GENUS);
        F2Matrix { rows: (0..size).map(|i| 1u64 << i).collect(), size }
    }

    pub fn from_rows(rows: Vec<u64>) -> Self {
        let size = rows.len();
        assert!(size <= MAX_GENUS);
        F2Matrix { rows, size }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, &r)| r == 1 << i)
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &F2Vector) -> F2Vector {
        debug_assert_eq!(self.size, v.len());
        let mut bits = 0u64;
        for (i, &row) in self.rows.iter().enumerate() {
            bits |= (((row & v.bits()).count_ones() as u64) & 1) << i;
        }
        F2Vector { bits, len: self.size }
    }

    /// Matrix product `self * other`; under the rightmost-first convention
    /// `other` acts before `self`.
    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        debug_assert_eq!(self.size, other.size);
        let mut rows = vec![0u64; self.size];
        for (i, out) in rows.iter_mut().enumerate() {
            let mut acc = 0u64;
            let mut lhs = self.rows[i];
            while lhs != 0 {
                let j = lhs.trailing_zeros() as usize;
                acc ^= other.rows[j];
                lhs &= lhs - 1;
            }
            *out = acc;
        }
        F2Matrix { rows, size: self.size }
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut rows = vec![0u64; self.size];
        for (i, &row) in self.rows.iter().enumerate() {
            let mut r = row;
            while r != 0 {
                let j = r.trailing_zeros() as usize;
                rows[j] |= 1 << i;
                r &= r - 1;
            }
        }
        F2Matrix { rows, size: self.size }
    }

    /// Hex-packed row bitstrings, one per row, fixed width; stable row order.
    pub fn to_hex_rows(&self) -> Vec<String> {
        let width = self.size.div_ceil(4);
        self.rows.iter().map(|r| format!("{r:0width$x}")).collect()
    }
}

/// Whether `m` preserves the diagonal form, i.e. whether its transpose is
/// its inverse.
pub fn preserves_form(m: &F2Matrix) -> bool {
    m.transpose().mul(m).is_identity()
}

/// The GF(2) transvection by the class of a two-sided curve:
/// `x -> x + <x,c>c`. An involution that preserves the form; one-sided
/// curves (odd self-pairing) do not give one.
pub fn transvection(curve: &CurveSymbol, genus: usize) -> Result<F2Matrix> {
    if !curve.is_two_sided() {
        return Err(Error::InvalidTwist(format!(
            "curve {curve} is one-sided; twists need a two-sided curve"
        )));
    }
    let class = homology_class(curve.indices(), genus)?;
    Ok(transvection_by_class(&class))
}

fn transvection_by_class(class: &F2Vector) -> F2Matrix {
    let g = class.len();
    let c = class.bits();
    let rows = (0..g)
        .map(|i| {
            let e = 1u64 << i;
            if c & e != 0 {
                e ^ c
            } else {
                e
            }
        })
        .collect();
    F2Matrix { rows, size: g }
}

/// The homology representation at a fixed genus: a matrix for every
/// generator and macro letter, crosscap slides mapped to the identity.
#[derive(Debug, Clone)]
pub struct Rep {
    genus: usize,
    macros: MacroTable,
}

impl Rep {
    pub fn new(genus: usize) -> Result<Self> {
        if !(2..=MAX_GENUS).contains(&genus) {
            return Err(Error::UnsupportedGenus(format!("genus {genus} outside [2, {MAX_GENUS}]")));
        }
        Ok(Rep { genus, macros: MacroTable::standard() })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn class_of(&self, curve: &CurveSymbol) -> Result<F2Vector> {
        homology_class(curve.indices(), self.genus)
    }

    /// Matrix of a crosscap slide: the identity automorphism.
    pub fn slide_matrix(&self) -> F2Matrix {
        F2Matrix::identity(self.genus)
    }

    /// Matrix assigned to a generator or macro letter. Twists and the
    /// transpositions containing them share a matrix, since the slide factor
    /// acts trivially.
    pub fn generator(&self, gen: Gen) -> Result<F2Matrix> {
        let alpha = |i: u8| -> Result<F2Matrix> {
            if (i as usize) + 1 > self.genus {
                return Err(Error::UnknownSymbol(format!(
                    "generator index {i} out of range at genus {}",
                    self.genus
                )));
            }
            let curve = CurveSymbol::positive([i as usize, i as usize + 1])?;
            transvection(&curve, self.genus)
        };
        match gen {
            Gen::A(i) | Gen::U(i) => alpha(i),
            Gen::B | Gen::V => {
                if self.genus < 5 {
                    return Err(Error::UnknownSymbol(format!(
                        "generator {gen} needs genus >= 5, got {}",
                        self.genus
                    )));
                }
                let beta = CurveSymbol::positive([1, 2, 3, 4])?;
                transvection(&beta, self.genus)
            }
            macro_gen => {
                let expansion = self
                    .macros
                    .base_expansion(macro_gen)
                    .ok_or_else(|| Error::UnknownSymbol(format!("no expansion for `{macro_gen}`")))?
                    .clone();
                self.evaluate(&expansion)
            }
        }
    }

    /// Product of the letter matrices, rightmost letter acting first.
    ///
    /// No inverse matrices are stored: every assigned matrix preserves the
    /// form, so the inverse is the transpose, and for the transvection
    /// letters (involutions) even that collapses to the matrix itself. Only
    /// the word macro `x` has a genuinely different inverse.
    pub fn evaluate(&self, word: &Word) -> Result<F2Matrix> {
        word.validate_for_genus(self.genus)?;
        use std::collections::btree_map::Entry;
        let mut acc = F2Matrix::identity(self.genus);
        let mut cache: std::collections::BTreeMap<Gen, F2Matrix> = Default::default();
        for l in word.letters() {
            let m = match cache.entry(l.gen) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(v) => {
                    let m = self.generator(l.gen)?;
                    debug_assert!(preserves_form(&m), "{} must preserve the form", l.gen);
                    v.insert(m)
                }
            };
            if l.exp == 1 {
                acc = acc.mul(m);
            } else {
                acc = acc.mul(&m.transpose());
            }
        }
        Ok(acc)
    }

    /// Necessary condition for a curve-mapping claim `f(source) = target`:
    /// the homology shadow of `f` sends the class of `source` to the class
    /// of `target`. A pass is reported as "homology-consistent" only.
    pub fn check_mapping_claim(
        &self,
        f: &Word,
        source: &CurveSymbol,
        target: &CurveSymbol,
    ) -> Result<bool> {
        let m = self.evaluate(f)?;
        let src = self.class_of(source)?;
        let dst = self.class_of(target)?;
        Ok(m.apply(&src) == dst)
    }

    /// The full generator assignment, for reports.
    pub fn assignments(&self) -> Result<std::collections::BTreeMap<Gen, F2Matrix>> {
        let mut map = std::collections::BTreeMap::new();
        for i in 1..self.genus {
            map.insert(Gen::A(i as u8), self.generator(Gen::A(i as u8))?);
            map.insert(Gen::U(i as u8), self.generator(Gen::U(i as u8))?);
        }
        if self.genus >= 5 {
            map.insert(Gen::B, self.generator(Gen::B)?);
            map.insert(Gen::V, self.generator(Gen::V)?);
        }
        if self.genus >= 7 {
            for g in [Gen::C, Gen::D, Gen::E, Gen::W, Gen::X, Gen::S2, Gen::S3] {
                map.insert(g, self.generator(g)?);
            }
        }
        Ok(map)
    }
}
