//! Combinatorial model of the nonorientable surface `N_{g,n}` and its
//! canonical curve family.
//!
//! The surface is a sphere with `g` crosscaps in a row and `n` holes. For a
//! nonempty index set `I` the canonical curve passes once through each
//! crosscap listed in `I`; it is two-sided exactly when `|I|` is even. The
//! mod-2 intersection form is diagonal in the crosscap basis, so the
//! algebraic Z/2 pairing of two canonical curves is `|I ∩ J| mod 2`.
//! Geometric disjointness beyond that necessary condition is a curated
//! fixture table, not an algorithm; `unknown` is a legal answer.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::word::Gen;
use crate::{Error, Result};

/// Largest supported genus; homology rows are packed into `u64` bitmasks.
pub const MAX_GENUS: usize = 64;

/// Surface parameters: `genus` crosscaps, `boundary` holes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub genus: usize,
    pub boundary: usize,
}

impl SurfaceSpec {
    pub fn new(genus: usize, boundary: usize) -> Result<Self> {
        if genus < 2 {
            return Err(Error::UnsupportedGenus(format!(
                "genus {genus} < 2: the surface model needs at least two crosscaps"
            )));
        }
        if genus > MAX_GENUS {
            return Err(Error::UnsupportedGenus(format!(
                "genus {genus} exceeds the supported maximum {MAX_GENUS}"
            )));
        }
        Ok(SurfaceSpec { genus, boundary })
    }
}

/// An oriented canonical curve, given by the crosscaps it passes through.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CurveSymbol {
    indices: Vec<usize>,
    orientation: i8,
}

impl CurveSymbol {
    /// Build a curve symbol from 1-based crosscap indices. The set must be
    /// nonempty and duplicate-free; it is stored sorted.
    pub fn new(indices: impl IntoIterator<Item = usize>, orientation: i8) -> Result<Self> {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        if v.is_empty() {
            return Err(Error::InvalidCurve("empty index set".into()));
        }
        if v[0] == 0 {
            return Err(Error::InvalidCurve("crosscap indices are 1-based".into()));
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCurve(format!("repeated index in {v:?}")));
        }
        if *v.last().unwrap() > MAX_GENUS {
            return Err(Error::InvalidCurve(format!(
                "index {} exceeds the supported maximum genus {MAX_GENUS}",
                v.last().unwrap()
            )));
        }
        if orientation != 1 && orientation != -1 {
            return Err(Error::InvalidCurve("orientation must be +1 or -1".into()));
        }
        Ok(CurveSymbol { indices: v, orientation })
    }

    pub fn positive(indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        CurveSymbol::new(indices, 1)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    /// The same curve with reversed orientation.
    pub fn reversed(&self) -> CurveSymbol {
        CurveSymbol { indices: self.indices.clone(), orientation: -self.orientation }
    }

    /// Forget orientation (normalize to +1); fixtures and pairings are
    /// orientation-blind.
    pub fn unoriented(&self) -> CurveSymbol {
        CurveSymbol { indices: self.indices.clone(), orientation: 1 }
    }

    /// Two-sidedness is a pure function of the parity of `|I|`.
    pub fn is_two_sided(&self) -> bool {
        self.indices.len().is_multiple_of(2)
    }

    pub fn validate_for_genus(&self, genus: usize) -> Result<()> {
        let max = *self.indices.last().unwrap();
        if max > genus {
            return Err(Error::InvalidCurve(format!(
                "curve {self} uses crosscap {max} but the genus is {genus}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for CurveSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")?;
        if self.orientation == -1 {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// Checked form of the two-sidedness rule.
pub fn is_two_sided(indices: &[usize], genus: usize) -> Result<bool> {
    let c = CurveSymbol::positive(indices.iter().copied())?;
    c.validate_for_genus(genus)?;
    Ok(c.is_two_sided())
}

/// Algebraic Z/2 intersection number of two canonical curves: `|I ∩ J| mod 2`.
/// The intersection form is diagonal in the crosscap basis.
pub fn mod2_pairing(a: &CurveSymbol, b: &CurveSymbol) -> u8 {
    let mut count = 0usize;
    let (mut i, mut j) = (0usize, 0usize);
    let (ia, ib) = (a.indices(), b.indices());
    while i < ia.len() && j < ib.len() {
        match ia[i].cmp(&ib[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    (count % 2) as u8
}

/// Checked pairing on raw index sets.
pub fn mod2_pairing_checked(a: &[usize], b: &[usize], genus: usize) -> Result<u8> {
    let ca = CurveSymbol::positive(a.iter().copied())?;
    let cb = CurveSymbol::positive(b.iter().copied())?;
    ca.validate_for_genus(genus)?;
    cb.validate_for_genus(genus)?;
    Ok(mod2_pairing(&ca, &cb))
}

/// Names of the distinguished curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveName {
    Mu(u8),
    Alpha(u8),
    Beta,
    Gamma,
    Delta,
    Epsilon,
}

impl fmt::Display for CurveName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveName::Mu(i) => write!(f, "mu{i}"),
            CurveName::Alpha(i) => write!(f, "alpha{i}"),
            CurveName::Beta => write!(f, "beta"),
            CurveName::Gamma => write!(f, "gamma"),
            CurveName::Delta => write!(f, "delta"),
            CurveName::Epsilon => write!(f, "epsilon"),
        }
    }
}

impl CurveName {
    pub fn parse(s: &str) -> Result<CurveName> {
        let bad = || Error::Parse(format!("unknown curve name `{s}`"));
        match s {
            "beta" => return Ok(CurveName::Beta),
            "gamma" => return Ok(CurveName::Gamma),
            "delta" => return Ok(CurveName::Delta),
            "epsilon" => return Ok(CurveName::Epsilon),
            _ => {}
        }
        if let Some(idx) = s.strip_prefix("mu") {
            let i: u8 = idx.parse().map_err(|_| bad())?;
            if i == 0 {
                return Err(bad());
            }
            return Ok(CurveName::Mu(i));
        }
        if let Some(idx) = s.strip_prefix("alpha") {
            let i: u8 = idx.parse().map_err(|_| bad())?;
            if i == 0 {
                return Err(bad());
            }
            return Ok(CurveName::Alpha(i));
        }
        Err(bad())
    }
}

/// Resolve a named curve at genus `g`. The one-indexed family `mu_i` is the
/// core of crosscap `i`; `alpha_i` passes through crosscaps `i, i+1`;
/// `beta` through the first four; `gamma`, `delta`, `epsilon` are the
/// lantern interior/outer curves and need genus at least 7.
pub fn canonical_curve(name: CurveName, genus: usize) -> Result<CurveSymbol> {
    let too_small = |need: usize| {
        Error::UnsupportedGenus(format!("curve {name} needs genus >= {need}, got {genus}"))
    };
    match name {
        CurveName::Mu(i) => {
            if (i as usize) > genus {
                return Err(too_small(i as usize));
            }
            CurveSymbol::positive([i as usize])
        }
        CurveName::Alpha(i) => {
            if (i as usize) + 1 > genus {
                return Err(too_small(i as usize + 1));
            }
            CurveSymbol::positive([i as usize, i as usize + 1])
        }
        CurveName::Beta => {
            if genus < 5 {
                return Err(too_small(5));
            }
            CurveSymbol::positive([1, 2, 3, 4])
        }
        CurveName::Gamma => {
            if genus < 7 {
                return Err(too_small(7));
            }
            CurveSymbol::positive([3, 4, 5, 6])
        }
        CurveName::Delta => {
            if genus < 7 {
                return Err(too_small(7));
            }
            CurveSymbol::positive([1, 2, 5, 6])
        }
        CurveName::Epsilon => {
            if genus < 7 {
                return Err(too_small(7));
            }
            CurveSymbol::positive([1, 2, 3, 4, 5, 6])
        }
    }
}

/// The full named-curve table available at genus `g`.
pub fn canonical_curves(genus: usize) -> Vec<(CurveName, CurveSymbol)> {
    let mut out = Vec::new();
    for i in 1..=genus {
        out.push((CurveName::Mu(i as u8), canonical_curve(CurveName::Mu(i as u8), genus).unwrap()));
    }
    for i in 1..genus {
        out.push((
            CurveName::Alpha(i as u8),
            canonical_curve(CurveName::Alpha(i as u8), genus).unwrap(),
        ));
    }
    for name in [CurveName::Beta, CurveName::Gamma, CurveName::Delta, CurveName::Epsilon] {
        if let Ok(c) = canonical_curve(name, genus) {
            out.push((name, c));
        }
    }
    out
}

/// A Dehn twist symbol `T(direction, twist)^exponent`: the one-sided
/// companion `direction` orients a neighbourhood of the two-sided `twist`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSymbol {
    pub direction_curve: CurveSymbol,
    pub twist_curve: CurveSymbol,
    pub exponent: i64,
}

impl TwistSymbol {
    pub fn new(direction: CurveSymbol, twist: CurveSymbol, exponent: i64) -> Result<Self> {
        if direction.is_two_sided() {
            return Err(Error::InvalidTwist(format!(
                "direction curve {direction} must be one-sided"
            )));
        }
        if !twist.is_two_sided() {
            return Err(Error::InvalidTwist(format!("twist curve {twist} must be two-sided")));
        }
        if exponent == 0 {
            return Err(Error::InvalidTwist("twist exponent must be nonzero".into()));
        }
        if mod2_pairing(&direction, &twist) != 1 {
            return Err(Error::InvalidTwist(format!(
                "direction {direction} and twist {twist} must intersect once; their mod-2 pairing is 0"
            )));
        }
        Ok(TwistSymbol { direction_curve: direction, twist_curve: twist, exponent })
    }

    /// The twist about a canonical two-sided curve, directed by the core of
    /// its last crosscap.
    pub fn canonical(twist: CurveSymbol, exponent: i64) -> Result<Self> {
        let last = *twist.indices().last().unwrap();
        let direction = CurveSymbol::positive([last])?;
        TwistSymbol::new(direction, twist, exponent)
    }

    /// The unique representative with both orientation flags `+1`.
    ///
    /// Reversing both curves fixes the twist; reversing exactly one inverts
    /// it. Idempotent, and the twist curve's homology class is untouched.
    pub fn canonicalize(&self) -> TwistSymbol {
        let flips = (self.direction_curve.orientation() == -1) as u32
            + (self.twist_curve.orientation() == -1) as u32;
        let exponent = if flips == 1 { -self.exponent } else { self.exponent };
        TwistSymbol {
            direction_curve: self.direction_curve.unoriented(),
            twist_curve: self.twist_curve.unoriented(),
            exponent,
        }
    }
}

/// A crosscap transposition symbol `U(direction, twist)`, supported on a
/// one-holed Klein bottle around the union of its two defining curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranspositionSymbol {
    pub direction_curve: CurveSymbol,
    pub twist_curve: CurveSymbol,
    /// Crosscaps met by the union of the defining curves.
    pub support: Vec<usize>,
}

impl TranspositionSymbol {
    pub fn new(direction: CurveSymbol, twist: CurveSymbol) -> Result<Self> {
        if direction.is_two_sided() {
            return Err(Error::UnsupportedSpec(format!(
                "direction curve {direction} must be one-sided"
            )));
        }
        if !twist.is_two_sided() {
            return Err(Error::UnsupportedSpec(format!("twist curve {twist} must be two-sided")));
        }
        let mut support: Vec<usize> =
            direction.indices().iter().chain(twist.indices()).copied().collect();
        support.sort_unstable();
        support.dedup();
        Ok(TranspositionSymbol { direction_curve: direction, twist_curve: twist, support })
    }

    /// The inverse transposition: both defining curves reversed.
    pub fn inverse(&self) -> TranspositionSymbol {
        TranspositionSymbol {
            direction_curve: self.direction_curve.reversed(),
            twist_curve: self.twist_curve.reversed(),
            support: self.support.clone(),
        }
    }

    /// Normalize to both orientation flags `+1`, returning the exponent sign
    /// picked up. Only the double flip is an identity of the symbol; a
    /// single flip does not name a transposition.
    pub fn canonical_form(&self) -> Result<(TranspositionSymbol, i8)> {
        let d = self.direction_curve.orientation();
        let t = self.twist_curve.orientation();
        match (d, t) {
            (1, 1) => Ok((self.clone(), 1)),
            (-1, -1) => Ok((
                TranspositionSymbol {
                    direction_curve: self.direction_curve.unoriented(),
                    twist_curve: self.twist_curve.unoriented(),
                    support: self.support.clone(),
                },
                -1,
            )),
            _ => Err(Error::UnsupportedSpec(
                "a single orientation flip does not name a transposition; only the double flip \
                 inverts the symbol"
                    .into(),
            )),
        }
    }
}

/// Whether the complement of the supporting Klein bottle is nonorientable.
///
/// Valid exactly for canonical transposition specs, whose support absorbs
/// all listed crosscaps: the direction curve is a single crosscap core lying
/// on the twist curve. For those, the complement keeps the `g - |support|`
/// remaining crosscaps, so it is nonorientable exactly when any remain.
pub fn complement_is_nonorientable(t: &TranspositionSymbol, genus: usize) -> Result<bool> {
    let canonical = t.direction_curve.indices().len() == 1
        && t.direction_curve.indices().iter().all(|i| t.twist_curve.indices().contains(i))
        && t.support == t.twist_curve.indices();
    if !canonical {
        return Err(Error::UnsupportedSpec(format!(
            "no complement-orientability rule for the non-canonical spec U({}, {})",
            t.direction_curve, t.twist_curve
        )));
    }
    t.twist_curve.validate_for_genus(genus)?;
    Ok(genus > t.support.len())
}

/// The canonical transposition symbol named by a word letter (`u_i`, `v`,
/// or the macro `w`).
pub fn canonical_transposition(gen: Gen, genus: usize) -> Result<TranspositionSymbol> {
    match gen {
        Gen::U(i) => {
            let alpha = canonical_curve(CurveName::Alpha(i), genus)?;
            let mu = canonical_curve(CurveName::Mu(i + 1), genus)?;
            TranspositionSymbol::new(mu, alpha)
        }
        Gen::V => {
            let beta = canonical_curve(CurveName::Beta, genus)?;
            let mu = canonical_curve(CurveName::Mu(4), genus)?;
            TranspositionSymbol::new(mu, beta)
        }
        Gen::W => {
            let gamma = canonical_curve(CurveName::Gamma, genus)?;
            let mu = canonical_curve(CurveName::Mu(6), genus)?;
            TranspositionSymbol::new(mu, gamma)
        }
        other => Err(Error::UnknownSymbol(format!("`{other}` is not a transposition letter"))),
    }
}

/// The canonical twist symbol named by a word letter (`a_i`, `b`, `c`, `d`,
/// `e`).
pub fn canonical_twist(gen: Gen, genus: usize) -> Result<TwistSymbol> {
    let curve = match gen {
        Gen::A(i) => canonical_curve(CurveName::Alpha(i), genus)?,
        Gen::B => canonical_curve(CurveName::Beta, genus)?,
        Gen::C => canonical_curve(CurveName::Gamma, genus)?,
        Gen::D => canonical_curve(CurveName::Delta, genus)?,
        Gen::E => canonical_curve(CurveName::Epsilon, genus)?,
        other => return Err(Error::UnknownSymbol(format!("`{other}` is not a twist letter"))),
    };
    TwistSymbol::canonical(curve, 1)
}

/// Outcome of a disjointness query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Disjointness {
    Disjoint,
    Intersecting,
    Unknown,
}

impl fmt::Display for Disjointness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Disjointness::Disjoint => write!(f, "disjoint"),
            Disjointness::Intersecting => write!(f, "intersecting"),
            Disjointness::Unknown => write!(f, "unknown"),
        }
    }
}

/// One curated geometric fact about a pair of canonical curves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointnessFixture {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub status: Disjointness,
    /// Statement of the geometric fact backing the entry.
    pub anchor: String,
    /// Assumption-group label under which consumers report this fixture.
    pub tag: String,
}

fn pair_key(a: &[usize], b: &[usize]) -> (Vec<usize>, Vec<usize>) {
    if a <= b {
        (a.to_vec(), b.to_vec())
    } else {
        (b.to_vec(), a.to_vec())
    }
}

/// The curated disjointness table. Closed under swapping the pair and
/// forgetting orientation; `disjoint` entries must have mod-2 pairing zero.
#[derive(Debug, Clone, Default)]
pub struct FixtureTable {
    entries: BTreeMap<(Vec<usize>, Vec<usize>), DisjointnessFixture>,
}

impl FixtureTable {
    pub fn empty() -> Self {
        FixtureTable::default()
    }

    pub fn insert(&mut self, fixture: DisjointnessFixture) -> Result<()> {
        let left = CurveSymbol::positive(fixture.left.iter().copied())?;
        let right = CurveSymbol::positive(fixture.right.iter().copied())?;
        if fixture.status == Disjointness::Disjoint && mod2_pairing(&left, &right) != 0 {
            return Err(Error::InvalidFixture(format!(
                "pair ({left}, {right}) has odd mod-2 pairing and cannot be disjoint"
            )));
        }
        if fixture.status == Disjointness::Unknown {
            return Err(Error::InvalidFixture("fixtures must be decisive".into()));
        }
        let key = pair_key(left.indices(), right.indices());
        self.entries.entry(key).or_insert(fixture);
        Ok(())
    }

    pub fn remove(&mut self, a: &[usize], b: &[usize]) -> Option<DisjointnessFixture> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        self.entries.remove(&pair_key(&a, &b))
    }

    pub fn entries(&self) -> impl Iterator<Item = &DisjointnessFixture> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Fixture entry recorded for a pair, if any (orientation-blind,
    /// symmetric).
    pub fn lookup(&self, a: &CurveSymbol, b: &CurveSymbol) -> Option<&DisjointnessFixture> {
        self.entries.get(&pair_key(a.indices(), b.indices()))
    }

    /// Disjointness of two curves: the mod-2 pairing forces `intersecting`
    /// when odd; otherwise the fixture table decides, or `unknown`.
    pub fn disjointness(&self, a: &CurveSymbol, b: &CurveSymbol) -> Disjointness {
        if mod2_pairing(a, b) == 1 {
            return Disjointness::Intersecting;
        }
        match self.lookup(a, b) {
            Some(f) => f.status,
            None => Disjointness::Unknown,
        }
    }

    /// The built-in table at genus `g`: the disjointness facts behind the
    /// commutations the certificate builders use, plus the lantern
    /// configuration. Entries touching crosscaps above `g` are dropped.
    pub fn builtin(genus: usize) -> FixtureTable {
        let mut table = FixtureTable::empty();
        let mut add = |left: &[usize], right: &[usize], tag: &str, anchor: &str| {
            let max = left.iter().chain(right).copied().max().unwrap_or(0);
            if max > genus {
                return;
            }
            table
                .insert(DisjointnessFixture {
                    left: left.to_vec(),
                    right: right.to_vec(),
                    status: Disjointness::Disjoint,
                    anchor: anchor.to_string(),
                    tag: tag.to_string(),
                })
                .expect("built-in fixture must be consistent");
        };

        let a3 = [3usize, 4];
        let a2 = [2usize, 3];
        add(&a3, &[2], "commute(a3,u1)", "alpha3 misses mu2 and alpha1, the support of u1");
        add(&a3, &[1, 2], "commute(a3,u1)", "alpha3 misses mu2 and alpha1, the support of u1");
        add(&a3, &[6], "commute(a3,u5)", "alpha3 misses mu6 and alpha5, the support of u5");
        add(&a3, &[5, 6], "commute(a3,u5)", "alpha3 misses mu6 and alpha5, the support of u5");
        add(&a3, &[7], "commute(a3,u6)", "alpha3 misses mu7 and alpha6, the support of u6");
        add(&a3, &[6, 7], "commute(a3,u6)", "alpha3 misses mu7 and alpha6, the support of u6");
        add(&a2, &[5], "commute(a2,u4)", "alpha2 misses mu5 and alpha4, the support of u4");
        add(&a2, &[4, 5], "commute(a2,u4)", "alpha2 misses mu5 and alpha4, the support of u4");
        add(&[1, 2, 3, 4], &a2, "disjoint(beta,alpha2)", "beta is disjoint from alpha2");
        add(&[4], &a2, "disjoint(mu4,alpha2)", "mu4 is disjoint from alpha2");

        // Lantern configuration: alpha1, alpha3, alpha5, epsilon bound a
        // four-holed sphere whose interior holds beta, gamma, delta.
        let lantern_anchor =
            "alpha1, alpha3, alpha5 and epsilon bound a four-holed sphere containing beta, gamma \
             and delta";
        let boundary: [&[usize]; 4] = [&[1, 2], &[3, 4], &[5, 6], &[1, 2, 3, 4, 5, 6]];
        let interior: [&[usize]; 3] = [&[1, 2, 3, 4], &[3, 4, 5, 6], &[1, 2, 5, 6]];
        for i in 0..boundary.len() {
            for j in (i + 1)..boundary.len() {
                add(boundary[i], boundary[j], "lantern-config", lantern_anchor);
            }
        }
        for b in boundary {
            for int in interior {
                add(b, int, "lantern-config", lantern_anchor);
            }
        }
        table
    }

    /// Parse the line-oriented fixture format:
    /// `I | J | disjoint|intersecting | anchor-string`, indices
    /// comma-separated. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<FixtureTable> {
        let mut table = FixtureTable::empty();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.splitn(4, '|').map(str::trim).collect();
            if parts.len() != 4 {
                return Err(Error::InvalidFixture(format!(
                    "line {}: expected `I | J | status | anchor`",
                    lineno + 1
                )));
            }
            let parse_set = |s: &str| -> Result<Vec<usize>> {
                s.split(',')
                    .map(|t| {
                        t.trim().parse::<usize>().map_err(|_| {
                            Error::InvalidFixture(format!("line {}: bad index `{t}`", lineno + 1))
                        })
                    })
                    .collect()
            };
            let left = parse_set(parts[0])?;
            let right = parse_set(parts[1])?;
            let status = match parts[2] {
                "disjoint" => Disjointness::Disjoint,
                "intersecting" => Disjointness::Intersecting,
                other => {
                    return Err(Error::InvalidFixture(format!(
                        "line {}: unknown status `{other}`",
                        lineno + 1
                    )))
                }
            };
            let tag = format!(
                "fixture({},{})",
                CurveSymbol::positive(left.iter().copied())?,
                CurveSymbol::positive(right.iter().copied())?
            );
            table.insert(DisjointnessFixture {
                left,
                right,
                status,
                anchor: parts[3].to_string(),
                tag,
            })?;
        }
        Ok(table)
    }

    /// Serialize in the line-oriented fixture format.
    pub fn to_file_format(&self) -> String {
        let mut out = String::new();
        for f in self.entries.values() {
            let join = |v: &[usize]| v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
            out.push_str(&format!(
                "{} | {} | {} | {}\n",
                join(&f.left),
                join(&f.right),
                f.status,
                f.anchor
            ));
        }
        out
    }
}
