//! Replayable certificates.
//!
//! A certificate asserts that its `expression`, a word over a declared
//! alphabet, equals its `target` in the mapping class group, and carries a
//! derivation: a list of elementary rewrites, each one either a free
//! insertion/cancellation of an adjacent inverse pair or a positional
//! application of a relation instance named by a [`RelationRef`]. Replay
//! re-resolves every reference against the verifier's own tables, so a
//! certificate cannot smuggle in facts the tables do not support; the exact
//! multiset of consumed assumptions is reported back. Rejection is a value,
//! not an error.

use serde::{Deserialize, Serialize};

use crate::catalog::{Context, Direction, RelationRef};
use crate::mapping::Assumption;
use crate::word::{parse_letter, Letter, Word};
use crate::{Error, Result};

/// Why a step transforms its `before` into its `after`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Relation {
        rule: RelationRef,
        position: usize,
        direction: Direction,
    },
    /// Insert `letter letter^-1` at `position`.
    InsertPair {
        position: usize,
        letter: Letter,
    },
    /// Remove the canceling pair at `position`, `position + 1`.
    CancelPair {
        position: usize,
    },
}

impl Justification {
    fn rule_string(&self) -> String {
        match self {
            Justification::Relation { rule, .. } => rule.to_string(),
            Justification::InsertPair { letter, .. } => format!("free-insert({letter})"),
            Justification::CancelPair { .. } => "free-cancel".to_string(),
        }
    }

    fn position(&self) -> usize {
        match self {
            Justification::Relation { position, .. }
            | Justification::InsertPair { position, .. }
            | Justification::CancelPair { position } => *position,
        }
    }

    fn direction_string(&self) -> String {
        match self {
            Justification::Relation { direction, .. } => direction.to_string(),
            _ => "fwd".to_string(),
        }
    }

    fn from_parts(rule: &str, position: usize, direction: &str) -> Result<Justification> {
        if rule == "free-cancel" {
            return Ok(Justification::CancelPair { position });
        }
        if let Some(inner) = rule.strip_prefix("free-insert(").and_then(|r| r.strip_suffix(')')) {
            return Ok(Justification::InsertPair { position, letter: parse_letter(inner)? });
        }
        Ok(Justification::Relation { rule: rule.parse()?, position, direction: direction.parse()? })
    }

    /// The justification of the reversed step.
    pub fn reversed(&self, before: &Word) -> Justification {
        match self {
            Justification::Relation { rule, position, direction } => Justification::Relation {
                rule: rule.clone(),
                position: *position,
                direction: match direction {
                    Direction::Forward => Direction::Reverse,
                    Direction::Reverse => Direction::Forward,
                },
            },
            Justification::InsertPair { position, .. } => {
                Justification::CancelPair { position: *position }
            }
            Justification::CancelPair { position } => Justification::InsertPair {
                position: *position,
                letter: before.letters()[*position],
            },
        }
    }
}

/// One elementary rewrite with its full before/after words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    pub before: Word,
    pub after: Word,
    pub justification: Justification,
}

#[derive(Serialize, Deserialize)]
struct StepDto {
    before: Word,
    after: Word,
    rule: String,
    position: usize,
    direction: String,
}

impl Serialize for DerivationStep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StepDto {
            before: self.before.clone(),
            after: self.after.clone(),
            rule: self.justification.rule_string(),
            position: self.justification.position(),
            direction: self.justification.direction_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DerivationStep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let dto = StepDto::deserialize(d)?;
        let justification = Justification::from_parts(&dto.rule, dto.position, &dto.direction)
            .map_err(D::Error::custom)?;
        Ok(DerivationStep { before: dto.before, after: dto.after, justification })
    }
}

/// Reverse a derivation: swap endpoints and invert every justification.
pub fn reverse_derivation(steps: &[DerivationStep]) -> Vec<DerivationStep> {
    steps
        .iter()
        .rev()
        .map(|s| DerivationStep {
            before: s.after.clone(),
            after: s.before.clone(),
            justification: s.justification.reversed(&s.before),
        })
        .collect()
}

/// Re-base a derivation inside a fixed prefix and suffix.
pub fn offset_derivation(
    steps: &[DerivationStep],
    prefix: &Word,
    suffix: &Word,
) -> Vec<DerivationStep> {
    steps
        .iter()
        .map(|s| DerivationStep {
            before: Word::join(&[prefix, &s.before, suffix]),
            after: Word::join(&[prefix, &s.after, suffix]),
            justification: match &s.justification {
                Justification::Relation { rule, position, direction } => Justification::Relation {
                    rule: rule.clone(),
                    position: position + prefix.len(),
                    direction: *direction,
                },
                Justification::InsertPair { position, letter } => {
                    Justification::InsertPair { position: position + prefix.len(), letter: *letter }
                }
                Justification::CancelPair { position } => {
                    Justification::CancelPair { position: position + prefix.len() }
                }
            },
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lengths {
    pub expression: usize,
    pub target: usize,
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertMeta {
    pub genus: usize,
    pub boundary: usize,
    pub lengths: Lengths,
}

/// A replayable proof that `expression` equals `target`.
///
/// `expression_base` is the fully macro-expanded form, stored alongside the
/// macro form so the word content survives independently of any macro
/// table; replay re-derives and checks it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: String,
    pub name: String,
    pub target: Word,
    pub alphabet: Vec<String>,
    pub expression: Word,
    pub expression_base: Word,
    pub steps: Vec<DerivationStep>,
    pub assumptions: Vec<Assumption>,
    pub meta: CertMeta,
}

impl Certificate {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        target: Word,
        alphabet: Vec<String>,
        expression: Word,
        steps: Vec<DerivationStep>,
        mut assumptions: Vec<Assumption>,
        genus: usize,
        boundary: usize,
    ) -> Certificate {
        assumptions.sort();
        assumptions.dedup();
        let lengths =
            Lengths { expression: expression.len(), target: target.len(), steps: steps.len() };
        let expression_base = crate::word::MacroTable::standard()
            .expand(&expression)
            .expect("standard macros expand every letter");
        Certificate {
            kind: "certificate".to_string(),
            name: name.into(),
            target,
            alphabet,
            expression,
            expression_base,
            steps,
            assumptions,
            meta: CertMeta { genus, boundary, lengths },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization")
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("certificate JSON: {e}")))
    }
}

/// Verdict of a replay.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Accepted,
    Rejected { step: Option<usize>, reason: String },
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }
}

/// Structured outcome of a verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    #[serde(flatten)]
    pub verdict: Verdict,
    /// Assumptions actually consumed during replay, with anchors.
    pub assumptions: Vec<Assumption>,
    pub lengths: Lengths,
    /// Wall-clock micros; excluded from determinism comparisons.
    pub elapsed_micros: u128,
}

impl VerificationReport {
    /// The report with timing zeroed, for byte-identical comparisons.
    pub fn timeless(&self) -> VerificationReport {
        VerificationReport { elapsed_micros: 0, ..self.clone() }
    }
}

fn rejected(step: Option<usize>, reason: impl Into<String>) -> Verdict {
    Verdict::Rejected { step, reason: reason.into() }
}

/// Replay every step of a certificate against `ctx`. Returns the verdict
/// and the assumptions consumed up to the point of failure.
pub fn check_derivation(ctx: &Context, cert: &Certificate) -> (Verdict, Vec<Assumption>) {
    let mut consumed: Vec<Assumption> = Vec::new();
    let record = |list: &[Assumption], consumed: &mut Vec<Assumption>| {
        for a in list {
            if !consumed.contains(a) {
                consumed.push(a.clone());
            }
        }
    };

    let mut current = cert.expression.clone();
    for (k, step) in cert.steps.iter().enumerate() {
        if step.before != current {
            return (rejected(Some(k), "before-word does not match the running word"), consumed);
        }
        let expected = match &step.justification {
            Justification::Relation { rule, position, direction } => {
                let instance = match ctx.resolve(rule) {
                    Ok(i) => i,
                    Err(e) => {
                        return (rejected(Some(k), format!("unresolvable rule: {e}")), consumed)
                    }
                };
                record(&instance.assumptions, &mut consumed);
                match ctx.apply(&current, &instance, *position, *direction) {
                    Ok(w) => w,
                    Err(e) => return (rejected(Some(k), e.to_string()), consumed),
                }
            }
            Justification::InsertPair { position, letter } => {
                if *position > current.len() {
                    return (rejected(Some(k), "insertion position out of range"), consumed);
                }
                current.splice(*position, 0, &Word::new(vec![*letter, letter.inverse()]))
            }
            Justification::CancelPair { position } => {
                let letters = current.letters();
                if position + 1 >= letters.len()
                    || !letters[*position].cancels(letters[position + 1])
                {
                    return (rejected(Some(k), "no canceling pair at position"), consumed);
                }
                current.splice(*position, 2, &Word::empty())
            }
        };
        if expected != step.after {
            return (
                rejected(Some(k), "after-word does not match the justified rewrite"),
                consumed,
            );
        }
        current = step.after.clone();
    }
    if current != cert.target {
        return (rejected(None, "derivation does not end at the target"), consumed);
    }
    (Verdict::Accepted, consumed)
}

/// Full verification: alphabet constraints, replay, homology shadow, and
/// the declared assumption list.
pub fn verify_certificate(ctx: &Context, cert: &Certificate) -> VerificationReport {
    let start = std::time::Instant::now();
    let lengths = Lengths {
        expression: cert.expression.len(),
        target: cert.target.len(),
        steps: cert.steps.len(),
    };
    let finish = |verdict: Verdict, assumptions: Vec<Assumption>| VerificationReport {
        name: cert.name.clone(),
        verdict,
        assumptions,
        lengths,
        elapsed_micros: start.elapsed().as_micros(),
    };

    // Alphabet constraint on the expression.
    for l in cert.expression.letters() {
        if !cert.alphabet.iter().any(|a| a == &l.gen.to_string()) {
            return finish(
                rejected(
                    None,
                    format!("expression letter `{}` is outside the declared alphabet", l.gen),
                ),
                Vec::new(),
            );
        }
    }

    // The stored base-alphabet form must be the expression's expansion.
    match ctx.macros().expand(&cert.expression) {
        Ok(base) if base == cert.expression_base => {}
        Ok(_) => {
            return finish(
                rejected(None, "stored base-alphabet expression disagrees with the expansion"),
                Vec::new(),
            )
        }
        Err(e) => {
            return finish(rejected(None, format!("macro expansion failed: {e}")), Vec::new())
        }
    }

    let (verdict, mut consumed) = check_derivation(ctx, cert);
    consumed.sort();
    if !verdict.is_accepted() {
        return finish(verdict, consumed);
    }

    // Homology shadow: expression and target must act identically.
    let shadows = (ctx.rep().evaluate(&cert.expression), ctx.rep().evaluate(&cert.target));
    match shadows {
        (Ok(lhs), Ok(rhs)) if lhs == rhs => {}
        (Ok(_), Ok(_)) => {
            return finish(rejected(None, "expression and target differ in homology"), consumed)
        }
        (Err(e), _) | (_, Err(e)) => {
            return finish(rejected(None, format!("homology evaluation failed: {e}")), consumed)
        }
    }

    // Declared assumptions = consumed assumptions plus external axioms.
    for a in &consumed {
        if !cert.assumptions.contains(a) {
            return finish(
                rejected(None, format!("consumed assumption `{}` is not declared", a.tag)),
                consumed,
            );
        }
    }
    for a in &cert.assumptions {
        if !consumed.contains(a) && !a.tag.starts_with("axiom:") {
            return finish(
                rejected(None, format!("declared assumption `{}` was never consumed", a.tag)),
                consumed,
            );
        }
    }
    let mut all = cert.assumptions.clone();
    all.sort();
    finish(Verdict::Accepted, all)
}

/// A certified conjugacy: `conjugator * source * conjugator^-1 = target`,
/// with the derivation materialized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyWitness {
    pub source: Word,
    pub target: Word,
    pub conjugator: Word,
    pub steps: Vec<DerivationStep>,
}

/// One factor of a normal-generation product: a conjugate of the base
/// transposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugateFactor {
    pub conjugator: Word,
    pub exponent: i8,
}

/// Certificate that the target is a product of conjugates of `base`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalGenerationCertificate {
    pub kind: String,
    pub base: Word,
    pub factors: Vec<ConjugateFactor>,
    pub certificate: Certificate,
}

impl NormalGenerationCertificate {
    /// Structural normal form: every factor is literally
    /// `conjugator base^e conjugator^-1` and the factors concatenate to the
    /// expression.
    pub fn factors_match_pattern(&self) -> bool {
        let mut assembled = Word::empty();
        for f in &self.factors {
            let base = Word::new(
                self.base
                    .letters()
                    .iter()
                    .map(|l| Letter::new(l.gen, l.exp * f.exponent))
                    .collect(),
            );
            assembled = Word::join(&[&assembled, &f.conjugator, &base, &f.conjugator.inverse()]);
        }
        assembled == self.certificate.expression
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("certificate JSON: {e}")))
    }
}

/// The generating-set certificate bundle: one certificate per standard
/// generator, plus the bundle-level external axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateBundle {
    pub kind: String,
    pub genus: usize,
    pub boundary: usize,
    pub axioms: Vec<Assumption>,
    pub certificates: Vec<Certificate>,
}

impl CertificateBundle {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundle serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bundle JSON: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{ChainFamily, ChainForm};
    use crate::word::{w, Gen};

    fn ctx() -> Context {
        Context::new(7).unwrap()
    }

    fn step(
        ctx: &Context,
        before: &Word,
        rule: RelationRef,
        position: usize,
        direction: Direction,
    ) -> DerivationStep {
        let instance = ctx.resolve(&rule).unwrap();
        let after = ctx.apply(before, &instance, position, direction).unwrap();
        DerivationStep {
            before: before.clone(),
            after,
            justification: Justification::Relation { rule, position, direction },
        }
    }

    /// The two-stage substitution expressing b over a3.
    fn b_substitution(ctx: &Context) -> Certificate {
        let s1 = step(
            ctx,
            &w("b"),
            RelationRef::Chain { family: ChainFamily::ChainUVB, form: ChainForm::ConjUp(1) },
            0,
            Direction::Forward,
        );
        let s2 = step(
            ctx,
            &s1.after,
            RelationRef::Chain { family: ChainFamily::ChainUA(3), form: ChainForm::ConjUp(1) },
            2,
            Direction::Forward,
        );
        let expression = s2.after.clone();
        assert_eq!(expression, w("u4 v u3 u4 a3 u4^-1 u3^-1 v^-1 u4^-1"));
        let steps = reverse_derivation(&[s1, s2]);
        Certificate::new(
            "b-substitution",
            w("b"),
            vec!["u3", "u4", "v", "a3", "b"].into_iter().map(String::from).collect(),
            expression,
            steps,
            Vec::new(),
            7,
            0,
        )
    }

    #[test]
    fn b_substitution_is_accepted() {
        let ctx = ctx();
        let cert = b_substitution(&ctx);
        let report = verify_certificate(&ctx, &cert);
        assert!(report.verdict.is_accepted(), "{:?}", report.verdict);
        assert!(report.assumptions.is_empty());
    }

    #[test]
    fn corrupted_step_is_rejected_at_its_index() {
        let ctx = ctx();
        let mut cert = b_substitution(&ctx);
        // Corrupt the second step's after-word.
        let mut letters: Vec<Letter> = cert.steps[1].after.letters().to_vec();
        letters[0] = letters[0].inverse();
        cert.steps[1].after = Word::new(letters);
        let report = verify_certificate(&ctx, &cert);
        match report.verdict {
            Verdict::Rejected { step: Some(1), .. } => {}
            other => panic!("expected rejection at step 1, got {other:?}"),
        }
    }

    #[test]
    fn empty_derivation_with_expression_equal_to_target_is_accepted() {
        let ctx = ctx();
        let cert = Certificate::new(
            "trivial-u1",
            w("u1"),
            vec!["u1".to_string()],
            w("u1"),
            Vec::new(),
            Vec::new(),
            7,
            0,
        );
        assert!(verify_certificate(&ctx, &cert).verdict.is_accepted());
    }

    #[test]
    fn wrong_alphabet_is_rejected() {
        let ctx = ctx();
        let mut cert = b_substitution(&ctx);
        cert.alphabet = vec!["u3".to_string(), "u4".to_string()];
        let report = verify_certificate(&ctx, &cert);
        assert!(!report.verdict.is_accepted());
    }

    #[test]
    fn tampered_base_expansion_is_rejected() {
        let ctx = ctx();
        let mut cert = b_substitution(&ctx);
        cert.expression_base = w("u1");
        let report = verify_certificate(&ctx, &cert);
        match report.verdict {
            Verdict::Rejected { step: None, ref reason } => {
                assert!(reason.contains("base-alphabet"), "{reason}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn forged_commute_is_rejected() {
        let ctx = ctx();
        // a3 and u2 do not commute: no fixture exists.
        let before = w("a3 u2");
        let cert = Certificate::new(
            "forged",
            w("u2 a3"),
            vec!["a3", "u2"].into_iter().map(String::from).collect(),
            before.clone(),
            vec![DerivationStep {
                before,
                after: w("u2 a3"),
                justification: Justification::Relation {
                    rule: RelationRef::Commute {
                        p: Letter::pos(Gen::A(3)),
                        q: Letter::pos(Gen::U(2)),
                    },
                    position: 0,
                    direction: Direction::Forward,
                },
            }],
            Vec::new(),
            7,
            0,
        );
        let report = verify_certificate(&ctx, &cert);
        match &report.verdict {
            Verdict::Rejected { step: Some(0), reason } => {
                assert!(reason.contains("unresolvable"), "{reason}");
            }
            other => panic!("expected rejection at step 0, got {other:?}"),
        }
    }

    #[test]
    fn undeclared_consumed_assumption_is_rejected() {
        let ctx = ctx();
        let rule = RelationRef::Commute { p: Letter::pos(Gen::A(3)), q: Letter::pos(Gen::U(1)) };
        let s = step(&ctx, &w("a3 u1"), rule, 0, Direction::Forward);
        let cert = Certificate::new(
            "commute-a3-u1",
            w("u1 a3"),
            vec!["a3", "u1"].into_iter().map(String::from).collect(),
            w("a3 u1"),
            vec![s],
            Vec::new(), // declares nothing although the step consumes a fixture
            7,
            0,
        );
        let report = verify_certificate(&ctx, &cert);
        assert!(!report.verdict.is_accepted());
    }

    #[test]
    fn json_roundtrip_preserves_the_verdict() {
        let ctx = ctx();
        let cert = b_substitution(&ctx);
        let parsed = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(parsed, cert);
        let a = verify_certificate(&ctx, &cert);
        let b = verify_certificate(&ctx, &parsed);
        assert_eq!(a.timeless(), b.timeless());
    }

    #[test]
    fn derivation_reversal_roundtrips() {
        let ctx = ctx();
        let cert = b_substitution(&ctx);
        let back = reverse_derivation(&reverse_derivation(&cert.steps));
        assert_eq!(back, cert.steps);
    }
}
