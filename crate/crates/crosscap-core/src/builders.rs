//! Certificate builders for the three constructive results: the expression
//! of `a1` over ten crosscap transpositions, the explicit transposition
//! generating set, and normal generation by `u1` alone.
//!
//! Builders work forward from the target, recording every elementary
//! rewrite; the stored derivation is the reversal, running from the final
//! expression back to the target. Declared assumptions are not trusted from
//! the builder: each certificate is replayed once and the consumed set is
//! installed from the replay log.

use crate::catalog::{ChainFamily, ChainForm, Context, Direction, RelationRef};
use crate::certificate::{
    check_derivation, offset_derivation, reverse_derivation, Certificate, CertificateBundle,
    ConjugacyWitness, ConjugateFactor, DerivationStep, Justification, NormalGenerationCertificate,
};
use crate::mapping::Assumption;
use crate::surface::{canonical_transposition, complement_is_nonorientable};
use crate::word::{Gen, Letter, Word};
use crate::{Error, Result};

/// Incremental derivation recorder.
pub struct DerivationBuilder<'c> {
    ctx: &'c Context,
    current: Word,
    steps: Vec<DerivationStep>,
}

impl<'c> DerivationBuilder<'c> {
    pub fn new(ctx: &'c Context, start: Word) -> Self {
        DerivationBuilder { ctx, current: start, steps: Vec::new() }
    }

    pub fn word(&self) -> &Word {
        &self.current
    }

    pub fn letter_at(&self, pos: usize) -> Letter {
        self.current.letters()[pos]
    }

    fn push(&mut self, after: Word, justification: Justification) {
        self.steps.push(DerivationStep {
            before: self.current.clone(),
            after: after.clone(),
            justification,
        });
        self.current = after;
    }

    /// Insert the canceling pair `letter letter^-1` at `pos`.
    pub fn insert_pair(&mut self, pos: usize, letter: Letter) {
        let after = self.current.splice(pos, 0, &Word::new(vec![letter, letter.inverse()]));
        self.push(after, Justification::InsertPair { position: pos, letter });
    }

    /// Cancel the adjacent inverse pair at `pos`, `pos + 1`.
    pub fn cancel_pair(&mut self, pos: usize) -> Result<()> {
        let letters = self.current.letters();
        if pos + 1 >= letters.len() || !letters[pos].cancels(letters[pos + 1]) {
            return Err(Error::NoOccurrence(format!(
                "no canceling pair at position {pos} of `{}`",
                self.current
            )));
        }
        let after = self.current.splice(pos, 2, &Word::empty());
        self.push(after, Justification::CancelPair { position: pos });
        Ok(())
    }

    /// Apply a relation reference at a position.
    pub fn apply(&mut self, rule: RelationRef, pos: usize, direction: Direction) -> Result<()> {
        let instance = self.ctx.resolve(&rule)?;
        let after = self.ctx.apply(&self.current, &instance, pos, direction)?;
        self.push(after, Justification::Relation { rule, position: pos, direction });
        Ok(())
    }

    /// Swap the two adjacent letters at `pos` by their commutation instance.
    pub fn swap_adjacent(&mut self, pos: usize) -> Result<()> {
        let p = self.letter_at(pos);
        let q = self.letter_at(pos + 1);
        self.apply(RelationRef::Commute { p, q }, pos, Direction::Forward)
    }

    /// Cancel a block `w w^-1` of half-length `len` starting at `pos`.
    pub fn cancel_word_pair(&mut self, pos: usize, len: usize) -> Result<()> {
        for k in (1..=len).rev() {
            self.cancel_pair(pos + k - 1)?;
        }
        Ok(())
    }

    pub fn into_parts(self) -> (Word, Vec<DerivationStep>) {
        (self.current, self.steps)
    }
}

fn chain_up(family: ChainFamily, exp: i8) -> RelationRef {
    RelationRef::Chain { family, form: ChainForm::ConjUp(exp) }
}

fn chain_down(family: ChainFamily, exp: i8) -> RelationRef {
    RelationRef::Chain { family, form: ChainForm::ConjDown(exp) }
}

/// Expand one window `a3 · l · a3^-1` at `pos` into a word over
/// `{u_i, v, s2, s3}`; returns the length of the replacement.
fn expand_single_a3_sandwich(b: &mut DerivationBuilder<'_>, pos: usize) -> Result<usize> {
    debug_assert_eq!(b.letter_at(pos), Letter::pos(Gen::A(3)));
    debug_assert_eq!(b.letter_at(pos + 2), Letter::neg(Gen::A(3)));
    let inner = b.letter_at(pos + 1);
    match inner.gen {
        Gen::U(2) => {
            b.apply(
                RelationRef::MacroDef { letter: Letter::new(Gen::S2, inner.exp) },
                pos,
                Direction::Reverse,
            )?;
            Ok(1)
        }
        Gen::U(3) => {
            b.apply(
                RelationRef::MacroDef { letter: Letter::new(Gen::S3, inner.exp) },
                pos,
                Direction::Reverse,
            )?;
            Ok(1)
        }
        Gen::U(1) | Gen::U(5) | Gen::U(6) => {
            // a3 commutes past, then the a3 pair cancels.
            b.apply(
                RelationRef::Commute { p: Letter::pos(Gen::A(3)), q: inner },
                pos,
                Direction::Forward,
            )?;
            b.cancel_pair(pos + 1)?;
            Ok(1)
        }
        Gen::U(4) | Gen::V => {
            // Route through a2, which commutes with the inner letter, and
            // express a2 over a3 by the chain relation:
            //   a3 m a3^-1 = a3 (u2 u3)^-1 a3^-1 (u2 u3) m (u2 u3)^-1 a3 (u2 u3) a3^-1.
            b.insert_pair(pos + 1, Letter::neg(Gen::A(2)));
            b.apply(
                RelationRef::Commute { p: Letter::pos(Gen::A(2)), q: inner },
                pos + 2,
                Direction::Forward,
            )?;
            b.apply(chain_down(ChainFamily::ChainUA(2), -1), pos + 1, Direction::Forward)?;
            b.apply(chain_down(ChainFamily::ChainUA(2), 1), pos + 7, Direction::Forward)?;
            // Collapse the two a3-conjugated pairs into s-letters.
            b.insert_pair(pos + 2, Letter::neg(Gen::A(3)));
            b.apply(
                RelationRef::MacroDef { letter: Letter::neg(Gen::S3) },
                pos,
                Direction::Reverse,
            )?;
            b.apply(
                RelationRef::MacroDef { letter: Letter::neg(Gen::S2) },
                pos + 1,
                Direction::Reverse,
            )?;
            b.insert_pair(pos + 9, Letter::neg(Gen::A(3)));
            b.apply(
                RelationRef::MacroDef { letter: Letter::pos(Gen::S2) },
                pos + 7,
                Direction::Reverse,
            )?;
            b.apply(
                RelationRef::MacroDef { letter: Letter::pos(Gen::S3) },
                pos + 8,
                Direction::Reverse,
            )?;
            Ok(9)
        }
        other => Err(Error::UnsupportedLetter(format!("no a3-conjugate expansion for `{other}`"))),
    }
}

/// Unroll `a3 · W · a3^-1` (window of `len` supported letters at
/// `a3_pos + 1`) into per-letter sandwiches and expand each. Returns the
/// total replacement length.
fn unroll_a3_window(b: &mut DerivationBuilder<'_>, a3_pos: usize, len: usize) -> Result<usize> {
    debug_assert!(len >= 1);
    for k in 1..len {
        b.insert_pair(a3_pos + 3 * k - 1, Letter::neg(Gen::A(3)));
    }
    let mut total = 0;
    for k in (1..=len).rev() {
        total += expand_single_a3_sandwich(b, a3_pos + 3 * (k - 1))?;
    }
    Ok(total)
}

/// Rewrite the two letters `b a3^-1` at `pos` into a word over
/// `{u_i, v, s2, s3}`; returns the replacement length.
fn expand_b_a3_commutator(b: &mut DerivationBuilder<'_>, pos: usize) -> Result<usize> {
    debug_assert_eq!(b.letter_at(pos), Letter::pos(Gen::B));
    debug_assert_eq!(b.letter_at(pos + 1), Letter::neg(Gen::A(3)));
    // b = (u4 v) a4 (u4 v)^-1, then a4 = (u3 u4) a3 (u3 u4)^-1.
    b.apply(chain_up(ChainFamily::ChainUVB, 1), pos, Direction::Forward)?;
    b.apply(chain_up(ChainFamily::ChainUA(3), 1), pos + 2, Direction::Forward)?;
    // Now (u4 v u3 u4) a3 (u4 v u3 u4)^-1 a3^-1: one a3-window of length 4.
    let produced = unroll_a3_window(b, pos + 4, 4)?;
    Ok(4 + produced)
}

fn lemma_alphabet() -> Vec<String> {
    let mut a: Vec<String> = (1..=6).map(|i| format!("u{i}")).collect();
    a.extend(["v", "s2", "s3"].map(String::from));
    a
}

fn theorem_alphabet(genus: usize) -> Vec<String> {
    let mut a: Vec<String> = (1..genus).map(|i| format!("u{i}")).collect();
    a.extend(["v", "s2", "s3"].map(String::from));
    a
}

/// Replay a freshly built certificate and install the consumed assumptions
/// (plus any external axioms) as the declared list.
fn seal(ctx: &Context, mut cert: Certificate, axioms: Vec<Assumption>) -> Result<Certificate> {
    let (verdict, mut consumed) = check_derivation(ctx, &cert);
    if !verdict.is_accepted() {
        return Err(Error::InvalidCertificate(format!(
            "builder produced a non-replayable derivation for `{}`: {verdict:?}",
            cert.name
        )));
    }
    consumed.extend(axioms);
    consumed.sort();
    consumed.dedup();
    cert.assumptions = consumed;
    Ok(cert)
}

/// The expansion of a conjugate `a3 · l · a3^-1` over the transposition
/// alphabet, together with the derivation certifying it.
pub fn a3_conjugate_expansion(
    ctx: &Context,
    letter: Letter,
) -> Result<(Word, Vec<DerivationStep>)> {
    match letter.gen {
        Gen::U(i) if (1..=6).contains(&i) => {}
        Gen::V => {}
        other => {
            return Err(Error::UnsupportedLetter(format!(
                "a3-conjugate expansion supports u1..u6 and v, not `{other}`"
            )))
        }
    }
    let start = Word::new(vec![Letter::pos(Gen::A(3)), letter, Letter::neg(Gen::A(3))]);
    let mut b = DerivationBuilder::new(ctx, start);
    expand_single_a3_sandwich(&mut b, 0)?;
    let (word, steps) = b.into_parts();
    Ok((word, steps))
}

/// Build the certificate expressing `a1` over
/// `{u1..u6, v, s2 = a3 u2 a3^-1, s3 = a3 u3 a3^-1}`.
///
/// The derivation assembles the three lantern factors `b a3^-1`,
/// `c a5^-1 = x (b a3^-1) x^-1` and `d e^-1`, then normalizes every
/// a3-sandwich through the conjugate-letter expansion. The construction
/// never touches crosscaps above 7, so the words are identical at every
/// genus from 7 up.
pub fn build_lemma_a1(ctx: &Context, boundary: usize) -> Result<Certificate> {
    if ctx.genus() < 7 {
        return Err(Error::UnsupportedGenus(format!(
            "the a1 certificate needs genus >= 7, got {}",
            ctx.genus()
        )));
    }
    let x_word = ctx.macros().base_expansion(Gen::X).expect("x expansion").clone();
    let mut b = DerivationBuilder::new(ctx, Word::parse("a1")?);

    // Lantern: a1 = (b c d)(e^-1 a5^-1 a3^-1).
    b.insert_pair(1, Letter::pos(Gen::A(3)));
    b.insert_pair(2, Letter::pos(Gen::A(5)));
    b.insert_pair(3, Letter::pos(Gen::E));
    b.apply(RelationRef::Lantern, 0, Direction::Forward)?;
    // Regroup into (b a3^-1)(c a5^-1)(d e^-1) by boundary-curve commutations.
    for pos in [4, 3, 2, 1, 4, 3] {
        b.swap_adjacent(pos)?;
    }

    // First factor: b a3^-1.
    let f1_len = expand_b_a3_commutator(&mut b, 0)?;

    // Second factor: c a5^-1 = x (b a3^-1) x^-1.
    b.apply(
        RelationRef::Transport { f: x_word.clone(), letter: Letter::pos(Gen::B) },
        f1_len,
        Direction::Reverse,
    )?;
    b.apply(
        RelationRef::Transport { f: x_word.clone(), letter: Letter::neg(Gen::A(3)) },
        f1_len + 17,
        Direction::Reverse,
    )?;
    b.cancel_word_pair(f1_len + 9, 8)?;
    let inner = expand_b_a3_commutator(&mut b, f1_len + 8)?;
    let f2_len = 8 + inner + 8;

    // Third factor: d e^-1 = d q d^-1 q^-1 with q = u6 w u5^-1 u6^-1.
    let p = f1_len + f2_len;
    debug_assert_eq!(b.letter_at(p), Letter::pos(Gen::D));
    b.apply(
        RelationRef::Transport { f: Word::parse("u6 w u5^-1 u6^-1")?, letter: Letter::neg(Gen::D) },
        p + 1,
        Direction::Reverse,
    )?;
    // Expand both occurrences of the macro transposition w (later first).
    b.apply(
        RelationRef::Transport { f: x_word.clone(), letter: Letter::neg(Gen::V) },
        p + 8,
        Direction::Reverse,
    )?;
    b.apply(
        RelationRef::Transport { f: x_word.clone(), letter: Letter::pos(Gen::V) },
        p + 2,
        Direction::Reverse,
    )?;
    // Expand the two copies of d by its definitional word and drop the
    // cancelable u4 pairs, leaving Q a3^± Q^-1 with Q = u4^-1 u3^-1 u5^-1 v u3 u4.
    let d_inv_pos = p + 21;
    b.apply(RelationRef::MacroDef { letter: Letter::neg(Gen::D) }, d_inv_pos, Direction::Forward)?;
    b.cancel_pair(d_inv_pos + 12)?;
    b.cancel_pair(d_inv_pos + 3)?;
    b.apply(RelationRef::MacroDef { letter: Letter::pos(Gen::D) }, p, Direction::Forward)?;
    b.cancel_pair(p + 12)?;
    b.cancel_pair(p + 3)?;
    // The middle window: a3 at p+6, then Q^-1 q Q (32 letters), then a3^-1.
    unroll_a3_window(&mut b, p + 6, 32)?;

    let (expression, forward) = b.into_parts();
    expression.validate_for_genus(ctx.genus())?;
    for l in expression.letters() {
        debug_assert!(
            matches!(l.gen, Gen::U(1..=6) | Gen::V | Gen::S2 | Gen::S3),
            "letter {} escaped the lemma alphabet",
            l.gen
        );
    }
    let steps = reverse_derivation(&forward);
    let cert = Certificate::new(
        "lemma-a1",
        Word::parse("a1")?,
        lemma_alphabet(),
        expression,
        steps,
        Vec::new(),
        ctx.genus(),
        boundary,
    );
    seal(ctx, cert, Vec::new())
}

/// External axiom: the standard twist-and-transposition generating set.
pub fn generation_axiom() -> Assumption {
    Assumption::new(
        "axiom:twist-transposition-generation",
        "for genus >= 7 with at most one boundary component, the mapping class group is \
         generated by a1..a(g-1), b and u1..u(g-1)",
    )
}

/// External axiom reducing normal generation to the pair {a1, u1}.
pub fn normal_generation_axiom() -> Assumption {
    Assumption::new(
        "axiom:a1-u1-normal-generation",
        "for genus >= 5 the mapping class group is normally generated by {a1, u1}",
    )
}

/// Build the generating-set certificate bundle: every standard generator
/// expressed over `{u1..u(g-1), v, s2, s3}`.
pub fn build_theorem_main2(ctx: &Context, boundary: usize) -> Result<CertificateBundle> {
    if ctx.genus() < 7 {
        return Err(Error::UnsupportedGenus(format!(
            "the generating-set bundle needs genus >= 7, got {}",
            ctx.genus()
        )));
    }
    if boundary > 1 {
        return Err(Error::UnsupportedBoundary(format!(
            "the generating-set result covers 0 or 1 boundary components, got {boundary}"
        )));
    }
    let genus = ctx.genus();
    let alphabet = theorem_alphabet(genus);

    // a1 from the lemma, then each a_{k+1} = (u_k u_{k+1}) a_k (u_k u_{k+1})^-1.
    let lemma = build_lemma_a1(ctx, boundary)?;
    let mut twist_certs: Vec<Certificate> = Vec::new();
    let a1 = Certificate::new(
        "a1",
        lemma.target.clone(),
        alphabet.clone(),
        lemma.expression.clone(),
        lemma.steps.clone(),
        lemma.assumptions.clone(),
        genus,
        boundary,
    );
    twist_certs.push(a1);
    for k in 1..genus - 1 {
        let prev = twist_certs.last().unwrap();
        let cert = conjugated_cert(
            ctx,
            prev,
            &format!("a{}", k + 1),
            Word::parse(&format!("u{k} u{}", k + 1))?,
            chain_up(ChainFamily::ChainUA(k as u8), 1),
            &alphabet,
            boundary,
        )?;
        twist_certs.push(cert);
    }
    // b = (u4 v) a4 (u4 v)^-1.
    let a4 = &twist_certs[3];
    let b_cert = conjugated_cert(
        ctx,
        a4,
        "b",
        Word::parse("u4 v")?,
        chain_up(ChainFamily::ChainUVB, 1),
        &alphabet,
        boundary,
    )?;

    let mut certificates = twist_certs;
    certificates.push(b_cert);
    for i in 1..genus {
        certificates.push(Certificate::new(
            format!("u{i}"),
            Word::parse(&format!("u{i}"))?,
            alphabet.clone(),
            Word::parse(&format!("u{i}"))?,
            Vec::new(),
            Vec::new(),
            genus,
            boundary,
        ));
    }

    Ok(CertificateBundle {
        kind: "bundle".to_string(),
        genus,
        boundary,
        axioms: vec![generation_axiom()],
        certificates,
    })
}

/// Wrap an existing certificate in a conjugator and collapse the outer
/// layer with one chain relation.
fn conjugated_cert(
    ctx: &Context,
    inner: &Certificate,
    name: &str,
    conjugator: Word,
    closing_rule: RelationRef,
    alphabet: &[String],
    boundary: usize,
) -> Result<Certificate> {
    let suffix = conjugator.inverse();
    let expression = Word::join(&[&conjugator, &inner.expression, &suffix]);
    let mut steps = offset_derivation(&inner.steps, &conjugator, &suffix);
    let sandwich = Word::join(&[&conjugator, &inner.target, &suffix]);
    let instance = ctx.resolve(&closing_rule)?;
    let after = ctx.apply(&sandwich, &instance, 0, Direction::Reverse)?;
    steps.push(DerivationStep {
        before: sandwich,
        after: after.clone(),
        justification: Justification::Relation {
            rule: closing_rule,
            position: 0,
            direction: Direction::Reverse,
        },
    });
    let cert = Certificate::new(
        name,
        after,
        alphabet.to_vec(),
        expression,
        steps,
        Vec::new(),
        ctx.genus(),
        boundary,
    );
    seal(ctx, cert, Vec::new())
}

/// Orientability class of the complement for a witness endpoint.
fn complement_class(ctx: &Context, gen: Gen) -> Result<bool> {
    let reference = match gen {
        Gen::S2 => Gen::U(2),
        Gen::S3 => Gen::U(3),
        other => other,
    };
    let t = canonical_transposition(reference, ctx.genus())?;
    complement_is_nonorientable(&t, ctx.genus())
}

/// Certify that `target` is conjugate to `u1`, returning the conjugator and
/// the braid derivation collapsing `C u1 C^-1` to the target letter.
pub fn conjugacy_witness(ctx: &Context, target: Gen) -> Result<ConjugacyWitness> {
    match target {
        Gen::U(i) if i >= 2 && (i as usize) < ctx.genus() => {}
        Gen::V | Gen::S2 | Gen::S3 => {}
        other => {
            return Err(Error::UnsupportedLetter(format!(
                "conjugacy witnesses cover u2..u{}, v, s2, s3; got `{other}`",
                ctx.genus() - 1
            )))
        }
    }
    if complement_class(ctx, Gen::U(1))? != complement_class(ctx, target)? {
        return Err(Error::NotConjugate(format!(
            "u1 and {target} have complements of different orientability classes"
        )));
    }
    let conjugator = ctx.witness_conjugator(target)?;
    let start = Word::join(&[&conjugator, &Word::parse("u1")?, &conjugator.inverse()]);
    let mut b = DerivationBuilder::new(ctx, start);
    collapse_witness(&mut b, target, 1)?;
    debug_assert_eq!(b.word(), &Word::single(Letter::pos(target)));
    let (word, steps) = b.into_parts();
    Ok(ConjugacyWitness { source: Word::parse("u1")?, target: word, conjugator, steps })
}

/// Collapse `C u1^e C^-1` link by link from the inside out.
fn collapse_witness(b: &mut DerivationBuilder<'_>, target: Gen, exp: i8) -> Result<()> {
    let chain_links = |top: u8| -> usize { (top - 1) as usize };
    match target {
        Gen::U(top) => {
            let links = chain_links(top);
            for k in 1..=links {
                b.apply(
                    chain_up(ChainFamily::BraidU(k as u8), exp),
                    2 * (links - k),
                    Direction::Reverse,
                )?;
            }
        }
        Gen::V => {
            let links = chain_links(4);
            for k in 1..=links {
                b.apply(
                    chain_up(ChainFamily::BraidU(k as u8), exp),
                    2 + 2 * (links - k),
                    Direction::Reverse,
                )?;
            }
            b.apply(chain_up(ChainFamily::BraidUV, exp), 0, Direction::Reverse)?;
        }
        Gen::S2 | Gen::S3 => {
            let top = if target == Gen::S2 { 2u8 } else { 3u8 };
            let links = chain_links(top);
            for k in 1..=links {
                b.apply(
                    chain_up(ChainFamily::BraidU(k as u8), exp),
                    1 + 2 * (links - k),
                    Direction::Reverse,
                )?;
            }
            b.apply(
                RelationRef::MacroDef { letter: Letter::new(target, exp) },
                0,
                Direction::Reverse,
            )?;
        }
        _ => unreachable!("validated by caller"),
    }
    Ok(())
}

/// Build the normal-generation certificate: the lemma word for `a1`
/// rewritten letter by letter into conjugates of `u1`.
pub fn build_normal_generation(ctx: &Context) -> Result<NormalGenerationCertificate> {
    if ctx.genus() < 7 {
        return Err(Error::UnsupportedGenus(format!(
            "the normal-generation certificate needs genus >= 7, got {}",
            ctx.genus()
        )));
    }
    let lemma = build_lemma_a1(ctx, 0)?;

    let mut factors = Vec::new();
    let mut expression = Word::empty();
    for l in lemma.expression.letters() {
        let conjugator = ctx.witness_conjugator(l.gen)?;
        factors.push(ConjugateFactor { conjugator: conjugator.clone(), exponent: l.exp });
        expression = Word::join(&[
            &expression,
            &conjugator,
            &Word::single(Letter::new(Gen::U(1), l.exp)),
            &conjugator.inverse(),
        ]);
    }

    let mut b = DerivationBuilder::new(ctx, expression.clone());
    let mut done = 0usize;
    for l in lemma.expression.letters() {
        if l.gen == Gen::U(1) {
            done += 1;
            continue;
        }
        b.apply(RelationRef::Witness { letter: *l }, done, Direction::Forward)?;
        done += 1;
    }
    debug_assert_eq!(b.word(), &lemma.expression);
    let (_, mut steps) = b.into_parts();
    steps.extend(lemma.steps.iter().cloned());

    let mut alphabet: Vec<String> = vec!["a3".into(), "v".into()];
    alphabet.extend((1..=6).map(|i| format!("u{i}")));
    alphabet.sort();
    let cert = Certificate::new(
        "normal-generation",
        lemma.target.clone(),
        alphabet,
        expression,
        steps,
        Vec::new(),
        ctx.genus(),
        0,
    );
    let cert = seal(ctx, cert, vec![normal_generation_axiom()])?;
    Ok(NormalGenerationCertificate {
        kind: "normal-generation".to_string(),
        base: Word::parse("u1")?,
        factors,
        certificate: cert,
    })
}
