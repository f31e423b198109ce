use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::qcoeff::QLaurent;

use super::element::{Coeff, Element, Family, GenId, Generator, Parity, Word};
use super::AlgebraError;

/// A printed relation `lhs = rhs`, kept alongside the rule it produced.
#[derive(Clone, Debug)]
pub struct Relation<C> {
    pub label: String,
    pub lhs: Element<C>,
    pub rhs: Element<C>,
}

impl<C: Coeff> Relation<C> {
    pub fn new(label: impl Into<String>, lhs: Element<C>, rhs: Element<C>) -> Self {
        Relation {
            label: label.into(),
            lhs,
            rhs,
        }
    }

    pub fn difference(&self) -> Element<C> {
        self.lhs.sub(&self.rhs)
    }
}

/// A quadratic rewriting presentation of an algebra.
///
/// Every rule rewrites a two-letter word that is out of order (or a square of
/// a nilpotent letter) into a combination of strictly smaller words in the
/// degree-lexicographic order, so rewriting terminates.
#[derive(Clone, Debug)]
pub struct Presentation<C> {
    name: String,
    alphabet: Vec<Generator>,
    rules: BTreeMap<(GenId, GenId), Element<C>>,
    nilpotents: BTreeSet<GenId>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    DuplicateName(String),
    /// Rule left-hand side is an ordered pair of distinct letters.
    OrderedLhs {
        rule: String,
    },
    /// Square rule that is not a nilpotency `g·g → 0`.
    SquareNotNilpotent {
        rule: String,
    },
    /// Right-hand word not strictly smaller than the left-hand side.
    NotDecreasing {
        rule: String,
        word: String,
    },
    UnknownLetter {
        rule: String,
        id: u16,
    },
    ConjugateNotInvolutive {
        generator: String,
    },
    ConjugateParityMismatch {
        generator: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateName(n) => write!(f, "duplicate generator name `{n}`"),
            Violation::OrderedLhs { rule } => {
                write!(f, "rule {rule}: lhs is already in normal order")
            }
            Violation::SquareNotNilpotent { rule } => {
                write!(f, "rule {rule}: square lhs must rewrite to 0")
            }
            Violation::NotDecreasing { rule, word } => {
                write!(
                    f,
                    "rule {rule}: rhs word `{word}` is not smaller than the lhs"
                )
            }
            Violation::UnknownLetter { rule, id } => write!(f, "rule {rule}: unknown letter #{id}"),
            Violation::ConjugateNotInvolutive { generator } => {
                write!(f, "conjugation is not an involution at `{generator}`")
            }
            Violation::ConjugateParityMismatch { generator } => {
                write!(f, "`{generator}` and its conjugate have different parity")
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<C: Coeff> Presentation<C> {
    pub fn empty(name: impl Into<String>) -> Self {
        Presentation {
            name: name.into(),
            alphabet: Vec::new(),
            rules: BTreeMap::new(),
            nilpotents: BTreeSet::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &[Generator] {
        &self.alphabet
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.alphabet[id.index()]
    }

    pub fn find(&self, name: &str) -> Option<GenId> {
        self.alphabet.iter().find(|g| g.name == name).map(|g| g.id)
    }

    /// Looks up a generator by name; panics on a typo in preset code.
    pub fn g(&self, name: &str) -> GenId {
        self.find(name)
            .unwrap_or_else(|| panic!("no generator `{name}` in presentation `{}`", self.name))
    }

    pub fn rules(&self) -> impl Iterator<Item = (Word, &Element<C>)> + '_ {
        self.rules
            .iter()
            .map(|(&(a, b), rhs)| (Word::pair(a, b), rhs))
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn rule(&self, a: GenId, b: GenId) -> Option<&Element<C>> {
        self.rules.get(&(a, b))
    }

    pub fn nilpotents(&self) -> &BTreeSet<GenId> {
        &self.nilpotents
    }

    /// Rules as relations `lhs = rhs`, for feeding back into checks.
    pub fn rule_relations(&self) -> Vec<Relation<C>> {
        self.rules()
            .map(|(lhs, rhs)| {
                Relation::new(
                    self.word_name(&lhs),
                    Element::word(lhs.clone()),
                    rhs.clone(),
                )
            })
            .collect()
    }

    pub fn word_name(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters()
            .iter()
            .map(|&g| {
                self.alphabet
                    .get(g.index())
                    .map_or_else(|| format!("#{}", g.0), |gen| gen.name.clone())
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parity_of_word(&self, w: &Word) -> Parity {
        let odd = w
            .letters()
            .iter()
            .filter(|&&g| self.generator(g).parity.is_odd())
            .count();
        if odd % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut seen = HashSet::new();
        for g in &self.alphabet {
            if !seen.insert(g.name.as_str()) {
                violations.push(Violation::DuplicateName(g.name.clone()));
            }
            if let Some(c) = g.conjugate {
                match self.alphabet.get(c.index()) {
                    Some(partner) if partner.conjugate == Some(g.id) => {
                        if partner.parity != g.parity {
                            violations.push(Violation::ConjugateParityMismatch {
                                generator: g.name.clone(),
                            });
                        }
                    }
                    _ => violations.push(Violation::ConjugateNotInvolutive {
                        generator: g.name.clone(),
                    }),
                }
            }
        }
        let n = self.alphabet.len() as u16;
        for (&(a, b), rhs) in &self.rules {
            let lhs = Word::pair(a, b);
            let rule = self.word_name(&lhs);
            if a.0 >= n || b.0 >= n {
                violations.push(Violation::UnknownLetter {
                    rule,
                    id: a.0.max(b.0),
                });
                continue;
            }
            if a < b {
                violations.push(Violation::OrderedLhs { rule: rule.clone() });
            }
            if a == b && !rhs.is_zero() {
                violations.push(Violation::SquareNotNilpotent { rule: rule.clone() });
            }
            for (w, _) in rhs.terms() {
                if let Some(bad) = w.letters().iter().find(|g| g.0 >= n) {
                    violations.push(Violation::UnknownLetter {
                        rule: rule.clone(),
                        id: bad.0,
                    });
                } else if *w >= lhs {
                    violations.push(Violation::NotDecreasing {
                        rule: rule.clone(),
                        word: self.word_name(w),
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    /// Position of the leftmost redex in `w`.
    pub fn leftmost_redex(&self, w: &Word) -> Option<usize> {
        w.letters()
            .windows(2)
            .position(|p| self.rules.contains_key(&(p[0], p[1])))
    }

    /// All redex positions in `w`.
    pub fn redexes(&self, w: &Word) -> Vec<usize> {
        w.letters()
            .windows(2)
            .enumerate()
            .filter(|(_, p)| self.rules.contains_key(&(p[0], p[1])))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.leftmost_redex(w).is_none()
    }

    /// One rewriting step at `pos`, or `None` when no rule applies there.
    pub fn rewrite_at(&self, w: &Word, pos: usize) -> Option<Element<C>> {
        if pos + 1 >= w.len() {
            return None;
        }
        let rhs = self.rules.get(&(w.letters()[pos], w.letters()[pos + 1]))?;
        let mut out = Element::zero();
        for (u, c) in rhs.terms() {
            out.add_term(w.splice_pair(pos, u), c);
        }
        Some(out)
    }

    /// Normal form by leftmost-innermost rewriting.
    pub fn normalize(&self, e: &Element<C>) -> Element<C> {
        let mut cache = HashMap::new();
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            let nf = self.normal_word(w, &mut cache);
            out.add_scaled(&nf, c);
        }
        out
    }

    pub fn normalize_word(&self, w: &Word) -> Element<C> {
        self.normal_word(w, &mut HashMap::new())
    }

    fn normal_word(&self, w: &Word, cache: &mut HashMap<Word, Element<C>>) -> Element<C> {
        if let Some(hit) = cache.get(w) {
            return hit.clone();
        }
        let result = match self.leftmost_redex(w) {
            None => Element::word(w.clone()),
            Some(pos) => {
                let rhs = &self.rules[&(w.letters()[pos], w.letters()[pos + 1])];
                let mut acc = Element::zero();
                for (u, c) in rhs.terms() {
                    let next = w.splice_pair(pos, u);
                    let sub = self.normal_word(&next, cache);
                    acc.add_scaled(&sub, c);
                }
                acc
            }
        };
        cache.insert(w.clone(), result.clone());
        result
    }

    /// Product followed by normalization.
    pub fn mul(&self, a: &Element<C>, b: &Element<C>) -> Element<C> {
        self.normalize(&a.concat(b))
    }

    /// Hermitian conjugation: reverse words, swap generators with their
    /// conjugates, star the coefficients, normalize.
    pub fn star_element(&self, e: &Element<C>) -> Result<Element<C>, AlgebraError> {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            let mut letters = Vec::with_capacity(w.len());
            for &g in w.letters().iter().rev() {
                let gen = self.generator(g);
                let partner = gen
                    .conjugate
                    .ok_or_else(|| AlgebraError::MissingConjugate(gen.name.clone()))?;
                letters.push(partner);
            }
            out.add_term(Word(letters), &c.star());
        }
        Ok(self.normalize(&out))
    }

    /// Every word of exactly `len` letters over the alphabet.
    pub fn words_of_length(&self, len: usize) -> Vec<Word> {
        let n = self.alphabet.len() as u16;
        let mut out = vec![Word::unit()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * n as usize);
            for w in &out {
                for g in 0..n {
                    let mut v = w.0.clone();
                    v.push(GenId(g));
                    next.push(Word(v));
                }
            }
            out = next;
        }
        out
    }

    /// Normal (irreducible) words of length `len`.
    pub fn normal_words(&self, len: usize) -> Vec<Word> {
        self.words_of_length(len)
            .into_iter()
            .filter(|w| self.is_normal(w))
            .collect()
    }

    /// Renders an element with coefficients in parentheses: `(c) x y + ...`.
    pub fn render_generic(&self, e: &Element<C>) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        e.terms()
            .map(|(w, c)| format!("({c}) {}", self.word_name(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Presentation<QLaurent> {
    /// Flat rendering reparseable by the CLI: every term is
    /// `±[rational][*i][*q^k] word`, e.g. `X11 X22 - q^2 X12 X21`.
    pub fn render(&self, e: &Element<QLaurent>) -> String {
        render_terms(e.terms().map(|(w, c)| (self.word_name(w), c)))
    }
}

/// Shared flat renderer; `words` yields (rendered word, coefficient) pairs.
pub fn render_terms<'a, I>(words: I) -> String
where
    I: Iterator<Item = (String, &'a QLaurent)>,
{
    let mut out = String::new();
    for (word, c) in words {
        for atom in c.atoms() {
            let body = match (atom.is_unit(), word == "1") {
                (true, _) => word.clone(),
                (false, true) => atom.unsigned(),
                (false, false) => format!("{} {}", atom.unsigned(), word),
            };
            match (out.is_empty(), atom.negative) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AddOutcome {
    Added,
    /// Same rule as an earlier line; nothing changes.
    Duplicate,
    /// Different right-hand side for an existing lhs; the earlier rule is kept.
    Conflict,
}

/// Incremental construction of a [`Presentation`] from printed relations.
pub struct PresentationBuilder<C> {
    inner: Presentation<C>,
}

impl<C: Coeff> PresentationBuilder<C> {
    pub fn new(name: impl Into<String>) -> Self {
        PresentationBuilder {
            inner: Presentation::empty(name),
        }
    }

    pub fn generator(&mut self, name: &str, parity: Parity, family: Family) -> GenId {
        let id = GenId(self.inner.alphabet.len() as u16);
        self.inner.alphabet.push(Generator {
            id,
            name: name.to_string(),
            parity,
            conjugate: None,
            family,
        });
        id
    }

    pub fn conjugates(&mut self, a: GenId, b: GenId) -> &mut Self {
        self.inner.alphabet[a.index()].conjugate = Some(b);
        self.inner.alphabet[b.index()].conjugate = Some(a);
        self
    }

    pub fn self_conjugate(&mut self, a: GenId) -> &mut Self {
        self.inner.alphabet[a.index()].conjugate = Some(a);
        self
    }

    pub fn presentation(&self) -> &Presentation<C> {
        &self.inner
    }

    /// Orients `lhs = rhs` so that its largest word becomes the rule lhs.
    pub fn orient(lhs: &Element<C>, rhs: &Element<C>) -> Result<(Word, Element<C>), AlgebraError> {
        let diff = lhs.sub(rhs);
        let (lead, c) = diff.leading().ok_or(AlgebraError::TrivialRelation)?;
        let lead = lead.clone();
        if lead.len() != 2 {
            return Err(AlgebraError::NotQuadratic(lead.len()));
        }
        let inv = c
            .unit_inverse()
            .ok_or(AlgebraError::NonUnitLeadingCoefficient)?;
        let mut tail = diff.clone();
        tail.add_term(lead.clone(), &c.negate());
        Ok((lead, tail.scale(&inv.negate())))
    }

    /// Adds the rule obtained by orienting `lhs = rhs`.
    pub fn relation(
        &mut self,
        lhs: &Element<C>,
        rhs: &Element<C>,
    ) -> Result<AddOutcome, AlgebraError> {
        let (lead, rule_rhs) = Self::orient(lhs, rhs)?;
        Ok(self.rule(lead, rule_rhs))
    }

    /// Adds `lhs → rhs` verbatim; validation catches malformed rules.
    pub fn rule(&mut self, lhs: Word, rhs: Element<C>) -> AddOutcome {
        let key = (lhs.letters()[0], lhs.letters()[1]);
        match self.inner.rules.get(&key) {
            Some(existing) if *existing == rhs => AddOutcome::Duplicate,
            Some(_) => AddOutcome::Conflict,
            None => {
                if key.0 == key.1 && rhs.is_zero() {
                    self.inner.nilpotents.insert(key.0);
                }
                self.inner.rules.insert(key, rhs);
                AddOutcome::Added
            }
        }
    }

    pub fn nilpotent(&mut self, g: GenId) -> AddOutcome {
        self.rule(Word::pair(g, g), Element::zero())
    }

    pub fn build(self) -> Presentation<C> {
        self.inner
    }
}
