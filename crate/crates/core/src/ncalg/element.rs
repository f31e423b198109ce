use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::qcoeff::QLaurent;

/// Coefficient ring for free-algebra elements.
///
/// Implemented by [`QLaurent`] and by the symbolic-exponent ring used by the
/// exponent solver, so one rewriting engine serves both.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Inverse when `self` is a unit of the ring (a single `c·q^k` term).
    fn unit_inverse(&self) -> Option<Self>;
    /// `q → q⁻¹` composed with complex conjugation.
    fn star(&self) -> Self;
    /// `q → q⁻¹` only.
    fn invert_q(&self) -> Self;
}

impl Coeff for QLaurent {
    fn zero() -> Self {
        QLaurent::zero()
    }
    fn one() -> Self {
        QLaurent::one()
    }
    fn is_zero(&self) -> bool {
        QLaurent::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        QLaurent::unit_inverse(self)
    }
    fn star(&self) -> Self {
        QLaurent::star(self)
    }
    fn invert_q(&self) -> Self {
        QLaurent::invert_q(self)
    }
}

/// Index of a generator in its presentation's alphabet; also its rank in the
/// normal-form order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct GenId(pub u16);

impl GenId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        matches!(self, Parity::Odd)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Family {
    Coordinate,
    Differential,
    Derivative,
    Twistor,
    Momentum,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator {
    pub id: GenId,
    pub name: String,
    pub parity: Parity,
    pub conjugate: Option<GenId>,
    pub family: Family,
}

/// A word in the free monoid. The empty word is the unit.
///
/// Words are ordered degree-lexicographically (length first, then letter by
/// letter in alphabet order); this is the termination order of every
/// presentation.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<GenId>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: GenId) -> Self {
        Word(vec![g])
    }

    pub fn pair(a: GenId, b: GenId) -> Self {
        Word(vec![a, b])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[GenId] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Replaces the two letters at `pos, pos+1` by `middle`.
    pub fn splice_pair(&self, pos: usize, middle: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + middle.len());
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(&middle.0);
        v.extend_from_slice(&self.0[pos + 2..]);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Number of out-of-order letter pairs.
    pub fn inversions(&self) -> usize {
        let mut n = 0;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    n += 1;
                }
            }
        }
        n
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite linear combination of words. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct Element<C> {
    terms: BTreeMap<Word, C>,
}

impl<C: Coeff> Default for Element<C> {
    fn default() -> Self {
        Element::zero()
    }
}

impl<C: Coeff> Element<C> {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn unit() -> Self {
        Element::word(Word::unit())
    }

    pub fn word(w: Word) -> Self {
        Element::term(w, C::one())
    }

    pub fn letters(ids: &[GenId]) -> Self {
        Element::word(Word(ids.to_vec()))
    }

    pub fn term(w: Word, c: C) -> Self {
        let mut e = Element::zero();
        e.add_term(w, &c);
        e
    }

    pub fn scalar(c: C) -> Self {
        Element::term(Word::unit(), c)
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, C)>>(iter: I) -> Self {
        let mut e = Element::zero();
        for (w, c) in iter {
            e.add_term(w, &c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending degree-lexicographic order of their words.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &C)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&C> {
        self.terms.get(w)
    }

    /// Largest word with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &C)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(old) => {
                let sum = old.plus(c);
                if sum.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &Element<C>, c: &C) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), &x.times(c));
        }
    }

    pub fn add(&self, other: &Element<C>) -> Element<C> {
        let mut out = self.clone();
        out.add_scaled(other, &C::one());
        out
    }

    pub fn sub(&self, other: &Element<C>) -> Element<C> {
        let mut out = self.clone();
        out.add_scaled(other, &C::one().negate());
        out
    }

    pub fn neg(&self) -> Element<C> {
        self.scale(&C::one().negate())
    }

    pub fn scale(&self, c: &C) -> Element<C> {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Element<C> {
        Element::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    /// Free (unnormalized) product: bilinear concatenation of words.
    pub fn concat(&self, other: &Element<C>) -> Element<C> {
        let mut out = Element::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), &ca.times(cb));
            }
        }
        out
    }
}
