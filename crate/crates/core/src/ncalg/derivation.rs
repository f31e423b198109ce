use std::collections::BTreeMap;

use super::element::{Coeff, Element, GenId, Word};
use super::presentation::Presentation;
use super::AlgebraError;

/// Values of the exterior differential on generators.
///
/// Odd generators need no entry: their image is zero.
#[derive(Clone, Debug, Default)]
pub struct DerivationTable<C> {
    pub images: BTreeMap<GenId, Element<C>>,
}

impl<C: Coeff> DerivationTable<C> {
    pub fn new() -> Self {
        DerivationTable {
            images: BTreeMap::new(),
        }
    }

    pub fn with_image(mut self, g: GenId, image: Element<C>) -> Self {
        self.images.insert(g, image);
        self
    }

    fn image(&self, g: GenId, p: &Presentation<C>) -> Result<Option<&Element<C>>, AlgebraError> {
        let gen = p.generator(g);
        match self.images.get(&g) {
            Some(img) => Ok(Some(img)),
            None if gen.parity.is_odd() => Ok(None),
            None => Err(AlgebraError::MissingDerivationImage(gen.name.clone())),
        }
    }

    /// Graded Leibniz extension: `δ(uv) = δ(u)v + (−1)^{|u|} u δ(v)`, normalized.
    pub fn apply(&self, e: &Element<C>, p: &Presentation<C>) -> Result<Element<C>, AlgebraError> {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            let letters = w.letters();
            let mut sign_odd = false;
            for (j, &g) in letters.iter().enumerate() {
                if let Some(image) = self.image(g, p)? {
                    let prefix = Element::word(Word(letters[..j].to_vec()));
                    let suffix = Element::word(Word(letters[j + 1..].to_vec()));
                    let term = prefix.concat(image).concat(&suffix);
                    let coeff = if sign_odd { c.negate() } else { c.clone() };
                    out.add_scaled(&term, &coeff);
                }
                if p.generator(g).parity.is_odd() {
                    sign_odd = !sign_odd;
                }
            }
        }
        Ok(p.normalize(&out))
    }
}

pub fn apply_derivation<C: Coeff>(
    e: &Element<C>,
    d: &DerivationTable<C>,
    p: &Presentation<C>,
) -> Result<Element<C>, AlgebraError> {
    d.apply(e, p)
}
