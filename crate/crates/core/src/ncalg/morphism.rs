use std::collections::BTreeMap;

use super::element::{Coeff, Element, GenId};
use super::presentation::Presentation;
use super::AlgebraError;

/// How a morphism acts on scalar coefficients.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoefficientAction {
    Identity,
    /// `q → q⁻¹`, leaving `i` untouched.
    InvertQ,
}

impl CoefficientAction {
    pub fn apply<C: Coeff>(self, c: &C) -> C {
        match self {
            CoefficientAction::Identity => c.clone(),
            CoefficientAction::InvertQ => c.invert_q(),
        }
    }
}

/// Algebra morphism given by generator images in a target presentation.
#[derive(Clone, Debug)]
pub struct Morphism<C> {
    pub action: CoefficientAction,
    pub images: BTreeMap<GenId, Element<C>>,
}

impl<C: Coeff> Morphism<C> {
    pub fn new(action: CoefficientAction) -> Self {
        Morphism {
            action,
            images: BTreeMap::new(),
        }
    }

    pub fn identity(src: &Presentation<C>) -> Self {
        let mut m = Morphism::new(CoefficientAction::Identity);
        for g in src.alphabet() {
            m.images.insert(g.id, Element::letters(&[g.id]));
        }
        m
    }

    pub fn with_image(mut self, g: GenId, image: Element<C>) -> Self {
        self.images.insert(g, image);
        self
    }

    /// Multiplicative extension to `e`, normalized in `dst`.
    pub fn apply(
        &self,
        e: &Element<C>,
        src: &Presentation<C>,
        dst: &Presentation<C>,
    ) -> Result<Element<C>, AlgebraError> {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            let mut acc = Element::unit();
            for g in w.letters() {
                let image = self
                    .images
                    .get(g)
                    .ok_or_else(|| AlgebraError::MissingImage(src.generator(*g).name.clone()))?;
                acc = dst.mul(&acc, image);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(&acc, &self.action.apply(c));
        }
        Ok(dst.normalize(&out))
    }

    /// `self ∘ first`, both read as maps into the same presentation `mid = dst`.
    pub fn compose_after(
        &self,
        first: &Morphism<C>,
        src: &Presentation<C>,
        mid: &Presentation<C>,
        dst: &Presentation<C>,
    ) -> Result<Morphism<C>, AlgebraError> {
        let action = match (self.action, first.action) {
            (CoefficientAction::Identity, a) | (a, CoefficientAction::Identity) => a,
            // Two inversions cancel.
            (CoefficientAction::InvertQ, CoefficientAction::InvertQ) => CoefficientAction::Identity,
        };
        let mut out = Morphism::new(action);
        for g in src.alphabet() {
            let image = first
                .images
                .get(&g.id)
                .ok_or_else(|| AlgebraError::MissingImage(g.name.clone()))?;
            out.images.insert(g.id, self.apply(image, mid, dst)?);
        }
        Ok(out)
    }
}

pub fn apply_morphism<C: Coeff>(
    e: &Element<C>,
    m: &Morphism<C>,
    src: &Presentation<C>,
    dst: &Presentation<C>,
) -> Result<Element<C>, AlgebraError> {
    m.apply(e, src, dst)
}
