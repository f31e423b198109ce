//! Free-algebra core: words, elements, quadratic rewriting presentations,
//! the star involution, graded derivations and algebra morphisms.

mod derivation;
mod element;
mod morphism;
mod presentation;

use thiserror::Error;

pub use derivation::{apply_derivation, DerivationTable};
pub use element::{Coeff, Element, Family, GenId, Generator, Parity, Word};
pub use morphism::{apply_morphism, CoefficientAction, Morphism};
pub use presentation::{
    render_terms, AddOutcome, Presentation, PresentationBuilder, Relation, ValidationReport,
    Violation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("generator `{0}` has no conjugate partner")]
    MissingConjugate(String),
    #[error("generator `{0}` has no differential image")]
    MissingDerivationImage(String),
    #[error("morphism has no image for generator `{0}`")]
    MissingImage(String),
    #[error("relation reduces to 0 = 0")]
    TrivialRelation,
    #[error("leading word of a relation has length {0}, expected 2")]
    NotQuadratic(usize),
    #[error("leading coefficient of a relation is not invertible")]
    NonUnitLeadingCoefficient,
}

pub fn validate_presentation<C: Coeff>(p: &Presentation<C>) -> ValidationReport {
    p.validate()
}

pub fn normalize<C: Coeff>(e: &Element<C>, p: &Presentation<C>) -> Element<C> {
    p.normalize(e)
}

pub fn mul<C: Coeff>(a: &Element<C>, b: &Element<C>, p: &Presentation<C>) -> Element<C> {
    p.mul(a, b)
}

pub fn star_element<C: Coeff>(
    e: &Element<C>,
    p: &Presentation<C>,
) -> Result<Element<C>, AlgebraError> {
    p.star_element(e)
}
