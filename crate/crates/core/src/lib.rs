//! Exact symbolic engine for q-deformed differential calculi on the quantum
//! plane, q-twistors and the q-deformed light-cone.
//!
//! Algebras are quadratic rewriting presentations over Laurent polynomials in
//! `q^{1/2}`; the verification suite checks their relation tables, critical
//! pairs, star structure, the twistor realization and the classical limit.

pub mod expsolve;
pub mod ncalg;
pub mod opaction;
pub mod presets;
pub mod qcoeff;
pub mod verify;

pub use ncalg::{
    AlgebraError, Coeff, DerivationTable, Element, GenId, Morphism, Presentation, Relation, Word,
};
pub use opaction::{OperatorAlgebra, OperatorExpr};
pub use presets::{build_preset, preset, preset_with, Preset, PresetName, PresetOptions};
pub use qcoeff::{GaussRat, HSeries, HalfExp, QLaurent};
pub use verify::{run_all, CheckReport, Status, SuiteOptions, SuiteResult};
