//! Exact multiplicity engine for simple Lie groups.
//!
//! Littlewood-Richardson coefficients of SU(n) are counted as integer
//! fillings of O-blades ([`oblade`]); Kostka numbers follow from the
//! stabilisation of scaled LR coefficients ([`tensor`]); stretching
//! polynomials are interpolated exactly to read off Horn volumes
//! ([`stretch`]); and the character expansions of the R-polynomials are
//! derived or verified in [`rpoly`]. Weyl characters in [`characters`]
//! provide an independent route to the same multiplicities.

pub mod characters;
pub mod error;
pub mod oblade;
pub mod render;
pub mod rootsys;
pub mod rpoly;
pub mod stretch;
pub mod tensor;

pub use error::{Error, Result};

pub use oblade::{BranchingTriple, ObladeFilling, ObladeShape, SearchConfig};
pub use tensor::Decomposition;
pub use stretch::{StretchPolynomial, VolumeValue};
pub use render::{RenderKind, RenderSpec};
pub use rootsys::{LieType, RationalWeight, RootSystem, Series, Weight};
pub use rpoly::{CharacterCombo, KappaSets, Which};


