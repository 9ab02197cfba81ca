//! Combinatorial models for the complement of a complexified toric arrangement.
//!
//! The pipeline lifts an arrangement on the compact torus `(S^1)^n` to the
//! periodic affine hyperplane arrangement on `R^n`, enumerates its faces inside a
//! finite window, and quotients by the translation lattice `Z^n`. From the
//! quotient we build
//!
//! * the face category of the induced (possibly non-regular) cell structure on
//!   the torus ([`cells`]),
//! * the toric Salvetti category, whose nerve is homotopy equivalent to the
//!   complement ([`salvetti`]),
//! * integral homology of nerves ([`category`]), and
//! * a finite presentation of the fundamental group of the complement ([`pi1`]).
//!
//! All arithmetic is exact: arbitrary precision integers and rationals
//! ([`exact`]).

pub mod arrangement;
pub mod catalog;
pub mod category;
pub mod cells;
pub mod error;
pub mod exact;
pub mod model;
pub mod pi1;
pub mod salvetti;

pub use arrangement::{AffineHyperplane, ArrangementSpec, Window};
pub use category::{AcyclicCategory, ChainComplex, HomologyGroup};
pub use cells::{FaceCategory, LayerPoset, LiftedFacePoset};
pub use error::{Error, Result};
pub use exact::{IntMatrix, Rational};
pub use model::{Model, Space};
pub use pi1::{GroupPresentation, Word};
pub use salvetti::{SalvettiCategory, SalvettiPoset};
