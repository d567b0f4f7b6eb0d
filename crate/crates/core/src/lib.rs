//! Exact rational computations with Sullivan minimal models.
//!
//! Builds bigraded minimal models of finitely presented graded-commutative
//! algebras, computes the cohomology of a one-cell attachment `M_α`, and
//! decides formality of `X ∪_α e^n` where the obstruction theory allows it.
//!
//! All arithmetic is over ℚ with arbitrary-precision rationals. The crate is
//! `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod attach;
pub mod dgca;
pub mod error;
pub mod formality;
pub mod gca;
pub mod linalg;
pub mod model;
pub mod presented;
pub mod text;

pub use attach::{AlphaFunctional, AlphaSpec, AttachmentElement, AttachmentModel, Decomposability};
pub use dgca::{CohomologyClass, CohomologyGroup, DecomposableSubspace, FreeDgca};
pub use error::{Error, PresentationIssue, PresentationIssues};
pub use formality::{
    even_complex_formality, even_skeleton, formality_verdict, hurewicz_vanishes, is_special,
    CellSpec, CellStep, Clause, EvenComplexReport, FormalityVerdict, Status, Witness,
};
pub use gca::{Element, FreeAlgebra, GenId, Generator, Monomial};
pub use linalg::Scalar;
pub use model::{build_minimal_model, BigradedModel, StandardViolation, Substitution};
pub use presented::PresentedAlgebra;
pub use text::{parse_element, parse_scalar, ParseError};
