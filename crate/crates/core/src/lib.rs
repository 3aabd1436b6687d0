//! Structure-revealing singular value decompositions of involutory,
//! skew-involutory, coninvolutory and skew-coninvolutory matrices, with the
//! canonical forms and projector constructions they induce.

pub mod canonical;
pub mod error;
pub mod kernel;
pub mod projector;
pub mod structured_svd;
pub mod structures;

pub use error::{Error, Result};
pub use kernel::ComplexMatrix;
pub use structured_svd::{restructure, StructuredSvd};
pub use structures::{classify, StructureClass};
