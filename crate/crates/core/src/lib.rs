#![no_std]
extern crate alloc;

pub mod algebra;
pub mod analysis;
pub mod automorphism;
pub mod catalog;
pub mod error;
pub mod linalg;
pub mod real_forms;
pub mod scalar;
pub mod symplectic;

pub use algebra::{BilinearForm, LieAlgebra, Symmetry};
pub use error::{Error, Result};
pub use linalg::{Matrix, Subspace};
pub use scalar::{Exact, Field, Scalar};
