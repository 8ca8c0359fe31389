//! Linear relations between finite-dimensional complex inner-product spaces.
//!
//! A linear relation `T` from `H = ℂⁿ` to `K = ℂᵐ` is a subspace of `H ⊕ K`
//! (its graph). Operators are the special case of relations with a trivial
//! multivalued part. This crate provides:
//!
//! * [`Subspace`]: orthonormal-basis subspaces with one rank policy ([`Tolerance`]),
//! * [`LinearRelation`]: domain, range, kernel, multivalued part, restriction,
//! * the relation calculus (inverse, adjoint, products, sums, direct sums),
//! * the Moore-Penrose inverse `T† = P_{N(T)⊥} T⁻¹ P_{R(T)}`, the regular part,
//!   operator norms and the reduced minimal modulus,
//! * resolvent sets and point spectra through matrix pencils, square roots of
//!   nonnegative self-adjoint relations and absolute values,
//! * a randomized verification engine ([`verify`]) with replayable seeds,
//! * a line-oriented text format for relations ([`io`]).
//!
//! Every subspace of a finite-dimensional space is closed, so every relation
//! here is closed and has closed range.

pub mod algebra;
mod error;
pub mod io;
pub(crate) mod linalg;
pub mod moore_penrose;
pub mod relation;
pub mod spectral;
pub mod subspace;
pub mod verify;

pub use algebra::{anti_diagonal_block, projection_relation};
pub use error::{Error, Result};
pub use moore_penrose::OperatorView;
pub use relation::{Classification, LinearRelation, RelationParts};
pub use spectral::{PencilRep, ResolventVerdict, SpectrumReport};
pub use subspace::{Comparison, Subspace, Tolerance};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex<f64>;

/// Dense complex matrix.
pub type CMat = nalgebra::DMatrix<C64>;

/// Builds a complex matrix from real row-major data.
pub fn real_matrix(rows: usize, cols: usize, data: &[f64]) -> CMat {
    assert_eq!(data.len(), rows * cols, "real_matrix: data length");
    CMat::from_fn(rows, cols, |i, j| C64::new(data[i * cols + j], 0.0))
}
