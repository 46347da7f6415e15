//! An exact, executable model of the dagger category of finite-dimensional
//! inner-product spaces over the Gaussian rationals ℚ(i).
//!
//! Morphisms are exact matrices and closed subobjects are canonical
//! projections (`P·P = P = P†`). The structure this category carries
//! (kernels, biproducts, equalisers, pullbacks, the image factorisation, the
//! subobject lattice with its orthocomplement, and the existential quantifier
//! with its adjunctions) is computed with tolerance zero. The [`laws`]
//! module packages the lattice and quantifier laws as executable verifiers,
//! together with the two classical counterexamples (failure of distributivity
//! and the non-fibredness of the orthocomplement).
//!
//! The matrix layer is generic over any field with an involution (see
//! [`scalar::StarField`]); the rest of the crate works with the concrete
//! scalar type [`Scalar`] = ℚ(i).

pub mod category;
pub mod clsub;
pub mod laws;
pub mod matrix;
pub mod sample;
pub mod scalar;
pub mod text;

pub use category::{
    biproduct, equalizer, pullback, Biproduct, FactorTriple, Morphism, MorphismFlags,
    PullbackSquare,
};
pub use clsub::{preimage, Subobject, SubobjectError};
pub use matrix::{Matrix, Rref};
pub use scalar::{Rational, Scalar, StarField};
