//! Exact combinatorial bounds for the higher topological complexity of
//! complements of complex hyperplane arrangements.
//!
//! The crate computes, entirely in exact arithmetic:
//!
//! - matroid data of a central essential arrangement (rank, closure,
//!   circuits, flats of the intersection lattice),
//! - the Orlik–Solomon algebra with its no-broken-circuit bases and
//!   straightening of arbitrary monomials,
//! - products of diagonal-kernel classes in tensor powers of the algebra,
//! - upper and lower bounds for the s-th topological complexity of the
//!   arrangement complement, with certifying witnesses (balanced sets,
//!   basic pairs, well-balanced pairs, intersection-lattice criteria),
//! - a catalog of built-in families: braid, monomial (cyclotomic), Weyl
//!   types including E6/E7/E8/F4, and generic (uniform) arrangements.

pub mod arrangement;
pub mod budget;
pub mod algebra;
pub mod matrix;
pub mod scalar;
pub mod tensor;

pub use arrangement::{Arrangement, ArrangementError, Flat, LinearOrder, Subset};
pub use algebra::{AlgebraError, Monomial, NbcContext, OSElement};
pub use budget::{Budget, BudgetExhausted};
pub use scalar::{FieldSpec, Scalar};
pub use tensor::{kernel_generator, pair_product, TensorElement, TensorError};
