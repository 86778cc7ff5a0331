//! Exact arithmetic for the algebras A_h = F<x, y> / (yx - xy - h(x)) with
//! h a nonzero polynomial in x, together with their finite dimensional
//! modules and the partition combinatorics of the derivation powers.
//!
//! The crate is organized bottom-up:
//! - [`scalar`]: exact field arithmetic over Q, prime fields F_p, and one
//!   step of finite extension F_p[t]/(m).
//! - [`poly`]: dense univariate polynomials, gcd machinery, p-adic
//!   derivatives, and small-case irreducibility certification.
//! - [`matrix`]: exact linear algebra (RREF, kernels, minimal polynomials,
//!   subspace lattice operations).
//! - [`ahalg`]: normal form elements of A_h, the closed multiplication
//!   formula, central elements in characteristic p, and two-sided division.
//! - [`partitions`]: the integer partition coefficients that expand
//!   delta^k(x) in terms of derivatives of h.
//! - [`repr`]: construction of the finite dimensional module families and
//!   of induced modules over a maximal ideal.
//! - [`analysis`]: irreducibility, indecomposability, submodule lattices,
//!   annihilators, and classification drivers built on the above.

pub mod error;
pub mod scalar;
pub mod poly;
pub mod matrix;
pub mod ahalg;
pub mod partitions;
pub mod repr;
pub mod analysis;

pub use ahalg::{embed_weyl, AhContext, AhElement};
pub use analysis::{
    ann_bounded, classify_char_p, d_annihilator, induced_generates, induced_reduce,
    is_indecomposable, is_irreducible, is_irreducible_seeded, is_uniserial, left_ideal_window,
    same_annihilator, submodule_lattice, weight_decomposition, AnnComparison, Answer,
    Classification, Method, SubmoduleLattice, Verdict, WeightSpace, Witness,
};
pub use error::{AhError, Result};
pub use matrix::{subspace_contains, subspace_intersection, subspace_sum, ScalarMat};
pub use partitions::{expand_delta_x, Partition, PartitionCoeffTable};
pub use poly::{Factorization, Poly, Primality};
pub use repr::{
    l_module_factor, l_z_beta, n_module, n_quotient_hom, n_quotient_target, one_dim,
    weyl_restrict, FinModule, InducedElement, Provenance,
};
pub use scalar::{ArithOp, FieldContext, Scalar, DEFAULT_SEED};
