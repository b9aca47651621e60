//! Harmonic decomposition of 3D elasticity tensors and the complete minimal
//! integrity basis of 297 polynomial invariants under the rotation group.
//!
//! The pipeline implemented here:
//!
//! 1. An elasticity tensor `C` (3×3×3×3, minor and major index symmetries,
//!    21 independent components) is split into its harmonic parts
//!    `(λ, μ, a, b, D)`: two scalars, two traceless symmetric 2-tensors and
//!    one totally symmetric traceless 4-tensor ([`harmonic`]).
//! 2. Each harmonic tensor corresponds to a harmonic polynomial, which the
//!    Cartan pullback turns into a binary form: `a, b` become quartics
//!    `h, k` and `D` becomes an octic `f` ([`binary`]).
//! 3. Covariants of those forms are generated by transvectants following the
//!    published minimal covariant bases for S₈ and S₄⊕S₄ ([`covariants`]),
//!    and the order-0 covariants listed in the joint-invariant tables are
//!    evaluated to numbers ([`invariants`]).
//! 4. The result is a vector of 297 labeled invariants that separates SO(3)
//!    orbits: two tensors are rotations of one another exactly when all 297
//!    values agree ([`invariants::orbit_equivalent`]).
//!
//! All computations are generic over the scalar carrier ([`scalar::Scalar`]):
//! `Complex<BigRational>` gives exact Gaussian-rational arithmetic in which
//! rotation invariance holds bit-for-bit, and `Complex<f64>` gives a fast
//! floating-point mode using the same code path.
//!
//! The [`diophantine`] module enumerates irreducible solutions of the linear
//! Diophantine systems that drive the transvectant-candidate generation
//! behind the covariant tables, with a brute-force completeness certificate.
//!
//! Frozen conventions (invariant *values*, unlike the invariant *algebra*,
//! depend on them; they are fixed once and documented):
//! - Voigt slot order (11, 22, 33, 23, 13, 12), raw components, no weighting.
//! - Transvectants use the bare summation formula with no extra
//!   normalization prefactor.
//! - The scalar harmonic parts are `λ = tr d`, `μ = tr v` where `d` is the
//!   dilatation tensor and `v` the Voigt tensor; the deviator pair is
//!   `a = (5 dev d − 4 dev v)/7`, `b = (−2 dev d + 3 dev v)/7`.

mod arith;
pub mod binary;
pub mod covariants;
pub mod diophantine;
pub mod harmonic;
pub mod invariants;
pub mod io;
pub mod scalar;
pub mod tensor;

pub use scalar::{ExactScalar, FloatScalar, Scalar};

/// Configures the global rayon thread pool used for parallel invariant
/// evaluation. Call once, before any parallel work; later calls are ignored.
pub fn configure_threads(n: Option<usize>) {
    if let Some(n) = n {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}
