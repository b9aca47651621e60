//! The complete minimal integrity basis of 297 polynomial rotation
//! invariants of the elasticity tensor, plus orbit-equivalence queries.
//!
//! Assembly: the harmonic parts `(λ, μ, a, b, D)` contribute
//!
//! - the two degree-1 scalars `λ, μ`;
//! - nine simple trace invariants of `D` ([`trace_invariants_h4`]);
//! - `tr a², tr a³` and `tr b², tr b³`;
//! - four joint trace invariants of `(a, b)` ([`trace_invariants_h2h2`]);
//! - 52 joint invariants of `(D, a)` and 52 of `(D, b)`, evaluated as
//!   order-0 transvectants of the binary forms `f = φ*(D)`, `h = φ*(a)` or
//!   `φ*(b)` ([`joint_invariants_s8s4`]);
//! - 174 joint invariants of `(D, a, b)` ([`joint_invariants_s8s4s4`]),
//!
//! for a total of 2 + 9 + 4 + 4 + 104 + 174 = 297. The table entries are
//! frozen verbatim; each row names a left slot (a covariant of `f`, or a
//! product of two) and a right slot (a product of powers of quartic
//! covariants), combined by one final transvectant whose order-0 result is
//! the invariant's value.
//!
//! The basis separates orbits: two elasticity tensors are related by a
//! rotation exactly when all 297 values coincide. In exact arithmetic this
//! is a decision procedure ([`orbit_equivalent`] with tolerance 0); in
//! float mode it is numerical evidence governed by a relative tolerance.

use crate::binary::{cartan_pullback, transvectant, BinaryForm};
use crate::covariants::{
    helper_covariants, s4s4_covariant_basis, s8_covariant_basis, CovariantError, CovariantSet,
};
use crate::harmonic::{
    harmonic4_to_poly, harmonic_decompose_elasticity, sym2_to_poly, HarmonicError, HarmonicPoly3,
};
use crate::scalar::Scalar;
use crate::tensor::{
    array4_from_fn, mat3_mul, mat3_trace, Array4, ElasticityTensor, HarmonicTensor2,
    HarmonicTensor4, Mat3,
};
use rayon::prelude::*;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
    #[error(transparent)]
    Covariant(#[from] CovariantError),
}

fn compose4<S: Scalar>(a: &Array4<S>, b: &Array4<S>) -> Array4<S> {
    array4_from_fn(|i, j, k, l| {
        let mut acc = S::zero();
        for p in 0..3 {
            for q in 0..3 {
                acc = acc + a[i][j][p][q].clone() * b[p][q][k][l].clone();
            }
        }
        acc
    })
}

fn tr13<S: Scalar>(a: &Array4<S>) -> Mat3<S> {
    std::array::from_fn(|j| {
        std::array::from_fn(|l| {
            (0..3)
                .map(|i| a[i][j][i][l].clone())
                .fold(S::zero(), |s, t| s + t)
        })
    })
}

fn apply4<S: Scalar>(d: &Array4<S>, m: &Mat3<S>) -> Mat3<S> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = S::zero();
            for k in 0..3 {
                for l in 0..3 {
                    acc = acc + d[i][j][k][l].clone() * m[k][l].clone();
                }
            }
            acc
        })
    })
}

/// The nine simple trace invariants `J₂ … J₁₀` of a harmonic 4-tensor.
///
/// With `D²` the composition of `D` with itself as an operator on symmetric
/// 2-tensors, `d₂ = tr₁₃ D²` and `d₃ = tr₁₃ D³` are symmetric 2-tensors,
/// and the returned values are the traces of
///
/// ```text
/// d₂, d₃, d₂², d₂(Dd₂), d₂³, d₂²(Dd₂), d₂²(D²d₂), d₂²(Dd₂²), d₂²(D²d₂²)
/// ```
///
/// `J_k` is homogeneous of degree `k` in `D`. Non-harmonic input is ruled
/// out by [`HarmonicTensor4`]'s constructor.
pub fn trace_invariants_h4<S: Scalar>(d: &HarmonicTensor4<S>) -> [S; 9] {
    let dd = d.components();
    let d2_op = compose4(dd, dd);
    let d2 = tr13(&d2_op);
    let d3 = tr13(&compose4(&d2_op, dd));
    let d2_sq = mat3_mul(&d2, &d2);
    let dd2 = apply4(dd, &d2);
    let dd2_sq = apply4(dd, &d2_sq);
    let d2dd2 = apply4(dd, &dd2);
    let d2dd2_sq = apply4(dd, &dd2_sq);
    [
        mat3_trace(&d2),
        mat3_trace(&d3),
        mat3_trace(&d2_sq),
        mat3_trace(&mat3_mul(&d2, &dd2)),
        mat3_trace(&mat3_mul(&d2_sq, &d2)),
        mat3_trace(&mat3_mul(&d2_sq, &dd2)),
        mat3_trace(&mat3_mul(&d2_sq, &d2dd2)),
        mat3_trace(&mat3_mul(&d2_sq, &dd2_sq)),
        mat3_trace(&mat3_mul(&d2_sq, &d2dd2_sq)),
    ]
}

/// The eight trace invariants of a pair of traceless symmetric 2-tensors:
/// `I₂ = tr a², I₃ = tr a³, J₂ = tr b², J₃ = tr b³, K₂ = tr(ab),
/// K₃ = tr(a²b), L₃ = tr(ab²), K₄ = tr(a²b²)`, in that order.
///
/// Non-traceless input is ruled out by [`HarmonicTensor2`]'s constructor.
pub fn trace_invariants_h2h2<S: Scalar>(
    a: &HarmonicTensor2<S>,
    b: &HarmonicTensor2<S>,
) -> [S; 8] {
    let (a, b) = (a.mat(), b.mat());
    let a2 = mat3_mul(a, a);
    let b2 = mat3_mul(b, b);
    [
        mat3_trace(&a2),
        mat3_trace(&mat3_mul(&a2, a)),
        mat3_trace(&b2),
        mat3_trace(&mat3_mul(&b2, b)),
        mat3_trace(&mat3_mul(a, b)),
        mat3_trace(&mat3_mul(&a2, b)),
        mat3_trace(&mat3_mul(a, &b2)),
        mat3_trace(&mat3_mul(&a2, &b2)),
    ]
}

/// Left slot of a joint-invariant table row: a covariant of the octic, or a
/// product of two.
#[derive(Clone, Copy)]
enum FSlot {
    F(u8),
    Prod(u8, u8),
}

use FSlot::{Prod, F};

/// Row of the 52-entry table: `(left, h^e₀ · h₂,₄^e₁ · h₃,₆^e₂)^r`, of the
/// listed total degree in the two underlying harmonic tensors.
struct T4Row {
    left: FSlot,
    right: [u8; 3],
    r: u8,
    degree: u8,
}

const fn t4(left: FSlot, right: [u8; 3], r: u8, degree: u8) -> T4Row {
    T4Row {
        left,
        right,
        r,
        degree,
    }
}

#[rustfmt::skip]
const T4_ROWS: [T4Row; 52] = [
    t4(F(3),         [1, 0, 0],  4,  3),
    t4(F(1),         [2, 0, 0],  8,  3),
    t4(F(1),         [1, 1, 0],  8,  4),
    t4(F(4),         [2, 0, 0],  8,  4),
    t4(F(3),         [0, 1, 0],  4,  4),
    t4(F(7),         [1, 0, 0],  4,  4),
    t4(F(1),         [0, 2, 0],  8,  5),
    t4(F(4),         [1, 1, 0],  8,  5),
    t4(F(5),         [3, 0, 0], 12,  5),
    t4(F(7),         [0, 1, 0],  4,  5),
    t4(F(9),         [2, 0, 0],  8,  5),
    t4(F(15),        [1, 0, 0],  4,  5),
    t4(F(16),        [1, 0, 0],  4,  5),
    t4(F(4),         [0, 2, 0],  8,  6),
    t4(F(5),         [2, 1, 0], 12,  6),
    t4(F(11),        [3, 0, 0], 12,  6),
    t4(F(9),         [1, 1, 0],  8,  6),
    t4(F(15),        [0, 1, 0],  4,  6),
    t4(F(8),         [0, 0, 1],  6,  6),
    t4(F(18),        [2, 0, 0],  8,  6),
    t4(F(16),        [0, 1, 0],  4,  6),
    t4(F(26),        [1, 0, 0],  4,  6),
    t4(F(27),        [1, 0, 0],  4,  6),
    t4(F(5),         [1, 2, 0], 12,  7),
    t4(F(10),        [1, 0, 1], 10,  7),
    t4(F(11),        [2, 1, 0], 12,  7),
    t4(F(18),        [1, 1, 0],  8,  7),
    t4(F(17),        [0, 0, 1],  6,  7),
    t4(F(21),        [3, 0, 0], 12,  7),
    t4(F(30),        [2, 0, 0],  8,  7),
    t4(F(27),        [0, 1, 0],  4,  7),
    t4(F(26),        [0, 1, 0],  4,  7),
    t4(F(37),        [1, 0, 0],  4,  7),
    t4(F(38),        [1, 0, 0],  4,  7),
    t4(F(47),        [1, 0, 0],  4,  8),
    t4(F(48),        [1, 0, 0],  4,  8),
    t4(F(37),        [0, 1, 0],  4,  8),
    t4(F(38),        [0, 1, 0],  4,  8),
    t4(F(42),        [2, 0, 0],  8,  8),
    t4(F(29),        [0, 0, 1],  6,  8),
    t4(F(30),        [1, 1, 0],  8,  8),
    t4(F(20),        [1, 0, 1], 10,  8),
    t4(F(21),        [2, 1, 0], 12,  8),
    t4(F(11),        [1, 2, 0], 12,  8),
    t4(Prod(8, 8),   [3, 0, 0], 12,  9),
    t4(F(48),        [0, 1, 0],  4,  9),
    t4(F(47),        [0, 1, 0],  4,  9),
    t4(F(55),        [1, 0, 0],  4,  9),
    t4(F(56),        [1, 0, 0],  4,  9),
    t4(F(56),        [0, 1, 0],  4, 10),
    t4(F(63),        [1, 0, 0],  4, 10),
    t4(Prod(25, 25), [1, 0, 0],  4, 11),
];

/// Row of the 174-entry table: `(left, Π hᵢ^eᵢ)^r` with `hᵢ` the joint
/// covariants of the quartic pair.
struct T5Row {
    left: FSlot,
    right: &'static [(u8, u8)],
    r: u8,
    degree: u8,
}

const fn t5(left: FSlot, right: &'static [(u8, u8)], r: u8, degree: u8) -> T5Row {
    T5Row {
        left,
        right,
        r,
        degree,
    }
}

#[rustfmt::skip]
const T5_ROWS: [T5Row; 174] = [
    // degree 3
    t5(F(1),  &[(1, 1), (2, 1)],          8, 3),
    // degree 4
    t5(F(1),  &[(1, 1), (8, 1)],          8, 4),
    t5(F(1),  &[(2, 1), (9, 1)],          8, 4),
    t5(F(1),  &[(2, 1), (7, 1)],          8, 4),
    t5(F(1),  &[(1, 1), (9, 1)],          8, 4),
    t5(F(3),  &[(9, 1)],                  4, 4),
    t5(F(4),  &[(1, 1), (2, 1)],          8, 4),
    // degree 5
    t5(F(1),  &[(8, 1), (9, 1)],          8, 5),
    t5(F(1),  &[(2, 1), (17, 1)],         8, 5),
    t5(F(1),  &[(7, 1), (8, 1)],          8, 5),
    t5(F(1),  &[(2, 1), (18, 1)],         8, 5),
    t5(F(1),  &[(9, 2)],                  8, 5),
    t5(F(1),  &[(7, 1), (9, 1)],          8, 5),
    t5(F(1),  &[(1, 1), (18, 1)],         8, 5),
    t5(F(4),  &[(1, 1), (8, 1)],          8, 5),
    t5(F(4),  &[(2, 1), (9, 1)],          8, 5),
    t5(F(5),  &[(1, 1), (2, 2)],         12, 5),
    t5(F(3),  &[(17, 1)],                 4, 5),
    t5(F(4),  &[(2, 1), (7, 1)],          8, 5),
    t5(F(3),  &[(18, 1)],                 4, 5),
    t5(F(4),  &[(1, 1), (9, 1)],          8, 5),
    t5(F(5),  &[(1, 2), (2, 1)],         12, 5),
    t5(F(9),  &[(1, 1), (2, 1)],          8, 5),
    t5(F(7),  &[(9, 1)],                  4, 5),
    t5(F(8),  &[(10, 1)],                 6, 5),
    // degree 6
    t5(F(1),  &[(8, 1), (17, 1)],         8, 6),
    t5(F(1),  &[(2, 1), (6, 2)],          8, 6),
    t5(F(1),  &[(9, 1), (17, 1)],         8, 6),
    t5(F(1),  &[(9, 1), (18, 1)],         8, 6),
    t5(F(1),  &[(1, 1), (6, 2)],          8, 6),
    t5(F(1),  &[(7, 1), (18, 1)],         8, 6),
    t5(F(4),  &[(2, 1), (17, 1)],         8, 6),
    t5(F(5),  &[(1, 1), (2, 1), (8, 1)], 12, 6),
    t5(F(4),  &[(8, 1), (9, 1)],          8, 6),
    t5(F(5),  &[(2, 2), (9, 1)],         12, 6),
    t5(F(4),  &[(2, 1), (18, 1)],         8, 6),
    t5(F(5),  &[(1, 1), (2, 1), (9, 1)], 12, 6),
    t5(F(5),  &[(1, 2), (8, 1)],         12, 6),
    t5(F(4),  &[(9, 2)],                  8, 6),
    t5(F(4),  &[(7, 1), (8, 1)],          8, 6),
    t5(F(5),  &[(2, 2), (7, 1)],         12, 6),
    t5(F(5),  &[(1, 2), (9, 1)],         12, 6),
    t5(F(4),  &[(7, 1), (9, 1)],          8, 6),
    t5(F(4),  &[(1, 1), (18, 1)],         8, 6),
    t5(F(5),  &[(1, 1), (2, 1), (7, 1)], 12, 6),
    t5(F(9),  &[(1, 1), (8, 1)],          8, 6),
    t5(F(8),  &[(21, 1)],                 6, 6),
    t5(F(10), &[(2, 1), (10, 1)],        10, 6),
    t5(F(8),  &[(2, 1), (6, 1)],          6, 6),
    t5(F(9),  &[(2, 1), (9, 1)],          8, 6),
    t5(F(11), &[(1, 1), (2, 2)],         12, 6),
    t5(F(11), &[(1, 2), (2, 1)],         12, 6),
    t5(F(10), &[(1, 1), (10, 1)],        10, 6),
    t5(F(9),  &[(2, 1), (7, 1)],          8, 6),
    t5(F(9),  &[(1, 1), (9, 1)],          8, 6),
    t5(F(8),  &[(1, 1), (6, 1)],          6, 6),
    t5(F(8),  &[(22, 1)],                 6, 6),
    t5(F(16), &[(9, 1)],                  4, 6),
    t5(F(17), &[(10, 1)],                 6, 6),
    t5(F(18), &[(1, 1), (2, 1)],          8, 6),
    t5(F(15), &[(9, 1)],                  4, 6),
    // degree 7
    t5(F(5),  &[(2, 2), (17, 1)],        12, 7),
    t5(F(5),  &[(1, 1), (8, 2)],         12, 7),
    t5(F(5),  &[(2, 1), (8, 1), (9, 1)], 12, 7),
    t5(F(5),  &[(2, 2), (18, 1)],        12, 7),
    t5(F(5),  &[(1, 1), (8, 1), (9, 1)], 12, 7),
    t5(F(5),  &[(2, 1), (7, 1), (8, 1)], 12, 7),
    t5(F(5),  &[(2, 1), (9, 2)],         12, 7),
    t5(F(5),  &[(1, 1), (9, 2)],         12, 7),
    t5(F(5),  &[(2, 1), (7, 1), (9, 1)], 12, 7),
    t5(F(5),  &[(1, 1), (2, 1), (18, 1)], 12, 7),
    t5(F(5),  &[(1, 1), (7, 1), (8, 1)], 12, 7),
    t5(F(5),  &[(1, 1), (7, 1), (9, 1)], 12, 7),
    t5(F(5),  &[(1, 2), (18, 1)],        12, 7),
    t5(F(5),  &[(2, 1), (7, 2)],         12, 7),
    t5(F(10), &[(2, 1), (21, 1)],        10, 7),
    t5(F(10), &[(1, 1), (20, 1)],        10, 7),
    t5(F(11), &[(2, 2), (9, 1)],         12, 7),
    t5(F(11), &[(1, 1), (2, 1), (8, 1)], 12, 7),
    t5(F(10), &[(2, 2), (6, 1)],         10, 7),
    t5(F(12), &[(2, 2), (10, 1)],        14, 7),
    t5(F(10), &[(1, 1), (2, 1), (6, 1)], 10, 7),
    t5(F(11), &[(1, 2), (8, 1)],         12, 7),
    t5(F(10), &[(1, 1), (21, 1)],        10, 7),
    t5(F(10), &[(2, 1), (22, 1)],        10, 7),
    t5(F(12), &[(1, 1), (2, 1), (10, 1)], 14, 7),
    t5(F(11), &[(1, 1), (2, 1), (9, 1)], 12, 7),
    t5(F(11), &[(2, 2), (7, 1)],         12, 7),
    t5(F(9),  &[(9, 2)],                  8, 7),
    t5(F(10), &[(1, 1), (22, 1)],        10, 7),
    t5(F(11), &[(1, 1), (2, 1), (7, 1)], 12, 7),
    t5(F(11), &[(1, 2), (9, 1)],         12, 7),
    t5(F(10), &[(1, 2), (6, 1)],         10, 7),
    t5(F(10), &[(2, 1), (19, 1)],        10, 7),
    t5(F(12), &[(1, 2), (10, 1)],        14, 7),
    t5(F(21), &[(1, 1), (2, 2)],         12, 7),
    t5(F(18), &[(2, 1), (9, 1)],          8, 7),
    t5(F(17), &[(21, 1)],                 6, 7),
    t5(F(17), &[(2, 1), (6, 1)],          6, 7),
    t5(F(20), &[(2, 1), (10, 1)],        10, 7),
    t5(F(19), &[(2, 1), (10, 1)],        10, 7),
    t5(F(18), &[(1, 1), (8, 1)],          8, 7),
    t5(F(17), &[(1, 1), (6, 1)],          6, 7),
    t5(F(18), &[(1, 1), (9, 1)],          8, 7),
    t5(F(17), &[(22, 1)],                 6, 7),
    t5(F(20), &[(1, 1), (10, 1)],        10, 7),
    t5(F(21), &[(1, 2), (2, 1)],         12, 7),
    t5(F(19), &[(1, 1), (10, 1)],        10, 7),
    t5(F(18), &[(2, 1), (7, 1)],          8, 7),
    t5(F(29), &[(10, 1)],                 6, 7),
    t5(F(30), &[(1, 1), (2, 1)],          8, 7),
    t5(F(26), &[(9, 1)],                  4, 7),
    t5(F(27), &[(9, 1)],                  4, 7),
    t5(F(28), &[(10, 1)],                 6, 7),
    // degree 8
    t5(F(37), &[(9, 1)],                  4, 8),
    t5(F(38), &[(9, 1)],                  4, 8),
    t5(F(40), &[(10, 1)],                 6, 8),
    t5(F(41), &[(10, 1)],                 6, 8),
    t5(F(42), &[(1, 1), (2, 1)],          8, 8),
    t5(F(29), &[(21, 1)],                 6, 8),
    t5(F(30), &[(1, 1), (8, 1)],          8, 8),
    t5(F(30), &[(2, 1), (9, 1)],          8, 8),
    t5(F(31), &[(2, 1), (10, 1)],        10, 8),
    t5(F(32), &[(2, 1), (10, 1)],        10, 8),
    t5(F(33), &[(2, 1), (10, 1)],        10, 8),
    t5(F(29), &[(22, 1)],                 6, 8),
    t5(F(30), &[(1, 1), (9, 1)],          8, 8),
    t5(F(30), &[(2, 1), (7, 1)],          8, 8),
    t5(F(31), &[(1, 1), (10, 1)],        10, 8),
    t5(F(32), &[(1, 1), (10, 1)],        10, 8),
    t5(F(33), &[(1, 1), (10, 1)],        10, 8),
    t5(F(20), &[(2, 1), (22, 1)],        10, 8),
    t5(F(20), &[(1, 1), (2, 1), (6, 1)], 10, 8),
    t5(F(21), &[(1, 2), (8, 1)],         12, 8),
    t5(F(21), &[(1, 1), (2, 1), (9, 1)], 12, 8),
    t5(F(21), &[(2, 2), (7, 1)],         12, 8),
    t5(F(22), &[(1, 1), (2, 1), (10, 1)], 14, 8),
    t5(F(20), &[(1, 1), (22, 1)],        10, 8),
    t5(F(20), &[(1, 2), (6, 1)],         10, 8),
    t5(F(21), &[(1, 2), (9, 1)],         12, 8),
    t5(F(21), &[(1, 1), (2, 1), (7, 1)], 12, 8),
    t5(F(22), &[(1, 2), (10, 1)],        14, 8),
    t5(F(11), &[(2, 1), (7, 1), (9, 1)], 12, 8),
    t5(F(12), &[(1, 2), (2, 1), (6, 1)], 14, 8),
    t5(F(13), &[(1, 2), (2, 1), (10, 1)], 18, 8),
    t5(F(11), &[(2, 1), (7, 2)],         12, 8),
    t5(F(12), &[(1, 3), (6, 1)],         14, 8),
    t5(F(13), &[(1, 3), (10, 1)],        18, 8),
    t5(F(11), &[(2, 1), (9, 2)],         12, 8),
    t5(F(12), &[(1, 1), (2, 2), (6, 1)], 14, 8),
    t5(F(13), &[(1, 1), (2, 2), (10, 1)], 18, 8),
    t5(F(20), &[(2, 1), (21, 1)],        10, 8),
    t5(F(20), &[(2, 2), (6, 1)],         10, 8),
    t5(F(21), &[(1, 1), (2, 1), (8, 1)], 12, 8),
    t5(F(21), &[(2, 2), (9, 1)],         12, 8),
    t5(F(22), &[(2, 2), (10, 1)],        14, 8),
    t5(F(11), &[(2, 1), (8, 1), (9, 1)], 12, 8),
    t5(F(12), &[(2, 3), (6, 1)],         14, 8),
    t5(F(13), &[(2, 3), (10, 1)],        18, 8),
    // degree 9
    t5(Prod(1, 25), &[(2, 1), (10, 1)],  10, 9),
    t5(F(43),       &[(2, 1), (10, 1)],  10, 9),
    t5(Prod(8, 8),  &[(1, 1), (2, 2)],   12, 9),
    t5(Prod(1, 25), &[(1, 1), (10, 1)],  10, 9),
    t5(Prod(8, 8),  &[(1, 2), (2, 1)],   12, 9),
    t5(F(43),       &[(1, 1), (10, 1)],  10, 9),
    t5(Prod(3, 25), &[(10, 1)],           6, 9),
    t5(F(51),       &[(10, 1)],           6, 9),
    t5(F(48),       &[(9, 1)],            4, 9),
    t5(F(47),       &[(9, 1)],            4, 9),
    // degree 10
    t5(F(54), &[(6, 1)],                  2, 10),
    t5(F(56), &[(9, 1)],                  4, 10),
    // degree 11
    t5(F(61), &[(6, 1)],                  2, 11),
    t5(F(62), &[(6, 1)],                  2, 11),
    t5(F(63), &[(9, 1)],                  4, 11),
];

fn unit_form<S: Scalar>() -> BinaryForm<S> {
    BinaryForm::from_raw(vec![S::one()])
}

fn fslot_form<S: Scalar>(cov: &CovariantSet<S>, slot: FSlot) -> BinaryForm<S> {
    match slot {
        F(n) => cov.form(&format!("f{n}")).clone(),
        Prod(a, b) => cov.form(&format!("f{a}")).mul(cov.form(&format!("f{b}"))),
    }
}

fn t4_values<S: Scalar>(
    cov: &CovariantSet<S>,
    h: &BinaryForm<S>,
    h24: &BinaryForm<S>,
    h36: &BinaryForm<S>,
) -> Vec<S> {
    T4_ROWS
        .par_iter()
        .map(|row| {
            let left = fslot_form(cov, row.left);
            let mut right = unit_form();
            for (form, exp) in [(h, row.right[0]), (h24, row.right[1]), (h36, row.right[2])] {
                for _ in 0..exp {
                    right = right.mul(form);
                }
            }
            transvectant(&left, &right, row.r as usize).coeff(0).clone()
        })
        .collect()
}

fn t5_values<S: Scalar>(cov: &CovariantSet<S>, pair: &CovariantSet<S>) -> Vec<S> {
    T5_ROWS
        .par_iter()
        .map(|row| {
            let left = fslot_form(cov, row.left);
            let mut right = unit_form();
            for &(id, exp) in row.right {
                let factor = pair.form(&format!("h{id}"));
                for _ in 0..exp {
                    right = right.mul(factor);
                }
            }
            transvectant(&left, &right, row.r as usize).coeff(0).clone()
        })
        .collect()
}

/// The 52 joint invariants of an octic and a quartic, in frozen table
/// order (degrees 3…11, with per-degree counts 2, 4, 7, 10, 11, 10, 5, 2,
/// 1).
pub fn joint_invariants_s8s4<S: Scalar>(
    f: &BinaryForm<S>,
    h: &BinaryForm<S>,
) -> Result<Vec<S>, CovariantError> {
    let cov = s8_covariant_basis(f)?;
    let (h24, h36) = helper_covariants(h)?;
    Ok(t4_values(&cov, h, &h24, &h36))
}

/// The 174 joint invariants of an octic and a pair of quartics, in frozen
/// table order (degrees 3…11, with per-degree counts 1, 6, 18, 36, 53, 45,
/// 10, 2, 3). Every entry depends on all three inputs, so zeroing any one
/// input zeroes the whole list.
pub fn joint_invariants_s8s4s4<S: Scalar>(
    f: &BinaryForm<S>,
    h: &BinaryForm<S>,
    k: &BinaryForm<S>,
) -> Result<Vec<S>, CovariantError> {
    let cov = s8_covariant_basis(f)?;
    let pair = s4s4_covariant_basis(h, k)?;
    Ok(t5_values(&cov, &pair))
}

/// The three binary forms of an elasticity tensor: `f = φ*(D)` (degree 8),
/// `h = φ*(a)` and `k = φ*(b)` (degree 4).
#[derive(Debug, Clone, PartialEq)]
pub struct PullbackForms<S: Scalar> {
    pub f: BinaryForm<S>,
    pub h: BinaryForm<S>,
    pub k: BinaryForm<S>,
}

pub fn elasticity_forms<S: Scalar>(
    c: &ElasticityTensor<S>,
) -> Result<PullbackForms<S>, InvariantError> {
    let parts = harmonic_decompose_elasticity(c);
    let ha = HarmonicPoly3::new(sym2_to_poly(parts.a.sym()))?;
    let hb = HarmonicPoly3::new(sym2_to_poly(parts.b.sym()))?;
    Ok(PullbackForms {
        f: cartan_pullback(&harmonic4_to_poly(&parts.d4)),
        h: cartan_pullback(&ha),
        k: cartan_pullback(&hb),
    })
}

/// Family tag of one basis element, named by the harmonic parts it depends
/// on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvariantFamily {
    H0Lambda,
    H0Mu,
    H4Simple,
    H2aSimple,
    H2bSimple,
    H2H2Joint,
    H4H2aJoint,
    H4H2bJoint,
    H4H2H2Joint,
}

impl InvariantFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::H0Lambda => "H0-lambda",
            Self::H0Mu => "H0-mu",
            Self::H4Simple => "H4-simple",
            Self::H2aSimple => "H2a-simple",
            Self::H2bSimple => "H2b-simple",
            Self::H2H2Joint => "H2H2-joint",
            Self::H4H2aJoint => "H4H2a-joint",
            Self::H4H2bJoint => "H4H2b-joint",
            Self::H4H2H2Joint => "H4H2H2-joint",
        }
    }

    pub const ALL: [InvariantFamily; 9] = [
        Self::H0Lambda,
        Self::H0Mu,
        Self::H4Simple,
        Self::H2aSimple,
        Self::H2bSimple,
        Self::H2H2Joint,
        Self::H4H2aJoint,
        Self::H4H2bJoint,
        Self::H4H2H2Joint,
    ];
}

impl fmt::Display for InvariantFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Stable label of one basis element: family, total degree, and 1-based
/// index within `(family, degree)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantId {
    pub family: InvariantFamily,
    pub degree: u8,
    pub index: u8,
}

impl fmt::Display for InvariantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.family, self.degree, self.index)
    }
}

/// Per-degree sizes of the full basis, degrees 1…11.
pub const DEGREE_TOTALS: [(u8, usize); 11] = [
    (1, 2),
    (2, 4),
    (3, 10),
    (4, 16),
    (5, 33),
    (6, 57),
    (7, 76),
    (8, 66),
    (9, 21),
    (10, 7),
    (11, 5),
];

/// The 297 labeled invariant values of one tensor, in frozen order:
/// families in assembly order, degree ascending within each family, table
/// row order within a degree.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantVector<S: Scalar> {
    entries: Vec<(InvariantId, S)>,
}

impl<S: Scalar> InvariantVector<S> {
    fn new(entries: Vec<(InvariantId, S)>) -> Self {
        assert_eq!(entries.len(), 297);
        for (deg, expected) in DEGREE_TOTALS {
            let n = entries.iter().filter(|(id, _)| id.degree == deg).count();
            assert_eq!(n, expected, "degree {deg} count");
        }
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = &(InvariantId, S)> {
        self.entries.iter()
    }

    pub fn get(&self, id: InvariantId) -> Option<&S> {
        self.entries
            .iter()
            .find(|(eid, _)| *eid == id)
            .map(|(_, v)| v)
    }
}

/// Evaluates the full 297-element basis of `C`.
pub fn full_basis<S: Scalar>(
    c: &ElasticityTensor<S>,
) -> Result<InvariantVector<S>, InvariantError> {
    let parts = harmonic_decompose_elasticity(c);
    let ha = HarmonicPoly3::new(sym2_to_poly(parts.a.sym()))?;
    let hb = HarmonicPoly3::new(sym2_to_poly(parts.b.sym()))?;
    let f = cartan_pullback(&harmonic4_to_poly(&parts.d4));
    let h = cartan_pullback(&ha);
    let k = cartan_pullback(&hb);

    let cov = s8_covariant_basis(&f)?;
    let (h24, h36) = helper_covariants(&h)?;
    let (k24, k36) = helper_covariants(&k)?;
    let pair = s4s4_covariant_basis(&h, &k)?;

    let j_h4 = trace_invariants_h4(&parts.d4);
    let [i2, i3, j2, j3, k2, k3, l3, k4] = trace_invariants_h2h2(&parts.a, &parts.b);
    let t4_h = t4_values(&cov, &h, &h24, &h36);
    let t4_k = t4_values(&cov, &k, &k24, &k36);
    let t5 = t5_values(&cov, &pair);

    use InvariantFamily::*;
    let id = |family, degree, index| InvariantId {
        family,
        degree,
        index,
    };
    let mut entries = Vec::with_capacity(297);
    entries.push((id(H0Lambda, 1, 1), parts.lambda0.clone()));
    entries.push((id(H0Mu, 1, 1), parts.mu0.clone()));
    for (deg, v) in (2u8..=10).zip(j_h4) {
        entries.push((id(H4Simple, deg, 1), v));
    }
    entries.push((id(H2aSimple, 2, 1), i2));
    entries.push((id(H2aSimple, 3, 1), i3));
    entries.push((id(H2bSimple, 2, 1), j2));
    entries.push((id(H2bSimple, 3, 1), j3));
    entries.push((id(H2H2Joint, 2, 1), k2));
    entries.push((id(H2H2Joint, 3, 1), k3));
    entries.push((id(H2H2Joint, 3, 2), l3));
    entries.push((id(H2H2Joint, 4, 1), k4));
    for (family, values) in [(H4H2aJoint, t4_h), (H4H2bJoint, t4_k)] {
        let mut last = 0u8;
        let mut index = 0u8;
        for (row, v) in T4_ROWS.iter().zip(values) {
            index = if row.degree == last { index + 1 } else { 1 };
            last = row.degree;
            entries.push((id(family, row.degree, index), v));
        }
    }
    let mut last = 0u8;
    let mut index = 0u8;
    for (row, v) in T5_ROWS.iter().zip(t5) {
        index = if row.degree == last { index + 1 } else { 1 };
        last = row.degree;
        entries.push((id(H4H2H2Joint, row.degree, index), v));
    }
    Ok(InvariantVector::new(entries))
}

/// Outcome of an orbit-equivalence query: the verdict, the largest relative
/// discrepancy `|v₁ − v₂| / (1 + |v₁| + |v₂|)` over the basis, and the id
/// where it occurs.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitReport {
    pub equivalent: bool,
    pub max_discrepancy: f64,
    pub worst: Option<InvariantId>,
}

/// Compares the invariant vectors of two tensors.
///
/// With `tol = 0` the verdict is exact equality of all 297 values, which in
/// exact arithmetic decides whether the tensors lie on the same rotation
/// orbit. With `tol > 0` the verdict is `max_discrepancy ≤ tol`; in float
/// mode this is numerical evidence, not proof.
pub fn orbit_equivalent<S: Scalar>(
    c1: &ElasticityTensor<S>,
    c2: &ElasticityTensor<S>,
    tol: f64,
) -> Result<OrbitReport, InvariantError> {
    let v1 = full_basis(c1)?;
    let v2 = full_basis(c2)?;
    let mut max_discrepancy = 0.0f64;
    let mut worst = None;
    let mut all_equal = true;
    for ((id, a), (_, b)) in v1.iter().zip(v2.iter()) {
        all_equal &= a == b;
        let diff = (a.clone() - b.clone()).abs_f64();
        let d = diff / (1.0 + a.abs_f64() + b.abs_f64());
        if d > max_discrepancy {
            max_discrepancy = d;
            worst = Some(*id);
        }
    }
    let equivalent = if tol == 0.0 {
        all_equal
    } else {
        max_discrepancy <= tol
    };
    Ok(OrbitReport {
        equivalent,
        max_discrepancy,
        worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covariants::CovariantDegree;
    use crate::harmonic::{harmonic_decompose_poly, poly_to_sym4, HomogeneousPoly3};
    use crate::scalar::{ExactScalar, FloatScalar};
    use crate::tensor::{
        rotate_elasticity, rotation_from_quaternion, voigt_to_tensor, Quaternion, SymTensor2,
    };
    use num::traits::{One, Zero};

    type S = ExactScalar;

    fn int(n: i64) -> S {
        S::from_int(n)
    }

    fn d4_from_seed(seed: &[i64]) -> HarmonicTensor4<S> {
        let exps: Vec<[u8; 3]> = (0..=4u8)
            .flat_map(|i| (0..=(4 - i)).map(move |j| [i, j, 4 - i - j]))
            .collect();
        let p = HomogeneousPoly3::from_coeffs(
            4,
            exps.iter()
                .zip(seed.iter().cycle())
                .map(|(&e, &c)| (e, int(c))),
        )
        .unwrap();
        let h0 = harmonic_decompose_poly(&p).unwrap().into_iter().next().unwrap();
        HarmonicTensor4::new(poly_to_sym4(h0.poly()).unwrap()).unwrap()
    }

    fn h2_from_entries(p: i64, q: i64, r: i64, s: i64, t: i64) -> HarmonicTensor2<S> {
        let m = [
            [int(p), int(q), int(r)],
            [int(q), int(s), int(t)],
            [int(r), int(t), int(-p - s)],
        ];
        HarmonicTensor2::new(SymTensor2::new(m).unwrap()).unwrap()
    }

    fn tensor_from_voigt_seed(seed: &[i64]) -> ElasticityTensor<S> {
        let mut m: [[S; 6]; 6] = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
        let mut it = seed.iter().cycle();
        for a in 0..6 {
            for b in a..6 {
                let v = int(*it.next().unwrap());
                m[a][b] = v.clone();
                m[b][a] = v;
            }
        }
        voigt_to_tensor(&m).unwrap()
    }

    fn isotropic(lambda: i64, mu: i64) -> ElasticityTensor<S> {
        let mut m: [[S; 6]; 6] = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
        for a in 0..3 {
            for b in 0..3 {
                m[a][b] = if a == b {
                    int(lambda + 2 * mu)
                } else {
                    int(lambda)
                };
            }
            m[a + 3][a + 3] = int(mu);
        }
        voigt_to_tensor(&m).unwrap()
    }

    fn scale_h4(d: &HarmonicTensor4<S>, t: i64) -> HarmonicTensor4<S> {
        let arr = array4_from_fn(|i, j, k, l| int(t) * d.get(i, j, k, l).clone());
        HarmonicTensor4::new(arr).unwrap()
    }

    #[test]
    fn h4_traces_vanish_at_zero_and_scale_by_degree() {
        let zero = trace_invariants_h4(&HarmonicTensor4::<S>::zero());
        assert!(zero.iter().all(|v| v.is_zero()));

        let d = d4_from_seed(&[3, -1, 2, 5, -4, 1, 0, 2, -3, 1, 4, -2, 1, 3, -1]);
        let base = trace_invariants_h4(&d);
        let scaled = trace_invariants_h4(&scale_h4(&d, 2));
        for (k, (b, s)) in (2u32..=10).zip(base.iter().zip(&scaled)) {
            assert_eq!(*s, int(1i64 << k) * b.clone(), "J_{k}");
        }
    }

    #[test]
    fn h4_quadratic_trace_is_the_full_self_contraction() {
        let d = d4_from_seed(&[2, 1, -3, 4, 0, -1, 5, 2, -2, 3, 1, -4, 2, 0, 1]);
        let [j2, ..] = trace_invariants_h4(&d);
        let mut oracle = S::zero();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let v = d.get(i, j, k, l).clone();
                        oracle = oracle + v.clone() * v;
                    }
                }
            }
        }
        assert_eq!(j2, oracle);
    }

    #[test]
    fn h2h2_traces_match_index_loops_and_symmetries() {
        let zero = trace_invariants_h2h2(&HarmonicTensor2::<S>::zero(), &HarmonicTensor2::zero());
        assert!(zero.iter().all(|v| v.is_zero()));

        let a = h2_from_entries(2, -1, 3, 1, 4);
        let b = h2_from_entries(-1, 2, 0, 3, -2);
        let vals = trace_invariants_h2h2(&a, &b);

        // Independent oracle: explicit index sums.
        let am = a.mat();
        let bm = b.mat();
        let tr_prod = |ms: &[&Mat3<S>]| {
            let mut acc = S::zero();
            for idx in 0..3usize.pow(ms.len() as u32) {
                let mut digits = Vec::with_capacity(ms.len());
                let mut rest = idx;
                for _ in 0..ms.len() {
                    digits.push(rest % 3);
                    rest /= 3;
                }
                let mut term = S::one();
                for (pos, m) in ms.iter().enumerate() {
                    let row = digits[pos];
                    let col = digits[(pos + 1) % ms.len()];
                    term = term * m[row][col].clone();
                }
                acc = acc + term;
            }
            acc
        };
        let expected = [
            tr_prod(&[am, am]),
            tr_prod(&[am, am, am]),
            tr_prod(&[bm, bm]),
            tr_prod(&[bm, bm, bm]),
            tr_prod(&[am, bm]),
            tr_prod(&[am, am, bm]),
            tr_prod(&[am, bm, bm]),
            tr_prod(&[am, am, bm, bm]),
        ];
        assert_eq!(vals, expected);

        // Swapping the pair swaps (I, J) and (K₃, L₃), fixing K₂ and K₄.
        let [i2, i3, j2, j3, k2, k3, l3, k4] = vals.clone();
        let swapped = trace_invariants_h2h2(&b, &a);
        assert_eq!(swapped, [j2, j3, i2, i3, k2, l3, k3, k4]);

        // Equal arguments: K₂ = I₂, K₃ = L₃ = I₃, K₄ = tr a⁴ = I₂²/2.
        let same = trace_invariants_h2h2(&a, &a);
        assert_eq!(same[4], same[0]);
        assert_eq!(same[5], same[1]);
        assert_eq!(same[6], same[1]);
        assert_eq!(same[7], tr_prod(&[am, am, am, am]));
        assert_eq!(
            same[7],
            same[0].clone() * same[0].clone() * S::from_ratio(1, 2)
        );
    }

    fn sample_f8() -> BinaryForm<S> {
        BinaryForm::from_raw((0..9).map(|j| int([3, -1, 2, 0, 1, -2, 4, 1, -3][j])).collect())
    }

    fn sample_h4() -> BinaryForm<S> {
        BinaryForm::from_raw(vec![int(2), int(-1), int(3), int(1), int(-2)])
    }

    fn sample_k4() -> BinaryForm<S> {
        BinaryForm::from_raw(vec![int(1), int(4), int(0), int(-3), int(2)])
    }

    /// (f-degree, order) of each left slot, read from an evaluated
    /// covariant set.
    fn s8_meta(cov: &CovariantSet<S>, slot: FSlot) -> (u8, usize) {
        let one = |n: u8| {
            let c = cov.get(&format!("f{n}")).unwrap();
            let CovariantDegree::Single(d) = c.degree else {
                panic!()
            };
            (d, c.order as usize)
        };
        match slot {
            F(n) => one(n),
            Prod(a, b) => {
                let (da, oa) = one(a);
                let (db, ob) = one(b);
                (da + db, oa + ob)
            }
        }
    }

    #[test]
    fn s8s4_table_bookkeeping_is_consistent() {
        let counts: Vec<usize> = (3u8..=11)
            .map(|d| T4_ROWS.iter().filter(|r| r.degree == d).count())
            .collect();
        assert_eq!(counts, [2, 4, 7, 10, 11, 10, 5, 2, 1]);

        let cov = s8_covariant_basis(&sample_f8()).unwrap();
        for row in &T4_ROWS {
            let (df, of) = s8_meta(&cov, row.left);
            let dh = row.right[0] + 2 * row.right[1] + 3 * row.right[2];
            let oh = 4 * (row.right[0] + row.right[1]) as usize + 6 * row.right[2] as usize;
            assert_eq!(of, row.r as usize, "left order saturates the transvectant");
            assert_eq!(oh, row.r as usize, "right order saturates the transvectant");
            assert_eq!(df + dh, row.degree, "listed total degree");
        }
    }

    #[test]
    fn s8s4s4_table_bookkeeping_is_consistent() {
        let counts: Vec<usize> = (3u8..=11)
            .map(|d| T5_ROWS.iter().filter(|r| r.degree == d).count())
            .collect();
        assert_eq!(counts, [1, 6, 18, 36, 53, 45, 10, 2, 3]);

        let cov = s8_covariant_basis(&sample_f8()).unwrap();
        let pair = s4s4_covariant_basis(&sample_h4(), &sample_k4()).unwrap();
        for (pos, row) in T5_ROWS.iter().enumerate() {
            let (df, of) = s8_meta(&cov, row.left);
            let (mut dh, mut dk, mut oh) = (0u8, 0u8, 0usize);
            for &(id, exp) in row.right {
                let c = pair.get(&format!("h{id}")).unwrap();
                let CovariantDegree::Pair(d1, d2) = c.degree else {
                    panic!()
                };
                dh += exp * d1;
                dk += exp * d2;
                oh += exp as usize * c.order as usize;
            }
            assert_eq!(of, row.r as usize, "row {pos}: left order");
            assert_eq!(oh, row.r as usize, "row {pos}: right order");
            assert_eq!(df + dh + dk, row.degree, "row {pos}: total degree");
            assert!(df >= 1 && dh >= 1 && dk >= 1, "row {pos}: jointness");
        }
    }

    #[test]
    fn s8s4_invariants_vanish_and_scale_correctly() {
        let f = sample_f8();
        let h = sample_h4();
        assert!(joint_invariants_s8s4(&BinaryForm::zero(8), &h)
            .unwrap()
            .iter()
            .all(|v| v.is_zero()));
        assert!(joint_invariants_s8s4(&f, &BinaryForm::zero(4))
            .unwrap()
            .iter()
            .all(|v| v.is_zero()));
        assert!(joint_invariants_s8s4(&f, &BinaryForm::zero(8)).is_err());

        let base = joint_invariants_s8s4(&f, &h).unwrap();
        let scaled = joint_invariants_s8s4(&f.scale(&int(2)), &h.scale(&int(3))).unwrap();
        let cov = s8_covariant_basis(&f).unwrap();
        for (row, (b, s)) in T4_ROWS.iter().zip(base.iter().zip(&scaled)) {
            let (df, _) = s8_meta(&cov, row.left);
            let dh = row.right[0] + 2 * row.right[1] + 3 * row.right[2];
            let factor = int((1i64 << df) * 3i64.pow(u32::from(dh)));
            assert_eq!(*s, factor * b.clone());
        }
        // The degree-3 entry (second row) has multidegree (1, 2).
        assert_eq!(scaled[1], int(2 * 9) * base[1].clone());
    }

    #[test]
    fn s8s4s4_invariants_vanish_scale_and_mirror() {
        let f = sample_f8();
        let h = sample_h4();
        let k = sample_k4();
        for (zf, zh, zk) in [
            (BinaryForm::zero(8), h.clone(), k.clone()),
            (f.clone(), BinaryForm::zero(4), k.clone()),
            (f.clone(), h.clone(), BinaryForm::zero(4)),
        ] {
            assert!(joint_invariants_s8s4s4(&zf, &zh, &zk)
                .unwrap()
                .iter()
                .all(|v| v.is_zero()));
        }
        assert!(joint_invariants_s8s4s4(&f, &h, &BinaryForm::zero(2)).is_err());

        let base = joint_invariants_s8s4s4(&f, &h, &k).unwrap();
        let scaled =
            joint_invariants_s8s4s4(&f.scale(&int(2)), &h.scale(&int(3)), &k.scale(&int(5)))
                .unwrap();
        let cov = s8_covariant_basis(&f).unwrap();
        let pair = s4s4_covariant_basis(&h, &k).unwrap();
        for (row, (b, s)) in T5_ROWS.iter().zip(base.iter().zip(&scaled)) {
            let (df, _) = s8_meta(&cov, row.left);
            let (mut dh, mut dk) = (0u32, 0u32);
            for &(id, exp) in row.right {
                let CovariantDegree::Pair(d1, d2) = pair.get(&format!("h{id}")).unwrap().degree
                else {
                    panic!()
                };
                dh += u32::from(exp * d1);
                dk += u32::from(exp * d2);
            }
            let factor = int((1i64 << df) * 3i64.pow(dh) * 5i64.pow(dk));
            assert_eq!(*s, factor * b.clone());
        }

        // With h = k, entries that are mirror images under swapping the two
        // quartics take equal values.
        let same = joint_invariants_s8s4s4(&f, &h, &h).unwrap();
        for (i, j) in [(1usize, 3usize), (2, 4), (8, 13), (17, 19)] {
            assert_eq!(same[i], same[j], "mirror pair ({i}, {j})");
        }
    }

    /// From-scratch transvectant, sharing no code with the library routine.
    fn oracle_transvectant(f: &[S], g: &[S], r: usize) -> Vec<S> {
        // Forms as dense coefficient lists against u^(p-j) v^j.
        let du = |c: &[S]| -> Vec<S> {
            let p = c.len() - 1;
            (0..p).map(|j| int((p - j) as i64) * c[j].clone()).collect()
        };
        let dv = |c: &[S]| -> Vec<S> {
            (1..c.len()).map(|j| int(j as i64) * c[j].clone()).collect()
        };
        let mut binom = vec![S::one()];
        for i in 1..=r {
            binom.push(binom[i - 1].clone() * int((r - i + 1) as i64) / int(i as i64));
        }
        let mut acc: Vec<S> = Vec::new();
        for i in 0..=r {
            let mut a = f.to_vec();
            let mut b = g.to_vec();
            for _ in 0..(r - i) {
                a = du(&a);
            }
            for _ in 0..i {
                a = dv(&a);
            }
            for _ in 0..i {
                b = du(&b);
            }
            for _ in 0..(r - i) {
                b = dv(&b);
            }
            let mut prod = vec![S::zero(); a.len() + b.len() - 1];
            for (x, av) in a.iter().enumerate() {
                for (y, bv) in b.iter().enumerate() {
                    prod[x + y] = prod[x + y].clone() + av.clone() * bv.clone();
                }
            }
            let sign = if i % 2 == 0 { S::one() } else { -S::one() };
            if acc.is_empty() {
                acc = vec![S::zero(); prod.len()];
            }
            for (slot, term) in acc.iter_mut().zip(prod) {
                *slot = slot.clone() + sign.clone() * binom[i].clone() * term;
            }
        }
        acc
    }

    #[test]
    fn degree_three_joint_invariant_matches_independent_oracle() {
        let f = sample_f8();
        let h = sample_h4();
        let k = sample_k4();
        let vals = joint_invariants_s8s4s4(&f, &h, &k).unwrap();

        let hk = h.mul(&k);
        let oracle = oracle_transvectant(f.raw(), hk.raw(), 8);
        assert_eq!(oracle.len(), 1);
        assert_eq!(vals[0], oracle[0]);

        // Same cross-check for the first entry of the two-form table.
        let t4 = joint_invariants_s8s4(&f, &h).unwrap();
        let f3 = transvectant(&f, &f, 6);
        let oracle = oracle_transvectant(f3.raw(), h.raw(), 4);
        assert_eq!(t4[0], oracle[0]);
    }

    #[test]
    fn full_basis_of_trivial_tensors() {
        let zero = full_basis(&ElasticityTensor::<S>::zero()).unwrap();
        assert_eq!(zero.len(), 297);
        assert!(zero.iter().all(|(_, v)| v.is_zero()));

        let iso = full_basis(&isotropic(1, 1)).unwrap();
        assert_eq!(iso.get(InvariantId {
            family: InvariantFamily::H0Lambda,
            degree: 1,
            index: 1
        }), Some(&int(15)));
        assert_eq!(iso.get(InvariantId {
            family: InvariantFamily::H0Mu,
            degree: 1,
            index: 1
        }), Some(&int(15)));
        let nonzero = iso.iter().filter(|(_, v)| !v.is_zero()).count();
        assert_eq!(nonzero, 2);
    }

    #[test]
    fn full_basis_id_layout_follows_the_published_counts() {
        let v = full_basis(&tensor_from_voigt_seed(&[4, 1, -2, 3, 0, 2, 5, -1, 1, 2])).unwrap();
        for (deg, expected) in DEGREE_TOTALS {
            let n = v.iter().filter(|(id, _)| id.degree == deg).count();
            assert_eq!(n, expected, "degree {deg}");
        }
        use InvariantFamily::*;
        let sizes: Vec<usize> = InvariantFamily::ALL
            .iter()
            .map(|f| v.iter().filter(|(id, _)| id.family == *f).count())
            .collect();
        assert_eq!(sizes, [1, 1, 9, 2, 2, 4, 52, 52, 174]);
        let first = v.iter().next().unwrap().0;
        assert_eq!(first, InvariantId {
            family: H0Lambda,
            degree: 1,
            index: 1
        });
        // Ids are unique.
        let mut ids: Vec<InvariantId> = v.iter().map(|(id, _)| *id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 297);
    }

    #[test]
    fn invariant_values_of_real_tensors_are_exactly_real() {
        let v = full_basis(&tensor_from_voigt_seed(&[2, -3, 1, 4, -1, 5, 0, 2, -2, 3, 1])).unwrap();
        for (id, val) in v.iter() {
            assert!(val.im.is_zero(), "{id}");
        }
    }

    #[test]
    fn full_basis_is_exactly_rotation_invariant() {
        let samples = [
            tensor_from_voigt_seed(&[4, 1, -2, 3, 0, 2, 5, -1, 1, 2, -3]),
            tensor_from_voigt_seed(&[1, 0, 2, -1, 3, 1, -2, 4, 0, 1, 2, -1]),
        ];
        let rotations = [
            rotation_from_quaternion::<S>(&Quaternion::from_ints(1, 2, -1, 3).unwrap()),
            rotation_from_quaternion::<S>(&Quaternion::from_ints(2, 0, 1, -1).unwrap()),
        ];
        for c in &samples {
            let base = full_basis(c).unwrap();
            for g in &rotations {
                let rotated = full_basis(&rotate_elasticity(g, c)).unwrap();
                assert_eq!(base, rotated);
            }
        }
    }

    #[test]
    fn low_degree_simple_invariants_are_proportional_between_routes() {
        let mut ratio2: Option<S> = None;
        let mut ratio3: Option<S> = None;
        let mut checked2 = 0;
        let mut checked3 = 0;
        for s in 0..12i64 {
            let d = d4_from_seed(&[
                s + 1,
                -2 * s + 3,
                s * s % 7 - 3,
                2 * s - 5,
                -s - 1,
                3 * s % 5,
                s % 4 + 1,
                -3 * s + 2,
                s - 4,
                2 * s % 9 - 4,
            ]);
            let [j2, j3, ..] = trace_invariants_h4(&d);
            let f = cartan_pullback(&harmonic4_to_poly(&d));
            let f2 = transvectant(&f, &f, 8).coeff(0).clone();
            let f6 = transvectant(&transvectant(&f, &f, 4), &f, 8)
                .coeff(0)
                .clone();
            if !j2.is_zero() {
                let r = f2 / j2;
                match &ratio2 {
                    None => ratio2 = Some(r),
                    Some(prev) => assert_eq!(&r, prev),
                }
                checked2 += 1;
            }
            if !j3.is_zero() {
                let r = f6 / j3;
                match &ratio3 {
                    None => ratio3 = Some(r),
                    Some(prev) => assert_eq!(&r, prev),
                }
                checked3 += 1;
            }
        }
        assert!(checked2 >= 10 && checked3 >= 10);
    }

    #[test]
    fn scaling_one_harmonic_part_scales_families_by_multidegree() {
        use crate::harmonic::{reconstruct_elasticity, HarmonicParts};
        let c = tensor_from_voigt_seed(&[3, -1, 2, 1, 0, -2, 4, 1, -3, 2, 1]);
        let parts = harmonic_decompose_elasticity(&c);
        let a2 = HarmonicTensor2::new(parts.a.sym().scale(&int(2))).unwrap();
        let scaled = reconstruct_elasticity(&HarmonicParts {
            lambda0: parts.lambda0.clone(),
            mu0: parts.mu0.clone(),
            a: a2,
            b: parts.b.clone(),
            d4: parts.d4.clone(),
        });
        let v1 = full_basis(&c).unwrap();
        let v2 = full_basis(&scaled).unwrap();
        use InvariantFamily::*;
        for ((id, base), (_, after)) in v1.iter().zip(v2.iter()) {
            let expected: Option<u32> = match (id.family, id.degree, id.index) {
                (H0Lambda | H0Mu | H4Simple | H2bSimple, _, _) => Some(0),
                (H2aSimple, d, _) => Some(u32::from(d)),
                (H2H2Joint, 2, _) => Some(1),  // tr(ab)
                (H2H2Joint, 3, 1) => Some(2),  // tr(a²b)
                (H2H2Joint, 3, 2) => Some(1),  // tr(ab²)
                (H2H2Joint, 4, _) => Some(2),  // tr(a²b²)
                (H4H2bJoint, _, _) => Some(0),
                _ => None,
            };
            if let Some(e) = expected {
                assert_eq!(*after, int(1i64 << e) * base.clone(), "{id}");
            }
        }
        // Spot-check the joint families: degree-3 rows of known h-degree.
        let d3a2 = |v: &InvariantVector<S>| {
            v.get(InvariantId {
                family: H4H2aJoint,
                degree: 3,
                index: 2,
            })
            .cloned()
            .unwrap()
        };
        assert_eq!(d3a2(&v2), int(4) * d3a2(&v1));
        let t5first = |v: &InvariantVector<S>| {
            v.get(InvariantId {
                family: H4H2H2Joint,
                degree: 3,
                index: 1,
            })
            .cloned()
            .unwrap()
        };
        assert_eq!(t5first(&v2), int(2) * t5first(&v1));
    }

    #[test]
    fn orbit_reports_separate_rotations_from_genuine_differences() {
        let c = tensor_from_voigt_seed(&[2, 1, -1, 3, 0, 1, -2, 4, 1, 0, 2]);
        let g = rotation_from_quaternion::<S>(&Quaternion::from_ints(3, 1, -2, 1).unwrap());
        let same = orbit_equivalent(&c, &rotate_elasticity(&g, &c), 0.0).unwrap();
        assert!(same.equivalent);
        assert_eq!(same.max_discrepancy, 0.0);

        let doubled = tensor_from_voigt_seed(&[4, 2, -2, 6, 0, 2, -4, 8, 2, 0, 4]);
        let diff = orbit_equivalent(&c, &doubled, 0.0).unwrap();
        assert!(!diff.equivalent);
        assert!(diff.max_discrepancy > 0.0);
        assert!(diff.worst.is_some());

        // Float mode: a 1e-3 perturbation is flagged at tolerance 1e-9, a
        // genuine rotation passes.
        let fc: ElasticityTensor<FloatScalar> = {
            let mut m = [[FloatScalar::zero(); 6]; 6];
            let seed = [2.0, 1.0, -1.0, 3.0, 0.5, 1.0, -2.0, 4.0, 1.0, 0.25, 2.0];
            let mut it = seed.iter().cycle();
            for a in 0..6 {
                for b in a..6 {
                    let v = FloatScalar::new(*it.next().unwrap(), 0.0);
                    m[a][b] = v;
                    m[b][a] = v;
                }
            }
            voigt_to_tensor(&m).unwrap()
        };
        let gf = rotation_from_quaternion::<FloatScalar>(
            &Quaternion::from_ints(3, 1, -2, 1).unwrap(),
        );
        let rotated = orbit_equivalent(&fc, &rotate_elasticity(&gf, &fc), 1e-9).unwrap();
        assert!(rotated.equivalent, "max {}", rotated.max_discrepancy);

        let mut perturbed = tensor_to_voigt_float(&fc);
        perturbed[0][1] += 1e-3;
        perturbed[1][0] += 1e-3;
        let pc = voigt_to_tensor(&perturbed).unwrap();
        let verdict = orbit_equivalent(&fc, &pc, 1e-9).unwrap();
        assert!(!verdict.equivalent);
        assert!(verdict.max_discrepancy > 1e-9);
    }

    fn tensor_to_voigt_float(c: &ElasticityTensor<FloatScalar>) -> [[FloatScalar; 6]; 6] {
        crate::tensor::tensor_to_voigt(c)
    }
}
