//! Elasticity tensors, symmetric/harmonic tensors, rotations, and the SO(3)
//! action on them.
//!
//! Index conventions: all tensor indices run over `0..3`. The elasticity
//! tensor is stored as the full 81-entry array with the minor and major
//! symmetries enforced on construction, so contraction code can stay
//! index-literal.
//!
//! Voigt convention (frozen): slot order `(11, 22, 33, 23, 13, 12)` mapped to
//! rows/columns `1..6`, raw components with no factor-2 or √2 weighting.

use crate::scalar::{Scalar, FLOAT_ROTATION_TOL, FLOAT_STRUCT_TOL};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Zero;
use std::array::from_fn;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TensorError {
    #[error("component ({0},{1},{2},{3}) violates the minor/major index symmetries")]
    BrokenIndexSymmetry(usize, usize, usize, usize),
    #[error("matrix entry ({0},{1}) is not symmetric")]
    AsymmetricMatrix(usize, usize),
    #[error("4-tensor is not totally symmetric at ({0},{1},{2},{3})")]
    NotTotallySymmetric(usize, usize, usize, usize),
    #[error("tensor trace is not zero")]
    NonzeroTrace,
    #[error("matrix is not a rotation: requires gᵀg = I and det g = 1")]
    NotARotation,
    #[error("the zero quaternion does not define a rotation")]
    ZeroQuaternion,
}

pub(crate) type Mat3<S> = [[S; 3]; 3];

pub(crate) fn mat3_from_fn<S>(mut f: impl FnMut(usize, usize) -> S) -> Mat3<S> {
    from_fn(|i| from_fn(|j| f(i, j)))
}

pub(crate) fn mat3_identity<S: Scalar>() -> Mat3<S> {
    mat3_from_fn(|i, j| if i == j { S::one() } else { S::zero() })
}

pub(crate) fn mat3_mul<S: Scalar>(a: &Mat3<S>, b: &Mat3<S>) -> Mat3<S> {
    mat3_from_fn(|i, j| {
        (0..3)
            .map(|p| a[i][p].clone() * b[p][j].clone())
            .fold(S::zero(), |acc, t| acc + t)
    })
}

pub(crate) fn mat3_transpose<S: Clone>(a: &Mat3<S>) -> Mat3<S> {
    mat3_from_fn(|i, j| a[j][i].clone())
}

pub(crate) fn mat3_trace<S: Scalar>(a: &Mat3<S>) -> S {
    a[0][0].clone() + a[1][1].clone() + a[2][2].clone()
}

pub(crate) fn mat3_det<S: Scalar>(a: &Mat3<S>) -> S {
    let term = |i: usize, j: usize, k: usize| {
        a[0][i].clone() * (a[1][j].clone() * a[2][k].clone() - a[1][k].clone() * a[2][j].clone())
    };
    term(0, 1, 2) - term(1, 0, 2) + term(2, 0, 1)
}

pub(crate) type Array4<S> = [[[[S; 3]; 3]; 3]; 3];

pub(crate) fn array4_from_fn<S>(
    mut f: impl FnMut(usize, usize, usize, usize) -> S,
) -> Array4<S> {
    from_fn(|i| from_fn(|j| from_fn(|k| from_fn(|l| f(i, j, k, l)))))
}

/// Float-mode structural tolerance scaled to the magnitude of the data, so
/// that checks behave the same for stiffnesses given in Pa or in GPa. Exact
/// mode never consults the tolerance.
fn scaled_tol<'a, S: Scalar + 'a>(entries: impl Iterator<Item = &'a S>) -> f64 {
    if S::EXACT {
        return 0.0;
    }
    let scale = entries.map(|s| s.abs_f64()).fold(0.0f64, f64::max);
    FLOAT_STRUCT_TOL * (1.0 + scale)
}

fn array4_entries<S>(c: &Array4<S>) -> impl Iterator<Item = &S> {
    c.iter().flatten().flatten().flatten()
}

fn array4_is_totally_symmetric<S: Scalar>(c: &Array4<S>, tol: f64) -> Result<(), TensorError> {
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let mut s = [i, j, k, l];
                    s.sort_unstable();
                    let canon = &c[s[0]][s[1]][s[2]][s[3]];
                    if !c[i][j][k][l].eq_within(canon, tol) {
                        return Err(TensorError::NotTotallySymmetric(i, j, k, l));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Elasticity tensor: 3×3×3×3 with the minor symmetries
/// `C_ijkl = C_jikl = C_ijlk` and the major symmetry `C_ijkl = C_klij`
/// (21 independent components).
#[derive(Debug, Clone, PartialEq)]
pub struct ElasticityTensor<S: Scalar> {
    c: Array4<S>,
}

impl<S: Scalar> ElasticityTensor<S> {
    /// Validates both index symmetries (exactly in exact mode, within a
    /// scale-relative [`FLOAT_STRUCT_TOL`] in float mode). Float-mode input
    /// is symmetrized over the 8-element symmetry group so downstream
    /// identities are not polluted by asymmetric rounding noise.
    pub fn new(c: Array4<S>) -> Result<Self, TensorError> {
        let tol = scaled_tol::<S>(array4_entries(&c));
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let v = &c[i][j][k][l];
                        if !v.eq_within(&c[j][i][k][l], tol)
                            || !v.eq_within(&c[i][j][l][k], tol)
                            || !v.eq_within(&c[k][l][i][j], tol)
                        {
                            return Err(TensorError::BrokenIndexSymmetry(i, j, k, l));
                        }
                    }
                }
            }
        }
        if S::EXACT {
            return Ok(Self { c });
        }
        let eighth = S::from_ratio(1, 8);
        let sym = array4_from_fn(|i, j, k, l| {
            let orbit = [
                (i, j, k, l),
                (j, i, k, l),
                (i, j, l, k),
                (j, i, l, k),
                (k, l, i, j),
                (l, k, i, j),
                (k, l, j, i),
                (l, k, j, i),
            ];
            orbit
                .iter()
                .map(|&(a, b, p, q)| c[a][b][p][q].clone())
                .fold(S::zero(), |acc, t| acc + t)
                * eighth.clone()
        });
        Ok(Self { c: sym })
    }

    pub fn zero() -> Self {
        Self {
            c: array4_from_fn(|_, _, _, _| S::zero()),
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &S {
        &self.c[i][j][k][l]
    }

    pub fn components(&self) -> &Array4<S> {
        &self.c
    }
}

/// Symmetric 3×3 tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTensor2<S: Scalar> {
    m: Mat3<S>,
}

impl<S: Scalar> SymTensor2<S> {
    pub fn new(m: Mat3<S>) -> Result<Self, TensorError> {
        let tol = scaled_tol::<S>(m.iter().flatten());
        for i in 0..3 {
            for j in (i + 1)..3 {
                if !m[i][j].eq_within(&m[j][i], tol) {
                    return Err(TensorError::AsymmetricMatrix(i, j));
                }
            }
        }
        if S::EXACT {
            return Ok(Self { m });
        }
        let half = S::from_ratio(1, 2);
        let sym = mat3_from_fn(|i, j| (m[i][j].clone() + m[j][i].clone()) * half.clone());
        Ok(Self { m: sym })
    }

    pub fn zero() -> Self {
        Self {
            m: mat3_from_fn(|_, _| S::zero()),
        }
    }

    pub fn identity() -> Self {
        Self {
            m: mat3_identity(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.m[i][j]
    }

    pub fn mat(&self) -> &Mat3<S> {
        &self.m
    }

    pub fn trace(&self) -> S {
        mat3_trace(&self.m)
    }

    /// Trace-free part `s − (tr s / 3) I`.
    pub fn deviator(&self) -> Self {
        let third_trace = self.trace() * S::from_ratio(1, 3);
        Self {
            m: mat3_from_fn(|i, j| {
                if i == j {
                    self.m[i][j].clone() - third_trace.clone()
                } else {
                    self.m[i][j].clone()
                }
            }),
        }
    }

    pub fn scale(&self, t: &S) -> Self {
        Self {
            m: mat3_from_fn(|i, j| self.m[i][j].clone() * t.clone()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            m: mat3_from_fn(|i, j| self.m[i][j].clone() + other.m[i][j].clone()),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            m: mat3_from_fn(|i, j| self.m[i][j].clone() - other.m[i][j].clone()),
        }
    }
}

/// Traceless symmetric 3×3 tensor (harmonic of order 2).
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicTensor2<S: Scalar> {
    s: SymTensor2<S>,
}

impl<S: Scalar> HarmonicTensor2<S> {
    pub fn new(s: SymTensor2<S>) -> Result<Self, TensorError> {
        let tol = scaled_tol::<S>(s.mat().iter().flatten());
        if !s.trace().is_zero_within(tol) {
            return Err(TensorError::NonzeroTrace);
        }
        Ok(Self { s })
    }

    pub fn zero() -> Self {
        Self {
            s: SymTensor2::zero(),
        }
    }

    pub fn sym(&self) -> &SymTensor2<S> {
        &self.s
    }

    pub fn mat(&self) -> &Mat3<S> {
        self.s.mat()
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        self.s.get(i, j)
    }
}

/// Totally symmetric, totally traceless 3×3×3×3 tensor (harmonic of order 4,
/// 9 independent components).
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicTensor4<S: Scalar> {
    c: Array4<S>,
}

impl<S: Scalar> HarmonicTensor4<S> {
    pub fn new(c: Array4<S>) -> Result<Self, TensorError> {
        let tol = scaled_tol::<S>(array4_entries(&c));
        array4_is_totally_symmetric(&c, tol)?;
        for k in 0..3 {
            for l in 0..3 {
                let tr = (0..3)
                    .map(|i| c[i][i][k][l].clone())
                    .fold(S::zero(), |acc, t| acc + t);
                if !tr.is_zero_within(tol) {
                    return Err(TensorError::NonzeroTrace);
                }
            }
        }
        Ok(Self { c })
    }

    pub fn zero() -> Self {
        Self {
            c: array4_from_fn(|_, _, _, _| S::zero()),
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &S {
        &self.c[i][j][k][l]
    }

    pub fn components(&self) -> &Array4<S> {
        &self.c
    }
}

/// Proper rotation: `gᵀg = I` and `det g = 1`, exact in exact mode and
/// within [`FLOAT_ROTATION_TOL`] in float mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotation<S: Scalar> {
    m: Mat3<S>,
}

impl<S: Scalar> Rotation<S> {
    pub fn new(m: Mat3<S>) -> Result<Self, TensorError> {
        let gtg = mat3_mul(&mat3_transpose(&m), &m);
        let id = mat3_identity::<S>();
        for i in 0..3 {
            for j in 0..3 {
                if !gtg[i][j].eq_within(&id[i][j], FLOAT_ROTATION_TOL) {
                    return Err(TensorError::NotARotation);
                }
            }
        }
        if !mat3_det(&m).eq_within(&S::one(), FLOAT_ROTATION_TOL) {
            return Err(TensorError::NotARotation);
        }
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        Self {
            m: mat3_identity(),
        }
    }

    pub fn mat(&self) -> &Mat3<S> {
        &self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.m[i][j]
    }

    /// The inverse rotation (transpose, since `g` is orthogonal).
    pub fn inverse(&self) -> Self {
        Self {
            m: mat3_transpose(&self.m),
        }
    }

    /// Group product `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            m: mat3_mul(&self.m, &other.m),
        }
    }
}

/// Nonzero rational quaternion; its associated rotation matrix has exactly
/// rational entries, which makes exhaustive exact SO(3) sampling possible
/// without trigonometry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quaternion {
    w: BigRational,
    x: BigRational,
    y: BigRational,
    z: BigRational,
}

impl Quaternion {
    pub fn new(
        w: BigRational,
        x: BigRational,
        y: BigRational,
        z: BigRational,
    ) -> Result<Self, TensorError> {
        if w.is_zero() && x.is_zero() && y.is_zero() && z.is_zero() {
            return Err(TensorError::ZeroQuaternion);
        }
        Ok(Self { w, x, y, z })
    }

    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Result<Self, TensorError> {
        let r = |n: i64| BigRational::from_integer(BigInt::from(n));
        Self::new(r(w), r(x), r(y), r(z))
    }

    pub fn norm_sqr(&self) -> BigRational {
        self.w.clone() * self.w.clone()
            + self.x.clone() * self.x.clone()
            + self.y.clone() * self.y.clone()
            + self.z.clone() * self.z.clone()
    }
}

/// Standard quaternion-to-matrix formula divided by the squared norm; `q`
/// and `−q` give the same rotation.
pub fn rotation_from_quaternion<S: Scalar>(q: &Quaternion) -> Rotation<S> {
    let n = q.norm_sqr();
    let (w, x, y, z) = (&q.w, &q.x, &q.y, &q.z);
    let two = BigRational::from_integer(BigInt::from(2));
    let sq = |a: &BigRational| a.clone() * a.clone();
    let entries: Mat3<BigRational> = [
        [
            sq(w) + sq(x) - sq(y) - sq(z),
            two.clone() * (x.clone() * y.clone() - w.clone() * z.clone()),
            two.clone() * (x.clone() * z.clone() + w.clone() * y.clone()),
        ],
        [
            two.clone() * (x.clone() * y.clone() + w.clone() * z.clone()),
            sq(w) - sq(x) + sq(y) - sq(z),
            two.clone() * (y.clone() * z.clone() - w.clone() * x.clone()),
        ],
        [
            two.clone() * (x.clone() * z.clone() - w.clone() * y.clone()),
            two.clone() * (y.clone() * z.clone() + w.clone() * x.clone()),
            sq(w) - sq(x) - sq(y) + sq(z),
        ],
    ];
    let m = mat3_from_fn(|i, j| S::from_big_rational(&(entries[i][j].clone() / n.clone())));
    Rotation::new(m).expect("quaternion matrix is orthogonal with determinant 1")
}

/// The SO(3) action on elasticity tensors:
/// `C̄^{ijkl} = g^i_p g^j_q g^k_r g^l_s C^{pqrs}`, computed one index at a
/// time (the four-fold direct summation is kept as a test oracle).
pub fn rotate_elasticity<S: Scalar>(
    g: &Rotation<S>,
    c: &ElasticityTensor<S>,
) -> ElasticityTensor<S> {
    let m = g.mat();
    let contract =
        |f: &dyn Fn(usize, usize, usize, usize) -> S| array4_from_fn(|i, j, k, l| f(i, j, k, l));
    let c0 = c.components();
    let t1 = contract(&|i, j, k, l| {
        (0..3)
            .map(|p| m[i][p].clone() * c0[p][j][k][l].clone())
            .fold(S::zero(), |acc, t| acc + t)
    });
    let t2 = contract(&|i, j, k, l| {
        (0..3)
            .map(|p| m[j][p].clone() * t1[i][p][k][l].clone())
            .fold(S::zero(), |acc, t| acc + t)
    });
    let t3 = contract(&|i, j, k, l| {
        (0..3)
            .map(|p| m[k][p].clone() * t2[i][j][p][l].clone())
            .fold(S::zero(), |acc, t| acc + t)
    });
    let t4 = contract(&|i, j, k, l| {
        (0..3)
            .map(|p| m[l][p].clone() * t3[i][j][k][p].clone())
            .fold(S::zero(), |acc, t| acc + t)
    });
    ElasticityTensor::new(t4).expect("rotation preserves the index symmetries")
}

/// Congruence action `g s gᵀ` on symmetric 2-tensors; preserves the trace.
pub fn act_on_sym2<S: Scalar>(g: &Rotation<S>, s: &SymTensor2<S>) -> SymTensor2<S> {
    let gs = mat3_mul(g.mat(), s.mat());
    let gsgt = mat3_mul(&gs, &mat3_transpose(g.mat()));
    SymTensor2::new(gsgt).expect("congruence preserves symmetry")
}

/// Voigt slot order: pairs `(11, 22, 33, 23, 13, 12)` in 0-based indices.
pub const VOIGT_PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1)];

pub(crate) fn voigt_slot(i: usize, j: usize) -> usize {
    match (i.min(j), i.max(j)) {
        (0, 0) => 0,
        (1, 1) => 1,
        (2, 2) => 2,
        (1, 2) => 3,
        (0, 2) => 4,
        (0, 1) => 5,
        _ => unreachable!("tensor indices run over 0..3"),
    }
}

/// Builds the elasticity tensor from a symmetric 6×6 Voigt matrix (raw
/// components, no weighting).
pub fn voigt_to_tensor<S: Scalar>(m: &[[S; 6]; 6]) -> Result<ElasticityTensor<S>, TensorError> {
    let tol = scaled_tol::<S>(m.iter().flatten());
    for a in 0..6 {
        for b in (a + 1)..6 {
            if !m[a][b].eq_within(&m[b][a], tol) {
                return Err(TensorError::AsymmetricMatrix(a, b));
            }
        }
    }
    ElasticityTensor::new(array4_from_fn(|i, j, k, l| {
        m[voigt_slot(i, j)][voigt_slot(k, l)].clone()
    }))
}

/// Inverse of [`voigt_to_tensor`].
pub fn tensor_to_voigt<S: Scalar>(c: &ElasticityTensor<S>) -> [[S; 6]; 6] {
    from_fn(|a| {
        from_fn(|b| {
            let (i, j) = VOIGT_PAIRS[a];
            let (k, l) = VOIGT_PAIRS[b];
            c.get(i, j, k, l).clone()
        })
    })
}

/// Dilatation tensor `d_ij = Σ_k C_kkij`.
pub fn dilatation<S: Scalar>(c: &ElasticityTensor<S>) -> SymTensor2<S> {
    SymTensor2::new(mat3_from_fn(|i, j| {
        (0..3)
            .map(|k| c.get(k, k, i, j).clone())
            .fold(S::zero(), |acc, t| acc + t)
    }))
    .expect("contraction of a minor-symmetric tensor is symmetric")
}

/// Voigt tensor `v_ij = Σ_k C_kikj`.
pub fn voigt_tensor<S: Scalar>(c: &ElasticityTensor<S>) -> SymTensor2<S> {
    SymTensor2::new(mat3_from_fn(|i, j| {
        (0..3)
            .map(|k| c.get(k, i, k, j).clone())
            .fold(S::zero(), |acc, t| acc + t)
    }))
    .expect("contraction of a major-symmetric tensor is symmetric")
}
