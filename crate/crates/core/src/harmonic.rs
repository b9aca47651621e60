//! Tensor–polynomial correspondence and harmonic decomposition.
//!
//! A totally symmetric order-`n` tensor `T` corresponds to the homogeneous
//! degree-`n` polynomial `p(v) = T(v, …, v)`; the inverse is polarization.
//! Under this correspondence `Δp = n(n−1)·(poly of tr T)`, so traceless
//! symmetric tensors are exactly harmonic polynomials.
//!
//! Every homogeneous `p` of degree `n` splits uniquely as
//! `p = h₀ + q h₁ + ⋯ + qʳ h_r` with `q = x²+y²+z²`, `r = ⌊n/2⌋` and each
//! `h_k` harmonic of degree `n−2k`. [`harmonic_decompose_poly`] computes the
//! `h_k` by the closed recursion
//!
//! - `h_r = Δʳp / (2r+1)!` for even `n`, `h_r = 3!(r+1)/(2r+3)! · Δʳp` for
//!   odd `n`;
//! - `h_k = μ(k) Δᵏ(p − Σ_{j>k} qʲ h_j)` with
//!   `μ(k) = (2n−4k+1)!(n−k)! / ((2n−2k+1)! k! (n−2k)!)`.
//!
//! Applied to the total symmetrization of an elasticity tensor, this yields
//! the harmonic part `D`; together with the dilatation and Voigt
//! contractions it gives the quintuple `(λ, μ, a, b, D)` of
//! [`harmonic_decompose_elasticity`]. The scalar/deviator choice is frozen
//! as `λ = tr d`, `μ = tr v`, `a = (5 dev d − 4 dev v)/7`,
//! `b = (−2 dev d + 3 dev v)/7`; any invertible re-mixing is an equally
//! valid decomposition, so the choice is part of this library's contract.

use crate::arith::{big_ratio, factorial_big, multinomial3_big};
use crate::scalar::{ExactScalar, Scalar, FLOAT_STRUCT_TOL};
use crate::tensor::{
    array4_from_fn, dilatation, voigt_tensor, voigt_to_tensor, Array4, ElasticityTensor,
    HarmonicTensor2, HarmonicTensor4, Mat3, SymTensor2, TensorError,
};
use num::rational::BigRational;
use num::traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HarmonicError {
    #[error("expected a homogeneous polynomial of degree {expected}, found degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("monomial exponents {0:?} do not sum to the declared degree {1}")]
    BadExponents([u8; 3], usize),
    #[error("polynomial is not harmonic: its Laplacian is nonzero")]
    NotHarmonic,
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Homogeneous polynomial in `x, y, z`, stored sparsely as a map from
/// exponent triples `(i, j, k)` with `i+j+k = degree` to coefficients.
/// Exactly-zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousPoly3<S: Scalar> {
    degree: usize,
    coeffs: BTreeMap<[u8; 3], S>,
}

impl<S: Scalar> HomogeneousPoly3<S> {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(e: [u8; 3], c: S) -> Self {
        let degree = (e[0] + e[1] + e[2]) as usize;
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { degree, coeffs }
    }

    pub fn from_coeffs(
        degree: usize,
        coeffs: impl IntoIterator<Item = ([u8; 3], S)>,
    ) -> Result<Self, HarmonicError> {
        let mut p = Self::zero(degree);
        for (e, c) in coeffs {
            if (e[0] + e[1] + e[2]) as usize != degree {
                return Err(HarmonicError::BadExponents(e, degree));
            }
            p.accumulate(e, c);
        }
        Ok(p)
    }

    /// `x² + y² + z²`.
    pub fn quadratic_radius() -> Self {
        Self::from_coeffs(
            2,
            [
                ([2, 0, 0], S::one()),
                ([0, 2, 0], S::one()),
                ([0, 0, 2], S::one()),
            ],
        )
        .expect("exponents sum to 2")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, e: [u8; 3]) -> S {
        self.coeffs.get(&e).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8; 3], &S)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.coeffs
            .values()
            .map(|c| c.abs_f64())
            .fold(0.0, f64::max)
    }

    fn accumulate(&mut self, e: [u8; 3], c: S) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    slot.insert(sum);
                }
            }
        }
    }

    /// Sum of polynomials of the same degree.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "degrees must match");
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.accumulate(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "degrees must match");
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.accumulate(*e, -c.clone());
        }
        out
    }

    pub fn scale(&self, t: &S) -> Self {
        let mut out = Self::zero(self.degree);
        for (e, c) in &self.coeffs {
            out.accumulate(*e, c.clone() * t.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                out.accumulate(e, c1.clone() * c2.clone());
            }
        }
        out
    }

    /// `∂²/∂x² + ∂²/∂y² + ∂²/∂z²`; degree drops by 2 (zero polynomial of
    /// degree 0 below degree 2).
    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(self.degree.saturating_sub(2));
        for (e, c) in &self.coeffs {
            for axis in 0..3 {
                let n = e[axis];
                if n >= 2 {
                    let mut de = *e;
                    de[axis] -= 2;
                    let factor = S::from_int(i64::from(n) * i64::from(n - 1));
                    out.accumulate(de, c.clone() * factor);
                }
            }
        }
        out
    }

    pub fn eval(&self, v: &[S; 3]) -> S {
        let mut acc = S::zero();
        for (e, c) in &self.coeffs {
            let mut term = c.clone();
            for axis in 0..3 {
                for _ in 0..e[axis] {
                    term = term * v[axis].clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Substitutes `x_i ← Σ_j m[i][j] x_j`. For a rotation (or any
    /// orthogonal matrix) `g`, the group action `g·p = p ∘ g⁻¹` is
    /// `compose_linear` with `g⁻¹ = gᵀ`.
    pub fn compose_linear(&self, m: &Mat3<S>) -> Self {
        let linear = |row: usize| {
            Self::from_coeffs(
                1,
                [
                    ([1, 0, 0], m[row][0].clone()),
                    ([0, 1, 0], m[row][1].clone()),
                    ([0, 0, 1], m[row][2].clone()),
                ],
            )
            .expect("exponents sum to 1")
        };
        let mut pows: [Vec<Self>; 3] = [vec![], vec![], vec![]];
        for axis in 0..3 {
            let max = self.coeffs.keys().map(|e| e[axis]).max().unwrap_or(0);
            let mut list = vec![Self::from_coeffs(0, [([0, 0, 0], S::one())]).unwrap()];
            let base = linear(axis);
            for t in 1..=max as usize {
                let next = list[t - 1].mul(&base);
                list.push(next);
            }
            pows[axis] = list;
        }
        let mut out = Self::zero(self.degree);
        for (e, c) in &self.coeffs {
            let term = pows[0][e[0] as usize]
                .mul(&pows[1][e[1] as usize])
                .mul(&pows[2][e[2] as usize]);
            out = out.add(&term.scale(c));
        }
        out
    }
}

/// Action of a rotation on polynomials: `(g·p)(v) = p(g⁻¹ v)`.
pub fn rotate_poly<S: Scalar>(
    g: &crate::tensor::Rotation<S>,
    p: &HomogeneousPoly3<S>,
) -> HomogeneousPoly3<S> {
    p.compose_linear(g.inverse().mat())
}

/// Homogeneous polynomial with identically zero Laplacian.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicPoly3<S: Scalar> {
    p: HomogeneousPoly3<S>,
}

impl<S: Scalar> HarmonicPoly3<S> {
    pub fn new(p: HomogeneousPoly3<S>) -> Result<Self, HarmonicError> {
        let lap = p.laplacian();
        let ok = if S::EXACT {
            lap.is_zero()
        } else {
            lap.max_abs_f64() <= FLOAT_STRUCT_TOL * (1.0 + p.max_abs_f64())
        };
        if !ok {
            return Err(HarmonicError::NotHarmonic);
        }
        Ok(Self { p })
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            p: HomogeneousPoly3::zero(degree),
        }
    }

    pub fn poly(&self) -> &HomogeneousPoly3<S> {
        &self.p
    }

    pub fn into_poly(self) -> HomogeneousPoly3<S> {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.p.degree()
    }
}

/// `p(v) = T(v, v)` for a symmetric 2-tensor.
pub fn sym2_to_poly<S: Scalar>(t: &SymTensor2<S>) -> HomogeneousPoly3<S> {
    let mut out = HomogeneousPoly3::zero(2);
    for i in 0..3 {
        for j in 0..3 {
            let mut e = [0u8; 3];
            e[i] += 1;
            e[j] += 1;
            out.accumulate(e, t.get(i, j).clone());
        }
    }
    out
}

/// `p(v) = T(v, v, v, v)` for a totally symmetric 4-tensor.
pub fn sym4_to_poly<S: Scalar>(c: &Array4<S>) -> HomogeneousPoly3<S> {
    let mut out = HomogeneousPoly3::zero(4);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let mut e = [0u8; 3];
                    e[i] += 1;
                    e[j] += 1;
                    e[k] += 1;
                    e[l] += 1;
                    out.accumulate(e, c[i][j][k][l].clone());
                }
            }
        }
    }
    out
}

/// Polynomial of the harmonic 4-tensor `D`.
pub fn harmonic4_to_poly<S: Scalar>(d: &HarmonicTensor4<S>) -> HarmonicPoly3<S> {
    HarmonicPoly3::new(sym4_to_poly(d.components()))
        .expect("traceless symmetric tensors give harmonic polynomials")
}

fn multinomial_inv<S: Scalar>(e: [u8; 3]) -> S {
    S::from_big_rational(&big_ratio(num::BigInt::one(), multinomial3_big(e)))
}

/// Polarization inverse at degree 2: `T_ij = coeff / multinomial`.
pub fn poly_to_sym2<S: Scalar>(p: &HomogeneousPoly3<S>) -> Result<SymTensor2<S>, HarmonicError> {
    if p.degree() != 2 {
        return Err(HarmonicError::WrongDegree {
            expected: 2,
            found: p.degree(),
        });
    }
    let mut m: Mat3<S> = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
    for (i, row) in m.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let mut e = [0u8; 3];
            e[i] += 1;
            e[j] += 1;
            *slot = p.coeff(e) * multinomial_inv::<S>(e);
        }
    }
    Ok(SymTensor2::new(m).expect("polarization yields a symmetric matrix"))
}

/// Polarization inverse at degree 4.
pub fn poly_to_sym4<S: Scalar>(p: &HomogeneousPoly3<S>) -> Result<Array4<S>, HarmonicError> {
    if p.degree() != 4 {
        return Err(HarmonicError::WrongDegree {
            expected: 4,
            found: p.degree(),
        });
    }
    Ok(array4_from_fn(|i, j, k, l| {
        let mut e = [0u8; 3];
        e[i] += 1;
        e[j] += 1;
        e[k] += 1;
        e[l] += 1;
        p.coeff(e) * multinomial_inv::<S>(e)
    }))
}

fn scalar_from_factorials<S: Scalar>(
    num_parts: &[usize],
    den_parts: &[usize],
    extra_num: i64,
) -> S {
    let mut num = num::BigInt::from(extra_num);
    for &n in num_parts {
        num *= factorial_big(n);
    }
    let mut den = num::BigInt::one();
    for &n in den_parts {
        den *= factorial_big(n);
    }
    S::from_big_rational(&big_ratio(num, den))
}

/// Splits homogeneous `p` into `[h₀, h₁, …, h_r]` with
/// `p = Σ_k qᵏ h_k`, each `h_k` harmonic of degree `n − 2k`.
pub fn harmonic_decompose_poly<S: Scalar>(
    p: &HomogeneousPoly3<S>,
) -> Result<Vec<HarmonicPoly3<S>>, HarmonicError> {
    let n = p.degree();
    let r = n / 2;

    let mut delta_r = p.clone();
    for _ in 0..r {
        delta_r = delta_r.laplacian();
    }
    let top_factor: S = if n % 2 == 0 {
        scalar_from_factorials(&[], &[2 * r + 1], 1)
    } else {
        scalar_from_factorials(&[], &[2 * r + 3], 6 * (r as i64 + 1))
    };

    let mut hs: Vec<HomogeneousPoly3<S>> = (0..=r)
        .map(|k| HomogeneousPoly3::zero(n - 2 * k))
        .collect();
    hs[r] = delta_r.scale(&top_factor);

    let q = HomogeneousPoly3::<S>::quadratic_radius();
    let mut q_pows = vec![HomogeneousPoly3::from_coeffs(0, [([0, 0, 0], S::one())]).unwrap()];
    for j in 1..=r {
        let next = q_pows[j - 1].mul(&q);
        q_pows.push(next);
    }

    for k in (0..r).rev() {
        let mut tail = p.clone();
        for j in (k + 1)..=r {
            tail = tail.sub(&q_pows[j].mul(&hs[j]));
        }
        let mut delta_k = tail;
        for _ in 0..k {
            delta_k = delta_k.laplacian();
        }
        let mu: S = scalar_from_factorials(
            &[2 * n - 4 * k + 1, n - k],
            &[2 * n - 2 * k + 1, k, n - 2 * k],
            1,
        );
        hs[k] = delta_k.scale(&mu);
    }

    hs.into_iter().map(HarmonicPoly3::new).collect()
}

/// The harmonic parts `(λ, μ, a, b, D)` of an elasticity tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicParts<S: Scalar> {
    pub lambda0: S,
    pub mu0: S,
    pub a: HarmonicTensor2<S>,
    pub b: HarmonicTensor2<S>,
    pub d4: HarmonicTensor4<S>,
}

/// Total symmetrization of an elasticity tensor. Thanks to the minor and
/// major symmetries the 24-term average collapses to three pair partitions.
pub(crate) fn totally_symmetric_part<S: Scalar>(c: &ElasticityTensor<S>) -> Array4<S> {
    let third = S::from_ratio(1, 3);
    array4_from_fn(|i, j, k, l| {
        (c.get(i, j, k, l).clone() + c.get(i, k, j, l).clone() + c.get(i, l, j, k).clone())
            * third.clone()
    })
}

/// Harmonic decomposition of an elasticity tensor with the frozen choices
/// `λ = tr d`, `μ = tr v`, `a = (5 dev d − 4 dev v)/7`,
/// `b = (−2 dev d + 3 dev v)/7`, and `D` the harmonic part of the total
/// symmetrization of `C`.
pub fn harmonic_decompose_elasticity<S: Scalar>(c: &ElasticityTensor<S>) -> HarmonicParts<S> {
    let d = dilatation(c);
    let v = voigt_tensor(c);
    let lambda0 = d.trace();
    let mu0 = v.trace();
    let dev_d = d.deviator();
    let dev_v = v.deviator();
    let seventh = S::from_ratio(1, 7);
    let a = dev_d
        .scale(&S::from_int(5))
        .sub(&dev_v.scale(&S::from_int(4)))
        .scale(&seventh);
    let b = dev_v
        .scale(&S::from_int(3))
        .sub(&dev_d.scale(&S::from_int(2)))
        .scale(&seventh);
    let a = HarmonicTensor2::new(a).expect("deviator combinations are traceless");
    let b = HarmonicTensor2::new(b).expect("deviator combinations are traceless");

    let p = sym4_to_poly(&totally_symmetric_part(c));
    let hs = harmonic_decompose_poly(&p).expect("decomposition of a degree-4 polynomial");
    let d4_arr = poly_to_sym4(hs[0].poly()).expect("h0 has degree 4");
    let d4 = HarmonicTensor4::new(d4_arr).expect("h0 is harmonic");

    HarmonicParts {
        lambda0,
        mu0,
        a,
        b,
        d4,
    }
}

/// The 21 coordinates used for the reconstruction matrix: the two scalars,
/// the five free components (00, 11, 01, 02, 12) of each deviator, and the
/// nine free components of `D` indexed by the multisets
/// 0000, 0001, 0002, 0011, 0012, 0111, 0112, 1111, 1112.
const DEV_SLOTS: [(usize, usize); 5] = [(0, 0), (1, 1), (0, 1), (0, 2), (1, 2)];
const H4_SLOTS: [[usize; 4]; 9] = [
    [0, 0, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 0, 2],
    [0, 0, 1, 1],
    [0, 0, 1, 2],
    [0, 1, 1, 1],
    [0, 1, 1, 2],
    [1, 1, 1, 1],
    [1, 1, 1, 2],
];

fn parts_to_coords<S: Scalar>(parts: &HarmonicParts<S>) -> Vec<S> {
    let mut coords = Vec::with_capacity(21);
    coords.push(parts.lambda0.clone());
    coords.push(parts.mu0.clone());
    for &(i, j) in &DEV_SLOTS {
        coords.push(parts.a.get(i, j).clone());
    }
    for &(i, j) in &DEV_SLOTS {
        coords.push(parts.b.get(i, j).clone());
    }
    for &[i, j, k, l] in &H4_SLOTS {
        coords.push(parts.d4.get(i, j, k, l).clone());
    }
    coords
}

/// Exact Gauss–Jordan inversion; `None` for singular input.
fn invert_rational_matrix(mut m: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n).find(|&row| !m[row][col].is_zero())?;
        m.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let pivot = m[col][col].clone();
        for j in 0..n {
            m[col][j] /= pivot.clone();
            inv[col][j] /= pivot.clone();
        }
        for row in 0..n {
            if row == col || m[row][col].is_zero() {
                continue;
            }
            let factor = m[row][col].clone();
            for j in 0..n {
                let mj = m[col][j].clone() * factor.clone();
                m[row][j] -= mj;
                let ij = inv[col][j].clone() * factor.clone();
                inv[row][j] -= ij;
            }
        }
    }
    Some(inv)
}

/// Inverse of the 21×21 matrix of `harmonic_decompose_elasticity` on the
/// Voigt unit basis, computed once in exact arithmetic and shared by both
/// scalar modes.
fn reconstruction_matrix() -> &'static Vec<Vec<BigRational>> {
    static MATRIX: OnceLock<Vec<Vec<BigRational>>> = OnceLock::new();
    MATRIX.get_or_init(|| {
        let mut columns = Vec::with_capacity(21);
        for a in 0..6 {
            for b in a..6 {
                let m: [[ExactScalar; 6]; 6] = std::array::from_fn(|i| {
                    std::array::from_fn(|j| {
                        if (i, j) == (a, b) || (i, j) == (b, a) {
                            ExactScalar::one()
                        } else {
                            ExactScalar::zero()
                        }
                    })
                });
                let c = voigt_to_tensor(&m).expect("unit Voigt matrix is symmetric");
                let coords = parts_to_coords(&harmonic_decompose_elasticity(&c));
                columns.push(coords);
            }
        }
        let matrix: Vec<Vec<BigRational>> = (0..21)
            .map(|row| {
                (0..21)
                    .map(|col| {
                        let v = &columns[col][row];
                        assert!(v.im.is_zero(), "decomposition of real input is real");
                        v.re.clone()
                    })
                    .collect()
            })
            .collect();
        invert_rational_matrix(matrix).expect("harmonic decomposition is a linear isomorphism")
    })
}

/// Linear inverse of [`harmonic_decompose_elasticity`]: rebuilds the unique
/// elasticity tensor with the given harmonic parts.
pub fn reconstruct_elasticity<S: Scalar>(parts: &HarmonicParts<S>) -> ElasticityTensor<S> {
    let inv = reconstruction_matrix();
    let coords = parts_to_coords(parts);
    let mut voigt_flat = Vec::with_capacity(21);
    for row in inv {
        let mut acc = S::zero();
        for (entry, coord) in row.iter().zip(&coords) {
            acc = acc + S::from_big_rational(entry) * coord.clone();
        }
        voigt_flat.push(acc);
    }
    let mut m: [[S; 6]; 6] = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
    let mut it = voigt_flat.into_iter();
    for a in 0..6 {
        for b in a..6 {
            let v = it.next().unwrap();
            m[a][b] = v.clone();
            m[b][a] = v;
        }
    }
    voigt_to_tensor(&m).expect("reconstructed Voigt matrix is symmetric")
}
