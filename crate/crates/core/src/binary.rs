//! Binary forms, the SL(2,ℂ) action, transvectants, and the Cartan maps.
//!
//! A binary form of degree `p` is stored by its raw coefficients `c₀…c_p`
//! against the monomials `u^{p−j} v^j`. The binomially weighted coefficient
//! `a_k = c_k / binom(p,k)` multiplies `binom(p,k) u^{p−k} v^k`; this index
//! order is frozen here because classical sources mix both orders.
//!
//! The transvectant is the unnormalized bi-differential expression
//!
//! `(f,g)^r = Σ_{i=0}^{r} (−1)^i binom(r,i) ∂^r f/∂u^{r−i}∂v^i ·
//! ∂^r g/∂u^i∂v^{r−i}`,
//!
//! of order `deg f + deg g − 2r`, and the zero form beyond `r > min` of the
//! degrees. No extra normalization factor is applied; invariant values
//! elsewhere in this crate depend on this choice.
//!
//! The Cartan map `φ(u,v) = ((u²−v²)/2, (u²+v²)/2i, uv)` parametrizes the
//! isotropic cone `x²+y²+z² = 0`. Pulling a degree-`n` harmonic polynomial
//! back along `φ` gives a degree-`2n` binary form; [`cartan_pushforward`]
//! inverts this by monomial substitution followed by extraction of the
//! harmonic part. Both are equivariant for the double cover
//! `π: SL(2,ℂ) → SO(3,ℂ)` computed by [`pi`] from the adjoint action on
//! trace-free 2×2 matrices `M(x,y,z) = [[−z, x+iy], [x−iy, z]]`.

use crate::arith::{binom_i128, falling_i128};
use crate::harmonic::{harmonic_decompose_poly, HarmonicError, HarmonicPoly3, HomogeneousPoly3};
use crate::scalar::{Scalar, FLOAT_STRUCT_TOL};
use crate::tensor::{Mat3, Rotation, TensorError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BinaryError {
    #[error("expected a binary form of even degree, found degree {0}")]
    OddDegree(usize),
    #[error("matrix determinant must be 1")]
    NotUnimodular,
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Binary form `f(u,v) = Σ_j c_j u^{p−j} v^j` of degree `p`; the
/// coefficient list always has length `p+1`, so the zero form still carries
/// a nominal degree.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryForm<S: Scalar> {
    raw: Vec<S>,
}

impl<S: Scalar> BinaryForm<S> {
    pub fn zero(degree: usize) -> Self {
        Self {
            raw: vec![S::zero(); degree + 1],
        }
    }

    /// Builds a form from raw coefficients `c₀…c_p`; the degree is
    /// `len − 1`.
    pub fn from_raw(raw: Vec<S>) -> Self {
        assert!(!raw.is_empty(), "a form needs at least one coefficient");
        Self { raw }
    }

    /// Builds a form from weighted coefficients: `c_k = binom(p,k) a_k`.
    pub fn from_weighted(weighted: Vec<S>) -> Self {
        assert!(!weighted.is_empty(), "a form needs at least one coefficient");
        let p = weighted.len() - 1;
        let raw = weighted
            .into_iter()
            .enumerate()
            .map(|(k, a)| a * S::from_i128(binom_i128(p, k)))
            .collect();
        Self { raw }
    }

    pub fn degree(&self) -> usize {
        self.raw.len() - 1
    }

    pub fn raw(&self) -> &[S] {
        &self.raw
    }

    pub fn coeff(&self, j: usize) -> &S {
        &self.raw[j]
    }

    /// Weighted coefficients `a_k = c_k / binom(p,k)`.
    pub fn weighted(&self) -> Vec<S> {
        let p = self.degree();
        self.raw
            .iter()
            .enumerate()
            .map(|(k, c)| c.clone() / S::from_i128(binom_i128(p, k)))
            .collect()
    }

    pub fn is_zero_form(&self) -> bool {
        self.raw.iter().all(|c| c.is_zero())
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.raw.iter().map(|c| c.abs_f64()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degrees must match");
        Self {
            raw: self
                .raw
                .iter()
                .zip(&other.raw)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degrees must match");
        Self {
            raw: self
                .raw
                .iter()
                .zip(&other.raw)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, t: &S) -> Self {
        Self {
            raw: self.raw.iter().map(|c| c.clone() * t.clone()).collect(),
        }
    }

    /// Polynomial product; degrees add.
    pub fn mul(&self, other: &Self) -> Self {
        let mut raw = vec![S::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.raw.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.raw.iter().enumerate() {
                raw[i + j] = raw[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { raw }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::from_raw(vec![S::one()]);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, u: &S, v: &S) -> S {
        let p = self.degree();
        let mut acc = S::zero();
        for (j, c) in self.raw.iter().enumerate() {
            let mut term = c.clone();
            for _ in 0..(p - j) {
                term = term * u.clone();
            }
            for _ in 0..j {
                term = term * v.clone();
            }
            acc = acc + term;
        }
        acc
    }
}

/// `∂^{a+b} f / ∂u^a ∂v^b`, of degree `p − a − b` (the zero constant when
/// all monomials are annihilated).
fn mixed_partial<S: Scalar>(f: &BinaryForm<S>, a: usize, b: usize) -> BinaryForm<S> {
    let p = f.degree();
    if a + b > p {
        return BinaryForm::zero(0);
    }
    let q = p - a - b;
    let raw = (0..=q)
        .map(|m| {
            let j = m + b;
            f.raw[j].clone() * S::from_i128(falling_i128(p - j, a) * falling_i128(j, b))
        })
        .collect();
    BinaryForm { raw }
}

/// Transvectant `(f,g)^r`, of order `deg f + deg g − 2r`; the zero form
/// when `r` exceeds either degree.
pub fn transvectant<S: Scalar>(f: &BinaryForm<S>, g: &BinaryForm<S>, r: usize) -> BinaryForm<S> {
    let n = f.degree();
    let p = g.degree();
    if r > n.min(p) {
        return BinaryForm::zero((n + p).saturating_sub(2 * r));
    }
    let mut acc = BinaryForm::zero(n + p - 2 * r);
    for i in 0..=r {
        let df = mixed_partial(f, r - i, i);
        let dg = mixed_partial(g, i, r - i);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let c = S::from_i128(sign * binom_i128(r, i));
        acc = acc.add(&df.mul(&dg).scale(&c));
    }
    acc
}

/// Element of SL(2,ℂ): a 2×2 matrix with determinant 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2Element<S: Scalar> {
    m: [[S; 2]; 2],
}

impl<S: Scalar> Sl2Element<S> {
    pub fn new(m: [[S; 2]; 2]) -> Result<Self, BinaryError> {
        let det = m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone();
        let tol = if S::EXACT {
            0.0
        } else {
            let scale = m
                .iter()
                .flatten()
                .map(|s| s.abs_f64())
                .fold(0.0f64, f64::max);
            FLOAT_STRUCT_TOL * (1.0 + scale * scale)
        };
        if !det.eq_within(&S::one(), tol) {
            return Err(BinaryError::NotUnimodular);
        }
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        Self {
            m: [[S::one(), S::zero()], [S::zero(), S::one()]],
        }
    }

    pub fn mat(&self) -> &[[S; 2]; 2] {
        &self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.m[i][j]
    }

    /// Adjugate; equals the inverse because the determinant is 1.
    pub fn inverse(&self) -> Self {
        let [[a, b], [c, d]] = &self.m;
        Self {
            m: [[d.clone(), -b.clone()], [-c.clone(), a.clone()]],
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = [[S::zero(), S::zero()], [S::zero(), S::zero()]];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = self.m[i][0].clone() * other.m[0][j].clone()
                    + self.m[i][1].clone() * other.m[1][j].clone();
            }
        }
        Self { m }
    }

    pub fn neg(&self) -> Self {
        Self {
            m: [
                [-self.m[0][0].clone(), -self.m[0][1].clone()],
                [-self.m[1][0].clone(), -self.m[1][1].clone()],
            ],
        }
    }
}

/// `(γ·f)(ξ) = f(γ⁻¹ξ)`: substitutes `u ← du − bv`, `v ← −cu + av` and
/// expands. Degree is preserved and `(γ₁γ₂)·f = γ₁·(γ₂·f)`.
pub fn sl2_act<S: Scalar>(gamma: &Sl2Element<S>, f: &BinaryForm<S>) -> BinaryForm<S> {
    let inv = gamma.inverse();
    let new_u = BinaryForm::from_raw(vec![inv.m[0][0].clone(), inv.m[0][1].clone()]);
    let new_v = BinaryForm::from_raw(vec![inv.m[1][0].clone(), inv.m[1][1].clone()]);
    let p = f.degree();
    let mut u_pows = vec![BinaryForm::from_raw(vec![S::one()])];
    let mut v_pows = vec![BinaryForm::from_raw(vec![S::one()])];
    for t in 1..=p {
        let up = u_pows[t - 1].mul(&new_u);
        u_pows.push(up);
        let vp = v_pows[t - 1].mul(&new_v);
        v_pows.push(vp);
    }
    let mut acc = BinaryForm::zero(p);
    for (j, c) in f.raw.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // u^{p−j} v^j contributes a degree-p form once padded to degree p.
        let term = u_pows[p - j].mul(&v_pows[j]);
        acc = acc.add(&term.scale(c));
    }
    acc
}

/// The Cartan map `φ(u,v) = ((u²−v²)/2, (u²+v²)/2i, uv)`; its image
/// satisfies `x²+y²+z² = 0` identically.
pub fn cartan_map<S: Scalar>(u: &S, v: &S) -> [S; 3] {
    let half = S::from_ratio(1, 2);
    let u2 = u.clone() * u.clone();
    let v2 = v.clone() * v.clone();
    let x = (u2.clone() - v2.clone()) * half.clone();
    let y = (u2 + v2) * -(S::i() * half);
    let z = u.clone() * v.clone();
    [x, y, z]
}

/// Pullback along the Cartan map: substitutes `x, y, z` by the degree-2
/// forms `(u²−v²)/2`, `(u²+v²)/2i`, `uv`. For a homogeneous polynomial of
/// degree `n` the result has degree `2n`, and since `x²+y²+z²` pulls back
/// to 0, it depends only on the harmonic part of the input.
pub fn cartan_pullback_poly<S: Scalar>(p: &HomogeneousPoly3<S>) -> BinaryForm<S> {
    let half = S::from_ratio(1, 2);
    let minus_half_i = -(S::i() * half.clone());
    let x = BinaryForm::from_raw(vec![half.clone(), S::zero(), -half]);
    let y = BinaryForm::from_raw(vec![minus_half_i.clone(), S::zero(), minus_half_i]);
    let z = BinaryForm::from_raw(vec![S::zero(), S::one(), S::zero()]);
    let images = [x, y, z];

    let mut pows: [Vec<BinaryForm<S>>; 3] =
        std::array::from_fn(|_| vec![BinaryForm::from_raw(vec![S::one()])]);
    for axis in 0..3 {
        let max = p.terms().map(|(e, _)| e[axis]).max().unwrap_or(0);
        for t in 1..=max as usize {
            let next = pows[axis][t - 1].mul(&images[axis]);
            pows[axis].push(next);
        }
    }

    let mut acc = BinaryForm::zero(2 * p.degree());
    for (e, c) in p.terms() {
        let term = pows[0][e[0] as usize]
            .mul(&pows[1][e[1] as usize])
            .mul(&pows[2][e[2] as usize]);
        acc = acc.add(&term.scale(c));
    }
    acc
}

/// Pullback of a harmonic polynomial: the equivariant isomorphism from
/// degree-`n` harmonic polynomials onto degree-`2n` binary forms.
pub fn cartan_pullback<S: Scalar>(h: &HarmonicPoly3<S>) -> BinaryForm<S> {
    cartan_pullback_poly(h.poly())
}

/// Inverse of [`cartan_pullback`]: substitutes
/// `u^{2n−k} v^k → z^k (x+iy)^{n−k}` for `k ≤ n` and
/// `→ z^{2n−k} (−x+iy)^{k−n}` for `k ≥ n`, then takes the harmonic part of
/// the resulting degree-`n` polynomial.
pub fn cartan_pushforward<S: Scalar>(f: &BinaryForm<S>) -> Result<HarmonicPoly3<S>, BinaryError> {
    let p = f.degree();
    if p % 2 != 0 {
        return Err(BinaryError::OddDegree(p));
    }
    let n = p / 2;

    let xy_plus = HomogeneousPoly3::from_coeffs(1, [([1, 0, 0], S::one()), ([0, 1, 0], S::i())])
        .expect("exponents sum to 1");
    let xy_minus = HomogeneousPoly3::from_coeffs(1, [([1, 0, 0], -S::one()), ([0, 1, 0], S::i())])
        .expect("exponents sum to 1");
    let one = HomogeneousPoly3::from_coeffs(0, [([0, 0, 0], S::one())]).unwrap();
    let mut plus_pows = vec![one.clone()];
    let mut minus_pows = vec![one];
    for t in 1..=n {
        let np = plus_pows[t - 1].mul(&xy_plus);
        plus_pows.push(np);
        let nm = minus_pows[t - 1].mul(&xy_minus);
        minus_pows.push(nm);
    }

    let mut acc = HomogeneousPoly3::zero(n);
    for (k, c) in f.raw.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (z_exp, lateral) = if k <= n {
            (k, &plus_pows[n - k])
        } else {
            (p - k, &minus_pows[k - n])
        };
        let z_part = HomogeneousPoly3::monomial([0, 0, z_exp as u8], c.clone());
        acc = acc.add(&z_part.mul(lateral));
    }

    let hs = harmonic_decompose_poly(&acc)?;
    Ok(hs.into_iter().next().expect("decomposition is nonempty"))
}

/// The double cover `π: SL(2,ℂ) → SO(3,ℂ)`: conjugates the basis images
/// `M(e₁), M(e₂), M(e₃)` by `γ` and reads the new coordinates back off.
/// Satisfies `π(−γ) = π(γ)` and `π(γ₁γ₂) = π(γ₁)π(γ₂)`; restricted to
/// SU(2) the image is a real rotation.
pub fn pi<S: Scalar>(gamma: &Sl2Element<S>) -> Result<Rotation<S>, BinaryError> {
    let basis = [
        [[S::zero(), S::one()], [S::one(), S::zero()]],
        [[S::zero(), S::i()], [-S::i(), S::zero()]],
        [[-S::one(), S::zero()], [S::zero(), S::one()]],
    ];
    let inv = gamma.inverse();
    let mul2 = |a: &[[S; 2]; 2], b: &[[S; 2]; 2]| -> [[S; 2]; 2] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone()
            })
        })
    };
    let half = S::from_ratio(1, 2);
    let mut m: Mat3<S> = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
    for (j, e) in basis.iter().enumerate() {
        let n = mul2(&mul2(gamma.mat(), e), inv.mat());
        let x = (n[0][1].clone() + n[1][0].clone()) * half.clone();
        let y = (n[0][1].clone() - n[1][0].clone()) * -(S::i() * half.clone());
        let z = n[1][1].clone();
        m[0][j] = x;
        m[1][j] = y;
        m[2][j] = z;
    }
    Ok(Rotation::new(m)?)
}

/// Whether a form of even degree `2n` is the pullback of a real harmonic
/// polynomial: raw coefficients must satisfy `c_{2n−k} = (−1)^{n−k} c̄_k`,
/// equivalently `c̄onj(f)(−v,u) = (−1)ⁿ f(u,v)`. Transvectants of even
/// index preserve reality; odd-index transvectants of real forms are `i`
/// times a real form. The sign-free symmetry `conj(f)(−v,u) = f(u,v)` is
/// preserved by every transvectant and by products, which is what makes
/// the invariant values of real inputs real.
pub fn is_real_form<S: Scalar>(f: &BinaryForm<S>) -> Result<bool, BinaryError> {
    let p = f.degree();
    if p % 2 != 0 {
        return Err(BinaryError::OddDegree(p));
    }
    let n = p / 2;
    let tol = if S::EXACT {
        0.0
    } else {
        FLOAT_STRUCT_TOL * (1.0 + f.max_abs_f64())
    };
    for k in 0..=n {
        let mut expected = f.raw[k].conj();
        if (n - k) % 2 == 1 {
            expected = -expected;
        }
        if !f.raw[p - k].eq_within(&expected, tol) {
            return Ok(false);
        }
    }
    Ok(true)
}
