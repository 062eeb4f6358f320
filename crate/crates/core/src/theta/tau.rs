use crate::error::{Error, Result};
use crate::gaussian::{GMat2, GaussInt, GaussWord};
use crate::halfspace::{point_to_herm, CMat2, HermMat, Point};
use crate::scalar::{Complex, Real};
use serde::{Deserialize, Serialize};

/// A point of `H₂ₓ₂`: a complex 2×2 matrix whose anti-Hermitian part
/// `(τ - τ*)/2i` is positive definite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TauMat<T> {
    pub m: CMat2<T>,
}

impl<T: Real> TauMat<T> {
    pub fn new(m: CMat2<T>) -> Result<Self> {
        let tau = Self { m };
        if !tau.imag_part().is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(tau)
    }

    /// `i·X(p)`: the embedding of hyperbolic 3-space.
    pub fn from_point(p: &Point<T>) -> Self {
        let x = point_to_herm(p);
        let i = Complex::new(T::zero(), T::one());
        let r = x.to_rows();
        Self { m: [[i * r[0][0], i * r[0][1]], [i * r[1][0], i * r[1][1]]] }
    }

    /// `i·diag(y1, y2)`.
    pub fn diagonal(y1: T, y2: T) -> Result<Self> {
        let z = Complex::new(T::zero(), T::zero());
        Self::new([[Complex::new(T::zero(), y1), z], [z, Complex::new(T::zero(), y2)]])
    }

    /// `Y = (τ - τ*)/2i`.
    pub fn imag_part(&self) -> HermMat<T> {
        let two_i = Complex::new(T::zero(), T::lit(2.0));
        let y12 = (self.m[0][1] - self.m[1][0].conj()) / two_i;
        HermMat::new(self.m[0][0].im, self.m[1][1].im, y12)
    }

    /// `U·τ·U*`.
    pub fn congruence(&self, u: &CMat2<T>) -> Self {
        let ut = mul2(u, &self.m);
        Self { m: mul2(&ut, &conj_t(u)) }
    }
}

pub(crate) fn mul2<T: Real>(x: &CMat2<T>, y: &CMat2<T>) -> CMat2<T> {
    let mut out = [[Complex::new(T::zero(), T::zero()); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

fn add2<T: Real>(x: &CMat2<T>, y: &CMat2<T>) -> CMat2<T> {
    [[x[0][0] + y[0][0], x[0][1] + y[0][1]], [x[1][0] + y[1][0], x[1][1] + y[1][1]]]
}

pub(crate) fn conj_t<T: Real>(x: &CMat2<T>) -> CMat2<T> {
    [[x[0][0].conj(), x[1][0].conj()], [x[0][1].conj(), x[1][1].conj()]]
}

fn inv2<T: Real>(x: &CMat2<T>) -> Option<CMat2<T>> {
    let det = x[0][0] * x[1][1] - x[0][1] * x[1][0];
    let scale = x.iter().flatten().map(|e| e.norm()).fold(T::zero(), T::max);
    if !(det.norm() > T::epsilon() * T::lit(16.0) * scale * scale) {
        return None;
    }
    Some([[x[1][1] / det, -x[0][1] / det], [-x[1][0] / det, x[0][0] / det]])
}

/// 4×4 matrix over Z[i] viewed as blocks `[[A, B], [C, D]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GMat4<I = i64> {
    pub m: [[GaussInt<I>; 4]; 4],
}

impl<I: GaussWord> GMat4<I> {
    pub fn from_blocks(a: &GMat2<I>, b: &GMat2<I>, c: &GMat2<I>, d: &GMat2<I>) -> Self {
        let mut m = [[GaussInt::zero(); 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a.m[i][j];
                m[i][j + 2] = b.m[i][j];
                m[i + 2][j] = c.m[i][j];
                m[i + 2][j + 2] = d.m[i][j];
            }
        }
        Self { m }
    }

    pub fn block(&self, bi: usize, bj: usize) -> GMat2<I> {
        let o = |k: usize, l: usize| self.m[2 * bi + k][2 * bj + l];
        GMat2::new(o(0, 0), o(0, 1), o(1, 0), o(1, 1))
    }

    pub fn identity() -> Self {
        let z = GMat2::new(GaussInt::zero(), GaussInt::zero(), GaussInt::zero(), GaussInt::zero());
        Self::from_blocks(&GMat2::identity(), &z, &z, &GMat2::identity())
    }

    /// `J₄ = [[0, -I], [I, 0]]`.
    pub fn j4() -> Result<Self> {
        let z = GMat2::new(GaussInt::zero(), GaussInt::zero(), GaussInt::zero(), GaussInt::zero());
        Ok(Self::from_blocks(&z, &GMat2::identity().neg()?, &GMat2::identity(), &z))
    }

    /// `diag(A, (A*)⁻¹)`, acting on `H₂ₓ₂` by `τ ↦ A·τ·A*`.
    pub fn from_gl2(a: &GMat2<I>) -> Result<Self> {
        let z = GMat2::new(GaussInt::zero(), GaussInt::zero(), GaussInt::zero(), GaussInt::zero());
        let d = a.conj_transpose().inv()?;
        Ok(Self::from_blocks(a, &z, &z, &d))
    }

    /// `[[I, B], [0, I]]`; symplectic-unitary when `B` is Hermitian.
    pub fn translation(b: &GMat2<I>) -> Self {
        let z = GMat2::new(GaussInt::zero(), GaussInt::zero(), GaussInt::zero(), GaussInt::zero());
        Self::from_blocks(&GMat2::identity(), b, &z, &GMat2::identity())
    }

    pub fn checked_mul(&self, h: &Self) -> Result<Self> {
        let mut out = [[GaussInt::zero(); 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                let mut acc = GaussInt::zero();
                for k in 0..4 {
                    acc = acc.checked_add(self.m[i][k].checked_mul(h.m[k][j])?)?;
                }
                *e = acc;
            }
        }
        Ok(Self { m: out })
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = [[GaussInt::zero(); 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.m[j][i].conj();
            }
        }
        Self { m: out }
    }

    /// Exact check of `g·J₄·g* = J₄`.
    pub fn is_symplectic_unitary(&self) -> bool {
        let check = || -> Result<bool> {
            let j = Self::j4()?;
            Ok(self.checked_mul(&j)?.checked_mul(&self.conj_transpose())? == j)
        };
        check().unwrap_or(false)
    }
}

/// `g·τ = (Aτ + B)(Cτ + D)⁻¹`.
pub fn tau_transform<I: GaussWord, T: Real>(g: &GMat4<I>, tau: &TauMat<T>) -> Result<TauMat<T>> {
    if !g.is_symplectic_unitary() {
        return Err(Error::NotSymplectic);
    }
    let cm = |b: GMat2<I>| -> CMat2<T> {
        [[b.a().to_complex(), b.b().to_complex()], [b.c().to_complex(), b.d().to_complex()]]
    };
    let (a, b, c, d) = (cm(g.block(0, 0)), cm(g.block(0, 1)), cm(g.block(1, 0)), cm(g.block(1, 1)));
    let num = add2(&mul2(&a, &tau.m), &b);
    let den = add2(&mul2(&c, &tau.m), &d);
    let inv = inv2(&den).ok_or(Error::SingularDenominator)?;
    TauMat::new(mul2(&num, &inv))
}
