//! Real hyperbolic 3-space: upper half-space coordinates `(z, t)` and the
//! equivalent model of positive Hermitian 2×2 matrices of determinant one.
//!
//! The identification is `(z, t) ↦ (1/t)·[[|z|²+t², z], [z̄, 1]]`, under which
//! `g ∈ GL(2,C)` acts by `X ↦ g·X·g*` and upper-triangular unipotents are
//! horizontal translations.

use crate::error::{Error, Result};
use crate::gaussian::{GMat2, GaussWord};
use crate::scalar::{Complex, Real};
use serde::{Deserialize, Serialize};

/// Points closer than this to the boundary are rejected.
pub const MIN_HEIGHT: f64 = 1e-12;

/// A point of the upper half-space model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point<T> {
    pub z: Complex<T>,
    pub t: T,
}

impl<T: Real> Point<T> {
    pub fn new(z: Complex<T>, t: T) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite() && t.is_finite()) {
            return Err(Error::InvalidPoint("non-finite coordinate".into()));
        }
        if t <= T::lit(MIN_HEIGHT) {
            return Err(Error::InvalidPoint(format!("height {t} is not positive")));
        }
        Ok(Self { z, t })
    }

    pub fn from_parts(re: T, im: T, t: T) -> Result<Self> {
        Self::new(Complex::new(re, im), t)
    }

    pub fn base() -> Self {
        Self { z: Complex::new(T::zero(), T::zero()), t: T::one() }
    }

    pub fn cast<U: Real>(&self) -> Point<U> {
        Point {
            z: Complex::new(U::lit(self.z.re.to_f64_lossy()), U::lit(self.z.im.to_f64_lossy())),
            t: U::lit(self.t.to_f64_lossy()),
        }
    }
}

/// Hermitian 2×2 matrix `[[x11, x12], [conj(x12), x22]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HermMat<T> {
    pub x11: T,
    pub x22: T,
    pub x12: Complex<T>,
}

impl<T: Real> HermMat<T> {
    pub fn new(x11: T, x22: T, x12: Complex<T>) -> Self {
        Self { x11, x22, x12 }
    }

    pub fn identity() -> Self {
        Self::new(T::one(), T::one(), Complex::new(T::zero(), T::zero()))
    }

    pub fn det(&self) -> T {
        self.x11 * self.x22 - self.x12.norm_sqr()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.x11 > T::zero() && self.det() > T::zero()
    }

    /// Scales to determinant one.
    pub fn normalized(&self) -> Result<Self> {
        if !self.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        let s = self.det().sqrt().recip();
        Ok(Self::new(self.x11 * s, self.x22 * s, self.x12 * s))
    }

    /// Smallest eigenvalue.
    pub fn min_eigenvalue(&self) -> T {
        let half = T::lit(0.5);
        let m = (self.x11 + self.x22) * half;
        let r = (((self.x11 - self.x22) * half).powi(2) + self.x12.norm_sqr()).sqrt();
        // det / λ_max is better conditioned than m - r
        self.det() / (m + r)
    }

    pub fn to_rows(&self) -> [[Complex<T>; 2]; 2] {
        let z = T::zero();
        [
            [Complex::new(self.x11, z), self.x12],
            [self.x12.conj(), Complex::new(self.x22, z)],
        ]
    }
}

/// Complex 2×2 matrix, row-major.
pub type CMat2<T> = [[Complex<T>; 2]; 2];

pub fn gmat_to_complex<I: GaussWord, T: Real>(g: &GMat2<I>) -> CMat2<T> {
    [
        [g.a().to_complex(), g.b().to_complex()],
        [g.c().to_complex(), g.d().to_complex()],
    ]
}

/// `g·X·g*` for a complex matrix `g`.
pub fn congruence<T: Real>(g: &CMat2<T>, x: &HermMat<T>) -> HermMat<T> {
    let xr = x.to_rows();
    let mut gx = [[Complex::new(T::zero(), T::zero()); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            gx[i][j] = g[i][0] * xr[0][j] + g[i][1] * xr[1][j];
        }
    }
    let entry = |i: usize, j: usize| gx[i][0] * g[j][0].conj() + gx[i][1] * g[j][1].conj();
    HermMat::new(entry(0, 0).re, entry(1, 1).re, entry(0, 1))
}

pub fn point_to_herm<T: Real>(p: &Point<T>) -> HermMat<T> {
    let inv_t = p.t.recip();
    HermMat::new((p.z.norm_sqr() + p.t * p.t) * inv_t, inv_t, p.z * inv_t)
}

/// Inverse identification; the matrix is first scaled to determinant one.
pub fn herm_to_point<T: Real>(x: &HermMat<T>) -> Result<Point<T>> {
    let n = x.normalized()?;
    Point::new(n.x12 / n.x22, n.x22.recip())
}

/// Action of a complex matrix with `|det| = 1` (not checked).
pub fn act_complex<T: Real>(g: &CMat2<T>, p: &Point<T>) -> Result<Point<T>> {
    herm_to_point(&congruence(g, &point_to_herm(p)))
}

/// Isometric action `X ↦ g·X·g*` of `g ∈ GL(2, Z[i])`.
pub fn act<I: GaussWord, T: Real>(g: &GMat2<I>, p: &Point<T>) -> Result<Point<T>> {
    if !g.has_unit_det() {
        return Err(Error::NonUnitDeterminant);
    }
    act_complex(&gmat_to_complex(g), p)
}

/// The orientation-reversing involution `X ↦ ᵗX`, i.e. `(z, t) ↦ (z̄, t)`.
pub fn transpose_action<T: Real>(p: &Point<T>) -> Point<T> {
    Point { z: p.z.conj(), t: p.t }
}

pub fn hyp_distance<T: Real>(p: &Point<T>, q: &Point<T>) -> T {
    let num = (p.z - q.z).norm_sqr() + (p.t - q.t).powi(2);
    // cosh d = 1 + num/(2 t1 t2)  ⇔  sinh(d/2) = sqrt(num / (4 t1 t2))
    let s = (num / (T::lit(4.0) * p.t * q.t)).sqrt();
    T::lit(2.0) * s.asinh()
}
