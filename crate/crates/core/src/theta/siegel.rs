//! Theta series with characteristics on `H₂ₓ₂`:
//!
//! `θ(a;b)(τ) = Σ_{n ∈ Z[i]²} exp πi{(n+a)·τ·(n+a)* + 2Re(n·b*)}`
//!
//! Summation runs over the sup-norm box `|Re nⱼ|, |Im nⱼ| ≤ R` of a Gauss-reduced
//! lattice basis, restricted to the ellipsoid `Q_Y(n+a) ≤ K`, where both
//! `R` and `K` come from rigorous tail bounds.

use super::characteristic::ThetaChar;
use super::tau::TauMat;
use crate::error::{Error, Result};
use crate::gaussian::{GMat2, GaussHalf, GaussInt};
use crate::halfspace::{gmat_to_complex, HermMat, Point};
use crate::scalar::{Complex, Real};
use crate::summation::ComplexAccumulator;
use rayon::prelude::*;
use std::f64::consts::PI;

pub const DEFAULT_RADIUS_CAP: u32 = 64;

/// Chunks (outer-coordinate slices) are evaluated in parallel from this radius on.
const PARALLEL_RADIUS: i64 = 6;

const SPLIT_GRID: [f64; 19] = [
    0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85,
    0.9, 0.95,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SiegelOptions {
    pub radius_cap: u32,
    /// Gauss-reduce the imaginary part before summing.
    pub reduce_basis: bool,
}

impl Default for SiegelOptions {
    fn default() -> Self {
        Self { radius_cap: DEFAULT_RADIUS_CAP, reduce_basis: true }
    }
}

/// Value of a truncated theta series together with its truncation data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaEval<T> {
    pub value: Complex<T>,
    /// Box radius in the (reduced) summation basis.
    pub radius: u32,
    /// Ellipsoid level `K`.
    pub level: f64,
    /// Upper bound on the absolute mass of all discarded terms.
    pub tail_bound: f64,
    pub terms: usize,
    /// Unimodular basis change `n = m·U` used for summation.
    pub basis: GMat2<i64>,
}

/// Bound on `Σ exp(-π Q_Y(n+a))` over all `n` with some real coordinate `|nⱼ| > R`,
/// where `lambda` is the least eigenvalue of `Y` and `rho ≥ max |aⱼ|`.
pub fn box_tail_bound(lambda: f64, rho: f64, radius: u32) -> f64 {
    let d = radius as f64 + 1.0 - rho;
    if !(lambda > 0.0) || d <= 0.0 {
        return f64::INFINITY;
    }
    // one-dimensional shifted sums are ≤ 1 + 1/√λ; the far side of one
    // coordinate is a geometric-dominated Gaussian tail
    let full = 1.0 + lambda.sqrt().recip();
    let one_side = (-PI * lambda * d * d).exp() / (1.0 - (-2.0 * PI * lambda * d).exp());
    4.0 * full.powi(3) * 2.0 * one_side
}

fn ellipsoid_constant(lambda: f64, s: f64) -> f64 {
    (1.0 + (s * lambda).sqrt().recip()).powi(4)
}

/// Bound on `Σ exp(-π Q)` over lattice points with `Q > K`.
pub fn ellipsoid_tail_bound(lambda: f64, level: f64) -> f64 {
    if !(lambda > 0.0) {
        return f64::INFINITY;
    }
    SPLIT_GRID
        .iter()
        .map(|&s| (-PI * (1.0 - s) * level).exp() * ellipsoid_constant(lambda, s))
        .fold(f64::INFINITY, f64::min)
}

fn ellipsoid_level(lambda: f64, target: f64) -> f64 {
    SPLIT_GRID
        .iter()
        .map(|&s| (ellipsoid_constant(lambda, s).ln() - target.ln()) / (PI * (1.0 - s)))
        .fold(f64::INFINITY, f64::min)
        .max(0.0)
}

/// Tail bound for the box of radius `R` in the coordinates of `tau`.
pub fn theta_tail_bound<T: Real>(tau: &TauMat<T>, c: &ThetaChar, radius: u32) -> f64 {
    let lambda = tau.imag_part().min_eigenvalue().to_f64_lossy();
    box_tail_bound(lambda, c.shift_radius(), radius)
}

/// Smallest `R ∈ [2, cap]` whose box tail bound is below `eps`.
pub fn truncation_radius<T: Real>(tau: &TauMat<T>, c: &ThetaChar, eps: f64, cap: u32) -> Result<u32> {
    let lambda = tau.imag_part().min_eigenvalue().to_f64_lossy();
    let rho = c.shift_radius();
    let bound = |r: u32| box_tail_bound(lambda, rho, r);
    if bound(cap) >= eps {
        let mut r = cap;
        while bound(r) >= eps && r < u32::MAX / 2 {
            r = r.saturating_mul(2);
        }
        return Err(Error::TruncationRadiusOverflow { radius: r, cap });
    }
    let (mut lo, mut hi) = (2u32, cap);
    if bound(lo) < eps {
        return Ok(lo);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if bound(mid) < eps {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn round_gauss(z: Complex<f64>) -> Option<GaussInt<i64>> {
    if !(z.re.is_finite() && z.im.is_finite()) || z.re.abs() > 1e15 || z.im.abs() > 1e15 {
        return None;
    }
    Some(GaussInt::new(z.re.round() as i64, z.im.round() as i64))
}

/// Gauss (Lagrange) reduction of a positive Hermitian form over Z[i].
/// Returns unimodular `U` whose rows span Z[i]² and make `U·Y·U*` reduced.
pub fn gauss_reduce_form<T: Real>(y: &HermMat<T>) -> GMat2<i64> {
    let y11 = y.x11.to_f64_lossy();
    let y22 = y.x22.to_f64_lossy();
    let y12 = Complex::new(y.x12.re.to_f64_lossy(), y.x12.im.to_f64_lossy());
    let form = |u: [GaussInt<i64>; 2], v: [GaussInt<i64>; 2]| -> Complex<f64> {
        let (u0, u1) = (u[0].to_complex::<f64>(), u[1].to_complex::<f64>());
        let (v0, v1) = (v[0].to_complex::<f64>(), v[1].to_complex::<f64>());
        u0 * v0.conj() * y11 + u0 * y12 * v1.conj() + u1 * y12.conj() * v0.conj() + u1 * v1.conj() * y22
    };
    let mut e0 = [GaussInt::one(), GaussInt::zero()];
    let mut e1 = [GaussInt::zero(), GaussInt::one()];
    for _ in 0..256 {
        let g00 = form(e0, e0).re;
        let g11 = form(e1, e1).re;
        if g11 < g00 {
            std::mem::swap(&mut e0, &mut e1);
            continue;
        }
        let Some(mu) = round_gauss(form(e1, e0) / g00) else { break };
        if mu.is_zero() {
            break;
        }
        let step = || -> Result<[GaussInt<i64>; 2]> {
            Ok([e1[0].checked_sub(mu.checked_mul(e0[0])?)?, e1[1].checked_sub(mu.checked_mul(e0[1])?)?])
        };
        match step() {
            Ok(n) => e1 = n,
            Err(_) => break,
        }
    }
    GMat2::new(e0[0], e0[1], e1[0], e1[1])
}

/// Re-indexes the series under `n = m·U`: returns `(a', b', sign)` with
/// `θ(a;b)(τ) = sign · θ(a';b')(U·τ·U*)` and `a'` reduced mod Z[i].
fn transform_characteristic(c: &ThetaChar, u: &GMat2<i64>) -> Result<(ThetaChar, bool)> {
    let uinv = u.inv()?;
    let row_times = |v: [GaussHalf<i64>; 2], m: &GMat2<i64>| -> Result<[GaussHalf<i64>; 2]> {
        Ok([
            v[0].mul_int(m.m[0][0])?.checked_add(v[1].mul_int(m.m[1][0])?)?,
            v[0].mul_int(m.m[0][1])?.checked_add(v[1].mul_int(m.m[1][1])?)?,
        ])
    };
    let a1 = row_times(c.a, &uinv)?;
    let b1 = row_times(c.b, &u.conj_transpose())?;
    let mut parity: i64 = 0;
    for j in 0..2 {
        let k = a1[j].integer_offset();
        parity = parity.checked_add(b1[j].twice_re_pairing(k)?).ok_or(Error::Overflow)?;
    }
    let reduced = ThetaChar::new([a1[0].reduced(), a1[1].reduced()], [b1[0].reduced(), b1[1].reduced()]);
    Ok((reduced, parity.rem_euclid(2) == 1))
}

struct Kernel<T> {
    tau: [[Complex<T>; 2]; 2],
    y11: T,
    schur: T,
    y12c: Complex<T>,
    a: [Complex<T>; 2],
    b: [GaussInt<i64>; 2],
    radius: i64,
    level: Option<T>,
}

impl<T: Real> Kernel<T> {
    fn new(tau: &TauMat<T>, c: &ThetaChar, radius: u32, level: Option<f64>) -> Self {
        let y = tau.imag_part();
        Self {
            tau: tau.m,
            y11: y.x11,
            schur: y.det() / y.x11,
            y12c: y.x12.conj(),
            a: [c.a[0].to_complex(), c.a[1].to_complex()],
            b: [c.b[0].num, c.b[1].num],
            radius: radius as i64,
            level: level.map(T::lit),
        }
    }

    /// Sum over the slice `Re n₂ = p`.
    fn slice(&self, p: i64) -> (ComplexAccumulator<T>, usize) {
        let r = self.radius;
        let pi = T::PI();
        let mut acc = ComplexAccumulator::new();
        let mut count = 0usize;
        let [a1, a2] = self.a;
        let tau = &self.tau;
        for q in -r..=r {
            let v2 = Complex::new(T::from(p).unwrap() + a2.re, T::from(q).unwrap() + a2.im);
            let (mut re_lo, mut re_hi, mut im_lo, mut im_hi) = (-r, r, -r, r);
            let mut center = Complex::new(T::zero(), T::zero());
            let v2_mass = self.schur * v2.norm_sqr();
            if let Some(k) = self.level {
                let rem = k - v2_mass;
                if rem < T::zero() {
                    continue;
                }
                let rad = (rem / self.y11).sqrt();
                center = self.y12c * v2 / self.y11;
                let c1 = -center - a1;
                re_lo = re_lo.max((c1.re - rad).ceil().to_i64().unwrap_or(-r));
                re_hi = re_hi.min((c1.re + rad).floor().to_i64().unwrap_or(r));
                im_lo = im_lo.max((c1.im - rad).ceil().to_i64().unwrap_or(-r));
                im_hi = im_hi.min((c1.im + rad).floor().to_i64().unwrap_or(r));
            }
            let t12v2 = tau[0][1] * v2.conj();
            let t22 = v2 * tau[1][1] * v2.conj();
            for u in re_lo..=re_hi {
                for w in im_lo..=im_hi {
                    let v1 = Complex::new(T::from(u).unwrap() + a1.re, T::from(w).unwrap() + a1.im);
                    if let Some(k) = self.level {
                        if self.y11 * (v1 + center).norm_sqr() + v2_mass > k {
                            continue;
                        }
                    }
                    let q_tau = v1 * tau[0][0] * v1.conj() + v1 * t12v2 + v2 * tau[1][0] * v1.conj() + t22;
                    let mut term = Complex::from_polar((-pi * q_tau.im).exp(), pi * q_tau.re);
                    let parity = u * self.b[0].re + w * self.b[0].im + p * self.b[1].re + q * self.b[1].im;
                    if parity.rem_euclid(2) == 1 {
                        term = -term;
                    }
                    acc.add(term);
                    count += 1;
                }
            }
        }
        (acc, count)
    }

    fn sum(&self) -> (Complex<T>, usize) {
        let r = self.radius;
        let slices: Vec<(ComplexAccumulator<T>, usize)> = if r >= PARALLEL_RADIUS {
            (-r..=r).into_par_iter().map(|p| self.slice(p)).collect()
        } else {
            (-r..=r).map(|p| self.slice(p)).collect()
        };
        let mut acc = ComplexAccumulator::new();
        let mut count = 0;
        for (s, n) in &slices {
            acc.merge(s);
            count += n;
        }
        (acc.value(), count)
    }
}

/// Plain sum over the box of radius `R` in the coordinates of `tau`.
pub fn siegel_theta_box<T: Real>(c: &ThetaChar, tau: &TauMat<T>, radius: u32) -> Complex<T> {
    Kernel::new(tau, c, radius, None).sum().0
}

pub fn siegel_theta_with<T: Real>(
    c: &ThetaChar,
    tau: &TauMat<T>,
    eps: f64,
    opts: SiegelOptions,
) -> Result<ThetaEval<T>> {
    if !(eps > 0.0) {
        return Err(Error::OutOfDomain(format!("eps must be positive, got {eps}")));
    }
    let (basis, tau_r, c_r, negate) = if opts.reduce_basis {
        let u = gauss_reduce_form(&tau.imag_part());
        let (c_r, negate) = transform_characteristic(c, &u)?;
        (u, tau.congruence(&gmat_to_complex(&u)), c_r, negate)
    } else {
        (GMat2::identity(), *tau, *c, false)
    };
    let half = eps / 2.0;
    let radius = truncation_radius(&tau_r, &c_r, half, opts.radius_cap)?;
    let lambda = tau_r.imag_part().min_eigenvalue().to_f64_lossy();
    let level = ellipsoid_level(lambda, half);
    let tail_bound = box_tail_bound(lambda, c_r.shift_radius(), radius) + ellipsoid_tail_bound(lambda, level);
    let (mut value, terms) = Kernel::new(&tau_r, &c_r, radius, Some(level)).sum();
    if negate {
        value = -value;
    }
    Ok(ThetaEval { value, radius, level, tail_bound, terms, basis })
}

/// Theta series with discarded mass below `eps`.
pub fn siegel_theta<T: Real>(c: &ThetaChar, tau: &TauMat<T>, eps: f64) -> Result<ThetaEval<T>> {
    siegel_theta_with(c, tau, eps, SiegelOptions::default())
}

/// Theta value at `τ = i·X(p)`, without the realness check.
pub fn theta_on_h3_complex<T: Real>(c: &ThetaChar, p: &Point<T>, eps: f64) -> Result<Complex<T>> {
    Ok(siegel_theta(c, &TauMat::from_point(p), eps)?.value)
}

/// Real theta value on hyperbolic 3-space; fails if the imaginary part
/// exceeds `max(10·eps, 1e-9)`.
pub fn theta_on_h3<T: Real>(c: &ThetaChar, p: &Point<T>, eps: f64) -> Result<T> {
    let v = theta_on_h3_complex(c, p, eps)?;
    let threshold = (10.0 * eps).max(1e-9);
    let imag = v.im.to_f64_lossy().abs();
    if !(imag < threshold) {
        return Err(Error::RealnessViolation { imag, threshold });
    }
    Ok(v.re)
}

/// True when `|θ| < 1e-12` at every given point.
pub fn is_identically_vanishing<T: Real>(c: &ThetaChar, points: &[Point<T>], eps: f64) -> Result<bool> {
    for p in points {
        if theta_on_h3_complex(c, p, eps)?.norm().to_f64_lossy() >= 1e-12 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// (Σ_{m ∈ Z[i]} e^{-π y |m|²}) by a symmetric 1-d sum, squared per coordinate.
    fn one_dim(y: f64) -> f64 {
        let s: f64 = (-20i64..=20).map(|k| (-PI * y * (k * k) as f64).exp()).sum();
        s * s
    }

    #[test]
    fn zero_characteristic_at_identity() {
        let tau = TauMat::<f64>::diagonal(1.0, 1.0).unwrap();
        let v = siegel_theta(&ThetaChar::zero(), &tau, 1e-14).unwrap();
        let oracle = one_dim(1.0).powi(2);
        assert!((v.value.re - 1.3932039296856768).abs() < 1e-12);
        assert!((v.value.re - oracle).abs() < 1e-13);
        assert!(v.tail_bound < 1e-14);
    }

    #[test]
    fn diagonal_factorization() {
        let tau = TauMat::<f64>::diagonal(4.0, 4.0).unwrap();
        let v = siegel_theta(&ThetaChar::zero(), &tau, 1e-14).unwrap().value.re;
        assert!((v - one_dim(4.0).powi(2)).abs() < 1e-13);
        assert!((v - (1.0 + 4.0 * (-4.0 * PI).exp()).powi(2)).abs() < 1e-9);
        let tau = TauMat::<f64>::diagonal(0.7, 2.5).unwrap();
        let v = siegel_theta(&ThetaChar::zero(), &tau, 1e-14).unwrap().value.re;
        assert!((v / (one_dim(0.7) * one_dim(2.5)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bounds_are_monotone() {
        let tau = TauMat::<f64>::diagonal(1.0, 1.0).unwrap();
        let c = ThetaChar::zero();
        let mut prev = f64::INFINITY;
        for r in 4..=16 {
            let b = theta_tail_bound(&tau, &c, r);
            assert!(b < prev || b == 0.0);
            prev = b;
        }
        let mut prev = f64::INFINITY;
        for k in 1..40 {
            let b = ellipsoid_tail_bound(0.8, k as f64);
            assert!(b <= prev);
            prev = b;
        }
    }

    #[test]
    fn radius_scales_with_decay() {
        let c = ThetaChar::zero();
        let t1 = TauMat::<f64>::diagonal(0.25, 0.25).unwrap();
        let t4 = TauMat::<f64>::diagonal(1.0, 1.0).unwrap();
        let r1 = truncation_radius(&t1, &c, 1e-12, 64).unwrap();
        let r4 = truncation_radius(&t4, &c, 1e-12, 64).unwrap();
        assert!(r4 < r1);
        assert!((r4 as f64) < 0.7 * r1 as f64);
    }

    #[test]
    fn radius_cap_is_enforced() {
        let tau = TauMat::<f64>::diagonal(1e-4, 1e4).unwrap();
        let c = ThetaChar::zero();
        assert!(matches!(
            truncation_radius(&tau, &c, 1e-12, 64),
            Err(Error::TruncationRadiusOverflow { cap: 64, .. })
        ));
        let opts = SiegelOptions { reduce_basis: false, ..Default::default() };
        assert!(siegel_theta_with(&c, &tau, 1e-12, opts).is_err());
    }

    #[test]
    fn reduction_preserves_the_value() {
        let p = Point::<f64>::from_parts(0.9, -0.7, 0.15).unwrap();
        let tau = TauMat::from_point(&p);
        for c in ThetaChar::<i64>::level_two_all().iter().step_by(17) {
            let reduced = siegel_theta(c, &tau, 1e-13).unwrap();
            let plain = siegel_theta_with(c, &tau, 1e-13, SiegelOptions { reduce_basis: false, radius_cap: 200 })
                .unwrap();
            assert!((reduced.value - plain.value).norm() < 1e-11, "{c}");
            assert!(reduced.radius <= plain.radius);
        }
    }

    #[test]
    fn realness_threshold() {
        let p = Point::<f64>::from_parts(0.1, 0.2, 1.3).unwrap();
        let c = ThetaChar::<i64>::level_one_plus_i_all()[5];
        let v = theta_on_h3(&c, &p, 1e-12).unwrap();
        let w = theta_on_h3_complex(&c, &p, 1e-12).unwrap();
        assert_eq!(v, w.re);
        assert!(w.im.abs() < 1e-12);
    }
}
