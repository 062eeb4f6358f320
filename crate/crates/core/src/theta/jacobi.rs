use crate::error::{Error, Result};
use crate::scalar::{Complex, Real};
use crate::summation::ComplexAccumulator;

/// Which theta constant: `ϑ00 = Σ exp(πiτn²)` or `ϑ01 = Σ (-1)ⁿ exp(πiτn²)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiKind {
    K00,
    K01,
}

/// Smallest `N` such that `Σ_{|n|>N} exp(-π y n²) < eps`.
pub fn jacobi_terms_needed(y: f64, eps: f64) -> u64 {
    let mut n: u64 = 0;
    loop {
        let d = (n + 1) as f64;
        let tail = 2.0 * (-std::f64::consts::PI * y * d * d).exp()
            / (1.0 - (-2.0 * std::f64::consts::PI * y * d).exp());
        if tail < eps {
            return n;
        }
        n += 1;
    }
}

pub fn jacobi_theta<T: Real>(kind: JacobiKind, tau: Complex<T>, eps: f64) -> Result<Complex<T>> {
    if !(tau.im > T::zero()) || !tau.re.is_finite() {
        return Err(Error::NotInUpperHalfPlane);
    }
    if !(eps > 0.0) {
        return Err(Error::OutOfDomain(format!("eps must be positive, got {eps}")));
    }
    let n_max = jacobi_terms_needed(tau.im.to_f64_lossy(), eps);
    let pi = T::PI();
    let two = T::lit(2.0);
    // exp(πiτn²) depends on Re τ only modulo 2
    let x = tau.re - two * (tau.re / two).floor();
    let mut acc = ComplexAccumulator::new();
    acc.add(Complex::new(T::one(), T::zero()));
    for n in 1..=n_max {
        let n2 = T::from(n * n).expect("term index fits");
        let phase = x * n2;
        let phase = phase - two * (phase / two).floor();
        let mag = (-pi * tau.im * n2).exp();
        let mut term = Complex::from_polar(mag, pi * phase) * two;
        if kind == JacobiKind::K01 && n % 2 == 1 {
            term = -term;
        }
        acc.add(term);
    }
    Ok(acc.value())
}

/// `λ(τ) = (ϑ01(τ)/ϑ00(τ))⁴`.
///
/// `τ` is first moved into the standard fundamental domain using
/// `λ(τ+1) = 1/λ(τ)` and `λ(−1/τ) = 1 − λ(τ)`, which keeps the theta sums
/// well conditioned near the real axis.
pub fn lambda<T: Real>(tau: Complex<T>, eps: f64) -> Result<Complex<T>> {
    if !(tau.im > T::zero()) || !tau.re.is_finite() {
        return Err(Error::NotInUpperHalfPlane);
    }
    let mut tau = tau;
    let mut flips = Vec::new();
    for _ in 0..10_000 {
        let n = tau.re.round();
        tau.re = tau.re - n;
        if (n / T::lit(2.0)).fract() != T::zero() {
            flips.push(false);
        }
        if tau.norm_sqr() >= T::one() {
            break;
        }
        tau = -tau.inv();
        flips.push(true);
    }
    let t00 = jacobi_theta(JacobiKind::K00, tau, eps)?;
    let t01 = jacobi_theta(JacobiKind::K01, tau, eps)?;
    let mut v = (t01 / t00).powi(4);
    let one = Complex::new(T::one(), T::zero());
    for inversion in flips.into_iter().rev() {
        v = if inversion { one - v } else { v.inv() };
    }
    Ok(v)
}
