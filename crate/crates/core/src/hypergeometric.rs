//! Gauss hypergeometric series, triangle indices and the Schwarz map of
//! `E(1/2, 1/2, 1)`, which inverts the lambda function.

use crate::error::{Error, Result};
use crate::scalar::{Complex, Real};
use crate::summation::ComplexAccumulator;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Closest `|x|` may come to the unit circle.
pub const DOMAIN_MARGIN: f64 = 1e-3;

/// Term cap of the series.
pub const MAX_TERMS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Index {
    Finite(u32),
    Infinite,
}

impl Index {
    pub fn reciprocal(self) -> Ratio<i64> {
        match self {
            Index::Finite(n) => Ratio::new(1, i64::from(n)),
            Index::Infinite => Ratio::from_integer(0),
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Index {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" | "infinity" => Ok(Index::Infinite),
            t => match t.parse::<u32>() {
                Ok(n) if n >= 2 => Ok(Index::Finite(n)),
                _ => Err(Error::Parse(format!("triangle index {t:?}: expected an integer ≥ 2 or inf"))),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TriangleKind {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriangleData {
    pub p: Index,
    pub q: Index,
    pub r: Index,
}

impl TriangleData {
    pub fn new(p: Index, q: Index, r: Index) -> Self {
        Self { p, q, r }
    }

    pub fn finite(p: u32, q: u32, r: u32) -> Result<Self> {
        let ix = |n: u32| {
            if n >= 2 {
                Ok(Index::Finite(n))
            } else {
                Err(Error::OutOfDomain(format!("triangle index {n} < 2")))
            }
        };
        Ok(Self::new(ix(p)?, ix(q)?, ix(r)?))
    }

    pub fn ideal() -> Self {
        Self::new(Index::Infinite, Index::Infinite, Index::Infinite)
    }

    pub fn angle_sum(&self) -> Ratio<i64> {
        self.p.reciprocal() + self.q.reciprocal() + self.r.reciprocal()
    }

    pub fn kind(&self) -> TriangleKind {
        let s = self.angle_sum();
        let one = Ratio::from_integer(1);
        match s.cmp(&one) {
            std::cmp::Ordering::Greater => TriangleKind::Elliptic,
            std::cmp::Ordering::Equal => TriangleKind::Parabolic,
            std::cmp::Ordering::Less => TriangleKind::Hyperbolic,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HGParams<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Real> HGParams<T> {
    pub fn new(a: T, b: T, c: T) -> Self {
        Self { a, b, c }
    }
}

/// Exact principal-branch parameters: `c = 1 − 1/p`, `a + b = c − 1/q`, `a − b = 1/r`.
pub fn params_exact(t: &TriangleData) -> [Ratio<i64>; 3] {
    let c = Ratio::from_integer(1) - t.p.reciprocal();
    let sum = c - t.q.reciprocal();
    let diff = t.r.reciprocal();
    let two = Ratio::from_integer(2);
    [(sum + diff) / two, (sum - diff) / two, c]
}

pub fn params_from_indices<T: Real>(t: &TriangleData) -> HGParams<T> {
    let f = |r: Ratio<i64>| T::lit(*r.numer() as f64) / T::lit(*r.denom() as f64);
    let [a, b, c] = params_exact(t);
    HGParams::new(f(a), f(b), f(c))
}

fn is_nonpositive_integer(c: f64) -> bool {
    c <= 0.0 && c == c.round()
}

/// Power series of `₂F₁(a, b; c; x)`, stopped once the geometric bound on the
/// remaining tail drops below `eps`.
pub fn gauss_2f1<T: Real>(params: &HGParams<T>, x: Complex<T>, eps: f64) -> Result<Complex<T>> {
    let (a, b, c) = (params.a, params.b, params.c);
    let cf = c.to_f64_lossy();
    if is_nonpositive_integer(cf) {
        return Err(Error::ParameterPole(cf));
    }
    let ax = x.norm().to_f64_lossy();
    if !(ax <= 1.0 - DOMAIN_MARGIN) {
        return Err(Error::OutOfDomain(format!("|x| = {ax} exceeds {}", 1.0 - DOMAIN_MARGIN)));
    }
    let (aa, ab, ac) = (a.to_f64_lossy().abs(), b.to_f64_lossy().abs(), cf.abs());
    // beyond this index the coefficient ratio is monotone and close to 1
    let settle = (2.0 * (aa + ab + ac) + 2.0).ceil() as usize;
    let mut sum = ComplexAccumulator::<T>::new();
    let mut term = Complex::new(T::one(), T::zero());
    for n in 0..MAX_TERMS {
        sum.add(term);
        let nf = T::lit(n as f64);
        term = term * x * ((a + nf) * (b + nf) / ((c + nf) * (nf + T::one())));
        if term.norm().to_f64_lossy() == 0.0 {
            break;
        }
        let k = (n + 1) as f64;
        if n + 1 > settle {
            let growth = ((k + aa) * (k + ab) / ((k - ac) * (k + 1.0))).max(1.0);
            let rho = ax * growth;
            if rho < 1.0 && term.norm().to_f64_lossy() / (1.0 - rho) < eps {
                sum.add(term);
                break;
            }
        }
    }
    Ok(sum.value())
}

/// `τ = i·F(x)/F(1−x)` with `F = ₂F₁(1/2, 1/2; 1; ·)`, so that `λ(τ) = x` for the
/// lambda of the theta module (which tends to 1 at the cusp i∞).
pub fn schwarz_map_inf<T: Real>(x: T, eps: f64) -> Result<Complex<T>> {
    let xf = x.to_f64_lossy();
    if !(xf > 0.0 && xf < 1.0) {
        return Err(Error::OutOfDomain(format!("x = {xf} is not in (0, 1)")));
    }
    let half = T::lit(0.5);
    let p = HGParams::new(half, half, T::one());
    let num = gauss_2f1(&p, Complex::new(x, T::zero()), eps)?;
    let den = gauss_2f1(&p, Complex::new(T::one() - x, T::zero()), eps)?;
    Ok(Complex::new(T::zero(), num.re / den.re))
}
