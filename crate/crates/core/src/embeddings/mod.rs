//! Theta-ratio maps out of hyperbolic 3-space: the octahedron map, the
//! quadric map, the deep-characteristic catalog, the search for admissible
//! characteristic tuples and an invariance-testing harness.

mod expr;
mod harness;
mod search;

pub use expr::Expr;
pub use harness::{invariance_test, parse_tuple, FnId, InvarianceReport};
pub use search::{
    find_base_thetas, octa_coverage, search_base_thetas, standard_octa_tuple, Coverage, SearchReport, TupleScore,
};

use crate::error::{Error, Result};
use crate::halfspace::Point;
use crate::scalar::Real;
use crate::theta::{is_identically_vanishing, theta_on_h3, ThetaChar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Points in the odd/even vanishing scan.
pub const SCAN_POINTS: usize = 20;

/// Smallest admissible `|x₀|`.
pub const BASE_POINT_FLOOR: f64 = 1e-9;

pub type CharTuple = [ThetaChar; 4];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OctaCoords<T> {
    pub t1: T,
    pub t2: T,
    pub t3: T,
}

impl<T: Real> OctaCoords<T> {
    pub fn l1_norm(&self) -> T {
        self.t1.abs() + self.t2.abs() + self.t3.abs()
    }

    pub fn to_array(&self) -> [T; 3] {
        [self.t1, self.t2, self.t3]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaCoords<T> {
    pub l1: T,
    pub l2: T,
    pub l3: T,
    pub l4: T,
}

impl<T: Real> LambdaCoords<T> {
    /// `(ξ₁²+ξ₂², ξ₁²ξ₂², ξ₃², ξ₁ξ₂ξ₃)`.
    pub fn from_ratios(xi: [T; 3]) -> Self {
        let [a, b, c] = xi;
        Self { l1: a * a + b * b, l2: a * a * (b * b), l3: c * c, l4: a * b * c }
    }

    /// `|l₂l₃ − l₄²| / max(1, l₄²)`.
    pub fn quadric_residual(&self) -> T {
        let l4sq = self.l4 * self.l4;
        (self.l2 * self.l3 - l4sq).abs() / l4sq.max(T::one())
    }

    pub fn to_array(&self) -> [T; 4] {
        [self.l1, self.l2, self.l3, self.l4]
    }
}

fn theta_ratios<T: Real>(p: &Point<T>, chars: &CharTuple, eps: f64) -> Result<[T; 3]> {
    let x0 = theta_on_h3(&chars[0], p, eps)?;
    if !(x0.abs().to_f64_lossy() > BASE_POINT_FLOOR) {
        return Err(Error::BasePointVanishing(x0.to_f64_lossy()));
    }
    let mut out = [T::zero(); 3];
    for (k, c) in chars[1..].iter().enumerate() {
        out[k] = if *c == chars[0] { T::one() } else { theta_on_h3(c, p, eps)? / x0 };
    }
    Ok(out)
}

/// `p ↦ (x₁, x₂, x₃)/x₀`.
pub fn octa_map<T: Real>(p: &Point<T>, chars: &CharTuple, eps: f64) -> Result<OctaCoords<T>> {
    let [t1, t2, t3] = theta_ratios(p, chars, eps)?;
    Ok(OctaCoords { t1, t2, t3 })
}

pub fn lambda_map<T: Real>(p: &Point<T>, chars: &CharTuple, eps: f64) -> Result<LambdaCoords<T>> {
    Ok(LambdaCoords::from_ratios(theta_ratios(p, chars, eps)?))
}

/// Seeded sample points: `z` uniform in `[-1, 1]²`, `log t` uniform in `[ln ¼, ln 4]`.
pub fn sample_points(n: usize, seed: u64) -> Vec<Point<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let x = rng.gen_range(-1.0..1.0);
            let y = rng.gen_range(-1.0..1.0);
            let t = (rng.gen_range(-1.0..1.0) * 4f64.ln()).exp();
            Point::from_parts(x, y, t).expect("positive height")
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub chr: ThetaChar,
    pub odd: bool,
}

/// Points of the vanishing scan.
pub fn vanishing_scan_points(n: usize) -> Vec<Point<f64>> {
    sample_points(n, 0x05ee_d0dd)
}

pub fn annotate(chars: &[ThetaChar], scan_points: usize, eps: f64) -> Result<Vec<CatalogEntry>> {
    let pts = vanishing_scan_points(scan_points);
    chars
        .iter()
        .map(|c| Ok(CatalogEntry { chr: *c, odd: is_identically_vanishing(c, &pts, eps)? }))
        .collect()
}

/// The 256 characteristics with coordinates in `{0, 1/2, i/2, (1+i)/2}`,
/// annotated odd when the theta constant vanishes at every scan point.
pub fn deep_theta_catalog() -> Vec<CatalogEntry> {
    deep_theta_catalog_with(SCAN_POINTS)
}

pub fn deep_theta_catalog_with(scan_points: usize) -> Vec<CatalogEntry> {
    annotate(&ThetaChar::level_two_all(), scan_points, 1e-13).expect("scan points are well inside H³")
}
