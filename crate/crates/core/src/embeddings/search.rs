use super::{annotate, octa_map, sample_points, CharTuple, BASE_POINT_FLOOR, SCAN_POINTS};
use crate::error::{Error, Result};
use crate::gaussian::GaussHalf;
use crate::groups::{sample_elements, GroupElement, GroupSpec, Reducer};
use crate::halfspace::Point;
use crate::theta::{theta_on_h3, ThetaChar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

const EVAL_EPS: f64 = 1e-12;
const CONTAINMENT_SLACK: f64 = 1e-9;
const REDUCTION_DEPTH: usize = 4;
const WORD_LEN: usize = 8;

/// `x₀ = θ[0,0;0,0]` with `x₁, x₂, x₃` the three even characteristics that
/// pair a nonzero `a` with a nonzero `b` in complementary or equal slots.
pub fn standard_octa_tuple() -> CharTuple {
    let (z, h) = (GaussHalf::zero(), GaussHalf::one_minus_i_half());
    [
        ThetaChar::zero(),
        ThetaChar::new([z, h], [h, z]),
        ThetaChar::new([h, z], [z, h]),
        ThetaChar::new([h, h], [h, h]),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TupleScore {
    pub tuple: CharTuple,
    /// Largest `|t₁|+|t₂|+|t₃|` over the reduced samples.
    pub containment: f64,
    /// Largest ratio change under the sampled group elements.
    pub invariance: f64,
}

impl TupleScore {
    fn miss(&self) -> f64 {
        (self.containment - 1.0).max(0.0) + self.invariance
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub odd: Vec<ThetaChar>,
    pub survivors: Vec<ThetaChar>,
    pub tested: usize,
    pub admitted: Vec<TupleScore>,
    pub nearest_miss: Option<TupleScore>,
}

struct Table {
    base: Vec<Vec<f64>>,
    moved: Vec<Vec<Vec<f64>>>,
}

fn tabulate(chars: &[ThetaChar], pts: &[Point<f64>], elems: &[GroupElement]) -> Result<Table> {
    let rows = pts
        .par_iter()
        .map(|p| {
            let eval = |q: &Point<f64>| chars.iter().map(|c| theta_on_h3(c, q, EVAL_EPS)).collect::<Result<Vec<_>>>();
            let base = eval(p)?;
            let moved = elems.iter().map(|e| eval(&e.act(p)?)).collect::<Result<Vec<_>>>()?;
            Ok((base, moved))
        })
        .collect::<Result<Vec<_>>>()?;
    let (base, moved) = rows.into_iter().unzip();
    Ok(Table { base, moved })
}

fn score(t: &Table, idx: [usize; 4]) -> (f64, f64) {
    let mut containment: f64 = 0.0;
    let mut invariance: f64 = 0.0;
    let ratios = |v: &[f64]| -> Option<[f64; 3]> {
        let x0 = v[idx[0]];
        (x0.abs() > BASE_POINT_FLOOR).then(|| [v[idx[1]] / x0, v[idx[2]] / x0, v[idx[3]] / x0])
    };
    for (base, moved) in t.base.iter().zip(&t.moved) {
        let Some(r) = ratios(base) else { return (f64::INFINITY, f64::INFINITY) };
        containment = containment.max(r.iter().map(|x| x.abs()).sum());
        for m in moved {
            let Some(s) = ratios(m) else { return (containment, f64::INFINITY) };
            for k in 0..3 {
                invariance = invariance.max((s[k] - r[k]).abs());
            }
        }
    }
    (containment, invariance)
}

fn reduced_samples(samples: usize, seed: u64) -> Result<(GroupSpec, Vec<Point<f64>>)> {
    let spec = GroupSpec::by_name("gammaT2")?;
    let reducer = Reducer::new(&spec, REDUCTION_DEPTH);
    let pts = sample_points(samples, seed).par_iter().map(|p| reducer.reduce(p).point).collect();
    Ok((spec, pts))
}

/// Tests every ordered 4-tuple of non-vanishing level-(1+i) characteristics
/// for octahedron containment on reduced samples and for invariance of the
/// three ratios under sampled elements of the extended level-2 group.
pub fn search_base_thetas(samples: usize, group_elems: usize, tol: f64, seed: u64) -> Result<SearchReport> {
    if samples < 100 {
        return Err(Error::OutOfDomain(format!("samples = {samples}; at least 100 are required")));
    }
    let annotated = annotate(&ThetaChar::level_one_plus_i_all(), SCAN_POINTS, 1e-13)?;
    let odd: Vec<ThetaChar> = annotated.iter().filter(|e| e.odd).map(|e| e.chr).collect();
    let survivors: Vec<ThetaChar> = annotated.iter().filter(|e| !e.odd).map(|e| e.chr).collect();
    let (spec, pts) = reduced_samples(samples, seed)?;
    let elems = if group_elems == 0 {
        Vec::new()
    } else {
        sample_elements(&spec, group_elems, WORD_LEN, seed.wrapping_add(0x9e37_79b9))?
    };
    let table = tabulate(&survivors, &pts, &elems)?;

    let n = survivors.len();
    let mut admitted = Vec::new();
    let mut nearest: Option<TupleScore> = None;
    let mut tested = 0;
    for i0 in 0..n {
        for i1 in 0..n {
            for i2 in 0..n {
                for i3 in 0..n {
                    let idx = [i0, i1, i2, i3];
                    if idx.iter().collect::<HashSet<_>>().len() < 4 {
                        continue;
                    }
                    tested += 1;
                    let (containment, invariance) = score(&table, idx);
                    let s = TupleScore { tuple: idx.map(|k| survivors[k]), containment, invariance };
                    if containment <= 1.0 + CONTAINMENT_SLACK && invariance <= tol {
                        admitted.push(s);
                    } else if nearest.as_ref().is_none_or(|b| s.miss() < b.miss()) {
                        nearest = Some(s);
                    }
                }
            }
        }
    }
    Ok(SearchReport { odd, survivors, tested, admitted, nearest_miss: nearest })
}

/// Admissible tuples in canonical order; `NoTupleFound` carries the nearest miss.
pub fn find_base_thetas(samples: usize, group_elems: usize, tol: f64, seed: u64) -> Result<Vec<CharTuple>> {
    let report = search_base_thetas(samples, group_elems, tol, seed)?;
    if report.admitted.is_empty() {
        let detail = match &report.nearest_miss {
            Some(m) => format!(
                "{} tuples tested; nearest miss {} | {} | {} | {} with containment {:.3e} and invariance {:.3e}",
                report.tested, m.tuple[0], m.tuple[1], m.tuple[2], m.tuple[3], m.containment, m.invariance
            ),
            None => format!("{} tuples tested", report.tested),
        };
        return Err(Error::NoTupleFound(detail));
    }
    Ok(report.admitted.into_iter().map(|s| s.tuple).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coverage {
    pub samples: usize,
    pub resolution: f64,
    pub cells_inside: usize,
    pub cells_hit: usize,
    pub fraction: f64,
    pub max_l1: f64,
}

/// Fraction of the grid cells (side `resolution`, centers inside
/// `|t₁|+|t₂|+|t₃| ≤ 1`) hit by the image of `samples` points, with `z`
/// uniform in the unit square and `log t` uniform in `[ln 1/20, ln 20]`.
pub fn octa_coverage(tuple: &CharTuple, samples: usize, resolution: f64, seed: u64) -> Result<Coverage> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = 20f64.ln();
    let pts: Vec<Point<f64>> = (0..samples)
        .map(|_| {
            let (x, y) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
            Point::from_parts(x, y, (rng.gen_range(-1.0..1.0) * span).exp())
        })
        .collect::<Result<_>>()?;
    let images: Vec<Result<[f64; 3]>> = pts.par_iter().map(|p| Ok(octa_map(p, tuple, EVAL_EPS)?.to_array())).collect();
    let n = (1.0 / resolution).round() as i64;
    let cell = |x: f64| ((x + 1.0) / resolution).floor().clamp(0.0, (2 * n - 1) as f64) as i64;
    let mut hit = HashSet::new();
    let mut max_l1: f64 = 0.0;
    for im in images {
        let v = im?;
        max_l1 = max_l1.max(v.iter().map(|x| x.abs()).sum());
        hit.insert((cell(v[0]), cell(v[1]), cell(v[2])));
    }
    let center = |k: i64| -1.0 + (k as f64 + 0.5) * resolution;
    let inside = |c: &(i64, i64, i64)| center(c.0).abs() + center(c.1).abs() + center(c.2).abs() <= 1.0;
    let mut cells_inside = 0;
    for a in 0..2 * n {
        for b in 0..2 * n {
            for c in 0..2 * n {
                cells_inside += usize::from(inside(&(a, b, c)));
            }
        }
    }
    let cells_hit = hit.iter().filter(|c| inside(c)).count();
    Ok(Coverage {
        samples,
        resolution,
        cells_inside,
        cells_hit,
        fraction: cells_hit as f64 / cells_inside as f64,
        max_l1,
    })
}
