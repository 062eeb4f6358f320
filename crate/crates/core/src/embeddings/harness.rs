use super::{lambda_map, octa_map, sample_points, standard_octa_tuple, CharTuple, Expr};
use crate::error::{Error, Result};
use crate::groups::{sample_elements, GroupSpec};
use crate::halfspace::Point;
use crate::parse::parse_char;
use crate::scalar::Complex;
use crate::theta::{lambda, theta_on_h3, ThetaChar};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

const EVAL_EPS: f64 = 1e-12;
const WORD_LEN: usize = 8;

/// Functions the harness can test.
#[derive(Clone, Debug, PartialEq)]
pub enum FnId {
    Const,
    /// The height coordinate `t`.
    Height,
    /// Classical λ on the vertical half-plane over the real axis, `τ = Re z + i·t`.
    Lambda1d,
    Octa(CharTuple),
    Lambda(CharTuple),
    Ratio(ThetaChar, ThetaChar),
    Expr(Expr),
}

/// Four characteristics separated by `|`.
pub fn parse_tuple(s: &str) -> Result<CharTuple> {
    let parts: Vec<&str> = s.split('|').collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!("tuple {s:?}: expected four characteristics separated by '|'")));
    }
    Ok([parse_char(parts[0])?, parse_char(parts[1])?, parse_char(parts[2])?, parse_char(parts[3])?])
}

impl FromStr for FnId {
    type Err = Error;

    /// `const`, `height`, `lambda1d`, `octa[:c0|c1|c2|c3]`, `lambda[:c0|c1|c2|c3]`,
    /// `ratio:c|c'`, `expr:<expression>`.
    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a)),
            None => (s.trim(), None),
        };
        match (head, arg) {
            ("const", None) => Ok(FnId::Const),
            ("height", None) => Ok(FnId::Height),
            ("lambda1d", None) => Ok(FnId::Lambda1d),
            ("octa", None) => Ok(FnId::Octa(standard_octa_tuple())),
            ("octa", Some(a)) => Ok(FnId::Octa(parse_tuple(a)?)),
            ("lambda", None) => Ok(FnId::Lambda(standard_octa_tuple())),
            ("lambda", Some(a)) => Ok(FnId::Lambda(parse_tuple(a)?)),
            ("ratio", Some(a)) => {
                let (n, d) = a
                    .split_once('|')
                    .ok_or_else(|| Error::Parse(format!("ratio {a:?}: expected \"num|den\"")))?;
                Ok(FnId::Ratio(parse_char(n)?, parse_char(d)?))
            }
            ("expr", Some(a)) => Ok(FnId::Expr(a.parse()?)),
            _ => Err(Error::Parse(format!(
                "unknown function {s:?}; expected const, height, lambda1d, octa[:tuple], lambda[:tuple], ratio:c|c or expr:..."
            ))),
        }
    }
}

impl fmt::Display for FnId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tuple = |t: &CharTuple| format!("{}|{}|{}|{}", t[0], t[1], t[2], t[3]);
        match self {
            FnId::Const => f.write_str("const"),
            FnId::Height => f.write_str("height"),
            FnId::Lambda1d => f.write_str("lambda1d"),
            FnId::Octa(t) => write!(f, "octa:{}", tuple(t)),
            FnId::Lambda(t) => write!(f, "lambda:{}", tuple(t)),
            FnId::Ratio(a, b) => write!(f, "ratio:{a}|{b}"),
            FnId::Expr(e) => write!(f, "expr:{e}"),
        }
    }
}

impl FnId {
    /// Whether the function lives on the vertical half-plane over the real axis.
    pub fn is_one_dimensional(&self) -> bool {
        matches!(self, FnId::Lambda1d)
    }

    pub fn eval(&self, p: &Point<f64>, eps: f64) -> Result<Vec<Complex<f64>>> {
        let real = |v: &[f64]| v.iter().map(|&x| Complex::new(x, 0.0)).collect();
        Ok(match self {
            FnId::Const => vec![Complex::new(1.0, 0.0)],
            FnId::Height => vec![Complex::new(p.t, 0.0)],
            FnId::Lambda1d => vec![lambda(Complex::new(p.z.re, p.t), eps)?],
            FnId::Octa(t) => real(&octa_map(p, t, eps)?.to_array()),
            FnId::Lambda(t) => real(&lambda_map(p, t, eps)?.to_array()),
            FnId::Ratio(a, b) => {
                let d = theta_on_h3(b, p, eps)?;
                if d.abs() < 1e-300 {
                    return Err(Error::SingularDenominator);
                }
                vec![Complex::new(theta_on_h3(a, p, eps)? / d, 0.0)]
            }
            FnId::Expr(e) => vec![e.eval(p, eps)?],
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub function: String,
    pub group: String,
    pub samples: usize,
    pub elements: usize,
    pub seed: u64,
    pub max_abs_deviation: f64,
    pub worst_point: Point<f64>,
    pub worst_word: Vec<usize>,
}

/// `max |f(g·p) − f(p)|` over seeded sample points and sampled group elements
/// (congruence-filtered words of length ≤ 8 when the group carries a filter).
pub fn invariance_test(
    f: &FnId,
    spec: &GroupSpec,
    samples: usize,
    elems: usize,
    seed: u64,
) -> Result<InvarianceReport> {
    let mut pts = sample_points(samples, seed);
    if f.is_one_dimensional() {
        for p in &mut pts {
            p.z.im = 0.0;
        }
    }
    let group = sample_elements(spec, elems, WORD_LEN, seed.wrapping_add(1))?;
    let per_point: Vec<Result<(f64, usize)>> = pts
        .par_iter()
        .map(|p| {
            let base = f.eval(p, EVAL_EPS)?;
            let mut worst = (0.0, usize::MAX);
            for (k, g) in group.iter().enumerate() {
                let v = f.eval(&g.act(p)?, EVAL_EPS)?;
                let dev = base.iter().zip(&v).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                if dev > worst.0 || worst.1 == usize::MAX {
                    worst = (dev, k);
                }
            }
            Ok(worst)
        })
        .collect();
    let mut best = (0.0, 0usize, usize::MAX);
    for (i, r) in per_point.into_iter().enumerate() {
        let (dev, k) = r?;
        if dev > best.0 || best.2 == usize::MAX {
            best = (dev, i, k);
        }
    }
    Ok(InvarianceReport {
        function: f.to_string(),
        group: spec.name.clone(),
        samples,
        elements: group.len(),
        seed,
        max_abs_deviation: best.0,
        worst_point: pts.get(best.1).copied().unwrap_or_else(Point::base),
        worst_word: group.get(best.2).map(|g| g.word.clone()).unwrap_or_default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fn_ids_round_trip() {
        for s in ["const", "height", "lambda1d", "octa", "lambda", "ratio:0,0;0,0|h,0;0,h", "expr:th[0,0;0,0]^2"] {
            let f: FnId = s.parse().unwrap();
            let again: FnId = f.to_string().parse().unwrap();
            assert_eq!(f, again, "{s}");
        }
        assert!("nope".parse::<FnId>().is_err());
        assert!("octa:0,0;0,0".parse::<FnId>().is_err());
    }

    #[test]
    fn trivial_cases() {
        let w = GroupSpec::whitehead();
        let r = invariance_test(&FnId::Const, &w, 20, 10, 3).unwrap();
        assert_eq!(r.max_abs_deviation, 0.0);
        let r = invariance_test(&FnId::Height, &w, 20, 10, 3).unwrap();
        assert!(r.max_abs_deviation > 0.1);
        assert_eq!(r, invariance_test(&FnId::Height, &w, 20, 10, 3).unwrap());
    }

    #[test]
    fn classical_lambda_is_level_two_invariant() {
        let spec = GroupSpec::by_name("gamma2_classical").unwrap();
        let r = invariance_test(&FnId::Lambda1d, &spec, 30, 20, 0).unwrap();
        assert!(r.max_abs_deviation < 1e-9, "{r:?}");
    }
}
