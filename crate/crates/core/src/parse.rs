//! Textual encodings shared by the CLI: Gaussian integers `a+bi`,
//! half-integral values `(a+bi)/2`, matrices `[[..,..],[..,..]]`, complex
//! floats, points `re,im,t` and 2×2 complex matrices `t11,t12;t21,t22`.

use crate::error::{Error, Result};
use crate::gaussian::{GMat2, GaussHalf, GaussInt};
use crate::halfspace::Point;
use crate::scalar::{Complex, Real};
use crate::theta::{TauMat, ThetaChar};

fn perr(what: &str, s: &str) -> Error {
    Error::Parse(format!("cannot parse {what} from {s:?}"))
}

/// Splits `a+bi`-style text into real and imaginary coefficient strings.
/// Returns `(re, Some(im))` when an imaginary part is present.
fn split_complex(s: &str) -> Option<(String, Option<String>)> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return Some((s, None));
    };
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        let c = bytes[k] as char;
        if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
            split = Some(k);
            break;
        }
    }
    let (re, im) = match split {
        Some(k) => (body[..k].to_string(), body[k..].to_string()),
        None => ("0".to_string(), body.to_string()),
    };
    let im = match im.as_str() {
        "" | "+" => "1".to_string(),
        "-" => "-1".to_string(),
        other => other.trim_start_matches('+').to_string(),
    };
    Some((re, Some(im)))
}

pub fn parse_gauss_int(s: &str) -> Result<GaussInt<i64>> {
    let (re, im) = split_complex(s).ok_or_else(|| perr("Gaussian integer", s))?;
    let re: i64 = re.trim_start_matches('+').parse().map_err(|_| perr("Gaussian integer", s))?;
    let im: i64 = match im {
        Some(v) => v.parse().map_err(|_| perr("Gaussian integer", s))?,
        None => 0,
    };
    Ok(GaussInt::new(re, im))
}

/// `(a+bi)/2`, a plain Gaussian integer, or `h` for `(1-i)/2`.
pub fn parse_gauss_half(s: &str) -> Result<GaussHalf<i64>> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "h" {
        return Ok(GaussHalf::one_minus_i_half());
    }
    if let Some(inner) = t.strip_suffix("/2") {
        let inner = inner
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(inner);
        Ok(GaussHalf::from_num(parse_gauss_int(inner)?))
    } else {
        GaussHalf::from_int(parse_gauss_int(&t)?)
    }
}

/// `[[a,b],[c,d]]`.
pub fn parse_gmat2(s: &str) -> Result<GMat2<i64>> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = t
        .strip_prefix("[[")
        .and_then(|x| x.strip_suffix("]]"))
        .ok_or_else(|| perr("matrix", s))?;
    let rows: Vec<&str> = inner.split("],[").collect();
    if rows.len() != 2 {
        return Err(perr("matrix", s));
    }
    let mut e = Vec::with_capacity(4);
    for r in rows {
        let cells: Vec<&str> = r.split(',').collect();
        if cells.len() != 2 {
            return Err(perr("matrix", s));
        }
        for c in cells {
            e.push(parse_gauss_int(c)?);
        }
    }
    Ok(GMat2::new(e[0], e[1], e[2], e[3]))
}

pub fn parse_complex<T: Real>(s: &str) -> Result<Complex<T>> {
    let (re, im) = split_complex(s).ok_or_else(|| perr("complex number", s))?;
    let re: f64 = re.trim_start_matches('+').parse().map_err(|_| perr("complex number", s))?;
    let im: f64 = match im {
        Some(v) => v.parse().map_err(|_| perr("complex number", s))?,
        None => 0.0,
    };
    Ok(Complex::new(T::lit(re), T::lit(im)))
}

/// `re,im,t`.
pub fn parse_point<T: Real>(s: &str) -> Result<Point<T>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(perr("point (re,im,t)", s));
    }
    let mut v = [0.0f64; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| perr("point (re,im,t)", s))?;
    }
    Point::from_parts(T::lit(v[0]), T::lit(v[1]), T::lit(v[2]))
}

/// `t11,t12;t21,t22`.
pub fn parse_tau<T: Real>(s: &str) -> Result<TauMat<T>> {
    let rows: Vec<&str> = s.split(';').collect();
    if rows.len() != 2 {
        return Err(perr("tau (t11,t12;t21,t22)", s));
    }
    let mut e = Vec::with_capacity(4);
    for r in rows {
        let cells: Vec<&str> = r.split(',').collect();
        if cells.len() != 2 {
            return Err(perr("tau (t11,t12;t21,t22)", s));
        }
        for c in cells {
            e.push(parse_complex::<T>(c)?);
        }
    }
    TauMat::new([[e[0], e[1]], [e[2], e[3]]])
}

/// `a1,a2;b1,b2` with each slot a half-integral literal.
pub fn parse_char(s: &str) -> Result<ThetaChar<i64>> {
    let grammar = || {
        Error::Parse(format!(
            "cannot parse characteristic {s:?}; expected \"a1,a2;b1,b2\" with slots like 0, h or (1-1i)/2"
        ))
    };
    let halves: Vec<&str> = s.split(';').collect();
    if halves.len() != 2 {
        return Err(grammar());
    }
    let mut v = Vec::with_capacity(4);
    for h in halves {
        let cells: Vec<&str> = h.split(',').collect();
        if cells.len() != 2 {
            return Err(grammar());
        }
        for c in cells {
            v.push(parse_gauss_half(c).map_err(|_| grammar())?);
        }
    }
    Ok(ThetaChar::new([v[0], v[1]], [v[2], v[3]]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_literals() {
        assert_eq!(parse_gauss_int("1+1i").unwrap(), GaussInt::new(1, 1));
        assert_eq!(parse_gauss_int("0+0i").unwrap(), GaussInt::new(0, 0));
        assert_eq!(parse_gauss_int("3-2i").unwrap(), GaussInt::new(3, -2));
        assert_eq!(parse_gauss_int("-i").unwrap(), GaussInt::new(0, -1));
        assert_eq!(parse_gauss_int("i").unwrap(), GaussInt::new(0, 1));
        assert_eq!(parse_gauss_int("-4").unwrap(), GaussInt::new(-4, 0));
        assert!(parse_gauss_int("1.5").is_err());
        assert!(parse_gauss_int("x").is_err());
        for x in [GaussInt::new(5, -7), GaussInt::new(-2, 0), GaussInt::new(0, 9)] {
            assert_eq!(parse_gauss_int(&x.to_string()).unwrap(), x);
        }
    }

    #[test]
    fn half_and_matrix_literals() {
        assert_eq!(parse_gauss_half("(1-1i)/2").unwrap(), GaussHalf::one_minus_i_half());
        assert_eq!(parse_gauss_half("0").unwrap(), GaussHalf::zero());
        assert_eq!(parse_gauss_half("1").unwrap().num, GaussInt::new(2, 0));
        let m = parse_gmat2("[[1,i],[0,1]]").unwrap();
        assert_eq!(m, GMat2::from_parts([(1, 0), (0, 1), (0, 0), (1, 0)]));
        assert_eq!(parse_gmat2(&m.to_string()).unwrap(), m);
        assert!(parse_gmat2("[[1,i],[0]]").is_err());
    }

    #[test]
    fn float_literals() {
        let z: Complex<f64> = parse_complex("0.5-0.25i").unwrap();
        assert_eq!(z, Complex::new(0.5, -0.25));
        let z: Complex<f64> = parse_complex("1e-3+2e+1i").unwrap();
        assert_eq!(z, Complex::new(1e-3, 20.0));
        let z: Complex<f64> = parse_complex("i").unwrap();
        assert_eq!(z, Complex::new(0.0, 1.0));
        let p: Point<f64> = parse_point("0,0,1").unwrap();
        assert_eq!(p, Point::base());
        assert!(parse_point::<f64>("0,0,-1").is_err());
        let tau: TauMat<f64> = parse_tau("i,0;0,i").unwrap();
        assert_eq!(tau.m[1][1], Complex::new(0.0, 1.0));
    }

    #[test]
    fn characteristic_literals() {
        let c = parse_char("(1-1i)/2,0;0,0").unwrap();
        assert_eq!(c.a[0], GaussHalf::one_minus_i_half());
        assert!(c.b[0].is_zero());
        assert_eq!(parse_char(&c.to_string()).unwrap(), c);
        let e = parse_char("0,0;0").unwrap_err();
        assert!(e.to_string().contains("a1,a2;b1,b2"));
    }
}
