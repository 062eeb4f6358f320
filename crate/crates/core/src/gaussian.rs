//! Exact arithmetic in Z[i]: Gaussian integers, half-integral Gaussian
//! rationals (denominator 2) and 2×2 matrices, with reduction modulo the
//! ideals (1+i) and (2).

use crate::error::{Error, Result};
use crate::scalar::{Complex, Real};
use num_traits::{CheckedNeg, PrimInt, Signed};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::hash::Hash;

/// Machine integer carrying the components of a Gaussian integer.
pub trait GaussWord: PrimInt + Signed + CheckedNeg + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {}

impl<I> GaussWord for I where I: PrimInt + Signed + CheckedNeg + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {}

#[inline]
fn add<I: GaussWord>(x: I, y: I) -> Result<I> {
    x.checked_add(&y).ok_or(Error::Overflow)
}

#[inline]
fn sub<I: GaussWord>(x: I, y: I) -> Result<I> {
    x.checked_sub(&y).ok_or(Error::Overflow)
}

#[inline]
fn mul<I: GaussWord>(x: I, y: I) -> Result<I> {
    x.checked_mul(&y).ok_or(Error::Overflow)
}

#[inline]
fn lit<I: GaussWord>(v: i8) -> I {
    I::from(v).expect("small literal")
}

/// Rounds `p / q` (q > 0) to the nearest integer, ties towards +∞.
fn div_round_pos<I: GaussWord>(p: I, q: I) -> Result<I> {
    let two = lit::<I>(2);
    let num = add(mul(two, p)?, q)?;
    let den = mul(two, q)?;
    // floor division
    let d = num / den;
    Ok(if (num % den) < I::zero() { d - I::one() } else { d })
}

/// A Gaussian integer `re + im·i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaussInt<I = i64> {
    pub re: I,
    pub im: I,
}

impl<I: GaussWord> GaussInt<I> {
    pub fn new(re: I, im: I) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(I::zero(), I::zero())
    }

    pub fn one() -> Self {
        Self::new(I::one(), I::zero())
    }

    pub fn i() -> Self {
        Self::new(I::zero(), I::one())
    }

    /// `1 + i`, the prime above 2.
    pub fn one_plus_i() -> Self {
        Self::new(I::one(), I::one())
    }

    pub fn two() -> Self {
        Self::new(lit(2), I::zero())
    }

    /// The four units `1, i, -1, -i`.
    pub fn units() -> [Self; 4] {
        let (o, z) = (I::one(), I::zero());
        [Self::new(o, z), Self::new(z, o), Self::new(-o, z), Self::new(z, -o)]
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn checked_neg(self) -> Result<Self> {
        Ok(Self::new(
            self.re.checked_neg().ok_or(Error::Overflow)?,
            self.im.checked_neg().ok_or(Error::Overflow)?,
        ))
    }

    pub fn checked_add(self, o: Self) -> Result<Self> {
        Ok(Self::new(add(self.re, o.re)?, add(self.im, o.im)?))
    }

    pub fn checked_sub(self, o: Self) -> Result<Self> {
        Ok(Self::new(sub(self.re, o.re)?, sub(self.im, o.im)?))
    }

    pub fn checked_mul(self, o: Self) -> Result<Self> {
        Ok(Self::new(
            sub(mul(self.re, o.re)?, mul(self.im, o.im)?)?,
            add(mul(self.re, o.im)?, mul(self.im, o.re)?)?,
        ))
    }

    /// `re² + im²`.
    pub fn norm(self) -> Result<I> {
        add(mul(self.re, self.re)?, mul(self.im, self.im)?)
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.norm(), Ok(n) if n == I::one())
    }

    /// Exact quotient if `m` divides `self`.
    pub fn checked_div_exact(self, m: Self) -> Result<Option<Self>> {
        let n = m.norm()?;
        if n.is_zero() {
            return Ok(None);
        }
        let p = self.checked_mul(m.conj())?;
        if (p.re % n).is_zero() && (p.im % n).is_zero() {
            Ok(Some(Self::new(p.re / n, p.im / n)))
        } else {
            Ok(None)
        }
    }

    pub fn divides(m: Self, x: Self) -> Result<bool> {
        Ok(x.checked_div_exact(m)?.is_some())
    }

    /// Remainder of division by `m` with the quotient rounded to the nearest
    /// Gaussian integer; its norm is at most `norm(m)/2`.
    pub fn rem_nearest(self, m: Self) -> Result<Self> {
        let n = m.norm()?;
        if n.is_zero() {
            return Err(Error::UnsupportedModulus(m.to_string()));
        }
        let p = self.checked_mul(m.conj())?;
        let q = Self::new(div_round_pos(p.re, n)?, div_round_pos(p.im, n)?);
        self.checked_sub(m.checked_mul(q)?)
    }

    /// Canonical associate: the unit multiple with `re > 0, im ≥ 0` (zero stays zero).
    pub fn canonical_associate(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let mut x = self;
        for _ in 0..4 {
            if x.re > I::zero() && x.im >= I::zero() {
                return x;
            }
            // multiply by i
            x = Self::new(-x.im, x.re);
        }
        unreachable!("some associate lies in the first quadrant")
    }

    pub fn to_complex<T: Real>(self) -> Complex<T> {
        Complex::new(
            T::from(self.re).expect("component fits the float type"),
            T::from(self.im).expect("component fits the float type"),
        )
    }

    /// Converts to another word size, failing on overflow.
    pub fn cast<J: GaussWord>(self) -> Result<GaussInt<J>> {
        Ok(GaussInt::new(
            J::from(self.re).ok_or(Error::Overflow)?,
            J::from(self.im).ok_or(Error::Overflow)?,
        ))
    }
}

impl<I: GaussWord> fmt::Display for GaussInt<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im < I::zero() {
            write!(f, "{}-{}i", self.re, I::zero() - self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// `x·y` with overflow detection.
pub fn gi_mul<I: GaussWord>(x: GaussInt<I>, y: GaussInt<I>) -> Result<GaussInt<I>> {
    x.checked_mul(y)
}

/// The two ideals supported for congruence reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Modulus {
    /// The prime ideal (1+i); residues {0, 1}.
    OnePlusI,
    /// The ideal (2); residues {0, 1, i, 1+i}.
    Two,
}

impl Modulus {
    /// Recognizes any associate of `1+i` or `2`.
    pub fn from_gauss<I: GaussWord>(m: GaussInt<I>) -> Result<Self> {
        let c = m.canonical_associate();
        if c == GaussInt::one_plus_i() {
            Ok(Modulus::OnePlusI)
        } else if c == GaussInt::two() {
            Ok(Modulus::Two)
        } else {
            Err(Error::UnsupportedModulus(m.to_string()))
        }
    }

    pub fn generator<I: GaussWord>(self) -> GaussInt<I> {
        match self {
            Modulus::OnePlusI => GaussInt::one_plus_i(),
            Modulus::Two => GaussInt::two(),
        }
    }

    /// Fixed residue representatives.
    pub fn residues<I: GaussWord>(self) -> Vec<GaussInt<I>> {
        let (z, o) = (I::zero(), I::one());
        match self {
            Modulus::OnePlusI => vec![GaussInt::new(z, z), GaussInt::new(o, z)],
            Modulus::Two => vec![
                GaussInt::new(z, z),
                GaussInt::new(o, z),
                GaussInt::new(z, o),
                GaussInt::new(o, o),
            ],
        }
    }

    /// Canonical residue of `x`: nearest-rounding remainder, then normalized
    /// to the fixed representative set.
    pub fn reduce<I: GaussWord>(self, x: GaussInt<I>) -> Result<GaussInt<I>> {
        let m = self.generator::<I>();
        let r = x.rem_nearest(m)?;
        for rep in self.residues::<I>() {
            if GaussInt::divides(m, r.checked_sub(rep)?)? {
                return Ok(rep);
            }
        }
        unreachable!("residue set is complete")
    }
}

/// Gaussian rational with denominator exactly 2: value `num / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaussHalf<I = i64> {
    pub num: GaussInt<I>,
}

impl<I: GaussWord> GaussHalf<I> {
    pub fn from_num(num: GaussInt<I>) -> Self {
        Self { num }
    }

    /// Embeds a Gaussian integer (`num = 2x`).
    pub fn from_int(x: GaussInt<I>) -> Result<Self> {
        Ok(Self { num: x.checked_mul(GaussInt::two())? })
    }

    pub fn zero() -> Self {
        Self { num: GaussInt::zero() }
    }

    /// `(1-i)/2`, the nontrivial (1+i)-torsion class.
    pub fn one_minus_i_half() -> Self {
        Self { num: GaussInt::new(I::one(), -I::one()) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Representative of the class mod Z[i] with both numerator components in {0, 1}.
    pub fn reduced(self) -> Self {
        let two = lit::<I>(2);
        let m = |v: I| {
            let r = v % two;
            if r < I::zero() { r + two } else { r }
        };
        Self { num: GaussInt::new(m(self.num.re), m(self.num.im)) }
    }

    /// Integer part `k` with `self = reduced + k`.
    pub fn integer_offset(self) -> GaussInt<I> {
        let r = self.reduced();
        let two = lit::<I>(2);
        GaussInt::new((self.num.re - r.num.re) / two, (self.num.im - r.num.im) / two)
    }

    /// Congruence mod Z[i]: numerator difference has both components even.
    pub fn congruent(&self, other: &Self) -> bool {
        self.reduced() == other.reduced()
    }

    /// True when the class lies in {0, (1-i)/2} mod Z[i].
    pub fn is_one_plus_i_torsion(&self) -> bool {
        let r = self.reduced().num;
        r.re == r.im
    }

    pub fn checked_add(self, o: Self) -> Result<Self> {
        Ok(Self { num: self.num.checked_add(o.num)? })
    }

    pub fn checked_neg(self) -> Result<Self> {
        Ok(Self { num: self.num.checked_neg()? })
    }

    pub fn conj(self) -> Self {
        Self { num: self.num.conj() }
    }

    pub fn mul_int(self, x: GaussInt<I>) -> Result<Self> {
        Ok(Self { num: self.num.checked_mul(x)? })
    }

    /// `2·Re(self · conj(other))` for `other` a Gaussian integer; always an integer.
    pub fn twice_re_pairing(self, other: GaussInt<I>) -> Result<I> {
        Ok(self.num.checked_mul(other.conj())?.re)
    }

    pub fn to_complex<T: Real>(self) -> Complex<T> {
        self.num.to_complex::<T>() * T::lit(0.5)
    }
}

impl<I: GaussWord> fmt::Display for GaussHalf<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let two = lit::<I>(2);
        if (self.num.re % two).is_zero() && (self.num.im % two).is_zero() {
            write!(f, "{}", GaussInt::new(self.num.re / two, self.num.im / two))
        } else {
            write!(f, "({})/2", self.num)
        }
    }
}

/// 2×2 matrix over Z[i], row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GMat2<I = i64> {
    pub m: [[GaussInt<I>; 2]; 2],
}

impl<I: GaussWord> GMat2<I> {
    pub fn new(a: GaussInt<I>, b: GaussInt<I>, c: GaussInt<I>, d: GaussInt<I>) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    /// Builds a matrix from `(re, im)` pairs, row-major.
    pub fn from_parts(e: [(I, I); 4]) -> Self {
        let g = |(r, i): (I, I)| GaussInt::new(r, i);
        Self::new(g(e[0]), g(e[1]), g(e[2]), g(e[3]))
    }

    pub fn identity() -> Self {
        Self::new(GaussInt::one(), GaussInt::zero(), GaussInt::zero(), GaussInt::one())
    }

    pub fn scalar(u: GaussInt<I>) -> Self {
        Self::new(u, GaussInt::zero(), GaussInt::zero(), u)
    }

    pub fn a(&self) -> GaussInt<I> {
        self.m[0][0]
    }
    pub fn b(&self) -> GaussInt<I> {
        self.m[0][1]
    }
    pub fn c(&self) -> GaussInt<I> {
        self.m[1][0]
    }
    pub fn d(&self) -> GaussInt<I> {
        self.m[1][1]
    }

    pub fn det(&self) -> Result<GaussInt<I>> {
        self.a().checked_mul(self.d())?.checked_sub(self.b().checked_mul(self.c())?)
    }

    pub fn has_unit_det(&self) -> bool {
        matches!(self.det(), Ok(d) if d.is_unit())
    }

    pub fn checked_mul(&self, h: &Self) -> Result<Self> {
        let mut out = [[GaussInt::zero(); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.m[i][0]
                    .checked_mul(h.m[0][j])?
                    .checked_add(self.m[i][1].checked_mul(h.m[1][j])?)?;
            }
        }
        Ok(Self { m: out })
    }

    pub fn checked_sub(&self, h: &Self) -> Result<Self> {
        let mut out = self.m;
        for (row, hrow) in out.iter_mut().zip(&h.m) {
            for (x, y) in row.iter_mut().zip(hrow) {
                *x = x.checked_sub(*y)?;
            }
        }
        Ok(Self { m: out })
    }

    pub fn scale(&self, u: GaussInt<I>) -> Result<Self> {
        let mut out = self.m;
        for row in out.iter_mut() {
            for e in row.iter_mut() {
                *e = e.checked_mul(u)?;
            }
        }
        Ok(Self { m: out })
    }

    pub fn neg(&self) -> Result<Self> {
        self.scale(GaussInt::one().checked_neg()?)
    }

    /// Exact inverse: adjugate divided by the unit determinant.
    pub fn inv(&self) -> Result<Self> {
        let det = self.det()?;
        if !det.is_unit() {
            return Err(Error::NonUnitDeterminant);
        }
        // 1/u = conj(u) for a unit
        let dinv = det.conj();
        Self::new(self.d(), self.b().checked_neg()?, self.c().checked_neg()?, self.a()).scale(dinv)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a().conj(), self.b().conj(), self.c().conj(), self.d().conj())
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a(), self.c(), self.b(), self.d())
    }

    pub fn conj_transpose(&self) -> Self {
        self.conj().transpose()
    }

    /// Representative of the projective class (unit multiples identified):
    /// the first nonzero entry is moved into the open first quadrant.
    pub fn projective_normal(&self) -> Self {
        let first = [self.a(), self.b(), self.c(), self.d()]
            .into_iter()
            .find(|e| !e.is_zero());
        let Some(first) = first else { return *self };
        for u in GaussInt::<I>::units() {
            if let Ok(v) = first.checked_mul(u) {
                if v == first.canonical_associate() {
                    return self.scale(u).unwrap_or(*self);
                }
            }
        }
        *self
    }

    /// Upper-triangular with equal diagonal, i.e. a translation `z ↦ z + b/a`.
    pub fn is_projective_unipotent_upper(&self) -> bool {
        self.c().is_zero() && self.a() == self.d() && self.a().is_unit()
    }

    pub fn cast<J: GaussWord>(&self) -> Result<GMat2<J>> {
        Ok(GMat2::new(self.a().cast()?, self.b().cast()?, self.c().cast()?, self.d().cast()?))
    }
}

impl<I: GaussWord> fmt::Display for GMat2<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a(), self.b(), self.c(), self.d())
    }
}

pub fn mat_mul<I: GaussWord>(g: &GMat2<I>, h: &GMat2<I>) -> Result<GMat2<I>> {
    g.checked_mul(h)
}

pub fn mat_inv<I: GaussWord>(g: &GMat2<I>) -> Result<GMat2<I>> {
    g.inv()
}

/// Entrywise canonical residues modulo `m` (an associate of `1+i` or `2`).
pub fn reduce_mod<I: GaussWord>(g: &GMat2<I>, m: GaussInt<I>) -> Result<GMat2<I>> {
    let modulus = Modulus::from_gauss(m)?;
    Ok(GMat2::new(
        modulus.reduce(g.a())?,
        modulus.reduce(g.b())?,
        modulus.reduce(g.c())?,
        modulus.reduce(g.d())?,
    ))
}

/// `g ≡ I (mod m)`.
pub fn is_congruent_identity<I: GaussWord>(g: &GMat2<I>, m: GaussInt<I>) -> Result<bool> {
    let r = reduce_mod(&g.checked_sub(&GMat2::identity())?, m)?;
    Ok(r.m.iter().flatten().all(|e| e.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = GaussInt<i64>;

    fn g(re: i64, im: i64) -> G {
        G::new(re, im)
    }

    fn mat(e: [(i64, i64); 4]) -> GMat2 {
        GMat2::from_parts(e)
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(gi_mul(g(1, 1), g(1, -1)).unwrap(), g(2, 0));
        assert_eq!(gi_mul(G::i(), G::i()).unwrap(), g(-1, 0));
        assert_eq!(gi_mul(g(1, 1), g(1, 1)).unwrap(), g(0, 2));
    }

    #[test]
    fn overflow_is_reported() {
        let big = GaussInt::<i64>::new(i64::MAX / 2, 3);
        assert_eq!(gi_mul(big, g(3, 0)), Err(Error::Overflow));
        let small = GaussInt::<i8>::new(100, 0);
        assert_eq!(small.checked_mul(small), Err(Error::Overflow));
        assert!(GaussInt::<i8>::new(100, 100).norm().is_err());
    }

    #[test]
    fn matrix_product_and_inverse() {
        let t = mat([(1, 0), (0, 1), (0, 0), (1, 0)]);
        let s = mat([(1, 0), (0, 0), (1, 1), (1, 0)]);
        assert_eq!(mat_mul(&t, &s).unwrap(), mat([(0, 1), (0, 1), (1, 1), (1, 0)]));
        assert_eq!(mat_mul(&t, &GMat2::identity()).unwrap(), t);
        assert_eq!(mat_mul(&t, &mat_inv(&t).unwrap()).unwrap(), GMat2::identity());
        assert_eq!(mat_inv(&t).unwrap(), mat([(1, 0), (0, -1), (0, 0), (1, 0)]));
        assert_eq!(mat_inv(&s).unwrap(), mat([(1, 0), (0, 0), (-1, -1), (1, 0)]));
        let w = mat([(0, 0), (1, 0), (1, 0), (0, 0)]);
        assert_eq!(mat_inv(&w).unwrap(), w);
    }

    #[test]
    fn non_unit_determinant_is_rejected() {
        let m = mat([(2, 0), (0, 0), (0, 0), (1, 0)]);
        assert_eq!(mat_inv(&m), Err(Error::NonUnitDeterminant));
    }

    #[test]
    fn reduction_examples() {
        let t = mat([(1, 0), (0, 1), (0, 0), (1, 0)]);
        // i - 1 = i(1+i), so i ≡ 1 mod (1+i)
        assert_eq!(g(-1, 1).checked_div_exact(g(1, 1)).unwrap(), Some(G::i()));
        assert_eq!(reduce_mod(&t, g(1, 1)).unwrap(), mat([(1, 0), (1, 0), (0, 0), (1, 0)]));
        let s = mat([(1, 0), (0, 0), (1, 1), (1, 0)]);
        assert_eq!(reduce_mod(&s, g(1, 1)).unwrap(), GMat2::identity());
        let u = mat([(1, 0), (0, 2), (2, 0), (1, 0)]);
        assert_eq!(reduce_mod(&u, g(2, 0)).unwrap(), GMat2::identity());
        assert!(is_congruent_identity(&u, g(2, 0)).unwrap());
        assert!(!is_congruent_identity(&t, g(2, 0)).unwrap());
        assert!(!is_congruent_identity(&t, g(1, 1)).unwrap());
    }

    #[test]
    fn associates_of_supported_moduli_are_accepted() {
        assert_eq!(Modulus::from_gauss(g(1, -1)).unwrap(), Modulus::OnePlusI);
        assert_eq!(Modulus::from_gauss(g(0, 2)).unwrap(), Modulus::Two);
        assert!(matches!(reduce_mod(&GMat2::identity(), g(3, 0)), Err(Error::UnsupportedModulus(_))));
    }

    #[test]
    fn residues_are_fixed_sets() {
        for re in -5..5 {
            for im in -5..5 {
                let x = g(re, im);
                let r1 = Modulus::OnePlusI.reduce(x).unwrap();
                assert!(r1 == g(0, 0) || r1 == g(1, 0));
                assert_eq!(r1 == g(0, 0), (re + im).rem_euclid(2) == 0);
                let r2 = Modulus::Two.reduce(x).unwrap();
                assert_eq!(r2, g(re.rem_euclid(2), im.rem_euclid(2)));
            }
        }
    }

    #[test]
    fn half_integral_classes() {
        let h = GaussHalf::<i64>::one_minus_i_half();
        assert_eq!(h.reduced().num, g(1, 1));
        assert_eq!(h.integer_offset(), g(0, -1));
        assert!(h.is_one_plus_i_torsion());
        assert!(!GaussHalf::from_num(g(1, 0)).is_one_plus_i_torsion());
        assert!(h.congruent(&GaussHalf::from_num(g(1, 1))));
        assert!(!h.congruent(&GaussHalf::from_num(g(1, 0))));
        assert_eq!(h.to_string(), "(1-1i)/2");
        assert_eq!(GaussHalf::from_num(g(2, -4)).to_string(), "1-2i");
    }

    #[test]
    fn projective_normal_identifies_unit_multiples() {
        let t = mat([(1, 0), (0, 1), (0, 0), (1, 0)]);
        for u in G::units() {
            assert_eq!(t.scale(u).unwrap().projective_normal(), t);
        }
        assert!(t.is_projective_unipotent_upper());
        assert!(t.neg().unwrap().is_projective_unipotent_upper());
    }
}
