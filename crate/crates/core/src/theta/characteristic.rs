use crate::gaussian::{GaussHalf, GaussInt, GaussWord};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Torsion level of a characteristic, inferred from its classes mod Z[i].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    /// Every coordinate is ≡ 0 or (1-i)/2.
    OnePlusI,
    /// Every coordinate lies in (1/2)Z[i].
    Two,
}

/// A theta characteristic `(a; b)` with `a, b ∈ ((1/2)Z[i])²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ThetaChar<I = i64> {
    pub a: [GaussHalf<I>; 2],
    pub b: [GaussHalf<I>; 2],
}

impl<I: GaussWord> ThetaChar<I> {
    pub fn new(a: [GaussHalf<I>; 2], b: [GaussHalf<I>; 2]) -> Self {
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self::new([GaussHalf::zero(); 2], [GaussHalf::zero(); 2])
    }

    fn coords(&self) -> [GaussHalf<I>; 4] {
        [self.a[0], self.a[1], self.b[0], self.b[1]]
    }

    pub fn level(&self) -> Level {
        if self.coords().iter().all(|x| x.is_one_plus_i_torsion()) {
            Level::OnePlusI
        } else {
            Level::Two
        }
    }

    pub fn is_level_one_plus_i(&self) -> bool {
        self.level() == Level::OnePlusI
    }

    /// Same classes mod Z[i] in every coordinate.
    pub fn congruent(&self, other: &Self) -> bool {
        self.coords().iter().zip(other.coords().iter()).all(|(x, y)| x.congruent(y))
    }

    /// Coordinates reduced to numerators in {0,1}².
    pub fn reduced(&self) -> Self {
        Self::new(
            [self.a[0].reduced(), self.a[1].reduced()],
            [self.b[0].reduced(), self.b[1].reduced()],
        )
    }

    /// Largest absolute real coordinate of the shift `a`.
    pub fn shift_radius(&self) -> f64 {
        self.a
            .iter()
            .flat_map(|x| [x.num.re, x.num.im])
            .map(|v| v.to_f64().unwrap_or(f64::INFINITY).abs() * 0.5)
            .fold(0.0, f64::max)
    }

    /// The 16 characteristics with every coordinate in {0, (1-i)/2}.
    pub fn level_one_plus_i_all() -> Vec<Self> {
        let opts = [GaussHalf::zero(), GaussHalf::one_minus_i_half()];
        let mut out = Vec::with_capacity(16);
        for a1 in opts {
            for a2 in opts {
                for b1 in opts {
                    for b2 in opts {
                        out.push(Self::new([a1, a2], [b1, b2]));
                    }
                }
            }
        }
        out
    }

    /// The 256 characteristics with every coordinate in {0, 1/2, i/2, (1+i)/2}.
    pub fn level_two_all() -> Vec<Self> {
        let (z, o) = (I::zero(), I::one());
        let opts = [
            GaussHalf::from_num(GaussInt::new(z, z)),
            GaussHalf::from_num(GaussInt::new(o, z)),
            GaussHalf::from_num(GaussInt::new(z, o)),
            GaussHalf::from_num(GaussInt::new(o, o)),
        ];
        let mut out = Vec::with_capacity(256);
        for a1 in opts {
            for a2 in opts {
                for b1 in opts {
                    for b2 in opts {
                        out.push(Self::new([a1, a2], [b1, b2]));
                    }
                }
            }
        }
        out
    }
}

impl<I: GaussWord> fmt::Display for ThetaChar<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.a[0], self.a[1], self.b[0], self.b[1])
    }
}
