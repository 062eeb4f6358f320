#![allow(dead_code)]

use automorphic::scalar::Complex;
use automorphic::theta::{TauMat, ThetaChar};
use rand::Rng;
use std::f64::consts::PI;

pub type C64 = Complex<f64>;

/// Direct lattice sum over the box `|coordinate| ≤ r` in all four real coordinates.
pub fn brute_theta(c: &ThetaChar, tau: &TauMat<f64>, r: i64) -> C64 {
    let a = [c.a[0].to_complex::<f64>(), c.a[1].to_complex::<f64>()];
    let b = [c.b[0].to_complex::<f64>(), c.b[1].to_complex::<f64>()];
    let t = tau.m;
    let mut sum = C64::new(0.0, 0.0);
    for p in -r..=r {
        for q in -r..=r {
            for s in -r..=r {
                for u in -r..=r {
                    let n = [C64::new(p as f64, q as f64), C64::new(s as f64, u as f64)];
                    let v = [n[0] + a[0], n[1] + a[1]];
                    let mut quad = C64::new(0.0, 0.0);
                    for j in 0..2 {
                        for k in 0..2 {
                            quad += v[j] * t[j][k] * v[k].conj();
                        }
                    }
                    let pairing = 2.0 * (n[0] * b[0].conj() + n[1] * b[1].conj()).re;
                    sum += (C64::new(0.0, PI) * (quad + pairing)).exp();
                }
            }
        }
    }
    sum
}

/// `Σ |term|` over `inner < max |coordinate| ≤ outer`.
pub fn brute_tail_mass(c: &ThetaChar, tau: &TauMat<f64>, inner: i64, outer: i64) -> f64 {
    let a = [c.a[0].to_complex::<f64>(), c.a[1].to_complex::<f64>()];
    let y = tau.imag_part().to_rows();
    let mut mass = 0.0;
    for p in -outer..=outer {
        for q in -outer..=outer {
            for s in -outer..=outer {
                for u in -outer..=outer {
                    if p.abs().max(q.abs()).max(s.abs()).max(u.abs()) <= inner {
                        continue;
                    }
                    let v = [C64::new(p as f64, q as f64) + a[0], C64::new(s as f64, u as f64) + a[1]];
                    let mut quad = 0.0;
                    for j in 0..2 {
                        for k in 0..2 {
                            quad += (v[j] * y[j][k] * v[k].conj()).re;
                        }
                    }
                    mass += (-PI * quad).exp();
                }
            }
        }
    }
    mass
}

/// `τ = X + iY` with `X` Hermitian (entries in `[-1, 1]`) and `Y` positive
/// Hermitian with eigenvalues in `[min_eig, min_eig + 2]`; both diagonal when asked.
pub fn random_tau<R: Rng>(rng: &mut R, diagonal: bool, min_eig: f64) -> TauMat<f64> {
    let mu = [rng.gen_range(min_eig..min_eig + 2.0), rng.gen_range(min_eig..min_eig + 2.0)];
    let (x11, x22) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let (x12, y) = if diagonal {
        (C64::new(0.0, 0.0), [[C64::new(mu[0], 0.0), C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), C64::new(mu[1], 0.0)]])
    } else {
        let theta: f64 = rng.gen_range(0.0..PI / 2.0);
        let phi: f64 = rng.gen_range(0.0..2.0 * PI);
        let (c, s) = (theta.cos(), C64::from_polar(theta.sin(), phi));
        // Y = U diag(mu) U*, U = [[c, -s̄], [s, c]]
        let u = [[C64::new(c, 0.0), -s.conj()], [s, C64::new(c, 0.0)]];
        let mut y = [[C64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    y[i][j] += u[i][k] * mu[k] * u[j][k].conj();
                }
            }
        }
        (C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), y)
    };
    let i = C64::new(0.0, 1.0);
    let m = [
        [C64::new(x11, 0.0) + i * y[0][0], x12 + i * y[0][1]],
        [x12.conj() + i * y[1][0], C64::new(x22, 0.0) + i * y[1][1]],
    ];
    TauMat::new(m).expect("positive imaginary part")
}

/// Möbius action of a real 2×2 matrix on the upper half-plane.
pub fn mobius(m: [[f64; 2]; 2], tau: C64) -> C64 {
    (tau * m[0][0] + m[0][1]) / (tau * m[1][0] + m[1][1])
}
