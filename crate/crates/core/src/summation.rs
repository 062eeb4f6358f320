//! Compensated (Neumaier) accumulation.

use crate::scalar::{Complex, Real};

#[derive(Clone, Copy, Debug, Default)]
pub struct Neumaier<T> {
    sum: T,
    comp: T,
}

impl<T: Real> Neumaier<T> {
    pub fn new() -> Self {
        Self { sum: T::zero(), comp: T::zero() }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &Self) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> T {
        self.sum + self.comp
    }
}

/// Componentwise compensated accumulator for complex terms.
#[derive(Clone, Copy, Debug, Default)]
pub struct ComplexAccumulator<T> {
    re: Neumaier<T>,
    im: Neumaier<T>,
}

impl<T: Real> ComplexAccumulator<T> {
    pub fn new() -> Self {
        Self { re: Neumaier::new(), im: Neumaier::new() }
    }

    #[inline]
    pub fn add(&mut self, z: Complex<T>) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn merge(&mut self, other: &Self) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }

    pub fn value(&self) -> Complex<T> {
        Complex::new(self.re.value(), self.im.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_mass() {
        let mut acc = Neumaier::<f64>::new();
        for x in [1.0, 1e100, 1.0, -1e100] {
            acc.add(x);
        }
        assert_eq!(acc.value(), 2.0);
    }

    #[test]
    fn merge_matches_sequential() {
        let xs: Vec<f64> = (1..200).map(|k| 1.0 / k as f64).collect();
        let mut all = Neumaier::new();
        xs.iter().for_each(|&x| all.add(x));
        let (l, r) = xs.split_at(77);
        let mut a = Neumaier::new();
        l.iter().for_each(|&x| a.add(x));
        let mut b = Neumaier::new();
        r.iter().for_each(|&x| b.add(x));
        a.merge(&b);
        assert!((a.value() - all.value()).abs() < 1e-15);
    }
}
