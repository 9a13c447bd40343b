use std::ops::AddAssign;

use num_complex::Complex64;

/// Kahan–Babuška–Neumaier accumulator. Order-dependent by nature, so callers
/// that need bit-reproducible results must add terms in a fixed order.
#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    s: f64,
    c: f64,
}

impl NeumaierSum {
    pub fn sum(&self) -> f64 {
        self.s + self.c
    }
}

impl AddAssign<f64> for NeumaierSum {
    fn add_assign(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }
}

/// Component-wise compensated sum of complex terms.
#[derive(Debug, Default, Clone, Copy)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn sum(&self) -> Complex64 {
        Complex64::new(self.re.sum(), self.im.sum())
    }
}

impl AddAssign<Complex64> for ComplexSum {
    fn add_assign(&mut self, z: Complex64) {
        self.re += z.re;
        self.im += z.im;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_lost_low_order_bits() {
        let mut acc = NeumaierSum::default();
        acc += 1.0;
        acc += 1e100;
        acc += 1.0;
        acc += -1e100;
        assert_eq!(acc.sum(), 2.0);
    }

    #[test]
    fn complex_components_are_independent() {
        let mut acc = ComplexSum::default();
        for _ in 0..10 {
            acc += Complex64::new(0.1, -0.1);
        }
        assert_eq!(acc.sum(), Complex64::new(1.0, -1.0));
    }
}
