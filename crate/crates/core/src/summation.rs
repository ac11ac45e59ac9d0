//! Deterministic compensated summation.

use crate::C64;

/// Neumaier's variant of Kahan summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Compensated sum of complex terms, real and imaginary parts kept separately.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl CompensatedComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: C64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> C64 {
        C64::new(self.re.value(), self.im.value())
    }
}

/// Sums `f(k)` over `|k| ≤ k_max` in the fixed order `0, -1, 1, -2, 2, …`.
pub fn sum_ascending_abs<F: FnMut(i64) -> f64>(k_max: usize, mut f: F) -> f64 {
    let mut acc = CompensatedSum::new();
    acc.add(f(0));
    for k in 1..=k_max as i64 {
        acc.add(f(-k));
        acc.add(f(k));
    }
    acc.value()
}

/// Sums `f(m)` for `m = 1..=m_max` in ascending order.
pub fn sum_positive<F: FnMut(i64) -> f64>(m_max: usize, mut f: F) -> f64 {
    (1..=m_max as i64)
        .map(&mut f)
        .collect::<CompensatedSum>()
        .value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_terms() {
        let mut s = CompensatedSum::new();
        s.add(1.0);
        s.add(1e-16);
        s.add(-1.0);
        assert_eq!(s.value(), 1e-16);
    }

    #[test]
    fn ascending_order_is_symmetric() {
        let v = sum_ascending_abs(5, |k| k as f64);
        assert_eq!(v, 0.0);
        let w = sum_ascending_abs(3, |_| 1.0);
        assert_eq!(w, 7.0);
    }

    #[test]
    fn complex_parts_independent() {
        let mut s = CompensatedComplexSum::new();
        s.add(C64::new(1.0, -2.0));
        s.add(C64::new(0.5, 2.0));
        assert_eq!(s.value(), C64::new(1.5, 0.0));
    }
}
