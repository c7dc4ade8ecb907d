//! Log-domain accumulation with a running maximum shift.

/// Streaming `log Σ exp(x_i)`.
///
/// The running maximum is kept separately so that terms far below it
/// underflow harmlessly instead of overflowing the sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogSum {
    max: f64,
    scaled: f64,
}

impl Default for LogSum {
    fn default() -> Self {
        Self::new()
    }
}

impl LogSum {
    pub const fn new() -> Self {
        LogSum {
            max: f64::NEG_INFINITY,
            scaled: 0.0,
        }
    }

    pub fn add(&mut self, x: f64) {
        if x == f64::NEG_INFINITY {
            return;
        }
        if x <= self.max {
            self.scaled += libm::exp(x - self.max);
        } else {
            self.scaled = self.scaled * libm::exp(self.max - x) + 1.0;
            self.max = x;
        }
    }

    /// Folds another accumulator into this one.
    pub fn merge(&mut self, other: &LogSum) {
        if other.max == f64::NEG_INFINITY {
            return;
        }
        if self.max == f64::NEG_INFINITY {
            *self = *other;
            return;
        }
        if other.max <= self.max {
            self.scaled += other.scaled * libm::exp(other.max - self.max);
        } else {
            self.scaled = self.scaled * libm::exp(self.max - other.max) + other.scaled;
            self.max = other.max;
        }
    }

    /// `log Σ exp(x_i)`, or `-inf` for an empty sum.
    pub fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + libm::log(self.scaled)
        }
    }
}

/// `log Σ exp(x_i)` over a slice.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let s: f64 = xs.iter().map(|&x| libm::exp(x - max)).sum();
    max + libm::log(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_naive_sum_in_safe_range() {
        let xs = [0.5, 2.0, -1.0, 0.0];
        let naive = xs.iter().map(|x: &f64| x.exp()).sum::<f64>().ln();
        let mut acc = LogSum::new();
        xs.iter().for_each(|&x| acc.add(x));
        assert!((acc.value() - naive).abs() < 1e-14);
        assert!((log_sum_exp(&xs) - naive).abs() < 1e-14);
    }

    #[test]
    fn large_arguments_do_not_overflow() {
        // log(e^1234 + e^1232) = 1232 + log(e^2 + 1)
        let mut acc = LogSum::new();
        acc.add(1232.0);
        acc.add(1234.0);
        let expected = 1232.0 + (2.0f64.exp() + 1.0).ln();
        assert!((acc.value() - expected).abs() < 1e-12);
    }

    #[test]
    fn empty_sum_is_negative_infinity() {
        assert_eq!(LogSum::new().value(), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
    }

    #[test]
    fn merge_equals_sequential_accumulation() {
        let xs = [-3.0, 10.0, 4.0, 9.5, -100.0, 0.0];
        let mut all = LogSum::new();
        xs.iter().for_each(|&x| all.add(x));
        let (a, b) = xs.split_at(2);
        let mut left = LogSum::new();
        a.iter().for_each(|&x| left.add(x));
        let mut right = LogSum::new();
        b.iter().for_each(|&x| right.add(x));
        left.merge(&right);
        assert!((left.value() - all.value()).abs() < 1e-12);
    }
}
