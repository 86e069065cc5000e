//! Polylogarithms Li₁, Li₂, Li₃ on [0, 1) by direct series with a certified tail.

use crate::error::{Error, Result};

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// A truncated series value and a bound on the omitted tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Bounded {
    pub value: f64,
    pub tail: f64,
}

// Stop once the tail is below a quarter ulp of the partial sum.
const TAIL_TARGET: f64 = 0.25 * f64::EPSILON;

/// Li_order(z) = Σ_{m≥1} z^m / m^order for order ∈ {1, 2, 3} and 0 ≤ z < 1.
pub fn polylog(order: u32, z: f64) -> Result<f64> {
    if !(1..=3).contains(&order) {
        return Err(Error::Domain(format!("polylog order {order} not in 1..=3")));
    }
    if !(0.0..1.0).contains(&z) {
        return Err(Error::Domain(format!("polylog argument {z} not in [0, 1)")));
    }
    Ok(polylog_bounded(order, z).value)
}

/// Unchecked evaluation with the tail bound z^{K+1}/((K+1)^s (1 − z)).
pub(crate) fn polylog_bounded(order: u32, z: f64) -> Bounded {
    debug_assert!((0.0..1.0).contains(&z));
    if z == 0.0 {
        return Bounded { value: 0.0, tail: 0.0 };
    }
    if order == 1 {
        return Bounded {
            value: -(-z).ln_1p(),
            tail: 0.0,
        };
    }
    let s = order as i32;
    let one_minus_z = 1.0 - z;
    let mut acc = CompensatedSum::default();
    let mut power = 1.0;
    let mut m = 0u64;
    loop {
        m += 1;
        power *= z;
        acc.add(power / (m as f64).powi(s));
        let next = (m + 1) as f64;
        let tail = power * z / (next.powi(s) * one_minus_z);
        if tail <= TAIL_TARGET * acc.value() || power == 0.0 {
            return Bounded {
                value: acc.value(),
                tail,
            };
        }
    }
}
