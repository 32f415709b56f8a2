//! Gamma and digamma on (1/2)Z, exact where it matters.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactmath::{factorial, to_f64, Rational};

/// Euler-Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// If `x` is an integer or half-integer, its double.
pub fn as_twice(x: f64) -> Option<i64> {
    let t = 2.0 * x;
    (t.is_finite() && t.fract() == 0.0 && t.abs() < 1e15).then_some(t as i64)
}

/// Gamma(twice/2) = q * sqrt(pi)^k with k in {0, 1}; `None` at the poles.
pub fn gamma_half_exact(twice: i64) -> Option<(Rational, u32)> {
    if twice % 2 == 0 {
        let m = twice / 2;
        (m >= 1).then(|| (Rational::from_integer(factorial((m - 1) as u64)), 0))
    } else {
        // twice/2 = k + 1/2
        let k = (twice - 1).div_euclid(2);
        if k >= 0 {
            let k = k as u64;
            let num = factorial(2 * k);
            let den = BigInt::from(4u32).pow(k as u32) * factorial(k);
            Some((Rational::new(num, den), 1))
        } else {
            let j = (-k) as u64;
            let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            let num = sign * BigInt::from(4u32).pow(j as u32) * factorial(j);
            Some((Rational::new(num, factorial(2 * j)), 1))
        }
    }
}

/// Exact ratio prod Gamma(num) / prod Gamma(den) over half-integers (given as
/// doubles) in the form q * sqrt(pi)^k. A pole in the denominator gives 0;
/// a pole in the numerator gives `None`.
pub fn gamma_ratio_exact(num: &[i64], den: &[i64]) -> Option<(Rational, i32)> {
    let mut q = Rational::one();
    let mut k = 0i32;
    for &t in num {
        let (g, s) = gamma_half_exact(t)?;
        q *= g;
        k += s as i32;
    }
    for &t in den {
        match gamma_half_exact(t) {
            None => return Some((Rational::zero(), 0)),
            Some((g, s)) => {
                q /= g;
                k -= s as i32;
            }
        }
    }
    Some((q, k))
}

/// Value of `q * sqrt(pi)^k` as a float.
pub fn sqrt_pi_scaled(q: &Rational, k: i32) -> f64 {
    to_f64(q) * std::f64::consts::PI.sqrt().powi(k)
}

/// Float Gamma on half-integers; infinite at the poles.
pub fn gamma_half(twice: i64) -> f64 {
    gamma_half_exact(twice).map_or(f64::INFINITY, |(q, k)| sqrt_pi_scaled(&q, k as i32))
}

/// 1/Gamma on half-integers; 0 at the poles.
pub fn rgamma_half(twice: i64) -> f64 {
    match gamma_half_exact(twice) {
        None => 0.0,
        Some((q, k)) => {
            if q.is_zero() {
                f64::INFINITY
            } else {
                let inv = q.recip();
                sqrt_pi_scaled(&inv, -(k as i32))
            }
        }
    }
}

/// Digamma on half-integers away from the poles.
///
/// Integers n >= 1: -gamma + H_{n-1}. Half-integers n + 1/2 >= 1/2:
/// -gamma - 2 ln 2 + sum_{k=1}^n 2/(2k-1). Negative half-integers reflect to
/// 1 - x because cot vanishes there.
pub fn digamma_half(twice: i64) -> f64 {
    if twice % 2 == 0 {
        let n = twice / 2;
        assert!(n >= 1, "digamma pole at {n}");
        -EULER_GAMMA + (1..n).map(|k| 1.0 / k as f64).sum::<f64>()
    } else if twice < 0 {
        digamma_half(2 - twice)
    } else {
        let n = (twice - 1) / 2;
        -EULER_GAMMA - 2.0 * std::f64::consts::LN_2 + (1..=n).map(|k| 2.0 / (2 * k - 1) as f64).sum::<f64>()
    }
}
