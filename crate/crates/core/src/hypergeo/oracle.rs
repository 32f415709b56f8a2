//! Independent evaluations of 2F1 used to check the series evaluator:
//! Gauss's closed form at z = 1 and Euler's integral by quadrature.

use super::gamma::{as_twice, gamma_ratio_exact, sqrt_pi_scaled};
use super::{HypError, HypParams};
use crate::exactmath::Rational;
use crate::quadrature::GlRule;

/// Levels of geometric grading used on each half of the Euler integral.
const GRADING_LEVELS: u32 = 30;

/// Gauss's theorem as an exact value q * sqrt(pi)^k (only for parameters in
/// (1/2)Z).
pub fn gauss_value_at_1_exact(p: &HypParams) -> Result<(Rational, i32), HypError> {
    let (a, b, c) = match (as_twice(p.a), as_twice(p.b), as_twice(p.c)) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => return Err(HypError::InvalidParams("exact Gauss value needs parameters in (1/2)Z".into())),
    };
    if a == 0 || b == 0 {
        return Ok((Rational::from_integer(1.into()), 0));
    }
    if c - a - b <= 0 {
        return Err(HypError::PoleAtOne);
    }
    gamma_ratio_exact(&[c, c - a - b], &[c - a, c - b]).ok_or(HypError::InvalidC)
}

/// Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)).
pub fn gauss_value_at_1(p: &HypParams) -> Result<f64, HypError> {
    let (q, k) = gauss_value_at_1_exact(p)?;
    Ok(sqrt_pi_scaled(&q, k))
}

/// The Euler integral with the endpoint behaviour removed by x = w^2 on
/// [0, 1/2] and x = 1 - y^2 on [1/2, 1]; each piece uses a graded composite
/// Gauss-Legendre rule of the given order.
fn euler_raw(a: f64, b: f64, c: f64, z: f64, rule: &GlRule) -> f64 {
    let len = std::f64::consts::FRAC_1_SQRT_2;
    let left = rule.integrate_graded(len, GRADING_LEVELS, |w| {
        let x = w * w;
        2.0 * w.powf(2.0 * a - 1.0) * (1.0 - x).powf(c - a - 1.0) * (1.0 - z * x).powf(-b)
    });
    let right = rule.integrate_graded(len, GRADING_LEVELS, |y| {
        let y2 = y * y;
        2.0 * y.powf(2.0 * (c - a) - 1.0) * (1.0 - y2).powf(a - 1.0) * (1.0 - z + z * y2).powf(-b)
    });
    left + right
}

/// B(a, c-a)^{-1} int_0^1 x^{a-1} (1-x)^{c-a-1} (1-zx)^{-b} dx.
pub fn euler_integral_2f1(p: &HypParams, z: f64, quadrature_order: usize) -> Result<f64, HypError> {
    let HypParams { a, b, c } = *p;
    if a <= 0.0 || c <= a {
        return Err(HypError::InvalidParams(format!("Euler integral needs c > a > 0, got a={a}, c={c}")));
    }
    if !(0.0..=1.0).contains(&z) {
        return Err(HypError::Domain(z));
    }
    let rule = GlRule::new(quadrature_order.max(2));
    let beta = match (as_twice(a), as_twice(c)) {
        (Some(a2), Some(c2)) => {
            let (q, k) = gamma_ratio_exact(&[a2, c2 - a2], &[c2]).expect("arguments positive");
            sqrt_pi_scaled(&q, k)
        }
        _ => euler_raw(a, 0.0, c, 0.0, &rule),
    };
    Ok(euler_raw(a, b, c, z, &rule) / beta)
}
