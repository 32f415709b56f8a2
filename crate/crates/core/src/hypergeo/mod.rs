//! Gauss hypergeometric function 2F1(a, b; c; z) on [0, 1].
//!
//! Terminating series are summed exactly in rational arithmetic. Otherwise the
//! power series is used up to `z = 0.75`; beyond that, parameters in (1/2)Z
//! go through the analytic continuation around z = 1 (logarithmic when
//! c - a - b is an integer), which is what keeps values at nodes within
//! 1e-7 of z = 1 accurate. [`oracle`] holds the independent checks.

mod gamma;
pub mod identities;
pub mod oracle;

pub use gamma::{as_twice, digamma_half, gamma_half, gamma_half_exact, gamma_ratio_exact, rgamma_half};
pub use oracle::{euler_integral_2f1, gauss_value_at_1, gauss_value_at_1_exact};

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::exactmath::{to_f64, Rational};

/// Relative tolerance of the non-terminating series.
pub const SERIES_TOL: f64 = 1e-14;
/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 1_000_000;
/// Above this argument the continuation around z = 1 takes over.
const CONTINUATION_THRESHOLD: f64 = 0.75;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HypError {
    #[error("c is a non-positive integer and the series does not terminate before it")]
    InvalidC,
    #[error("series did not reach the tolerance within {0} terms")]
    NonConvergent(usize),
    #[error("F(a,b;c;1) diverges because c - a - b <= 0")]
    PoleAtOne,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("argument {0} outside [0, 1]")]
    Domain(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HypParams {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        HypParams { a, b, c }
    }

    /// (a+k, b+k, c+k)
    pub fn shifted(&self, k: f64) -> Self {
        HypParams::new(self.a + k, self.b + k, self.c + k)
    }
}

fn nonpositive_int(x: f64) -> Option<u64> {
    (x <= 0.0 && x.fract() == 0.0 && x > -1e15).then(|| (-x) as u64)
}

/// Degree at which the series terminates, if a or b is a non-positive integer.
pub fn termination_degree(p: &HypParams) -> Option<u64> {
    match (nonpositive_int(p.a), nonpositive_int(p.b)) {
        (Some(n), Some(m)) => Some(n.min(m)),
        (Some(n), None) | (None, Some(n)) => Some(n),
        (None, None) => None,
    }
}

fn check_c(p: &HypParams) -> Result<Option<u64>, HypError> {
    let n = termination_degree(p);
    if let Some(cc) = nonpositive_int(p.c) {
        match n {
            Some(n) if n <= cc => {}
            _ => return Err(HypError::InvalidC),
        }
    }
    Ok(n)
}

/// Exact sum of a terminating series with rational parameters.
fn terminating_exact(p: &HypParams, z: &Rational, n: u64) -> Rational {
    let q = |x: f64| BigRational::from_float(x).expect("finite parameter");
    let (a, b, c) = (q(p.a), q(p.b), q(p.c));
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for k in 0..n {
        let k = Rational::from_integer(k.into());
        term = term * (&a + &k) * (&b + &k) / ((&c + &k) * (&k + Rational::one())) * z;
        sum += &term;
    }
    sum
}

/// Plain power series with a tail-aware stopping rule.
fn series(p: &HypParams, z: f64) -> Result<f64, HypError> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let ratio = (p.a + nf) * (p.b + nf) / ((p.c + nf) * (nf + 1.0)) * z;
        let next = term * ratio;
        sum += next;
        let r = ratio.abs();
        if next == 0.0 {
            return Ok(sum);
        }
        if r < 1.0 && next.abs() * r / (1.0 - r) <= SERIES_TOL * sum.abs() && next.abs() <= SERIES_TOL * sum.abs() {
            return Ok(sum);
        }
        term = next;
    }
    Err(HypError::NonConvergent(MAX_TERMS))
}

/// Continuation around z = 1 for a, b, c in (1/2)Z, non-terminating.
fn near_one(a2: i64, b2: i64, c2: i64, z: f64) -> Result<f64, HypError> {
    let m2 = c2 - a2 - b2;
    let w = 1.0 - z;
    if m2 % 2 != 0 {
        // c - a - b not an integer: two-term connection formula.
        let (a, b, c) = (a2 as f64 / 2.0, b2 as f64 / 2.0, c2 as f64 / 2.0);
        let g1 = gamma_half(c2) * gamma_half(m2) * rgamma_half(c2 - a2) * rgamma_half(c2 - b2);
        let g2 = gamma_half(c2) * gamma_half(-m2) * rgamma_half(a2) * rgamma_half(b2);
        let f1 = if g1 == 0.0 { 0.0 } else { series(&HypParams::new(a, b, a + b - c + 1.0), w)? };
        let f2 = if g2 == 0.0 { 0.0 } else { series(&HypParams::new(c - a, c - b, c - a - b + 1.0), w)? };
        return Ok(g1 * f1 + g2 * w.powf(c - a - b) * f2);
    }
    let m = m2 / 2;
    if m < 0 {
        // Euler transformation flips the sign of c - a - b.
        let v = near_one(c2 - a2, c2 - b2, c2, z)?;
        return Ok(w.powi(m as i32) * v);
    }
    let (a, b) = (a2 as f64 / 2.0, b2 as f64 / 2.0);
    let mf = m as f64;
    // Finite part: sum_{n<m} (a)_n (b)_n / (n! (1-m)_n) w^n.
    let mut finite = 0.0;
    if m > 0 {
        let pre = gamma_half(2 * m) * gamma_half(c2) * rgamma_half(a2 + 2 * m) * rgamma_half(b2 + 2 * m);
        let mut t = 1.0;
        let mut s = 1.0;
        for n in 0..(m - 1) {
            let nf = n as f64;
            t *= (a + nf) * (b + nf) / ((nf + 1.0) * (1.0 - mf + nf)) * w;
            s += t;
        }
        finite = pre * s;
    }
    // Logarithmic part.
    let pre = gamma_half(c2) * rgamma_half(a2) * rgamma_half(b2);
    if pre == 0.0 {
        return Ok(finite);
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let lw = w.ln();
    let mut coef = 1.0 / gamma_half(2 * m + 2); // 1/m!
    let mut psi_n1 = digamma_half(2);
    let mut psi_nm1 = digamma_half(2 * m + 2);
    let mut psi_a = digamma_half(a2 + 2 * m);
    let mut psi_b = digamma_half(b2 + 2 * m);
    let mut sum = 0.0;
    let mut wn = 1.0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let term = coef * wn * (lw - psi_n1 - psi_nm1 + psi_a + psi_b);
        sum += term;
        if term.abs() <= SERIES_TOL * sum.abs() && n > 2 {
            let total = finite - sign * w.powi(m as i32) * pre * sum;
            return Ok(total);
        }
        coef *= (a + mf + nf) * (b + mf + nf) / ((nf + 1.0) * (nf + mf + 1.0));
        psi_n1 += 1.0 / (nf + 1.0);
        psi_nm1 += 1.0 / (nf + mf + 1.0);
        psi_a += 1.0 / (a + mf + nf);
        psi_b += 1.0 / (b + mf + nf);
        wn *= w;
    }
    Err(HypError::NonConvergent(MAX_TERMS))
}

/// F(a, b; c; z) for z in [0, 1]; z = 1 only when the series terminates.
pub fn gauss_2f1(p: &HypParams, z: f64) -> Result<f64, HypError> {
    if !(0.0..=1.0).contains(&z) || z.is_nan() {
        return Err(HypError::Domain(z));
    }
    if let Some(n) = check_c(p)? {
        let zq = BigRational::from_float(z).expect("finite argument");
        return Ok(to_f64(&terminating_exact(p, &zq, n)));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if z == 1.0 {
        return Err(HypError::Domain(z));
    }
    if z > CONTINUATION_THRESHOLD {
        if let (Some(a2), Some(b2), Some(c2)) = (as_twice(p.a), as_twice(p.b), as_twice(p.c)) {
            return near_one(a2, b2, c2, z);
        }
    }
    series(p, z)
}

/// Exact value of a terminating series at a rational point.
pub fn gauss_2f1_exact(p: &HypParams, z: &Rational) -> Result<Rational, HypError> {
    match check_c(p)? {
        Some(n) => Ok(terminating_exact(p, z, n)),
        None => Err(HypError::InvalidParams("series does not terminate".into())),
    }
}

/// d/dz F(a,b;c;z) = (ab/c) F(a+1, b+1; c+1; z).
pub fn derivative_2f1(p: &HypParams, z: f64) -> Result<f64, HypError> {
    let ab = p.a * p.b;
    if ab == 0.0 {
        check_c(p)?;
        return Ok(0.0);
    }
    Ok(ab / p.c * gauss_2f1(&p.shifted(1.0), z)?)
}

/// Second derivative via two applications of the derivative rule.
pub fn second_derivative_2f1(p: &HypParams, z: f64) -> Result<f64, HypError> {
    let ab = p.a * p.b;
    if ab == 0.0 {
        check_c(p)?;
        return Ok(0.0);
    }
    Ok(ab / p.c * derivative_2f1(&p.shifted(1.0), z)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn hp(a: f64, b: f64, c: f64) -> HypParams {
        HypParams::new(a, b, c)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn closed_form_examples() {
        assert!(rel(gauss_2f1(&hp(1.0, 3.0, 1.0), 0.5).unwrap(), 8.0) < 1e-14);
        assert_eq!(gauss_2f1(&hp(2.5, -1.5, 3.0), 0.0).unwrap(), 1.0);
        assert_eq!(gauss_2f1(&hp(-2.0, 1.0, 3.0), 1.0).unwrap(), 0.5);
        assert_eq!(gauss_2f1_exact(&hp(-2.0, 1.0, 3.0), &rat(1, 1)).unwrap(), rat(1, 2));
    }

    #[test]
    fn derivative_examples() {
        assert!(rel(derivative_2f1(&hp(1.0, 3.0, 1.0), 0.5).unwrap(), 48.0) < 1e-13);
        assert_eq!(derivative_2f1(&hp(0.0, 4.0, 2.0), 0.3).unwrap(), 0.0);
    }

    #[test]
    fn invalid_c_detection() {
        assert_eq!(gauss_2f1(&hp(1.0, 2.0, -1.0), 0.3), Err(HypError::InvalidC));
        assert_eq!(gauss_2f1(&hp(-3.0, 2.0, -1.0), 0.3), Err(HypError::InvalidC));
        // terminates at degree 1 before (c)_n vanishes
        let v = gauss_2f1(&hp(-1.0, 2.0, -1.0), 0.3).unwrap();
        assert!(rel(v, 1.0 + 2.0 * 0.3) < 1e-15);
        assert!(matches!(gauss_2f1(&hp(1.0, 1.0, 2.0), 1.0), Err(HypError::Domain(_))));
        assert!(matches!(gauss_2f1(&hp(1.0, 1.0, 2.0), -0.1), Err(HypError::Domain(_))));
    }

    #[test]
    fn logarithmic_case_matches_closed_form() {
        // F(1,1;2;z) = -ln(1-z)/z, m = 0
        for &z in &[0.8f64, 0.95, 1.0 - 1e-6, 1.0 - 1e-12] {
            let v = gauss_2f1(&hp(1.0, 1.0, 2.0), z).unwrap();
            assert!(rel(v, -(1.0f64 - z).ln() / z) < 1e-13, "z={z}: {v}");
        }
        // F(1,1;3;z) = 2(z + (1-z) ln(1-z))/z^2, m = 1
        for &z in &[0.8f64, 0.99, 1.0 - 1e-9] {
            let exact = 2.0 * (z + (1.0 - z) * (1.0 - z).ln()) / (z * z);
            assert!(rel(gauss_2f1(&hp(1.0, 1.0, 3.0), z).unwrap(), exact) < 1e-12, "z={z}");
        }
    }

    #[test]
    fn continuation_agrees_with_series_in_overlap() {
        let cases = [(1.0, 3.0, 6.0), (2.0, 5.0, 4.0), (1.5, 2.5, 3.0), (3.0, 2.0, 5.0), (0.5, 1.0, 4.0), (2.0, 2.0, 4.0)];
        for &(a, b, c) in &cases {
            for &z in &[0.76, 0.8, 0.85] {
                let p = hp(a, b, c);
                let direct = series(&p, z).unwrap();
                let cont = near_one(as_twice(a).unwrap(), as_twice(b).unwrap(), as_twice(c).unwrap(), z).unwrap();
                assert!(rel(cont, direct) < 1e-12, "({a},{b},{c}) z={z}: {cont} vs {direct}");
            }
        }
    }

    #[test]
    fn reference_values_near_one() {
        // mpmath hyp2f1 at 50 digits, evaluated at the f64 argument itself.
        let refs = [
            (2.0, 4.0, 5.0, 1.0 - 1e-8, 399999798.94191911),
            (1.0, 3.0, 6.0, 1.0 - 1e-8, 2.4999999250000486),
            (3.0, 2.0, 5.0, 1.0 - 1e-10, 246.31021032258721),
        ];
        for &(a, b, c, z, want) in &refs {
            let v = gauss_2f1(&hp(a, b, c), z).unwrap();
            assert!(rel(v, want) < 1e-11, "({a},{b},{c}): {v} vs {want}");
        }
    }
}
