//! Independent evaluation of (omega(a_t k) phi, omega(k') phi) straight from
//! the Fock-model action: the compact group acts by linear substitution with
//! a determinant character, and a_t acts through its Gaussian integral kernel.
//!
//! For the kernel of a_t, with P = diag(ch, 1, ch) and Q the sh-pairing of
//! rows 1 and 3, integrating a holomorphic f against
//!   exp(pi/2 tz Qbar P^-1 z + pi tw P^-1 z - pi/2 tw P^-1 Q w)
//! reproduces f at u = P^-1 z through the first Gaussian formula, while each
//! antiholomorphic wbar_a wbar_b turns into d^2/du_a du_b / pi^2. The result
//! is
//!   ch^-3 exp(pi th S(z)) [exp(-(th/pi) Delta) f](P^-1 z),
//! with S = sum_j z1j z3j and Delta = sum_j d^2/dz1j dz3j. Both series are
//! finite once paired with a polynomial of known degree.

use num_complex::Complex64;
use thiserror::Error;

use super::closed::KParams;
use super::{column_signs, harmonic_polynomial};
use crate::exactmath::{factorial, to_f64, var_index, Exponent, NumPoly};
use crate::repparams::CaseParams;

/// Largest total degree of phi accepted by [`bargmann_oracle`] by default.
pub const DEFAULT_DEGREE_CAP: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("harmonic has degree {degree}, above the cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
}

fn zn(i: usize, j: usize) -> NumPoly {
    NumPoly::z(i, j)
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// omega(k) f, by substitution.
fn act_k(params: &CaseParams, k: &KParams, f: &NumPoly) -> NumPoly {
    let eps = column_signs(params.tag());
    let k1 = k.k1();
    let k2 = k.k2();
    let mut images: [NumPoly; 9] = std::array::from_fn(|_| NumPoly::zero());
    for j in 1..=3 {
        let plus = eps[j - 1] > 0;
        for i in 1..=2 {
            // Rows 1-2 transform by tk1 (positive columns) or k1^-1 = k1^* (negative).
            let mut img = NumPoly::zero();
            for m in 1..=2 {
                let a = k1[m - 1][i - 1];
                let a = if plus { a } else { a.conj() };
                img = &img + &zn(m, j).scale(&a);
            }
            images[var_index(i, j)] = img;
        }
        // Row 3 transforms by k2^-1 (positive columns) or tk2 (negative).
        let g = if plus { k2.conj() } else { k2 };
        images[var_index(3, j)] = zn(3, j).scale(&g);
    }
    let half_diff = eps.iter().sum::<i64>() as f64 / 2.0;
    let det_angle = k.zeta + k.xi + k.eta - k.gamma;
    let character = Complex64::from_polar(1.0, half_diff * det_angle);
    f.substitute(&images).scale(&character)
}

/// omega(a_t) f, truncated to total degree `max_deg`.
fn act_a(t: f64, f: &NumPoly, max_deg: u32) -> NumPoly {
    let (ch, th) = (t.cosh(), t.tanh());
    let pi = std::f64::consts::PI;

    // exp(-(th/pi) Delta) f; Delta lowers the degree by two, so the series stops.
    let delta = |p: &NumPoly| {
        (1..=3).fold(NumPoly::zero(), |acc, j| &acc + &p.deriv(var_index(1, j)).deriv(var_index(3, j)))
    };
    let mut smoothed = f.clone();
    let mut term = f.clone();
    let mut n = 0u32;
    while !term.is_zero() {
        n += 1;
        term = delta(&term).scale(&c(-th / pi / n as f64));
        smoothed = &smoothed + &term;
    }

    // Evaluate at P^-1 z.
    let images: [NumPoly; 9] = std::array::from_fn(|idx| {
        let i = idx / 3 + 1;
        let j = idx % 3 + 1;
        let s = if i == 2 { 1.0 } else { 1.0 / ch };
        zn(i, j).scale(&c(s))
    });
    let scaled = smoothed.substitute(&images);

    // exp(pi th S) truncated.
    let s_poly = (1..=3).fold(NumPoly::zero(), |acc, j| &acc + &(&zn(1, j) * &zn(3, j)));
    let mut gauss = NumPoly::one();
    let mut power = NumPoly::one();
    for m in 1..=max_deg / 2 {
        power = (&power * &s_poly).scale(&c(pi * th / m as f64));
        gauss = &gauss + &power;
    }
    (&gauss * &scaled).truncate(max_deg).scale(&c(ch.powi(-3)))
}

fn numeric_inner_product(p: &NumPoly, q: &NumPoly) -> Complex64 {
    let pi = std::f64::consts::PI;
    p.terms()
        .iter()
        .map(|(e, a): (&Exponent, &Complex64)| {
            let b = q.coeff(e);
            let w: f64 = e.iter().map(|&k| to_f64(&factorial(k as u64).into())).product();
            a * b.conj() * w / pi.powi(e.iter().sum::<u32>() as i32)
        })
        .sum()
}

/// (omega(a_t k) phi, omega(k') phi) for the case harmonic, unnormalized.
pub fn bargmann_oracle(params: &CaseParams, t: f64, k: &KParams, kp: &KParams, cap: u32) -> Result<Complex64, OracleError> {
    let phi: NumPoly = harmonic_polynomial(params).map_coeffs(|q| Complex64::new(to_f64(&q.re), to_f64(&q.im)));
    let degree = phi.degree();
    if degree > cap {
        return Err(OracleError::DegreeCap { degree, cap });
    }
    let left = act_a(t, &act_k(params, k, &phi), degree);
    let right = act_k(params, kp, &phi);
    Ok(numeric_inner_product(&left, &right))
}
