//! Closed-form normalized Weil matrix coefficients (omega(g)phi, phi)/||phi||^2
//! for g = k'^-1 a_t k, as Laurent polynomials in the phase pairs.

use num_complex::Complex64;

use crate::exactmath::{Atom, Coeff, HalfInt, PhaseLaurent, Rational};
use crate::repparams::{CaseParams, CaseTag};

/// Coordinates of k = diag(1, zeta, 1) kappa(theta) diag(xi, eta, gamma) in
/// K = U(2) x U(1). The unit complex numbers are stored by their angles.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KParams {
    pub zeta: f64,
    pub theta: f64,
    pub xi: f64,
    pub eta: f64,
    pub gamma: f64,
}

impl KParams {
    pub fn new(zeta: f64, theta: f64, xi: f64, eta: f64, gamma: f64) -> Self {
        KParams { zeta, theta, xi, eta, gamma }
    }

    /// The U(2) block k1; the U(1) block is `exp(i gamma)`.
    pub fn k1(&self) -> [[Complex64; 2]; 2] {
        let (s, c) = self.theta.sin_cos();
        let e = |a: f64| Complex64::from_polar(1.0, a);
        let (xi, eta, zeta) = (e(self.xi), e(self.eta), e(self.zeta));
        [[xi * c, eta * s], [-zeta * xi * s, zeta * eta * c]]
    }

    pub fn k2(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.gamma)
    }

    /// The full 3x3 matrix.
    pub fn to_matrix(&self) -> [[Complex64; 3]; 3] {
        let k1 = self.k1();
        let z = Complex64::new(0.0, 0.0);
        [[k1[0][0], k1[0][1], z], [k1[1][0], k1[1][1], z], [z, z, self.k2()]]
    }
}

/// Angles of the phase pairs p1 = zeta conj(zeta'), p2 = xi conj(xi'),
/// p3 = eta conj(eta'), p4 = gamma conj(gamma').
pub(crate) fn phase_angles(k: &KParams, kp: &KParams) -> [f64; 4] {
    [k.zeta - kp.zeta, k.xi - kp.xi, k.eta - kp.eta, k.gamma - kp.gamma]
}

/// sin(theta), cos(theta), sin(theta'), cos(theta').
pub(crate) fn trig_values(k: &KParams, kp: &KParams) -> [f64; 4] {
    [k.theta.sin(), k.theta.cos(), kp.theta.sin(), kp.theta.cos()]
}

fn key(twice: [i64; 4]) -> [HalfInt; 4] {
    twice.map(HalfInt::from_twice)
}

fn atom(cosh: i32, trig: [u32; 4]) -> Atom {
    Atom { cosh, trig, radial: Vec::new() }
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

/// x + y where each summand is (cosh t)^c * p1^e * trig monomial.
fn binomial_factor(x: (i32, i64, [u32; 4]), y: (i32, i64, [u32; 4])) -> PhaseLaurent {
    let term = |(c, e, tr): (i32, i64, [u32; 4])| PhaseLaurent::term(key([2 * e, 0, 0, 0]), Coeff::atom(atom(c, tr), one()));
    term(x).add(&term(y))
}

const CC: [u32; 4] = [0, 1, 0, 1];
const SS: [u32; 4] = [1, 0, 1, 0];

/// The closed form as a Laurent polynomial with cosh/trig coefficients.
pub fn weil_closed_form(params: &CaseParams) -> PhaseLaurent {
    let [x, y, w] = params.values().map(|v| v as i64);
    // ch^-1 cc' + p1 ss'
    let l1 = || binomial_factor((-1, 0, CC), (0, 1, SS));
    // cc' + ch^-1 p1 ss'
    let l2 = || binomial_factor((0, 0, CC), (-1, 1, SS));
    // ch^-1 ss' + p1^-1 cc'
    let l3 = || binomial_factor((-1, 0, SS), (0, -1, CC));
    let (phase, cosh, poly) = match params.tag() {
        CaseTag::A => ([2 * y + 3, 2 * x + 3, 2 * y + 3, -2 * w - 3], -y - w - 3, l1().pow((x - y) as u32)),
        CaseTag::B => ([-2 * x - 3, -2 * y - 3, -2 * x - 3, 2 * w + 3], -y - w - 3, l2().pow((x - y) as u32)),
        CaseTag::C1 => ([2 * y + 1, 2 * x + 1, 2 * y + 1, 2 * w - 1], -y - w - 3, l1().pow((x - y) as u32)),
        CaseTag::C2 => ([1, 2 * x + 1, -2 * y + 1, -2 * w - 1], -w - 3, l1().pow(x as u32).mul(&l3().pow(y as u32))),
        CaseTag::D1 => ([-2 * x - 1, -2 * y - 1, -2 * x - 1, -2 * w + 1], -y - w - 3, l2().pow((x - y) as u32)),
        CaseTag::D2 => ([-1, 2 * x - 1, -2 * y - 1, 2 * w + 1], -w - 3, l1().pow(x as u32).mul(&l3().pow(y as u32))),
    };
    PhaseLaurent::term(key(phase), Coeff::atom(atom(cosh as i32, [0; 4]), one())).mul(&poly)
}

/// Numerical value of the closed form at g = k'^-1 a_t k.
pub fn weil_coeff(params: &CaseParams, t: f64, k: &KParams, kp: &KParams) -> Complex64 {
    weil_closed_form(params).eval(phase_angles(k, kp), t.cosh(), trig_values(k, kp), &|_| 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_k(rng: &mut ChaCha8Rng) -> KParams {
        let tau = std::f64::consts::TAU;
        KParams::new(rng.gen::<f64>() * tau, rng.gen::<f64>() * 1.5, rng.gen::<f64>() * tau, rng.gen::<f64>() * tau, rng.gen::<f64>() * tau)
    }

    fn small_params(max: u32) -> Vec<CaseParams> {
        let mut out = Vec::new();
        for tag in CaseTag::ALL {
            for x in 0..=max {
                for y in 0..=max {
                    for w in 0..=max {
                        out.extend(CaseParams::from_values(tag, [x, y, w]));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn unitarity_at_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in small_params(4) {
            let k = random_k(&mut rng);
            let v = weil_coeff(&p, 0.0, &k, &k);
            assert!((v - 1.0).norm() < 1e-12, "{p}: {v}");
        }
    }

    #[test]
    fn contraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in small_params(3) {
            for _ in 0..5 {
                let (k, kp) = (random_k(&mut rng), random_k(&mut rng));
                let t = rng.gen::<f64>() * 3.0;
                assert!(weil_coeff(&p, t, &k, &kp).norm() <= 1.0 + 1e-12, "{p}");
            }
        }
    }

    #[test]
    fn c1_at_trivial_phases() {
        let p = CaseParams::from_values(CaseTag::C1, [3, 1, 2]).unwrap();
        let th = 0.4;
        let k = KParams::new(0.0, th, 0.0, 0.0, 0.0);
        let t = 0.9f64;
        let ch = t.cosh();
        let expect = ch.powi(-1 - 2 - 3) * (th.cos().powi(2) / ch + th.sin().powi(2)).powi(2);
        assert!((weil_coeff(&p, t, &k, &k) - expect).norm() < 1e-14);
    }

    #[test]
    fn matrix_block_is_unitary() {
        let k = KParams::new(0.3, 0.7, 1.1, -0.4, 2.0);
        let m = k.to_matrix();
        for i in 0..3 {
            for j in 0..3 {
                let s: Complex64 = (0..3).map(|l| m[i][l] * m[j][l].conj()).sum();
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((s - e).norm() < 1e-14);
            }
        }
    }
}
