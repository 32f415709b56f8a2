//! Fock-model side of the doubling integral: the joint harmonics of each
//! case, exact Fock inner products, harmonicity and torus-weight checks, the
//! closed-form Weil matrix coefficients and a kernel-level oracle for them.

mod closed;
mod oracle;

pub use closed::{weil_closed_form, weil_coeff, KParams};
pub use oracle::{bargmann_oracle, OracleError, DEFAULT_DEGREE_CAP};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::Zero;

use crate::exactmath::{factorial, to_f64, var_index, FockPolynomial, GaussRat, HalfInt, HalfIntTriple, Rational};
use crate::repparams::{CaseParams, CaseTag};

/// A value of the form `value / pi^inv_pi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiScaled {
    pub value: Rational,
    pub inv_pi: u32,
}

impl PiScaled {
    pub fn to_f64(&self) -> f64 {
        to_f64(&self.value) / std::f64::consts::PI.powi(self.inv_pi as i32)
    }
}

impl fmt::Display for PiScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.inv_pi {
            0 => write!(f, "{}", self.value),
            1 => write!(f, "{}/pi", self.value),
            d => write!(f, "{}/pi^{d}", self.value),
        }
    }
}

/// Finite sum of Gaussian rationals times inverse powers of pi, the general
/// shape of a Fock inner product of two polynomials.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct InvPiSeries {
    terms: BTreeMap<u32, GaussRat>,
}

impl InvPiSeries {
    pub fn terms(&self) -> &BTreeMap<u32, GaussRat> {
        &self.terms
    }

    /// The value as `c / pi^d` when at most one power of pi occurs.
    pub fn single(&self) -> Option<(GaussRat, u32)> {
        match self.terms.len() {
            0 => Some((GaussRat::zero(), 0)),
            1 => self.terms.iter().next().map(|(d, c)| (c.clone(), *d)),
            _ => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|(d, c)| Complex64::new(to_f64(&c.re), to_f64(&c.im)) / std::f64::consts::PI.powi(*d as i32))
            .sum()
    }
}

/// alpha! = prod over the nine variables of alpha_ij!.
fn multi_factorial(e: &[u32; 9]) -> BigInt {
    e.iter().map(|&k| factorial(k as u64)).product()
}

/// <p, q> = sum_alpha p_alpha conj(q_alpha) alpha! / pi^|alpha|, exactly.
pub fn fock_inner_product(p: &FockPolynomial, q: &FockPolynomial) -> InvPiSeries {
    let mut out = InvPiSeries::default();
    for (e, a) in p.terms() {
        let b = q.coeff(e);
        if b.is_zero() {
            continue;
        }
        let w = Rational::from_integer(multi_factorial(e));
        let c = a * b.conj() * Complex::new(w, Rational::zero());
        let d = e.iter().sum::<u32>();
        let slot = out.terms.entry(d).or_insert_with(GaussRat::zero);
        *slot = &*slot + c;
        if slot.is_zero() {
            out.terms.remove(&d);
        }
    }
    out
}

/// Signs of the three columns: +1 where the Hermitian form on the second
/// space is positive.
pub fn column_signs(tag: CaseTag) -> [i64; 3] {
    match tag {
        CaseTag::A => [1, 1, 1],
        CaseTag::B => [-1, -1, -1],
        CaseTag::C1 | CaseTag::C2 => [1, 1, -1],
        CaseTag::D1 | CaseTag::D2 => [1, -1, -1],
    }
}

/// Signs of the three rows (signature (2,1) of the first space).
pub const ROW_SIGNS: [i64; 3] = [1, 1, -1];

/// A second-order lowering operator: the sum of d^2/dz_a dz_b over its pairs.
pub type Laplacian = &'static [((usize, usize), (usize, usize))];

const AB_OPS: [Laplacian; 2] = [
    &[((1, 1), (3, 1)), ((1, 2), (3, 2)), ((1, 3), (3, 3))],
    &[((2, 1), (3, 1)), ((2, 2), (3, 2)), ((2, 3), (3, 3))],
];
const C_OPS: [Laplacian; 8] = [
    &[((1, 1), (3, 1)), ((1, 2), (3, 2))],
    &[((1, 3), (3, 3))],
    &[((2, 1), (3, 1)), ((2, 2), (3, 2))],
    &[((2, 3), (3, 3))],
    &[((1, 1), (1, 3)), ((2, 1), (2, 3))],
    &[((1, 2), (1, 3)), ((2, 2), (2, 3))],
    &[((3, 1), (3, 3))],
    &[((3, 2), (3, 3))],
];
const D_OPS: [Laplacian; 8] = [
    &[((1, 1), (3, 1))],
    &[((1, 2), (3, 2)), ((1, 3), (3, 3))],
    &[((2, 1), (3, 1))],
    &[((2, 2), (3, 2)), ((2, 3), (3, 3))],
    &[((1, 1), (1, 2)), ((2, 1), (2, 2))],
    &[((1, 1), (1, 3)), ((2, 1), (2, 3))],
    &[((3, 1), (3, 2))],
    &[((3, 1), (3, 3))],
];

/// The lowering operators spanning the (0,2) parts for both members of the
/// dual pair. For the compact cases the second family is empty.
pub fn lowering_operators(tag: CaseTag) -> &'static [Laplacian] {
    match tag {
        CaseTag::A | CaseTag::B => &AB_OPS,
        CaseTag::C1 | CaseTag::C2 => &C_OPS,
        CaseTag::D1 | CaseTag::D2 => &D_OPS,
    }
}

pub fn apply_laplacian(op: Laplacian, p: &FockPolynomial) -> FockPolynomial {
    op.iter().fold(FockPolynomial::zero(), |acc, &((i1, j1), (i2, j2))| {
        &acc + &p.deriv(var_index(i1, j1)).deriv(var_index(i2, j2))
    })
}

/// A joint harmonic together with its case parameters and exact norm.
#[derive(Debug, Clone)]
pub struct HarmonicVector {
    pub phi: FockPolynomial,
    pub params: CaseParams,
    pub norm_sq: PiScaled,
}

fn z(i: usize, j: usize) -> FockPolynomial {
    FockPolynomial::z(i, j)
}

/// Minor z_{1a} z_{2b} - z_{2a} z_{1b} of the first two rows.
fn minor(a: usize, b: usize) -> FockPolynomial {
    &(&z(1, a) * &z(2, b)) - &(&z(2, a) * &z(1, b))
}

/// The explicit harmonic polynomial of a case.
pub fn harmonic_polynomial(params: &CaseParams) -> FockPolynomial {
    let [x, y, w] = params.values();
    match params.tag() {
        CaseTag::A | CaseTag::C1 => &(&z(1, 1).pow(x - y) * &minor(1, 2).pow(y)) * &z(3, 3).pow(w),
        CaseTag::B | CaseTag::D1 => &(&z(2, 3).pow(x - y) * &minor(2, 3).pow(y)) * &z(3, 1).pow(w),
        CaseTag::C2 | CaseTag::D2 => &(&z(1, 1).pow(x) * &z(2, 3).pow(y)) * &z(3, 2).pow(w),
    }
}

/// Exact norm of a homogeneous polynomial.
fn norm_of(phi: &FockPolynomial) -> PiScaled {
    let s = fock_inner_product(phi, phi);
    let (c, d) = s.single().expect("harmonics are homogeneous");
    debug_assert!(c.im.is_zero());
    PiScaled { value: c.re, inv_pi: d }
}

pub fn build_harmonic(params: &CaseParams) -> HarmonicVector {
    let phi = harmonic_polynomial(params);
    let norm_sq = norm_of(&phi);
    HarmonicVector { phi, params: *params, norm_sq }
}

/// ||phi||^2 computed through the Fock inner product.
pub fn phi_norm_sq(params: &CaseParams) -> PiScaled {
    norm_of(&harmonic_polynomial(params))
}

/// The closed form for case A:
/// (mu2! nu! / pi^(mu1+mu2+nu)) (mu1+1)! / (r+1).
pub fn phi_norm_sq_case_a(mu1: u32, mu2: u32, nu: u32) -> PiScaled {
    let f = |n: u32| Rational::from_integer(factorial(n as u64));
    let r = mu1 - mu2;
    PiScaled {
        value: f(mu2) * f(nu) * f(mu1 + 1) / Rational::from_integer(BigInt::from(r + 1)),
        inv_pi: mu1 + mu2 + nu,
    }
}

/// True iff every lowering operator of the case annihilates phi.
pub fn is_harmonic(tag: CaseTag, phi: &FockPolynomial) -> bool {
    lowering_operators(tag).iter().all(|op| apply_laplacian(op, phi).is_zero())
}

pub fn harmonicity_check(h: &HarmonicVector) -> bool {
    is_harmonic(h.params.tag(), &h.phi)
}

/// Torus eigenvalues of a monomial: the K-weight from the rows and the
/// K'-weight from the columns, including the central shifts.
pub fn monomial_weights(tag: CaseTag, e: &[u32; 9]) -> (HalfIntTriple, HalfIntTriple) {
    let eps_c = column_signs(tag);
    let shift_k = eps_c.iter().sum::<i64>();
    let shift_kp = ROW_SIGNS.iter().sum::<i64>();
    let a = |i: usize, j: usize| e[var_index(i, j)] as i64;
    let k = std::array::from_fn(|i| {
        let inner: i64 = (0..3).map(|j| eps_c[j] * a(i + 1, j + 1)).sum();
        HalfInt::from_twice(ROW_SIGNS[i] * (2 * inner + shift_k))
    });
    let kp = std::array::from_fn(|j| {
        let inner: i64 = (0..3).map(|i| ROW_SIGNS[i] * a(i + 1, j + 1)).sum();
        HalfInt::from_twice(eps_c[j] * (2 * inner + shift_kp))
    });
    (k, kp)
}

/// Common torus weights of all monomials of phi, or `None` if phi is not a
/// joint eigenvector.
pub fn torus_weights(tag: CaseTag, phi: &FockPolynomial) -> Option<(HalfIntTriple, HalfIntTriple)> {
    let mut it = phi.terms().keys().map(|e| monomial_weights(tag, e));
    let first = it.next()?;
    it.all(|w| w == first).then_some(first)
}

/// True iff phi has K-weight sigma^vee and K'-weight sigma' of its case.
pub fn weight_check(h: &HarmonicVector) -> bool {
    torus_weights(h.params.tag(), &h.phi) == Some((h.params.sigma_dual(), h.params.sigma_prime()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use num_traits::One;

    fn gr_one() -> GaussRat {
        Complex::new(Rational::one(), Rational::zero())
    }

    fn params(tag: CaseTag, v: [u32; 3]) -> CaseParams {
        CaseParams::from_values(tag, v).unwrap()
    }

    fn all_params(max: u32) -> impl Iterator<Item = CaseParams> {
        CaseTag::ALL.into_iter().flat_map(move |tag| {
            (0..=max).flat_map(move |x| {
                (0..=max).flat_map(move |y| (0..=max).filter_map(move |w| CaseParams::from_values(tag, [x, y, w])))
            })
        })
    }

    #[test]
    fn explicit_harmonics() {
        assert_eq!(harmonic_polynomial(&params(CaseTag::A, [1, 0, 0])), z(1, 1));
        assert_eq!(harmonic_polynomial(&params(CaseTag::A, [0, 0, 0])), FockPolynomial::one());
        let c2 = &(&z(1, 1) * &z(2, 3).pow(2)) * &z(3, 2).pow(3);
        assert_eq!(harmonic_polynomial(&params(CaseTag::C2, [1, 2, 3])), c2);
    }

    #[test]
    fn inner_products() {
        let s = fock_inner_product(&z(1, 1), &z(1, 1));
        assert_eq!(s.single(), Some((gr_one(), 1)));
        assert_eq!(fock_inner_product(&z(1, 1), &z(2, 2)).single(), Some((GaussRat::zero(), 0)));
        let n = norm_of(&minor(1, 2));
        assert_eq!(n, PiScaled { value: rat(2, 1), inv_pi: 2 });
        let mixed = &FockPolynomial::one() + &z(1, 1);
        assert!(fock_inner_product(&mixed, &mixed).single().is_none());
    }

    #[test]
    fn norms() {
        assert_eq!(phi_norm_sq(&params(CaseTag::A, [0, 0, 0])), PiScaled { value: rat(1, 1), inv_pi: 0 });
        assert_eq!(phi_norm_sq(&params(CaseTag::A, [1, 1, 0])), PiScaled { value: rat(2, 1), inv_pi: 2 });
        assert_eq!(phi_norm_sq(&params(CaseTag::C2, [1, 1, 1])), PiScaled { value: rat(1, 1), inv_pi: 3 });
        for mu1 in 0..=6 {
            for mu2 in 0..=mu1 {
                for nu in 0..=6 {
                    let p = params(CaseTag::A, [mu1, mu2, nu]);
                    assert_eq!(phi_norm_sq(&p), phi_norm_sq_case_a(mu1, mu2, nu), "{p}");
                }
            }
        }
    }

    #[test]
    fn harmonics_are_harmonic_with_expected_weights() {
        for p in all_params(4) {
            let h = build_harmonic(&p);
            assert!(harmonicity_check(&h), "{p}");
            assert!(weight_check(&h), "{p}");
        }
    }

    #[test]
    fn trivial_weight_is_central_shift() {
        let h = build_harmonic(&params(CaseTag::A, [0, 0, 0]));
        let (k, _) = torus_weights(CaseTag::A, &h.phi).unwrap();
        assert_eq!(k.map(|x| x.twice()), [3, 3, -3]);
    }

    #[test]
    fn non_harmonic_probe_is_rejected() {
        let mut h = build_harmonic(&params(CaseTag::A, [1, 0, 0]));
        h.phi = &z(1, 1) * &z(3, 1);
        assert!(!harmonicity_check(&h));
        assert_eq!(apply_laplacian(AB_OPS[0], &h.phi), FockPolynomial::one());
        // z11 z33 is killed by the first operator but still has the wrong weight.
        h.phi = &z(1, 1) * &z(3, 3);
        assert!(apply_laplacian(AB_OPS[0], &h.phi).is_zero());
        assert!(!weight_check(&h));
    }

    #[test]
    fn mixed_weights_are_not_eigenvectors() {
        let phi = &z(1, 1) + &z(2, 2);
        assert!(torus_weights(CaseTag::A, &phi).is_none());
    }
}
