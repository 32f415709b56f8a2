//! Exact arithmetic used everywhere else in the crate: big rationals,
//! half-integers, factorial/binomial helpers, sparse polynomials in the nine
//! Fock variables and Laurent polynomials in the four phase pairs.

mod halfint;
mod phase;
mod poly;

pub use halfint::{HalfInt, HalfIntTriple, ParseHalfIntError};
pub use phase::{phase_constant_term, Atom, Coeff, PhaseError, PhaseKey, PhaseLaurent};
pub use poly::{var_index, Coef, Exponent, FockPolynomial, GaussRat, NumPoly, Poly};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Rational from a pair of machine integers. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Lossy conversion for the numeric layers.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Very large numerators/denominators: divide in a scaled way.
        let n = q.numer().bits() as i64;
        let d = q.denom().bits() as i64;
        let shift = (n.max(d) - 1000).max(0) as usize;
        let nn = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let dd = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        nn / dd
    })
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// C(n, k) as an exact rational; zero outside 0 <= k <= n.
pub fn binomial(n: i64, k: i64) -> Rational {
    Rational::from_integer(binomial_int(n, k))
}

pub(crate) fn binomial_int(n: i64, k: i64) -> BigInt {
    assert!(n >= 0, "binomial needs n >= 0, got {n}");
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// C(r,i) * sum_j C(mu,j) (j+r-i)! (mu-j+i)!, the left side of the
/// factorial-sum identity that equals (mu+r+1)!/(r+1).
pub fn comb_lemma_lhs(mu: u64, r: u64, i: u64) -> Rational {
    assert!(i <= r, "comb_lemma_lhs needs i <= r");
    let mut sum = BigInt::zero();
    for j in 0..=mu {
        sum += binomial_int(mu as i64, j as i64) * factorial(j + r - i) * factorial(mu - j + i);
    }
    Rational::from_integer(binomial_int(r as i64, i as i64) * sum)
}

/// Closed form of [`comb_lemma_lhs`].
pub fn comb_lemma_rhs(mu: u64, r: u64) -> Rational {
    Rational::new(factorial(mu + r + 1), BigInt::from(r + 1))
}

/// sum_l C(i,l) C(r-i, i-l), which collapses to C(r,i).
pub fn vandermonde_identity(r: u64, i: u64) -> Rational {
    assert!(i <= r, "vandermonde_identity needs i <= r");
    let (r, i) = (r as i64, i as i64);
    let s = (0..=i).fold(BigInt::zero(), |acc, l| {
        acc + binomial_int(i, l) * binomial_int(r - i, i - l)
    });
    Rational::from_integer(s)
}

/// Parse "p/q" or "p" into a rational (used by the table round trip).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Render as "num/den" (denominator always present) for serialization.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(3, -1), int(0));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(binomial(4, 5), int(0));
    }

    #[test]
    fn comb_lemma_small() {
        assert_eq!(comb_lemma_lhs(1, 1, 0), int(3));
        assert_eq!(comb_lemma_lhs(0, 0, 0), int(1));
        assert_eq!(comb_lemma_lhs(3, 4, 2), comb_lemma_rhs(3, 4));
    }

    #[test]
    fn vandermonde_small() {
        assert_eq!(vandermonde_identity(4, 2), int(6));
        assert_eq!(vandermonde_identity(0, 0), int(1));
        assert_eq!(vandermonde_identity(3, 3), int(1));
    }

    #[test]
    fn rational_text_round_trip() {
        let q = rat(-7, 12);
        assert_eq!(format_rational(&q), "-7/12");
        assert_eq!(parse_rational(&format_rational(&q)), Some(q));
        assert_eq!(parse_rational("5"), Some(int(5)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn huge_rational_to_f64() {
        let q = Rational::new(factorial(400), factorial(399));
        assert!((to_f64(&q) - 400.0).abs() < 1e-9);
    }
}
