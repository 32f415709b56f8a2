use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};

use super::Rational;

/// Gaussian rational, the coefficient ring of the exact Fock polynomials.
pub type GaussRat = Complex<Rational>;

/// Exponent vector over z11, z12, ..., z33 (row major).
pub type Exponent = [u32; 9];

/// Position of z_{ij} (1-based i, j) in an [`Exponent`].
pub const fn var_index(i: usize, j: usize) -> usize {
    3 * (i - 1) + (j - 1)
}

/// Coefficient rings a [`Poly`] can live over.
pub trait Coef:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_u64(n: u64) -> Self;
    fn conj(&self) -> Self;
}

impl Coef for GaussRat {
    fn from_u64(n: u64) -> Self {
        Complex::new(Rational::from_integer(BigInt::from(n)), Rational::zero())
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
}

impl Coef for Complex64 {
    fn from_u64(n: u64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
}

/// Sparse polynomial in the nine variables z_{ij}. Zero coefficients are
/// never stored, so `terms().is_empty()` is the zero test.
#[derive(Clone, PartialEq)]
pub struct Poly<C> {
    terms: BTreeMap<Exponent, C>,
}

/// Exact Fock-space polynomial.
pub type FockPolynomial = Poly<GaussRat>;
/// Floating point twin used by the kernel oracle.
pub type NumPoly = Poly<Complex64>;

impl<C: Coef> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial([0; 9], c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn monomial(exp: Exponent, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { terms }
    }

    /// The variable z_{ij}, 1-based.
    pub fn z(i: usize, j: usize) -> Self {
        let mut e = [0; 9];
        e[var_index(i, j)] = 1;
        Self::monomial(e, C::one())
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &Exponent) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    /// Largest total degree of a stored monomial; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    fn add_term(&mut self, exp: Exponent, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(exp, s);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            out.add_term(*e, a.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative with respect to the variable at `idx`.
    pub fn deriv(&self, idx: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[idx] -= 1;
            out.add_term(e2, c.clone() * C::from_u64(e[idx] as u64));
        }
        out
    }

    /// Drop every monomial of total degree above `max_deg`.
    pub fn truncate(&self, max_deg: u32) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= max_deg)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Replace each variable by the given polynomial.
    pub fn substitute(&self, images: &[Poly<C>; 9]) -> Self {
        let mut out = Self::zero();
        // Cache powers of each image; degrees are small.
        let mut powers: Vec<Vec<Poly<C>>> = images.iter().map(|p| vec![Self::one(), p.clone()]).collect();
        for (e, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (v, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[v].len() <= k as usize {
                    let next = &powers[v][powers[v].len() - 1] * &images[v];
                    powers[v].push(next);
                }
                term = &term * &powers[v][k as usize];
            }
            out = &out + &term;
        }
        out
    }

    pub fn map_coeffs<D: Coef>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }
}

impl<C: Coef> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, o: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<C: Coef> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, o: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<C: Coef> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C: Coef> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, o: &Poly<C>) -> Poly<C> {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut e = *e1;
                for k in 0..9 {
                    e[k] += e2[k];
                }
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coef + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*z{}{}", v / 3 + 1, v % 3 + 1)?,
                    _ => write!(f, "*z{}{}^{k}", v / 3 + 1, v % 3 + 1)?,
                }
            }
        }
        Ok(())
    }
}

impl<C: Coef + fmt::Display> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = FockPolynomial;

    fn det_a() -> P {
        &(&P::z(1, 1) * &P::z(2, 2)) - &(&P::z(2, 1) * &P::z(1, 2))
    }

    #[test]
    fn ring_basics() {
        let d = det_a();
        assert_eq!(d.degree(), 2);
        assert_eq!(d.terms().len(), 2);
        assert!((&d - &d).is_zero());
        assert_eq!(d.pow(3).degree(), 6);
        assert_eq!(P::zero().degree(), 0);
    }

    #[test]
    fn derivative_of_determinant() {
        let d = det_a();
        assert_eq!(d.deriv(var_index(1, 1)), P::z(2, 2));
        assert_eq!(d.deriv(var_index(1, 2)), -&P::z(2, 1));
        assert!(d.deriv(var_index(3, 3)).is_zero());
        let cube = P::z(1, 1).pow(3);
        assert_eq!(cube.deriv(0), P::z(1, 1).pow(2).scale(&GaussRat::from_u64(3)));
    }

    #[test]
    fn substitution_swaps_variables() {
        let mut images: [P; 9] = std::array::from_fn(|v| P::z(v / 3 + 1, v % 3 + 1));
        images[var_index(1, 1)] = P::z(2, 2);
        images[var_index(2, 2)] = P::z(1, 1);
        let d = det_a();
        assert_eq!(d.substitute(&images), d);
        let t = (&P::z(1, 1) + &P::one()).pow(2).truncate(1);
        assert_eq!(t, &P::z(1, 1).scale(&GaussRat::from_u64(2)) + &P::one());
    }
}
