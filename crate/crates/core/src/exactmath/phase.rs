use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{to_f64, HalfInt, Rational};

/// Exponents of p1 = zeta*conj(zeta'), p2 = xi*conj(xi'), p3 = eta*conj(eta'),
/// p4 = gamma*conj(gamma').
pub type PhaseKey = [HalfInt; 4];

/// One product (cosh t)^cosh * sin^a(th) cos^b(th) sin^c(th') cos^d(th')
/// times a product of radial handles.
///
/// A radial handle is an opaque index into a family of functions of t that the
/// caller supplies at evaluation time (the discrete-series radial coefficients
/// use the handle `i` for the i-th coefficient).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Atom {
    pub cosh: i32,
    /// Exponents of sin(theta), cos(theta), sin(theta'), cos(theta').
    pub trig: [u32; 4],
    /// Sorted radial handles.
    pub radial: Vec<u32>,
}

impl Atom {
    pub fn cosh_pow(e: i32) -> Self {
        Atom { cosh: e, ..Atom::default() }
    }

    pub fn trig(trig: [u32; 4]) -> Self {
        Atom { trig, ..Atom::default() }
    }

    pub fn radial(handle: u32) -> Self {
        Atom { radial: vec![handle], ..Atom::default() }
    }

    pub fn mul(&self, o: &Atom) -> Atom {
        let mut radial: Vec<u32> = self.radial.iter().chain(&o.radial).copied().collect();
        radial.sort_unstable();
        Atom {
            cosh: self.cosh + o.cosh,
            trig: std::array::from_fn(|k| self.trig[k] + o.trig[k]),
            radial,
        }
    }

    pub fn eval(&self, cosh: f64, trig: [f64; 4], radial: &dyn Fn(u32) -> f64) -> f64 {
        let mut v = cosh.powi(self.cosh);
        for k in 0..4 {
            v *= trig[k].powi(self.trig[k] as i32);
        }
        for &h in &self.radial {
            v *= radial(h);
        }
        v
    }
}

/// Finite rational combination of atoms: the coefficient attached to a phase
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Coeff {
    atoms: BTreeMap<Atom, Rational>,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::default()
    }

    pub fn atom(a: Atom, q: Rational) -> Self {
        let mut c = Coeff::zero();
        c.add_atom(a, q);
        c
    }

    pub fn constant(q: Rational) -> Self {
        Self::atom(Atom::default(), q)
    }

    pub fn atoms(&self) -> &BTreeMap<Atom, Rational> {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    fn add_atom(&mut self, a: Atom, q: Rational) {
        if q.is_zero() {
            return;
        }
        let s = self.atoms.remove(&a).map_or(q.clone(), |old| old + q);
        if !s.is_zero() {
            self.atoms.insert(a, s);
        }
    }

    pub fn add(&self, o: &Coeff) -> Coeff {
        let mut out = self.clone();
        for (a, q) in &o.atoms {
            out.add_atom(a.clone(), q.clone());
        }
        out
    }

    pub fn mul(&self, o: &Coeff) -> Coeff {
        let mut out = Coeff::zero();
        for (a1, q1) in &self.atoms {
            for (a2, q2) in &o.atoms {
                out.add_atom(a1.mul(a2), q1 * q2);
            }
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Coeff {
        let mut out = Coeff::zero();
        for (a, q1) in &self.atoms {
            out.add_atom(a.clone(), q1 * q);
        }
        out
    }

    pub fn eval(&self, cosh: f64, trig: [f64; 4], radial: &dyn Fn(u32) -> f64) -> f64 {
        self.atoms.iter().map(|(a, q)| to_f64(q) * a.eval(cosh, trig, radial)).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhaseError {
    #[error("phase monomial with non-integral exponent {0:?} survived; the two factors do not match")]
    NonIntegralExponent(PhaseKey),
}

/// Laurent polynomial in p1..p4 with half-integer exponents and [`Coeff`]
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PhaseLaurent {
    terms: BTreeMap<PhaseKey, Coeff>,
}

impl PhaseLaurent {
    pub fn zero() -> Self {
        PhaseLaurent::default()
    }

    pub fn one() -> Self {
        Self::term([HalfInt::ZERO; 4], Coeff::constant(Rational::one()))
    }

    pub fn term(key: PhaseKey, c: Coeff) -> Self {
        let mut p = PhaseLaurent::zero();
        p.add_term(key, c);
        p
    }

    /// A pure phase monomial with coefficient 1.
    pub fn phase(key: PhaseKey) -> Self {
        Self::term(key, Coeff::constant(Rational::one()))
    }

    /// A phase-free coefficient.
    pub fn coeff(c: Coeff) -> Self {
        Self::term([HalfInt::ZERO; 4], c)
    }

    pub fn terms(&self) -> &BTreeMap<PhaseKey, Coeff> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: PhaseKey, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.remove(&key) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(key, s);
        }
    }

    pub fn add(&self, o: &PhaseLaurent) -> PhaseLaurent {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn mul(&self, o: &PhaseLaurent) -> PhaseLaurent {
        let mut out = PhaseLaurent::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let key = std::array::from_fn(|n| k1[n] + k2[n]);
                out.add_term(key, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> PhaseLaurent {
        let mut out = PhaseLaurent::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, c.scale(q));
        }
        out
    }

    pub fn pow(&self, n: u32) -> PhaseLaurent {
        (0..n).fold(PhaseLaurent::one(), |acc, _| acc.mul(self))
    }

    /// Inverts every phase exponent (complex conjugation of the phases).
    pub fn conj_phases(&self) -> PhaseLaurent {
        PhaseLaurent {
            terms: self.terms.iter().map(|(k, c)| (k.map(|e| -e), c.clone())).collect(),
        }
    }

    pub fn has_only_integral_exponents(&self) -> bool {
        self.terms.keys().all(|k| k.iter().all(|e| e.is_integer()))
    }

    /// Coefficient of p1^0 p2^0 p3^0 p4^0, i.e. the average over the phase
    /// torus.
    pub fn constant_term(&self) -> Result<Coeff, PhaseError> {
        if let Some(k) = self.terms.keys().find(|k| k.iter().any(|e| !e.is_integer())) {
            return Err(PhaseError::NonIntegralExponent(*k));
        }
        Ok(self.terms.get(&[HalfInt::ZERO; 4]).cloned().unwrap_or_default())
    }

    /// Numerical value with p_k = exp(i * angles[k]); half powers use the
    /// same angle, so the branch is fixed by the angle representative.
    pub fn eval(&self, angles: [f64; 4], cosh: f64, trig: [f64; 4], radial: &dyn Fn(u32) -> f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(k, c)| {
                let arg: f64 = (0..4).map(|n| k[n].to_f64() * angles[n]).sum();
                Complex64::from_polar(1.0, arg) * c.eval(cosh, trig, radial)
            })
            .sum()
    }
}

/// Free-standing form of [`PhaseLaurent::constant_term`].
pub fn phase_constant_term(f: &PhaseLaurent) -> Result<Coeff, PhaseError> {
    f.constant_term()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    fn key(t: [i64; 4]) -> PhaseKey {
        t.map(HalfInt::from_twice)
    }

    #[test]
    fn constant_term_picks_zero_exponent() {
        let f = PhaseLaurent::term(key([2, 0, 0, 0]), Coeff::constant(int(3)))
            .add(&PhaseLaurent::term(key([0; 4]), Coeff::constant(int(5))));
        assert_eq!(f.constant_term().unwrap(), Coeff::constant(int(5)));
    }

    #[test]
    fn half_powers_combine() {
        let h = PhaseLaurent::phase(key([0, 1, 0, 0]));
        let f = h.mul(&h);
        assert_eq!(f.terms().keys().next().unwrap(), &key([0, 2, 0, 0]));
        assert!(f.constant_term().unwrap().is_zero());
        assert!(matches!(h.constant_term(), Err(PhaseError::NonIntegralExponent(_))));
        assert!(h.mul(&h.conj_phases()).constant_term().unwrap() == Coeff::constant(int(1)));
    }

    #[test]
    fn coefficient_atoms_multiply() {
        let a = Coeff::atom(Atom::cosh_pow(-2), rat(1, 2));
        let b = Coeff::atom(Atom { cosh: 1, trig: [1, 0, 0, 2], radial: vec![3] }, int(4));
        let p = a.mul(&b);
        let (atom, q) = p.atoms().iter().next().unwrap();
        assert_eq!(atom.cosh, -1);
        assert_eq!(atom.radial, vec![3]);
        assert_eq!(q, &int(2));
        let v = p.eval(2.0, [0.5, 1.0, 1.0, 0.5], &|h| h as f64);
        assert!((v - 2.0 * 0.5 * 0.5 * 0.25 * 3.0).abs() < 1e-15);
    }

    #[test]
    fn numeric_evaluation_uses_angles() {
        let f = PhaseLaurent::phase(key([1, 0, 0, 0]));
        let v = f.eval([std::f64::consts::PI, 0.0, 0.0, 0.0], 1.0, [0.0; 4], &|_| 1.0);
        assert!((v - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }
}
