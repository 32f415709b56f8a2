//! Matrix coefficients of the discrete series of U(2,1) on the minimal
//! K-type: the radial functions, the full bi-K-equivariant function, and
//! residual checks against the first-order Schmid systems and the
//! second-order Riemann equation they imply in the middle chamber.

use num_complex::Complex64;

use crate::exactmath::{binomial, to_f64, Atom, Coeff, HalfInt, PhaseLaurent, Rational};
use crate::fockweil::KParams;
use crate::hypergeo::{derivative_2f1, gauss_2f1, second_derivative_2f1, HypParams};
use crate::repparams::{BlattnerParam, Chamber};

fn f21(a: f64, b: f64, c: f64, z: f64) -> f64 {
    gauss_2f1(&HypParams::new(a, b, c), z).expect("c > 0 and z < 1 on the radial domain")
}

fn df21(a: f64, b: f64, c: f64, z: f64) -> f64 {
    derivative_2f1(&HypParams::new(a, b, c), z).expect("c > 0 and z < 1 on the radial domain")
}

/// c~_i as a function of (cosh t, tanh^2 t). Keeping tanh^2 separate avoids
/// the cancellation in 1 - cosh^-2 for small t.
pub fn ctilde_ch(chamber: Chamber, r: i64, s: i64, i: i64, cosh: f64, tanh2: f64) -> f64 {
    match chamber {
        Chamber::I => cosh.powi((-i - s) as i32),
        Chamber::II => cosh.powi((i + s) as i32),
        Chamber::III => cosh.powi((-2 - i + s) as i32) * f21((1 + i) as f64, (1 - s) as f64, (r + 2) as f64, tanh2),
    }
}

pub fn ctilde(chamber: Chamber, r: i64, s: i64, i: i64, t: f64) -> f64 {
    ctilde_ch(chamber, r, s, i, t.cosh(), t.tanh().powi(2))
}

/// The second middle-chamber expression,
/// (cosh t)^(-2r-2+i-s) F(1+r-i, 1+r+s; r+2; tanh^2 t).
pub fn ctilde_alt(r: i64, s: i64, i: i64, t: f64) -> f64 {
    t.cosh().powi((-2 * r - 2 + i - s) as i32) * f21((1 + r - i) as f64, (1 + r + s) as f64, (r + 2) as f64, t.tanh().powi(2))
}

/// d c~_i / dt, analytically.
pub fn ctilde_deriv(chamber: Chamber, r: i64, s: i64, i: i64, t: f64) -> f64 {
    let (ch, th) = (t.cosh(), t.tanh());
    match chamber {
        Chamber::I => -((i + s) as f64) * th * ch.powi((-i - s) as i32),
        Chamber::II => (i + s) as f64 * th * ch.powi((i + s) as i32),
        Chamber::III => {
            let e = -2 - i + s;
            let (a, b, c) = ((1 + i) as f64, (1 - s) as f64, (r + 2) as f64);
            let z = th * th;
            ch.powi(e as i32) * th * (e as f64 * f21(a, b, c, z) + 2.0 / (ch * ch) * df21(a, b, c, z))
        }
    }
}

/// psi_lambda(t) = sum_i c~_i(t).
pub fn psi_radial(chamber: Chamber, r: i64, s: i64, t: f64) -> f64 {
    (0..=r).map(|i| ctilde(chamber, r, s, i, t)).sum()
}

/// The four first-order relations coming from the Schmid operator, named by
/// the signs of the projection and of the lowering/raising part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchmidEq {
    PlusMinus,
    MinusMinus,
    PlusPlus,
    MinusPlus,
}

impl SchmidEq {
    /// The pair of relations that holds in a chamber.
    pub fn for_chamber(chamber: Chamber) -> [SchmidEq; 2] {
        match chamber {
            Chamber::I => [SchmidEq::PlusMinus, SchmidEq::MinusMinus],
            Chamber::II => [SchmidEq::PlusPlus, SchmidEq::MinusPlus],
            Chamber::III => [SchmidEq::MinusMinus, SchmidEq::MinusPlus],
        }
    }
}

/// Value and t-derivative of c~_j at t, for j in 0..=r.
pub type RadialFamily<'a> = &'a dyn Fn(i64, f64) -> (f64, f64);

/// Residual of one Schmid relation at index i, evaluated on
/// c_j = (-1)^j C(r, j) c~_j built from `family`; out-of-range c_j are 0.
pub fn schmid_eq_residual(eq: SchmidEq, r: i64, s: i64, i: i64, t: f64, family: RadialFamily) -> f64 {
    let c = |j: i64| -> (f64, f64) {
        if j < 0 || j > r {
            return (0.0, 0.0);
        }
        let w = if j % 2 == 0 { 1.0 } else { -1.0 } * to_f64(&binomial(r, j));
        let (v, d) = family(j, t);
        (w * v, w * d)
    };
    let (th, coth, csch) = (t.tanh(), 1.0 / t.tanh(), 1.0 / t.sinh());
    let (ci, dci) = c(i);
    let (fi, ri, si) = (i as f64, r as f64, (i + s) as f64);
    match eq {
        SchmidEq::PlusMinus => (-0.5 * dci - si / 2.0 * th * ci + fi * coth * ci) + (ri - fi + 1.0) * csch * c(i - 1).0,
        SchmidEq::MinusMinus => {
            fi * (0.5 * dci + si / 2.0 * th * ci + (ri + 1.0 - fi) * coth * ci) + (ri + 1.0 - fi).powi(2) * csch * c(i - 1).0
        }
        SchmidEq::PlusPlus => (-0.5 * dci + si / 2.0 * th * ci + (ri - fi) * coth * ci) + (fi + 1.0) * csch * c(i + 1).0,
        SchmidEq::MinusPlus => {
            (ri - fi) * (0.5 * dci - si / 2.0 * th * ci + (fi + 1.0) * coth * ci) + (fi + 1.0).powi(2) * csch * c(i + 1).0
        }
    }
}

/// Residuals of the chamber's two relations on the closed-form family.
pub fn schmid_residual(chamber: Chamber, r: i64, s: i64, i: i64, t: f64) -> (f64, f64) {
    let fam = |j: i64, t: f64| (ctilde(chamber, r, s, j, t), ctilde_deriv(chamber, r, s, j, t));
    let [e1, e2] = SchmidEq::for_chamber(chamber);
    (schmid_eq_residual(e1, r, s, i, t, &fam), schmid_eq_residual(e2, r, s, i, t, &fam))
}

/// Residual of the Riemann equation with singular points 0, infinity, 1 and
/// exponent pairs (1+(i-s)/2, r+1-(i-s)/2), ((i+s)/2, -(i+s)/2), (0, -r-1),
/// for a function given by its value and first two z-derivatives.
pub fn riemann_p_residual_with(r: i64, s: i64, i: i64, z: f64, u: f64, du: f64, d2u: f64) -> f64 {
    let (r, s, i) = (r as f64, s as f64, i as f64);
    let (a0, a1) = (1.0 + (i - s) / 2.0, r + 1.0 - (i - s) / 2.0);
    let (b0, b1) = ((i + s) / 2.0, -(i + s) / 2.0);
    let (g0, g1) = (0.0, -r - 1.0);
    let p = (1.0 - a0 - a1) / z + (1.0 - g0 - g1) / (z - 1.0);
    let q = (-a0 * a1 / z + b0 * b1 + g0 * g1 / (z - 1.0)) / (z * (z - 1.0));
    d2u + p * du + q * u
}

/// Riemann residual of the middle-chamber c~_i, with z = (cosh t)^-2 and
/// analytic derivatives of z^(1+(i-s)/2) F(1+i, 1-s; r+2; 1-z).
pub fn riemann_p_residual(r: i64, s: i64, i: i64, t: f64) -> f64 {
    let z = t.cosh().powi(-2);
    let w = t.tanh().powi(2);
    let p = HypParams::new((1 + i) as f64, (1 - s) as f64, (r + 2) as f64);
    let (f, df, d2f) = (
        gauss_2f1(&p, w).expect("valid"),
        derivative_2f1(&p, w).expect("valid"),
        second_derivative_2f1(&p, w).expect("valid"),
    );
    let a = 1.0 + (i - s) as f64 / 2.0;
    let za = z.powf(a);
    let u = za * f;
    let du = a * za / z * f - za * df;
    let d2u = a * (a - 1.0) * za / (z * z) * f - 2.0 * a * za / z * df + za * d2f;
    riemann_p_residual_with(r, s, i, z, u, du, d2u)
}

fn key(twice: [i64; 4]) -> [HalfInt; 4] {
    twice.map(HalfInt::from_twice)
}

fn trig_term(p2: i64, p3: i64, trig: [u32; 4], sign: i64) -> PhaseLaurent {
    PhaseLaurent::term(key([0, 2 * p2, 2 * p3, 0]), Coeff::atom(Atom::trig(trig), Rational::from_integer(sign.into())))
}

/// The entries a, b, c, d of k k'^-1 (up to the zeta phases), as Laurent
/// polynomials in p2, p3 with trigonometric coefficients.
pub fn pairing_entries() -> [PhaseLaurent; 4] {
    const CC: [u32; 4] = [0, 1, 0, 1];
    const SS: [u32; 4] = [1, 0, 1, 0];
    const CS: [u32; 4] = [0, 1, 1, 0];
    const SC: [u32; 4] = [1, 0, 0, 1];
    let a = trig_term(1, 0, CC, 1).add(&trig_term(0, 1, SS, 1));
    let b = trig_term(1, 0, CS, -1).add(&trig_term(0, 1, SC, 1));
    let c = trig_term(1, 0, SC, -1).add(&trig_term(0, 1, CS, 1));
    let d = trig_term(1, 0, SS, 1).add(&trig_term(0, 1, CC, 1));
    [a, b, c, d]
}

/// psi(g) for g = k'^-1 a_t k as a Laurent polynomial in the phase pairs;
/// the radial handle `i` stands for c~_i(t).
pub fn psi_full_symbolic(lambda: &BlattnerParam) -> PhaseLaurent {
    let r = lambda.r;
    let [l1, l2, l3] = lambda.weight.map(|x| x.twice());
    let [a, b, c, d] = pairing_entries();
    let bc = b.mul(&c);
    let pow_table = |p: &PhaseLaurent| {
        let mut v = vec![PhaseLaurent::one()];
        for k in 0..r as usize {
            let next = v[k].mul(p);
            v.push(next);
        }
        v
    };
    let (ap, bcp, dp) = (pow_table(&a), pow_table(&bc), pow_table(&d));
    let mut out = PhaseLaurent::zero();
    for i in 0..=r {
        let mut inner = PhaseLaurent::zero();
        for l in 0..=i {
            let de = r - 2 * i + l;
            if de < 0 {
                continue;
            }
            let w = binomial(i, l) * binomial(r - i, i - l);
            let term = ap[l as usize].mul(&bcp[(i - l) as usize]).mul(&dp[de as usize]).scale(&w);
            inner = inner.add(&term);
        }
        let phase = PhaseLaurent::term(key([l1 - 2 * i, l2, l2, l3]), Coeff::atom(Atom::radial(i as u32), Rational::from_integer(1.into())));
        out = out.add(&phase.mul(&inner));
    }
    out
}

/// Numerical psi(g) for g = k'^-1 a_t k.
pub fn psi_full(lambda: &BlattnerParam, t: f64, k: &KParams, kp: &KParams) -> Complex64 {
    let (ch, th2) = (t.cosh(), t.tanh().powi(2));
    let (r, s, chamber) = (lambda.r, lambda.s, lambda.chamber);
    let angles = [k.zeta - kp.zeta, k.xi - kp.xi, k.eta - kp.eta, k.gamma - kp.gamma];
    let trig = [k.theta.sin(), k.theta.cos(), kp.theta.sin(), kp.theta.cos()];
    psi_full_symbolic(lambda).eval(angles, ch, trig, &|i| ctilde_ch(chamber, r, s, i as i64, ch, th2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{vandermonde_identity, HalfIntTriple};
    use crate::fockweil::weil_closed_form;
    use crate::repparams::{rs_admissible, CaseParams, CaseTag, DualPairCase};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn admissible() -> Vec<(Chamber, i64, i64)> {
        let mut v = Vec::new();
        for ch in Chamber::ALL {
            for r in 0..=6 {
                for s in -12..=12 {
                    if rs_admissible(ch, r, s) {
                        v.push((ch, r, s));
                    }
                }
            }
        }
        v
    }

    #[test]
    fn normalized_at_identity() {
        for (ch, r, s) in admissible() {
            for i in 0..=r {
                assert!((ctilde(ch, r, s, i, 0.0) - 1.0).abs() < 1e-15);
            }
            assert!((psi_radial(ch, r, s, 0.0) - (r + 1) as f64).abs() < 1e-13);
        }
    }

    #[test]
    fn spot_values() {
        let t = 2f64.acosh();
        assert!((ctilde(Chamber::I, 3, 2, 1, t) - 0.125).abs() < 1e-14);
        assert!((psi_radial(Chamber::I, 2, 1, t) - 0.875).abs() < 1e-14);
        let v: f64 = (0..=2).map(|i| 2f64.powi(i - 5)).sum();
        assert!((psi_radial(Chamber::II, 2, -5, t) - v).abs() < 1e-14);
    }

    #[test]
    fn middle_forms_agree() {
        for (ch, r, s) in admissible() {
            if ch != Chamber::III {
                continue;
            }
            for i in 0..=r {
                for t in [0.1, 0.3, 0.7, 1.5, 3.0] {
                    let (a, b) = (ctilde(ch, r, s, i, t), ctilde_alt(r, s, i, t));
                    assert!((a - b).abs() <= 1e-10 * a.abs().max(b.abs()), "r={r} s={s} i={i} t={t}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn schmid_residuals_vanish() {
        for (ch, r, s) in admissible() {
            for i in 0..=r {
                for t in [0.3, 0.7, 1.5] {
                    let (a, b) = schmid_residual(ch, r, s, i, t);
                    assert!(a.abs() < 1e-9 && b.abs() < 1e-9, "{ch} r={r} s={s} i={i} t={t}: {a} {b}");
                }
            }
        }
    }

    #[test]
    fn schmid_detects_wrong_functions() {
        let (r, s) = (2, 4);
        let perturbed = |j: i64, t: f64| (ctilde(Chamber::I, r, s, j, t) + 0.01, ctilde_deriv(Chamber::I, r, s, j, t));
        let res = schmid_eq_residual(SchmidEq::PlusMinus, r, s, 1, 0.7, &perturbed);
        assert!(res.abs() > 1e-3);
        // The holomorphic family does not solve the antiholomorphic system.
        let hol = |j: i64, t: f64| (ctilde(Chamber::I, r, s, j, t), ctilde_deriv(Chamber::I, r, s, j, t));
        let res = schmid_eq_residual(SchmidEq::PlusPlus, r, s, 1, 0.7, &hol);
        assert!(res.abs() > 1e-3);
    }

    #[test]
    fn riemann_equation_holds() {
        for (ch, r, s) in admissible() {
            if ch != Chamber::III {
                continue;
            }
            for i in 0..=r {
                for t in [0.3, 0.7, 1.5] {
                    let res = riemann_p_residual(r, s, i, t);
                    assert!(res.abs() < 1e-8, "r={r} s={s} i={i} t={t}: {res}");
                }
            }
        }
    }

    #[test]
    fn riemann_probes() {
        let (r, s, i, z) = (3, -1, 1, 0.4);
        assert!(riemann_p_residual_with(r, s, i, z, 1.0, 0.0, 0.0).abs() > 1e-3);
        let t = (1.0 / z.sqrt()).acosh();
        let (u, du, d2u) = (0.3, -0.2, 0.7);
        let base = riemann_p_residual_with(r, s, i, z, u, du, d2u);
        let scaled = riemann_p_residual_with(r, s, i, z, 5.0 * u, 5.0 * du, 5.0 * d2u);
        assert!((scaled - 5.0 * base).abs() < 1e-12 * base.abs().max(1.0));
        assert!(riemann_p_residual(r, s, i, t).abs() < 1e-10);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for (ch, r, s) in admissible().into_iter().step_by(3) {
            let i = r / 2;
            let t = 0.6;
            let h = 1e-6;
            let fd = (ctilde(ch, r, s, i, t + h) - ctilde(ch, r, s, i, t - h)) / (2.0 * h);
            let d = ctilde_deriv(ch, r, s, i, t);
            assert!((fd - d).abs() < 1e-6 * d.abs().max(1.0), "{ch} {r} {s}");
        }
    }

    fn blattner(w: [i64; 3], chamber: Chamber) -> BlattnerParam {
        let weight: HalfIntTriple = w.map(HalfInt::from_twice);
        BlattnerParam::from_weight(weight, chamber)
    }

    fn random_k(rng: &mut ChaCha8Rng) -> KParams {
        let tau = std::f64::consts::TAU;
        KParams::new(rng.gen::<f64>() * tau, rng.gen::<f64>() * 1.5, rng.gen::<f64>() * tau, rng.gen::<f64>() * tau, rng.gen::<f64>() * tau)
    }

    #[test]
    fn identity_gives_radial_sum() {
        let b = blattner([-1, -5, -3], Chamber::III);
        let k = KParams::default();
        for t in [0.0, 0.5, 1.2] {
            let v = psi_full(&b, t, &k, &k);
            assert!((v - psi_radial(Chamber::III, b.r, b.s, t)).norm() < 1e-13);
        }
        let k = KParams::new(0.4, 0.9, 1.3, -0.2, 0.8);
        let v = psi_full(&b, 0.0, &k, &k);
        assert!((v - (b.r + 1) as f64).norm() < 1e-12);
        for r in 0..=12 {
            for i in 0..=r {
                assert_eq!(vandermonde_identity(r, i), binomial(r as i64, i as i64));
            }
        }
    }

    /// psi from the matrix of k k'^-1 acting on x^i y^(r-i), with the
    /// determinant character fixed by the angles.
    fn psi_from_matrix(b: &BlattnerParam, t: f64, k: &KParams, kp: &KParams) -> Complex64 {
        let m1 = k.k1();
        let m2 = kp.k1();
        // M = k1 * k1'^*.
        let m: [[Complex64; 2]; 2] =
            std::array::from_fn(|i| std::array::from_fn(|j| (0..2).map(|l| m1[i][l] * m2[j][l].conj()).sum()));
        let r = b.r as usize;
        let l2 = b.weight[1].to_f64();
        let l3 = b.weight[2].to_f64();
        let det = Complex64::from_polar(1.0, l2 * (k.zeta - kp.zeta + k.xi - kp.xi + k.eta - kp.eta));
        let chi = Complex64::from_polar(1.0, l3 * (k.gamma - kp.gamma));
        let mut total = Complex64::new(0.0, 0.0);
        for i in 0..=r {
            // Coefficient of x^i y^(r-i) in (M11 x + M21 y)^i (M12 x + M22 y)^(r-i).
            let mut coeff = vec![Complex64::new(1.0, 0.0)];
            let mut mul = |cx: Complex64, cy: Complex64| {
                let mut next = vec![Complex64::new(0.0, 0.0); coeff.len() + 1];
                for (deg_x, c) in coeff.iter().enumerate() {
                    next[deg_x + 1] += c * cx;
                    next[deg_x] += c * cy;
                }
                coeff = next;
            };
            for _ in 0..i {
                mul(m[0][0], m[1][0]);
            }
            for _ in i..r {
                mul(m[0][1], m[1][1]);
            }
            total += coeff[i] * ctilde(b.chamber, b.r, b.s, i as i64, t);
        }
        total * det * chi
    }

    #[test]
    fn pairing_matches_matrix_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (w, ch) in [([-1, -5, -3], Chamber::III), ([-3, -7, 3], Chamber::II), ([5, 1, -9], Chamber::I)] {
            let b = blattner(w, ch);
            for _ in 0..10 {
                let (k, kp) = (random_k(&mut rng), random_k(&mut rng));
                let t = rng.gen::<f64>() * 2.0;
                let a = psi_full(&b, t, &k, &kp);
                let m = psi_from_matrix(&b, t, &k, &kp);
                assert!((a - m).norm() < 1e-12 * m.norm().max(1.0), "{a} vs {m}");
            }
        }
    }

    #[test]
    fn depends_on_k_kprime_inverse_only() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let b = blattner([-1, -5, -3], Chamber::III);
        for _ in 0..10 {
            let (k, kp) = (random_k(&mut rng), random_k(&mut rng));
            // Right multiplication of both by the same torus element.
            let (u, v, w) = (rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>());
            let shift = |x: &KParams| KParams { xi: x.xi + u, eta: x.eta + v, gamma: x.gamma + w, ..*x };
            let a = psi_full(&b, 0.9, &k, &kp);
            let c = psi_full(&b, 0.9, &shift(&k), &shift(&kp));
            assert!((a - c).norm() < 1e-12);
            // Conjugating k k'^-1 by diag(1, zeta0, 1) leaves the diagonal pairings alone.
            let z0 = rng.gen::<f64>();
            let lz = |x: &KParams| KParams { zeta: x.zeta + z0, ..*x };
            let d = psi_from_matrix(&b, 0.9, &lz(&k), &lz(&kp));
            assert!((a - d).norm() < 1e-12 * a.norm().max(1.0));
        }
    }

    #[test]
    fn products_with_weil_forms_are_genuine() {
        for tag in CaseTag::ALL {
            for x in 0..=4 {
                for y in 0..=4 {
                    for z in 0..=4 {
                        let Some(p) = CaseParams::from_values(tag, [x, y, z]) else { continue };
                        let Ok(case) = DualPairCase::from_params(p) else { continue };
                        let prod = weil_closed_form(&p).mul(&psi_full_symbolic(&case.blattner()));
                        assert!(prod.has_only_integral_exponents(), "{case}");
                        assert!(!psi_full_symbolic(&case.blattner()).has_only_integral_exponents());
                    }
                }
            }
        }
    }
}
