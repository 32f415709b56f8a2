//! Named invariant suites over parameter grids, each returning one
//! [`CheckSummary`] per check. The CLI `verify` command runs these.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dscoef::{riemann_p_residual, schmid_residual};
use crate::exactmath::{comb_lemma_lhs, comb_lemma_rhs, to_f64, vandermonde_identity, binomial};
use crate::fockweil::{bargmann_oracle, build_harmonic, harmonicity_check, phi_norm_sq, weight_check, weil_coeff, KParams, DEFAULT_DEGREE_CAP};
use crate::hypergeo::identities::identity_suite;
use crate::report::{rel_diff, CheckSummary};
use crate::repparams::{formal_degree, rs_admissible, CaseParams, CaseTag, Chamber, DualPairCase};
use crate::zetaeval::{case_subcase_pairs, consistency_sides, sample_cases, zeta_closed_form, zeta_closed_form_corrected, zeta_numeric, Pattern, QuadratureConfig};

pub const SCHMID_TOL: f64 = 1e-9;
pub const RIEMANN_TOL: f64 = 1e-8;
pub const ORACLE_TOL: f64 = 1e-10;
pub const ODE_POINTS: [f64; 3] = [0.3, 0.7, 1.5];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Ode,
    Harmonics,
    Zeta,
    Theorem1,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Identities, Suite::Ode, Suite::Harmonics, Suite::Zeta, Suite::Theorem1, Suite::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Ode => "ode",
            Suite::Harmonics => "harmonics",
            Suite::Zeta => "zeta",
            Suite::Theorem1 => "theorem1",
            Suite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite `{s}` (expected one of {})", names.join(", "))
        })
    }
}

/// Everything a suite may need besides its name.
#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub grid_max: u32,
    pub quadrature: QuadratureConfig,
    pub seed: u64,
    /// Random samples per case for the oracle suite.
    pub samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { grid_max: 4, quadrature: QuadratureConfig::default(), seed: 0, samples: 20 }
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Vec<CheckSummary> {
    let g = opts.grid_max;
    match suite {
        Suite::Identities => identities(g),
        Suite::Ode => ode(g),
        Suite::Harmonics => harmonics(g),
        Suite::Zeta => zeta(g, &opts.quadrature),
        Suite::Theorem1 => theorem1(g),
        Suite::Oracle => oracle(g.min(3), opts.samples, opts.seed),
    }
}

/// Factorial-sum lemma and the Vandermonde collapse up to `max`, plus the
/// 2F1 identity checks (which carry their own grids).
pub fn identities(max: u32) -> Vec<CheckSummary> {
    let max = max as u64;
    let mut lemma = CheckSummary::new("factorial-sum lemma", 0.0);
    for mu in 0..=max {
        for r in 0..=max {
            let rhs = comb_lemma_rhs(mu, r);
            for i in 0..=r {
                lemma.exact(comb_lemma_lhs(mu, r, i) == rhs, || format!("mu={mu} r={r} i={i}"));
            }
        }
    }
    let mut vander = CheckSummary::new("Vandermonde collapse", 0.0);
    for r in 0..=max {
        for i in 0..=r {
            vander.exact(vandermonde_identity(r, i) == binomial(r as i64, i as i64), || format!("r={r} i={i}"));
        }
    }
    let mut out = vec![lemma, vander];
    out.extend(identity_suite());
    out
}

/// Admissible (chamber, r, s) with r <= max and |s| <= 2 max.
pub fn ode_grid(max: u32) -> Vec<(Chamber, i64, i64)> {
    let (r_max, s_max) = (max as i64, 2 * max as i64);
    let mut v = Vec::new();
    for ch in Chamber::ALL {
        for r in 0..=r_max {
            for s in -s_max..=s_max {
                if rs_admissible(ch, r, s) {
                    v.push((ch, r, s));
                }
            }
        }
    }
    v
}

pub fn ode(max: u32) -> Vec<CheckSummary> {
    let mut out = Vec::new();
    for ch in Chamber::ALL {
        let mut s = CheckSummary::new(format!("Schmid relations, chamber {ch}"), SCHMID_TOL);
        for (c, r, sv) in ode_grid(max).into_iter().filter(|x| x.0 == ch) {
            for i in 0..=r {
                for t in ODE_POINTS {
                    let (a, b) = schmid_residual(c, r, sv, i, t);
                    s.residual(a.abs().max(b.abs()), || format!("r={r} s={sv} i={i} t={t}"));
                }
            }
        }
        out.push(s);
    }
    let mut rp = CheckSummary::new("Riemann equation, chamber III", RIEMANN_TOL);
    for (_, r, sv) in ode_grid(max).into_iter().filter(|x| x.0 == Chamber::III) {
        for i in 0..=r {
            for t in ODE_POINTS {
                rp.residual(riemann_p_residual(r, sv, i, t).abs(), || format!("r={r} s={sv} i={i} t={t}"));
            }
        }
    }
    out.push(rp);
    out
}

/// All dominant parameter triples of a case with entries <= max.
pub fn case_grid(tag: CaseTag, max: u32) -> Vec<CaseParams> {
    let mut v = Vec::new();
    for x in 0..=max {
        for y in 0..=max {
            for z in 0..=max {
                if let Some(p) = CaseParams::from_values(tag, [x, y, z]) {
                    v.push(p);
                }
            }
        }
    }
    v
}

pub fn harmonics(max: u32) -> Vec<CheckSummary> {
    let mut harm = CheckSummary::new("harmonicity", 0.0);
    let mut weights = CheckSummary::new("torus weights", 0.0);
    for tag in CaseTag::ALL {
        for p in case_grid(tag, max) {
            let h = build_harmonic(&p);
            harm.exact(harmonicity_check(&h), || p.to_string());
            weights.exact(weight_check(&h), || p.to_string());
        }
    }
    vec![harm, weights]
}

/// Cases of one (case, subcase) pair: the minimal sample plus every case
/// with entries <= max.
pub fn zeta_cases(tag: CaseTag, subcase: Chamber, max: u32) -> Vec<DualPairCase> {
    let mut cases: Vec<DualPairCase> = sample_cases(tag, subcase).map(|[m, _]| vec![m]).unwrap_or_default();
    for p in case_grid(tag, max) {
        if let Ok(c) = DualPairCase::with_subcase(p, subcase) {
            if !cases.contains(&c) {
                cases.push(c);
            }
        }
    }
    cases
}

/// Quadrature against the reference closed forms for every (case, subcase)
/// pair, then against the corrected forms over the same cases.
pub fn zeta(max: u32, cfg: &QuadratureConfig) -> Vec<CheckSummary> {
    let mut out = Vec::new();
    let mut corrected = CheckSummary::new("zeta quadrature vs corrected closed forms", cfg.tol);
    for (tag, ch) in case_subcase_pairs() {
        let mut s = CheckSummary::new(format!("zeta quadrature {tag}-{ch}"), cfg.tol);
        for c in zeta_cases(tag, ch, max) {
            let exact = to_f64(&zeta_closed_form(&c).ratio);
            let fixed = to_f64(&zeta_closed_form_corrected(&c).ratio);
            match zeta_numeric(&c, cfg) {
                Ok(v) => {
                    s.residual(rel_diff(v, exact, 1e-300), || c.params.to_string());
                    corrected.residual(rel_diff(v, fixed, 1e-300), || c.params.to_string());
                }
                Err(e) => s.exact(false, || format!("{}: {e}", c.params)),
            }
        }
        out.push(s);
    }
    out.push(corrected);
    out
}

/// The c^2 patterns against d(pi) Z / ||phi||^2, and the compact-case Schur
/// relation, over parameters <= max.
pub fn theorem1(max: u32) -> Vec<CheckSummary> {
    let mut out = Vec::new();
    for p in Pattern::ALL {
        let mut s = CheckSummary::new(format!("c^2 pattern {p}"), 0.0);
        let mut grid = p.instances(max);
        if grid.is_empty() {
            grid.extend(p.instances(12).first());
        }
        for v in grid {
            let l = p.lambda(v);
            match consistency_sides(&l) {
                Ok((c2, dz)) => s.exact(c2 == dz, || format!("{v:?}: c^2={c2} dZ={dz}")),
                Err(e) => s.exact(false, || format!("{v:?}: {e}")),
            }
        }
        out.push(s);
    }
    let mut schur = CheckSummary::new("compact-case Schur relation", 0.0);
    for tag in [CaseTag::A, CaseTag::B] {
        for p in case_grid(tag, max) {
            let c = DualPairCase::from_params(p).expect("compact cases have no gaps");
            let v = formal_degree(&c.lambda()) * zeta_closed_form(&c).ratio;
            schur.exact(v == crate::exactmath::int(1), || format!("{p}: d Z = {v}"));
        }
    }
    out.push(schur);
    out
}

pub fn random_k(rng: &mut impl Rng) -> KParams {
    let tau = std::f64::consts::TAU;
    KParams::new(rng.gen::<f64>() * tau, rng.gen::<f64>() * std::f64::consts::FRAC_PI_2, rng.gen::<f64>() * tau, rng.gen::<f64>() * tau, rng.gen::<f64>() * tau)
}

/// Fock-model oracle against the closed coefficients at seeded random
/// (t, k, k'), `samples` per case, over parameters <= max. Moduli and full
/// complex values are checked separately.
pub fn oracle(max: u32, samples: usize, seed: u64) -> Vec<CheckSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for tag in CaseTag::ALL {
        let mut modulus = CheckSummary::new(format!("oracle modulus {tag}"), ORACLE_TOL);
        let mut value = CheckSummary::new(format!("oracle value {tag}"), ORACLE_TOL);
        for p in case_grid(tag, max) {
            let n = phi_norm_sq(&p).to_f64();
            for _ in 0..samples {
                let (k, kp) = (random_k(&mut rng), random_k(&mut rng));
                let t = rng.gen::<f64>() * 2.0;
                let at = || format!("{p} t={t:.4}");
                match bargmann_oracle(&p, t, &k, &kp, DEFAULT_DEGREE_CAP) {
                    Ok(o) => {
                        let o = o / n;
                        let w = weil_coeff(&p, t, &k, &kp);
                        let scale = o.norm().max(w.norm()).max(1e-300);
                        modulus.residual((o.norm() - w.norm()).abs() / scale, at);
                        value.residual((o - w).norm() / scale, at);
                    }
                    Err(e) => modulus.exact(false, || format!("{p}: {e}")),
                }
            }
        }
        out.push(modulus);
        out.push(value);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let opts = SuiteOptions { grid_max: 2, samples: 2, ..Default::default() };
        for suite in Suite::ALL {
            for s in run_suite(suite, &opts) {
                assert!(s.passed(), "{suite}: {s}");
            }
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
