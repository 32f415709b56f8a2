//! Grid checks of the classical 2F1 identities against the evaluator.

use super::{derivative_2f1, euler_integral_2f1, gauss_2f1, gauss_value_at_1, HypError, HypParams};
use crate::report::{rel_diff, CheckSummary};

pub const CONTIGUOUS_TOL: f64 = 1e-10;
pub const EULER_TRANSFORM_TOL: f64 = 1e-10;
pub const DERIVATIVE_FD_TOL: f64 = 1e-6;
pub const GAUSS_NEAR_ONE_TOL: f64 = 1e-8;
pub const EULER_INTEGRAL_TOL: f64 = 1e-9;

const GRID_Z: [f64; 3] = [0.1, 0.5, 0.9];

fn grid() -> impl Iterator<Item = (f64, f64, f64)> {
    (-3..=3).flat_map(|a| {
        (-3..=3).filter(|&b| b != 0).flat_map(move |b| (1..=5).map(move |c| (a as f64, b as f64, c as f64)))
    })
}

/// z F(a+1,b+1;c+1;z) = (c/b) (F(a+1,b;c;z) - F(a,b;c;z)).
pub fn contiguous_residual(a: f64, b: f64, c: f64, z: f64) -> Result<f64, HypError> {
    let lhs = z * gauss_2f1(&HypParams::new(a + 1.0, b + 1.0, c + 1.0), z)?;
    let f1 = gauss_2f1(&HypParams::new(a + 1.0, b, c), z)?;
    let f0 = gauss_2f1(&HypParams::new(a, b, c), z)?;
    let rhs = c / b * (f1 - f0);
    let scale = lhs.abs().max((c / b * f1).abs()).max((c / b * f0).abs()).max(1e-300);
    Ok((lhs - rhs).abs() / scale)
}

/// F(a,b;c;z) = (1-z)^{c-a-b} F(c-a, c-b; c; z).
pub fn euler_transform_residual(a: f64, b: f64, c: f64, z: f64) -> Result<f64, HypError> {
    let lhs = gauss_2f1(&HypParams::new(a, b, c), z)?;
    let rhs = (1.0 - z).powf(c - a - b) * gauss_2f1(&HypParams::new(c - a, c - b, c), z)?;
    Ok(rel_diff(lhs, rhs, 1e-300))
}

/// Derivative rule against a central difference with step `h`.
pub fn derivative_fd_residual(a: f64, b: f64, c: f64, z: f64, h: f64) -> Result<f64, HypError> {
    let p = HypParams::new(a, b, c);
    let exact = derivative_2f1(&p, z)?;
    let fd = (gauss_2f1(&p, z + h)? - gauss_2f1(&p, z - h)?) / (2.0 * h);
    let scale = exact.abs().max(gauss_2f1(&p, z)?.abs()).max(1e-300);
    Ok((exact - fd).abs() / scale)
}

pub fn check_contiguous() -> CheckSummary {
    let mut s = CheckSummary::new("contiguous relation z F(a+1,b+1,c+1) = (c/b)(F(a+1,b,c) - F(a,b,c))", CONTIGUOUS_TOL);
    for (a, b, c) in grid() {
        for z in GRID_Z {
            match contiguous_residual(a, b, c, z) {
                Ok(r) => s.residual(r, || format!("a={a} b={b} c={c} z={z}")),
                Err(e) => s.exact(false, || format!("a={a} b={b} c={c} z={z}: {e}")),
            }
        }
    }
    s
}

pub fn check_euler_transform() -> CheckSummary {
    let mut s = CheckSummary::new("Euler transformation F = (1-z)^(c-a-b) F(c-a,c-b,c)", EULER_TRANSFORM_TOL);
    for (a, b, c) in grid() {
        for z in GRID_Z {
            match euler_transform_residual(a, b, c, z) {
                Ok(r) => s.residual(r, || format!("a={a} b={b} c={c} z={z}")),
                Err(e) => s.exact(false, || format!("a={a} b={b} c={c} z={z}: {e}")),
            }
        }
    }
    s
}

pub fn check_derivative_fd() -> CheckSummary {
    let mut s = CheckSummary::new("derivative rule vs central difference (h=1e-6)", DERIVATIVE_FD_TOL);
    for (a, b, c) in grid() {
        for z in [0.1, 0.3, 0.5, 0.9] {
            match derivative_fd_residual(a, b, c, z, 1e-6) {
                Ok(r) => s.residual(r, || format!("a={a} b={b} c={c} z={z}")),
                Err(e) => s.exact(false, || format!("a={a} b={b} c={c} z={z}: {e}")),
            }
        }
    }
    s
}

/// Gauss's theorem: exact at z = 1 for terminating series, and against
/// F(1-d) + d F'(1-d) with d = 1e-10 for convergent non-terminating ones.
///
/// The comparison is relative with a floor of 1e-6, since Gauss's product is
/// exactly 0 whenever Gamma(c-a) or Gamma(c-b) sits on a pole, and the series
/// side then only returns round-off.
pub fn check_gauss_theorem() -> CheckSummary {
    let mut s = CheckSummary::new("Gauss value at 1 vs terminating sum and near-1 series", GAUSS_NEAR_ONE_TOL);
    let halves: Vec<f64> = (-6..=8).map(|k| k as f64 / 2.0).collect();
    for &a in &halves {
        for &b in &halves {
            for c2 in 1..=16 {
                let c = c2 as f64 / 2.0;
                let p = HypParams::new(a, b, c);
                if c - a - b < 1.0 {
                    continue;
                }
                let Ok(g) = gauss_value_at_1(&p) else { continue };
                let at = || format!("a={a} b={b} c={c}");
                if super::termination_degree(&p).is_some() {
                    match gauss_2f1(&p, 1.0) {
                        Ok(v) => s.residual(rel_diff(v, g, 1e-6), at),
                        Err(HypError::InvalidC) => {}
                        Err(e) => s.exact(false, || format!("{}: {e}", at())),
                    }
                } else {
                    let d = 1e-10;
                    let v = gauss_2f1(&p, 1.0 - d).and_then(|f| Ok(f + d * derivative_2f1(&p, 1.0 - d)?));
                    match v {
                        Ok(v) => s.residual(rel_diff(v, g, 1e-6), at),
                        Err(e) => s.exact(false, || format!("{}: {e}", at())),
                    }
                }
            }
        }
    }
    s
}

pub fn check_euler_integral() -> CheckSummary {
    let mut s = CheckSummary::new("Euler integral vs series", EULER_INTEGRAL_TOL);
    for a in [0.5, 1.0, 1.5, 2.0, 3.0] {
        for dc in [0.5, 1.0, 2.0, 3.5] {
            let c = a + dc;
            for b in [-2.0, -1.0, 0.5, 1.0, 2.0, 3.0] {
                for z in GRID_Z.iter().copied().chain([0.999]) {
                    let p = HypParams::new(a, b, c);
                    let at = || format!("a={a} b={b} c={c} z={z}");
                    match (euler_integral_2f1(&p, z, 32), gauss_2f1(&p, z)) {
                        (Ok(e), Ok(f)) => s.residual(rel_diff(e, f, 1e-300), at),
                        (e, f) => s.exact(false, || format!("{}: {e:?} {f:?}", at())),
                    }
                }
            }
        }
    }
    s
}

/// All five identity checks.
pub fn identity_suite() -> Vec<CheckSummary> {
    vec![check_contiguous(), check_euler_transform(), check_derivative_fd(), check_gauss_theorem(), check_euler_integral()]
}
