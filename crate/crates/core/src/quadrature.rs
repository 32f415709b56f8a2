//! Gauss-Legendre rules on finite intervals, plus a geometrically graded
//! composite rule for integrands with an endpoint singularity at 0.

use gauss_quad::GaussLegendre;

#[derive(Debug, Clone)]
pub struct GlRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GlRule {
    /// Rule with `n` nodes; `n` must be at least 2.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "Gauss-Legendre rule needs at least 2 nodes");
        let gl = GaussLegendre::new(n).expect("degree checked above");
        let (nodes, weights) = gl.iter().map(|(x, w)| (*x, *w)).unzip();
        GlRule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes.iter().zip(&self.weights).map(move |(x, w)| (mid + half * x, half * w))
    }

    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }

    /// Integral over [0, len] on panels [len/2^(k+1), len/2^k], k < levels,
    /// plus a last panel touching 0.
    pub fn integrate_graded(&self, len: f64, levels: u32, mut f: impl FnMut(f64) -> f64) -> f64 {
        let mut total = 0.0;
        let mut hi = len;
        for _ in 0..levels {
            let lo = 0.5 * hi;
            total += self.integrate(lo, hi, &mut f);
            hi = lo;
        }
        total + self.integrate(0.0, hi, &mut f)
    }
}
