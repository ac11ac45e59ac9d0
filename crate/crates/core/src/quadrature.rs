//! Quadrature rules: Gauss–Legendre, a geometrically graded composite rule on
//! `[0, 1]`, and the exponentially substituted trapezoid for `(0, ∞)`.

use std::f64::consts::PI;

use crate::summation::CompensatedSum;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi's initial guess for the i-th largest root
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d.is_finite() { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Integrates `f` over `[lo, hi]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, lo: f64, hi: f64, mut f: F) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = CompensatedSum::new();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(mid + half * x));
        }
        half * acc.value()
    }

    /// Nodes and weights mapped to `[lo, hi]`.
    pub fn mapped(&self, lo: f64, hi: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, half * w))
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let dp = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, dp)
}

/// Composite Gauss–Legendre rule on `[0, 1]` with panels refined
/// geometrically towards both endpoints.
///
/// Panel breakpoints are `½·qʲ` and `1 − ½·qʲ` for `j = 0..=levels` with
/// `q = 1/4`, plus the endpoints. Integrands of the form `e^{±cσ}` with
/// large `c` are resolved as long as `1/c` exceeds the smallest panel.
#[derive(Clone, Debug)]
pub struct GradedRule {
    points: Vec<(f64, f64)>,
}

impl GradedRule {
    pub const RATIO: f64 = 0.25;

    pub fn new(nodes_per_panel: usize, levels: usize) -> Self {
        let gl = GaussLegendre::new(nodes_per_panel);
        let mut breaks = vec![0.0];
        for j in (0..=levels).rev() {
            breaks.push(0.5 * Self::RATIO.powi(j as i32));
        }
        for j in 1..=levels {
            breaks.push(1.0 - 0.5 * Self::RATIO.powi(j as i32));
        }
        breaks.push(1.0);
        let mut points = Vec::with_capacity((breaks.len() - 1) * nodes_per_panel);
        for w in breaks.windows(2) {
            points.extend(gl.mapped(w[0], w[1]));
        }
        Self { points }
    }

    /// Default grading resolves rates up to about `10⁸`.
    pub fn with_nodes(nodes_per_panel: usize) -> Self {
        Self::new(nodes_per_panel, 13)
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        let mut acc = CompensatedSum::new();
        for &(x, w) in &self.points {
            acc.add(w * f(x));
        }
        acc.value()
    }
}

/// Result of a certified half-line integral.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfLineIntegral {
    pub value: f64,
    /// Same rule with every other node dropped.
    pub coarse_value: f64,
    /// `∫ |f|`, the scale against which the error is judged.
    pub abs_integral: f64,
    pub nodes: usize,
    pub t_min: f64,
    pub t_max: f64,
}

impl HalfLineIntegral {
    pub fn error_estimate(&self) -> f64 {
        (self.value - self.coarse_value).abs()
    }
}

/// `∫_{t_min}^{t_max} f(t) dt` via `t = e^u` and the trapezoid rule in `u`
/// with `nodes` points (forced odd so the coarse rule is nested).
pub fn exp_trapezoid<F: FnMut(f64) -> f64>(
    t_min: f64,
    t_max: f64,
    nodes: usize,
    mut f: F,
) -> HalfLineIntegral {
    let nodes = if nodes.is_multiple_of(2) {
        nodes + 1
    } else {
        nodes
    }
    .max(5);
    let (u0, u1) = (t_min.ln(), t_max.ln());
    let h = (u1 - u0) / (nodes - 1) as f64;
    let mut fine = CompensatedSum::new();
    let mut coarse = CompensatedSum::new();
    let mut abs = CompensatedSum::new();
    for j in 0..nodes {
        let t = (u0 + j as f64 * h).exp();
        let g = f(t) * t;
        let end = if j == 0 || j == nodes - 1 { 0.5 } else { 1.0 };
        fine.add(end * g);
        abs.add(end * g.abs());
        if j % 2 == 0 {
            coarse.add(end * g);
        }
    }
    HalfLineIntegral {
        value: h * fine.value(),
        coarse_value: 2.0 * h * coarse.value(),
        abs_integral: h * abs.value(),
        nodes,
        t_min,
        t_max,
    }
}

/// Plain composite trapezoid on `[lo, hi]` with step `h`.
pub fn trapezoid<F: FnMut(f64) -> f64>(lo: f64, hi: f64, h: f64, mut f: F) -> f64 {
    let n = ((hi - lo) / h).round() as usize;
    let h = (hi - lo) / n as f64;
    let mut acc = CompensatedSum::new();
    for j in 0..=n {
        let w = if j == 0 || j == n { 0.5 } else { 1.0 };
        acc.add(w * f(lo + j as f64 * h));
    }
    h * acc.value()
}
