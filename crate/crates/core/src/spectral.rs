//! Fourier-mode model of the twisted function space
//! `H = {f : f(x+1) = e^{2πia} f(x)}` on the circle.
//!
//! The basis is `f_k = e^{2πi(k+a)x}` for `|k| ≤ K`, stored at index `k + K`.
//! `∂_x` is diagonal with eigenvalue `2πi(k+a)`, and multiplication by
//! `h_α = e^{2πiαx}` shifts `k ↦ k+α`, dropping modes that leave the window.

use std::f64::consts::PI;

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::grassmann::{
    graded_exp, graded_mul, supertrace_n, ExpControl, GradedDims, GradedOperator, GrassmannPoly2,
    Monomial,
};
use crate::quadrature::GradedRule;
use crate::summation::{sum_ascending_abs, CompensatedComplexSum, CompensatedSum};

const FOUR_PI2: f64 = 4.0 * PI * PI;

/// Holonomy exponent `a`, strictly inside `(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct HolonomyParameter(f64);

impl HolonomyParameter {
    pub fn new(a: f64) -> Result<Self> {
        if a.is_finite() && a > 0.0 && a < 1.0 {
            Ok(Self(a))
        } else {
            Err(Error::InvalidHolonomy(a))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `1 − a`.
    pub fn reflected(self) -> Self {
        Self(1.0 - self.0)
    }
}

/// Truncated mode basis `{f_k : |k| ≤ K}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeSpace {
    a: HolonomyParameter,
    k_max: u32,
}

impl ModeSpace {
    pub fn new(a: HolonomyParameter, k_max: u32) -> Self {
        Self { a, k_max }
    }

    pub fn holonomy(&self) -> HolonomyParameter {
        self.a
    }

    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    pub fn dim(&self) -> usize {
        2 * self.k_max as usize + 1
    }

    pub fn index(&self, k: i64) -> Option<usize> {
        let kk = self.k_max as i64;
        (-kk..=kk).contains(&k).then(|| (k + kk) as usize)
    }

    pub fn mode(&self, i: usize) -> i64 {
        i as i64 - self.k_max as i64
    }

    /// `k + a` for the mode at index `i`.
    pub fn momentum(&self, i: usize) -> f64 {
        self.mode(i) as f64 + self.a.value()
    }

    /// Eigenvalue `−4π²(k+a)²` of `∂_x²`.
    pub fn eigenvalue(&self, i: usize) -> f64 {
        let p = self.momentum(i);
        -FOUR_PI2 * p * p
    }

    pub fn graded_dims(&self) -> GradedDims {
        GradedDims::new(self.dim())
    }

    /// Indices in the order `k = 0, −1, 1, −2, 2, …`.
    fn ascending(&self) -> impl Iterator<Item = usize> + '_ {
        let kk = self.k_max as i64;
        std::iter::once(0)
            .chain((1..=kk).flat_map(|k| [-k, k]))
            .map(move |k| (k + kk) as usize)
    }
}

fn i2pi() -> C64 {
    C64::new(0.0, 2.0 * PI)
}

/// `∂_x`.
pub fn deriv(m: &ModeSpace) -> Array2<C64> {
    let n = m.dim();
    Array2::from_shape_fn((n, n), |(i, j)| {
        if i == j {
            i2pi() * m.momentum(i)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Multiplication by `h_α`: `f_k ↦ f_{k+α}`.
pub fn shift(m: &ModeSpace, alpha: i64) -> Array2<C64> {
    let n = m.dim();
    let mut s = Array2::zeros((n, n));
    for j in 0..n {
        if let Some(i) = m.index(m.mode(j) + alpha) {
            s[[i, j]] = C64::new(1.0, 0.0);
        }
    }
    s
}

/// Multiplication by the function `∂_x h_α = 2πiα h_α`.
pub fn shift_derivative(m: &ModeSpace, alpha: i64) -> Array2<C64> {
    shift(m, alpha).mapv(|v| v * i2pi() * alpha as f64)
}

/// Diagonal of `e^{τ∂_x²}`.
pub fn heat_diag(m: &ModeSpace, tau: f64) -> Result<Array1<f64>> {
    if !(tau >= 0.0) || !tau.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "heat time must be a finite nonnegative number, got {tau}"
        )));
    }
    Ok(Array1::from_shape_fn(m.dim(), |i| {
        (tau * m.eigenvalue(i)).exp()
    }))
}

/// `L_α = 2h_α∂_x + (∂_x h_α)`: `f_k ↦ 2πi(2(k+a)+α) f_{k+α}`.
pub fn scalar_r(m: &ModeSpace, alpha: i64) -> Array2<C64> {
    let n = m.dim();
    let mut r = Array2::zeros((n, n));
    for j in 0..n {
        if let Some(i) = m.index(m.mode(j) + alpha) {
            r[[i, j]] = i2pi() * (2.0 * m.momentum(j) + alpha as f64);
        }
    }
    r
}

/// Form-degree matrices on `ℂ² = Ω⁰ ⊕ Ω¹`.
pub mod forms {
    use ndarray::{array, Array2};
    use num_complex::Complex64 as C64;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    /// `ĉ`, odd.
    pub fn c_hat() -> Array2<C64> {
        array![[c(0.0), c(1.0)], [c(1.0), c(0.0)]]
    }

    /// The grading `z = diag(1, −1)`.
    pub fn z() -> Array2<C64> {
        array![[c(1.0), c(0.0)], [c(0.0), c(-1.0)]]
    }

    /// Form degree `N = diag(0, 1)`.
    pub fn n() -> Array2<C64> {
        array![[c(0.0), c(0.0)], [c(0.0), c(1.0)]]
    }

    pub fn identity() -> Array2<C64> {
        Array2::eye(2)
    }
}

/// `F ⊗ B` with layout `form · modes + mode`.
pub fn form_lift(form: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let n = b.nrows();
    let mut out = Array2::zeros((2 * n, 2 * n));
    for f in 0..2 {
        for g in 0..2 {
            let s = form[[f, g]];
            if s == C64::new(0.0, 0.0) {
                continue;
            }
            for ((i, j), v) in b.indexed_iter() {
                out[[f * n + i, g * n + j]] = s * v;
            }
        }
    }
    out
}

/// `D_t = −√t ĉ⊗∂_x − Σ_g E^g ⊗ z⊗h_g`.
///
/// This is `√t D` with the degree-`j` Grassmann part rescaled by `t^{−j/2}`,
/// so `D_t² = t∂_x² + O(E)` and no further rescaling is needed downstream.
pub fn superconnection(m: &ModeSpace, gens: &[i32], t: f64) -> Result<GradedOperator> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "t must be positive, got {t}"
        )));
    }
    let dims = m.graded_dims();
    let mut d = GradedOperator::zeros(dims);
    let lead = form_lift(&forms::c_hat(), &deriv(m)).mapv(|v| -t.sqrt() * v);
    d.add_block(Monomial::Unit, &lead)?;
    for &g in gens {
        if g == 0 {
            return Err(Error::InvalidArgument("generator index 0".into()));
        }
        let blk = form_lift(&forms::z(), &shift(m, g as i64)).mapv(|v| -v);
        d.add_block(Monomial::Single(g), &blk)?;
    }
    Ok(d)
}

/// Supertraces produced by the exponentiation pipeline.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineTrace {
    /// `Tr_s N[(1 + 2D_t²) e^{D_t²}]`.
    pub integrand: GrassmannPoly2,
    /// `Tr_s N[e^{D_t²}]`.
    pub heat: GrassmannPoly2,
    pub t: f64,
}

impl PipelineTrace {
    pub fn deg0(&self) -> C64 {
        self.integrand.deg0()
    }

    /// Coefficient of `E^α E^β` in the integrand.
    pub fn deg2(&self, alpha: i32, beta: i32) -> C64 {
        self.integrand.deg2(alpha, beta)
    }

    /// `Tr_s N e^{t∂_x²} = −θ_K(a,t)`.
    pub fn heat_deg0(&self) -> C64 {
        self.heat.deg0()
    }

    pub fn heat_deg2(&self, alpha: i32, beta: i32) -> C64 {
        self.heat.deg2(alpha, beta)
    }
}

/// `Tr_s N[(1+2D_t²)e^{D_t²}]` with `V` spanned by `h_{±α}`.
pub fn supertrace_pipeline(
    m: &ModeSpace,
    alpha: i32,
    t: f64,
    control: ExpControl,
) -> Result<PipelineTrace> {
    if alpha == 0 {
        return Err(Error::InvalidArgument("alpha must be nonzero".into()));
    }
    supertrace_pipeline_gens(m, &[alpha, -alpha], t, control)
}

/// As [`supertrace_pipeline`] for an arbitrary set of generators.
pub fn supertrace_pipeline_gens(
    m: &ModeSpace,
    gens: &[i32],
    t: f64,
    control: ExpControl,
) -> Result<PipelineTrace> {
    let d = superconnection(m, gens, t)?;
    let d2 = graded_mul(&d, &d)?;
    let e = graded_exp(&d2, control)?;
    let full = e.add(&graded_mul(&d2, &e)?.scale(C64::new(2.0, 0.0)))?;
    Ok(PipelineTrace {
        integrand: supertrace_n(&full),
        heat: supertrace_n(&e),
        t,
    })
}

/// Raised when modes near the edge of the window carry a visible share of a trace.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationWarning {
    /// Summed modulus of contributions from modes within `|α|+|β|` of the edge.
    pub boundary_weight: f64,
    pub total: f64,
    pub tolerance: f64,
}

/// Relative boundary share above which a [`TruncationWarning`] is attached.
pub const TRUNCATION_TOLERANCE: f64 = 1e-12;

/// Second-order Duhamel term for one ordered pair of generators.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DuhamelValue {
    /// Coefficient of `E^α E^β` in `Tr_s N[e^{tD²}]₂`, equal to `−t² · inner_trace`.
    pub coefficient: C64,
    /// `Tr ∫_{Δ²} e^{tσ₀∂²} L_α e^{tσ₁∂²} L_β e^{tσ₂∂²} dσ`.
    pub inner_trace: C64,
    pub warning: Option<TruncationWarning>,
}

fn check_oracle_args(alpha: i64, beta: i64, t: f64, nquad: usize) -> Result<()> {
    if alpha == 0 || beta == 0 {
        return Err(Error::InvalidArgument("generator index 0".into()));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "t must be positive, got {t}"
        )));
    }
    if nquad < 8 {
        return Err(Error::InvalidArgument(format!(
            "nquad must be at least 8, got {nquad}"
        )));
    }
    Ok(())
}

fn finish(
    m: &ModeSpace,
    alpha: i64,
    beta: i64,
    t: f64,
    per_mode: Vec<(usize, C64)>,
) -> DuhamelValue {
    let edge = (alpha.abs() + beta.abs()) as usize;
    let n = m.dim();
    let mut total = CompensatedComplexSum::new();
    let mut boundary = 0.0;
    let mut scale = 0.0;
    for (i, v) in &per_mode {
        total.add(*v);
        scale += v.norm();
        if *i < edge || *i + edge >= n {
            boundary += v.norm();
        }
    }
    let inner = total.value();
    let warning = (boundary > TRUNCATION_TOLERANCE * scale.max(f64::MIN_POSITIVE)).then_some(
        TruncationWarning {
            boundary_weight: boundary,
            total: scale,
            tolerance: TRUNCATION_TOLERANCE,
        },
    );
    DuhamelValue {
        coefficient: -t * t * inner,
        inner_trace: inner,
        warning,
    }
}

/// Duhamel oracle reduced to one dimension.
///
/// By cyclicity the trace depends on the simplex point only through `σ₁`,
/// and the simplex measure of `{σ₁ ∈ dσ}` is `(1 − σ₁) dσ₁`. The remaining
/// integral uses a graded composite Gauss–Legendre rule with `nquad` nodes
/// per panel.
pub fn duhamel_deg2_oracle(
    m: &ModeSpace,
    alpha: i64,
    beta: i64,
    t: f64,
    nquad: usize,
) -> Result<DuhamelValue> {
    check_oracle_args(alpha, beta, t, nquad)?;
    let rule = GradedRule::with_nodes(nquad);
    let la = scalar_r(m, alpha);
    let lb = scalar_r(m, beta);
    let n = m.dim();
    let mut per_mode = Vec::new();
    for i in 0..n {
        // Tr(e^{(1−σ)tΔ} L_α e^{σtΔ} L_β) restricted to the diagonal entry i
        for j in 0..n {
            let amp = la[[i, j]] * lb[[j, i]];
            if amp == C64::new(0.0, 0.0) {
                continue;
            }
            let (li, lj) = (t * m.eigenvalue(i), t * m.eigenvalue(j));
            let w = rule.integrate(|s| (1.0 - s) * ((1.0 - s) * li + s * lj).exp());
            per_mode.push((i, amp * w));
        }
    }
    Ok(finish(m, alpha, beta, t, per_mode))
}

/// Duhamel oracle on the full two-dimensional simplex, without using
/// cyclicity: `(σ₁, σ₂) = (u, (1−u)v)` with Jacobian `1 − u`, and the trace
/// is taken of the three-factor product.
pub fn duhamel_deg2_oracle_simplex(
    m: &ModeSpace,
    alpha: i64,
    beta: i64,
    t: f64,
    nquad: usize,
) -> Result<DuhamelValue> {
    check_oracle_args(alpha, beta, t, nquad)?;
    let rule = GradedRule::with_nodes(nquad);
    let la = scalar_r(m, alpha);
    let lb = scalar_r(m, beta);
    let n = m.dim();
    let pts = rule.points();
    let mut per_mode = Vec::new();
    for i in 0..n {
        // trace entry (i, i) of L_α-side product: Σ_{j,l} e_i L_α[i,j] e_j L_β[j,l] e_l δ_{l,i}
        for j in 0..n {
            let a_ij = la[[i, j]];
            if a_ij == C64::new(0.0, 0.0) {
                continue;
            }
            for l in 0..n {
                let b_jl = lb[[j, l]];
                if b_jl == C64::new(0.0, 0.0) || l != i {
                    continue;
                }
                let (li, lj, ll) = (
                    t * m.eigenvalue(i),
                    t * m.eigenvalue(j),
                    t * m.eigenvalue(l),
                );
                let mut acc = CompensatedSum::new();
                for &(u, wu) in pts {
                    for &(v, wv) in pts {
                        let s1 = u;
                        let s2 = (1.0 - u) * v;
                        let s0 = 1.0 - s1 - s2;
                        acc.add(wu * wv * (1.0 - u) * (s0 * li + s1 * lj + s2 * ll).exp());
                    }
                }
                per_mode.push((i, a_ij * b_jl * acc.value()));
            }
        }
    }
    Ok(finish(m, alpha, beta, t, per_mode))
}

/// Coefficient of `E^α E^{−α}` in `Tr_s N[e^{tD²}]₂`, summing both orderings
/// `E^α E^{−α}` and `E^{−α} E^α = −E^α E^{−α}`.
pub fn duhamel_pair_coefficient(m: &ModeSpace, alpha: i64, t: f64, nquad: usize) -> Result<C64> {
    let fwd = duhamel_deg2_oracle(m, alpha, -alpha, t, nquad)?;
    let bwd = duhamel_deg2_oracle(m, -alpha, alpha, t, nquad)?;
    Ok(fwd.coefficient - bwd.coefficient)
}

/// `(e^b − 1 − b)/b²` for `|b| ≤ 1`.
fn g2_series(b: f64) -> f64 {
    let mut term = 0.5;
    let mut sum = term;
    for n in 3..40 {
        term *= b / n as f64;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Simplex-integrated trace `Tr ∫_{Δ²} e L_α e L_{−α} e`, analytically in `σ`.
///
/// With `w = 2(k+a) − α`, `c = 4π²αt` and `b = cw`, mode `k` contributes
/// `−4π² w² e^{−4π²(k+a)²t} (e^b − 1 − b)/b²`; for `|b| > 1` this is
/// rewritten as `−(4π²/c²)(e^{−4π²(k+a−α)²t} − e^{−4π²(k+a)²t}(1 + b))`.
pub fn trace_closed_form(m: &ModeSpace, alpha: i64, t: f64) -> Result<C64> {
    if alpha == 0 {
        return Err(Error::InvalidArgument("alpha must be nonzero".into()));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "t must be positive, got {t}"
        )));
    }
    let c = FOUR_PI2 * alpha as f64 * t;
    let mut acc = CompensatedSum::new();
    for i in m.ascending() {
        if m.index(m.mode(i) - alpha).is_none() {
            continue;
        }
        let p = m.momentum(i);
        let w = 2.0 * p - alpha as f64;
        let b = c * w;
        let ex = (-FOUR_PI2 * p * p * t).exp();
        let term = if b.abs() <= 1.0 {
            -FOUR_PI2 * w * w * ex * g2_series(b)
        } else {
            let q = p - alpha as f64;
            let ey = (-FOUR_PI2 * q * q * t).exp();
            -(FOUR_PI2 / (c * c)) * (ey - ex * (1.0 + b))
        };
        acc.add(term);
    }
    Ok(C64::new(acc.value(), 0.0))
}

/// Truncated `S_K(a,t) = Σ_{|k|≤K} (k+a) e^{−4π²(k+a)²t}` in ascending `|k|` order.
pub fn theta_sum_truncated(m: &ModeSpace, t: f64) -> f64 {
    let a = m.holonomy().value();
    sum_ascending_abs(m.k_max() as usize, |k| {
        let p = k as f64 + a;
        p * (-FOUR_PI2 * p * p * t).exp()
    })
}

/// Resummed pair coefficient `−(4t/α) S_K(a,t)` of `E^α E^{−α}`.
pub fn resummed_pair_coefficient(m: &ModeSpace, alpha: i64, t: f64) -> C64 {
    C64::new(-4.0 * t / alpha as f64 * theta_sum_truncated(m, t), 0.0)
}
