//! Theta sums and their Poisson duals, the `t`-integrands of `T₀` and `T₂`,
//! the half-line quadrature, the Clausen function and the closed forms.
//!
//! Conventions fixed here and used by every other module:
//!
//! * `t_α` is the coefficient of `E^α E^{−α}` (`α ≥ 1`) in `T₂`, where the
//!   `E^{−α}E^α` ordering has been folded in with its sign.
//! * `T_i = −(1/2πi)^{i/2} ∫₀^∞ Tr_s N[(1+2D_t²)e^{D_t²}]_i dt/t`.
//!
//! With these, `T₀(a) = −log(4 sin²πa)` and `t_α = −6i·Cl(a)/(π²α)` where
//! `Cl(a) = Σ_{m≥1} sin(2πam)/m²`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{exp_trapezoid, trapezoid, HalfLineIntegral};
use crate::spectral::HolonomyParameter;
use crate::summation::{sum_ascending_abs, sum_positive, CompensatedSum};

/// `Γ(5/4)`.
pub const GAMMA_5_4: f64 = 0.906_402_477_055_477;
/// Catalan's constant, `Cl(1/4)`.
pub const CATALAN: f64 = 0.915_965_594_177_219;

const FOUR_PI2: f64 = 4.0 * PI * PI;

/// `(sin 2πx, cos 2πx)` with exact values at multiples of `1/4`.
pub fn sin_cos_2pi(x: f64) -> (f64, f64) {
    let r = x - x.floor();
    let q = 4.0 * r;
    let quadrant = q.floor();
    let f = q - quadrant;
    if f == 0.0 {
        return match quadrant as i32 {
            0 => (0.0, 1.0),
            1 => (1.0, 0.0),
            2 => (0.0, -1.0),
            _ => (-1.0, 0.0),
        };
    }
    let (s, c) = (0.5 * PI * f).sin_cos();
    match quadrant as i32 {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

/// Prefactors `−(1/2πi)^{i/2}` of the torsion integrals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Constants {
    pub gamma54: f64,
    pub prefactor_deg0: C64,
    pub prefactor_deg2: C64,
}

impl Constants {
    pub fn new() -> Self {
        Self {
            gamma54: GAMMA_5_4,
            prefactor_deg0: C64::new(-1.0, 0.0),
            // −1/(2πi) = i/(2π)
            prefactor_deg2: C64::new(0.0, 1.0 / (2.0 * PI)),
        }
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::new()
    }
}

/// `S(a,t) = Σ_{|k|≤K} (k+a) e^{−4π²(k+a)²t}`.
pub fn theta_sum(a: f64, t: f64, k_max: usize) -> f64 {
    sum_ascending_abs(k_max, |k| {
        let p = k as f64 + a;
        p * (-FOUR_PI2 * p * p * t).exp()
    })
}

/// Poisson dual of `S`: `(4π^{3/2}t^{3/2})^{−1} Σ_{m=1}^M m e^{−m²/4t} sin 2πam`.
pub fn theta_sum_dual(a: f64, t: f64, m_max: usize) -> f64 {
    let s = sum_positive(m_max, |m| {
        let mf = m as f64;
        mf * (-mf * mf / (4.0 * t)).exp() * sin_cos_2pi(a * mf).0
    });
    s / (4.0 * PI.powf(1.5) * t.powf(1.5))
}

/// `θ(a,t) = Σ_{|k|≤K} e^{−4π²(k+a)²t}`.
pub fn heat_trace_kspace(a: f64, t: f64, k_max: usize) -> f64 {
    sum_ascending_abs(k_max, |k| {
        let p = k as f64 + a;
        (-FOUR_PI2 * p * p * t).exp()
    })
}

/// `θ(a,t) = (4πt)^{−1/2}(1 + 2Σ_{m=1}^M e^{−m²/4t} cos 2πam)`.
pub fn heat_trace_dual(a: f64, t: f64, m_max: usize) -> f64 {
    let s = sum_positive(m_max, |m| {
        let mf = m as f64;
        (-mf * mf / (4.0 * t)).exp() * sin_cos_2pi(a * mf).1
    });
    (1.0 + 2.0 * s) / (4.0 * PI * t).sqrt()
}

/// `θ(a,t)`, direct for `t ≥ t_star` and dual below.
pub fn heat_trace_plain(a: f64, t: f64, terms: usize, t_star: f64) -> f64 {
    if t >= t_star {
        heat_trace_kspace(a, t, terms)
    } else {
        heat_trace_dual(a, t, terms)
    }
}

/// Weight of the `m = 0` dual term `(4πt)^{−1/2}` under `(1 + 2t d/dt)`.
///
/// `(1 + 2t d/dt) t^p = (1 + 2p) t^p`, and `p = −1/2`.
pub fn dual_zero_mode_weight() -> f64 {
    let p = -0.5;
    1.0 + 2.0 * p
}

/// `(1 + 2t d/dt)θ(a,t) / t`, k-space form.
pub fn t0_integrand_kspace(a: f64, t: f64, k_max: usize) -> f64 {
    sum_ascending_abs(k_max, |k| {
        let p = k as f64 + a;
        let q = FOUR_PI2 * p * p * t;
        (1.0 - 2.0 * q) * (-q).exp()
    }) / t
}

/// `(1 + 2t d/dt)θ(a,t) / t`, dual form; the `m = 0` term carries
/// [`dual_zero_mode_weight`] and is dropped.
pub fn t0_integrand_dual(a: f64, t: f64, m_max: usize) -> f64 {
    let s = sum_positive(m_max, |m| {
        let mf = m as f64;
        mf * mf * (-mf * mf / (4.0 * t)).exp() * sin_cos_2pi(a * mf).1
    });
    s / ((4.0 * PI).sqrt() * t.powf(2.5))
}

/// Truncations, crossover and node count for the `t`-integrals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub t_star: f64,
    /// Trapezoid nodes in `u = log t`.
    pub nodes: usize,
    pub rel_tol: f64,
    /// `K`, the k-space truncation radius.
    pub modes: usize,
    /// `M`, the number of dual terms.
    pub dual_terms: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            t_star: 1.0 / (2.0 * PI),
            nodes: 257,
            rel_tol: 1e-10,
            modes: 64,
            dual_terms: 64,
        }
    }
}

impl QuadratureSpec {
    fn validate(&self) -> Result<()> {
        if !(self.t_star > 0.0) || !self.t_star.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "t_star must be positive, got {}",
                self.t_star
            )));
        }
        if self.nodes < 9 || self.modes == 0 || self.dual_terms == 0 {
            return Err(Error::InvalidArgument(
                "quadrature needs at least 9 nodes and nonzero truncations".into(),
            ));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument("rel_tol must be positive".into()));
        }
        Ok(())
    }

    /// Integration window: the small-`t` end is set by `e^{−1/(4t)}` in the
    /// first dual term, the large-`t` end by `e^{−4π² min(a,1−a)² t}`.
    pub fn window(&self, a: f64) -> (f64, f64) {
        let gap = a.min(1.0 - a);
        let t_max = (60.0 / (FOUR_PI2 * gap * gap)).max(60.0);
        (1.0 / 240.0, t_max)
    }
}

/// Certified value of a half-line integral.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub tolerance: f64,
    pub abs_integral: f64,
    pub nodes: usize,
    pub t_min: f64,
    pub t_max: f64,
}

/// Absolute floor for certification when the integrand vanishes identically.
const CERT_FLOOR: f64 = 1e-15;

fn certify(r: HalfLineIntegral, rel_tol: f64) -> Result<QuadratureResult> {
    let tolerance = rel_tol * r.abs_integral + CERT_FLOOR;
    let err = r.error_estimate();
    if !(err <= tolerance) || !r.value.is_finite() {
        return Err(Error::QuadratureTolerance {
            value: r.value,
            estimate: err,
            tolerance,
        });
    }
    Ok(QuadratureResult {
        value: r.value,
        error_estimate: err,
        tolerance,
        abs_integral: r.abs_integral,
        nodes: r.nodes,
        t_min: r.t_min,
        t_max: r.t_max,
    })
}

/// `T₀ = ∫₀^∞ (1 + 2t d/dt)θ(a,t) dt/t`.
pub fn t0_numeric(a: f64, spec: &QuadratureSpec) -> Result<QuadratureResult> {
    HolonomyParameter::new(a)?;
    spec.validate()?;
    let (lo, hi) = spec.window(a);
    let r = exp_trapezoid(lo, hi, spec.nodes, |t| {
        if t >= spec.t_star {
            t0_integrand_kspace(a, t, spec.modes)
        } else {
            t0_integrand_dual(a, t, spec.dual_terms)
        }
    });
    certify(r, spec.rel_tol)
}

/// `−log(4 sin²πa)`.
pub fn t0_exact(a: f64) -> f64 {
    let s = (PI * a).sin();
    -(4.0 * s * s).ln()
}

/// Largest number of terms [`clausen`] will sum.
pub const CLAUSEN_MAX_TERMS: usize = 100_000_000;

/// `Cl(a) = Σ_{m≥1} sin(2πam)/m²` to absolute tolerance `tol`.
///
/// Partial sums of `sin(mθ)` are bounded by `1/|sin(θ/2)|`, so by
/// summation by parts the tail after `M` terms is at most
/// `1/((M+1)²|sin(θ/2)|)`; the cruder bound `1/M` is used when smaller.
pub fn clausen(a: f64, tol: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::InvalidHolonomy(a));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tol must be positive, got {tol}"
        )));
    }
    let half = (PI * a).sin().abs();
    if a == 0.0 || a == 1.0 || a == 0.5 {
        return Ok(0.0);
    }
    let by_abel = (1.0 / (tol * half)).sqrt().ceil();
    let by_size = (1.0 / tol).ceil();
    let needed = by_abel.min(by_size);
    if needed > CLAUSEN_MAX_TERMS as f64 {
        return Err(Error::ClausenTolerance {
            tol,
            needed,
            max_terms: CLAUSEN_MAX_TERMS,
        });
    }
    let m_max = needed as usize;
    Ok(sum_positive(m_max, |m| {
        let mf = m as f64;
        sin_cos_2pi(a * mf).0 / (mf * mf)
    }))
}

fn zeta_even() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut z = vec![0.0; 41];
        z[1] = PI * PI / 6.0;
        z[2] = PI.powi(4) / 90.0;
        for (k, slot) in z.iter_mut().enumerate().skip(3) {
            let s: CompensatedSum = (1..=1000)
                .rev()
                .map(|n| (n as f64).powi(-2 * k as i32))
                .collect();
            *slot = s.value();
        }
        z
    })
}

/// `Cl(a)` through the expansion
/// `Cl₂(θ) = θ − θ log θ + Σ_{k≥1} ζ(2k) θ^{2k+1} / (k(2k+1)(2π)^{2k})`
/// on `θ = 2πa ∈ (0, π]`, and `Cl₂(2π − θ) = −Cl₂(θ)` above.
pub fn clausen_series(a: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::InvalidHolonomy(a));
    }
    if a == 0.0 || a == 0.5 || a == 1.0 {
        return Ok(0.0);
    }
    let (sign, b) = if a > 0.5 { (-1.0, 1.0 - a) } else { (1.0, a) };
    let th = 2.0 * PI * b;
    let x2 = b * b; // (θ/2π)²
    let zeta = zeta_even();
    let mut acc = CompensatedSum::new();
    acc.add(th);
    acc.add(-th * th.ln());
    let mut pow = 1.0;
    for (k, z) in zeta.iter().enumerate().skip(1) {
        pow *= x2;
        let kf = k as f64;
        let term = th * z * pow / (kf * (2.0 * kf + 1.0));
        acc.add(term);
        if term.abs() < 1e-18 {
            break;
        }
    }
    Ok(sign * acc.value())
}

/// `T₂` integrand per `dt`, coefficient of `E^α E^{−α}`, k-space form:
/// `−(4/(αt)) Σ (k+a)(3 − 8π²(k+a)²t) e^{−4π²(k+a)²t}`.
pub fn t2_integrand_kspace(a: f64, alpha: i64, t: f64, k_max: usize) -> f64 {
    let s = sum_ascending_abs(k_max, |k| {
        let p = k as f64 + a;
        let q = FOUR_PI2 * p * p * t;
        p * (3.0 - 2.0 * q) * (-q).exp()
    });
    -4.0 * s / (alpha as f64 * t)
}

/// Dual form: `−(2απ^{3/2}t^{7/2})^{−1} Σ_{m≥1} m³ e^{−m²/4t} sin 2πam`.
pub fn t2_integrand_dual(a: f64, alpha: i64, t: f64, m_max: usize) -> f64 {
    let s = sum_positive(m_max, |m| {
        let mf = m as f64;
        mf * mf * mf * (-mf * mf / (4.0 * t)).exp() * sin_cos_2pi(a * mf).0
    });
    -s / (2.0 * alpha as f64 * PI.powf(1.5) * t.powf(3.5))
}

/// `T₂` integrand with the branch chosen by `spec.t_star`.
pub fn t2_integrand(a: f64, alpha: i64, t: f64, spec: &QuadratureSpec) -> f64 {
    if t >= spec.t_star {
        t2_integrand_kspace(a, alpha, t, spec.modes)
    } else {
        t2_integrand_dual(a, alpha, t, spec.dual_terms)
    }
}

/// Numeric `t_α` with its quadrature certificate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct T2Value {
    pub value: C64,
    pub integral: QuadratureResult,
}

/// `t_α = −(1/2πi) ∫₀^∞ t2_integrand dt`.
pub fn t2_numeric(a: f64, alpha: i64, spec: &QuadratureSpec) -> Result<T2Value> {
    HolonomyParameter::new(a)?;
    spec.validate()?;
    if alpha == 0 {
        return Err(Error::InvalidArgument("alpha must be nonzero".into()));
    }
    let (lo, hi) = spec.window(a);
    let r = exp_trapezoid(lo, hi, spec.nodes, |t| t2_integrand(a, alpha, t, spec));
    let q = certify(r, spec.rel_tol)?;
    Ok(T2Value {
        value: Constants::new().prefactor_deg2 * q.value,
        integral: q,
    })
}

/// The closed form `Γ(5/4)·Cl(a) / (2^{1/2} π^{5/2} i α)` as published.
pub fn t2_closed(a: f64, alpha: i64) -> Result<C64> {
    HolonomyParameter::new(a)?;
    if alpha == 0 {
        return Err(Error::InvalidArgument("alpha must be nonzero".into()));
    }
    let mag = GAMMA_5_4 * clausen_series(a)? / (2f64.sqrt() * PI.powf(2.5) * alpha as f64);
    Ok(C64::new(0.0, -mag))
}

/// `−6i·Cl(a)/(π²α)`, the value the integral evaluates to.
pub fn t2_analytic(a: f64, alpha: i64) -> Result<C64> {
    HolonomyParameter::new(a)?;
    if alpha == 0 {
        return Err(Error::InvalidArgument("alpha must be nonzero".into()));
    }
    Ok(C64::new(
        0.0,
        -6.0 * clausen_series(a)? / (PI * PI * alpha as f64),
    ))
}

/// `t2_analytic / t2_closed = 6·2^{1/2}π^{1/2}/Γ(5/4)`.
pub fn convention_constant() -> f64 {
    6.0 * 2f64.sqrt() * PI.sqrt() / GAMMA_5_4
}

/// `∫₀^∞ z^{3/2} e^{−z²/4} dz / (2^{3/2} Γ(5/4))`.
pub fn gaussian_moment_check() -> f64 {
    let r = exp_trapezoid(1e-8, 40.0, 801, |z| z.powf(1.5) * (-0.25 * z * z).exp());
    r.value / (2f64.powf(1.5) * GAMMA_5_4)
}

/// `∫₀^∞ v^{1/4} e^{−v} dv = Γ(5/4)`, the same moment after `v = z²/4`.
pub fn gamma_54_substituted() -> f64 {
    exp_trapezoid(1e-16, 60.0, 801, |v| v.powf(0.25) * (-v).exp()).value
}

/// Plain trapezoid on `[0, L]` for the Gaussian moment with step `h`.
pub fn gaussian_moment_plain(h: f64) -> f64 {
    trapezoid(0.0, 20.0, h, |z| z.powf(1.5) * (-0.25 * z * z).exp())
}

/// How a [`TorsionTwoForm`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Numeric,
    ClosedForm,
}

/// `T₂` restricted to `V = span{h_α : |α| ≤ R}`: `Σ_{α=1}^R t_α E^α E^{−α}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionTwoForm {
    pub coeffs: BTreeMap<u32, C64>,
    pub a: HolonomyParameter,
    pub provenance: Provenance,
}

impl TorsionTwoForm {
    pub fn numeric(a: f64, r: u32, spec: &QuadratureSpec) -> Result<Self> {
        let h = HolonomyParameter::new(a)?;
        let mut coeffs = BTreeMap::new();
        for alpha in 1..=r {
            coeffs.insert(alpha, t2_numeric(a, alpha as i64, spec)?.value);
        }
        Ok(Self {
            coeffs,
            a: h,
            provenance: Provenance::Numeric,
        })
    }

    /// Built from the evaluated integral `−6i·Cl(a)/(π²α)`.
    pub fn closed_form(a: f64, r: u32) -> Result<Self> {
        let h = HolonomyParameter::new(a)?;
        let mut coeffs = BTreeMap::new();
        for alpha in 1..=r {
            coeffs.insert(alpha, t2_analytic(a, alpha as i64)?);
        }
        Ok(Self {
            coeffs,
            a: h,
            provenance: Provenance::ClosedForm,
        })
    }

    pub fn range(&self) -> u32 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn coeff(&self, alpha: u32) -> Option<C64> {
        self.coeffs.get(&alpha).copied()
    }

    /// `T(h, h′) = Σ_{α≥1} t_α (h[α]h′[−α] − h′[α]h[−α])` for Fourier data
    /// given as lookups; `None` if either argument has support beyond the range.
    pub fn evaluate<F, G>(&self, h: F, hp: G, support: u32) -> Result<C64>
    where
        F: Fn(i64) -> C64,
        G: Fn(i64) -> C64,
    {
        if support > self.range() {
            return Err(Error::ModeOutOfRange {
                mode: support as i64,
                max: self.range(),
            });
        }
        let mut re = CompensatedSum::new();
        let mut im = CompensatedSum::new();
        for (&alpha, &t) in &self.coeffs {
            let a = alpha as i64;
            let v = t * (h(a) * hp(-a) - hp(a) * h(-a));
            re.add(v.re);
            im.add(v.im);
        }
        Ok(C64::new(re.value(), im.value()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_cos_exact_points() {
        assert_eq!(sin_cos_2pi(0.5), (0.0, -1.0));
        assert_eq!(sin_cos_2pi(3.0), (0.0, 1.0));
        assert_eq!(sin_cos_2pi(1.25), (1.0, 0.0));
        assert_eq!(sin_cos_2pi(-0.25), (-1.0, 0.0));
        for x in [0.1, 0.37, 2.71, -1.3] {
            let (s, c) = sin_cos_2pi(x);
            assert!((s - (2.0 * PI * x).sin()).abs() < 1e-14);
            assert!((c - (2.0 * PI * x).cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn gamma_literal_matches_moment() {
        assert!((gaussian_moment_check() - 1.0).abs() < 1e-12);
        assert!((gamma_54_substituted() / GAMMA_5_4 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn clausen_paths_agree() {
        for a in [0.03, 0.1, 0.25, 0.37, 0.5, 0.62, 0.75, 0.97] {
            let d = clausen(a, 1e-11).unwrap();
            let s = clausen_series(a).unwrap();
            assert!((d - s).abs() < 2e-11, "a={a}: {d} vs {s}");
        }
        assert!((clausen_series(0.25).unwrap() - CATALAN).abs() < 1e-15);
        assert!((clausen_series(0.37).unwrap() - 0.543_074_181_448_587_1).abs() < 1e-14);
        assert!((clausen_series(0.1).unwrap() - 0.923_755_168_100_535_3).abs() < 1e-14);
    }

    #[test]
    fn clausen_reports_unreachable_tolerance() {
        assert!(matches!(
            clausen(1e-9, 1e-17),
            Err(Error::ClausenTolerance { .. })
        ));
    }

    #[test]
    fn zero_mode_weight_is_exactly_zero() {
        assert_eq!(dual_zero_mode_weight(), 0.0);
    }

    #[test]
    fn convention_constant_value() {
        assert!((convention_constant() - 16.592_816_136_871_04).abs() < 1e-12);
    }
}
