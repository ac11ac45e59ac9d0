//! Vector fields `f ∂_x` on the circle, metric variations, the Lie-algebra
//! 2-cochain induced by `T₂`, and its exactness.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::torsion::{clausen_series, QuadratureSpec, TorsionTwoForm, GAMMA_5_4};

fn prune(map: &mut BTreeMap<i64, C64>) {
    map.retain(|_, v| *v != C64::new(0.0, 0.0));
}

/// `f ∂_x` with `f = Σ c_k e^{2πikx}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VectorField {
    coeffs: BTreeMap<i64, C64>,
    real: bool,
}

impl VectorField {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `X_k = e^{2πikx} ∂_x`.
    pub fn basis(k: i64) -> Self {
        Self::from_coeffs([(k, C64::new(1.0, 0.0))])
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i64, C64)>>(coeffs: I) -> Self {
        let mut map = BTreeMap::new();
        for (k, c) in coeffs {
            *map.entry(k).or_insert(C64::new(0.0, 0.0)) += c;
        }
        prune(&mut map);
        Self {
            coeffs: map,
            real: false,
        }
    }

    /// A real field; fails unless `c_{−k} = conj(c_k)` to round-off.
    pub fn real_from_coeffs<I: IntoIterator<Item = (i64, C64)>>(coeffs: I) -> Result<Self> {
        let mut v = Self::from_coeffs(coeffs);
        let scale = v.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max);
        for (k, c) in &v.coeffs {
            let other = v.coeff(-k);
            if (c.conj() - other).norm() > 1e-14 * scale.max(1.0) {
                return Err(Error::InvalidArgument(format!(
                    "coefficient {k} breaks the reality condition"
                )));
            }
        }
        v.real = true;
        Ok(v)
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn coeff(&self, k: i64) -> C64 {
        self.coeffs.get(&k).copied().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, *c))
    }

    /// Largest `|k|` in the support.
    pub fn support(&self) -> u32 {
        self.coeffs
            .keys()
            .map(|k| k.unsigned_abs() as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut v = Self::from_coeffs(self.coeffs().map(|(k, c)| (k, c * s)));
        v.real = self.real && s.im == 0.0;
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut v = Self::from_coeffs(self.coeffs().chain(other.coeffs()));
        v.real = self.real && other.real;
        v
    }
}

/// `h(x) dx²` with `h = Σ coeff_k e^{2πikx}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MetricVariation {
    coeffs: BTreeMap<i64, C64>,
}

impl MetricVariation {
    pub fn coeff(&self, k: i64) -> C64 {
        self.coeffs.get(&k).copied().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, *c))
    }

    pub fn support(&self) -> u32 {
        self.coeffs
            .keys()
            .map(|k| k.unsigned_abs() as u32)
            .max()
            .unwrap_or(0)
    }
}

/// `[f∂_x, g∂_x] = (f g′ − g f′)∂_x`; `[X_k, X_h] = 2πi(h − k) X_{k+h}`.
pub fn bracket(x: &VectorField, y: &VectorField) -> VectorField {
    let mut out = BTreeMap::new();
    for (k, ck) in x.coeffs() {
        for (h, ch) in y.coeffs() {
            let v = ck * ch * C64::new(0.0, 2.0 * PI * (h - k) as f64);
            *out.entry(k + h).or_insert(C64::new(0.0, 0.0)) += v;
        }
    }
    prune(&mut out);
    VectorField {
        coeffs: out,
        real: x.real && y.real,
    }
}

/// `h_X = −2f′ dx²`, i.e. `coeff_k = −4πik·c_k`.
pub fn metric_variation(x: &VectorField) -> MetricVariation {
    let mut coeffs: BTreeMap<i64, C64> = x
        .coeffs()
        .map(|(k, c)| (k, c * C64::new(0.0, -4.0 * PI * k as f64)))
        .collect();
    prune(&mut coeffs);
    MetricVariation { coeffs }
}

/// `T₂(h_X, h_Y)`.
pub fn lie_cocycle(t: &TorsionTwoForm, x: &VectorField, y: &VectorField) -> Result<C64> {
    let hx = metric_variation(x);
    let hy = metric_variation(y);
    let support = hx.support().max(hy.support());
    t.evaluate(|k| hx.coeff(k), |k| hy.coeff(k), support)
}

/// `u(f∂_x) = ∫_{S¹} f dx = c_0`.
pub fn u_cochain(x: &VectorField) -> C64 {
    x.coeff(0)
}

/// `du(X, Y) = u([X, Y])`.
pub fn coboundary_du(x: &VectorField, y: &VectorField) -> C64 {
    u_cochain(&bracket(x, y))
}

/// Outcome of fitting the Lie cocycle against `du`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExactnessReport {
    pub a: f64,
    pub k_max: u32,
    /// Least-squares `λ` in `lie_cocycle ≈ λ·du` over all basis pairs.
    pub lambda: C64Serde,
    /// `max |lie_cocycle − λ·du|` over the same pairs.
    pub residual: f64,
    /// `λ / (Γ(5/4)·Cl(a))`, absent where `Cl(a) = 0`.
    pub ratio: Option<f64>,
}

/// Serializable complex number.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct C64Serde {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for C64Serde {
    fn from(z: C64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<C64Serde> for C64 {
    fn from(z: C64Serde) -> Self {
        C64::new(z.re, z.im)
    }
}

/// Default residual bound for [`verify_exactness`].
pub const EXACTNESS_TOLERANCE: f64 = 1e-9;

/// Fits `λ(a)` with `𝒟c_{T₂}(X_k, X_h) = λ·du(X_k, X_h)` for `|k|, |h| ≤ k_max`.
pub fn verify_exactness(a: f64, k_max: u32) -> Result<ExactnessReport> {
    let t = TorsionTwoForm::numeric(a, k_max.max(1), &QuadratureSpec::default())?;
    verify_exactness_with(&t, k_max, EXACTNESS_TOLERANCE)
}

/// [`verify_exactness`] for a given form and residual tolerance.
pub fn verify_exactness_with(
    t: &TorsionTwoForm,
    k_max: u32,
    tolerance: f64,
) -> Result<ExactnessReport> {
    let km = k_max as i64;
    let mut pairs = Vec::new();
    for k in -km..=km {
        for h in -km..=km {
            let (x, y) = (VectorField::basis(k), VectorField::basis(h));
            pairs.push((lie_cocycle(t, &x, &y)?, coboundary_du(&x, &y)));
        }
    }
    let mut num = C64::new(0.0, 0.0);
    let mut den = 0.0;
    for (c, d) in &pairs {
        num += d.conj() * c;
        den += d.norm_sqr();
    }
    let lambda = if den > 0.0 {
        num / den
    } else {
        C64::new(0.0, 0.0)
    };
    let residual = pairs
        .iter()
        .map(|(c, d)| (c - lambda * d).norm())
        .fold(0.0, f64::max);
    let a = t.a.value();
    let cl = clausen_series(a)?;
    let ratio = (cl != 0.0).then(|| lambda.re / (GAMMA_5_4 * cl));
    if !(residual <= tolerance) {
        return Err(Error::ExactnessResidual {
            residual,
            tolerance,
        });
    }
    Ok(ExactnessReport {
        a,
        k_max,
        lambda: lambda.into(),
        residual,
        ratio,
    })
}

/// `λ(a) = 24·Cl(a)/π` for the conventions in force.
pub fn lambda_analytic(a: f64) -> Result<f64> {
    Ok(24.0 * clausen_series(a)? / PI)
}

/// Proportionality constant `−2^{3/2}π^{3/2}Γ(5/4)·Cl(a)` as published.
pub fn lambda_published(a: f64) -> Result<f64> {
    Ok(-(2f64.powf(1.5)) * PI.powf(1.5) * GAMMA_5_4 * clausen_series(a)?)
}
