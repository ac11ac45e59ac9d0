//! `SL(2,ℝ)` acting on the upper half-plane and on the circle, the
//! geodesic-triangle area cocycle, the polar angle, and the coefficient of
//! `T₂` against the area class.
//!
//! The half-plane carries `(dx² + dy²)/y²` with base point `o = i` and the
//! orientation of `dx ∧ dy`. The boundary `ℝ ∪ {∞}` is identified with
//! `S¹ = ℝ/ℤ` by `r = tan(πx)`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::torsion::{clausen_series, TorsionTwoForm, GAMMA_5_4};
use crate::witt::{lie_cocycle, VectorField};

/// Element of `SL(2,ℝ)`, `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElement {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl GroupElement {
    pub const DET_TOLERANCE: f64 = 1e-12;

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !((det - 1.0).abs() <= Self::DET_TOLERANCE) {
            return Err(Error::InvalidArgument(format!(
                "determinant {det} is not 1"
            )));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self {
            a: c,
            b: -s,
            c: s,
            d: c,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `exp(E)` for traceless `E = [[p, q], [r, −p]]`, using `E² = (p² + qr)I`.
    pub fn exp_traceless(e: &TracelessMatrix) -> Self {
        let (p, q, r) = (e.p, e.q, e.r);
        let delta = p * p + q * r;
        let (c0, c1) = if delta > 0.0 {
            let s = delta.sqrt();
            (s.cosh(), s.sinh() / s)
        } else if delta < 0.0 {
            let s = (-delta).sqrt();
            (s.cos(), s.sin() / s)
        } else {
            (1.0, 1.0)
        };
        Self {
            a: c0 + c1 * p,
            b: c1 * q,
            c: c1 * r,
            d: c0 - c1 * p,
        }
    }
}

/// `[[p, q], [r, −p]] ∈ sl(2,ℝ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TracelessMatrix {
    pub p: f64,
    pub q: f64,
    pub r: f64,
}

impl TracelessMatrix {
    /// `A = diag(1, −1)`.
    pub const A: Self = Self {
        p: 1.0,
        q: 0.0,
        r: 0.0,
    };
    /// `N = [[0, 1], [0, 0]]`.
    pub const N: Self = Self {
        p: 0.0,
        q: 1.0,
        r: 0.0,
    };
    /// Rotation generator `[[0, −1], [1, 0]]`.
    pub const K: Self = Self {
        p: 0.0,
        q: -1.0,
        r: 1.0,
    };

    /// From a full 2×2 matrix; fails unless the trace vanishes.
    pub fn from_matrix(m: [[f64; 2]; 2]) -> Result<Self> {
        let tr = m[0][0] + m[1][1];
        if tr.abs() > 1e-12 * (m[0][0].abs() + m[1][1].abs()).max(1.0) {
            return Err(Error::InvalidArgument(format!("trace {tr} is not zero")));
        }
        Ok(Self {
            p: m[0][0],
            q: m[0][1],
            r: m[1][0],
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            p: s * self.p,
            q: s * self.q,
            r: s * self.r,
        }
    }
}

/// Point of the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
}

impl HPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "({x}, {y}) is not in the upper half-plane"
            )));
        }
        Ok(Self { x, y })
    }

    /// The base point `o = i`.
    pub fn origin() -> Self {
        Self { x: 0.0, y: 1.0 }
    }

    fn z(&self) -> C64 {
        C64::new(self.x, self.y)
    }

    /// Position in the Klein disc model, where geodesics are straight chords.
    pub fn klein(&self) -> (f64, f64) {
        let z = self.z();
        let w = (z - C64::i()) / (z + C64::i());
        let s = 2.0 / (1.0 + w.norm_sqr());
        (s * w.re, s * w.im)
    }
}

/// `z ↦ (az + b)/(cz + d)`.
pub fn mobius(g: &GroupElement, z: &HPoint) -> HPoint {
    let w = (z.z() * g.a + g.b) / (z.z() * g.c + g.d);
    HPoint { x: w.re, y: w.im }
}

/// Angle of the rotation factor in `g = R(θ)·P` with `P` positive definite.
///
/// `R(θ)` is proportional to `g + cof(g)`, whose rotation part is
/// `(a + d, c − b)`, so `θ = atan2(c − b, a + d)`.
pub fn iwasawa_angle(g: &GroupElement) -> f64 {
    (g.c - g.b).atan2(g.a + g.d)
}

/// `cosh` of the hyperbolic distance.
pub fn cosh_distance(z: &HPoint, w: &HPoint) -> f64 {
    let dx = z.x - w.x;
    let dy = z.y - w.y;
    1.0 + (dx * dx + dy * dy) / (2.0 * z.y * w.y)
}

/// Interior angle at a vertex opposite the side with length `c`.
fn angle_from_sides(ch_a: f64, ch_b: f64, ch_c: f64) -> f64 {
    // hyperbolic law of cosines: cosh c = cosh a cosh b − sinh a sinh b cos γ
    let sh_a = (ch_a * ch_a - 1.0).max(0.0).sqrt();
    let sh_b = (ch_b * ch_b - 1.0).max(0.0).sqrt();
    if sh_a == 0.0 || sh_b == 0.0 {
        return 0.0;
    }
    ((ch_a * ch_b - ch_c) / (sh_a * sh_b))
        .clamp(-1.0, 1.0)
        .acos()
}

/// Position in the Poincaré disc, `w = (z − i)/(z + i)`.
fn disc(z: &HPoint) -> C64 {
    (z.z() - C64::i()) / (z.z() + C64::i())
}

/// Oriented area of the geodesic triangle; positive when the vertices run
/// counterclockwise. Computed in the disc as
/// `2·arg((1 − w₀w̄₁)(1 − w₁w̄₂)(1 − w₂w̄₀))`, which stays accurate for small
/// triangles.
pub fn triangle_area(z0: &HPoint, z1: &HPoint, z2: &HPoint) -> f64 {
    let (w0, w1, w2) = (disc(z0), disc(z1), disc(z2));
    let one = C64::new(1.0, 0.0);
    let p = (one - w0 * w1.conj()) * (one - w1 * w2.conj()) * (one - w2 * w0.conj());
    2.0 * p.arg()
}

/// [`triangle_area`] by angle defect and the Klein-model orientation.
pub fn triangle_area_defect(z0: &HPoint, z1: &HPoint, z2: &HPoint) -> f64 {
    let (p0, p1, p2) = (z0.klein(), z1.klein(), z2.klein());
    let orient = (p1.0 - p0.0) * (p2.1 - p0.1) - (p1.1 - p0.1) * (p2.0 - p0.0);
    let scale = [p0, p1, p2]
        .iter()
        .map(|p| p.0.abs() + p.1.abs())
        .fold(1.0, f64::max);
    if orient.abs() <= 1e-15 * scale * scale {
        return 0.0;
    }
    let c01 = cosh_distance(z0, z1);
    let c12 = cosh_distance(z1, z2);
    let c20 = cosh_distance(z2, z0);
    let a0 = angle_from_sides(c01, c20, c12);
    let a1 = angle_from_sides(c01, c12, c20);
    let a2 = angle_from_sides(c12, c20, c01);
    let defect = (PI - a0 - a1 - a2).max(0.0);
    defect.copysign(orient)
}

/// `(1/2π)·area(o, g·o, gh·o)`.
pub fn area_cocycle(g: &GroupElement, h: &GroupElement) -> f64 {
    let o = HPoint::origin();
    let go = mobius(g, &o);
    let gho = mobius(&g.mul(h), &o);
    triangle_area(&o, &go, &gho) / (2.0 * PI)
}

/// `(1/2π)·(θ(gh) − θ(g) − θ(h))` reduced to `(−π, π]` before scaling.
pub fn angle_cochain(g: &GroupElement, h: &GroupElement) -> f64 {
    let d = iwasawa_angle(&g.mul(h)) - iwasawa_angle(g) - iwasawa_angle(h);
    let w = d - 2.0 * PI * ((d + PI) / (2.0 * PI)).ceil() + 2.0 * PI;
    w / (2.0 * PI)
}

/// Lie-algebra pairing `∂_s∂_t [c(e^{sX}, e^{tY}) − c(e^{tY}, e^{sX})]` at 0,
/// by a central difference with step `h`.
pub fn lie_pairing<F>(cochain: F, x: &TracelessMatrix, y: &TracelessMatrix, h: f64) -> f64
where
    F: Fn(&GroupElement, &GroupElement) -> f64,
{
    let f = |s: f64, t: f64| {
        let gs = GroupElement::exp_traceless(&x.scale(s));
        let gt = GroupElement::exp_traceless(&y.scale(t));
        cochain(&gs, &gt) - cochain(&gt, &gs)
    };
    (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h)
}

/// [`lie_pairing`] with one Richardson step, `(4L(h/2) − L(h))/3`.
pub fn lie_pairing_extrapolated<F>(
    cochain: F,
    x: &TracelessMatrix,
    y: &TracelessMatrix,
    h: f64,
) -> f64
where
    F: Fn(&GroupElement, &GroupElement) -> f64,
{
    let coarse = lie_pairing(&cochain, x, y, h);
    let fine = lie_pairing(&cochain, x, y, 0.5 * h);
    (4.0 * fine - coarse) / 3.0
}

/// Fundamental field on the circle of `E = [[p, q], [r, −p]]`.
///
/// In `r = tan(πx)` the generator acts by `ṙ = q + 2pr − sr²` (here `s = r`
/// entry), which gives `ẋ = (q cos²πx + p sin 2πx − s sin²πx)/π`.
pub fn fundamental_field_circle(e: &TracelessMatrix) -> VectorField {
    let (p, q, s) = (e.p, e.q, e.r);
    let c0 = C64::new((q - s) / (2.0 * PI), 0.0);
    let two_i = C64::new(0.0, 2.0);
    let c1 = (C64::new(q / 4.0 + s / 4.0, 0.0) + p / two_i) / PI;
    let cm1 = (C64::new(q / 4.0 + s / 4.0, 0.0) - p / two_i) / PI;
    VectorField::real_from_coeffs([(0, c0), (1, c1), (-1, cm1)])
        .expect("conjugate pair by construction")
}

/// `d/dt|₀ exp(tE)·o = (q + r, 2p)`.
pub fn fundamental_field_plane(e: &TracelessMatrix) -> (f64, f64) {
    (e.q + e.r, 2.0 * e.p)
}

/// Hyperbolic area form at `z` on a pair of tangent vectors.
pub fn vol_at(z: &HPoint, v: (f64, f64), w: (f64, f64)) -> f64 {
    (v.0 * w.1 - v.1 * w.0) / (z.y * z.y)
}

/// `vol(A♯(o), N♯(o))`.
pub fn vol_at_origin() -> f64 {
    vol_at(
        &HPoint::origin(),
        fundamental_field_plane(&TracelessMatrix::A),
        fundamental_field_plane(&TracelessMatrix::N),
    )
}

/// Coefficient `c` with `i*T₂ = (c/2π)·vol`, measured and as published.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassCoefficient {
    pub a: f64,
    /// `2π·𝒟c_{T₂}(A*, N*) / vol(A♯, N♯)`.
    pub measured: f64,
    /// Imaginary part left over from the complex evaluation.
    pub measured_imag: f64,
    /// `−Γ(5/4)·Cl(a)/(2^{5/2}π^{7/2})`.
    pub published: f64,
}

pub fn class_coefficient(a: f64, t: &TorsionTwoForm) -> Result<ClassCoefficient> {
    crate::spectral::HolonomyParameter::new(a)?;
    let a_star = fundamental_field_circle(&TracelessMatrix::A);
    let n_star = fundamental_field_circle(&TracelessMatrix::N);
    let pairing = lie_cocycle(t, &a_star, &n_star)?;
    let c = pairing * (2.0 * PI) / vol_at_origin();
    Ok(ClassCoefficient {
        a,
        measured: c.re,
        measured_imag: c.im,
        published: published_class_coefficient(a)?,
    })
}

pub fn published_class_coefficient(a: f64) -> Result<f64> {
    Ok(-GAMMA_5_4 * clausen_series(a)? / (2f64.powf(2.5) * PI.powf(3.5)))
}

/// `exp` of a traceless matrix with entries uniform in `[−1, 1]`, rescaled so
/// its Frobenius norm is at most `max_norm`.
pub fn random_element<R: Rng>(rng: &mut R, max_norm: f64) -> GroupElement {
    let e = TracelessMatrix {
        p: rng.gen_range(-1.0..=1.0),
        q: rng.gen_range(-1.0..=1.0),
        r: rng.gen_range(-1.0..=1.0),
    };
    let norm = (2.0 * e.p * e.p + e.q * e.q + e.r * e.r).sqrt();
    let s = if norm > max_norm {
        max_norm / norm
    } else {
        1.0
    };
    GroupElement::exp_traceless(&e.scale(s))
}

/// `count` seeded triples `(g, h, k)`.
pub fn random_triples(seed: u64, count: usize, max_norm: f64) -> Vec<[GroupElement; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            [
                random_element(&mut rng, max_norm),
                random_element(&mut rng, max_norm),
                random_element(&mut rng, max_norm),
            ]
        })
        .collect()
}

/// `c(h,k) − c(gh,k) + c(g,hk) − c(g,h)`.
pub fn cocycle_defect<F>(c: F, g: &GroupElement, h: &GroupElement, k: &GroupElement) -> f64
where
    F: Fn(&GroupElement, &GroupElement) -> f64,
{
    c(h, k) - c(&g.mul(h), k) + c(g, &h.mul(k)) - c(g, h)
}
