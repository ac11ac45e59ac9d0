//! Verification suites, holonomy sweeps and their serialized reports.
//!
//! Every check compares a computed `value` with a `reference` under an
//! absolute `tolerance`; relative comparisons are recorded as a relative
//! deviation against reference `0`. Reports serialize with sorted keys and
//! shortest round-trip floats, and contain nothing that varies between runs.

use std::f64::consts::PI;
use std::fmt::Write as _;

use ndarray::Array2;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grassmann::{
    gr_mul, graded_exp, graded_mul, matmul, supertrace, supertrace_n, ExpControl, ExpMethod,
    GradedDims, GradedOperator, GrassmannPoly2, Monomial,
};
use crate::sl2::{
    angle_cochain, area_cocycle, class_coefficient, cocycle_defect, fundamental_field_circle,
    lie_pairing_extrapolated, random_triples, triangle_area, vol_at_origin, HPoint,
    TracelessMatrix,
};
use crate::spectral::{
    duhamel_deg2_oracle, duhamel_deg2_oracle_simplex, duhamel_pair_coefficient, form_lift, forms,
    resummed_pair_coefficient, scalar_r, shift, shift_derivative, superconnection,
    supertrace_pipeline, supertrace_pipeline_gens, trace_closed_form, HolonomyParameter, ModeSpace,
};
use crate::torsion::{
    clausen, clausen_series, convention_constant, dual_zero_mode_weight, gaussian_moment_check,
    heat_trace_dual, heat_trace_kspace, t0_exact, t0_numeric, t2_closed, t2_integrand_dual,
    t2_integrand_kspace, t2_numeric, theta_sum, theta_sum_dual, QuadratureSpec, TorsionTwoForm,
    CATALAN, GAMMA_5_4,
};
use crate::witt::{
    bracket, coboundary_du, lambda_analytic, lambda_published, lie_cocycle, metric_variation,
    verify_exactness_with, VectorField, EXACTNESS_TOLERANCE,
};

/// Where a reference value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// A value or identity stated in the published derivation.
    Published,
    /// Follows from a definition or a symmetry.
    Trivial,
    /// Obtained from an independent computation.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// Short label of the statement being checked.
    pub anchor: String,
    pub value: f64,
    pub reference: f64,
    pub provenance: Provenance,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        anchor: impl Into<String>,
        value: f64,
        reference: f64,
        tolerance: f64,
        provenance: Provenance,
    ) -> Self {
        let pass = (value - reference).abs() <= tolerance;
        Self {
            name: name.into(),
            anchor: anchor.into(),
            value,
            reference,
            provenance,
            tolerance,
            pass,
        }
    }

    /// `|value − reference| / max(|reference|, scale)` against `0`.
    pub fn relative(
        name: impl Into<String>,
        anchor: impl Into<String>,
        value: f64,
        reference: f64,
        scale: f64,
        tolerance: f64,
        provenance: Provenance,
    ) -> Self {
        let dev = (value - reference).abs() / reference.abs().max(scale);
        Self::new(name, anchor, dev, 0.0, tolerance, provenance)
    }

    /// `value < bound`, recorded as `max(value − bound, 0)` against `0`.
    pub fn below(
        name: impl Into<String>,
        anchor: impl Into<String>,
        value: f64,
        bound: f64,
        provenance: Provenance,
    ) -> Self {
        let mut c = Self::new(name, anchor, value, bound, f64::INFINITY, provenance);
        c.pass = value < bound;
        c.tolerance = 0.0;
        c
    }
}

/// Suite selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Grassmann,
    Spectral,
    Torsion,
    Witt,
    Sl2,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "grassmann" => Suite::Grassmann,
            "spectral" => Suite::Spectral,
            "torsion" => Suite::Torsion,
            "witt" => Suite::Witt,
            "sl2" => Suite::Sl2,
            "all" => Suite::All,
            other => return Err(Error::InvalidArgument(format!("unknown suite {other}"))),
        })
    }
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Grassmann => "grassmann",
            Suite::Spectral => "spectral",
            Suite::Torsion => "torsion",
            Suite::Witt => "witt",
            Suite::Sl2 => "sl2",
            Suite::All => "all",
        }
    }
}

/// Holonomy grid used by the suites.
pub const A_GRID: [f64; 5] = [0.1, 0.25, 0.37, 0.5, 0.75];
/// Grid on which `Cl(a) ≠ 0`.
pub const A_GRID_NONZERO: [f64; 4] = [0.1, 0.25, 0.37, 0.75];
pub const ALPHA_GRID: [i64; 3] = [1, 2, 3];
pub const T_GRID: [f64; 3] = [0.05, 0.5, 5.0];
/// Truncation radius for the mode-space checks.
pub const MODES: u32 = 64;
/// Gauss–Legendre nodes per panel in the Duhamel oracles.
pub const NQUAD: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub suite: Suite,
    pub seed: u64,
    pub quadrature: QuadratureSpec,
    pub checks: Vec<Check>,
    pub c_conv: f64,
    /// Measured constants next to the published ones.
    pub comparisons: Vec<(String, f64)>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let comparisons: serde_json::Map<String, Value> = self
            .comparisons
            .iter()
            .map(|(k, v)| (k.clone(), finite_json(*v)))
            .collect();
        json!({
            "meta": {
                "suite": self.suite,
                "seed": self.seed,
                "modes": MODES,
                "duhamel_nodes_per_panel": NQUAD,
                "quadrature": self.quadrature,
                "version": env!("CARGO_PKG_VERSION"),
                "passed": self.passed(),
            },
            "checks": self.checks.iter().map(check_json).collect::<Vec<_>>(),
            "constants": {
                "C_conv": self.c_conv,
                "gamma54": GAMMA_5_4,
                "comparisons": comparisons,
            },
        })
    }

    /// Canonical text: sorted keys, two-space indentation, trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }
}

fn finite_json(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn check_json(c: &Check) -> Value {
    json!({
        "name": c.name,
        "anchor": c.anchor,
        "value": finite_json(c.value),
        "reference": finite_json(c.reference),
        "provenance": c.provenance,
        "tolerance": finite_json(c.tolerance),
        "pass": c.pass,
    })
}

fn space(a: f64, k: u32) -> Result<ModeSpace> {
    Ok(ModeSpace::new(HolonomyParameter::new(a)?, k))
}

fn cz(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn max_abs(m: &Array2<C64>) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

fn random_matrix<R: Rng>(rng: &mut R, n: usize, z_odd: Option<bool>) -> Array2<C64> {
    let half = n / 2;
    Array2::from_shape_fn((n, n), |(i, j)| {
        let same = (i < half) == (j < half);
        let keep = match z_odd {
            None => true,
            Some(odd) => same != odd,
        };
        if keep {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        } else {
            cz(0.0)
        }
    })
}

fn random_monomial<R: Rng>(rng: &mut R, gens: &[i32]) -> Monomial {
    match rng.gen_range(0..3) {
        0 => Monomial::Unit,
        1 => Monomial::Single(gens[rng.gen_range(0..gens.len())]),
        _ => {
            let a = gens[rng.gen_range(0..gens.len())];
            let mut b = gens[rng.gen_range(0..gens.len())];
            while b == a {
                b = gens[rng.gen_range(0..gens.len())];
            }
            Monomial::ordered_pair(a, b).expect("distinct").1
        }
    }
}

/// Random graded operator with several blocks of mixed parity.
pub fn random_graded<R: Rng>(rng: &mut R, dims: GradedDims, gens: &[i32]) -> GradedOperator {
    let mut x = GradedOperator::zeros(dims);
    for _ in 0..4 {
        let m = random_monomial(rng, gens);
        x.add_block(m, &random_matrix(rng, dims.size(), None))
            .expect("dimensions agree");
    }
    x
}

/// Homogeneous random element: one monomial, one z-parity.
pub fn random_homogeneous<R: Rng>(
    rng: &mut R,
    dims: GradedDims,
    gens: &[i32],
    z_odd: bool,
) -> (GradedOperator, bool) {
    let m = random_monomial(rng, gens);
    let x = GradedOperator::from_block(dims, m, random_matrix(rng, dims.size(), Some(z_odd)))
        .expect("dimensions agree");
    (x, m.is_odd() ^ z_odd)
}

fn poly_distance(x: &GrassmannPoly2, y: &GrassmannPoly2) -> f64 {
    (x - y).max_abs()
}

fn op_distance(x: &GradedOperator, y: &GradedOperator) -> f64 {
    x.sub(y)
        .map(|d| d.max_block_norm())
        .unwrap_or(f64::INFINITY)
}

pub fn grassmann_suite(seed: u64) -> Result<Vec<Check>> {
    use Provenance::*;
    let mut out = Vec::new();
    let e = GrassmannPoly2::generator;

    let p = gr_mul(&e(1), &e(-1));
    out.push(Check::new(
        "grassmann.e1_em1_basis",
        "product of two generators",
        p.deg2(1, -1).re,
        1.0,
        0.0,
        Trivial,
    ));
    out.push(Check::new(
        "grassmann.nilpotent_generator",
        "E^a E^a = 0",
        gr_mul(&e(1), &e(1)).max_abs(),
        0.0,
        0.0,
        Trivial,
    ));
    let mut anti: f64 = 0.0;
    for a in -3..=3 {
        for b in -3..=3 {
            if a == 0 || b == 0 {
                continue;
            }
            let s = &gr_mul(&e(a), &e(b)) + &gr_mul(&e(b), &e(a));
            anti = anti.max(s.max_abs());
        }
    }
    out.push(Check::new(
        "grassmann.anticommutation",
        "E^a E^b + E^b E^a = 0",
        anti,
        0.0,
        0.0,
        Trivial,
    ));

    // Koszul sign law on the operators of the model
    let m = space(0.25, 6)?;
    let dims = m.graded_dims();
    let n = m.dim();
    let eye = Array2::<C64>::eye(n);
    let gen = GradedOperator::from_block(dims, Monomial::Single(1), Array2::eye(2 * n))?;
    let d = crate::spectral::deriv(&m);
    let odd_ops = [
        form_lift(&forms::c_hat(), &eye),
        form_lift(&forms::c_hat(), &d),
    ];
    let even_ops = [
        form_lift(&forms::z(), &eye),
        form_lift(&forms::identity(), &d),
        form_lift(&forms::identity(), &shift(&m, 1)),
        form_lift(&forms::identity(), &shift(&m, -2)),
    ];
    let mut sign_dev: f64 = 0.0;
    for (ops, sign) in [(&odd_ops[..], -1.0), (&even_ops[..], 1.0)] {
        for a in ops {
            let lhs = graded_mul(
                &GradedOperator::from_block(dims, Monomial::Unit, a.clone())?,
                &gen,
            )?;
            let rhs = GradedOperator::from_block(dims, Monomial::Single(1), a.mapv(|v| v * sign))?;
            sign_dev = sign_dev.max(op_distance(&lhs, &rhs));
        }
    }
    out.push(Check::new(
        "grassmann.koszul_sign_law",
        "(1⊗A)(η⊗I) = (−1)^{p(A)} η⊗A",
        sign_dev,
        0.0,
        0.0,
        Trivial,
    ));

    // associativity on seeded random elements
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small = GradedDims::new(3);
    let gens = [1, -1, 2];
    let mut assoc: f64 = 0.0;
    for _ in 0..20 {
        let x = random_graded(&mut rng, small, &gens);
        let y = random_graded(&mut rng, small, &gens);
        let z = random_graded(&mut rng, small, &gens);
        let l = graded_mul(&graded_mul(&x, &y)?, &z)?;
        let r = graded_mul(&x, &graded_mul(&y, &z)?)?;
        assoc = assoc.max(op_distance(&l, &r) / l.max_block_norm().max(1.0));
    }
    out.push(Check::new(
        "grassmann.associativity",
        "graded product is associative",
        assoc,
        0.0,
        1e-13,
        Trivial,
    ));

    // supertrace cyclicity
    let mut cyc: f64 = 0.0;
    let mut cyc_n: f64 = 0.0;
    for _ in 0..20 {
        let zx = rng.gen_bool(0.5);
        let zy = rng.gen_bool(0.5);
        let (x, px) = random_homogeneous(&mut rng, small, &gens, zx);
        let (y, py) = random_homogeneous(&mut rng, small, &gens, zy);
        let sign = if px && py { -1.0 } else { 1.0 };
        let xy = graded_mul(&x, &y)?;
        let yx = graded_mul(&y, &x)?.scale(cz(sign));
        cyc = cyc.max(poly_distance(&supertrace(&xy), &supertrace(&yx)));
        let (xe, pe) = random_homogeneous(&mut rng, small, &gens, false);
        let sign = if pe && py { -1.0 } else { 1.0 };
        let xy = graded_mul(&xe, &y)?;
        let yx = graded_mul(&y, &xe)?.scale(cz(sign));
        cyc_n = cyc_n.max(poly_distance(&supertrace_n(&xy), &supertrace_n(&yx)));
    }
    out.push(Check::new(
        "grassmann.supertrace_cyclicity",
        "Str(XY) = ±Str(YX)",
        cyc,
        0.0,
        1e-11,
        Trivial,
    ));
    out.push(Check::new(
        "grassmann.supertrace_n_cyclicity_even_factor",
        "Str(N·XY) = ±Str(N·YX) when X is z-even",
        cyc_n,
        0.0,
        1e-11,
        Trivial,
    ));

    out.push(Check::new(
        "grassmann.supertrace_n_identity",
        "Str(N·1) = −dim Ω¹",
        supertrace_n(&GradedOperator::identity(dims)).deg0().re,
        -(n as f64),
        0.0,
        Trivial,
    ));
    let zop = GradedOperator::from_block(dims, Monomial::Unit, form_lift(&forms::z(), &eye))?;
    out.push(Check::new(
        "grassmann.supertrace_n_z",
        "Str(N·z) = +dim Ω¹",
        supertrace_n(&zop).deg0().re,
        n as f64,
        0.0,
        Trivial,
    ));

    // D² against its expansion ∂² + E^α⊗(−ĉz⊗L_α), interior rows
    let k = m.k_max() as i64;
    let dd = superconnection(&m, &[1, -1], 1.0)?;
    let d2 = graded_mul(&dd, &dd)?;
    let lap = matmul(&d, &d);
    let mut dev = max_abs(&(d2.full_block(Monomial::Unit) - form_lift(&forms::identity(), &lap)));
    let cz_form = matmul(&forms::c_hat(), &forms::z());
    for alpha in [1i64, -1] {
        let want = form_lift(&cz_form, &scalar_r(&m, alpha)).mapv(|v| -v);
        let got = d2.full_block(Monomial::Single(alpha as i32));
        dev = dev.max(max_abs(&(got - want)));
        // the form 2ĉh_αE^αz∂ + ĉ(∂h_α)E^αz, with E^α moved left past ĉ
        let two_h_d = matmul(&shift(&m, alpha), &d).mapv(|v| v * 2.0);
        let expanded = form_lift(&cz_form, &(two_h_d + shift_derivative(&m, alpha))).mapv(|v| -v);
        dev = dev.max(max_abs(
            &(d2.full_block(Monomial::Single(alpha as i32)) - expanded),
        ));
    }
    let q2 = d2.full_block(Monomial::Pair(-1, 1));
    for row in 0..2 * n {
        let mode = (row % n) as i64 - k;
        if mode.abs() < k {
            dev = dev.max(q2.row(row).iter().map(|v| v.norm()).fold(0.0, f64::max));
        }
    }
    out.push(Check::new(
        "grassmann.d_squared_expansion",
        "D² = ∂² + 2ĉh_αE^αz∂ + ĉ(∂h_α)E^αz",
        dev,
        0.0,
        1e-12,
        Published,
    ));

    // exponential: diagonal, nilpotent, and the two schemes against each other
    let lam: Vec<f64> = (0..2 * n).map(|i| -0.1 * i as f64).collect();
    let diag = Array2::from_shape_fn(
        (2 * n, 2 * n),
        |(i, j)| if i == j { cz(lam[i]) } else { cz(0.0) },
    );
    let ex = graded_exp(
        &GradedOperator::from_block(dims, Monomial::Unit, diag)?,
        ExpControl::default(),
    )?;
    let mut dev: f64 = 0.0;
    for i in 0..2 * n {
        dev = dev.max((ex.full_block(Monomial::Unit)[[i, i]] - cz(lam[i].exp())).norm());
    }
    out.push(Check::new(
        "grassmann.exp_diagonal",
        "exp of a diagonal degree-0 block",
        dev,
        0.0,
        1e-15,
        Trivial,
    ));
    let mut nil = GradedOperator::zeros(small);
    nil.add_block(Monomial::Single(1), &random_matrix(&mut rng, 6, None))?;
    nil.add_block(Monomial::Single(2), &random_matrix(&mut rng, 6, None))?;
    let series = GradedOperator::identity(small)
        .add(&nil)?
        .add(&graded_mul(&nil, &nil)?.scale(cz(0.5)))?;
    let mut dev: f64 = 0.0;
    for method in [ExpMethod::Spectral, ExpMethod::ScalingSquaring] {
        dev = dev.max(op_distance(
            &graded_exp(&nil, ExpControl::with_method(method))?,
            &series,
        ));
    }
    out.push(Check::new(
        "grassmann.exp_nilpotent",
        "exp of a degree-1 element is 1 + X + X²/2",
        dev,
        0.0,
        1e-13,
        Trivial,
    ));
    let ms = space(0.3, 5)?;
    let dt2 = {
        let dd = superconnection(&ms, &[1, -1, 2], 0.03)?;
        graded_mul(&dd, &dd)?
    };
    let a = graded_exp(&dt2, ExpControl::with_method(ExpMethod::Spectral))?;
    let b = graded_exp(&dt2, ExpControl::with_method(ExpMethod::ScalingSquaring))?;
    out.push(Check::new(
        "grassmann.exp_schemes_agree",
        "spectral and scaling-squaring exponentials",
        op_distance(&a, &b) / a.max_block_norm(),
        0.0,
        1e-10,
        Derived,
    ));
    Ok(out)
}

struct GridPoint {
    a: f64,
    alpha: i64,
    t: f64,
}

fn grid_points() -> Vec<GridPoint> {
    let mut v = Vec::new();
    for &a in &A_GRID {
        for &alpha in &ALPHA_GRID {
            for &t in &T_GRID {
                v.push(GridPoint { a, alpha, t });
            }
        }
    }
    v
}

fn spectral_point(p: &GridPoint) -> Result<Vec<Check>> {
    use Provenance::*;
    let m = space(p.a, MODES)?;
    let tag = format!("a={},alpha={},t={}", p.a, p.alpha, p.t);
    let fwd = duhamel_deg2_oracle(&m, p.alpha, -p.alpha, p.t, NQUAD)?;
    let bwd = duhamel_deg2_oracle(&m, -p.alpha, p.alpha, p.t, NQUAD)?;
    let pair = fwd.coefficient - bwd.coefficient;
    let pipe = supertrace_pipeline(&m, p.alpha as i32, p.t, ExpControl::default())?;
    // E^αE^{−α} coefficient of Tr_s N e^{D_t²} is (1/t) times that of Tr_s N e^{tD²}
    let from_pipe = pipe.heat_deg2(p.alpha as i32, -p.alpha as i32) * p.t;
    let scale = fwd.coefficient.norm().max(bwd.coefficient.norm());
    let mut out = vec![Check::new(
        format!("spectral.pipeline_vs_duhamel[{tag}]"),
        "two evaluations of the degree-2 supertrace",
        (from_pipe - pair).norm() / pair.norm().max(scale),
        0.0,
        1e-7,
        Derived,
    )];
    let closed = trace_closed_form(&m, p.alpha, p.t)?;
    out.push(Check::new(
        format!("spectral.duhamel_vs_closed_trace[{tag}]"),
        "simplex-integrated per-mode trace",
        (fwd.inner_trace - closed).norm() / closed.norm(),
        0.0,
        1e-8,
        Derived,
    ));
    let res = resummed_pair_coefficient(&m, p.alpha, p.t);
    out.push(Check::new(
        format!("spectral.resummed_pair[{tag}]"),
        "pair coefficient −(4t/α)Σ(k+a)e^{−4π²(k+a)²t}",
        (pair - res).norm() / scale,
        0.0,
        1e-9,
        Derived,
    ));
    out.push(Check::new(
        format!("spectral.no_truncation_warning[{tag}]"),
        "boundary modes negligible",
        (fwd.warning.is_some() || bwd.warning.is_some()) as u8 as f64,
        0.0,
        0.0,
        Trivial,
    ));
    Ok(out)
}

pub fn spectral_suite() -> Result<Vec<Check>> {
    use Provenance::*;
    let pts = grid_points();
    let per: Vec<Result<Vec<Check>>> = pts.par_iter().map(spectral_point).collect();
    let mut out = Vec::new();
    for r in per {
        out.extend(r?);
    }

    let m = space(0.25, 4)?;
    let v = scalar_r(&m, 1)[[m.index(1).expect("in range"), m.index(0).expect("in range")]];
    out.push(Check::new(
        "spectral.scalar_r_entry",
        "2πi(2(k+a)+α) at k=0, a=1/4, α=1",
        (v - C64::new(0.0, 3.0 * PI)).norm(),
        0.0,
        1e-14,
        Published,
    ));

    // vanishing law, three routes
    let pairs: Vec<(i64, i64)> = (-4..=4)
        .flat_map(|a| (-4..=4).map(move |b| (a, b)))
        .filter(|&(a, b)| a != 0 && b != 0 && a + b != 0)
        .collect();
    let vanish: Vec<Result<f64>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let mut worst: f64 = 0.0;
            for t in [0.1, 1.0] {
                let m = space(0.37, MODES)?;
                worst = worst.max(duhamel_deg2_oracle(&m, a, b, t, NQUAD)?.coefficient.norm());
                let ms = space(0.37, 16)?;
                worst = worst.max(
                    duhamel_deg2_oracle_simplex(&ms, a, b, t, 8)?
                        .coefficient
                        .norm(),
                );
                let g = [a as i32, b as i32];
                let pipe = supertrace_pipeline_gens(&ms, &g, t, ExpControl::default())?;
                worst = worst.max(pipe.heat_deg2(g[0], g[1]).norm());
                worst = worst.max(pipe.deg2(g[0], g[1]).norm());
            }
            Ok(worst)
        })
        .collect();
    let mut worst: f64 = 0.0;
    for w in vanish {
        worst = worst.max(w?);
    }
    out.push(Check::new(
        "spectral.vanishing_law",
        "trace vanishes when α+β ≠ 0",
        worst,
        0.0,
        1e-10,
        Published,
    ));

    // general simplex route against the reduced one
    let ms = space(0.25, 16)?;
    let gen = duhamel_deg2_oracle_simplex(&ms, 1, -1, 0.5, 12)?.coefficient;
    let red = duhamel_deg2_oracle(&ms, 1, -1, 0.5, NQUAD)?.coefficient;
    out.push(Check::new(
        "spectral.simplex_routes_agree",
        "two-dimensional and reduced simplex rules",
        (gen - red).norm() / red.norm(),
        0.0,
        1e-9,
        Derived,
    ));

    // antisymmetry under swapping the ordered pair
    let m = space(0.25, 32)?;
    let f = duhamel_deg2_oracle(&m, 2, -2, 0.5, NQUAD)?.coefficient;
    let pair = duhamel_pair_coefficient(&m, 2, 0.5, NQUAD)?;
    let swapped = duhamel_pair_coefficient(&m, -2, 0.5, NQUAD)?;
    out.push(Check::new(
        "spectral.ordering_antisymmetry",
        "E^αE^{−α} = −E^{−α}E^α",
        (pair + swapped).norm() / f.norm(),
        0.0,
        1e-12,
        Trivial,
    ));

    // the full integrand coefficient equals t times the analytic T₂ integrand
    let mut dev: f64 = 0.0;
    let mut odd: f64 = 0.0;
    for &a in &[0.25, 0.37] {
        let m = space(a, MODES)?;
        let mr = space(1.0 - a, MODES)?;
        for t in [0.05, 0.5] {
            let pipe = supertrace_pipeline(&m, 1, t, ExpControl::default())?;
            let want = t * t2_integrand_kspace(a, 1, t, MODES as usize);
            dev = dev.max((pipe.deg2(1, -1).re - want).abs() / want.abs());
            let piper = supertrace_pipeline(&mr, 1, t, ExpControl::default())?;
            let (x, y) = (pipe.deg2(1, -1), piper.deg2(1, -1));
            odd = odd.max((x + y).norm() / x.norm());
        }
    }
    out.push(Check::new(
        "spectral.integrand_vs_kspace",
        "Tr_s N[(1+2D_t²)e^{D_t²}]₂ against the analytic t-derivative",
        dev,
        0.0,
        1e-8,
        Derived,
    ));
    out.push(Check::new(
        "spectral.oddness_in_a",
        "degree-2 coefficient changes sign under a ↦ 1−a",
        odd,
        0.0,
        1e-9,
        Derived,
    ));

    // deg-0 is minus the truncated heat trace
    let m = space(0.37, MODES)?;
    let pipe = supertrace_pipeline(&m, 1, 0.5, ExpControl::default())?;
    let theta = heat_trace_kspace(0.37, 0.5, MODES as usize);
    out.push(Check::relative(
        "spectral.heat_deg0",
        "Tr_s N e^{t∂²} = −θ",
        pipe.heat_deg0().re,
        -theta,
        0.0,
        1e-13,
        Trivial,
    ));
    Ok(out)
}

pub fn torsion_suite() -> Result<Vec<Check>> {
    use Provenance::*;
    let spec = QuadratureSpec::default();
    let mut out = Vec::new();
    let ts = spec.t_star;

    let mut d: f64 = 0.0;
    let mut dh: f64 = 0.0;
    let mut d2: f64 = 0.0;
    for &a in &A_GRID {
        let s = theta_sum(a, ts, spec.modes);
        d = d.max((s - theta_sum_dual(a, ts, spec.dual_terms)).abs());
        dh = dh.max(
            (heat_trace_kspace(a, ts, spec.modes) - heat_trace_dual(a, ts, spec.dual_terms)).abs(),
        );
        for &alpha in &ALPHA_GRID {
            let k = t2_integrand_kspace(a, alpha, ts, spec.modes);
            let m = t2_integrand_dual(a, alpha, ts, spec.dual_terms);
            d2 = d2.max((k - m).abs() / k.abs().max(1.0));
        }
    }
    out.push(Check::new(
        "torsion.theta_sum_duality",
        "Poisson summation of S(a,t)",
        d,
        0.0,
        1e-12,
        Derived,
    ));
    out.push(Check::new(
        "torsion.heat_trace_duality",
        "theta transformation of θ(a,t)",
        dh,
        0.0,
        1e-12,
        Derived,
    ));
    out.push(Check::new(
        "torsion.t2_integrand_branches",
        "k-space and dual integrands at t_star",
        d2,
        0.0,
        1e-10,
        Derived,
    ));
    let sd = theta_sum(0.25, 0.2, 64) - theta_sum_dual(0.25, 0.2, 64);
    out.push(Check::new(
        "torsion.theta_sum_duality_t0.2",
        "Poisson summation of S(1/4, 0.2)",
        sd.abs(),
        0.0,
        1e-12,
        Derived,
    ));
    out.push(Check::new(
        "torsion.theta_sum_half",
        "S(1/2, t) = 0",
        theta_sum(0.5, 0.3, 64).abs(),
        0.0,
        1e-15,
        Trivial,
    ));

    out.push(Check::new(
        "torsion.dual_zero_mode_cancels",
        "(1+2t d/dt) t^{−1/2} = 0",
        dual_zero_mode_weight(),
        0.0,
        0.0,
        Trivial,
    ));
    out.push(Check::new(
        "torsion.gaussian_moment",
        "∫ z^{3/2}e^{−z²/4} dz = 2^{3/2}Γ(5/4)",
        gaussian_moment_check(),
        1.0,
        1e-12,
        Published,
    ));

    let t0: Vec<Result<(f64, f64)>> = [0.1, 0.25, 0.37, 0.5, 0.75, 0.9]
        .par_iter()
        .map(|&a| Ok((a, t0_numeric(a, &spec)?.value)))
        .collect();
    let t0: Vec<(f64, f64)> = t0.into_iter().collect::<Result<_>>()?;
    for &(a, v) in &t0 {
        out.push(Check::new(
            format!("torsion.t0[a={a}]"),
            "T₀ = −log(4 sin²πa)",
            v,
            t0_exact(a),
            1e-8,
            Derived,
        ));
    }
    let get = |a: f64| {
        t0.iter()
            .find(|p| p.0 == a)
            .map(|p| p.1)
            .unwrap_or(f64::NAN)
    };
    for (a, b) in [(0.1, 0.9), (0.25, 0.75)] {
        out.push(Check::new(
            format!("torsion.t0_symmetry[a={a}]"),
            "T₀(a) = T₀(1−a)",
            get(a),
            get(b),
            1e-8,
            Trivial,
        ));
    }

    out.push(Check::new(
        "torsion.clausen_catalan",
        "Cl(1/4) = Catalan",
        clausen(0.25, 1e-12)?,
        CATALAN,
        1e-11,
        Derived,
    ));
    out.push(Check::new(
        "torsion.clausen_half",
        "Cl(1/2) = 0",
        clausen(0.5, 1e-12)?,
        0.0,
        0.0,
        Trivial,
    ));
    out.push(Check::new(
        "torsion.clausen_paths",
        "direct and accelerated Clausen sums",
        (clausen(0.37, 1e-12)? - clausen_series(0.37)?).abs(),
        0.0,
        2e-12,
        Derived,
    ));

    let mut grid = Vec::new();
    for &a in &A_GRID {
        for &alpha in &ALPHA_GRID {
            grid.push((a, alpha));
        }
    }
    let vals: Vec<Result<(f64, i64, C64, C64)>> = grid
        .par_iter()
        .map(|&(a, alpha)| {
            Ok((
                a,
                alpha,
                t2_numeric(a, alpha, &spec)?.value,
                t2_closed(a, alpha)?,
            ))
        })
        .collect();
    let vals: Vec<(f64, i64, C64, C64)> = vals.into_iter().collect::<Result<_>>()?;
    let c_ref = convention_constant();
    let base = vals
        .iter()
        .find(|v| v.0 == 0.25 && v.1 == 1)
        .map(|v| v.2)
        .ok_or_else(|| Error::InvalidArgument("grid lacks (0.25, 1)".into()))?;
    let base_ratio = base.im / clausen_series(0.25)?;
    let base_conv = base.im / t2_closed(0.25, 1)?.im;
    for &(a, alpha, v, c) in &vals {
        let tag = format!("a={a},alpha={alpha}");
        if a == 0.5 {
            out.push(Check::new(
                format!("torsion.t2_vanishes[{tag}]"),
                "t_α(1/2) = 0",
                v.norm(),
                0.0,
                1e-12,
                Trivial,
            ));
            continue;
        }
        let a1 = vals
            .iter()
            .find(|w| w.0 == a && w.1 == 1)
            .map(|w| w.2)
            .unwrap_or_default();
        out.push(Check::relative(
            format!("torsion.t2_inverse_alpha[{tag}]"),
            "α·t_α independent of α",
            alpha as f64 * v.im,
            a1.im,
            0.0,
            1e-8,
            Published,
        ));
        out.push(Check::relative(
            format!("torsion.t2_over_clausen[{tag}]"),
            "α·t_α/Cl(a) independent of a",
            alpha as f64 * v.im / clausen_series(a)?,
            base_ratio,
            0.0,
            1e-8,
            Published,
        ));
        out.push(Check::relative(
            format!("torsion.c_conv_constant[{tag}]"),
            "t_α / closed form is one global constant",
            v.im / c.im,
            base_conv,
            0.0,
            1e-8,
            Derived,
        ));
        out.push(Check::new(
            format!("torsion.t2_real_part[{tag}]"),
            "t_α is purely imaginary",
            v.re,
            0.0,
            0.0,
            Derived,
        ));
    }
    out.push(Check::relative(
        "torsion.c_conv_value",
        "C_conv = 6·2^{1/2}π^{1/2}/Γ(5/4)",
        base_conv,
        c_ref,
        0.0,
        1e-9,
        Derived,
    ));
    for &a in &[0.1, 0.25] {
        for &alpha in &ALPHA_GRID {
            let x = t2_numeric(a, alpha, &spec)?.value;
            let y = t2_numeric(1.0 - a, alpha, &spec)?.value;
            out.push(Check::new(
                format!("torsion.t2_oddness[a={a},alpha={alpha}]"),
                "t_α(a) = −t_α(1−a)",
                (x + y).norm(),
                0.0,
                1e-8,
                Trivial,
            ));
        }
    }

    // certification: more nodes and a moved crossover do not change t_α
    let mut shift: f64 = 0.0;
    for &a in &[0.1, 0.37] {
        let v = t2_numeric(a, 1, &spec)?.value;
        let w0 = t0_numeric(a, &spec)?.value;
        for alt in [
            QuadratureSpec {
                nodes: 2 * spec.nodes - 1,
                ..spec
            },
            QuadratureSpec {
                t_star: 2.0 * spec.t_star,
                ..spec
            },
            QuadratureSpec {
                t_star: 0.5 * spec.t_star,
                ..spec
            },
        ] {
            let u = t2_numeric(a, 1, &alt)?.value;
            shift = shift.max((u - v).norm() / v.norm());
            let u0 = t0_numeric(a, &alt)?.value;
            shift = shift.max((u0 - w0).abs() / w0.abs());
        }
    }
    out.push(Check::new(
        "torsion.quadrature_stability",
        "node doubling and crossover moves",
        shift,
        0.0,
        spec.rel_tol,
        Derived,
    ));
    Ok(out)
}

pub fn witt_suite(seed: u64) -> Result<Vec<Check>> {
    use Provenance::*;
    let spec = QuadratureSpec::default();
    let mut out = Vec::new();

    for k in [1i64, -2, 3] {
        let v = coboundary_du(&VectorField::basis(k), &VectorField::basis(-k));
        out.push(Check::new(
            format!("witt.du_basis[k={k}]"),
            "du(X_k, X_{−k}) = −4πik",
            (v - C64::new(0.0, -4.0 * PI * k as f64)).norm(),
            0.0,
            1e-12,
            Published,
        ));
        let h = metric_variation(&VectorField::basis(k));
        out.push(Check::new(
            format!("witt.metric_variation[k={k}]"),
            "h_{X_k} = −4πik e^{2πikx}",
            (h.coeff(k) - C64::new(0.0, -4.0 * PI * k as f64)).norm(),
            0.0,
            1e-12,
            Published,
        ));
    }
    let b = bracket(&VectorField::basis(2), &VectorField::basis(-3));
    out.push(Check::new(
        "witt.bracket_basis",
        "[X_k, X_h] = 2πi(h−k)X_{k+h}",
        (b.coeff(-1) - C64::new(0.0, 2.0 * PI * -5.0)).norm(),
        0.0,
        1e-12,
        Derived,
    ));
    let a_star = fundamental_field_circle(&TracelessMatrix::A);
    let ha = metric_variation(&a_star);
    out.push(Check::new(
        "witt.metric_variation_a_star",
        "h_{A*} = −4cos(2πx)",
        (ha.coeff(1) - cz(-2.0))
            .norm()
            .max((ha.coeff(-1) - cz(-2.0)).norm()),
        0.0,
        1e-14,
        Derived,
    ));

    let forms: Vec<Result<(f64, TorsionTwoForm)>> = A_GRID
        .par_iter()
        .map(|&a| Ok((a, TorsionTwoForm::numeric(a, 8, &spec)?)))
        .collect();
    let forms: Vec<(f64, TorsionTwoForm)> = forms.into_iter().collect::<Result<_>>()?;
    let mut ratios = Vec::new();
    let mut lambdas = Vec::new();
    for (a, t) in &forms {
        let rep = verify_exactness_with(t, 8, f64::INFINITY)?;
        out.push(Check::new(
            format!("witt.exactness_residual[a={a}]"),
            "𝒟c_{T₂} = λ·du",
            rep.residual,
            0.0,
            EXACTNESS_TOLERANCE,
            Published,
        ));
        let lam = C64::from(rep.lambda);
        out.push(Check::relative(
            format!("witt.lambda_value[a={a}]"),
            "λ = 24·Cl(a)/π",
            lam.re,
            lambda_analytic(*a)?,
            1e-12,
            1e-8,
            Derived,
        ));
        lambdas.push((*a, lam.re));
        if let Some(r) = rep.ratio {
            ratios.push((*a, r));
        }
    }
    if let Some(&(_, r0)) = ratios.first() {
        for &(a, r) in &ratios {
            out.push(Check::relative(
                format!("witt.lambda_ratio_constant[a={a}]"),
                "λ/(Γ(5/4)·Cl(a)) independent of a",
                r,
                r0,
                0.0,
                1e-8,
                Derived,
            ));
        }
    }
    let l = |a: f64| {
        lambdas
            .iter()
            .find(|p| p.0 == a)
            .map(|p| p.1)
            .unwrap_or(f64::NAN)
    };
    out.push(Check::new(
        "witt.lambda_oddness",
        "λ(a) = −λ(1−a)",
        l(0.25) + l(0.75),
        0.0,
        1e-9,
        Trivial,
    ));
    out.push(Check::new(
        "witt.lambda_half",
        "λ(1/2) = 0",
        l(0.5),
        0.0,
        1e-12,
        Trivial,
    ));

    // closedness, bilinearity, reality
    let t = &forms.iter().find(|p| p.0 == 0.37).expect("grid point").1;
    let mut closed: f64 = 0.0;
    for i in -4..=4 {
        for j in -4..=4 {
            for k in -4..=4 {
                let (x, y, z) = (
                    VectorField::basis(i),
                    VectorField::basis(j),
                    VectorField::basis(k),
                );
                let v = lie_cocycle(t, &bracket(&x, &y), &z)?
                    - lie_cocycle(t, &bracket(&x, &z), &y)?
                    + lie_cocycle(t, &bracket(&y, &z), &x)?;
                closed = closed.max(v.norm());
            }
        }
    }
    out.push(Check::new(
        "witt.cocycle_closed",
        "Lie-algebra differential vanishes",
        closed,
        0.0,
        1e-10,
        Trivial,
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5754);
    let rnd = |rng: &mut ChaCha8Rng| {
        VectorField::from_coeffs((-3..=3).map(|k| {
            (
                k,
                C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            )
        }))
    };
    let mut bil: f64 = 0.0;
    let mut real_im: f64 = 0.0;
    for _ in 0..20 {
        let (x, y, z) = (rnd(&mut rng), rnd(&mut rng), rnd(&mut rng));
        let s = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let lhs = lie_cocycle(t, &x.add(&y.scale(s)), &z)?;
        let rhs = lie_cocycle(t, &x, &z)? + s * lie_cocycle(t, &y, &z)?;
        let anti = lie_cocycle(t, &x, &z)? + lie_cocycle(t, &z, &x)?;
        bil = bil
            .max((lhs - rhs).norm() / lhs.norm().max(1.0))
            .max(anti.norm());
        let real = |rng: &mut ChaCha8Rng| -> Result<VectorField> {
            let c0 = C64::new(rng.gen_range(-1.0..1.0), 0.0);
            let mut cs = vec![(0, c0)];
            for k in 1..=3 {
                let c = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                cs.push((k, c));
                cs.push((-k, c.conj()));
            }
            VectorField::real_from_coeffs(cs)
        };
        let (u, v) = (real(&mut rng)?, real(&mut rng)?);
        let c = lie_cocycle(t, &u, &v)?;
        real_im = real_im.max(c.im.abs() / c.norm().max(1.0));
    }
    out.push(Check::new(
        "witt.bilinear_antisymmetric",
        "bilinearity and antisymmetry",
        bil,
        0.0,
        1e-12,
        Trivial,
    ));
    out.push(Check::new(
        "witt.real_fields_real_values",
        "real fields give real values",
        real_im,
        0.0,
        1e-10,
        Derived,
    ));
    Ok(out)
}

pub fn sl2_suite(seed: u64) -> Result<Vec<Check>> {
    use Provenance::*;
    let mut out = Vec::new();
    out.push(Check::new(
        "sl2.vol_a_n",
        "vol(A♯(o), N♯(o)) = −2",
        vol_at_origin(),
        -2.0,
        1e-12,
        Published,
    ));
    let triples = random_triples(seed, 100, 2.0);
    let mut defect: f64 = 0.0;
    let mut angle_defect: f64 = 0.0;
    let mut max_area: f64 = 0.0;
    let mut max_angle: f64 = 0.0;
    let mut orient: f64 = 0.0;
    let o = HPoint::origin();
    for [g, h, k] in &triples {
        defect = defect.max(cocycle_defect(area_cocycle, g, h, k).abs());
        angle_defect = angle_defect.max(cocycle_defect(angle_cochain, g, h, k).abs());
        let (p, q) = (crate::sl2::mobius(g, &o), crate::sl2::mobius(&g.mul(h), &o));
        let area = triangle_area(&o, &p, &q);
        max_area = max_area.max(area.abs());
        orient = orient.max((area + triangle_area(&p, &o, &q)).abs());
        max_angle = max_angle.max(angle_cochain(g, h).abs());
    }
    out.push(Check::new(
        "sl2.area_cocycle_closed",
        "δ(area cocycle) = 0",
        defect,
        0.0,
        1e-9,
        Derived,
    ));
    out.push(Check::below(
        "sl2.area_bound",
        "|area| < π",
        max_area,
        PI,
        Trivial,
    ));
    out.push(Check::new(
        "sl2.area_orientation",
        "swapping two vertices negates the area",
        orient,
        0.0,
        1e-13,
        Trivial,
    ));
    out.push(Check::new(
        "sl2.angle_cochain_closed",
        "δ(angle cochain) = 0",
        angle_defect,
        0.0,
        1e-9,
        Derived,
    ));
    out.push(Check::below(
        "sl2.angle_cochain_bound",
        "|angle cochain| < 1/4",
        max_angle,
        0.25,
        Derived,
    ));
    let area_pair =
        lie_pairing_extrapolated(area_cocycle, &TracelessMatrix::A, &TracelessMatrix::N, 5e-3);
    let angle_pair = lie_pairing_extrapolated(
        angle_cochain,
        &TracelessMatrix::A,
        &TracelessMatrix::N,
        5e-3,
    );
    out.push(Check::new(
        "sl2.area_lie_pairing",
        "area cocycle on (A, N) is vol/2π",
        area_pair,
        -1.0 / PI,
        1e-9,
        Derived,
    ));
    out.push(Check::new(
        "sl2.angle_lie_pairing",
        "angle cochain on (A, N)",
        angle_pair,
        -0.5 / PI,
        1e-9,
        Derived,
    ));

    let n = fundamental_field_circle(&TracelessMatrix::N);
    let a = fundamental_field_circle(&TracelessMatrix::A);
    let inv = C64::new(0.0, 2.0 * PI).inv();
    let dev_a = (a.coeff(1) - inv)
        .norm()
        .max((a.coeff(-1) + inv).norm())
        .max(a.coeff(0).norm());
    let q = 0.25 / PI;
    let dev_n = (n.coeff(1) - cz(q))
        .norm()
        .max((n.coeff(-1) - cz(q)).norm())
        .max((n.coeff(0) - cz(2.0 * q)).norm());
    out.push(Check::new(
        "sl2.a_star",
        "A* = (1/2πi)(e^{2πix} − e^{−2πix})∂_x",
        dev_a,
        0.0,
        1e-16,
        Published,
    ));
    out.push(Check::new(
        "sl2.n_star",
        "N* = (1/4π)(e^{2πix} + e^{−2πix} + 2)∂_x",
        dev_n,
        0.0,
        1e-16,
        Published,
    ));

    let spec = QuadratureSpec::default();
    let cls: Vec<Result<(f64, f64, f64)>> = A_GRID
        .par_iter()
        .map(|&a| {
            let t = TorsionTwoForm::numeric(a, 1, &spec)?;
            let c = class_coefficient(a, &t)?;
            Ok((a, c.measured, c.measured_imag))
        })
        .collect();
    let cls: Vec<(f64, f64, f64)> = cls.into_iter().collect::<Result<_>>()?;
    let ratio = |a: f64, c: f64| -> Result<f64> { Ok(c / (GAMMA_5_4 * clausen_series(a)?)) };
    let r0 = ratio(0.25, cls.iter().find(|c| c.0 == 0.25).expect("grid").1)?;
    for &(a, c, im) in &cls {
        out.push(Check::new(
            format!("sl2.class_real[a={a}]"),
            "class coefficient is real",
            im,
            0.0,
            1e-12,
            Derived,
        ));
        if a == 0.5 {
            out.push(Check::new(
                "sl2.class_half",
                "c(1/2) = 0",
                c,
                0.0,
                1e-12,
                Trivial,
            ));
            continue;
        }
        out.push(Check::relative(
            format!("sl2.class_ratio_constant[a={a}]"),
            "c(a)/(Γ(5/4)·Cl(a)) independent of a",
            ratio(a, c)?,
            r0,
            0.0,
            1e-8,
            Published,
        ));
    }
    let c = |a: f64| {
        cls.iter()
            .find(|p| p.0 == a)
            .map(|p| p.1)
            .unwrap_or(f64::NAN)
    };
    out.push(Check::new(
        "sl2.class_oddness",
        "c(a) = −c(1−a)",
        c(0.25) + c(0.75),
        0.0,
        1e-9,
        Trivial,
    ));
    out.push(Check::relative(
        "sl2.class_value",
        "c = 24·Cl(a)/π",
        c(0.25),
        24.0 * CATALAN / PI,
        0.0,
        1e-9,
        Derived,
    ));
    Ok(out)
}

/// Measured constants next to the published ones, at `a = 1/4`.
pub fn comparisons() -> Result<Vec<(String, f64)>> {
    let cl = clausen_series(0.25)?;
    let t = TorsionTwoForm::closed_form(0.25, 1)?;
    let cls = class_coefficient(0.25, &t)?;
    Ok(vec![
        (
            "t2_measured_im".into(),
            crate::torsion::t2_analytic(0.25, 1)?.im,
        ),
        ("t2_published_im".into(), t2_closed(0.25, 1)?.im),
        ("lambda_measured".into(), lambda_analytic(0.25)?),
        ("lambda_published".into(), lambda_published(0.25)?),
        (
            "lambda_over_gamma_cl_measured".into(),
            lambda_analytic(0.25)? / (GAMMA_5_4 * cl),
        ),
        (
            "lambda_over_gamma_cl_published".into(),
            lambda_published(0.25)? / (GAMMA_5_4 * cl),
        ),
        ("class_measured".into(), cls.measured),
        ("class_published".into(), cls.published),
        (
            "class_over_gamma_cl_measured".into(),
            cls.measured / (GAMMA_5_4 * cl),
        ),
        (
            "class_over_gamma_cl_published".into(),
            cls.published / (GAMMA_5_4 * cl),
        ),
    ])
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Grassmann {
        checks.extend(grassmann_suite(seed)?);
    }
    if all || suite == Suite::Spectral {
        checks.extend(spectral_suite()?);
    }
    if all || suite == Suite::Torsion {
        checks.extend(torsion_suite()?);
    }
    if all || suite == Suite::Witt {
        checks.extend(witt_suite(seed)?);
    }
    if all || suite == Suite::Sl2 {
        checks.extend(sl2_suite(seed)?);
    }
    let spec = QuadratureSpec::default();
    let c_conv = t2_numeric(0.25, 1, &spec)?.value.im / t2_closed(0.25, 1)?.im;
    Ok(VerificationReport {
        suite,
        seed,
        quadrature: spec,
        checks,
        c_conv,
        comparisons: comparisons()?,
    })
}

/// One row of a holonomy sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub a: f64,
    pub t0: f64,
    pub t_alpha_im: f64,
    pub clausen: f64,
    pub t_alpha_over_clausen: f64,
    pub lambda: f64,
    pub class_coefficient: f64,
}

/// Column order of the sweep CSV.
pub const SWEEP_COLUMNS: [&str; 7] = [
    "a",
    "t0",
    "t_alpha_im",
    "clausen",
    "t_alpha_over_clausen",
    "lambda",
    "class_coefficient",
];

/// `steps` evenly spaced holonomies from `from` to `to` inclusive.
pub fn sweep(
    from: f64,
    to: f64,
    steps: usize,
    alpha: i64,
    spec: &QuadratureSpec,
) -> Result<Vec<SweepRow>> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be positive".into()));
    }
    HolonomyParameter::new(from)?;
    HolonomyParameter::new(to)?;
    if alpha < 1 {
        return Err(Error::InvalidArgument(format!(
            "alpha must be at least 1, got {alpha}"
        )));
    }
    let pts: Vec<f64> = (0..steps)
        .map(|i| {
            if steps == 1 {
                from
            } else {
                from + (to - from) * i as f64 / (steps - 1) as f64
            }
        })
        .collect();
    let rows: Vec<Result<SweepRow>> = pts
        .par_iter()
        .map(|&a| {
            let t0 = t0_numeric(a, spec)?.value;
            let ta = t2_numeric(a, alpha, spec)?.value;
            let cl = clausen_series(a)?;
            let r = alpha.max(1) as u32;
            let form = TorsionTwoForm::numeric(a, r, spec)?;
            let ex = verify_exactness_with(&form, r, f64::INFINITY)?;
            let cls = class_coefficient(a, &form)?;
            Ok(SweepRow {
                a,
                t0,
                t_alpha_im: ta.im,
                clausen: cl,
                t_alpha_over_clausen: if cl != 0.0 { ta.im / cl } else { f64::NAN },
                lambda: ex.lambda.re,
                class_coefficient: cls.measured,
            })
        })
        .collect();
    rows.into_iter().collect()
}

/// CSV with a header row and 17 significant digits per value.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = SWEEP_COLUMNS.join(",");
    s.push('\n');
    for r in rows {
        let vals = [
            r.a,
            r.t0,
            r.t_alpha_im,
            r.clausen,
            r.t_alpha_over_clausen,
            r.lambda,
            r.class_coefficient,
        ];
        let line: Vec<String> = vals.iter().map(|v| format!("{v:.16e}")).collect();
        let _ = writeln!(s, "{}", line.join(","));
    }
    s
}

pub fn sweep_json(rows: &[SweepRow], alpha: i64, spec: &QuadratureSpec) -> Value {
    json!({
        "meta": { "alpha": alpha, "quadrature": spec, "columns": SWEEP_COLUMNS },
        "rows": rows.iter().map(|r| json!({
            "a": finite_json(r.a),
            "t0": finite_json(r.t0),
            "t_alpha_im": finite_json(r.t_alpha_im),
            "clausen": finite_json(r.clausen),
            "t_alpha_over_clausen": finite_json(r.t_alpha_over_clausen),
            "lambda": finite_json(r.lambda),
            "class_coefficient": finite_json(r.class_coefficient),
        })).collect::<Vec<_>>(),
    })
}

/// Numeric and published closed-form `t_α`, `T₀`, and their certificates.
///
/// Checks: both quadratures certified, `α·t_α = t_1`, and vanishing at `a = 1/2`.
pub fn t2_report(a: f64, alpha: i64, spec: &QuadratureSpec) -> Result<Value> {
    use Provenance::*;
    if alpha < 1 {
        return Err(Error::InvalidArgument(format!(
            "alpha must be at least 1, got {alpha}"
        )));
    }
    let t2 = t2_numeric(a, alpha, spec)?;
    let t0 = t0_numeric(a, spec)?;
    let closed = t2_closed(a, alpha)?;
    let t1 = if alpha == 1 {
        t2.value
    } else {
        t2_numeric(a, 1, spec)?.value
    };
    let mut checks = vec![
        Check::new(
            "t2.quadrature_certified",
            "coarse and fine rules agree",
            t2.integral.error_estimate,
            0.0,
            t2.integral.tolerance,
            Trivial,
        ),
        Check::new(
            "t0.quadrature_certified",
            "coarse and fine rules agree",
            t0.error_estimate,
            0.0,
            t0.tolerance,
            Trivial,
        ),
        Check::new(
            "t0.value",
            "T₀ = −log(4 sin²πa)",
            t0.value,
            t0_exact(a),
            1e-8,
            Derived,
        ),
    ];
    if a == 0.5 {
        checks.push(Check::new(
            "t2.vanishes",
            "t_α(1/2) = 0",
            t2.value.norm(),
            0.0,
            1e-12,
            Trivial,
        ));
    } else {
        checks.push(Check::relative(
            "t2.inverse_alpha",
            "α·t_α independent of α",
            alpha as f64 * t2.value.im,
            t1.im,
            0.0,
            1e-8,
            Published,
        ));
    }
    let ratio = if closed.im != 0.0 {
        t2.value.im / closed.im
    } else {
        f64::NAN
    };
    if ratio.is_finite() {
        checks.push(Check::relative(
            "t2.convention_constant",
            "t_α / closed form = C_conv",
            ratio,
            convention_constant(),
            0.0,
            1e-8,
            Derived,
        ));
    }
    Ok(json!({
        "meta": { "a": a, "alpha": alpha, "quadrature": spec, "version": env!("CARGO_PKG_VERSION") },
        "values": {
            "t_alpha_re": finite_json(t2.value.re),
            "t_alpha_im": finite_json(t2.value.im),
            "t_alpha_closed_form_im": finite_json(closed.im),
            "ratio": finite_json(ratio),
            "T0": finite_json(t0.value),
            "T0_exact": finite_json(t0_exact(a)),
        },
        "certificates": {
            "t2": quad_json(&t2.integral),
            "t0": quad_json(&t0),
        },
        "checks": checks.iter().map(check_json).collect::<Vec<_>>(),
        "constants": { "C_conv": convention_constant(), "gamma54": GAMMA_5_4 },
    }))
}

fn quad_json(q: &crate::torsion::QuadratureResult) -> Value {
    json!({
        "value": finite_json(q.value),
        "error_estimate": finite_json(q.error_estimate),
        "tolerance": finite_json(q.tolerance),
        "nodes": q.nodes,
        "t_min": q.t_min,
        "t_max": q.t_max,
    })
}
