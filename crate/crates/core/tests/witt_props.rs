use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use proptest::prelude::*;

use circle_torsion::spectral::HolonomyParameter;
use circle_torsion::torsion::{
    clausen_series, Provenance, QuadratureSpec, TorsionTwoForm, GAMMA_5_4,
};
use circle_torsion::witt::{
    bracket, coboundary_du, lambda_analytic, lambda_published, lie_cocycle, verify_exactness,
    verify_exactness_with, VectorField,
};
use circle_torsion::Error;

fn field(coeffs: Vec<(i64, f64, f64)>) -> VectorField {
    VectorField::from_coeffs(coeffs.into_iter().map(|(k, r, i)| (k, C64::new(r, i))))
}

fn fields() -> impl Strategy<Value = VectorField> {
    prop::collection::vec((-3i64..=3, -1.0..1.0f64, -1.0..1.0f64), 1..5).prop_map(field)
}

fn real_field() -> impl Strategy<Value = VectorField> {
    (
        -1.0..1.0f64,
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 3),
    )
        .prop_map(|(c0, cs)| {
            let mut v = vec![(0, C64::new(c0, 0.0))];
            for (k, (r, i)) in cs.into_iter().enumerate() {
                let k = k as i64 + 1;
                v.push((k, C64::new(r, i)));
                v.push((-k, C64::new(r, -i)));
            }
            VectorField::real_from_coeffs(v).unwrap()
        })
}

fn form() -> TorsionTwoForm {
    TorsionTwoForm::closed_form(0.37, 8).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cocycle_is_closed(i in -4i64..=4, j in -4i64..=4, k in -4i64..=4) {
        let t = form();
        let (x, y, z) = (VectorField::basis(i), VectorField::basis(j), VectorField::basis(k));
        let d = lie_cocycle(&t, &bracket(&x, &y), &z).unwrap()
            - lie_cocycle(&t, &bracket(&x, &z), &y).unwrap()
            + lie_cocycle(&t, &bracket(&y, &z), &x).unwrap();
        prop_assert!(d.norm() <= 1e-10, "{d}");
    }

    #[test]
    fn cocycle_is_bilinear_and_antisymmetric(x in fields(), y in fields(), z in fields(), s in -2.0..2.0f64) {
        let t = form();
        let s = C64::new(s, 0.3);
        let l = lie_cocycle(&t, &x.add(&y.scale(s)), &z).unwrap();
        let r = lie_cocycle(&t, &x, &z).unwrap() + s * lie_cocycle(&t, &y, &z).unwrap();
        prop_assert!((l - r).norm() <= 1e-12 * l.norm().max(1.0));
        let a = lie_cocycle(&t, &x, &z).unwrap() + lie_cocycle(&t, &z, &x).unwrap();
        prop_assert!(a.norm() <= 1e-12);
    }

    #[test]
    fn real_fields_give_real_values(x in real_field(), y in real_field()) {
        let t = form();
        let c = lie_cocycle(&t, &x, &y).unwrap();
        prop_assert!(c.im.abs() <= 1e-12 * c.norm().max(1.0));
        prop_assert!(bracket(&x, &y).is_real());
    }

    #[test]
    fn bracket_is_a_lie_bracket(x in fields(), y in fields(), z in fields()) {
        let j = bracket(&x, &bracket(&y, &z)).add(&bracket(&y, &bracket(&z, &x))).add(&bracket(&z, &bracket(&x, &y)));
        prop_assert!(j.coeffs().all(|(_, c)| c.norm() < 1e-9));
        let s = bracket(&x, &y).add(&bracket(&y, &x));
        prop_assert!(s.coeffs().all(|(_, c)| c.norm() < 1e-12));
    }
}

#[test]
fn exactness_on_the_grid() {
    for a in [0.1, 0.25, 0.37, 0.5, 0.75] {
        let r = verify_exactness(a, 8).unwrap();
        assert!(r.residual <= 1e-9);
        let lam = r.lambda.re;
        assert!(
            (lam - lambda_analytic(a).unwrap()).abs() <= 1e-8 * lam.abs().max(1.0),
            "{a}"
        );
        if a != 0.5 {
            let q = r.ratio.unwrap();
            assert!((q - 24.0 / (PI * GAMMA_5_4)).abs() <= 1e-8 * q);
        } else {
            assert!(r.ratio.is_none());
        }
    }
}

#[test]
fn exactness_detects_a_non_exact_cocycle() {
    let coeffs: BTreeMap<u32, C64> = (1..=4).map(|a| (a, C64::new(0.0, -1.0))).collect();
    let t = TorsionTwoForm {
        coeffs,
        a: HolonomyParameter::new(0.25).unwrap(),
        provenance: Provenance::ClosedForm,
    };
    assert!(matches!(
        verify_exactness_with(&t, 4, 1e-9),
        Err(Error::ExactnessResidual { .. })
    ));
}

#[test]
fn lambda_differs_from_published_constant() {
    let cl = clausen_series(0.25).unwrap();
    let measured = lambda_analytic(0.25).unwrap() / (GAMMA_5_4 * cl);
    let published = lambda_published(0.25).unwrap() / (GAMMA_5_4 * cl);
    assert!((published + 2f64.powf(1.5) * PI.powf(1.5)).abs() < 1e-12);
    assert!((measured - published).abs() > 1.0);
}

#[test]
fn numeric_and_closed_forms_give_the_same_lambda() {
    let n = TorsionTwoForm::numeric(0.25, 8, &QuadratureSpec::default()).unwrap();
    let x = verify_exactness_with(&n, 8, 1e-9).unwrap().lambda.re;
    let y = verify_exactness_with(&form_at(0.25), 8, 1e-9)
        .unwrap()
        .lambda
        .re;
    assert!((x - y).abs() <= 1e-9 * y.abs());
    let du = coboundary_du(&VectorField::basis(2), &VectorField::basis(-2));
    let lie = lie_cocycle(&n, &VectorField::basis(2), &VectorField::basis(-2)).unwrap();
    assert!((lie - C64::new(x, 0.0) * du).norm() <= 1e-9 * lie.norm());
}

fn form_at(a: f64) -> TorsionTwoForm {
    TorsionTwoForm::closed_form(a, 8).unwrap()
}
