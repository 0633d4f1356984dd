use heatsym::oracle::*;

#[test]
fn sphere_fit() {
    let fit = heat_trace_fit(SpectrumModel::SphereLaplacian, &t_grid(0.05, 40), 5).unwrap();
    eprintln!("{:?} residual {:e}", fit.coefficients, fit.residual);
    assert!((fit.coefficients[0] - 1.0).abs() < 1e-6);
    assert!((fit.coefficients[1] - 1.0 / 3.0).abs() < 1e-5);
    assert!((fit.coefficients[2] - 1.0 / 15.0).abs() < 1e-3);
}

#[test]
fn mehler_1d() {
    for a in [0.0, 0.5, 1.0] {
        let c = mehler_pde_check_1d(a, 0.5, PdeGrid::default()).unwrap();
        eprintln!("a={a}: {c:?}");
        assert!(c.max_relative_error < 1e-4);
    }
}

#[test]
fn mehler_2d() {
    for a in [0.0, 0.5, 1.0] {
        let c = mehler_pde_check_2d(a, 0.5, PdeGrid::default()).unwrap();
        eprintln!("a={a}: {c:?}");
        assert!(c.max_relative_error < 1e-4);
    }
    assert!(matches!(mehler_pde_check_2d(4.0, 0.5, PdeGrid::default()), Err(OracleError::FocalPoint(_))));
}

#[test]
fn winding_flow() {
    for w in -2..=2 {
        let a = spectral_flow_track(w, 16).unwrap();
        let b = spectral_flow_track(w, 24).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.sf, w);
        assert_eq!(a.toeplitz_index, -w);
    }
    assert!(spectral_flow_track(3, 4).is_err());
}

#[test]
fn quadrature_matches_closed_form() {
    // (2π)^{−2}·Γ(3/2)Γ(1/2)/1! for β = (2, 0), N = 2
    let v = quadrature_radial(&[2, 0], 2, 2).unwrap();
    let exact = std::f64::consts::PI / 2.0 / (2.0 * std::f64::consts::PI).powi(2);
    assert!((v - exact).abs() < 1e-14);
    assert_eq!(quadrature_radial(&[2, 2], 0, 2), Err(OracleError::Divergent(0)));
}

#[test]
fn flat_case_on_fine_grid() {
    let grid = PdeGrid { half_width: 6.0, dx: 0.0003, dt: 0.0002, eps: 0.05 };
    let c = mehler_pde_check_1d(0.0, 0.5, grid).unwrap();
    assert!(c.max_relative_error < 1e-6, "{c:?}");
}

use heatsym_core::algebra::{FormElement, ProductRule};
use heatsym_core::jet::Monomial;
use heatsym_core::volterra::{radial_eval, SymKey, VolterraSymbol};
use proptest::prelude::*;
use proptest::test_runner::FileFailurePersistence;

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: Some(Box::new(FileFailurePersistence::Off)), ..ProptestConfig::default() })]

    #[test]
    fn quadrature_agrees_with_radial_eval(beta in prop::collection::vec(0u32..7, 1..=4), n_pow in 1i32..5) {
        let n = beta.len() as u32;
        let key = SymKey::new(Monomial::ONE, Monomial::from_exponents(&beta), n_pow);
        let q = VolterraSymbol::term(key, FormElement::one(n, 1), ProductRule::Clifford);
        let exact = radial_eval(&q).as_scalar().unwrap().to_complex_f64();
        let numeric = quadrature_radial(&beta, n_pow, n).unwrap();
        prop_assert!((exact.0 - numeric).abs() <= 1e-10 * numeric.abs().max(1.0));
        prop_assert_eq!(exact.1, 0.0);
    }

    #[test]
    fn flow_is_cutoff_independent(w in -3i64..=3, k in 8usize..24) {
        let a = spectral_flow_track(w, k).unwrap();
        prop_assert_eq!(&a, &spectral_flow_track(w, k + 8).unwrap());
        prop_assert_eq!(a.sf, w);
    }
}
