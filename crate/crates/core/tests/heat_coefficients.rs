use heatsym_core::algebra::{int, rat, Cyclo8, FormElement, Matrix, Rational};
use heatsym_core::geometry::{laplace_beltrami_symbol, lichnerowicz_symbol, CurvatureData};
use heatsym_core::volterra::heat_coefficients;

fn scaled(n: u32, rank: usize, r: Rational) -> FormElement {
    let norm = Rational::from_integer(1.into()) / Rational::from_integer(2.into()).pow(n as i32);
    FormElement::scalar(n, rank, Cyclo8::from_rational(r * norm)).with_pi_half(-(n as i32))
}

#[test]
fn sphere_laplace_beltrami_a1() {
    let c = CurvatureData::constant_curvature(2, int(1)).unwrap();
    let a = heat_coefficients(&laplace_beltrami_symbol(&c).unwrap(), 1, None).unwrap();
    assert_eq!(a[0], scaled(2, 1, int(1)));
    assert_eq!(a[1], scaled(2, 1, rat(1, 3)));
}

#[test]
fn laplace_beltrami_a1_is_kappa_over_six() {
    for (n, k) in [(3u32, rat(2, 5)), (4, rat(-3, 2))] {
        let c = CurvatureData::constant_curvature(n, k).unwrap();
        let a = heat_coefficients(&laplace_beltrami_symbol(&c).unwrap(), 1, None).unwrap();
        assert_eq!(a[1], scaled(n, 1, c.kappa() * rat(1, 6)));
    }
}

#[test]
fn dirac_a1_scalar_part() {
    let c = CurvatureData::constant_curvature(2, rat(3, 7)).unwrap();
    let a = heat_coefficients(&lichnerowicz_symbol(&c).unwrap(), 1, None).unwrap();
    assert_eq!(a[1].part(0), scaled(2, 1, -c.kappa() * rat(1, 12)));
}

#[test]
fn twisted_dirac_a1() {
    let f = Matrix::scalar(1, Cyclo8::complex(int(0), int(2)));
    let c = CurvatureData::from_components(2, &[], 1, &[([0, 1], f.clone())]).unwrap();
    let a = heat_coefficients(&lichnerowicz_symbol(&c).unwrap(), 1, None).unwrap();
    let expect = FormElement::from_blade(2, 0b11, f.neg()).scale(&Cyclo8::from_rational(rat(1, 4))).with_pi_half(-2);
    assert_eq!(a[1], expect);
}
