use heatsym_core::algebra::{rat, Cyclo8, ExtScalar, FormElement, Matrix, ProductRule, Rational};
use heatsym_core::chern::{a_hat_form, mehler_kernel, FormMatrix};
use heatsym_core::geometry::{laplace_beltrami_symbol, lichnerowicz_symbol, CurvatureData};
use heatsym_core::getzler::{getzler_order, getzler_part, model_operator};
use heatsym_core::jet::Monomial;
use heatsym_core::volterra::{parametrix, radial_eval, SymKey, VolterraSymbol};
use proptest::prelude::*;
use proptest::test_runner::FileFailurePersistence;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: Some(Box::new(FileFailurePersistence::Off)), ..ProptestConfig::default() }
}

const CL: ProductRule = ProductRule::Clifford;

/// Sum of terms c·x^a ξ^β B^{−N}·e_I with |a| ≤ 1, |β| ≤ 2, N ∈ {0, 1}.
fn symbol(n: u32, allow_inverse: bool) -> impl Strategy<Value = VolterraSymbol> {
    let term = (0..=n, 0..=n, 0..=n, 0..=(allow_inverse as i32), 0u32..(1 << n), -3i64..=3);
    prop::collection::vec(term, 1..5).prop_map(move |ts| {
        let mut acc: Option<VolterraSymbol> = None;
        for (xv, x1, x2, np, mask, c) in ts {
            let x = if xv < n { Monomial::var(xv) } else { Monomial::ONE };
            let mut xi = Monomial::ONE;
            for v in [x1, x2] {
                if v < n {
                    xi = xi.raise(v);
                }
            }
            let coeff = FormElement::from_blade(n, mask, Matrix::scalar(1, Cyclo8::from_int(c)));
            let t = VolterraSymbol::term(SymKey::new(x, xi, np), coeff, CL);
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t).unwrap(),
            });
        }
        acc.unwrap()
    })
    .prop_filter("nonzero", |s| !s.is_zero())
}

fn sym_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(-2i64..=2, n * n).prop_map(move |v| {
        (0..n).map(|i| (0..n).map(|j| rat(v[i.min(j) * n + i.max(j)], 1)).collect()).collect()
    })
}

fn curvature(n: usize) -> impl Strategy<Value = CurvatureData> {
    (sym_matrix(n), sym_matrix(n), 1i64..=3).prop_map(move |(h1, h2, d)| {
        CurvatureData::from_symmetric_forms(n as u32, &[(rat(1, d), h1), (rat(-1, 2), h2)], 1, Vec::new()).unwrap()
    })
}

proptest! {
    #![proptest_config(config(20))]

    #[test]
    fn composition_associative(a in symbol(2, false), b in symbol(2, false), c in symbol(2, false)) {
        let ab_c = a.compose(&b, None).unwrap().compose(&c, None).unwrap();
        let a_bc = a.compose(&b.compose(&c, None).unwrap(), None).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn getzler_filtration(a in symbol(3, true), b in symbol(3, false)) {
        let (m1, p1) = model_operator(&a).unwrap();
        let (m2, p2) = model_operator(&b).unwrap();
        let prod = a.compose(&b, None).unwrap();
        let models = p1.compose(&p2, None).unwrap();
        if models.is_zero() {
            prop_assert!(prod.is_zero() || getzler_order(&prod).unwrap() < m1 + m2);
        } else {
            prop_assert_eq!(getzler_order(&prod).unwrap(), m1 + m2);
            prop_assert_eq!(getzler_part(&prod, m1 + m2), models);
        }
    }

    #[test]
    fn model_is_homogeneous(a in symbol(3, true)) {
        let (m, model) = model_operator(&a).unwrap();
        prop_assert_eq!(model.rule(), ProductRule::Wedge);
        prop_assert_eq!(getzler_order(&model).unwrap(), m);
        prop_assert_eq!(getzler_part(&a, m).with_rule(CL), model.with_rule(CL));
    }
}

proptest! {
    #![proptest_config(config(6))]

    #[test]
    fn dirac_parametrix_two_sided(c in curvature(3)) {
        let p = lichnerowicz_symbol(&c).unwrap().symbol;
        let q = parametrix(&p, 3, 2).unwrap().symbol;
        let p = p.add(&VolterraSymbol::i_tau(3, 1, CL)).unwrap();
        let right = p.compose(&q, Some(3)).unwrap().at_origin();
        prop_assert!(right.is_one(), "right {:?}", right);
        let left = q.compose(&p, Some(3)).unwrap();
        prop_assert!(left.is_one(), "left {:?}", left);
    }

    #[test]
    fn odd_components_integrate_to_zero(c in curvature(3)) {
        let p = laplace_beltrami_symbol(&c).unwrap().symbol;
        let q = parametrix(&p, 3, 0).unwrap().symbol;
        prop_assert!(radial_eval(&q.component(-3)).is_zero());
        prop_assert!(radial_eval(&q.component(-5)).is_zero());
        prop_assert!(!radial_eval(&q.component(-4)).is_zero() || c.kappa() == &rat(0, 1));
    }

    #[test]
    fn mehler_at_origin_is_a_hat(c in curvature(4), t in 1i64..=3) {
        let m = FormMatrix::riemann(&c);
        let zero: Vec<Rational> = (0..4).map(|_| rat(0, 1)).collect();
        let v = mehler_kernel(&m, &zero, &rat(t, 1)).unwrap();
        let scaled = m.scale(&rat(t, 1));
        prop_assert_eq!(v.form, a_hat_form(&scaled).scale_ext(&ExtScalar::four_pi_pow_neg_half(4)));
    }
}

#[test]
fn model_of_dirac_square_inverts_model_parametrix() {
    // Q_(−2) # (D²)_(2) = 1 in the Wedge calculus
    let h: Vec<Vec<Rational>> = (0..4).map(|i| (0..4).map(|j| rat(((i + j) % 3) as i64 - 1 + (i == j) as i64, 1)).collect()).collect();
    let c = CurvatureData::from_symmetric_forms(4, &[(rat(1, 2), h)], 1, Vec::new()).unwrap();
    let p = lichnerowicz_symbol(&c).unwrap().symbol;
    let heat = p.add(&VolterraSymbol::i_tau(4, 1, CL)).unwrap();
    let q = parametrix(&p, 4, 2).unwrap().symbol;
    let (mh, model_h) = model_operator(&heat).unwrap();
    let (mq, model_q) = model_operator(&q).unwrap();
    assert_eq!((mh, mq), (2, -2));
    let prod = model_q.compose(&model_h, Some(4)).unwrap();
    assert!(getzler_part(&prod, 0).at_origin().is_one());
}
