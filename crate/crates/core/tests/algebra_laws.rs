use heatsym_core::algebra::{int, rat, supertrace_even, trace_odd, Cyclo8, FormElement, Matrix, ProductRule};
use proptest::prelude::*;
use proptest::test_runner::FileFailurePersistence;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, failure_persistence: Some(Box::new(FileFailurePersistence::Off)), ..ProptestConfig::default() }
}

fn cyclo() -> impl Strategy<Value = Cyclo8> {
    prop::array::uniform4((-4i64..=4, 1i64..=3)).prop_map(|c| {
        Cyclo8::new(rat(c[0].0, c[0].1), rat(c[1].0, c[1].1), rat(c[2].0, c[2].1), rat(c[3].0, c[3].1))
    })
}

fn matrix(p: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, p), p)
        .prop_map(|rows| Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(Cyclo8::from_int).collect()).collect()))
}

fn form(n: u32, p: usize) -> impl Strategy<Value = FormElement> {
    prop::collection::vec((0u32..(1 << n), matrix(p)), 1..5).prop_map(move |ts| {
        let mut f = FormElement::zero(n, p);
        for (mask, m) in ts {
            f.add_assign(&FormElement::from_blade(n, mask, m)).unwrap();
        }
        f
    })
}

/// Definite-parity part of a form.
fn parity(f: &FormElement, odd: bool) -> FormElement {
    f.filter(|mask| (mask.count_ones() % 2 == 1) == odd)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn field_axioms(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(b.clone() + c.clone()), &a * &b + &a * &c);
        prop_assert_eq!(&a * &b, &b * &a);
        if let Some(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, Cyclo8::from_int(1));
        }
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn galois_is_a_ring_map(a in cyclo(), b in cyclo(), k in prop::sample::select(vec![1i64, 3, 5, 7])) {
        prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
        prop_assert_eq!((a.clone() + b.clone()).galois(k), a.galois(k) + b.galois(k));
    }

    #[test]
    fn clifford_associative(a in form(4, 2), b in form(4, 2), c in form(4, 2)) {
        let cl = ProductRule::Clifford;
        let left = a.product(&b, cl).unwrap().product(&c, cl).unwrap();
        let right = a.product(&b.product(&c, cl).unwrap(), cl).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn wedge_associative(a in form(4, 1), b in form(4, 1), c in form(4, 1)) {
        prop_assert_eq!(a.wedge(&b).unwrap().wedge(&c).unwrap(), a.wedge(&b.wedge(&c).unwrap()).unwrap());
    }

    #[test]
    fn supertrace_graded_cyclic(a in form(4, 2), b in form(4, 2), ao in any::<bool>(), bo in any::<bool>()) {
        let (a, b) = (parity(&a, ao), parity(&b, bo));
        let cl = ProductRule::Clifford;
        let ab = supertrace_even(&a.product(&b, cl).unwrap()).unwrap();
        let ba = supertrace_even(&b.product(&a, cl).unwrap()).unwrap();
        let sign = if ao && bo { int(-1) } else { int(1) };
        prop_assert_eq!(ab, ba.scale(&sign));
    }

    #[test]
    fn odd_trace_cyclic(a in form(3, 2), b in form(3, 2)) {
        // the spinor trace is an honest trace on Cl(ℝ³) ⊗ End(ℂᵖ)
        let cl = ProductRule::Clifford;
        let ab = trace_odd(&a.product(&b, cl).unwrap()).unwrap();
        let ba = trace_odd(&b.product(&a, cl).unwrap()).unwrap();
        prop_assert_eq!(ab, ba);
    }
}

#[test]
fn clifford_relations() {
    let cl = ProductRule::Clifford;
    for i in 0..4 {
        for j in 0..4 {
            let ei = FormElement::generator(4, 1, i);
            let ej = FormElement::generator(4, 1, j);
            let anti = ei.product(&ej, cl).unwrap().try_add(&ej.product(&ei, cl).unwrap()).unwrap();
            let expect = if i == j { FormElement::scalar(4, 1, Cyclo8::from_int(-2)) } else { FormElement::zero(4, 1) };
            assert_eq!(anti, expect);
        }
    }
}

#[test]
fn top_traces() {
    let top2 = FormElement::monomial(2, 1, &[0, 1]);
    assert_eq!(supertrace_even(&top2).unwrap().mantissa, Cyclo8::complex(int(0), int(-2)));
    // c(e¹)c(e²)c(e³) acts as (−i)^{2}·… with trace (−i)^{[3/2]+1}2^{[3/2]}
    let top3 = FormElement::monomial(3, 1, &[0, 1, 2]);
    assert_eq!(trace_odd(&top3).unwrap().mantissa, Cyclo8::from_int(-2));
    assert!(trace_odd(&FormElement::generator(3, 1, 0)).unwrap().is_zero());
}
