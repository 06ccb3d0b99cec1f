use std::f64::consts::PI;

use proptest::prelude::*;
use spinmom_core::entanglement::{
    bd_boosted_concurrence_closed_form, concurrence_numeric, entanglement_of_formation,
};
use spinmom_core::linalg::{
    c, hermitian_eig, partial_trace_first, partial_trace_second, psd_sqrt, tensor_product,
};
use spinmom_core::states::{bd_density, bell_states, boost_density, boost_state};
use spinmom_core::{
    BellMixture, BoostParameters, ComplexMatrix, SpinOrientation, TwoMomentumGeometry,
};

fn matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(-1.0f64..1.0, 2 * n * n).prop_map(move |v| {
        let data = v.chunks(2).map(|p| c(p[0], p[1])).collect();
        ComplexMatrix::from_vec(n, n, data).unwrap()
    })
}

fn mixture() -> impl Strategy<Value = BellMixture> {
    prop::array::uniform4(0.0f64..1.0).prop_filter_map("zero weights", |w| {
        let s: f64 = w.iter().sum();
        if s < 1e-6 {
            return None;
        }
        let mut p = w.map(|x| x / s);
        p[0] += 1.0 - p.iter().sum::<f64>();
        BellMixture::new(p).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn psd_square_root_squares_back(a in matrix(4)) {
        let m = &a * &a.dagger();
        let r = psd_sqrt(&m).unwrap();
        prop_assert!((&r * &r).max_abs_diff(&m) < 1e-10);
        prop_assert!(r.hermitian_deviation() < 1e-12);
        prop_assert!(hermitian_eig(&r).unwrap().values.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn tensor_product_is_associative(a in matrix(2), b in matrix(2), d in matrix(1)) {
        let left = tensor_product(&tensor_product(&a, &b), &d);
        let right = tensor_product(&a, &tensor_product(&b, &d));
        prop_assert!(left.max_abs_diff(&right) < 1e-14);
    }

    #[test]
    fn partial_traces_of_products(a in matrix(2), b in matrix(2)) {
        let ab = tensor_product(&a, &b);
        let first = partial_trace_first(&ab).unwrap();
        let second = partial_trace_second(&ab).unwrap();
        prop_assert!(first.max_abs_diff(&b.scale(a.trace())) < 1e-13);
        prop_assert!(second.max_abs_diff(&a.scale(b.trace())) < 1e-13);
    }

    #[test]
    fn boost_is_invertible(
        beta in 0.0f64..0.999, r1 in 1.0f64..100.0, r2 in 1.0f64..100.0,
        t1 in 0.0f64..2.0 * PI, t2 in 0.0f64..2.0 * PI,
        xi in 0.0f64..PI, tau in 0.0f64..2.0 * PI, k in 0usize..4,
    ) {
        let boost = BoostParameters::along_x(beta).unwrap();
        let geom = TwoMomentumGeometry::antiparallel(r1, t1).unwrap().with_second(r2, t2).unwrap();
        let psi = bell_states(&SpinOrientation::new(xi, tau).unwrap())[k].clone();
        let u = geom.boost_operator(&boost);
        let there = boost_state(&psi, &boost, &geom).unwrap();
        prop_assert!((&u.dagger() * &there).max_abs_diff(&psi) < 1e-13);
        prop_assert!(u.is_unitary(1e-13));
    }

    #[test]
    fn boost_preserves_bd_spectrum(
        mix in mixture(), beta in 0.0f64..0.999, r in 1.0f64..50.0,
        theta in 0.0f64..2.0 * PI, xi in 0.0f64..PI,
    ) {
        let rho = bd_density(&mix, &SpinOrientation::in_yz_plane(xi).unwrap());
        let geom = TwoMomentumGeometry::antiparallel(r, theta).unwrap();
        let boosted = boost_density(&rho, &BoostParameters::along_x(beta).unwrap(), &geom).unwrap();
        let eig = hermitian_eig(&boosted).unwrap();
        for (v, p) in eig.values.iter().zip(mix.sorted_desc()) {
            prop_assert!((v - p).abs() < 1e-12);
        }
        prop_assert!((boosted.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_form_matches_numeric_antiparallel(
        mix in mixture(), beta in 0.0f64..0.999, r in 1.0f64..50.0,
        theta in 0.0f64..2.0 * PI, xi in 0.0f64..PI,
    ) {
        let spin = SpinOrientation::in_yz_plane(xi).unwrap();
        let boost = BoostParameters::along_x(beta).unwrap();
        let geom = TwoMomentumGeometry::antiparallel(r, theta).unwrap();
        let omega = geom.wigner_angles(&boost).sum();
        let numeric = concurrence_numeric(&boost_density(&bd_density(&mix, &spin), &boost, &geom).unwrap()).unwrap();
        let closed = bd_boosted_concurrence_closed_form(&mix, xi - theta, omega).unwrap();
        for (a, b) in numeric.lambdas.iter().zip(&closed.lambdas) {
            prop_assert!((a - b).abs() < 1e-8);
        }
        prop_assert!((numeric.concurrence - closed.concurrence).abs() < 1e-8);
    }

    #[test]
    fn concurrence_bounds_and_formation_monotone(mix in mixture(), xi in 0.0f64..PI, tau in 0.0f64..2.0 * PI) {
        let cc = concurrence_numeric(&bd_density(&mix, &SpinOrientation::new(xi, tau).unwrap())).unwrap().concurrence;
        prop_assert!((0.0..=1.0).contains(&cc));
        let e = entanglement_of_formation(cc).unwrap();
        prop_assert!((0.0..=1.0).contains(&e));
        prop_assert!(entanglement_of_formation((cc + 0.01).min(1.0)).unwrap() >= e);
    }
}
