mod common;

use common::*;
use oscsync_core::analysis::{
    analyze, build_lambda, kernel_oracle, structure, test_connected_b, test_edge_isolated,
    test_general, Method,
};
use oscsync_core::graphs::{are_edge_isolated, graph_union};
use oscsync_core::linalg::{distance_from_consensus, norm, ComplexMatrix};
use oscsync_core::{Complex64, Error};

fn assert_matches_listing(got: &[Complex64], want: &[(f64, f64)], tol: f64) {
    for (k, (z, &(re, im))) in got.iter().zip(want).enumerate() {
        assert!(
            (z.re - re).abs() <= tol && (z.im - im).abs() <= tol,
            "λ{} = {z}, expected {re} + j{im}",
            k + 1
        );
    }
}

#[test]
fn synchronizing_parameters_reproduce_listing() {
    let v = test_general(&six_tank(2.0, 2.0)).unwrap();
    assert!(v.synchronizes);
    assert!(v.parameter_dependent);
    assert_matches_listing(v.spectrum.values(), &SIX_TANK_SYNC, 5e-5);
    let l2 = v.lambda2.unwrap();
    assert!((l2 - Complex64::new(0.0078, -0.1409)).norm() < 1e-4);
}

#[test]
fn non_synchronizing_parameters_reproduce_listing() {
    let v = test_general(&six_tank(1.0, 1.0)).unwrap();
    assert!(!v.synchronizes);
    assert_eq!(v.margin, Some(0.0));
    let l2 = v.lambda2.unwrap();
    assert!((l2 - Complex64::new(0.0, 3.0)).norm() < 1e-9, "{l2}");
    assert_matches_listing(v.spectrum.values(), &SIX_TANK_NONSYNC, 5e-5);
}

#[test]
fn listing_agrees_with_characteristic_polynomial() {
    for (m0, k0) in [(2.0, 2.0), (1.0, 1.0)] {
        let lap = build_lambda(&six_tank(m0, k0)).unwrap();
        let v = test_general(&six_tank(m0, k0)).unwrap();
        let oracle = oracle_eigenvalues(&lap.lambda);
        assert!(multiset_distance(v.spectrum.values(), &oracle) < 1e-7);
    }
}

#[test]
fn complex_laplacian_invariants() {
    for (m0, k0) in [(2.0, 2.0), (1.0, 1.0), (0.3, 7.0)] {
        let lap = build_lambda(&six_tank(m0, k0)).unwrap();
        let scale = lap.lambda.frobenius_norm().max(1.0);
        let ones = vec![Complex64::new(1.0, 0.0); 6];
        assert!(norm(&lap.lambda.mul_vec(&ones).unwrap()) <= 1e-9 * scale);
        assert!(
            lap.lambda
                .try_sub(&lap.lambda.transpose())
                .unwrap()
                .frobenius_norm()
                <= 1e-10
        );
        let rebuilt = ComplexMatrix::from_parts(
            lap.d.as_matrix(),
            &lap.r.shifted(-lap.omega0_sq).into_matrix(),
        )
        .unwrap();
        assert!(rebuilt.try_sub(&lap.lambda).unwrap().frobenius_norm() <= 1e-10);
        let v = test_general(&six_tank(m0, k0)).unwrap();
        assert!(v.spectrum.iter().all(|z| z.re >= -1e-8 * scale));
        assert_eq!(v.spectrum.classified_re(1), Some(0.0));
    }
}

#[test]
fn same_frequency_opposite_verdicts() {
    let a = six_tank(2.0, 2.0);
    let b = six_tank(1.0, 1.0);
    assert_eq!(a.omega0(), b.omega0());
    assert_ne!(
        test_general(&a).unwrap().synchronizes,
        test_general(&b).unwrap().synchronizes
    );
}

#[test]
fn witness_for_non_synchronizing_case() {
    let net = six_tank(1.0, 1.0);
    let w = kernel_oracle(&net).unwrap().expect("witness expected");
    assert!((w.omega - 2.0).abs() < 1e-9, "{}", w.omega);
    assert!((w.mu - 3.0).abs() < 1e-9);
    assert!(w.residual_pencil <= 1e-8 && w.residual_b <= 1e-8);
    assert!(w.distance_from_consensus >= 1e-6);
    assert!((norm(&w.xi) - 1.0).abs() < 1e-12);

    // direct residual check of the stacked kernel equation
    let xi: Vec<f64> = w.xi.iter().map(|z| z.re).collect();
    let k_a = net.augmented_stiffness();
    let m_a = net.augmented_inertia();
    let kx = k_a.as_matrix().mul_vec(&xi).unwrap();
    let mx = m_a.as_matrix().mul_vec(&xi).unwrap();
    let top: Vec<f64> = kx.iter().zip(&mx).map(|(k, m)| k - 4.0 * m).collect();
    let bottom = net
        .dissipative()
        .laplacian()
        .as_matrix()
        .mul_vec(&xi)
        .unwrap();
    assert!(norm(&top) < 1e-9 && norm(&bottom) < 1e-9);
    assert!(distance_from_consensus(&xi) > 0.1);

    assert_eq!(kernel_oracle(&six_tank(2.0, 2.0)).unwrap(), None);
}

#[test]
fn structure_of_the_example() {
    let net = six_tank(2.0, 2.0);
    assert!(!net.dissipative().is_connected());
    assert!(!are_edge_isolated(net.inertial(), net.restorative()).unwrap());
    let union = graph_union(
        &graph_union(net.inertial(), net.dissipative()).unwrap(),
        net.restorative(),
    )
    .unwrap();
    let pairs: Vec<(usize, usize)> = union.edges().iter().map(|e| (e.i, e.j)).collect();
    assert_eq!(pairs, vec![(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]);
    assert!(union.is_connected());
    assert!(!test_general(&six_tank(1.0, 1.0)).unwrap().synchronizes);

    let s = structure(&net).unwrap();
    assert!(!s.b_connected && !s.m_k_edge_isolated && s.union_connected);
    assert_eq!(s.applicable, vec![Method::General]);

    let v = test_connected_b(&net).unwrap();
    assert!(!v.conclusive);
    assert_eq!(test_edge_isolated(&net), Err(Error::NotEdgeIsolated));
}

#[test]
fn reports() {
    let r = analyze(&six_tank(2.0, 2.0)).unwrap();
    assert!(r.synchronizes());
    assert!(!r.verdict(Method::ConnectedBSufficient).unwrap().conclusive);
    assert!(r.verdict(Method::EdgeIsolated).is_none());
    assert!(r.witness.is_none());

    let r = analyze(&six_tank(1.0, 1.0)).unwrap();
    assert!(!r.synchronizes());
    assert!((r.witness.unwrap().omega - 2.0).abs() < 1e-9);
}
