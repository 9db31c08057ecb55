mod common;

use common::*;
use oscsync_core::analysis::{kernel_oracle, test_general};
use oscsync_core::circuit::{
    netlist_to_network, network_to_netlist, node_equations, Coupler, CouplerKind, Netlist, Tank,
};
use oscsync_core::simulate::{
    classify_trajectory, disagreement, energy, simulate, witness_initial_state, SimConfig,
    TrajectoryClass,
};
use oscsync_core::Error;

fn six_tank_netlist() -> Netlist {
    let c = |kind, i, j, value| Coupler { kind, i, j, value };
    Netlist::new(
        Tank { c0: 2.0, l0: 0.5 },
        vec![
            c(CouplerKind::Capacitor, 2, 3, 0.375),
            c(CouplerKind::Resistor, 4, 5, 1.0),
            c(CouplerKind::Inductor, 1, 2, 0.5),
            c(CouplerKind::Inductor, 3, 4, 0.5),
            c(CouplerKind::Inductor, 5, 6, 2.0 / 3.0),
        ],
    )
    .unwrap()
}

#[test]
fn six_tank_netlist_reproduces_coupling_matrices() {
    let net = netlist_to_network(&six_tank_netlist(), 6).unwrap();
    let want = six_tank(2.0, 2.0);
    assert_eq!(net.inertial(), want.inertial());
    assert_eq!(net.dissipative(), want.dissipative());
    for (a, b) in net
        .restorative()
        .edges()
        .iter()
        .zip(want.restorative().edges())
    {
        assert_eq!((a.i, a.j), (b.i, b.j));
        assert!((a.w - b.w).abs() <= 1e-15);
    }
    assert_eq!((net.m0(), net.k0()), (2.0, 2.0));
    assert!(test_general(&net).unwrap().synchronizes);
}

#[test]
fn node_equations_are_kirchhoff_rows() {
    let net = six_tank(2.0, 2.0);
    let eqs = node_equations(&net);
    // node 3: capacitor to node 2, inductor to node 4
    assert_eq!(eqs[2].accel, vec![0.0, -0.375, 2.375, 0.0, 0.0, 0.0]);
    assert_eq!(eqs[2].velocity, vec![0.0; 6]);
    assert_eq!(eqs[2].position, vec![0.0, 0.0, 4.0, -2.0, 0.0, 0.0]);
    // node 5: resistor to node 4, inductor to node 6
    assert_eq!(eqs[4].velocity, vec![0.0, 0.0, 0.0, -1.0, 1.0, 0.0]);
    assert_eq!(eqs[4].position, vec![0.0, 0.0, 0.0, 0.0, 3.5, -1.5]);
}

#[test]
fn network_to_netlist_inverts_values() {
    let nl = network_to_netlist(&six_tank(1.0, 1.0));
    assert_eq!(nl.tank(), Tank { c0: 1.0, l0: 1.0 });
    let inductors: Vec<f64> = nl
        .couplers()
        .iter()
        .filter(|c| c.kind == CouplerKind::Inductor)
        .map(|c| c.value)
        .collect();
    assert_eq!(inductors.len(), 3);
    assert_eq!(inductors[0], 0.5);
    assert_eq!(nl.max_node(), 6);
}

#[test]
fn energy_and_disagreement_definitions() {
    let net = six_tank(2.0, 2.0);
    let x = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    let v = [0.0; 6];
    // ½·(k0 + k12) for a unit displacement of node 1
    assert_eq!(energy(&net, &x, &v).unwrap(), 2.0);
    assert_eq!(disagreement(&[0.5, -1.0, 2.0]), 3.0);
    assert_eq!(disagreement(&[1.0; 4]), 0.0);
}

#[test]
fn consensus_state_stays_synchronized() {
    let net = six_tank(1.0, 1.0);
    let cfg = SimConfig::for_network(&net, None, 130.0, 4).unwrap();
    let tr = simulate(&net, &[0.7; 6], &[0.0; 6], &cfg).unwrap();
    assert!(tr.disagreement.iter().all(|&d| d <= 1e-12));
    let c = classify_trajectory(&tr).unwrap();
    assert_eq!(c.class, TrajectoryClass::SyncTrending);
}

#[test]
fn witness_persists_in_time_domain() {
    let net = six_tank(1.0, 1.0);
    let w = kernel_oracle(&net).unwrap().unwrap();
    let (x0, v0) = witness_initial_state(&w);
    let cfg = SimConfig::for_network(&net, None, 130.0, 1).unwrap();
    let tr = simulate(&net, &x0, &v0, &cfg).unwrap();
    let slack = 1e-6 * tr.energy[0];
    assert!(tr.energy.iter().all(|e| (e - tr.energy[0]).abs() <= slack));
    assert_eq!(
        classify_trajectory(&tr).unwrap().class,
        TrajectoryClass::Persistent
    );
}

#[test]
fn step_is_capped_and_stride_thins_output() {
    let net = six_tank(2.0, 2.0);
    let cfg = SimConfig::for_network(&net, Some(10.0), 20.0, 5).unwrap();
    assert!(cfg.dt() < 10.0);
    let tr = simulate(&net, &[0.0; 6], &[0.0; 6], &cfg).unwrap();
    let gaps: Vec<f64> = tr.times.windows(2).map(|w| w[1] - w[0]).collect();
    let (last, regular) = gaps.split_last().unwrap();
    assert!(regular.iter().all(|g| (g - 5.0 * cfg.dt()).abs() < 1e-9));
    // the final state is always recorded
    assert!(*last > 0.0 && *last <= 5.0 * cfg.dt() + 1e-9);
    assert!(*tr.times.last().unwrap() >= 20.0 - 1e-9);
}

#[test]
fn short_horizon_is_rejected_by_classifier() {
    let net = six_tank(2.0, 2.0);
    let cfg = SimConfig::for_network(&net, None, 10.0, 1).unwrap();
    let tr = simulate(&net, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0], &[0.0; 6], &cfg).unwrap();
    assert!(matches!(
        classify_trajectory(&tr),
        Err(Error::HorizonTooShort { .. })
    ));
}

#[test]
fn invalid_configs_are_rejected() {
    let net = six_tank(2.0, 2.0);
    assert!(SimConfig::for_network(&net, Some(0.0), 10.0, 1).is_err());
    assert!(SimConfig::for_network(&net, Some(-1.0), 10.0, 1).is_err());
    assert!(SimConfig::for_network(&net, None, 10.0, 0).is_err());
    let cfg = SimConfig::for_network(&net, None, 10.0, 1).unwrap();
    assert!(matches!(
        simulate(&net, &[0.0; 5], &[0.0; 6], &cfg),
        Err(Error::DimensionMismatch { .. })
    ));
}
