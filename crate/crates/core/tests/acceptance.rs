//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use oscsync_core::analysis::{
    build_lambda, kernel_oracle, make_pq_split_instance, sync_band, test_edge_isolated,
    test_general, test_position_velocity, test_velocity_only, NetworkSpec,
};
use oscsync_core::circuit::{
    netlist_to_network, node_equations, uncoupled_frequency, Coupler, CouplerKind, Netlist, Tank,
};
use oscsync_core::generate::{Family, NetworkSampler};
use oscsync_core::linalg::{norm, sym_eig};
use oscsync_core::simulate::{
    classify_trajectory, simulate, witness_initial_state, witness_mode, SimConfig, TrajectoryClass,
};
use oscsync_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn listing_error(got: &[Complex64], want: &[(f64, f64)], skip: &[usize]) -> f64 {
    got.iter()
        .zip(want)
        .enumerate()
        .filter(|(k, _)| !skip.contains(k))
        .map(|(_, (z, &(re, im)))| (z.re - re).abs().max((z.im - im).abs()))
        .fold(0.0, f64::max)
}

fn golden_sync() -> Outcome {
    let net = six_tank(2.0, 2.0);
    let start = Instant::now();
    let v = test_general(&net).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let err = listing_error(v.spectrum.values(), &SIX_TANK_SYNC, &[]);
    ensure(err <= 5e-4, || {
        format!("max component error {err:.2e} > 5e-4")
    })?;
    ensure(v.synchronizes, || "verdict is not synchronizing".into())?;
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "max component error {err:.1e}, runtime {elapsed:?}"
    ))
}

fn golden_nonsync() -> Outcome {
    let net = six_tank(1.0, 1.0);
    let lap = build_lambda(&net).map_err(|e| e.to_string())?;
    let eps = sync_band(lap.lambda.frobenius_norm());
    let v = test_general(&net).map_err(|e| e.to_string())?;
    let l2 = v.lambda2.ok_or("no second eigenvalue")?;
    ensure(l2.re.abs() <= eps, || {
        format!("|Re λ2| = {:.2e} > ε_sync", l2.re.abs())
    })?;
    let d = (l2 - Complex64::new(0.0, 3.0)).norm();
    ensure(d <= 1e-6, || format!("|λ2 − j3| = {d:.2e}"))?;
    let err = listing_error(v.spectrum.values(), &SIX_TANK_NONSYNC, &[1]);
    ensure(err <= 5e-4, || {
        format!("max component error {err:.2e} > 5e-4")
    })?;
    ensure(!v.synchronizes, || "verdict is synchronizing".into())?;
    Ok(format!("|λ2 − j3| = {d:.1e}, others within {err:.1e}"))
}

fn parameter_dependence() -> Outcome {
    let a = six_tank(2.0, 2.0);
    let b = six_tank(1.0, 1.0);
    ensure(
        a.inertial() == b.inertial()
            && a.dissipative() == b.dissipative()
            && a.restorative() == b.restorative(),
        || "couplings differ".into(),
    )?;
    ensure(a.omega0() == 1.0 && b.omega0() == 1.0, || {
        "ω0 differs from 1".into()
    })?;
    let va = test_general(&a).map_err(|e| e.to_string())?.synchronizes;
    let vb = test_general(&b).map_err(|e| e.to_string())?.synchronizes;
    ensure(va && !vb, || format!("verdicts {va} / {vb}"))?;
    Ok("ω0 = 1 in both; (2,2) synchronizes, (1,1) does not".into())
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut sampler = NetworkSampler::new(0x5eed_0001, 6);
    let mut nonsync = 0;
    for n in 0..200 {
        let net = sampler.sample(Family::General);
        let v = test_general(&net).map_err(|e| e.to_string())?;
        let w = kernel_oracle(&net).map_err(|e| e.to_string())?;
        ensure(w.is_some() != v.synchronizes, || {
            format!(
                "network #{n}: witness {} vs synchronizes {}",
                w.is_some(),
                v.synchronizes
            )
        })?;
        if let Some(w) = w {
            nonsync += 1;
            let k_scale = net.augmented_stiffness().scale();
            let m_scale = net.augmented_inertia().scale();
            let pencil_scale = k_scale + w.omega * w.omega * m_scale;
            let b_scale = net.dissipative().laplacian().scale();
            ensure(w.residual_pencil <= 1e-8 * pencil_scale, || {
                format!("network #{n}: pencil residual {:.2e}", w.residual_pencil)
            })?;
            ensure(w.residual_b <= 1e-8 * b_scale, || {
                format!("network #{n}: B residual {:.2e}", w.residual_b)
            })?;
            ensure(w.distance_from_consensus >= 1e-6 && w.omega > 0.0, || {
                format!("network #{n}: degenerate witness")
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "200/200 agree ({nonsync} non-synchronizing), {elapsed:?}"
    ))
}

fn reduction_identities() -> Outcome {
    let mut sampler = NetworkSampler::new(0x5eed_0002, 6);
    for n in 0..100 {
        let net = sampler.sample(Family::NoInertial);
        let g = test_general(&net).map_err(|e| e.to_string())?.synchronizes;
        let t2 = test_position_velocity(net.dissipative(), net.restorative(), net.m0(), net.k0())
            .map_err(|e| e.to_string())?
            .synchronizes;
        ensure(g == t2, || {
            format!("M-edgeless #{n}: general {g}, position-velocity {t2}")
        })?;
    }
    for n in 0..100 {
        let net = sampler.sample(Family::DissipativeOnly);
        let g = test_general(&net).map_err(|e| e.to_string())?.synchronizes;
        let t1 = test_velocity_only(net.dissipative(), net.m0(), net.k0())
            .map_err(|e| e.to_string())?
            .synchronizes;
        ensure(g == t1, || {
            format!("M,K-edgeless #{n}: general {g}, velocity-only {t1}")
        })?;
    }
    Ok("100/100 and 100/100 agree".into())
}

fn connected_b_soundness() -> Outcome {
    let mut sampler = NetworkSampler::new(0x5eed_0003, 6);
    for n in 0..100 {
        let net = sampler.sample(Family::ConnectedDissipative);
        let v = test_general(&net).map_err(|e| e.to_string())?;
        ensure(v.synchronizes, || {
            format!("network #{n}: margin {:?}", v.margin)
        })?;
    }
    Ok("100/100 synchronize".into())
}

fn edge_isolated_independence() -> Outcome {
    let mut sampler = NetworkSampler::new(0x5eed_0004, 6);
    let mut nonsync = 0;
    for n in 0..100 {
        let base = sampler.sample(Family::EdgeIsolated);
        let iso = test_edge_isolated(&base)
            .map_err(|e| e.to_string())?
            .synchronizes;
        let mut seen = None;
        for _ in 0..5 {
            let (m0, k0) = sampler.parameters();
            let net = base.with_parameters(m0, k0).map_err(|e| e.to_string())?;
            let g = test_general(&net).map_err(|e| e.to_string())?.synchronizes;
            ensure(g == iso, || {
                format!("network #{n} at ({m0}, {k0}): general {g}, Γ test {iso}")
            })?;
            ensure(seen.is_none_or(|s| s == g), || {
                format!("network #{n}: verdict changed")
            })?;
            seen = Some(g);
        }
        if !iso {
            nonsync += 1;
        }
    }
    Ok(format!(
        "500/500 agree, constant per network ({nonsync} non-synchronizing)"
    ))
}

fn psd_splitting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut counts = [0usize; 3];
    for n in 0..100u64 {
        let q = rng.random_range(2..=8);
        let (p, qm) = make_pq_split_instance(n, q);
        let scale = p.scale().max(qm.scale());
        let diff = p
            .as_matrix()
            .try_sub(qm.as_matrix())
            .map_err(|e| e.to_string())?;
        let diff = oscsync_core::linalg::RealSymMatrix::new(diff).map_err(|e| e.to_string())?;
        let eig = sym_eig(&diff).map_err(|e| e.to_string())?;
        for (mu, eta) in eig.values.iter().zip(eig.vectors.vectors()) {
            let pe = p.as_matrix().mul_vec(eta).map_err(|e| e.to_string())?;
            let qe = qm.as_matrix().mul_vec(eta).map_err(|e| e.to_string())?;
            let shifted = |v: &[f64], s: f64| -> f64 {
                norm(
                    &v.iter()
                        .zip(eta)
                        .map(|(a, b)| a - s * b)
                        .collect::<Vec<_>>(),
                )
            };
            let (r1, r2, case) = if *mu > 1e-9 * scale {
                (shifted(&pe, *mu), norm(&qe), 0)
            } else if *mu < -1e-9 * scale {
                (norm(&pe), shifted(&qe, -*mu), 1)
            } else {
                (norm(&pe), norm(&qe), 2)
            };
            counts[case] += 1;
            ensure(r1 <= 1e-8 * scale && r2 <= 1e-8 * scale, || {
                format!("instance {n}: μ = {mu:e}, residuals {r1:.2e}, {r2:.2e}")
            })?;
        }
    }
    Ok(format!(
        "all eigenpairs split (μ>0: {}, μ<0: {}, μ=0: {})",
        counts[0], counts[1], counts[2]
    ))
}

fn simulation_corroboration() -> Outcome {
    let net = six_tank(2.0, 2.0);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let x0: Vec<f64> = (0..6).map(|_| rng.random_range(-1.0..1.0)).collect();
    let cfg = SimConfig::for_network(&net, None, 2000.0, 1).map_err(|e| e.to_string())?;
    let tr = simulate(&net, &x0, &[0.0; 6], &cfg).map_err(|e| e.to_string())?;
    let c = classify_trajectory(&tr).map_err(|e| e.to_string())?;
    ensure(
        c.class == TrajectoryClass::SyncTrending && c.ratio() <= 0.5,
        || format!("sync case classified {} (ratio {:.3})", c.class, c.ratio()),
    )?;
    let slack = 1e-6 * (1.0 + tr.energy[0]);
    let worst_rise = tr
        .energy
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    ensure(worst_rise <= slack, || {
        format!("energy rose by {worst_rise:.2e}")
    })?;
    let sync_ratio = c.ratio();

    let net = six_tank(1.0, 1.0);
    let w = kernel_oracle(&net)
        .map_err(|e| e.to_string())?
        .ok_or("no witness for the non-synchronizing case")?;
    ensure((w.omega - 2.0).abs() < 1e-9, || {
        format!("witness ω = {}", w.omega)
    })?;
    let (x0, v0) = witness_initial_state(&w);
    let horizon = 20.0 * 2.0 * PI / net.omega0();
    let cfg = SimConfig::for_network(&net, None, horizon, 1).map_err(|e| e.to_string())?;
    let tr = simulate(&net, &x0, &v0, &cfg).map_err(|e| e.to_string())?;
    let c = classify_trajectory(&tr).map_err(|e| e.to_string())?;
    ensure(
        c.class == TrajectoryClass::Persistent && c.ratio() >= 0.9,
        || {
            format!(
                "witness case classified {} (ratio {:.3})",
                c.class,
                c.ratio()
            )
        },
    )?;
    let amplitude = x0.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let twenty_periods = 20.0 * 2.0 * PI / w.omega;
    let deviation = tr
        .times
        .iter()
        .zip(&tr.positions)
        .filter(|(t, _)| **t <= twenty_periods)
        .map(|(t, x)| {
            let exact = witness_mode(&w, *t);
            x.iter()
                .zip(&exact)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
        / amplitude;
    ensure(deviation <= 1e-4, || {
        format!("mode deviation {deviation:.2e}")
    })?;
    Ok(format!(
        "sync ratio {sync_ratio:.2e}, witness ratio {:.3}, mode deviation {deviation:.1e}",
        c.ratio()
    ))
}

fn circuit_fidelity() -> Outcome {
    let (c0, l0, c31, r23, l12) = (2.0, 0.5, 0.25, 2.0, 4.0);
    let nl = Netlist::new(
        Tank { c0, l0 },
        vec![
            Coupler {
                kind: CouplerKind::Capacitor,
                i: 3,
                j: 1,
                value: c31,
            },
            Coupler {
                kind: CouplerKind::Resistor,
                i: 2,
                j: 3,
                value: r23,
            },
            Coupler {
                kind: CouplerKind::Inductor,
                i: 1,
                j: 2,
                value: l12,
            },
        ],
    )
    .map_err(|e| e.to_string())?;
    let net = netlist_to_network(&nl, 3).map_err(|e| e.to_string())?;
    let eqs = node_equations(&net);
    // coefficient rows of ẍ, ẋ, x as displayed for the three-tank circuit
    let expected: [[[f64; 3]; 3]; 3] = [
        [
            [c0 + c31, 0.0, -c31],
            [0.0, 0.0, 0.0],
            [1.0 / l0 + 1.0 / l12, -1.0 / l12, 0.0],
        ],
        [
            [0.0, c0, 0.0],
            [0.0, 1.0 / r23, -1.0 / r23],
            [-1.0 / l12, 1.0 / l0 + 1.0 / l12, 0.0],
        ],
        [
            [-c31, 0.0, c0 + c31],
            [0.0, -1.0 / r23, 1.0 / r23],
            [0.0, 0.0, 1.0 / l0],
        ],
    ];
    for (node, (eq, want)) in eqs.iter().zip(&expected).enumerate() {
        ensure(
            eq.accel == want[0] && eq.velocity == want[1] && eq.position == want[2],
            || format!("node {} equation {eq:?} differs from {want:?}", node + 1),
        )?;
    }

    let tank = Netlist::new(Tank { c0: 2.0, l0: 0.5 }, Vec::new()).map_err(|e| e.to_string())?;
    let net = netlist_to_network(&tank, 6).map_err(|e| e.to_string())?;
    ensure((net.m0(), net.k0()) == (2.0, 2.0), || {
        format!("(m0, k0) = ({}, {})", net.m0(), net.k0())
    })?;
    ensure(uncoupled_frequency(&tank) == 1.0, || {
        "ω0 differs from 1".into()
    })?;
    Ok("three node equations exact; tank (2 F, 0.5 H) gives (2, 2), ω0 = 1".into())
}

fn integrator_order() -> Outcome {
    let e = edgeless(1);
    let net = NetworkSpec::new(e.clone(), e.clone(), e, 1.0, 1.0).map_err(|e| e.to_string())?;
    let max_err = |dt: f64| -> Result<f64, String> {
        let cfg = SimConfig::for_network(&net, Some(dt), 20.0, 1).map_err(|e| e.to_string())?;
        let tr = simulate(&net, &[1.0], &[0.0], &cfg).map_err(|e| e.to_string())?;
        Ok(tr
            .times
            .iter()
            .zip(&tr.positions)
            .map(|(t, x)| (x[0] - t.cos()).abs())
            .fold(0.0, f64::max))
    };
    let coarse = max_err(0.05)?;
    let fine = max_err(0.025)?;
    let ratio = coarse / fine;
    ensure((8.0..=32.0).contains(&ratio), || {
        format!("error ratio {ratio:.2}")
    })?;
    Ok(format!(
        "error ratio {ratio:.2} ({coarse:.2e} -> {fine:.2e})"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("golden spectrum, synchronizing case", golden_sync),
        ("golden spectrum, non-synchronizing case", golden_nonsync),
        ("parameter dependence at equal ω0", parameter_dependence),
        ("kernel oracle ⟺ second-eigenvalue test", oracle_equivalence),
        (
            "reduction to velocity / position-velocity tests",
            reduction_identities,
        ),
        (
            "connected dissipative graph is sufficient",
            connected_b_soundness,
        ),
        (
            "edge-isolated test and parameter independence",
            edge_isolated_independence,
        ),
        ("PSD splitting with PQ = 0", psd_splitting),
        ("time-domain corroboration", simulation_corroboration),
        ("circuit mapping fidelity", circuit_fidelity),
        ("RK4 order check", integrator_order),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail}", k + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {:>2}. {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
