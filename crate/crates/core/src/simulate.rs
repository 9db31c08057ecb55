//! Fixed-step RK4 integration of `M_a x'' + B x' + K_a x = 0`, used to
//! corroborate spectral verdicts in the time domain.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::analysis::{build_lambda, check_positive, KernelWitness, NetworkSpec};
use crate::linalg::{sym_eig, RealMatrix};
use crate::{Error, Result};

/// Upper bound on `dt·ω_max`.
pub const MAX_STEP_PHASE: f64 = 0.05;

/// Horizons shorter than this many uncoupled periods cannot be classified.
pub const MIN_PERIODS: f64 = 20.0;

/// Integration settings. Only constructible through [`SimConfig::for_network`],
/// which caps `dt` so that `dt·ω_max ≤ 0.05`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimConfig {
    dt: f64,
    t_end: f64,
    record_stride: usize,
}

impl SimConfig {
    /// `dt = None` picks the largest step allowed for `net`; a larger
    /// requested step is shrunk to that bound.
    pub fn for_network(
        net: &NetworkSpec,
        dt: Option<f64>,
        t_end: f64,
        record_stride: usize,
    ) -> Result<Self> {
        if let Some(dt) = dt {
            check_positive("dt", dt)?;
        }
        check_positive("t_end", t_end)?;
        if record_stride == 0 {
            return Err(Error::InvalidParameter {
                name: "record_stride",
                value: 0.0,
            });
        }
        let cap = MAX_STEP_PHASE / max_pencil_frequency(net)?;
        let dt = dt.map_or(cap, |dt| dt.min(cap));
        if dt > t_end {
            return Err(Error::InvalidParameter {
                name: "dt",
                value: dt,
            });
        }
        Ok(Self {
            dt,
            t_end,
            record_stride,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn record_stride(&self) -> usize {
        self.record_stride
    }
}

/// `ω_max = √λ_max(M_a^{-1/2} K_a M_a^{-1/2})`.
pub fn max_pencil_frequency(net: &NetworkSpec) -> Result<f64> {
    let lap = build_lambda(net)?;
    let eig = sym_eig(&lap.r)?;
    Ok(libm::sqrt(
        eig.values.last().copied().unwrap_or(lap.omega0_sq),
    ))
}

/// Sampled solution with energy and disagreement diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub positions: Vec<Vec<f64>>,
    pub velocities: Vec<Vec<f64>>,
    pub energy: Vec<f64>,
    pub disagreement: Vec<f64>,
    /// Uncoupled frequency of the simulated network.
    pub omega0: f64,
    pub dt: f64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn q(&self) -> usize {
        self.positions.first().map_or(0, Vec::len)
    }
}

/// `V = ½ xᵀK_a x + ½ vᵀM_a v`.
pub fn energy(net: &NetworkSpec, x: &[f64], v: &[f64]) -> Result<f64> {
    let kx = net.augmented_stiffness().as_matrix().mul_vec(x)?;
    let mv = net.augmented_inertia().as_matrix().mul_vec(v)?;
    Ok(0.5 * dot(x, &kx) + 0.5 * dot(v, &mv))
}

/// `max_i x_i − min_i x_i`, the largest pairwise position gap.
pub fn disagreement(x: &[f64]) -> f64 {
    let (lo, hi) = x
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    if x.is_empty() {
        0.0
    } else {
        hi - lo
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Integrates the network from `(x0, v0)`.
pub fn simulate(net: &NetworkSpec, x0: &[f64], v0: &[f64], cfg: &SimConfig) -> Result<Trajectory> {
    let q = net.q();
    for len in [x0.len(), v0.len()] {
        if len != q {
            return Err(Error::DimensionMismatch {
                expected: q,
                found: len,
            });
        }
    }
    let cap = MAX_STEP_PHASE / max_pencil_frequency(net)?;
    if cfg.dt > cap * (1.0 + 1e-12) {
        return Err(Error::InvalidParameter {
            name: "dt",
            value: cfg.dt,
        });
    }

    // M_a is constant: invert it once through its eigendecomposition
    let m_a = net.augmented_inertia();
    let m_inv = sym_eig(&m_a)?.apply_fn(|l| 1.0 / l);
    let stiff = m_inv
        .as_matrix()
        .matmul(net.augmented_stiffness().as_matrix())?;
    let damp = m_inv
        .as_matrix()
        .matmul(net.dissipative().laplacian().as_matrix())?;
    let system = System { stiff, damp };
    let k_a = net.augmented_stiffness();

    let dt = cfg.dt;
    let steps = libm::ceil(cfg.t_end / dt - 1e-9) as usize;
    let capacity = steps / cfg.record_stride + 2;
    let mut traj = Trajectory {
        times: Vec::with_capacity(capacity),
        positions: Vec::with_capacity(capacity),
        velocities: Vec::with_capacity(capacity),
        energy: Vec::with_capacity(capacity),
        disagreement: Vec::with_capacity(capacity),
        omega0: net.omega0(),
        dt,
    };
    let mut record = |t: f64, x: &[f64], v: &[f64]| -> Result<()> {
        let kx = k_a.as_matrix().mul_vec(x)?;
        let mv = m_a.as_matrix().mul_vec(v)?;
        traj.times.push(t);
        traj.positions.push(x.to_vec());
        traj.velocities.push(v.to_vec());
        traj.energy.push(0.5 * dot(x, &kx) + 0.5 * dot(v, &mv));
        traj.disagreement.push(disagreement(x));
        Ok(())
    };

    let mut x = x0.to_vec();
    let mut v = v0.to_vec();
    record(0.0, &x, &v)?;
    for step in 1..=steps {
        system.rk4_step(&mut x, &mut v, dt);
        let t = step as f64 * dt;
        if !x.iter().chain(&v).all(|z| z.is_finite()) {
            return Err(Error::Divergence { t, dt });
        }
        if step % cfg.record_stride == 0 || step == steps {
            record(t, &x, &v)?;
        }
    }
    Ok(traj)
}

struct System {
    stiff: RealMatrix,
    damp: RealMatrix,
}

impl System {
    /// Acceleration `−M_a⁻¹(B v + K_a x)`.
    fn accel(&self, x: &[f64], v: &[f64], out: &mut [f64]) {
        let q = x.len();
        for (i, o) in out.iter_mut().enumerate() {
            let (ks, bs) = (self.stiff.row(i), self.damp.row(i));
            let mut acc = 0.0;
            for j in 0..q {
                acc += ks[j] * x[j] + bs[j] * v[j];
            }
            *o = -acc;
        }
    }

    fn rk4_step(&self, x: &mut [f64], v: &mut [f64], dt: f64) {
        let q = x.len();
        let mut a1 = alloc::vec![0.0; q];
        let mut a2 = alloc::vec![0.0; q];
        let mut a3 = alloc::vec![0.0; q];
        let mut a4 = alloc::vec![0.0; q];
        let mut xs = alloc::vec![0.0; q];
        let mut vs = alloc::vec![0.0; q];

        self.accel(x, v, &mut a1);
        let v1 = v.to_vec();

        for i in 0..q {
            xs[i] = x[i] + 0.5 * dt * v1[i];
            vs[i] = v[i] + 0.5 * dt * a1[i];
        }
        let v2 = vs.clone();
        self.accel(&xs, &vs, &mut a2);

        for i in 0..q {
            xs[i] = x[i] + 0.5 * dt * v2[i];
            vs[i] = v[i] + 0.5 * dt * a2[i];
        }
        let v3 = vs.clone();
        self.accel(&xs, &vs, &mut a3);

        for i in 0..q {
            xs[i] = x[i] + dt * v3[i];
            vs[i] = v[i] + dt * a3[i];
        }
        let v4 = vs.clone();
        self.accel(&xs, &vs, &mut a4);

        for i in 0..q {
            x[i] += dt / 6.0 * (v1[i] + 2.0 * v2[i] + 2.0 * v3[i] + v4[i]);
            v[i] += dt / 6.0 * (a1[i] + 2.0 * a2[i] + 2.0 * a3[i] + a4[i]);
        }
    }
}

/// Initial state `(Re ξ, Re(jωξ))` that excites exactly the witness mode.
pub fn witness_initial_state(w: &KernelWitness) -> (Vec<f64>, Vec<f64>) {
    let x0 = w.xi.iter().map(|z| z.re).collect();
    let v0 = w.xi.iter().map(|z| -w.omega * z.im).collect();
    (x0, v0)
}

/// Closed-form witness mode `Re(e^{jωt} ξ)`.
pub fn witness_mode(w: &KernelWitness, t: f64) -> Vec<f64> {
    let (c, s) = (libm::cos(w.omega * t), libm::sin(w.omega * t));
    w.xi.iter().map(|z| z.re * c - z.im * s).collect()
}

/// Finite-horizon proxy for the asymptotic synchronization property.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrajectoryClass {
    SyncTrending,
    Persistent,
    Inconclusive,
}

impl TrajectoryClass {
    pub fn as_str(self) -> &'static str {
        match self {
            TrajectoryClass::SyncTrending => "sync_trending",
            TrajectoryClass::Persistent => "persistent",
            TrajectoryClass::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for TrajectoryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classification together with the window maxima it was based on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Classification {
    pub class: TrajectoryClass,
    /// Max disagreement over the first quarter of the horizon.
    pub w_early: f64,
    /// Max disagreement over the last quarter of the horizon.
    pub w_late: f64,
}

impl Classification {
    pub const SYNC_RATIO: f64 = 0.5;
    pub const PERSISTENT_RATIO: f64 = 0.9;

    pub fn ratio(&self) -> f64 {
        if self.w_early == 0.0 {
            0.0
        } else {
            self.w_late / self.w_early
        }
    }
}

/// Compares the late-window disagreement against the early window:
/// `≤ 0.5×` is sync-trending, `≥ 0.9×` persistent, anything between
/// inconclusive. Disagreement that never leaves round-off level counts as
/// synchronized.
pub fn classify_trajectory(traj: &Trajectory) -> Result<Classification> {
    let t_end = traj.times.last().copied().unwrap_or(0.0);
    let required = MIN_PERIODS * 2.0 * PI / traj.omega0;
    if t_end < required * (1.0 - 1e-9) {
        return Err(Error::HorizonTooShort { t_end, required });
    }
    let window_max = |keep: &dyn Fn(f64) -> bool| {
        traj.times
            .iter()
            .zip(&traj.disagreement)
            .filter(|(t, _)| keep(**t))
            .map(|(_, d)| *d)
            .fold(0.0f64, f64::max)
    };
    let w_early = window_max(&|t| t <= 0.25 * t_end);
    let w_late = window_max(&|t| t >= 0.75 * t_end);
    let amplitude = traj
        .positions
        .iter()
        .flatten()
        .fold(1.0f64, |m, x| m.max(libm::fabs(*x)));
    let class = if w_late <= 1e-12 * amplitude || w_late <= Classification::SYNC_RATIO * w_early {
        TrajectoryClass::SyncTrending
    } else if w_late >= Classification::PERSISTENT_RATIO * w_early {
        TrajectoryClass::Persistent
    } else {
        TrajectoryClass::Inconclusive
    };
    Ok(Classification {
        class,
        w_early,
        w_late,
    })
}
