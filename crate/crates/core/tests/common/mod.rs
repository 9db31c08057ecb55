#![allow(dead_code)]

use oscsync_core::analysis::NetworkSpec;
use oscsync_core::graphs::CouplingGraph;
use oscsync_core::linalg::ComplexMatrix;
use oscsync_core::Complex64;

pub fn graph(q: usize, edges: &[(usize, usize, f64)]) -> CouplingGraph {
    CouplingGraph::new(q, edges.iter().copied()).unwrap()
}

pub fn edgeless(q: usize) -> CouplingGraph {
    CouplingGraph::edgeless(q).unwrap()
}

/// Six LC tanks: one capacitor (2–3), one resistor (4–5) and three
/// inductors (1–2, 3–4, 5–6).
pub fn six_tank(m0: f64, k0: f64) -> NetworkSpec {
    NetworkSpec::new(
        graph(6, &[(2, 3, 0.375)]),
        graph(6, &[(4, 5, 1.0)]),
        graph(6, &[(1, 2, 2.0), (3, 4, 2.0), (5, 6, 1.5)]),
        m0,
        k0,
    )
    .unwrap()
}

pub const SIX_TANK_SYNC: [(f64, f64); 6] = [
    (0.0, 0.0),
    (0.0078, -0.1409),
    (0.0088, 1.5747),
    (0.0434, 1.9338),
    (0.4452, 0.1386),
    (0.4947, 1.4484),
];

pub const SIX_TANK_NONSYNC: [(f64, f64); 6] = [
    (0.0, 0.0),
    (0.0, 3.0),
    (0.0107, -0.2436),
    (0.0996, 3.8647),
    (0.8666, 0.2996),
    (1.0230, 2.7936),
];

/// Characteristic polynomial coefficients (monic, highest degree last) by
/// the Faddeev–LeVerrier recursion.
pub fn char_poly(a: &ComplexMatrix) -> Vec<Complex64> {
    let n = a.rows();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    let mut m = ComplexMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a.matmul(&m).unwrap();
        for i in 0..n {
            next[(i, i)] += coeffs[n - k + 1];
        }
        m = next;
        let am = a.matmul(&m).unwrap();
        coeffs[n - k] = -am.trace() / k as f64;
    }
    coeffs
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Roots of a monic polynomial by Durand–Kerner iteration.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let seed = Complex64::new(0.4, 0.9);
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = horner(coeffs, z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

/// Eigenvalues through the characteristic polynomial.
pub fn oracle_eigenvalues(a: &ComplexMatrix) -> Vec<Complex64> {
    poly_roots(&char_poly(a))
}

/// Greedy multiset distance: max over `got` of the distance to its nearest
/// unused partner in `want`.
pub fn multiset_distance(got: &[Complex64], want: &[Complex64]) -> f64 {
    assert_eq!(got.len(), want.len());
    let mut used = vec![false; want.len()];
    let mut worst = 0.0f64;
    for g in got {
        let (k, d) = want
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, w)| (k, (g - w).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        used[k] = true;
        worst = worst.max(d);
    }
    worst
}
