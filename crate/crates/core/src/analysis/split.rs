use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{RealMatrix, RealSymMatrix};

/// Random symmetric PSD `P`, `Q` of size `q ≥ 2` with `PQ = 0`.
///
/// The index set is shuffled and split into a `P` part, a `Q` part and an
/// optional remainder owned by neither. Each part carries a Gram block
/// `G Gᵀ` whose rank may be deficient, so all three eigenvalue signs of
/// `P − Q` occur.
pub fn make_pq_split_instance(seed: u64, q: usize) -> (RealSymMatrix, RealSymMatrix) {
    assert!(q >= 2, "need at least two indices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx: Vec<usize> = (0..q).collect();
    idx.shuffle(&mut rng);
    let p_len = rng.random_range(1..q);
    let q_len = rng.random_range(1..=q - p_len);
    let p_idx = &idx[..p_len];
    let q_idx = &idx[p_len..p_len + q_len];
    (
        gram_block(&mut rng, q, p_idx),
        gram_block(&mut rng, q, q_idx),
    )
}

fn gram_block(rng: &mut ChaCha8Rng, q: usize, support: &[usize]) -> RealSymMatrix {
    let r = support.len();
    let rank = rng.random_range(1..=r);
    let factor: Vec<Vec<f64>> = (0..r)
        .map(|_| (0..rank).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    let mut m = RealMatrix::zeros(q, q);
    for (a, &i) in support.iter().enumerate() {
        for (b, &j) in support.iter().enumerate() {
            m[(i, j)] = factor[a].iter().zip(&factor[b]).map(|(x, y)| x * y).sum();
        }
    }
    RealSymMatrix::symmetrize(m)
}
