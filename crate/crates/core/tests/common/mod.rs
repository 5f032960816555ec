#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use twrc::discrete::{Alphabets, DmTwrc, InputDistribution};
use twrc::GaussianTwrc;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Log-uniform powers and noises over three decades; powers are sometimes zero.
pub fn random_channel(rng: &mut StdRng) -> GaussianTwrc {
    let power = |rng: &mut StdRng| {
        if rng.random_bool(0.05) {
            0.0
        } else {
            10f64.powf(rng.random_range(-1.0..2.0))
        }
    };
    let p1 = power(rng);
    let p2 = power(rng);
    let pr = power(rng);
    let noise = |rng: &mut StdRng| 10f64.powf(rng.random_range(-1.0..2.0));
    let (n1, n2, nr) = (noise(rng), noise(rng), noise(rng));
    GaussianTwrc::new(p1, p2, pr, n1, n2, nr).unwrap()
}

pub fn random_pmf(rng: &mut StdRng, n: usize) -> Vec<f64> {
    // occasional exact zeros exercise the 0·log 0 convention
    let raw: Vec<f64> = (0..n)
        .map(|_| if rng.random_bool(0.1) { 0.0 } else { rng.random_range(0.0..1.0) })
        .collect();
    let total: f64 = raw.iter().sum();
    if total == 0.0 {
        let mut v = vec![0.0; n];
        v[0] = 1.0;
        return v;
    }
    raw.into_iter().map(|x| x / total).collect()
}

pub fn random_dm(rng: &mut StdRng) -> DmTwrc {
    let a = Alphabets::binary_inputs(rng.random_range(1..=3), rng.random_range(1..=3), rng.random_range(1..=3));
    let rows: Vec<Vec<f64>> = (0..a.inputs()).map(|_| random_pmf(rng, a.outputs())).collect();
    DmTwrc::new(a, rows.concat()).unwrap()
}

/// Random factorized input law with `U1 = f(X1)` for a random map `f`.
pub fn random_input_with_u1_function(rng: &mut StdRng) -> InputDistribution {
    let p_x1 = random_pmf(rng, 2);
    let f: Vec<usize> = (0..2).map(|_| rng.random_range(0..2)).collect();
    let mut p_u1x1 = vec![0.0; 4];
    for (x, &p) in p_x1.iter().enumerate() {
        p_u1x1[f[x] * 2 + x] = p;
    }
    InputDistribution::new(2, p_u1x1, 2, random_pmf(rng, 4), random_pmf(rng, 2)).unwrap()
}

pub fn random_input(rng: &mut StdRng) -> InputDistribution {
    InputDistribution::new(2, random_pmf(rng, 4), 2, random_pmf(rng, 4), random_pmf(rng, 2)).unwrap()
}
