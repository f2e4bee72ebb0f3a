#![allow(dead_code)]

use jacobi_core::enumerate::enumerate;
use jacobi_core::{Frame, Graph, LinComb, Q};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn one() -> Q {
    Q::one()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn single(frame: &Frame, g: &Graph) -> LinComb {
    LinComb::from_graph(frame.clone(), g, Q::one()).unwrap()
}

/// Every enumerated diagram of the frame in degrees `0..=n`, one per combination.
pub fn diagrams_up_to(frame: &Frame, n: usize) -> Vec<LinComb> {
    (0..=n)
        .flat_map(|k| enumerate(frame, k))
        .map(|g| single(frame, &g))
        .collect()
}
