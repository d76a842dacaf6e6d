use std::collections::BTreeSet;

use crate::lattice::{IntBox, IntegralOrthotope};

use super::GenericizeError;

/// 64-bit linear congruential generator, `x ← a·x + c mod 2^64`, with
/// `a = 6364136223846793005` and `c = 1442695040888963407`. Outputs are the
/// high 32 bits of the state after each step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Lcg {
        Lcg { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(Self::MULTIPLIER).wrapping_add(Self::INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform in `0..n` for `1 <= n <= 2^32`, by rejection.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!((1..=1 << 32).contains(&n), "range out of bounds");
        let zone = (1u64 << 32) - (1u64 << 32) % n;
        loop {
            let x = u64::from(self.next_u32());
            if x < zone {
                return x % n;
            }
        }
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

/// Union of `count` boxes with corners in `[0, extent]^dim` whose `2·count`
/// supporting-hyperplane coordinates are pairwise distinct on every axis.
pub fn random_generic(dim: usize, count: usize, extent: i64, seed: u64) -> Result<IntegralOrthotope, GenericizeError> {
    if count == 0 {
        return Err(GenericizeError::NoBoxes);
    }
    let needed = 2 * count;
    if extent < 0 || ((extent as u128) + 1) < needed as u128 || extent >= 1 << 32 {
        return Err(GenericizeError::ExtentTooSmall { needed, extent });
    }
    let mut rng = Lcg::new(seed);
    let per_axis: Vec<Vec<i64>> = (0..dim)
        .map(|_| {
            distinct_sample(&mut rng, extent as u64 + 1, needed)
                .into_iter()
                .map(|i| i as i64)
                .collect()
        })
        .collect();
    build(dim, count, per_axis, &mut rng)
}

/// As [`random_generic`], drawing every coordinate from `pool` (which must
/// hold at least `2·count` distinct values). Two outputs drawn from disjoint
/// pools share no supporting hyperplane.
pub fn random_generic_with_pool(
    dim: usize,
    count: usize,
    pool: &[i64],
    seed: u64,
) -> Result<IntegralOrthotope, GenericizeError> {
    if count == 0 {
        return Err(GenericizeError::NoBoxes);
    }
    let pool: Vec<i64> = pool.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let needed = 2 * count;
    if pool.len() < needed {
        return Err(GenericizeError::ExtentTooSmall {
            needed,
            extent: pool.len() as i64 - 1,
        });
    }
    let mut rng = Lcg::new(seed);
    let per_axis: Vec<Vec<i64>> = (0..dim)
        .map(|_| {
            distinct_sample(&mut rng, pool.len() as u64, needed)
                .into_iter()
                .map(|i| pool[i as usize])
                .collect()
        })
        .collect();
    build(dim, count, per_axis, &mut rng)
}

/// `k` distinct values of `0..n`, in draw order.
fn distinct_sample(rng: &mut Lcg, n: u64, k: usize) -> Vec<u64> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let x = rng.below(n);
        if seen.insert(x) {
            out.push(x);
        }
    }
    out
}

fn build(
    dim: usize,
    count: usize,
    mut per_axis: Vec<Vec<i64>>,
    rng: &mut Lcg,
) -> Result<IntegralOrthotope, GenericizeError> {
    for coords in &mut per_axis {
        rng.shuffle(coords);
    }
    let boxes: Vec<IntBox> = (0..count)
        .map(|i| {
            let lo = per_axis.iter().map(|c| c[2 * i].min(c[2 * i + 1])).collect();
            let hi = per_axis.iter().map(|c| c[2 * i].max(c[2 * i + 1])).collect();
            (lo, hi)
        })
        .collect();
    Ok(IntegralOrthotope::from_boxes(dim, &boxes, 1)?)
}
