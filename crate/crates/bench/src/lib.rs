//! Fixed inputs shared by the benchmarks.

use cuboid_core::{enumerate_rationals, MonicCubic, ParamPair, Rational};

/// `n` pairs spread evenly over the height-`h` grid.
pub fn sample_pairs(height: u64, n: usize) -> Vec<ParamPair> {
    let axis = enumerate_rationals(height);
    let total = axis.len() * axis.len();
    let step = (total / n).max(1);
    (0..total)
        .step_by(step)
        .take(n)
        .map(|k| ParamPair::new(axis[k / axis.len()].clone(), axis[k % axis.len()].clone()))
        .collect()
}

/// Cubics with three known rational roots drawn from the height-`h` grid.
pub fn split_cubics(height: u64, n: usize) -> Vec<MonicCubic> {
    let axis = enumerate_rationals(height);
    let pick = |k: usize| -> &Rational { &axis[(k * 7919) % axis.len()] };
    (0..n)
        .map(|k| MonicCubic::from_roots(pick(3 * k), pick(3 * k + 1), pick(3 * k + 2)))
        .collect()
}
