//! Shared fixtures for the criterion benches.

use camc_core::{cyclic_surface, CyclicFamilyParams, FamilyKind, GridSpec, ParametricSurface};

/// The Type I surface with lambda = 2, mu = 0, c = 1 and an interior grid.
pub fn type1_fixture(n_s: usize, n_theta: usize) -> (ParametricSurface, GridSpec) {
    let p = CyclicFamilyParams::new(FamilyKind::TypeI, 2.0, 0.0, 1.0).expect("valid parameters");
    (cyclic_surface(&p), GridSpec::cyclic(-1.4, 1.4, n_s, n_theta))
}

/// One period of `cos 3t + 0.5 sin 7t` at `m` samples.
pub fn trig_samples(m: usize) -> Vec<f64> {
    (0..m)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / m as f64;
            (3.0 * t).cos() + 0.5 * (7.0 * t).sin()
        })
        .collect()
}
