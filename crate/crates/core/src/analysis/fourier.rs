//! Discrete projection of theta-periodic samples onto `cos(n theta)`, `sin(n theta)`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{CamcError, Result};

pub const DEFAULT_MODE_CUTOFF: usize = 12;

/// Minimum number of samples per period accepted for a cutoff `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SamplingPolicy {
    /// `M >= 4N`: leaves headroom for content above the cutoff.
    #[default]
    Conservative,
    /// `M >= 2N + 1`: exact for trigonometric polynomials of degree `<= N`.
    Nyquist,
}

impl SamplingPolicy {
    fn required(&self, n: usize) -> usize {
        match self {
            SamplingPolicy::Conservative => 4 * n,
            SamplingPolicy::Nyquist => 2 * n + 1,
        }
    }
}

/// `f(theta) ~ sum_n a[n] cos(n theta) + b[n] sin(n theta)` for `n = 0..=N`;
/// `b[0]` is always zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierSpectrum {
    pub s: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub cutoff: usize,
}

impl FourierSpectrum {
    pub fn reconstruct(&self, theta: f64) -> f64 {
        (0..=self.cutoff)
            .map(|n| {
                let (sn, cs) = (n as f64 * theta).sin_cos();
                self.a[n] * cs + self.b[n] * sn
            })
            .sum()
    }

    /// Largest `|A_n|`, `|B_n|` over all modes including the mean.
    pub fn max_magnitude(&self) -> f64 {
        self.a.iter().chain(&self.b).fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest magnitude over the non-constant modes `n >= 1`.
    pub fn max_oscillating_magnitude(&self) -> f64 {
        self.a[1..].iter().chain(&self.b[1..]).fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Projects samples at `theta_k = 2 pi k / M` under the default policy.
pub fn fourier_project(s: f64, samples: &[f64], cutoff: usize) -> Result<FourierSpectrum> {
    fourier_project_with(s, samples, cutoff, SamplingPolicy::Conservative)
}

pub fn fourier_project_with(s: f64, samples: &[f64], cutoff: usize, policy: SamplingPolicy) -> Result<FourierSpectrum> {
    let m = samples.len();
    let required = policy.required(cutoff).max(1);
    if m < required {
        return Err(CamcError::AliasingRisk { samples: m, cutoff, required });
    }
    let mut a = vec![0.0; cutoff + 1];
    let mut b = vec![0.0; cutoff + 1];
    for n in 0..=cutoff {
        let (mut ca, mut cb) = (0.0, 0.0);
        for (k, &f) in samples.iter().enumerate() {
            // reduce n*k mod M first so the angle stays in [0, 2 pi)
            let phase = TAU * ((n * k) % m) as f64 / m as f64;
            let (sn, cs) = phase.sin_cos();
            ca += f * cs;
            cb += f * sn;
        }
        // the Nyquist cosine mode has norm M, not M/2
        let w = if n == 0 || 2 * n == m { 1.0 } else { 2.0 };
        a[n] = w * ca / m as f64;
        b[n] = if n == 0 || 2 * n == m { 0.0 } else { 2.0 * cb / m as f64 };
    }
    Ok(FourierSpectrum { s, a, b, cutoff })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(m: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..m).map(|k| f(TAU * k as f64 / m as f64)).collect()
    }

    #[test]
    fn constant_slice() {
        let sp = fourier_project(0.0, &vec![2.5; 64], 12).unwrap();
        assert!((sp.a[0] - 2.5).abs() < 1e-12);
        assert!(sp.max_oscillating_magnitude() < 1e-12);
    }

    #[test]
    fn two_mode_slice() {
        let sp = fourier_project(0.0, &sample(64, |t| 3.0 * (2.0 * t).cos() - (5.0 * t).sin()), 6).unwrap();
        for n in 0..=6 {
            let ea = if n == 2 { 3.0 } else { 0.0 };
            let eb = if n == 5 { -1.0 } else { 0.0 };
            assert!((sp.a[n] - ea).abs() < 1e-12 && (sp.b[n] - eb).abs() < 1e-12, "mode {n}");
        }
    }

    #[test]
    fn aliasing_guard() {
        let err = fourier_project(0.0, &[0.0; 40], 12).unwrap_err();
        assert_eq!(err, CamcError::AliasingRisk { samples: 40, cutoff: 12, required: 48 });
        assert!(fourier_project_with(0.0, &[0.0; 25], 12, SamplingPolicy::Nyquist).is_ok());
        assert!(fourier_project_with(0.0, &[0.0; 24], 12, SamplingPolicy::Nyquist).is_err());
    }

    #[test]
    fn nyquist_mode_on_even_grid() {
        // M = 8, N = 4: cos(4 theta) alternates +-1 on the grid
        let sp = fourier_project_with(0.0, &sample(8, |t| (4.0 * t).cos()), 3, SamplingPolicy::Nyquist).unwrap();
        assert!(sp.max_magnitude() < 1e-12);
        let sp = fourier_project_with(0.0, &sample(9, |t| (4.0 * t).cos()), 4, SamplingPolicy::Nyquist).unwrap();
        assert!((sp.a[4] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reconstruction_at_nodes() {
        let f = |t: f64| 0.3 + t.cos() - 0.25 * (3.0 * t).sin() + 0.1 * (7.0 * t).cos();
        let m = 32;
        let sp = fourier_project(0.0, &sample(m, f), 8).unwrap();
        for k in 0..m {
            let t = TAU * k as f64 / m as f64;
            assert!((sp.reconstruct(t) - f(t)).abs() < 1e-12);
        }
    }
}
