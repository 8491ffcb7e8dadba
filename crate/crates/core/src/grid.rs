//! Intervals and sampling grids over parameter rectangles.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{CamcError, Result};

/// A real interval with independently open or closed endpoints.
///
/// Infinite endpoints are allowed and are always treated as open.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn open(lo: f64, hi: f64) -> Self {
        Self { lo, hi, lo_closed: false, hi_closed: false }
    }

    pub fn closed(lo: f64, hi: f64) -> Self {
        Self { lo, hi, lo_closed: true, hi_closed: true }
    }

    /// `(lo, hi]`
    pub fn half_open_left(lo: f64, hi: f64) -> Self {
        Self { lo, hi, lo_closed: false, hi_closed: true }
    }

    pub fn real_line() -> Self {
        Self::open(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn contains(&self, x: f64) -> bool {
        if x.is_nan() {
            return false;
        }
        let above = if self.lo_closed && self.lo.is_finite() { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed && self.hi.is_finite() { x <= self.hi } else { x < self.hi };
        above && below
    }

    /// Strict interior membership, ignoring closed endpoints.
    pub fn contains_interior(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn is_empty(&self) -> bool {
        !(self.lo < self.hi)
    }

    /// Interval pulled in by `margin` at each finite endpoint.
    pub fn shrink(&self, margin: f64) -> Self {
        let lo = if self.lo.is_finite() { self.lo + margin } else { self.lo };
        let hi = if self.hi.is_finite() { self.hi - margin } else { self.hi };
        Self { lo, hi, lo_closed: self.lo_closed, hi_closed: self.hi_closed }
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }
}

/// A rectangle `s_range x theta_range` in parameter space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamRect {
    pub s: Interval,
    pub theta: Interval,
}

impl ParamRect {
    pub fn new(s: Interval, theta: Interval) -> Self {
        Self { s, theta }
    }

    /// `s` restricted to `s_range`, `theta` unrestricted.
    pub fn periodic(s: Interval) -> Self {
        Self { s, theta: Interval::real_line() }
    }

    pub fn contains(&self, s: f64, theta: f64) -> bool {
        self.s.contains(s) && self.theta.contains(theta)
    }

    /// True when the closed box of half-width `margin` around the point fits inside.
    pub fn contains_with_margin(&self, s: f64, theta: f64, margin: f64) -> bool {
        self.s.contains(s - margin)
            && self.s.contains(s + margin)
            && self.theta.contains(theta - margin)
            && self.theta.contains(theta + margin)
    }

    pub fn swapped(&self) -> Self {
        Self { s: self.theta, theta: self.s }
    }
}

/// Sampling grid over a parameter rectangle.
///
/// Node grids (`s_nodes`, `theta_nodes`) are used for field sweeps; cell
/// midpoints are used for quadrature. A periodic theta axis excludes the
/// right endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub s_min: f64,
    pub s_max: f64,
    pub n_s: usize,
    pub theta_min: f64,
    pub theta_max: f64,
    pub n_theta: usize,
    pub periodic_theta: bool,
    pub margin: f64,
}

impl GridSpec {
    /// Full-turn periodic grid in theta, the layout used for cyclic surfaces.
    pub fn cyclic(s_min: f64, s_max: f64, n_s: usize, n_theta: usize) -> Self {
        Self { s_min, s_max, n_s, theta_min: 0.0, theta_max: TAU, n_theta, periodic_theta: true, margin: 0.0 }
    }

    /// Plain rectangle, non-periodic in both axes.
    pub fn rect(s: (f64, f64), n_s: usize, theta: (f64, f64), n_theta: usize) -> Self {
        Self {
            s_min: s.0,
            s_max: s.1,
            n_s,
            theta_min: theta.0,
            theta_max: theta.1,
            n_theta,
            periodic_theta: false,
            margin: 0.0,
        }
    }

    pub fn with_margin(mut self, margin: f64) -> Self {
        self.margin = margin;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s_min.is_finite() && self.s_max.is_finite() && self.s_min < self.s_max) {
            return Err(CamcError::InvalidGrid(format!(
                "need finite s_min < s_max, got [{}, {}]",
                self.s_min, self.s_max
            )));
        }
        if !(self.theta_min.is_finite() && self.theta_max.is_finite() && self.theta_min < self.theta_max) {
            return Err(CamcError::InvalidGrid("need finite theta_min < theta_max".into()));
        }
        if self.n_s < 2 {
            return Err(CamcError::InvalidGrid(format!("n_s = {} < 2", self.n_s)));
        }
        if self.n_theta < 8 {
            return Err(CamcError::InvalidGrid(format!("n_theta = {} < 8", self.n_theta)));
        }
        if !(self.margin >= 0.0) {
            return Err(CamcError::InvalidGrid("margin must be non-negative".into()));
        }
        Ok(())
    }

    /// Validates the grid and checks that its s-range sits inside `domain`
    /// shrunk by the margin.
    pub fn validate_within(&self, domain: &Interval) -> Result<()> {
        self.validate()?;
        let inner = domain.shrink(self.margin);
        let ok_lo = self.s_min > inner.lo || (inner.lo_closed && self.s_min >= inner.lo);
        let ok_hi = self.s_max < inner.hi || (inner.hi_closed && self.s_max <= inner.hi);
        if ok_lo && ok_hi && !inner.is_empty() {
            Ok(())
        } else {
            Err(CamcError::Domain(format!(
                "grid s-range [{}, {}] not inside ({}, {}) shrunk by margin {}",
                self.s_min, self.s_max, domain.lo, domain.hi, self.margin
            )))
        }
    }

    pub fn s_nodes(&self) -> Vec<f64> {
        linspace(self.s_min, self.s_max, self.n_s)
    }

    pub fn theta_nodes(&self) -> Vec<f64> {
        if self.periodic_theta {
            let d = (self.theta_max - self.theta_min) / self.n_theta as f64;
            (0..self.n_theta).map(|k| self.theta_min + k as f64 * d).collect()
        } else {
            linspace(self.theta_min, self.theta_max, self.n_theta)
        }
    }

    pub fn ds_cell(&self) -> f64 {
        (self.s_max - self.s_min) / self.n_s as f64
    }

    pub fn dtheta_cell(&self) -> f64 {
        (self.theta_max - self.theta_min) / self.n_theta as f64
    }

    pub fn s_midpoints(&self) -> Vec<f64> {
        let d = self.ds_cell();
        (0..self.n_s).map(|i| self.s_min + (i as f64 + 0.5) * d).collect()
    }

    pub fn theta_midpoints(&self) -> Vec<f64> {
        let d = self.dtheta_cell();
        (0..self.n_theta).map(|k| self.theta_min + (k as f64 + 0.5) * d).collect()
    }
}

/// `n` equally spaced points from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let d = (b - a) / (n - 1) as f64;
            (0..n).map(|i| if i == n - 1 { b } else { a + i as f64 * d }).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_membership() {
        let dirichlet = Interval::half_open_left(0.0, 1.0);
        assert!(dirichlet.contains(1.0));
        assert!(!dirichlet.contains(0.0));
        assert!(dirichlet.contains(1e-300));
        assert!(!dirichlet.contains(f64::NAN));
        assert!(Interval::open(0.0, f64::INFINITY).contains(1e300));
    }

    #[test]
    fn periodic_theta_excludes_endpoint() {
        let g = GridSpec::cyclic(0.0, 1.0, 3, 8);
        let th = g.theta_nodes();
        assert_eq!(th.len(), 8);
        assert_eq!(th[0], 0.0);
        assert!((th[7] - 7.0 * TAU / 8.0).abs() < 1e-15);
        assert_eq!(g.s_nodes(), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn validate_within_margin() {
        let g = GridSpec::cyclic(-1.4, 1.4, 101, 64).with_margin(1e-3);
        let dom = Interval::open(-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2);
        assert!(g.validate_within(&dom).is_ok());
        let g = GridSpec::cyclic(-1.5705, 1.4, 101, 64).with_margin(1e-3);
        assert!(g.validate_within(&dom).is_err());
        assert!(GridSpec::cyclic(0.0, 1.0, 10, 4).validate().is_err());
        assert!(GridSpec::cyclic(1.0, 0.0, 10, 8).validate().is_err());
    }
}
