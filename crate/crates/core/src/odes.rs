//! Fixed-step RK4 integration of the circle-foliated profile system
//!
//! ```text
//! a' = lambda r^2,  b' = mu r^2,
//! r r'' = (lambda^2 + mu^2) r^4 + r'^2              (anisotropic)
//! r r'' = 1 + (lambda r^2)^2 + (mu r^2)^2 + r'^2    (isotropic, F = 1)
//! ```
//!
//! plus first integrals and classification of solutions.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{CamcError, Result};
use crate::families::{family_profile, CyclicFamilyParams, FamilyKind, RotationalProfile};
use crate::fmt_real;

/// Radius at or below which a trajectory is considered collapsed.
pub const RADIUS_FLOOR: f64 = 1e-9;
/// `|r|` or `|r'|` above this halts integration.
pub const BLOW_UP_BOUND: f64 = 1e8;
/// Relative first-integral drift per trajectory that flags the step as too large.
pub const DRIFT_LIMIT: f64 = 1e-3;
/// Base relative tolerance for [`classify_by_first_integral`].
pub const CLASSIFY_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OdeMode {
    Anisotropic,
    Isotropic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CyclicOdeState {
    pub s: f64,
    pub r: f64,
    pub rp: f64,
    pub a: f64,
    pub b: f64,
}

impl CyclicOdeState {
    pub fn new(s: f64, r: f64, rp: f64, a: f64, b: f64) -> Self {
        Self { s, r, rp, a, b }
    }

    /// Closed-form state of a family member at `s`.
    pub fn from_profile(params: &CyclicFamilyParams, s: f64) -> Result<Self> {
        let p = family_profile(params, s)?;
        Ok(Self { s, r: p.r, rp: p.rp, a: p.a, b: p.b })
    }

    fn axpy(&self, h: f64, d: &StateDerivative) -> Self {
        Self { s: self.s + h, r: self.r + h * d.r, rp: self.rp + h * d.rp, a: self.a + h * d.a, b: self.b + h * d.b }
    }
}

/// `d/ds` of `(r, r', a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateDerivative {
    pub r: f64,
    pub rp: f64,
    pub a: f64,
    pub b: f64,
}

pub fn rhs(state: &CyclicOdeState, lambda: f64, mu: f64, mode: OdeMode) -> Result<StateDerivative> {
    let r = state.r;
    if !(r > 0.0) {
        return Err(CamcError::DegenerateRadius { r });
    }
    let r2 = r * r;
    let (la, ma) = (lambda * r2, mu * r2);
    let num = match mode {
        OdeMode::Anisotropic => (lambda * lambda + mu * mu) * r2 * r2 + state.rp * state.rp,
        OdeMode::Isotropic => 1.0 + la * la + ma * ma + state.rp * state.rp,
    };
    Ok(StateDerivative { r: state.rp, rp: num / r, a: la, b: ma })
}

/// `(r'/r)^2 - (lambda^2 + mu^2) r^2`, conserved by the anisotropic system.
pub fn first_integral(state: &CyclicOdeState, lambda: f64, mu: f64) -> Result<f64> {
    first_integral_for_mode(state, lambda, mu, OdeMode::Anisotropic)
}

/// The conserved quantity of either mode; the isotropic one is
/// `(1 + r'^2) / r^2 - (lambda^2 + mu^2) r^2`.
pub fn first_integral_for_mode(state: &CyclicOdeState, lambda: f64, mu: f64, mode: OdeMode) -> Result<f64> {
    let r = state.r;
    if !(r > 0.0) {
        return Err(CamcError::DegenerateRadius { r });
    }
    let l2 = lambda * lambda + mu * mu;
    let q = state.rp / r;
    Ok(match mode {
        OdeMode::Anisotropic => q * q - l2 * r * r,
        OdeMode::Isotropic => q * q + 1.0 / (r * r) - l2 * r * r,
    })
}

/// Typical magnitude of the terms making up the first integral, used to
/// turn absolute drift into relative drift.
fn integral_scale(state: &CyclicOdeState, lambda: f64, mu: f64, mode: OdeMode) -> f64 {
    let r = state.r;
    let q = state.rp / r;
    let base = (lambda * lambda + mu * mu) * r * r + q * q;
    match mode {
        OdeMode::Anisotropic => base,
        OdeMode::Isotropic => base + 1.0 / (r * r),
    }
}

pub fn classify_by_first_integral(c1: f64, tolerance: f64) -> FamilyKind {
    if c1 < -tolerance {
        FamilyKind::TypeI
    } else if c1 > tolerance {
        FamilyKind::TypeIII
    } else {
        FamilyKind::TypeII
    }
}

/// `u'' + u'/r - Lambda/2`, zero for every rotational solution.
pub fn rotational_residual(profile: &RotationalProfile, r: f64) -> Result<f64> {
    Ok(profile.d2u(r)? + profile.du(r)? / r - profile.lambda_camc / 2.0)
}

/// Why integration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Termination {
    Completed,
    RadiusCollapse { s: f64 },
    BlowUp { s: f64 },
    StepTooLarge { s: f64, drift: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OdeTrajectory {
    pub states: Vec<CyclicOdeState>,
    pub step: f64,
    pub mode: OdeMode,
    pub lambda: f64,
    pub mu: f64,
    pub termination: Termination,
}

/// Integrates from `initial` to `s_end` (either direction) with classical RK4.
///
/// The span is split into `n` equal steps of size at most `step` (up to
/// rounding). Hitting a guard truncates the trajectory at the last good state
/// and records the reason in [`OdeTrajectory::termination`]; use
/// [`OdeTrajectory::require_complete`] to turn that into an error.
pub fn integrate(
    initial: CyclicOdeState,
    lambda: f64,
    mu: f64,
    mode: OdeMode,
    s_end: f64,
    step: f64,
) -> Result<OdeTrajectory> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(CamcError::InvalidParams(format!("step must be positive and finite, got {step}")));
    }
    if !(s_end.is_finite() && initial.s.is_finite()) {
        return Err(CamcError::InvalidParams("integration bounds must be finite".into()));
    }
    if !(lambda.is_finite() && mu.is_finite()) {
        return Err(CamcError::InvalidParams("lambda and mu must be finite".into()));
    }
    if !(initial.r > RADIUS_FLOOR) {
        return Err(CamcError::DegenerateRadius { r: initial.r });
    }
    let span = s_end - initial.s;
    let ratio = span.abs() / step;
    let n = if (ratio - ratio.round()).abs() < 1e-9 * ratio.max(1.0) { ratio.round() } else { ratio.ceil() } as usize;
    let h = if n == 0 { 0.0 } else { span / n as f64 };

    let c0 = first_integral_for_mode(&initial, lambda, mu, mode)?;
    let mut scale = integral_scale(&initial, lambda, mu, mode);
    let mut states = Vec::with_capacity(n + 1);
    states.push(initial);
    let mut termination = Termination::Completed;
    let mut cur = initial;
    for k in 1..=n {
        let next = match rk4_step(&cur, h, lambda, mu, mode) {
            Ok(next) => next,
            Err(_) => {
                termination = Termination::RadiusCollapse { s: cur.s };
                break;
            }
        };
        let next = CyclicOdeState { s: initial.s + k as f64 * h, ..next };
        if ![next.r, next.rp, next.a, next.b].iter().all(|v| v.is_finite())
            || next.r.abs() > BLOW_UP_BOUND
            || next.rp.abs() > BLOW_UP_BOUND
        {
            termination = Termination::BlowUp { s: next.s };
            break;
        }
        if next.r <= RADIUS_FLOOR {
            termination = Termination::RadiusCollapse { s: next.s };
            break;
        }
        scale = scale.max(integral_scale(&next, lambda, mu, mode));
        let drift = (first_integral_for_mode(&next, lambda, mu, mode)? - c0).abs() / scale.max(f64::MIN_POSITIVE);
        if drift > DRIFT_LIMIT {
            termination = Termination::StepTooLarge { s: next.s, drift };
            break;
        }
        states.push(next);
        cur = next;
    }
    Ok(OdeTrajectory { states, step: h.abs(), mode, lambda, mu, termination })
}

fn rk4_step(y: &CyclicOdeState, h: f64, lambda: f64, mu: f64, mode: OdeMode) -> Result<CyclicOdeState> {
    let k1 = rhs(y, lambda, mu, mode)?;
    let k2 = rhs(&y.axpy(h / 2.0, &k1), lambda, mu, mode)?;
    let k3 = rhs(&y.axpy(h / 2.0, &k2), lambda, mu, mode)?;
    let k4 = rhs(&y.axpy(h, &k3), lambda, mu, mode)?;
    let w = |f: fn(&StateDerivative) -> f64| (f(&k1) + 2.0 * f(&k2) + 2.0 * f(&k3) + f(&k4)) / 6.0;
    Ok(CyclicOdeState {
        s: y.s + h,
        r: y.r + h * w(|d| d.r),
        rp: y.rp + h * w(|d| d.rp),
        a: y.a + h * w(|d| d.a),
        b: y.b + h * w(|d| d.b),
    })
}

impl OdeTrajectory {
    pub fn last(&self) -> &CyclicOdeState {
        self.states.last().expect("a trajectory holds at least its initial state")
    }

    pub fn is_complete(&self) -> bool {
        self.termination == Termination::Completed
    }

    pub fn require_complete(self) -> Result<Self> {
        match self.termination {
            Termination::Completed => Ok(self),
            Termination::RadiusCollapse { s } => Err(CamcError::RadiusCollapse { s }),
            Termination::BlowUp { s } => Err(CamcError::BlowUp { s }),
            Termination::StepTooLarge { s, drift } => Err(CamcError::StepTooLarge { s, drift }),
        }
    }

    /// First integral at every state.
    pub fn first_integrals(&self) -> Vec<f64> {
        self.states
            .iter()
            .map(|st| first_integral_for_mode(st, self.lambda, self.mu, self.mode).unwrap_or(f64::NAN))
            .collect()
    }

    /// `max |c1(s) - c1(s0)|`.
    pub fn first_integral_drift(&self) -> f64 {
        let c = self.first_integrals();
        c.iter().map(|v| (v - c[0]).abs()).fold(0.0, f64::max)
    }

    pub fn max_radius(&self) -> f64 {
        self.states.iter().map(|st| st.r).fold(0.0, f64::max)
    }

    /// Default classification tolerance, scaled by `(lambda^2 + mu^2) max r^2`.
    pub fn classification_tolerance(&self) -> f64 {
        let r = self.max_radius();
        CLASSIFY_REL_TOL * (self.lambda * self.lambda + self.mu * self.mu) * r * r
    }

    /// Classifies by the mean first integral along the trajectory.
    pub fn classify(&self) -> FamilyKind {
        let c = self.first_integrals();
        let mean = c.iter().sum::<f64>() / c.len() as f64;
        classify_by_first_integral(mean, self.classification_tolerance())
    }

    /// Largest deviation of `(r, a, b)` from a closed-form family member.
    pub fn max_error_against(&self, params: &CyclicFamilyParams) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for st in &self.states {
            let p = family_profile(params, st.s)?;
            worst = worst.max((st.r - p.r).abs()).max((st.a - p.a).abs()).max((st.b - p.b).abs());
        }
        Ok(worst)
    }

    /// Comma-separated dump with header `s,r,rp,a,b,c1`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,r,rp,a,b,c1\n");
        for (st, c1) in self.states.iter().zip(self.first_integrals()) {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                fmt_real(st.s),
                fmt_real(st.r),
                fmt_real(st.rp),
                fmt_real(st.a),
                fmt_real(st.b),
                fmt_real(c1)
            );
        }
        out
    }
}
