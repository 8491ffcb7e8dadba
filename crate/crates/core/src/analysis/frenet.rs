//! Space curves with Frenet frames, and circle-foliated surfaces whose
//! circles lie in the normal planes of such a curve.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::energy::ScalarFn;
use crate::error::{CamcError, Result};
use crate::grid::{linspace, Interval, ParamRect};
use crate::surface::{ParametricSurface, V3};

pub type CurveFn = Arc<dyn Fn(f64) -> V3 + Send + Sync>;
/// `(gamma', gamma'', gamma''')`
pub type CurveDerivsFn = Arc<dyn Fn(f64) -> [V3; 3] + Send + Sync>;

/// Curvature below which the principal normal is considered undefined.
pub const KAPPA_EPS: f64 = 1e-10;
pub const DEFAULT_CURVE_FD_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetFrame {
    pub t: V3,
    pub n: V3,
    pub b: V3,
    pub kappa: f64,
    pub tau: f64,
}

/// A space curve on an open parameter span. Derivatives come from a
/// closed form when supplied, else from central differences.
#[derive(Clone)]
pub struct FrenetCurve {
    label: String,
    gamma: CurveFn,
    derivs: Option<CurveDerivsFn>,
    fd_step: f64,
    span: Interval,
}

impl fmt::Debug for FrenetCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FrenetCurve")
            .field("label", &self.label)
            .field("analytic", &self.derivs.is_some())
            .field("span", &self.span)
            .finish()
    }
}

impl FrenetCurve {
    pub fn analytic<G, D>(label: impl Into<String>, span: Interval, gamma: G, derivs: D) -> Self
    where
        G: Fn(f64) -> V3 + Send + Sync + 'static,
        D: Fn(f64) -> [V3; 3] + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            gamma: Arc::new(gamma),
            derivs: Some(Arc::new(derivs)),
            fd_step: DEFAULT_CURVE_FD_STEP,
            span,
        }
    }

    pub fn finite_difference<G>(label: impl Into<String>, span: Interval, step: f64, gamma: G) -> Self
    where
        G: Fn(f64) -> V3 + Send + Sync + 'static,
    {
        Self { label: label.into(), gamma: Arc::new(gamma), derivs: None, fd_step: step, span }
    }

    /// Arc of radius `radius` in the xz-plane, lowest point at the origin,
    /// bending upward: `(R sin(s/R), 0, R - R cos(s/R))`.
    pub fn circular_arc_xz(radius: f64) -> Self {
        let r = radius;
        Self::analytic(
            format!("arc-xz R={r}"),
            Interval::open(-PI * r, PI * r),
            move |s| V3::new(r * (s / r).sin(), 0.0, r - r * (s / r).cos()),
            move |s| {
                let (sn, cs) = (s / r).sin_cos();
                [V3::new(cs, 0.0, sn), V3::new(-sn / r, 0.0, cs / r), V3::new(-cs / (r * r), 0.0, -sn / (r * r))]
            },
        )
    }

    /// Circle of radius `radius` in the plane z = 0, counter-clockwise.
    pub fn circle_xy(radius: f64) -> Self {
        let r = radius;
        Self::analytic(
            format!("circle-xy R={r}"),
            Interval::real_line(),
            move |s| V3::new(r * (s / r).cos(), r * (s / r).sin(), 0.0),
            move |s| {
                let (sn, cs) = (s / r).sin_cos();
                [V3::new(-sn, cs, 0.0), V3::new(-cs / r, -sn / r, 0.0), V3::new(sn / (r * r), -cs / (r * r), 0.0)]
            },
        )
    }

    /// Arc-length helix `(a cos(s/w), a sin(s/w), p s/w)` with `w = sqrt(a^2 + p^2)`.
    pub fn helix(radius: f64, pitch: f64, span: Interval) -> Self {
        let (a, p) = (radius, pitch);
        let w = a.hypot(p);
        Self::analytic(
            format!("helix a={a} p={p}"),
            span,
            move |s| V3::new(a * (s / w).cos(), a * (s / w).sin(), p * s / w),
            move |s| {
                let (sn, cs) = (s / w).sin_cos();
                [
                    V3::new(-a * sn / w, a * cs / w, p / w),
                    V3::new(-a * cs / (w * w), -a * sn / (w * w), 0.0),
                    V3::new(a * sn / (w * w * w), -a * cs / (w * w * w), 0.0),
                ]
            },
        )
    }

    pub fn straight_line(point: V3, direction: V3, span: Interval) -> Self {
        let d = direction.normalize();
        Self::analytic("line", span, move |s| point + s * d, move |_| [d, V3::zeros(), V3::zeros()])
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn span(&self) -> Interval {
        self.span
    }

    pub fn has_analytic_derivatives(&self) -> bool {
        self.derivs.is_some()
    }

    pub fn point(&self, s: f64) -> V3 {
        (self.gamma)(s)
    }

    pub fn derivatives(&self, s: f64) -> [V3; 3] {
        if let Some(d) = &self.derivs {
            return d(s);
        }
        let h = self.fd_step;
        let g = |k: f64| (self.gamma)(s + k * h);
        let (m2, m1, c, p1, p2) = (g(-2.0), g(-1.0), g(0.0), g(1.0), g(2.0));
        [
            (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h),
            (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h),
            (p2 - 2.0 * p1 + 2.0 * m1 - m2) / (2.0 * h * h * h),
        ]
    }

    /// `(t, n, b, kappa, tau)` at `s`; `n` comes from Gram-Schmidt on
    /// `gamma''` against `t`, so the frame is orthonormal to rounding.
    pub fn frame(&self, s: f64) -> Result<FrenetFrame> {
        if !self.span.contains(s) {
            return Err(CamcError::Domain(format!("s = {s} outside the span of {}", self.label)));
        }
        let [d1, d2, d3] = self.derivatives(s);
        let speed = d1.norm();
        let cross = d1.cross(&d2);
        let kappa = cross.norm() / (speed * speed * speed);
        if !(kappa > KAPPA_EPS) {
            return Err(CamcError::FrameUndefined { s, kappa });
        }
        let t = d1 / speed;
        let n = (d2 - d2.dot(&t) * t).normalize();
        let b = t.cross(&n);
        let tau = cross.dot(&d3) / cross.norm_squared();
        Ok(FrenetFrame { t, n, b, kappa, tau })
    }

    /// Coordinates `(alpha, beta, gamma)` of `c'(s)` in the frame, for the
    /// center curve `c = Gamma + p n + q b`:
    /// `c' = (1 - kappa p) t + (p' - tau q) n + (q' + tau p) b`.
    pub fn center_velocity_coords(&self, s: f64, p: &ScalarFn, q: &ScalarFn) -> Result<(f64, f64, f64)> {
        let fr = self.frame(s)?;
        let h = 1e-5;
        let dp = (p(s + h) - p(s - h)) / (2.0 * h);
        let dq = (q(s + h) - q(s - h)) / (2.0 * h);
        let (pv, qv) = (p(s), q(s));
        Ok((1.0 - fr.kappa * pv, dp - fr.tau * qv, dq + fr.tau * pv))
    }
}

/// `X(s, theta) = c(s) + r(s) (cos theta n(s) + sin theta b(s))` with
/// `c = Gamma + p n + q b`, in finite-difference jet mode.
///
/// The curvature must stay positive over the curve's span, which must be finite.
pub fn tilted_cyclic_surface(
    curve: &FrenetCurve,
    r: ScalarFn,
    center_offset: (ScalarFn, ScalarFn),
    fd_step: f64,
) -> Result<ParametricSurface> {
    let span = curve.span();
    if !(span.lo.is_finite() && span.hi.is_finite()) {
        return Err(CamcError::InvalidParams("the tilted surface needs a finite curve span".into()));
    }
    let probe = linspace(span.lo, span.hi, 257);
    for &s in &probe[1..probe.len() - 1] {
        curve.frame(s)?;
    }
    let c = curve.clone();
    let (p, q) = center_offset;
    let label = format!("tilted over {}", curve.label());
    Ok(ParametricSurface::finite_difference(label, ParamRect::periodic(span), fd_step, move |s, theta| {
        match c.frame(s) {
            Ok(fr) => {
                let (sn, cs) = theta.sin_cos();
                c.point(s) + p(s) * fr.n + q(s) * fr.b + r(s) * (cs * fr.n + sn * fr.b)
            }
            Err(_) => V3::repeat(f64::NAN),
        }
    }))
}

/// Components of `e3 = (0, 0, 1)` in the moving frame: `(t_z, n_z, b_z)`.
pub fn frenet_e3_coordinates(curve: &FrenetCurve, s: f64) -> Result<(f64, f64, f64)> {
    let fr = curve.frame(s)?;
    Ok((fr.t.z, fr.n.z, fr.b.z))
}
