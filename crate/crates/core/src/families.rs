//! Closed-form anisotropic-minimal surfaces foliated by horizontal circles,
//! the rotational solutions `u = c1 log r + (Lambda/8) r^2 + c2`, and
//! checks of their geometric properties.
//!
//! Cyclic surfaces are `X(s, theta) = (a(s), b(s), s) + r(s) (cos theta, sin theta, 0)`
//! with `a' = lambda r^2`, `b' = mu r^2`. Writing `L = sqrt(lambda^2 + mu^2)`:
//!
//! | kind | r(s) | a(s) |
//! |------|------|------|
//! | I    | `c / (L cos cs)`   | `c lambda tan(cs) / L^2` |
//! | II   | `1 / (L s + c)`    | `-lambda / (L^2 s + c L)` |
//! | III  | `c / (L sinh cs)`  | `-c lambda coth(cs) / L^2` |
//!
//! and `b` is `a` with `mu` in place of `lambda`.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Rotation3, Unit};
use serde::{Deserialize, Serialize};

use crate::error::{CamcError, Result};
use crate::grid::{Interval, ParamRect};
use crate::surface::{ParametricSurface, SurfaceJet, V3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    TypeI,
    TypeII,
    TypeIII,
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::TypeI => "type1",
            FamilyKind::TypeII => "type2",
            FamilyKind::TypeIII => "type3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CyclicFamilyParams {
    pub kind: FamilyKind,
    pub lambda: f64,
    pub mu: f64,
    pub c: f64,
}

impl CyclicFamilyParams {
    pub fn new(kind: FamilyKind, lambda: f64, mu: f64, c: f64) -> Result<Self> {
        if !(lambda.is_finite() && mu.is_finite() && c.is_finite()) {
            return Err(CamcError::InvalidParams("lambda, mu and c must be finite".into()));
        }
        if lambda * lambda + mu * mu == 0.0 {
            return Err(CamcError::InvalidParams("lambda^2 + mu^2 must be non-zero".into()));
        }
        if c == 0.0 && kind != FamilyKind::TypeII {
            return Err(CamcError::InvalidParams(format!("c must be non-zero for {}", kind.name())));
        }
        Ok(Self { kind, lambda, mu, c })
    }

    /// `sqrt(lambda^2 + mu^2)`
    pub fn norm(&self) -> f64 {
        self.lambda.hypot(self.mu)
    }

    pub fn is_normalized(&self) -> bool {
        self.mu == 0.0 && self.lambda > 0.0
    }

    pub fn describe(&self) -> String {
        format!("{} lambda={} mu={} c={}", self.kind.name(), self.lambda, self.mu, self.c)
    }
}

/// Radius, center coordinates and their first two derivatives at one `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CyclicProfile {
    pub r: f64,
    pub a: f64,
    pub b: f64,
    pub rp: f64,
    pub ap: f64,
    pub bp: f64,
    pub rpp: f64,
    pub app: f64,
    pub bpp: f64,
}

/// The open interval of `s` on which the family is defined with `r > 0`.
pub fn domain_interval(params: &CyclicFamilyParams) -> Interval {
    let l = params.norm();
    match params.kind {
        FamilyKind::TypeI => {
            let h = FRAC_PI_2 / params.c.abs();
            if params.c > 0.0 {
                Interval::open(-h, h)
            } else {
                // cos(cs) < 0 there, so r = c / (L cos cs) > 0
                Interval::open(h, 3.0 * h)
            }
        }
        FamilyKind::TypeII => Interval::open(-params.c / l, f64::INFINITY),
        // c / sinh(cs) is even in c and positive exactly for s > 0
        FamilyKind::TypeIII => Interval::open(0.0, f64::INFINITY),
    }
}

fn profile_unchecked(p: &CyclicFamilyParams, s: f64) -> CyclicProfile {
    let l = p.norm();
    let l2 = l * l;
    let c = p.c;
    // scalar profile of the center offset along (lambda, mu): center = (lambda, mu) * k(s)
    let (r, rp, rpp, k, kp, kpp) = match p.kind {
        FamilyKind::TypeI => {
            let (sn, cs) = (c * s).sin_cos();
            let sec = 1.0 / cs;
            let tan = sn / cs;
            let r0 = c / l;
            let r = r0 * sec;
            let rp = r0 * c * sec * tan;
            let rpp = r0 * c * c * sec * (tan * tan + sec * sec);
            let k = c * tan / l2;
            let kp = c * c * sec * sec / l2;
            let kpp = 2.0 * c * c * c * sec * sec * tan / l2;
            (r, rp, rpp, k, kp, kpp)
        }
        FamilyKind::TypeII => {
            let d = l * s + c;
            let r = 1.0 / d;
            let rp = -l / (d * d);
            let rpp = 2.0 * l2 / (d * d * d);
            let k = -1.0 / (l * d);
            let kp = 1.0 / (d * d);
            let kpp = -2.0 * l / (d * d * d);
            (r, rp, rpp, k, kp, kpp)
        }
        FamilyKind::TypeIII => {
            let (sh, ch) = ((c * s).sinh(), (c * s).cosh());
            let csch = 1.0 / sh;
            let coth = ch / sh;
            let r0 = c / l;
            let r = r0 * csch;
            let rp = -r0 * c * csch * coth;
            let rpp = r0 * c * c * csch * (coth * coth + csch * csch);
            let k = -c * coth / l2;
            let kp = c * c * csch * csch / l2;
            let kpp = -2.0 * c * c * c * csch * csch * coth / l2;
            (r, rp, rpp, k, kp, kpp)
        }
    };
    CyclicProfile {
        r,
        a: p.lambda * k,
        b: p.mu * k,
        rp,
        ap: p.lambda * kp,
        bp: p.mu * kp,
        rpp,
        app: p.lambda * kpp,
        bpp: p.mu * kpp,
    }
}

pub fn family_profile(params: &CyclicFamilyParams, s: f64) -> Result<CyclicProfile> {
    let dom = domain_interval(params);
    if !dom.contains(s) {
        return Err(CamcError::Domain(format!("s = {s} outside ({}, {}) for {}", dom.lo, dom.hi, params.describe())));
    }
    let p = profile_unchecked(params, s);
    if !(p.r > 0.0 && p.r.is_finite()) {
        return Err(CamcError::Domain(format!("r(s) = {} at s = {s}", p.r)));
    }
    Ok(p)
}

fn cyclic_jet(p: &CyclicProfile, s: f64, theta: f64) -> SurfaceJet {
    let (sn, cs) = theta.sin_cos();
    SurfaceJet {
        pos: V3::new(p.a + p.r * cs, p.b + p.r * sn, s),
        xs: V3::new(p.ap + p.rp * cs, p.bp + p.rp * sn, 1.0),
        xt: V3::new(-p.r * sn, p.r * cs, 0.0),
        xss: V3::new(p.app + p.rpp * cs, p.bpp + p.rpp * sn, 0.0),
        xst: V3::new(-p.rp * sn, p.rp * cs, 0.0),
        xtt: V3::new(-p.r * cs, -p.r * sn, 0.0),
    }
}

/// Analytic-mode parametrization of a family member over its whole domain.
pub fn cyclic_surface(params: &CyclicFamilyParams) -> ParametricSurface {
    let p = *params;
    ParametricSurface::analytic(params.describe(), ParamRect::periodic(domain_interval(params)), move |s, t| {
        cyclic_jet(&profile_unchecked(&p, s), s, t)
    })
}

/// Params with `mu = 0`, `lambda = L`, plus the z-rotation angle `phi` with
/// `Rot_phi X_normalized(s, theta) = X(s, theta + phi)`.
pub fn normalize_by_rotation(params: &CyclicFamilyParams) -> (CyclicFamilyParams, f64) {
    let phi = params.mu.atan2(params.lambda);
    (CyclicFamilyParams { lambda: params.norm(), mu: 0.0, ..*params }, phi)
}

/// Whether the xy-projections of the circles at heights `s1` and `s2` overlap.
pub fn overlap_predicate(params: &CyclicFamilyParams, s1: f64, s2: f64) -> Result<bool> {
    let p1 = family_profile(params, s1)?;
    let p2 = family_profile(params, s2)?;
    let d = (p1.a - p2.a).hypot(p1.b - p2.b);
    Ok(d < p1.r + p2.r)
}

fn require_normalized(params: &CyclicFamilyParams) -> Result<()> {
    if params.mu != 0.0 {
        return Err(CamcError::InvalidParams("symmetry checks need mu = 0; call normalize_by_rotation first".into()));
    }
    Ok(())
}

/// `|R(X(s,theta)) - X(-s, pi - theta)|` with `R(x,y,z) = (-x, y, -z)`, the
/// half-turn about the y-axis. Type I only.
pub fn symmetry_check(params: &CyclicFamilyParams, s: f64, theta: f64) -> Result<f64> {
    require_normalized(params)?;
    if params.kind != FamilyKind::TypeI {
        return Err(CamcError::InvalidParams("the half-turn symmetry holds for Type I only".into()));
    }
    let surf = cyclic_surface(params);
    let p = surf.point(s, theta)?;
    let q = surf.point(-s, PI - theta)?;
    Ok((V3::new(-p.x, p.y, -p.z) - q).norm())
}

/// `|M(X(s,theta)) - X(s, -theta)|` with `M(x,y,z) = (x, -y, z)`.
pub fn mirror_symmetry_check(params: &CyclicFamilyParams, s: f64, theta: f64) -> Result<f64> {
    require_normalized(params)?;
    let surf = cyclic_surface(params);
    let p = surf.point(s, theta)?;
    let q = surf.point(s, -theta)?;
    Ok((V3::new(p.x, -p.y, p.z) - q).norm())
}

/// A straight line approached by the surface but not covered by its parametrization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitLine {
    pub point: [f64; 3],
    pub direction: [f64; 3],
}

/// A surface continued past its boundary lines by rigid motions.
#[derive(Debug, Clone)]
pub struct ExtendedSurface {
    pub params: CyclicFamilyParams,
    pub pieces: Vec<ParametricSurface>,
    pub limit_lines: Vec<LimitLine>,
}

/// Horizontal direction of the boundary lines, orthogonal to the plane of centers.
fn line_direction(params: &CyclicFamilyParams) -> V3 {
    let l = params.norm();
    V3::new(-params.mu / l, params.lambda / l, 0.0)
}

/// Extends the surface across its boundary lines.
///
/// Type I is tiled by `copies` vertical translates spaced `pi/|c|` apart.
/// Types II and III take `copies = 1` and add the half-turn image about their
/// single boundary line.
pub fn schwarz_extend(params: &CyclicFamilyParams, copies: usize) -> Result<ExtendedSurface> {
    if copies == 0 {
        return Err(CamcError::UnsupportedExtension("copies must be at least 1".into()));
    }
    let base = cyclic_surface(params);
    let dom = domain_interval(params);
    let d = line_direction(params);
    let line_at = |z: f64| LimitLine { point: [0.0, 0.0, z], direction: [d.x, d.y, d.z] };
    match params.kind {
        FamilyKind::TypeI => {
            let period = PI / params.c.abs();
            let pieces = (0..copies)
                .map(|k| {
                    base.transformed(Rotation3::identity(), V3::new(0.0, 0.0, k as f64 * period))
                        .with_label(format!("{} [slab {k}]", params.describe()))
                })
                .collect();
            let limit_lines = (0..=copies).map(|k| line_at(dom.lo + k as f64 * period)).collect();
            Ok(ExtendedSurface { params: *params, pieces, limit_lines })
        }
        FamilyKind::TypeII | FamilyKind::TypeIII => {
            if copies != 1 {
                return Err(CamcError::UnsupportedExtension(format!(
                    "{} admits a single half-turn extension (copies = 1), got {copies}",
                    params.kind.name()
                )));
            }
            let z0 = dom.lo;
            let rot = Rotation3::from_axis_angle(&Unit::new_normalize(d), PI);
            let p0 = V3::new(0.0, 0.0, z0);
            let rotated = base.transformed(rot, p0 - rot * p0).with_label(format!("{} [half-turn]", params.describe()));
            Ok(ExtendedSurface { params: *params, pieces: vec![base, rotated], limit_lines: vec![line_at(z0)] })
        }
    }
}

/// What to approach in [`asymptote_probe`]. All targets refer to the
/// normalized surface (`mu = 0`); the record carries the rotation angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AsymptoteTarget {
    /// Type I: fixed theta, s to the upper or lower end of the slab.
    PlanarEnd { upper: bool, theta: f64 },
    /// Points `(0, y, z_end)` of a boundary line, reached along `theta(s)`.
    BoundaryLine { upper: bool, y: f64 },
    /// Types II/III: fixed theta, s to infinity.
    VerticalAsymptote { theta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LimitObject {
    HorizontalPlane { z: f64 },
    Point { point: [f64; 3] },
    VerticalLine { x: f64, y: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitRecord {
    pub target: AsymptoteTarget,
    pub limit: LimitObject,
    /// Rotation about the z-axis taking the normalized surface to the given one.
    pub frame_rotation: f64,
    pub probes: Vec<f64>,
    pub distances: Vec<f64>,
    /// Horizontal distance from the z-axis at each probe.
    pub horizontal_norms: Vec<f64>,
    pub final_distance: f64,
    pub monotone: bool,
    /// Horizontal coordinates grow without bound along the probe.
    pub diverges: bool,
}

/// Evaluates the surface along a sequence approaching a boundary of the
/// parameter domain and measures the distance to the claimed limit object.
pub fn asymptote_probe(params: &CyclicFamilyParams, target: AsymptoteTarget) -> Result<LimitRecord> {
    let (norm, phi) = normalize_by_rotation(params);
    let dom = domain_interval(&norm);
    let lam = norm.lambda;
    let surf = cyclic_surface(&norm);
    let unsupported = || Err(CamcError::InvalidParams(format!("{target:?} does not apply to {}", params.kind.name())));

    // (s, theta(s)) samples plus the limit object
    let (probes, limit): (Vec<(f64, f64)>, LimitObject) = match (params.kind, target) {
        (FamilyKind::TypeI, AsymptoteTarget::PlanarEnd { upper, theta }) => {
            let z = if upper { dom.hi } else { dom.lo };
            let dir = if upper { -1.0 } else { 1.0 };
            let pts = (1..=8).map(|k| (z + dir * 10f64.powi(-k), theta)).collect();
            (pts, LimitObject::HorizontalPlane { z })
        }
        (FamilyKind::TypeI, AsymptoteTarget::BoundaryLine { upper, y }) => {
            let z = if upper { dom.hi } else { dom.lo };
            let dir = if upper { -1.0 } else { 1.0 };
            let pts = (1..=8)
                .map(|k| {
                    let s = z + dir * 10f64.powi(-k);
                    let r = profile_unchecked(&norm, s).r;
                    (s, if upper { PI - y / r } else { y / r })
                })
                .collect();
            (pts, LimitObject::Point { point: [0.0, y, z] })
        }
        (FamilyKind::TypeII | FamilyKind::TypeIII, AsymptoteTarget::BoundaryLine { upper: false, y }) => {
            let z = dom.lo;
            let pts = (1..=8)
                .map(|k| {
                    let s = z + 10f64.powi(-k);
                    (s, y / profile_unchecked(&norm, s).r)
                })
                .collect();
            (pts, LimitObject::Point { point: [0.0, y, z] })
        }
        (FamilyKind::TypeII, AsymptoteTarget::VerticalAsymptote { theta }) => {
            let pts = (0..=7).map(|k| (10f64.powi(k), theta)).collect();
            (pts, LimitObject::VerticalLine { x: 0.0, y: 0.0 })
        }
        (FamilyKind::TypeIII, AsymptoteTarget::VerticalAsymptote { theta }) => {
            let pts = (0..=5).map(|k| (2f64.powi(k) / norm.c.abs(), theta)).collect();
            (pts, LimitObject::VerticalLine { x: -norm.c / lam, y: 0.0 })
        }
        _ => return unsupported(),
    };

    let mut s_values = Vec::with_capacity(probes.len());
    let mut distances = Vec::with_capacity(probes.len());
    let mut horizontal = Vec::with_capacity(probes.len());
    for (s, t) in probes {
        let x = surf.point(s, t)?;
        let dist = match limit {
            LimitObject::HorizontalPlane { z } => (x.z - z).abs(),
            LimitObject::Point { point } => (x - V3::from(point)).norm(),
            LimitObject::VerticalLine { x: lx, y: ly } => (x.x - lx).hypot(x.y - ly),
        };
        s_values.push(s);
        distances.push(dist);
        horizontal.push(x.x.hypot(x.y));
    }
    let monotone = distances.windows(2).all(|w| w[1] < w[0]);
    let diverges = horizontal.windows(2).all(|w| w[1] > w[0]) && horizontal.last().copied().unwrap_or(0.0) > 1e4;
    Ok(LimitRecord {
        target,
        limit,
        frame_rotation: phi,
        probes: s_values,
        final_distance: *distances.last().unwrap_or(&f64::INFINITY),
        distances,
        horizontal_norms: horizontal,
        monotone,
        diverges,
    })
}

/// `u(r) = c1 log r + (Lambda/8) r^2 + c2`, the rotational solutions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationalProfile {
    pub c1: f64,
    pub c2: f64,
    pub lambda_camc: f64,
}

pub fn rotational_solution(c1: f64, c2: f64, lambda_camc: f64) -> RotationalProfile {
    RotationalProfile { c1, c2, lambda_camc }
}

impl RotationalProfile {
    fn check(r: f64) -> Result<()> {
        if r > 0.0 {
            Ok(())
        } else {
            Err(CamcError::DegenerateRadius { r })
        }
    }

    pub fn u(&self, r: f64) -> Result<f64> {
        Self::check(r)?;
        Ok(self.c1 * r.ln() + self.lambda_camc / 8.0 * r * r + self.c2)
    }

    pub fn du(&self, r: f64) -> Result<f64> {
        Self::check(r)?;
        Ok(self.c1 / r + self.lambda_camc * r / 4.0)
    }

    pub fn d2u(&self, r: f64) -> Result<f64> {
        Self::check(r)?;
        Ok(-self.c1 / (r * r) + self.lambda_camc / 4.0)
    }

    /// `X(r, theta) = (r cos theta, r sin theta, u(r))` for `r > 0`, analytic jets.
    pub fn surface(&self) -> ParametricSurface {
        let p = *self;
        let label = format!("rotational c1={} c2={} lambda={}", p.c1, p.c2, p.lambda_camc);
        ParametricSurface::analytic(label, ParamRect::periodic(Interval::open(0.0, f64::INFINITY)), move |r, t| {
            let (sn, cs) = t.sin_cos();
            let u = p.c1 * r.ln() + p.lambda_camc / 8.0 * r * r + p.c2;
            let du = p.c1 / r + p.lambda_camc * r / 4.0;
            let d2u = -p.c1 / (r * r) + p.lambda_camc / 4.0;
            SurfaceJet {
                pos: V3::new(r * cs, r * sn, u),
                xs: V3::new(cs, sn, du),
                xt: V3::new(-r * sn, r * cs, 0.0),
                xss: V3::new(0.0, 0.0, d2u),
                xst: V3::new(-sn, cs, 0.0),
                xtt: V3::new(-r * cs, -r * sn, 0.0),
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p(kind: FamilyKind, l: f64, m: f64, c: f64) -> CyclicFamilyParams {
        CyclicFamilyParams::new(kind, l, m, c).unwrap()
    }

    #[test]
    fn param_validation() {
        assert!(CyclicFamilyParams::new(FamilyKind::TypeI, 0.0, 0.0, 1.0).is_err());
        assert!(CyclicFamilyParams::new(FamilyKind::TypeI, 1.0, 0.0, 0.0).is_err());
        assert!(CyclicFamilyParams::new(FamilyKind::TypeIII, 1.0, 0.0, 0.0).is_err());
        assert!(CyclicFamilyParams::new(FamilyKind::TypeII, 1.0, 0.0, 0.0).is_ok());
    }

    #[test]
    fn profiles_at_reference_points() {
        let t1 = family_profile(&p(FamilyKind::TypeI, 2.0, 0.0, 1.0), 0.0).unwrap();
        assert_eq!((t1.r, t1.a, t1.b), (0.5, 0.0, 0.0));
        let t2 = family_profile(&p(FamilyKind::TypeII, 1.0, 0.0, 1.0), 0.0).unwrap();
        assert_eq!((t2.r, t2.a, t2.b), (1.0, -1.0, 0.0));
        let t3 = family_profile(&p(FamilyKind::TypeIII, 1.0, 0.0, 1.0), 30.0).unwrap();
        assert_relative_eq!(t3.a, -1.0, epsilon = 1e-12);
    }

    #[test]
    fn profile_domain_errors() {
        let t1 = p(FamilyKind::TypeI, 2.0, 0.0, 1.0);
        assert!(family_profile(&t1, FRAC_PI_2).is_err());
        let t3 = p(FamilyKind::TypeIII, 1.0, 0.0, 1.0);
        assert!(family_profile(&t3, -0.5).is_err());
        assert!(family_profile(&t3, 0.0).is_err());
        let t2 = p(FamilyKind::TypeII, 1.0, 0.0, 1.0);
        assert!(family_profile(&t2, -1.0).is_err());
        // Type I with c < 0 lives on the shifted slab where cos(cs) < 0
        let neg = p(FamilyKind::TypeI, 1.0, 0.0, -1.0);
        assert!(family_profile(&neg, 0.0).is_err());
        assert!(family_profile(&neg, PI).unwrap().r > 0.0);
    }

    #[test]
    fn domains() {
        let d = domain_interval(&p(FamilyKind::TypeI, 3.0, 1.0, 1.0));
        assert_relative_eq!(d.lo, -FRAC_PI_2);
        assert_relative_eq!(d.hi, FRAC_PI_2);
        let d = domain_interval(&p(FamilyKind::TypeII, 1.0, 0.0, 1.0));
        assert_eq!((d.lo, d.hi), (-1.0, f64::INFINITY));
        let d = domain_interval(&p(FamilyKind::TypeII, 3.0, 4.0, 10.0));
        assert_eq!(d.lo, -2.0);
        let d = domain_interval(&p(FamilyKind::TypeIII, 0.3, -2.0, -4.0));
        assert_eq!((d.lo, d.hi), (0.0, f64::INFINITY));
    }

    #[test]
    fn profile_derivatives_match_finite_differences() {
        let cases = [
            (p(FamilyKind::TypeI, 1.3, -0.4, 0.8), 0.4),
            (p(FamilyKind::TypeII, 0.7, 0.9, 1.5), 0.3),
            (p(FamilyKind::TypeIII, -1.1, 0.5, 1.2), 0.9),
        ];
        let h = 1e-5;
        for (params, s) in cases {
            let f = |s| family_profile(&params, s).unwrap();
            let (m, c, q) = (f(s - h), f(s), f(s + h));
            let d = |a: f64, b: f64| (b - a) / (2.0 * h);
            assert_relative_eq!(c.rp, d(m.r, q.r), max_relative = 1e-7);
            assert_relative_eq!(c.ap, d(m.a, q.a), max_relative = 1e-7);
            assert_relative_eq!(c.bp, d(m.b, q.b), max_relative = 1e-7);
            assert_relative_eq!(c.rpp, d(m.rp, q.rp), max_relative = 1e-7);
            assert_relative_eq!(c.app, d(m.ap, q.ap), max_relative = 1e-7);
            assert_relative_eq!(c.bpp, d(m.bp, q.bp), max_relative = 1e-7);
        }
    }

    #[test]
    fn surface_points() {
        let s1 = cyclic_surface(&p(FamilyKind::TypeI, 2.0, 0.0, 1.0));
        assert!((s1.point(0.0, PI).unwrap() - V3::new(-0.5, 0.0, 0.0)).norm() < 1e-15);
        assert!((s1.point(0.0, 0.0).unwrap() - V3::new(0.5, 0.0, 0.0)).norm() < 1e-15);
        let s2 = cyclic_surface(&p(FamilyKind::TypeII, 1.0, 0.0, 1.0));
        assert!(s2.point(0.0, 0.0).unwrap().norm() < 1e-15);
        let q = s2.point(0.4, 1.0).unwrap();
        assert!((q - s2.point(0.4, 1.0 + 2.0 * PI).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn normalization_examples() {
        let (n, phi) = normalize_by_rotation(&p(FamilyKind::TypeI, 0.0, 3.0, 1.0));
        assert_eq!((n.lambda, n.mu), (3.0, 0.0));
        assert_relative_eq!(phi, FRAC_PI_2);
        let (n, phi) = normalize_by_rotation(&p(FamilyKind::TypeI, 1.0, 1.0, 1.0));
        assert_relative_eq!(n.lambda, 2f64.sqrt());
        assert_relative_eq!(phi, PI / 4.0);
        let orig = p(FamilyKind::TypeI, 2.0, 0.0, 1.0);
        let (n, phi) = normalize_by_rotation(&orig);
        assert_eq!((n, phi), (orig, 0.0));
    }

    #[test]
    fn overlap_examples() {
        let t1 = p(FamilyKind::TypeI, 2.0, 0.0, 1.0);
        assert!(overlap_predicate(&t1, -1.2, 1.2).unwrap());
        assert!(overlap_predicate(&t1, 0.7, 0.7).unwrap());
        // Type III circles at s = 0.1 and s = 3 are far apart in radius but nested
        let t3 = p(FamilyKind::TypeIII, 1.0, 0.0, 1.0);
        assert!(overlap_predicate(&t3, 0.1, 3.0).unwrap());
        assert!(overlap_predicate(&t1, 0.0, 2.0).is_err());
    }

    #[test]
    fn symmetry_examples() {
        let t1 = p(FamilyKind::TypeI, 2.0, 0.0, 1.0);
        assert!(symmetry_check(&t1, 0.3, 1.0).unwrap() < 1e-12);
        assert!(symmetry_check(&t1, 0.0, 2.2).unwrap() < 1e-12);
        assert!(mirror_symmetry_check(&t1, 0.3, 1.0).unwrap() < 1e-12);
        assert!(symmetry_check(&p(FamilyKind::TypeI, 2.0, 1.0, 1.0), 0.3, 1.0).is_err());
        assert!(symmetry_check(&p(FamilyKind::TypeII, 2.0, 0.0, 1.0), 0.3, 1.0).is_err());
        assert!(mirror_symmetry_check(&p(FamilyKind::TypeIII, 2.0, 0.0, 1.0), 0.3, 1.0).unwrap() < 1e-12);
    }

    #[test]
    fn type1_extension_by_translation() {
        let t1 = p(FamilyKind::TypeI, 2.0, 0.0, 1.0);
        let one = schwarz_extend(&t1, 1).unwrap();
        assert_eq!(one.pieces.len(), 1);
        assert!((one.pieces[0].point(0.2, 0.3).unwrap() - cyclic_surface(&t1).point(0.2, 0.3).unwrap()).norm() == 0.0);
        let two = schwarz_extend(&t1, 2).unwrap();
        assert_eq!(two.pieces.len(), 2);
        assert_eq!(two.limit_lines.len(), 3);
        assert_relative_eq!(two.limit_lines[1].point[2], FRAC_PI_2);
        assert_eq!(two.limit_lines[1].direction, [0.0, 1.0, 0.0]);
        // the translate coincides with the half-turn image about the shared line
        let base = cyclic_surface(&t1);
        let (s, th) = (0.4, 0.9);
        let x = base.point(s, th).unwrap();
        let reflected = V3::new(-x.x, x.y, PI - x.z);
        let y = two.pieces[1].point(-s, PI - th).unwrap();
        assert!((reflected - y).norm() < 1e-12);
    }

    #[test]
    fn type3_extension_half_turn() {
        let t3 = p(FamilyKind::TypeIII, 1.0, 0.0, 1.0);
        let ext = schwarz_extend(&t3, 1).unwrap();
        assert_eq!(ext.pieces.len(), 2);
        assert_eq!(ext.limit_lines[0].point, [0.0, 0.0, 0.0]);
        assert_eq!(ext.limit_lines[0].direction, [0.0, 1.0, 0.0]);
        let x = ext.pieces[0].point(0.5, 0.7).unwrap();
        let y = ext.pieces[1].point(0.5, 0.7).unwrap();
        assert!((V3::new(-x.x, x.y, -x.z) - y).norm() < 1e-12);
        assert!(schwarz_extend(&t3, 2).is_err());
        assert!(schwarz_extend(&t3, 0).is_err());
    }

    #[test]
    fn type2_extension_about_bottom_line() {
        let t2 = p(FamilyKind::TypeII, 1.0, 0.0, 1.0);
        let ext = schwarz_extend(&t2, 1).unwrap();
        assert_eq!(ext.limit_lines[0].point, [0.0, 0.0, -1.0]);
        let x = ext.pieces[0].point(0.5, 0.7).unwrap();
        let y = ext.pieces[1].point(0.5, 0.7).unwrap();
        assert!((V3::new(-x.x, x.y, -2.0 - x.z) - y).norm() < 1e-12);
    }

    #[test]
    fn asymptotes() {
        let t1 = p(FamilyKind::TypeI, 2.0, 0.0, 1.0);
        let rec = asymptote_probe(&t1, AsymptoteTarget::PlanarEnd { upper: true, theta: 0.0 }).unwrap();
        assert!(rec.monotone && rec.final_distance < 1e-3 && rec.diverges);
        assert_eq!(rec.limit, LimitObject::HorizontalPlane { z: FRAC_PI_2 });

        let t2 = p(FamilyKind::TypeII, 1.0, 0.0, 1.0);
        let rec = asymptote_probe(&t2, AsymptoteTarget::VerticalAsymptote { theta: FRAC_PI_2 }).unwrap();
        assert!(rec.monotone && rec.final_distance < 1e-3);

        let t3 = p(FamilyKind::TypeIII, 1.0, 0.0, 1.0);
        let rec = asymptote_probe(&t3, AsymptoteTarget::VerticalAsymptote { theta: 1.0 }).unwrap();
        assert_eq!(rec.limit, LimitObject::VerticalLine { x: -1.0, y: 0.0 });
        assert!(rec.monotone && rec.final_distance < 1e-3);

        assert!(asymptote_probe(&t1, AsymptoteTarget::VerticalAsymptote { theta: 0.0 }).is_err());
    }

    #[test]
    fn boundary_lines_are_limits() {
        for (params, upper) in [
            (p(FamilyKind::TypeI, 2.0, 0.0, 1.0), true),
            (p(FamilyKind::TypeI, 2.0, 0.0, 1.0), false),
            (p(FamilyKind::TypeII, 1.0, 0.0, 1.0), false),
            (p(FamilyKind::TypeIII, 1.0, 0.0, 1.0), false),
        ] {
            for y in [-0.7, 0.0, 0.4] {
                let rec = asymptote_probe(&params, AsymptoteTarget::BoundaryLine { upper, y }).unwrap();
                assert!(rec.final_distance < 1e-3, "{params:?} {y} {:?}", rec.distances);
            }
        }
    }

    #[test]
    fn rotational_examples() {
        let plane = rotational_solution(0.0, 1.5, 0.0);
        for r in [0.1, 1.0, 7.0] {
            assert_eq!(plane.u(r).unwrap(), 1.5);
        }
        let log = rotational_solution(1.0, 0.0, 0.0);
        assert_relative_eq!(log.d2u(2.0).unwrap() + log.du(2.0).unwrap() / 2.0, 0.0, epsilon = 1e-15);
        let parab = rotational_solution(0.0, 0.0, 8.0);
        assert_relative_eq!(parab.u(3.0).unwrap(), 9.0);
        assert!(parab.u(0.0).is_err());
    }
}
