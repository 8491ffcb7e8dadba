//! Parametric surfaces, their second-order jets, the principal-direction frame
//! `E1 = e3 - nu3 nu`, `E2 = nu x E1`, and the anisotropic mean curvature.
//!
//! Orientation is always `nu = Xs x Xtheta / |Xs x Xtheta|`. Lambda's sign
//! follows that choice; swapping the parameters or reversing one of them flips it.

use std::fmt;
use std::sync::Arc;

use nalgebra::{Rotation3, Vector3};
use serde::{Deserialize, Serialize};

use crate::energy::{wulff_reciprocals, AxiallySymmetricEnergy};
use crate::error::{CamcError, Result};
use crate::grid::{Interval, ParamRect};

pub type V3 = Vector3<f64>;
pub type EvalFn = Arc<dyn Fn(f64, f64) -> V3 + Send + Sync>;
pub type JetFn = Arc<dyn Fn(f64, f64) -> SurfaceJet + Send + Sync>;

/// `1 - nu3^2` at or below this is treated as a vertical normal.
pub const FRAME_EPS: f64 = 1e-10;
/// `|Xs x Xtheta|` below this is not an immersion.
pub const IMMERSION_EPS: f64 = 1e-12;
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Position and first and second partial derivatives at `(s, theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceJet {
    pub pos: V3,
    pub xs: V3,
    /// d/dtheta
    pub xt: V3,
    pub xss: V3,
    pub xst: V3,
    pub xtt: V3,
}

impl SurfaceJet {
    pub fn map_linear(&self, m: &nalgebra::Matrix3<f64>, shift: V3) -> Self {
        Self {
            pos: m * self.pos + shift,
            xs: m * self.xs,
            xt: m * self.xt,
            xss: m * self.xss,
            xst: m * self.xst,
            xtt: m * self.xtt,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum JetMode {
    Analytic,
    FiniteDifference { step: f64 },
}

/// Parameter changes used to probe the orientation convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reparam {
    Identity,
    /// `Y(u, v) = X(v, u)`
    Swap,
    /// `Y(s, theta) = X(s, -theta)`
    FlipTheta,
}

#[derive(Clone)]
pub struct ParametricSurface {
    label: String,
    eval: EvalFn,
    analytic: Option<JetFn>,
    mode: JetMode,
    domain: ParamRect,
}

impl fmt::Debug for ParametricSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParametricSurface")
            .field("label", &self.label)
            .field("mode", &self.mode)
            .field("domain", &self.domain)
            .finish()
    }
}

impl ParametricSurface {
    /// Surface with closed-form jets; the position map is taken from the jet.
    pub fn analytic<J>(label: impl Into<String>, domain: ParamRect, jet: J) -> Self
    where
        J: Fn(f64, f64) -> SurfaceJet + Send + Sync + 'static,
    {
        let jet: JetFn = Arc::new(jet);
        let j = jet.clone();
        Self {
            label: label.into(),
            eval: Arc::new(move |s, t| j(s, t).pos),
            analytic: Some(jet),
            mode: JetMode::Analytic,
            domain,
        }
    }

    pub fn finite_difference<E>(label: impl Into<String>, domain: ParamRect, step: f64, eval: E) -> Self
    where
        E: Fn(f64, f64) -> V3 + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            eval: Arc::new(eval),
            analytic: None,
            mode: JetMode::FiniteDifference { step },
            domain,
        }
    }

    /// `X(x, y) = (x, y, u(x, y))` on the whole plane, finite-difference jets.
    pub fn graph<U>(label: impl Into<String>, u: U, step: f64) -> Self
    where
        U: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        let domain = ParamRect::new(Interval::real_line(), Interval::real_line());
        Self::finite_difference(label, domain, step, move |x, y| V3::new(x, y, u(x, y)))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> ParamRect {
        self.domain
    }

    pub fn mode(&self) -> JetMode {
        self.mode
    }

    pub fn has_analytic_jet(&self) -> bool {
        self.analytic.is_some()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_domain(mut self, domain: ParamRect) -> Self {
        self.domain = domain;
        self
    }

    pub fn with_jet_mode(mut self, mode: JetMode) -> Result<Self> {
        match mode {
            JetMode::Analytic if self.analytic.is_none() => Err(CamcError::NoAnalyticJet),
            JetMode::FiniteDifference { step } if !(step > 0.0) => {
                Err(CamcError::InvalidParams(format!("finite-difference step must be positive, got {step}")))
            }
            _ => {
                self.mode = mode;
                Ok(self)
            }
        }
    }

    pub fn point(&self, s: f64, theta: f64) -> Result<V3> {
        if !self.domain.contains(s, theta) {
            return Err(CamcError::OutOfDomain { s, theta });
        }
        Ok((self.eval)(s, theta))
    }

    /// Position only, no domain check. Used by tessellation near open ends.
    pub fn point_unchecked(&self, s: f64, theta: f64) -> V3 {
        (self.eval)(s, theta)
    }

    pub fn jet(&self, s: f64, theta: f64) -> Result<SurfaceJet> {
        let jet = match self.mode {
            JetMode::Analytic => {
                if !self.domain.contains(s, theta) {
                    return Err(CamcError::OutOfDomain { s, theta });
                }
                (self.analytic.as_ref().ok_or(CamcError::NoAnalyticJet)?)(s, theta)
            }
            JetMode::FiniteDifference { step } => {
                if !self.domain.contains_with_margin(s, theta, 2.0 * step) {
                    return Err(CamcError::OutOfDomain { s, theta });
                }
                fd_jet(&*self.eval, s, theta, step)
            }
        };
        let cross_norm = jet.xs.cross(&jet.xt).norm();
        if !(cross_norm >= IMMERSION_EPS) {
            return Err(CamcError::DegenerateJet { s, theta, cross_norm });
        }
        Ok(jet)
    }

    /// `p -> rotation * p + translation` applied to the whole surface.
    pub fn transformed(&self, rotation: Rotation3<f64>, translation: V3) -> Self {
        let m = *rotation.matrix();
        let eval = self.eval.clone();
        let analytic =
            self.analytic.clone().map(|j| -> JetFn { Arc::new(move |s, t| j(s, t).map_linear(&m, translation)) });
        Self {
            label: format!("{} (moved)", self.label),
            eval: Arc::new(move |s, t| m * eval(s, t) + translation),
            analytic,
            mode: self.mode,
            domain: self.domain,
        }
    }

    pub fn reparametrized(&self, reparam: Reparam) -> Self {
        let eval = self.eval.clone();
        let analytic = self.analytic.clone();
        match reparam {
            Reparam::Identity => self.clone(),
            Reparam::Swap => Self {
                label: format!("{} (swapped)", self.label),
                eval: Arc::new(move |u, v| eval(v, u)),
                analytic: analytic.map(|j| -> JetFn {
                    Arc::new(move |u, v| {
                        let k = j(v, u);
                        SurfaceJet { pos: k.pos, xs: k.xt, xt: k.xs, xss: k.xtt, xst: k.xst, xtt: k.xss }
                    })
                }),
                mode: self.mode,
                domain: self.domain.swapped(),
            },
            Reparam::FlipTheta => {
                let t = self.domain.theta;
                Self {
                    label: format!("{} (theta reversed)", self.label),
                    eval: Arc::new(move |s, th| eval(s, -th)),
                    analytic: analytic.map(|j| -> JetFn {
                        Arc::new(move |s, th| {
                            let k = j(s, -th);
                            SurfaceJet { pos: k.pos, xs: k.xs, xt: -k.xt, xss: k.xss, xst: -k.xst, xtt: k.xtt }
                        })
                    }),
                    mode: self.mode,
                    domain: ParamRect::new(
                        self.domain.s,
                        Interval { lo: -t.hi, hi: -t.lo, lo_closed: t.hi_closed, hi_closed: t.lo_closed },
                    ),
                }
            }
        }
    }
}

fn fd_jet(eval: &(dyn Fn(f64, f64) -> V3 + Send + Sync), s: f64, t: f64, h: f64) -> SurfaceJet {
    // fourth-order central stencils on offsets -2h..2h; the offsets are
    // rounded so that the sample abscissae are exactly representable
    let hs = (s + h) - s;
    let ht = (t + h) - t;
    const W1: [f64; 5] = [1.0, -8.0, 0.0, 8.0, -1.0];
    const W2: [f64; 5] = [-1.0, 16.0, -30.0, 16.0, -1.0];
    let mut grid = [[V3::zeros(); 5]; 5];
    for (i, row) in grid.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = eval(s + (i as f64 - 2.0) * hs, t + (j as f64 - 2.0) * ht);
        }
    }
    let mut xs = V3::zeros();
    let mut xt = V3::zeros();
    let mut xss = V3::zeros();
    let mut xtt = V3::zeros();
    let mut xst = V3::zeros();
    for k in 0..5 {
        xs += grid[k][2] * W1[k];
        xt += grid[2][k] * W1[k];
        xss += grid[k][2] * W2[k];
        xtt += grid[2][k] * W2[k];
        for l in 0..5 {
            if W1[k] != 0.0 && W1[l] != 0.0 {
                xst += grid[k][l] * (W1[k] * W1[l]);
            }
        }
    }
    SurfaceJet {
        pos: grid[2][2],
        xs: xs / (12.0 * hs),
        xt: xt / (12.0 * ht),
        xss: xss / (12.0 * hs * hs),
        xst: xst / (144.0 * hs * ht),
        xtt: xtt / (12.0 * ht * ht),
    }
}

/// Gauss map, fundamental forms and the principal-direction frame at a jet.
///
/// `hss`, `hst`, `htt` use the un-normalized scaling `<Xs x Xtheta, X..>`;
/// the second fundamental form is these divided by `sqrt(detg)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameData {
    pub nu: V3,
    pub nu3: f64,
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    pub detg: f64,
    pub hss: f64,
    pub hst: f64,
    pub htt: f64,
    pub e1: V3,
    pub e2: V3,
    pub c11: f64,
    pub c12: f64,
    pub c21: f64,
    pub c22: f64,
    /// `detg / r^2`; only set for cyclic parametrizations via [`FrameData::with_cyclic_radius`].
    pub w: Option<f64>,
    /// Isotropic mean curvature.
    pub h: f64,
}

impl FrameData {
    /// `h(E1, E1)` for the non-unit `E1`.
    pub fn h_e1(&self) -> f64 {
        self.quadratic(self.c11, self.c12)
    }

    /// `h(E2, E2)` for the non-unit `E2`.
    pub fn h_e2(&self) -> f64 {
        self.quadratic(self.c21, self.c22)
    }

    fn quadratic(&self, a: f64, b: f64) -> f64 {
        (a * a * self.hss + 2.0 * a * b * self.hst + b * b * self.htt) / self.detg.sqrt()
    }

    /// `1 - nu3^2 = |E1|^2 = |E2|^2`
    pub fn horizon_gap(&self) -> f64 {
        1.0 - self.nu3 * self.nu3
    }

    pub fn with_cyclic_radius(mut self, r: f64) -> Self {
        self.w = Some(self.detg / (r * r));
        self
    }
}

pub fn frame(jet: &SurfaceJet) -> Result<FrameData> {
    let n = jet.xs.cross(&jet.xt);
    let norm = n.norm();
    if !(norm >= IMMERSION_EPS) {
        return Err(CamcError::DegenerateJet { s: f64::NAN, theta: f64::NAN, cross_norm: norm });
    }
    let nu = n / norm;
    let nu3 = nu.z;
    let gap = 1.0 - nu3 * nu3;
    if !(gap > FRAME_EPS) {
        return Err(CamcError::VerticalNormalDegeneracy { gap });
    }
    let g11 = jet.xs.dot(&jet.xs);
    let g12 = jet.xs.dot(&jet.xt);
    let g22 = jet.xt.dot(&jet.xt);
    let detg = norm * norm;
    let hss = n.dot(&jet.xss);
    let hst = n.dot(&jet.xst);
    let htt = n.dot(&jet.xtt);

    let e1 = V3::z() - nu3 * nu;
    let e2 = nu.cross(&e1);
    // E = c1 Xs + c2 Xtheta  <=>  G [c1 c2]^T = [<E,Xs> <E,Xtheta>]^T
    let gram_det = g11 * g22 - g12 * g12;
    let solve = |e: &V3| {
        let (p, q) = (e.dot(&jet.xs), e.dot(&jet.xt));
        ((g22 * p - g12 * q) / gram_det, (g11 * q - g12 * p) / gram_det)
    };
    let (c11, c12) = solve(&e1);
    let (c21, c22) = solve(&e2);
    let h = (htt * g11 - 2.0 * hst * g12 + hss * g22) / (2.0 * detg * norm);

    Ok(FrameData { nu, nu3, g11, g12, g22, detg, hss, hst, htt, e1, e2, c11, c12, c21, c22, w: None, h })
}

/// Lambda through the Wulff reciprocals of an arbitrary axially symmetric energy:
/// `Lambda = (h(E1,E1)/mu1 + h(E2,E2)/mu2) / (1 - nu3^2)`.
pub fn camc_lambda(jet: &SurfaceJet, energy: &AxiallySymmetricEnergy) -> Result<f64> {
    let f = frame(jet)?;
    camc_lambda_from_frame(&f, energy)
}

pub fn camc_lambda_from_frame(f: &FrameData, energy: &AxiallySymmetricEnergy) -> Result<f64> {
    let w = wulff_reciprocals(energy, f.nu3)?;
    Ok((w.inv_mu1 * f.h_e1() + w.inv_mu2 * f.h_e2()) / f.horizon_gap())
}

/// Dirichlet-specific reduction
/// `Lambda |nu3|^3 (1 - nu3^2) = 2 (h(E1,E1) + nu3^2 h(E2,E2))`.
pub fn dirichlet_lambda_reduced(jet: &SurfaceJet) -> Result<f64> {
    let f = frame(jet)?;
    let a = f.nu3.abs();
    if !(a > 0.0) {
        return Err(CamcError::Domain("nu3 = 0: Dirichlet density is unbounded".into()));
    }
    Ok(2.0 * (f.h_e1() + f.nu3 * f.nu3 * f.h_e2()) / (a * a * a * f.horizon_gap()))
}

/// `q (h(E1,E1)/mu1 + h(E2,E2)/mu2) - lambda0 q (1 - nu3^2)`, with `q` the
/// energy's clearing factor. Zero exactly where Lambda = lambda0, and finite
/// where the Wulff reciprocals are not (e.g. `nu3 = 0` for Dirichlet).
pub fn cleared_residual_from_frame(f: &FrameData, energy: &AxiallySymmetricEnergy, lambda0: f64) -> Result<f64> {
    let c = energy.cleared_reciprocals(f.nu3)?;
    Ok(c.inv_mu1 * f.h_e1() + c.inv_mu2 * f.h_e2() - lambda0 * c.factor * f.horizon_gap())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormalRule {
    /// `nu = Xs x Xtheta / |Xs x Xtheta|`
    CrossSThenTheta,
}

/// Which normal Lambda was computed against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientationRecord {
    pub rule: NormalRule,
    pub nu: [f64; 3],
    /// Sign of nu3; 0 when the normal is horizontal.
    pub nu3_sign: i8,
}

pub fn camc_residual_sign_convention(jet: &SurfaceJet) -> Result<OrientationRecord> {
    let n = jet.xs.cross(&jet.xt);
    let norm = n.norm();
    if !(norm >= IMMERSION_EPS) {
        return Err(CamcError::DegenerateJet { s: f64::NAN, theta: f64::NAN, cross_norm: norm });
    }
    let nu = n / norm;
    let nu3_sign = if nu.z > 0.0 {
        1
    } else if nu.z < 0.0 {
        -1
    } else {
        0
    };
    Ok(OrientationRecord { rule: NormalRule::CrossSThenTheta, nu: [nu.x, nu.y, nu.z], nu3_sign })
}

/// Catenoid `r(s) = cosh s` about the z-axis, analytic jets.
pub fn catenoid() -> ParametricSurface {
    ParametricSurface::analytic("catenoid", ParamRect::periodic(Interval::real_line()), |s, t| {
        let (ch, sh) = (s.cosh(), s.sinh());
        let (c, n) = (t.cos(), t.sin());
        SurfaceJet {
            pos: V3::new(ch * c, ch * n, s),
            xs: V3::new(sh * c, sh * n, 1.0),
            xt: V3::new(-ch * n, ch * c, 0.0),
            xss: V3::new(ch * c, ch * n, 0.0),
            xst: V3::new(-sh * n, sh * c, 0.0),
            xtt: V3::new(-ch * c, -ch * n, 0.0),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::{dirichlet_energy, isotropic_energy};
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn plane() -> ParametricSurface {
        ParametricSurface::analytic("plane", ParamRect::new(Interval::real_line(), Interval::real_line()), |s, t| {
            SurfaceJet {
                pos: V3::new(s, t, 0.0),
                xs: V3::x(),
                xt: V3::y(),
                xss: V3::zeros(),
                xst: V3::zeros(),
                xtt: V3::zeros(),
            }
        })
    }

    fn cylinder() -> ParametricSurface {
        ParametricSurface::finite_difference("cylinder", ParamRect::periodic(Interval::real_line()), 1e-4, |s, t| {
            V3::new(t.cos(), t.sin(), s)
        })
    }

    #[test]
    fn plane_jet() {
        let j = plane().jet(0.3, -2.0).unwrap();
        assert_eq!(j.xs, V3::x());
        assert_eq!(j.xt, V3::y());
        assert_eq!(j.xss + j.xst + j.xtt, V3::zeros());
        let fd = plane().with_jet_mode(JetMode::FiniteDifference { step: 1e-4 });
        assert!(fd.is_ok());
    }

    #[test]
    fn cylinder_second_derivative() {
        let j = cylinder().jet(0.0, 0.0).unwrap();
        assert!((j.xtt - V3::new(-1.0, 0.0, 0.0)).norm() < 1e-7);
        assert!(cylinder().with_jet_mode(JetMode::Analytic).is_err());
    }

    #[test]
    fn cylinder_frame_is_horizontal_normal() {
        let f = frame(&cylinder().jet(0.2, 0.4).unwrap()).unwrap();
        assert!(f.nu3.abs() < 1e-12);
        assert!((f.e1 - V3::z()).norm() < 1e-12);
        assert_relative_eq!(f.e1.norm_squared(), 1.0, epsilon = 1e-12);
        // Dirichlet density is unbounded on a vertical tangent plane
        let (sn, cs) = 0.4f64.sin_cos();
        let exact = SurfaceJet {
            pos: V3::new(cs, sn, 0.2),
            xs: V3::z(),
            xt: V3::new(-sn, cs, 0.0),
            xss: V3::zeros(),
            xst: V3::zeros(),
            xtt: V3::new(-cs, -sn, 0.0),
        };
        assert!(camc_lambda(&exact, &dirichlet_energy()).is_err());
    }

    #[test]
    fn graph_frame_matches_graph_normal() {
        let g = ParametricSurface::graph("ramp", |x, _| x, 1e-4);
        let f = frame(&g.jet(0.0, 0.0).unwrap()).unwrap();
        let expect = V3::new(-1.0, 0.0, 1.0) * FRAC_1_SQRT_2;
        assert!((f.nu - expect).norm() < 1e-10);
        assert_relative_eq!(f.nu3, FRAC_1_SQRT_2, epsilon = 1e-10);
        assert_relative_eq!(f.e1.norm_squared(), 0.5, epsilon = 1e-10);
    }

    #[test]
    fn horizontal_plane_is_vertical_normal_degenerate() {
        let err = frame(&plane().jet(0.0, 0.0).unwrap()).unwrap_err();
        assert!(matches!(err, CamcError::VerticalNormalDegeneracy { .. }));
    }

    #[test]
    fn degenerate_and_out_of_domain_jets() {
        let s = ParametricSurface::finite_difference(
            "collapsed",
            ParamRect::new(Interval::open(0.0, 1.0), Interval::real_line()),
            1e-4,
            |s, _| V3::new(s, 0.0, 0.0),
        );
        assert!(matches!(s.jet(0.5, 0.0), Err(CamcError::DegenerateJet { .. })));
        // FD stencil needs a 2h margin
        assert!(matches!(s.jet(1e-4, 0.0), Err(CamcError::OutOfDomain { .. })));
        assert!(matches!(s.jet(1.5, 0.0), Err(CamcError::OutOfDomain { .. })));
    }

    #[test]
    fn catenoid_isotropic_lambda_is_twice_mean_curvature_and_zero() {
        let e = isotropic_energy();
        for &(s, t) in &[(0.3, 0.1), (-0.7, 2.0), (1.1, 4.0)] {
            let j = catenoid().jet(s, t).unwrap();
            let f = frame(&j).unwrap();
            let l = camc_lambda(&j, &e).unwrap();
            assert!(l.abs() < 1e-12, "{l}");
            assert!((l - 2.0 * f.h).abs() < 1e-12);
        }
    }

    #[test]
    fn orientation_record_tracks_normal() {
        let j = catenoid().jet(0.5, 0.0).unwrap();
        let rec = camc_residual_sign_convention(&j).unwrap();
        assert_eq!(rec.rule, NormalRule::CrossSThenTheta);
        // Xs x Xtheta = (-cosh cos, -cosh sin, sinh cosh): inward, tilted up for s > 0
        assert_eq!(rec.nu3_sign, 1);
        let flipped = catenoid().reparametrized(Reparam::Swap).jet(0.0, 0.5).unwrap();
        assert_eq!(camc_residual_sign_convention(&flipped).unwrap().nu3_sign, -1);
    }
}
