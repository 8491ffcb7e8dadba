//! Axially symmetric anisotropic surface energies `F(nu3)`, their Wulff
//! curvature reciprocals, and quadrature of the total surface energy.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CamcError, Result};
use crate::grid::{GridSpec, Interval};
use crate::surface::ParametricSurface;

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// How `F` extends to normals pointing below the horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormalSymmetry {
    /// `F` is given directly on `domain`.
    None,
    /// `F(nu3) = f(|nu3|)`; `domain` constrains `|nu3|`. The energy then depends
    /// only on the normal line, and reversing orientation flips the sign of Lambda.
    Even,
}

/// Closed form of `(q, q/mu1, q/mu2)` for an energy whose Wulff reciprocals
/// blow up somewhere; `q` is the factor that clears the denominators.
pub type ClearedFn = Arc<dyn Fn(f64) -> ClearedReciprocals + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClearedReciprocals {
    pub factor: f64,
    pub inv_mu1: f64,
    pub inv_mu2: f64,
}

/// An anisotropic energy density depending only on the third component of the
/// unit normal.
#[derive(Clone)]
pub struct AxiallySymmetricEnergy {
    label: String,
    f: ScalarFn,
    df: ScalarFn,
    d2f: ScalarFn,
    domain: Interval,
    symmetry: NormalSymmetry,
    cleared: Option<ClearedFn>,
}

impl fmt::Debug for AxiallySymmetricEnergy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AxiallySymmetricEnergy")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("symmetry", &self.symmetry)
            .finish()
    }
}

/// Reciprocal principal curvatures of the Wulff shape at a given `nu3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WulffReciprocals {
    pub inv_mu1: f64,
    pub inv_mu2: f64,
}

impl AxiallySymmetricEnergy {
    /// Custom energy on `domain` with no symmetry extension.
    pub fn new<F, D, D2>(label: impl Into<String>, f: F, df: D, d2f: D2, domain: Interval) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
        D2: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let energy = Self {
            label: label.into(),
            f: Arc::new(f),
            df: Arc::new(df),
            d2f: Arc::new(d2f),
            domain,
            symmetry: NormalSymmetry::None,
            cleared: None,
        };
        debug_assert!(
            energy.derivative_consistency(1e-6).is_ok(),
            "energy `{}`: {:?}",
            energy.label,
            energy.derivative_consistency(1e-6)
        );
        energy
    }

    /// Reinterpret the functions as acting on `|nu3|`.
    pub fn even(mut self) -> Self {
        self.symmetry = NormalSymmetry::Even;
        self
    }

    pub fn with_cleared_form<C>(mut self, cleared: C) -> Self
    where
        C: Fn(f64) -> ClearedReciprocals + Send + Sync + 'static,
    {
        self.cleared = Some(Arc::new(cleared));
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn symmetry(&self) -> NormalSymmetry {
        self.symmetry
    }

    fn reduced(&self, nu3: f64) -> (f64, f64) {
        match self.symmetry {
            NormalSymmetry::None => (nu3, 1.0),
            NormalSymmetry::Even => (nu3.abs(), if nu3 < 0.0 { -1.0 } else { 1.0 }),
        }
    }

    pub fn in_domain(&self, nu3: f64) -> bool {
        self.domain.contains(self.reduced(nu3).0)
    }

    fn check(&self, nu3: f64) -> Result<(f64, f64)> {
        let (x, sign) = self.reduced(nu3);
        if self.domain.contains(x) {
            Ok((x, sign))
        } else {
            Err(CamcError::Domain(format!("nu3 = {nu3} outside the domain of energy `{}`", self.label)))
        }
    }

    pub fn value(&self, nu3: f64) -> Result<f64> {
        let (x, _) = self.check(nu3)?;
        Ok((self.f)(x))
    }

    pub fn derivative(&self, nu3: f64) -> Result<f64> {
        let (x, sign) = self.check(nu3)?;
        Ok(sign * (self.df)(x))
    }

    pub fn second_derivative(&self, nu3: f64) -> Result<f64> {
        let (x, _) = self.check(nu3)?;
        Ok((self.d2f)(x))
    }

    /// `(q, q/mu1, q/mu2)`. Energies with a closed cleared form accept any
    /// `|nu3| <= 1`; otherwise `q = 1` and `nu3` must be in the domain.
    pub fn cleared_reciprocals(&self, nu3: f64) -> Result<ClearedReciprocals> {
        match &self.cleared {
            Some(c) if nu3.abs() <= 1.0 => Ok(c(nu3)),
            Some(_) => Err(CamcError::Domain(format!("|nu3| = {} > 1", nu3.abs()))),
            None => {
                let w = wulff_reciprocals(self, nu3)?;
                Ok(ClearedReciprocals { factor: 1.0, inv_mu1: w.inv_mu1, inv_mu2: w.inv_mu2 })
            }
        }
    }

    /// Compares `dF` and `d2F` with central differences of `F` and `dF` at
    /// interior sample points; returns the worst relative error on failure.
    pub fn derivative_consistency(&self, rel_tol: f64) -> std::result::Result<(), String> {
        let (lo, hi) = (self.domain.lo, self.domain.hi);
        let (lo, hi) = match (lo.is_finite(), hi.is_finite()) {
            (true, true) => (lo, hi),
            (true, false) => (lo, lo + 2.0),
            (false, true) => (hi - 2.0, hi),
            (false, false) => (-1.0, 1.0),
        };
        for k in 1..10 {
            let x = lo + (hi - lo) * k as f64 / 10.0;
            let h = 1e-5 * x.abs().max(1e-2);
            let fd1 = ((self.f)(x + h) - (self.f)(x - h)) / (2.0 * h);
            let fd2 = ((self.df)(x + h) - (self.df)(x - h)) / (2.0 * h);
            for (name, exact, approx) in [("dF", (self.df)(x), fd1), ("d2F", (self.d2f)(x), fd2)] {
                let err = (exact - approx).abs() / exact.abs().max(1.0);
                if !(err < rel_tol) {
                    return Err(format!("{name} at {x}: exact {exact}, fd {approx}, rel err {err:e}"));
                }
            }
        }
        Ok(())
    }
}

/// `F(nu3) = 1/nu3 - nu3`, the Dirichlet energy written on the surface.
///
/// Evaluated on `|nu3|`, so a graph oriented downward sees the same density;
/// `nu3 = 0` (vertical tangent plane) is rejected.
pub fn dirichlet_energy() -> AxiallySymmetricEnergy {
    AxiallySymmetricEnergy::new(
        "dirichlet",
        |x| 1.0 / x - x,
        |x| -1.0 / (x * x) - 1.0,
        |x| 2.0 / (x * x * x),
        Interval::half_open_left(0.0, 1.0),
    )
    .even()
    .with_cleared_form(|nu3| {
        let a = nu3.abs();
        ClearedReciprocals { factor: a * a * a, inv_mu1: 2.0, inv_mu2: 2.0 * nu3 * nu3 }
    })
}

/// `F(nu3) = sqrt(2 nu3^2 - 1) / nu3`; its Wulff shape is a hyperboloid.
pub fn hyperboloid_energy() -> AxiallySymmetricEnergy {
    AxiallySymmetricEnergy::new(
        "hyperboloid",
        |x| (2.0 * x * x - 1.0).sqrt() / x,
        |x| 1.0 / ((2.0 * x * x - 1.0).sqrt() * x * x),
        |x| {
            let g = (2.0 * x * x - 1.0).sqrt();
            -2.0 * (3.0 * x * x - 1.0) / (g * g * g * x * x * x)
        },
        Interval::half_open_left(std::f64::consts::FRAC_1_SQRT_2, 1.0),
    )
    .even()
}

/// `F = 1`: area, for which Lambda equals twice the mean curvature.
pub fn isotropic_energy() -> AxiallySymmetricEnergy {
    AxiallySymmetricEnergy::new("isotropic", |_| 1.0, |_| 0.0, |_| 0.0, Interval::closed(0.0, 1.0))
        .even()
        .with_cleared_form(|_| ClearedReciprocals { factor: 1.0, inv_mu1: 1.0, inv_mu2: 1.0 })
}

/// `1/mu2 = F - nu3 F'`, `1/mu1 = (1 - nu3^2) F'' + 1/mu2`.
pub fn wulff_reciprocals(energy: &AxiallySymmetricEnergy, nu3: f64) -> Result<WulffReciprocals> {
    let f = energy.value(nu3)?;
    let df = energy.derivative(nu3)?;
    let d2f = energy.second_derivative(nu3)?;
    let inv_mu2 = f - nu3 * df;
    let inv_mu1 = (1.0 - nu3 * nu3) * d2f + inv_mu2;
    Ok(WulffReciprocals { inv_mu1, inv_mu2 })
}

/// Midpoint-rule quadrature of `F(nu3) dSigma` over the grid's parameter rectangle.
pub fn surface_energy_quadrature(
    surface: &ParametricSurface,
    energy: &AxiallySymmetricEnergy,
    grid: &GridSpec,
) -> Result<f64> {
    grid.validate()?;
    let cell = grid.ds_cell() * grid.dtheta_cell();
    let thetas = grid.theta_midpoints();
    let rows: Vec<Result<f64>> = grid
        .s_midpoints()
        .into_par_iter()
        .map(|s| {
            let mut row = 0.0;
            for &t in &thetas {
                let jet = surface.jet(s, t)?;
                let n = jet.xs.cross(&jet.xt);
                let detg = n.norm_squared();
                if !(detg > 0.0) {
                    return Err(CamcError::DegenerateJet { s, theta: t, cross_norm: detg.sqrt() });
                }
                let area = detg.sqrt();
                row += energy.value(n.z / area)? * area;
            }
            Ok(row)
        })
        .collect();
    let mut total = 0.0;
    for r in rows {
        total += r?;
    }
    Ok(total * cell)
}

/// Samples of a scalar field `u(x, y)` at the nodes of a uniform planar grid.
/// `values[j * nx + i]` holds `u(x_i, y_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarGrid {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<f64>,
}

impl ScalarGrid {
    pub fn sample(x_range: (f64, f64), y_range: (f64, f64), nx: usize, ny: usize, u: impl Fn(f64, f64) -> f64) -> Self {
        let xs = crate::grid::linspace(x_range.0, x_range.1, nx);
        let ys = crate::grid::linspace(y_range.0, y_range.1, ny);
        let mut values = Vec::with_capacity(nx * ny);
        for &y in &ys {
            for &x in &xs {
                values.push(u(x, y));
            }
        }
        Self { x_range, y_range, nx, ny, values }
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx + i]
    }
}

/// `integral |Du|^2 + lambda * integral u` on the grid's rectangle.
///
/// Each cell contributes its center value: the gradient there is the central
/// difference across the cell (averaged over the two cell edges), and `u` is
/// the mean of the four corner samples.
pub fn discrete_graph_energy(u: &ScalarGrid, lambda: f64) -> Result<f64> {
    if u.nx < 3 || u.ny < 3 {
        return Err(CamcError::GridTooSmall { nx: u.nx, ny: u.ny });
    }
    if u.values.len() != u.nx * u.ny {
        return Err(CamcError::InvalidGrid(format!("{} values for a {} x {} grid", u.values.len(), u.nx, u.ny)));
    }
    let hx = (u.x_range.1 - u.x_range.0) / (u.nx - 1) as f64;
    let hy = (u.y_range.1 - u.y_range.0) / (u.ny - 1) as f64;
    if !(hx > 0.0 && hy > 0.0) {
        return Err(CamcError::InvalidGrid("grid ranges must be increasing".into()));
    }
    let mut dirichlet = 0.0;
    let mut volume = 0.0;
    for j in 0..u.ny - 1 {
        for i in 0..u.nx - 1 {
            let (u00, u10, u01, u11) = (u.at(i, j), u.at(i + 1, j), u.at(i, j + 1), u.at(i + 1, j + 1));
            let ux = ((u10 + u11) - (u00 + u01)) / (2.0 * hx);
            let uy = ((u01 + u11) - (u00 + u10)) / (2.0 * hy);
            dirichlet += ux * ux + uy * uy;
            volume += 0.25 * (u00 + u10 + u01 + u11);
        }
    }
    Ok((dirichlet + lambda * volume) * hx * hy)
}
