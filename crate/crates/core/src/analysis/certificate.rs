//! Pass/fail report bundling the Lambda field and the theta-spectra of the
//! cleared residual.

use serde::{Deserialize, Serialize};

use super::field::{cleared_residual_field, lambda_field_with, ExcludedNode, FieldOptions};
use super::fourier::{fourier_project, FourierSpectrum, DEFAULT_MODE_CUTOFF};
use crate::energy::AxiallySymmetricEnergy;
use crate::error::Result;
use crate::grid::GridSpec;
use crate::surface::{JetMode, ParametricSurface};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertificateTolerances {
    /// Bound on `max |Lambda - target|` over admissible nodes.
    pub lambda_abs: f64,
    /// Bound on every `|A_n|`, `|B_n|` of the cleared residual, per slice.
    pub fourier_abs: f64,
    pub mode_cutoff: usize,
    /// Conditioning floor on `|nu3|`; the jet-mode default when absent.
    pub nu3_floor: Option<f64>,
}

impl Default for CertificateTolerances {
    fn default() -> Self {
        Self { lambda_abs: 1e-6, fourier_abs: 1e-6, mode_cutoff: DEFAULT_MODE_CUTOFF, nu3_floor: None }
    }
}

impl CertificateTolerances {
    /// Both bounds set to `tol`.
    pub fn uniform(tol: f64) -> Self {
        Self { lambda_abs: tol, fourier_abs: tol, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorstSlice {
    pub s: f64,
    #[serde(rename = "A")]
    pub a: Vec<f64>,
    #[serde(rename = "B")]
    pub b: Vec<f64>,
}

impl From<&FourierSpectrum> for WorstSlice {
    fn from(sp: &FourierSpectrum) -> Self {
        Self { s: sp.s, a: sp.a.clone(), b: sp.b.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CamcReport {
    pub surface_descriptor: String,
    pub energy_label: String,
    pub jet_mode: String,
    pub grid: GridSpec,
    pub lambda0: Option<f64>,
    /// The constant Lambda was compared against: `lambda0`, else the field mean.
    pub target: f64,
    pub max_abs_dev: f64,
    /// `(max - min) / 2` of Lambda over admissible nodes.
    pub deviation_from_best_constant: f64,
    pub max_cleared_residual: f64,
    pub max_mode_magnitude: f64,
    pub worst_slice: WorstSlice,
    pub nu3_floor: f64,
    pub admissible_nodes: usize,
    pub excluded_nodes: usize,
    /// At most a handful of the excluded nodes, for diagnostics.
    pub excluded_sample: Vec<ExcludedNode>,
    pub pass: bool,
    pub tolerances: CertificateTolerances,
}

const EXCLUDED_SAMPLE: usize = 8;

/// Evaluates Lambda at every node above the conditioning floor and the
/// cleared residual (against `lambda0`, or the Lambda mean) at every node,
/// projects each theta-slice of the latter onto modes `0..=N`, and passes
/// iff both stay within tolerance.
pub fn camc_certificate(
    surface: &ParametricSurface,
    energy: &AxiallySymmetricEnergy,
    grid: &GridSpec,
    lambda0: Option<f64>,
    tol: &CertificateTolerances,
) -> Result<CamcReport> {
    let lf = lambda_field_with(surface, energy, grid, &FieldOptions { target: lambda0, nu3_floor: tol.nu3_floor })?;
    let cf = cleared_residual_field(surface, energy, grid, lf.target)?;

    let mut worst: Option<FourierSpectrum> = None;
    for (i, &s) in cf.s.iter().enumerate() {
        let Some(slice) = cf.slice(i) else { continue };
        let sp = fourier_project(s, &slice, tol.mode_cutoff)?;
        if worst.as_ref().is_none_or(|w| sp.max_magnitude() > w.max_magnitude()) {
            worst = Some(sp);
        }
    }
    let (worst_slice, max_mode) = match &worst {
        Some(w) => (WorstSlice::from(w), w.max_magnitude()),
        // every slice touches a horizontal-normal node: no spectrum to bound
        None => (WorstSlice { s: f64::NAN, a: vec![], b: vec![] }, f64::INFINITY),
    };

    let pass = lf.max_abs_dev <= tol.lambda_abs && max_mode <= tol.fourier_abs;
    let jet_mode = match surface.mode() {
        JetMode::Analytic => "analytic".to_string(),
        JetMode::FiniteDifference { step } => format!("fd(h={step})"),
    };
    Ok(CamcReport {
        surface_descriptor: surface.label().to_string(),
        energy_label: energy.label().to_string(),
        jet_mode,
        grid: *grid,
        lambda0,
        target: lf.target,
        max_abs_dev: lf.max_abs_dev,
        deviation_from_best_constant: lf.deviation_from_best_constant(),
        max_cleared_residual: cf.max_abs_dev,
        max_mode_magnitude: max_mode,
        worst_slice,
        nu3_floor: lf.nu3_floor,
        admissible_nodes: lf.admissible_count(),
        excluded_nodes: lf.excluded.len(),
        excluded_sample: lf.excluded.iter().take(EXCLUDED_SAMPLE).copied().collect(),
        pass,
        tolerances: *tol,
    })
}
