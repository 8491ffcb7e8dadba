use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::energy::AxiallySymmetricEnergy;
use crate::error::{CamcError, Result};
use crate::grid::GridSpec;
use crate::surface::{camc_lambda_from_frame, cleared_residual_from_frame, frame, JetMode, ParametricSurface};

/// Below this `|nu3|` the Lambda formula amplifies jet errors by more than
/// `1/|nu3|^3 = 1e6`; analytic jets carry ~1e-15 error so that is harmless.
pub const ANALYTIC_NU3_FLOOR: f64 = 1e-2;
/// Finite-difference jets carry ~1e-8..1e-6 error; amplification must stay near 1e2.
pub const FD_NU3_FLOOR: f64 = 0.2;

pub fn default_nu3_floor(mode: JetMode) -> f64 {
    match mode {
        JetMode::Analytic => ANALYTIC_NU3_FLOOR,
        JetMode::FiniteDifference { .. } => FD_NU3_FLOOR,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FieldQuantity {
    Lambda,
    /// The denominator-free residual for a declared `lambda0`.
    ClearedResidual {
        lambda0: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExclusionReason {
    BelowNu3Floor { nu3: f64 },
    VerticalNormal,
    DegenerateJet,
    OutsideEnergyDomain { nu3: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExcludedNode {
    pub i: usize,
    pub j: usize,
    pub s: f64,
    pub theta: f64,
    pub reason: ExclusionReason,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldOptions {
    /// Declared constant; the field mean is used when absent.
    pub target: Option<f64>,
    /// Overrides the jet-mode default conditioning floor on `|nu3|`.
    pub nu3_floor: Option<f64>,
}

/// Samples on an `s x theta` grid, row-major by `s`. Nodes where the
/// quantity is undefined or ill-conditioned are `None` and listed in `excluded`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualField {
    pub quantity: FieldQuantity,
    pub s: Vec<f64>,
    pub theta: Vec<f64>,
    pub values: Vec<Option<f64>>,
    pub target: f64,
    pub max_abs_dev: f64,
    pub nu3_floor: f64,
    pub excluded: Vec<ExcludedNode>,
}

impl ResidualField {
    pub fn value(&self, i: usize, j: usize) -> Option<f64> {
        self.values[i * self.theta.len() + j]
    }

    pub fn is_partial(&self) -> bool {
        !self.excluded.is_empty()
    }

    pub fn admissible(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().flatten().copied()
    }

    pub fn admissible_count(&self) -> usize {
        self.admissible().count()
    }

    /// Row `i` if every node in it is admissible.
    pub fn slice(&self, i: usize) -> Option<Vec<f64>> {
        let n = self.theta.len();
        self.values[i * n..(i + 1) * n].iter().copied().collect()
    }

    /// `(max - min) / 2`: the smallest possible max-deviation from any constant.
    pub fn deviation_from_best_constant(&self) -> f64 {
        let (lo, hi) = self.admissible().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        if lo > hi {
            0.0
        } else {
            (hi - lo) / 2.0
        }
    }
}

enum Node {
    Value(f64),
    Excluded(ExclusionReason),
}

fn sample_field<F>(
    surface: &ParametricSurface,
    grid: &GridSpec,
    quantity: FieldQuantity,
    target: Option<f64>,
    nu3_floor: f64,
    eval: F,
) -> Result<ResidualField>
where
    F: Fn(&crate::surface::FrameData) -> Result<f64> + Sync,
{
    grid.validate()?;
    let dom = surface.domain();
    let s_nodes = grid.s_nodes();
    let t_nodes = grid.theta_nodes();
    for &s in &[s_nodes[0], s_nodes[s_nodes.len() - 1]] {
        if !dom.s.contains(s) {
            return Err(CamcError::InvalidGrid(format!(
                "s = {s} lies outside the surface domain ({}, {})",
                dom.s.lo, dom.s.hi
            )));
        }
    }

    let rows: Vec<Result<Vec<Node>>> = s_nodes
        .par_iter()
        .map(|&s| {
            t_nodes
                .iter()
                .map(|&t| {
                    let jet = match surface.jet(s, t) {
                        Ok(j) => j,
                        Err(CamcError::DegenerateJet { .. }) => {
                            return Ok(Node::Excluded(ExclusionReason::DegenerateJet))
                        }
                        Err(e) => return Err(e),
                    };
                    let f = match frame(&jet) {
                        Ok(f) => f,
                        Err(CamcError::VerticalNormalDegeneracy { .. }) => {
                            return Ok(Node::Excluded(ExclusionReason::VerticalNormal))
                        }
                        Err(CamcError::DegenerateJet { .. }) => {
                            return Ok(Node::Excluded(ExclusionReason::DegenerateJet))
                        }
                        Err(e) => return Err(e),
                    };
                    if f.nu3.abs() < nu3_floor {
                        return Ok(Node::Excluded(ExclusionReason::BelowNu3Floor { nu3: f.nu3 }));
                    }
                    match eval(&f) {
                        Ok(v) => Ok(Node::Value(v)),
                        Err(CamcError::Domain(_)) => {
                            Ok(Node::Excluded(ExclusionReason::OutsideEnergyDomain { nu3: f.nu3 }))
                        }
                        Err(e) => Err(e),
                    }
                })
                .collect()
        })
        .collect();

    let n_t = t_nodes.len();
    let mut values = Vec::with_capacity(s_nodes.len() * n_t);
    let mut excluded = Vec::new();
    for (i, row) in rows.into_iter().enumerate() {
        for (j, node) in row?.into_iter().enumerate() {
            match node {
                Node::Value(v) => values.push(Some(v)),
                Node::Excluded(reason) => {
                    values.push(None);
                    excluded.push(ExcludedNode { i, j, s: s_nodes[i], theta: t_nodes[j], reason });
                }
            }
        }
    }
    let admissible: Vec<f64> = values.iter().flatten().copied().collect();
    if admissible.is_empty() {
        let gap = excluded.first().map(|e| match e.reason {
            ExclusionReason::BelowNu3Floor { nu3 } | ExclusionReason::OutsideEnergyDomain { nu3 } => nu3.abs(),
            _ => 0.0,
        });
        return Err(CamcError::VerticalNormalDegeneracy { gap: gap.unwrap_or(0.0) });
    }
    let target = target.unwrap_or_else(|| admissible.iter().sum::<f64>() / admissible.len() as f64);
    let max_abs_dev = admissible.iter().map(|v| (v - target).abs()).fold(0.0, f64::max);
    Ok(ResidualField { quantity, s: s_nodes, theta: t_nodes, values, target, max_abs_dev, nu3_floor, excluded })
}

/// Lambda at every grid node, with default options.
pub fn lambda_field(
    surface: &ParametricSurface,
    energy: &AxiallySymmetricEnergy,
    grid: &GridSpec,
) -> Result<ResidualField> {
    lambda_field_with(surface, energy, grid, &FieldOptions::default())
}

pub fn lambda_field_with(
    surface: &ParametricSurface,
    energy: &AxiallySymmetricEnergy,
    grid: &GridSpec,
    options: &FieldOptions,
) -> Result<ResidualField> {
    let floor = options.nu3_floor.unwrap_or_else(|| default_nu3_floor(surface.mode()));
    sample_field(surface, grid, FieldQuantity::Lambda, options.target, floor, |f| camc_lambda_from_frame(f, energy))
}

/// The denominator-free residual at every node; defined wherever the normal
/// is not vertical, so no conditioning floor is applied. Target is 0.
pub fn cleared_residual_field(
    surface: &ParametricSurface,
    energy: &AxiallySymmetricEnergy,
    grid: &GridSpec,
    lambda0: f64,
) -> Result<ResidualField> {
    sample_field(surface, grid, FieldQuantity::ClearedResidual { lambda0 }, Some(0.0), 0.0, |f| {
        cleared_residual_from_frame(f, energy, lambda0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::dirichlet_energy;
    use crate::families::{cyclic_surface, rotational_solution, CyclicFamilyParams, FamilyKind};
    use crate::grid::{Interval, ParamRect};
    use crate::surface::{SurfaceJet, V3};

    #[test]
    fn type1_lambda_vanishes() {
        let p = CyclicFamilyParams::new(FamilyKind::TypeI, 2.0, 0.0, 1.0).unwrap();
        let f = lambda_field_with(
            &cyclic_surface(&p),
            &dirichlet_energy(),
            &GridSpec::cyclic(-1.4, 1.4, 101, 64),
            &FieldOptions { target: Some(0.0), nu3_floor: None },
        )
        .unwrap();
        assert!(f.max_abs_dev < 1e-6, "{}", f.max_abs_dev);
        assert!(f.is_partial());
        assert_eq!(f.values.len(), 101 * 64);
    }

    #[test]
    fn paraboloid_lambda_is_eight() {
        let surf = rotational_solution(0.0, 0.0, 8.0).surface();
        let f = lambda_field(&surf, &dirichlet_energy(), &GridSpec::cyclic(0.1, 3.0, 30, 16)).unwrap();
        assert!(f.admissible().all(|v| (v - 8.0).abs() < 1e-6));
        assert!((f.target - 8.0).abs() < 1e-6);
    }

    #[test]
    fn cylinder_is_rejected() {
        let cyl = ParametricSurface::analytic("cylinder", ParamRect::periodic(Interval::real_line()), |s, t| {
            let (sn, cs) = t.sin_cos();
            SurfaceJet {
                pos: V3::new(cs, sn, s),
                xs: V3::z(),
                xt: V3::new(-sn, cs, 0.0),
                xss: V3::zeros(),
                xst: V3::zeros(),
                xtt: V3::new(-cs, -sn, 0.0),
            }
        });
        let err = lambda_field(&cyl, &dirichlet_energy(), &GridSpec::cyclic(0.0, 1.0, 5, 8)).unwrap_err();
        assert!(matches!(err, CamcError::VerticalNormalDegeneracy { .. }));
    }

    #[test]
    fn grid_outside_domain_is_rejected() {
        let p = CyclicFamilyParams::new(FamilyKind::TypeI, 2.0, 0.0, 1.0).unwrap();
        let g = GridSpec::cyclic(-1.0, 2.0, 11, 8);
        assert!(lambda_field(&cyclic_surface(&p), &dirichlet_energy(), &g).is_err());
    }

    #[test]
    fn cleared_residual_is_total() {
        let p = CyclicFamilyParams::new(FamilyKind::TypeII, 1.0, 0.0, 1.0).unwrap();
        let f =
            cleared_residual_field(&cyclic_surface(&p), &dirichlet_energy(), &GridSpec::cyclic(-0.9, 2.0, 41, 32), 0.0)
                .unwrap();
        assert!(f.excluded.is_empty());
        assert!(f.max_abs_dev < 1e-10, "{}", f.max_abs_dev);
        assert!((0..41).all(|i| f.slice(i).is_some()));
    }
}
