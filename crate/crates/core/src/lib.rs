//! Numerical toolkit for surfaces of constant anisotropic mean curvature
//! under axially symmetric energies, centred on the Dirichlet energy
//! `F(nu3) = 1/nu3 - nu3`.

pub mod analysis;
pub mod energy;
pub mod error;
pub mod families;
pub mod grid;
pub mod mesh;
pub mod odes;
pub mod surface;

pub use analysis::{
    camc_certificate, fourier_project, lambda_field, CamcReport, CertificateTolerances, FourierSpectrum, FrenetCurve,
    ResidualField,
};
pub use energy::{
    dirichlet_energy, hyperboloid_energy, isotropic_energy, wulff_reciprocals, AxiallySymmetricEnergy, WulffReciprocals,
};
pub use error::{CamcError, Result};
pub use families::{
    cyclic_surface, domain_interval, family_profile, rotational_solution, CyclicFamilyParams, CyclicProfile,
    FamilyKind, RotationalProfile,
};
pub use grid::{GridSpec, Interval, ParamRect};
pub use mesh::MeshExport;
pub use odes::{
    classify_by_first_integral, first_integral, integrate, CyclicOdeState, OdeMode, OdeTrajectory, Termination,
};
pub use surface::{camc_lambda, frame, FrameData, JetMode, ParametricSurface, SurfaceJet, V3};

/// Shortest round-trip decimal form of `x`, switching to exponent notation
/// outside `[1e-6, 1e15)`. Negative zero prints as `0`.
pub fn fmt_real(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 {
        "0".to_string()
    } else if !x.is_finite() || (1e-6..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}
