//! Residual fields over parameter grids, their Fourier spectra in theta,
//! Frenet-framed probes and local-graph checks.

pub mod certificate;
pub mod field;
pub mod fourier;
pub mod frenet;
pub mod graph;

pub use certificate::{camc_certificate, CamcReport, CertificateTolerances, WorstSlice};
pub use field::{
    cleared_residual_field, lambda_field, lambda_field_with, ExcludedNode, ExclusionReason, FieldOptions,
    FieldQuantity, ResidualField,
};
pub use fourier::{fourier_project, fourier_project_with, FourierSpectrum, SamplingPolicy, DEFAULT_MODE_CUTOFF};
pub use frenet::{frenet_e3_coordinates, tilted_cyclic_surface, FrenetCurve, FrenetFrame};
pub use graph::local_graph_laplace_residual;
