use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CamcError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parameter point (s={s}, theta={theta}) lies outside the parameter domain")]
    OutOfDomain { s: f64, theta: f64 },
    #[error("degenerate jet at (s={s}, theta={theta}): |Xs x Xtheta| = {cross_norm:e}")]
    DegenerateJet { s: f64, theta: f64, cross_norm: f64 },
    #[error("normal is vertical (1 - nu3^2 = {gap:e}); principal frame undefined")]
    VerticalNormalDegeneracy { gap: f64 },
    #[error("grid too small: {nx} x {ny} samples, need at least 3 per axis")]
    GridTooSmall { nx: usize, ny: usize },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("aliasing risk: {samples} samples cannot resolve {cutoff} modes (need >= {required})")]
    AliasingRisk { samples: usize, cutoff: usize, required: usize },
    #[error("Frenet frame undefined at s={s} (curvature {kappa:e})")]
    FrameUndefined { s: f64, kappa: f64 },
    #[error("Newton inversion did not converge after {iterations} iterations (residual {residual:e})")]
    NewtonDivergence { iterations: usize, residual: f64 },
    #[error("surface is not a local graph over the xy-plane near (s={s}, theta={theta})")]
    NotAGraph { s: f64, theta: f64 },
    #[error("degenerate radius r={r}")]
    DegenerateRadius { r: f64 },
    #[error("radius collapsed below threshold at s={s}")]
    RadiusCollapse { s: f64 },
    #[error("first-integral drift {drift:e} at s={s}; step too large")]
    StepTooLarge { s: f64, drift: f64 },
    #[error("solution blew up at s={s}")]
    BlowUp { s: f64 },
    #[error("unsupported extension: {0}")]
    UnsupportedExtension(String),
    #[error("surface has no analytic jet; use finite differences")]
    NoAnalyticJet,
}

pub type Result<T> = std::result::Result<T, CamcError>;
