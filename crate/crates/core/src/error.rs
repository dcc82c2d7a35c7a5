//! Error types shared across the crate, one enum per subsystem.

use thiserror::Error;

/// Errors from the dense linear-algebra substrate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix has zero dimension")]
    EmptyMatrix,
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("singular matrix: pivot magnitude {pivot:.3e} below threshold")]
    SingularMatrix { pivot: f64 },
    #[error("matrix exponential overflow: norm {norm:.3e} exceeds exp range")]
    Overflow { norm: f64 },
}

/// Errors from contour construction and the Dunford calculus.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum ContourError {
    #[error("spectrum enclosure (center {center_re:.6e}+{center_im:.6e}i, radius {radius:.6e}) meets the branch cut (-inf, 0]")]
    SpectrumHitsBranchCut {
        center_re: f64,
        center_im: f64,
        radius: f64,
    },
    #[error("origin lies inside the contour disc (center {center_re:.6e}+{center_im:.6e}i, radius {radius:.6e})")]
    OriginEnclosed {
        center_re: f64,
        center_im: f64,
        radius: f64,
    },
    #[error("resolvent blow-up at contour node {node_index}: {source}")]
    ResolventBlowup {
        node_index: usize,
        source: LinalgError,
    },
    #[error("contour failed validation: {reason}")]
    InvalidContour { reason: String },
    #[error("quadrature did not converge within {max_nodes} nodes (last relative change {last_change:.3e})")]
    NoConvergence { max_nodes: usize, last_change: f64 },
    #[error("node count {node_count} is not a power of two >= 16")]
    BadNodeCount { node_count: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Errors from the Richardson-extrapolated numerical derivative.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum DerivativeError<E> {
    #[error("step size {h0:.3e} below underflow guard 1e-10")]
    StepUnderflow { h0: f64 },
    #[error("stencil evaluation failed at t = {t}")]
    EvaluationFailed { t: f64, source: E },
}

/// Errors from the logarithmic-representation layer.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum GeneratorError {
    #[error("eta {eta_re}+{eta_im}i collides with the spectrum: resolvent solve failed")]
    EtaInSpectrum { eta_re: f64, eta_im: f64 },
    #[error("no admissible eta found after {attempts} attempts")]
    NoEtaFound { attempts: usize },
    #[error("eta = 1 makes nu = eta/(1-eta) undefined")]
    EtaEqualsOne,
    #[error("no admissible nu found after {attempts} attempts")]
    NoNuFound { attempts: usize },
    #[error("family is not invertible at (t, s): sigma_min/sigma_max = {sigma_ratio:.3e}")]
    NotInvertible { sigma_ratio: f64 },
    #[error("resolvent gap I_eta - I is singular; Lemma 1 boundedness hypothesis fails")]
    SingularResolventGap,
    #[error("nu = {nu_re}+{nu_im}i does not equal eta/(1-eta) = {expected_re}+{expected_im}i")]
    NuMismatch {
        nu_re: f64,
        nu_im: f64,
        expected_re: f64,
        expected_im: f64,
    },
    #[error("I_eta^2 - I_eta is singular; Corollary 1 collapse undefined")]
    SingularCollapse,
    #[error("combination matrix e^a - (2nu+1)I + (nu^2+nu)e^-a is singular")]
    SingularCombination,
    #[error("shift parameters lack required certificate: {missing}")]
    UncertifiedParams { missing: &'static str },
    #[error("contour invalid: {0}")]
    Contour(#[from] ContourError),
    #[error("derivative failed: {0}")]
    Derivative(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Errors from the Cole–Hopf / strip-log applications.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum AppError {
    #[error("denominator field vanishes: min |phi| = {min_abs:.3e} <= 1e-10")]
    VanishingDenominator { min_abs: f64 },
    #[error("grid size mismatch: {left} vs {right}")]
    GridMismatch { left: usize, right: usize },
    #[error("invalid grid parameter: {reason}")]
    InvalidGrid { reason: String },
    #[error("contour failure: {0}")]
    Contour(#[from] ContourError),
    #[error("generator machinery failure: {0}")]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Errors from family construction.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum FamilyError {
    #[error("grid size {n} invalid: {reason}")]
    BadGridSize { n: usize, reason: &'static str },
    #[error("parameter out of range: {reason}")]
    BadParameter { reason: String },
    #[error("time range too wide for exponential evaluation (span*norm = {span_norm:.3e})")]
    RangeOverflow { span_norm: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
