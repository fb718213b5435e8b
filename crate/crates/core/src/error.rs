use thiserror::Error;

/// Errors shared by all numerical layers of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Adaptive quadrature ran out of panel budget before reaching tolerance.
    #[error("quadrature did not converge: {context} (estimated error {err:.3e}, budget {budget})")]
    NonConvergent {
        context: String,
        err: f64,
        budget: usize,
    },

    /// A delta-well strength that must be positive was not.
    #[error("invalid potential strength {0}: must be > 0")]
    InvalidStrength(f64),

    /// Sign-change scan failed to isolate a root of the pair energy equation.
    #[error("root bracketing failed for the pair energy equation")]
    RootBracketingFailed,

    /// The nondegenerate expansion was requested where its 1/(gamma1-gamma2)
    /// pole makes it meaningless; use the degenerate branch instead.
    #[error("strengths too close for the nondegenerate expansion: gamma1={gamma1}, gamma2={gamma2}")]
    DegenerateStrengths { gamma1: f64, gamma2: f64 },

    /// The resolvent energy sits on (or numerically at) a retained eigenvalue.
    #[error("evaluation energy {energy} collides with retained bound level {level}")]
    EnergyCollision { energy: f64, level: f64 },

    /// A spectrum-2 level sits inside the degeneracy gap of the reference state.
    #[error("degeneracy detected: |eps_k - u| = {gap:.3e} below threshold {threshold:.3e}; use the degenerate module")]
    DegeneracyDetected { gap: f64, threshold: f64 },

    /// Exactly degenerate pair with vanishing coupling: leading order cannot
    /// lift the degeneracy.
    #[error("zero coupling with zero gap: degeneracy not lifted at leading order")]
    ZeroCoupling,

    /// Multi-state machinery requires a common level; the inputs disagree.
    #[error("states not degenerate: energy spread {spread:.3e} exceeds {tol:.3e}")]
    NotDegenerate { spread: f64, tol: f64 },

    /// Matrix dimensions incompatible with the requested operation.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// Grid eigensolver failed to converge.
    #[error("eigensolver convergence failure: {0}")]
    ConvergenceFailure(String),

    /// Richardson extrapolation fed with incompatible grids.
    #[error("grid mismatch: extrapolation needs the same box with doubled resolution")]
    GridMismatch,

    /// Accidental zeros among the coupling singular values: the kernel-space
    /// assumption is violated and the degeneracy cannot be lifted here.
    #[error("unresolved degeneracy: accidental zero coupling mode detected")]
    UnresolvedDegeneracy,
}

pub type Result<T> = std::result::Result<T, Error>;
