use thiserror::Error;

/// Errors raised by the analytic kernels, samplers and path generators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TplError {
    /// A parameter lies outside its admissible region.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// An operation was called outside its stated preconditions.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The requested quantity does not exist in this regime (e.g. a density
    /// for a law with an atom).
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    /// A closed form is only established on a sub-region of the parameter space.
    #[error("outside the region where the formula holds: {0}")]
    OutOfRegion(String),
    /// Numerical evaluation failed or left its accuracy domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A series was asked to converge where it diverges.
    #[error("divergent series: {0}")]
    Divergence(String),
    /// A computation would exceed its work budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A run configuration is inconsistent.
    #[error("configuration error: {0}")]
    Config(String),
}

impl TplError {
    /// True for errors caused by the caller's inputs rather than by numerics.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            TplError::InvalidParameter(_)
                | TplError::Precondition(_)
                | TplError::UnsupportedRegime(_)
                | TplError::OutOfRegion(_)
                | TplError::Config(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, TplError>;

macro_rules! ensure {
    ($cond:expr, $variant:ident, $($arg:tt)+) => {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !($cond) {
            return Err($crate::error::TplError::$variant(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure;
