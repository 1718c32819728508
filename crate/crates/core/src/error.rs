use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A polynomial vanishes at a Sturm-count endpoint.
    #[error("polynomial vanishes at endpoint {endpoint}; perturb the interval endpoints")]
    EndpointRoot { endpoint: String },

    /// A certified comparison could not be separated at the working precision.
    #[error("undecided at {bits} bits of precision")]
    Undecided { bits: u64 },

    /// The numeric root finder did not meet its radius target.
    #[error("root finder did not converge: best radius {achieved_radius} at {working_digits} digits")]
    NonConvergence {
        working_digits: u32,
        achieved_radius: String,
        partial: Vec<crate::polycore::NumericRoot>,
    },

    /// A high-precision evaluation could not meet its error bound.
    #[error("insufficient precision: residual {residual} exceeds bound {bound}")]
    InsufficientPrecision { residual: String, bound: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
