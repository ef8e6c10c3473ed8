use crate::classifier::NearMiss;
use crate::fields::ResidualReport;

/// Errors returned by the library.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The input matrix is not anti-Hermitian traceless; `violation` is the
    /// relative size of its non-su(2) part.
    #[error("matrix is not in su(2) (relative violation {violation:.3e})")]
    NotInAlgebra { violation: f64 },

    #[error("invalid {kind} element: {reason}")]
    InvalidGroupElement { kind: &'static str, reason: String },

    #[error(
        "configuration is not a solution (ym residual {:.3e}, dirac residual {:.3e}, tol {:.1e})",
        .0.ym_residual, .0.dirac_residual, .0.tol
    )]
    NotASolution(Box<ResidualReport>),

    /// A verified configuration whose invariants match no table row.
    #[error("no table row matches the invariants; nearest rows: {}", format_near(.0))]
    Ambiguous(Vec<NearMiss>),

    #[error("constraint `{name}` violated (residual {residual:.3e})")]
    ConstraintViolation { name: String, residual: f64 },
}

fn format_near(rows: &[NearMiss]) -> String {
    rows.iter()
        .map(|n| format!("row {} ({} mismatches)", n.row, n.mismatches))
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
