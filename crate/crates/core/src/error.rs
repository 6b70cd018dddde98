use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("degree {n} exceeds the limit of {max}")]
    DegreeTooLarge { n: usize, max: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("images do not form a bijection of 1..={0}")]
    NotBijection(usize),
    #[error("matrix is not a signed permutation matrix: {0}")]
    NotMonomial(String),
    #[error("parse error in {what}: {msg}")]
    Parse { what: &'static str, msg: String },
    #[error("{what} exceeds the cap of {limit}")]
    CapExceeded { what: &'static str, limit: u64 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("algebra kind mismatch: {left:?} vs {right:?}")]
    KindMismatch {
        left: crate::lie::AlgebraKind,
        right: crate::lie::AlgebraKind,
    },
    #[error("operation is not defined for algebra kind {0:?}")]
    UnsupportedKind(crate::lie::AlgebraKind),
    #[error("invalid index pair ({j}, {k}) for degree {n}")]
    BadIndices { j: usize, k: usize, n: usize },
    #[error("input is not unitary: residual {residual:e} exceeds {tol:e}")]
    NotUnitary { residual: f64, tol: f64 },
    #[error("{what} check failed: {value:e} exceeds {tol:e}")]
    ResidueCheck {
        what: &'static str,
        value: f64,
        tol: f64,
    },
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn parse(what: &'static str, msg: impl Into<String>) -> Self {
        Error::Parse {
            what,
            msg: msg.into(),
        }
    }
}
