use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown constant `{name}`")]
    UnknownConstant { name: String },

    #[error("domain error in `{expr}` at u = {u}: {message}")]
    Domain { expr: String, u: f64, message: String },

    #[error("degenerate surface at (u, v) = ({u}, {v}): W = {w}")]
    Degenerate { u: f64, v: f64, w: f64 },

    #[error("surface is not spacelike at (u, v) = ({u}, {v}): W = {w}")]
    NotSpacelike { u: f64, v: f64, w: f64 },

    #[error("frame failure at (u, v) = ({u}, {v}): {reason}")]
    FrameFailure { u: f64, v: f64, reason: String },

    #[error("quadrature failed on [{a}, {b}]: {reason}")]
    Quadrature { a: f64, b: f64, reason: String },

    #[error("infeasible gauge: the missing square is negative on [{from}, {to}]")]
    InfeasibleGauge { from: f64, to: f64 },

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("right helicoid rejected: {0}")]
    RightHelicoid(String),

    #[error("no coordinate is constant over the grid; choose drop-1..drop-4")]
    NoConstantCoordinate,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code: 2 for bad input, 3 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain { .. }
            | Error::Degenerate { .. }
            | Error::NotSpacelike { .. }
            | Error::FrameFailure { .. }
            | Error::Quadrature { .. } => 3,
            _ => 2,
        }
    }

    pub(crate) fn at_v(self, v: f64) -> Self {
        match self {
            Error::Degenerate { u, w, .. } => Error::Degenerate { u, v, w },
            Error::NotSpacelike { u, w, .. } => Error::NotSpacelike { u, v, w },
            Error::FrameFailure { u, reason, .. } => Error::FrameFailure { u, v, reason },
            e => e,
        }
    }
}
