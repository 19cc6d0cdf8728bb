use ecluster::cpi_bridge::CpiError;
use ecluster::infinity_gon::InfinityGonError;
use ecluster::mutation_engine::MutationError;
use ecluster::ordered_line::LineError;
use ecluster::polygon_an::PolygonError;
use thiserror::Error;

/// Failures split by who is at fault: malformed input, or a well-formed
/// request the mathematics refuses.
#[derive(Debug, Error)]
pub enum WbError {
    #[error("{0}")]
    Input(String),
    #[error("{message}")]
    Domain { kind: &'static str, message: String },
    #[error("unknown session {0}")]
    NotFound(String),
    #[error("{0}")]
    Io(String),
}

impl WbError {
    pub fn input(msg: impl ToString) -> Self {
        WbError::Input(msg.to_string())
    }

    pub fn domain(kind: &'static str, msg: impl ToString) -> Self {
        WbError::Domain { kind, message: msg.to_string() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            WbError::Domain { .. } => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            WbError::Input(_) => "MalformedInput",
            WbError::Domain { kind, .. } => kind,
            WbError::NotFound(_) => "NotFound",
            WbError::Io(_) => "Io",
        }
    }
}

impl From<LineError> for WbError {
    fn from(e: LineError) -> Self {
        WbError::input(e)
    }
}

impl From<serde_json::Error> for WbError {
    fn from(e: serde_json::Error) -> Self {
        WbError::input(e)
    }
}

impl From<std::io::Error> for WbError {
    fn from(e: std::io::Error) -> Self {
        WbError::Io(e.to_string())
    }
}

impl From<MutationError> for WbError {
    fn from(e: MutationError) -> Self {
        let kind = match e {
            MutationError::NotMember(_) => "NotMember",
            MutationError::NotMutable(_) => "NotMutable",
            MutationError::AmbiguousExchange { .. } => "AmbiguousExchange",
        };
        WbError::domain(kind, e)
    }
}

impl From<PolygonError> for WbError {
    fn from(e: PolygonError) -> Self {
        match e {
            PolygonError::NotInTriangulation(_) => WbError::domain("NotMember", e),
            _ => WbError::input(e),
        }
    }
}

impl From<InfinityGonError> for WbError {
    fn from(e: InfinityGonError) -> Self {
        let kind = match e {
            InfinityGonError::InvalidArc(..) | InfinityGonError::MalformedDescription(_) => return WbError::input(e),
            InfinityGonError::TailArc(_) => "NotMutable",
            InfinityGonError::NotMember(_) => "NotMember",
            InfinityGonError::NotMutable(_) => "NotMutable",
            InfinityGonError::AmbiguousExchange { .. } => "AmbiguousExchange",
        };
        WbError::domain(kind, e)
    }
}

impl From<CpiError> for WbError {
    fn from(e: CpiError) -> Self {
        let kind = match e {
            CpiError::OutsideDomain { .. } | CpiError::DomainError { .. } | CpiError::BadSegment(_) | CpiError::NotAnImage(_) => {
                "DomainError"
            }
            CpiError::NotMember { .. } => "NotMember",
            CpiError::NotMutable { .. } => "NotMutable",
            CpiError::AmbiguousExchange { .. } => "AmbiguousExchange",
        };
        WbError::domain(kind, e)
    }
}
