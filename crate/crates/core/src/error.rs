use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("dot {dot} is outside 1..={max}")]
    DotOutOfRange { dot: i64, max: usize },
    #[error("dot {dot} occurs in more than one chord end")]
    DuplicateDot { dot: usize },
    #[error("{chords} chords do not fit on {dots} dots")]
    TooManyChords { chords: usize, dots: usize },
    #[error("diagram has {chords} of {n} chords")]
    IncompleteDiagram { chords: usize, n: usize },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("edge {edge} does not belong to a diagram of order {n}")]
    EdgeNotOfThisDiagram { edge: String, n: usize },
    #[error("dot {dot} is not vacant")]
    NotVacant { dot: usize },
    #[error("procedure already placed all {n} chords")]
    ProcedureComplete { n: usize },
    #[error("pointer edge lies in a loop")]
    PointerInLoop,
    #[error("n = {n} exceeds the limit {max} for {what}")]
    TooLarge { what: &'static str, n: usize, max: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
