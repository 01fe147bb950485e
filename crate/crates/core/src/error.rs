use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("operands use different variable tables")]
    TableMismatch,
    #[error("invalid variable table: {0}")]
    InvalidTable(String),
    #[error("{}", match .line { Some(l) => format!("parse error on line {l}: {message}"), None => format!("parse error: {message}") })]
    Parse { line: Option<usize>, message: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("linear system has no solution")]
    NoSolution,

    #[error("quotient is not Artinian below degree cap {cap}")]
    NotArtinian { cap: usize },
    #[error("dual generator is zero")]
    ZeroDualGenerator,
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("element has a nonzero constant term, multiplication is not nilpotent")]
    NonNilpotent,
    #[error("element is not a linear form")]
    NotLinear,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partitions of different sizes ({0} and {1}) are not comparable")]
    SizeMismatch(usize, usize),
    #[error("invalid rank sequence: {0}")]
    InvalidRankSequence(String),
    #[error("sampled Jordan types have no dominance maximum: {types:?}")]
    IncomparableSamples { types: Vec<Vec<usize>> },
    #[error("there are no linear forms to sample (A_1 = 0)")]
    EmptyStratum,
    #[error("characteristic {characteristic} too small, need 0 or at least {required}")]
    CharTooSmall { characteristic: u64, required: u64 },

    #[error("(I_B)^2 o G != 0: ({f})*({g}) does not annihilate G")]
    ConditionFails { f: String, g: String },
    #[error("not a free extension: {0}")]
    NotFreeExtension(String),
    #[error("ring map is not well defined: {0}")]
    InvalidRingMap(String),
    #[error("the deformation parameter must be nonzero")]
    ZeroParameter,
}

impl Error {
    pub(crate) fn parse(line: Option<usize>, message: impl Into<String>) -> Error {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Process exit code: 1 for input/usage problems, 2 for violated
    /// mathematical preconditions.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::Io(_)
            | Error::InvalidArgument(_)
            | Error::InvalidField(_)
            | Error::InvalidTable(_)
            | Error::InvalidPartition(_) => 1,
            _ => 2,
        }
    }

    /// Short machine-readable name used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidField(_) => "InvalidField",
            Error::FieldMismatch => "FieldMismatch",
            Error::TableMismatch => "TableMismatch",
            Error::InvalidTable(_) => "InvalidTable",
            Error::Parse { .. } => "ParseError",
            Error::Io(_) => "IoError",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::NoSolution => "NoSolution",
            Error::NotArtinian { .. } => "NotArtinian",
            Error::ZeroDualGenerator => "ZeroDualGenerator",
            Error::NotHomogeneous(_) => "NotHomogeneous",
            Error::NonNilpotent => "NonNilpotent",
            Error::NotLinear => "NotLinear",
            Error::DegreeMismatch(_) => "DegreeMismatch",
            Error::InvalidPartition(_) => "InvalidPartition",
            Error::SizeMismatch(..) => "SizeMismatch",
            Error::InvalidRankSequence(_) => "InvalidRankSequence",
            Error::IncomparableSamples { .. } => "IncomparableSamples",
            Error::EmptyStratum => "EmptyStratum",
            Error::CharTooSmall { .. } => "CharTooSmall",
            Error::ConditionFails { .. } => "ConditionFails",
            Error::NotFreeExtension(_) => "NotFreeExtension",
            Error::InvalidRingMap(_) => "InvalidRingMap",
            Error::ZeroParameter => "ZeroParameter",
        }
    }
}
