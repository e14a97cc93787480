use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no generators")]
    NoGenerators,
    #[error("duplicate generator id `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator id `{0}`")]
    UnknownGenerator(String),
    #[error("differential bidegree violated at {source_id}→{target_id}")]
    BidegreeViolated { source_id: String, target_id: String },
    #[error("map `{map}` violates its grading contract at {source_id}→{target_id}")]
    MapGrading {
        map: String,
        source_id: String,
        target_id: String,
    },
    #[error("differential does not square to zero at generator `{0}`")]
    DifferentialSquare(String),
    #[error("`{0}` is not a chain map")]
    NotChainMap(String),
    #[error("not of S3 type: {0}")]
    NotS3Type(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("no involution found")]
    NoInvolution,
    #[error("phi has no homotopy inverse")]
    NoPhiInverse,
    #[error("window unstable: {0}")]
    WindowUnstable(String),
    #[error("maximal nontorsion Cyl grading {0} is odd")]
    OddDeltaGrading(i32),
    #[error("consistency violation: {0}")]
    ConsistencyViolation(String),
    #[error("nonstandard: {0}")]
    Nonstandard(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("missing required column `{0}`")]
    MissingColumn(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NoGenerators => "no_generators",
            Error::DuplicateGenerator(_) => "duplicate_generator",
            Error::UnknownGenerator(_) => "unknown_generator",
            Error::BidegreeViolated { .. } => "bidegree_violated",
            Error::MapGrading { .. } => "map_grading",
            Error::DifferentialSquare(_) => "differential_square",
            Error::NotChainMap(_) => "not_chain_map",
            Error::NotS3Type(_) => "not_s3_type",
            Error::InvalidComplex(_) => "invalid_complex",
            Error::NoInvolution => "no_involution",
            Error::NoPhiInverse => "no_phi_inverse",
            Error::WindowUnstable(_) => "window_unstable",
            Error::OddDeltaGrading(_) => "odd_delta_grading",
            Error::ConsistencyViolation(_) => "consistency_violation",
            Error::Nonstandard(_) => "nonstandard",
            Error::Parse { .. } => "parse",
            Error::MissingColumn(_) => "missing_column",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Csv(_) => "csv",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
