use thiserror::Error;

/// Errors raised by the library. Every variant maps to a stable machine-readable code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("scalars live in different quadratic extensions (sqrt {0} and sqrt {1})")]
    MixedExtension(i64, i64),
    #[error("extension tower needed: {0}")]
    ExtensionTower(String),
    #[error("non-split semisimple part: {0}")]
    NonSplit(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("the general linear group carries no bilinear form")]
    NoForm,
    #[error("matrix does not lie in the Lie algebra")]
    NotInLieAlgebra,
    #[error("element does not lie in the extended group")]
    NotInGroup,
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("not a nilpotent fiber: {0}")]
    NotNilpotent(String),
    #[error("descriptor mismatch: {0}")]
    DescriptorMismatch(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Shape(_) => "shape_mismatch",
            Error::Index(_) => "index_out_of_range",
            Error::MixedExtension(..) => "mixed_extension",
            Error::ExtensionTower(_) => "extension_tower",
            Error::NonSplit(_) => "non_split_spectrum",
            Error::Singular(_) => "singular_matrix",
            Error::NoForm => "no_form",
            Error::NotInLieAlgebra => "not_in_lie_algebra",
            Error::NotInGroup => "not_in_group",
            Error::InvalidSeed(_) => "invalid_seed",
            Error::NotNilpotent(_) => "not_nilpotent",
            Error::DescriptorMismatch(_) => "descriptor_mismatch",
            Error::Unsupported(_) => "unsupported",
            Error::Parse(_) => "parse_error",
            Error::Internal(_) => "internal",
        }
    }

    /// True for inputs that are well formed but outside what exact rational
    /// computation can handle.
    pub fn is_unsupported(&self) -> bool {
        matches!(
            self,
            Error::NonSplit(_)
                | Error::ExtensionTower(_)
                | Error::Unsupported(_)
                | Error::NotNilpotent(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
