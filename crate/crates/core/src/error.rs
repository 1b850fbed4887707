use thiserror::Error;

/// Errors raised by poset, tubing and flip-map operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element label `{0}`")]
    DuplicateElement(String),
    #[error("unknown element label `{0}`")]
    UnknownElement(String),
    #[error("relations contain a cycle through `{0}`")]
    CyclicRelation(String),
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("composition must have at least one part, each >= 1")]
    EmptyComposition,
    #[error("element `{0}` not found")]
    ElementNotFound(String),
    #[error("label `{0}` occurs on both sides of the substitution")]
    LabelClash(String),
    #[error("subset is not autonomous")]
    NotAutonomous,
    #[error("poset has {0} elements; at most {max} are supported", max = crate::set::MAX_ELEMENTS)]
    TooLarge(usize),
    #[error("poset is not connected")]
    DisconnectedPoset,
    #[error("poset needs at least 2 elements, got {0}")]
    TooSmall(usize),
    #[error("not a proper tubing: {0}")]
    NotATubing(String),
    #[error("bad tube is {0}")]
    StructureViolation(&'static str),
    #[error("malformed decomposition: {0}")]
    MalformedDecomposition(String),
    #[error("flip image is not a proper tubing of the flipped poset")]
    ImageNotATubing,
    #[error("contracting tubes produced a cyclic relation")]
    QuotientNotPoset,
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DuplicateElement(_) => "DuplicateElement",
            Error::UnknownElement(_) => "UnknownElement",
            Error::CyclicRelation(_) => "CyclicRelation",
            Error::MalformedInput(_) => "MalformedInput",
            Error::EmptyComposition => "EmptyComposition",
            Error::ElementNotFound(_) => "ElementNotFound",
            Error::LabelClash(_) => "LabelClash",
            Error::NotAutonomous => "NotAutonomous",
            Error::TooLarge(_) => "TooLarge",
            Error::DisconnectedPoset => "DisconnectedPoset",
            Error::TooSmall(_) => "TooSmall",
            Error::NotATubing(_) => "NotATubing",
            Error::StructureViolation(_) => "StructureViolation",
            Error::MalformedDecomposition(_) => "MalformedDecomposition",
            Error::ImageNotATubing => "ImageNotATubing",
            Error::QuotientNotPoset => "QuotientNotPoset",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
