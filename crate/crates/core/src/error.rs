use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty")]
    Empty,
    #[error("letters must be positive")]
    ZeroLetter,
    #[error("letter {0} is out of range")]
    LetterRange(u64),
    #[error("not reduced: {0}")]
    NotReduced(String),
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("length {len} exceeds the supported maximum {max}")]
    TooLong { len: usize, max: usize },
    #[error("arithmetic overflow")]
    Overflow,
    #[error("unknown identifier `{0}`")]
    UnknownId(String),
    #[error("label {0} is outside the rule's domain")]
    LabelDomain(String),
    #[error("{word} does not avoid {set}")]
    Precondition { word: String, set: String },
    #[error("pop on empty prefix")]
    EmptyPop,
    #[error("inconsistent profile: {0}")]
    Profile(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
