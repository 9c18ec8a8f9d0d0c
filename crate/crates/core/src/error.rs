use thiserror::Error;

use crate::algebra::Element;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown idempotent `{0}`")]
    UnknownIdempotent(String),
    #[error("generator index {0} out of range")]
    GeneratorIndex(u32),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid generator `{name}`: {reason}")]
    InvalidGenerator { name: String, reason: String },
    #[error("name clash: `{0}` is reserved")]
    NameClash(String),
    #[error("word {word} in the differential of `{generator}` references an undefined generator `{missing}`")]
    DanglingName { generator: String, word: String, missing: String },
    #[error("operation requires an unslashed algebra")]
    Slashed,
    #[error("copy map does not match the ring: {0}")]
    CopyMapMismatch(String),
    #[error("algebra has no copy ordering")]
    MissingOrdering,
    #[error("elimination precondition fails for ({a}, {b}): residual {residual}")]
    Elimination { a: String, b: String, residual: String },
    #[error("elimination round {round} fails for ({a}, {b}): residual {residual}")]
    TowerRound { round: u32, a: String, b: String, residual: String },
    #[error("generator `{0}` carries no action")]
    MissingAction(String),
    #[error("truncation is not closed: `{kept}` refers to dropped `{dropped}`")]
    TruncationNotClosed { kept: String, dropped: String },
    #[error("morphism is not a chain map on `{generator}`: defect {defect}")]
    NotChainMap { generator: String, defect: String },
    #[error("d^2 != 0 on `{0}`")]
    DSquared(String),
    #[error("differential does not have degree -1 at `{0}`")]
    DegreeMismatch(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("augmentation search needs {needed} bits, budget is {budget}")]
    Budget { needed: usize, budget: usize },
    #[error("invalid augmentation: {0}")]
    InvalidAugmentation(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("hypotheses fail: {0}")]
    Hypothesis(String),
    #[error("homology of the module vanishes")]
    AcyclicModule,
    #[error("invalid cap data: {0}")]
    InvalidCap(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Malformed input, as opposed to a mathematical failure.
    pub fn is_input(&self) -> bool {
        matches!(
            self,
            Error::UnknownGenerator(_)
                | Error::UnknownIdempotent(_)
                | Error::GeneratorIndex(_)
                | Error::InvalidRing(_)
                | Error::InvalidGenerator { .. }
                | Error::NameClash(_)
                | Error::DanglingName { .. }
                | Error::CopyMapMismatch(_)
                | Error::Parse(_)
                | Error::Json(_)
                | Error::Io(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn show_element(el: &Element, names: &dyn Fn(u32) -> String, idem: &dyn Fn(u32) -> String) -> String {
    if el.is_zero() {
        return "0".into();
    }
    el.words()
        .map(|w| {
            if w.is_empty() {
                match w.tag {
                    Some(t) => format!("1@{}", idem(t)),
                    None => "1".into(),
                }
            } else {
                w.letters.iter().map(|&g| names(g)).collect::<Vec<_>>().join("*")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
