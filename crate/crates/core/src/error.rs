use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("unsupported group spec: {0}")]
    UnsupportedSpec(String),
    #[error("order {order} exceeds the configured cap {cap} ({what})")]
    OrderCapExceeded {
        what: &'static str,
        order: u128,
        cap: u128,
    },
    #[error("search space {size} exceeds the configured cap {cap} ({what})")]
    SearchCapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("invalid factor system: {0}")]
    InvalidFactorSystem(String),
    #[error("pair is not compatible with the outer action")]
    IncompatiblePair,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("extensions do not lie over the same outer action")]
    NotSameFiber,
    #[error("automorphism pair does not commute with the module action")]
    ActionIncompatible,
    #[error("automorphism does not preserve the normal subgroup")]
    NotRelative,
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::OrderCapExceeded { .. } | Error::SearchCapExceeded { .. }
        )
    }
}
