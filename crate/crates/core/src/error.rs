use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("class ordinal {ordinal} outside 1..={eta}")]
    ModelMismatch { ordinal: u8, eta: u8 },

    #[error("invalid separation model: {0}")]
    InvalidModel(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// No feasible time exists for `aircraft_id`; `position` is the sequence
    /// position where scheduling failed, when a fixed order was evaluated.
    #[error("infeasible: aircraft {aircraft_id} cannot be placed{}", position.map(|p| format!(" at position {p}")).unwrap_or_default())]
    Infeasible {
        aircraft_id: u32,
        position: Option<usize>,
    },

    #[error("oracle refuses {n} aircraft (cap {cap})")]
    OracleCap { n: usize, cap: usize },

    #[error("unsupported separation model: {0}")]
    UnsupportedModel(String),

    #[error("premise not satisfied: {0}")]
    PremiseFailure(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unbounded time window for aircraft {0}; an explicit horizon is required")]
    MissingHorizon(u32),

    #[error("block premises violated at positions {0:?}")]
    BlockPremises(Vec<usize>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("config: {0}")]
    Config(String),
}
