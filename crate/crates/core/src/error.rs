use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("numeral {0} exceeds the configured bound {1}")]
    NumeralBound(u32, u32),

    #[error("generator must be well-founded: {0}")]
    NonWellFoundedGenerator(String),

    #[error("invalid generator cycle: {0}")]
    GeneratorCycle(String),

    #[error("phase {phase} out of range for cycle of length {len}")]
    PhaseRange { phase: u32, len: u32 },

    #[error("{op} requires a well-founded argument")]
    NotWellFounded { op: &'static str },

    #[error("set is non-well-founded, so it has no rank in V")]
    NotInV,

    #[error("stage {0} exceeds the enumeration cap {1}")]
    StageCap(u32, u32),

    #[error("unfold/check depth {0} exceeds the configured bound {1}")]
    DepthBound(u32, u32),

    #[error("prefix check needs n < k, got n={n}, k={k}")]
    PrefixOrder { n: u32, k: u32 },

    #[error("malformed ordinal: {0}")]
    OrdinalForm(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("nullity has no members and cannot be unpacked")]
    UnpackNullity,
}
