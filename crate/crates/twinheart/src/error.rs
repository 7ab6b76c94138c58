use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("format error: {0}")]
    Format(String),
    #[error("composition error: {0}")]
    Composition(String),
    #[error("enumeration budget exceeded: hom dimension {dim} gives {p}^{dim} > cap {cap}")]
    EnumerationBudget { p: u8, dim: usize, cap: u64 },
    #[error("indecomposable count {count} exceeds cap {cap}")]
    CountCap { count: usize, cap: usize },
    #[error("no cone available for morphism: {0}")]
    ConeUnsupported(String),
    #[error("construction failed at step {step}: {detail}")]
    Construction { step: String, detail: String },
    #[error("not a twin cotorsion pair: {0}")]
    NotATwin(String),
    #[error("search inconclusive: {0}")]
    Indeterminate(String),
    #[error("engine bug: {0}")]
    EngineBug(String),
    #[error("validation failed: {0}")]
    Invalid(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
