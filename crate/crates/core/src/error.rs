use thiserror::Error;

/// Errors raised while validating, importing or solving shadows.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShadowError {
    #[error("E_SCHEMA: {0}")]
    Schema(String),
    #[error("E_EULER: {0}")]
    Euler(String),
    #[error("E_PLANAR: {0}")]
    Planar(String),
    #[error("E_DECOMP: {0}")]
    Decomp(String),
    #[error("E_EMBED: {0}")]
    Embed(String),
    #[error("E_INTERLACED: {0}")]
    Interlaced(String),
    #[error("E_NOT_TREELIKE: shadow is not tree-like")]
    NotTreeLike,
    #[error("E_NOT_NECKLACE: shadow is not a tree-necklace shadow")]
    NotNecklace,
    #[error("E_NOT_CYCLE: {0}")]
    NotCycle(String),
    #[error("E_TOO_LARGE: {0}")]
    TooLarge(String),
    #[error("E_DEGENERATE: {0}")]
    Degenerate(String),
    #[error("E_NO_OUTER: {0}")]
    NoOuter(String),
    #[error("E_LAYOUT: {0}")]
    Layout(String),
    #[error("E_SPEC: {0}")]
    Spec(String),
}

impl ShadowError {
    /// Stable short code, e.g. `E_PLANAR`.
    pub fn code(&self) -> &'static str {
        match self {
            ShadowError::Schema(_) => "E_SCHEMA",
            ShadowError::Euler(_) => "E_EULER",
            ShadowError::Planar(_) => "E_PLANAR",
            ShadowError::Decomp(_) => "E_DECOMP",
            ShadowError::Embed(_) => "E_EMBED",
            ShadowError::Interlaced(_) => "E_INTERLACED",
            ShadowError::NotTreeLike => "E_NOT_TREELIKE",
            ShadowError::NotNecklace => "E_NOT_NECKLACE",
            ShadowError::NotCycle(_) => "E_NOT_CYCLE",
            ShadowError::TooLarge(_) => "E_TOO_LARGE",
            ShadowError::Degenerate(_) => "E_DEGENERATE",
            ShadowError::NoOuter(_) => "E_NO_OUTER",
            ShadowError::Layout(_) => "E_LAYOUT",
            ShadowError::Spec(_) => "E_SPEC",
        }
    }
}

pub type Result<T> = std::result::Result<T, ShadowError>;
