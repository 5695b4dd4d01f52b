use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("undefined connectivity: graph has fewer than 2 vertices")]
    UndefinedConnectivity,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("edge set is empty")]
    EmptyEdgeSet,
    #[error("cover is not 2-thin: sets {0} and {1} share more than two vertices")]
    NotThin(usize, usize),
    #[error("graph must be simple")]
    NotSimple,
    #[error("{what}: size {size} exceeds the exhaustive cap {cap}")]
    OverCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("element {0} is independent of the basis")]
    IndependentElement(usize),
    #[error("not a star family: {0}")]
    NotStarFamily(String),
    #[error("reconstruction failed: {0}")]
    ReconstructionFailed(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("union engines disagree: exhaustive {exhaustive}, augmenting {augmenting}")]
    EngineDisagreement { exhaustive: usize, augmenting: usize },
}
