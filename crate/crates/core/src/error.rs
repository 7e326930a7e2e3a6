use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("poset must have at least one element")]
    EmptyPoset,
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("not a lattice: `{0}` and `{1}` have no {2}")]
    NotALattice(String, String, &'static str),
    #[error("product of size {size} exceeds cap {cap}")]
    ProductTooLarge { size: u128, cap: usize },
    #[error("exhaustive check over {size} elements exceeds cap {cap}")]
    ExhaustiveTooLarge { size: usize, cap: usize },
    #[error("element index {0} is outside the carrier")]
    ElementOutOfCarrier(usize),
    #[error("carrier of {0} points exceeds the topology cap of {1}")]
    CarrierTooLarge(usize, usize),
    #[error("topologies live on different carriers")]
    CarrierMismatch,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("set must be nonempty")]
    EmptySet,
    #[error("statement kind must be 1 or 2, got {0}")]
    InvalidStatementKind(u32),
    #[error("parse error at {at}: {msg}")]
    Parse { at: String, msg: String },
    #[error("strategy set of player `{player}` is not a lattice: {detail}")]
    PlayerNotALattice { player: String, detail: String },
    #[error("projection onto player `{player}` misses strategy `{strategy}`")]
    NonSurjectiveProjection { player: String, strategy: String },
    #[error("player `{player}` has no payoff for profile `{profile}`")]
    MissingPayoff { player: String, profile: String },
    #[error("profile `{0}` is listed twice")]
    DuplicateProfile(String),
    #[error("profile `{0}` is not feasible")]
    InfeasibleProfile(String),
    #[error("player set must be nonempty")]
    EmptyPlayerSet,
    #[error("unknown player index {0}")]
    UnknownPlayer(usize),
    #[error("generator spec out of range: {0}")]
    SpecOutOfRange(String),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("unknown gallery entry `{0}`")]
    UnknownGalleryName(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
