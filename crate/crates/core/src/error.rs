use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("all-zero excitation: pattern normalization is undefined")]
    ZeroExcitation,
    #[error("no side lobes outside the main lobe")]
    NoSideLobes,
    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),
    #[error("infeasible bridge: {0}")]
    InfeasibleBridge(String),
    #[error("degenerate anchors: bridge span is zero")]
    DegenerateAnchors,
    #[error("contract violation: {0}")]
    ContractViolation(&'static str),
}
