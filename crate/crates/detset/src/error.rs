use thiserror::Error;

/// Errors raised by constructors, structure queries, and searches.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group order {order} exceeds the construction cap {cap}")]
    OrderCap { order: u128, cap: usize },

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("{family}: parameter out of range: {reason}")]
    BadParameter { family: &'static str, reason: String },

    #[error("subset is not a subgroup")]
    NotSubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup scan skipped: order {order} exceeds scan cap {cap}")]
    ScanCap { order: usize, cap: usize },

    #[error("homomorphism search skipped: candidate space {estimate} exceeds cap {cap}")]
    HomCap { estimate: u128, cap: u64 },

    #[error("candidate matrix enumeration skipped: {estimate} candidates exceed cap {cap}")]
    BidwellCap { estimate: u128, cap: u64 },

    #[error("factor automorphism group not fully enumerated; matrix enumeration needs complete factor data")]
    BidwellFactorCapped,

    #[error("factor orders are not pairwise coprime; pass the no-common-direct-factor assertion to proceed")]
    BidwellNeedsAssertion,

    #[error("node budget exhausted; sizes below {lower} are exhausted, so the answer is at least {lower}")]
    NodeBudget { lower: usize },

    #[error("subset enumeration at size {size} needs {estimate} subsets, over the node budget {budget}")]
    SubsetBudget { size: usize, estimate: u128, budget: u64 },

    #[error("oracle requires order <= {cap}, got {order}")]
    OracleCap { order: usize, cap: usize },

    #[error("{op}: {reason}")]
    Precondition { op: &'static str, reason: String },

    #[error("malformed table text at line {line}: {reason}")]
    TableText { line: usize, reason: String },

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

impl Error {
    pub(crate) fn pre(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Precondition { op, reason: reason.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
