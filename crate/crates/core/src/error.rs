use thiserror::Error;

use crate::threshold::SupportSet;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("least-squares system on support {support} is rank deficient")]
    RankDeficient { support: SupportSet },

    #[error(
        "enumeration budget exceeded: {subsets} supports of size {order} (budget {budget}); \
         use a smaller instance or supply the constant directly"
    )]
    BudgetExceeded {
        order: usize,
        subsets: u128,
        budget: u128,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_len(context: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected,
            found,
        })
    }
}
