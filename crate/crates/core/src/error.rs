use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain(String),
    /// A size limit from [`Budget`] would be exceeded.
    BudgetExceeded {
        quantity: &'static str,
        requested: u128,
        limit: u128,
    },
    /// Interaction matrix entries `(i, j)` and `(j, i)` differ (0-based).
    Asymmetric { i: usize, j: usize, lij: f64, lji: f64 },
    InvalidModel(String),
    InvalidGroup(String),
    /// An internal structural identity failed; indicates a bug upstream.
    Structural(String),
    /// All edge energies coincide, so the energy gap is undefined.
    DegenerateSpectrum,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::BudgetExceeded {
                quantity,
                requested,
                limit,
            } => write!(
                f,
                "budget exceeded: {quantity} = {requested} exceeds limit {limit}"
            ),
            Error::Asymmetric { i, j, lij, lji } => write!(
                f,
                "interaction matrix is not symmetric: lambda[{}][{}] = {lij} but lambda[{}][{}] = {lji}",
                i + 1,
                j + 1,
                j + 1,
                i + 1
            ),
            Error::InvalidModel(msg) => write!(f, "invalid model: {msg}"),
            Error::InvalidGroup(msg) => write!(f, "invalid group: {msg}"),
            Error::Structural(msg) => write!(f, "structural violation: {msg}"),
            Error::DegenerateSpectrum => {
                f.write_str("all edge energies are equal; the energy gap is undefined")
            }
        }
    }
}

impl core::error::Error for Error {}

/// Size limits for materialized volumes and exhaustive enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of vertices in a materialized volume `V_{n+1}`.
    pub max_vertices: u64,
    /// Maximum number of configurations visited by a brute-force sweep.
    pub max_configurations: u64,
    /// Maximum depth accepted by the tree recursion.
    pub max_depth: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vertices: 1 << 26,
            max_configurations: 1 << 24,
            max_depth: 4096,
        }
    }
}

impl Budget {
    pub fn check_configurations(&self, requested: u128) -> Result<()> {
        if requested > self.max_configurations as u128 {
            return Err(Error::BudgetExceeded {
                quantity: "configurations",
                requested,
                limit: self.max_configurations as u128,
            });
        }
        Ok(())
    }
}
