use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A real argument fell outside the domain of the operation.
    OutOfDomain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },
    /// An integer argument fell outside its supported range.
    OutOfRange {
        what: &'static str,
        value: u64,
        min: u64,
        max: u64,
    },
    /// A series did not reach its stopping rule within the term cap.
    SeriesNotConverged { terms: usize },
    /// The truncated lattice theta series cannot certify its tail on the
    /// search window; a larger truncation index is needed.
    TailNotCertified { truncation: usize, t: f64 },
    /// An exact division that must be exact left a remainder.
    InexactDivision { index: usize, divisor: u64 },
    /// Exact integer arithmetic overflowed its fixed-width carrier.
    Overflow(&'static str),
    /// The reordered multiplicities fail `b_i <= b_j` for `i > j`.
    InadmissibleProfile { index: usize },
    /// An enumeration would exceed its budget.
    BudgetExceeded { needed: u128, budget: u128 },
    /// Two points whose squared distance is odd.
    OddSquaredDistance { i: usize, j: usize },
    /// A ground set listing the same point twice.
    DuplicatePoint { i: usize, j: usize },
    /// The modulus is not prime.
    NotPrime(u64),
    /// Half the squared diameter reaches `(m + 1) p`.
    DiameterTooLarge { half_sq_diameter: u128, limit: u128 },
    /// The prime must exceed the clique parameter.
    PrimeTooSmall { p: u64, k: usize },
    /// Points of different dimensions, or an unexpected tuple length.
    ShapeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    /// An index that does not address an existing item.
    IndexOutOfBounds { index: usize, len: usize },
    /// A permutation image that is not a bijection.
    NotBijective,
    /// Blocks that do not form a set partition.
    InvalidPartition,
    /// No composition satisfies the ordering restriction.
    EmptyRestrictedSet,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutOfDomain {
                what,
                value,
                expected,
            } => write!(f, "{what} = {value} is outside {expected}"),
            Error::OutOfRange {
                what,
                value,
                min,
                max,
            } => write!(f, "{what} = {value} is outside [{min}, {max}]"),
            Error::SeriesNotConverged { terms } => {
                write!(f, "series did not converge within {terms} terms")
            }
            Error::TailNotCertified { truncation, t } => write!(
                f,
                "tail of the series truncated at K = {truncation} is not certified up to t = {t}; use a larger K"
            ),
            Error::InexactDivision { index, divisor } => {
                write!(f, "coefficient {index} is not divisible by {divisor}")
            }
            Error::Overflow(what) => write!(f, "integer overflow while computing {what}"),
            Error::InadmissibleProfile { index } => write!(
                f,
                "reordered multiplicities violate b_i <= b_j for i > j at index {index}"
            ),
            Error::BudgetExceeded { needed, budget } => {
                write!(f, "enumeration needs {needed} items, budget is {budget}")
            }
            Error::OddSquaredDistance { i, j } => {
                write!(f, "points {i} and {j} have odd squared distance")
            }
            Error::DuplicatePoint { i, j } => write!(f, "points {i} and {j} coincide"),
            Error::NotPrime(p) => write!(f, "modulus {p} is not prime"),
            Error::DiameterTooLarge {
                half_sq_diameter,
                limit,
            } => write!(
                f,
                "half squared diameter {half_sq_diameter} is not below (m + 1) p = {limit}"
            ),
            Error::PrimeTooSmall { p, k } => write!(f, "prime {p} must exceed k = {k}"),
            Error::ShapeMismatch {
                what,
                expected,
                found,
            } => write!(f, "{what}: expected {expected}, found {found}"),
            Error::IndexOutOfBounds { index, len } => {
                write!(f, "index {index} out of bounds for length {len}")
            }
            Error::NotBijective => f.write_str("permutation image is not a bijection"),
            Error::InvalidPartition => {
                f.write_str("blocks are not nonempty, disjoint, and covering")
            }
            Error::EmptyRestrictedSet => {
                f.write_str("no composition satisfies a_i <= a_j whenever c_i >= c_j")
            }
        }
    }
}

impl core::error::Error for Error {}
