use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in the core pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NotPrime(u64),
    /// A rational with `p` in its denominator is not an element of `Z_(p)`.
    DenominatorNotUnit {
        p: u64,
    },
    /// `p^cap` does not fit the machine word used by capped residues.
    CapTooLarge {
        p: u64,
        cap: u32,
    },
    ZeroCap,
    ArityMismatch {
        expected: usize,
        got: usize,
    },
    DimensionMismatch {
        expected: usize,
        got: usize,
    },
    NotSquare {
        rows: usize,
        cols: usize,
    },
    NotHomogeneous {
        degree: u32,
        found: u32,
    },
    InvalidSpec(String),
    /// `gcd` of the weights with index `index` omitted is not 1.
    WeightGcd {
        index: usize,
        gcd: u64,
    },
    ZeroModP,
    /// The hyperplane coordinate divides the defining polynomial mod `p`.
    HyperplaneDividesQ,
    KBelowBound {
        k: u32,
        minimal: u32,
    },
    RankMismatch {
        expected: usize,
        got: usize,
    },
    /// A capped residue computation ran out of `p`-adic digits.
    PrecisionExhausted {
        needed: u32,
        cap: u32,
    },
    DegreeOverflow {
        degree: u32,
        bound: u32,
    },
    /// The precision supplied is below the floor of the char-poly loss bound.
    PrecisionBelowFloor {
        precision: u32,
        floor: u32,
    },
    InvalidShape(String),
    BudgetExceeded {
        needed: u128,
        budget: u128,
    },
    NonIntegralCoefficient {
        index: usize,
    },
    InexactDivision,
    /// A binary form with a repeated factor (its zero scheme is not reduced).
    NonReducedForm,
    NotInvertible,
    NotSemiInvariant,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::DenominatorNotUnit { p } => {
                write!(f, "denominator has positive {p}-adic valuation")
            }
            Error::CapTooLarge { p, cap } => write!(f, "{p}^{cap} does not fit in 64 bits"),
            Error::ZeroCap => write!(f, "precision cap must be positive"),
            Error::ArityMismatch { expected, got } => {
                write!(f, "arity mismatch: expected {expected}, got {got}")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Error::NotHomogeneous { degree, found } => {
                write!(f, "polynomial is not homogeneous of degree {degree} (found a term of degree {found})")
            }
            Error::InvalidSpec(msg) => write!(f, "invalid spec: {msg}"),
            Error::WeightGcd { index, gcd } => {
                write!(f, "weights violate the gcd condition: omitting index {index} leaves gcd {gcd}")
            }
            Error::ZeroModP => write!(f, "defining polynomial vanishes mod p"),
            Error::HyperplaneDividesQ => {
                write!(f, "hyperplane coordinate divides the defining polynomial mod p")
            }
            Error::KBelowBound { k, minimal } => {
                write!(f, "k below the pole-order bound: k = {k}, need k >= {minimal}")
            }
            Error::RankMismatch { expected, got } => {
                write!(f, "lattice rank {got} does not match the Hodge-number prediction {expected}")
            }
            Error::PrecisionExhausted { needed, cap } => {
                write!(f, "p-adic precision exhausted: needed {needed} more digits than the cap {cap} allows")
            }
            Error::DegreeOverflow { degree, bound } => {
                write!(f, "form of degree {degree} exceeds the section bound {bound}")
            }
            Error::PrecisionBelowFloor { precision, floor } => {
                write!(f, "precision {precision} is below the hypothesis floor {floor}")
            }
            Error::InvalidShape(msg) => write!(f, "invalid block shape: {msg}"),
            Error::BudgetExceeded { needed, budget } => {
                write!(f, "enumeration of {needed} points exceeds the budget {budget}")
            }
            Error::NonIntegralCoefficient { index } => {
                write!(f, "coefficient {index} of the zeta numerator is not an integer")
            }
            Error::InexactDivision => write!(f, "polynomial division is not exact"),
            Error::NonReducedForm => write!(f, "binary form has a repeated factor"),
            Error::NotInvertible => write!(f, "element is not invertible"),
            Error::NotSemiInvariant => {
                write!(f, "polynomial is not semi-invariant under the weight group")
            }
        }
    }
}

impl core::error::Error for Error {}
