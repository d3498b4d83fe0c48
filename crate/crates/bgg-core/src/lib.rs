//! Weyl-group combinatorics for BGG complexes over the Lagrangian
//! Grassmannian, i.e. type C_n with the parabolic subalgebra crossing the
//! long simple root.
//!
//! The crate is organized around a chain of increasingly structured
//! encodings of the same objects:
//!
//! * [`weyl`] — the type C_n root system and the Weyl group as signed
//!   permutations; slow, obviously-correct enumeration used as ground truth.
//! * [`lsword`] — binary words and generalized Young diagrams parametrizing
//!   the parabolic Hasse diagram, with the labeled arrow structure.
//! * [`orbit`] — semi-regular singular infinitesimal characters and their
//!   singular orbits.
//! * [`penrose`] — relative resolutions, direct-image bookkeeping,
//!   spectral-sequence first pages, and assembled singular BGG complexes
//!   with non-standard arrows and operator orders.
//! * [`diffop`] — exact-arithmetic constant-coefficient differential
//!   operators on the big affine cell, including the explicit third-order
//!   operator of the rank-3 even complex.
//! * [`verify`] — the cross-checking suite pitting the fast word encodings
//!   against the brute-force signed-permutation oracles.
//!
//! Everything is exact: weights are vectors of arbitrary-precision
//! rationals, and no floating point is used anywhere.

use std::fmt;

pub mod diffop;
pub mod lsword;
pub mod orbit;
pub mod penrose;
pub mod render;
pub mod verify;
pub mod weyl;

/// Exact rational scalar used for weights and operator coefficients.
pub type Rational = num::BigRational;

pub(crate) fn rat(v: i64) -> Rational {
    Rational::from_integer(num::BigInt::from(v))
}

/// Errors reported by the library.
///
/// Operations that merely have preconditions (documented on each function)
/// assert them; `Error` is reserved for conditions that a caller can
/// plausibly trigger with well-typed input, plus `InvariantViolation` for
/// internal cross-checks whose failure signals a wiring bug.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Rank exceeds a configured enumeration cap.
    RankOutOfRange {
        what: &'static str,
        rank: usize,
        max: usize,
    },
    /// Vector lengths disagree.
    DimensionMismatch { expected: usize, found: usize },
    /// Two adjacent simple roots were declared singular; the corresponding
    /// block is empty.
    EmptyBlock { first: usize, second: usize },
    /// The weight is orthogonal to more than one simple root; higher
    /// singularity is unsupported.
    HigherSingularity { indices: Vec<usize> },
    /// The weight is not dominant (or not integral) where required.
    NotDominant(String),
    /// Row lengths do not describe an admissible generalized Young diagram.
    InvalidDiagram(String),
    /// A binary word contained digits other than 0/1.
    InvalidWord(String),
    /// Simple-root index out of range for the rank.
    InvalidIndex { k: usize, n: usize },
    /// A word was passed to a singular-orbit operation but does not belong
    /// to the singular Hasse diagram in question.
    NotSingularWord { word: String, k: usize },
    /// Parity splitting applies only to second-kind singular orbits.
    ParityOnFirstKind,
    /// Second-kind complexes require a parity choice.
    MissingParity,
    /// A conformal-weight difference was not a positive integer.
    BadOperatorOrder(String),
    /// A linear-algebra problem exceeded the configured size cap.
    DimensionOverflow { needed: usize, cap: usize },
    /// An internal cross-check failed; this indicates a bug, not bad input.
    InvariantViolation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RankOutOfRange { what, rank, max } => {
                write!(f, "rank {rank} out of range for {what} (max {max})")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::EmptyBlock { first, second } => write!(
                f,
                "adjacent singular simple roots alpha_{first}, alpha_{second}: empty block"
            ),
            Error::HigherSingularity { indices } => write!(
                f,
                "higher singularity unsupported: singular simple roots {indices:?}"
            ),
            Error::NotDominant(w) => write!(f, "weight {w} is not dominant integral"),
            Error::InvalidDiagram(msg) => write!(f, "invalid generalized Young diagram: {msg}"),
            Error::InvalidWord(msg) => write!(f, "invalid LS word: {msg}"),
            Error::InvalidIndex { k, n } => {
                write!(f, "simple-root index {k} out of range for rank {n}")
            }
            Error::NotSingularWord { word, k } => {
                write!(
                    f,
                    "word {word} is not in the singular Hasse diagram for k={k}"
                )
            }
            Error::ParityOnFirstKind => {
                write!(
                    f,
                    "parity splitting applies only to second-kind singular orbits"
                )
            }
            Error::MissingParity => {
                write!(
                    f,
                    "second-kind singular complexes require a parity (even/odd)"
                )
            }
            Error::BadOperatorOrder(msg) => write!(f, "bad operator order: {msg}"),
            Error::DimensionOverflow { needed, cap } => {
                write!(f, "problem size {needed} exceeds cap {cap}")
            }
            Error::InvariantViolation(msg) => write!(f, "invariant violation: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

pub use lsword::{ArrowKind, GenYoungDiagram, HasseArrow, HasseGraph, HasseNode, LSWord};
pub use orbit::{Parity, SingularCharacter, SingularKind};
pub use weyl::{RankCaps, Root, Weight, WeylElement};
