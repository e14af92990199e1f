//! Exact arithmetic for the genus-zero modular curves X_0(M).
//!
//! The crate computes, with no floating point anywhere:
//!
//! - level Hurwitz class numbers H^M(D) for the fifteen genus-zero levels
//!   M in {1..10, 12, 13, 16, 18, 25} ([`hurwitz`]),
//! - complete systems of representatives of the positive definite forms
//!   [Ma, b, c] of discriminant -D modulo Gamma_0(M) ([`qform`]),
//! - cusps of X_0(M), generalized Atkin-Lehner involutions and normalizer
//!   decision procedures ([`cusps`]),
//! - intersection numbers of modular correspondences T_N on X_0(M) x X_0(M)
//!   and the class-number identities they imply ([`intersect`]).

use std::fmt;

pub mod arith;
pub mod cusps;
pub mod goldens;
pub mod hurwitz;
pub mod intersect;
pub mod qform;

pub use arith::ExactRational;

/// The levels M for which X_0(M) has genus zero.
pub const GENUS_ZERO_LEVELS: [i64; 15] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25];

/// Prime levels, where H^M(D) is computed from H(D) rather than by enumeration.
pub const PRIME_LEVELS: [i64; 5] = [2, 3, 5, 7, 13];

/// Composite levels with a dedicated reduced-form enumeration.
pub const COMPOSITE_LEVELS: [i64; 9] = [4, 6, 8, 9, 10, 12, 16, 18, 25];

pub fn is_genus_zero_level(m: i64) -> bool {
    GENUS_ZERO_LEVELS.contains(&m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// bezout(0, 0) has no defining equation.
    BezoutBothZero,
    /// Divisor enumeration needs a positive argument.
    NonPositive { what: &'static str, value: i64 },
    /// A level outside the genus-zero list (or outside a routine's domain).
    UnsupportedLevel(i64),
    /// choi_kim only applies to the prime genus-zero levels.
    UnsupportedPrime(i64),
    /// A zero denominator was supplied for a rational.
    ZeroDenominator,
    /// act() requires a determinant-one matrix.
    NotUnimodular { det: i64 },
    /// automorph_order() requires a positive definite level form.
    NotPositiveDefinite { a: i64, disc: i64 },
    /// representatives()/class numbers require D >= 0 (or D > 0 where stated).
    NegativeDiscriminant(i64),
    /// An involution index outside 0 <= m < M.
    InvolutionIndexOutOfRange { level: i64, m: i64 },
    /// Intersection routines require arguments coprime to the level.
    NotCoprimeToLevel { level: i64, n: i64 },
    /// Correspondences of square product degree do not intersect properly.
    ImproperIntersection { n1: i64, n2: i64 },
    /// delta_M(N1, N2) is undefined for M = 25 with N1 = +-N2 mod 5.
    ExcludedLevel25Case { n1: i64, n2: i64 },
    /// The conjecture check takes a perfect square N.
    NotASquare(i64),
    /// A fixture file could not be read or parsed.
    BadFixture(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::BezoutBothZero => write!(f, "bezout(0, 0) is undefined"),
            Self::NonPositive { what, value } => {
                write!(f, "{what} must be positive, got {value}")
            }
            Self::UnsupportedLevel(m) => write!(f, "level {m} is not genus zero"),
            Self::UnsupportedPrime(p) => {
                write!(f, "{p} is not one of the prime levels 2, 3, 5, 7, 13")
            }
            Self::ZeroDenominator => write!(f, "zero denominator"),
            Self::NotUnimodular { det } => {
                write!(f, "matrix action requires determinant 1, got {det}")
            }
            Self::NotPositiveDefinite { a, disc } => {
                write!(f, "form is not positive definite (a = {a}, disc = {disc})")
            }
            Self::NegativeDiscriminant(d) => write!(f, "discriminant argument {d} is negative"),
            Self::InvolutionIndexOutOfRange { level, m } => {
                write!(f, "involution index {m} is outside 0..{level}")
            }
            Self::NotCoprimeToLevel { level, n } => {
                write!(f, "{n} is not coprime to the level {level}")
            }
            Self::ImproperIntersection { n1, n2 } => write!(
                f,
                "T_{n1} and T_{n2} do not intersect properly ({n1}*{n2} is a square)"
            ),
            Self::ExcludedLevel25Case { n1, n2 } => write!(
                f,
                "delta_25({n1}, {n2}) is undefined for N1 = +-N2 mod 5; use the level-25 branch"
            ),
            Self::NotASquare(n) => write!(f, "{n} is not a perfect square"),
            Self::BadFixture(msg) => write!(f, "fixture error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
