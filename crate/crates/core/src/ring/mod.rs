//! Exact Laurent polynomial arithmetic and the matrix kernels built on it.

mod factor;
mod matrix;
mod permanent;
mod poly;

use std::fmt;

use serde::{Serialize, Serializer};

pub use factor::{factor_eps_alpha_beta, EpsAlphaBeta, FactorError};
pub use matrix::{det, BitMatrix, DetMethod, PolyMatrix};
pub use permanent::{permanent, permanent_naive};
pub use poly::{LaurentPoly2, PolyParseError, TPoly};

/// A degree with explicit infinite sentinels, used for the `s`-degree
/// range of a possibly zero polynomial.
///
/// The derived order places `NegInf` below every finite value and `PosInf`
/// above it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(i64),
    PosInf,
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::Finite(d) => Some(d),
            _ => None,
        }
    }

    /// Additive inverse; swaps the sentinels.
    pub fn negate(self) -> Self {
        match self {
            Degree::NegInf => Degree::PosInf,
            Degree::Finite(d) => Degree::Finite(-d),
            Degree::PosInf => Degree::NegInf,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("neg_inf"),
            Degree::Finite(d) => write!(f, "{d}"),
            Degree::PosInf => f.write_str("pos_inf"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Degree::Finite(d) => serializer.serialize_i64(*d),
            Degree::NegInf => serializer.serialize_str("neg_inf"),
            Degree::PosInf => serializer.serialize_str("pos_inf"),
        }
    }
}
