use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

/// A real number extended with `+inf` and `-inf`.
///
/// Costs diverge when neither player ever samples. Multiplication by a real
/// coefficient follows the measure-theoretic convention `0 * inf = 0`, so a
/// cost whose divergent term carries a zero weight stays finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedValue {
    NegInfinity,
    Finite(f64),
    PosInfinity,
}

impl ExtendedValue {
    pub const ZERO: Self = ExtendedValue::Finite(0.0);

    /// Maps IEEE infinities onto the infinite variants. NaN is rejected.
    pub fn from_f64(x: f64) -> Self {
        assert!(!x.is_nan(), "extended value cannot be NaN");
        if x == f64::INFINITY {
            ExtendedValue::PosInfinity
        } else if x == f64::NEG_INFINITY {
            ExtendedValue::NegInfinity
        } else {
            ExtendedValue::Finite(x)
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ExtendedValue::NegInfinity => f64::NEG_INFINITY,
            ExtendedValue::Finite(x) => x,
            ExtendedValue::PosInfinity => f64::INFINITY,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedValue::Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedValue::Finite(x) => Some(x),
            _ => None,
        }
    }

    /// Absolute difference, with equal infinities at distance zero.
    pub fn distance(self, other: Self) -> f64 {
        match (self, other) {
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => (a - b).abs(),
            (a, b) if a == b => 0.0,
            _ => f64::INFINITY,
        }
    }
}

impl PartialOrd for ExtendedValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        use ExtendedValue::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.partial_cmp(b),
            (NegInfinity, NegInfinity) | (PosInfinity, PosInfinity) => Some(Ordering::Equal),
            (NegInfinity, _) | (_, PosInfinity) => Some(Ordering::Less),
            (PosInfinity, _) | (_, NegInfinity) => Some(Ordering::Greater),
        }
    }
}

impl From<f64> for ExtendedValue {
    fn from(x: f64) -> Self {
        ExtendedValue::from_f64(x)
    }
}

impl Mul<f64> for ExtendedValue {
    type Output = ExtendedValue;

    fn mul(self, coef: f64) -> ExtendedValue {
        use ExtendedValue::*;
        match self {
            Finite(x) => Finite(x * coef),
            _ if coef == 0.0 => Finite(0.0),
            PosInfinity if coef > 0.0 => PosInfinity,
            NegInfinity if coef < 0.0 => PosInfinity,
            _ => NegInfinity,
        }
    }
}

impl Mul<ExtendedValue> for f64 {
    type Output = ExtendedValue;

    fn mul(self, value: ExtendedValue) -> ExtendedValue {
        value * self
    }
}

impl Add<f64> for ExtendedValue {
    type Output = ExtendedValue;

    fn add(self, rhs: f64) -> ExtendedValue {
        match self {
            ExtendedValue::Finite(x) => ExtendedValue::Finite(x + rhs),
            infinite => infinite,
        }
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::NegInfinity => f.write_str("-inf"),
            ExtendedValue::Finite(x) => fmt::Display::fmt(x, f),
            ExtendedValue::PosInfinity => f.write_str("inf"),
        }
    }
}
