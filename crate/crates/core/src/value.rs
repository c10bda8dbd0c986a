//! Values in the extended reals R ∪ {-inf}.
//!
//! Set functions take values in the reals extended by a single bottom
//! element minus infinity, which marks subsets outside the effective
//! domain. Addition absorbs into the bottom and comparisons treat it as
//! smaller than every finite value, so `a <= max(...) + eps` style
//! inequalities hold vacuously whenever the left side is minus infinity.

use crate::error::{DcaError, Result};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::Add;

/// A finite float or minus infinity.
///
/// Finite payloads are always proper floats: NaN and the IEEE infinities
/// are rejected at construction, and -0.0 is normalized to 0.0 so that
/// equal values share a bit pattern (digests depend on this).
#[derive(Clone, Copy, PartialEq)]
pub struct ExtValue(f64);

impl ExtValue {
    /// The bottom element, marking subsets outside the effective domain.
    pub const NEG_INF: ExtValue = ExtValue(f64::NEG_INFINITY);

    /// Wraps a finite float. Panics on NaN or an infinity.
    pub fn finite(v: f64) -> ExtValue {
        assert!(v.is_finite(), "ExtValue::finite needs a finite payload, got {v}");
        // Normalize -0.0 so equal values have identical bytes.
        ExtValue(if v == 0.0 { 0.0 } else { v })
    }

    /// Fallible variant of [`ExtValue::finite`].
    pub fn try_finite(v: f64) -> Result<ExtValue> {
        if v.is_finite() {
            Ok(ExtValue::finite(v))
        } else {
            Err(DcaError::NonFiniteValue(v))
        }
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    /// Raw payload; minus infinity maps to `f64::NEG_INFINITY`.
    pub fn as_f64(self) -> f64 {
        self.0
    }

    pub fn max(self, other: ExtValue) -> ExtValue {
        if self.0 >= other.0 {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: ExtValue) -> ExtValue {
        if self.0 <= other.0 {
            self
        } else {
            other
        }
    }

    /// Whether `self <= other + eps` in the extended order. A minus
    /// infinite left side satisfies every inequality; a finite left side
    /// never fits under a minus infinite right side.
    pub fn leq_with_eps(self, other: ExtValue, eps: f64) -> bool {
        if !self.is_finite() {
            return true;
        }
        if !other.is_finite() {
            return false;
        }
        self.0 <= other.0 + eps
    }

    /// True when the payload is minus infinity or an exact integer.
    pub fn is_integral(self) -> bool {
        !self.is_finite() || self.0.fract() == 0.0
    }
}

impl Eq for ExtValue {}

impl PartialOrd for ExtValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtValue {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // No NaN can be stored, so the partial order is total.
        self.0.partial_cmp(&other.0).expect("ExtValue never holds NaN")
    }
}

impl Add for ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: ExtValue) -> ExtValue {
        let sum = self.0 + rhs.0;
        debug_assert!(sum != f64::INFINITY, "ExtValue addition overflowed");
        ExtValue(if sum == 0.0 { 0.0 } else { sum })
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "-inf")
        }
    }
}

impl fmt::Debug for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ExtValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_finite() {
            serializer.serialize_f64(self.0)
        } else {
            serializer.serialize_str("-inf")
        }
    }
}

struct ExtValueVisitor;

impl Visitor<'_> for ExtValueVisitor {
    type Value = ExtValue;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a finite number or the string \"-inf\"")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<ExtValue, E> {
        if v.is_finite() {
            Ok(ExtValue::finite(v))
        } else if v == f64::NEG_INFINITY {
            Ok(ExtValue::NEG_INF)
        } else {
            Err(E::custom(format!("non-finite value {v}")))
        }
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ExtValue, E> {
        Ok(ExtValue::finite(v as f64))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExtValue, E> {
        Ok(ExtValue::finite(v as f64))
    }

    fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<ExtValue, E> {
        if s == "-inf" {
            Ok(ExtValue::NEG_INF)
        } else {
            Err(E::custom(format!("unknown value literal {s:?}, expected \"-inf\"")))
        }
    }
}

impl<'de> Deserialize<'de> for ExtValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<ExtValue, D::Error> {
        deserializer.deserialize_any(ExtValueVisitor)
    }
}
