//! Dense set functions and the operations that move between their
//! equicardinal and free-cardinality forms.
//!
//! A [`SetFunction`] stores one extended-real value per subset of its
//! ground set, indexed by mask bits. The effective domain is the family
//! of subsets with a finite value; a valid function has at least one.
//! Linear shifts, single-cardinality layers, and the lift that embeds a
//! function into an equicardinal world over an enlarged ground set all
//! live here.

use crate::error::{DcaError, Result};
use crate::family::SetFamily;
use crate::ground::{GroundSet, SubsetMask};
use crate::value::ExtValue;
use sha2::{Digest, Sha256};

/// A set function f: 2^N -> R ∪ {-inf} with a dense value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunction {
    ground: GroundSet,
    table: Vec<ExtValue>,
    integral: bool,
}

impl SetFunction {
    /// Builds a function from a full value table indexed by mask bits.
    /// The table length must be 2^n and at least one value must be
    /// finite.
    pub fn new(ground: GroundSet, table: Vec<ExtValue>) -> Result<SetFunction> {
        if table.len() != ground.size() {
            return Err(DcaError::DimensionMismatch { expected: ground.size(), got: table.len() });
        }
        if !table.iter().any(|v| v.is_finite()) {
            return Err(DcaError::EmptyDomain);
        }
        Ok(SetFunction::build(ground, table))
    }

    /// Internal constructor that tolerates an empty effective domain,
    /// used for the restrictions produced by exchange pairs.
    pub(crate) fn new_allow_empty(ground: GroundSet, table: Vec<ExtValue>) -> Result<SetFunction> {
        if table.len() != ground.size() {
            return Err(DcaError::DimensionMismatch { expected: ground.size(), got: table.len() });
        }
        Ok(SetFunction::build(ground, table))
    }

    fn build(ground: GroundSet, table: Vec<ExtValue>) -> SetFunction {
        let integral = table.iter().all(|v| v.is_integral());
        SetFunction { ground, table, integral }
    }

    /// The function that is 0 everywhere on 2^N.
    pub fn constant_zero(ground: GroundSet) -> SetFunction {
        SetFunction::build(ground, vec![ExtValue::finite(0.0); ground.size()])
    }

    /// The {0, -inf}-valued indicator of a family: 0 on members, -inf
    /// elsewhere. An empty family yields an empty-domain function, which
    /// the axiom checkers treat as vacuously exchangeable.
    pub fn indicator(family: &SetFamily) -> SetFunction {
        let ground = family.ground();
        let mut table = vec![ExtValue::NEG_INF; ground.size()];
        for m in family.members() {
            table[m.bits() as usize] = ExtValue::finite(0.0);
        }
        SetFunction::build(ground, table)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    /// Value at a subset. The mask must lie inside the ground set.
    pub fn eval(&self, x: SubsetMask) -> ExtValue {
        self.table[x.bits() as usize]
    }

    pub fn table(&self) -> &[ExtValue] {
        &self.table
    }

    /// True when every finite value is an exact integer. Integral
    /// instances are compared with eps = 0.
    pub fn is_integral(&self) -> bool {
        self.integral
    }

    /// Comparison tolerance: 0 for integral instances, 1e-9 otherwise.
    pub fn eps(&self) -> f64 {
        if self.integral {
            0.0
        } else {
            1e-9
        }
    }

    pub fn dom_is_empty(&self) -> bool {
        !self.table.iter().any(|v| v.is_finite())
    }

    /// The family of subsets with a finite value.
    pub fn effective_domain(&self) -> Result<SetFamily> {
        let members: Vec<SubsetMask> = self
            .ground
            .masks()
            .filter(|m| self.eval(*m).is_finite())
            .collect();
        SetFamily::new(self.ground, members)
    }

    /// Smallest and largest cardinality attained on the effective
    /// domain.
    pub fn cardinality_range(&self) -> Result<(u8, u8)> {
        let mut range: Option<(u8, u8)> = None;
        for m in self.ground.masks() {
            if self.eval(m).is_finite() {
                let c = m.card();
                range = Some(match range {
                    None => (c, c),
                    Some((lo, hi)) => (lo.min(c), hi.max(c)),
                });
            }
        }
        range.ok_or(DcaError::EmptyDomain)
    }

    /// Pointwise sum f + p with a modular function given by a price
    /// vector: (f + p)(X) = f(X) + sum of p over X.
    pub fn add_linear(&self, p: &PriceVector) -> Result<SetFunction> {
        if p.len() != self.ground.n() as usize {
            return Err(DcaError::DimensionMismatch { expected: self.ground.n() as usize, got: p.len() });
        }
        let table = self
            .ground
            .masks()
            .map(|m| {
                let v = self.eval(m);
                if v.is_finite() {
                    ExtValue::finite(v.as_f64() + p.sum_over(m))
                } else {
                    ExtValue::NEG_INF
                }
            })
            .collect();
        SetFunction::new(self.ground, table)
    }

    /// Restriction of f to subsets of cardinality exactly `r`; all other
    /// subsets are sent to -inf. Fails when the layer is empty.
    pub fn layer(&self, r: u8) -> Result<SetFunction> {
        let table = self
            .ground
            .masks()
            .map(|m| if m.card() == r { self.eval(m) } else { ExtValue::NEG_INF })
            .collect();
        SetFunction::new(self.ground, table)
    }

    /// Embeds f into an equicardinal world: the ground set grows by `s`
    /// auxiliary elements and the lifted function takes, on each subset Z
    /// of the top cardinality r, the value of f at Z ∩ N, and -inf on
    /// every other cardinality. `s` must cover the spread between the
    /// largest and smallest domain cardinalities of f.
    pub fn lift(&self, s: u8) -> Result<(SetFunction, LiftSpec)> {
        let (r_min, r_max) = self.cardinality_range()?;
        let needed = r_max - r_min;
        if s < needed {
            return Err(DcaError::LiftTooSmall { s, needed });
        }
        let big = self.ground.extended(s)?;
        let base_full = self.ground.full_mask();
        let table = big
            .masks()
            .map(|z| {
                if z.card() == r_max {
                    self.eval(z.intersect(base_full))
                } else {
                    ExtValue::NEG_INF
                }
            })
            .collect();
        let lifted = SetFunction::new(big, table)?;
        let spec = LiftSpec { r: r_max, r_min, s, base_n: self.ground.n() };
        Ok((lifted, spec))
    }

    /// Canonical byte encoding of the instance, used for digests.
    fn canonical_bytes(&self) -> Vec<u8> {
        let mut bytes = Vec::with_capacity(1 + self.table.len() * 9);
        bytes.push(self.ground.n());
        for v in &self.table {
            if v.is_finite() {
                bytes.push(1);
                bytes.extend_from_slice(&v.as_f64().to_le_bytes());
            } else {
                bytes.push(0);
            }
        }
        bytes
    }

    /// Short stable identifier: the first 16 hex digits of the SHA-256
    /// of the canonical encoding.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.canonical_bytes());
        hash[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Shape report for a lift: the target cardinality `r`, the smallest
/// domain cardinality `r_min` of the base function, the number `s` of
/// auxiliary elements, and the size of the base ground set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LiftSpec {
    pub r: u8,
    pub r_min: u8,
    pub s: u8,
    pub base_n: u8,
}

impl LiftSpec {
    /// The auxiliary elements appended to the base ground set.
    pub fn aux_elements(&self) -> Vec<u8> {
        (self.base_n + 1..=self.base_n + self.s).collect()
    }
}

/// A vector of finite per-element prices, indexed by 1-based elements.
#[derive(Clone, Debug, PartialEq)]
pub struct PriceVector {
    values: Vec<f64>,
}

impl PriceVector {
    /// Builds a price vector; every coordinate must be finite.
    pub fn new(values: Vec<f64>) -> Result<PriceVector> {
        for &v in &values {
            if !v.is_finite() {
                return Err(DcaError::NonFiniteValue(v));
            }
        }
        // Normalize -0.0 so emitted JSON and digests stay canonical.
        let values = values.into_iter().map(|v| if v == 0.0 { 0.0 } else { v }).collect();
        Ok(PriceVector { values })
    }

    pub fn zero(len: usize) -> PriceVector {
        PriceVector { values: vec![0.0; len] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Price of a 1-based element.
    pub fn get(&self, el: u8) -> f64 {
        self.values[el as usize - 1]
    }

    /// Sum of prices over the elements of a mask. The mask must not
    /// reach past the vector's length.
    pub fn sum_over(&self, m: SubsetMask) -> f64 {
        m.elements().map(|el| self.get(el)).sum()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}
