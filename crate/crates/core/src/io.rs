//! JSON encoding of functions and families.
//!
//! A function document lists the ground-set size and the subsets with an
//! explicit value; every omitted subset is -inf. Values are numbers or
//! the string "-inf". A family document lists its members as element
//! arrays. Unknown top-level keys are ignored, so documents may carry
//! extra metadata (the lift output does). Emission is canonical: finite
//! entries only, ascending mask order, shortest round-trip floats.

use crate::error::{DcaError, Result};
use crate::family::SetFamily;
use crate::func::{LiftSpec, SetFunction};
use crate::ground::{GroundSet, SubsetMask};
use crate::value::ExtValue;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Deserialize)]
struct FunctionDoc {
    n: u8,
    #[serde(default)]
    entries: Vec<EntryDoc>,
}

#[derive(Deserialize)]
struct EntryDoc {
    set: Vec<u8>,
    value: ExtValue,
}

#[derive(Serialize)]
struct FunctionOut {
    n: u8,
    entries: Vec<EntryOut>,
}

#[derive(Serialize)]
struct EntryOut {
    set: Vec<u8>,
    value: f64,
}

#[derive(Deserialize)]
struct FamilyDoc {
    n: u8,
    #[serde(default)]
    members: Vec<Vec<u8>>,
}

#[derive(Serialize)]
struct FamilyOut {
    n: u8,
    members: Vec<Vec<u8>>,
}

fn mask_for(ground: GroundSet, set: &[u8]) -> Result<SubsetMask> {
    let mask = SubsetMask::from_elements(set)?;
    let full = ground.full_mask();
    if !mask.is_subset_of(full) {
        let el = mask.diff(full).elements().next().expect("offender exists");
        return Err(DcaError::InvalidElement { el, n: ground.n() });
    }
    Ok(mask)
}

/// Parses a function document. `max_n` caps the ground-set size.
pub fn parse_function_json(text: &str, max_n: u8) -> Result<SetFunction> {
    let doc: FunctionDoc = serde_json::from_str(text)?;
    let ground = GroundSet::with_cap(doc.n, max_n)?;
    let mut table = vec![ExtValue::NEG_INF; ground.size()];
    let mut seen = vec![false; ground.size()];
    for entry in &doc.entries {
        let mask = mask_for(ground, &entry.set)?;
        let idx = mask.bits() as usize;
        // An explicit -inf entry still claims its slot.
        if seen[idx] {
            return Err(DcaError::DuplicateSubset(entry.set.clone()));
        }
        seen[idx] = true;
        table[idx] = entry.value;
    }
    SetFunction::new(ground, table)
}

/// Emits the canonical function document.
pub fn emit_function_json(f: &SetFunction) -> String {
    let entries = f
        .ground()
        .masks()
        .filter(|m| f.eval(*m).is_finite())
        .map(|m| EntryOut { set: m.to_vec(), value: f.eval(m).as_f64() })
        .collect();
    serde_json::to_string(&FunctionOut { n: f.ground().n(), entries })
        .expect("function documents always serialize")
}

/// Emits a lifted function together with its shape metadata under the
/// extra "lift" key; the result still parses as a plain function.
pub fn emit_lifted_function_json(f: &SetFunction, spec: &LiftSpec) -> String {
    let mut doc: serde_json::Value =
        serde_json::from_str(&emit_function_json(f)).expect("own output parses");
    doc["lift"] = serde_json::to_value(spec).expect("lift specs always serialize");
    doc.to_string()
}

/// Parses a family document. `max_n` caps the ground-set size.
pub fn parse_family_json(text: &str, max_n: u8) -> Result<SetFamily> {
    let doc: FamilyDoc = serde_json::from_str(text)?;
    let ground = GroundSet::with_cap(doc.n, max_n)?;
    let mut members = Vec::with_capacity(doc.members.len());
    for set in &doc.members {
        members.push(mask_for(ground, set)?);
    }
    SetFamily::new(ground, members)
}

/// Emits the canonical family document: members ascending by mask.
pub fn emit_family_json(fam: &SetFamily) -> String {
    let members = fam.iter().map(|m| m.to_vec()).collect();
    serde_json::to_string(&FamilyOut { n: fam.ground().n(), members })
        .expect("family documents always serialize")
}

/// Reads and parses a function document from a file.
pub fn function_from_file(path: &Path, max_n: u8) -> Result<SetFunction> {
    parse_function_json(&std::fs::read_to_string(path)?, max_n)
}

/// Reads and parses a family document from a file.
pub fn family_from_file(path: &Path, max_n: u8) -> Result<SetFamily> {
    parse_family_json(&std::fs::read_to_string(path)?, max_n)
}
