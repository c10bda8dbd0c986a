//! Set families and their exchange, connectivity, and independence
//! axioms.
//!
//! A [`SetFamily`] is a finite collection of subsets of a ground set,
//! kept sorted by mask bits. The exchange axioms (plain, weak, and
//! multiple) are checked by delegating to the function-level checkers on
//! the family's {0, -inf} indicator, which keeps the two worlds in exact
//! agreement; the structural axioms (equicardinality, independence,
//! connectivity, sandwich and interval properties) are checked directly
//! on the member list. Structural witnesses carry a 0 > -inf value pair,
//! standing for a required member that is missing.

use crate::axioms::{self, AxiomId, CheckReport, CheckedAxiom, Witness};
use crate::error::{DcaError, Result};
use crate::func::SetFunction;
use crate::ground::{GroundSet, SubsetMask};
use crate::value::ExtValue;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

/// A family of subsets of a common ground set, sorted by mask bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    ground: GroundSet,
    members: Vec<SubsetMask>,
}

impl SetFamily {
    /// Builds a family. Members must lie inside the ground set and must
    /// not repeat; an empty family is allowed.
    pub fn new(ground: GroundSet, mut members: Vec<SubsetMask>) -> Result<SetFamily> {
        let full = ground.full_mask();
        for m in &members {
            if !m.is_subset_of(full) {
                let el = m.diff(full).elements().next().expect("offender exists");
                return Err(DcaError::InvalidElement { el, n: ground.n() });
            }
        }
        members.sort();
        for pair in members.windows(2) {
            if pair[0] == pair[1] {
                return Err(DcaError::DuplicateSubset(pair[0].to_vec()));
            }
        }
        Ok(SetFamily { ground, members })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    /// Members in ascending mask order.
    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: SubsetMask) -> bool {
        self.members.binary_search(&m).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.members.iter().copied()
    }
}

/// The family-level axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyAxiomId {
    /// Transfer-or-swap exchange between members.
    BnatExc,
    /// Swap exchange between members.
    BExc,
    /// Weak swap exchange: some pivot works for each distinct pair.
    BExcW,
    /// All members share one cardinality.
    Equicard,
    /// The three independence-system axioms.
    IndAxioms,
    /// Members below a larger member stay connected downward.
    ConnDown,
    /// Equicardinal members are connected by single swaps.
    ConnSwap,
    /// Cross connectivity between comparable cardinalities.
    ConnCross,
    /// Sandwich property: a chain gap can be closed from both ends.
    UpDown,
    /// Interval property: anything between two nested members belongs.
    Interval,
    /// Multiple exchange: any answer set J.
    BnatExcM,
    /// Multiple exchange with |J| = |I|.
    BExcM,
}

impl FamilyAxiomId {
    pub const ALL: [FamilyAxiomId; 12] = [
        FamilyAxiomId::BnatExc,
        FamilyAxiomId::BExc,
        FamilyAxiomId::BExcW,
        FamilyAxiomId::Equicard,
        FamilyAxiomId::IndAxioms,
        FamilyAxiomId::ConnDown,
        FamilyAxiomId::ConnSwap,
        FamilyAxiomId::ConnCross,
        FamilyAxiomId::UpDown,
        FamilyAxiomId::Interval,
        FamilyAxiomId::BnatExcM,
        FamilyAxiomId::BExcM,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyAxiomId::BnatExc => "BNAT_EXC",
            FamilyAxiomId::BExc => "B_EXC",
            FamilyAxiomId::BExcW => "B_EXC_W",
            FamilyAxiomId::Equicard => "EQUICARD",
            FamilyAxiomId::IndAxioms => "IND_AXIOMS",
            FamilyAxiomId::ConnDown => "CONN_DOWN",
            FamilyAxiomId::ConnSwap => "CONN_SWAP",
            FamilyAxiomId::ConnCross => "CONN_CROSS",
            FamilyAxiomId::UpDown => "UPDOWN",
            FamilyAxiomId::Interval => "INTERVAL",
            FamilyAxiomId::BnatExcM => "BNAT_EXC_M",
            FamilyAxiomId::BExcM => "B_EXC_M",
        }
    }

    /// The function axiom the check delegates to on the indicator, if
    /// this is an exchange axiom rather than a structural one.
    fn delegate(self) -> Option<AxiomId> {
        match self {
            FamilyAxiomId::BnatExc => Some(AxiomId::MnatExc),
            FamilyAxiomId::BExc => Some(AxiomId::MExc),
            FamilyAxiomId::BExcW => Some(AxiomId::MExcW),
            FamilyAxiomId::BnatExcM => Some(AxiomId::MnatExcM),
            FamilyAxiomId::BExcM => Some(AxiomId::MExcM),
            _ => None,
        }
    }
}

impl fmt::Display for FamilyAxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyAxiomId {
    type Err = DcaError;

    fn from_str(s: &str) -> Result<FamilyAxiomId> {
        FamilyAxiomId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| DcaError::UnsupportedAxiom(s.to_string()))
    }
}

/// Witness for a structural family axiom: a required member is missing,
/// recorded as the placeholder inequality 0 > -inf.
fn fam_witness(id: FamilyAxiomId, x: SubsetMask, y: SubsetMask) -> Witness {
    Witness {
        axiom: CheckedAxiom::Family(id),
        x,
        y,
        z: None,
        i: None,
        j: None,
        i_set: None,
        sub: None,
        lhs: ExtValue::finite(0.0),
        rhs: ExtValue::NEG_INF,
    }
}

fn report(
    id: FamilyAxiomId,
    witness: Option<Witness>,
    pairs: u64,
    start: Instant,
) -> CheckReport {
    CheckReport {
        axiom: CheckedAxiom::Family(id),
        passed: witness.is_none(),
        witness,
        pairs_examined: pairs,
        elapsed: start.elapsed(),
    }
}

/// Relabels a delegated indicator report with the family axiom it
/// answers for.
fn relabel(mut inner: CheckReport, axiom: CheckedAxiom) -> CheckReport {
    inner.axiom = axiom;
    if let Some(w) = &mut inner.witness {
        w.axiom = axiom;
    }
    inner
}

fn vacuous(axiom: CheckedAxiom, start: Instant) -> CheckReport {
    CheckReport { axiom, passed: true, witness: None, pairs_examined: 0, elapsed: start.elapsed() }
}

fn check_equicard(fam: &SetFamily, start: Instant) -> CheckReport {
    let mut pairs = 0;
    if let Some((first, rest)) = fam.members().split_first() {
        let card = first.card();
        for m in rest {
            pairs += 1;
            if m.card() != card {
                return report(FamilyAxiomId::Equicard, Some(fam_witness(FamilyAxiomId::Equicard, *first, *m)), pairs, start);
            }
        }
    }
    report(FamilyAxiomId::Equicard, None, pairs, start)
}

fn check_independence(fam: &SetFamily, start: Instant) -> CheckReport {
    let mut pairs = 1u64;
    // I-1: the empty set belongs.
    if !fam.contains(SubsetMask::EMPTY) {
        let mut w = fam_witness(FamilyAxiomId::IndAxioms, SubsetMask::EMPTY, SubsetMask::EMPTY);
        w.sub = Some("I-1".to_string());
        return report(FamilyAxiomId::IndAxioms, Some(w), pairs, start);
    }
    // I-2: closed under subsets.
    for y in fam.iter() {
        for x in y.subsets() {
            pairs += 1;
            if !fam.contains(x) {
                let mut w = fam_witness(FamilyAxiomId::IndAxioms, x, y);
                w.sub = Some("I-2".to_string());
                return report(FamilyAxiomId::IndAxioms, Some(w), pairs, start);
            }
        }
    }
    // I-3: augmentation across cardinalities.
    for x in fam.iter() {
        for y in fam.iter() {
            if x.card() >= y.card() {
                continue;
            }
            pairs += 1;
            if !y.diff(x).elements().any(|j| fam.contains(x.with(j))) {
                let mut w = fam_witness(FamilyAxiomId::IndAxioms, x, y);
                w.sub = Some("I-3".to_string());
                return report(FamilyAxiomId::IndAxioms, Some(w), pairs, start);
            }
        }
    }
    report(FamilyAxiomId::IndAxioms, None, pairs, start)
}

fn check_conn_down(fam: &SetFamily, start: Instant) -> CheckReport {
    let mut pairs = 0;
    for x in fam.iter() {
        for y in fam.iter() {
            if x.card() >= y.card() {
                continue;
            }
            pairs += 1;
            if !y.diff(x).elements().any(|j| fam.contains(y.without(j))) {
                return report(FamilyAxiomId::ConnDown, Some(fam_witness(FamilyAxiomId::ConnDown, x, y)), pairs, start);
            }
        }
    }
    report(FamilyAxiomId::ConnDown, None, pairs, start)
}

fn check_conn_swap(fam: &SetFamily, start: Instant) -> CheckReport {
    let mut pairs = 0;
    for x in fam.iter() {
        for y in fam.iter() {
            if x == y || x.card() != y.card() {
                continue;
            }
            pairs += 1;
            let found = x.diff(y).elements().any(|i| {
                y.diff(x).elements().any(|j| fam.contains(y.with(i).without(j)))
            });
            if !found {
                return report(FamilyAxiomId::ConnSwap, Some(fam_witness(FamilyAxiomId::ConnSwap, x, y)), pairs, start);
            }
        }
    }
    report(FamilyAxiomId::ConnSwap, None, pairs, start)
}

fn check_conn_cross(fam: &SetFamily, start: Instant) -> CheckReport {
    let mut pairs = 0;
    for x in fam.iter() {
        for y in fam.iter() {
            if x.card() >= y.card() || x.diff(y).is_empty() {
                continue;
            }
            pairs += 1;
            let found = x.diff(y).elements().any(|i| {
                y.diff(x).elements().any(|j| fam.contains(y.with(i).without(j)))
            });
            if !found {
                return report(FamilyAxiomId::ConnCross, Some(fam_witness(FamilyAxiomId::ConnCross, x, y)), pairs, start);
            }
        }
    }
    report(FamilyAxiomId::ConnCross, None, pairs, start)
}

fn check_updown(fam: &SetFamily, start: Instant) -> CheckReport {
    let mut pairs = 0;
    for x in fam.iter() {
        for y in fam.iter() {
            if x == y || !x.is_subset_of(y) {
                continue;
            }
            pairs += 1;
            let found = y
                .diff(x)
                .elements()
                .any(|j| fam.contains(x.with(j)) && fam.contains(y.without(j)));
            if !found {
                return report(FamilyAxiomId::UpDown, Some(fam_witness(FamilyAxiomId::UpDown, x, y)), pairs, start);
            }
        }
    }
    report(FamilyAxiomId::UpDown, None, pairs, start)
}

fn check_interval(fam: &SetFamily, start: Instant) -> CheckReport {
    let mut pairs = 0;
    for x in fam.iter() {
        for y in fam.iter() {
            if !x.is_subset_of(y) {
                continue;
            }
            pairs += 1;
            for gap in y.diff(x).subsets() {
                let z = x.union(gap);
                if !fam.contains(z) {
                    let mut w = fam_witness(FamilyAxiomId::Interval, x, y);
                    w.z = Some(z);
                    return report(FamilyAxiomId::Interval, Some(w), pairs, start);
                }
            }
        }
    }
    report(FamilyAxiomId::Interval, None, pairs, start)
}

/// Checks one family axiom under the default multiple-exchange cap.
pub fn check_family(fam: &SetFamily, id: FamilyAxiomId) -> Result<CheckReport> {
    check_family_with_cap(fam, id, crate::ground::DEFAULT_MULTI_EXCHANGE_CAP)
}

/// Checks one family axiom; `multi_cap` bounds n for the
/// multiple-exchange variants.
pub fn check_family_with_cap(fam: &SetFamily, id: FamilyAxiomId, multi_cap: u8) -> Result<CheckReport> {
    let start = Instant::now();
    if let Some(inner_id) = id.delegate() {
        if fam.is_empty() {
            // Every exchange axiom is vacuous without members.
            return Ok(vacuous(CheckedAxiom::Family(id), start));
        }
        let indicator = SetFunction::indicator(fam);
        let inner = axioms::check_axiom_with_cap(&indicator, inner_id, multi_cap)?;
        return Ok(relabel(inner, CheckedAxiom::Family(id)));
    }
    Ok(match id {
        FamilyAxiomId::Equicard => check_equicard(fam, start),
        FamilyAxiomId::IndAxioms => check_independence(fam, start),
        FamilyAxiomId::ConnDown => check_conn_down(fam, start),
        FamilyAxiomId::ConnSwap => check_conn_swap(fam, start),
        FamilyAxiomId::ConnCross => check_conn_cross(fam, start),
        FamilyAxiomId::UpDown => check_updown(fam, start),
        FamilyAxiomId::Interval => check_interval(fam, start),
        _ => unreachable!("exchange axioms are delegated"),
    })
}

/// Checks the strong multiple-exchange variant (|J| <= |I|), which is
/// reported under the label BNAT_EXC_MS but kept out of the canonical
/// family axiom list.
pub fn check_family_multi_strong(fam: &SetFamily, multi_cap: u8) -> Result<CheckReport> {
    let start = Instant::now();
    if fam.is_empty() {
        return Ok(vacuous(CheckedAxiom::FamilyMultiStrong, start));
    }
    let indicator = SetFunction::indicator(fam);
    let inner = axioms::check_axiom_with_cap(&indicator, AxiomId::MnatExcMs, multi_cap)?;
    Ok(relabel(inner, CheckedAxiom::FamilyMultiStrong))
}

/// Checks whether the family satisfies the three independence-system
/// axioms; the witness labels the failing sub-axiom.
pub fn is_matroid_independence(fam: &SetFamily) -> CheckReport {
    check_independence(fam, Instant::now())
}

/// The connectivity reports implied by the transfer-or-swap family
/// axiom, bundled with the axiom report itself.
#[derive(Clone, Debug)]
pub struct ImpliedProperties {
    pub bnat_exc: CheckReport,
    pub conn_down: CheckReport,
    pub conn_swap: CheckReport,
    pub conn_cross: CheckReport,
}

/// Checks the transfer-or-swap family axiom together with the three
/// connectivity properties it implies. A family that passes the axiom
/// but misses a connectivity property would contradict the implication,
/// so that outcome is an error rather than a report.
pub fn implied_properties(fam: &SetFamily) -> Result<ImpliedProperties> {
    let props = ImpliedProperties {
        bnat_exc: check_family(fam, FamilyAxiomId::BnatExc)?,
        conn_down: check_family(fam, FamilyAxiomId::ConnDown)?,
        conn_swap: check_family(fam, FamilyAxiomId::ConnSwap)?,
        conn_cross: check_family(fam, FamilyAxiomId::ConnCross)?,
    };
    if props.bnat_exc.passed
        && !(props.conn_down.passed && props.conn_swap.passed && props.conn_cross.passed)
    {
        return Err(DcaError::InternalContradiction(
            "exchange holds but an implied connectivity property fails".to_string(),
        ));
    }
    Ok(props)
}

fn mismatch(msg: &str) -> DcaError {
    DcaError::WitnessMismatch(msg.to_string())
}

/// Re-validates a family witness: recomputes the axiom at the recorded
/// tuple and reports whether it still fails there. Exchange witnesses
/// are replayed on the indicator function; structural ones directly on
/// the member list.
pub fn verify_family_witness(fam: &SetFamily, w: &Witness) -> Result<bool> {
    let full = fam.ground().full_mask();
    if !w.x.is_subset_of(full) || !w.y.is_subset_of(full) {
        return Err(mismatch("witness subsets leave the ground set"));
    }
    let id = match w.axiom {
        CheckedAxiom::Family(id) => id,
        CheckedAxiom::FamilyMultiStrong => {
            let indicator = SetFunction::indicator(fam);
            let mut fw = w.clone();
            fw.axiom = CheckedAxiom::Function(AxiomId::MnatExcMs);
            return axioms::verify_witness(&indicator, &fw);
        }
        CheckedAxiom::Function(_) => {
            return Err(mismatch("function witness checked against a family"));
        }
    };
    if let Some(inner_id) = id.delegate() {
        let indicator = SetFunction::indicator(fam);
        let mut fw = w.clone();
        fw.axiom = CheckedAxiom::Function(inner_id);
        return axioms::verify_witness(&indicator, &fw);
    }
    let (x, y) = (w.x, w.y);
    let violated = match id {
        FamilyAxiomId::Equicard => fam.contains(x) && fam.contains(y) && x.card() != y.card(),
        FamilyAxiomId::IndAxioms => {
            let sub = w.sub.as_deref().ok_or_else(|| mismatch("missing sub-axiom label"))?;
            match sub {
                "I-1" => !fam.contains(SubsetMask::EMPTY),
                "I-2" => {
                    if !x.is_subset_of(y) {
                        return Err(mismatch("I-2 needs X inside Y"));
                    }
                    fam.contains(y) && !fam.contains(x)
                }
                "I-3" => {
                    fam.contains(x)
                        && fam.contains(y)
                        && x.card() < y.card()
                        && !y.diff(x).elements().any(|j| fam.contains(x.with(j)))
                }
                other => return Err(mismatch(&format!("unknown sub-axiom {other:?}"))),
            }
        }
        FamilyAxiomId::ConnDown => {
            if x.card() >= y.card() {
                return Err(mismatch("cardinality side condition does not hold"));
            }
            fam.contains(x)
                && fam.contains(y)
                && !y.diff(x).elements().any(|j| fam.contains(y.without(j)))
        }
        FamilyAxiomId::ConnSwap | FamilyAxiomId::ConnCross => {
            let fits = if id == FamilyAxiomId::ConnSwap {
                x != y && x.card() == y.card()
            } else {
                x.card() < y.card() && !x.diff(y).is_empty()
            };
            if !fits {
                return Err(mismatch("side condition does not hold"));
            }
            let found = x.diff(y).elements().any(|i| {
                y.diff(x).elements().any(|j| fam.contains(y.with(i).without(j)))
            });
            fam.contains(x) && fam.contains(y) && !found
        }
        FamilyAxiomId::UpDown => {
            if x == y || !x.is_subset_of(y) {
                return Err(mismatch("UPDOWN needs X strictly inside Y"));
            }
            let found = y
                .diff(x)
                .elements()
                .any(|j| fam.contains(x.with(j)) && fam.contains(y.without(j)));
            fam.contains(x) && fam.contains(y) && !found
        }
        FamilyAxiomId::Interval => {
            let z = w.z.ok_or_else(|| mismatch("missing middle set"))?;
            if !x.is_subset_of(z) || !z.is_subset_of(y) {
                return Err(mismatch("middle set must sit between X and Y"));
            }
            fam.contains(x) && fam.contains(y) && !fam.contains(z)
        }
        _ => unreachable!("exchange axioms are delegated"),
    };
    Ok(violated)
}
