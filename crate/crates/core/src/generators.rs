//! Instance generators: value-grid corpora, matroid-backed valuations,
//! concave cardinality profiles, and single-entry mutations.
//!
//! Corpora drive the theorem suite: exhaustive mode enumerates every
//! value table over a small grid (all-(-inf) tables are skipped),
//! random mode draws seeded tables. Both are fully deterministic, so
//! the same spec always yields the same instances in the same order.

use crate::error::{DcaError, Result};
use crate::family::{self, FamilyAxiomId, SetFamily};
use crate::func::{PriceVector, SetFunction};
use crate::ground::{GroundSet, SubsetMask};
use crate::value::ExtValue;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Hard cap on the number of tables an exhaustive corpus may contain.
pub const EXHAUSTIVE_CAP: u128 = 10_000_000;

/// How a corpus enumerates tables.
#[derive(Clone, Debug, PartialEq)]
pub enum CorpusMode {
    /// Every value table over the grid, in ascending code order.
    Exhaustive,
    /// `count` seeded random tables.
    Random { count: usize, seed: u64 },
}

/// A corpus of set functions over {1, ..., n} with values from a fixed
/// grid.
#[derive(Clone, Debug, PartialEq)]
pub struct CorpusSpec {
    pub n: u8,
    pub grid: Vec<ExtValue>,
    pub mode: CorpusMode,
}

impl CorpusSpec {
    /// The default value grid {-inf, 0, 1, 2}.
    pub fn default_grid() -> Vec<ExtValue> {
        vec![
            ExtValue::NEG_INF,
            ExtValue::finite(0.0),
            ExtValue::finite(1.0),
            ExtValue::finite(2.0),
        ]
    }

    /// Exhaustive corpus over the default grid.
    pub fn exhaustive(n: u8) -> CorpusSpec {
        CorpusSpec { n, grid: CorpusSpec::default_grid(), mode: CorpusMode::Exhaustive }
    }

    /// Seeded random corpus over the default grid.
    pub fn random(n: u8, count: usize, seed: u64) -> CorpusSpec {
        CorpusSpec { n, grid: CorpusSpec::default_grid(), mode: CorpusMode::Random { count, seed } }
    }
}

/// Iterator over the instances of a corpus.
#[derive(Debug)]
pub struct CorpusIter {
    ground: GroundSet,
    grid: Vec<ExtValue>,
    state: IterState,
}

#[derive(Debug)]
enum IterState {
    Exhaustive { code: u64, total: u64 },
    Random { remaining: usize, rng: Box<ChaCha8Rng> },
}

impl Iterator for CorpusIter {
    type Item = SetFunction;

    fn next(&mut self) -> Option<SetFunction> {
        let size = self.ground.size();
        let g = self.grid.len() as u64;
        match &mut self.state {
            IterState::Exhaustive { code, total } => {
                while *code < *total {
                    let mut c = *code;
                    *code += 1;
                    // Digit k of the code in base g picks the value of
                    // the subset with mask bits k.
                    let table: Vec<ExtValue> =
                        (0..size).map(|_| { let d = (c % g) as usize; c /= g; self.grid[d] }).collect();
                    if table.iter().any(|v| v.is_finite()) {
                        return Some(
                            SetFunction::new(self.ground, table).expect("nonempty by the filter"),
                        );
                    }
                }
                None
            }
            IterState::Random { remaining, rng } => {
                if *remaining == 0 {
                    return None;
                }
                *remaining -= 1;
                loop {
                    let table: Vec<ExtValue> = (0..size)
                        .map(|_| self.grid[rng.random_range(0..self.grid.len())])
                        .collect();
                    if table.iter().any(|v| v.is_finite()) {
                        return Some(
                            SetFunction::new(self.ground, table).expect("nonempty by the filter"),
                        );
                    }
                }
            }
        }
    }
}

/// Builds the corpus iterator. Exhaustive corpora are rejected when the
/// table count would exceed [`EXHAUSTIVE_CAP`].
pub fn enumerate_corpus(spec: &CorpusSpec) -> Result<CorpusIter> {
    let ground = GroundSet::new(spec.n)?;
    if spec.grid.is_empty() || !spec.grid.iter().any(|v| v.is_finite()) {
        return Err(DcaError::Parse("the value grid needs at least one finite value".to_string()));
    }
    let state = match &spec.mode {
        CorpusMode::Exhaustive => {
            let total = (spec.grid.len() as u128).checked_pow(ground.size() as u32);
            match total {
                Some(t) if t <= EXHAUSTIVE_CAP => {
                    IterState::Exhaustive { code: 0, total: t as u64 }
                }
                Some(t) => return Err(DcaError::CorpusTooLarge(t, EXHAUSTIVE_CAP)),
                None => return Err(DcaError::CorpusTooLarge(u128::MAX, EXHAUSTIVE_CAP)),
            }
        }
        CorpusMode::Random { count, seed } => {
            IterState::Random { remaining: *count, rng: Box::new(ChaCha8Rng::seed_from_u64(*seed)) }
        }
    };
    Ok(CorpusIter { ground, grid: spec.grid.clone(), state })
}

/// The valuation induced on a base family by element weights: the
/// weight sum on members, -inf elsewhere. The family must satisfy the
/// swap exchange axiom (and so be nonempty).
pub fn weighted_matroid_valuation(bases: &SetFamily, w: &PriceVector) -> Result<SetFunction> {
    if bases.is_empty() {
        return Err(DcaError::NotABaseFamily);
    }
    let ground = bases.ground();
    if w.len() != ground.n() as usize {
        return Err(DcaError::DimensionMismatch { expected: ground.n() as usize, got: w.len() });
    }
    if !family::check_family(bases, FamilyAxiomId::BExc)?.passed {
        return Err(DcaError::NotABaseFamily);
    }
    let mut table = vec![ExtValue::NEG_INF; ground.size()];
    for m in bases.iter() {
        table[m.bits() as usize] = ExtValue::finite(w.sum_over(m));
    }
    SetFunction::new(ground, table)
}

/// The valuation f(X) = phi(|X|) + w(X) for |X| < phi.len(), -inf
/// beyond. The profile must have nonincreasing increments (discrete
/// concavity), which makes the result exchangeable.
pub fn concave_cardinality_valuation(
    ground: GroundSet,
    phi: &[f64],
    w: &PriceVector,
) -> Result<SetFunction> {
    if w.len() != ground.n() as usize {
        return Err(DcaError::DimensionMismatch { expected: ground.n() as usize, got: w.len() });
    }
    if phi.is_empty() {
        return Err(DcaError::EmptyDomain);
    }
    for &v in phi {
        if !v.is_finite() {
            return Err(DcaError::NonFiniteValue(v));
        }
    }
    for k in 2..phi.len() {
        if phi[k] - phi[k - 1] > phi[k - 1] - phi[k - 2] {
            return Err(DcaError::NotConcaveSequence);
        }
    }
    let table = ground
        .masks()
        .map(|m| {
            let c = m.card() as usize;
            if c < phi.len() {
                ExtValue::finite(phi[c] + w.sum_over(m))
            } else {
                ExtValue::NEG_INF
            }
        })
        .collect();
    SetFunction::new(ground, table)
}

/// Shifts one table entry by `delta`; a -inf entry stays -inf, so the
/// effective domain never changes.
pub fn mutate(f: &SetFunction, x: SubsetMask, delta: f64) -> SetFunction {
    assert!(delta.is_finite(), "mutation delta must be finite");
    let table = f
        .ground()
        .masks()
        .map(|m| {
            let v = f.eval(m);
            if m == x && v.is_finite() {
                ExtValue::finite(v.as_f64() + delta)
            } else {
                v
            }
        })
        .collect();
    SetFunction::new(f.ground(), table).expect("mutation keeps the domain")
}

/// All subsets of cardinality exactly `r`.
pub fn uniform_matroid_bases(ground: GroundSet, r: u8) -> SetFamily {
    assert!(r <= ground.n(), "rank must not exceed the ground set");
    let members = ground.masks().filter(|m| m.card() == r).collect();
    SetFamily::new(ground, members).expect("masks are unique and in range")
}

/// All subsets of cardinality at most `r`.
pub fn uniform_matroid_independents(ground: GroundSet, r: u8) -> SetFamily {
    assert!(r <= ground.n(), "rank must not exceed the ground set");
    let members = ground.masks().filter(|m| m.card() <= r).collect();
    SetFamily::new(ground, members).expect("masks are unique and in range")
}
