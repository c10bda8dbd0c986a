//! Property-based invariants: serialization round-trips, linear-shift
//! equivariance of every exchange axiom, lifting and layering behaviour,
//! conjugate attainment, and witness soundness under fuzzed inputs.

mod common;

use dca_core::axioms::{self, AxiomId};
use dca_core::func::{PriceVector, SetFunction};
use dca_core::generators;
use dca_core::ground::{GroundSet, SubsetMask};
use dca_core::io;
use dca_core::value::ExtValue;
use proptest::prelude::*;

fn arb_table(n: u8) -> impl Strategy<Value = SetFunction> {
    let cells = 1usize << n;
    prop::collection::vec(prop::option::weighted(0.75, -4i32..=4), cells).prop_filter_map(
        "nonempty effective domain",
        move |vals| {
            if vals.iter().all(Option::is_none) {
                return None;
            }
            let ground = GroundSet::new(n).unwrap();
            let table = vals
                .iter()
                .map(|v| match v {
                    Some(k) => ExtValue::finite(*k as f64),
                    None => ExtValue::NEG_INF,
                })
                .collect();
            Some(SetFunction::new(ground, table).unwrap())
        },
    )
}

fn arb_function(max_n: u8) -> impl Strategy<Value = SetFunction> {
    (1..=max_n).prop_flat_map(arb_table)
}

/// Dyadic prices (multiples of 1/64) keep every sum exactly representable,
/// so shifted comparisons stay bit-for-bit reproducible.
fn arb_fn_price(max_n: u8) -> impl Strategy<Value = (SetFunction, PriceVector)> {
    (1..=max_n).prop_flat_map(|n| {
        (arb_table(n), prop::collection::vec(-128i32..=128, n as usize)).prop_map(|(f, ks)| {
            let p = PriceVector::new(ks.into_iter().map(|k| k as f64 / 64.0).collect()).unwrap();
            (f, p)
        })
    })
}

/// Concave-by-construction instances: nonincreasing increments phi plus a
/// dyadic weight vector.
fn arb_concave(max_n: u8) -> impl Strategy<Value = SetFunction> {
    (2..=max_n).prop_flat_map(|n| {
        (
            1..=(n as usize + 1),
            prop::collection::vec(-3i32..=3, n as usize + 1),
            prop::collection::vec(-64i32..=64, n as usize),
            -2i32..=2,
        )
            .prop_map(move |(len, mut diffs, ks, phi0)| {
                diffs.truncate(len.saturating_sub(1));
                diffs.sort_unstable_by(|a, b| b.cmp(a));
                let mut phi = vec![phi0 as f64];
                for d in diffs {
                    let last = *phi.last().unwrap();
                    phi.push(last + d as f64);
                }
                phi.truncate(len);
                let w =
                    PriceVector::new(ks.into_iter().map(|k| k as f64 / 64.0).collect()).unwrap();
                generators::concave_cardinality_valuation(GroundSet::new(n).unwrap(), &phi, &w)
                    .unwrap()
            })
    })
}

fn witness_key(w: &axioms::Witness) -> (u32, u32, Option<u8>, Option<u8>, Option<u32>) {
    (w.x.bits(), w.y.bits(), w.i, w.j, w.z.map(|z| z.bits()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prop_function_json_round_trip(f in arb_function(4)) {
        let back = io::parse_function_json(&io::emit_function_json(&f), 20).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn prop_shifted_json_round_trip((f, p) in arb_fn_price(4)) {
        let shifted = f.add_linear(&p).unwrap();
        let back = io::parse_function_json(&io::emit_function_json(&shifted), 20).unwrap();
        prop_assert_eq!(back, shifted);
    }

    #[test]
    fn prop_add_linear_pointwise((f, p) in arb_fn_price(4)) {
        let shifted = f.add_linear(&p).unwrap();
        for m in f.ground().masks() {
            let expected = f.eval(m) + ExtValue::finite(p.sum_over(m));
            prop_assert_eq!(shifted.eval(m), expected);
        }
        let dom_before = f.effective_domain().unwrap();
        let dom_after = shifted.effective_domain().unwrap();
        prop_assert_eq!(dom_before, dom_after);
    }

    #[test]
    fn prop_add_linear_inverse((f, p) in arb_fn_price(4)) {
        let neg = PriceVector::new(p.values().iter().map(|v| -v).collect()).unwrap();
        prop_assert_eq!(f.add_linear(&p).unwrap().add_linear(&neg).unwrap(), f);
    }

    #[test]
    fn prop_mutate_round_trip(f in arb_function(4), bits in 0u32..16, delta in -8i32..=8) {
        let m = SubsetMask::from_bits(bits % (1 << f.ground().n()));
        let there = generators::mutate(&f, m, delta as f64);
        let back = generators::mutate(&there, m, -delta as f64);
        prop_assert_eq!(back, f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// A modular shift leaves the set of violating tuples of every exchange
    /// axiom unchanged: both sides of each inequality gain the same amount.
    #[test]
    fn prop_shift_preserves_violations((f, p) in arb_fn_price(3)) {
        let shifted = f.add_linear(&p).unwrap();
        for id in [AxiomId::MnatExc, AxiomId::P2, AxiomId::MExc, AxiomId::L2] {
            let before: Vec<_> = axioms::violations(&f, id)
                .unwrap()
                .iter()
                .map(witness_key)
                .collect();
            let after: Vec<_> = axioms::violations(&shifted, id)
                .unwrap()
                .iter()
                .map(witness_key)
                .collect();
            prop_assert_eq!(&before, &after, "{} changed under shift", id.name());
        }
    }

    #[test]
    fn prop_witnesses_reverify(f in arb_function(3)) {
        for id in AxiomId::ALL {
            let report = axioms::check_axiom(&f, id).unwrap();
            prop_assert_eq!(report.passed, report.witness.is_none());
            if let Some(w) = &report.witness {
                prop_assert!(axioms::verify_witness(&f, w).unwrap(), "{}", id.name());
            }
        }
    }

    #[test]
    fn prop_two_maximizer_matches_direct(f in arb_function(3)) {
        for id in [AxiomId::L2, AxiomId::L3] {
            let direct = axioms::check_axiom(&f, id).unwrap().passed;
            let twomax = axioms::two_maximizer_check(&f, id).unwrap().passed;
            prop_assert_eq!(direct, twomax, "{}", id.name());
        }
    }

    #[test]
    fn prop_conjugate_attained((f, p) in arb_fn_price(4)) {
        let (g, zstar) = dca_core::duality::conjugate_argmax(&f, &p);
        prop_assert!(g.is_finite());
        let at = |z: SubsetMask| f.eval(z) + ExtValue::finite(-p.sum_over(z));
        prop_assert_eq!(g, at(zstar));
        for z in f.ground().masks() {
            let v = at(z);
            if v.is_finite() {
                prop_assert!(v.as_f64() <= g.as_f64(), "conjugate is not the max");
                if z.bits() < zstar.bits() {
                    prop_assert!(v.as_f64() < g.as_f64(), "argmax not minimal");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The lifted table follows the definition cell by cell, and lifting
    /// translates the general exchange verdict into the equicardinal one.
    #[test]
    fn prop_lift_table_and_equivalence(f in arb_function(3)) {
        let (r_min, r_max) = f.cardinality_range().unwrap();
        let s = r_max - r_min;
        let (lifted, spec) = f.lift(s).unwrap();
        prop_assert_eq!(spec.r, r_max);
        prop_assert_eq!(spec.r_min, r_min);
        prop_assert_eq!(lifted.ground().n(), f.ground().n() + s);

        let base = f.ground().full_mask();
        for z in lifted.ground().masks() {
            let expected = if z.card() == spec.r {
                f.eval(z.intersect(base))
            } else {
                ExtValue::NEG_INF
            };
            prop_assert_eq!(lifted.eval(z), expected);
        }

        let mnat = axioms::check_axiom(&f, AxiomId::MnatExc).unwrap().passed;
        let m_on_lift = axioms::check_axiom(&lifted, AxiomId::MExc).unwrap().passed;
        prop_assert_eq!(mnat, m_on_lift);
    }

    /// Restricting a transfer-capable concave instance to one cardinality
    /// layer yields a swap-only concave instance.
    #[test]
    fn prop_layer_of_concave_is_equicardinal_concave(f in arb_concave(4)) {
        prop_assert!(axioms::check_axiom(&f, AxiomId::MnatExc).unwrap().passed);
        let (r_min, r_max) = f.cardinality_range().unwrap();
        for r in r_min..=r_max {
            let layer = f.layer(r).unwrap();
            prop_assert!(
                axioms::check_axiom(&layer, AxiomId::MExc).unwrap().passed,
                "layer {} lost the swap exchange property",
                r
            );
        }
    }

    #[test]
    fn prop_weighted_matroid_passes_swap_axiom(r in 1u8..=3, ks in prop::collection::vec(-64i32..=64, 4)) {
        let ground = GroundSet::new(4).unwrap();
        let bases = generators::uniform_matroid_bases(ground, r);
        let w = PriceVector::new(ks.into_iter().map(|k| k as f64 / 64.0).collect()).unwrap();
        let f = generators::weighted_matroid_valuation(&bases, &w).unwrap();
        prop_assert!(axioms::check_axiom(&f, AxiomId::MExc).unwrap().passed);
        prop_assert!(axioms::check_axiom(&f, AxiomId::MnatExc).unwrap().passed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Exchange-pair evaluations agree with direct evaluation of the parent
    /// function under the compact-to-parent translation.
    #[test]
    fn prop_exchange_pair_definition(f in arb_function(4)) {
        use dca_core::duality::{exchange_pair, ExchangeContext};
        let ground = f.ground();
        for x in ground.masks() {
            for y in ground.masks() {
                let x0 = x.diff(y);
                let i_set = x0; // largest admissible I
                let ctx = ExchangeContext::new(ground, x, y, i_set).unwrap();
                let (f1, f2) = exchange_pair(&f, &ctx);
                for j_compact in f1.ground().masks() {
                    let j = ctx.expand(j_compact);
                    prop_assert_eq!(f1.eval(j_compact), f.eval(x.diff(i_set).union(j)));
                    prop_assert_eq!(f2.eval(j_compact), f.eval(y.diff(j).union(i_set)));
                }
            }
        }
    }
}
