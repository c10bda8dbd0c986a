//! Golden-value tests: every operation is pinned against hand-checked
//! values on the small named instances (the truncated-rank example,
//! the two-block domain counterexample, the five-element cross-gap family).

mod common;

use common::*;
use dca_core::axioms::{self, AxiomId, CheckedAxiom};
use dca_core::duality::{self, DualityConfig, ExchangeContext};
use dca_core::error::DcaError;
use dca_core::family::{self, FamilyAxiomId};
use dca_core::func::{PriceVector, SetFunction};
use dca_core::generators;
use dca_core::ground::{GroundSet, SubsetMask};
use dca_core::io;
use dca_core::value::ExtValue;

fn check(f: &SetFunction, id: AxiomId) -> bool {
    axioms::check_axiom(f, id).unwrap().passed
}

fn fcheck(fam: &dca_core::family::SetFamily, id: FamilyAxiomId) -> bool {
    family::check_family(fam, id).unwrap().passed
}

// ---------------------------------------------------------------- eval

#[test]
fn eval_reads_the_table() {
    let f = truncated_rank_fixture();
    assert_eq!(f.eval(mask(&[1, 2])), ExtValue::finite(1.0));
    assert_eq!(f.eval(mask(&[1, 2, 3])), ExtValue::NEG_INF);
    assert_eq!(f.eval(SubsetMask::EMPTY), ExtValue::finite(0.0));
}

#[test]
fn fixture_files_match_inline_constructions() {
    assert_eq!(load_function("truncated_rank.json"), truncated_rank_fixture());
    assert_eq!(load_function("two_blocks.json"), two_blocks_fixture());
    assert_eq!(load_function("zero3.json"), constant_zero(3));
}

// ---------------------------------------------------- effective_domain

#[test]
fn effective_domain_collects_finite_subsets() {
    let dom = two_blocks_fixture().effective_domain().unwrap();
    assert_eq!(dom.members(), &[mask(&[1, 2, 3]), mask(&[4, 5, 6])]);

    let dom = constant_zero(3).effective_domain().unwrap();
    assert_eq!(dom.len(), 8);

    let dom = truncated_rank_fixture().effective_domain().unwrap();
    assert_eq!(dom.len(), 7);
    assert!(!dom.contains(mask(&[1, 2, 3])));
}

// ----------------------------------------------------------- add_linear

#[test]
fn add_linear_zero_is_identity() {
    let f = truncated_rank_fixture();
    assert_eq!(f.add_linear(&PriceVector::zero(3)).unwrap(), f);
}

#[test]
fn add_linear_shifts_by_modular_term() {
    let f = truncated_rank_fixture().add_linear(&prices(&[1.0, 0.0, 0.0])).unwrap();
    assert_eq!(f.eval(mask(&[1])), ExtValue::finite(1.0));
    assert_eq!(f.eval(mask(&[1, 2])), ExtValue::finite(2.0));
    assert_eq!(f.eval(mask(&[1, 2, 3])), ExtValue::NEG_INF);
}

#[test]
fn add_linear_then_inverse_restores() {
    let f = truncated_rank_fixture();
    let p = prices(&[2.0, -3.0, 0.5]);
    let back = f
        .add_linear(&p)
        .unwrap()
        .add_linear(&prices(&[-2.0, 3.0, -0.5]))
        .unwrap();
    assert_eq!(back, f);
}

#[test]
fn add_linear_rejects_wrong_dimension() {
    let err = truncated_rank_fixture().add_linear(&prices(&[1.0])).unwrap_err();
    assert!(matches!(err, DcaError::DimensionMismatch { .. }));
}

// ----------------------------------------------------------------- lift

#[test]
fn lift_of_example_matches_listed_table() {
    let f = truncated_rank_fixture();
    let (lifted, spec) = f.lift(2).unwrap();
    assert_eq!(spec.r, 2);
    assert_eq!(spec.r_min, 0);
    assert_eq!(spec.s, 2);
    assert_eq!(lifted.ground().n(), 5);

    assert_eq!(lifted.eval(mask(&[4, 5])), ExtValue::finite(0.0));
    for k in [4u8, 5] {
        assert_eq!(lifted.eval(mask(&[1, k])), ExtValue::finite(0.0));
        assert_eq!(lifted.eval(mask(&[2, k])), ExtValue::finite(1.0));
        assert_eq!(lifted.eval(mask(&[3, k])), ExtValue::finite(1.0));
    }
    assert_eq!(lifted.eval(mask(&[1, 2])), ExtValue::finite(1.0));
    assert_eq!(lifted.eval(mask(&[1, 3])), ExtValue::finite(1.0));
    assert_eq!(lifted.eval(mask(&[2, 3])), ExtValue::finite(1.0));

    let ground = lifted.ground();
    for x in ground.masks() {
        if x.card() != 2 {
            assert_eq!(lifted.eval(x), ExtValue::NEG_INF, "card {} set {:?}", x.card(), x.to_vec());
        }
    }
}

#[test]
fn lift_with_singleton_empty_domain_is_identity() {
    let f = func(2, &[(&[], 7.0)]);
    let (lifted, spec) = f.lift(0).unwrap();
    assert_eq!(spec.r, 0);
    assert_eq!(spec.r_min, 0);
    assert_eq!(lifted, f);
}

#[test]
fn lift_rejects_too_small_s_and_cap_overflow() {
    let f = truncated_rank_fixture();
    assert!(matches!(f.lift(1).unwrap_err(), DcaError::LiftTooSmall { .. }));

    let ground = GroundSet::with_cap(3, 4).unwrap();
    let mut table = vec![ExtValue::NEG_INF; 8];
    table[0] = ExtValue::finite(0.0);
    table[mask(&[1, 2]).bits() as usize] = ExtValue::finite(0.0);
    let tight = SetFunction::new(ground, table).unwrap();
    assert!(matches!(tight.lift(2).unwrap_err(), DcaError::CapExceeded { .. }));
}

// ---------------------------------------------------------------- layer

#[test]
fn layer_keeps_exactly_one_cardinality() {
    let f = truncated_rank_fixture();
    let l2 = f.layer(2).unwrap();
    assert_eq!(l2.effective_domain().unwrap().len(), 3);
    assert_eq!(l2.eval(mask(&[1, 2])), ExtValue::finite(1.0));
    assert_eq!(l2.eval(mask(&[1])), ExtValue::NEG_INF);

    let l0 = f.layer(0).unwrap();
    assert_eq!(l0.effective_domain().unwrap().members(), &[SubsetMask::EMPTY]);

    assert!(matches!(f.layer(3).unwrap_err(), DcaError::EmptyDomain));
}

// --------------------------------------------------------- check_axiom

#[test]
fn two_blocks_fixture_verdicts() {
    let f = two_blocks_fixture();
    for id in [AxiomId::L1, AxiomId::L2, AxiomId::L3, AxiomId::MExcLoc] {
        assert!(check(&f, id), "{} should pass", id.name());
    }
    assert!(!check(&f, AxiomId::MnatExc));
    assert!(!check(&f, AxiomId::MExc));
    let dom = f.effective_domain().unwrap();
    assert!(!fcheck(&dom, FamilyAxiomId::BnatExc));
}

#[test]
fn two_blocks_fixture_minimal_witness() {
    let report = axioms::check_axiom(&two_blocks_fixture(), AxiomId::MnatExc).unwrap();
    assert!(!report.passed);
    let w = report.witness.as_ref().unwrap();
    assert_eq!(w.x, mask(&[1, 2, 3]));
    assert_eq!(w.y, mask(&[4, 5, 6]));
    assert_eq!(w.i, Some(1));
    assert_eq!(w.lhs, ExtValue::finite(0.0));
    assert_eq!(w.rhs, ExtValue::NEG_INF);
    assert!(axioms::verify_witness(&two_blocks_fixture(), w).unwrap());
}

#[test]
fn constant_zero_verdicts() {
    // Full-domain zero satisfies every transfer-permitting axiom but none of
    // the swap-only ones (its domain is not equicardinal).
    let f = constant_zero(3);
    let swap_only = [AxiomId::MExc, AxiomId::MExcLoc, AxiomId::MExcW, AxiomId::MExcM];
    for id in AxiomId::ALL {
        let expected = !swap_only.contains(&id);
        assert_eq!(check(&f, id), expected, "{} on the zero function", id.name());
    }
}

#[test]
fn uniform_matroid_weighted_valuation_is_exchangeable() {
    let bases = generators::uniform_matroid_bases(GroundSet::new(3).unwrap(), 2);
    let f = generators::weighted_matroid_valuation(&bases, &prices(&[3.0, 1.0, 0.0])).unwrap();
    assert_eq!(f.eval(mask(&[1, 2])), ExtValue::finite(4.0));
    assert_eq!(f.eval(mask(&[1, 3])), ExtValue::finite(3.0));
    assert_eq!(f.eval(mask(&[2, 3])), ExtValue::finite(1.0));
    assert!(check(&f, AxiomId::MExc));
}

#[test]
fn mnat_and_m_delegate() {
    let f = truncated_rank_fixture();
    assert!(axioms::is_mnat_concave(&f).unwrap().passed);
    let (lifted, _) = f.lift(2).unwrap();
    assert!(axioms::is_m_concave(&lifted).unwrap().passed);

    let g = two_blocks_fixture();
    assert!(!axioms::is_mnat_concave(&g).unwrap().passed);
    assert!(!axioms::is_m_concave(&g).unwrap().passed);
}

// ------------------------------------------------------ verify_witness

#[test]
fn witness_fails_after_tampering() {
    let f = two_blocks_fixture();
    let report = axioms::check_axiom(&f, AxiomId::MnatExc).unwrap();
    let w = report.witness.unwrap();
    assert!(axioms::verify_witness(&f, &w).unwrap());

    // The same tuple stops being a violation once the gap sets are filled in.
    let full = constant_zero(6);
    assert!(!axioms::verify_witness(&full, &w).unwrap());
}

#[test]
fn witness_ground_mismatch_is_an_error() {
    let f = two_blocks_fixture();
    let report = axioms::check_axiom(&f, AxiomId::MnatExc).unwrap();
    let w = report.witness.unwrap();
    assert!(axioms::verify_witness(&truncated_rank_fixture(), &w).is_err());
}

// ------------------------------------------------- two_maximizer_check

#[test]
fn two_maximizer_agrees_on_example() {
    let f = truncated_rank_fixture();
    for id in [AxiomId::L2, AxiomId::L3] {
        let direct = axioms::check_axiom(&f, id).unwrap().passed;
        let twomax = axioms::two_maximizer_check(&f, id).unwrap().passed;
        assert_eq!(direct, twomax);
    }
    assert!(axioms::two_maximizer_check(&constant_zero(3), AxiomId::L2).unwrap().passed);
    assert!(axioms::two_maximizer_check(&f, AxiomId::L1).is_err());
}

// --------------------------------------------------------- check_family

#[test]
fn cross_gap_family_verdicts() {
    let fam = load_family("cross_gap.json");
    assert!(fcheck(&fam, FamilyAxiomId::ConnDown));
    assert!(fcheck(&fam, FamilyAxiomId::ConnSwap));
    assert!(!fcheck(&fam, FamilyAxiomId::ConnCross));
    assert!(!fcheck(&fam, FamilyAxiomId::BnatExc));
}

#[test]
fn uniform_matroid_family_verdicts() {
    let bases = generators::uniform_matroid_bases(GroundSet::new(4).unwrap(), 2);
    assert_eq!(bases.len(), 6);
    assert!(fcheck(&bases, FamilyAxiomId::BExc));
    assert!(fcheck(&bases, FamilyAxiomId::Equicard));
}

#[test]
fn singleton_empty_family_passes_everything() {
    let fam = family(3, &[&[]]);
    for id in FamilyAxiomId::ALL {
        assert!(fcheck(&fam, id), "{} should pass on {{∅}}", id.name());
    }
    assert!(family::check_family_multi_strong(&fam, 16).unwrap().passed);
}

#[test]
fn implied_properties_cross_checks() {
    let dom = truncated_rank_fixture().effective_domain().unwrap();
    let report = family::implied_properties(&dom).unwrap();
    assert!(report.bnat_exc.passed);
    assert!(report.conn_down.passed);
    assert!(report.conn_swap.passed);
    assert!(report.conn_cross.passed);

    let fam = load_family("cross_gap.json");
    let report = family::implied_properties(&fam).unwrap();
    assert!(!report.bnat_exc.passed);
    assert!(!report.conn_cross.passed);

    let trivial = family::implied_properties(&family(3, &[&[]])).unwrap();
    assert!(trivial.bnat_exc.passed && trivial.conn_cross.passed);
}

#[test]
fn matroid_independence_detection() {
    let independents = generators::uniform_matroid_independents(GroundSet::new(3).unwrap(), 2);
    assert!(family::is_matroid_independence(&independents).passed);

    let dom = truncated_rank_fixture().effective_domain().unwrap();
    assert!(family::is_matroid_independence(&dom).passed);

    let no_empty = family(2, &[&[1], &[2]]);
    let report = family::is_matroid_independence(&no_empty);
    assert!(!report.passed);
    assert_eq!(report.witness.unwrap().sub.as_deref(), Some("I-1"));
}

#[test]
fn family_witnesses_reverify() {
    let fam = load_family("cross_gap.json");
    let report = family::check_family(&fam, FamilyAxiomId::ConnCross).unwrap();
    let w = report.witness.unwrap();
    assert!(matches!(w.axiom, CheckedAxiom::Family(FamilyAxiomId::ConnCross)));
    assert!(family::verify_family_witness(&fam, &w).unwrap());
}

// -------------------------------------------------------------- duality

#[test]
fn conjugate_values() {
    let zero = constant_zero(3);
    let (g, argmax) = duality::conjugate_argmax(&zero, &prices(&[1.0, -1.0, 0.0]));
    assert_eq!(g, ExtValue::finite(1.0));
    assert_eq!(argmax, mask(&[2]));

    assert_eq!(
        duality::conjugate(&truncated_rank_fixture(), &PriceVector::zero(3)),
        ExtValue::finite(1.0)
    );

    let f = truncated_rank_fixture();
    let huge = prices(&[100.0, 100.0, 100.0]);
    assert_eq!(duality::conjugate(&f, &huge), f.eval(SubsetMask::EMPTY));
}

#[test]
fn exchange_pair_on_example() {
    let f = truncated_rank_fixture();
    let ctx = ExchangeContext::new(f.ground(), mask(&[1]), mask(&[2, 3]), mask(&[1])).unwrap();
    assert_eq!(ctx.y0(), mask(&[2, 3]));
    assert_eq!(ctx.c(), SubsetMask::EMPTY);
    let (f1, f2) = duality::exchange_pair(&f, &ctx);

    // Compact ground {1,2} relabels the parent elements {2,3} in order.
    let j = ctx.compress(mask(&[2]));
    assert_eq!(f1.eval(j), ExtValue::finite(1.0)); // f({2})
    assert_eq!(f2.eval(j), ExtValue::finite(1.0)); // f({1,3})
    assert_eq!(f1.eval(SubsetMask::EMPTY), ExtValue::finite(0.0)); // f(∅)
    assert_eq!(f2.eval(SubsetMask::EMPTY), ExtValue::NEG_INF); // f({1,2,3})
    let both = ctx.compress(mask(&[2, 3]));
    assert_eq!(f2.eval(both), ExtValue::finite(0.0)); // f({1})
}

#[test]
fn exchange_pair_with_empty_i_is_degenerate() {
    let f = truncated_rank_fixture();
    let ctx =
        ExchangeContext::new(f.ground(), mask(&[1]), mask(&[2, 3]), SubsetMask::EMPTY).unwrap();
    let (f1, f2) = duality::exchange_pair(&f, &ctx);
    assert_eq!(f2.eval(SubsetMask::EMPTY), f.eval(mask(&[2, 3]))); // f₂(∅) = f(Y)
    let full_j = ctx.compress(mask(&[2, 3]));
    assert_eq!(f1.eval(full_j), f.eval(mask(&[1, 2, 3]))); // f₁(Y₀) = f(X∪Y₀)
}

#[test]
fn multiple_exchange_value_bounds() {
    let zero = constant_zero(3);
    let ctx =
        ExchangeContext::new(zero.ground(), mask(&[1]), mask(&[2, 3]), mask(&[1])).unwrap();
    let (max, best) = duality::check_multiple_exchange_value(&zero, &ctx);
    assert_eq!(max, ExtValue::finite(0.0));
    assert_eq!(best, SubsetMask::EMPTY);

    let f = two_blocks_fixture();
    let ctx = ExchangeContext::new(f.ground(), mask(&[1, 2, 3]), mask(&[4, 5, 6]), mask(&[1]))
        .unwrap();
    let (max, _) = duality::check_multiple_exchange_value(&f, &ctx);
    assert_eq!(max, ExtValue::NEG_INF);
}

#[test]
fn lemma_g1g2_slack_is_nonnegative_on_example() {
    let f = truncated_rank_fixture();
    let ctx = ExchangeContext::new(f.ground(), mask(&[1]), mask(&[2, 3]), mask(&[1])).unwrap();
    let cfg = DualityConfig::default();
    let report = duality::verify_lemma_g1g2(&f, &ctx, &cfg).unwrap();
    assert_eq!(report.violations, 0);
    assert!(report.min_slack >= 0.0);
    assert!(report.weak_duality_ok);
    assert!(report.one_sided_ok);
    assert!(!report.dom1_empty && !report.dom2_empty);
}

#[test]
fn lemma_g1g2_rejects_nonconcave_input() {
    let f = two_blocks_fixture();
    let ctx = ExchangeContext::new(f.ground(), mask(&[1, 2, 3]), mask(&[4, 5, 6]), mask(&[1]))
        .unwrap();
    let err = duality::verify_lemma_g1g2(&f, &ctx, &DualityConfig::default()).unwrap_err();
    assert!(matches!(err, DcaError::HypothesisViolated(_)));
}

#[test]
fn conjugate_submodularity_holds_on_example() {
    let f = truncated_rank_fixture();
    let cfg = DualityConfig { q_samples: 500, ..DualityConfig::default() };
    let report = duality::check_conjugate_submodular(&f, &cfg).unwrap();
    assert_eq!(report.violations, 0);
    assert!(report.min_slack >= 0.0);
}

// ----------------------------------------------------------- generators

#[test]
fn exhaustive_corpus_counts() {
    let spec = dca_core::generators::CorpusSpec::exhaustive(3);
    assert_eq!(generators::enumerate_corpus(&spec).unwrap().count(), 65535);

    let tiny = dca_core::generators::CorpusSpec {
        n: 1,
        grid: vec![ExtValue::NEG_INF, ExtValue::finite(0.0)],
        mode: dca_core::generators::CorpusMode::Exhaustive,
    };
    assert_eq!(generators::enumerate_corpus(&tiny).unwrap().count(), 3);
}

#[test]
fn random_corpus_is_seed_stable() {
    let spec = dca_core::generators::CorpusSpec::random(4, 25, 9);
    let a: Vec<_> = generators::enumerate_corpus(&spec).unwrap().collect();
    let b: Vec<_> = generators::enumerate_corpus(&spec).unwrap().collect();
    assert_eq!(a, b);
    assert_eq!(a.len(), 25);
}

#[test]
fn corpus_too_large_is_rejected() {
    let spec = dca_core::generators::CorpusSpec::exhaustive(4);
    assert!(matches!(
        generators::enumerate_corpus(&spec).unwrap_err(),
        DcaError::CorpusTooLarge { .. }
    ));
}

#[test]
fn weighted_matroid_rejects_non_base_family() {
    let not_bases = family(3, &[&[1], &[2, 3]]);
    let err = generators::weighted_matroid_valuation(&not_bases, &prices(&[0.0, 0.0, 0.0]))
        .unwrap_err();
    assert!(matches!(err, DcaError::NotABaseFamily));
}

#[test]
fn zero_weights_give_base_indicator() {
    let bases = generators::uniform_matroid_bases(GroundSet::new(4).unwrap(), 2);
    let f = generators::weighted_matroid_valuation(&bases, &PriceVector::zero(4)).unwrap();
    assert_eq!(f, SetFunction::indicator(&bases));
    assert!(check(&f, AxiomId::MExc));
}

#[test]
fn concave_cardinality_valuations_are_mnat_concave() {
    let g3 = GroundSet::new(3).unwrap();
    let f = generators::concave_cardinality_valuation(g3, &[0.0, 1.0, 1.0], &PriceVector::zero(3))
        .unwrap();
    assert_eq!(f.eval(mask(&[1, 2, 3])), ExtValue::NEG_INF);
    assert_eq!(f.eval(mask(&[2, 3])), ExtValue::finite(1.0));
    assert!(check(&f, AxiomId::MnatExc));

    // A linear profile plus weights is modular: every transfer-permitting
    // axiom passes, while the swap-only ones fail because the full lattice
    // is not equi-cardinal.
    let g = GroundSet::new(3).unwrap();
    let modular = generators::concave_cardinality_valuation(
        g,
        &[0.0, 2.0, 4.0, 6.0],
        &prices(&[1.0, -1.0, 0.5]),
    )
    .unwrap();
    let swap_only = [AxiomId::MExc, AxiomId::MExcLoc, AxiomId::MExcW, AxiomId::MExcM];
    for id in AxiomId::ALL {
        let expected = !swap_only.contains(&id);
        assert_eq!(check(&modular, id), expected, "{} on modular", id.name());
    }

    let g4 = GroundSet::new(4).unwrap();
    let strictly = generators::concave_cardinality_valuation(
        g4,
        &[0.0, 5.0, 8.0, 9.0, 9.5],
        &PriceVector::zero(4),
    )
    .unwrap();
    assert!(check(&strictly, AxiomId::MnatExc));

    let err = generators::concave_cardinality_valuation(g4, &[0.0, 1.0, 3.0], &PriceVector::zero(4))
        .unwrap_err();
    assert!(matches!(err, DcaError::NotConcaveSequence));
}

#[test]
fn mutate_perturbs_one_entry() {
    let f = truncated_rank_fixture();
    let raised = generators::mutate(&f, mask(&[2, 3]), 2.0);
    assert_eq!(raised.eval(mask(&[2, 3])), ExtValue::finite(3.0));
    assert!(!check(&raised, AxiomId::MnatExc));

    assert_eq!(generators::mutate(&f, mask(&[2, 3]), 0.0), f);
    let back = generators::mutate(&generators::mutate(&f, mask(&[1]), 5.0), mask(&[1]), -5.0);
    assert_eq!(back, f);

    // -inf entries stay -inf under perturbation.
    let still = generators::mutate(&f, mask(&[1, 2, 3]), 9.0);
    assert_eq!(still.eval(mask(&[1, 2, 3])), ExtValue::NEG_INF);
}

// -------------------------------------------------------------- json io

#[test]
fn report_json_shape() {
    let report = axioms::check_axiom(&two_blocks_fixture(), AxiomId::MnatExc).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["axiom"], "MNAT_EXC");
    assert_eq!(v["passed"], false);
    assert_eq!(v["witness"]["X"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["witness"]["Y"], serde_json::json!([4, 5, 6]));
    assert_eq!(v["witness"]["i"], 1);
    assert_eq!(v["witness"]["rhs"], "-inf");
    assert!(v["witness"].get("j").is_none());
    assert!(v.get("elapsed").is_none());
    assert!(v["pairs_examined"].as_u64().unwrap() > 0);
}

#[test]
fn function_json_round_trip_is_exact() {
    let f = truncated_rank_fixture();
    let text = io::emit_function_json(&f);
    let back = io::parse_function_json(&text, 20).unwrap();
    assert_eq!(back, f);

    let shifted = f.add_linear(&prices(&[0.1, -0.2, 0.3])).unwrap();
    let back = io::parse_function_json(&io::emit_function_json(&shifted), 20).unwrap();
    assert_eq!(back, shifted);
}

#[test]
fn parse_rejects_duplicates_and_bad_elements() {
    let dup = r#"{"n":2,"entries":[{"set":[1],"value":0},{"set":[1],"value":1}]}"#;
    assert!(matches!(
        io::parse_function_json(dup, 20).unwrap_err(),
        DcaError::DuplicateSubset(_)
    ));

    let out_of_range = r#"{"n":2,"entries":[{"set":[3],"value":0}]}"#;
    assert!(io::parse_function_json(out_of_range, 20).is_err());

    let no_finite = r#"{"n":2,"entries":[{"set":[1],"value":"-inf"}]}"#;
    assert!(matches!(
        io::parse_function_json(no_finite, 20).unwrap_err(),
        DcaError::EmptyDomain
    ));

    let over_cap = r#"{"n":21,"entries":[{"set":[1],"value":0}]}"#;
    assert!(matches!(
        io::parse_function_json(over_cap, 20).unwrap_err(),
        DcaError::CapExceeded { .. }
    ));

    let dup_member = r#"{"n":3,"members":[[1,2],[1,2]]}"#;
    assert!(matches!(
        io::parse_family_json(dup_member, 20).unwrap_err(),
        DcaError::DuplicateSubset(_)
    ));
}

#[test]
fn family_json_round_trip() {
    let fam = load_family("cross_gap.json");
    let back = io::parse_family_json(&io::emit_family_json(&fam), 20).unwrap();
    assert_eq!(back, fam);
}
