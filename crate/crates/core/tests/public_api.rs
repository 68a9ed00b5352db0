use ordrep::build::{build_minimal_partial_rp_mu, build_rp_multi_utility, generate_example, EXAMPLE_NAMES};
use ordrep::harness::{closed_contours_harness, totality_harness, Outcome};
use ordrep::json::{family_from_json, family_to_json, relation_from_json, relation_to_json, topology_from_json, topology_to_json};
use ordrep::random::{random_partial_order, random_preorder};
use ordrep::trace::{clock_report, generate_trace, happened_before, Trace};
use ordrep::verify::verify;
use ordrep::{classify, BuildMode, Error, FiniteTopology};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn every_example_round_trips_through_json() {
    for &name in EXAMPLE_NAMES {
        let ex = generate_example(name, &[]).unwrap();
        let r = relation_from_json(&relation_to_json(&ex.relation).to_string()).unwrap();
        assert_eq!(r, ex.relation, "{name}");
        if let Some(fam) = &ex.family {
            let back = family_from_json(&family_to_json(fam).to_string(), r.ground(), None).unwrap();
            assert_eq!(&back, fam, "{name}");
        }
        for (label, t) in &ex.topologies {
            assert_eq!(&topology_from_json(&topology_to_json(t).to_string(), r.ground()).unwrap(), t, "{name}/{label}");
        }
    }
}

#[test]
fn every_example_family_verifies() {
    for &name in EXAMPLE_NAMES {
        let ex = generate_example(name, &[]).unwrap();
        if let Some(fam) = &ex.family {
            assert!(verify(&ex.relation, fam).unwrap().ok, "{name}");
        }
    }
}

#[test]
fn isolated_point_blocks_the_totality_hypotheses() {
    let ex = generate_example("glued_isolated", &[]).unwrap();
    let (_, space) = &ex.topologies[0];
    assert!(space.is_connected());
    let rep = totality_harness(&ex.relation, space, ex.family.as_ref().unwrap()).unwrap();
    assert_eq!(rep.outcome, Outcome::HypothesesNotMet);
    let failing: Vec<_> = rep.hypotheses.iter().filter(|h| !h.holds).map(|h| h.name).collect();
    assert_eq!(failing, vec!["no_isolated_points"]);
}

#[test]
fn two_connected_chains_raise_alarms() {
    let ex = generate_example("two_chains_connected", &[]).unwrap();
    let (_, space) = &ex.topologies[0];
    let fam = ex.family.as_ref().unwrap();
    let t = totality_harness(&ex.relation, space, fam).unwrap();
    assert_eq!(t.outcome, Outcome::Alarm);
    assert_eq!(t.conclusion.unwrap().witness, Some(vec!["a".to_string(), "c".to_string()]));
    assert_eq!(closed_contours_harness(&ex.relation, space, fam).unwrap().outcome, Outcome::Alarm);
}

#[test]
fn harness_outcomes_on_a_chain() {
    let r = generate_example("eseq_truncation", &[3]).unwrap().relation;
    let fam = build_rp_multi_utility(&r).unwrap();
    let discrete = FiniteTopology::discrete(r.ground().clone()).unwrap();
    let t = totality_harness(&r, &discrete, &fam).unwrap();
    assert_eq!(t.outcome, Outcome::HypothesesNotMet);
    assert!(t.hypotheses.iter().any(|h| h.name == "connected" && !h.holds));
    assert_eq!(closed_contours_harness(&r, &discrete, &fam).unwrap().outcome, Outcome::Pass);
    // injective functions are not continuous into the reals on a connected finite space
    let scott = FiniteTopology::scott(&r).unwrap();
    let t = totality_harness(&r, &scott, &fam).unwrap();
    assert!(t.hypotheses.iter().any(|h| h.name == "continuous" && !h.holds));
}

#[test]
fn trace_errors() {
    let dangling = r#"{"process":0,"seq":1,"kind":"receive","msg":"m"}"#;
    assert_eq!(Trace::parse(dangling).unwrap_err(), Error::DanglingReceive("m".into()));
    let twice = "{\"process\":0,\"seq\":1,\"kind\":\"send\",\"msg\":\"m\"}\n{\"process\":0,\"seq\":2,\"kind\":\"send\",\"msg\":\"m\"}\n{\"process\":1,\"seq\":1,\"kind\":\"receive\",\"msg\":\"m\"}";
    assert_eq!(Trace::parse(twice).unwrap_err(), Error::DuplicateMessageId("m".into()));
    let cycle = "{\"process\":0,\"seq\":1,\"kind\":\"receive\",\"msg\":\"x\"}\n{\"process\":0,\"seq\":2,\"kind\":\"send\",\"msg\":\"y\"}\n{\"process\":1,\"seq\":1,\"kind\":\"receive\",\"msg\":\"y\"}\n{\"process\":1,\"seq\":2,\"kind\":\"send\",\"msg\":\"x\"}";
    let t = Trace::parse(cycle).unwrap();
    assert!(matches!(happened_before(&t), Err(Error::CausalCycle(_))));
    assert!(matches!(Trace::parse("{\"process\":0,\"seq\":1,\"kind\":\"jump\"}"), Err(Error::Parse(_))));
}

#[test]
fn receive_before_send_in_the_file() {
    let text = "{\"process\":1,\"seq\":1,\"kind\":\"receive\",\"msg\":\"m\"}\n{\"process\":0,\"seq\":1,\"kind\":\"send\",\"msg\":\"m\"}";
    let hb = happened_before(&Trace::parse(text).unwrap()).unwrap();
    assert!(hb.strict(hb.index_of("p0.1").unwrap(), hb.index_of("p1.1").unwrap()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_traces_give_verified_clock_families(procs in 1usize..5, events in 1usize..30, msg in 0.0f64..0.8, seed in any::<u64>()) {
        let t = generate_trace(procs, events, msg, seed).unwrap();
        prop_assert_eq!(&Trace::parse(&t.to_jsonl()).unwrap(), &t);
        let hb = happened_before(&t).unwrap();
        prop_assert!(classify(&hb).partial_order.holds);
        let (report, _) = clock_report(&t, BuildMode::Greedy).unwrap();
        prop_assert!(report.verified);
        prop_assert_eq!(report.vector_clock_components, procs);
        prop_assert!(report.partial_functions + hb.isolated_points().len() >= report.width);
    }

    #[test]
    fn greedy_never_beats_exact(seed in any::<u64>(), n in 1usize..8) {
        let r = random_preorder(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.3).unwrap();
        let exact = build_minimal_partial_rp_mu(&r, BuildMode::Exact).unwrap();
        let greedy = build_minimal_partial_rp_mu(&r, BuildMode::Greedy).unwrap();
        prop_assert!(exact.optimal);
        prop_assert!(greedy.family.len() >= exact.family.len());
        prop_assert!(verify(&r, &greedy.family).unwrap().ok);
    }

    #[test]
    fn labeling_families_are_total_rp_multi_utilities(seed in any::<u64>(), n in 1usize..6) {
        let p = random_partial_order(&mut ChaCha8Rng::seed_from_u64(seed), n, 0.4).unwrap();
        let fam = build_rp_multi_utility(&p).unwrap();
        prop_assert!(fam.functions().iter().all(|f| f.is_total()));
        prop_assert!(verify(&p, &fam).unwrap().ok);
    }
}
