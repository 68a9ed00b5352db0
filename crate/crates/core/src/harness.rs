//! Finite-instance checks of two topological statements about partial
//! multi-utilities.
//!
//! A harness evaluates every hypothesis, then the conclusion. When all
//! hypotheses hold and the conclusion does not, the instance is an alarm.
//! Functions are real valued, so continuity is into the reals with their usual
//! topology, which on the finitely many values a function takes is discrete.

use serde::Serialize;

use crate::classify::classify;
use crate::error::{Error, Result};
use crate::partial_fn::ReprFamily;
use crate::relation::{same_ground, Relation};
use crate::topology::{check_regular_preorder, is_continuous, FiniteTopology, ValueSpace};
use crate::verify::{verify_partial_mu, verify_partial_rp_mu, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: &'static str,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    pub claim: &'static str,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    HypothesesNotMet,
    Alarm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HarnessReport {
    pub harness: &'static str,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: Option<Conclusion>,
    pub outcome: Outcome,
}

impl HarnessReport {
    fn settle(harness: &'static str, hypotheses: Vec<Hypothesis>, conclusion: Option<Conclusion>) -> Self {
        let outcome = match &conclusion {
            _ if hypotheses.iter().any(|h| !h.holds) => Outcome::HypothesesNotMet,
            Some(c) if c.holds => Outcome::Pass,
            _ => Outcome::Alarm,
        };
        HarnessReport { harness, hypotheses, conclusion, outcome }
    }

    pub fn is_alarm(&self) -> bool {
        self.outcome == Outcome::Alarm
    }
}

fn from_verdict(name: &'static str, v: &Verdict) -> Hypothesis {
    let detail = v.first().map(|f| format!("{} fails at ({}, {})", f.clause, f.pair[0], f.pair[1]));
    Hypothesis { name, holds: v.ok, detail }
}

fn common(r: &Relation, space: &FiniteTopology, family: &ReprFamily) -> Result<Vec<Hypothesis>> {
    if !same_ground(r.ground(), space.ground()) || family.functions().iter().any(|f| !same_ground(f.ground(), r.ground())) {
        return Err(Error::GroundMismatch);
    }
    let pre = classify(r).preorder;
    let isolated = r.isolated_points();
    let mut continuous = Hypothesis { name: "continuous", holds: true, detail: None };
    for (i, f) in family.functions().iter().enumerate() {
        let values = f.values().iter().flatten().copied();
        let v = is_continuous(f, space, &ValueSpace::discrete(values)?)?;
        if let Some(bad) = v.first() {
            continuous = Hypothesis {
                name: "continuous",
                holds: false,
                detail: Some(format!("function #{i}: {} at ({}, {})", bad.clause, bad.pair[0], bad.pair[1])),
            };
            break;
        }
    }
    Ok(vec![
        Hypothesis {
            name: "preorder",
            holds: pre.holds,
            detail: pre.counterexample.map(|w| format!("witness {}", w.join(","))),
        },
        Hypothesis {
            name: "no_isolated_points",
            holds: isolated.is_empty(),
            detail: (!isolated.is_empty()).then(|| format!("isolated: {}", r.ground().labels(&isolated).join(","))),
        },
        continuous,
    ])
}

/// Connected space, no isolated points, finite continuous partial Richter-Peleg
/// multi-utility ⟹ the preorder is total.
pub fn totality_harness(r: &Relation, space: &FiniteTopology, family: &ReprFamily) -> Result<HarnessReport> {
    let mut hyps = common(r, space, family)?;
    hyps.push(Hypothesis { name: "connected", holds: space.is_connected(), detail: None });
    hyps.push(from_verdict("partial_rp_mu", &verify_partial_rp_mu(r, family.functions())?));
    let total = classify(r).total;
    let conclusion = Conclusion { claim: "total", holds: total.holds, witness: total.counterexample };
    Ok(HarnessReport::settle("totality", hyps, Some(conclusion)))
}

/// Finite continuous partial multi-utility, no isolated points ⟹ every
/// `d(x)` and `i(x)` is closed.
pub fn closed_contours_harness(r: &Relation, space: &FiniteTopology, family: &ReprFamily) -> Result<HarnessReport> {
    let mut hyps = common(r, space, family)?;
    hyps.push(from_verdict("partial_mu", &verify_partial_mu(r, family.functions())?));
    let conclusion = if r.is_preorder() {
        let v = check_regular_preorder(r, space)?;
        let witness = v.first().map(|f| vec![f.clause.clone(), f.pair[0].clone()]);
        Some(Conclusion { claim: "contours_closed", holds: v.ok, witness })
    } else {
        None
    };
    Ok(HarnessReport::settle("closed_contours", hyps, conclusion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::generate_example;
    use crate::partial_fn::{PartialFn, ReprKind};
    use crate::rational::int;
    use crate::relation::GroundSet;

    fn chain(n: usize) -> Relation {
        Relation::from_fn(GroundSet::numbered(n).unwrap(), |x, y| x <= y)
    }

    #[test]
    fn chain_with_one_function_passes() {
        let r = chain(3);
        let f = PartialFn::total(r.ground().clone(), vec![int(1), int(2), int(3)]).unwrap();
        let fam = ReprFamily::new(ReprKind::PartialRpMu, vec![f]).unwrap();
        let t = FiniteTopology::discrete(r.ground().clone()).unwrap();
        // discrete on 3 points is disconnected
        assert_eq!(totality_harness(&r, &t, &fam).unwrap().outcome, Outcome::HypothesesNotMet);
        let rep = closed_contours_harness(&r, &t, &fam).unwrap();
        assert_eq!(rep.outcome, Outcome::Pass);
    }

    #[test]
    fn tied_pair_in_an_indiscrete_space() {
        let r = Relation::full(GroundSet::numbered(2).unwrap());
        let f = PartialFn::total(r.ground().clone(), vec![int(0), int(0)]).unwrap();
        let fam = ReprFamily::new(ReprKind::PartialRpMu, vec![f]).unwrap();
        let t = FiniteTopology::indiscrete(r.ground().clone()).unwrap();
        assert_eq!(totality_harness(&r, &t, &fam).unwrap().outcome, Outcome::Pass);
        assert_eq!(closed_contours_harness(&r, &t, &fam).unwrap().outcome, Outcome::Pass);
    }

    #[test]
    fn isolated_point_blocks_the_hypotheses() {
        let ex = generate_example("glued_isolated", &[]).unwrap();
        let (_, t) = &ex.topologies[0];
        let rep = totality_harness(&ex.relation, t, ex.family.as_ref().unwrap()).unwrap();
        assert_eq!(rep.outcome, Outcome::HypothesesNotMet);
        let failing: Vec<_> = rep.hypotheses.iter().filter(|h| !h.holds).map(|h| h.name).collect();
        assert_eq!(failing, vec!["no_isolated_points"]);
        assert!(!rep.conclusion.unwrap().holds);
    }

    #[test]
    fn two_glued_chains_meet_every_hypothesis_and_are_not_total() {
        let ex = generate_example("two_chains_connected", &[]).unwrap();
        let (_, t) = &ex.topologies[0];
        let fam = ex.family.as_ref().unwrap();
        let rep = totality_harness(&ex.relation, t, fam).unwrap();
        assert!(rep.hypotheses.iter().all(|h| h.holds), "{rep:?}");
        assert_eq!(rep.outcome, Outcome::Alarm);
        assert_eq!(rep.conclusion.unwrap().witness, Some(vec!["a".to_string(), "c".to_string()]));
        let rep = closed_contours_harness(&ex.relation, t, fam).unwrap();
        assert_eq!(rep.outcome, Outcome::Alarm);
    }

    #[test]
    fn ground_mismatch() {
        let r = chain(2);
        let other = FiniteTopology::indiscrete(GroundSet::new(["p", "q"]).unwrap()).unwrap();
        let fam = ReprFamily::new(ReprKind::PartialRpMu, vec![]).unwrap();
        assert_eq!(totality_harness(&r, &other, &fam).unwrap_err(), Error::GroundMismatch);
    }
}
