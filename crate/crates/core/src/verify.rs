//! Decides whether a family of (partial) functions represents a relation.
//!
//! Every check walks the ordered pairs in lexicographic order, so the first
//! violation reported is the lexicographically least one.
//!
//! For the partial kinds the diagonal pair `(x, x)` is exempt from the
//! existential clause: an element that no function touches is still related to
//! itself. It is not exempt from `x ≾ x` holding in the relation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partial_fn::{PartialFn, ReprFamily, ReprKind};
use crate::rational::{self, Rational};
use crate::relation::{same_ground, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub pair: [String; 2],
    pub clause: String,
    pub explanation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl Verdict {
    fn from(violations: Vec<Violation>) -> Self {
        Verdict { ok: violations.is_empty(), violations }
    }

    pub fn ok() -> Self {
        Verdict { ok: true, violations: Vec::new() }
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn has_clause(&self, clause: &str) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }
}

struct Sink<'a> {
    r: &'a Relation,
    out: Vec<Violation>,
}

impl<'a> Sink<'a> {
    fn new(r: &'a Relation) -> Self {
        Sink { r, out: Vec::new() }
    }

    fn push(&mut self, x: usize, y: usize, clause: &str, explanation: String) {
        self.out.push(Violation {
            pair: [self.r.name(x).to_string(), self.r.name(y).to_string()],
            clause: clause.to_string(),
            explanation,
        });
    }

    fn finish(self) -> Verdict {
        Verdict::from(self.out)
    }
}

fn check_ground(r: &Relation, fns: &[PartialFn]) -> Result<()> {
    if fns.iter().any(|f| !same_ground(r.ground(), f.ground())) {
        return Err(Error::GroundMismatch);
    }
    Ok(())
}

fn require_total(r: &Relation, fns: &[PartialFn]) -> Result<()> {
    check_ground(r, fns)?;
    for (i, f) in fns.iter().enumerate() {
        if let Some(x) = (0..r.len()).find(|&x| !f.is_defined(x)) {
            return Err(Error::PartialFunctionInTotalKind { function: i, element: r.name(x).to_string() });
        }
    }
    Ok(())
}

fn fmt_q(v: Rational) -> String {
    rational::format(&v)
}

/// `x ≾ y ⟺ ∀u: u(x) ≤ u(y)` over total functions.
pub fn verify_multi_utility(r: &Relation, fns: &[PartialFn]) -> Result<Verdict> {
    require_total(r, fns)?;
    let mut sink = Sink::new(r);
    mu_clauses(r, fns, &mut sink);
    Ok(sink.finish())
}

fn mu_clauses(r: &Relation, fns: &[PartialFn], sink: &mut Sink) {
    let n = r.len();
    for x in 0..n {
        for y in 0..n {
            let against = fns.iter().enumerate().find_map(|(i, u)| {
                let (a, b) = u.on_pair(x, y)?;
                (a > b).then_some((i, a, b))
            });
            match (r.le(x, y), against) {
                (true, Some((i, a, b))) => {
                    sink.push(x, y, "mu.forward", format!("x ≾ y but function #{i} gives {} > {}", fmt_q(a), fmt_q(b)))
                }
                (false, None) => sink.push(x, y, "mu.backward", "x ≾ y fails yet every function has u(x) ≤ u(y)".into()),
                _ => {}
            }
        }
    }
}

/// Multi-utility plus `x ≺ y ⇒ u(x) < u(y)` for every function.
pub fn verify_rp_multi_utility(r: &Relation, fns: &[PartialFn]) -> Result<Verdict> {
    require_total(r, fns)?;
    let mut sink = Sink::new(r);
    mu_clauses(r, fns, &mut sink);
    let n = r.len();
    for x in 0..n {
        for y in 0..n {
            if !r.strict(x, y) {
                continue;
            }
            let flat = fns.iter().enumerate().find_map(|(i, u)| {
                let (a, b) = u.on_pair(x, y)?;
                (a >= b).then_some((i, a, b))
            });
            if let Some((i, a, b)) = flat {
                sink.push(x, y, "rp.strict", format!("x ≺ y but function #{i} gives {} ≥ {}", fmt_q(a), fmt_q(b)));
            }
        }
    }
    Ok(sink.finish())
}

/// Shape of one biconditional clause over the functions defined on a pair.
struct Clause {
    id: &'static str,
    /// Existential test: some common function satisfies it.
    exists: fn(Rational, Rational) -> bool,
    /// Universal test: every common function satisfies it.
    forall: fn(Rational, Rational) -> bool,
}

/// Evaluates `lhs ⟺ [∃u: exists(u(x),u(y))] ∧ [∀v: forall(v(x),v(y))]` for one
/// pair. `exempt_exists` waives the existential part.
fn biconditional(
    sink: &mut Sink,
    fns: &[PartialFn],
    x: usize,
    y: usize,
    lhs: bool,
    clause: &Clause,
    exempt_exists: bool,
) {
    let mut witness = None;
    let mut breaker = None;
    for (i, u) in fns.iter().enumerate() {
        if let Some((a, b)) = u.on_pair(x, y) {
            if witness.is_none() && (clause.exists)(a, b) {
                witness = Some(i);
            }
            if breaker.is_none() && !(clause.forall)(a, b) {
                breaker = Some((i, a, b));
            }
        }
    }
    let exists = exempt_exists || witness.is_some();
    let rhs = exists && breaker.is_none();
    if lhs == rhs {
        return;
    }
    let id = clause.id;
    if lhs {
        if let Some((i, a, b)) = breaker {
            sink.push(x, y, &format!("{id}.forall"), format!("function #{i} is defined on both with values {}, {}", fmt_q(a), fmt_q(b)));
        } else {
            sink.push(x, y, &format!("{id}.exists"), "no function defined on both satisfies the existential inequality".into());
        }
    } else {
        let i = witness.expect("rhs holds only with a witness off the diagonal");
        sink.push(x, y, &format!("{id}.converse"), format!("pair is not related yet function #{i} witnesses the clause and none contradicts it"));
    }
}

const PMU: Clause = Clause { id: "pmu", exists: |a, b| a <= b, forall: |a, b| a <= b };
const PRP: Clause = Clause { id: "prp", exists: |a, b| a < b, forall: |a, b| a < b };

fn one() -> Rational {
    rational::int(1)
}

const PSS_I: Clause = Clause { id: "pss.i", exists: |a, b| a <= b + one(), forall: |a, b| a <= b + one() };
const PSS_II: Clause = Clause { id: "pss.ii", exists: |a, b| a + one() < b, forall: |a, b| a <= b + one() };
const PRPSS_I: Clause = Clause { id: "prpss.i", exists: |a, b| a <= b + one(), forall: |a, b| a <= b + one() };
const PRPSS_II: Clause = Clause { id: "prpss.ii", exists: |a, b| a + one() < b, forall: |a, b| a + one() < b };

fn pmu_clauses(r: &Relation, fns: &[PartialFn], sink: &mut Sink) {
    let n = r.len();
    for x in 0..n {
        for y in 0..n {
            biconditional(sink, fns, x, y, r.le(x, y), &PMU, x == y);
        }
    }
}

/// `x ≾ y ⟺ [∃u on both: u(x) ≤ u(y)] ∧ [∀v on both: v(x) ≤ v(y)]`.
pub fn verify_partial_mu(r: &Relation, fns: &[PartialFn]) -> Result<Verdict> {
    check_ground(r, fns)?;
    let mut sink = Sink::new(r);
    pmu_clauses(r, fns, &mut sink);
    Ok(sink.finish())
}

/// Partial multi-utility, and for every `x ≺ y` some common function has
/// `u(x) < u(y)` while every common function does.
pub fn verify_partial_rp_mu(r: &Relation, fns: &[PartialFn]) -> Result<Verdict> {
    check_ground(r, fns)?;
    let mut sink = Sink::new(r);
    pmu_clauses(r, fns, &mut sink);
    let n = r.len();
    for x in 0..n {
        for y in 0..n {
            if r.strict(x, y) {
                // only the forward direction is required for ≺
                biconditional(&mut sink, fns, x, y, true, &PRP, false);
            }
        }
    }
    Ok(sink.finish())
}

/// `x ≾ y ⟺ u(x) ≤ u(y) + 1` for a single total utility.
pub fn verify_ss(r: &Relation, u: &PartialFn) -> Result<Verdict> {
    check_ground(r, std::slice::from_ref(u))?;
    if let Some(x) = (0..r.len()).find(|&x| !u.is_defined(x)) {
        return Err(Error::PartialUtilityForSS(r.name(x).to_string()));
    }
    let mut sink = Sink::new(r);
    let n = r.len();
    for x in 0..n {
        for y in 0..n {
            let (a, b) = u.on_pair(x, y).expect("total");
            let rhs = a <= b + one();
            match (r.le(x, y), rhs) {
                (true, false) => sink.push(x, y, "ss.forward", format!("x ≾ y but u(x) = {} > u(y) + 1 = {}", fmt_q(a), fmt_q(b + one()))),
                (false, true) => sink.push(x, y, "ss.backward", format!("x ≾ y fails but u(x) = {} ≤ u(y) + 1 = {}", fmt_q(a), fmt_q(b + one()))),
                _ => {}
            }
        }
    }
    Ok(sink.finish())
}

fn threshold_clauses(r: &Relation, fns: &[PartialFn], first: &Clause, second: &Clause) -> Result<Verdict> {
    check_ground(r, fns)?;
    let mut sink = Sink::new(r);
    let n = r.len();
    for x in 0..n {
        for y in 0..n {
            biconditional(&mut sink, fns, x, y, r.le(x, y), first, x == y);
        }
    }
    for x in 0..n {
        for y in 0..n {
            biconditional(&mut sink, fns, x, y, r.strict(x, y), second, false);
        }
    }
    Ok(sink.finish())
}

/// Clause (i): `x ≾ y ⟺ ∃u: u(x) ≤ u(y)+1 ∧ ∀v: v(x) ≤ v(y)+1`.
/// Clause (ii): `x ≺ y ⟺ ∃u: u(x)+1 < u(y) ∧ ∀v: v(x) ≤ v(y)+1`.
pub fn verify_partial_ss(r: &Relation, fns: &[PartialFn]) -> Result<Verdict> {
    threshold_clauses(r, fns, &PSS_I, &PSS_II)
}

/// As [`verify_partial_ss`] with the universal part of clause (ii) strengthened
/// to `v(x)+1 < v(y)`.
pub fn verify_partial_rpss(r: &Relation, fns: &[PartialFn]) -> Result<Verdict> {
    threshold_clauses(r, fns, &PRPSS_I, &PRPSS_II)
}

/// `u` is a bijection onto `{1, …, n}` with `x ⊏ y ⇒ u(x) < u(y)`.
pub fn verify_labeling(p: &Relation, u: &PartialFn) -> Result<Verdict> {
    check_ground(p, std::slice::from_ref(u))?;
    let n = p.len();
    let mut sink = Sink::new(p);
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for x in 0..n {
        let Some(v) = u.at(x) else {
            sink.push(x, x, "labeling.total", "labeling is undefined here".into());
            continue;
        };
        if !v.is_integer() || *v.numer() < 1 || *v.numer() > n as i64 {
            sink.push(x, x, "labeling.range", format!("value {} is not in 1..={n}", fmt_q(v)));
            continue;
        }
        let slot = (*v.numer() - 1) as usize;
        match owner[slot] {
            Some(prev) => sink.push(prev, x, "labeling.injective", format!("both elements get label {}", slot + 1)),
            None => owner[slot] = Some(x),
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !p.strict(x, y) {
                continue;
            }
            if let Some((a, b)) = u.on_pair(x, y) {
                if a >= b {
                    sink.push(x, y, "labeling.order", format!("x ⊏ y but labels are {}, {}", fmt_q(a), fmt_q(b)));
                }
            }
        }
    }
    Ok(sink.finish())
}

/// Dispatches on the family's kind.
pub fn verify(r: &Relation, family: &ReprFamily) -> Result<Verdict> {
    let fns = family.functions();
    match family.kind() {
        ReprKind::MultiUtility => verify_multi_utility(r, fns),
        ReprKind::RpMultiUtility => verify_rp_multi_utility(r, fns),
        ReprKind::PartialMu => verify_partial_mu(r, fns),
        ReprKind::PartialRpMu => verify_partial_rp_mu(r, fns),
        ReprKind::ScottSuppes => match fns {
            [u] => verify_ss(r, u),
            _ => Err(Error::PreconditionFailed("a Scott-Suppes representation is a single utility".into())),
        },
        ReprKind::PartialSs => verify_partial_ss(r, fns),
        ReprKind::PartialRpss => verify_partial_rpss(r, fns),
    }
}
