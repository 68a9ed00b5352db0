//! Finite topological spaces stored as their full family of open sets.
//!
//! Subsets are `u64` masks, so a space has at most 64 points; generating a
//! topology by closure is capped at 16 points.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::partial_fn::PartialFn;
use crate::rational::{self, Rational};
use crate::relation::{same_ground, GroundSet, Relation};
use crate::verify::{Verdict, Violation};

pub type Mask = u64;

/// Largest space representable with masks.
pub const MAX_POINTS: usize = 64;
/// Largest space for which opens are produced by closure.
pub const MAX_GENERATED: usize = 16;

pub fn mask_of(elements: &[usize]) -> Mask {
    elements.iter().fold(0, |m, &x| m | 1 << x)
}

pub fn members(m: Mask) -> Vec<usize> {
    (0..64).filter(|&x| m >> x & 1 == 1).collect()
}

fn full_mask(n: usize) -> Mask {
    if n == 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    ground: Arc<GroundSet>,
    /// Ascending, contains `0` and the full mask.
    opens: Vec<Mask>,
}

impl FiniteTopology {
    /// Checks closure under pairwise union and intersection; `∅` and `X` are added.
    pub fn from_opens(ground: Arc<GroundSet>, opens: impl IntoIterator<Item = Mask>) -> Result<Self> {
        let n = check_size(&ground, MAX_POINTS)?;
        let full = full_mask(n);
        let mut set: BTreeSet<Mask> = opens.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&m| m & !full != 0) {
            return Err(Error::InvalidTopology(format!("open set {bad:#x} has points outside the ground set")));
        }
        set.insert(0);
        set.insert(full);
        let opens: Vec<Mask> = set.into_iter().collect();
        let lookup: BTreeSet<Mask> = opens.iter().copied().collect();
        for (i, &a) in opens.iter().enumerate() {
            for &b in &opens[i + 1..] {
                for (what, m) in [("union", a | b), ("intersection", a & b)] {
                    if !lookup.contains(&m) {
                        let names = |m: Mask| ground.labels(&members(m)).join(",");
                        return Err(Error::InvalidTopology(format!(
                            "{what} of {{{}}} and {{{}}} is not open",
                            names(a),
                            names(b)
                        )));
                    }
                }
            }
        }
        Ok(FiniteTopology { ground, opens })
    }

    /// Smallest topology containing `subbasis`.
    pub fn generated_by(ground: Arc<GroundSet>, subbasis: impl IntoIterator<Item = Mask>) -> Result<Self> {
        let n = check_size(&ground, MAX_GENERATED)?;
        let full = full_mask(n);
        let mut basis: BTreeSet<Mask> = subbasis.into_iter().map(|m| m & full).collect();
        basis.insert(full);
        // finite intersections
        let mut frontier: Vec<Mask> = basis.iter().copied().collect();
        while let Some(a) = frontier.pop() {
            let snapshot: Vec<Mask> = basis.iter().copied().collect();
            for b in snapshot {
                if basis.insert(a & b) {
                    frontier.push(a & b);
                }
            }
        }
        Ok(FiniteTopology { ground, opens: union_closure(basis.into_iter()) })
    }

    pub fn discrete(ground: Arc<GroundSet>) -> Result<Self> {
        let n = check_size(&ground, MAX_GENERATED)?;
        Ok(FiniteTopology { ground, opens: (0..=full_mask(n)).collect() })
    }

    pub fn indiscrete(ground: Arc<GroundSet>) -> Result<Self> {
        let n = check_size(&ground, MAX_POINTS)?;
        let mut opens = vec![0, full_mask(n)];
        opens.dedup();
        Ok(FiniteTopology { ground, opens })
    }

    /// Opens are the up-sets of a preorder (the Alexandrov topology).
    pub fn alexandrov(r: &Relation) -> Result<Self> {
        r.require_preorder()?;
        check_size(r.ground(), MAX_GENERATED)?;
        let principal = (0..r.len()).map(|x| mask_of(&r.upper_weak(x)));
        Ok(FiniteTopology { ground: r.ground().clone(), opens: union_closure(principal.chain([0])) })
    }

    /// Topology generated by the principal up-sets `{y : x ⊑ y}` of a partial order.
    pub fn scott(p: &Relation) -> Result<Self> {
        p.require_partial_order()?;
        Self::alexandrov(p)
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn full(&self) -> Mask {
        full_mask(self.len())
    }

    pub fn opens(&self) -> &[Mask] {
        &self.opens
    }

    pub fn is_open(&self, m: Mask) -> bool {
        self.opens.binary_search(&m).is_ok()
    }

    pub fn is_closed(&self, m: Mask) -> bool {
        self.is_open(self.full() & !m)
    }

    /// Intersection of all opens containing `x`.
    pub fn minimal_open(&self, x: usize) -> Mask {
        self.opens.iter().filter(|&&o| o >> x & 1 == 1).fold(self.full(), |acc, &o| acc & o)
    }

    /// Specialisation preorder: `x ≤ y` iff every open containing `x` contains `y`.
    pub fn specialization(&self) -> Relation {
        let mins: Vec<Mask> = (0..self.len()).map(|x| self.minimal_open(x)).collect();
        Relation::from_fn(self.ground.clone(), |x, y| mins[x] >> y & 1 == 1)
    }

    /// True when no proper nonempty subset is both open and closed.
    pub fn is_connected(&self) -> bool {
        let full = self.full();
        self.opens.iter().all(|&o| o == 0 || o == full || !self.is_closed(o))
    }

    /// The induced topology on `domain`, as masks over the same points.
    pub fn subspace_opens(&self, domain: Mask) -> Vec<Mask> {
        let set: BTreeSet<Mask> = self.opens.iter().map(|&o| o & domain).collect();
        set.into_iter().collect()
    }

    pub fn labels(&self, m: Mask) -> Vec<String> {
        self.ground.labels(&members(m))
    }
}

fn check_size(ground: &GroundSet, cap: usize) -> Result<usize> {
    if ground.len() > cap {
        return Err(Error::CapExceeded { what: "topology points", size: ground.len(), cap });
    }
    Ok(ground.len())
}

fn union_closure(seed: impl Iterator<Item = Mask>) -> Vec<Mask> {
    let mut set: BTreeSet<Mask> = seed.collect();
    set.insert(0);
    let basis: Vec<Mask> = set.iter().copied().collect();
    let mut frontier: Vec<Mask> = basis.clone();
    while let Some(a) = frontier.pop() {
        for &b in &basis {
            if set.insert(a | b) {
                frontier.push(a | b);
            }
        }
    }
    set.into_iter().collect()
}

/// A finite set of rational values with a topology, used as a codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueSpace {
    points: Vec<Rational>,
    opens: Vec<Mask>,
}

impl ValueSpace {
    /// Scott topology of `≤` on the given values: the opens are the upper sets.
    pub fn scott_chain(values: impl IntoIterator<Item = Rational>) -> Result<Self> {
        let points = sorted_points(values)?;
        let k = points.len();
        let opens = (0..=k).map(|i| full_mask(k) & !full_mask(i)).collect();
        Ok(ValueSpace { points, opens })
    }

    /// Every subset open. On a finite set of reals this is the Euclidean subspace topology.
    pub fn discrete(values: impl IntoIterator<Item = Rational>) -> Result<Self> {
        let points = sorted_points(values)?;
        let opens = if points.len() <= MAX_GENERATED {
            (0..=full_mask(points.len())).collect()
        } else {
            // singletons suffice to decide continuity into a discrete space
            (0..points.len()).map(|i| 1 << i).collect()
        };
        Ok(ValueSpace { points, opens })
    }

    /// `{1, …, n}` with the Scott topology of its natural order.
    pub fn labels(n: usize) -> Result<Self> {
        Self::scott_chain((1..=n as i64).map(rational::int))
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    fn index(&self, v: &Rational) -> Option<usize> {
        self.points.binary_search(v).ok()
    }
}

fn sorted_points(values: impl IntoIterator<Item = Rational>) -> Result<Vec<Rational>> {
    let set: BTreeSet<Rational> = values.into_iter().collect();
    if set.len() > MAX_POINTS {
        return Err(Error::CapExceeded { what: "codomain points", size: set.len(), cap: MAX_POINTS });
    }
    Ok(set.into_iter().collect())
}

/// A partial function is continuous when its restriction to its domain, with
/// the subspace topology, is continuous into `codomain`.
pub fn is_continuous(f: &PartialFn, space: &FiniteTopology, codomain: &ValueSpace) -> Result<Verdict> {
    if !same_ground(f.ground(), space.ground()) {
        return Err(Error::GroundMismatch);
    }
    let domain = mask_of(&f.domain());
    let mut violations = Vec::new();
    let mut slot = vec![usize::MAX; space.len()];
    for x in members(domain) {
        let v = f.at(x).expect("in domain");
        match codomain.index(&v) {
            Some(i) => slot[x] = i,
            None => violations.push(Violation {
                pair: [space.ground.name(x).to_string(), space.ground.name(x).to_string()],
                clause: "continuity.codomain".into(),
                explanation: format!("value {} is not a point of the codomain", rational::format(&v)),
            }),
        }
    }
    if !violations.is_empty() {
        return Ok(Verdict { ok: false, violations });
    }
    let mins: Vec<Mask> = (0..space.len()).map(|x| space.minimal_open(x)).collect();
    for &o in &codomain.opens {
        let pre = members(domain).into_iter().filter(|&x| o >> slot[x] & 1 == 1).fold(0, |m, x| m | 1 << x);
        // smallest open containing the preimage, cut down to the domain
        let hull = members(pre).into_iter().fold(0, |m, x| m | mins[x]) & domain;
        if hull != pre {
            let stray = members(hull & !pre)[0];
            let source = members(pre).into_iter().find(|&x| mins[x] >> stray & 1 == 1).expect("stray comes from some hull point");
            let vals: Vec<String> = members(o).into_iter().map(|i| rational::format(&codomain.points[i])).collect();
            violations.push(Violation {
                pair: [space.ground.name(source).to_string(), space.ground.name(stray).to_string()],
                clause: "continuity.preimage".into(),
                explanation: format!(
                    "preimage of {{{}}} is not open in the domain: every neighbourhood of the first element meets the second",
                    vals.join(",")
                ),
            });
        }
    }
    Ok(Verdict { ok: violations.is_empty(), violations })
}

fn contour_verdict(r: &Relation, space: &FiniteTopology, checks: [(&str, fn(&Relation, usize) -> Vec<usize>, bool); 2]) -> Result<Verdict> {
    r.require_preorder()?;
    if !same_ground(r.ground(), space.ground()) {
        return Err(Error::GroundMismatch);
    }
    let mut violations = Vec::new();
    for x in 0..r.len() {
        for (clause, contour, want_closed) in &checks {
            let m = mask_of(&contour(r, x));
            let fine = if *want_closed { space.is_closed(m) } else { space.is_open(m) };
            if !fine {
                let name = r.name(x).to_string();
                violations.push(Violation {
                    pair: [name.clone(), name],
                    clause: clause.to_string(),
                    explanation: format!(
                        "{{{}}} is not {}",
                        space.labels(m).join(","),
                        if *want_closed { "closed" } else { "open" }
                    ),
                });
            }
        }
    }
    Ok(Verdict { ok: violations.is_empty(), violations })
}

/// Every `d(x)` and `i(x)` is closed.
pub fn check_regular_preorder(r: &Relation, space: &FiniteTopology) -> Result<Verdict> {
    contour_verdict(r, space, [("closed.lower", Relation::lower_weak, true), ("closed.upper", Relation::upper_weak, true)])
}

/// Every `l(x)` and `r(x)` is open.
pub fn check_contour_openness(r: &Relation, space: &FiniteTopology) -> Result<Verdict> {
    contour_verdict(
        r,
        space,
        [("open.lower_strict", Relation::lower_strict, false), ("open.upper_strict", Relation::upper_strict, false)],
    )
}
