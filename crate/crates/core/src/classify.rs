//! Order-axiom checks with lexicographically least counterexamples.
//!
//! Every check is a direct evaluation of its defining quantifier. The
//! interval-order and semiorder axioms are quartic in the worst case.

use serde::Serialize;

use crate::relation::Relation;

/// Outcome of one axiom. A failing check always carries its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<String>>,
}

impl Check {
    fn from_witness(r: &Relation, w: Option<Vec<usize>>) -> Self {
        Check { holds: w.is_none(), counterexample: w.map(|w| r.ground().labels(&w)) }
    }
}

/// Witness tuple layouts:
/// `reflexive`/`irreflexive`: `[x]`; pairwise checks: `[x, y]`;
/// `transitive`: `[x, y, z]` with `x≾y≾z`, `¬x≾z`;
/// `interval_order`: `[x, z, y, w]` with `x≾z`, `y≾w`, `¬x≾w`, `¬y≾z`;
/// `semiorder`: `[x, y, z, w]` with `x≾y≾z`, `¬x≾w`, `¬w≾z`.
/// Composite flags report the witness of their first failing component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub reflexive: Check,
    pub irreflexive: Check,
    pub symmetric: Check,
    pub antisymmetric: Check,
    pub asymmetric: Check,
    pub total: Check,
    pub transitive: Check,
    pub preorder: Check,
    pub partial_order: Check,
    pub interval_order: Check,
    pub semiorder: Check,
}

impl PropertyReport {
    /// Flags in declaration order, for tabular output.
    pub fn flags(&self) -> [(&'static str, &Check); 11] {
        [
            ("reflexive", &self.reflexive),
            ("irreflexive", &self.irreflexive),
            ("symmetric", &self.symmetric),
            ("antisymmetric", &self.antisymmetric),
            ("asymmetric", &self.asymmetric),
            ("total", &self.total),
            ("transitive", &self.transitive),
            ("preorder", &self.preorder),
            ("partial_order", &self.partial_order),
            ("interval_order", &self.interval_order),
            ("semiorder", &self.semiorder),
        ]
    }

    pub fn flag(&self, name: &str) -> Option<&Check> {
        self.flags().into_iter().find(|(n, _)| *n == name).map(|(_, c)| c)
    }
}

pub fn classify(r: &Relation) -> PropertyReport {
    let refl = reflexive_witness(r);
    let trans = transitive_witness(r);
    let anti = antisymmetric_witness(r);
    let preorder = refl.clone().or_else(|| trans.clone());
    let partial = preorder.clone().or_else(|| anti.clone());
    let interval = refl.clone().or_else(|| interval_witness(r));
    let semi = interval.clone().or_else(|| semiorder_witness(r));
    PropertyReport {
        reflexive: Check::from_witness(r, refl),
        irreflexive: Check::from_witness(r, irreflexive_witness(r)),
        symmetric: Check::from_witness(r, symmetric_witness(r)),
        antisymmetric: Check::from_witness(r, anti),
        asymmetric: Check::from_witness(r, asymmetric_witness(r)),
        total: Check::from_witness(r, total_witness(r)),
        transitive: Check::from_witness(r, trans),
        preorder: Check::from_witness(r, preorder),
        partial_order: Check::from_witness(r, partial),
        interval_order: Check::from_witness(r, interval),
        semiorder: Check::from_witness(r, semi),
    }
}

pub(crate) fn reflexive_witness(r: &Relation) -> Option<Vec<usize>> {
    (0..r.len()).find(|&x| !r.le(x, x)).map(|x| vec![x])
}

fn irreflexive_witness(r: &Relation) -> Option<Vec<usize>> {
    (0..r.len()).find(|&x| r.le(x, x)).map(|x| vec![x])
}

fn first_pair(r: &Relation, bad: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    let n = r.len();
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| bad(x, y)).map(|(x, y)| vec![x, y])
}

fn symmetric_witness(r: &Relation) -> Option<Vec<usize>> {
    first_pair(r, |x, y| r.le(x, y) && !r.le(y, x))
}

pub(crate) fn antisymmetric_witness(r: &Relation) -> Option<Vec<usize>> {
    first_pair(r, |x, y| x != y && r.le(x, y) && r.le(y, x))
}

fn asymmetric_witness(r: &Relation) -> Option<Vec<usize>> {
    first_pair(r, |x, y| r.le(x, y) && r.le(y, x))
}

fn total_witness(r: &Relation) -> Option<Vec<usize>> {
    first_pair(r, |x, y| !r.le(x, y) && !r.le(y, x))
}

pub(crate) fn transitive_witness(r: &Relation) -> Option<Vec<usize>> {
    let n = r.len();
    for x in 0..n {
        for y in r.upper_weak(x) {
            if let Some(z) = r.upper_weak(y).into_iter().find(|&z| !r.le(x, z)) {
                return Some(vec![x, y, z]);
            }
        }
    }
    None
}

/// `(x≾z) ∧ (y≾w) ⇒ (x≾w) ∨ (y≾z)`. Instances whose premises are both
/// off-diagonal are searched first.
fn interval_witness(r: &Relation) -> Option<Vec<usize>> {
    let n = r.len();
    let search = |off_diagonal: bool| {
        for x in 0..n {
            for z in r.upper_weak(x) {
                if off_diagonal && z == x {
                    continue;
                }
                for y in 0..n {
                    if r.le(y, z) {
                        continue;
                    }
                    let w = r.upper_weak(y).into_iter().find(|&w| !(off_diagonal && w == y) && !r.le(x, w));
                    if let Some(w) = w {
                        return Some(vec![x, z, y, w]);
                    }
                }
            }
        }
        None
    };
    search(true).or_else(|| search(false))
}

/// `(x≾y) ∧ (y≾z) ⇒ (x≾w) ∨ (w≾z)`, off-diagonal premises first.
fn semiorder_witness(r: &Relation) -> Option<Vec<usize>> {
    let n = r.len();
    let search = |off_diagonal: bool| {
        for x in 0..n {
            for y in r.upper_weak(x) {
                if off_diagonal && y == x {
                    continue;
                }
                for z in r.upper_weak(y) {
                    if off_diagonal && z == y {
                        continue;
                    }
                    if let Some(w) = (0..n).find(|&w| !r.le(x, w) && !r.le(w, z)) {
                        return Some(vec![x, y, z, w]);
                    }
                }
            }
        }
        None
    };
    search(true).or_else(|| search(false))
}
