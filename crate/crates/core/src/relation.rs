//! Finite binary relations on a labelled ground set.
//!
//! A [`Relation`] stores the weak relation `x ≾ y` as a bit matrix. The strict
//! part `≺`, the indifference `∼` and the incomparability `⋈` are always
//! derived from it on demand.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};

/// Labelled carrier. Indices are stable and run over `0..len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    /// Largest carrier accepted by the bit-matrix backend.
    pub const MAX: usize = 4096;

    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Parse("ground set must be nonempty".into()));
        }
        if names.len() > Self::MAX {
            return Err(Error::TooLarge { size: names.len(), cap: Self::MAX });
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        Ok(Arc::new(GroundSet { names, index }))
    }

    /// Elements labelled `0`, `1`, ..., `n-1`.
    pub fn numbered(n: usize) -> Result<Arc<Self>> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn labels(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.names[i].clone()).collect()
    }
}

pub(crate) fn same_ground(a: &Arc<GroundSet>, b: &Arc<GroundSet>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

/// How an ordered pair `(x, y)` with `x ≠ y` sits in the relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairKind {
    /// `x ≺ y`
    Less,
    /// `y ≺ x`
    Greater,
    /// `x ∼ y`
    Indifferent,
    /// `x ⋈ y`
    Incomparable,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    ground: Arc<GroundSet>,
    m: BitMatrix,
}

impl std::fmt::Debug for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Relation")
            .field("elements", &self.ground.names)
            .field("pairs", &self.pairs().map(|(x, y)| (self.ground.name(x), self.ground.name(y))).collect::<Vec<_>>())
            .finish()
    }
}

impl Relation {
    pub fn empty(ground: Arc<GroundSet>) -> Self {
        let n = ground.len();
        Relation { ground, m: BitMatrix::new(n) }
    }

    pub fn identity(ground: Arc<GroundSet>) -> Self {
        Self::from_fn(ground, |x, y| x == y)
    }

    pub fn full(ground: Arc<GroundSet>) -> Self {
        Self::from_fn(ground, |_, _| true)
    }

    pub fn from_fn(ground: Arc<GroundSet>, mut le: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(ground);
        let n = r.len();
        for x in 0..n {
            for y in 0..n {
                if le(x, y) {
                    r.m.set(x, y, true);
                }
            }
        }
        r
    }

    /// Builds from index pairs; out-of-range indices are reported as unknown elements.
    pub fn from_pairs(ground: Arc<GroundSet>, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut r = Self::empty(ground);
        let n = r.len();
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::UnknownElement(format!("#{}", x.max(y))));
            }
            r.m.set(x, y, true);
        }
        Ok(r)
    }

    pub fn from_labeled_pairs<S: AsRef<str>>(
        ground: Arc<GroundSet>,
        pairs: &[(S, S)],
        reflexive_closure: bool,
    ) -> Result<Self> {
        let idx = pairs
            .iter()
            .map(|(a, b)| Ok((ground.index_of(a.as_ref())?, ground.index_of(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        let r = Self::from_pairs(ground, &idx)?;
        Ok(if reflexive_closure { r.reflexive_closure() } else { r })
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

    pub fn name(&self, x: usize) -> &str {
        self.ground.name(x)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.ground.index_of(label)
    }

    /// `x ≾ y`
    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.m.get(x, y)
    }

    /// `x ≺ y`: `x ≾ y` and not `y ≾ x`.
    #[inline]
    pub fn strict(&self, x: usize, y: usize) -> bool {
        self.m.get(x, y) && !self.m.get(y, x)
    }

    /// `x ∼ y`
    #[inline]
    pub fn indifferent(&self, x: usize, y: usize) -> bool {
        self.m.get(x, y) && self.m.get(y, x)
    }

    /// `x ⋈ y`
    #[inline]
    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        !self.m.get(x, y) && !self.m.get(y, x)
    }

    pub fn pair_kind(&self, x: usize, y: usize) -> PairKind {
        match (self.le(x, y), self.le(y, x)) {
            (true, false) => PairKind::Less,
            (false, true) => PairKind::Greater,
            (true, true) => PairKind::Indifferent,
            (false, false) => PairKind::Incomparable,
        }
    }

    /// All `(x, y)` with `x ≾ y`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |x| self.m.row_ones(x).map(move |y| (x, y)))
    }

    pub fn reflexive_closure(&self) -> Self {
        let mut m = self.m.clone();
        for x in 0..self.len() {
            m.set(x, x, true);
        }
        Relation { ground: self.ground.clone(), m }
    }

    /// The least transitive relation containing this one.
    pub fn transitive_closure(&self) -> Self {
        let mut m = self.m.clone();
        m.close_transitively();
        Relation { ground: self.ground.clone(), m }
    }

    pub fn strict_part(&self) -> Self {
        Self::from_fn(self.ground.clone(), |x, y| self.strict(x, y))
    }

    pub fn converse(&self) -> Self {
        Relation { ground: self.ground.clone(), m: self.m.transpose() }
    }

    /// Hasse diagram: the covering pairs of the transitively closed strict part,
    /// plus whatever diagonal entries the input carries.
    pub fn transitive_reduction(&self) -> Result<Self> {
        let n = self.len();
        let mut reach = self.strict_part().m;
        reach.close_transitively();
        if let Some(x) = (0..n).find(|&x| reach.get(x, x)) {
            return Err(Error::CyclicStrictPart { witness: vec![self.name(x).to_string()] });
        }
        let mut out = BitMatrix::new(n);
        for x in 0..n {
            if self.le(x, x) {
                out.set(x, x, true);
            }
            for y in reach.row_ones(x) {
                let covered = reach.row_ones(x).any(|z| z != y && reach.get(z, y));
                if !covered {
                    out.set(x, y, true);
                }
            }
        }
        Ok(Relation { ground: self.ground.clone(), m: out })
    }

    /// Strict lower contour `l(x) = {y : y ≺ x}`.
    pub fn lower_strict(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.strict(y, x)).collect()
    }

    /// Strict upper contour `r(x) = {z : x ≺ z}`.
    pub fn upper_strict(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&z| self.strict(x, z)).collect()
    }

    /// Weak lower contour `d(x) = {y : y ≾ x}`.
    pub fn lower_weak(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.le(y, x)).collect()
    }

    /// Weak upper contour `i(x) = {z : x ≾ z}`.
    pub fn upper_weak(&self, x: usize) -> Vec<usize> {
        self.m.row_ones(x).collect()
    }

    pub fn contours(&self, x: usize) -> Contours {
        Contours {
            lower_strict: self.lower_strict(x),
            upper_strict: self.upper_strict(x),
            lower_weak: self.lower_weak(x),
            upper_weak: self.upper_weak(x),
        }
    }

    pub fn contours_of(&self, label: &str) -> Result<Contours> {
        Ok(self.contours(self.index_of(label)?))
    }

    /// Elements related to no other element in either direction.
    pub fn isolated_points(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| (0..self.len()).all(|y| y == x || self.incomparable(x, y)))
            .collect()
    }

    pub fn is_preorder(&self) -> bool {
        self.preorder_witness().is_none()
    }

    pub(crate) fn preorder_witness(&self) -> Option<Vec<usize>> {
        crate::classify::reflexive_witness(self).or_else(|| crate::classify::transitive_witness(self))
    }

    pub(crate) fn require_preorder(&self) -> Result<()> {
        match self.preorder_witness() {
            None => Ok(()),
            Some(w) => Err(Error::NotAPreorder { witness: self.ground.labels(&w) }),
        }
    }

    pub(crate) fn require_partial_order(&self) -> Result<()> {
        let w = self.preorder_witness().or_else(|| crate::classify::antisymmetric_witness(self));
        match w {
            None => Ok(()),
            Some(w) => Err(Error::NotAPartialOrder { witness: self.ground.labels(&w) }),
        }
    }

    /// Collapses `∼`-classes. Classes are numbered by their smallest member.
    pub fn quotient(&self) -> Result<Quotient> {
        self.require_preorder()?;
        let n = self.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let members: Vec<usize> = (x..n).filter(|&y| self.indifferent(x, y)).collect();
            for &y in &members {
                class_of[y] = id;
            }
            classes.push(members);
        }
        let labels = classes.iter().map(|c| {
            if c.len() == 1 {
                self.name(c[0]).to_string()
            } else {
                format!("[{}]", c.iter().map(|&y| self.name(y)).collect::<Vec<_>>().join(","))
            }
        });
        let ground = GroundSet::new(labels)?;
        let order = Relation::from_fn(ground, |a, b| self.le(classes[a][0], classes[b][0]));
        Ok(Quotient { order, classes, class_of })
    }

    /// Graphviz rendering of the Hasse diagram, edges pointing upwards in the order.
    pub fn to_dot(&self) -> Result<String> {
        let hasse = self.transitive_reduction()?;
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
        for x in 0..self.len() {
            let _ = writeln!(out, "  {:?};", self.name(x));
        }
        for (x, y) in hasse.pairs().filter(|(x, y)| x != y) {
            let _ = writeln!(out, "  {:?} -> {:?};", self.name(x), self.name(y));
        }
        out.push_str("}\n");
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contours {
    pub lower_strict: Vec<usize>,
    pub upper_strict: Vec<usize>,
    pub lower_weak: Vec<usize>,
    pub upper_weak: Vec<usize>,
}

/// A preorder collapsed onto its indifference classes.
#[derive(Debug, Clone)]
pub struct Quotient {
    /// Partial order on the classes.
    pub order: Relation,
    /// Members of each class, ascending.
    pub classes: Vec<Vec<usize>>,
    /// Projection from elements to class ids.
    pub class_of: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Relation {
        Relation::from_fn(GroundSet::numbered(n).unwrap(), |x, y| x <= y)
    }

    fn four_point_poset() -> Relation {
        let g = GroundSet::new(["x1", "x2", "x3", "x4"]).unwrap();
        Relation::from_labeled_pairs(g, &[("x1", "x2"), ("x2", "x4"), ("x3", "x4")], true)
            .unwrap()
            .transitive_closure()
    }

    #[test]
    fn ground_rejects_duplicates_and_unknown_labels() {
        assert_eq!(GroundSet::new(["a", "a"]).unwrap_err(), Error::DuplicateElement("a".into()));
        let g = GroundSet::new(["a"]).unwrap();
        assert_eq!(g.index_of("b").unwrap_err(), Error::UnknownElement("b".into()));
        assert!(GroundSet::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn chain_contours() {
        let c = chain(3).contours(1);
        assert_eq!(c.lower_strict, vec![0]);
        assert_eq!(c.upper_strict, vec![2]);
        assert_eq!(c.lower_weak, vec![0, 1]);
        assert_eq!(c.upper_weak, vec![1, 2]);
    }

    #[test]
    fn window_semiorder_lower_contour() {
        let r = Relation::from_fn(GroundSet::numbered(6).unwrap(), |n, m| n <= m + 1);
        assert_eq!(r.lower_weak(3), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn isolated_point_contours() {
        let g = GroundSet::new(["x1", "x2", "x3"]).unwrap();
        let r = Relation::from_labeled_pairs(g, &[("x1", "x2")], true).unwrap();
        let c = r.contours_of("x3").unwrap();
        assert!(c.lower_strict.is_empty() && c.upper_strict.is_empty());
        assert_eq!(c.lower_weak, vec![2]);
        assert_eq!(c.upper_weak, vec![2]);
        assert_eq!(r.isolated_points(), vec![2]);
        assert!(r.contours_of("x9").is_err());
    }

    #[test]
    fn isolated_points_of_chain_and_identity() {
        assert!(chain(4).isolated_points().is_empty());
        let id = Relation::identity(GroundSet::numbered(3).unwrap());
        assert_eq!(id.isolated_points(), vec![0, 1, 2]);
    }

    #[test]
    fn quotient_of_total_preorder() {
        let g = GroundSet::new(["a", "b", "c"]).unwrap();
        let r = Relation::from_fn(g, |x, y| x <= y || (x < 2 && y < 2));
        let q = r.quotient().unwrap();
        assert_eq!(q.classes, vec![vec![0, 1], vec![2]]);
        assert_eq!(q.class_of, vec![0, 0, 1]);
        assert!(q.order.strict(0, 1));
        assert_eq!(q.order.name(0), "[a,b]");
    }

    #[test]
    fn quotient_of_partial_order_is_identity() {
        let q = four_point_poset().quotient().unwrap();
        assert_eq!(q.classes.len(), 4);
        assert_eq!(q.order, four_point_poset().quotient().unwrap().order);
        assert!(q.order.strict(0, 3) && q.order.incomparable(0, 2));
    }

    #[test]
    fn quotient_two_tied_incomparable_classes() {
        // {0,1} tied, {2,3} tied, no relation between the classes.
        let g = GroundSet::numbered(4).unwrap();
        let r = Relation::from_fn(g, |x, y| x / 2 == y / 2);
        let q = r.quotient().unwrap();
        assert_eq!(q.classes, vec![vec![0, 1], vec![2, 3]]);
        assert!(q.order.incomparable(0, 1));
    }

    #[test]
    fn quotient_requires_preorder() {
        let g = GroundSet::numbered(3).unwrap();
        let r = Relation::from_fn(g, |x, y| x == y || (x, y) == (0, 1) || (x, y) == (1, 2));
        assert!(matches!(r.quotient(), Err(Error::NotAPreorder { .. })));
    }

    #[test]
    fn closure_adds_implied_pairs() {
        let g = GroundSet::new(["a", "b", "c"]).unwrap();
        let r = Relation::from_labeled_pairs(g, &[("a", "b"), ("b", "c")], false).unwrap();
        let c = r.transitive_closure();
        assert!(c.le(0, 2));
        assert_eq!(c.pairs().count(), 3);
        assert!(four_point_poset().le(0, 3));
    }

    #[test]
    fn reduction_keeps_covers_only() {
        let h = chain(4).transitive_reduction().unwrap();
        let off: Vec<_> = h.pairs().filter(|(x, y)| x != y).collect();
        assert_eq!(off, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(h.transitive_closure(), chain(4));
    }

    #[test]
    fn reduction_rejects_cyclic_strict_part() {
        let g = GroundSet::numbered(3).unwrap();
        let r = Relation::from_pairs(g, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(r.transitive_reduction(), Err(Error::CyclicStrictPart { .. })));
    }

    #[test]
    fn dot_lists_hasse_edges() {
        let dot = four_point_poset().to_dot().unwrap();
        assert!(dot.contains("\"x1\" -> \"x2\""));
        assert!(!dot.contains("\"x1\" -> \"x4\""));
    }
}
