//! Partial rational-valued functions on a ground set and families of them.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::relation::{same_ground, GroundSet};

/// `f: X ↛ ℚ`. Outside its domain a function has no value at all; callers see
/// `None`, never a placeholder number.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialFn {
    ground: Arc<GroundSet>,
    values: Vec<Option<Rational>>,
}

impl fmt::Debug for PartialFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (x, v) in self.values.iter().enumerate() {
            if let Some(v) = v {
                m.entry(&self.ground.name(x), &rational::format(v));
            }
        }
        m.finish()
    }
}

impl PartialFn {
    pub fn undefined(ground: Arc<GroundSet>) -> Self {
        let n = ground.len();
        PartialFn { ground, values: vec![None; n] }
    }

    pub fn total(ground: Arc<GroundSet>, values: Vec<Rational>) -> Result<Self> {
        Self::from_options(ground, values.into_iter().map(Some).collect())
    }

    pub fn from_options(ground: Arc<GroundSet>, values: Vec<Option<Rational>>) -> Result<Self> {
        if values.len() != ground.len() {
            return Err(Error::Parse(format!(
                "function has {} entries for a ground set of {}",
                values.len(),
                ground.len()
            )));
        }
        Ok(PartialFn { ground, values })
    }

    pub fn from_labeled<S: AsRef<str>>(ground: Arc<GroundSet>, entries: &[(S, Rational)]) -> Result<Self> {
        let mut f = Self::undefined(ground);
        for (label, v) in entries {
            let x = f.ground.index_of(label.as_ref())?;
            if f.values[x].replace(*v).is_some() {
                return Err(Error::DuplicateElement(label.as_ref().to_string()));
            }
        }
        Ok(f)
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    /// Value at index `x`, `None` when `x` is outside the domain.
    #[inline]
    pub fn at(&self, x: usize) -> Option<Rational> {
        self.values[x]
    }

    pub fn eval(&self, label: &str) -> Result<Option<Rational>> {
        Ok(self.values[self.ground.index_of(label)?])
    }

    pub fn values(&self) -> &[Option<Rational>] {
        &self.values
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&x| self.values[x].is_some()).collect()
    }

    pub fn is_defined(&self, x: usize) -> bool {
        self.values[x].is_some()
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    /// Both values when `self` is defined at `x` and at `y`.
    #[inline]
    pub fn on_pair(&self, x: usize, y: usize) -> Option<(Rational, Rational)> {
        Some((self.values[x]?, self.values[y]?))
    }

    /// `self + alpha·f`, defined only where both addends are.
    pub fn scale_add(&self, f: &PartialFn, alpha: Rational) -> Result<PartialFn> {
        if alpha <= rational::int(0) {
            return Err(Error::NonPositiveAlpha(alpha));
        }
        if !same_ground(&self.ground, &f.ground) {
            return Err(Error::GroundMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&f.values)
            .map(|(v, w)| match (v, w) {
                (Some(v), Some(w)) => rational::checked_mul(&alpha, w).and_then(|aw| rational::checked_add(v, &aw)).map(Some),
                _ => Ok(None),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PartialFn { ground: self.ground.clone(), values })
    }

    /// Forgets every value outside `keep`.
    pub fn restrict(&self, keep: &[usize]) -> PartialFn {
        let mut values = vec![None; self.values.len()];
        for &x in keep {
            values[x] = self.values[x];
        }
        PartialFn { ground: self.ground.clone(), values }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReprKind {
    MultiUtility,
    RpMultiUtility,
    PartialMu,
    PartialRpMu,
    ScottSuppes,
    PartialSs,
    PartialRpss,
}

impl ReprKind {
    pub const ALL: [ReprKind; 7] = [
        ReprKind::MultiUtility,
        ReprKind::RpMultiUtility,
        ReprKind::PartialMu,
        ReprKind::PartialRpMu,
        ReprKind::ScottSuppes,
        ReprKind::PartialSs,
        ReprKind::PartialRpss,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ReprKind::MultiUtility => "mu",
            ReprKind::RpMultiUtility => "rp-mu",
            ReprKind::PartialMu => "partial-mu",
            ReprKind::PartialRpMu => "partial-rp-mu",
            ReprKind::ScottSuppes => "ss",
            ReprKind::PartialSs => "partial-ss",
            ReprKind::PartialRpss => "partial-rpss",
        }
    }

    /// Kinds whose functions must be defined everywhere.
    pub fn requires_total(self) -> bool {
        matches!(self, ReprKind::MultiUtility | ReprKind::RpMultiUtility | ReprKind::ScottSuppes)
    }

    pub fn is_scott_suppes(self) -> bool {
        matches!(self, ReprKind::ScottSuppes | ReprKind::PartialSs | ReprKind::PartialRpss)
    }
}

impl fmt::Display for ReprKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReprKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ReprKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown representation kind `{s}`")))
    }
}

/// A finite family of partial functions tagged with what it claims to represent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReprFamily {
    kind: ReprKind,
    functions: Vec<PartialFn>,
    threshold: Option<Rational>,
}

impl ReprFamily {
    /// Scott-Suppes kinds get threshold 1.
    pub fn new(kind: ReprKind, functions: Vec<PartialFn>) -> Result<Self> {
        let threshold = kind.is_scott_suppes().then(|| rational::int(1));
        Self::with_threshold(kind, functions, threshold)
    }

    pub fn with_threshold(kind: ReprKind, functions: Vec<PartialFn>, threshold: Option<Rational>) -> Result<Self> {
        if kind.is_scott_suppes() {
            match threshold {
                Some(t) if t == rational::int(1) => {}
                Some(t) => return Err(Error::InvalidThreshold(t)),
                None => return Err(Error::Parse(format!("kind `{kind}` needs threshold 1"))),
            }
        } else if let Some(t) = threshold {
            return Err(Error::Parse(format!("kind `{kind}` takes no threshold, got {}", rational::format(&t))));
        }
        if let Some(first) = functions.first() {
            if functions.iter().any(|f| !same_ground(f.ground(), first.ground())) {
                return Err(Error::GroundMismatch);
            }
        }
        if kind.requires_total() {
            for (i, f) in functions.iter().enumerate() {
                if let Some(x) = (0..f.values.len()).find(|&x| !f.is_defined(x)) {
                    return Err(Error::PartialFunctionInTotalKind { function: i, element: f.ground.name(x).to_string() });
                }
            }
        }
        if kind == ReprKind::ScottSuppes && functions.len() != 1 {
            return Err(Error::PreconditionFailed(format!(
                "a Scott-Suppes representation is a single utility, got {} functions",
                functions.len()
            )));
        }
        Ok(ReprFamily { kind, functions, threshold })
    }

    pub fn kind(&self) -> ReprKind {
        self.kind
    }

    pub fn functions(&self) -> &[PartialFn] {
        &self.functions
    }

    pub fn threshold(&self) -> Option<Rational> {
        self.threshold
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// Same functions under a different kind, re-validated.
    pub fn retag(&self, kind: ReprKind) -> Result<Self> {
        Self::new(kind, self.functions.clone())
    }

    /// Elements at which no function of the family is defined.
    pub fn uncovered(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|&x| self.functions.iter().all(|f| !f.is_defined(x))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn fig1_ground() -> Arc<GroundSet> {
        GroundSet::new(["x1", "x2", "x3", "x4"]).unwrap()
    }

    #[test]
    fn eval_inside_and_outside_domain() {
        let u1 = PartialFn::from_labeled(fig1_ground(), &[("x1", int(1)), ("x2", int(2)), ("x4", int(3))]).unwrap();
        assert_eq!(u1.eval("x3").unwrap(), None);
        assert_eq!(u1.eval("x2").unwrap(), Some(int(2)));
        assert!(u1.eval("x5").is_err());
        let t = PartialFn::total(fig1_ground(), vec![int(0), int(1), int(2), int(3)]).unwrap();
        assert_eq!(t.eval("x4").unwrap(), Some(int(3)));
    }

    #[test]
    fn scale_add_cases() {
        let g = GroundSet::new(["a", "b"]).unwrap();
        let v = PartialFn::total(g.clone(), vec![int(1), int(1)]).unwrap();
        let f = PartialFn::total(g.clone(), vec![int(0), int(1)]).unwrap();
        let s = v.scale_add(&f, int(1)).unwrap();
        assert_eq!(s.values(), &[Some(int(1)), Some(int(2))]);

        let va = PartialFn::from_labeled(g.clone(), &[("a", int(1))]).unwrap();
        let fb = PartialFn::from_labeled(g.clone(), &[("b", int(1))]).unwrap();
        assert!(va.scale_add(&fb, int(1)).unwrap().domain().is_empty());

        assert_eq!(v.scale_add(&f, int(0)).unwrap_err(), Error::NonPositiveAlpha(int(0)));
        assert!(v.scale_add(&f, ratio(-1, 2)).is_err());
    }

    #[test]
    fn restrict_cases() {
        let g = GroundSet::numbered(6).unwrap();
        let t = PartialFn::total(g.clone(), (0..6).map(int).collect()).unwrap();
        assert!(t.restrict(&[]).domain().is_empty());
        assert_eq!(t.restrict(&[0, 1, 2, 3, 4, 5]), t);
        // mod-3 function: defined where m ≡ 0, 1 (mod 3)
        let u = PartialFn::from_options(g, (0..6).map(|m| (m % 3 != 2).then(|| int(m / 3))).collect()).unwrap();
        assert_eq!(u.restrict(&[0, 1, 2, 3, 4, 5]).domain(), vec![0, 1, 3, 4]);
    }

    #[test]
    fn family_validation() {
        let g = GroundSet::new(["a", "b"]).unwrap();
        let partial = PartialFn::from_labeled(g.clone(), &[("a", int(1))]).unwrap();
        assert!(matches!(
            ReprFamily::new(ReprKind::MultiUtility, vec![partial.clone()]),
            Err(Error::PartialFunctionInTotalKind { function: 0, .. })
        ));
        let fam = ReprFamily::new(ReprKind::PartialSs, vec![partial.clone()]).unwrap();
        assert_eq!(fam.threshold(), Some(int(1)));
        assert_eq!(
            ReprFamily::with_threshold(ReprKind::PartialSs, vec![partial.clone()], Some(int(2))).unwrap_err(),
            Error::InvalidThreshold(int(2))
        );
        assert!(ReprFamily::new(ReprKind::PartialRpMu, vec![partial]).unwrap().threshold().is_none());
        let other = PartialFn::undefined(GroundSet::new(["c", "d"]).unwrap());
        let here = PartialFn::undefined(g);
        assert_eq!(ReprFamily::new(ReprKind::PartialMu, vec![here, other]).unwrap_err(), Error::GroundMismatch);
    }

    #[test]
    fn kind_names_round_trip() {
        for k in ReprKind::ALL {
            assert_eq!(k.as_str().parse::<ReprKind>().unwrap(), k);
        }
        assert!("bogus".parse::<ReprKind>().is_err());
    }

    fn arb_fn(n: usize) -> impl Strategy<Value = Vec<Option<(i64, i64)>>> {
        proptest::collection::vec(proptest::option::of((-20i64..20, 1i64..6)), n)
    }

    proptest! {
        #[test]
        fn scale_add_domain_is_intersection(v in arb_fn(6), f in arb_fn(6), p in 1i64..10, q in 1i64..10) {
            let g = GroundSet::numbered(6).unwrap();
            let mk = |xs: &Vec<Option<(i64, i64)>>| PartialFn::from_options(g.clone(), xs.iter().map(|o| o.map(|(a, b)| ratio(a, b))).collect()).unwrap();
            let (v, f) = (mk(&v), mk(&f));
            let s = v.scale_add(&f, ratio(p, q)).unwrap();
            let expect: Vec<usize> = (0..6).filter(|&x| v.is_defined(x) && f.is_defined(x)).collect();
            prop_assert_eq!(s.domain(), expect);
        }

        #[test]
        fn eval_outside_domain_is_undefined(v in arb_fn(8), queries in proptest::collection::vec(0usize..8, 20)) {
            let g = GroundSet::numbered(8).unwrap();
            let f = PartialFn::from_options(g, v.iter().map(|o| o.map(|(a, b)| ratio(a, b))).collect()).unwrap();
            let dom = f.domain();
            for x in queries {
                let got = f.eval(&x.to_string()).unwrap();
                prop_assert_eq!(got.is_some(), dom.contains(&x));
            }
        }
    }
}
