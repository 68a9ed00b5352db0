//! Seeded generators for random finite structures.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::partial_fn::{PartialFn, ReprFamily, ReprKind};
use crate::rational::{self, Rational};
use crate::relation::{GroundSet, Relation};
use crate::topology::FiniteTopology;

/// Reflexive-transitive closure of a random relation with edge probability `density`.
pub fn random_preorder<R: Rng>(rng: &mut R, n: usize, density: f64) -> Result<Relation> {
    let g = GroundSet::numbered(n)?;
    Ok(Relation::from_fn(g, |x, y| x == y || rng.gen_bool(density)).transitive_closure())
}

/// Closure of a random DAG laid out along a random permutation.
pub fn random_partial_order<R: Rng>(rng: &mut R, n: usize, density: f64) -> Result<Relation> {
    let mut pos: Vec<usize> = (0..n).collect();
    pos.shuffle(rng);
    let g = GroundSet::numbered(n)?;
    Ok(Relation::from_fn(g, |x, y| x == y || (pos[x] < pos[y] && rng.gen_bool(density))).transitive_closure())
}

/// `x ≾ y ⟺ v(x) ≤ v(y) + 1` for random half-integer values `v` in `[0, n]`.
pub fn random_semiorder<R: Rng>(rng: &mut R, n: usize) -> Result<Relation> {
    let v: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2 * n as i64)).collect();
    Ok(Relation::from_fn(GroundSet::numbered(n)?, |x, y| v[x] <= v[y] + 2))
}

/// Any reflexive relation, each off-diagonal pair present with probability `density`.
pub fn random_reflexive_relation<R: Rng>(rng: &mut R, n: usize, density: f64) -> Result<Relation> {
    Ok(Relation::from_fn(GroundSet::numbered(n)?, |x, y| x == y || rng.gen_bool(density)))
}

/// Alexandrov topology of a random preorder on the same points. On a finite
/// set every topology arises this way.
pub fn random_topology<R: Rng>(rng: &mut R, r: &Relation, density: f64) -> Result<FiniteTopology> {
    let spec = Relation::from_fn(r.ground().clone(), |x, y| x == y || rng.gen_bool(density)).transitive_closure();
    FiniteTopology::alexandrov(&spec)
}

/// `count` partial functions, each defined with probability `coverage` at each
/// point, with integer values in `0..values`.
pub fn random_family<R: Rng>(rng: &mut R, r: &Relation, kind: ReprKind, count: usize, coverage: f64, values: i64) -> Result<ReprFamily> {
    let fns = (0..count)
        .map(|_| {
            let vals: Vec<Option<Rational>> =
                (0..r.len()).map(|_| rng.gen_bool(coverage).then(|| rational::int(rng.gen_range(0..values)))).collect();
            PartialFn::from_options(r.ground().clone(), vals)
        })
        .collect::<Result<Vec<_>>>()?;
    ReprFamily::new(kind, fns)
}
