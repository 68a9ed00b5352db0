//! Width of a preorder via Dilworth duality on its quotient.
//!
//! The minimum number of chains covering the quotient equals the number of
//! classes minus a maximum matching in the bipartite graph `a → b` for `a ≺ b`.
//! A maximum antichain is read off a minimum vertex cover (König).

use crate::error::Result;
use crate::relation::Relation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Width {
    pub width: usize,
    /// One representative (smallest member) per class of a maximum antichain.
    pub antichain: Vec<usize>,
}

/// Classes up to this count are re-checked against subset enumeration in debug builds.
const BRUTE_FORCE_CHECK: usize = 15;

pub fn width(r: &Relation) -> Result<Width> {
    let q = r.quotient()?;
    let k = q.classes.len();
    let succ: Vec<Vec<usize>> = (0..k).map(|a| (0..k).filter(|&b| q.order.strict(a, b)).collect()).collect();
    let (match_l, match_r) = max_matching(k, &succ);
    let matched = match_l.iter().filter(|m| m.is_some()).count();

    // Alternating reachability from unmatched right vertices, walking edges
    // backwards into the left side and matching edges forwards.
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (a, out) in succ.iter().enumerate() {
        for &b in out {
            pred[b].push(a);
        }
    }
    let mut seen_r = vec![false; k];
    let mut seen_l = vec![false; k];
    let mut stack: Vec<usize> = (0..k).filter(|&b| match_r[b].is_none()).collect();
    for &b in &stack {
        seen_r[b] = true;
    }
    while let Some(b) = stack.pop() {
        for &a in &pred[b] {
            if match_l[a] == Some(b) || seen_l[a] {
                continue;
            }
            seen_l[a] = true;
            if let Some(b2) = match_l[a] {
                if !seen_r[b2] {
                    seen_r[b2] = true;
                    stack.push(b2);
                }
            }
        }
    }
    let classes: Vec<usize> = (0..k).filter(|&a| seen_r[a] && !seen_l[a]).collect();
    debug_assert_eq!(classes.len(), k - matched);
    if k <= BRUTE_FORCE_CHECK {
        debug_assert_eq!(brute_force_width(&q.order), k - matched);
    }
    Ok(Width { width: k - matched, antichain: classes.iter().map(|&c| q.classes[c][0]).collect() })
}

/// Kuhn's augmenting-path matching; returns partner arrays for both sides.
fn max_matching(k: usize, succ: &[Vec<usize>]) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    fn augment(a: usize, succ: &[Vec<usize>], seen: &mut [bool], ml: &mut [Option<usize>], mr: &mut [Option<usize>]) -> bool {
        for &b in &succ[a] {
            if seen[b] {
                continue;
            }
            seen[b] = true;
            if mr[b].is_none_or(|a2| augment(a2, succ, seen, ml, mr)) {
                ml[a] = Some(b);
                mr[b] = Some(a);
                return true;
            }
        }
        false
    }
    let mut ml = vec![None; k];
    let mut mr = vec![None; k];
    for a in 0..k {
        let mut seen = vec![false; k];
        augment(a, succ, &mut seen, &mut ml, &mut mr);
    }
    (ml, mr)
}

fn brute_force_width(order: &Relation) -> usize {
    let k = order.len();
    (0u32..1 << k)
        .filter(|&s| {
            let members: Vec<usize> = (0..k).filter(|&i| s >> i & 1 == 1).collect();
            members.iter().all(|&a| members.iter().all(|&b| !order.strict(a, b)))
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

impl Relation {
    pub fn width(&self) -> Result<Width> {
        width(self)
    }
}
