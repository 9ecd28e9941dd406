//! Banaschewski functions on finite bounded lattices.
//!
//! A Banaschewski function is an antitone self-map `f` with `f(x)` a
//! complement of `x` for every `x`. On a finite lattice they can be listed by
//! backtracking: elements are assigned bottom-up along a fixed linear
//! extension, each to one of its complements, and a partial assignment is
//! abandoned as soon as it breaks antitonicity.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finlat::{is_isomorphic, FiniteLattice, LatticeError};

/// Largest lattice the exhaustive searches accept.
pub const MAX_ELEMENTS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BanError {
    #[error("lattice has {n} elements; exhaustive search is capped at {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A self-map of a finite lattice, `table[x] = f(x)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BanMap {
    pub table: Vec<usize>,
}

impl BanMap {
    pub fn new(table: Vec<usize>) -> Self {
        BanMap { table }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }
}

/// Antitone, and `f(x) ⊕ x = 1` for every `x`. Maps of the wrong length or
/// with out-of-range values are rejected.
pub fn is_banaschewski(l: &FiniteLattice, f: &BanMap) -> bool {
    if f.table.len() != l.n() || f.table.iter().any(|&y| y >= l.n()) {
        return false;
    }
    let complemented = l.elements().all(|x| {
        let y = f.apply(x);
        l.meet(x, y) == l.bottom() && l.join(x, y) == l.top()
    });
    complemented
        && l.elements().all(|x| {
            l.elements()
                .filter(|&y| l.leq(x, y))
                .all(|y| l.leq(f.apply(y), f.apply(x)))
        })
}

/// Result of [`enumerate_banaschewski`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub maps: Vec<BanMap>,
    /// When the lattice is not complemented, the first element with no
    /// complement; `maps` is then empty.
    pub uncomplemented: Option<usize>,
}

fn check_size(l: &FiniteLattice) -> Result<(), BanError> {
    if l.n() > MAX_ELEMENTS {
        Err(BanError::TooLarge {
            n: l.n(),
            limit: MAX_ELEMENTS,
        })
    } else {
        Ok(())
    }
}

/// Depth-first search over Banaschewski functions whose values satisfy
/// `allowed`. `visit` sees each complete table in lexicographic order of the
/// assignment sequence and may stop the search.
fn search<B>(
    l: &FiniteLattice,
    allowed: impl Fn(usize) -> bool,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<B>,
) -> Option<B> {
    let n = l.n();
    let mut order: Vec<usize> = l.elements().collect();
    order.sort_by_key(|&x| (l.elements().filter(|&y| l.leq(y, x)).count(), x));
    let candidates: Vec<Vec<usize>> = l
        .elements()
        .map(|x| l.complements(x).into_iter().filter(|&y| allowed(y)).collect())
        .collect();
    let mut table = vec![usize::MAX; n];

    fn go<B>(
        l: &FiniteLattice,
        order: &[usize],
        candidates: &[Vec<usize>],
        depth: usize,
        table: &mut [usize],
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if depth == order.len() {
            return visit(table);
        }
        let x = order[depth];
        for &y in &candidates[x] {
            let antitone = order[..depth].iter().all(|&w| {
                let fw = table[w];
                (!l.leq(w, x) || l.leq(y, fw)) && (!l.leq(x, w) || l.leq(fw, y))
            });
            if antitone {
                table[x] = y;
                go(l, order, candidates, depth + 1, table, visit)?;
            }
        }
        table[x] = usize::MAX;
        ControlFlow::Continue(())
    }

    match go(l, &order, &candidates, 0, &mut table, &mut visit) {
        ControlFlow::Break(b) => Some(b),
        ControlFlow::Continue(()) => None,
    }
}

/// Every Banaschewski function on `l`, sorted by table.
pub fn enumerate_banaschewski(l: &FiniteLattice) -> Result<Enumeration, BanError> {
    check_size(l)?;
    if let Some(x) = l.elements().find(|&x| l.complements(x).is_empty()) {
        return Ok(Enumeration {
            maps: Vec::new(),
            uncomplemented: Some(x),
        });
    }
    let mut maps = Vec::new();
    search::<()>(
        l,
        |_| true,
        |t| {
            maps.push(BanMap::new(t.to_vec()));
            ControlFlow::Continue(())
        },
    );
    maps.sort();
    Ok(Enumeration {
        maps,
        uncomplemented: None,
    })
}

/// The image of a map, with a flag telling whether it is a bounded
/// sublattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Range {
    pub members: BTreeSet<usize>,
    pub is_sublattice: bool,
}

pub fn range_of(l: &FiniteLattice, f: &BanMap) -> Range {
    let members: BTreeSet<usize> = f.table.iter().copied().collect();
    let is_sublattice = l.is_sublattice(&members);
    Range {
        members,
        is_sublattice,
    }
}

/// Some Banaschewski function whose image is exactly `mask`, or `None` after
/// an exhaustive search.
pub fn is_range_of_some_banaschewski(
    l: &FiniteLattice,
    mask: &BTreeSet<usize>,
) -> Result<Option<BanMap>, BanError> {
    check_size(l)?;
    for &x in mask {
        l.check_index(x)?;
    }
    Ok(search(
        l,
        |y| mask.contains(&y),
        |t| {
            let image: BTreeSet<usize> = t.iter().copied().collect();
            if image == *mask {
                ControlFlow::Break(BanMap::new(t.to_vec()))
            } else {
                ControlFlow::Continue(())
            }
        },
    ))
}

/// Distinct images of Banaschewski functions that are Boolean bounded
/// sublattices, sorted.
pub fn boolean_ranges(l: &FiniteLattice) -> Result<Vec<BTreeSet<usize>>, BanError> {
    let maps = enumerate_banaschewski(l)?.maps;
    let ranges: BTreeSet<BTreeSet<usize>> = maps
        .iter()
        .map(|f| range_of(l, f))
        .filter(|r| r.is_sublattice && l.is_boolean_sublattice(&r.members))
        .map(|r| r.members)
        .collect();
    Ok(ranges.into_iter().collect())
}

/// Whether all Boolean ranges of Banaschewski functions on `l` are pairwise
/// isomorphic. Vacuously true when there are none.
pub fn boolean_ranges_isomorphic(l: &FiniteLattice) -> Result<bool, BanError> {
    let lattices = boolean_ranges(l)?
        .iter()
        .map(|r| l.induced(r))
        .collect::<Result<Vec<_>, _>>()?;
    for w in lattices.windows(2) {
        if !is_isomorphic(&w[0], &w[1])? {
            return Ok(false);
        }
    }
    Ok(true)
}
