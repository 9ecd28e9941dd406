//! Lattice isomorphism by backtracking over order-preserving bijections.
//!
//! A bijection between lattices that preserves and reflects the order is a
//! lattice isomorphism, so only the order is matched. Elements are bucketed by
//! a signature (down-set size, up-set size, lower/upper cover counts, height)
//! and candidates are drawn only from the matching bucket.

use super::{FiniteLattice, LatticeError};

/// Search steps allowed by [`is_isomorphic`].
pub const DEFAULT_ISO_BUDGET: u64 = 50_000_000;

type Signature = (usize, usize, usize, usize, usize);

fn signatures(l: &FiniteLattice) -> Vec<Signature> {
    let n = l.n();
    let covers = l.covers();
    let heights = l.heights();
    (0..n)
        .map(|x| {
            (
                (0..n).filter(|&y| l.leq(y, x)).count(),
                (0..n).filter(|&y| l.leq(x, y)).count(),
                covers.iter().filter(|&&(_, t)| t == x).count(),
                covers.iter().filter(|&&(s, _)| s == x).count(),
                heights[x],
            )
        })
        .collect()
}

pub fn is_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> Result<bool, LatticeError> {
    is_isomorphic_with_budget(a, b, DEFAULT_ISO_BUDGET)
}

pub fn is_isomorphic_with_budget(
    a: &FiniteLattice,
    b: &FiniteLattice,
    budget: u64,
) -> Result<bool, LatticeError> {
    if a.n() != b.n() {
        return Ok(false);
    }
    let (sa, sb) = (signatures(a), signatures(b));
    let (mut ka, mut kb) = (sa.clone(), sb.clone());
    ka.sort_unstable();
    kb.sort_unstable();
    if ka != kb {
        return Ok(false);
    }
    // Assign elements of `a` bottom-up, rarest signature class first within
    // a height, so constraints bite early.
    let mut order: Vec<usize> = a.elements().collect();
    order.sort_by_key(|&x| (sa[x].4, ka.iter().filter(|&&s| s == sa[x]).count(), sa[x].0));
    let mut search = Search {
        a,
        b,
        sa: &sa,
        sb: &sb,
        order: &order,
        image: vec![usize::MAX; a.n()],
        used: vec![false; b.n()],
        steps: 0,
        budget,
    };
    search.extend(0)
}

struct Search<'a> {
    a: &'a FiniteLattice,
    b: &'a FiniteLattice,
    sa: &'a [Signature],
    sb: &'a [Signature],
    order: &'a [usize],
    image: Vec<usize>,
    used: Vec<bool>,
    steps: u64,
    budget: u64,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> Result<bool, LatticeError> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let x = self.order[depth];
        for y in 0..self.b.n() {
            if self.used[y] || self.sa[x] != self.sb[y] {
                continue;
            }
            self.steps += 1;
            if self.steps > self.budget {
                return Err(LatticeError::BudgetExceeded { budget: self.budget });
            }
            let consistent = self.order[..depth].iter().all(|&w| {
                let v = self.image[w];
                self.a.leq(w, x) == self.b.leq(v, y) && self.a.leq(x, w) == self.b.leq(y, v)
            });
            if !consistent {
                continue;
            }
            self.image[x] = y;
            self.used[y] = true;
            if self.extend(depth + 1)? {
                return Ok(true);
            }
            self.used[y] = false;
            self.image[x] = usize::MAX;
        }
        Ok(false)
    }
}
