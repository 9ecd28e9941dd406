//! Triples of finite-cofinite sets, the `μ` polynomial, the balancing closure
//! and the lattices `T` and `S` built from them.
//!
//! A triple `⟨a, b, c⟩` is *balanced* when `a∧b = a∧c = b∧c`. Over a
//! distributive lattice of sets the least balanced triple above `⟨a, b, c⟩` is
//! obtained by joining every component with
//! `μ⟨a, b, c⟩ = (a∧b) ∨ (a∧c) ∨ (b∧c)`. Balanced triples are closed under
//! componentwise meet; their join is the closure of the componentwise join.
//!
//! `T` is the set of triples with `c ∖ μ` finite, and `S` is the set of
//! balanced members of `T`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::setalg::{FcSet, SetError, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripleError {
    #[error(transparent)]
    Set(#[from] SetError),
    #[error("triple {0} is not balanced")]
    NotBalanced(Triple),
}

/// An ordered triple of sets over one universe.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[FcSet; 3]", into = "[FcSet; 3]")]
pub struct Triple {
    a: FcSet,
    b: FcSet,
    c: FcSet,
}

impl TryFrom<[FcSet; 3]> for Triple {
    type Error = SetError;

    fn try_from([a, b, c]: [FcSet; 3]) -> Result<Self, SetError> {
        Triple::new(a, b, c)
    }
}

impl From<Triple> for [FcSet; 3] {
    fn from(t: Triple) -> Self {
        [t.a, t.b, t.c]
    }
}

impl Triple {
    pub fn new(a: FcSet, b: FcSet, c: FcSet) -> Result<Self, SetError> {
        a.universe().check_same(b.universe())?;
        a.universe().check_same(c.universe())?;
        Ok(Triple { a, b, c })
    }

    /// The diagonal `⟨x, x, x⟩`.
    pub fn diagonal(x: FcSet) -> Self {
        Triple {
            a: x.clone(),
            b: x.clone(),
            c: x,
        }
    }

    pub fn bottom(universe: Universe) -> Self {
        Self::diagonal(FcSet::empty(universe))
    }

    pub fn top(universe: Universe) -> Self {
        Self::diagonal(FcSet::full(universe))
    }

    /// Every triple over `Finite(n)`, `8^n` of them.
    pub fn all_over(n: u64) -> Vec<Triple> {
        let subsets = Universe::Finite(n).all_subsets();
        let mut out = Vec::with_capacity(subsets.len().pow(3));
        for a in &subsets {
            for b in &subsets {
                for c in &subsets {
                    out.push(Triple {
                        a: a.clone(),
                        b: b.clone(),
                        c: c.clone(),
                    });
                }
            }
        }
        out
    }

    pub fn universe(&self) -> Universe {
        self.a.universe()
    }

    pub fn a(&self) -> &FcSet {
        &self.a
    }

    pub fn b(&self) -> &FcSet {
        &self.b
    }

    pub fn c(&self) -> &FcSet {
        &self.c
    }

    pub fn components(&self) -> [&FcSet; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// `(a∧b) ∨ (a∧c) ∨ (b∧c)`.
    pub fn mu(&self) -> FcSet {
        let ab = &self.a & &self.b;
        let ac = &self.a & &self.c;
        let bc = &self.b & &self.c;
        &(&ab | &ac) | &bc
    }

    pub fn is_balanced(&self) -> bool {
        let ab = &self.a & &self.b;
        ab == &self.a & &self.c && ab == &self.b & &self.c
    }

    /// The least balanced triple above `self`.
    pub fn closure(&self) -> BalancedTriple {
        let m = self.mu();
        BalancedTriple(Triple {
            a: &self.a | &m,
            b: &self.b | &m,
            c: &self.c | &m,
        })
    }

    pub fn leq(&self, other: &Triple) -> Result<bool, SetError> {
        Ok(self.a.is_subset(&other.a)? && self.b.is_subset(&other.b)? && self.c.is_subset(&other.c)?)
    }

    /// Componentwise union.
    pub fn join(&self, other: &Triple) -> Result<Triple, SetError> {
        Triple::new(self.a.union(&other.a)?, self.b.union(&other.b)?, self.c.union(&other.c)?)
    }

    /// Componentwise intersection.
    pub fn meet(&self, other: &Triple) -> Result<Triple, SetError> {
        Triple::new(
            self.a.intersection(&other.a)?,
            self.b.intersection(&other.b)?,
            self.c.intersection(&other.c)?,
        )
    }

    /// Membership in `T`: `c ∖ μ` is finite.
    pub fn in_t(&self) -> bool {
        (&self.c - &self.mu()).is_finite()
    }

    /// Membership in `S`: balanced and in `T`.
    pub fn in_s(&self) -> bool {
        self.is_balanced() && self.in_t()
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {}, {}⟩", self.a, self.b, self.c)
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{:?}, {:?}, {:?}⟩", self.a, self.b, self.c)
    }
}

/// A triple known to be balanced: an element of `M3[F(κ)]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Triple", into = "Triple")]
pub struct BalancedTriple(Triple);

impl TryFrom<Triple> for BalancedTriple {
    type Error = TripleError;

    fn try_from(t: Triple) -> Result<Self, TripleError> {
        BalancedTriple::new(t)
    }
}

impl From<BalancedTriple> for Triple {
    fn from(t: BalancedTriple) -> Self {
        t.0
    }
}

impl std::ops::Deref for BalancedTriple {
    type Target = Triple;

    fn deref(&self) -> &Triple {
        &self.0
    }
}

impl BalancedTriple {
    pub fn new(t: Triple) -> Result<Self, TripleError> {
        if t.is_balanced() {
            Ok(BalancedTriple(t))
        } else {
            Err(TripleError::NotBalanced(t))
        }
    }

    pub fn bottom(universe: Universe) -> Self {
        BalancedTriple(Triple::bottom(universe))
    }

    pub fn top(universe: Universe) -> Self {
        BalancedTriple(Triple::top(universe))
    }

    pub fn diagonal(x: FcSet) -> Self {
        BalancedTriple(Triple::diagonal(x))
    }

    /// Every balanced triple over `Finite(n)`, `5^n` of them.
    pub fn all_over(n: u64) -> Vec<BalancedTriple> {
        Triple::all_over(n)
            .into_iter()
            .filter(Triple::is_balanced)
            .map(BalancedTriple)
            .collect()
    }

    pub fn as_triple(&self) -> &Triple {
        &self.0
    }

    pub fn into_triple(self) -> Triple {
        self.0
    }

    /// Componentwise meet; balanced triples are meet-closed.
    pub fn meet(&self, other: &BalancedTriple) -> Result<BalancedTriple, SetError> {
        let t = self.0.meet(&other.0)?;
        debug_assert!(t.is_balanced());
        Ok(BalancedTriple(t))
    }

    /// Closure of the componentwise join.
    pub fn join(&self, other: &BalancedTriple) -> Result<BalancedTriple, SetError> {
        Ok(self.0.join(&other.0)?.closure())
    }
}

impl fmt::Display for BalancedTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for BalancedTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}
