//! Exact algebra of finite-or-cofinite subsets of an index universe.
//!
//! An [`FcSet`] is either a finite set of indices or the complement of one.
//! Over a countably infinite universe these form the Boolean lattice of
//! finite-cofinite sets; over a finite universe `{0, .., n-1}` every subset is
//! finite, so the algebra is the full power set.
//!
//! Values are kept canonical so that structural equality is set equality:
//!
//! * in a `Finite(n)` universe the tag is always [`Tag::Fin`];
//! * in the countably infinite universe the tag records whether the set itself
//!   or its complement is finite, which is never both.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The index set every [`FcSet`] lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "UniverseRepr", into = "UniverseRepr")]
pub enum Universe {
    /// The natural numbers.
    CountablyInfinite,
    /// `{0, .., n-1}`.
    Finite(u64),
}

#[derive(Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum UniverseRepr {
    Omega,
    Finite(u64),
}

impl From<UniverseRepr> for Universe {
    fn from(r: UniverseRepr) -> Self {
        match r {
            UniverseRepr::Omega => Universe::CountablyInfinite,
            UniverseRepr::Finite(n) => Universe::Finite(n),
        }
    }
}

impl From<Universe> for UniverseRepr {
    fn from(u: Universe) -> Self {
        match u {
            Universe::CountablyInfinite => UniverseRepr::Omega,
            Universe::Finite(n) => UniverseRepr::Finite(n),
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Universe::CountablyInfinite => write!(f, "omega"),
            Universe::Finite(n) => write!(f, "finite({n})"),
        }
    }
}

impl Universe {
    pub fn is_finite(self) -> bool {
        matches!(self, Universe::Finite(_))
    }

    pub fn check_same(self, other: Universe) -> Result<(), SetError> {
        if self == other {
            Ok(())
        } else {
            Err(SetError::UniverseMismatch {
                left: self,
                right: other,
            })
        }
    }

    /// Every subset of a finite universe, ordered by bitmask.
    ///
    /// Panics on the infinite universe or when `n >= 64`.
    pub fn all_subsets(self) -> Vec<FcSet> {
        let n = match self {
            Universe::Finite(n) => n,
            Universe::CountablyInfinite => panic!("cannot enumerate subsets of an infinite universe"),
        };
        assert!(n < 64, "universe too large to enumerate");
        (0..1u64 << n)
            .map(|mask| FcSet::from_mask(self, Tag::Fin, mask))
            .collect()
    }
}

/// Whether the stored support is the set itself or its complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    Fin,
    Cofin,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("universe mismatch: {left} vs {right}")]
    UniverseMismatch { left: Universe, right: Universe },
    #[error("index {index} lies outside the finite universe of size {size}")]
    IndexOutOfRange { index: u64, size: u64 },
}

/// A finite or cofinite subset of a [`Universe`], in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "FcSetRepr", into = "FcSetRepr")]
pub struct FcSet {
    universe: Universe,
    tag: Tag,
    support: BTreeSet<u64>,
}

#[derive(Serialize, Deserialize)]
struct FcSetRepr {
    universe: Universe,
    tag: Tag,
    support: Vec<u64>,
}

impl TryFrom<FcSetRepr> for FcSet {
    type Error = SetError;

    fn try_from(r: FcSetRepr) -> Result<Self, SetError> {
        FcSet::new(r.universe, r.tag, r.support)
    }
}

impl From<FcSet> for FcSetRepr {
    fn from(s: FcSet) -> Self {
        FcSetRepr {
            universe: s.universe,
            tag: s.tag,
            support: s.support.into_iter().collect(),
        }
    }
}

impl FcSet {
    /// Builds a set from a tag and support, validating indices against a
    /// finite universe and normalizing to canonical form.
    pub fn new(
        universe: Universe,
        tag: Tag,
        support: impl IntoIterator<Item = u64>,
    ) -> Result<Self, SetError> {
        let support: BTreeSet<u64> = support.into_iter().collect();
        if let Universe::Finite(size) = universe {
            if let Some(&index) = support.iter().next_back().filter(|&&i| i >= size) {
                return Err(SetError::IndexOutOfRange { index, size });
            }
        }
        Ok(Self::canonical(universe, tag, support))
    }

    pub fn finite(universe: Universe, support: impl IntoIterator<Item = u64>) -> Result<Self, SetError> {
        Self::new(universe, Tag::Fin, support)
    }

    pub fn cofinite(universe: Universe, support: impl IntoIterator<Item = u64>) -> Result<Self, SetError> {
        Self::new(universe, Tag::Cofin, support)
    }

    pub fn empty(universe: Universe) -> Self {
        Self::canonical(universe, Tag::Fin, BTreeSet::new())
    }

    pub fn full(universe: Universe) -> Self {
        Self::canonical(universe, Tag::Cofin, BTreeSet::new())
    }

    pub fn singleton(universe: Universe, index: u64) -> Result<Self, SetError> {
        Self::finite(universe, [index])
    }

    /// Support given by the low bits of `mask`. Indices must already be valid.
    pub(crate) fn from_mask(universe: Universe, tag: Tag, mask: u64) -> Self {
        let support = (0..64).filter(|i| mask >> i & 1 == 1).collect();
        Self::canonical(universe, tag, support)
    }

    /// `Fin(S)` for every `S ⊆ [0, bound)` by increasing bitmask, then
    /// `Cofin(S)` in the same order. Over the infinite universe this is the
    /// standard candidate family for bounded searches; over `Finite(n)` only
    /// the `Fin` half is produced and `bound` must not exceed `n`.
    pub fn bounded_family(universe: Universe, bound: u32) -> Vec<FcSet> {
        assert!(bound < 32, "search bound too large");
        let tags: &[Tag] = match universe {
            Universe::Finite(n) => {
                assert!(u64::from(bound) <= n, "bound exceeds finite universe");
                &[Tag::Fin]
            }
            Universe::CountablyInfinite => &[Tag::Fin, Tag::Cofin],
        };
        tags.iter()
            .flat_map(|&tag| (0..1u64 << bound).map(move |mask| Self::from_mask(universe, tag, mask)))
            .collect()
    }

    fn canonical(universe: Universe, tag: Tag, support: BTreeSet<u64>) -> Self {
        match (universe, tag) {
            (Universe::Finite(n), Tag::Cofin) => FcSet {
                universe,
                tag: Tag::Fin,
                support: (0..n).filter(|i| !support.contains(i)).collect(),
            },
            _ => FcSet {
                universe,
                tag,
                support,
            },
        }
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    /// The set itself when finite, its complement when cofinite.
    pub fn support(&self) -> &BTreeSet<u64> {
        &self.support
    }

    pub fn contains(&self, index: u64) -> bool {
        match self.tag {
            Tag::Fin => self.support.contains(&index),
            Tag::Cofin => !self.support.contains(&index),
        }
    }

    /// True for every set of a finite universe.
    pub fn is_finite(&self) -> bool {
        self.universe.is_finite() || self.tag == Tag::Fin
    }

    /// True for every set of a finite universe.
    pub fn is_cofinite(&self) -> bool {
        self.universe.is_finite() || self.tag == Tag::Cofin
    }

    pub fn is_empty(&self) -> bool {
        self.tag == Tag::Fin && self.support.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.universe)
    }

    /// Least member, if any.
    pub fn min_element(&self) -> Option<u64> {
        match self.tag {
            Tag::Fin => self.support.iter().next().copied(),
            Tag::Cofin => (0..).find(|i| !self.support.contains(i)),
        }
    }

    pub fn union(&self, other: &FcSet) -> Result<FcSet, SetError> {
        self.universe.check_same(other.universe)?;
        let (tag, support) = match (self.tag, other.tag) {
            (Tag::Fin, Tag::Fin) => (Tag::Fin, &self.support | &other.support),
            (Tag::Fin, Tag::Cofin) => (Tag::Cofin, &other.support - &self.support),
            (Tag::Cofin, Tag::Fin) => (Tag::Cofin, &self.support - &other.support),
            (Tag::Cofin, Tag::Cofin) => (Tag::Cofin, &self.support & &other.support),
        };
        Ok(Self::canonical(self.universe, tag, support))
    }

    pub fn intersection(&self, other: &FcSet) -> Result<FcSet, SetError> {
        self.universe.check_same(other.universe)?;
        let (tag, support) = match (self.tag, other.tag) {
            (Tag::Fin, Tag::Fin) => (Tag::Fin, &self.support & &other.support),
            (Tag::Fin, Tag::Cofin) => (Tag::Fin, &self.support - &other.support),
            (Tag::Cofin, Tag::Fin) => (Tag::Fin, &other.support - &self.support),
            (Tag::Cofin, Tag::Cofin) => (Tag::Cofin, &self.support | &other.support),
        };
        Ok(Self::canonical(self.universe, tag, support))
    }

    pub fn complement(&self) -> FcSet {
        match self.tag {
            Tag::Fin => Self::canonical(self.universe, Tag::Cofin, self.support.clone()),
            Tag::Cofin => Self::canonical(self.universe, Tag::Fin, self.support.clone()),
        }
    }

    pub fn difference(&self, other: &FcSet) -> Result<FcSet, SetError> {
        self.universe.check_same(other.universe)?;
        self.intersection(&other.complement())
    }

    pub fn sym_diff(&self, other: &FcSet) -> Result<FcSet, SetError> {
        self.difference(other)?.union(&other.difference(self)?)
    }

    pub fn is_subset(&self, other: &FcSet) -> Result<bool, SetError> {
        Ok(self.difference(other)?.is_empty())
    }

    /// `A ∼ C`: the pair is finite or co-finite. The symmetric-difference
    /// characterization is evaluated as well and must agree.
    pub fn sim(&self, other: &FcSet) -> Result<bool, SetError> {
        let by_pair = (self.is_finite() && other.is_finite())
            || (self.is_cofinite() && other.is_cofinite());
        let by_sym_diff = self.sym_diff(other)?.is_finite();
        assert_eq!(
            by_pair, by_sym_diff,
            "sim characterizations disagree on {self} and {other}"
        );
        Ok(by_pair)
    }
}

impl fmt::Display for FcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.tag {
            Tag::Fin => "Fin",
            Tag::Cofin => "Cofin",
        };
        write!(f, "{name}{{")?;
        for (k, i) in self.support.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for FcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Universe::Finite(n) = self.universe {
            write!(f, "{self}@{n}")
        } else {
            write!(f, "{self}")
        }
    }
}

// Operator forms panic on universe mismatch; use the named methods when the
// universes are not already known to agree.

impl BitOr for &FcSet {
    type Output = FcSet;
    fn bitor(self, rhs: &FcSet) -> FcSet {
        self.union(rhs).expect("union across universes")
    }
}

impl BitAnd for &FcSet {
    type Output = FcSet;
    fn bitand(self, rhs: &FcSet) -> FcSet {
        self.intersection(rhs).expect("intersection across universes")
    }
}

impl Sub for &FcSet {
    type Output = FcSet;
    fn sub(self, rhs: &FcSet) -> FcSet {
        self.difference(rhs).expect("difference across universes")
    }
}

impl Not for &FcSet {
    type Output = FcSet;
    fn not(self) -> FcSet {
        self.complement()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const W: Universe = Universe::CountablyInfinite;

    fn fin(s: &[u64]) -> FcSet {
        FcSet::finite(W, s.iter().copied()).unwrap()
    }

    fn cofin(s: &[u64]) -> FcSet {
        FcSet::cofinite(W, s.iter().copied()).unwrap()
    }

    #[test]
    fn union_examples() {
        assert_eq!(fin(&[0, 1]).union(&fin(&[1, 2])).unwrap(), fin(&[0, 1, 2]));
        for x in [fin(&[3]), cofin(&[1, 4]), fin(&[])] {
            assert_eq!(fin(&[]).union(&x).unwrap(), x);
        }
        let top = cofin(&[0]).union(&fin(&[0])).unwrap();
        assert_eq!(top, cofin(&[]));
        assert!(top.is_full());
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(cofin(&[0]).intersection(&fin(&[0, 2])).unwrap(), fin(&[2]));
        for x in [fin(&[3]), cofin(&[1, 4])] {
            assert_eq!(x.intersection(&cofin(&[])).unwrap(), x);
        }
        assert_eq!(cofin(&[0]).intersection(&cofin(&[1])).unwrap(), cofin(&[0, 1]));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(fin(&[0, 1]).complement(), cofin(&[0, 1]));
        assert_eq!(cofin(&[]).complement(), fin(&[]));
        let u3 = Universe::Finite(3);
        let c = FcSet::finite(u3, [0]).unwrap().complement();
        assert_eq!(c, FcSet::finite(u3, [1, 2]).unwrap());
        assert_eq!(c.tag(), Tag::Fin);
    }

    #[test]
    fn difference_and_predicates() {
        assert_eq!(cofin(&[]).difference(&fin(&[0])).unwrap(), cofin(&[0]));
        assert!(!cofin(&[5]).is_finite());
        assert!(cofin(&[5]).is_cofinite());
        assert!(fin(&[1]).is_subset(&cofin(&[0])).unwrap());
        assert!(!cofin(&[0]).is_subset(&fin(&[1])).unwrap());
        let u2 = Universe::Finite(2);
        let s = FcSet::finite(u2, [1]).unwrap();
        assert!(s.is_finite() && s.is_cofinite());
    }

    #[test]
    fn sim_examples() {
        assert!(fin(&[0, 1]).sim(&fin(&[7])).unwrap());
        assert!(!cofin(&[]).sim(&fin(&[])).unwrap());
        assert!(cofin(&[0]).sim(&cofin(&[3, 4])).unwrap());
    }

    #[test]
    fn universe_mismatch_is_rejected() {
        let a = FcSet::finite(Universe::Finite(3), [0]).unwrap();
        let b = fin(&[0]);
        assert!(matches!(a.union(&b), Err(SetError::UniverseMismatch { .. })));
        assert!(matches!(a.intersection(&b), Err(SetError::UniverseMismatch { .. })));
        assert!(matches!(a.sim(&b), Err(SetError::UniverseMismatch { .. })));
        assert!(matches!(a.is_subset(&b), Err(SetError::UniverseMismatch { .. })));
    }

    #[test]
    fn index_out_of_range_is_rejected() {
        assert_eq!(
            FcSet::finite(Universe::Finite(3), [3]),
            Err(SetError::IndexOutOfRange { index: 3, size: 3 })
        );
    }

    #[test]
    fn finite_universe_cofin_is_normalized() {
        let u = Universe::Finite(4);
        let a = FcSet::cofinite(u, [1, 3]).unwrap();
        assert_eq!(a.tag(), Tag::Fin);
        assert_eq!(a, FcSet::finite(u, [0, 2]).unwrap());
        assert!(FcSet::full(u).is_full());
        assert_eq!(FcSet::full(u).support().len(), 4);
    }

    #[test]
    fn min_element() {
        assert_eq!(fin(&[4, 2]).min_element(), Some(2));
        assert_eq!(cofin(&[0, 1, 3]).min_element(), Some(2));
        assert_eq!(fin(&[]).min_element(), None);
    }

    #[test]
    fn json_shape() {
        let s = cofin(&[2, 0]);
        let j = serde_json::to_value(&s).unwrap();
        assert_eq!(
            j,
            serde_json::json!({"universe": "omega", "tag": "cofin", "support": [0, 2]})
        );
        let f: FcSet =
            serde_json::from_value(serde_json::json!({"universe": {"finite": 3}, "tag": "cofin", "support": [0]}))
                .unwrap();
        assert_eq!(f, FcSet::finite(Universe::Finite(3), [1, 2]).unwrap());
        let bad = serde_json::from_value::<FcSet>(
            serde_json::json!({"universe": {"finite": 2}, "tag": "fin", "support": [5]}),
        );
        assert!(bad.is_err());
    }

    #[test]
    fn bounded_family_sizes() {
        assert_eq!(FcSet::bounded_family(W, 3).len(), 16);
        assert_eq!(FcSet::bounded_family(Universe::Finite(3), 3).len(), 8);
    }
}
