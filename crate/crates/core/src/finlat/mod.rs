//! Explicit finite bounded lattices.
//!
//! A [`FiniteLattice`] is built from an order matrix; construction verifies
//! that the order is a partial order in which every pair has a meet and a
//! join, and tabulates both operations. Everything else in this module works
//! off those tables: the distributive, modular and Arguesian identities,
//! complements, the `M3[L]` construction, sublattice masks and isomorphism.

mod catalog;
mod iso;

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use catalog::*;
pub use iso::{is_isomorphic, is_isomorphic_with_budget, DEFAULT_ISO_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("order matrix is not {n}×{n}")]
    Shape { n: usize },
    #[error("invalid lattice JSON: {0}")]
    Schema(String),
    #[error("not a poset: {0}")]
    NotAPoset(String),
    #[error("not a lattice: elements {x} and {y} have no {missing}")]
    NotALattice {
        x: usize,
        y: usize,
        missing: &'static str,
    },
    #[error("element index {index} out of range for a lattice of {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("mask is not a bounded sublattice")]
    NotSublattice,
    #[error("lattice has {n} elements, above the limit of {limit} for this search")]
    TooLarge { n: usize, limit: usize },
    #[error("search budget of {budget} steps exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("lattice is not distributive")]
    NotDistributive,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// A finite bounded lattice on the elements `0..n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "LatticeJson", into = "LatticeJson")]
pub struct FiniteLattice {
    n: usize,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

/// `{"n": int, "leq": [[0|1, ...], ...]}`.
#[derive(Serialize, Deserialize)]
struct LatticeJson {
    n: usize,
    leq: Vec<Vec<u8>>,
}

impl TryFrom<LatticeJson> for FiniteLattice {
    type Error = LatticeError;

    fn try_from(j: LatticeJson) -> Result<Self, LatticeError> {
        if j.leq.len() != j.n {
            return Err(LatticeError::Schema(format!(
                "field `leq` has {} rows, expected n = {}",
                j.leq.len(),
                j.n
            )));
        }
        if let Some((i, row)) = j.leq.iter().enumerate().find(|(_, r)| r.len() != j.n) {
            return Err(LatticeError::Schema(format!(
                "field `leq`: row {i} has {} entries, expected {}",
                row.len(),
                j.n
            )));
        }
        let mut rows = Vec::with_capacity(j.leq.len());
        for (i, row) in j.leq.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (k, &v) in row.iter().enumerate() {
                match v {
                    0 => out.push(false),
                    1 => out.push(true),
                    _ => {
                        return Err(LatticeError::Schema(format!(
                            "field `leq`: entry [{i}][{k}] is {v}, expected 0 or 1"
                        )))
                    }
                }
            }
            rows.push(out);
        }
        FiniteLattice::from_order(j.n, &rows)
    }
}

impl From<FiniteLattice> for LatticeJson {
    fn from(l: FiniteLattice) -> Self {
        LatticeJson {
            n: l.n,
            leq: (0..l.n)
                .map(|x| (0..l.n).map(|y| u8::from(l.leq(x, y))).collect())
                .collect(),
        }
    }
}

/// How an identity was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive { cases: u64 },
    Sampled { count: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArguesianCheck {
    pub holds: bool,
    pub mode: CheckMode,
    /// `[a0, a1, a2, b0, b1, b2]` of the first violation found.
    pub counterexample: Option<[usize; 6]>,
}

impl FiniteLattice {
    /// Builds the lattice of a partial order given as a boolean matrix with
    /// `leq[x][y]` meaning `x ≤ y`.
    pub fn from_order(n: usize, leq: &[Vec<bool>]) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(LatticeError::Shape { n });
        }
        let flat: Vec<bool> = leq.iter().flatten().copied().collect();
        Self::from_flat_order(n, flat)
    }

    /// Same as [`from_order`](Self::from_order) with the order given as a
    /// predicate.
    pub fn from_leq_fn(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self, LatticeError> {
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let flat = (0..n * n).map(|k| leq(k / n, k % n)).collect();
        Self::from_flat_order(n, flat)
    }

    fn from_flat_order(n: usize, leq: Vec<bool>) -> Result<Self, LatticeError> {
        let le = |x: usize, y: usize| leq[x * n + y];
        for x in 0..n {
            if !le(x, x) {
                return Err(LatticeError::NotAPoset(format!("{x} ≰ {x}")));
            }
            for y in 0..n {
                if x != y && le(x, y) && le(y, x) {
                    return Err(LatticeError::NotAPoset(format!("{x} ≤ {y} ≤ {x} with {x} ≠ {y}")));
                }
            }
        }
        for x in 0..n {
            for y in (0..n).filter(|&y| le(x, y)) {
                if let Some(z) = (0..n).find(|&z| le(y, z) && !le(x, z)) {
                    return Err(LatticeError::NotAPoset(format!("{x} ≤ {y} ≤ {z} but {x} ≰ {z}")));
                }
            }
        }

        let down: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| le(y, x)).count()).collect();
        let up: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| le(x, y)).count()).collect();
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                // A greatest lower bound, if any, has the largest down-set among
                // the lower bounds; verify it dominates all of them.
                let lower: Vec<usize> = (0..n).filter(|&z| le(z, x) && le(z, y)).collect();
                let m = lower.iter().copied().max_by_key(|&z| down[z]);
                let m = match m {
                    Some(m) if lower.iter().all(|&z| le(z, m)) => m,
                    _ => return Err(LatticeError::NotALattice { x, y, missing: "meet" }),
                };
                let upper: Vec<usize> = (0..n).filter(|&z| le(x, z) && le(y, z)).collect();
                let j = upper.iter().copied().max_by_key(|&z| up[z]);
                let j = match j {
                    Some(j) if upper.iter().all(|&z| le(j, z)) => j,
                    _ => return Err(LatticeError::NotALattice { x, y, missing: "join" }),
                };
                meet[x * n + y] = m;
                meet[y * n + x] = m;
                join[x * n + y] = j;
                join[y * n + x] = j;
            }
        }
        let bottom = (0..n).find(|&x| down[x] == 1 && up[x] == n).ok_or(LatticeError::Internal(
            "pairwise meets exist but no bottom".into(),
        ))?;
        let top = (0..n).find(|&x| up[x] == 1 && down[x] == n).ok_or(LatticeError::Internal(
            "pairwise joins exist but no top".into(),
        ))?;
        let lattice = FiniteLattice {
            n,
            leq,
            meet,
            join,
            bottom,
            top,
        };
        if n <= 64 {
            lattice.check_laws()?;
        }
        Ok(lattice)
    }

    /// Commutativity, associativity and absorption of the tables.
    fn check_laws(&self) -> Result<(), LatticeError> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let (m, j) = (self.meet(x, y), self.join(x, y));
                if m != self.meet(y, x) || j != self.join(y, x) {
                    return Err(LatticeError::Internal(format!("tables not commutative at {x},{y}")));
                }
                if self.meet(x, j) != x || self.join(x, m) != x {
                    return Err(LatticeError::Internal(format!("absorption fails at {x},{y}")));
                }
                for z in 0..n {
                    if self.meet(m, z) != self.meet(x, self.meet(y, z))
                        || self.join(j, z) != self.join(x, self.join(y, z))
                    {
                        return Err(LatticeError::Internal(format!("associativity fails at {x},{y},{z}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.n + y]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.n + y]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn check_index(&self, index: usize) -> Result<(), LatticeError> {
        if index < self.n {
            Ok(())
        } else {
            Err(LatticeError::IndexOutOfRange { index, n: self.n })
        }
    }

    /// Pairs `(x, y)` with `y` covering `x`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if x != y
                    && self.leq(x, y)
                    && !(0..self.n).any(|z| z != x && z != y && self.leq(x, z) && self.leq(z, y))
                {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Hasse diagram in DOT, bottom drawn lowest.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph lattice {\n  rankdir=BT;\n");
        for x in 0..self.n {
            let _ = writeln!(s, "  {x} [label=\"{x}\"];");
        }
        for (x, y) in self.covers() {
            let _ = writeln!(s, "  {x} -> {y};");
        }
        s.push_str("}\n");
        s
    }

    /// Length of the longest chain from the bottom to each element.
    pub fn heights(&self) -> Vec<usize> {
        let covers = self.covers();
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&x| (0..self.n).filter(|&y| self.leq(y, x)).count());
        let mut h = vec![0; self.n];
        for &y in &order {
            h[y] = covers
                .iter()
                .filter(|&&(_, t)| t == y)
                .map(|&(x, _)| h[x] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))
                })
            })
        })
    }

    /// `x ≤ z ⇒ x ∨ (y ∧ z) = (x ∨ y) ∧ z`.
    pub fn is_modular(&self) -> bool {
        self.modular_violation().is_none()
    }

    /// First `(x, y, z)` with `x ≤ z` and `x ∨ (y ∧ z) ≠ (x ∨ y) ∧ z`.
    pub fn modular_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for x in 0..n {
            for z in (0..n).filter(|&z| self.leq(x, z)) {
                for y in 0..n {
                    if self.join(x, self.meet(y, z)) != self.meet(self.join(x, y), z) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn complements(&self, x: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&y| self.meet(x, y) == self.bottom && self.join(x, y) == self.top)
            .collect()
    }

    pub fn is_complemented(&self) -> bool {
        (0..self.n).all(|x| !self.complements(x).is_empty())
    }

    pub fn is_uniquely_complemented(&self) -> bool {
        (0..self.n).all(|x| self.complements(x).len() == 1)
    }

    pub fn is_boolean(&self) -> bool {
        self.is_distributive() && self.is_uniquely_complemented()
    }

    /// Checks
    /// `(a0∨b0)∧(a1∨b1)∧(a2∨b2) ≤ ((c∨a1)∧a0) ∨ ((c∨b1)∧b0)` where
    /// `ci = (aj∨ak)∧(bj∨bk)` for `{i,j,k} = {0,1,2}` and `c = c2∧(c0∨c1)`.
    ///
    /// All `n^6` tuples are visited when that is at most `sample_budget`;
    /// otherwise `sample_budget` tuples are drawn uniformly with `seed`.
    pub fn is_arguesian(&self, sample_budget: u64, seed: u64) -> ArguesianCheck {
        let n = self.n as u64;
        let total = n.checked_pow(6);
        match total {
            Some(total) if total <= sample_budget => ArguesianCheck {
                holds: true,
                mode: CheckMode::Exhaustive { cases: total },
                counterexample: None,
            }
            .with_violation(self.arguesian_exhaustive()),
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut violation = None;
                for _ in 0..sample_budget {
                    let mut t = [0usize; 6];
                    for v in &mut t {
                        *v = rng.gen_range(0..self.n);
                    }
                    if !self.arguesian_holds_at(t) {
                        violation = Some(t);
                        break;
                    }
                }
                ArguesianCheck {
                    holds: true,
                    mode: CheckMode::Sampled {
                        count: sample_budget,
                        seed,
                    },
                    counterexample: None,
                }
                .with_violation(violation)
            }
        }
    }

    /// Evaluates the Arguesian inequality at `[a0, a1, a2, b0, b1, b2]`.
    pub fn arguesian_holds_at(&self, [a0, a1, a2, b0, b1, b2]: [usize; 6]) -> bool {
        let (m, j) = (|x, y| self.meet(x, y), |x, y| self.join(x, y));
        let lhs = m(m(j(a0, b0), j(a1, b1)), j(a2, b2));
        let c0 = m(j(a1, a2), j(b1, b2));
        let c1 = m(j(a0, a2), j(b0, b2));
        let c2 = m(j(a0, a1), j(b0, b1));
        let c = m(c2, j(c0, c1));
        let rhs = j(m(j(c, a1), a0), m(j(c, b1), b0));
        self.leq(lhs, rhs)
    }

    fn arguesian_exhaustive(&self) -> Option<[usize; 6]> {
        let n = self.n;
        let (m, j) = (|x, y| self.meet(x, y), |x, y| self.join(x, y));
        for a0 in 0..n {
            for b0 in 0..n {
                let ab0 = j(a0, b0);
                for a1 in 0..n {
                    let a01 = j(a0, a1);
                    for b1 in 0..n {
                        let x1 = m(ab0, j(a1, b1));
                        if x1 == self.bottom {
                            continue;
                        }
                        let c2 = m(a01, j(b0, b1));
                        for a2 in 0..n {
                            let (a12, a02) = (j(a1, a2), j(a0, a2));
                            for b2 in 0..n {
                                let lhs = m(x1, j(a2, b2));
                                let c0 = m(a12, j(b1, b2));
                                let c1 = m(a02, j(b0, b2));
                                let c = m(c2, j(c0, c1));
                                let rhs = j(m(j(c, a1), a0), m(j(c, b1), b0));
                                if !self.leq(lhs, rhs) {
                                    return Some([a0, a1, a2, b0, b1, b2]);
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// The lattice with elements renamed by `perm`: old element `x` becomes
    /// `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<FiniteLattice, LatticeError> {
        let n = self.n;
        let mut inv = vec![usize::MAX; n];
        if perm.len() != n {
            return Err(LatticeError::Shape { n });
        }
        for (x, &p) in perm.iter().enumerate() {
            self.check_index(p)?;
            inv[p] = x;
        }
        if inv.contains(&usize::MAX) {
            return Err(LatticeError::Internal("relabeling is not a permutation".into()));
        }
        FiniteLattice::from_leq_fn(n, |x, y| self.leq(inv[x], inv[y]))
    }

    /// Direct product, element `(x, y)` numbered `x * other.n + y`.
    pub fn product(&self, other: &FiniteLattice) -> FiniteLattice {
        let m = other.n;
        FiniteLattice::from_leq_fn(self.n * m, |p, q| {
            self.leq(p / m, q / m) && other.leq(p % m, q % m)
        })
        .expect("product of lattices is a lattice")
    }

    /// Whether `mask` contains both bounds and is closed under meet and join.
    pub fn is_sublattice(&self, mask: &BTreeSet<usize>) -> bool {
        if mask.iter().any(|&x| x >= self.n) {
            return false;
        }
        mask.contains(&self.bottom)
            && mask.contains(&self.top)
            && mask.iter().all(|&x| {
                mask.iter()
                    .all(|&y| mask.contains(&self.meet(x, y)) && mask.contains(&self.join(x, y)))
            })
    }

    /// The bounded sublattice on `mask` as a lattice in its own right. Its
    /// element `i` is the `i`-th smallest member of `mask`.
    pub fn induced(&self, mask: &BTreeSet<usize>) -> Result<FiniteLattice, LatticeError> {
        if !self.is_sublattice(mask) {
            return Err(LatticeError::NotSublattice);
        }
        let members: Vec<usize> = mask.iter().copied().collect();
        FiniteLattice::from_leq_fn(members.len(), |i, j| self.leq(members[i], members[j]))
    }

    /// Whether `mask` is a bounded sublattice that is Boolean.
    pub fn is_boolean_sublattice(&self, mask: &BTreeSet<usize>) -> bool {
        if !self.is_sublattice(mask) {
            return false;
        }
        let members: Vec<usize> = mask.iter().copied().collect();
        let distributive = members.iter().all(|&x| {
            members.iter().all(|&y| {
                members.iter().all(|&z| {
                    self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))
                })
            })
        });
        distributive
            && members.iter().all(|&x| {
                members
                    .iter()
                    .filter(|&&y| self.meet(x, y) == self.bottom && self.join(x, y) == self.top)
                    .count()
                    == 1
            })
    }

    /// Every Boolean bounded sublattice strictly containing `mask`, in order
    /// of the bitmask of added elements. An empty result certifies that
    /// `mask` is a maximal Boolean sublattice when it is Boolean itself.
    pub fn maximal_boolean_extensions(
        &self,
        mask: &BTreeSet<usize>,
    ) -> Result<Vec<BTreeSet<usize>>, LatticeError> {
        const LIMIT: usize = 16;
        if self.n > LIMIT {
            return Err(LatticeError::TooLarge { n: self.n, limit: LIMIT });
        }
        for &x in mask {
            self.check_index(x)?;
        }
        let rest: Vec<usize> = (0..self.n).filter(|x| !mask.contains(x)).collect();
        let mut out = Vec::new();
        for bits in 1u32..1 << rest.len() {
            let mut cand = mask.clone();
            cand.extend(rest.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, &x)| x));
            if self.is_boolean_sublattice(&cand) {
                out.push(cand);
            }
        }
        Ok(out)
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let covers = self.covers();
        (0..self.n)
            .filter(|&x| covers.iter().filter(|&&(_, y)| y == x).count() == 1)
            .collect()
    }

    /// For a distributive lattice, the map sending `x` to the set of (positions
    /// in [`join_irreducibles`](Self::join_irreducibles) of) join-irreducibles
    /// below `x`. This is a bounded lattice embedding into the power set of
    /// the join-irreducibles.
    pub fn birkhoff_embedding(&self) -> Result<Vec<BTreeSet<usize>>, LatticeError> {
        if !self.is_distributive() {
            return Err(LatticeError::NotDistributive);
        }
        let ji = self.join_irreducibles();
        Ok((0..self.n)
            .map(|x| {
                ji.iter()
                    .enumerate()
                    .filter(|&(_, &j)| self.leq(j, x))
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect())
    }

    /// All balanced triples `⟨a, b, c⟩` (with `a∧b = a∧c = b∧c`) in
    /// lexicographic order. This is the element numbering of
    /// [`m3_of`](Self::m3_of).
    pub fn balanced_triples(&self) -> Vec<[usize; 3]> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let ab = self.meet(a, b);
                for c in 0..n {
                    if ab == self.meet(a, c) && ab == self.meet(b, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// `M3[L]`: balanced triples ordered componentwise.
    ///
    /// Meets are componentwise. The join of two balanced triples is taken as
    /// the meet of all balanced triples above their componentwise join, which
    /// is valid for every finite lattice. When `L` is distributive the result
    /// is cross-checked against the closure formula `⟨a∨μ, b∨μ, c∨μ⟩`.
    pub fn m3_of(&self) -> Result<FiniteLattice, LatticeError> {
        let triples = self.balanced_triples();
        let index: HashMap<[usize; 3], usize> =
            triples.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let le3 = |s: [usize; 3], t: [usize; 3]| (0..3).all(|k| self.leq(s[k], t[k]));
        let m = triples.len();
        let lattice = FiniteLattice::from_leq_fn(m, |i, j| le3(triples[i], triples[j]))?;

        let distributive = self.is_distributive();
        let top = index[&[self.top; 3]];
        for i in 0..m {
            for j in i..m {
                let (s, t) = (triples[i], triples[j]);
                let meet3 = [0, 1, 2].map(|k| self.meet(s[k], t[k]));
                if index.get(&meet3) != Some(&lattice.meet(i, j)) {
                    return Err(LatticeError::Internal(format!("componentwise meet of {s:?}, {t:?}")));
                }
                let join3 = [0, 1, 2].map(|k| self.join(s[k], t[k]));
                let by_upper_bounds = (0..m)
                    .filter(|&u| le3(join3, triples[u]))
                    .fold(top, |acc, u| lattice.meet(acc, u));
                if by_upper_bounds != lattice.join(i, j) {
                    return Err(LatticeError::Internal(format!("join of {s:?}, {t:?}")));
                }
                if distributive {
                    let [a, b, c] = join3;
                    let mu = self.join(self.join(self.meet(a, b), self.meet(a, c)), self.meet(b, c));
                    let closed = [a, b, c].map(|x| self.join(x, mu));
                    if index.get(&closed) != Some(&by_upper_bounds) {
                        return Err(LatticeError::Internal(format!(
                            "closure join disagrees with upper-bound join for {s:?}, {t:?}"
                        )));
                    }
                }
            }
        }
        Ok(lattice)
    }
}

impl ArguesianCheck {
    fn with_violation(mut self, violation: Option<[usize; 6]>) -> Self {
        self.holds = violation.is_none();
        self.counterexample = violation;
        self
    }
}
