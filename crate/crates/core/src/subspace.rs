//! Subspaces of finite-dimensional vector spaces over a prime field, and the
//! embedding of balanced triples of subsets into a subspace lattice.
//!
//! The presented space for `n` indices has basis `x_0, y_0, .., x_{n-1},
//! y_{n-1}` (coordinates `2α` and `2α+1`) and `z_α = -x_α - y_α`, so
//! `x_α + y_α + z_α = 0` holds by construction.
//!
//! `F⟨A,B,C⟩ = span{x_α : α∈A} + span{y_β : β∈B} + span{z_γ : γ∈C}` and
//! `G(W) = ⟨{α : x_α∈W}, {β : y_β∈W}, {γ : z_γ∈W}⟩`; `F(t) ⊆ W` iff
//! `t ≤ G(W)`, and `G∘F` is the balancing closure.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finlat::{CheckMode, FiniteLattice, LatticeError};
use crate::setalg::{FcSet, Universe};
use crate::triples::{BalancedTriple, Triple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubspaceError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("subspaces live in different spaces")]
    SpaceMismatch,
    #[error("vector has length {got}, space has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("triple lives in universe {got}, space is presented on {expected} indices")]
    UniverseMismatch { expected: usize, got: Universe },
    #[error("triple {0} is not balanced")]
    NotBalanced(Triple),
    #[error("space has {size} vectors, above the enumeration limit {limit}")]
    TooLarge { size: u128, limit: u128 },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `GF(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, SubspaceError> {
        let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if prime && p < 1 << 31 {
            Ok(PrimeField { p })
        } else {
            Err(SubspaceError::NotPrime(p))
        }
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn reduce(self, x: u64) -> u64 {
        x % self.p
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn neg(self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(self, a: u64) -> u64 {
        assert!(a % self.p != 0, "zero has no inverse");
        let (mut base, mut exp, mut acc) = (a % self.p, self.p - 2, 1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

/// `GF(p)^dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VectorSpace {
    pub field: PrimeField,
    pub dim: usize,
}

impl VectorSpace {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        VectorSpace { field, dim }
    }

    pub fn unit(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn zero_subspace(&self) -> Subspace {
        Subspace {
            space: *self,
            rows: Vec::new(),
        }
    }

    pub fn whole(&self) -> Subspace {
        Subspace {
            space: *self,
            rows: (0..self.dim).map(|i| self.unit(i)).collect(),
        }
    }
}

/// Brings `rows` to reduced row echelon form in place and drops zero rows.
fn rref(field: PrimeField, rows: &mut Vec<Vec<u64>>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(r) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = field.inv(rows[pivot_row][col]);
        for v in rows[pivot_row].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot = rows[pivot_row].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            let factor = row[col];
            if k != pivot_row && factor != 0 {
                for (x, &p) in row.iter_mut().zip(&pivot) {
                    *x = field.sub(*x, field.mul(factor, p));
                }
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
}

/// A subspace stored as its reduced row echelon basis, so equal subspaces
/// have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SubspaceJson", into = "SubspaceJson")]
pub struct Subspace {
    space: VectorSpace,
    rows: Vec<Vec<u64>>,
}

/// `{"modulus": p, "dim": d, "basis": [[..], ..]}`, basis in canonical form.
#[derive(Serialize, Deserialize)]
struct SubspaceJson {
    modulus: u64,
    dim: usize,
    basis: Vec<Vec<u64>>,
}

impl TryFrom<SubspaceJson> for Subspace {
    type Error = SubspaceError;

    fn try_from(j: SubspaceJson) -> Result<Self, SubspaceError> {
        let space = VectorSpace::new(PrimeField::new(j.modulus)?, j.dim);
        Subspace::span(&space, &j.basis)
    }
}

impl From<Subspace> for SubspaceJson {
    fn from(s: Subspace) -> Self {
        SubspaceJson {
            modulus: s.space.field.modulus(),
            dim: s.space.dim,
            basis: s.rows,
        }
    }
}

impl Subspace {
    pub fn span(space: &VectorSpace, vectors: &[Vec<u64>]) -> Result<Subspace, SubspaceError> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != space.dim {
                return Err(SubspaceError::DimensionMismatch {
                    expected: space.dim,
                    got: v.len(),
                });
            }
            rows.push(v.iter().map(|&x| space.field.reduce(x)).collect());
        }
        rref(space.field, &mut rows);
        Ok(Subspace { space: *space, rows })
    }

    pub fn space(&self) -> &VectorSpace {
        &self.space
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn same_space(&self, other: &Subspace) -> Result<(), SubspaceError> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(SubspaceError::SpaceMismatch)
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        self.same_space(other)?;
        let all: Vec<Vec<u64>> = self.rows.iter().chain(&other.rows).cloned().collect();
        Subspace::span(&self.space, &all)
    }

    /// Zassenhaus: reduce the block matrix `[U U; W 0]`; the rows whose left
    /// half vanishes carry a basis of `U ∩ W` in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        self.same_space(other)?;
        let d = self.space.dim;
        let mut block: Vec<Vec<u64>> = self
            .rows
            .iter()
            .map(|u| u.iter().chain(u).copied().collect())
            .chain(other.rows.iter().map(|w| w.iter().copied().chain(std::iter::repeat(0).take(d)).collect()))
            .collect();
        rref(self.space.field, &mut block);
        let inter: Vec<Vec<u64>> = block
            .into_iter()
            .filter(|row| row[..d].iter().all(|&x| x == 0))
            .map(|row| row[d..].to_vec())
            .collect();
        Subspace::span(&self.space, &inter)
    }

    pub fn contains(&self, v: &[u64]) -> Result<bool, SubspaceError> {
        let extended = self.sum(&Subspace::span(&self.space, &[v.to_vec()])?)?;
        Ok(extended.dim() == self.dim())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, SubspaceError> {
        Ok(other.sum(self)?.dim() == other.dim())
    }
}

/// Every subspace of `space`, sorted, found by closing `{0}` under adding one
/// vector at a time. Limited to spaces with at most 4096 vectors.
pub fn all_subspaces(space: &VectorSpace) -> Result<Vec<Subspace>, SubspaceError> {
    const LIMIT: u128 = 4096;
    let size = u128::from(space.field.modulus()).pow(space.dim as u32);
    if size > LIMIT {
        return Err(SubspaceError::TooLarge { size, limit: LIMIT });
    }
    let p = space.field.modulus();
    let vectors: Vec<Vec<u64>> = (0..size as u64)
        .map(|mut k| {
            (0..space.dim)
                .map(|_| {
                    let digit = k % p;
                    k /= p;
                    digit
                })
                .collect()
        })
        .collect();
    let mut seen = BTreeSet::from([space.zero_subspace()]);
    let mut queue = VecDeque::from([space.zero_subspace()]);
    while let Some(w) = queue.pop_front() {
        for v in &vectors {
            let bigger = w.sum(&Subspace::span(space, std::slice::from_ref(v))?)?;
            if seen.insert(bigger.clone()) {
                queue.push_back(bigger);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// `Sub(space)` as an explicit lattice, element `i` being the `i`-th entry of
/// the returned list.
pub fn subspace_lattice(space: &VectorSpace) -> Result<(FiniteLattice, Vec<Subspace>), SubspaceError> {
    let subs = all_subspaces(space)?;
    let lattice = FiniteLattice::from_leq_fn(subs.len(), |i, j| {
        subs[i].is_subspace_of(&subs[j]).expect("same space")
    })?;
    Ok((lattice, subs))
}

/// The space spanned by `x_α, y_α, z_α` for `α < n` subject to
/// `x_α + y_α + z_α = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PresentedSpace {
    n: usize,
    space: VectorSpace,
}

/// What went wrong in [`PresentedSpace::check_embedding`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingFailure {
    Bounds,
    Meet { s: Triple, t: Triple },
    Join { s: Triple, t: Triple },
    NotInjective { s: Triple, t: Triple },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub holds: bool,
    pub mode: CheckMode,
    pub failure: Option<EmbeddingFailure>,
}

impl PresentedSpace {
    pub fn new(n: usize, field: PrimeField) -> Self {
        PresentedSpace {
            n,
            space: VectorSpace::new(field, 2 * n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> &VectorSpace {
        &self.space
    }

    pub fn universe(&self) -> Universe {
        Universe::Finite(self.n as u64)
    }

    pub fn x(&self, alpha: usize) -> Vec<u64> {
        self.space.unit(2 * alpha)
    }

    pub fn y(&self, alpha: usize) -> Vec<u64> {
        self.space.unit(2 * alpha + 1)
    }

    pub fn z(&self, alpha: usize) -> Vec<u64> {
        let minus_one = self.space.field.neg(1);
        let mut v = vec![0; self.space.dim];
        v[2 * alpha] = minus_one;
        v[2 * alpha + 1] = minus_one;
        v
    }

    fn check_universe(&self, t: &Triple) -> Result<(), SubspaceError> {
        if t.universe() == self.universe() {
            Ok(())
        } else {
            Err(SubspaceError::UniverseMismatch {
                expected: self.n,
                got: t.universe(),
            })
        }
    }

    /// `F⟨A,B,C⟩ = X_A + Y_B + Z_C`.
    pub fn f_map(&self, t: &Triple) -> Result<Subspace, SubspaceError> {
        self.check_universe(t)?;
        let idx = |s: &FcSet| s.support().iter().map(|&i| i as usize).collect::<Vec<_>>();
        let gens: Vec<Vec<u64>> = idx(t.a())
            .into_iter()
            .map(|a| self.x(a))
            .chain(idx(t.b()).into_iter().map(|b| self.y(b)))
            .chain(idx(t.c()).into_iter().map(|c| self.z(c)))
            .collect();
        Subspace::span(&self.space, &gens)
    }

    /// `G(W)`: which generators lie in `W`.
    pub fn g_map(&self, w: &Subspace) -> Result<Triple, SubspaceError> {
        if *w.space() != self.space {
            return Err(SubspaceError::SpaceMismatch);
        }
        let u = self.universe();
        let collect = |gen: &dyn Fn(usize) -> Vec<u64>| -> Result<FcSet, SubspaceError> {
            let mut members = Vec::new();
            for alpha in 0..self.n {
                if w.contains(&gen(alpha))? {
                    members.push(alpha as u64);
                }
            }
            Ok(FcSet::finite(u, members).expect("indices below n"))
        };
        let a = collect(&|i| self.x(i))?;
        let b = collect(&|i| self.y(i))?;
        let c = collect(&|i| self.z(i))?;
        Ok(Triple::new(a, b, c).expect("shared universe"))
    }

    /// `F(t) ⊆ W ⇔ t ≤ G(W)`.
    pub fn check_adjunction(&self, t: &Triple, w: &Subspace) -> Result<bool, SubspaceError> {
        let left = self.f_map(t)?.is_subspace_of(w)?;
        let right = t.leq(&self.g_map(w)?).expect("shared universe");
        Ok(left == right)
    }

    /// `G(F(t))` equals the balancing closure of `t`.
    pub fn check_gf_closure(&self, t: &Triple) -> Result<bool, SubspaceError> {
        Ok(self.g_map(&self.f_map(t)?)? == *t.closure())
    }

    /// `F(s) ∩ F(t) = F(s ∧ t)` for balanced `s`, `t`.
    pub fn check_meet_preservation(&self, s: &Triple, t: &Triple) -> Result<bool, SubspaceError> {
        let s = BalancedTriple::new(s.clone()).map_err(|_| SubspaceError::NotBalanced(s.clone()))?;
        let t = BalancedTriple::new(t.clone()).map_err(|_| SubspaceError::NotBalanced(t.clone()))?;
        let left = self.f_map(&s)?.intersect(&self.f_map(&t)?)?;
        let right = self.f_map(&s.meet(&t).expect("shared universe"))?;
        Ok(left == right)
    }

    /// A uniformly random balanced triple over `Finite(n)`: each index picks
    /// one of the five balanced membership patterns.
    pub fn random_balanced(&self, rng: &mut impl Rng) -> BalancedTriple {
        let (mut a, mut b, mut c) = (Vec::new(), Vec::new(), Vec::new());
        for alpha in 0..self.n as u64 {
            match rng.gen_range(0..5) {
                0 => {}
                1 => a.push(alpha),
                2 => b.push(alpha),
                3 => c.push(alpha),
                _ => {
                    a.push(alpha);
                    b.push(alpha);
                    c.push(alpha);
                }
            }
        }
        let u = self.universe();
        let t = Triple::new(
            FcSet::finite(u, a).expect("in range"),
            FcSet::finite(u, b).expect("in range"),
            FcSet::finite(u, c).expect("in range"),
        )
        .expect("shared universe");
        BalancedTriple::new(t).expect("pattern is balanced")
    }

    /// Checks that `F` restricted to balanced triples preserves bounds, meets
    /// and joins and is injective. All pairs are visited when `n ≤ 2`;
    /// otherwise `samples` random pairs drawn with `seed`.
    pub fn check_embedding(&self, samples: u64, seed: u64) -> Result<EmbeddingReport, SubspaceError> {
        let u = self.universe();
        if self.f_map(&Triple::bottom(u))? != self.space.zero_subspace()
            || self.f_map(&Triple::top(u))? != self.space.whole()
        {
            return Ok(EmbeddingReport {
                holds: false,
                mode: CheckMode::Exhaustive { cases: 0 },
                failure: Some(EmbeddingFailure::Bounds),
            });
        }
        let pairs: Box<dyn Iterator<Item = (BalancedTriple, BalancedTriple)>>;
        let mode;
        if self.n <= 2 {
            let all = BalancedTriple::all_over(self.n as u64);
            mode = CheckMode::Exhaustive {
                cases: (all.len() * all.len()) as u64,
            };
            let all2 = all.clone();
            pairs = Box::new(
                all.into_iter()
                    .flat_map(move |s| all2.clone().into_iter().map(move |t| (s.clone(), t))),
            );
        } else {
            mode = CheckMode::Sampled { count: samples, seed };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let this = *self;
            pairs = Box::new((0..samples).map(move |_| (this.random_balanced(&mut rng), this.random_balanced(&mut rng))));
        }
        for (s, t) in pairs {
            let (fs, ft) = (self.f_map(&s)?, self.f_map(&t)?);
            let (st, ss) = (s.as_triple().clone(), t.as_triple().clone());
            if fs.intersect(&ft)? != self.f_map(&s.meet(&t).expect("shared"))? {
                return Ok(EmbeddingReport {
                    holds: false,
                    mode,
                    failure: Some(EmbeddingFailure::Meet { s: st, t: ss }),
                });
            }
            if fs.sum(&ft)? != self.f_map(&s.join(&t).expect("shared"))? {
                return Ok(EmbeddingReport {
                    holds: false,
                    mode,
                    failure: Some(EmbeddingFailure::Join { s: st, t: ss }),
                });
            }
            if fs == ft && s != t {
                return Ok(EmbeddingReport {
                    holds: false,
                    mode,
                    failure: Some(EmbeddingFailure::NotInjective { s: st, t: ss }),
                });
            }
        }
        Ok(EmbeddingReport {
            holds: true,
            mode,
            failure: None,
        })
    }
}

/// For a distributive `l`, embeds `M3[l]` into `Sub(V)` by sending each
/// element to its set of join-irreducibles below it and applying `F`.
/// Returns the images of the elements of [`FiniteLattice::m3_of`] together
/// with whether the map is an injective lattice homomorphism.
pub fn embed_m3_of_distributive(
    l: &FiniteLattice,
    field: PrimeField,
) -> Result<(Vec<Subspace>, bool), SubspaceError> {
    let rep = l.birkhoff_embedding()?;
    let k = rep[l.top()].len();
    let space = PresentedSpace::new(k, field);
    let u = space.universe();
    let to_set = |x: usize| FcSet::finite(u, rep[x].iter().map(|&i| i as u64)).expect("in range");
    let triples = l.balanced_triples();
    let m3 = l.m3_of()?;
    let images = triples
        .iter()
        .map(|&[a, b, c]| space.f_map(&Triple::new(to_set(a), to_set(b), to_set(c)).expect("shared")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut ok = images.iter().collect::<BTreeSet<_>>().len() == images.len();
    for i in m3.elements() {
        for j in m3.elements() {
            ok &= images[i].intersect(&images[j])? == images[m3.meet(i, j)];
            ok &= images[i].sum(&images[j])? == images[m3.join(i, j)];
        }
    }
    Ok((images, ok))
}
