//! The lattice `S`, its Banaschewski function `f` with Boolean range `E`, and
//! the rival maximal Boolean sublattice `B`.
//!
//! * `f⟨A,B,C⟩ = ⟨∁A, ∁(B∪C), ∁(A∪B∪C)⟩` is antitone and sends every element
//!   of `S` to a complement; its range is `E = {⟨A,B,A∩B⟩}` which is
//!   isomorphic to `F(κ)²` through `⟨A,B,A∩B⟩ ↦ ⟨A,B⟩`.
//! * `g⟨A,C⟩ = ⟨A, A∩C, C⟩` embeds `F(κ)²` into `M3[F(κ)]`; restricted to the
//!   pairs with `A ∼ C` it lands in `S`, and its image is `B`.
//!
//! The remaining functions turn the arguments about `B` into computations:
//! bounded complement searches, the non-distributivity witness used for
//! maximality, and the atom/coatom invariant separating `B` from `E`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::setalg::{FcSet, SetError, Universe};
use crate::triples::{BalancedTriple, Triple, TripleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlatError {
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error("{0} is not an element of S")]
    NotInS(Triple),
    #[error("{0} is not an element of E")]
    NotInE(Triple),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// An element of `S`: a balanced triple with `C ∖ μ` finite.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Triple", into = "Triple")]
pub struct SElem(BalancedTriple);

impl TryFrom<Triple> for SElem {
    type Error = SlatError;

    fn try_from(t: Triple) -> Result<Self, SlatError> {
        SElem::new(t)
    }
}

impl From<SElem> for Triple {
    fn from(s: SElem) -> Self {
        s.0.into_triple()
    }
}

impl std::ops::Deref for SElem {
    type Target = Triple;

    fn deref(&self) -> &Triple {
        &self.0
    }
}

impl SElem {
    pub fn new(t: Triple) -> Result<Self, SlatError> {
        if t.in_s() {
            Ok(SElem(BalancedTriple::new(t)?))
        } else {
            Err(SlatError::NotInS(t))
        }
    }

    pub fn from_balanced(t: BalancedTriple) -> Result<Self, SlatError> {
        if t.in_t() {
            Ok(SElem(t))
        } else {
            Err(SlatError::NotInS(t.into_triple()))
        }
    }

    pub fn bottom(universe: Universe) -> Self {
        SElem(BalancedTriple::bottom(universe))
    }

    pub fn top(universe: Universe) -> Self {
        SElem(BalancedTriple::top(universe))
    }

    pub fn balanced(&self) -> &BalancedTriple {
        &self.0
    }

    pub fn triple(&self) -> &Triple {
        &self.0
    }

    pub fn meet(&self, other: &SElem) -> Result<SElem, SlatError> {
        SElem::from_balanced(self.0.meet(&other.0)?)
    }

    pub fn join(&self, other: &SElem) -> Result<SElem, SlatError> {
        SElem::from_balanced(self.0.join(&other.0)?)
    }

    pub fn leq(&self, other: &SElem) -> Result<bool, SlatError> {
        Ok(self.0.leq(&other.0)?)
    }
}

impl fmt::Display for SElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for SElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

/// An element of `F(κ) × F(κ)`.
///
/// The coordinates are called `a` and `c` after their role as the outer
/// components of `g⟨A,C⟩`; for `E` they hold the first two components.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[FcSet; 2]", into = "[FcSet; 2]")]
pub struct PairAC {
    a: FcSet,
    c: FcSet,
}

impl TryFrom<[FcSet; 2]> for PairAC {
    type Error = SetError;

    fn try_from([a, c]: [FcSet; 2]) -> Result<Self, SetError> {
        PairAC::new(a, c)
    }
}

impl From<PairAC> for [FcSet; 2] {
    fn from(p: PairAC) -> Self {
        [p.a, p.c]
    }
}

impl PairAC {
    pub fn new(a: FcSet, c: FcSet) -> Result<Self, SetError> {
        a.universe().check_same(c.universe())?;
        Ok(PairAC { a, c })
    }

    pub fn bottom(universe: Universe) -> Self {
        PairAC {
            a: FcSet::empty(universe),
            c: FcSet::empty(universe),
        }
    }

    pub fn top(universe: Universe) -> Self {
        PairAC {
            a: FcSet::full(universe),
            c: FcSet::full(universe),
        }
    }

    pub fn universe(&self) -> Universe {
        self.a.universe()
    }

    pub fn a(&self) -> &FcSet {
        &self.a
    }

    pub fn c(&self) -> &FcSet {
        &self.c
    }

    pub fn meet(&self, other: &PairAC) -> Result<PairAC, SetError> {
        PairAC::new(self.a.intersection(&other.a)?, self.c.intersection(&other.c)?)
    }

    pub fn join(&self, other: &PairAC) -> Result<PairAC, SetError> {
        PairAC::new(self.a.union(&other.a)?, self.c.union(&other.c)?)
    }

    pub fn complement(&self) -> PairAC {
        PairAC {
            a: self.a.complement(),
            c: self.c.complement(),
        }
    }

    pub fn leq(&self, other: &PairAC) -> Result<bool, SetError> {
        Ok(self.a.is_subset(&other.a)? && self.c.is_subset(&other.c)?)
    }

    /// Every pair with both coordinates in [`FcSet::bounded_family`], in
    /// lexicographic order of the family.
    pub fn bounded_family(universe: Universe, bound: u32) -> Vec<PairAC> {
        let family = FcSet::bounded_family(universe, bound);
        let mut out = Vec::with_capacity(family.len() * family.len());
        for a in &family {
            for c in &family {
                out.push(PairAC {
                    a: a.clone(),
                    c: c.clone(),
                });
            }
        }
        out
    }
}

impl fmt::Display for PairAC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {}⟩", self.a, self.c)
    }
}

impl fmt::Debug for PairAC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `f⟨A,B,C⟩ = ⟨∁A, ∁(B∪C), ∁(A∪B∪C)⟩`.
pub fn banf(t: &SElem) -> SElem {
    let a = t.a().complement();
    let bc = t.b() | t.c();
    let b = bc.complement();
    let c = (&bc | t.a()).complement();
    let image = Triple::new(a, b, c).expect("components share a universe");
    SElem::new(image).expect("f maps S into S")
}

/// `c = a ∩ b`.
pub fn in_e(t: &SElem) -> bool {
    *t.c() == t.a() & t.b()
}

pub fn e_to_pair(t: &SElem) -> Result<PairAC, SlatError> {
    if !in_e(t) {
        return Err(SlatError::NotInE(t.triple().clone()));
    }
    Ok(PairAC::new(t.a().clone(), t.b().clone())?)
}

/// `⟨A, B⟩ ↦ ⟨A, B, A∩B⟩`.
pub fn e_from_pair(p: &PairAC) -> SElem {
    let t = Triple::new(p.a.clone(), p.c.clone(), &p.a & &p.c).expect("shared universe");
    SElem::new(t).expect("⟨A,B,A∩B⟩ lies in S")
}

/// `g⟨A,C⟩ = ⟨A, A∩C, C⟩`.
pub fn g_embed(p: &PairAC) -> BalancedTriple {
    let t = Triple::new(p.a.clone(), &p.a & &p.c, p.c.clone()).expect("shared universe");
    BalancedTriple::new(t).expect("g⟨A,C⟩ is balanced")
}

/// Membership in the sublattice `A`: `A ∼ C`.
pub fn in_a(p: &PairAC) -> bool {
    p.a.sim(&p.c).expect("shared universe")
}

/// `A ∼ C` and `B ⊆ A`.
pub fn in_b_by_description(t: &SElem) -> bool {
    t.a().sim(t.c()).expect("shared universe") && t.b().is_subset(t.a()).expect("shared universe")
}

/// `t = g(p)` for some `p` in `A`. Such a `p` can only be `⟨t.a, t.c⟩`.
pub fn in_b_by_image(t: &SElem) -> bool {
    let p = PairAC {
        a: t.a().clone(),
        c: t.c().clone(),
    };
    in_a(&p) && g_embed(&p) == *t.balanced()
}

/// Membership in `B`, decided by both routes.
pub fn in_b(t: &SElem) -> bool {
    let described = in_b_by_description(t);
    assert_eq!(
        described,
        in_b_by_image(t),
        "membership routes for B disagree on {t}"
    );
    described
}

/// `s ∧ t = 0` and `s ∨ t = 1` in `S`.
pub fn is_complement_pair(s: &SElem, t: &SElem) -> Result<bool, SlatError> {
    let universe = s.universe();
    Ok(s.meet(t)? == SElem::bottom(universe) && s.join(t)? == SElem::top(universe))
}

/// For `t ∈ S ∖ B` with `b ⊆ a` and a complement `t'`, reports whether
/// `b' ⊆ a'`. This is never expected to hold.
pub fn complement_obstruction(t: &SElem, t_prime: &SElem) -> Result<bool, SlatError> {
    if in_b(t) {
        return Err(SlatError::Precondition(format!("{t} lies in B")));
    }
    if !t.b().is_subset(t.a())? {
        return Err(SlatError::Precondition(format!("{t} does not satisfy b ⊆ a")));
    }
    if !is_complement_pair(t, t_prime)? {
        return Err(SlatError::Precondition(format!("{t_prime} is not a complement of {t}")));
    }
    Ok(t_prime.b().is_subset(t_prime.a())?)
}

/// Searches `g(A)` over every pair from [`PairAC::bounded_family`] for a
/// complement of `t`. Candidates are tried in the family's lexicographic
/// order, so the least witness is returned.
pub fn find_complement_in_b(t: &SElem, support_bound: u32) -> Option<SElem> {
    PairAC::bounded_family(t.universe(), support_bound)
        .iter()
        .filter(|p| in_a(p))
        .filter_map(|p| SElem::from_balanced(g_embed(p)).ok())
        .find(|cand| is_complement_pair(t, cand).unwrap_or(false))
}

/// Every complement of `t` in `S` whose components come from
/// [`FcSet::bounded_family`], in lexicographic order.
pub fn complements_in_s(t: &SElem, support_bound: u32) -> Vec<SElem> {
    let family = FcSet::bounded_family(t.universe(), support_bound);
    let mut out = Vec::new();
    // a' ∧ a = 0 is necessary, which prunes most of the cube.
    for a in family.iter().filter(|a| (*a & t.a()).is_empty()) {
        for b in family.iter().filter(|b| (*b & t.b()).is_empty()) {
            for c in family.iter().filter(|c| (*c & t.c()).is_empty()) {
                let cand = Triple::new(a.clone(), b.clone(), c.clone()).expect("shared universe");
                if let Ok(cand) = SElem::new(cand) {
                    if is_complement_pair(t, &cand).unwrap_or(false) {
                        out.push(cand);
                    }
                }
            }
        }
    }
    out
}

/// Where the argument that `⟨κ,∅,∅⟩` has no complement in `B` stops for a
/// particular candidate `g⟨A,C⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ForcedChain {
    /// `⟨κ,∅,∅⟩ ∧ g⟨A,C⟩ ≠ 0`, so the candidate is not a complement.
    MeetNonzero,
    /// The meet vanishes, forcing `A = ∅` and `B = A∩C = ∅`, but the join is
    /// not the top.
    JoinNotTop,
    /// The meet vanishes and the join is the top, which forces `C = κ`; then
    /// `C ∖ μ = κ` is infinite, so the candidate is not in `S`.
    ForcedOutOfS,
    /// One of the implications failed; carries the step that broke.
    Broken(String),
}

/// Walks the forced chain `A = ∅ ⇒ B = ∅ ⇒ C = κ ⇒ C∖μ infinite` for the
/// candidate `g(p)` against `⟨κ,∅,∅⟩`, checking each implication.
pub fn trace_forced_chain(p: &PairAC) -> ForcedChain {
    let u = p.universe();
    let kappa = FcSet::full(u);
    let empty = FcSet::empty(u);
    let x = BalancedTriple::new(Triple::new(kappa.clone(), empty.clone(), empty.clone()).expect("shared"))
        .expect("⟨κ,∅,∅⟩ is balanced");
    let cand = g_embed(p);
    if x.meet(&cand).expect("shared") != BalancedTriple::bottom(u) {
        return ForcedChain::MeetNonzero;
    }
    if !cand.a().is_empty() {
        return ForcedChain::Broken("meet is zero but A ≠ ∅".into());
    }
    if !cand.b().is_empty() {
        return ForcedChain::Broken("A = ∅ but B ≠ ∅".into());
    }
    if x.join(&cand).expect("shared") != BalancedTriple::top(u) {
        return ForcedChain::JoinNotTop;
    }
    if *cand.c() != kappa {
        return ForcedChain::Broken("join is top but C ≠ κ".into());
    }
    let leftover = cand.c() - &cand.mu();
    if leftover.is_finite() || cand.in_s() {
        return ForcedChain::Broken("C = κ but C ∖ μ is finite".into());
    }
    ForcedChain::ForcedOutOfS
}

/// The certificate that adjoining `t` to `B` destroys distributivity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NondistribWitness {
    /// A finite nonempty subset of `b ∖ a`.
    pub f: FcSet,
    /// `t ∧ (g⟨F,∅⟩ ∨ g⟨∅,F⟩)`, expected `⟨∅,F,∅⟩`.
    pub lhs: BalancedTriple,
    /// `(t ∧ g⟨F,∅⟩) ∨ (t ∧ g⟨∅,F⟩)`, expected `⟨∅,∅,∅⟩`.
    pub rhs: BalancedTriple,
}

/// For `t` with `b ⊄ a`, takes `F = {min(b ∖ a)}` and evaluates both sides of
/// the distributive law on `t`, `g⟨F,∅⟩` and `g⟨∅,F⟩`.
pub fn nondistrib_witness(t: &SElem) -> Result<NondistribWitness, SlatError> {
    let u = t.universe();
    let gap = t.b().difference(t.a())?;
    let alpha = gap
        .min_element()
        .ok_or_else(|| SlatError::Precondition(format!("{t} satisfies b ⊆ a")))?;
    let f = FcSet::singleton(u, alpha)?;
    let empty = FcSet::empty(u);
    let left_atom = g_embed(&PairAC::new(f.clone(), empty.clone())?);
    let right_atom = g_embed(&PairAC::new(empty, f.clone())?);
    let t = t.balanced();
    let lhs = t.meet(&left_atom.join(&right_atom)?)?;
    let rhs = t.meet(&left_atom)?.join(&t.meet(&right_atom)?)?;
    Ok(NondistribWitness { f, lhs, rhs })
}

/// In the index lattice of `B`, the elements that are joins of finitely many
/// atoms `⟨{α},∅⟩`, `⟨∅,{γ}⟩` are exactly the finite pairs.
pub fn is_finite_join_of_atoms(p: &PairAC) -> bool {
    p.a.is_finite() && p.c.is_finite()
}

/// Dually, finite meets of coatoms are exactly the cofinite pairs.
pub fn is_finite_meet_of_coatoms(p: &PairAC) -> bool {
    p.a.is_cofinite() && p.c.is_cofinite()
}

/// For a finite pair, the atoms whose join is `p`: `⟨{α},∅⟩` for `α ∈ A`
/// followed by `⟨∅,{γ}⟩` for `γ ∈ C`.
pub fn atom_decomposition(p: &PairAC) -> Option<Vec<PairAC>> {
    if !is_finite_join_of_atoms(p) {
        return None;
    }
    let u = p.universe();
    let empty = FcSet::empty(u);
    let mut atoms = Vec::new();
    for &alpha in p.a.support() {
        atoms.push(PairAC::new(FcSet::singleton(u, alpha).ok()?, empty.clone()).ok()?);
    }
    for &gamma in p.c.support() {
        atoms.push(PairAC::new(empty.clone(), FcSet::singleton(u, gamma).ok()?).ok()?);
    }
    Some(atoms)
}

/// For a cofinite pair, the coatoms `⟨κ∖{α},κ⟩`, `⟨κ,κ∖{γ}⟩` whose meet is `p`.
pub fn coatom_decomposition(p: &PairAC) -> Option<Vec<PairAC>> {
    if !is_finite_meet_of_coatoms(p) {
        return None;
    }
    let atoms = atom_decomposition(&p.complement())?;
    Some(atoms.iter().map(PairAC::complement).collect())
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

    fn kappa() -> FcSet {
        FcSet::full(W)
    }

    fn empty() -> FcSet {
        FcSet::empty(W)
    }

    fn s(a: FcSet, b: FcSet, c: FcSet) -> SElem {
        SElem::new(Triple::new(a, b, c).unwrap()).unwrap()
    }

    fn pair(a: FcSet, c: FcSet) -> PairAC {
        PairAC::new(a, c).unwrap()
    }

    #[test]
    fn banf_examples() {
        assert_eq!(banf(&SElem::top(W)), SElem::bottom(W));
        assert_eq!(banf(&s(kappa(), empty(), empty())), s(empty(), kappa(), empty()));
        let x = fin(&[0]);
        let y = cofin(&[0]);
        assert_eq!(
            banf(&s(x.clone(), x.clone(), x)),
            s(y.clone(), y.clone(), y)
        );
    }

    #[test]
    fn e_examples() {
        let t = s(fin(&[0, 1]), cofin(&[0]), fin(&[1]));
        assert!(in_e(&t));
        assert!(in_e(&s(kappa(), empty(), empty())));
        let p = pair(fin(&[3]), cofin(&[1]));
        let e = e_from_pair(&p);
        assert_eq!(banf(&banf(&e)), e);
        assert_eq!(e_to_pair(&e).unwrap(), p);
        let not_e = s(fin(&[0]), fin(&[0]), fin(&[0, 1]));
        assert!(matches!(e_to_pair(&not_e), Err(SlatError::NotInE(_))));
    }

    #[test]
    fn g_examples() {
        assert_eq!(*g_embed(&PairAC::top(W)), Triple::top(W));
        assert_eq!(
            *g_embed(&pair(fin(&[0]), fin(&[1]))),
            Triple::new(fin(&[0]), empty(), fin(&[1])).unwrap()
        );
        assert_eq!(*g_embed(&PairAC::bottom(W)), Triple::bottom(W));
    }

    #[test]
    fn a_and_b_examples() {
        let t = SElem::from_balanced(g_embed(&pair(fin(&[0]), fin(&[0, 1])))).unwrap();
        assert!(in_b(&t));
        assert!(!in_b(&s(kappa(), empty(), empty())));
        assert!(!in_a(&pair(cofin(&[0]), fin(&[0]))));
        assert!(in_a(&pair(cofin(&[0]), cofin(&[4]))));
    }

    #[test]
    fn complement_pair_examples() {
        assert!(is_complement_pair(&SElem::top(W), &SElem::bottom(W)).unwrap());
        let t = s(fin(&[2]), fin(&[2]), fin(&[2]));
        assert!(!is_complement_pair(&t, &t).unwrap());
        assert!(is_complement_pair(&t, &banf(&t)).unwrap());
    }

    #[test]
    fn obstruction_examples() {
        let t = s(kappa(), empty(), empty());
        let tp = s(empty(), kappa(), empty());
        assert!(!complement_obstruction(&t, &tp).unwrap());
        let in_b_elem = SElem::from_balanced(g_embed(&pair(fin(&[0]), fin(&[0])))).unwrap();
        let comp = banf(&in_b_elem);
        assert!(matches!(
            complement_obstruction(&in_b_elem, &comp),
            Err(SlatError::Precondition(_))
        ));
        // Not a complement.
        assert!(complement_obstruction(&t, &t).is_err());
    }

    #[test]
    fn complements_in_s_of_kappa_bottom() {
        let t = s(kappa(), empty(), empty());
        let found = complements_in_s(&t, 2);
        assert!(found.contains(&s(empty(), kappa(), empty())));
        assert_eq!(found.len(), 4);
        assert!(found.contains(&banf(&t)));
        for tp in &found {
            assert!(!complement_obstruction(&t, tp).unwrap());
        }
    }

    #[test]
    fn find_complement_examples() {
        assert_eq!(find_complement_in_b(&s(kappa(), empty(), empty()), 4), None);
        assert_eq!(
            find_complement_in_b(&SElem::bottom(W), 1),
            Some(SElem::top(W))
        );
        let t = SElem::from_balanced(g_embed(&pair(fin(&[0]), fin(&[0])))).unwrap();
        let want = SElem::from_balanced(g_embed(&pair(cofin(&[0]), cofin(&[0])))).unwrap();
        assert_eq!(find_complement_in_b(&t, 1), Some(want));
    }

    #[test]
    fn nondistrib_examples() {
        let t = s(empty(), fin(&[3]), empty());
        let w = nondistrib_witness(&t).unwrap();
        assert_eq!(w.f, fin(&[3]));
        assert_eq!(*w.lhs, Triple::new(empty(), fin(&[3]), empty()).unwrap());
        assert_eq!(w.rhs, BalancedTriple::bottom(W));
        let in_b_like = s(kappa(), empty(), empty());
        assert!(matches!(nondistrib_witness(&in_b_like), Err(SlatError::Precondition(_))));
    }

    #[test]
    fn atoms_and_coatoms() {
        let p = pair(fin(&[0, 1]), empty());
        assert!(is_finite_join_of_atoms(&p) && !is_finite_meet_of_coatoms(&p));
        let q = pair(kappa(), empty());
        assert!(!is_finite_join_of_atoms(&q) && !is_finite_meet_of_coatoms(&q));
        let r = pair(cofin(&[0]), kappa());
        assert!(!is_finite_join_of_atoms(&r) && is_finite_meet_of_coatoms(&r));
        assert_eq!(coatom_decomposition(&r).unwrap(), vec![pair(cofin(&[0]), kappa())]);
        assert_eq!(atom_decomposition(&p).unwrap().len(), 2);
    }

    #[test]
    fn forced_chain_cases() {
        assert_eq!(trace_forced_chain(&pair(fin(&[0]), empty())), ForcedChain::MeetNonzero);
        assert_eq!(trace_forced_chain(&pair(empty(), fin(&[1]))), ForcedChain::JoinNotTop);
        assert_eq!(trace_forced_chain(&pair(empty(), kappa())), ForcedChain::ForcedOutOfS);
    }
}
