//! Named verification suites, one per lemma id, each producing a
//! [`VerificationReport`].
//!
//! Suites are deterministic given [`Params`]: exhaustive parts run over a
//! fixed enumeration order and sampled parts draw from a ChaCha stream seeded
//! by `params.seed`. Failures carry a JSON counterexample that can be fed
//! back through the library's serde forms.

use std::collections::HashMap;
use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::finlat::{self, is_isomorphic, CheckMode, FiniteLattice, LatticeError};
use crate::sample::Sampler;
use crate::setalg::{FcSet, Universe};
use crate::slat::{self, PairAC, SElem};
use crate::subspace::{self, PresentedSpace, PrimeField, Subspace, SubspaceError, VectorSpace};
use crate::triples::{BalancedTriple, Triple};

/// Every lemma id accepted by [`run`], in the order `all` runs them.
pub const LEMMAS: [&str; 17] = [
    "t-join",
    "t-closure",
    "s-sublattice",
    "s-modular",
    "banf",
    "e-iso",
    "g-embed",
    "a-boolean",
    "b-sublattice",
    "b-obstruction",
    "b-maximal",
    "b-not-range",
    "b-e-invariant",
    "gf-closure",
    "f-meet",
    "f-embed",
    "m3-arguesian",
];

/// Exhaustive Arguesian checks are used up to this many 6-tuples.
pub const ARGUESIAN_EXHAUSTIVE_LIMIT: u64 = 100_000_000;

/// Support bound for the complement searches in `b-obstruction`; the search
/// enumerates every triple and every complement with supports below it.
pub const OBSTRUCTION_BOUND: u32 = 3;

/// Support bound for the uniqueness-of-complements search in `a-boolean`.
pub const UNIQUENESS_BOUND: u32 = 3;

const MAX_N: usize = 3;
const MAX_BOUND: u32 = 10;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown lemma id {0:?}; expected one of {ids}", ids = LEMMAS.join(", "))]
    UnknownLemma(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    /// Size of the finite universe used by exhaustive and subspace checks.
    pub n: usize,
    /// Field characteristic for the subspace checks.
    pub p: u64,
    pub samples: u64,
    pub seed: u64,
    /// Support bound for bounded searches.
    pub bound: u32,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            n: 3,
            p: 2,
            samples: 10_000,
            seed: 0,
            bound: 8,
        }
    }
}

impl Params {
    fn validate(&self) -> Result<(), VerifyError> {
        if !(1..=MAX_N).contains(&self.n) {
            return Err(VerifyError::InvalidParams(format!(
                "--n must be between 1 and {MAX_N}, got {}",
                self.n
            )));
        }
        if self.bound > MAX_BOUND {
            return Err(VerifyError::InvalidParams(format!(
                "--bound must be at most {MAX_BOUND}, got {}",
                self.bound
            )));
        }
        PrimeField::new(self.p)
            .map_err(|_| VerifyError::InvalidParams(format!("--p must be a prime, got {}", self.p)))?;
        Ok(())
    }

    fn universe(&self) -> Universe {
        Universe::Finite(self.n as u64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive { cases: u64 },
    Sampled { count: u64, seed: u64 },
    /// An exhaustive part over a finite universe plus a sampled part.
    Combined { cases: u64, count: u64, seed: u64 },
}

impl Mode {
    fn combine(self, other: Mode) -> Mode {
        let parts = |m: Mode| match m {
            Mode::Exhaustive { cases } => (cases, 0, None),
            Mode::Sampled { count, seed } => (0, count, Some(seed)),
            Mode::Combined { cases, count, seed } => (cases, count, Some(seed)),
        };
        let (c1, s1, seed1) = parts(self);
        let (c2, s2, seed2) = parts(other);
        match seed1.or(seed2) {
            None => Mode::Exhaustive { cases: c1 + c2 },
            Some(seed) if c1 + c2 == 0 => Mode::Sampled { count: s1 + s2, seed },
            Some(seed) => Mode::Combined {
                cases: c1 + c2,
                count: s1 + s2,
                seed,
            },
        }
    }
}

impl From<CheckMode> for Mode {
    fn from(m: CheckMode) -> Self {
        match m {
            CheckMode::Exhaustive { cases } => Mode::Exhaustive { cases },
            CheckMode::Sampled { count, seed } => Mode::Sampled { count, seed },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail { counterexample: Value },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub lemma: String,
    pub mode: Mode,
    pub result: Outcome,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.result == Outcome::Pass
    }

    /// The report with `elapsed_ms` zeroed, for comparing reruns.
    pub fn without_timing(&self) -> VerificationReport {
        VerificationReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

/// Runs one suite. `"all"` is not accepted here; see [`run_all`].
pub fn run(lemma: &str, params: &Params) -> Result<VerificationReport, VerifyError> {
    params.validate()?;
    let suite: fn(&Params) -> Result<Check, VerifyError> = match lemma {
        "t-join" => t_join,
        "t-closure" => t_closure,
        "s-sublattice" => s_sublattice,
        "s-modular" => s_modular,
        "banf" => banf,
        "e-iso" => e_iso,
        "g-embed" => g_embed,
        "a-boolean" => a_boolean,
        "b-sublattice" => b_sublattice,
        "b-obstruction" => b_obstruction,
        "b-maximal" => b_maximal,
        "b-not-range" => b_not_range,
        "b-e-invariant" => b_e_invariant,
        "gf-closure" => gf_closure,
        "f-meet" => f_meet,
        "f-embed" => f_embed,
        "m3-arguesian" => m3_arguesian,
        _ => return Err(VerifyError::UnknownLemma(lemma.to_owned())),
    };
    let start = Instant::now();
    let check = suite(params)?;
    Ok(VerificationReport {
        lemma: lemma.to_owned(),
        mode: check.mode,
        result: match check.failure {
            None => Outcome::Pass,
            Some(counterexample) => Outcome::Fail { counterexample },
        },
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Every suite in [`LEMMAS`] order.
pub fn run_all(params: &Params) -> Result<Vec<VerificationReport>, VerifyError> {
    LEMMAS.iter().map(|id| run(id, params)).collect()
}

struct Check {
    mode: Mode,
    failure: Option<Value>,
}

impl Check {
    fn new(mode: Mode, outcome: Result<(), Value>) -> Self {
        Check {
            mode,
            failure: outcome.err(),
        }
    }
}

fn ensure(holds: bool, counterexample: impl FnOnce() -> Value) -> Result<(), Value> {
    if holds {
        Ok(())
    } else {
        Err(counterexample())
    }
}

fn sampled(params: &Params) -> Mode {
    Mode::Sampled {
        count: params.samples,
        seed: params.seed,
    }
}

fn combined(cases: u64, params: &Params) -> Mode {
    Mode::Exhaustive { cases }.combine(sampled(params))
}

// ---- T and S ----------------------------------------------------------------

fn kappa_triple(a: bool, b: bool, c: bool) -> Triple {
    let u = Universe::CountablyInfinite;
    let set = |full| if full { FcSet::full(u) } else { FcSet::empty(u) };
    Triple::new(set(a), set(b), set(c)).expect("shared universe")
}

/// `T` contains the bounds, is closed under joins, and is not closed under
/// meets: `⟨κ,∅,κ⟩ ∧ ⟨∅,κ,κ⟩ = ⟨∅,∅,κ⟩` leaves `T`.
fn t_join(params: &Params) -> Result<Check, VerifyError> {
    let all = Triple::all_over(params.n as u64);
    let cases = (all.len() * all.len()) as u64;
    let outcome = (|| {
        let join_closed = |s: &Triple, t: &Triple| {
            let j = s.join(t).expect("shared universe");
            ensure(j.in_t(), || json!({"check": "join in T", "s": s, "t": t, "join": j}))
        };
        for s in &all {
            for t in &all {
                join_closed(s, t)?;
            }
        }
        for u in [Universe::CountablyInfinite, params.universe()] {
            ensure(Triple::bottom(u).in_t() && Triple::top(u).in_t(), || {
                json!({"check": "bounds in T", "universe": u})
            })?;
        }
        let (p, q) = (kappa_triple(true, false, true), kappa_triple(false, true, true));
        let m = p.meet(&q).expect("shared universe");
        ensure(
            p.in_t() && q.in_t() && m == kappa_triple(false, false, true) && !m.in_t(),
            || json!({"check": "meet of ⟨κ,∅,κ⟩ and ⟨∅,κ,κ⟩ leaves T", "meet": m}),
        )?;
        let mut sampler = Sampler::new(params.seed);
        for _ in 0..params.samples {
            let (s, t) = (sampler.t_elem(), sampler.t_elem());
            join_closed(&s, &t)?;
        }
        Ok(())
    })();
    Ok(Check::new(combined(cases, params), outcome))
}

/// The closure is extensive, idempotent and monotone, fixes exactly the
/// balanced triples, and maps `T` into `T`.
fn t_closure(params: &Params) -> Result<Check, VerifyError> {
    let all = Triple::all_over(params.n as u64);
    let cases = (all.len() * all.len()) as u64;
    let single = |t: &Triple| {
        let c = t.closure();
        ensure(t.leq(&c).expect("shared universe"), || {
            json!({"check": "extensive", "t": t})
        })?;
        ensure(c.closure() == c, || json!({"check": "idempotent", "t": t}))?;
        ensure((*c == *t) == t.is_balanced(), || {
            json!({"check": "closed iff balanced", "t": t})
        })?;
        ensure(!t.in_t() || c.in_t(), || json!({"check": "closure stays in T", "t": t}))
    };
    let monotone = |s: &Triple, t: &Triple| {
        ensure(
            !s.leq(t).expect("shared universe") || s.closure().leq(&t.closure()).expect("shared universe"),
            || json!({"check": "monotone", "s": s, "t": t}),
        )
    };
    let outcome = (|| {
        for s in &all {
            single(s)?;
            for t in &all {
                monotone(s, t)?;
            }
        }
        let mut sampler = Sampler::new(params.seed);
        for _ in 0..params.samples {
            let t = sampler.triple();
            single(&t)?;
            let s = t.meet(&sampler.triple()).expect("shared universe");
            monotone(&s, &t)?;
        }
        Ok(())
    })();
    Ok(Check::new(combined(cases, params), outcome))
}

fn s_pair_closed(s: &SElem, t: &SElem) -> Result<(), Value> {
    for (name, r) in [("meet", s.balanced().meet(t.balanced())), ("join", s.balanced().join(t.balanced()))] {
        let r = r.expect("shared universe");
        ensure(r.in_s(), || json!({"check": format!("{name} in S"), "s": s, "t": t, name: *r}))?;
    }
    Ok(())
}

/// `S` contains the bounds and is closed under the `M3` meet and join.
fn s_sublattice(params: &Params) -> Result<Check, VerifyError> {
    let all: Vec<SElem> = BalancedTriple::all_over(params.n as u64)
        .into_iter()
        .map(|t| SElem::from_balanced(t).expect("finite universe triples lie in T"))
        .collect();
    let cases = (all.len() * all.len()) as u64;
    let outcome = (|| {
        ensure(Triple::bottom(Universe::CountablyInfinite).in_s() && Triple::top(Universe::CountablyInfinite).in_s(), || {
            json!({"check": "bounds in S"})
        })?;
        for s in &all {
            for t in &all {
                s_pair_closed(s, t)?;
            }
        }
        let mut sampler = Sampler::new(params.seed);
        for _ in 0..params.samples {
            s_pair_closed(&sampler.s_elem(), &sampler.s_elem())?;
        }
        Ok(())
    })();
    Ok(Check::new(combined(cases, params), outcome))
}

/// Balanced triples over `Finite(n)` as an explicit lattice, after checking
/// that the order-derived meet and join agree with the `M3` operations.
fn explicit_s(n: usize) -> Result<(FiniteLattice, Vec<BalancedTriple>), Result<(), Value>> {
    let all = BalancedTriple::all_over(n as u64);
    let index: HashMap<&Triple, usize> = all.iter().enumerate().map(|(i, t)| (t.as_triple(), i)).collect();
    let lattice = FiniteLattice::from_leq_fn(all.len(), |i, j| all[i].leq(&all[j]).expect("shared universe"))
        .map_err(|e| Err(json!({"check": "S over a finite universe is a lattice", "error": e.to_string()})))?;
    for (i, s) in all.iter().enumerate() {
        for (j, t) in all.iter().enumerate() {
            let m = index[s.meet(t).expect("shared universe").as_triple()];
            let jn = index[s.join(t).expect("shared universe").as_triple()];
            if m != lattice.meet(i, j) || jn != lattice.join(i, j) {
                return Err(Err(json!({"check": "M3 operations are the lattice operations", "s": s, "t": t})));
            }
        }
    }
    Ok((lattice, all))
}

/// The modular law `x ∨ (y ∧ (x ∨ z)) = (x ∨ y) ∧ (x ∨ z)` in `S`.
fn s_modular(params: &Params) -> Result<Check, VerifyError> {
    let m = 5u64.pow(params.n as u32);
    let outcome = (|| {
        let (lattice, all) = explicit_s(params.n).map_err(|e| e.unwrap_err())?;
        if let Some((x, y, z)) = lattice.modular_violation() {
            return Err(json!({"check": "modular law", "x": all[x], "y": all[y], "z": all[z]}));
        }
        let mut sampler = Sampler::new(params.seed);
        for _ in 0..params.samples {
            let (x, y, z) = (sampler.s_elem(), sampler.s_elem(), sampler.s_elem());
            let xz = x.join(&z).expect("shared universe");
            let left = x.join(&y.meet(&xz).expect("shared")).expect("shared");
            let right = x.join(&y).expect("shared").meet(&xz).expect("shared");
            ensure(left == right, || json!({"check": "modular law", "x": x, "y": y, "z": z}))?;
        }
        Ok(())
    })();
    Ok(Check::new(combined(m * m * m, params), outcome))
}

// ---- f and E ------------------------------------------------------------------

/// `f` maps `S` into `S`, sends each element to a complement, and is
/// antitone.
fn banf(params: &Params) -> Result<Check, VerifyError> {
    let mut sampler = Sampler::new(params.seed);
    let outcome = (|| {
        for _ in 0..params.samples {
            let t = sampler.s_elem();
            let ft = slat::banf(&t);
            ensure(slat::is_complement_pair(&t, &ft).expect("shared universe"), || {
                json!({"check": "f(t) is a complement of t", "t": t})
            })?;
            // s = t ∧ u ≤ t, so f(t) ≤ f(s) must hold.
            let s = t.meet(&sampler.s_elem()).expect("shared universe");
            ensure(slat::banf(&t).leq(&slat::banf(&s)).expect("shared universe"), || {
                json!({"check": "antitone", "s": s, "t": t})
            })?;
        }
        Ok(())
    })();
    Ok(Check::new(sampled(params), outcome))
}

/// `⟨A,B,A∩B⟩ ↦ ⟨A,B⟩` is a lattice isomorphism from `E` onto `F(κ)²`,
/// `E` is the range of `f`, and `f∘f` fixes `E`.
fn e_iso(params: &Params) -> Result<Check, VerifyError> {
    let mut sampler = Sampler::new(params.seed);
    let outcome = (|| {
        for _ in 0..params.samples {
            let (p, q) = (sampler.pair(), sampler.pair());
            let (ep, eq) = (slat::e_from_pair(&p), slat::e_from_pair(&q));
            ensure(slat::in_e(&ep) && slat::e_to_pair(&ep).ok().as_ref() == Some(&p), || {
                json!({"check": "pair round trip", "p": p})
            })?;
            ensure(ep.meet(&eq).expect("shared") == slat::e_from_pair(&p.meet(&q).expect("shared")), || {
                json!({"check": "meets correspond", "p": p, "q": q})
            })?;
            ensure(ep.join(&eq).expect("shared") == slat::e_from_pair(&p.join(&q).expect("shared")), || {
                json!({"check": "joins correspond", "p": p, "q": q})
            })?;
            ensure(slat::banf(&slat::banf(&ep)) == ep, || json!({"check": "f∘f fixes E", "p": p}))?;
            let t = sampler.s_elem();
            ensure(slat::in_e(&slat::banf(&t)), || json!({"check": "f(t) in E", "t": t}))?;
        }
        Ok(())
    })();
    Ok(Check::new(sampled(params), outcome))
}

// ---- g, A and B -------------------------------------------------------------

/// `g⟨A,C⟩ = ⟨A, A∩C, C⟩` is a bounded lattice embedding of `F(κ)²` into
/// `M3[F(κ)]`.
fn g_embed(params: &Params) -> Result<Check, VerifyError> {
    let u = Universe::CountablyInfinite;
    let mut sampler = Sampler::new(params.seed);
    let outcome = (|| {
        ensure(
            slat::g_embed(&PairAC::bottom(u)) == BalancedTriple::bottom(u)
                && slat::g_embed(&PairAC::top(u)) == BalancedTriple::top(u),
            || json!({"check": "bounds"}),
        )?;
        for _ in 0..params.samples {
            let (p, q) = (sampler.pair(), sampler.pair());
            let (gp, gq) = (slat::g_embed(&p), slat::g_embed(&q));
            ensure(gp.meet(&gq).expect("shared") == slat::g_embed(&p.meet(&q).expect("shared")), || {
                json!({"check": "meets preserved", "p": p, "q": q})
            })?;
            ensure(gp.join(&gq).expect("shared") == slat::g_embed(&p.join(&q).expect("shared")), || {
                json!({"check": "joins preserved", "p": p, "q": q})
            })?;
            ensure((gp == gq) == (p == q), || json!({"check": "injective", "p": p, "q": q}))?;
        }
        Ok(())
    })();
    Ok(Check::new(sampled(params), outcome))
}

/// `A = {⟨A,C⟩ : A ∼ C}` is a Boolean sublattice of `F(κ)²`, and inside `B`
/// the complement of `g(p)` is `g(∁p)` and nothing else.
fn a_boolean(params: &Params) -> Result<Check, VerifyError> {
    let u = Universe::CountablyInfinite;
    let family: Vec<PairAC> = PairAC::bounded_family(u, UNIQUENESS_BOUND)
        .into_iter()
        .filter(slat::in_a)
        .collect();
    let images: Vec<SElem> = family
        .iter()
        .map(|p| SElem::from_balanced(slat::g_embed(p)).expect("g(A) lies in S"))
        .collect();
    let cases = (family.len() * family.len()) as u64;
    let mut sampler = Sampler::new(params.seed);
    let outcome = (|| {
        ensure(slat::in_a(&PairAC::bottom(u)) && slat::in_a(&PairAC::top(u)), || {
            json!({"check": "bounds in A"})
        })?;
        for (p, gp) in family.iter().zip(&images) {
            let complements: Vec<&PairAC> = family
                .iter()
                .zip(&images)
                .filter(|(_, gq)| slat::is_complement_pair(gp, gq).expect("shared universe"))
                .map(|(q, _)| q)
                .collect();
            ensure(complements == [&p.complement()], || {
                json!({"check": "unique complement in B", "p": p, "complements": complements})
            })?;
        }
        for _ in 0..params.samples {
            let (p, q) = (sampler.a_pair(), sampler.a_pair());
            for (name, r) in [
                ("meet", p.meet(&q).expect("shared")),
                ("join", p.join(&q).expect("shared")),
                ("complement", p.complement()),
            ] {
                ensure(slat::in_a(&r), || json!({"check": format!("{name} stays in A"), "p": p, "q": q}))?;
            }
        }
        Ok(())
    })();
    Ok(Check::new(combined(cases, params), outcome))
}

/// `g(A) = B` is a bounded sublattice of `S`.
fn b_sublattice(params: &Params) -> Result<Check, VerifyError> {
    let mut sampler = Sampler::new(params.seed);
    let outcome = (|| {
        for _ in 0..params.samples {
            let (p, q) = (sampler.a_pair(), sampler.a_pair());
            let gp = SElem::from_balanced(slat::g_embed(&p)).map_err(|_| json!({"check": "g(p) in S", "p": p}))?;
            let gq = SElem::from_balanced(slat::g_embed(&q)).map_err(|_| json!({"check": "g(p) in S", "p": q}))?;
            ensure(slat::in_b(&gp), || json!({"check": "g(p) in B", "p": p}))?;
            for r in [gp.meet(&gq).expect("shared"), gp.join(&gq).expect("shared")] {
                ensure(slat::in_b(&r), || json!({"check": "B closed", "p": p, "q": q}))?;
            }
            let t = sampler.s_elem();
            ensure(slat::in_b(&t) == (slat::in_a(&PairAC::new(t.a().clone(), t.c().clone()).expect("shared")) && t.b().is_subset(t.a()).expect("shared")), || {
                json!({"check": "B membership", "t": t})
            })?;
        }
        Ok(())
    })();
    Ok(Check::new(sampled(params), outcome))
}

/// For every `t ∈ S ∖ B` with `b ⊆ a` and every complement `t'` of `t`, all
/// with supports below [`OBSTRUCTION_BOUND`]: `b' ⊄ a'`.
fn b_obstruction(_params: &Params) -> Result<Check, VerifyError> {
    let u = Universe::CountablyInfinite;
    let family = FcSet::bounded_family(u, OBSTRUCTION_BOUND);
    let mut cases = 0u64;
    let mut outcome = Ok(());
    'search: for a in &family {
        for b in family.iter().filter(|b| b.is_subset(a).expect("shared")) {
            for c in &family {
                let Ok(t) = SElem::new(Triple::new(a.clone(), b.clone(), c.clone()).expect("shared")) else {
                    continue;
                };
                if slat::in_b(&t) {
                    continue;
                }
                for t_prime in slat::complements_in_s(&t, OBSTRUCTION_BOUND) {
                    cases += 1;
                    let obstructed = slat::complement_obstruction(&t, &t_prime).expect("preconditions hold");
                    if obstructed {
                        outcome = Err(json!({"check": "b' ⊄ a'", "t": t, "t_prime": t_prime}));
                        break 'search;
                    }
                }
            }
        }
    }
    if outcome.is_ok() && cases == 0 {
        outcome = Err(json!({"check": "search found no complements"}));
    }
    Ok(Check::new(Mode::Exhaustive { cases }, outcome))
}

fn check_witness(t: &SElem) -> Result<(), Value> {
    let u = t.universe();
    let w = slat::nondistrib_witness(t).map_err(|e| json!({"check": "witness exists", "t": t, "error": e.to_string()}))?;
    let empty = FcSet::empty(u);
    let expected_lhs = Triple::new(empty.clone(), w.f.clone(), empty).expect("shared");
    ensure(
        w.f.is_finite() && !w.f.is_empty() && w.f.is_subset(&t.b().difference(t.a()).expect("shared")).expect("shared"),
        || json!({"check": "F is a finite nonempty subset of b ∖ a", "t": t}),
    )?;
    ensure(
        *w.lhs == expected_lhs && w.rhs == BalancedTriple::bottom(u) && w.lhs != w.rhs,
        || json!({"check": "distributive law fails on t, g⟨F,∅⟩, g⟨∅,F⟩", "t": t, "witness": w}),
    )
}

/// Adjoining any `t ∉ B` to `B` breaks distributivity. For `b ⊄ a` the
/// witness uses `t` itself; for `b ⊆ a` it uses the complement `f(t)`, whose
/// second component cannot lie below its first.
fn b_maximal(params: &Params) -> Result<Check, VerifyError> {
    let mut sampler = Sampler::new(params.seed);
    let outcome = (|| {
        for _ in 0..params.samples {
            let t = sampler
                .s_elem_where(10_000, |t| !t.b().is_subset(t.a()).expect("shared"))
                .expect("elements with b ⊄ a are common");
            check_witness(&t)?;
            let t = sampler
                .s_elem_where(10_000, |t| !slat::in_b(t) && t.b().is_subset(t.a()).expect("shared"))
                .expect("elements of S ∖ B with b ⊆ a are common");
            let ft = slat::banf(&t);
            ensure(!ft.b().is_subset(ft.a()).expect("shared"), || {
                json!({"check": "complement of t has b' ⊄ a'", "t": t})
            })?;
            check_witness(&ft)?;
        }
        Ok(())
    })();
    Ok(Check::new(sampled(params), outcome))
}

/// `⟨κ,∅,∅⟩` has no complement in `B`: the bounded search over `g(A)` finds
/// none, and for every bounded pair `⟨A,C⟩` the forced chain
/// `A = ∅ ⇒ B = ∅ ⇒ C = κ ⇒ C∖μ infinite` holds step by step. The chain is
/// traced over all pairs, not only those in `A`, since its last step is
/// reached only by `g⟨∅,κ⟩`.
fn b_not_range(params: &Params) -> Result<Check, VerifyError> {
    let t = SElem::new(kappa_triple(true, false, false)).expect("⟨κ,∅,∅⟩ lies in S");
    let candidates = PairAC::bounded_family(Universe::CountablyInfinite, params.bound);
    let outcome = (|| {
        if let Some(c) = slat::find_complement_in_b(&t, params.bound) {
            return Err(json!({"check": "no complement in B", "complement": c}));
        }
        let mut reached_end = 0;
        for p in &candidates {
            let step = slat::trace_forced_chain(p);
            ensure(!matches!(step, slat::ForcedChain::Broken(_)), || {
                json!({"check": "forced chain", "p": p, "step": step})
            })?;
            if step == slat::ForcedChain::ForcedOutOfS {
                reached_end += 1;
                ensure(!slat::in_a(p), || json!({"check": "chain end lies outside A", "p": p}))?;
            }
        }
        ensure(reached_end == 1, || json!({"check": "exactly g⟨∅,κ⟩ reaches C∖μ infinite", "count": reached_end}))
    })();
    Ok(Check::new(
        Mode::Exhaustive {
            cases: candidates.len() as u64,
        },
        outcome,
    ))
}

/// Every index pair of `B` is a finite join of atoms or a finite meet of
/// coatoms, while `⟨κ,∅⟩ ∈ F(κ)²` is neither.
fn b_e_invariant(params: &Params) -> Result<Check, VerifyError> {
    let u = Universe::CountablyInfinite;
    let pairs: Vec<PairAC> = PairAC::bounded_family(u, params.bound)
        .into_iter()
        .filter(slat::in_a)
        .collect();
    let outcome = (|| {
        for p in &pairs {
            let atoms = slat::atom_decomposition(p);
            let coatoms = slat::coatom_decomposition(p);
            ensure(atoms.is_some() || coatoms.is_some(), || json!({"check": "finite or cofinite", "p": p}))?;
            if let Some(atoms) = atoms {
                let join = atoms.iter().fold(PairAC::bottom(u), |acc, x| acc.join(x).expect("shared"));
                ensure(join == *p, || json!({"check": "atoms join to p", "p": p}))?;
            }
            if let Some(coatoms) = coatoms {
                let meet = coatoms.iter().fold(PairAC::top(u), |acc, x| acc.meet(x).expect("shared"));
                ensure(meet == *p, || json!({"check": "coatoms meet to p", "p": p}))?;
            }
        }
        let odd = PairAC::new(FcSet::full(u), FcSet::empty(u)).expect("shared");
        ensure(
            !slat::is_finite_join_of_atoms(&odd) && !slat::is_finite_meet_of_coatoms(&odd),
            || json!({"check": "⟨κ,∅⟩ is neither", "p": odd}),
        )
    })();
    Ok(Check::new(
        Mode::Exhaustive {
            cases: pairs.len() as u64 + 1,
        },
        outcome,
    ))
}

// ---- F and G ----------------------------------------------------------------

fn space(params: &Params) -> Result<PresentedSpace, VerifyError> {
    Ok(PresentedSpace::new(params.n, PrimeField::new(params.p)?))
}

/// `G∘F` is the balancing closure, over every triple of `Finite(n)`.
fn gf_closure(params: &Params) -> Result<Check, VerifyError> {
    let v = space(params)?;
    let all = Triple::all_over(params.n as u64);
    let mut outcome = Ok(());
    for t in &all {
        if !v.check_gf_closure(t)? {
            outcome = Err(json!({"check": "G(F(t)) = closure(t)", "p": params.p, "t": t}));
            break;
        }
    }
    Ok(Check::new(Mode::Exhaustive { cases: all.len() as u64 }, outcome))
}

/// `F(s) ∩ F(t) = F(s ∧ t)` for balanced `s`, `t`, and `G` is a bounded
/// meet-homomorphism.
fn f_meet(params: &Params) -> Result<Check, VerifyError> {
    let v = space(params)?;
    let all = BalancedTriple::all_over(params.n as u64);
    let mut outcome = Ok(());
    'pairs: for s in &all {
        for t in &all {
            if !v.check_meet_preservation(s, t)? {
                outcome = Err(json!({"check": "F preserves meets", "p": params.p, "s": s, "t": t}));
                break 'pairs;
            }
        }
    }
    let u = v.universe();
    if outcome.is_ok()
        && (v.g_map(&v.space().zero_subspace())? != Triple::bottom(u) || v.g_map(&v.space().whole())? != Triple::top(u))
    {
        outcome = Err(json!({"check": "G preserves bounds", "p": params.p}));
    }
    let mut sampler = Sampler::with_universe(params.seed, u);
    if outcome.is_ok() {
        for _ in 0..params.samples {
            let (w1, w2) = (random_subspace(&v, &mut sampler)?, random_subspace(&v, &mut sampler)?);
            let meet = v.g_map(&w1.intersect(&w2)?)?;
            if meet != v.g_map(&w1)?.meet(&v.g_map(&w2)?).expect("shared") {
                outcome = Err(json!({"check": "G preserves meets", "w1": w1, "w2": w2}));
                break;
            }
        }
    }
    let cases = (all.len() * all.len()) as u64;
    Ok(Check::new(combined(cases, params), outcome))
}

fn random_subspace(v: &PresentedSpace, sampler: &mut Sampler) -> Result<Subspace, SubspaceError> {
    let rng = sampler.rng();
    let k = rng.gen_range(0..=v.space().dim);
    let p = v.space().field.modulus();
    let gens: Vec<Vec<u64>> = (0..k)
        .map(|_| (0..v.space().dim).map(|_| rng.gen_range(0..p)).collect())
        .collect();
    Subspace::span(v.space(), &gens)
}

/// `F` is a bounded lattice embedding of balanced triples into `Sub(V)`;
/// for `n ≤ 2` also the adjunction `F(t) ⊆ W ⇔ t ≤ G(W)` over every triple
/// and every subspace.
fn f_embed(params: &Params) -> Result<Check, VerifyError> {
    let v = space(params)?;
    let report = v.check_embedding(params.samples, params.seed)?;
    let mut mode = Mode::from(report.mode);
    let mut outcome = match report.failure {
        Some(f) => Err(json!({"check": "F is a lattice embedding", "p": params.p, "failure": f})),
        None => Ok(()),
    };
    if outcome.is_ok() && params.n <= 2 {
        let triples = Triple::all_over(params.n as u64);
        let subspaces = subspace::all_subspaces(v.space())?;
        mode = mode.combine(Mode::Exhaustive {
            cases: (triples.len() * subspaces.len()) as u64,
        });
        let images = triples.iter().map(|t| v.f_map(t)).collect::<Result<Vec<_>, _>>()?;
        'adj: for w in &subspaces {
            let gw = v.g_map(w)?;
            for (t, ft) in triples.iter().zip(&images) {
                if ft.is_subspace_of(w)? != t.leq(&gw).expect("shared") {
                    outcome = Err(json!({"check": "F(t) ⊆ W iff t ≤ G(W)", "t": t, "w": w}));
                    break 'adj;
                }
            }
        }
    }
    Ok(Check::new(mode, outcome))
}

// ---- finite lattices --------------------------------------------------------

/// The lattices on which the distributive/modular/Arguesian equivalence for
/// `M3[L]` is tested.
pub fn curated_family() -> Vec<(&'static str, FiniteLattice)> {
    vec![
        ("chain-1", finlat::chain(1)),
        ("chain-2", finlat::chain(2)),
        ("chain-3", finlat::chain(3)),
        ("chain-4", finlat::chain(4)),
        ("boolean-2", finlat::boolean(2)),
        ("boolean-3", finlat::boolean(3)),
        ("m3", finlat::m3()),
        ("n5", finlat::n5()),
        ("m3-new-top", finlat::with_new_top(&finlat::m3())),
        ("n5-doubled", finlat::n5_doubled()),
    ]
}

/// Over [`curated_family`]: `L` distributive ⇔ `M3[L]` modular ⇔ `M3[L]`
/// Arguesian; `M3[2] ≅ M3`; and `Sub(GF(2)³)` is Arguesian.
fn m3_arguesian(params: &Params) -> Result<Check, VerifyError> {
    let mut mode = Mode::Exhaustive { cases: 0 };
    let mut argue = |l: &FiniteLattice| {
        let budget = match (l.n() as u64).checked_pow(6) {
            Some(total) if total <= ARGUESIAN_EXHAUSTIVE_LIMIT => ARGUESIAN_EXHAUSTIVE_LIMIT,
            _ => params.samples,
        };
        let check = l.is_arguesian(budget, params.seed);
        mode = mode.clone().combine(check.mode.into());
        check
    };
    let mut outcome = Ok(());
    for (name, l) in curated_family() {
        let m3 = l.m3_of()?;
        let distributive = l.is_distributive();
        let modular = m3.is_modular();
        let arguesian = argue(&m3);
        if distributive != modular || modular != arguesian.holds {
            outcome = Err(json!({
                "check": "distributive ⇔ M3[L] modular ⇔ M3[L] Arguesian",
                "lattice": name,
                "distributive": distributive,
                "m3_modular": modular,
                "m3_arguesian": arguesian,
            }));
            break;
        }
    }
    if outcome.is_ok() && !is_isomorphic(&finlat::chain(2).m3_of()?, &finlat::m3())? {
        outcome = Err(json!({"check": "M3[2] ≅ M3"}));
    }
    if outcome.is_ok() {
        let (sub, _) = subspace::subspace_lattice(&VectorSpace::new(PrimeField::new(2)?, 3))?;
        let check = sub.is_arguesian(1_000_000, params.seed);
        mode = mode.combine(check.mode.into());
        if !check.holds {
            outcome = Err(json!({"check": "Sub(GF(2)^3) is Arguesian", "tuple": check.counterexample}));
        }
    }
    Ok(Check::new(mode, outcome))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> Params {
        Params {
            n: 2,
            samples: 200,
            seed: 3,
            bound: 3,
            ..Params::default()
        }
    }

    #[test]
    fn unknown_lemma_is_rejected() {
        assert!(matches!(run("nope", &quick()), Err(VerifyError::UnknownLemma(_))));
        assert!(matches!(
            run("t-join", &Params { n: 9, ..quick() }),
            Err(VerifyError::InvalidParams(_))
        ));
        assert!(matches!(
            run("gf-closure", &Params { p: 4, ..quick() }),
            Err(VerifyError::InvalidParams(_))
        ));
    }

    #[test]
    fn mode_combination() {
        let m = Mode::Exhaustive { cases: 3 }.combine(Mode::Sampled { count: 5, seed: 1 });
        assert_eq!(m, Mode::Combined { cases: 3, count: 5, seed: 1 });
        let e = Mode::Exhaustive { cases: 3 }.combine(Mode::Exhaustive { cases: 4 });
        assert_eq!(e, Mode::Exhaustive { cases: 7 });
    }

    #[test]
    fn report_json_shape() {
        let r = run("gf-closure", &quick()).unwrap();
        let j = serde_json::to_value(r.without_timing()).unwrap();
        assert_eq!(
            j,
            json!({"lemma": "gf-closure", "mode": {"kind": "exhaustive", "cases": 64}, "result": {"status": "pass"}, "elapsed_ms": 0})
        );
    }

    #[test]
    fn cheap_suites_pass() {
        for id in ["t-join", "t-closure", "s-sublattice", "s-modular", "banf", "e-iso", "g-embed", "b-sublattice", "f-meet", "f-embed"] {
            let r = run(id, &quick()).unwrap();
            assert!(r.passed(), "{id}: {:?}", r.result);
        }
    }
}
