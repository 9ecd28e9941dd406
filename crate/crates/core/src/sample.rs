//! Seeded random generators for the sampled verification suites.
//!
//! Supports are drawn from indices below [`SUPPORT_LIMIT`] under both tags, so
//! every quantifier pattern (finite/cofinite in each slot) shows up.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::setalg::{FcSet, Tag, Universe};
use crate::slat::{PairAC, SElem};
use crate::triples::Triple;

pub const SUPPORT_LIMIT: u64 = 16;

pub struct Sampler {
    rng: ChaCha8Rng,
    universe: Universe,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self::with_universe(seed, Universe::CountablyInfinite)
    }

    pub fn with_universe(seed: u64, universe: Universe) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            universe,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn fcset(&mut self) -> FcSet {
        let limit = match self.universe {
            Universe::Finite(n) => n.min(SUPPORT_LIMIT),
            Universe::CountablyInfinite => SUPPORT_LIMIT,
        };
        // Mix sparse and dense supports.
        let density = [0.1, 0.3, 0.6][self.rng.gen_range(0..3)];
        let support: Vec<u64> = (0..limit).filter(|_| self.rng.gen_bool(density)).collect();
        let tag = if self.rng.gen_bool(0.5) { Tag::Fin } else { Tag::Cofin };
        FcSet::new(self.universe, tag, support).expect("indices below limit")
    }

    pub fn triple(&mut self) -> Triple {
        Triple::new(self.fcset(), self.fcset(), self.fcset()).expect("shared universe")
    }

    pub fn pair(&mut self) -> PairAC {
        PairAC::new(self.fcset(), self.fcset()).expect("shared universe")
    }

    /// A pair with `A ∼ C`.
    pub fn a_pair(&mut self) -> PairAC {
        loop {
            let p = self.pair();
            if crate::slat::in_a(&p) {
                return p;
            }
        }
    }

    /// A random triple kept only if it lies in `T`.
    pub fn t_elem(&mut self) -> Triple {
        loop {
            let t = self.triple();
            if t.in_t() {
                return t;
            }
        }
    }

    /// Random triple, closed, kept if it lands in `S`.
    pub fn s_elem(&mut self) -> SElem {
        loop {
            if let Ok(s) = SElem::from_balanced(self.triple().closure()) {
                return s;
            }
        }
    }

    /// An element of `S` satisfying `pred`, giving up after `attempts` draws.
    pub fn s_elem_where(&mut self, attempts: usize, pred: impl Fn(&SElem) -> bool) -> Option<SElem> {
        (0..attempts).map(|_| self.s_elem()).find(|s| pred(s))
    }
}
