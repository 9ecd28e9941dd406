//! Finite-cofinite set algebra, balanced triples and the modular lattice `S`
//! they form, Banaschewski functions, finite lattice tooling and the
//! embedding of `M3[P(n)]` into a subspace lattice over a prime field.

pub mod banfn;
pub mod finlat;
pub mod sample;
pub mod setalg;
pub mod slat;
pub mod subspace;
pub mod triples;
pub mod verify;

pub use setalg::{FcSet, SetError, Tag, Universe};
pub use slat::{PairAC, SElem};
pub use triples::{BalancedTriple, Triple};
