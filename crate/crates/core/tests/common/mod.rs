//! Independent models shared by the integration tests.
//!
//! Over the infinite universe every generated set has its support below
//! [`WINDOW`], so membership is constant from `WINDOW` on. A set is then a
//! `u32` whose bits `0..WINDOW` are membership and whose bit `WINDOW` is the
//! membership of the tail. Bitwise operations on these words are an exact
//! model of the set algebra, written without any of the library's code.

#![allow(dead_code)]

use m3lat::{FcSet, Tag, Triple, Universe};
use proptest::prelude::*;

pub const WINDOW: u32 = 16;
pub const TAIL: u32 = 1 << WINDOW;
pub const ALL: u32 = (TAIL << 1) - 1;
pub const W: Universe = Universe::CountablyInfinite;

pub fn word(s: &FcSet) -> u32 {
    assert_eq!(s.universe(), W);
    let mut w = if s.is_cofinite() { ALL } else { 0 };
    for &i in s.support() {
        assert!(i < u64::from(WINDOW), "support escapes the window");
        w ^= 1 << i;
    }
    w
}

pub fn set(w: u32) -> FcSet {
    let tail = w & TAIL != 0;
    let tag = if tail { Tag::Cofin } else { Tag::Fin };
    let support = (0..WINDOW).filter(|&i| (w >> i & 1 != 0) != tail).map(u64::from);
    FcSet::new(W, tag, support).unwrap()
}

pub fn is_finite(w: u32) -> bool {
    w & TAIL == 0
}

pub type Words = (u32, u32, u32);

pub fn words(t: &Triple) -> Words {
    (word(t.a()), word(t.b()), word(t.c()))
}

pub fn triple((a, b, c): Words) -> Triple {
    Triple::new(set(a), set(b), set(c)).unwrap()
}

pub fn mu((a, b, c): Words) -> u32 {
    (a & b) | (a & c) | (b & c)
}

pub fn closure(t: Words) -> Words {
    let m = mu(t);
    (t.0 | m, t.1 | m, t.2 | m)
}

pub fn balanced((a, b, c): Words) -> bool {
    a & b == a & c && a & c == b & c
}

pub fn in_t(t: Words) -> bool {
    is_finite(t.2 & !mu(t) & ALL)
}

pub fn in_s(t: Words) -> bool {
    balanced(t) && in_t(t)
}

pub fn leq(s: Words, t: Words) -> bool {
    s.0 & !t.0 == 0 && s.1 & !t.1 == 0 && s.2 & !t.2 == 0
}

pub fn meet(s: Words, t: Words) -> Words {
    (s.0 & t.0, s.1 & t.1, s.2 & t.2)
}

pub fn join(s: Words, t: Words) -> Words {
    closure((s.0 | t.0, s.1 | t.1, s.2 | t.2))
}

/// Any subset of the window with an arbitrary tail.
pub fn any_word() -> impl Strategy<Value = u32> {
    0..=ALL
}

pub fn any_set() -> impl Strategy<Value = FcSet> {
    any_word().prop_map(set)
}

pub fn any_words() -> impl Strategy<Value = Words> {
    (any_word(), any_word(), any_word())
}

/// A uniformly chosen balanced triple: every position, the tail included,
/// picks one of the five balanced membership patterns.
pub fn balanced_words() -> impl Strategy<Value = Words> {
    proptest::collection::vec(0..5u8, WINDOW as usize + 1).prop_map(|pattern| {
        let (mut a, mut b, mut c) = (0, 0, 0);
        for (i, p) in pattern.into_iter().enumerate() {
            let bit = 1 << i;
            match p {
                0 => {}
                1 => a |= bit,
                2 => b |= bit,
                3 => c |= bit,
                _ => {
                    a |= bit;
                    b |= bit;
                    c |= bit;
                }
            }
        }
        (a, b, c)
    })
}

pub fn s_words() -> impl Strategy<Value = Words> {
    balanced_words().prop_filter("in S", |&t| in_t(t))
}

pub fn t_words() -> impl Strategy<Value = Words> {
    any_words().prop_filter("in T", |&t| in_t(t))
}
