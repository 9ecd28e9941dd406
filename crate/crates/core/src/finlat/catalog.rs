//! Small named lattices used throughout the tests and the CLI.

use super::FiniteLattice;

/// The chain `0 < 1 < .. < k-1`.
pub fn chain(k: usize) -> FiniteLattice {
    FiniteLattice::from_leq_fn(k, |x, y| x <= y).expect("chains are lattices")
}

/// The Boolean lattice `2^k`: element `x` is the subset with bitmask `x`.
pub fn boolean(k: u32) -> FiniteLattice {
    FiniteLattice::from_leq_fn(1 << k, |x, y| x & y == x).expect("power sets are lattices")
}

/// `M_k`: a bottom `0`, atoms `1..=k`, and a top `k+1`.
pub fn diamond(k: usize) -> FiniteLattice {
    let top = k + 1;
    FiniteLattice::from_leq_fn(k + 2, |x, y| x == y || x == 0 || y == top).expect("M_k is a lattice")
}

/// The five-element diamond `M3`: bottom `0`, atoms `1, 2, 3`, top `4`.
pub fn m3() -> FiniteLattice {
    diamond(3)
}

/// The pentagon `N5`: `0 < 1 < 2 < 4` and `0 < 3 < 4`.
pub fn n5() -> FiniteLattice {
    let up: &[(usize, usize)] = &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 4), (3, 4)];
    FiniteLattice::from_leq_fn(5, |x, y| x == y || up.contains(&(x, y))).expect("N5 is a lattice")
}

/// `N5` with its long side lengthened: `0 < 1 < 2 < 3 < 5` and `0 < 4 < 5`.
pub fn n5_doubled() -> FiniteLattice {
    FiniteLattice::from_leq_fn(6, |x, y| {
        x == y || x == 0 || y == 5 || (x < y && y <= 3 && x >= 1)
    })
    .expect("doubled N5 is a lattice")
}

/// `L` with a new top adjoined above the old one.
pub fn with_new_top(l: &FiniteLattice) -> FiniteLattice {
    let n = l.n();
    FiniteLattice::from_leq_fn(n + 1, |x, y| y == n || (x < n && y < n && l.leq(x, y)))
        .expect("adding a top preserves lattices")
}
