use std::collections::BTreeSet;

use m3lat::banfn::{self, BanMap};
use m3lat::finlat::{self, FiniteLattice};

/// Every self-map of `l`, checked directly against the definition.
fn brute_force(l: &FiniteLattice) -> Vec<Vec<usize>> {
    let n = l.n();
    let mut out = Vec::new();
    let mut table = vec![0; n];
    loop {
        let complement = l.elements().all(|x| {
            let y = table[x];
            l.meet(x, y) == l.bottom() && l.join(x, y) == l.top()
        });
        let antitone = l
            .elements()
            .all(|x| l.elements().all(|y| !l.leq(x, y) || l.leq(table[y], table[x])));
        if complement && antitone {
            out.push(table.clone());
        }
        let mut k = 0;
        while k < n && table[k] == n - 1 {
            table[k] = 0;
            k += 1;
        }
        if k == n {
            return out;
        }
        table[k] += 1;
    }
}

#[test]
fn pruned_search_matches_brute_force() {
    for l in [finlat::boolean(2), finlat::m3(), finlat::n5(), finlat::chain(3), finlat::diamond(4)] {
        let mut expected = brute_force(&l);
        expected.sort();
        let got: Vec<Vec<usize>> = banfn::enumerate_banaschewski(&l).unwrap().maps.into_iter().map(|m| m.table).collect();
        assert_eq!(got, expected);
    }
    assert_eq!(brute_force(&finlat::boolean(2)).len(), 1);
    assert_eq!(brute_force(&finlat::m3()).len(), 8);
}

#[test]
fn found_maps_are_banaschewski_and_their_ranges_are_rich() {
    for l in [finlat::boolean(3), finlat::m3(), finlat::n5(), finlat::diamond(4), finlat::n5_doubled()] {
        for f in banfn::enumerate_banaschewski(&l).unwrap().maps {
            assert!(banfn::is_banaschewski(&l, &f));
            let r = banfn::range_of(&l, &f).members;
            assert!(r.contains(&l.bottom()) && r.contains(&l.top()));
            for x in l.elements() {
                assert!(r.iter().any(|&y| l.meet(x, y) == l.bottom() && l.join(x, y) == l.top()));
            }
        }
    }
}

#[test]
fn complemented_modular_members_have_functions_and_isomorphic_ranges() {
    let members = [finlat::boolean(2), finlat::boolean(3), finlat::m3(), finlat::diamond(4), finlat::chain(2)];
    for l in &members {
        assert!(l.is_complemented() && l.is_modular());
        assert!(!banfn::enumerate_banaschewski(l).unwrap().maps.is_empty());
        assert!(banfn::boolean_ranges_isomorphic(l).unwrap());
    }
}

#[test]
fn range_search() {
    let l = finlat::m3();
    let found = banfn::is_range_of_some_banaschewski(&l, &[0, 1, 2, 4].into()).unwrap().unwrap();
    assert_eq!(banfn::range_of(&l, &found).members, BTreeSet::from([0, 1, 2, 4]));
    assert_eq!(banfn::is_range_of_some_banaschewski(&l, &[0, 4].into()).unwrap(), None);
    // Every maximal Boolean sublattice of M3 is a range.
    for mask in l.maximal_boolean_extensions(&[0, 4].into()).unwrap() {
        assert!(banfn::is_range_of_some_banaschewski(&l, &mask).unwrap().is_some());
    }
    assert!(!banfn::is_banaschewski(&l, &BanMap::new(vec![4, 1, 2, 3, 0])));
}
