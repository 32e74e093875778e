//! Shared between the oracle and acceptance test targets: an independent
//! brute-force enumeration of branch configurations, and the walk over all
//! enumerable cells.

use invquot::branch::enumerate_branch_configs;
use invquot::profile::{allowed_k, quotient_profile, KS2_MAX, KS2_MIN};
use std::collections::BTreeSet;

/// A configuration as a sorted multiset of `(pa, selfint)` pairs; the degree
/// against `D` is determined by these, so the pair is a faithful key.
pub type Multiset = Vec<(i64, i64)>;

/// Brute-force reference enumeration for one cell. Components are picked
/// freely (non-decreasing pool index, so each multiset once) from the pool
/// of all valid positive-degree classes; the `(0,-4)` count is forced by the
/// leftover adjunction budget. The pool bounds are the validity conditions
/// themselves: `pa >= 0` gives `selfint >= -4 - ddeg`, the index bound gives
/// `selfint * dsq <= ddeg^2`, and `(selfint + ddeg) % 4 == 0`; nothing else
/// is cut off.
pub fn oracle_cell(ks2: i64, k: i64, kw2: i64) -> BTreeSet<Multiset> {
    let dsq = 2 * ks2;
    let b0d = 2 * k - 8;
    let budget = (ks2 + 4 - k) - 2 * kw2;

    let mut pool: Vec<(i64, i64, i64)> = Vec::new(); // (pa, selfint, ddeg)
    let mut d = 2;
    while d <= b0d {
        let mut s = -4 - d; // pa = 0
        while s * dsq <= d * d {
            if (s + d).rem_euclid(4) == 0 {
                let pa = 1 + (s + d) / 4;
                assert!(pa >= 0);
                pool.push((pa, s, d));
            }
            s += 1;
        }
        d += 2;
    }

    fn search(
        pool: &[(i64, i64, i64)],
        from: usize,
        d_left: i64,
        kdeg_left: i64,
        parts: &mut Vec<(i64, i64)>,
        found: &mut BTreeSet<Multiset>,
    ) {
        if d_left == 0 {
            // every class has even adjunction degree, so parity cannot fail
            assert_eq!(kdeg_left.rem_euclid(2), 0);
            if kdeg_left >= 0 {
                let mut ms = parts.clone();
                for _ in 0..kdeg_left / 2 {
                    ms.push((0, -4));
                }
                ms.sort_unstable();
                found.insert(ms);
            }
            return;
        }
        for i in from..pool.len() {
            let (pa, s, d) = pool[i];
            if d > d_left {
                continue;
            }
            let kdeg = 2 * pa - 2 - s;
            parts.push((pa, s));
            search(pool, i, d_left - d, kdeg_left - kdeg, parts, found);
            parts.pop();
        }
    }

    let mut found = BTreeSet::new();
    search(&pool, 0, b0d, budget, &mut Vec::new(), &mut found);
    found
}

/// The library's enumeration of the same cell, normalized to multisets.
pub fn library_cell(ks2: i64, k: i64, kw2: i64) -> Vec<Multiset> {
    let profile = quotient_profile(ks2, k).unwrap();
    enumerate_branch_configs(&profile, kw2)
        .unwrap()
        .into_iter()
        .map(|config| {
            let mut ms: Multiset = config
                .components()
                .iter()
                .map(|c| (c.pa(), c.selfint()))
                .collect();
            ms.sort_unstable();
            ms
        })
        .collect()
}

/// Every `(ks2, k, kw2)` cell the enumerator covers: all admissible values
/// away from the bicanonical-composed `k`.
pub fn all_cells() -> Vec<(i64, i64, i64)> {
    let mut cells = Vec::new();
    for ks2 in KS2_MIN..=KS2_MAX {
        for k in allowed_k(ks2).unwrap() {
            let profile = quotient_profile(ks2, k).unwrap();
            if profile.bicanonical_composed {
                continue;
            }
            for kw2 in profile.admissible_kw2() {
                cells.push((ks2, k, kw2));
            }
        }
    }
    cells
}
