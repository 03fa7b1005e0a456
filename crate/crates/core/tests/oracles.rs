//! Checks against from-scratch computations that share only the group
//! multiplication with the library.

use std::collections::{BTreeSet, VecDeque};

use arcmaps::groups::{build_group, ElemId, Family, Group};
use arcmaps::triples::{enumerate_reversing_triples, TriplePattern, DEFAULT_TRIPLE_BUDGET};
use arcmaps::verify::{check_no_rotary, coprime_census, rotary_pairs, CensusMode, DEFAULT_ROTARY_BUDGET};

fn closure_size(g: &Group, gens: &[ElemId]) -> usize {
    let mut seen = vec![false; g.order()];
    let mut queue = VecDeque::from([g.identity()]);
    seen[g.identity().index()] = true;
    let mut n = 1;
    while let Some(h) = queue.pop_front() {
        for &s in gens {
            let w = g.mul(h, s);
            if !seen[w.index()] {
                seen[w.index()] = true;
                n += 1;
                queue.push_back(w);
            }
        }
    }
    n
}

fn order(g: &Group, x: ElemId) -> u64 {
    let mut y = x;
    let mut n = 1;
    while y != g.identity() {
        y = g.mul(y, x);
        n += 1;
    }
    n
}

fn involutions(g: &Group) -> Vec<ElemId> {
    g.ids().filter(|&x| x != g.identity() && g.mul(x, x) == g.identity()).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Every (a, z) with z any involution: generating pairs and their chi.
fn rotary_oracle(g: &Group) -> Vec<(ElemId, ElemId, i64)> {
    let n = g.order() as i64;
    let mut out = Vec::new();
    for z in involutions(g) {
        for a in g.ids() {
            if closure_size(g, &[a, z]) == g.order() {
                let chi = n / order(g, a) as i64 - n / 2 + n / order(g, g.mul(a, z)) as i64;
                out.push((a, z, chi));
            }
        }
    }
    out
}

#[test]
fn rotary_scan_matches_oracle() {
    for (f, p) in [(Family::Psl2, 5), (Family::Pgl2, 5), (Family::Psl2, 7)] {
        let g = build_group(f, p, 1).unwrap();
        let all = rotary_oracle(&g);
        assert!(!all.is_empty(), "some pair generates {}", g.descriptor());
        let coprime: Vec<_> = all.iter().filter(|&&(_, _, chi)| gcd(chi.unsigned_abs(), g.order() as u64 / 2) == 1).collect();
        assert!(coprime.is_empty());
        assert!(rotary_pairs(&g, DEFAULT_ROTARY_BUDGET).unwrap().is_empty());
        assert!(check_no_rotary(&g, DEFAULT_ROTARY_BUDGET).unwrap());
    }
}

#[test]
fn census_matches_cubic_oracle() {
    for (f, p) in [(Family::Psl2, 5), (Family::Pgl2, 5), (Family::Psl2, 7)] {
        let g = build_group(f, p, 1).unwrap();
        let inv = involutions(&g);
        let n = g.order() as u64;
        let mut count = 0u64;
        let mut patterns = BTreeSet::new();
        for &x in &inv {
            for &y in &inv {
                for &z in &inv {
                    if x == y || y == z || x == z {
                        continue;
                    }
                    let d = |u, v| 2 * order(&g, g.mul(u, v));
                    let (a, b, c) = (d(x, y), d(x, z), d(y, z));
                    let chi = (n / a + n / b + n / c) as i64 - (n / 2) as i64;
                    if gcd(chi.unsigned_abs(), n / 2) == 1 && closure_size(&g, &[x, y, z]) == g.order() {
                        count += 1;
                        let mut ms = [a, b, c];
                        ms.sort_unstable_by(|s, t| t.cmp(s));
                        patterns.insert(ms);
                    }
                }
            }
        }
        for mode in [CensusMode::Full, CensusMode::ClassReps] {
            let census = coprime_census(&g, mode, DEFAULT_TRIPLE_BUDGET).unwrap();
            assert_eq!(census.qualifying, count, "{} {mode:?}", g.descriptor());
            assert_eq!(census.patterns(), patterns);
        }
    }
}

#[test]
fn pattern_parity_for_p_3_mod_4() {
    for p in [7, 11] {
        let g = build_group(Family::Psl2, p, 1).unwrap();
        let q = p as u64;
        let pattern = TriplePattern::new(2 * q, q + 1, q - 1);
        assert!(enumerate_reversing_triples(&g, pattern, DEFAULT_TRIPLE_BUDGET).unwrap().is_empty());
    }
}

#[test]
fn dihedral_subgroup_orders_are_bounded() {
    for (f, p, d) in [(Family::Psl2, 13u64, 1u64), (Family::Pgl2, 7, 2), (Family::Pgl2, 11, 2)] {
        let g = build_group(f, p as u32, 1).unwrap();
        let inv = involutions(&g);
        for &u in &inv {
            for &v in inv.iter().filter(|&&v| v > u) {
                let size = 2 * order(&g, g.mul(u, v));
                let ok = (2 * p) % size == 0 || (d * (p + 1)) % size == 0 || (d * (p - 1)) % size == 0;
                assert!(ok, "dihedral subgroup of order {size} in {}", g.descriptor());
            }
        }
    }
}
