//! The classification harness: a blind census of coprime reversing maps
//! checked against the predicted stabiliser pattern, plus independent
//! checks of the group-theoretic facts the classification leans on.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfproj::{all_points, check_prime, ProjPoint};
use crate::groups::{lcm, ElemId, Family, Group, GroupDescriptor};
use crate::mapgeom::{
    build_regular_map, build_revmap, flag_system, recognize_graph, surface_invariants_with, underlying_graph,
    MapGeometry, Recognized,
};
use crate::record::{check_coprime, ElementRecord, MapRecord, SCHEMA_VERSION};
use crate::triples::{orbit_representatives, ReversingTriple, TriplePattern, DEFAULT_TRIPLE_BUDGET};

pub const DEFAULT_ROTARY_BUDGET: usize = 5_000;

/// `|G|/a - |G|/2 + |G|/b + |G|/c` for a reversing map with dihedral
/// stabiliser orders `a` (vertex), `b`, `c` (faces).
pub fn chi_from_pattern(order: u64, pattern: TriplePattern) -> i64 {
    let n = order as i64;
    n / pattern.vertex as i64 - n / 2 + n / pattern.face1 as i64 + n / pattern.face2 as i64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusMode {
    /// Every ordered triple of distinct involutions.
    Full,
    /// One `z` per involution class; counts are scaled by class size.
    ClassReps,
}

/// Generating involution triples whose reversing map has coprime `chi`
/// and `|E|`, without any assumption on the pattern.
#[derive(Debug, Clone)]
pub struct Census {
    pub mode: CensusMode,
    /// Ordered triples examined.
    pub examined: u64,
    /// Ordered qualifying triples.
    pub qualifying: u64,
    /// One triple per conjugacy orbit, in canonical form, sorted.
    pub orbits: Vec<ReversingTriple>,
}

impl Census {
    /// Distinct pattern multisets over all qualifying orbits.
    pub fn patterns(&self) -> BTreeSet<[u64; 3]> {
        self.orbits.iter().map(|t| t.pattern.multiset()).collect()
    }
}

fn qualifying_with_z(g: &Group, inv: &[ElemId], z: ElemId) -> Vec<ReversingTriple> {
    let order = g.order() as u64;
    let edges = order / 2;
    inv.par_iter()
        .filter(|&&x| x != z)
        .flat_map_iter(|&x| {
            let b = g.dihedral_order_unchecked(x, z);
            inv.iter()
                .filter(move |&&y| y != x && y != z)
                .filter_map(move |&y| {
                    let pattern = TriplePattern::new(g.dihedral_order_unchecked(x, y), b, g.dihedral_order_unchecked(y, z));
                    (check_coprime(chi_from_pattern(order, pattern), edges) && g.generates(&[x, y, z]))
                        .then_some(ReversingTriple { x, y, z, pattern, generates: true })
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

fn check_budget(g: &Group, budget: usize) -> Result<()> {
    if g.order() > budget {
        return Err(Error::BudgetExceeded { order: g.order(), budget });
    }
    Ok(())
}

pub fn coprime_census(g: &Group, mode: CensusMode, budget: usize) -> Result<Census> {
    check_budget(g, budget)?;
    let inv = g.involutions();
    let n = inv.len() as u64;
    let mut found = Vec::new();
    let mut qualifying = 0;
    match mode {
        CensusMode::Full => {
            for &z in &inv {
                let slice = qualifying_with_z(g, &inv, z);
                qualifying += slice.len() as u64;
                found.extend(slice);
            }
        }
        CensusMode::ClassReps => {
            for class in g.involution_classes() {
                let slice = qualifying_with_z(g, &inv, class[0]);
                qualifying += (slice.len() * class.len()) as u64;
                found.extend(slice);
            }
        }
    }
    let orbits = orbit_representatives(g, &found)
        .into_iter()
        .map(|(x, y, z)| ReversingTriple::new(g, x, y, z))
        .collect::<Result<Vec<_>>>()?;
    Ok(Census { mode, examined: n * (n - 1) * (n - 2), qualifying, orbits })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleRecord {
    pub triple: [ElementRecord; 3],
    pub pattern: TriplePattern,
    pub chi: i64,
}

impl TripleRecord {
    pub fn of(g: &Group, t: &ReversingTriple) -> Self {
        Self {
            triple: t.elements().map(|id| ElementRecord::of(g, id)),
            pattern: t.pattern,
            chi: chi_from_pattern(g.order() as u64, t.pattern),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub schema_version: u32,
    pub group: GroupDescriptor,
    pub mode: CensusMode,
    pub examined: u64,
    pub qualifying: u64,
    pub patterns: Vec<[u64; 3]>,
    pub orbits: Vec<TripleRecord>,
}

impl Census {
    pub fn to_record(&self, g: &Group) -> CensusRecord {
        CensusRecord {
            schema_version: SCHEMA_VERSION,
            group: g.descriptor(),
            mode: self.mode,
            examined: self.examined,
            qualifying: self.qualifying,
            patterns: self.patterns().into_iter().collect(),
            orbits: self.orbits.iter().map(|t| TripleRecord::of(g, t)).collect(),
        }
    }
}

/// The pattern the classification predicts, or `None` when it predicts no
/// coprime reversing map at all (PSL(2,p) with p ≡ 3 mod 4, or an
/// extension whose m shares a factor with |PSL(2,p)|).
pub fn predicted_pattern(desc: GroupDescriptor) -> Option<[u64; 3]> {
    if desc.family == Family::Ext && !desc.m_coprime_to_psl() {
        return None;
    }
    TriplePattern::for_family(desc).map(|t| t.multiset())
}

/// `|G|` is the lcm of the stabiliser orders and every full prime-power
/// divisor of `|G|` divides one of them.
pub fn sylow_lcm_holds(order: u64, stabilisers: &[u64]) -> bool {
    if stabilisers.iter().fold(1, |acc, &s| lcm(acc, s)) != order {
        return false;
    }
    let mut rest = order;
    let mut q = 2;
    while rest > 1 {
        if rest % q == 0 {
            let mut full = 1;
            while rest % q == 0 {
                rest /= q;
                full *= q;
            }
            if !stabilisers.iter().any(|&s| s % full == 0) {
                return false;
            }
        }
        q += 1;
    }
    true
}

/// Stabiliser orders of one vertex, one edge and one face per orbit.
pub fn check_sylow_lemma(m: &MapGeometry) -> bool {
    sylow_lcm_holds(m.group_order() as u64, &m.stabilizer_orders())
}

/// Pairs `(a, z)` with `z` an involution class representative,
/// `⟨a, z⟩ = G`, and coprime vertex-rotary cell counts
/// `|V| = |G|/|a|, |E| = |G|/2, |F| = |G|/|az|`.
pub fn rotary_pairs(g: &Group, budget: usize) -> Result<Vec<(ElemId, ElemId)>> {
    check_budget(g, budget)?;
    let n = g.order() as i64;
    let mut out = Vec::new();
    for class in g.involution_classes() {
        let z = class[0];
        let found: Vec<_> = g
            .ids()
            .collect::<Vec<_>>()
            .into_par_iter()
            .filter(|&a| {
                let chi = n / g.element_order(a) as i64 - n / 2 + n / g.element_order(g.mul(a, z)) as i64;
                check_coprime(chi, n as u64 / 2) && g.generates(&[a, z])
            })
            .map(|a| (a, z))
            .collect();
        out.extend(found);
    }
    Ok(out)
}

/// No coprime vertex-rotary map exists over `g`.
pub fn check_no_rotary(g: &Group, budget: usize) -> Result<bool> {
    Ok(rotary_pairs(g, budget)?.is_empty())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct A5Report {
    /// Generated by `(r0, r1, r2)` with `|r1 r2| = 5`, `|r0 r1| = 3` and
    /// `(r0 r2)^2 = 1`; the dual swaps `r0` and `r2`.
    pub k6: MapRecord,
    pub petersen: MapRecord,
    /// Order of the stabiliser of an incident vertex-edge pair.
    pub arc_stabilizer_order: u64,
    pub passed: bool,
}

/// The flag-regular maps of A5 ≅ PSL(2,5) on the projective plane: the
/// K₆ assembly and its dual with Petersen underlying graph.
pub fn a5_exceptional_case() -> Result<A5Report> {
    let g = Group::new(GroupDescriptor::new(Family::Psl2, 5, 1)?)?;
    let inv = g.involutions();
    let ord = |a: ElemId, b: ElemId| g.element_order(g.mul(a, b));
    let qualifies = |r0, r1, r2| {
        r0 != r2 && ord(r0, r2) == 2 && ord(r1, r2) == 5 && ord(r0, r1) == 3 && g.generates(&[r0, r1, r2])
    };
    let mut found = None;
    'search: for &r0 in &inv {
        for &r1 in &inv {
            for &r2 in &inv {
                if qualifies(r0, r1, r2) {
                    found = Some((r0, r1, r2));
                    break 'search;
                }
            }
        }
    }
    let (r0, r1, r2) = found.ok_or_else(|| Error::SearchFailed("A5 flag-regular generators".into()))?;
    let k6_map = build_regular_map(&g, r0, r1, r2)?;
    let dual_map = build_regular_map(&g, r2, r1, r0)?;
    let arc = g.subgroup_closure(&[r2]).order() as u64;
    let mut passed = true;
    for (m, counts, graph_kind, stabs) in [
        (&k6_map, (6, 15, 10), Recognized::Complete(6), [10u64, 4, 6]),
        (&dual_map, (10, 15, 6), Recognized::Petersen, [6, 4, 10]),
    ] {
        let flags = flag_system(m)?;
        let surface = surface_invariants_with(m, &flags)?;
        let c = m.counts();
        passed &= (c.v, c.e, c.faces()) == counts
            && flags.len() == g.order()
            && surface.chi == 1
            && !surface.orientable
            && surface.genus == 1
            && recognize_graph(&underlying_graph(m)) == graph_kind
            && m.stabilizer_orders() == stabs
            && check_coprime(surface.chi, c.e as u64)
            && check_sylow_lemma(m);
    }
    passed &= arc == 2;
    Ok(A5Report {
        k6: MapRecord::from_map(&g, &k6_map)?,
        petersen: MapRecord::from_map(&g, &dual_map)?,
        arc_stabilizer_order: arc,
        passed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PglActionReport {
    pub sharply_3_transitive: bool,
    pub two_point_stabiliser: bool,
    pub cyclic_p_plus_1_regular: bool,
    pub involution_fixed_points: bool,
    pub involution_classes: bool,
}

impl PglActionReport {
    pub fn all(&self) -> bool {
        self.sharply_3_transitive
            && self.two_point_stabiliser
            && self.cyclic_p_plus_1_regular
            && self.involution_fixed_points
            && self.involution_classes
    }
}

/// Exhaustive check of the action of PGL(2,p) and PSL(2,p) on the p+1
/// points of the projective line.
pub fn pgl_action_report(p: u32) -> Result<PglActionReport> {
    check_prime(p)?;
    let g = Group::new(GroupDescriptor::new(Family::Pgl2, p, 1)?)?;
    let l = Group::new(GroupDescriptor::new(Family::Psl2, p, 1)?)?;
    let pts = all_points(p)?;
    let n = pts.len();
    let images: Vec<Vec<u32>> = g.ids().map(|x| pts.iter().map(|&pt| g.act(x, pt).0).collect()).collect();

    // every ordered triple of distinct points is hit exactly once by (0,1,2)
    let mut hits = vec![0u32; n * n * n];
    for im in &images {
        hits[(im[0] as usize * n + im[1] as usize) * n + im[2] as usize] += 1;
    }
    let sharply_3_transitive = (0..n * n * n).all(|i| {
        let (a, b, c) = (i / (n * n), i / n % n, i % n);
        hits[i] == u32::from(a != b && b != c && a != c)
    });

    // G_{στ} cyclic of order p-1, regular on the other p-1 points
    let two_point_stabiliser = pts.iter().all(|&s| {
        pts.iter().filter(|&&t| t != s).all(|&t| {
            let stab: Vec<usize> = (0..images.len())
                .filter(|&i| images[i][s.0 as usize] == s.0 && images[i][t.0 as usize] == t.0)
                .collect();
            let cyclic = stab.iter().any(|&i| g.element_order(ElemId(i as u32)) == p as u64 - 1);
            let rest: Vec<ProjPoint> = pts.iter().copied().filter(|&u| u != s && u != t).collect();
            let regular = rest.iter().all(|&u| {
                let mut seen = vec![false; n];
                stab.iter().all(|&i| !std::mem::replace(&mut seen[images[i][u.0 as usize] as usize], true))
            });
            stab.len() == p as usize - 1 && cyclic && regular
        })
    });

    // every element of order p+1 generates a regular subgroup, i.e. no
    // nontrivial power fixes a point
    let cyclic_p_plus_1_regular = g.ids().filter(|&x| g.element_order(x) == p as u64 + 1).all(|x| {
        let mut y = x;
        (1..=p).all(|_| {
            let ok = pts.iter().all(|&pt| g.act(y, pt) != pt);
            y = g.mul(y, x);
            ok
        })
    });

    // an involution fixes two points if it lies in PSL and p ≡ 1 (mod 4),
    // or lies outside PSL and p ≡ 3; otherwise none
    let involution_fixed_points = g.involutions().into_iter().all(|x| {
        let fixed = pts.iter().filter(|&&pt| g.act(x, pt) == pt).count();
        let two = (p % 4 == 1) == g.in_psl(x);
        fixed == if two { 2 } else { 0 }
    });

    let classes = g.involution_classes();
    let involution_classes = classes.len() == 2
        && classes.iter().all(|c| c.iter().all(|&x| g.in_psl(x) == g.in_psl(c[0])))
        && l.involution_classes().len() == 1;

    Ok(PglActionReport {
        sharply_3_transitive,
        two_point_stabiliser,
        cyclic_p_plus_1_regular,
        involution_fixed_points,
        involution_classes,
    })
}

pub fn check_pgl_action(p: u32) -> Result<bool> {
    Ok(pgl_action_report(p)?.all())
}

/// For involutions `u ≠ v` of PGL(2,p): dihedral order 2(p±1) puts
/// exactly one of them in PSL(2,p); dihedral order 2p puts both inside
/// when p ≡ 1 (mod 4) and both outside when p ≡ 3.
pub fn check_membership_lemma(p: u32) -> Result<bool> {
    let g = Group::new(GroupDescriptor::new(Family::Pgl2, p, 1)?)?;
    let p64 = p as u64;
    let inv = g.involutions();
    Ok(inv.par_iter().all(|&u| {
        inv.iter().filter(|&&v| v != u).all(|&v| {
            let d = g.dihedral_order_unchecked(u, v);
            let (iu, iv) = (g.in_psl(u), g.in_psl(v));
            if d == 2 * (p64 + 1) || d == 2 * (p64 - 1) {
                iu != iv
            } else if d == 2 * p64 {
                iu == iv && iu == (p % 4 == 1)
            } else {
                true
            }
        })
    }))
}

/// In every triple with the family pattern, the member outside the vertex
/// pair lies in PSL iff p ≡ 3 (mod 4), the other two iff p ≡ 1.
pub fn membership_split_holds(g: &Group, triples: &[ReversingTriple]) -> bool {
    let p = g.p() as u64;
    let pm = 2 * p * g.m() as u64;
    triples.iter().all(|t| {
        let roles = if t.pattern.vertex == pm {
            (t.x, t.y, t.z)
        } else if t.pattern.face1 == pm {
            (t.x, t.z, t.y)
        } else if t.pattern.face2 == pm {
            (t.y, t.z, t.x)
        } else {
            return false;
        };
        let one = p % 4 == 1;
        g.in_psl(roles.0) == one && g.in_psl(roles.1) == one && g.in_psl(roles.2) != one
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub budget: usize,
    pub rotary_budget: usize,
    pub mode: CensusMode,
    /// Replace the predicted pattern (`Some(None)` predicts nothing).
    pub expected: Option<Option<[u64; 3]>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_TRIPLE_BUDGET, rotary_budget: DEFAULT_ROTARY_BUDGET, mode: CensusMode::ClassReps, expected: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaChecks {
    pub sylow: bool,
    /// `None` when the group exceeds the rotary budget.
    pub no_rotary: Option<bool>,
    pub pgl_action: bool,
    pub membership: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub schema_version: u32,
    pub config: GroupDescriptor,
    pub group_order: u64,
    pub census_mode: CensusMode,
    pub triples_examined: u64,
    pub qualifying_triples: u64,
    pub orbits: usize,
    pub patterns_found: Vec<[u64; 3]>,
    pub predicted: Option<[u64; 3]>,
    pub pattern_match: bool,
    pub maps: Vec<MapRecord>,
    pub lemma_checks: LemmaChecks,
    pub verdict: Verdict,
}

pub fn verify_theorem(family: Family, p: u32, m: u32, budget: usize) -> Result<TheoremReport> {
    verify_theorem_with(GroupDescriptor::new(family, p, m)?, VerifyOptions { budget, ..VerifyOptions::default() })
}

pub fn verify_theorem_with(desc: GroupDescriptor, opts: VerifyOptions) -> Result<TheoremReport> {
    if desc.order() > opts.budget as u64 {
        return Err(Error::BudgetExceeded { order: desc.order() as usize, budget: opts.budget });
    }
    let g = Group::new(desc)?;
    let census = coprime_census(&g, opts.mode, opts.budget)?;
    let predicted = opts.expected.unwrap_or_else(|| predicted_pattern(desc));
    let patterns_found: Vec<[u64; 3]> = census.patterns().into_iter().collect();
    let pattern_match = match predicted {
        Some(pat) => patterns_found == [pat],
        None => patterns_found.is_empty(),
    };

    let built: Vec<(MapRecord, bool)> = census
        .orbits
        .par_iter()
        .map(|t| {
            let m = build_revmap(&g, t)?;
            Ok((MapRecord::from_map(&g, &m)?, check_sylow_lemma(&m)))
        })
        .collect::<Result<_>>()?;
    let maps_ok = built.iter().all(|(r, _)| r.coprime && !r.orientable);
    let sylow = built.iter().all(|&(_, s)| s);
    let maps: Vec<MapRecord> = built.into_iter().map(|(r, _)| r).collect();

    let no_rotary = if g.order() <= opts.rotary_budget { Some(check_no_rotary(&g, opts.rotary_budget)?) } else { None };
    let lemma_checks = LemmaChecks {
        sylow,
        no_rotary,
        pgl_action: check_pgl_action(desc.p)?,
        membership: check_membership_lemma(desc.p)?
            && (desc.family == Family::Psl2 || membership_split_holds(&g, &census.orbits)),
    };
    let lemmas_ok = lemma_checks.sylow && lemma_checks.no_rotary != Some(false) && lemma_checks.pgl_action && lemma_checks.membership;
    let verdict = if pattern_match && maps_ok && lemmas_ok { Verdict::Pass } else { Verdict::Fail };
    Ok(TheoremReport {
        schema_version: SCHEMA_VERSION,
        config: desc,
        group_order: desc.order(),
        census_mode: census.mode,
        triples_examined: census.examined,
        qualifying_triples: census.qualifying,
        orbits: census.orbits.len(),
        patterns_found,
        predicted,
        pattern_match,
        maps,
        lemma_checks,
        verdict,
    })
}

/// Configurations covered by the standard matrix.
pub fn verify_matrix_configs() -> Vec<GroupDescriptor> {
    let spec = [
        (Family::Psl2, 5, 1),
        (Family::Psl2, 7, 1),
        (Family::Psl2, 11, 1),
        (Family::Psl2, 13, 1),
        (Family::Pgl2, 5, 1),
        (Family::Pgl2, 7, 1),
        (Family::Pgl2, 11, 1),
        (Family::Ext, 7, 3),
        (Family::Ext, 7, 5),
        (Family::Ext, 11, 3),
    ];
    spec.iter().map(|&(f, p, m)| GroupDescriptor::new(f, p, m).expect("matrix configs are valid")).collect()
}

pub fn verify_matrix(opts: VerifyOptions) -> Result<Vec<TheoremReport>> {
    verify_matrix_configs().into_iter().map(|d| verify_theorem_with(d, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_group;

    #[test]
    fn chi_from_pattern_examples() {
        assert_eq!(chi_from_pattern(60, TriplePattern::new(10, 6, 4)), 1);
        assert_eq!(chi_from_pattern(336, TriplePattern::new(14, 16, 12)), -95);
        assert_eq!(chi_from_pattern(1680, TriplePattern::new(70, 16, 12)), -571);
        assert_eq!(chi_from_pattern(1008, TriplePattern::new(42, 16, 12)), -333);
    }

    #[test]
    fn sylow_examples() {
        assert!(sylow_lcm_holds(60, &[10, 6, 4, 2]));
        assert!(sylow_lcm_holds(336, &[14, 16, 12, 2]));
        assert!(!sylow_lcm_holds(60, &[10, 6, 6, 2]));
    }

    #[test]
    fn predictions() {
        let d = |f, p, m| GroupDescriptor::new(f, p, m).unwrap();
        assert_eq!(predicted_pattern(d(Family::Psl2, 5, 1)), Some([10, 6, 4]));
        assert_eq!(predicted_pattern(d(Family::Psl2, 7, 1)), None);
        assert_eq!(predicted_pattern(d(Family::Ext, 7, 5)), Some([70, 16, 12]));
        assert_eq!(predicted_pattern(d(Family::Ext, 7, 3)), None);
    }

    #[test]
    fn census_modes_agree_on_psl5() {
        let g = build_group(Family::Psl2, 5, 1).unwrap();
        let full = coprime_census(&g, CensusMode::Full, DEFAULT_TRIPLE_BUDGET).unwrap();
        let reps = coprime_census(&g, CensusMode::ClassReps, DEFAULT_TRIPLE_BUDGET).unwrap();
        assert_eq!(full.examined, 15 * 14 * 13);
        assert_eq!(full.qualifying, reps.qualifying);
        assert_eq!(full.orbits, reps.orbits);
        assert_eq!(full.patterns(), BTreeSet::from([[10, 6, 4]]));
    }

    #[test]
    fn rotary_examples() {
        for (f, p) in [(Family::Psl2, 5), (Family::Pgl2, 5), (Family::Psl2, 7)] {
            let g = build_group(f, p, 1).unwrap();
            assert!(check_no_rotary(&g, DEFAULT_ROTARY_BUDGET).unwrap());
        }
        let g = build_group(Family::Pgl2, 11, 1).unwrap();
        assert!(matches!(check_no_rotary(&g, 1000), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn pgl_action_small() {
        assert!(check_pgl_action(5).unwrap());
        assert!(check_pgl_action(7).unwrap());
        assert!(check_pgl_action(4).is_err());
    }

    #[test]
    fn membership_small() {
        assert!(check_membership_lemma(5).unwrap());
        assert!(check_membership_lemma(7).unwrap());
    }

    #[test]
    fn a5_case() {
        let r = a5_exceptional_case().unwrap();
        assert!(r.passed);
        assert_eq!(r.k6.graph.recognized, Recognized::Complete(6));
        assert_eq!(r.petersen.graph.recognized, Recognized::Petersen);
        assert_eq!(r.k6.chi, 1);
    }

    #[test]
    fn verify_examples() {
        let r = verify_theorem(Family::Psl2, 5, 1, DEFAULT_TRIPLE_BUDGET).unwrap();
        assert_eq!(r.patterns_found, vec![[10, 6, 4]]);
        assert!(r.maps.iter().all(|m| m.chi == 1));
        assert_eq!(r.verdict, Verdict::Pass);
        let r = verify_theorem(Family::Psl2, 7, 1, DEFAULT_TRIPLE_BUDGET).unwrap();
        assert!(r.patterns_found.is_empty());
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn wrong_prediction_fails() {
        let desc = GroupDescriptor::new(Family::Psl2, 5, 1).unwrap();
        let opts = VerifyOptions { expected: Some(Some([10, 6, 6])), ..VerifyOptions::default() };
        assert_eq!(verify_theorem_with(desc, opts).unwrap().verdict, Verdict::Fail);
    }
}
