//! Reversing triples: the explicit constructions over PSL(2,p), PGL(2,p)
//! and (Z_m × PSL(2,p)):2, and exhaustive enumeration to compare against.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfproj::{ProjMatrix, ProjPoint};
use crate::groups::{gcd, ElemId, Family, Group, GroupDescriptor};

pub const DEFAULT_TRIPLE_BUDGET: usize = 20_000;

/// Orders of the three dihedral subgroups of a triple `(x, y, z)`:
/// `|⟨x,y⟩|` (vertex), `|⟨x,z⟩|` and `|⟨y,z⟩|` (the two face orbits).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TriplePattern {
    pub vertex: u64,
    pub face1: u64,
    pub face2: u64,
}

impl TriplePattern {
    pub fn new(vertex: u64, face1: u64, face2: u64) -> Self {
        Self { vertex, face1, face2 }
    }

    pub fn of(g: &Group, x: ElemId, y: ElemId, z: ElemId) -> Result<Self> {
        Ok(Self { vertex: g.dihedral_order(x, y)?, face1: g.dihedral_order(x, z)?, face2: g.dihedral_order(y, z)? })
    }

    /// The orders as a multiset, largest first.
    pub fn multiset(&self) -> [u64; 3] {
        let mut v = [self.vertex, self.face1, self.face2];
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// The stabiliser pattern a family admits, oriented as in the
    /// constructions: `⟨x,y⟩` carries the factor p, `⟨x,z⟩` the p+1 part
    /// and `⟨y,z⟩` the p-1 part. `None` when the family has no pattern
    /// (PSL(2,p) with p ≡ 3 mod 4).
    pub fn for_family(desc: GroupDescriptor) -> Option<Self> {
        let p = desc.p as u64;
        match desc.family {
            Family::Psl2 if p % 4 == 1 => Some(Self::new(2 * p, p + 1, p - 1)),
            Family::Psl2 => None,
            Family::Pgl2 => Some(Self::new(2 * p, 2 * (p + 1), 2 * (p - 1))),
            Family::Ext => Some(Self::new(2 * desc.m as u64 * p, 2 * (p + 1), 2 * (p - 1))),
        }
    }
}

impl std::fmt::Display for TriplePattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{}, {}, {}}}", self.vertex, self.face1, self.face2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReversingTriple {
    pub x: ElemId,
    pub y: ElemId,
    pub z: ElemId,
    pub pattern: TriplePattern,
    pub generates: bool,
}

impl ReversingTriple {
    /// Three pairwise distinct involutions; records the pattern and whether
    /// they generate `g`.
    pub fn new(g: &Group, x: ElemId, y: ElemId, z: ElemId) -> Result<Self> {
        let pattern = TriplePattern::of(g, x, y, z)?;
        Ok(Self { x, y, z, pattern, generates: g.generates(&[x, y, z]) })
    }

    pub fn elements(&self) -> [ElemId; 3] {
        [self.x, self.y, self.z]
    }

    /// Conjugate every member by `h`.
    pub fn conjugate(&self, g: &Group, h: ElemId) -> Self {
        Self { x: g.conjugate(self.x, h), y: g.conjugate(self.y, h), z: g.conjugate(self.z, h), ..*self }
    }
}

/// Elements fixing every point in `points` (matrix part acting on P¹).
pub fn pointwise_stabiliser(g: &Group, points: &[ProjPoint]) -> Vec<ElemId> {
    g.ids().filter(|&x| points.iter().all(|&pt| g.act(x, pt) == pt)).collect()
}

fn require_family(g: &Group, family: Family) -> Result<()> {
    if g.family() == family {
        Ok(())
    } else {
        Err(Error::Precondition(format!("expected a {family} group, got {}", g.descriptor())))
    }
}

fn first_involution_fixing(
    g: &Group,
    z: ElemId,
    delta: ProjPoint,
    order: u64,
    psl_only: bool,
) -> Option<ElemId> {
    g.ids().find(|&w| {
        w != z
            && g.is_involution(w)
            && (!psl_only || g.in_psl(w))
            && g.act(w, delta) == delta
            && g.dihedral_order_unchecked(z, w) == order
    })
}

/// The involution of the diagonal torus `L_{στ}` (stabiliser of points 0
/// and 1 inside PSL(2,p)), for p ≡ 1 (mod 4).
pub fn psl_torus_involution(g: &Group) -> Result<ElemId> {
    require_family(g, Family::Psl2)?;
    let p = g.p();
    if p % 4 != 1 {
        return Err(Error::Precondition(format!("p = {p} is not 1 mod 4")));
    }
    let torus_involutions: Vec<ElemId> = pointwise_stabiliser(g, &[ProjPoint(0), ProjPoint(1)])
        .into_iter()
        .filter(|&x| g.is_involution(x))
        .collect();
    match torus_involutions[..] {
        [z] => Ok(z),
        _ => Err(Error::SearchFailed("torus does not have a unique involution".into())),
    }
}

/// `(x_k, y_k, z)` in PSL(2,p), p ≡ 1 (mod 4): z is the torus involution,
/// x_k and y_k are involutions fixing point k with `|⟨z,x_k⟩| = p+1` and
/// `|⟨z,y_k⟩| = p-1`. Valid for `2 <= k <= p`.
pub fn psl_triple(g: &Group, k: u32) -> Result<ReversingTriple> {
    require_family(g, Family::Psl2)?;
    let p = g.p();
    if p % 4 != 1 {
        return Err(Error::Precondition(format!("p = {p} is not 1 mod 4")));
    }
    if !(2..=p).contains(&k) {
        return Err(Error::Precondition(format!("point index {k} outside 2..={p}")));
    }
    let z = psl_torus_involution(g)?;
    let delta = ProjPoint(k);
    let x = first_involution_fixing(g, z, delta, p as u64 + 1, true)
        .ok_or_else(|| Error::SearchFailed(format!("x_{k} for p = {p}")))?;
    let y = first_involution_fixing(g, z, delta, p as u64 - 1, true)
        .ok_or_else(|| Error::SearchFailed(format!("y_{k} for p = {p}")))?;
    ReversingTriple::new(g, x, y, z)
}

/// The involution of `H = ⟨h⟩`, `h` the canonically first element of order
/// p+1 in PGL(2,p).
pub fn pgl_cyclic_involution(g: &Group) -> Result<ElemId> {
    require_family(g, Family::Pgl2)?;
    let n = g.p() as u64 + 1;
    let h = g
        .ids()
        .find(|&x| g.element_order(x) == n)
        .ok_or_else(|| Error::SearchFailed("element of order p+1".into()))?;
    Ok(g.pow(h, n / 2))
}

/// An involution `w` fixing `delta` with `|⟨z,w⟩| = 2(p+ε)`.
pub fn find_partner(g: &Group, z: ElemId, delta: ProjPoint, epsilon: i8) -> Result<ElemId> {
    require_family(g, Family::Pgl2)?;
    let p = g.p() as u64;
    if delta.0 as u64 > p {
        return Err(Error::Precondition(format!("point index {} outside 0..={p}", delta.0)));
    }
    let target = match epsilon {
        1 => 2 * (p + 1),
        -1 => 2 * (p - 1),
        e => return Err(Error::Precondition(format!("epsilon must be ±1, got {e}"))),
    };
    let in_cyclic = g
        .ids()
        .any(|h| g.element_order(h) == p + 1 && g.pow(h, (p + 1) / 2) == z);
    if !in_cyclic {
        return Err(Error::Precondition("z is not the involution of a cyclic subgroup of order p+1".into()));
    }
    first_involution_fixing(g, z, delta, target, false)
        .ok_or_else(|| Error::SearchFailed(format!("partner at point {} with epsilon {epsilon}", delta.0)))
}

/// `(x_k, y_k, z)` in PGL(2,p) for `0 <= k <= p`.
pub fn pgl_triple(g: &Group, k: u32) -> Result<ReversingTriple> {
    require_family(g, Family::Pgl2)?;
    let p = g.p();
    if k > p {
        return Err(Error::Precondition(format!("point index {k} outside 0..={p}")));
    }
    let z = pgl_cyclic_involution(g)?;
    let x = find_partner(g, z, ProjPoint(k), 1)?;
    let y = find_partner(g, z, ProjPoint(k), -1)?;
    ReversingTriple::new(g, x, y, z)
}

fn ext_check_shift(m: u32, c1: u32, c2: u32) -> Result<()> {
    let diff = (c1 as i64 - c2 as i64).rem_euclid(m as i64) as u64;
    if gcd(diff, m as u64) != 1 {
        return Err(Error::Precondition(format!("c1 - c2 = {diff} does not generate Z_{m}")));
    }
    Ok(())
}

fn lift(x: &Group, pgl: &Group, id: ElemId, exponent: u32) -> ElemId {
    x.with_exponent(exponent, &pgl.matrix(id)).expect("every PGL matrix occurs in the extension")
}

/// `(c^{c1}·x_k, c^{c2}·y_k, z)` in (Z_m × PSL(2,p)):2, built on the
/// PGL(2,p) triple for point k.
pub fn ext_triple(x: &Group, k: u32, c1: u32, c2: u32) -> Result<ReversingTriple> {
    require_family(x, Family::Ext)?;
    let m = x.m();
    ext_check_shift(m, c1, c2)?;
    let pgl = Group::new(GroupDescriptor::new(Family::Pgl2, x.p(), 1)?)?;
    let base = pgl_triple(&pgl, k)?;
    ReversingTriple::new(x, lift(x, &pgl, base.x, c1 % m), lift(x, &pgl, base.y, c2 % m), lift(x, &pgl, base.z, 0))
}

fn check_budget(g: &Group, budget: usize) -> Result<()> {
    if g.order() > budget {
        Err(Error::BudgetExceeded { order: g.order(), budget })
    } else {
        Ok(())
    }
}

/// All generating triples `(x, y, z0)` with the exact ordered pattern and
/// the given `z0`.
pub fn enumerate_with_z(g: &Group, pattern: TriplePattern, z0: ElemId) -> Vec<ReversingTriple> {
    let inv = g.involutions();
    let xs: Vec<ElemId> = inv
        .iter()
        .copied()
        .filter(|&x| x != z0 && g.dihedral_order_unchecked(x, z0) == pattern.face1)
        .collect();
    let ys: Vec<ElemId> = inv
        .iter()
        .copied()
        .filter(|&y| y != z0 && g.dihedral_order_unchecked(y, z0) == pattern.face2)
        .collect();
    xs.par_iter()
        .flat_map_iter(|&x| {
            ys.iter()
                .filter(move |&&y| y != x && g.dihedral_order_unchecked(x, y) == pattern.vertex)
                .filter(move |&&y| g.generates(&[x, y, z0]))
                .map(move |&y| ReversingTriple { x, y, z: z0, pattern, generates: true })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Every ordered generating triple of involutions with the given pattern.
///
/// Scans one representative `z0` per involution class and transports the
/// results to the other class members by conjugation; the output is sorted
/// by `(x, y, z)`.
pub fn enumerate_reversing_triples(g: &Group, pattern: TriplePattern, budget: usize) -> Result<Vec<ReversingTriple>> {
    check_budget(g, budget)?;
    let mut out = Vec::new();
    for class in g.involution_classes() {
        let z0 = class[0];
        let slice = enumerate_with_z(g, pattern, z0);
        if slice.is_empty() {
            continue;
        }
        for (_, h) in g.conjugators(z0) {
            out.extend(slice.iter().map(|t| t.conjugate(g, h)));
        }
    }
    out.sort_unstable();
    Ok(out)
}

type Triple = (ElemId, ElemId, ElemId);

/// The conjugators `h` sending `x` to the least member of its class; they
/// form one coset of the centraliser of `x`.
fn minimizing_conjugators(g: &Group, x: ElemId) -> Vec<ElemId> {
    let mut least = ElemId(u32::MAX);
    let mut hs = Vec::new();
    for h in g.ids() {
        let w = g.conjugate(x, h);
        if w < least {
            least = w;
            hs.clear();
        }
        if w == least {
            hs.push(h);
        }
    }
    hs
}

fn least_conjugate(g: &Group, t: &ReversingTriple, hs: &[ElemId]) -> Triple {
    hs.iter()
        .map(|&h| (g.conjugate(t.x, h), g.conjugate(t.y, h), g.conjugate(t.z, h)))
        .min()
        .expect("every element has a conjugator")
}

/// Lexicographically least simultaneous conjugate of `(x, y, z)`.
pub fn canonical_form(g: &Group, t: &ReversingTriple) -> Triple {
    least_conjugate(g, t, &minimizing_conjugators(g, t.x))
}

/// Canonical forms of the conjugacy orbits met by `triples`, sorted.
pub fn orbit_representatives(g: &Group, triples: &[ReversingTriple]) -> Vec<Triple> {
    let mut xs: Vec<ElemId> = triples.iter().map(|t| t.x).collect();
    xs.sort_unstable();
    xs.dedup();
    let cosets: HashMap<ElemId, Vec<ElemId>> = xs.par_iter().map(|&x| (x, minimizing_conjugators(g, x))).collect();
    let mut reps: Vec<_> = triples.par_iter().map(|t| least_conjugate(g, t, &cosets[&t.x])).collect();
    reps.sort_unstable();
    reps.dedup();
    reps
}

/// All triples the PSL construction can produce with the torus involution
/// as z: every k in 2..=p and every qualifying pair of involutions fixing
/// point k.
pub fn psl_construction_set(g: &Group) -> Result<Vec<ReversingTriple>> {
    let z = psl_torus_involution(g)?;
    let p = g.p();
    let mut out = Vec::new();
    for k in 2..=p {
        fixing_pairs(g, z, ProjPoint(k), p as u64 + 1, p as u64 - 1, true, &mut out)?;
    }
    out.sort_unstable();
    Ok(out)
}

/// All triples the PGL construction can produce for the chosen z.
pub fn pgl_construction_set(g: &Group) -> Result<Vec<ReversingTriple>> {
    require_family(g, Family::Pgl2)?;
    let z = pgl_cyclic_involution(g)?;
    let p = g.p() as u64;
    let mut out = Vec::new();
    for k in 0..=g.p() {
        fixing_pairs(g, z, ProjPoint(k), 2 * (p + 1), 2 * (p - 1), false, &mut out)?;
    }
    out.sort_unstable();
    Ok(out)
}

/// Lifts of every PGL construction triple by every admissible `(c1, c2)`.
pub fn ext_construction_set(x: &Group) -> Result<Vec<ReversingTriple>> {
    require_family(x, Family::Ext)?;
    let m = x.m();
    let pgl = Group::new(GroupDescriptor::new(Family::Pgl2, x.p(), 1)?)?;
    let base = pgl_construction_set(&pgl)?;
    let mut out = Vec::new();
    for t in &base {
        for c1 in 0..m {
            for c2 in 0..m {
                if ext_check_shift(m, c1, c2).is_err() {
                    continue;
                }
                out.push(ReversingTriple::new(x, lift(x, &pgl, t.x, c1), lift(x, &pgl, t.y, c2), lift(x, &pgl, t.z, 0))?);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn fixing_pairs(
    g: &Group,
    z: ElemId,
    delta: ProjPoint,
    order_x: u64,
    order_y: u64,
    psl_only: bool,
    out: &mut Vec<ReversingTriple>,
) -> Result<()> {
    let candidates: Vec<ElemId> = g
        .ids()
        .filter(|&w| w != z && g.is_involution(w) && (!psl_only || g.in_psl(w)) && g.act(w, delta) == delta)
        .collect();
    for &x in candidates.iter().filter(|&&w| g.dihedral_order_unchecked(z, w) == order_x) {
        for &y in candidates.iter().filter(|&&w| g.dihedral_order_unchecked(z, w) == order_y) {
            out.push(ReversingTriple::new(g, x, y, z)?);
        }
    }
    Ok(())
}

/// The generator `c = (1, I)` of the cyclic factor.
pub fn cyclic_generator(x: &Group) -> Result<ElemId> {
    require_family(x, Family::Ext)?;
    x.with_exponent(1, &ProjMatrix::identity(x.p())?)
        .ok_or_else(|| Error::SearchFailed("generator of the cyclic factor".into()))
}
