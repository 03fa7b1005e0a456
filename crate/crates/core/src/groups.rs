//! Fully materialized groups: PSL(2,p), PGL(2,p), and the extensions
//! (Z_m × PSL(2,p)):2.
//!
//! Elements are stored once, in canonical order (lexicographic on
//! `(exponent, a, b, c, d)`), and referred to by [`ElemId`], their rank in
//! that order. Products are computed arithmetically and mapped back to ids
//! through a dense key table, so no Cayley table is kept.
//!
//! An extension element `(i, g)` stands for `cⁱ·g` where `c` generates the
//! cyclic factor and `g c g⁻¹ = c^ε(g)`, with `ε(g) = +1` on PSL(2,p) and
//! `-1` on the other coset. Hence `(i,g)·(j,h) = (i + ε(g)·j, gh)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfproj::{check_prime, inv_mod, is_nonzero_square, ProjMatrix, ProjPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Psl2,
    Pgl2,
    Ext,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Psl2 => "psl2",
            Family::Pgl2 => "pgl2",
            Family::Ext => "ext",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "psl2" | "psl" => Ok(Family::Psl2),
            "pgl2" | "pgl" => Ok(Family::Pgl2),
            "ext" => Ok(Family::Ext),
            other => Err(Error::InvalidParameters(format!("unknown family `{other}`"))),
        }
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// `{family, p, m}`; `m` is 1 except for the extension family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub family: Family,
    pub p: u32,
    pub m: u32,
}

impl GroupDescriptor {
    pub fn new(family: Family, p: u32, m: u32) -> Result<Self> {
        check_prime(p)?;
        match family {
            Family::Psl2 | Family::Pgl2 => {
                if m != 1 {
                    return Err(Error::InvalidParameters(format!("{family} takes m = 1, got {m}")));
                }
            }
            Family::Ext => {
                if p % 4 != 3 {
                    return Err(Error::InvalidParameters(format!(
                        "ext requires p ≡ 3 (mod 4), got p = {p}"
                    )));
                }
                if m <= 1 || m % 2 == 0 {
                    return Err(Error::InvalidParameters(format!("ext requires odd m > 1, got m = {m}")));
                }
            }
        }
        Ok(Self { family, p, m })
    }

    pub fn psl_order(p: u32) -> u64 {
        let p = p as u64;
        p * (p - 1) * (p + 1) / 2
    }

    pub fn order(&self) -> u64 {
        let pgl = 2 * Self::psl_order(self.p);
        match self.family {
            Family::Psl2 => pgl / 2,
            Family::Pgl2 => pgl,
            Family::Ext => self.m as u64 * pgl,
        }
    }

    /// Whether `gcd(m, |PSL(2,p)|) = 1`; trivially true for m = 1.
    pub fn m_coprime_to_psl(&self) -> bool {
        gcd(self.m as u64, Self::psl_order(self.p)) == 1
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Psl2 => write!(f, "PSL(2,{})", self.p),
            Family::Pgl2 => write!(f, "PGL(2,{})", self.p),
            Family::Ext => write!(f, "(Z_{} x PSL(2,{})):2", self.m, self.p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Proj(ProjMatrix),
    Ext { exponent: u32, mat: ProjMatrix },
}

impl GroupElement {
    pub fn matrix(&self) -> ProjMatrix {
        match *self {
            GroupElement::Proj(m) => m,
            GroupElement::Ext { mat, .. } => mat,
        }
    }

    pub fn exponent(&self) -> u32 {
        match *self {
            GroupElement::Proj(_) => 0,
            GroupElement::Ext { exponent, .. } => exponent,
        }
    }
}

/// Index of an element in its group's canonical element list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemId(pub u32);

impl ElemId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

const ABSENT: u32 = u32::MAX;

pub struct Group {
    desc: GroupDescriptor,
    /// `(exponent, a, b, c, d)` per element, canonical order.
    raw: Vec<[u32; 5]>,
    lookup: Vec<u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    psl: Vec<bool>,
    field_inv: Vec<u32>,
    identity: ElemId,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group").field("desc", &self.desc).field("order", &self.order()).finish()
    }
}

pub fn build_group(family: Family, p: u32, m: u32) -> Result<Group> {
    Group::new(GroupDescriptor::new(family, p, m)?)
}

impl Group {
    pub fn new(desc: GroupDescriptor) -> Result<Self> {
        let GroupDescriptor { family, p, m } = GroupDescriptor::new(desc.family, desc.p, desc.m)?;
        let mut mats = Vec::new();
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        let first = [a, b, c, d].into_iter().find(|&e| e != 0);
                        if first != Some(1) {
                            continue;
                        }
                        let det = (a as u64 * d as u64 + (p as u64 - b as u64) * c as u64) % p as u64;
                        if det == 0 {
                            continue;
                        }
                        if family == Family::Psl2 && !is_nonzero_square(det as u32, p) {
                            continue;
                        }
                        mats.push([a, b, c, d]);
                    }
                }
            }
        }
        let mut raw = Vec::with_capacity(mats.len() * m as usize);
        for e in 0..m {
            for &[a, b, c, d] in &mats {
                raw.push([e, a, b, c, d]);
            }
        }
        let key_space = m as usize * (p as usize).pow(4);
        let mut lookup = vec![ABSENT; key_space];
        for (i, r) in raw.iter().enumerate() {
            lookup[key(r, p)] = i as u32;
        }
        let mut field_inv = vec![0; p as usize];
        for x in 1..p {
            field_inv[x as usize] = inv_mod(x, p);
        }
        let psl = raw
            .iter()
            .map(|r| {
                let det = (r[1] as u64 * r[4] as u64 + (p as u64 - r[2] as u64) * r[3] as u64) % p as u64;
                is_nonzero_square(det as u32, p)
            })
            .collect();
        let identity = lookup[key(&[0, 1, 0, 0, 1], p)];
        let mut g = Group {
            desc: GroupDescriptor { family, p, m },
            raw,
            lookup,
            inverse: Vec::new(),
            orders: Vec::new(),
            psl,
            field_inv,
            identity: ElemId(identity),
        };
        debug_assert_eq!(g.raw.len() as u64, g.desc.order());
        g.inverse = (0..g.raw.len()).map(|i| g.compute_inverse(ElemId(i as u32)).0).collect();
        g.orders = (0..g.raw.len()).map(|i| g.compute_order(ElemId(i as u32))).collect();
        Ok(g)
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.desc
    }

    pub fn family(&self) -> Family {
        self.desc.family
    }

    pub fn p(&self) -> u32 {
        self.desc.p
    }

    pub fn m(&self) -> u32 {
        self.desc.m
    }

    pub fn order(&self) -> usize {
        self.raw.len()
    }

    pub fn identity(&self) -> ElemId {
        self.identity
    }

    pub fn ids(&self) -> impl Iterator<Item = ElemId> + '_ {
        (0..self.raw.len() as u32).map(ElemId)
    }

    pub fn element(&self, id: ElemId) -> GroupElement {
        let [e, a, b, c, d] = self.raw[id.index()];
        let mat = ProjMatrix::from_normalized_unchecked(a, b, c, d, self.desc.p);
        match self.desc.family {
            Family::Ext => GroupElement::Ext { exponent: e, mat },
            _ => GroupElement::Proj(mat),
        }
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.ids().map(|id| self.element(id)).collect()
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<ElemId> {
        let mat = g.matrix();
        if mat.modulus() != self.desc.p {
            return None;
        }
        let exponent = g.exponent();
        let ext = matches!(g, GroupElement::Ext { .. });
        if ext != (self.desc.family == Family::Ext) || exponent >= self.desc.m {
            return None;
        }
        let [a, b, c, d] = mat.entries();
        match self.lookup[key(&[exponent, a, b, c, d], self.desc.p)] {
            ABSENT => None,
            i => Some(ElemId(i)),
        }
    }

    /// Element with exponent part 0 and the given matrix part.
    pub fn from_matrix(&self, mat: &ProjMatrix) -> Option<ElemId> {
        self.with_exponent(0, mat)
    }

    pub fn with_exponent(&self, exponent: u32, mat: &ProjMatrix) -> Option<ElemId> {
        let g = match self.desc.family {
            Family::Ext => GroupElement::Ext { exponent: exponent % self.desc.m, mat: *mat },
            _ if exponent == 0 => GroupElement::Proj(*mat),
            _ => return None,
        };
        self.index_of(&g)
    }

    pub fn matrix(&self, id: ElemId) -> ProjMatrix {
        let [_, a, b, c, d] = self.raw[id.index()];
        ProjMatrix::from_normalized_unchecked(a, b, c, d, self.desc.p)
    }

    pub fn exponent(&self, id: ElemId) -> u32 {
        self.raw[id.index()][0]
    }

    /// Whether the matrix part lies in PSL(2,p).
    pub fn in_psl(&self, id: ElemId) -> bool {
        self.psl[id.index()]
    }

    #[inline]
    pub fn mul(&self, x: ElemId, y: ElemId) -> ElemId {
        let p = self.desc.p as u64;
        let [e1, a, b, c, d] = self.raw[x.index()].map(|v| v as u64);
        let [e2, e, f, g, h] = self.raw[y.index()].map(|v| v as u64);
        let m = self.desc.m as u64;
        let exp = if self.psl[x.index()] { (e1 + e2) % m } else { (e1 + m - e2) % m };
        let mut prod = [
            exp as u32,
            ((a * e + b * g) % p) as u32,
            ((a * f + b * h) % p) as u32,
            ((c * e + d * g) % p) as u32,
            ((c * f + d * h) % p) as u32,
        ];
        let lead = prod[1..].iter().copied().find(|&v| v != 0).expect("product is invertible");
        if lead != 1 {
            let s = self.field_inv[lead as usize] as u64;
            for v in &mut prod[1..] {
                *v = (*v as u64 * s % p) as u32;
            }
        }
        ElemId(self.lookup[key(&prod, self.desc.p)])
    }

    pub fn inv(&self, x: ElemId) -> ElemId {
        ElemId(self.inverse[x.index()])
    }

    /// `x^h = h⁻¹ x h`.
    pub fn conjugate(&self, x: ElemId, h: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(h), x), h)
    }

    pub fn pow(&self, x: ElemId, n: u64) -> ElemId {
        let mut acc = self.identity;
        for _ in 0..n {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: ElemId) -> u64 {
        self.orders[x.index()] as u64
    }

    pub fn is_involution(&self, x: ElemId) -> bool {
        self.orders[x.index()] == 2
    }

    fn compute_inverse(&self, x: ElemId) -> ElemId {
        let [e, _, _, _, _] = self.raw[x.index()];
        let inv_mat = self.matrix(x).inverse();
        let m = self.desc.m;
        // (e,g)⁻¹ = (-ε(g⁻¹)e, g⁻¹) and ε(g⁻¹) = ε(g)
        let exp = if self.psl[x.index()] { (m - e) % m } else { e };
        let [a, b, c, d] = inv_mat.entries();
        ElemId(self.lookup[key(&[exp, a, b, c, d], self.desc.p)])
    }

    fn compute_order(&self, x: ElemId) -> u32 {
        let mut acc = x;
        let mut n = 1;
        while acc != self.identity {
            acc = self.mul(acc, x);
            n += 1;
        }
        n
    }

    /// All involutions, in canonical order.
    pub fn involutions(&self) -> Vec<ElemId> {
        self.ids().filter(|&x| self.is_involution(x)).collect()
    }

    /// `|⟨u,v⟩| = 2·|uv|` for distinct involutions.
    pub fn dihedral_order(&self, u: ElemId, v: ElemId) -> Result<u64> {
        if u == v || !self.is_involution(u) || !self.is_involution(v) {
            return Err(Error::NotInvolutionPair);
        }
        Ok(self.dihedral_order_unchecked(u, v))
    }

    #[inline]
    pub(crate) fn dihedral_order_unchecked(&self, u: ElemId, v: ElemId) -> u64 {
        2 * self.element_order(self.mul(u, v))
    }

    /// Closure of `gens` under multiplication; `limit` stops the search
    /// early once more than `limit` elements are found.
    fn closure_members(&self, gens: &[ElemId], limit: Option<usize>) -> (Vec<bool>, usize) {
        let mut seen = vec![false; self.order()];
        seen[self.identity.index()] = true;
        let mut stack = vec![self.identity];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    count += 1;
                    if limit.is_some_and(|l| count > l) {
                        return (seen, count);
                    }
                    stack.push(y);
                }
            }
        }
        (seen, count)
    }

    pub fn subgroup_closure(&self, gens: &[ElemId]) -> Subgroup {
        let (seen, _) = self.closure_members(gens, None);
        let members: Vec<ElemId> = self.ids().filter(|x| seen[x.index()]).collect();
        let n = members.len() as u64;
        let structure = if members.iter().any(|&x| self.element_order(x) == n) {
            Structure::Cyclic(n)
        } else if is_involution_pair(self, gens) {
            Structure::Dihedral(n)
        } else {
            Structure::Other
        };
        Subgroup { parent: self.desc, members, structure }
    }

    /// `⟨gens⟩ = G`. A subgroup with more than half the elements is the
    /// whole group, which lets the closure stop early.
    pub fn generates(&self, gens: &[ElemId]) -> bool {
        let n = self.order();
        let (_, count) = self.closure_members(gens, Some(n / 2));
        count > n / 2
    }

    pub fn right_cosets(&self, h: &Subgroup) -> Result<CosetPartition> {
        if h.parent != self.desc || !h.is_closed_in(self) {
            return Err(Error::NotASubgroup);
        }
        let n = self.order();
        let mut block_of = vec![u32::MAX; n];
        let mut blocks: Vec<Vec<ElemId>> = Vec::with_capacity(n / h.order());
        for g in self.ids() {
            if block_of[g.index()] != u32::MAX {
                continue;
            }
            let idx = blocks.len() as u32;
            let mut block: Vec<ElemId> = h.members.iter().map(|&x| self.mul(x, g)).collect();
            block.sort_unstable();
            for &y in &block {
                block_of[y.index()] = idx;
            }
            blocks.push(block);
        }
        Ok(CosetPartition { subgroup_order: h.order(), blocks, block_of })
    }

    pub fn conjugacy_class(&self, g: ElemId) -> Vec<ElemId> {
        let mut seen = vec![false; self.order()];
        for h in self.ids() {
            seen[self.conjugate(g, h).index()] = true;
        }
        self.ids().filter(|x| seen[x.index()]).collect()
    }

    /// For each conjugate `w` of `g`, the canonically first `h` with
    /// `g^h = w`. Sorted by `w`.
    pub fn conjugators(&self, g: ElemId) -> Vec<(ElemId, ElemId)> {
        let mut by_target = vec![None; self.order()];
        for h in self.ids() {
            let w = self.conjugate(g, h);
            by_target[w.index()].get_or_insert(h);
        }
        by_target
            .into_iter()
            .enumerate()
            .filter_map(|(w, h)| h.map(|h| (ElemId(w as u32), h)))
            .collect()
    }

    /// Conjugacy classes of involutions, ordered by least member.
    pub fn involution_classes(&self) -> Vec<Vec<ElemId>> {
        let mut assigned = vec![false; self.order()];
        let mut classes = Vec::new();
        for x in self.involutions() {
            if assigned[x.index()] {
                continue;
            }
            let class = self.conjugacy_class(x);
            for y in &class {
                assigned[y.index()] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Point action of the matrix part.
    pub fn act(&self, x: ElemId, point: ProjPoint) -> ProjPoint {
        self.matrix(x).act(point)
    }
}

fn is_involution_pair(g: &Group, gens: &[ElemId]) -> bool {
    gens.len() == 2 && gens[0] != gens[1] && gens.iter().all(|&x| g.is_involution(x))
}

#[inline]
fn key(r: &[u32; 5], p: u32) -> usize {
    let p = p as usize;
    r.iter().fold(0usize, |acc, &v| acc * p + v as usize)
}

/// Structure tag of a subgroup. Orders follow the `D_{2n}` convention, so
/// `Dihedral(4)` is the Klein four-group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Structure {
    Cyclic(u64),
    Dihedral(u64),
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: GroupDescriptor,
    members: Vec<ElemId>,
    structure: Structure,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[ElemId] {
        &self.members
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    pub fn parent(&self) -> GroupDescriptor {
        self.parent
    }

    pub fn contains(&self, x: ElemId) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    fn is_closed_in(&self, g: &Group) -> bool {
        if self.members.is_empty() || g.order() % self.members.len() != 0 {
            return false;
        }
        self.members.iter().all(|&x| {
            x.index() < g.order()
                && self.contains(g.inv(x))
                && self.members.iter().all(|&y| self.contains(g.mul(x, y)))
        })
    }
}

/// Right cosets `Hg` of a subgroup, in order of least element.
#[derive(Debug, Clone)]
pub struct CosetPartition {
    subgroup_order: usize,
    blocks: Vec<Vec<ElemId>>,
    block_of: Vec<u32>,
}

impl CosetPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn subgroup_order(&self) -> usize {
        self.subgroup_order
    }

    pub fn blocks(&self) -> &[Vec<ElemId>] {
        &self.blocks
    }

    pub fn representative(&self, block: usize) -> ElemId {
        self.blocks[block][0]
    }

    /// Block containing `g`.
    pub fn block_of(&self, g: ElemId) -> usize {
        self.block_of[g.index()] as usize
    }
}
