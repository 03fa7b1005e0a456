//! Maps as coset geometries.
//!
//! A reversing map over a generating triple `(x, y, z)` has vertices
//! `[G:⟨x,y⟩]`, edges `[G:⟨z⟩]` and two face families `[G:⟨x,z⟩]`,
//! `[G:⟨y,z⟩]`; a flag-regular map over `(r0, r1, r2)` has vertices
//! `[G:⟨r1,r2⟩]`, edges `[G:⟨r0,r2⟩]` and faces `[G:⟨r0,r1⟩]`. Two cells
//! are incident when the cosets intersect, which for right cosets means
//! some group element lies in both.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{CosetPartition, ElemId, Group, GroupDescriptor};
use crate::triples::ReversingTriple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Reversing,
    Regular,
}

#[derive(Debug, Clone)]
pub struct MapGeometry {
    group: GroupDescriptor,
    group_order: usize,
    kind: MapKind,
    generators: [ElemId; 3],
    vertices: CosetPartition,
    edges: CosetPartition,
    faces: Vec<CosetPartition>,
    left: [Vec<u32>; 3],
    edge_vertices: Vec<Vec<u32>>,
    edge_faces: Vec<Vec<u32>>,
    vertex_faces: HashSet<(u32, u32)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub struct CellCounts {
    pub v: usize,
    pub e: usize,
    pub f1: usize,
    pub f2: usize,
}

impl CellCounts {
    pub fn faces(&self) -> usize {
        self.f1 + self.f2
    }
}

pub fn build_revmap(g: &Group, t: &ReversingTriple) -> Result<MapGeometry> {
    if !t.generates {
        return Err(Error::NotGenerating);
    }
    let (x, y, z) = (t.x, t.y, t.z);
    let vertex = g.subgroup_closure(&[x, y]);
    let edge = g.subgroup_closure(&[z]);
    let f1 = g.subgroup_closure(&[x, z]);
    let f2 = g.subgroup_closure(&[y, z]);
    MapGeometry::assemble(
        g,
        MapKind::Reversing,
        [x, y, z],
        g.right_cosets(&vertex)?,
        g.right_cosets(&edge)?,
        vec![g.right_cosets(&f1)?, g.right_cosets(&f2)?],
    )
}

/// Flag-regular map from three involutions with `r0 r2 = r2 r0`.
pub fn build_regular_map(g: &Group, r0: ElemId, r1: ElemId, r2: ElemId) -> Result<MapGeometry> {
    if ![r0, r1, r2].iter().all(|&r| g.is_involution(r)) || r0 == r2 {
        return Err(Error::Precondition("generators must be involutions with r0 != r2".into()));
    }
    let r02 = g.mul(r0, r2);
    if g.mul(r02, r02) != g.identity() {
        return Err(Error::Precondition("r0 and r2 do not commute".into()));
    }
    if !g.generates(&[r0, r1, r2]) {
        return Err(Error::NotGenerating);
    }
    let vertex = g.subgroup_closure(&[r1, r2]);
    let edge = g.subgroup_closure(&[r0, r2]);
    let face = g.subgroup_closure(&[r0, r1]);
    MapGeometry::assemble(
        g,
        MapKind::Regular,
        [r0, r1, r2],
        g.right_cosets(&vertex)?,
        g.right_cosets(&edge)?,
        vec![g.right_cosets(&face)?],
    )
}

impl MapGeometry {
    fn assemble(
        g: &Group,
        kind: MapKind,
        generators: [ElemId; 3],
        vertices: CosetPartition,
        edges: CosetPartition,
        faces: Vec<CosetPartition>,
    ) -> Result<Self> {
        let offsets: Vec<usize> = faces
            .iter()
            .scan(0, |acc, f| {
                let start = *acc;
                *acc += f.len();
                Some(start)
            })
            .collect();
        let mut edge_vertices = vec![Vec::new(); edges.len()];
        let mut edge_faces = vec![Vec::new(); edges.len()];
        let mut vertex_faces = HashSet::new();
        for el in g.ids() {
            let v = vertices.block_of(el) as u32;
            let e = edges.block_of(el);
            edge_vertices[e].push(v);
            for (fam, off) in faces.iter().zip(&offsets) {
                let f = (off + fam.block_of(el)) as u32;
                edge_faces[e].push(f);
                vertex_faces.insert((v, f));
            }
        }
        for list in edge_vertices.iter_mut().chain(edge_faces.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        let left = generators.map(|r| g.ids().map(|h| g.mul(r, h).0).collect());
        Ok(Self {
            left,
            group: g.descriptor(),
            group_order: g.order(),
            kind,
            generators,
            vertices,
            edges,
            faces,
            edge_vertices,
            edge_faces,
            vertex_faces,
        })
    }

    pub fn group(&self) -> GroupDescriptor {
        self.group
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn generators(&self) -> [ElemId; 3] {
        self.generators
    }

    pub fn vertices(&self) -> &CosetPartition {
        &self.vertices
    }

    pub fn edges(&self) -> &CosetPartition {
        &self.edges
    }

    pub fn face_families(&self) -> &[CosetPartition] {
        &self.faces
    }

    pub fn counts(&self) -> CellCounts {
        CellCounts {
            v: self.vertices.len(),
            e: self.edges.len(),
            f1: self.faces.first().map_or(0, |f| f.len()),
            f2: self.faces.get(1).map_or(0, |f| f.len()),
        }
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().map(|f| f.len()).sum()
    }

    /// `|V| - |E| + |F|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.face_count() as i64
    }

    /// Stabiliser orders: vertex, edge, then one per face family.
    pub fn stabilizer_orders(&self) -> Vec<u64> {
        let mut out = vec![self.vertices.subgroup_order() as u64, self.edges.subgroup_order() as u64];
        out.extend(self.faces.iter().map(|f| f.subgroup_order() as u64));
        out
    }

    pub fn edge_vertices(&self, e: usize) -> &[u32] {
        &self.edge_vertices[e]
    }

    pub fn edge_faces(&self, e: usize) -> &[u32] {
        &self.edge_faces[e]
    }

    pub fn vertex_incident_to_face(&self, v: u32, f: u32) -> bool {
        self.vertex_faces.contains(&(v, f))
    }

    /// `|E(α)|` for every vertex.
    pub fn vertex_valencies(&self) -> Vec<usize> {
        let mut val = vec![0; self.vertices.len()];
        for vs in &self.edge_vertices {
            for &v in vs {
                val[v as usize] += 1;
            }
        }
        val
    }

    /// `|E(f)|` for every face, all families concatenated.
    pub fn face_lengths(&self) -> Vec<usize> {
        let mut len = vec![0; self.face_count()];
        for fs in &self.edge_faces {
            for &f in fs {
                len[f as usize] += 1;
            }
        }
        len
    }

    /// Every edge meets one or two vertices and one or two faces.
    pub fn is_well_formed(&self) -> bool {
        self.edge_vertices.iter().chain(&self.edge_faces).all(|l| (1..=2).contains(&l.len()))
    }
}

/// Flags with their `(v, e, f)` labels and the three involutory
/// adjacencies: `rho_v` replaces the vertex, `rho_e` the edge and `rho_f`
/// the face.
///
/// Flags come from group elements rather than from incident label
/// triples, since a face may meet a vertex at several corners and then
/// one label triple stands for several flags. For a reversing map the
/// flags are `(g, side)` with label `(Vg, Eg, F_side g)`; the vertex is
/// swapped by `g -> zg`, the edge by `g -> xg` (side 1) or `g -> yg`
/// (side 2), the face by switching side. For a flag-regular map the flags
/// are the elements themselves and `r0, r1, r2` act on the left.
#[derive(Debug, Clone)]
pub struct FlagSystem {
    pub flags: Vec<(u32, u32, u32)>,
    pub rho_v: Vec<u32>,
    pub rho_e: Vec<u32>,
    pub rho_f: Vec<u32>,
}

pub fn flag_system(m: &MapGeometry) -> Result<FlagSystem> {
    let n = m.group_order;
    let [l0, l1, l2] = &m.left;
    let offset = m.faces.first().map_or(0, |f| f.len());
    let label = |g: usize, side: usize| {
        let id = ElemId(g as u32);
        let f = m.faces[side].block_of(id) + if side == 1 { offset } else { 0 };
        (m.vertices.block_of(id) as u32, m.edges.block_of(id) as u32, f as u32)
    };
    let fs = match m.kind {
        MapKind::Reversing => {
            // l0 = x, l1 = y, l2 = z
            let idx = |g: u32, side: usize| g + (side * n) as u32;
            let mut fs = FlagSystem {
                flags: Vec::with_capacity(2 * n),
                rho_v: Vec::with_capacity(2 * n),
                rho_e: Vec::with_capacity(2 * n),
                rho_f: Vec::with_capacity(2 * n),
            };
            for side in 0..2 {
                for g in 0..n {
                    fs.flags.push(label(g, side));
                    fs.rho_v.push(idx(l2[g], side));
                    fs.rho_e.push(idx(if side == 0 { l0[g] } else { l1[g] }, side));
                    fs.rho_f.push(idx(g as u32, 1 - side));
                }
            }
            fs
        }
        MapKind::Regular => FlagSystem {
            flags: (0..n).map(|g| label(g, 0)).collect(),
            rho_v: l0.clone(),
            rho_e: l1.clone(),
            rho_f: l2.clone(),
        },
    };
    if !fs.involutions_are_fixed_point_free() {
        return Err(Error::NotAMap("a flag adjacency is not a fixed-point-free involution".into()));
    }
    let changes = |rho: &[u32], coord: fn(&(u32, u32, u32)) -> u32| {
        (0..fs.len()).all(|i| coord(&fs.flags[i]) != coord(&fs.flags[rho[i] as usize]))
    };
    if !(changes(&fs.rho_v, |f| f.0) && changes(&fs.rho_f, |f| f.2)) {
        return Err(Error::NotAMap("an adjacency keeps the coordinate it should replace".into()));
    }
    Ok(fs)
}

impl FlagSystem {
    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    fn adjacencies(&self) -> [&[u32]; 3] {
        [&self.rho_v, &self.rho_e, &self.rho_f]
    }

    /// Each adjacency is an involution without fixed points.
    pub fn involutions_are_fixed_point_free(&self) -> bool {
        self.adjacencies()
            .iter()
            .all(|rho| rho.iter().enumerate().all(|(i, &j)| j as usize != i && rho[j as usize] as usize == i))
    }

    /// `rho_v` and `rho_f` commute.
    pub fn vertex_face_commute(&self) -> bool {
        (0..self.len()).all(|i| {
            self.rho_v[self.rho_f[i] as usize] == self.rho_f[self.rho_v[i] as usize]
        })
    }

    pub fn is_connected(&self) -> bool {
        self.two_colouring().1
    }

    /// The supporting surface is orientable iff the flag graph is bipartite.
    pub fn is_bipartite(&self) -> bool {
        self.two_colouring().0
    }

    fn two_colouring(&self) -> (bool, bool) {
        let n = self.len();
        let mut colour = vec![u8::MAX; n];
        let mut bipartite = true;
        let mut components = 0;
        for start in 0..n {
            if colour[start] != u8::MAX {
                continue;
            }
            components += 1;
            colour[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for rho in self.adjacencies() {
                    let j = rho[i] as usize;
                    if colour[j] == u8::MAX {
                        colour[j] = 1 - colour[i];
                        queue.push_back(j);
                    } else if colour[j] == colour[i] {
                        bipartite = false;
                    }
                }
            }
        }
        (bipartite, components <= 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub chi: i64,
    pub orientable: bool,
    pub genus: u64,
}

impl SurfaceInvariants {
    pub fn from_parts(chi: i64, orientable: bool) -> Result<Self> {
        let genus = if orientable {
            if chi % 2 != 0 || chi > 2 {
                return Err(Error::NotAMap(format!("orientable surface with chi = {chi}")));
            }
            (2 - chi) / 2
        } else {
            if chi > 1 {
                return Err(Error::NotAMap(format!("nonorientable surface with chi = {chi}")));
            }
            2 - chi
        };
        Ok(Self { chi, orientable, genus: genus as u64 })
    }
}

pub fn surface_invariants(m: &MapGeometry) -> Result<SurfaceInvariants> {
    let flags = flag_system(m)?;
    surface_invariants_with(m, &flags)
}

pub fn surface_invariants_with(m: &MapGeometry, flags: &FlagSystem) -> Result<SurfaceInvariants> {
    if !flags.is_connected() {
        return Err(Error::NotAMap("flag graph is disconnected".into()));
    }
    SurfaceInvariants::from_parts(m.euler_characteristic(), flags.is_bipartite())
}

/// Vertex set `0..vertex_count` and one endpoint pair per map edge, with
/// the smaller endpoint first; loops have equal endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnderlyingGraph {
    pub vertex_count: usize,
    pub edges: Vec<(u32, u32)>,
}

pub fn underlying_graph(m: &MapGeometry) -> UnderlyingGraph {
    let edges = m
        .edge_vertices
        .iter()
        .map(|vs| match vs[..] {
            [a] => (a, a),
            [a, b] => (a, b),
            _ => panic!("edge with {} endpoints", vs.len()),
        })
        .collect();
    UnderlyingGraph { vertex_count: m.vertices.len(), edges }
}

impl UnderlyingGraph {
    pub fn from_edges(vertex_count: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let edges = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        Self { vertex_count, edges }
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    /// Edge multiplicity per endpoint pair, in sorted order.
    pub fn multiplicities(&self) -> BTreeMap<(u32, u32), usize> {
        let mut out = BTreeMap::new();
        for &e in &self.edges {
            *out.entry(e).or_insert(0) += 1;
        }
        out
    }

    pub fn has_multi_edges(&self) -> bool {
        self.multiplicities().values().any(|&c| c > 1)
    }

    pub fn is_simple(&self) -> bool {
        !self.has_loops() && !self.has_multi_edges()
    }

    /// Number of incident edges per vertex; a loop counts once.
    pub fn valencies(&self) -> Vec<usize> {
        let mut val = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            val[a as usize] += 1;
            if a != b {
                val[b as usize] += 1;
            }
        }
        val
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.valencies();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let n = self.vertex_count;
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in &self.edges {
            adj[a as usize][b as usize] = true;
            adj[b as usize][a as usize] = true;
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (w, &a) in adj[v].iter().enumerate() {
                if a && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Length of a shortest cycle of a simple graph; `None` if acyclic.
    pub fn girth(&self) -> Option<usize> {
        let adj = self.adjacency();
        let n = self.vertex_count;
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for w in (0..n).filter(|&w| adj[v][w]) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Graphviz rendering; parallel edges are drawn once with their
    /// multiplicity as label.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{name}\" {{");
        for v in 0..self.vertex_count {
            let _ = writeln!(out, "  v{v};");
        }
        for ((a, b), count) in self.multiplicities() {
            if count == 1 {
                let _ = writeln!(out, "  v{a} -- v{b};");
            } else {
                let _ = writeln!(out, "  v{a} -- v{b} [label=\"{count}\", multiplicity={count}];");
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recognized {
    Complete(usize),
    Petersen,
    Other,
}

impl fmt::Display for Recognized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recognized::Complete(n) => write!(f, "complete({n})"),
            Recognized::Petersen => f.write_str("petersen"),
            Recognized::Other => f.write_str("other"),
        }
    }
}

impl std::str::FromStr for Recognized {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "petersen" => Ok(Recognized::Petersen),
            "other" => Ok(Recognized::Other),
            _ => s
                .strip_prefix("complete(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|n| n.parse().ok())
                .map(Recognized::Complete)
                .ok_or_else(|| Error::InvalidParameters(format!("unknown graph label `{s}`"))),
        }
    }
}

impl Serialize for Recognized {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Recognized {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The Kneser graph K(5,2): 2-subsets of {0..4}, adjacent when disjoint.
pub fn petersen_graph() -> UnderlyingGraph {
    let pairs: Vec<(u32, u32)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let mut edges = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate().skip(i + 1) {
            if a != c && a != d && b != c && b != d {
                edges.push((i as u32, j as u32));
            }
        }
    }
    UnderlyingGraph::from_edges(pairs.len(), edges)
}

pub fn complete_graph(n: usize) -> UnderlyingGraph {
    let n32 = n as u32;
    UnderlyingGraph::from_edges(n, (0..n32).flat_map(|a| (a + 1..n32).map(move |b| (a, b))))
}

/// Backtracking search for an isomorphism between simple graphs; returns
/// the vertex map from `a` to `b`.
pub fn find_isomorphism(a: &UnderlyingGraph, b: &UnderlyingGraph) -> Option<Vec<usize>> {
    if a.vertex_count != b.vertex_count || a.edges.len() != b.edges.len() || a.degree_sequence() != b.degree_sequence() {
        return None;
    }
    let (adj_a, adj_b) = (a.adjacency(), b.adjacency());
    let (deg_a, deg_b) = (a.valencies(), b.valencies());
    let n = a.vertex_count;
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        v: usize,
        n: usize,
        map: &mut [usize],
        used: &mut [bool],
        adj_a: &[Vec<bool>],
        adj_b: &[Vec<bool>],
        deg_a: &[usize],
        deg_b: &[usize],
    ) -> bool {
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || deg_a[v] != deg_b[w] {
                continue;
            }
            if (0..v).any(|u| adj_a[v][u] != adj_b[w][map[u]]) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(v + 1, n, map, used, adj_a, adj_b, deg_a, deg_b) {
                return true;
            }
            used[w] = false;
        }
        map[v] = usize::MAX;
        false
    }

    extend(0, n, &mut map, &mut used, &adj_a, &adj_b, &deg_a, &deg_b).then_some(map)
}

pub fn recognize_graph(g: &UnderlyingGraph) -> Recognized {
    if !g.is_simple() {
        return Recognized::Other;
    }
    let n = g.vertex_count;
    if g.edges.len() == n * n.saturating_sub(1) / 2 {
        return Recognized::Complete(n);
    }
    if n == 10 && find_isomorphism(g, &petersen_graph()).is_some() {
        return Recognized::Petersen;
    }
    Recognized::Other
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;
    use crate::groups::{build_group, Family};
    use crate::triples::{pgl_triple, psl_triple};

    #[test]
    fn psl5_revmap_counts() {
        let g = build_group(Family::Psl2, 5, 1).unwrap();
        let t = psl_triple(&g, 2).unwrap();
        let m = build_revmap(&g, &t).unwrap();
        assert_eq!(m.counts(), CellCounts { v: 6, e: 30, f1: 10, f2: 15 });
        assert_eq!(m.euler_characteristic(), 1);
        assert!(m.is_well_formed());
        let flags = flag_system(&m).unwrap();
        assert_eq!(flags.len(), 120);
        assert!(flags.involutions_are_fixed_point_free());
        assert!(flags.vertex_face_commute());
        let s = surface_invariants(&m).unwrap();
        assert_eq!(s, SurfaceInvariants { chi: 1, orientable: false, genus: 1 });
        let graph = underlying_graph(&m);
        assert_eq!(graph.valencies(), vec![10; 6]);
        assert!(graph.has_multi_edges());
        assert_eq!(recognize_graph(&graph), Recognized::Other);
        assert_eq!(m.face_lengths().iter().filter(|&&l| l == 3).count(), 10);
        assert_eq!(m.face_lengths().iter().filter(|&&l| l == 2).count(), 15);
    }

    #[test]
    fn pgl_revmaps() {
        let g = build_group(Family::Pgl2, 5, 1).unwrap();
        let m = build_revmap(&g, &pgl_triple(&g, 0).unwrap()).unwrap();
        assert_eq!(flag_system(&m).unwrap().len(), 240);
        let g = build_group(Family::Pgl2, 7, 1).unwrap();
        let m = build_revmap(&g, &pgl_triple(&g, 0).unwrap()).unwrap();
        assert_eq!(m.counts(), CellCounts { v: 24, e: 168, f1: 21, f2: 28 });
        assert_eq!(surface_invariants(&m).unwrap(), SurfaceInvariants { chi: -95, orientable: false, genus: 97 });
    }

    #[test]
    fn faces_meeting_a_vertex_twice_keep_all_flags() {
        let g = build_group(Family::Pgl2, 5, 1).unwrap();
        let t = pgl_triple(&g, 0).unwrap();
        let mut repeated_corner = false;
        for (a, b, c) in [(t.x, t.y, t.z), (t.y, t.z, t.x), (t.z, t.x, t.y), (t.y, t.x, t.z)] {
            let m = build_revmap(&g, &ReversingTriple::new(&g, a, b, c).unwrap()).unwrap();
            let flags = flag_system(&m).unwrap();
            assert_eq!(flags.len(), 4 * m.counts().e);
            assert!(flags.vertex_face_commute());
            assert_eq!(surface_invariants(&m).unwrap().chi, -23);
            let mut corners = HashMap::new();
            for &(v, _, f) in &flags.flags {
                *corners.entry((v, f)).or_insert(0) += 1;
            }
            repeated_corner |= corners.values().any(|&n| n > 2);
        }
        assert!(repeated_corner);
    }

    #[test]
    fn non_generating_triple_is_rejected() {
        let g = build_group(Family::Psl2, 5, 1).unwrap();
        let mut t = psl_triple(&g, 2).unwrap();
        t.generates = false;
        assert_eq!(build_revmap(&g, &t).unwrap_err(), Error::NotGenerating);
    }

    #[test]
    fn duality_preserves_chi() {
        let g = build_group(Family::Psl2, 13, 1).unwrap();
        let t = psl_triple(&g, 4).unwrap();
        let chi = build_revmap(&g, &t).unwrap().euler_characteristic();
        for (a, b, c) in [(t.y, t.z, t.x), (t.z, t.x, t.y)] {
            let rotated = ReversingTriple::new(&g, a, b, c).unwrap();
            let m = build_revmap(&g, &rotated).unwrap();
            assert_eq!(m.euler_characteristic(), chi);
            assert_eq!(surface_invariants(&m).unwrap().chi, chi);
        }
    }

    #[test]
    fn graph_recognition() {
        assert_eq!(recognize_graph(&complete_graph(6)), Recognized::Complete(6));
        let pet = petersen_graph();
        assert_eq!(pet.valencies(), vec![3; 10]);
        assert_eq!(pet.girth(), Some(5));
        assert_eq!(recognize_graph(&pet), Recognized::Petersen);
        // relabelled Petersen: outer 5-cycle, inner pentagram, spokes
        let mut edges = Vec::new();
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        assert_eq!(recognize_graph(&UnderlyingGraph::from_edges(10, edges)), Recognized::Petersen);
        // a 3-regular graph on 10 vertices that is not Petersen (girth 4)
        let prism: Vec<(u32, u32)> = (0..5u32)
            .flat_map(|i| [(i, (i + 1) % 5), (5 + i, 5 + (i + 1) % 5), (i, 5 + i)])
            .collect();
        assert_eq!(recognize_graph(&UnderlyingGraph::from_edges(10, prism)), Recognized::Other);
        let multi = UnderlyingGraph::from_edges(2, [(0, 1), (0, 1)]);
        assert_eq!(recognize_graph(&multi), Recognized::Other);
        assert_eq!("complete(6)".parse::<Recognized>().unwrap(), Recognized::Complete(6));
    }

    #[test]
    fn dot_export_lists_multiplicities() {
        let g = UnderlyingGraph::from_edges(3, [(0, 1), (1, 0), (1, 2), (2, 2)]);
        let dot = g.to_dot("m");
        assert!(dot.contains("v0 -- v1 [label=\"2\", multiplicity=2];"));
        assert!(dot.contains("v1 -- v2;"));
        assert!(dot.contains("v2 -- v2;"));
    }

    #[test]
    fn genus_rules() {
        assert_eq!(SurfaceInvariants::from_parts(2, true).unwrap().genus, 0);
        assert_eq!(SurfaceInvariants::from_parts(-4, true).unwrap().genus, 3);
        assert!(SurfaceInvariants::from_parts(1, true).is_err());
        assert_eq!(SurfaceInvariants::from_parts(-571, false).unwrap().genus, 573);
    }
}
