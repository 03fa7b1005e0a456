//! Serializable summaries of maps, and re-validation of a stored record.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfproj::ProjMatrix;
use crate::groups::{gcd, ElemId, Group, GroupDescriptor};
use crate::mapgeom::{
    build_regular_map, build_revmap, recognize_graph, surface_invariants, underlying_graph, CellCounts, MapGeometry,
    MapKind, Recognized,
};
use crate::triples::ReversingTriple;

pub const SCHEMA_VERSION: u32 = 1;

/// A group element as `exponent` of the cyclic factor (0 outside the
/// extension family) and the normalized matrix entries, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub exponent: u32,
    pub matrix: [u32; 4],
}

impl ElementRecord {
    pub fn of(g: &Group, id: ElemId) -> Self {
        Self { exponent: g.exponent(id), matrix: g.matrix(id).entries() }
    }

    pub fn resolve(&self, g: &Group) -> Result<ElemId> {
        let [a, b, c, d] = self.matrix.map(i64::from);
        let mat = ProjMatrix::new(a, b, c, d, g.p())?;
        if mat.entries() != self.matrix {
            return Err(Error::InvalidParameters(format!("matrix {:?} is not normalized", self.matrix)));
        }
        g.with_exponent(self.exponent, &mat).ok_or(Error::NotInGroup)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub recognized: Recognized,
    pub degree_sequence: Vec<usize>,
    pub loops: bool,
    pub multi_edges: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapRecord {
    pub schema_version: u32,
    pub group: GroupDescriptor,
    pub kind: MapKind,
    /// `(x, y, z)` for reversing maps, `(r0, r1, r2)` for regular ones.
    pub triple: [ElementRecord; 3],
    pub counts: CellCounts,
    pub chi: i64,
    pub orientable: bool,
    pub genus: u64,
    pub coprime: bool,
    pub stabilizer_orders: Vec<u64>,
    /// Distinct vertex valencies (a single value for these maps).
    pub vertex_valency: Vec<usize>,
    /// Distinct face lengths.
    pub face_lengths: Vec<usize>,
    pub graph: GraphSummary,
}

fn distinct(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

/// `gcd(|chi|, edges) = 1`, with `gcd(0, n) = n`.
pub fn check_coprime(chi: i64, edges: u64) -> bool {
    gcd(chi.unsigned_abs(), edges) == 1
}

impl MapRecord {
    pub fn from_map(g: &Group, m: &MapGeometry) -> Result<Self> {
        let surface = surface_invariants(m)?;
        let graph = underlying_graph(m);
        let counts = m.counts();
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            group: m.group(),
            kind: m.kind(),
            triple: m.generators().map(|id| ElementRecord::of(g, id)),
            counts,
            chi: surface.chi,
            orientable: surface.orientable,
            genus: surface.genus,
            coprime: check_coprime(surface.chi, counts.e as u64),
            stabilizer_orders: m.stabilizer_orders(),
            vertex_valency: distinct(m.vertex_valencies()),
            face_lengths: distinct(m.face_lengths()),
            graph: GraphSummary {
                recognized: recognize_graph(&graph),
                degree_sequence: graph.degree_sequence(),
                loops: graph.has_loops(),
                multi_edges: graph.has_multi_edges(),
            },
        })
    }

    /// Rebuild the map from the stored descriptor and generators.
    pub fn rebuild(&self, g: &Group) -> Result<MapGeometry> {
        if g.descriptor() != self.group {
            return Err(Error::InvalidParameters(format!("record is over {}, not {}", self.group, g.descriptor())));
        }
        let [a, b, c] = self.triple.map(|e| e.resolve(g));
        let (a, b, c) = (a?, b?, c?);
        match self.kind {
            MapKind::Reversing => build_revmap(g, &ReversingTriple::new(g, a, b, c)?),
            MapKind::Regular => build_regular_map(g, a, b, c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordCheck {
    pub chi: i64,
    pub orientable: bool,
    pub coprime: bool,
    /// The recomputed record equals the stored one field for field.
    pub matches: bool,
}

/// Recompute a stored record from scratch.
pub fn revalidate(record: &MapRecord) -> Result<RecordCheck> {
    if record.schema_version != SCHEMA_VERSION {
        return Err(Error::InvalidParameters(format!("unsupported schema_version {}", record.schema_version)));
    }
    let g = Group::new(GroupDescriptor::new(record.group.family, record.group.p, record.group.m)?)?;
    let fresh = MapRecord::from_map(&g, &record.rebuild(&g)?)?;
    Ok(RecordCheck { chi: fresh.chi, orientable: fresh.orientable, coprime: fresh.coprime, matches: &fresh == record })
}
