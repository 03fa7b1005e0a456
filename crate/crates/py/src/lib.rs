use std::sync::Arc;

use arcmaps::gfproj::{self, ProjPoint};
use arcmaps::groups::{ElemId, Family, GroupDescriptor};
use arcmaps::mapgeom::{self, MapGeometry};
use arcmaps::record::{self, MapRecord};
use arcmaps::triples::{self, ReversingTriple, TriplePattern, DEFAULT_TRIPLE_BUDGET};
use arcmaps::verify::{self, VerifyOptions};
use arcmaps::Error;
use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_json<T: serde::Serialize + ?Sized>(value: &T) -> PyResult<String> {
    serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

fn family(name: &str) -> PyResult<Family> {
    name.parse().map_err(py_err)
}

#[pyclass(name = "ProjMatrix", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyProjMatrix(gfproj::ProjMatrix);

#[pymethods]
impl PyProjMatrix {
    #[new]
    fn new(a: i64, b: i64, c: i64, d: i64, p: u32) -> PyResult<Self> {
        gfproj::ProjMatrix::new(a, b, c, d, p).map(Self).map_err(py_err)
    }

    #[getter]
    fn entries(&self) -> [u32; 4] {
        self.0.entries()
    }

    #[getter]
    fn p(&self) -> u32 {
        self.0.modulus()
    }

    fn det(&self) -> u32 {
        self.0.det()
    }

    fn multiply(&self, other: &Self) -> PyResult<Self> {
        self.0.multiply(&other.0).map(Self).map_err(py_err)
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn order(&self) -> u64 {
        self.0.order()
    }

    fn in_psl(&self) -> bool {
        self.0.in_psl()
    }

    fn is_involution(&self) -> bool {
        self.0.is_involution()
    }

    /// Image of the point with the given index.
    fn act(&self, point: u32) -> PyResult<u32> {
        if point > self.0.modulus() {
            return Err(PyIndexError::new_err(format!("point index {point} out of range")));
        }
        Ok(self.0.act(ProjPoint(point)).0)
    }

    fn __repr__(&self) -> String {
        let [a, b, c, d] = self.0.entries();
        format!("ProjMatrix({a}, {b}, {c}, {d}, p={})", self.0.modulus())
    }
}

#[pyclass(name = "Group", frozen)]
struct PyGroup(Arc<arcmaps::groups::Group>);

impl PyGroup {
    fn id(&self, i: u32) -> PyResult<ElemId> {
        if (i as usize) < self.0.order() {
            Ok(ElemId(i))
        } else {
            Err(PyIndexError::new_err(format!("element {i} out of range")))
        }
    }
}

#[pymethods]
impl PyGroup {
    #[new]
    #[pyo3(signature = (family_name, p, m = 1, budget = DEFAULT_TRIPLE_BUDGET))]
    fn new(family_name: &str, p: u32, m: u32, budget: usize) -> PyResult<Self> {
        let desc = GroupDescriptor::new(family(family_name)?, p, m).map_err(py_err)?;
        if desc.order() > budget as u64 {
            return Err(py_err(Error::BudgetExceeded { order: desc.order() as usize, budget }));
        }
        arcmaps::groups::Group::new(desc).map(|g| Self(Arc::new(g))).map_err(py_err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn family(&self) -> String {
        self.0.family().to_string()
    }

    #[getter]
    fn p(&self) -> u32 {
        self.0.p()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.0.m()
    }

    #[getter]
    fn identity(&self) -> u32 {
        self.0.identity().0
    }

    /// `(exponent, (a, b, c, d))` of element `i`.
    fn element(&self, i: u32) -> PyResult<(u32, [u32; 4])> {
        let id = self.id(i)?;
        Ok((self.0.exponent(id), self.0.matrix(id).entries()))
    }

    #[pyo3(signature = (matrix, exponent = 0))]
    fn index_of(&self, matrix: &PyProjMatrix, exponent: u32) -> Option<u32> {
        self.0.with_exponent(exponent, &matrix.0).map(|id| id.0)
    }

    fn mul(&self, x: u32, y: u32) -> PyResult<u32> {
        Ok(self.0.mul(self.id(x)?, self.id(y)?).0)
    }

    fn inv(&self, x: u32) -> PyResult<u32> {
        Ok(self.0.inv(self.id(x)?).0)
    }

    fn element_order(&self, x: u32) -> PyResult<u64> {
        Ok(self.0.element_order(self.id(x)?))
    }

    fn in_psl(&self, x: u32) -> PyResult<bool> {
        Ok(self.0.in_psl(self.id(x)?))
    }

    fn involutions(&self) -> Vec<u32> {
        self.0.involutions().into_iter().map(|id| id.0).collect()
    }

    fn dihedral_order(&self, u: u32, v: u32) -> PyResult<u64> {
        self.0.dihedral_order(self.id(u)?, self.id(v)?).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("Group({})", self.0.descriptor())
    }
}

#[pyclass(name = "Triple", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTriple(ReversingTriple);

#[pymethods]
impl PyTriple {
    #[new]
    fn new(group: &PyGroup, x: u32, y: u32, z: u32) -> PyResult<Self> {
        ReversingTriple::new(&group.0, group.id(x)?, group.id(y)?, group.id(z)?).map(Self).map_err(py_err)
    }

    #[getter]
    fn elements(&self) -> (u32, u32, u32) {
        (self.0.x.0, self.0.y.0, self.0.z.0)
    }

    /// `(|<x,y>|, |<x,z>|, |<y,z>|)`.
    #[getter]
    fn pattern(&self) -> (u64, u64, u64) {
        let p = self.0.pattern;
        (p.vertex, p.face1, p.face2)
    }

    #[getter]
    fn generates(&self) -> bool {
        self.0.generates
    }

    fn __repr__(&self) -> String {
        format!("Triple({}, {}, {}, pattern={})", self.0.x.0, self.0.y.0, self.0.z.0, self.0.pattern)
    }
}

#[pyclass(name = "Map", frozen)]
struct PyMap {
    group: Arc<arcmaps::groups::Group>,
    map: MapGeometry,
}

#[pymethods]
impl PyMap {
    /// `(V, E, F1, F2)`; F2 is 0 for flag-regular maps.
    #[getter]
    fn counts(&self) -> (usize, usize, usize, usize) {
        let c = self.map.counts();
        (c.v, c.e, c.f1, c.f2)
    }

    #[getter]
    fn chi(&self) -> i64 {
        self.map.euler_characteristic()
    }

    fn surface(&self) -> PyResult<(i64, bool, u64)> {
        let s = mapgeom::surface_invariants(&self.map).map_err(py_err)?;
        Ok((s.chi, s.orientable, s.genus))
    }

    fn flag_count(&self) -> PyResult<usize> {
        mapgeom::flag_system(&self.map).map(|f| f.len()).map_err(py_err)
    }

    fn stabilizer_orders(&self) -> Vec<u64> {
        self.map.stabilizer_orders()
    }

    fn recognize_graph(&self) -> String {
        mapgeom::recognize_graph(&mapgeom::underlying_graph(&self.map)).to_string()
    }

    fn to_dot(&self) -> String {
        mapgeom::underlying_graph(&self.map).to_dot(&self.group.descriptor().to_string())
    }

    fn record_json(&self) -> PyResult<String> {
        to_json(&MapRecord::from_map(&self.group, &self.map).map_err(py_err)?)
    }

    fn sylow_lemma(&self) -> bool {
        verify::check_sylow_lemma(&self.map)
    }
}

#[pyfunction]
fn psl_triple(group: &PyGroup, k: u32) -> PyResult<PyTriple> {
    triples::psl_triple(&group.0, k).map(PyTriple).map_err(py_err)
}

#[pyfunction]
fn pgl_triple(group: &PyGroup, k: u32) -> PyResult<PyTriple> {
    triples::pgl_triple(&group.0, k).map(PyTriple).map_err(py_err)
}

#[pyfunction]
fn ext_triple(group: &PyGroup, k: u32, c1: u32, c2: u32) -> PyResult<PyTriple> {
    triples::ext_triple(&group.0, k, c1, c2).map(PyTriple).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (group, pattern, budget = DEFAULT_TRIPLE_BUDGET))]
fn enumerate_reversing_triples(group: &PyGroup, pattern: (u64, u64, u64), budget: usize) -> PyResult<Vec<PyTriple>> {
    let pattern = TriplePattern::new(pattern.0, pattern.1, pattern.2);
    let found = triples::enumerate_reversing_triples(&group.0, pattern, budget).map_err(py_err)?;
    Ok(found.into_iter().map(PyTriple).collect())
}

#[pyfunction]
fn build_revmap(group: &PyGroup, triple: &PyTriple) -> PyResult<PyMap> {
    let map = mapgeom::build_revmap(&group.0, &triple.0).map_err(py_err)?;
    Ok(PyMap { group: Arc::clone(&group.0), map })
}

#[pyfunction]
fn build_regular_map(group: &PyGroup, r0: u32, r1: u32, r2: u32) -> PyResult<PyMap> {
    let map = mapgeom::build_regular_map(&group.0, group.id(r0)?, group.id(r1)?, group.id(r2)?).map_err(py_err)?;
    Ok(PyMap { group: Arc::clone(&group.0), map })
}

#[pyfunction]
fn check_coprime(chi: i64, edges: u64) -> bool {
    record::check_coprime(chi, edges)
}

#[pyfunction]
fn check_pgl_action(p: u32) -> PyResult<bool> {
    verify::check_pgl_action(p).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (group, budget = verify::DEFAULT_ROTARY_BUDGET))]
fn check_no_rotary(group: &PyGroup, budget: usize) -> PyResult<bool> {
    verify::check_no_rotary(&group.0, budget).map_err(py_err)
}

/// JSON report of the classification harness for one configuration.
#[pyfunction]
#[pyo3(signature = (family_name, p, m = 1, budget = DEFAULT_TRIPLE_BUDGET))]
fn verify_theorem(family_name: &str, p: u32, m: u32, budget: usize) -> PyResult<String> {
    to_json(&verify::verify_theorem(family(family_name)?, p, m, budget).map_err(py_err)?)
}

#[pyfunction]
fn verify_matrix() -> PyResult<String> {
    to_json(&verify::verify_matrix(VerifyOptions::default()).map_err(py_err)?)
}

#[pyfunction]
fn a5_exceptional_case() -> PyResult<String> {
    to_json(&verify::a5_exceptional_case().map_err(py_err)?)
}

/// Re-validate a JSON map record: `(chi, orientable, coprime, matches)`.
#[pyfunction]
fn check_record(json: &str) -> PyResult<(i64, bool, bool, bool)> {
    let rec: MapRecord = serde_json::from_str(json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let c = record::revalidate(&rec).map_err(py_err)?;
    Ok((c.chi, c.orientable, c.coprime, c.matches))
}

#[pymodule]
fn pyarcmaps(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyProjMatrix>()?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyTriple>()?;
    m.add_class::<PyMap>()?;
    m.add_function(wrap_pyfunction!(psl_triple, m)?)?;
    m.add_function(wrap_pyfunction!(pgl_triple, m)?)?;
    m.add_function(wrap_pyfunction!(ext_triple, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_reversing_triples, m)?)?;
    m.add_function(wrap_pyfunction!(build_revmap, m)?)?;
    m.add_function(wrap_pyfunction!(build_regular_map, m)?)?;
    m.add_function(wrap_pyfunction!(check_coprime, m)?)?;
    m.add_function(wrap_pyfunction!(check_pgl_action, m)?)?;
    m.add_function(wrap_pyfunction!(check_no_rotary, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(verify_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(a5_exceptional_case, m)?)?;
    m.add_function(wrap_pyfunction!(check_record, m)?)?;
    m.add("SCHEMA_VERSION", record::SCHEMA_VERSION)?;
    Ok(())
}
