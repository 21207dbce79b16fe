//! Python bindings: maps, duals, cycle classification, proper types,
//! Hamiltonian cycle searches and the torus generator. Everything raises
//! ValueError with the library's own error text.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use polymap::{
    build_dual, check_polyhedral, classify_proper_type, disk_grow_search, equivelar_type,
    generate_equivelar_torus, parse_map, regions_of_cycle, region_euler_characteristic,
    run_search, validate_surface, write_map, Algorithm, CycleSpec, Edge, EdgeSubgraph,
    EquivelarType, Label, SearchMode, SearchRequest, SurfaceMap as CoreMap, TargetClass,
};

fn value_error(e: polymap::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn label(s: &str) -> PyResult<Label> {
    Label::new(s).map_err(value_error)
}

fn cycle_of(map: &CoreMap, verts: &[String]) -> PyResult<CycleSpec> {
    let order: Vec<Label> =
        verts.iter().map(|s| label(s)).collect::<PyResult<_>>()?;
    CycleSpec::new(map, order).map_err(value_error)
}

/// A polyhedral map on a closed surface.
#[pyclass(name = "SurfaceMap", frozen)]
pub struct PySurfaceMap {
    inner: CoreMap,
}

#[pymethods]
impl PySurfaceMap {
    /// Parse the whitespace map format: one face per line.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self { inner: parse_map(text).map_err(value_error)? })
    }

    /// Build a map from face boundary walks.
    #[staticmethod]
    fn from_faces(faces: Vec<Vec<String>>) -> PyResult<Self> {
        let raw: Vec<Vec<Label>> = faces
            .iter()
            .map(|f| f.iter().map(|s| label(s)).collect::<PyResult<_>>())
            .collect::<PyResult<_>>()?;
        Ok(Self { inner: CoreMap::from_faces(raw).map_err(value_error)? })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn face_count(&self) -> usize {
        self.inner.face_count()
    }

    #[getter]
    fn euler_characteristic(&self) -> i64 {
        self.inner.euler_characteristic()
    }

    fn is_valid(&self) -> bool {
        validate_surface(&self.inner).is_valid()
    }

    fn is_polyhedral(&self) -> bool {
        check_polyhedral(&self.inner).is_polyhedral
    }

    /// The (p, q) pair when every face is a p-gon and every vertex has
    /// degree q, else None.
    fn equivelar_type(&self) -> Option<(usize, usize)> {
        equivelar_type(&self.inner).map(|t| (t.p, t.q))
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().iter().map(|v| v.to_string()).collect()
    }

    fn faces(&self) -> Vec<Vec<String>> {
        self.inner
            .faces()
            .iter()
            .map(|f| f.vertices().iter().map(|v| v.to_string()).collect())
            .collect()
    }

    fn write(&self) -> String {
        write_map(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "SurfaceMap({} vertices, {} edges, {} faces)",
            self.inner.vertex_count(),
            self.inner.edge_count(),
            self.inner.face_count()
        )
    }
}

/// Classify a cycle as contractible, non-separating or
/// noncontractible-separating.
#[pyfunction]
fn classify_cycle(map: PyRef<'_, PySurfaceMap>, cycle: Vec<String>) -> PyResult<String> {
    let spec = cycle_of(&map.inner, &cycle)?;
    polymap::classify_cycle(&map.inner, &spec)
        .map(|c| c.to_string())
        .map_err(value_error)
}

/// Sizes and Euler characteristics of the pieces the cycle cuts.
#[pyfunction]
fn regions(map: PyRef<'_, PySurfaceMap>, cycle: Vec<String>) -> PyResult<Vec<(usize, i64)>> {
    let spec = cycle_of(&map.inner, &cycle)?;
    let pieces = regions_of_cycle(&map.inner, &spec).map_err(value_error)?;
    pieces
        .iter()
        .map(|r| {
            let chi =
                region_euler_characteristic(&map.inner, r, &spec).map_err(value_error)?;
            Ok((r.faces.len(), chi))
        })
        .collect()
}

/// Proper type of an edge set on the map, by the admissibility and
/// complement criteria: "type I", "type II", "type III", "not
/// admissible" or "anomalous".
#[pyfunction]
fn proper_type(
    map: PyRef<'_, PySurfaceMap>,
    edges: Vec<(String, String)>,
    n: usize,
) -> PyResult<String> {
    let set: Vec<Edge> = edges
        .iter()
        .map(|(a, b)| Edge::new(label(a)?, label(b)?).map_err(value_error))
        .collect::<PyResult<_>>()?;
    let g = EdgeSubgraph::new(&map.inner, set).map_err(value_error)?;
    Ok(classify_proper_type(&map.inner, &g, n).verdict.to_string())
}

/// The dual map (faces become vertices named F#<index>).
#[pyfunction]
fn dual(map: PyRef<'_, PySurfaceMap>) -> PyResult<PySurfaceMap> {
    let d = build_dual(&map.inner).map_err(value_error)?;
    Ok(PySurfaceMap { inner: d.dual().clone() })
}

fn parse_target(s: &str) -> PyResult<TargetClass> {
    match s {
        "any" => Ok(TargetClass::Any),
        "contractible" => Ok(TargetClass::Contractible),
        "non-separating" => Ok(TargetClass::NonSeparating),
        "nc-separating" => Ok(TargetClass::NoncontractibleSeparating),
        other => Err(PyValueError::new_err(format!("unknown target class: {other}"))),
    }
}

fn parse_algorithm(s: &str) -> PyResult<Algorithm> {
    match s {
        "enumerate" => Ok(Algorithm::Enumerate),
        "dual-subset" => Ok(Algorithm::DualSubset),
        "disk-grow" => Ok(Algorithm::DiskGrow),
        other => Err(PyValueError::new_err(format!("unknown algorithm: {other}"))),
    }
}

/// Hamiltonian cycles of the map's edge graph with their classes, as
/// (vertex list, class) pairs.
#[pyfunction]
#[pyo3(signature = (map, target="any", algorithm="enumerate", first=false, limit=None, force=false))]
fn hamiltonian_cycles(
    map: PyRef<'_, PySurfaceMap>,
    target: &str,
    algorithm: &str,
    first: bool,
    limit: Option<usize>,
    force: bool,
) -> PyResult<Vec<(Vec<String>, String)>> {
    let req = SearchRequest {
        target_class: parse_target(target)?,
        mode: if first { SearchMode::First } else { SearchMode::All },
        limit,
        algorithm: parse_algorithm(algorithm)?,
        force,
    };
    let results = run_search(&map.inner, &req).map_err(value_error)?;
    Ok(results
        .into_iter()
        .map(|r| {
            let verts = r.cycle.vertices().iter().map(|v| v.to_string()).collect();
            (verts, r.cycle_class.to_string())
        })
        .collect())
}

/// One non-contractible Hamiltonian cycle found by disk growth, or None.
#[pyfunction]
fn grow_noncontractible(map: PyRef<'_, PySurfaceMap>) -> PyResult<Option<(Vec<String>, String)>> {
    let req = SearchRequest {
        target_class: TargetClass::Any,
        mode: SearchMode::First,
        limit: None,
        algorithm: Algorithm::DiskGrow,
        force: false,
    };
    let found = disk_grow_search(&map.inner, &req).map_err(value_error)?;
    Ok(found.map(|r| {
        let verts = r.cycle.vertices().iter().map(|v| v.to_string()).collect();
        (verts, r.cycle_class.to_string())
    }))
}

/// Torus quotient generator for {3,6}, {4,4} and {6,3}.
#[pyfunction]
#[pyo3(signature = (p, q, rows, cols, shift=0))]
fn generate_torus(p: usize, q: usize, rows: usize, cols: usize, shift: i64) -> PyResult<PySurfaceMap> {
    let map = generate_equivelar_torus(EquivelarType { p, q }, rows, cols, shift)
        .map_err(value_error)?;
    Ok(PySurfaceMap { inner: map })
}

#[pymodule]
fn polymap_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySurfaceMap>()?;
    m.add_function(wrap_pyfunction!(classify_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(regions, m)?)?;
    m.add_function(wrap_pyfunction!(proper_type, m)?)?;
    m.add_function(wrap_pyfunction!(dual, m)?)?;
    m.add_function(wrap_pyfunction!(hamiltonian_cycles, m)?)?;
    m.add_function(wrap_pyfunction!(grow_noncontractible, m)?)?;
    m.add_function(wrap_pyfunction!(generate_torus, m)?)?;
    Ok(())
}
