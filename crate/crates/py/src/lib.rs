//! Python bindings for the crooked geometry kernel: vector predicates, null
//! frames, crooked halfspaces, disjointness and foliations.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use crooked::disjoint::{self, OracleOutcome};
use crooked::foliation::{CoefficientPath, CrookedFoliation, DirectorPath};
use crooked::lines;
use crooked::scene::CoeffExpr;
use crooked::symmetry::OrbitCoordinate;
use crooked::{CrookedHalfspace, GeomError, Line, NullFrame, Point, Tol, Vec3};

fn err(e: GeomError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn vec(v: [f64; 3]) -> Vec3 {
    Vec3::std(v[0], v[1], v[2])
}

fn point(v: [f64; 3]) -> Point {
    Point::std(v[0], v[1], v[2])
}

/// Causal class of a vector in the standard chart.
#[pyfunction]
#[pyo3(signature = (v, eps = 1e-9))]
fn classify(v: [f64; 3], eps: f64) -> String {
    vec(v).classify(Tol::new(eps)).as_str().to_string()
}

/// Lorentzian inner product x1*x2 + y1*y2 - z1*z2.
#[pyfunction]
fn inner(u: [f64; 3], v: [f64; 3]) -> PyResult<f64> {
    vec(u).inner(&vec(v)).map_err(err)
}

/// Determinant form on three vectors.
#[pyfunction]
fn det3(u: [f64; 3], v: [f64; 3], w: [f64; 3]) -> PyResult<f64> {
    Vec3::det3(&vec(u), &vec(v), &vec(w)).map_err(err)
}

/// Lorentzian cross product, defined by inner(cross(u,v), w) = det3(u,v,w).
#[pyfunction]
fn cross(u: [f64; 3], v: [f64; 3]) -> PyResult<[f64; 3]> {
    Ok(vec(u).cross(&vec(v)).map_err(err)?.comps())
}

/// Normalized null frame (s, s_minus, s_plus) of a spacelike director.
#[pyfunction]
#[pyo3(signature = (director, eps = 1e-9))]
fn null_frame(director: [f64; 3], eps: f64) -> PyResult<([f64; 3], [f64; 3], [f64; 3])> {
    let f = NullFrame::new(&vec(director), Tol::new(eps)).map_err(err)?;
    Ok((f.s().comps(), f.s_minus().comps(), f.s_plus().comps()))
}

/// A crooked halfspace H(vertex, director).
#[pyclass(name = "Halfspace", from_py_object)]
#[derive(Clone)]
struct PyHalfspace {
    inner: CrookedHalfspace,
    tol: Tol,
}

#[pymethods]
impl PyHalfspace {
    #[new]
    #[pyo3(signature = (vertex, director, eps = 1e-9))]
    fn new(vertex: [f64; 3], director: [f64; 3], eps: f64) -> PyResult<Self> {
        let tol = Tol::new(eps);
        Ok(PyHalfspace {
            inner: CrookedHalfspace::new(point(vertex), &vec(director), tol).map_err(err)?,
            tol,
        })
    }

    fn vertex(&self) -> [f64; 3] {
        self.inner.vertex().comps()
    }

    fn director(&self) -> [f64; 3] {
        self.inner.director().comps()
    }

    /// Future null frame vectors (s_minus, s_plus).
    fn frame(&self) -> ([f64; 3], [f64; 3]) {
        (self.inner.frame().s_minus().comps(), self.inner.frame().s_plus().comps())
    }

    #[pyo3(signature = (q, closed = false))]
    fn contains(&self, q: [f64; 3], closed: bool) -> PyResult<bool> {
        self.inner.contains(&point(q), closed, self.tol).map_err(err)
    }

    fn stratum(&self, q: [f64; 3]) -> PyResult<String> {
        Ok(self.inner.stratum(&point(q), self.tol).map_err(err)?.as_str().to_string())
    }

    /// The point with the given frame coordinates relative to the vertex.
    fn point_at(&self, a: f64, b: f64, c: f64) -> [f64; 3] {
        self.inner.point_at(a, b, c).comps()
    }

    fn frame_coords(&self, q: [f64; 3]) -> PyResult<[f64; 3]> {
        self.inner.frame_coords(&point(q)).map_err(err)
    }

    /// Director of the linearized halfplane h(s).
    fn linearize(&self) -> [f64; 3] {
        self.inner.linearize(self.tol).s().comps()
    }

    fn complement(&self) -> PyHalfspace {
        PyHalfspace { inner: self.inner.complement(self.tol), tol: self.tol }
    }

    #[pyo3(signature = (v, relative_interior = false))]
    fn semigroup_contains(&self, v: [f64; 3], relative_interior: bool) -> PyResult<bool> {
        self.inner.semigroup_contains(&vec(v), relative_interior, self.tol).map_err(err)
    }

    /// Orbit invariant bc/a^2; the stem quadrant maps to -inf.
    fn phi(&self, q: [f64; 3]) -> PyResult<f64> {
        match self.inner.phi(&point(q), self.tol).map_err(err)? {
            OrbitCoordinate::NegInfinity => Ok(f64::NEG_INFINITY),
            OrbitCoordinate::Value(v) => Ok(v),
        }
    }

    /// Conformal canonicalization: ((s, t, rho), slice_point).
    fn canonicalize(&self, q: [f64; 3]) -> PyResult<((f64, f64, bool), [f64; 3])> {
        let (p, x) = self.inner.canonicalize(&point(q), self.tol).map_err(err)?;
        Ok(((p.s, p.t, p.rho), x.comps()))
    }

    /// A particle (timelike line) through q contained in the closed halfspace.
    fn particle_through(&self, q: [f64; 3]) -> PyResult<([f64; 3], [f64; 3])> {
        let l = lines::particle_through(&self.inner, &point(q), self.tol).map_err(err)?;
        Ok((l.base().comps(), l.dir().comps()))
    }

    /// Containment of the line base + R dir.
    #[pyo3(signature = (base, dir, closed = true))]
    fn line_contained(&self, base: [f64; 3], dir: [f64; 3], closed: bool) -> PyResult<bool> {
        let l = Line::new(point(base), vec(dir)).map_err(err)?;
        lines::line_in_halfspace(&l, &self.inner, closed, self.tol).map_err(err)
    }

    /// Global slice point at parameter a, in ambient coordinates.
    fn slice_point(&self, a: f64) -> [f64; 3] {
        self.inner.slice_point(a).comps()
    }

    fn __repr__(&self) -> String {
        format!("Halfspace(vertex={:?}, director={:?})", self.vertex(), self.director())
    }
}

/// Disjointness of two crooked halfspaces (closed or open variant).
#[pyfunction]
#[pyo3(signature = (h1, h2, closed = true))]
fn halfspaces_disjoint(h1: &PyHalfspace, h2: &PyHalfspace, closed: bool) -> PyResult<bool> {
    disjoint::halfspaces_disjoint(&h1.inner, &h2.inner, closed, h1.tol).map_err(err)
}

/// Direct inequality criterion for disjoint crooked planes.
#[pyfunction]
#[pyo3(signature = (p1, s1, p2, s2, eps = 1e-9))]
fn planes_disjoint_direct(
    p1: [f64; 3],
    s1: [f64; 3],
    p2: [f64; 3],
    s2: [f64; 3],
    eps: f64,
) -> PyResult<bool> {
    disjoint::planes_disjoint_direct(&point(p1), &vec(s1), &point(p2), &vec(s2), Tol::new(eps))
        .map_err(err)
}

/// Full disjointness report as a dict.
#[pyfunction]
#[pyo3(signature = (h1, h2, oracle_samples = 0, seed = 0))]
fn disjointness_report(
    py: Python<'_>,
    h1: &PyHalfspace,
    h2: &PyHalfspace,
    oracle_samples: usize,
    seed: u64,
) -> PyResult<Py<PyDict>> {
    let r = disjoint::disjointness_report(&h1.inner, &h2.inner, oracle_samples, seed, h1.tol)
        .map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("relation", r.relation.to_string())?;
    d.set_item("consistent", r.consistent)?;
    d.set_item("disjoint_closed", r.cone_closed)?;
    d.set_item("disjoint_open", r.cone_open)?;
    d.set_item("direct", r.direct)?;
    match r.oracle {
        Some(OracleOutcome::Witness(p)) => d.set_item("witness", p.comps())?,
        Some(OracleOutcome::NoWitnessFound) => d.set_item("witness", Option::<[f64; 3]>::None)?,
        None => {}
    }
    d.set_item("agree", r.agree)?;
    Ok(d.into())
}

/// A sampled crooked foliation with the orthogonal director family.
#[pyclass(name = "Foliation")]
struct PyFoliation {
    inner: CrookedFoliation,
    tol: Tol,
}

#[pymethods]
impl PyFoliation {
    /// Coefficient expressions admit constants, t, exp, cosh, sinh, + and *.
    #[new]
    #[pyo3(signature = (t0, t1, steps, a = "1.4142135623730951".to_string(), b = "1.4142135623730951".to_string(), p0 = [0.0, 0.0, 0.0], eps = 1e-9))]
    fn new(t0: f64, t1: f64, steps: usize, a: String, b: String, p0: [f64; 3], eps: f64) -> PyResult<Self> {
        let tol = Tol::new(eps);
        let ae = CoeffExpr::parse(&a).map_err(err)?;
        let be = CoeffExpr::parse(&b).map_err(err)?;
        let cp = CoefficientPath::custom(move |t| ae.eval(t), move |t| be.eval(t));
        let inner =
            CrookedFoliation::build(DirectorPath::orthogonal(), cp, point(p0), t0, t1, steps, tol)
                .map_err(err)?;
        Ok(PyFoliation { inner, tol })
    }

    fn vertex_path(&self) -> Vec<(f64, [f64; 3])> {
        self.inner.vertex_samples().iter().map(|(t, p)| (*t, p.comps())).collect()
    }

    fn certify(&self, py: Python<'_>) -> PyResult<Py<PyDict>> {
        let r = self.inner.certify(self.tol);
        let d = PyDict::new(py);
        d.set_item("certified", r.certified)?;
        d.set_item("velocity_failure", r.velocity_failure)?;
        d.set_item("disjoint_failure", r.disjoint_failure)?;
        Ok(d.into())
    }

    fn locate(&self, q: [f64; 3]) -> PyResult<(usize, usize)> {
        self.inner.locate(&point(q), self.tol).map_err(err)
    }

    fn leaf(&self, i: usize) -> PyResult<PyHalfspace> {
        let leaf = self
            .inner
            .leaves()
            .get(i)
            .ok_or_else(|| PyValueError::new_err("leaf index out of range"))?;
        Ok(PyHalfspace { inner: leaf.halfspace, tol: self.tol })
    }

    fn __len__(&self) -> usize {
        self.inner.leaves().len()
    }
}

#[pymodule]
fn crooked_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(inner, m)?)?;
    m.add_function(wrap_pyfunction!(det3, m)?)?;
    m.add_function(wrap_pyfunction!(cross, m)?)?;
    m.add_function(wrap_pyfunction!(null_frame, m)?)?;
    m.add_function(wrap_pyfunction!(halfspaces_disjoint, m)?)?;
    m.add_function(wrap_pyfunction!(planes_disjoint_direct, m)?)?;
    m.add_function(wrap_pyfunction!(disjointness_report, m)?)?;
    m.add_class::<PyHalfspace>()?;
    m.add_class::<PyFoliation>()?;
    Ok(())
}
