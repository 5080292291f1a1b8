//! Python bindings. Directions are one-based throughout, matching the seed
//! JSON documents and the command-line tools.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde_json::Value;

use cluster_core::exchange::{
    classify as classify_matrix, to_quiver, ExchangeError, ExchangeMatrix, ExtendedExchangeMatrix, FiniteTypeBudget,
};
use cluster_core::gca::{gca_duality_check, GcaError, MutationData};
use cluster_core::golden::{self, GoldenError};
use cluster_core::linalg::IntMatrix;
use cluster_core::pattern::{self, initial_seed, verify_invariants, EnumerateBudget, PatternError};
use cluster_core::polyring::{Poly, VarArena};

create_exception!(cluster_algebra, ClusterError, PyValueError);
create_exception!(cluster_algebra, BudgetError, ClusterError);

fn err(e: impl std::fmt::Display) -> PyErr {
    ClusterError::new_err(e.to_string())
}

fn pattern_err(e: PatternError) -> PyErr {
    match e {
        PatternError::Budget(m) => BudgetError::new_err(m),
        e => err(e),
    }
}

fn gca_err(e: GcaError) -> PyErr {
    match e {
        GcaError::Pattern(p) => pattern_err(p),
        e => err(e),
    }
}

fn exchange_err(e: ExchangeError) -> PyErr {
    match e {
        ExchangeError::BudgetExceeded { .. } => BudgetError::new_err(e.to_string()),
        e => err(e),
    }
}

fn direction(k: usize, n: usize) -> PyResult<usize> {
    if k == 0 || k > n {
        return Err(err(format!("direction {k} outside 1..={n}")));
    }
    Ok(k - 1)
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn from_py(obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    let text: String = obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(err)
}

fn columns(m: &IntMatrix) -> Vec<Vec<i64>> {
    let n = m.first().map_or(0, Vec::len);
    (0..n).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

fn texts(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

/// A skew-symmetrizable integer matrix.
#[pyclass(name = "ExchangeMatrix", module = "cluster_algebra", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyExchangeMatrix(ExchangeMatrix);

#[pymethods]
impl PyExchangeMatrix {
    #[new]
    fn new(rows: IntMatrix) -> PyResult<Self> {
        ExchangeMatrix::new(rows).map(PyExchangeMatrix).map_err(exchange_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn rows(&self) -> IntMatrix {
        self.0.rows().clone()
    }

    /// Skew-symmetrizer `d` with `d_i b_ij = -d_j b_ji`.
    #[getter]
    fn symmetrizer(&self) -> Vec<i64> {
        self.0.skew_symmetrizer()
    }

    fn mutate(&self, k: usize) -> PyResult<Self> {
        Ok(PyExchangeMatrix(self.0.mutate(direction(k, self.0.n())?)))
    }

    fn is_acyclic(&self) -> bool {
        cluster_core::exchange::is_acyclic(&self.0)
    }

    /// `A2`, `B2`, `A1 x A1`, `infinite` or `unknown (budget)`.
    fn classify(&self) -> PyResult<String> {
        classify_matrix(&self.0, FiniteTypeBudget::default())
            .map(|c| c.label())
            .map_err(exchange_err)
    }

    /// Graphviz text of the quiver; skew-symmetric matrices only.
    fn quiver_dot(&self) -> PyResult<String> {
        to_quiver(&self.0).map(|q| q.to_dot()).map_err(exchange_err)
    }

    fn __repr__(&self) -> String {
        format!("ExchangeMatrix({:?})", self.0.rows())
    }
}

/// A seed with principal coefficients: `B`, `C`, `G` and F-polynomials.
#[pyclass(name = "Seed", module = "cluster_algebra", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySeed(pattern::PrincipalSeed);

#[pymethods]
impl PySeed {
    /// The initial seed of `b`.
    #[new]
    fn new(b: IntMatrix) -> PyResult<Self> {
        Ok(PySeed(initial_seed(&ExchangeMatrix::new(b).map_err(exchange_err)?)))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn b(&self) -> IntMatrix {
        self.0.b.rows().clone()
    }

    #[getter]
    fn c(&self) -> IntMatrix {
        self.0.c.clone()
    }

    #[getter]
    fn g(&self) -> IntMatrix {
        self.0.g.clone()
    }

    #[getter]
    fn c_vectors(&self) -> Vec<Vec<i64>> {
        columns(&self.0.c)
    }

    #[getter]
    fn g_vectors(&self) -> Vec<Vec<i64>> {
        columns(&self.0.g)
    }

    /// F-polynomials in text form, e.g. `1 + y1`.
    #[getter]
    fn f(&self) -> Vec<String> {
        texts(&self.0.f)
    }

    #[getter]
    fn path(&self) -> Vec<usize> {
        self.0.path.iter().map(|k| k + 1).collect()
    }

    /// Cluster variables as Laurent polynomials in `x` and `y`.
    #[getter]
    fn cluster_variables(&self) -> PyResult<Vec<String>> {
        (0..self.0.n())
            .map(|i| self.0.cluster_variable(i).map(|p| p.to_factored_string()))
            .collect::<Result<_, _>>()
            .map_err(pattern_err)
    }

    #[getter]
    fn d_vectors(&self) -> PyResult<Vec<Vec<i64>>> {
        (0..self.0.n())
            .map(|i| self.0.d_vector(i))
            .collect::<Result<_, _>>()
            .map_err(pattern_err)
    }

    #[pyo3(signature = (k, max_terms=None))]
    fn mutate(&self, py: Python<'_>, k: usize, max_terms: Option<usize>) -> PyResult<Self> {
        let k = direction(k, self.0.n())?;
        let s = &self.0;
        py.detach(|| s.mutate_bounded(k, None, max_terms)).map(PySeed).map_err(pattern_err)
    }

    fn mutate_path(&self, py: Python<'_>, path: Vec<usize>) -> PyResult<Self> {
        let n = self.0.n();
        let path = path.into_iter().map(|k| direction(k, n)).collect::<PyResult<Vec<_>>>()?;
        let s = &self.0;
        py.detach(|| s.mutate_path(&path)).map(PySeed).map_err(pattern_err)
    }

    /// Relabels by a one-based permutation: index `perm[i]` of the result
    /// holds index `i + 1` of this seed.
    fn relabel(&self, perm: Vec<usize>) -> PyResult<Self> {
        let sigma = perm.iter().map(|&p| direction(p, self.0.n())).collect::<PyResult<Vec<_>>>()?;
        self.0.apply_permutation(&sigma).map(PySeed).map_err(pattern_err)
    }

    /// Structural invariant checks as a dict `{passed, checks}`.
    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = verify_invariants(&self.0);
        to_py(py, &serde_json::json!({"passed": r.passed(), "checks": r.checks}))
    }

    /// The seed document `{b0, b, c, g, f, path}`.
    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.to_json())
    }

    #[staticmethod]
    fn from_json(doc: &Bound<'_, PyAny>) -> PyResult<Self> {
        pattern::PrincipalSeed::from_json(&from_py(doc)?).map(PySeed).map_err(pattern_err)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Seed(n={}, path={:?})", self.0.n(), self.path())
    }
}

/// A seed of a generalized cluster pattern with principal coefficients.
#[pyclass(name = "GcaSeed", module = "cluster_algebra", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGcaSeed(cluster_core::gca::GcaSeed);

#[pymethods]
impl PyGcaSeed {
    /// Initial seed of `b` with degrees `r`. Without `z`, every coefficient
    /// gets a generic name; otherwise `z[i]` lists the `r_i + 1`
    /// coefficients, `None` or `"1"` standing for one.
    #[new]
    #[pyo3(signature = (b, r, z=None))]
    fn new(b: IntMatrix, r: Vec<usize>, z: Option<Vec<Vec<Option<String>>>>) -> PyResult<Self> {
        let b = ExchangeMatrix::new(b).map_err(exchange_err)?;
        let data = match z {
            None => MutationData::generic(&r),
            Some(z) => {
                let z = z
                    .into_iter()
                    .map(|row| row.into_iter().map(|c| c.filter(|s| s != "1")).collect())
                    .collect::<Vec<_>>();
                cluster_core::gca::validate_data(&r, &z)
            }
        }
        .map_err(gca_err)?;
        cluster_core::gca::GcaSeed::initial(&b, data).map(PyGcaSeed).map_err(gca_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn b(&self) -> IntMatrix {
        self.0.b.rows().clone()
    }

    #[getter]
    fn c(&self) -> IntMatrix {
        self.0.c.clone()
    }

    #[getter]
    fn g(&self) -> IntMatrix {
        self.0.g.clone()
    }

    #[getter]
    fn f(&self) -> Vec<String> {
        texts(&self.0.f)
    }

    #[getter]
    fn path(&self) -> Vec<usize> {
        self.0.path.iter().map(|k| k + 1).collect()
    }

    #[getter]
    fn cluster_variables(&self) -> PyResult<Vec<String>> {
        (0..self.0.n())
            .map(|i| self.0.cluster_variable(i).map(|p| p.to_factored_string()))
            .collect::<Result<_, _>>()
            .map_err(gca_err)
    }

    #[pyo3(signature = (k, max_terms=None))]
    fn mutate(&self, py: Python<'_>, k: usize, max_terms: Option<usize>) -> PyResult<Self> {
        let k = direction(k, self.0.n())?;
        let s = &self.0;
        py.detach(|| s.mutate_bounded(k, None, max_terms)).map(PyGcaSeed).map_err(gca_err)
    }

    fn mutate_path(&self, py: Python<'_>, path: Vec<usize>) -> PyResult<Self> {
        let n = self.0.n();
        let path = path.into_iter().map(|k| direction(k, n)).collect::<PyResult<Vec<_>>>()?;
        let s = &self.0;
        py.detach(|| s.mutate_path(&path)).map(PyGcaSeed).map_err(gca_err)
    }

    /// Duality and companion checks as a dict `{passed, checks}`.
    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = gca_duality_check(&self.0).map_err(gca_err)?;
        to_py(py, &serde_json::json!({"passed": r.passed(), "checks": r.checks}))
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.to_json())
    }

    #[staticmethod]
    fn from_json(doc: &Bound<'_, PyAny>) -> PyResult<Self> {
        cluster_core::gca::GcaSeed::from_json(&from_py(doc)?)
            .map(PyGcaSeed)
            .map_err(gca_err)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("GcaSeed(n={}, path={:?})", self.0.n(), self.path())
    }
}

/// A seed of geometric type over cluster variables followed by frozen ones.
#[pyclass(name = "GeometricSeed", module = "cluster_algebra", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGeometricSeed(pattern::GeometricSeed);

#[pymethods]
impl PyGeometricSeed {
    #[new]
    #[pyo3(signature = (bt, names=None))]
    fn new(bt: IntMatrix, names: Option<Vec<String>>) -> PyResult<Self> {
        let bt = ExtendedExchangeMatrix::from_rows(bt).map_err(exchange_err)?;
        match names {
            None => Ok(PyGeometricSeed(pattern::GeometricSeed::new(bt))),
            Some(v) => pattern::GeometricSeed::with_arena(bt, VarArena::new(v))
                .map(PyGeometricSeed)
                .map_err(pattern_err),
        }
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn bt(&self) -> IntMatrix {
        self.0.bt.rows()
    }

    #[getter]
    fn x(&self) -> Vec<String> {
        texts(&self.0.x)
    }

    #[getter]
    fn path(&self) -> Vec<usize> {
        self.0.path.iter().map(|k| k + 1).collect()
    }

    fn mutate(&self, k: usize) -> PyResult<Self> {
        self.0.mutate(direction(k, self.0.n())?).map(PyGeometricSeed).map_err(pattern_err)
    }

    fn mutate_path(&self, path: Vec<usize>) -> PyResult<Self> {
        let n = self.0.n();
        let path = path.into_iter().map(|k| direction(k, n)).collect::<PyResult<Vec<_>>>()?;
        self.0.mutate_path(&path).map(PyGeometricSeed).map_err(pattern_err)
    }

    /// Whether every frozen variable appears with a nonnegative exponent.
    fn strong_laurent(&self) -> bool {
        self.0.frozen_exponents_nonneg()
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.to_json())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0.bt == other.0.bt && self.0.x == other.0.x
    }
}

/// Classifies `b`: a Dynkin label, `infinite` or `unknown (budget)`.
#[pyfunction]
fn classify(b: IntMatrix) -> PyResult<String> {
    PyExchangeMatrix::new(b)?.classify()
}

/// Breadth-first enumeration of the exchange graph as a dict with
/// `complete`, `seed_count`, `variable_count`, `seeds`, `edges`,
/// `cluster_variables` and `dot`.
#[pyfunction]
#[pyo3(signature = (b, max_seeds=pattern::DEFAULT_SEED_BUDGET, max_terms=1_000_000))]
fn enumerate<'py>(py: Python<'py>, b: IntMatrix, max_seeds: usize, max_terms: usize) -> PyResult<Bound<'py, PyAny>> {
    let b = ExchangeMatrix::new(b).map_err(exchange_err)?;
    let r = py.detach(|| pattern::enumerate(&b, EnumerateBudget { max_seeds, max_terms }));
    let mut v = r.to_json();
    v["dot"] = Value::String(r.to_dot());
    to_py(py, &v)
}

/// Checks both separation formulas along a one-based path.
#[pyfunction]
fn check_separation<'py>(py: Python<'py>, b: IntMatrix, path: Vec<usize>) -> PyResult<Bound<'py, PyAny>> {
    let b = ExchangeMatrix::new(b).map_err(exchange_err)?;
    let path = path.into_iter().map(|k| direction(k, b.n())).collect::<PyResult<Vec<_>>>()?;
    let r = py.detach(|| pattern::check_separation(&b, &path)).map_err(pattern_err)?;
    to_py(
        py,
        &serde_json::json!({"passed": r.passed(), "verified": r.verified, "failure": r.failure}),
    )
}

/// Names of the embedded golden examples.
#[pyfunction]
fn examples() -> Vec<&'static str> {
    golden::EXAMPLES.to_vec()
}

/// Replays a golden example: `{name, checked, mismatches, passed}`.
#[pyfunction]
fn replay_example<'py>(py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyAny>> {
    let r = golden::replay(name).map_err(|e: GoldenError| err(e))?;
    to_py(
        py,
        &serde_json::json!({"name": r.name, "checked": r.checked, "mismatches": r.mismatches, "passed": r.passed()}),
    )
}

#[pymodule]
fn cluster_algebra(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ClusterError", m.py().get_type::<ClusterError>())?;
    m.add("BudgetError", m.py().get_type::<BudgetError>())?;
    m.add_class::<PyExchangeMatrix>()?;
    m.add_class::<PySeed>()?;
    m.add_class::<PyGcaSeed>()?;
    m.add_class::<PyGeometricSeed>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(check_separation, m)?)?;
    m.add_function(wrap_pyfunction!(examples, m)?)?;
    m.add_function(wrap_pyfunction!(replay_example, m)?)?;
    Ok(())
}
