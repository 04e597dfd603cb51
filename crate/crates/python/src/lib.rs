//! Python module `pathring`: the algebra, rewriting system, homology tables,
//! generator tables and geometry checks of `pathring-core`.

use std::collections::BTreeMap;

use pathring_core::algebra::Polynomial;
use pathring_core::generators;
use pathring_core::geometry::{self, GeometryReport, Tolerances};
use pathring_core::homology::{self, AbelianGroup, CoefficientSystem, Coefficients, Entry, GradedGroupTable};
use pathring_core::rewrite::{self, RewriteSystem};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An F2 polynomial in the generators H, T, S, Y, e.g. `Polynomial("HS + SH + 1")`.
#[pyclass(name = "Polynomial", module = "pathring", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPolynomial(Polynomial);

#[derive(FromPyObject)]
enum PolyArg {
    Poly(PyPolynomial),
    Text(String),
}

impl PolyArg {
    fn into_poly(self) -> PyResult<Polynomial> {
        match self {
            PolyArg::Poly(p) => Ok(p.0),
            PolyArg::Text(s) => s.parse().map_err(value_err),
        }
    }
}

#[pymethods]
impl PyPolynomial {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyPolynomial).map_err(value_err)
    }

    fn terms(&self) -> Vec<String> {
        self.0.terms().map(|w| w.to_string()).collect()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Image under the anti-automorphism reversing every word.
    fn reversed(&self) -> Self {
        PyPolynomial(self.0.reversed())
    }

    fn __add__(&self, other: PolyArg) -> PyResult<Self> {
        Ok(PyPolynomial(&self.0 + &other.into_poly()?))
    }

    fn __mul__(&self, other: PolyArg) -> PyResult<Self> {
        Ok(PyPolynomial(&self.0 * &other.into_poly()?))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.0)
    }
}

/// The oriented and completed presentation for a given `n`, valid for
/// normal forms up to `max_degree`.
#[pyclass(name = "RewriteSystem", module = "pathring", frozen)]
struct PyRewriteSystem(RewriteSystem);

#[pymethods]
impl PyRewriteSystem {
    #[new]
    #[pyo3(signature = (n, max_degree = 40))]
    fn new(n: u32, max_degree: i64) -> PyResult<Self> {
        rewrite::standard_system(n, max_degree).map(PyRewriteSystem).map_err(value_err)
    }

    #[getter]
    fn n(&self) -> u32 {
        self.0.signature().n()
    }

    #[getter]
    fn weight_bound(&self) -> u64 {
        self.0.weight_bound()
    }

    fn is_complete(&self) -> bool {
        self.0.is_complete()
    }

    fn rules(&self) -> Vec<String> {
        self.0.rules().iter().map(|r| r.to_string()).collect()
    }

    fn normal_form(&self, p: PolyArg) -> PyResult<PyPolynomial> {
        self.0.normal_form(&p.into_poly()?).map(PyPolynomial).map_err(value_err)
    }

    /// Dimensions of the normal words by `(degree, level)`.
    fn hilbert(&self, max_degree: i64) -> PyResult<BTreeMap<(i64, u32), usize>> {
        let t = rewrite::hilbert(&self.0, max_degree).map_err(value_err)?;
        Ok(t.iter().map(|(d, l, v)| ((d, l), v)).collect())
    }
}

#[pyclass(name = "AbelianGroup", module = "pathring", frozen, eq, get_all, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyAbelianGroup {
    rank: u32,
    torsion: Vec<u64>,
}

#[pymethods]
impl PyAbelianGroup {
    fn __str__(&self) -> String {
        AbelianGroup { rank: self.rank, torsion: self.torsion.clone() }.to_string()
    }

    fn __repr__(&self) -> String {
        format!("AbelianGroup('{}')", self.__str__())
    }
}

#[derive(IntoPyObject)]
enum PyEntry {
    Group(PyAbelianGroup),
    Dim(usize),
}

type Cells = Vec<(i64, Option<u32>, PyEntry)>;

fn cells(t: &GradedGroupTable) -> Cells {
    t.iter()
        .map(|(d, l, e)| {
            let e = match e {
                Entry::Group(g) => PyEntry::Group(PyAbelianGroup { rank: g.rank, torsion: g.torsion.clone() }),
                Entry::Dim(k) => PyEntry::Dim(*k),
            };
            (d, l, e)
        })
        .collect()
}

fn coefficients(coeff: &str) -> PyResult<Coefficients> {
    match coeff {
        "Z" => Ok(Coefficients::Integral),
        "F2" => Ok(Coefficients::F2),
        _ => Err(PyValueError::new_err(format!("coefficients must be 'Z' or 'F2', got {coeff:?}"))),
    }
}

/// Homology of P_n as `(degree, level, group or F2 dimension)` cells.
#[pyfunction]
#[pyo3(signature = (n, coeff = "Z", max_degree = 12))]
fn pn_homology(n: u32, coeff: &str, max_degree: i64) -> PyResult<Cells> {
    homology::assemble_pn_homology(n, coefficients(coeff)?, max_degree).map(|t| cells(&t)).map_err(value_err)
}

/// Homology of the unit tangent bundle of RP^n; `coeff` is `Z`, `Z[o]`
/// (pulled-back orientation system) or `F2`.
#[pyfunction]
#[pyo3(signature = (n, coeff = "Z"))]
fn st_rpn_homology(n: u32, coeff: &str) -> PyResult<Cells> {
    let c = match coeff {
        "Z" => CoefficientSystem::ZTrivial,
        "Z[o]" => CoefficientSystem::ZPullbackO,
        "F2" => CoefficientSystem::F2,
        _ => return Err(PyValueError::new_err(format!("unknown coefficients {coeff:?}"))),
    };
    homology::st_rpn_homology(n, c).map(|t| cells(&t)).map_err(value_err)
}

/// Compares the presented algebra with homology up to `max_degree`.
#[pyclass(name = "Verification", module = "pathring", frozen, get_all)]
struct PyVerification {
    n: u32,
    matches: bool,
    /// `(degree, algebra, homology)` for every differing degree total.
    totals: Vec<(i64, usize, usize)>,
    /// Rule sets of the surviving repairs, as completed systems add them.
    repairs: Vec<Vec<String>>,
}

#[pyfunction]
#[pyo3(signature = (n, max_degree = 40))]
fn verify(n: u32, max_degree: i64) -> PyResult<PyVerification> {
    let rs = rewrite::standard_system(n, max_degree).map_err(value_err)?;
    let hom = homology::assemble_pn_homology(n, Coefficients::F2, max_degree).map_err(value_err)?.to_dim_table();
    let diff = rewrite::compare(&rewrite::hilbert(&rs, max_degree).map_err(value_err)?, &hom).map_err(value_err)?;
    let repairs = if diff.is_empty() {
        Vec::new()
    } else {
        rewrite::repair_search(rs.signature(), &hom, max_degree)
            .map_err(value_err)?
            .survivors
            .iter()
            .map(|o| o.rules.iter().map(|r| r.to_string()).collect())
            .collect()
    };
    Ok(PyVerification {
        n,
        matches: diff.is_empty(),
        totals: diff.totals.iter().map(|t| (t.degree, t.algebra, t.homology)).collect(),
        repairs,
    })
}

/// Named generators as `(degree, level, names)` for the first `levels` levels.
#[pyfunction]
fn generator_table(n: u32, levels: u32) -> Vec<(i64, u32, Vec<String>)> {
    generators::generator_table(n, levels).cells.into_iter().map(|c| (c.degree, c.level, c.names)).collect()
}

/// Mismatches against the shipped table (empty when they agree).
#[pyfunction]
#[pyo3(signature = (n, levels = None))]
fn check_golden(n: u32, levels: Option<u32>) -> PyResult<Vec<String>> {
    let levels = match levels {
        Some(l) => l,
        None => generators::shipped_golden(n).map_err(value_err)?.levels,
    };
    generators::check_golden(n, levels).map(|d| d.iter().map(|m| m.to_string()).collect()).map_err(value_err)
}

#[pyclass(name = "IndexResult", module = "pathring", frozen, get_all)]
struct PyIndexResult {
    n: usize,
    k: usize,
    segments: usize,
    index: usize,
    nullity: usize,
    expected: (usize, usize),
    gradient_norm: f64,
    eigenvalues: Vec<f64>,
}

/// Index and nullity of the critical geodesic of length `k pi/2` in the
/// path space of (CP^n, RP^n), from a broken geodesic with `segments` pieces.
#[pyfunction]
#[pyo3(signature = (n, k, segments = None, fd_step = None, zero_tol = None))]
fn critical_index(
    n: usize,
    k: usize,
    segments: Option<usize>,
    fd_step: Option<f64>,
    zero_tol: Option<f64>,
) -> PyResult<PyIndexResult> {
    let mut tol = Tolerances::default();
    tol.fd_step = fd_step.unwrap_or(tol.fd_step);
    tol.zero_tol = zero_tol.unwrap_or(tol.zero_tol);
    let segments = segments.unwrap_or((4 * k + 4).max(8));
    let r = geometry::critical_index(n, k, segments, &tol).map_err(value_err)?;
    Ok(PyIndexResult {
        n,
        k,
        segments,
        index: r.index,
        nullity: r.nullity,
        expected: geometry::expected_index(n, k),
        gradient_norm: r.gradient_norm,
        eigenvalues: r.eigenvalues,
    })
}

#[pyclass(name = "GeometryReport", module = "pathring", frozen, get_all)]
struct PyGeometryReport {
    name: String,
    seed: u64,
    passed: bool,
    /// `(name, trials, worst, bound, passed)` per check.
    checks: Vec<(String, usize, f64, f64, bool)>,
}

fn geometry_report(r: Result<GeometryReport, geometry::GeometryError>) -> PyResult<PyGeometryReport> {
    let r = r.map_err(value_err)?;
    Ok(PyGeometryReport {
        passed: r.passed(),
        checks: r.checks.into_iter().map(|c| (c.name, c.trials, c.worst, c.bound, c.passed)).collect(),
        name: r.name,
        seed: r.seed,
    })
}

#[pyfunction]
#[pyo3(signature = (trials = 1000, seed = 0))]
fn concat_check(trials: usize, seed: u64) -> PyResult<PyGeometryReport> {
    geometry_report(geometry::concat_check(trials, seed))
}

#[pyfunction]
#[pyo3(signature = (n, trials = 200, seed = 0))]
fn halfcircle_check(n: usize, trials: usize, seed: u64) -> PyResult<PyGeometryReport> {
    geometry_report(geometry::halfcircle_check(n, trials, seed))
}

#[pyfunction]
#[pyo3(signature = (n, k, trials = 200, seed = 0))]
fn yk_check(n: usize, k: usize, trials: usize, seed: u64) -> PyResult<PyGeometryReport> {
    geometry_report(geometry::yk_check(n, k, trials, seed))
}

#[pyfunction]
#[pyo3(signature = (n, trials = 200, seed = 0))]
fn geodesic_check(n: usize, trials: usize, seed: u64) -> PyResult<PyGeometryReport> {
    geometry_report(geometry::geodesic_check(n, trials, seed))
}

#[pymodule]
fn pathring(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyRewriteSystem>()?;
    m.add_class::<PyAbelianGroup>()?;
    m.add_class::<PyVerification>()?;
    m.add_class::<PyIndexResult>()?;
    m.add_class::<PyGeometryReport>()?;
    m.add_function(wrap_pyfunction!(pn_homology, m)?)?;
    m.add_function(wrap_pyfunction!(st_rpn_homology, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(generator_table, m)?)?;
    m.add_function(wrap_pyfunction!(check_golden, m)?)?;
    m.add_function(wrap_pyfunction!(critical_index, m)?)?;
    m.add_function(wrap_pyfunction!(concat_check, m)?)?;
    m.add_function(wrap_pyfunction!(halfcircle_check, m)?)?;
    m.add_function(wrap_pyfunction!(yk_check, m)?)?;
    m.add_function(wrap_pyfunction!(geodesic_check, m)?)?;
    Ok(())
}
