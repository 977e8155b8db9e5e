//! Python bindings. Rationals go in as `int`, `str` (`"5/2"`) or
//! `fractions.Fraction` and come out as `Fraction`. Indices are 0-based;
//! results returned as dicts have the same layout as the CLI's JSON, where
//! indices are 1-based.

use pyo3::create_exception;
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyFloat};
use serde_json::Value;

use toricdeg::bott::{self, BottData};
use toricdeg::gromov::{self, RootFamily, RootSystemSpec};
use toricdeg::io;
use toricdeg::rational::{fmt_q, parse_q};
use toricdeg::valuation::{self, GradedSemigroup, SlideDirection};
use toricdeg::{hull, HPolytope, HalfSpace, LatticePointSet, Q};

create_exception!(toricdeg, ToricDegError, PyValueError, "A mathematical precondition failed.");

fn err(e: toricdeg::Error) -> PyErr {
    ToricDegError::new_err(e.to_string())
}

fn q_arg(obj: &Bound<'_, PyAny>) -> PyResult<Q> {
    if obj.is_instance_of::<PyBool>() || obj.is_instance_of::<PyFloat>() {
        return Err(PyTypeError::new_err("rationals must be int, str or Fraction"));
    }
    let s: String = obj.str()?.extract()?;
    parse_q(&s).map_err(|_| PyValueError::new_err(format!("not a rational: {s:?}")))
}

fn q_args(v: &[Bound<'_, PyAny>]) -> PyResult<Vec<Q>> {
    v.iter().map(q_arg).collect()
}

fn fraction<'py>(py: Python<'py>, x: &Q) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((fmt_q(x),))
}

fn fractions<'py>(py: Python<'py>, v: &[Q]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    v.iter().map(|x| fraction(py, x)).collect()
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn from_json_text(text: &str) -> PyResult<Value> {
    serde_json::from_str(text).map_err(|e| PyValueError::new_err(format!("invalid JSON: {e}")))
}

fn points(set: &LatticePointSet) -> Vec<Vec<i64>> {
    set.iter().cloned().collect()
}

fn point_set(pts: Vec<Vec<i64>>) -> PyResult<LatticePointSet> {
    let dim = pts.first().map_or(0, Vec::len);
    LatticePointSet::from_points(dim, pts).map_err(err)
}

fn direction(k: usize, l: usize, c: u32) -> SlideDirection {
    SlideDirection::new(k, l, c)
}

/// Polytope given by inequalities `a·p <= b`, with exact rational data.
#[pyclass(module = "toricdeg", frozen)]
struct Polytope {
    inner: HPolytope,
}

#[pymethods]
impl Polytope {
    /// Rows `[a_1, ..., a_n, b]` meaning `Σ a_i p_i <= b`.
    #[staticmethod]
    fn from_inequalities(dim: usize, rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let hs = rows
            .iter()
            .map(|r| {
                if r.len() != dim + 1 {
                    return Err(PyValueError::new_err(format!("expected rows of length {}", dim + 1)));
                }
                let r = q_args(r)?;
                HalfSpace::from_rational(&r[..dim], &r[dim]).map_err(err)
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Polytope { inner: HPolytope::new(dim, hs).map_err(err)? })
    }

    #[staticmethod]
    fn from_vertices(vertices: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let pts = vertices.iter().map(|v| q_args(v)).collect::<PyResult<Vec<_>>>()?;
        let dim = pts.first().map_or(0, Vec::len);
        Ok(Polytope { inner: hull(dim, &pts).map_err(err)? })
    }

    #[staticmethod]
    fn cuboid(lo: Vec<i64>, hi: Vec<i64>) -> PyResult<Self> {
        if lo.len() != hi.len() {
            return Err(PyValueError::new_err("lo and hi differ in length"));
        }
        Ok(Polytope { inner: HPolytope::cuboid(&lo, &hi).map_err(err)? })
    }

    /// Parses the CLI's polytope JSON.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Polytope { inner: io::parse_polytope(&from_json_text(text)?, "").map_err(err)? })
    }

    fn to_json(&self) -> String {
        io::polytope_json(&self.inner).to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn vertices<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        let v = self.inner.vertices().map_err(err)?;
        v.vertices.iter().map(|x| fractions(py, x)).collect()
    }

    /// `(normal, rhs)` pairs.
    fn inequalities<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Vec<i64>, Bound<'py, PyAny>)>> {
        self.inner.halfspaces().iter().map(|h| Ok((h.normal.clone(), fraction(py, &h.rhs)?))).collect()
    }

    fn lattice_points(&self) -> PyResult<Vec<Vec<i64>>> {
        Ok(points(&self.inner.lattice_points().map_err(err)?))
    }

    fn contains(&self, point: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
        let p = q_args(&point)?;
        if p.len() != self.inner.dim() {
            return Err(PyValueError::new_err("dimension mismatch"));
        }
        Ok(self.inner.contains(&p))
    }

    fn dilate(&self, m: u32) -> Polytope {
        Polytope { inner: self.inner.dilate(m) }
    }

    fn volume<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.volume())
    }

    fn is_integral(&self) -> bool {
        self.inner.is_integral()
    }

    fn is_smooth(&self) -> PyResult<bool> {
        Ok(self.inner.is_delzant_smooth().map_err(err)?.is_smooth())
    }

    /// `None` if normal up to `max_level`, else `(m, point)`.
    #[pyo3(signature = (max_level=None))]
    fn normality_counterexample(&self, max_level: Option<usize>) -> PyResult<Option<(usize, Vec<i64>)>> {
        let m = max_level.unwrap_or_else(|| self.inner.dim().saturating_sub(1).max(2));
        Ok(self.inner.is_normal(m).map_err(err)?.counterexample)
    }

    fn __eq__(&self, other: &Polytope) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        let v = self.inner.vertices().map(|v| v.display_vertices()).unwrap_or_default();
        format!("Polytope(dim={}, vertices={:?})", self.inner.dim(), v)
    }
}

/// Slides lattice points in direction `-e_k + c e_l` (0-based `k < l`).
#[pyfunction]
fn slide(points_in: Vec<Vec<i64>>, k: usize, l: usize, c: u32) -> PyResult<Vec<Vec<i64>>> {
    let s = point_set(points_in)?;
    Ok(points(&valuation::slide(&s, &direction(k, l, c)).map_err(err)?))
}

/// Lowest-term valuation image of the monomials `f^α`, `α` in `points`,
/// expanded in the coordinates of the slide; equals `slide(...)`.
#[pyfunction]
fn valuation_image(points_in: Vec<Vec<i64>>, k: usize, l: usize, c: u32) -> PyResult<Vec<Vec<i64>>> {
    let s = point_set(points_in)?;
    let polys = valuation::monomial_expansions(&s, &direction(k, l, c)).map_err(err)?;
    Ok(points(&valuation::valuation_image(&polys).map_err(err)?))
}

/// Truncated graded semigroup of valuation values; level `m` is the slid
/// `mP ∩ ℤⁿ`.
#[pyclass(module = "toricdeg", frozen)]
struct Semigroup {
    inner: GradedSemigroup,
}

#[pymethods]
impl Semigroup {
    /// Without `c` the valuation is the monomial one (no slide).
    #[new]
    #[pyo3(signature = (polytope, max_level, k=0, l=1, c=None))]
    fn new(polytope: &Polytope, max_level: usize, k: usize, l: usize, c: Option<u32>) -> PyResult<Self> {
        let d = c.map(|c| direction(k, l, c));
        Ok(Semigroup { inner: valuation::build_semigroup(&polytope.inner, d.as_ref(), max_level).map_err(err)? })
    }

    #[getter]
    fn max_level(&self) -> usize {
        self.inner.max_level()
    }

    fn level(&self, m: usize) -> PyResult<Vec<Vec<i64>>> {
        Ok(points(self.inner.level(m).map_err(err)?))
    }

    fn okounkov(&self, m: usize) -> PyResult<Polytope> {
        Ok(Polytope { inner: valuation::okounkov_approx(&self.inner, m).map_err(err)? })
    }

    /// Dict with `saturated` and the first `witness` found.
    fn saturation<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &io::saturation_json(&valuation::check_saturation(&self.inner)))
    }

    /// Compares every level `m` with `mΔ ∩ ℤⁿ`.
    fn cone_condition<'py>(&self, py: Python<'py>, target: &Polytope) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &io::cone_json(&valuation::check_cone_condition(&self.inner, &target.inner).map_err(err)?))
    }
}

/// `min |<λ, α∨>|` over coroots with nonzero pairing. `rank` is the Lie rank;
/// type A uses `rank + 1` coordinates.
#[pyfunction]
fn gw_formula<'py>(py: Python<'py>, family: &str, rank: usize, lam: Vec<Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
    let fam: RootFamily = family.parse().map_err(err)?;
    let spec = RootSystemSpec::new(fam, rank).map_err(err)?;
    fraction(py, &gromov::gw_formula(&spec, &q_args(&lam)?).map_err(err)?)
}

/// Largest `a` with `Ψ(𝔖ⁿ(a)) + x ⊆ Δ` over unimodular `Ψ` with entries
/// bounded by `bound`; dict with `a`, `psi`, `x`.
#[pyfunction]
#[pyo3(signature = (polytope, bound=3))]
fn best_simplex_lb<'py>(py: Python<'py>, polytope: &Polytope, bound: i64) -> PyResult<Bound<'py, PyAny>> {
    let fit = py.detach(|| gromov::best_simplex_lb(&polytope.inner, bound)).map_err(err)?;
    to_py(py, &io::fit_json(&fit))
}

/// Seeded hill climbing; a valid lower bound without an optimality guarantee.
#[pyfunction]
#[pyo3(signature = (polytope, seed=0, restarts=16))]
fn heuristic_simplex_lb<'py>(py: Python<'py>, polytope: &Polytope, seed: u64, restarts: usize) -> PyResult<Bound<'py, PyAny>> {
    let fit = py.detach(|| gromov::heuristic_simplex_lb(&polytope.inner, seed, restarts)).map_err(err)?;
    to_py(py, &io::fit_json(&fit))
}

/// Strictly upper triangular `A` and `λ` describing a Bott manifold.
#[pyclass(name = "BottData", module = "toricdeg", frozen)]
struct PyBottData {
    inner: BottData,
}

#[pymethods]
impl PyBottData {
    #[new]
    fn new(a: Vec<Vec<i64>>, lam: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        Ok(PyBottData { inner: BottData::new(a, q_args(&lam)?).map_err(err)? })
    }

    #[staticmethod]
    fn hirzebruch(a: i64, l1: Bound<'_, PyAny>, l2: Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyBottData { inner: BottData::hirzebruch(a, q_arg(&l1)?, q_arg(&l2)?).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyBottData { inner: io::parse_bott(&from_json_text(text)?, "").map_err(err)? })
    }

    fn to_json(&self) -> String {
        io::bott_json(&self.inner).to_string()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn a(&self) -> Vec<Vec<i64>> {
        self.inner.a.clone()
    }

    #[getter]
    fn lam<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, &self.inner.lambda)
    }

    fn polytope(&self) -> Polytope {
        Polytope { inner: bott::bott_polytope(&self.inner) }
    }

    fn is_hypercube(&self) -> bool {
        bott::is_hypercube(&self.inner)
    }

    fn is_q_trivial(&self) -> bool {
        bott::is_q_trivial(&self.inner)
    }

    /// Target of the change of coordinates `x_k ↦ x̃_k + δ x̃_l`.
    fn shift(&self, k: usize, l: usize, delta: i64) -> PyResult<PyBottData> {
        Ok(PyBottData { inner: bott::shift_move(&self.inner, k, l, delta).map_err(err)?.target })
    }

    /// Target of the normalizing move at `(k, l)`.
    fn elementary_move(&self, k: usize, l: usize) -> PyResult<PyBottData> {
        Ok(PyBottData { inner: bott::elementary_move(&self.inner, k, l).map_err(err)?.target })
    }

    fn standard_form<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &io::standard_form_json(&bott::standard_form(&self.inner).map_err(err)?))
    }

    fn __eq__(&self, other: &PyBottData) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        let lam: Vec<String> = self.inner.lambda.iter().map(fmt_q).collect();
        format!("BottData(a={:?}, lam={:?})", self.inner.a, lam)
    }
}

/// Dict with `verdict` ("Yes"/"No") and a `certificate` or `reason`.
#[pyfunction]
fn decide_symplectomorphic<'py>(py: Python<'py>, b: &PyBottData, bt: &PyBottData) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &io::decision_json(&bott::decide_symplectomorphic(&b.inner, &bt.inner).map_err(err)?))
}

#[pyfunction]
fn hirzebruch_classify(b: &PyBottData, bt: &PyBottData) -> PyResult<bool> {
    bott::hirzebruch_classify(&b.inner, &bt.inner).map_err(err)
}

/// Realizes the move at `(k, l)` by a sliding degeneration and compares the
/// semigroup with the target polytope up to `max_level`.
#[pyfunction]
#[pyo3(signature = (b, k, l, target_entry=None, max_level=4))]
fn verify_degeneration_move<'py>(
    py: Python<'py>,
    b: &PyBottData,
    k: usize,
    l: usize,
    target_entry: Option<i64>,
    max_level: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let r = py
        .detach(|| bott::verify_degeneration_move(&b.inner, k, l, target_entry, max_level))
        .map_err(err)?;
    to_py(py, &io::degeneration_json(&r))
}

#[pymodule]
#[pyo3(name = "toricdeg")]
pub fn toricdeg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ToricDegError", m.py().get_type::<ToricDegError>())?;
    m.add_class::<Polytope>()?;
    m.add_class::<Semigroup>()?;
    m.add_class::<PyBottData>()?;
    m.add_function(wrap_pyfunction!(slide, m)?)?;
    m.add_function(wrap_pyfunction!(valuation_image, m)?)?;
    m.add_function(wrap_pyfunction!(gw_formula, m)?)?;
    m.add_function(wrap_pyfunction!(best_simplex_lb, m)?)?;
    m.add_function(wrap_pyfunction!(heuristic_simplex_lb, m)?)?;
    m.add_function(wrap_pyfunction!(decide_symplectomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(hirzebruch_classify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_degeneration_move, m)?)?;
    Ok(())
}
