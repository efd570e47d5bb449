//! Python bindings for the `quadrics` crate.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use pyo3::exceptions::{PyMemoryError, PyValueError};
use pyo3::prelude::*;

use quadrics::poset::DEFAULT_MAX_N;
use quadrics::{monoid, poset, schubert, Error};

fn to_py(err: Error) -> PyErr {
    match err {
        Error::ResourceBound { .. } | Error::ChainLimit { .. } => {
            PyMemoryError::new_err(err.to_string())
        }
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn hash_of<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

fn exponent_mode(mode: &str) -> PyResult<quadrics::ExponentMode> {
    match mode {
        "double-edges" => Ok(quadrics::ExponentMode::DoubleEdges),
        "uniform" => Ok(quadrics::ExponentMode::Uniform),
        other => Err(PyValueError::new_err(format!(
            "exponent mode must be 'double-edges' or 'uniform', got {other:?}"
        ))),
    }
}

/// A permutation in one-line notation.
#[pyclass(
    name = "Permutation",
    module = "pyquadrics",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyPermutation(quadrics::Permutation);

#[pymethods]
impl PyPermutation {
    #[new]
    fn new(word: Vec<usize>) -> PyResult<Self> {
        quadrics::Permutation::new(word).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Self(quadrics::Permutation::identity(n))
    }

    #[staticmethod]
    fn longest(n: usize) -> Self {
        Self(quadrics::Permutation::longest(n))
    }

    fn word(&self) -> Vec<usize> {
        self.0.to_vec()
    }

    fn length(&self) -> usize {
        self.0.length()
    }

    fn excedance(&self) -> usize {
        self.0.excedance()
    }

    fn is_involution(&self) -> bool {
        self.0.is_involution()
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    /// `self ∘ other`.
    fn compose(&self, other: &PyPermutation) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(to_py)
    }

    fn reduced_words(&self) -> Vec<Vec<usize>> {
        self.0
            .reduced_words()
            .into_iter()
            .map(|w| w.letters().to_vec())
            .collect()
    }

    fn bruhat_leq(&self, other: &PyPermutation) -> PyResult<bool> {
        self.0.bruhat_leq(&other.0).map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __eq__(&self, other: &PyPermutation) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        hash_of(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({:?})", self.0.to_vec())
    }
}

/// An ordered sequence of positive parts.
#[pyclass(
    name = "Composition",
    module = "pyquadrics",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyComposition(quadrics::Composition);

#[pymethods]
impl PyComposition {
    #[new]
    fn new(parts: Vec<usize>) -> PyResult<Self> {
        quadrics::Composition::new(parts).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn all(n: usize) -> Vec<Self> {
        quadrics::Composition::all(n)
            .into_iter()
            .map(Self)
            .collect()
    }

    fn parts(&self) -> Vec<usize> {
        self.0.parts().to_vec()
    }

    fn n(&self) -> usize {
        self.0.n()
    }

    fn __eq__(&self, other: &PyComposition) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        hash_of(&self.0.parts())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Composition({:?})", self.0.parts())
    }
}

fn composition(parts: Vec<usize>) -> PyResult<quadrics::Composition> {
    quadrics::Composition::new(parts).map_err(to_py)
}

/// A permutation cut into strings, each an involution in relative order.
#[pyclass(
    name = "MuInvolution",
    module = "pyquadrics",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyMuInvolution(quadrics::MuInvolution);

#[pymethods]
impl PyMuInvolution {
    #[new]
    fn new(word: Vec<usize>, mu: Vec<usize>) -> PyResult<Self> {
        let perm = quadrics::Permutation::new(word).map_err(to_py)?;
        quadrics::MuInvolution::validate(perm, composition(mu)?)
            .map(Self)
            .map_err(to_py)
    }

    /// Bar notation such as `"314|6|27|5"`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn identity(mu: Vec<usize>) -> PyResult<Self> {
        Ok(Self(quadrics::MuInvolution::identity(&composition(mu)?)))
    }

    #[staticmethod]
    fn top(mu: Vec<usize>) -> PyResult<Self> {
        Ok(Self(quadrics::MuInvolution::top(&composition(mu)?)))
    }

    fn word(&self) -> Vec<usize> {
        self.0.perm().to_vec()
    }

    fn mu(&self) -> Vec<usize> {
        self.0.mu().parts().to_vec()
    }

    fn strings(&self) -> Vec<Vec<usize>> {
        self.0.strings()
    }

    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn double_edge_count(&self) -> usize {
        self.0.double_edge_count()
    }

    /// `s_i · self`.
    fn act(&self, i: usize) -> PyResult<Self> {
        quadrics::act_simple(i, &self.0).map(Self).map_err(to_py)
    }

    /// Letters act right to left.
    fn act_word(&self, word: Vec<usize>) -> PyResult<Self> {
        monoid::act_word(&quadrics::MonoidWord(word), &self.0)
            .map(Self)
            .map_err(to_py)
    }

    fn __eq__(&self, other: &PyMuInvolution) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        hash_of(&(self.0.mu().parts(), self.0.perm()))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("MuInvolution('{}')", self.0)
    }
}

/// The reverse weak order on all μ-involutions of one composition.
#[pyclass(name = "Poset", module = "pyquadrics", frozen)]
struct PyPoset(quadrics::WeakOrderPoset);

#[pymethods]
impl PyPoset {
    #[new]
    #[pyo3(signature = (mu, max_n = DEFAULT_MAX_N))]
    fn new(py: Python<'_>, mu: Vec<usize>, max_n: usize) -> PyResult<Self> {
        let mu = composition(mu)?;
        py.detach(|| quadrics::WeakOrderPoset::build(&mu, max_n))
            .map(Self)
            .map_err(to_py)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        quadrics::WeakOrderPoset::from_json(text)
            .map(Self)
            .map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn height(&self) -> usize {
        self.0.height()
    }

    /// Nodes ordered by rank, then word.
    fn nodes(&self) -> Vec<PyMuInvolution> {
        (0..self.0.len())
            .map(|id| PyMuInvolution(self.0.node(id)))
            .collect()
    }

    /// `(source, target, label, is_double)` with node indices into `nodes()`.
    fn edges(&self) -> Vec<(usize, usize, usize, bool)> {
        self.0
            .edges()
            .iter()
            .map(|e| {
                let double = e.multiplicity == quadrics::Multiplicity::Double;
                (e.source, e.target, e.label, double)
            })
            .collect()
    }

    fn count_maximal_chains(&self) -> BigUint {
        self.0.count_maximal_chains()
    }

    fn w_set(&self, pi: &PyMuInvolution) -> PyResult<Vec<PyPermutation>> {
        let set = self.0.w_set(&pi.0).map_err(to_py)?;
        Ok(set.elements.into_iter().map(PyPermutation).collect())
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn to_dot(&self) -> String {
        self.0.to_dot()
    }
}

/// An integer polynomial in `x1, x2, …`.
#[pyclass(
    name = "Polynomial",
    module = "pyquadrics",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyPolynomial(quadrics::Polynomial);

#[pymethods]
impl PyPolynomial {
    /// Builds from `(exponents, coefficient)` pairs.
    #[new]
    #[pyo3(signature = (terms = Vec::new()))]
    fn new(terms: Vec<(Vec<u16>, i64)>) -> Self {
        Self(
            terms
                .iter()
                .map(|(e, c)| quadrics::Polynomial::monomial(e, *c))
                .sum(),
        )
    }

    #[staticmethod]
    fn var(i: usize) -> Self {
        Self(quadrics::Polynomial::var(i))
    }

    fn terms(&self) -> Vec<(Vec<u16>, i64)> {
        self.0
            .terms()
            .map(|(m, c)| (m.exps().to_vec(), c))
            .collect()
    }

    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn divided_difference(&self, i: usize) -> Self {
        Self(self.0.divided_difference(i))
    }

    fn __add__(&self, other: &PyPolynomial) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &PyPolynomial) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &PyPolynomial) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __eq__(&self, other: &PyPolynomial) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.0)
    }
}

#[pyfunction]
fn d_set(n: usize) -> Vec<PyPermutation> {
    quadrics::d_set(n).into_iter().map(PyPermutation).collect()
}

#[pyfunction]
fn d_set_mu(mu: Vec<usize>) -> PyResult<Vec<PyPermutation>> {
    Ok(quadrics::d_set_mu(&composition(mu)?)
        .into_iter()
        .map(PyPermutation)
        .collect())
}

#[pyfunction]
fn count_mu_involutions(mu: Vec<usize>) -> PyResult<BigUint> {
    Ok(quadrics::count_mu_involutions(&composition(mu)?))
}

#[pyfunction]
fn schubert_polynomial(w: &PyPermutation) -> PyPolynomial {
    PyPolynomial(quadrics::schubert(&w.0).poly)
}

#[pyfunction]
#[pyo3(signature = (mu, mode = "double-edges"))]
fn restriction_class(py: Python<'_>, mu: Vec<usize>, mode: &str) -> PyResult<PyPolynomial> {
    let (mu, mode) = (composition(mu)?, exponent_mode(mode)?);
    Ok(PyPolynomial(
        py.detach(|| quadrics::restriction_class(&mu, mode)),
    ))
}

#[pyfunction]
fn conjecture_product(n: usize) -> PyPolynomial {
    PyPolynomial(quadrics::conjecture_product(n))
}

/// Whether the restriction class of `(n)` equals the product of binomials.
#[pyfunction]
fn check_conjecture(py: Python<'_>, n: usize) -> bool {
    py.detach(|| quadrics::check_conjecture(n)).passed()
}

/// `(passed, report_text)` for every check on one composition.
#[pyfunction]
#[pyo3(signature = (mu, max_n = DEFAULT_MAX_N))]
fn verify(py: Python<'_>, mu: Vec<usize>, max_n: usize) -> PyResult<(bool, String)> {
    let mu = composition(mu)?;
    let report = py.detach(|| poset::verify_all(&mu, max_n)).map_err(to_py)?;
    Ok((report.passed(), report.to_string()))
}

/// `(double_edge_exponent, uniform_exponent, flagged)`.
#[pyfunction]
fn compare_exponents(mu: Vec<usize>) -> PyResult<(usize, usize, bool)> {
    let cmp = schubert::compare_exponent_conventions(&composition(mu)?);
    Ok((cmp.double_edge_exponent, cmp.uniform_exponent, cmp.flagged))
}

#[pymodule]
fn pyquadrics(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyComposition>()?;
    m.add_class::<PyMuInvolution>()?;
    m.add_class::<PyPoset>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_function(wrap_pyfunction!(d_set, m)?)?;
    m.add_function(wrap_pyfunction!(d_set_mu, m)?)?;
    m.add_function(wrap_pyfunction!(count_mu_involutions, m)?)?;
    m.add_function(wrap_pyfunction!(schubert_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(restriction_class, m)?)?;
    m.add_function(wrap_pyfunction!(conjecture_product, m)?)?;
    m.add_function(wrap_pyfunction!(check_conjecture, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(compare_exponents, m)?)?;
    Ok(())
}
