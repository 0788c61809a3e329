//! Python bindings: `Word`, `Code` (all five constructions behind one
//! class), balls and burst events, parameter search, redundancy bounds,
//! and the permutation burst-deletion codes.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use burstcode::bounds;
use burstcode::channel;
use burstcode::codes::{self, BurstCode, Family};
use burstcode::instance::{AnyCode, Instance};
use burstcode::permutation;
use burstcode::verify::DEFAULT_ENUMERATION_CAP;
use burstcode::{CodeError, Word};

fn pyerr(e: CodeError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A fixed-length word over the alphabet `{0, .., q-1}`.
#[pyclass(name = "Word", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyWord {
    inner: Word,
}

#[pymethods]
impl PyWord {
    #[new]
    fn new(q: u64, symbols: Vec<u64>) -> PyResult<Self> {
        Ok(PyWord { inner: Word::new(q, symbols).map_err(pyerr)? })
    }

    /// Parses a digit string for q <= 10, comma-separated symbols above.
    #[staticmethod]
    fn parse(text: &str, q: u64) -> PyResult<Self> {
        Ok(PyWord { inner: Word::parse(text, q).map_err(pyerr)? })
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    #[getter]
    fn symbols(&self) -> Vec<u64> {
        self.inner.symbols().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word(q={}, '{}')", self.inner.q(), self.inner)
    }
}

/// A parameter class of one of the five burst-code constructions:
/// c22, ctt, bin_tt1, qary_tt1, or cts.
#[pyclass(name = "Code", eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyCode {
    inner: BurstCode,
}

#[pymethods]
impl PyCode {
    /// The class of the construction `family` that contains `x`.
    #[staticmethod]
    #[pyo3(signature = (family, x, t, s, p=None))]
    fn for_word(family: &str, x: &PyWord, t: usize, s: usize, p: Option<usize>) -> PyResult<Self> {
        let family: Family = family.parse().map_err(pyerr)?;
        Ok(PyCode { inner: BurstCode::for_word(family, &x.inner, t, s, p).map_err(pyerr)? })
    }

    #[getter]
    fn family(&self) -> String {
        self.inner.family().name().to_string()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    #[getter]
    fn t(&self) -> usize {
        self.inner.t()
    }

    #[getter]
    fn s(&self) -> usize {
        self.inner.s()
    }

    #[getter]
    fn p(&self) -> Option<usize> {
        self.inner.p()
    }

    /// Length of a received word after one `(t, s)`-burst.
    #[getter]
    fn received_len(&self) -> usize {
        self.inner.received_len()
    }

    /// Number of parameter classes the construction partitions the word
    /// space into.
    #[getter]
    fn space_size(&self) -> u128 {
        self.inner.space_size()
    }

    /// The flattened residue vector identifying this class.
    #[getter]
    fn residues(&self) -> Vec<u64> {
        self.inner.residue_vec()
    }

    /// Pigeonhole redundancy guarantee for this construction, in bits.
    #[getter]
    fn guarantee_bits(&self) -> f64 {
        bounds::redundancy_guarantee(&self.inner)
    }

    fn is_member(&self, x: &PyWord) -> PyResult<bool> {
        self.inner.is_member(&x.inner).map_err(pyerr)
    }

    /// Recovers the transmitted codeword from a received word; the
    /// `P`-bounded families accept a `(lo, hi)` locator window.
    #[pyo3(signature = (z, window=None))]
    fn decode(&self, z: &PyWord, window: Option<(usize, usize)>) -> PyResult<PyWord> {
        Ok(PyWord { inner: self.inner.decode(&z.inner, window).map_err(pyerr)? })
    }

    /// Serializes this class as a code-instance JSON document, the same
    /// schema the command-line tool reads.
    fn to_json(&self) -> String {
        AnyCode::Burst(self.inner.clone()).to_instance().to_json()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let any = Instance::from_json(text).map_err(pyerr)?.build().map_err(pyerr)?;
        match any.as_burst() {
            Some(code) => Ok(PyCode { inner: code.clone() }),
            None => Err(PyValueError::new_err(format!(
                "instance family {:?} is not one of the five simple constructions",
                any.family_name()
            ))),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Code(family='{}', n={}, q={}, t={}, s={}, p={:?})",
            self.inner.family().name(),
            self.inner.n(),
            self.inner.q(),
            self.inner.t(),
            self.inner.s(),
            self.inner.p(),
        )
    }
}

/// An arrangement of the values `1..=n`.
#[pyclass(name = "Permutation", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPermutation {
    inner: permutation::Permutation,
}

#[pymethods]
impl PyPermutation {
    #[new]
    fn new(values: Vec<u64>) -> PyResult<Self> {
        Ok(PyPermutation { inner: permutation::Permutation::new(values).map_err(pyerr)? })
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        PyPermutation { inner: permutation::Permutation::identity(n) }
    }

    #[getter]
    fn values(&self) -> Vec<u64> {
        self.inner.values().to_vec()
    }

    /// 1-based rank in the lexicographic order of `S_n`.
    fn lex_rank(&self) -> u64 {
        self.inner.lex_rank()
    }

    /// The `t`-overlapping ranking sequence: lexicographic ranks of all
    /// `(t+1)`-length windows, as a word over the alphabet `(t+1)!`.
    fn ranking_sequence(&self, t: usize) -> PyResult<PyWord> {
        let ranks = permutation::overlapping_ranks(self.inner.values(), t).map_err(pyerr)?;
        Ok(PyWord { inner: ranks })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation([{}])", self.inner)
    }
}

/// A permutation code correcting one burst of `t` stable deletions.
#[pyclass(name = "TbsdCode")]
struct PyTbsdCode {
    inner: permutation::TbsdCode,
}

#[pymethods]
impl PyTbsdCode {
    #[staticmethod]
    fn for_permutation(sigma: &PyPermutation, t: usize) -> PyResult<Self> {
        Ok(PyTbsdCode {
            inner: permutation::TbsdCode::for_permutation(&sigma.inner, t).map_err(pyerr)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn t(&self) -> usize {
        self.inner.t()
    }

    fn is_member(&self, sigma: &PyPermutation) -> PyResult<bool> {
        self.inner.is_member(&sigma.inner).map_err(pyerr)
    }

    /// Reconstructs the permutation from the surviving values.
    fn decode(&self, z: Vec<u64>) -> PyResult<PyPermutation> {
        Ok(PyPermutation { inner: self.inner.decode(&z).map_err(pyerr)? })
    }
}

/// A permutation code correcting one burst of at most `t` stable
/// deletions.
#[pyclass(name = "LeqTbsdCode")]
struct PyLeqTbsdCode {
    inner: permutation::LeqTbsdCode,
}

#[pymethods]
impl PyLeqTbsdCode {
    #[staticmethod]
    #[pyo3(signature = (sigma, t, p=None))]
    fn for_permutation(sigma: &PyPermutation, t: usize, p: Option<usize>) -> PyResult<Self> {
        Ok(PyLeqTbsdCode {
            inner: permutation::LeqTbsdCode::for_permutation(&sigma.inner, t, p).map_err(pyerr)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn t(&self) -> usize {
        self.inner.t()
    }

    fn is_member(&self, sigma: &PyPermutation) -> PyResult<bool> {
        self.inner.is_member(&sigma.inner).map_err(pyerr)
    }

    #[pyo3(signature = (z, window=None))]
    fn decode(&self, z: Vec<u64>, window: Option<(usize, usize)>) -> PyResult<PyPermutation> {
        Ok(PyPermutation { inner: self.inner.decode(&z, window).map_err(pyerr)? })
    }
}

/// Closed-form `(t, s)`-burst ball size for `s >= 1`:
/// `q^(s-1) * ((q-1)(n-t+1) + 1)`, independent of the center.
#[pyfunction]
fn ball_size(n: usize, q: u64, t: usize, s: usize) -> PyResult<u128> {
    bounds::ball_size_formula(n, q, t, s).map_err(pyerr)
}

/// Enumerates the `(t, s)`-burst ball around a center word.
#[pyfunction]
fn ball_members(center: &PyWord, t: usize, s: usize) -> PyResult<Vec<PyWord>> {
    let ball = channel::ball(&center.inner, t, s).map_err(pyerr)?;
    Ok(ball.members().iter().map(|w| PyWord { inner: w.clone() }).collect())
}

/// Whether `z` can result from `x` by one `(t, s)`-burst.
#[pyfunction]
fn is_burst_outcome(x: &PyWord, z: &PyWord, t: usize, s: usize) -> bool {
    channel::is_burst_outcome(&x.inner, &z.inner, t, s)
}

/// Applies the `(t, len(ins))`-burst at 1-based position `pos`.
#[pyfunction]
fn apply_burst(x: &PyWord, pos: usize, t: usize, ins: Vec<u64>) -> PyResult<PyWord> {
    let event = channel::BurstEvent { pos, t, ins };
    Ok(PyWord { inner: channel::apply_burst(&x.inner, &event).map_err(pyerr)? })
}

/// Deletes `t` consecutive values from the permutation without
/// renumbering the survivors.
#[pyfunction]
fn apply_stable_burst_deletion(sigma: &PyPermutation, pos: usize, t: usize) -> PyResult<Vec<u64>> {
    permutation::apply_stable_burst_deletion(&sigma.inner, pos, t).map_err(pyerr)
}

/// Exhaustively finds the family's largest parameter class at the given
/// dimensions. Returns `(code, size, nonempty_classes)`.
#[pyfunction]
#[pyo3(signature = (family, n, q, t, s, p=None, cap=DEFAULT_ENUMERATION_CAP))]
fn param_search(
    family: &str,
    n: usize,
    q: u64,
    t: usize,
    s: usize,
    p: Option<usize>,
    cap: u128,
) -> PyResult<(PyCode, u64, u64)> {
    let family: Family = family.parse().map_err(pyerr)?;
    let outcome = codes::param_search(family, n, q, t, s, p, cap).map_err(pyerr)?;
    Ok((PyCode { inner: outcome.code }, outcome.size, outcome.nonempty_classes))
}

/// Sphere-packing lower bound on the redundancy of a `(t, s)`-burst
/// code, in bits, for `s >= 1`.
#[pyfunction]
fn sphere_packing_redundancy(n: usize, q: u64, t: usize, s: usize) -> PyResult<f64> {
    bounds::sphere_packing_redundancy(n, q, t, s).map_err(pyerr)
}

/// Redundancy `n*log2(q) - log2(size)` of a code of the given size.
#[pyfunction]
fn code_redundancy(n: usize, q: u64, size: u128) -> PyResult<f64> {
    bounds::code_redundancy(n, q, size).map_err(pyerr)
}

#[pymodule]
fn burstcode_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWord>()?;
    m.add_class::<PyCode>()?;
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyTbsdCode>()?;
    m.add_class::<PyLeqTbsdCode>()?;
    m.add_function(wrap_pyfunction!(ball_size, m)?)?;
    m.add_function(wrap_pyfunction!(ball_members, m)?)?;
    m.add_function(wrap_pyfunction!(is_burst_outcome, m)?)?;
    m.add_function(wrap_pyfunction!(apply_burst, m)?)?;
    m.add_function(wrap_pyfunction!(apply_stable_burst_deletion, m)?)?;
    m.add_function(wrap_pyfunction!(param_search, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_packing_redundancy, m)?)?;
    m.add_function(wrap_pyfunction!(code_redundancy, m)?)?;
    m.add("DEFAULT_ENUMERATION_CAP", DEFAULT_ENUMERATION_CAP)?;
    Ok(())
}
