//! Python bindings for `seqgme`.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use seqgme::dense::{self, DenseCap};
use seqgme::scenario::{build_witness_spec, enumerate_z_terms as enumerate_groups, PauliString};
use seqgme::sequence::{self, unboundedness_probe};
use seqgme::transfer::{self, witness_expectation_analytic};
use seqgme::{GeneratorKind, IntervalMode, S1Mode, SequenceStatus, StateFamily};

fn to_py(e: seqgme::Error) -> PyErr {
    match e {
        seqgme::Error::DenseCapExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse<T: std::str::FromStr<Err = String>>(s: &str) -> PyResult<T> {
    s.parse().map_err(PyValueError::new_err)
}

/// Scenario: qubit count, recycled qubits, first-round sharpness, margin and
/// initial state family ("ghz", "gghz" or "mixed").
#[pyclass(name = "ScenarioConfig", frozen)]
struct PyScenarioConfig {
    inner: seqgme::ScenarioConfig,
}

#[pymethods]
impl PyScenarioConfig {
    #[new]
    #[pyo3(signature = (n_qubits, n_recycled, lambda1, epsilon=0.01, family="ghz", a=None, p1=None, p2=None, recycled=None, s1_mode="oracle", interval="open", max_rounds=1000))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        n_qubits: usize,
        n_recycled: usize,
        lambda1: f64,
        epsilon: f64,
        family: &str,
        a: Option<f64>,
        p1: Option<f64>,
        p2: Option<f64>,
        recycled: Option<Vec<usize>>,
        s1_mode: &str,
        interval: &str,
        max_rounds: usize,
    ) -> PyResult<Self> {
        let missing = |name: &str| PyValueError::new_err(format!("family {family:?} needs {name}"));
        let family = match family {
            "ghz" => StateFamily::Ghz,
            "gghz" => StateFamily::GeneralizedGhz { a: a.ok_or_else(|| missing("a"))? },
            "mixed" => StateFamily::MixedGghz {
                p1: p1.ok_or_else(|| missing("p1"))?,
                p2: p2.unwrap_or(0.0),
                a: a.ok_or_else(|| missing("a"))?,
            },
            other => return Err(PyValueError::new_err(format!("unknown family {other:?}"))),
        };
        let mut inner = seqgme::ScenarioConfig::new(n_qubits, n_recycled, lambda1, epsilon)
            .and_then(|c| c.with_family(family))
            .and_then(|c| c.with_max_rounds(max_rounds))
            .map_err(to_py)?
            .with_s1_mode(parse::<S1Mode>(s1_mode)?)
            .with_interval(parse::<IntervalMode>(interval)?);
        if let Some(r) = recycled {
            if r.len() != n_recycled {
                return Err(PyValueError::new_err("len(recycled) must equal n_recycled"));
            }
            inner = inner.with_recycled(&r).map_err(to_py)?;
        }
        Ok(PyScenarioConfig { inner })
    }

    #[getter]
    fn n_qubits(&self) -> usize {
        self.inner.n_qubits()
    }

    #[getter]
    fn n_recycled(&self) -> usize {
        self.inner.n_recycled()
    }

    #[getter]
    fn recycled(&self) -> Vec<usize> {
        self.inner.recycled().to_vec()
    }

    #[getter]
    fn lambda1(&self) -> f64 {
        self.inner.lambda1()
    }

    #[getter]
    fn epsilon(&self) -> f64 {
        self.inner.epsilon()
    }

    #[getter]
    fn family(&self) -> String {
        self.inner.family().tag()
    }

    #[getter]
    fn s1_mode(&self) -> String {
        self.inner.s1_mode().to_string()
    }

    #[getter]
    fn interval(&self) -> String {
        self.inner.interval().to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "ScenarioConfig(n_qubits={}, recycled={:?}, lambda1={}, epsilon={}, family={})",
            self.inner.n_qubits(),
            self.inner.recycled(),
            self.inner.lambda1(),
            self.inner.epsilon(),
            self.inner.family().tag()
        )
    }
}

/// Generated sharpness sequence; index `k-1` of each list is round `k`.
#[pyclass(name = "SharpnessSequence", frozen)]
struct PySequence {
    inner: seqgme::SharpnessSequence,
}

#[pymethods]
impl PySequence {
    #[getter]
    fn generator(&self) -> &'static str {
        self.inner.kind.name()
    }

    #[getter]
    fn lambdas(&self) -> Vec<f64> {
        self.inner.lambdas.clone()
    }

    #[getter]
    fn big_lambdas(&self) -> Vec<f64> {
        self.inner.big_lambdas.clone()
    }

    #[getter]
    fn q_values(&self) -> Vec<f64> {
        self.inner.q_values.clone()
    }

    #[getter]
    fn brackets(&self) -> Vec<f64> {
        self.inner.brackets.clone()
    }

    #[getter]
    fn detection_count(&self) -> usize {
        self.inner.detection_count()
    }

    #[getter]
    fn status(&self) -> String {
        self.inner.status.to_string()
    }

    /// Out-of-interval value that ended the run, or None at the round cap.
    #[getter]
    fn terminal_value(&self) -> Option<f64> {
        match self.inner.status {
            SequenceStatus::TerminatedOutOfRange { value, .. } => Some(value),
            SequenceStatus::ReachedCap => None,
        }
    }

    fn __len__(&self) -> usize {
        self.inner.detection_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "SharpnessSequence(generator={}, detections={}, status={})",
            self.inner.kind,
            self.inner.detection_count(),
            self.inner.status
        )
    }
}

/// Runs the generator; `generator` is one of "general", "mixed-family",
/// "closed-n0-1", "closed-n0-n", "closed-n3-n0-2" (default by family).
#[pyfunction]
#[pyo3(signature = (config, generator=None))]
fn generate(config: &PyScenarioConfig, generator: Option<&str>) -> PyResult<PySequence> {
    let kind = match generator {
        Some(g) => parse::<GeneratorKind>(g)?,
        None => GeneratorKind::for_config(&config.inner),
    };
    let inner = sequence::generate(kind, &config.inner).map_err(to_py)?;
    Ok(PySequence { inner })
}

#[pyfunction]
fn detection_count(config: &PyScenarioConfig) -> PyResult<usize> {
    sequence::detection_count(&config.inner).map_err(to_py)
}

/// Analytic `<W_k>` after rounds with sharpness `lambdas[:k-1]`, witness
/// sharpness `lambdas[k-1]`.
#[pyfunction]
fn witness_expectation(config: &PyScenarioConfig, k: usize, lambdas: Vec<f64>) -> PyResult<f64> {
    witness_expectation_analytic(&config.inner, k, &lambdas).map_err(to_py)
}

/// Same quantity from dense simulation (N up to 10).
#[pyfunction]
fn witness_expectation_dense(
    config: &PyScenarioConfig,
    k: usize,
    lambdas: Vec<f64>,
) -> PyResult<f64> {
    if k == 0 || k > lambdas.len() {
        return Err(PyValueError::new_err("need 1 <= k <= len(lambdas)"));
    }
    let states =
        dense::simulate_rounds(&config.inner, &lambdas, k, DenseCap::Default).map_err(to_py)?;
    let w = build_witness_spec(&config.inner, lambdas[k - 1]).map_err(to_py)?;
    dense::expectation(&states[k - 1], &w).map_err(to_py)
}

#[pyfunction]
fn predicted_witness_value(
    config: &PyScenarioConfig,
    k: usize,
    sequence: &PySequence,
) -> PyResult<f64> {
    sequence::predicted_witness_value(&config.inner, k, &sequence.inner).map_err(to_py)
}

/// Dense witness matrix as rows of complex numbers.
#[pyfunction]
fn witness_matrix(config: &PyScenarioConfig, lambda_k: f64) -> PyResult<Vec<Vec<Complex64>>> {
    DenseCap::Default.check(config.inner.n_qubits()).map_err(to_py)?;
    let spec = build_witness_spec(&config.inner, lambda_k).map_err(to_py)?;
    let m = dense::materialize_witness(&spec).map_err(to_py)?;
    Ok(m.row_iter().map(|r| r.iter().copied().collect()).collect())
}

/// Heisenberg-picture attenuation of a Pauli word such as "XXI".
#[pyfunction]
fn propagate(pauli: &str, lambdas: Vec<f64>, recycled: Vec<usize>) -> PyResult<f64> {
    let p = PauliString::parse_any(pauli).map_err(to_py)?;
    transfer::propagate(&p, &lambdas, &recycled).map_err(to_py)
}

/// `(theta, t, count)` for every group of even-weight Z strings.
#[pyfunction]
fn z_term_groups(n_qubits: usize, recycled: Vec<usize>) -> PyResult<Vec<(usize, usize, u64)>> {
    let groups = enumerate_groups(n_qubits, &recycled).map_err(to_py)?;
    Ok(groups.into_iter().map(|g| (g.theta, g.t, g.count)).collect())
}

/// Searches for a first-round sharpness reaching `target` detections.
/// Returns `(found, achieved, ln_lambda1, bisection_steps)`.
#[pyfunction]
fn probe(config: &PyScenarioConfig, target: usize) -> PyResult<(bool, usize, f64, usize)> {
    let o = unboundedness_probe(&config.inner, target).map_err(to_py)?;
    Ok((o.found, o.achieved, o.ln_lambda1, o.bisection_steps))
}

#[pymodule]
fn seqgme_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScenarioConfig>()?;
    m.add_class::<PySequence>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(detection_count, m)?)?;
    m.add_function(wrap_pyfunction!(witness_expectation, m)?)?;
    m.add_function(wrap_pyfunction!(witness_expectation_dense, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_witness_value, m)?)?;
    m.add_function(wrap_pyfunction!(witness_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(propagate, m)?)?;
    m.add_function(wrap_pyfunction!(z_term_groups, m)?)?;
    m.add_function(wrap_pyfunction!(probe, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
