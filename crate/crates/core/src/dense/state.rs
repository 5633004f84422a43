use nalgebra::DVector;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{DenseCap, DenseOperator, HERMITIAN_TOL, PSD_FLOOR};
use crate::error::{Error, Result};
use crate::scenario::StateFamily;

/// An `N`-qubit density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n_qubits: usize,
    rho: DenseOperator,
}

/// Measured deviations from the density-matrix invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDiagnostics {
    pub hermiticity_error: f64,
    pub trace_error: f64,
    pub min_eigenvalue: f64,
}

impl StateDiagnostics {
    pub fn is_valid(&self) -> bool {
        self.hermiticity_error <= HERMITIAN_TOL
            && self.trace_error <= HERMITIAN_TOL
            && self.min_eigenvalue >= PSD_FLOOR
    }
}

impl DenseState {
    /// Wraps a matrix without validating it.
    pub(crate) fn from_matrix_unchecked(n_qubits: usize, rho: DenseOperator) -> Self {
        debug_assert_eq!(rho.nrows(), 1 << n_qubits);
        DenseState { n_qubits, rho }
    }

    /// Wraps a matrix after checking shape, Hermiticity, trace and positivity.
    pub fn from_matrix(n_qubits: usize, rho: DenseOperator) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if rho.nrows() != dim || rho.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: n_qubits,
                found: rho.nrows().trailing_zeros() as usize,
            });
        }
        let state = DenseState { n_qubits, rho };
        let diag = state.diagnostics();
        if !diag.is_valid() {
            return Err(Error::InvalidConfig(format!(
                "matrix is not a density matrix: {diag:?}"
            )));
        }
        Ok(state)
    }

    /// Pure state `|ψ><ψ|` from a normalized vector.
    pub fn from_pure(n_qubits: usize, psi: &DVector<Complex64>) -> Self {
        Self::from_matrix_unchecked(n_qubits, psi * psi.adjoint())
    }

    /// Random full-rank state `G G† / Tr(G G†)` with complex Gaussian `G`.
    pub fn random(n_qubits: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = 1usize << n_qubits;
        let g = DenseOperator::from_fn(dim, dim, |_, _| {
            Complex64::new(
                StandardNormal.sample(&mut rng),
                StandardNormal.sample(&mut rng),
            )
        });
        let rho = &g * g.adjoint();
        let tr = rho.trace();
        Self::from_matrix_unchecked(n_qubits, rho.unscale(tr.re))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn matrix(&self) -> &DenseOperator {
        &self.rho
    }

    pub fn into_matrix(self) -> DenseOperator {
        self.rho
    }

    pub fn diagnostics(&self) -> StateDiagnostics {
        let hermiticity_error = (&self.rho - self.rho.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let trace_error = (self.rho.trace() - Complex64::new(1.0, 0.0)).norm();
        let herm = (&self.rho + self.rho.adjoint()).unscale(2.0);
        let min_eigenvalue = herm
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        StateDiagnostics {
            hermiticity_error,
            trace_error,
            min_eigenvalue,
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &DenseState) -> f64 {
        (&self.rho - &other.rho)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Convex combination `Σ w_i ρ_i`; weights are normalized.
    pub fn mixture(parts: &[(f64, DenseState)]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidConfig("empty mixture".into()))?;
        let n = first.1.n_qubits;
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        let mut rho = DenseOperator::zeros(first.1.dim(), first.1.dim());
        for (w, s) in parts {
            if s.n_qubits != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.n_qubits,
                });
            }
            rho += s.rho.scale(*w / total);
        }
        Ok(Self::from_matrix_unchecked(n, rho))
    }
}

pub fn build_initial_state(family: StateFamily, n_qubits: usize) -> Result<DenseState> {
    build_initial_state_capped(family, n_qubits, DenseCap::Default)
}

/// The initial state `ρ_1` of `family` on `n_qubits` qubits.
pub fn build_initial_state_capped(
    family: StateFamily,
    n_qubits: usize,
    cap: DenseCap,
) -> Result<DenseState> {
    family.validate()?;
    if n_qubits < 3 {
        return Err(Error::InvalidConfig(format!(
            "N = {n_qubits}: at least 3 qubits are required"
        )));
    }
    cap.check(n_qubits)?;
    let dim = 1usize << n_qubits;
    let last = dim - 1;
    let (p1, p2, a) = match family {
        StateFamily::Ghz => (1.0, 0.0, 0.5),
        StateFamily::GeneralizedGhz { a } => (1.0, 0.0, a),
        StateFamily::MixedGghz { p1, p2, a } => (p1, p2, a),
    };
    let coherence = p1 * (a * (1.0 - a)).sqrt();
    let mut rho = DenseOperator::zeros(dim, dim);
    rho[(0, 0)] = Complex64::new(p1 * a + p2, 0.0);
    rho[(last, last)] = Complex64::new(p1 * (1.0 - a) + (1.0 - p1 - p2), 0.0);
    rho[(0, last)] = Complex64::new(coherence, 0.0);
    rho[(last, 0)] = Complex64::new(coherence, 0.0);
    Ok(DenseState::from_matrix_unchecked(n_qubits, rho))
}
