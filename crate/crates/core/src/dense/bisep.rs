use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{DenseCap, DenseState};
use crate::error::{Error, Result};

/// A split of the qubits `{1..N}` into two nonempty parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    n_qubits: usize,
    part_a: Vec<usize>,
    part_b: Vec<usize>,
}

impl Bipartition {
    pub fn new(n_qubits: usize, part_a: &[usize]) -> Result<Self> {
        let mut a = part_a.to_vec();
        a.sort_unstable();
        a.dedup();
        if a.len() != part_a.len() || a.iter().any(|&q| q == 0 || q > n_qubits) {
            return Err(Error::InvalidBipartition(format!(
                "{part_a:?} is not a set of indices in [1, {n_qubits}]"
            )));
        }
        let b: Vec<usize> = (1..=n_qubits).filter(|q| !a.contains(q)).collect();
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidBipartition(format!(
                "{part_a:?} leaves one side empty"
            )));
        }
        Ok(Bipartition {
            n_qubits,
            part_a: a,
            part_b: b,
        })
    }

    pub fn part_a(&self) -> &[usize] {
        &self.part_a
    }

    pub fn part_b(&self) -> &[usize] {
        &self.part_b
    }

    /// e.g. `1|23`.
    pub fn label(&self) -> String {
        let join = |p: &[usize]| p.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",");
        format!("{}|{}", join(&self.part_a), join(&self.part_b))
    }

    /// Index of basis state `b` restricted to `part`, most significant first.
    fn sub_index(&self, b: usize, part: &[usize]) -> usize {
        part.iter()
            .fold(0, |acc, &q| (acc << 1) | ((b >> (self.n_qubits - q)) & 1))
    }
}

/// Every unordered bipartition of `N` qubits (`2^(N-1) - 1` of them).
pub fn all_bipartitions(n_qubits: usize) -> Vec<Bipartition> {
    (1usize..1 << (n_qubits - 1))
        .map(|mask| {
            // qubit 1 always sits in part B, mask picks part A from qubits 2..N
            let a: Vec<usize> = (2..=n_qubits).filter(|q| mask >> (q - 2) & 1 == 1).collect();
            Bipartition::new(n_qubits, &a).expect("nonempty proper subset")
        })
        .collect()
}

fn gaussian_unit_vector(dim: usize, rng: &mut ChaCha8Rng) -> DVector<Complex64> {
    let v = DVector::from_fn(dim, |_, _| {
        Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    });
    let norm = v.norm();
    v.unscale(norm)
}

fn product_vector(bip: &Bipartition, rng: &mut ChaCha8Rng) -> DVector<Complex64> {
    let psi_a = gaussian_unit_vector(1 << bip.part_a.len(), rng);
    let psi_b = gaussian_unit_vector(1 << bip.part_b.len(), rng);
    DVector::from_fn(1 << bip.n_qubits, |b, _| {
        psi_a[bip.sub_index(b, &bip.part_a)] * psi_b[bip.sub_index(b, &bip.part_b)]
    })
}

/// Pure product state across `bip` with Gaussian-random factors; the same
/// seed always gives the same state.
pub fn random_biseparable_state(
    n_qubits: usize,
    bip: &Bipartition,
    seed: u64,
) -> Result<DenseState> {
    DenseCap::Default.check(n_qubits)?;
    if bip.n_qubits != n_qubits {
        return Err(Error::DimensionMismatch {
            expected: n_qubits,
            found: bip.n_qubits,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(DenseState::from_pure(n_qubits, &product_vector(bip, &mut rng)))
}

/// Random convex mixture of `components` pure product states, each across a
/// uniformly chosen bipartition.
pub fn random_biseparable_mixture(
    n_qubits: usize,
    components: usize,
    seed: u64,
) -> Result<DenseState> {
    DenseCap::Default.check(n_qubits)?;
    if n_qubits < 2 || components == 0 {
        return Err(Error::InvalidBipartition(format!(
            "need N >= 2 and at least one component, got N = {n_qubits}, {components}"
        )));
    }
    let cuts = all_bipartitions(n_qubits);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parts: Vec<(f64, DenseState)> = (0..components)
        .map(|_| {
            let bip = &cuts[rng.random_range(0..cuts.len())];
            let w: f64 = rng.random::<f64>() + 1e-3;
            (w, DenseState::from_pure(n_qubits, &product_vector(bip, &mut rng)))
        })
        .collect();
    DenseState::mixture(&parts)
}

/// Number of singular values above `tol` of the amplitude matrix of `psi`
/// reshaped across `bip`.
pub fn schmidt_rank(psi: &DVector<Complex64>, bip: &Bipartition, tol: f64) -> usize {
    let rows = 1 << bip.part_a.len();
    let cols = 1 << bip.part_b.len();
    let mut m = DMatrix::<Complex64>::zeros(rows, cols);
    for b in 0..psi.len() {
        m[(bip.sub_index(b, &bip.part_a), bip.sub_index(b, &bip.part_b))] = psi[b];
    }
    m.singular_values().iter().filter(|&&s| s > tol).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bipartition_validation() {
        assert!(Bipartition::new(3, &[]).is_err());
        assert!(Bipartition::new(3, &[1, 2, 3]).is_err());
        assert!(Bipartition::new(3, &[4]).is_err());
        assert!(Bipartition::new(3, &[1, 1]).is_err());
        assert_eq!(Bipartition::new(3, &[1]).unwrap().label(), "1|2,3");
    }

    #[test]
    fn bipartition_counts() {
        assert_eq!(all_bipartitions(3).len(), 3);
        assert_eq!(all_bipartitions(4).len(), 7);
    }

    #[test]
    fn product_samples_have_schmidt_rank_one() {
        let bip = Bipartition::new(3, &[1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let psi = product_vector(&bip, &mut rng);
        assert!((psi.norm() - 1.0).abs() < 1e-14);
        assert_eq!(schmidt_rank(&psi, &bip, 1e-10), 1);
        let other = Bipartition::new(3, &[2]).unwrap();
        assert_eq!(schmidt_rank(&psi, &other, 1e-10), 2);
    }

    #[test]
    fn non_contiguous_cut() {
        let bip = Bipartition::new(4, &[2, 4]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let psi = product_vector(&bip, &mut rng);
        assert_eq!(schmidt_rank(&psi, &bip, 1e-10), 1);
        let contiguous = Bipartition::new(4, &[1, 2]).unwrap();
        assert_eq!(schmidt_rank(&psi, &contiguous, 1e-10), 4);
    }

    #[test]
    fn seeded_and_valid() {
        let bip = Bipartition::new(3, &[2, 3]).unwrap();
        let a = random_biseparable_state(3, &bip, 42).unwrap();
        assert_eq!(a, random_biseparable_state(3, &bip, 42).unwrap());
        assert!(a.diagnostics().is_valid());
        let mix = random_biseparable_mixture(4, 2, 9).unwrap();
        assert!(mix.diagnostics().is_valid());
    }
}
