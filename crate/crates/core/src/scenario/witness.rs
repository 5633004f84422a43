use super::{enumerate_z_terms, ScenarioConfig, ZTermGroup};
use crate::error::{check_sharpness, Result};

/// The round-`k` witness written as a Pauli sum:
/// `identity_coeff * I + s1_coeff * S1 + z_coeff * Σ S^q_{2θ,t}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessSpec {
    pub n_qubits: usize,
    pub recycled: Vec<usize>,
    pub lambda_k: f64,
    pub identity_coeff: f64,
    pub s1_coeff: f64,
    pub z_coeff: f64,
    pub z_groups: Vec<ZTermGroup>,
}

/// `2 - 2^-(N-2)`.
pub fn identity_coeff(n_qubits: usize) -> f64 {
    2.0 - z_weight(n_qubits)
}

/// `-λ^N0`.
pub fn s1_coeff(n_recycled: usize, lambda_k: f64) -> f64 {
    -lambda_k.powi(n_recycled as i32)
}

/// `-2^-(N-2)`.
pub fn z_coeff(n_qubits: usize) -> f64 {
    -z_weight(n_qubits)
}

fn z_weight(n_qubits: usize) -> f64 {
    (-(n_qubits as f64 - 2.0)).exp2()
}

pub fn build_witness_spec(config: &ScenarioConfig, lambda_k: f64) -> Result<WitnessSpec> {
    check_sharpness(lambda_k)?;
    let n = config.n_qubits();
    Ok(WitnessSpec {
        n_qubits: n,
        recycled: config.recycled().to_vec(),
        lambda_k,
        identity_coeff: identity_coeff(n),
        s1_coeff: s1_coeff(config.n_recycled(), lambda_k),
        z_coeff: z_coeff(n),
        z_groups: enumerate_z_terms(n, config.recycled())?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients_n3_sharp() {
        let c = ScenarioConfig::new(3, 2, 0.5, 0.01).unwrap();
        let w = build_witness_spec(&c, 1.0).unwrap();
        assert_eq!(w.identity_coeff, 1.5);
        assert_eq!(w.s1_coeff, -1.0);
        assert_eq!(w.z_coeff, -0.5);
    }

    #[test]
    fn trivial_measurement_hides_s1() {
        let c = ScenarioConfig::new(4, 3, 0.5, 0.01).unwrap();
        let w = build_witness_spec(&c, 0.0).unwrap();
        assert_eq!(w.s1_coeff, 0.0);
    }

    #[test]
    fn n4_two_recycled_half_sharp() {
        let c = ScenarioConfig::new(4, 2, 0.5, 0.01).unwrap();
        let w = build_witness_spec(&c, 0.5).unwrap();
        assert_eq!(w.s1_coeff, -0.25);
        assert_eq!(w.identity_coeff, 1.75);
        assert_eq!(w.z_coeff, -0.25);
    }

    #[test]
    fn rejects_out_of_range_sharpness() {
        let c = ScenarioConfig::new(3, 1, 0.5, 0.01).unwrap();
        assert!(build_witness_spec(&c, -0.1).is_err());
        assert!(build_witness_spec(&c, 1.1).is_err());
    }
}
