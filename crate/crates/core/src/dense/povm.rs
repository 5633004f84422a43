use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{check_sharpness, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Setting {
    X,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    fn sign(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }
}

impl Setting {
    pub const BOTH: [Setting; 2] = [Setting::X, Setting::Z];

    fn pauli(self) -> Matrix2<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        match self {
            Setting::X => Matrix2::new(zero, one, one, zero),
            Setting::Z => Matrix2::new(one, zero, zero, -one),
        }
    }
}

/// A single-qubit operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalOperator(pub Matrix2<Complex64>);

impl LocalOperator {
    /// `c_id * I + c_pauli * σ`.
    fn combination(c_id: f64, c_pauli: f64, setting: Setting) -> Self {
        LocalOperator(
            Matrix2::identity().scale(c_id) + setting.pauli() * Complex64::new(c_pauli, 0.0),
        )
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        LocalOperator(self.0.adjoint())
    }

    pub fn max_abs_diff(&self, other: &LocalOperator) -> f64 {
        (self.0 - other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Effect `(I ± λσ_x)/2` for the x-setting, `(I ± σ_z)/2` for the z-setting.
///
/// The z-setting is always sharp; `lambda` only enters the x-setting.
pub fn povm_element(setting: Setting, outcome: Outcome, lambda: f64) -> Result<LocalOperator> {
    check_sharpness(lambda)?;
    let strength = match setting {
        Setting::X => lambda,
        Setting::Z => 1.0,
    };
    Ok(LocalOperator::combination(
        0.5,
        0.5 * outcome.sign() * strength,
        setting,
    ))
}

/// Positive square root of [`povm_element`]:
/// `[(√(1+λ) + √(1-λ)) I ± (√(1+λ) - √(1-λ)) σ] / (2√2)`.
pub fn povm_sqrt(setting: Setting, outcome: Outcome, lambda: f64) -> Result<LocalOperator> {
    check_sharpness(lambda)?;
    let strength = match setting {
        Setting::X => lambda,
        Setting::Z => 1.0,
    };
    let up = (1.0 + strength).sqrt();
    let down = (1.0 - strength).sqrt();
    let norm = 2.0 * std::f64::consts::SQRT_2;
    Ok(LocalOperator::combination(
        (up + down) / norm,
        outcome.sign() * (up - down) / norm,
        setting,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn sharp_x_plus_is_projector() {
        let e = povm_element(Setting::X, Outcome::Plus, 1.0).unwrap();
        let expected = LocalOperator(Matrix2::new(c(0.5), c(0.5), c(0.5), c(0.5)));
        assert!(e.max_abs_diff(&expected) < 1e-15);
        assert!(LocalOperator(e.0 * e.0).max_abs_diff(&e) < 1e-15);
        let root = povm_sqrt(Setting::X, Outcome::Plus, 1.0).unwrap();
        assert!(root.max_abs_diff(&e) < 1e-15);
    }

    #[test]
    fn trivial_x_is_half_identity() {
        let e = povm_element(Setting::X, Outcome::Plus, 0.0).unwrap();
        assert!(e.max_abs_diff(&LocalOperator(Matrix2::identity().scale(0.5))) < 1e-16);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        for o in Outcome::BOTH {
            let root = povm_sqrt(Setting::X, o, 0.0).unwrap();
            assert!(root.max_abs_diff(&LocalOperator(Matrix2::identity().scale(r))) < 1e-15);
        }
    }

    #[test]
    fn z_minus_is_one_projector_for_any_lambda() {
        for lambda in [0.0, 0.3, 1.0] {
            let e = povm_element(Setting::Z, Outcome::Minus, lambda).unwrap();
            let expected = LocalOperator(Matrix2::new(c(0.0), c(0.0), c(0.0), c(1.0)));
            assert!(e.max_abs_diff(&expected) < 1e-16);
        }
    }

    #[test]
    fn sqrt_at_point_six() {
        let root = povm_sqrt(Setting::X, Outcome::Plus, 0.6).unwrap();
        let d = 2.0 * 2f64.sqrt();
        let id = (1.6f64.sqrt() + 0.4f64.sqrt()) / d;
        let sx = (1.6f64.sqrt() - 0.4f64.sqrt()) / d;
        let expected = LocalOperator(Matrix2::new(c(id), c(sx), c(sx), c(id)));
        assert!(root.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn completeness_positivity_and_square_roots() {
        for i in 0..=20 {
            let lambda = i as f64 / 20.0;
            for s in Setting::BOTH {
                let plus = povm_element(s, Outcome::Plus, lambda).unwrap();
                let minus = povm_element(s, Outcome::Minus, lambda).unwrap();
                let sum = LocalOperator(plus.0 + minus.0);
                assert!(sum.max_abs_diff(&LocalOperator(Matrix2::identity())) < 1e-15);
                for o in Outcome::BOTH {
                    let e = povm_element(s, o, lambda).unwrap();
                    let eig = e.0.symmetric_eigenvalues();
                    assert!(eig.iter().all(|&v| v >= -1e-15), "{eig:?}");
                    let root = povm_sqrt(s, o, lambda).unwrap();
                    assert!(LocalOperator(root.0 * root.0).max_abs_diff(&e) <= 1e-14);
                }
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(povm_element(Setting::X, Outcome::Plus, 1.01).is_err());
        assert!(povm_sqrt(Setting::Z, Outcome::Minus, -0.5).is_err());
    }
}
