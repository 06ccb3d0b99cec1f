//! The boost seen as a momentum-controlled rotation of the spin.
//!
//! When spin and momentum are both along z and the boost is along x, each
//! momentum branch rotates its spin by its own Wigner angle:
//!
//! ```text
//! |pi>|up>   ->  cos(Wi/2) |Λpi>|up> + sin(Wi/2) |Λpi>|down>
//! |pi>|down> -> -sin(Wi/2) |Λpi>|up> + cos(Wi/2) |Λpi>|down>
//! ```
//!
//! [`ControlledGate::matrix`] is the table of these images: row `k` lists the
//! coefficients of the image of basis ket `k`. The operator acting on column
//! amplitude vectors is its transpose, [`ControlledGate::operator`].

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::entanglement::pure_state_concurrence;
use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix};
use crate::states::block_diag;

#[derive(Debug, Clone, PartialEq)]
pub struct ControlledGate {
    pub omega1: f64,
    pub omega2: f64,
    pub matrix: ComplexMatrix,
}

fn rotation_block(omega: f64) -> ComplexMatrix {
    let (s, co) = (omega / 2.0).sin_cos();
    ComplexMatrix::from_real_rows(&[[co, s], [-s, co]])
}

impl ControlledGate {
    /// The operator on column amplitude vectors (`matrix` transposed).
    pub fn operator(&self) -> ComplexMatrix {
        self.matrix.transpose()
    }

    pub fn apply(&self, psi: &ComplexMatrix) -> Result<ComplexMatrix> {
        if psi.rows() != 4 || psi.cols() != 1 {
            return Err(Error::Dimension {
                expected: "4x1 ket".into(),
                got: format!("{}x{}", psi.rows(), psi.cols()),
            });
        }
        Ok(&self.operator() * psi)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &ControlledGate) -> ControlledGate {
        ControlledGate {
            omega1: self.omega1 + other.omega1,
            omega2: self.omega2 + other.omega2,
            matrix: &self.matrix * &other.matrix,
        }
    }
}

/// Block-diagonal gate with rotation blocks `[[cos W/2, sin W/2], [-sin W/2, cos W/2]]`.
pub fn lorentz_gate(omega1: f64, omega2: f64) -> ControlledGate {
    ControlledGate {
        omega1,
        omega2,
        matrix: block_diag(&rotation_block(omega1), &rotation_block(omega2)),
    }
}

/// The `omega1 -> 0`, `omega1 + omega2 = pi` limit: identity on the `p1`
/// branch and a spin flip with a relative sign on the `p2` branch. It is not
/// the textbook CNOT; its square is `diag(1, 1, -1, -1)`.
pub fn cnot_limit_gate() -> ControlledGate {
    ControlledGate {
        omega1: 0.0,
        omega2: PI,
        matrix: ComplexMatrix::from_real_rows(&[
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0, 0.0],
        ]),
    }
}

#[derive(Debug, Clone)]
pub struct GateDemo {
    pub input: ComplexMatrix,
    pub output: ComplexMatrix,
    pub concurrence_before: f64,
    pub concurrence_after: f64,
}

pub fn run_demo(gate: &ControlledGate, input: &ComplexMatrix) -> Result<GateDemo> {
    let norm = input.frobenius_norm();
    if norm == 0.0 {
        return Err(Error::Dimension {
            expected: "non-zero ket".into(),
            got: "zero vector".into(),
        });
    }
    let input = input.scale_real(1.0 / norm);
    let output = gate.apply(&input)?;
    Ok(GateDemo {
        concurrence_before: pure_state_concurrence(&input)?,
        concurrence_after: pure_state_concurrence(&output)?,
        input,
        output,
    })
}

/// `(|p1> + |p2>) |up> / sqrt2`.
pub fn product_superposition() -> ComplexMatrix {
    let h = FRAC_1_SQRT_2;
    ComplexMatrix::ket(&[c(h, 0.0), c(0.0, 0.0), c(h, 0.0), c(0.0, 0.0)])
}

/// `(|p1>|up> + |p2>|down>) / sqrt2`.
pub fn bell_up_down() -> ComplexMatrix {
    let h = FRAC_1_SQRT_2;
    ComplexMatrix::ket(&[c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)])
}

/// Gate applied to [`product_superposition`]; the CNOT limit maps it to
/// `(|Λp1>|up> + |Λp2>|down>) / sqrt2`.
pub fn demo_entangle(gate: &ControlledGate) -> GateDemo {
    run_demo(gate, &product_superposition()).expect("fixed 4x1 input")
}

/// Gate applied to [`bell_up_down`]; the CNOT limit maps it to
/// `(|Λp1> - |Λp2>) |up> / sqrt2`.
pub fn demo_disentangle(gate: &ControlledGate) -> GateDemo {
    run_demo(gate, &bell_up_down()).expect("fixed 4x1 input")
}
