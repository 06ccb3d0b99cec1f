//! Spin-momentum entanglement of a single spin-1/2 particle seen from a
//! boosted frame.
//!
//! The particle is restricted to two momentum eigenstates, giving a
//! two-qubit system (momentum ⊗ spin). A boost rotates the spin of each
//! momentum branch by its own Wigner angle, which changes the spin-momentum
//! entanglement. The crate builds the states, applies the boost and measures
//! entanglement both numerically and through closed forms.

pub mod entanglement;
pub mod error;
pub mod gates;
pub mod kinematics;
pub mod linalg;
pub mod states;
pub mod sweep;
pub mod verify;

pub use entanglement::{ConcurrenceBreakdown, ConcurrenceMethod};
pub use error::{Error, Result};
pub use gates::ControlledGate;
pub use kinematics::{BoostParameters, ParticleKinematics, WignerRotation};
pub use linalg::ComplexMatrix;
pub use num_complex::Complex64;
pub use states::{BellMixture, SpinOrientation, TwoMomentumGeometry};
pub use sweep::{BetaRange, SweepConfig, SweepRow};
pub use verify::{SuiteReport, VerifyReport};
