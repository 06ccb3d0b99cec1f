//! Shared fixtures for the criterion benches.

use spinmom_core::states::{bd_density, BellMixture, SpinOrientation, TwoMomentumGeometry};
use spinmom_core::{BoostParameters, ComplexMatrix};

/// A generic full-rank Bell-diagonal density matrix.
pub fn sample_density() -> ComplexMatrix {
    let mix = BellMixture::new([0.55, 0.2, 0.15, 0.1]).expect("valid weights");
    let spin = SpinOrientation::new(0.9, 1.3).expect("valid angles");
    bd_density(&mix, &spin)
}

pub fn sample_geometry() -> (BoostParameters, TwoMomentumGeometry) {
    (
        BoostParameters::along_x(0.8).expect("valid beta"),
        TwoMomentumGeometry::antiparallel(3.0, 0.4).expect("valid energy ratio"),
    )
}
