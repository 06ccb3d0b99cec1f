//! Spin-momentum states of a single particle restricted to two momentum
//! eigenstates, and their transformation under a boost.
//!
//! Kets live in the 4-dimensional space `span{|p1>, |p2>} ⊗ span{|up>, |down>}`
//! with the basis ordering documented in [`crate::linalg`]. A boost acts as
//! the block-diagonal unitary `diag(U1, U2)`, where `Ui` is the Wigner
//! rotation for momentum `pi`; the momentum kets are relabeled
//! `|pi> -> |Λpi>` and stay orthonormal, so the `sqrt((Λp)^0 / p^0)`
//! measure factor does not appear.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::kinematics::{
    dot, wigner_rotation, BoostParameters, ParticleKinematics, WignerRotation,
};
use crate::linalg::{c, make_density, tensor_product, ComplexMatrix};

const ANGLE_SLACK: f64 = 1e-12;

/// Bloch angles of the spin direction `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinOrientation {
    /// Polar angle in `[0, pi]`.
    pub xi: f64,
    /// Azimuth in `[0, 2 pi)`.
    pub tau: f64,
}

impl SpinOrientation {
    pub fn new(xi: f64, tau: f64) -> Result<Self> {
        if !(-ANGLE_SLACK..=PI + ANGLE_SLACK).contains(&xi) {
            return Err(domain("xi", xi, "[0, pi]"));
        }
        if !tau.is_finite() {
            return Err(domain("tau", tau, "finite"));
        }
        Ok(Self {
            xi: xi.clamp(0.0, PI),
            tau: tau.rem_euclid(2.0 * PI),
        })
    }

    /// Spin in the yz-plane (`tau = pi/2`), the default geometry.
    pub fn in_yz_plane(xi: f64) -> Result<Self> {
        Self::new(xi, FRAC_PI_2)
    }
}

/// `(|n>, |-n>)` for the given orientation.
pub fn bloch_spinors(s: &SpinOrientation) -> (ComplexMatrix, ComplexMatrix) {
    let (sh, ch) = (s.xi / 2.0).sin_cos();
    let phase = Complex64::from_polar(1.0, s.tau);
    let n = ComplexMatrix::ket(&[c(ch, 0.0), phase * sh]);
    let minus_n = ComplexMatrix::ket(&[c(sh, 0.0), -phase * ch]);
    (n, minus_n)
}

pub fn momentum_ket(index: usize) -> ComplexMatrix {
    let mut k = ComplexMatrix::zeros(2, 1);
    k[(index, 0)] = c(1.0, 0.0);
    k
}

/// The four maximally entangled spin-momentum states
///
/// ```text
/// psi1 = (|p1>|n> + |p2>|-n>) / sqrt2     psi3 = (|p2>|n> + |p1>|-n>) / sqrt2
/// psi2 = (|p1>|n> - |p2>|-n>) / sqrt2     psi4 = (|p2>|n> - |p1>|-n>) / sqrt2
/// ```
pub fn bell_states(s: &SpinOrientation) -> [ComplexMatrix; 4] {
    let (n, m) = bloch_spinors(s);
    let (p1, p2) = (momentum_ket(0), momentum_ket(1));
    let p1n = tensor_product(&p1, &n);
    let p2m = tensor_product(&p2, &m);
    let p2n = tensor_product(&p2, &n);
    let p1m = tensor_product(&p1, &m);
    let h = FRAC_1_SQRT_2;
    [
        (&p1n + &p2m).scale_real(h),
        (&p1n - &p2m).scale_real(h),
        (&p2n + &p1m).scale_real(h),
        (&p2n - &p1m).scale_real(h),
    ]
}

/// Weights of the four Bell states in a Bell-diagonal mixture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellMixture {
    p: [f64; 4],
}

impl BellMixture {
    pub fn new(p: [f64; 4]) -> Result<Self> {
        if let Some(&bad) = p.iter().find(|&&x| x.is_nan() || x < 0.0 || !x.is_finite()) {
            return Err(domain("mixture weight", bad, "[0, 1]"));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(domain("sum of mixture weights", sum, "1 +- 1e-12"));
        }
        Ok(Self { p })
    }

    pub fn uniform() -> Self {
        Self { p: [0.25; 4] }
    }

    pub fn weights(&self) -> [f64; 4] {
        self.p
    }

    /// Weights sorted in decreasing order.
    pub fn sorted_desc(&self) -> [f64; 4] {
        let mut w = self.p;
        w.sort_by(|a, b| b.total_cmp(a));
        w
    }
}

/// `sum_i P_i |psi_i><psi_i|`.
pub fn bd_density(mix: &BellMixture, s: &SpinOrientation) -> ComplexMatrix {
    make_density(&mix.weights(), &bell_states(s)).expect("Bell states are orthonormal")
}

/// Two momentum eigenstates. The closed-form results assume both lie in the
/// yz-plane and the boost is along x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoMomentumGeometry {
    pub k1: ParticleKinematics,
    pub k2: ParticleKinematics,
}

/// Wigner angles of the two momenta under one boost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerAngles {
    pub omega1: f64,
    pub omega2: f64,
    /// `omega2` measured about the rotation axis of `p1`. `None` when the two
    /// axes are not collinear.
    pub omega2_signed: Option<f64>,
}

impl WignerAngles {
    pub fn sum(&self) -> f64 {
        self.omega1 + self.omega2
    }

    /// Angle of the relative spin rotation `U1^dagger U2`, i.e. `omega1 - omega2`
    /// about the common axis. For antiparallel momenta this is `omega1 + omega2`.
    pub fn relative(&self) -> Option<f64> {
        self.omega2_signed.map(|o2| self.omega1 - o2)
    }
}

impl TwoMomentumGeometry {
    pub fn new(k1: ParticleKinematics, k2: ParticleKinematics) -> Self {
        Self { k1, k2 }
    }

    /// Equal energies, `p2` antiparallel to `p1` in the yz-plane.
    pub fn antiparallel(energy_ratio: f64, theta: f64) -> Result<Self> {
        Ok(Self {
            k1: ParticleKinematics::in_yz_plane(energy_ratio, theta)?,
            k2: ParticleKinematics::in_yz_plane(energy_ratio, theta + PI)?,
        })
    }

    /// Both momenta along the same direction with different energies.
    pub fn parallel(energy_ratio1: f64, energy_ratio2: f64, theta: f64) -> Result<Self> {
        Ok(Self {
            k1: ParticleKinematics::in_yz_plane(energy_ratio1, theta)?,
            k2: ParticleKinematics::in_yz_plane(energy_ratio2, theta)?,
        })
    }

    /// Replaces the second momentum with `(E2/m, theta2)` in the yz-plane.
    pub fn with_second(self, energy_ratio: f64, theta: f64) -> Result<Self> {
        Ok(Self {
            k2: ParticleKinematics::in_yz_plane(energy_ratio, theta)?,
            ..self
        })
    }

    pub fn in_yz_plane(&self) -> bool {
        self.k1.p_hat[0].abs() <= 1e-12 && self.k2.p_hat[0].abs() <= 1e-12
    }

    pub fn wigner_rotations(&self, boost: &BoostParameters) -> (WignerRotation, WignerRotation) {
        (
            wigner_rotation(boost, &self.k1),
            wigner_rotation(boost, &self.k2),
        )
    }

    pub fn wigner_angles(&self, boost: &BoostParameters) -> WignerAngles {
        let (w1, w2) = self.wigner_rotations(boost);
        let aligned = dot(w1.axis, w2.axis).abs() >= 1.0 - 1e-12;
        let trivial = w1.sin_half == 0.0 || w2.sin_half == 0.0;
        let omega2_signed = if trivial {
            Some(w2.omega)
        } else if aligned {
            Some(w2.signed_angle_about(w1.axis))
        } else {
            None
        };
        WignerAngles {
            omega1: w1.omega,
            omega2: w2.omega,
            omega2_signed,
        }
    }

    /// `diag(U1, U2)` acting on the global basis.
    pub fn boost_operator(&self, boost: &BoostParameters) -> ComplexMatrix {
        let (w1, w2) = self.wigner_rotations(boost);
        block_diag(&w1.unitary, &w2.unitary)
    }
}

pub(crate) fn block_diag(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = a[(i, j)];
            out[(2 + i, 2 + j)] = b[(i, j)];
        }
    }
    out
}

/// Angle between spin and the first momentum, `xi - theta1`.
pub fn spin_momentum_angle(s: &SpinOrientation, geom: &TwoMomentumGeometry) -> f64 {
    s.xi - geom.k1.theta
}

fn check_ket4(psi: &ComplexMatrix) -> Result<()> {
    if psi.rows() != 4 || psi.cols() != 1 {
        return Err(Error::Dimension {
            expected: "4x1 ket".into(),
            got: format!("{}x{}", psi.rows(), psi.cols()),
        });
    }
    Ok(())
}

pub fn boost_state(
    psi: &ComplexMatrix,
    boost: &BoostParameters,
    geom: &TwoMomentumGeometry,
) -> Result<ComplexMatrix> {
    check_ket4(psi)?;
    Ok(&geom.boost_operator(boost) * psi)
}

/// `U rho U^dagger`.
pub fn boost_density(
    rho: &ComplexMatrix,
    boost: &BoostParameters,
    geom: &TwoMomentumGeometry,
) -> Result<ComplexMatrix> {
    if rho.rows() != 4 || rho.cols() != 4 {
        return Err(Error::Dimension {
            expected: "4x4".into(),
            got: format!("{}x{}", rho.rows(), rho.cols()),
        });
    }
    let u = geom.boost_operator(boost);
    Ok((&(&u * rho) * &u.dagger()).hermitian_part())
}

/// `sqrt(l1) |p1>|n> + sqrt(l2) |p2>|-n>` (Schmidt form), with `l1 + l2 = 1`.
pub fn schmidt_pure_state(l1: f64, l2: f64, s: &SpinOrientation) -> Result<ComplexMatrix> {
    for (name, v) in [("lambda1", l1), ("lambda2", l2)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(domain(name, v, "[0, 1]"));
        }
    }
    if (l1 + l2 - 1.0).abs() > 1e-12 {
        return Err(domain("lambda1 + lambda2", l1 + l2, "1 +- 1e-12"));
    }
    let (n, m) = bloch_spinors(s);
    let a = tensor_product(&momentum_ket(0), &n).scale_real(l1.sqrt());
    let b = tensor_product(&momentum_ket(1), &m).scale_real(l2.sqrt());
    Ok(&a + &b)
}

/// How to read the coefficient of the `|Λp2>` spinor's upper component in the
/// closed-form boosted `psi1`/`psi2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transcription {
    /// `sin(omega1/2)` as printed in the published expression.
    AsPrinted,
    /// `sin(omega2/2)`, the value the transform law produces.
    Symmetric,
}

/// Closed-form boosted Bell states for `tau = pi/2`, a boost along x and
/// antiparallel momenta at angle `theta`, with `zeta = xi - 2 theta`.
///
/// Used to cross-check [`boost_state`]; with [`Transcription::AsPrinted`]
/// the `|Λp2>` components of `psi1`/`psi2` differ whenever `omega1 != omega2`.
pub fn closed_form_boosted_bell(
    xi: f64,
    theta: f64,
    omega1: f64,
    omega2: f64,
    transcription: Transcription,
) -> [ComplexMatrix; 4] {
    let zeta = xi - 2.0 * theta;
    let (sx, cx) = (xi / 2.0).sin_cos();
    let (sz, cz) = (zeta / 2.0).sin_cos();
    let (s1, c1) = (omega1 / 2.0).sin_cos();
    let (s2, c2) = (omega2 / 2.0).sin_cos();
    let s_typo = match transcription {
        Transcription::AsPrinted => s1,
        Transcription::Symmetric => s2,
    };
    let h = FRAC_1_SQRT_2;

    // spinors attached to |Λp1> and |Λp2> for psi1/psi2
    let a1 = [c(cx * c1, -s1 * sz), c(s1 * cz, sx * c1)];
    let a2 = [c(sx * c2, -s_typo * cz), c(-s2 * sz, -cx * c2)];
    // spinors attached to |Λp2> and |Λp1> for psi3/psi4
    let b2 = [c(cx * c2, s2 * sz), c(-s2 * cz, sx * c2)];
    let b1 = [c(sx * c1, s1 * cz), c(s1 * sz, -cx * c1)];

    let assemble = |p1: [Complex64; 2], p2: [Complex64; 2], sign: f64| {
        ComplexMatrix::ket(&[p1[0] * h, p1[1] * h, p2[0] * (sign * h), p2[1] * (sign * h)])
    };
    let assemble_rev = |p2: [Complex64; 2], p1: [Complex64; 2], sign: f64| {
        ComplexMatrix::ket(&[p1[0] * (sign * h), p1[1] * (sign * h), p2[0] * h, p2[1] * h])
    };
    [
        assemble(a1, a2, 1.0),
        assemble(a1, a2, -1.0),
        assemble_rev(b2, b1, 1.0),
        assemble_rev(b2, b1, -1.0),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gram_defect(kets: &[ComplexMatrix]) -> f64 {
        let mut worst = 0.0_f64;
        for (i, a) in kets.iter().enumerate() {
            for (j, b) in kets.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.inner(b) - c(expect, 0.0)).norm());
            }
        }
        worst
    }

    #[test]
    fn spinors_at_north_pole_and_equator() {
        let (n, _) = bloch_spinors(&SpinOrientation::new(0.0, 1.3).unwrap());
        assert!(n.max_abs_diff(&ComplexMatrix::ket(&[c(1.0, 0.0), c(0.0, 0.0)])) < 1e-16);
        let (n, _) = bloch_spinors(&SpinOrientation::new(FRAC_PI_2, FRAC_PI_2).unwrap());
        let expect = ComplexMatrix::ket(&[c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)]);
        assert!(n.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn spinors_orthonormal() {
        for k in 0..50 {
            let s = SpinOrientation::new(k as f64 * PI / 49.0, k as f64 * 0.37).unwrap();
            let (n, m) = bloch_spinors(&s);
            assert!(n.inner(&m).norm() < 1e-14);
            assert!((n.frobenius_norm() - 1.0).abs() < 1e-15);
            assert!((m.frobenius_norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn orientation_validation() {
        assert!(SpinOrientation::new(-0.1, 0.0).is_err());
        assert!(SpinOrientation::new(3.5, 0.0).is_err());
        let s = SpinOrientation::new(1.0, -FRAC_PI_2).unwrap();
        assert!((s.tau - 1.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn bell_set_at_north_pole() {
        let s = SpinOrientation::in_yz_plane(0.0).unwrap();
        let b = bell_states(&s);
        let h = FRAC_1_SQRT_2;
        // |-n> = (0, -i) at xi = 0, tau = pi/2
        let psi1 = ComplexMatrix::ket(&[c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -h)]);
        assert!(b[0].max_abs_diff(&psi1) < 1e-15);
        assert!(gram_defect(&b) < 1e-14);
    }

    #[test]
    fn bell_gram_matrix_random_orientations() {
        for k in 0..50 {
            let s = SpinOrientation::new((k as f64 * 0.61) % PI, k as f64 * 1.7).unwrap();
            assert!(gram_defect(&bell_states(&s)) < 1e-14);
        }
    }

    #[test]
    fn mixture_validation() {
        assert!(BellMixture::new([0.5, 0.5, 0.1, -0.1]).is_err());
        assert!(BellMixture::new([0.5, 0.5, 0.1, 0.0]).is_err());
        assert!(BellMixture::new([f64::NAN, 0.5, 0.5, 0.0]).is_err());
        let m = BellMixture::new([0.1, 0.7, 0.0, 0.2]).unwrap();
        assert_eq!(m.sorted_desc(), [0.7, 0.2, 0.1, 0.0]);
    }

    #[test]
    fn bd_density_special_mixtures() {
        let s = SpinOrientation::new(0.8, 2.0).unwrap();
        let pure = bd_density(&BellMixture::new([1.0, 0.0, 0.0, 0.0]).unwrap(), &s);
        assert!(pure.max_abs_diff(&bell_states(&s)[0].projector()) < 1e-15);
        let mixed = bd_density(&BellMixture::uniform(), &s);
        assert!(mixed.max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.25)) < 1e-15);
    }

    #[test]
    fn bd_density_spectrum_is_the_weights() {
        let s = SpinOrientation::new(1.1, 0.4).unwrap();
        let rho = bd_density(&BellMixture::new([0.7, 0.1, 0.1, 0.1]).unwrap(), &s);
        let eig = crate::linalg::hermitian_eig(&rho).unwrap();
        for (got, want) in eig.values.iter().zip([0.7, 0.1, 0.1, 0.1]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_boost_is_identity() {
        let geom = TwoMomentumGeometry::antiparallel(3.0, 0.4).unwrap();
        let boost = BoostParameters::along_x(0.0).unwrap();
        let s = SpinOrientation::new(0.9, 0.2).unwrap();
        let rho = bd_density(&BellMixture::new([0.4, 0.3, 0.2, 0.1]).unwrap(), &s);
        assert_eq!(boost_density(&rho, &boost, &geom).unwrap(), rho);
        let psi = &bell_states(&s)[2];
        assert_eq!(&boost_state(psi, &boost, &geom).unwrap(), psi);
    }

    #[test]
    fn boost_rejects_wrong_shapes() {
        let geom = TwoMomentumGeometry::antiparallel(3.0, 0.4).unwrap();
        let boost = BoostParameters::along_x(0.5).unwrap();
        assert!(boost_state(&ComplexMatrix::zeros(2, 1), &boost, &geom).is_err());
        assert!(boost_density(&ComplexMatrix::identity(2), &boost, &geom).is_err());
    }

    #[test]
    fn antiparallel_axes_give_relative_angle_sum() {
        let geom = TwoMomentumGeometry::antiparallel(4.0, 0.3).unwrap();
        let boost = BoostParameters::along_x(0.7).unwrap();
        let w = geom.wigner_angles(&boost);
        assert!((w.omega1 - w.omega2).abs() < 1e-15);
        assert!((w.relative().unwrap() - w.sum()).abs() < 1e-15);
        let par = TwoMomentumGeometry::parallel(4.0, 2.0, 0.3).unwrap();
        let w = par.wigner_angles(&boost);
        assert!((w.relative().unwrap() - (w.omega1 - w.omega2)).abs() < 1e-15);
        let skew = geom.with_second(2.0, 1.0).unwrap();
        assert!(skew.wigner_angles(&boost).relative().is_none());
    }

    #[test]
    fn schmidt_state_validation_and_norm() {
        assert!(schmidt_pure_state(0.7, 0.4, &SpinOrientation::new(0.0, 0.0).unwrap()).is_err());
        assert!(schmidt_pure_state(-0.1, 1.1, &SpinOrientation::new(0.0, 0.0).unwrap()).is_err());
        for k in 0..40 {
            let l1 = k as f64 / 39.0;
            let s = SpinOrientation::new((k as f64 * 0.3) % PI, k as f64).unwrap();
            let psi = schmidt_pure_state(l1, 1.0 - l1, &s).unwrap();
            assert!((psi.frobenius_norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn closed_form_boosted_bell_symmetric_matches_transform() {
        for k in 0..40 {
            let xi = (k as f64 * 0.41) % PI;
            let theta = k as f64 * 0.23;
            let beta = (k as f64 * 0.137) % 0.99;
            let r = 1.0 + k as f64 * 0.7;
            let geom = TwoMomentumGeometry::antiparallel(r, theta)
                .unwrap()
                .with_second(r * 1.5, theta + PI)
                .unwrap();
            let boost = BoostParameters::along_x(beta).unwrap();
            let s = SpinOrientation::in_yz_plane(xi).unwrap();
            let w = geom.wigner_angles(&boost);
            let closed =
                closed_form_boosted_bell(xi, theta, w.omega1, w.omega2, Transcription::Symmetric);
            for (psi, want) in bell_states(&s).iter().zip(&closed) {
                let got = boost_state(psi, &boost, &geom).unwrap();
                assert!(got.max_abs_diff(want) < 1e-12, "k={k}");
            }
        }
    }

    #[test]
    fn printed_transcription_differs_only_in_one_slot() {
        let (xi, theta) = (0.7, 0.2);
        let geom = TwoMomentumGeometry::antiparallel(2.0, theta)
            .unwrap()
            .with_second(9.0, theta + PI)
            .unwrap();
        let boost = BoostParameters::along_x(0.8).unwrap();
        let w = geom.wigner_angles(&boost);
        let s = SpinOrientation::in_yz_plane(xi).unwrap();
        let printed =
            closed_form_boosted_bell(xi, theta, w.omega1, w.omega2, Transcription::AsPrinted);
        let psi1 = boost_state(&bell_states(&s)[0], &boost, &geom).unwrap();
        let diff = &psi1 - &printed[0];
        let zeta = xi - 2.0 * theta;
        let expect = ((w.omega1 / 2.0).sin() - (w.omega2 / 2.0).sin()).abs()
            * (zeta / 2.0).cos().abs()
            * FRAC_1_SQRT_2;
        assert!((diff[(2, 0)].norm() - expect).abs() < 1e-14);
        assert!(expect > 1e-3);
        for row in [0, 1, 3] {
            assert!(diff[(row, 0)].norm() < 1e-14);
        }
    }
}
