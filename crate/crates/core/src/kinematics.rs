//! Rapidities and the spin-1/2 Wigner rotation induced by a pure boost.
//!
//! For a boost of rapidity `alpha` along `e` acting on a particle of rapidity
//! `delta` moving along `p`, the Wigner rotation has
//!
//! ```text
//! cos(W/2)   = (ch(a/2) ch(d/2) + sh(a/2) sh(d/2) e.p) / N
//! sin(W/2) n =  sh(a/2) sh(d/2) (e x p)             / N
//! N^2        = 1/2 + 1/2 ch(a) ch(d) + 1/2 sh(a) sh(d) e.p
//! ```
//!
//! Dividing numerator and denominator by `ch(a/2) ch(d/2)` leaves only
//! `t = tanh(a/2) tanh(d/2) < 1`, which is how it is evaluated here: nothing
//! overflows as `beta -> 1` or `E/m -> inf`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::linalg::{c, ComplexMatrix};

pub type Vec3 = [f64; 3];

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn normalize(a: Vec3) -> Option<Vec3> {
    let n = norm(a);
    (n > 0.0 && n.is_finite()).then(|| [a[0] / n, a[1] / n, a[2] / n])
}

/// Rapidity `alpha` with `cosh(alpha) = 1 / sqrt(1 - beta^2)`, for `0 <= beta < 1`.
pub fn rapidity_from_beta(beta: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&beta) {
        return Err(domain("beta", beta, "[0, 1)"));
    }
    Ok(beta.atanh())
}

/// Rapidity `delta` with `cosh(delta) = E/m`, for `E/m >= 1`.
pub fn rapidity_from_energy_ratio(ratio: f64) -> Result<f64> {
    if ratio.is_nan() || ratio < 1.0 || !ratio.is_finite() {
        return Err(domain("energy ratio", ratio, "[1, inf)"));
    }
    // acosh(1 + x) = ln(1 + x + sqrt(x (2 + x))), accurate as x -> 0
    let x = ratio - 1.0;
    Ok((x + (x * (2.0 + x)).sqrt()).ln_1p())
}

/// Observer boost: speed, rapidity and unit direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostParameters {
    pub beta: f64,
    pub alpha: f64,
    pub e_hat: Vec3,
}

impl BoostParameters {
    pub fn new(beta: f64, direction: Vec3) -> Result<Self> {
        let alpha = rapidity_from_beta(beta)?;
        let e_hat = normalize(direction).ok_or_else(|| domain("|boost direction|", 0.0, "> 0"))?;
        Ok(Self { beta, alpha, e_hat })
    }

    /// Boost along +x.
    pub fn along_x(beta: f64) -> Result<Self> {
        Self::new(beta, [1.0, 0.0, 0.0])
    }

    /// `tanh(alpha / 2)`, computed without going through `alpha`.
    pub fn tanh_half(&self) -> f64 {
        // tanh(atanh(b)/2) = b / (1 + sqrt(1 - b^2))
        self.beta / (1.0 + ((1.0 - self.beta) * (1.0 + self.beta)).sqrt())
    }

    pub fn gamma(&self) -> f64 {
        1.0 / ((1.0 - self.beta) * (1.0 + self.beta)).sqrt()
    }
}

/// A single momentum eigenstate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleKinematics {
    pub energy_ratio: f64,
    pub delta: f64,
    pub p_hat: Vec3,
    /// Polar angle of `p_hat` in the yz-plane, measured from +z towards +y.
    pub theta: f64,
}

impl ParticleKinematics {
    pub fn new(energy_ratio: f64, direction: Vec3) -> Result<Self> {
        let delta = rapidity_from_energy_ratio(energy_ratio)?;
        let p_hat =
            normalize(direction).ok_or_else(|| domain("|momentum direction|", 0.0, "> 0"))?;
        Ok(Self {
            energy_ratio,
            delta,
            p_hat,
            theta: p_hat[1].atan2(p_hat[2]),
        })
    }

    /// Momentum `(0, sin(theta), cos(theta))`.
    pub fn in_yz_plane(energy_ratio: f64, theta: f64) -> Result<Self> {
        let delta = rapidity_from_energy_ratio(energy_ratio)?;
        Ok(Self {
            energy_ratio,
            delta,
            p_hat: [0.0, theta.sin(), theta.cos()],
            theta,
        })
    }

    /// `tanh(delta / 2) = sqrt((E/m - 1) / (E/m + 1))`.
    pub fn tanh_half(&self) -> f64 {
        ((self.energy_ratio - 1.0) / (self.energy_ratio + 1.0)).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WignerRotation {
    pub cos_half: f64,
    /// Always `>= 0`; orientation lives in `axis`.
    pub sin_half: f64,
    pub axis: Vec3,
    /// Rotation angle in `[0, pi]`.
    pub omega: f64,
    pub unitary: ComplexMatrix,
}

impl WignerRotation {
    /// Rotation by `omega` about `axis` (normalized; a zero axis means no rotation).
    pub fn from_axis_angle(omega: f64, axis: Vec3) -> Self {
        let (cos_half, sin_half, axis) = match normalize(axis) {
            Some(n) => {
                let (s, c) = (omega / 2.0).sin_cos();
                if s < 0.0 {
                    (c, -s, [-n[0], -n[1], -n[2]])
                } else {
                    (c, s, n)
                }
            }
            None => (1.0, 0.0, [0.0, 0.0, 1.0]),
        };
        Self::assemble(cos_half, sin_half, axis)
    }

    fn assemble(cos_half: f64, sin_half: f64, axis: Vec3) -> Self {
        let omega = 2.0 * sin_half.atan2(cos_half);
        let unitary = wigner_unitary_parts(cos_half, sin_half, axis);
        Self {
            cos_half,
            sin_half,
            axis,
            omega,
            unitary,
        }
    }

    /// `omega` expressed about `reference`: negative when the axis points against it.
    pub fn signed_angle_about(&self, reference: Vec3) -> f64 {
        if dot(self.axis, reference) < 0.0 {
            -self.omega
        } else {
            self.omega
        }
    }
}

/// The Wigner rotation for a general boost / momentum pair (any `e.p`).
///
/// When `e x p` vanishes the rotation is the identity and the axis is set
/// to `(0, 0, 1)`.
pub fn wigner_rotation(boost: &BoostParameters, particle: &ParticleKinematics) -> WignerRotation {
    let t = boost.tanh_half() * particle.tanh_half();
    let ep = dot(boost.e_hat, particle.p_hat);
    let exp = cross(boost.e_hat, particle.p_hat);
    let cross_norm = norm(exp);

    let cos_num = 1.0 + t * ep;
    let sin_num = t * cross_norm;
    let n = cos_num.hypot(sin_num);

    if cross_norm <= 1e-15 || sin_num == 0.0 || n == 0.0 {
        return WignerRotation::assemble(1.0, 0.0, [0.0, 0.0, 1.0]);
    }
    let axis = [
        exp[0] / cross_norm,
        exp[1] / cross_norm,
        exp[2] / cross_norm,
    ];
    WignerRotation::assemble(cos_num / n, sin_num / n, axis)
}

/// `cos(W/2) I + i sin(W/2) (sigma . n)`.
pub fn wigner_unitary(w: &WignerRotation) -> ComplexMatrix {
    wigner_unitary_parts(w.cos_half, w.sin_half, w.axis)
}

fn wigner_unitary_parts(cos_half: f64, sin_half: f64, n: Vec3) -> ComplexMatrix {
    let i_s = Complex64::new(0.0, sin_half);
    // sigma . n = [[nz, nx - i ny], [nx + i ny, -nz]]
    ComplexMatrix::from_rows(&[
        [c(cos_half, 0.0) + i_s * n[2], i_s * c(n[0], -n[1])],
        [i_s * c(n[0], n[1]), c(cos_half, 0.0) - i_s * n[2]],
    ])
}

/// Wigner angle for the perpendicular geometry: `tan(W/2) = tanh(a/2) tanh(d/2)`.
pub fn perpendicular_wigner_angle(boost: &BoostParameters, particle: &ParticleKinematics) -> f64 {
    2.0 * (boost.tanh_half() * particle.tanh_half()).atan()
}

/// `(cos(W/2), sin(W/2))` straight from the cosh/sinh expressions, without
/// rescaling. Overflows for rapidities beyond ~700; kept as a cross-check of
/// [`wigner_rotation`].
pub fn half_angles_unscaled(
    alpha: f64,
    delta: f64,
    e_dot_p: f64,
    e_cross_p_norm: f64,
) -> (f64, f64) {
    let den =
        (0.5 + 0.5 * alpha.cosh() * delta.cosh() + 0.5 * alpha.sinh() * delta.sinh() * e_dot_p)
            .sqrt();
    let (ch_a, sh_a) = ((alpha / 2.0).cosh(), (alpha / 2.0).sinh());
    let (ch_d, sh_d) = ((delta / 2.0).cosh(), (delta / 2.0).sinh());
    let cos = (ch_a * ch_d + sh_a * sh_d * e_dot_p) / den;
    let sin = sh_a * sh_d * e_cross_p_norm / den;
    (cos, sin)
}

/// Upper bound of the perpendicular Wigner angle, reached as `beta -> 1` and `E/m -> inf`.
pub const PERPENDICULAR_OMEGA_LIMIT: f64 = PI / 2.0;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rapidity_values() {
        assert_eq!(rapidity_from_beta(0.0).unwrap(), 0.0);
        // atanh(0.6) = ln 2
        assert!((rapidity_from_beta(0.6).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
        let big = rapidity_from_beta(0.999_999).unwrap();
        assert!(
            big.is_finite()
                && (big.cosh() - 1.0 / (1.0 - 0.999_999_f64.powi(2)).sqrt()).abs() / big.cosh()
                    < 1e-9
        );
        assert!(rapidity_from_beta(1.0).is_err());
        assert!(rapidity_from_beta(-0.1).is_err());
        assert!(rapidity_from_beta(1.5).is_err());
    }

    #[test]
    fn energy_ratio_rapidity_values() {
        assert_eq!(rapidity_from_energy_ratio(1.0).unwrap(), 0.0);
        // acosh(2) = ln(2 + sqrt 3)
        assert!((rapidity_from_energy_ratio(2.0).unwrap() - 1.316_957_896_924_816_7).abs() < 1e-15);
        assert!(rapidity_from_energy_ratio(0.999).is_err());
        assert!(rapidity_from_energy_ratio(f64::NAN).is_err());
    }

    #[test]
    fn energy_ratio_near_rest_matches_series() {
        let r: f64 = 1.0 + 1e-12;
        let x = r - 1.0;
        // acosh(1 + x) = sqrt(2x) (1 - x/12 + 3x^2/160 - ...)
        let series = (2.0 * x).sqrt() * (1.0 - x / 12.0);
        let got = rapidity_from_energy_ratio(r).unwrap();
        assert!((got - series).abs() / series < 1e-14, "{got} vs {series}");
    }

    #[test]
    fn no_boost_no_rotation() {
        let b = BoostParameters::along_x(0.0).unwrap();
        let p = ParticleKinematics::in_yz_plane(5.0, 0.3).unwrap();
        let w = wigner_rotation(&b, &p);
        assert_eq!((w.cos_half, w.sin_half, w.omega), (1.0, 0.0, 0.0));
        assert!(w.unitary.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn parallel_boost_no_rotation() {
        let b = BoostParameters::new(0.9, [0.0, 0.0, 1.0]).unwrap();
        let p = ParticleKinematics::new(3.0, [0.0, 0.0, 2.0]).unwrap();
        let w = wigner_rotation(&b, &p);
        assert_eq!(w.sin_half, 0.0);
        assert_eq!(w.omega, 0.0);
        assert_eq!(w.axis, [0.0, 0.0, 1.0]);
        let anti = ParticleKinematics::new(3.0, [0.0, 0.0, -1.0]).unwrap();
        assert_eq!(wigner_rotation(&b, &anti).omega, 0.0);
    }

    #[test]
    fn perpendicular_tan_identity_on_grid() {
        for i in 0..40 {
            let beta = 0.999 * i as f64 / 39.0;
            for j in 0..40 {
                let r = 1.0 + 99.0 * j as f64 / 39.0;
                let b = BoostParameters::along_x(beta).unwrap();
                let p = ParticleKinematics::in_yz_plane(r, 0.7).unwrap();
                let w = wigner_rotation(&b, &p);
                let expect = (b.alpha / 2.0).tanh() * (p.delta / 2.0).tanh();
                assert!((w.sin_half / w.cos_half - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn matches_direct_formula_for_general_geometry() {
        let dirs: [Vec3; 4] = [
            [0.0, 0.0, 1.0],
            [0.3, -0.4, 0.5],
            [-1.0, 0.2, 0.1],
            [0.0, 1.0, -1.0],
        ];
        for &e in &dirs {
            for &pd in &dirs {
                for &beta in &[0.1, 0.5, 0.9, 0.99] {
                    for &r in &[1.0, 1.5, 10.0, 80.0] {
                        let b = BoostParameters::new(beta, e).unwrap();
                        let p = ParticleKinematics::new(r, pd).unwrap();
                        let w = wigner_rotation(&b, &p);
                        let ep = dot(b.e_hat, p.p_hat);
                        let cn = norm(cross(b.e_hat, p.p_hat));
                        let (dc, ds) = half_angles_unscaled(b.alpha, p.delta, ep, cn);
                        assert!((w.cos_half - dc).abs() < 1e-12);
                        if cn > 1e-15 {
                            assert!((w.sin_half - ds).abs() < 1e-12);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn axis_perpendicular_to_boost_and_momentum() {
        let b = BoostParameters::new(0.8, [1.0, 2.0, -0.5]).unwrap();
        let p = ParticleKinematics::new(4.0, [-0.3, 0.1, 0.9]).unwrap();
        let w = wigner_rotation(&b, &p);
        assert!(dot(w.axis, b.e_hat).abs() < 1e-12);
        assert!(dot(w.axis, p.p_hat).abs() < 1e-12);
        assert!((norm(w.axis) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unitary_special_values() {
        let id = WignerRotation::from_axis_angle(0.0, [0.0, 1.0, 0.0]);
        assert!(wigner_unitary(&id).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
        let half_turn = WignerRotation::from_axis_angle(PI, [1.0, 0.0, 0.0]);
        let i_sx = crate::linalg::pauli_x().scale(c(0.0, 1.0));
        assert!(wigner_unitary(&half_turn).max_abs_diff(&i_sx) < 1e-15);
    }

    #[test]
    fn unitary_has_unit_determinant_modulus() {
        for k in 0..30 {
            let om = k as f64 * 0.1;
            let w = WignerRotation::from_axis_angle(om, [k as f64, 1.0, -2.0]);
            let u = &w.unitary;
            assert!(u.is_unitary(1e-12));
            let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
            assert!((det.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn omega_increases_with_beta() {
        let p = ParticleKinematics::in_yz_plane(3.0, 0.0).unwrap();
        let mut last = -1.0;
        for i in 0..200 {
            let beta = i as f64 / 200.0;
            let w = wigner_rotation(&BoostParameters::along_x(beta).unwrap(), &p);
            assert!(w.omega > last);
            last = w.omega;
        }
    }

    #[test]
    fn ultra_relativistic_limit() {
        // 1 - tan(W/2) ~ sqrt(2 (1 - beta)) + 1/(E/m), so it only drops
        // below 1e-6 once 1 - beta is ~1e-13.
        let b = BoostParameters::along_x(1.0 - 1e-9).unwrap();
        let p = ParticleKinematics::in_yz_plane(1e9, 0.0).unwrap();
        let w = wigner_rotation(&b, &p);
        let expect = b.tanh_half() * p.tanh_half();
        assert!(w.omega.is_finite());
        assert!((w.sin_half / w.cos_half - expect).abs() < 1e-15);
        assert!((1.0 - expect - 4.472_135_953_881_5e-5).abs() < 1e-12);

        let b = BoostParameters::along_x(1.0 - 1e-13).unwrap();
        let p = ParticleKinematics::in_yz_plane(1e13, 0.0).unwrap();
        let w = wigner_rotation(&b, &p);
        assert!((w.sin_half / w.cos_half - 1.0).abs() < 1e-6);
        assert!((w.omega - PERPENDICULAR_OMEGA_LIMIT).abs() < 1e-6);
    }
}
