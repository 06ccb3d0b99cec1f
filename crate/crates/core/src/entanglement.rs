//! Entanglement measures: von Neumann entropy, two-qubit concurrence and
//! entanglement of formation, with both numeric and closed-form routes for
//! the boosted Bell-diagonal family.

use crate::error::{domain, Error, Result};
use crate::linalg::{
    check_density, hermitian_eig, pauli_y, psd_sqrt, tensor_product, ComplexMatrix,
};

/// Trace tolerance for accepting a matrix as a density matrix.
pub const DENSITY_TRACE_TOL: f64 = 1e-8;
/// Agreement expected between the two numeric concurrence routes.
pub const ROUTE_AGREEMENT: f64 = 1e-8;
/// Disagreement that aborts a numeric concurrence evaluation.
pub const ROUTE_ABORT: f64 = 1e-6;
/// Closed-form radicands in `[-RADICAND_CLAMP, 0)` clamp to zero.
pub const RADICAND_CLAMP: f64 = 1e-10;
/// Tolerance of the sum/difference identities for the closed-form lambdas.
pub const IDENTITY_TOL: f64 = 1e-9;

/// `-x log2 x - (1-x) log2 (1-x)`, with `0 log 0 = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    xlog2x(x) + xlog2x(1.0 - x)
}

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    check_density(rho, DENSITY_TRACE_TOL)?;
    let eig = hermitian_eig(rho)?;
    let s: f64 = eig.values.iter().map(|&x| xlog2x(x.clamp(0.0, 1.0))).sum();
    Ok(s.clamp(0.0, (rho.rows() as f64).log2()))
}

/// Eigenvalues `(eta1 <= eta2)` of the boosted reduced spin matrix of a Schmidt state.
///
/// `phi` is the spin-momentum angle and the spin rotations of the two
/// branches differ by `omega1 - omega2` about a common axis.
pub fn pure_reduced_spin_eigs_closed_form(
    l1: f64,
    l2: f64,
    phi: f64,
    omega1: f64,
    omega2: f64,
) -> (f64, f64) {
    let cp = phi.cos();
    let disc = l1 * l1
        + l2 * l2
        + l1 * l2 * ((2.0 * phi).cos() - 2.0 * cp * cp * (omega1 - omega2).cos() - 1.0);
    let root = disc.max(0.0).sqrt();
    (0.5 * (l1 + l2 - root), 0.5 * (l1 + l2 + root))
}

/// Which computation produced a [`ConcurrenceBreakdown`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConcurrenceMethod {
    /// Spectrum of `R = sqrt(sqrt(rho) rho~ sqrt(rho))`.
    NumericR,
    /// Square roots of the spectrum of `rho rho~`.
    NumericRhoRhoTilde,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrenceBreakdown {
    /// Non-negative, descending.
    pub lambdas: [f64; 4],
    pub concurrence: f64,
    pub method: ConcurrenceMethod,
    /// Largest per-eigenvalue gap to the other numeric route (zero for closed forms).
    pub route_discrepancy: f64,
}

impl ConcurrenceBreakdown {
    fn from_lambdas(
        mut lambdas: [f64; 4],
        method: ConcurrenceMethod,
        route_discrepancy: f64,
    ) -> Self {
        // stable sort keeps tie order deterministic
        lambdas.sort_by(|a, b| b.total_cmp(a));
        let concurrence = (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).clamp(0.0, 1.0);
        Self {
            lambdas,
            concurrence,
            method,
            route_discrepancy,
        }
    }
}

fn sigma_yy() -> ComplexMatrix {
    let y = pauli_y();
    tensor_product(&y, &y)
}

/// Spin-flipped matrix `(sigma_y ⊗ sigma_y) rho* (sigma_y ⊗ sigma_y)`.
pub fn spin_flip(rho: &ComplexMatrix) -> ComplexMatrix {
    let yy = sigma_yy();
    &(&yy * &rho.conj()) * &yy
}

fn check_two_qubit_density(rho: &ComplexMatrix) -> Result<()> {
    if rho.rows() != 4 || rho.cols() != 4 {
        return Err(Error::Dimension {
            expected: "4x4".into(),
            got: format!("{}x{}", rho.rows(), rho.cols()),
        });
    }
    check_density(rho, DENSITY_TRACE_TOL)
}

fn sorted_sqrt_spectrum(m: &ComplexMatrix) -> Result<[f64; 4]> {
    let eig = hermitian_eig(m)?;
    let mut out = [0.0; 4];
    for (o, v) in out.iter_mut().zip(eig.values) {
        *o = v.max(0.0).sqrt();
    }
    Ok(out)
}

/// `lambda_i` as square roots of the eigenvalues of `rho rho~`, descending.
///
/// `rho rho~ = rho (sqrt(rho~))^2` has the same spectrum as the Hermitian
/// matrix `sqrt(rho~) rho sqrt(rho~)`, which is what gets diagonalized.
pub fn lambdas_rho_rho_tilde(rho: &ComplexMatrix) -> Result<[f64; 4]> {
    check_two_qubit_density(rho)?;
    let sqrt_flip = psd_sqrt(&spin_flip(rho))?;
    let m = (&(&sqrt_flip * rho) * &sqrt_flip).hermitian_part();
    sorted_sqrt_spectrum(&m)
}

/// `lambda_i` as eigenvalues of `R = sqrt(sqrt(rho) rho~ sqrt(rho))`, descending.
pub fn lambdas_r_matrix(rho: &ComplexMatrix) -> Result<[f64; 4]> {
    check_two_qubit_density(rho)?;
    let sqrt_rho = psd_sqrt(rho)?;
    let inner = (&(&sqrt_rho * &spin_flip(rho)) * &sqrt_rho).hermitian_part();
    let r = psd_sqrt(&inner)?;
    let eig = hermitian_eig(&r)?;
    let mut out = [0.0; 4];
    for (o, v) in out.iter_mut().zip(eig.values) {
        *o = v.max(0.0);
    }
    Ok(out)
}

/// Wootters concurrence of a two-qubit density matrix via the `R` matrix,
/// cross-checked against the `rho rho~` spectrum.
pub fn concurrence_numeric(rho: &ComplexMatrix) -> Result<ConcurrenceBreakdown> {
    let via_r = lambdas_r_matrix(rho)?;
    let via_product = lambdas_rho_rho_tilde(rho)?;
    let gap = via_r
        .iter()
        .zip(&via_product)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if gap > ROUTE_ABORT {
        return Err(Error::InternalConsistency(gap));
    }
    Ok(ConcurrenceBreakdown::from_lambdas(
        via_r,
        ConcurrenceMethod::NumericR,
        gap,
    ))
}

/// Concurrence of a pure two-qubit state, `|<psi*| sigma_y ⊗ sigma_y |psi>|`.
pub fn pure_state_concurrence(psi: &ComplexMatrix) -> Result<f64> {
    if psi.rows() != 4 || psi.cols() != 1 {
        return Err(Error::Dimension {
            expected: "4x1 ket".into(),
            got: format!("{}x{}", psi.rows(), psi.cols()),
        });
    }
    let norm2 = psi.inner(psi).re;
    let flipped = &sigma_yy() * &psi.conj();
    Ok((psi.inner(&flipped).norm() / norm2).clamp(0.0, 1.0))
}

/// Rest-frame concurrence of a Bell-diagonal mixture: `max(0, P1 - P2 - P3 - P4)`
/// with the weights sorted so that `P1` is the largest.
pub fn bd_rest_concurrence(mix: &crate::states::BellMixture) -> f64 {
    let p = mix.sorted_desc();
    (p[0] - p[1] - p[2] - p[3]).max(0.0)
}

fn clamp_radicand(value: f64, context: &'static str) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -RADICAND_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::NegativeRadicand { value, context })
    }
}

/// The four closed-form `lambda`s for a boosted Bell-diagonal state, unsorted.
///
/// Entries 0 and 1 come from the pair `(P2, P3)`, entries 2 and 3 from
/// `(P1, P4)`; within a pair the smaller root comes first. `omega` is the
/// relative Wigner angle of the two momentum branches (`omega1 + omega2`
/// for antiparallel momenta).
pub fn closed_form_lambdas(
    mix: &crate::states::BellMixture,
    phi: f64,
    omega: f64,
) -> Result<[f64; 4]> {
    let p = mix.weights();
    let c2 = (2.0 * phi).cos();
    let cc = phi.cos().powi(2);
    let cw = omega.cos();
    let mut out = [0.0; 4];
    for (slot, (a, b)) in [(p[1], p[2]), (p[0], p[3])].into_iter().enumerate() {
        let d2 = (a - b) * (a - b);
        let big_a = 3.0 * a * a + 3.0 * b * b - (a * a + b * b) * c2;
        let big_b = 2.0 * cc * (2.0 * a * b + d2 * cw);
        let big_c = d2 * (-3.0 + c2 - 2.0 * cc * cw);
        let big_d = -(3.0 * a + b) * (a + 3.0 * b) + d2 * (c2 - 2.0 * cc * cw);
        let cd = clamp_radicand(big_c * big_d, "C*D")?.sqrt();
        let minus = clamp_radicand(big_a + big_b - cd, "A+B-sqrt(CD)")?;
        let plus = clamp_radicand(big_a + big_b + cd, "A+B+sqrt(CD)")?;
        let k = 1.0 / (2.0 * std::f64::consts::SQRT_2);
        out[2 * slot] = k * minus.sqrt();
        out[2 * slot + 1] = k * plus.sqrt();
    }
    Ok(out)
}

/// Closed-form concurrence of a boosted Bell-diagonal state.
pub fn bd_boosted_concurrence_closed_form(
    mix: &crate::states::BellMixture,
    phi: f64,
    omega: f64,
) -> Result<ConcurrenceBreakdown> {
    let lambdas = closed_form_lambdas(mix, phi, omega)?;
    Ok(ConcurrenceBreakdown::from_lambdas(
        lambdas,
        ConcurrenceMethod::ClosedForm,
        0.0,
    ))
}

/// Squared sums and differences of the closed-form lambda pairs, evaluated
/// from the lambdas themselves and from the weights directly.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceIdentities {
    /// `[(l1-l2)^2, (l1+l2)^2, (l3-l4)^2, (l3+l4)^2]` from the lambdas.
    pub from_lambdas: [f64; 4],
    /// The same four quantities from the weight expressions.
    pub from_weights: [f64; 4],
}

impl DifferenceIdentities {
    pub fn max_gap(&self) -> f64 {
        self.from_lambdas
            .iter()
            .zip(&self.from_weights)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Computes both sides of
///
/// ```text
/// (l1 -+ l2)^2 pairs with (P2, P3), (l3 -+ l4)^2 with (P1, P4):
/// (la - lb)^2 = (Pa - Pb)^2 (1 - cos^2 phi sin^2(w/2))
/// (la + lb)^2 = (Pa + Pb)^2 - (Pa - Pb)^2 cos^2 phi sin^2(w/2)
/// ```
///
/// and returns `IdentityViolation` if any pair differs by more than [`IDENTITY_TOL`].
pub fn difference_identities(
    mix: &crate::states::BellMixture,
    phi: f64,
    omega: f64,
) -> Result<DifferenceIdentities> {
    let l = closed_form_lambdas(mix, phi, omega)?;
    let p = mix.weights();
    let shrink = phi.cos().powi(2) * (omega / 2.0).sin().powi(2);
    let rhs = |a: f64, b: f64| {
        let d2 = (a - b) * (a - b);
        [d2 * (1.0 - shrink), (a + b) * (a + b) - d2 * shrink]
    };
    let [d1, s1] = rhs(p[1], p[2]);
    let [d2, s2] = rhs(p[0], p[3]);
    let ids = DifferenceIdentities {
        from_lambdas: [
            (l[0] - l[1]).powi(2),
            (l[0] + l[1]).powi(2),
            (l[2] - l[3]).powi(2),
            (l[2] + l[3]).powi(2),
        ],
        from_weights: [d1, s1, d2, s2],
    };
    let gap = ids.max_gap();
    if gap > IDENTITY_TOL {
        return Err(Error::IdentityViolation(format!(
            "P = {p:?}, phi = {phi}, omega = {omega}: gap {gap:.3e}"
        )));
    }
    Ok(ids)
}

/// Both sides of `|l3 - l4| - (l1 + l2) <= P1 - P4 - P2 - P3` for the closed-form lambdas.
///
/// The bound is only guaranteed when `P1 - P2 - P3 - P4 >= 0`.
pub fn chain_inequality_sides(
    mix: &crate::states::BellMixture,
    phi: f64,
    omega: f64,
) -> Result<(f64, f64)> {
    let l = closed_form_lambdas(mix, phi, omega)?;
    let p = mix.weights();
    Ok(((l[3] - l[2]) - (l[0] + l[1]), p[0] - p[3] - p[1] - p[2]))
}

/// `H((1 + sqrt(1 - C^2)) / 2)` in bits.
pub fn entanglement_of_formation(concurrence: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&concurrence) {
        return Err(domain("concurrence", concurrence, "[0, 1]"));
    }
    let c = concurrence.clamp(0.0, 1.0);
    Ok(binary_entropy(0.5 * (1.0 + (1.0 - c * c).sqrt())))
}
