//! Randomized verification suites behind `spinmom verify`.
//!
//! Draws come from a `ChaCha8` generator seeded with `seed_from_u64(seed)`.
//! Uniform variates use `u = (next_u64 >> 11) * 2^-53` in `[0, 1)` so the
//! sequence only depends on the ChaCha8 keystream. Each suite generates its
//! draws up front, then evaluates them in parallel; the reduction is a max
//! over per-draw residuals, so the report does not depend on thread count.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::{self, Debug, Write as _};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::entanglement::{
    bd_boosted_concurrence_closed_form, bd_rest_concurrence, chain_inequality_sides,
    concurrence_numeric, difference_identities, pure_reduced_spin_eigs_closed_form,
    von_neumann_entropy,
};
use crate::error::{domain, Result};
use crate::gates::lorentz_gate;
use crate::kinematics::{
    cross, dot, half_angles_unscaled, norm, wigner_rotation, BoostParameters, ParticleKinematics,
};
use crate::linalg::{c, hermitian_eig, partial_trace_first, ComplexMatrix};
use crate::states::{
    bd_density, bell_states, boost_density, boost_state, schmidt_pure_state, BellMixture,
    SpinOrientation, TwoMomentumGeometry,
};

/// Points in each speed sweep, spread over `[0, BETA_MAX]`.
pub const BETA_GRID_POINTS: usize = 200;
pub const BETA_MAX: f64 = 0.999;

pub fn beta_grid() -> Vec<f64> {
    (0..BETA_GRID_POINTS)
        .map(|i| BETA_MAX * i as f64 / (BETA_GRID_POINTS - 1) as f64)
        .collect()
}

/// Portable uniform sampler over a ChaCha8 stream.
pub struct Sampler(ChaCha8Rng);

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn coin(&mut self) -> bool {
        self.0.next_u64() >> 63 == 1
    }

    /// Uniform on the probability simplex.
    pub fn mixture(&mut self) -> BellMixture {
        let e: [f64; 4] = std::array::from_fn(|_| -(1.0 - self.unit()).ln());
        let s: f64 = e.iter().sum();
        normalized_mixture(e.map(|x| x / s))
    }

    /// A mixture whose first weight dominates: `P1 >= P2 + P3 + P4`.
    pub fn entangled_mixture(&mut self) -> BellMixture {
        let p1 = self.uniform(0.5, 1.0);
        let rest = self.mixture().weights();
        let tail = (rest[1] + rest[2] + rest[3]).max(f64::MIN_POSITIVE);
        normalized_mixture([
            p1,
            (1.0 - p1) * rest[1] / tail,
            (1.0 - p1) * rest[2] / tail,
            (1.0 - p1) * rest[3] / tail,
        ])
    }

    pub fn energy_ratio(&mut self) -> f64 {
        // log-uniform on [1, 100]
        (self.uniform(0.0, 100f64.ln())).exp()
    }

    pub fn unit_vector(&mut self) -> [f64; 3] {
        let z = self.uniform(-1.0, 1.0);
        let a = self.uniform(0.0, 2.0 * PI);
        let r = (1.0 - z * z).max(0.0).sqrt();
        [r * a.cos(), r * a.sin(), z]
    }
}

fn normalized_mixture(p: [f64; 4]) -> BellMixture {
    let s: f64 = p.iter().sum();
    let mut p = p.map(|x| x / s);
    // absorb rounding into the largest weight
    let i = (0..4).max_by(|&a, &b| p[a].total_cmp(&p[b])).unwrap_or(0);
    p[i] += 1.0 - p.iter().sum::<f64>();
    BellMixture::new(p).expect("normalized weights")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    pub worst: f64,
    pub tolerance: f64,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub suites: Vec<SuiteReport>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::ok)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "spinmom verify  seed={}  trials={}  generator=ChaCha8",
            self.seed, self.trials
        )?;
        writeln!(
            f,
            "{:<30} {:>11} {:>11} {:>9}  status",
            "suite", "passed", "worst", "tol"
        )?;
        for s in &self.suites {
            writeln!(
                f,
                "{:<30} {:>11} {:>11.3e} {:>9.1e}  {}",
                s.name,
                format!("{}/{}", s.passed, s.total),
                s.worst,
                s.tolerance,
                if s.ok() { "PASS" } else { "FAIL" }
            )?;
            if let Some(fail) = &s.first_failure {
                writeln!(f, "  first failure: {fail}")?;
            }
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        let failed = self.suites.iter().filter(|s| !s.ok()).count();
        writeln!(
            f,
            "result: {} ({}/{} suites passed)",
            if failed == 0 { "PASS" } else { "FAIL" },
            self.suites.len() - failed,
            self.suites.len()
        )
    }
}

fn run_suite<D, F>(name: &'static str, tolerance: f64, draws: Vec<D>, eval: F) -> SuiteReport
where
    D: Debug + Sync,
    F: Fn(&D) -> Result<f64> + Sync,
{
    let residuals: Vec<std::result::Result<f64, String>> = draws
        .par_iter()
        .map(|d| eval(d).map_err(|e| e.to_string()))
        .collect();
    let mut report = SuiteReport {
        name,
        passed: 0,
        total: draws.len(),
        worst: 0.0,
        tolerance,
        first_failure: None,
    };
    for (i, (d, r)) in draws.iter().zip(residuals).enumerate() {
        let (residual, err) = match r {
            Ok(x) if x.is_finite() => (x, None),
            Ok(x) => (f64::INFINITY, Some(format!("non-finite residual {x}"))),
            Err(e) => (f64::INFINITY, Some(e)),
        };
        report.worst = report.worst.max(residual);
        if residual <= tolerance {
            report.passed += 1;
        } else if report.first_failure.is_none() {
            let mut msg = format!("draw {i}: {d:?} residual {residual:.3e}");
            if let Some(e) = err {
                let _ = write!(msg, " ({e})");
            }
            report.first_failure = Some(msg);
        }
    }
    report
}

fn draws<D>(n: usize, rng: &mut Sampler, mut f: impl FnMut(&mut Sampler) -> D) -> Vec<D> {
    (0..n).map(|_| f(rng)).collect()
}

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

fn spin_entropy(psi: &ComplexMatrix) -> Result<f64> {
    von_neumann_entropy(&partial_trace_first(&psi.projector())?)
}

#[derive(Debug)]
struct WignerDraw {
    beta: f64,
    energy_ratio: f64,
    e_dot_p: f64,
}

#[derive(Debug)]
struct BoostDraw {
    mixture: BellMixture,
    xi: f64,
    tau: f64,
    theta: f64,
    energy_ratio: f64,
    energy_ratio2: f64,
    beta: f64,
    parallel: bool,
}

impl BoostDraw {
    fn sample(rng: &mut Sampler) -> Self {
        Self {
            mixture: rng.mixture(),
            xi: rng.uniform(0.0, PI),
            tau: rng.uniform(0.0, 2.0 * PI),
            theta: rng.uniform(0.0, 2.0 * PI),
            energy_ratio: rng.energy_ratio(),
            energy_ratio2: rng.energy_ratio(),
            beta: rng.uniform(0.0, BETA_MAX),
            parallel: rng.coin(),
        }
    }

    fn geometry(&self) -> Result<TwoMomentumGeometry> {
        let second = if self.parallel {
            self.theta
        } else {
            self.theta + PI
        };
        TwoMomentumGeometry::antiparallel(self.energy_ratio, self.theta)?
            .with_second(self.energy_ratio2, second)
    }

    fn boost(&self) -> Result<BoostParameters> {
        BoostParameters::along_x(self.beta)
    }

    fn yz_spin(&self) -> Result<SpinOrientation> {
        SpinOrientation::in_yz_plane(self.xi)
    }
}

/// Closed-form vs numeric lambdas of a boosted Bell-diagonal state; returns the max gap.
pub fn mixed_closed_form_gap(
    mix: &BellMixture,
    spin: &SpinOrientation,
    boost: &BoostParameters,
    geom: &TwoMomentumGeometry,
) -> Result<f64> {
    let angles = geom.wigner_angles(boost);
    let omega = angles
        .relative()
        .ok_or_else(|| domain("momentum axes", f64::NAN, "collinear"))?;
    let phi = spin.xi - geom.k1.theta;
    let rho = boost_density(&bd_density(mix, spin), boost, geom)?;
    let numeric = concurrence_numeric(&rho)?;
    let closed = bd_boosted_concurrence_closed_form(mix, phi, omega)?;
    Ok(numeric
        .lambdas
        .iter()
        .zip(&closed.lambdas)
        .map(|(a, b)| (a - b).abs())
        .fold((numeric.concurrence - closed.concurrence).abs(), f64::max))
}

/// Closed-form vs numeric reduced-spin eigenvalues of a boosted Schmidt state.
pub fn pure_closed_form_gap(
    l1: f64,
    spin: &SpinOrientation,
    boost: &BoostParameters,
    geom: &TwoMomentumGeometry,
) -> Result<f64> {
    let angles = geom.wigner_angles(boost);
    let omega2 = angles
        .omega2_signed
        .ok_or_else(|| domain("momentum axes", f64::NAN, "collinear"))?;
    let phi = spin.xi - geom.k1.theta;
    let psi = boost_state(&schmidt_pure_state(l1, 1.0 - l1, spin)?, boost, geom)?;
    let eig = hermitian_eig(&partial_trace_first(&psi.projector())?)?;
    let (e1, e2) = pure_reduced_spin_eigs_closed_form(l1, 1.0 - l1, phi, angles.omega1, omega2);
    Ok((eig.values[1] - e1).abs().max((eig.values[0] - e2).abs()))
}

/// Runs every suite with `trials` random draws each (sweep suites use
/// `max(1, trials / 20)` draws of a full speed grid).
pub fn run(seed: u64, trials: usize) -> Result<VerifyReport> {
    if trials == 0 {
        return Err(domain("trials", 0.0, ">= 1"));
    }
    let mut rng = Sampler::new(seed);
    let sweeps = (trials / 20).max(1);
    let grid = beta_grid();
    let mut suites = Vec::new();
    let mut notes = Vec::new();

    let d = draws(trials, &mut rng, |r| WignerDraw {
        beta: r.uniform(0.0, BETA_MAX),
        energy_ratio: r.energy_ratio(),
        e_dot_p: r.uniform(-1.0, 1.0),
    });
    suites.push(run_suite("wigner-normalization", 1e-10, d, |w| {
        let boost = BoostParameters::along_x(w.beta)?;
        let p = ParticleKinematics::new(
            w.energy_ratio,
            [
                w.e_dot_p,
                (1.0 - w.e_dot_p * w.e_dot_p).max(0.0).sqrt(),
                0.0,
            ],
        )?;
        let rot = wigner_rotation(&boost, &p);
        let ep = dot(boost.e_hat, p.p_hat);
        let (cu, su) =
            half_angles_unscaled(boost.alpha, p.delta, ep, norm(cross(boost.e_hat, p.p_hat)));
        Ok((cu * cu + su * su - 1.0)
            .abs()
            .max((rot.cos_half * rot.cos_half + rot.sin_half * rot.sin_half - 1.0).abs())
            .max((rot.cos_half - cu).abs())
            .max((rot.sin_half - su).abs()))
    }));

    let d = draws(trials, &mut rng, |r| {
        (
            r.uniform(0.0, BETA_MAX),
            r.energy_ratio(),
            r.uniform(0.0, 2.0 * PI),
        )
    });
    suites.push(run_suite(
        "perpendicular-tan-identity",
        1e-10,
        d,
        |&(beta, ratio, theta)| {
            let boost = BoostParameters::along_x(beta)?;
            let p = ParticleKinematics::in_yz_plane(ratio, theta)?;
            let rot = wigner_rotation(&boost, &p);
            let expect = (beta.atanh() / 2.0).tanh() * (ratio.acosh() / 2.0).tanh();
            Ok((rot.sin_half / rot.cos_half - expect).abs())
        },
    ));

    let d = draws(trials, &mut rng, |r| {
        (
            BoostDraw::sample(r),
            r.unit_vector(),
            r.uniform(0.0, 2.0 * PI),
        )
    });
    suites.push(run_suite(
        "boost-orthonormality",
        1e-12,
        d,
        |(b, dir, theta2)| {
            // general geometry: arbitrary boost direction and second momentum angle
            let boost = BoostParameters::new(b.beta, *dir)?;
            let geom = b.geometry()?.with_second(b.energy_ratio2, *theta2)?;
            let spin = SpinOrientation::new(b.xi, b.tau)?;
            let u = geom.boost_operator(&boost);
            let kets: Vec<ComplexMatrix> = bell_states(&spin)
                .iter()
                .map(|psi| boost_state(psi, &boost, &geom))
                .collect::<Result<_>>()?;
            let back = (&u.dagger() * &kets[0]).max_abs_diff(&bell_states(&spin)[0]);
            Ok(gram_defect(&kets)
                .max(back)
                .max((&u.dagger() * &u).max_abs_diff(&ComplexMatrix::identity(4))))
        },
    ));

    let d = draws(trials, &mut rng, |r| (r.unit(), BoostDraw::sample(r)));
    suites.push(run_suite("pure-closed-form-eigs", 1e-10, d, |(l1, b)| {
        pure_closed_form_gap(*l1, &b.yz_spin()?, &b.boost()?, &b.geometry()?)
    }));

    let d = draws(trials, &mut rng, BoostDraw::sample);
    suites.push(run_suite("mixed-closed-form-lambdas", 1e-8, d, |b| {
        mixed_closed_form_gap(&b.mixture, &b.yz_spin()?, &b.boost()?, &b.geometry()?)
    }));

    let d = draws(trials, &mut rng, |r| {
        (r.mixture(), r.uniform(0.0, PI), r.uniform(0.0, PI))
    });
    suites.push(run_suite(
        "difference-identities",
        1e-9,
        d,
        |(mix, phi, omega)| Ok(difference_identities(mix, *phi, *omega)?.max_gap()),
    ));

    let d = draws(trials, &mut rng, BoostDraw::sample);
    suites.push(run_suite("numeric-route-agreement", 1e-8, d, |b| {
        let rho = boost_density(
            &bd_density(&b.mixture, &SpinOrientation::new(b.xi, b.tau)?),
            &b.boost()?,
            &b.geometry()?,
        )?;
        Ok(concurrence_numeric(&rho)?.route_discrepancy)
    }));

    let d = draws(trials, &mut rng, |r| {
        (r.mixture(), r.uniform(0.0, PI), r.uniform(0.0, 2.0 * PI))
    });
    suites.push(run_suite(
        "rest-bd-concurrence",
        1e-10,
        d,
        |(mix, xi, tau)| {
            let rho = bd_density(mix, &SpinOrientation::new(*xi, *tau)?);
            Ok((concurrence_numeric(&rho)?.concurrence - bd_rest_concurrence(mix)).abs())
        },
    ));

    let d = draws(sweeps, &mut rng, |r| {
        let mut p = r.mixture().sorted_desc();
        // keep the largest weight first, scramble the rest
        if r.coin() {
            p.swap(1, 3);
        }
        (normalized_mixture(p), r.uniform(0.0, PI), r.energy_ratio())
    });
    suites.push(run_suite(
        "concurrence-nonincreasing",
        1e-12,
        d,
        |(mix, theta, ratio)| {
            // spin along the first momentum
            let spin = SpinOrientation::in_yz_plane(*theta)?;
            let geom = TwoMomentumGeometry::antiparallel(*ratio, *theta)?;
            let rho = bd_density(mix, &spin);
            let rest = concurrence_numeric(&rho)?.concurrence;
            let mut prev = rest;
            let mut worst = 0.0_f64;
            for &beta in &grid {
                let cb = concurrence_numeric(&boost_density(
                    &rho,
                    &BoostParameters::along_x(beta)?,
                    &geom,
                )?)?
                .concurrence;
                worst = worst.max(cb - prev).max(cb - rest);
                prev = cb;
            }
            Ok(worst)
        },
    ));

    let d = draws(sweeps, &mut rng, |r| {
        (r.uniform(0.5, 1.0), BoostDraw::sample(r))
    });
    suites.push(run_suite("pure-entropy-bound", 1e-12, d, |(l1, b)| {
        let spin = b.yz_spin()?;
        let geom = b.geometry()?;
        let psi = schmidt_pure_state(*l1, 1.0 - l1, &spin)?;
        let rest = spin_entropy(&psi)?;
        let mut worst = 0.0_f64;
        for &beta in &grid {
            let e = spin_entropy(&boost_state(&psi, &BoostParameters::along_x(beta)?, &geom)?)?;
            worst = worst.max(e - rest);
        }
        Ok(worst)
    }));

    let d = draws(sweeps, &mut rng, |r| {
        (r.mixture(), r.unit(), BoostDraw::sample(r))
    });
    suites.push(run_suite(
        "perpendicular-invariance",
        1e-10,
        d,
        |(mix, l1, b)| {
            let theta = b.theta % FRAC_PI_2;
            let spin = SpinOrientation::in_yz_plane(theta + FRAC_PI_2)?;
            let geom = TwoMomentumGeometry::antiparallel(b.energy_ratio, theta)?
                .with_second(b.energy_ratio2, if b.parallel { theta } else { theta + PI })?;
            let rho = bd_density(mix, &spin);
            let psi = schmidt_pure_state(*l1, 1.0 - l1, &spin)?;
            let c_rest = concurrence_numeric(&rho)?.concurrence;
            let e_rest = spin_entropy(&psi)?;
            let mut worst = 0.0_f64;
            for &beta in &grid {
                let boost = BoostParameters::along_x(beta)?;
                let cb = concurrence_numeric(&boost_density(&rho, &boost, &geom)?)?.concurrence;
                let eb = spin_entropy(&boost_state(&psi, &boost, &geom)?)?;
                worst = worst.max((cb - c_rest).abs()).max((eb - e_rest).abs());
            }
            Ok(worst)
        },
    ));

    let d = draws(trials, &mut rng, |r| {
        (
            r.entangled_mixture(),
            r.uniform(0.0, PI),
            r.uniform(0.0, PI),
        )
    });
    suites.push(run_suite(
        "chain-inequality",
        1e-10,
        d,
        |(mix, phi, omega)| {
            let (lhs, rhs) = chain_inequality_sides(mix, *phi, *omega)?;
            Ok((lhs - rhs).max(0.0))
        },
    ));
    let open = draws(trials, &mut rng, |r| {
        (r.mixture(), r.uniform(0.0, PI), r.uniform(0.0, PI))
    });
    let exceed = open
        .par_iter()
        .filter(|(mix, phi, omega)| {
            chain_inequality_sides(mix, *phi, *omega).map_or(true, |(l, r)| l > r + 1e-10)
        })
        .count();
    notes.push(format!(
        "chain inequality without P1 >= P2+P3+P4: bound exceeded in {exceed}/{trials} unrestricted draws (not asserted)"
    ));

    let d = draws(trials, &mut rng, |r| {
        (r.uniform(0.0, BETA_MAX), r.energy_ratio(), r.energy_ratio())
    });
    suites.push(run_suite(
        "gate-matches-boost",
        1e-12,
        d,
        |&(beta, r1, r2)| {
            // spin and both momenta along +z, boost along x
            let geom = TwoMomentumGeometry::parallel(r1, r2, 0.0)?;
            let boost = BoostParameters::along_x(beta)?;
            let w = geom.wigner_angles(&boost);
            Ok(lorentz_gate(w.omega1, w.omega2)
                .operator()
                .max_abs_diff(&geom.boost_operator(&boost)))
        },
    ));

    let d = draws(trials, &mut rng, |r| {
        std::array::from_fn::<f64, 4, _>(|_| r.uniform(-2.0 * PI, 2.0 * PI))
    });
    suites.push(run_suite("gate-composition", 1e-12, d, |a| {
        let g = lorentz_gate(a[0], a[1]).then(&lorentz_gate(a[2], a[3]));
        let unitarity = (&g.matrix * &g.matrix.dagger()).max_abs_diff(&ComplexMatrix::identity(4));
        Ok(g.matrix
            .max_abs_diff(&lorentz_gate(a[0] + a[2], a[1] + a[3]).matrix)
            .max(unitarity))
    }));

    let d = draws(trials, &mut rng, BoostDraw::sample);
    suites.push(run_suite("full-state-entropy-invariance", 1e-12, d, |b| {
        let rho = bd_density(&b.mixture, &SpinOrientation::new(b.xi, b.tau)?);
        let boosted = boost_density(&rho, &b.boost()?, &b.geometry()?)?;
        Ok((von_neumann_entropy(&boosted)? - von_neumann_entropy(&rho)?).abs())
    }));

    Ok(VerifyReport {
        seed,
        trials,
        suites,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_is_reproducible() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..100 {
            assert_eq!(a.unit().to_bits(), b.unit().to_bits());
        }
        let u = Sampler::new(7).unit();
        assert!((0.0..1.0).contains(&u));
    }

    #[test]
    fn sampled_mixtures_are_valid() {
        let mut s = Sampler::new(1);
        for _ in 0..200 {
            let m = s.mixture().weights();
            assert!((m.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            let e = s.entangled_mixture().weights();
            assert!(e[0] - e[1] - e[2] - e[3] >= -1e-12);
        }
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(run(1, 0).is_err());
    }

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let a = run(3, 40).unwrap();
        assert!(a.all_passed(), "{a}");
        let b = run(3, 40).unwrap();
        assert_eq!(a.to_string(), b.to_string());
    }
}
