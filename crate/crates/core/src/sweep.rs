//! Concurrence, entanglement of formation and spin entropy of a boosted
//! Bell-diagonal state over a range of observer speeds.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::entanglement::{concurrence_numeric, entanglement_of_formation, von_neumann_entropy};
use crate::error::{domain, Error, Result};
use crate::kinematics::BoostParameters;
use crate::linalg::partial_trace_first;
use crate::states::{
    bd_density, boost_density, spin_momentum_angle, BellMixture, SpinOrientation,
    TwoMomentumGeometry,
};

pub const CSV_HEADER: &str = "beta,alpha,omega1,omega2,phi,omega_sum,C_rest,C_boosted,EoF_rest,EoF_boosted,S_spin_rest,S_spin_boosted";

/// Evenly spaced `steps` speeds from `start` to `end` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaRange {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl BetaRange {
    pub fn new(start: f64, end: f64, steps: usize) -> Result<Self> {
        if !(0.0..1.0).contains(&start) {
            return Err(domain("beta start", start, "[0, 1)"));
        }
        if !(start..1.0).contains(&end) {
            return Err(domain("beta end", end, "[start, 1)"));
        }
        if steps < 2 {
            return Err(domain("steps", steps as f64, ">= 2"));
        }
        Ok(Self { start, end, steps })
    }

    /// Parses `start:end:steps`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Domain {
            name: "beta range",
            value: f64::NAN,
            domain: "start:end:steps",
        };
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(bad());
        };
        let start = a.trim().parse::<f64>().map_err(|_| bad())?;
        let end = b.trim().parse::<f64>().map_err(|_| bad())?;
        let steps = n.trim().parse::<usize>().map_err(|_| bad())?;
        Self::new(start, end, steps)
    }

    pub fn values(&self) -> Vec<f64> {
        let span = self.end - self.start;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.end
                } else {
                    self.start + span * (i as f64 / last)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub mixture: BellMixture,
    pub spin: SpinOrientation,
    /// Direction of `p1` in the yz-plane; `p2` is antiparallel with the same energy.
    pub theta: f64,
    pub energy_ratio: f64,
    pub beta_range: BetaRange,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub beta: f64,
    pub alpha: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub phi: f64,
    pub omega_sum: f64,
    pub c_rest: f64,
    pub c_boosted: f64,
    pub eof_rest: f64,
    pub eof_boosted: f64,
    pub s_spin_rest: f64,
    pub s_spin_boosted: f64,
}

impl SweepRow {
    fn fields(&self) -> [f64; 12] {
        [
            self.beta,
            self.alpha,
            self.omega1,
            self.omega2,
            self.phi,
            self.omega_sum,
            self.c_rest,
            self.c_boosted,
            self.eof_rest,
            self.eof_boosted,
            self.s_spin_rest,
            self.s_spin_boosted,
        ]
    }
}

fn row_at(cfg: &SweepConfig, geom: &TwoMomentumGeometry, beta: f64) -> Result<SweepRow> {
    let boost = BoostParameters::along_x(beta)?;
    let angles = geom.wigner_angles(&boost);
    let rho = bd_density(&cfg.mixture, &cfg.spin);
    let boosted = boost_density(&rho, &boost, geom)?;
    let c_rest = concurrence_numeric(&rho)?.concurrence;
    let c_boosted = concurrence_numeric(&boosted)?.concurrence;
    Ok(SweepRow {
        beta,
        alpha: boost.alpha,
        omega1: angles.omega1,
        omega2: angles.omega2,
        phi: spin_momentum_angle(&cfg.spin, geom),
        omega_sum: angles.sum(),
        c_rest,
        c_boosted,
        eof_rest: entanglement_of_formation(c_rest)?,
        eof_boosted: entanglement_of_formation(c_boosted)?,
        s_spin_rest: von_neumann_entropy(&partial_trace_first(&rho)?)?,
        s_spin_boosted: von_neumann_entropy(&partial_trace_first(&boosted)?)?,
    })
}

/// One row per speed, in increasing `beta` order. Rows are evaluated in
/// parallel; each row depends only on its own `beta`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    let geom = TwoMomentumGeometry::antiparallel(cfg.energy_ratio, cfg.theta)?;
    cfg.beta_range
        .values()
        .par_iter()
        .map(|&beta| row_at(cfg, &geom, beta))
        .collect()
}

/// CSV text: header, then one line per row, `\n` terminated.
pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let line: Vec<String> = row.fields().iter().map(|v| format!("{v}")).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Single-polyline SVG of `C_boosted` against `beta`.
pub fn to_svg(rows: &[SweepRow]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const M: f64 = 50.0;
    let (x0, x1) = match (rows.first(), rows.last()) {
        (Some(a), Some(b)) if b.beta > a.beta => (a.beta, b.beta),
        (Some(a), _) => (a.beta, a.beta + 1.0),
        _ => (0.0, 1.0),
    };
    let sx = |b: f64| M + (b - x0) / (x1 - x0) * (W - 2.0 * M);
    let sy = |c: f64| H - M - c.clamp(0.0, 1.0) * (H - 2.0 * M);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{M}" y1="{y}" x2="{x}" y2="{y}" stroke="black"/>"#,
        y = H - M,
        x = W - M
    );
    let _ = writeln!(
        svg,
        r#"<line x1="{M}" y1="{M}" x2="{M}" y2="{y}" stroke="black"/>"#,
        y = H - M
    );
    let _ = writeln!(
        svg,
        r#"<text x="{x}" y="{y}" text-anchor="middle">beta ({x0} to {x1})</text>"#,
        x = W / 2.0,
        y = H - 12.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="14" y="{y}" text-anchor="middle" transform="rotate(-90 14 {y})">C boosted (0 to 1)</text>"#,
        y = H / 2.0
    );
    let points: Vec<String> = rows
        .iter()
        .map(|r| format!("{:.3},{:.3}", sx(r.beta), sy(r.c_boosted)))
        .collect();
    let _ = writeln!(
        svg,
        r#"<polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#,
        points.join(" ")
    );
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn config(xi: f64, theta: f64, range: BetaRange) -> SweepConfig {
        SweepConfig {
            mixture: BellMixture::new([0.7, 0.1, 0.1, 0.1]).unwrap(),
            spin: SpinOrientation::in_yz_plane(xi).unwrap(),
            theta,
            energy_ratio: 3.0,
            beta_range: range,
        }
    }

    #[test]
    fn range_parsing() {
        let r = BetaRange::parse("0:0.9:4").unwrap();
        assert_eq!(r.values(), vec![0.0, 0.3, 0.6, 0.9]);
        assert!(BetaRange::parse("0:1:4").is_err());
        assert!(BetaRange::parse("0.5:0.2:4").is_err());
        assert!(BetaRange::parse("0:0.5:1").is_err());
        assert!(BetaRange::parse("0:0.5").is_err());
        assert!(BetaRange::parse("a:0.5:3").is_err());
    }

    #[test]
    fn aligned_spin_concurrence_never_increases() {
        let rows = run_sweep(&config(0.3, 0.3, BetaRange::new(0.0, 0.99, 60).unwrap())).unwrap();
        assert!((rows[0].c_rest - 0.4).abs() < 1e-12);
        for w in rows.windows(2) {
            assert!(w[1].c_boosted <= w[0].c_boosted + 1e-12);
        }
        assert!(rows.last().unwrap().c_boosted < 0.4 - 1e-3);
    }

    #[test]
    fn perpendicular_spin_concurrence_is_constant() {
        let rows = run_sweep(&config(
            FRAC_PI_2,
            0.0,
            BetaRange::new(0.0, 0.99, 30).unwrap(),
        ))
        .unwrap();
        for r in &rows {
            assert!((r.c_boosted - r.c_rest).abs() < 1e-10);
            assert!((r.phi - FRAC_PI_2).abs() < 1e-15);
        }
    }

    #[test]
    fn degenerate_range_gives_identical_rows() {
        let rows = run_sweep(&config(0.0, 0.0, BetaRange::new(0.0, 0.0, 2).unwrap())).unwrap();
        let csv = to_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], lines[2]);
    }

    #[test]
    fn csv_is_stable() {
        let cfg = config(1.0, 0.2, BetaRange::new(0.1, 0.8, 17).unwrap());
        let a = to_csv(&run_sweep(&cfg).unwrap());
        let b = to_csv(&run_sweep(&cfg).unwrap());
        assert_eq!(a, b);
        assert!(a.ends_with('\n') && !a.contains('\r'));
        assert_eq!(a.lines().nth(1).unwrap().split(',').count(), 12);
    }

    #[test]
    fn svg_has_one_polyline() {
        let rows = run_sweep(&config(0.0, PI / 4.0, BetaRange::new(0.0, 0.9, 5).unwrap())).unwrap();
        let svg = to_svg(&rows);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 1);
    }
}
