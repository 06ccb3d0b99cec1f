use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spinmom_core::gates::{cnot_limit_gate, demo_disentangle, demo_entangle, GateDemo};
use spinmom_core::kinematics::wigner_rotation;
use spinmom_core::sweep::{run_sweep, to_csv, to_svg};
use spinmom_core::{
    verify, BellMixture, BetaRange, BoostParameters, ComplexMatrix, ParticleKinematics,
    SpinOrientation, SweepConfig,
};

#[derive(Parser)]
#[command(
    name = "spinmom",
    version,
    about = "Spin-momentum entanglement under Lorentz boosts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Format {
    /// Read angle arguments in degrees instead of radians.
    #[arg(long, global = true)]
    degrees: bool,
    /// Significant digits in printed numbers.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u8).range(1..=17))]
    precision: u8,
}

#[derive(Subcommand)]
enum Command {
    /// Wigner rotation of one momentum under a boost along x.
    Wigner {
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 2.0)]
        energy_ratio: f64,
        /// Momentum direction in the yz-plane, measured from z [default: pi/2].
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        #[command(flatten)]
        fmt: Format,
    },
    /// Entanglement of a boosted Bell-diagonal state over a speed range, as CSV.
    Sweep {
        #[arg(long, default_value = "0.7,0.1,0.1,0.1")]
        p: String,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        xi: f64,
        /// Spin azimuth [default: pi/2].
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<f64>,
        /// Direction of p1 in the yz-plane; p2 is antiparallel.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, default_value_t = 2.0)]
        energy_ratio: f64,
        #[arg(long, default_value = "0:0.99:100")]
        beta_range: String,
        /// CSV path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG plot of C_boosted next to the CSV.
        #[arg(long, requires = "out")]
        svg: bool,
        #[command(flatten)]
        fmt: Format,
    },
    /// Run the randomized verification suites.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// Show the limiting controlled gate and its two demo transitions.
    GateDemo {
        #[command(flatten)]
        fmt: Format,
    },
}

enum Failure {
    Verification,
    Domain(String),
    Io(String),
}

impl From<spinmom_core::Error> for Failure {
    fn from(e: spinmom_core::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// Converts a user angle to radians; absent angles take `default` radians.
fn angle_or(x: Option<f64>, default: f64, fmt: Format) -> f64 {
    x.map_or(default, |x| angle(x, fmt))
}

fn angle(x: f64, fmt: Format) -> f64 {
    if fmt.degrees {
        x.to_radians()
    } else {
        x
    }
}

/// `x` with `digits` significant digits.
fn num(x: f64, digits: u8) -> String {
    let d = digits as usize;
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..15).contains(&exp) {
        let decimals = (d as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.*e}", d - 1)
    }
}

fn complex(z: spinmom_core::Complex64, digits: u8) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{} {sign} {}i", num(z.re, digits), num(z.im.abs(), digits))
}

fn matrix(m: &ComplexMatrix, digits: u8, real: bool) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let cells: Vec<String> = (0..m.cols())
            .map(|j| {
                if real {
                    num(m[(i, j)].re, digits)
                } else {
                    complex(m[(i, j)], digits)
                }
            })
            .collect();
        let _ = writeln!(out, "  [{}]", cells.join(", "));
    }
    out
}

fn wigner(beta: f64, ratio: f64, theta: Option<f64>, fmt: Format) -> Result<String, Failure> {
    let theta = angle_or(theta, FRAC_PI_2, fmt);
    let boost = BoostParameters::along_x(beta)?;
    let p = ParticleKinematics::in_yz_plane(ratio, theta)?;
    let w = wigner_rotation(&boost, &p);
    let n = |x: f64| num(x, fmt.precision);
    let mut s = String::new();
    let _ = writeln!(s, "beta  = {}", n(beta));
    let _ = writeln!(s, "E/m   = {}", n(ratio));
    let _ = writeln!(s, "theta = {}", n(theta));
    let _ = writeln!(s, "alpha = {}", n(boost.alpha));
    let _ = writeln!(s, "delta = {}", n(p.delta));
    let _ = writeln!(s, "Omega = {}", n(w.omega));
    let _ = writeln!(s, "cos(Omega/2) = {}", n(w.cos_half));
    let _ = writeln!(s, "sin(Omega/2) = {}", n(w.sin_half));
    let _ = writeln!(
        s,
        "n = ({}, {}, {})",
        n(w.axis[0]),
        n(w.axis[1]),
        n(w.axis[2])
    );
    let _ = writeln!(
        s,
        "tanh(alpha/2) tanh(delta/2) = {}",
        n(boost.tanh_half() * p.tanh_half())
    );
    let _ = writeln!(s, "U =");
    s.push_str(&matrix(&w.unitary, fmt.precision, false));
    Ok(s)
}

fn parse_mixture(s: &str) -> Result<BellMixture, Failure> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Domain(format!("--p expects P1,P2,P3,P4, got {s:?}")))?;
    let p: [f64; 4] = parts
        .try_into()
        .map_err(|_| Failure::Domain(format!("--p expects four weights, got {s:?}")))?;
    Ok(BellMixture::new(p)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn gate_demo(fmt: Format) -> String {
    let d = fmt.precision;
    let gate = cnot_limit_gate();
    let mut s = String::new();
    let _ = writeln!(
        s,
        "limit gate (Omega1 -> 0, Omega1 + Omega2 = pi); row k is the image of basis ket k"
    );
    let _ = writeln!(s, "basis: |p1 up>, |p1 down>, |p2 up>, |p2 down>");
    s.push_str(&matrix(&gate.matrix, d, true));
    let show = |s: &mut String, title: &str, demo: &GateDemo| {
        let _ = writeln!(s, "{title}");
        let ket = |m: &ComplexMatrix| {
            (0..4)
                .map(|i| num(m[(i, 0)].re, d))
                .collect::<Vec<_>>()
                .join(", ")
        };
        let _ = writeln!(s, "  in:  ({})", ket(&demo.input));
        let _ = writeln!(s, "  out: ({})", ket(&demo.output));
        let _ = writeln!(
            s,
            "  concurrence: {} -> {}",
            num(demo.concurrence_before, d),
            num(demo.concurrence_after, d)
        );
    };
    show(
        &mut s,
        "entangle: (|p1> + |p2>)|up>/sqrt2",
        &demo_entangle(&gate),
    );
    show(
        &mut s,
        "disentangle: (|p1 up> + |p2 down>)/sqrt2",
        &demo_disentangle(&gate),
    );
    s
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Wigner {
            beta,
            energy_ratio,
            theta,
            fmt,
        } => print!("{}", wigner(beta, energy_ratio, theta, fmt)?),
        Command::Sweep {
            p,
            xi,
            tau,
            theta,
            energy_ratio,
            beta_range,
            out,
            svg,
            fmt,
        } => {
            let cfg = SweepConfig {
                mixture: parse_mixture(&p)?,
                spin: SpinOrientation::new(angle(xi, fmt), angle_or(tau, FRAC_PI_2, fmt))?,
                theta: angle(theta, fmt),
                energy_ratio,
                beta_range: BetaRange::parse(&beta_range)?,
            };
            let rows = run_sweep(&cfg)?;
            let csv = to_csv(&rows);
            match out {
                None => print!("{csv}"),
                Some(path) => {
                    write_file(&path, &csv)?;
                    if svg {
                        write_file(&path.with_extension("svg"), &to_svg(&rows))?;
                    }
                    println!("wrote {} rows to {}", rows.len(), path.display());
                }
            }
        }
        Command::Verify { seed, trials } => {
            let report = verify::run(seed, trials as usize)?;
            print!("{report}");
            if !report.all_passed() {
                return Err(Failure::Verification);
            }
        }
        Command::GateDemo { fmt } => print!("{}", gate_demo(fmt)),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
