//! Command-line front end.
//!
//! Every subcommand is deterministic given its flags. Numbers are printed in
//! the shortest form that round-trips to the same binary64 value.
//! Exit codes: 0 success, 2 parse error, 3 domain error, 4 numeric failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dpp::{window_distribution, EnsembleSpec, Sampler};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::kernels::Kernel;
use crate::limits::{limit_shape_f, plancherel_omega_curve, RegimeSpec};
use crate::partitions::{dim_sym, dim_un, Partition};

#[derive(Debug, Parser)]
#[command(
    name = "plancherel",
    version,
    about = "Random partitions, discrete orthogonal polynomial ensembles and their limit kernels"
)]
pub struct Cli {
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Run every data-parallel loop sequentially.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print dim λ and, with --N, the Weyl dimension Dim_N λ (always 1 for the empty diagram).
    Dims {
        /// Comma-separated parts, e.g. "3,1,1"; "" is the empty diagram.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Rank of the unitary group for Dim_N λ.
        #[arg(long = "N")]
        n: Option<usize>,
    },
    /// Dump a kernel window as CSV with header "x,y,value".
    Kernel {
        #[command(flatten)]
        family: KernelArgs,
        /// Sites "a..b" (inclusive) or a comma list.
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// Draw configurations of an orthogonal polynomial ensemble, one per line.
    Sample {
        #[command(flatten)]
        ensemble: EnsembleArgs,
        /// Number of configurations.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Seed of the ChaCha8 stream family (decimal or 0x-hex).
        #[arg(long, default_value = "0xD1CE", value_parser = parse_seed)]
        seed: u64,
    },
    /// Law of the configuration restricted to a window, as JSON.
    Window {
        #[command(flatten)]
        family: KernelArgs,
        /// Sites "a..b" (inclusive) or a comma list; at most 20 points.
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// Sup-norm distance to the limit kernel along an N-grid, as JSON.
    Converge {
        #[arg(long, value_enum)]
        regime: RegimeArg,
        /// Edge parameter.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        s: f64,
        /// Bulk position.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        c: f64,
        /// Bulk Krawtchouk parameter.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Comma-separated N values [default: 100,400,1600,6400 (edge), 25,100,400 (bulk)].
        #[arg(long)]
        grid: Option<String>,
        /// Comparison window [default: 0..10 (edge), -5..5 (bulk)].
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Sample a limit-shape curve as CSV with header "u,v".
    Shape {
        #[arg(long, value_enum)]
        curve: CurveArg,
        /// Mixture parameter for --curve mixf.
        #[arg(long)]
        p: Option<f64>,
        /// Number of abscissae.
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Sine,
    Hermite,
    Charlier,
    Krawtchouk,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EnsembleFamilyArg {
    Charlier,
    Krawtchouk,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RegimeArg {
    Edge,
    Bulk,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CurveArg {
    Omega,
    Mixf,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Sine parameter in [0, π]; accepts "pi", "pi/2", "2pi/3".
    #[arg(long, value_parser = parse_angle)]
    phi: Option<f64>,
    /// Hermite parameter.
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    /// Rank (Charlier, Krawtchouk).
    #[arg(long = "N")]
    n: Option<usize>,
    /// Charlier parameter.
    #[arg(long)]
    theta: Option<f64>,
    /// Krawtchouk parameter.
    #[arg(long)]
    p: Option<f64>,
    /// Krawtchouk lattice size [default: 2N−1].
    #[arg(long = "L")]
    l: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EnsembleArgs {
    #[arg(long, value_enum)]
    family: EnsembleFamilyArg,
    /// Number of particles.
    #[arg(long = "N")]
    n: usize,
    /// Charlier parameter.
    #[arg(long)]
    theta: Option<f64>,
    /// Krawtchouk parameter.
    #[arg(long)]
    p: Option<f64>,
    /// Krawtchouk lattice size [default: 2N−1].
    #[arg(long = "L")]
    l: Option<usize>,
}

fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let t = s.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.map_err(|e| format!("bad seed {s:?}: {e}"))
}

/// A real number, or a rational multiple of π written `[k]pi[/m]`.
fn parse_angle(s: &str) -> std::result::Result<f64, String> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let bad = || format!("bad angle {s:?}");
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a, b.trim().parse::<f64>().map_err(|_| bad())?),
        None => (t, 1.0),
    };
    let k = match num.trim().strip_suffix("pi").ok_or_else(bad)?.trim_end_matches('*') {
        "" => 1.0,
        "-" => -1.0,
        k => k.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(k * std::f64::consts::PI / den)
}

fn parse_sites(s: &str) -> Result<Vec<i64>> {
    let t = s.trim();
    let bad = |e: std::num::ParseIntError| Error::Parse(format!("bad window {s:?}: {e}"));
    if let Some((a, b)) = t.split_once("..") {
        let (a, b) = (
            a.trim().parse::<i64>().map_err(bad)?,
            b.trim().parse::<i64>().map_err(bad)?,
        );
        if b < a {
            return Err(Error::Parse(format!("empty window {s:?}")));
        }
        return Ok((a..=b).collect());
    }
    t.split(',').map(|x| x.trim().parse::<i64>().map_err(bad)).collect()
}

fn parse_grid(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad grid entry {x:?}: {e}")))
        })
        .collect()
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::Parse(format!("missing required flag --{flag}")))
}

impl KernelArgs {
    fn build(&self) -> Result<Kernel> {
        match self.family {
            FamilyArg::Sine => Kernel::sine(need(self.phi, "phi")?),
            FamilyArg::Hermite => Kernel::hermite(need(self.s, "s")?),
            FamilyArg::Charlier => Kernel::charlier(need(self.n, "N")?, need(self.theta, "theta")?),
            FamilyArg::Krawtchouk => {
                let n = need(self.n, "N")?;
                let l = self.l.unwrap_or((2 * n).saturating_sub(1));
                Kernel::krawtchouk(n, need(self.p, "p")?, l)
            }
        }
    }
}

impl EnsembleArgs {
    fn spec(&self) -> Result<EnsembleSpec> {
        Ok(match self.family {
            EnsembleFamilyArg::Charlier => EnsembleSpec::Charlier {
                n: self.n,
                theta: need(self.theta, "theta")?,
            },
            EnsembleFamilyArg::Krawtchouk => {
                let p = need(self.p, "p")?;
                match self.l {
                    Some(l) => EnsembleSpec::Krawtchouk { n: self.n, p, l },
                    None => EnsembleSpec::krawtchouk(self.n, p),
                }
            }
        })
    }
}

/// Execute a parsed command line and return its output.
pub fn execute(cli: &Cli) -> Result<String> {
    let strategy = if cli.sequential {
        Strategy::Sequential
    } else {
        Strategy::default()
    };
    let mut out = String::new();
    match &cli.command {
        Command::Dims { lambda, n } => {
            let lambda: Partition = lambda.parse()?;
            write!(out, "dim={}", dim_sym(&lambda)).ok();
            // Dim_N ∅ = 1 for every N
            match n {
                Some(n) => write!(out, " Dim={}", dim_un(&lambda, *n)?).ok(),
                None if lambda.is_empty() => write!(out, " Dim=1").ok(),
                None => None,
            };
            out.push('\n');
        }
        Command::Kernel { family, window } => {
            out = family.build()?.window_csv(&parse_sites(window)?)?;
        }
        Command::Sample { ensemble, count, seed } => {
            let kernel = ensemble.spec()?.kernel()?;
            for config in Sampler::new(&kernel)?.draw_many(*count, *seed, strategy)? {
                writeln!(out, "{config}").ok();
            }
        }
        Command::Window { family, window } => {
            let dist = window_distribution(&family.build()?, &parse_sites(window)?, strategy)?;
            out = serde_json::to_string_pretty(&dist.to_json()).expect("plain data");
            out.push('\n');
        }
        Command::Converge {
            regime,
            s,
            c,
            p,
            grid,
            window,
        } => {
            let mut spec = match regime {
                RegimeArg::Edge => RegimeSpec::edge(*s),
                RegimeArg::Bulk => RegimeSpec::bulk(*c, *p),
            };
            if let Some(g) = grid {
                spec.grid = parse_grid(g)?;
            }
            if let Some(w) = window {
                spec.window = parse_sites(w)?;
            }
            out = spec.run(strategy)?.to_json();
            out.push('\n');
        }
        Command::Shape { curve, p, points } => {
            let curve = match curve {
                CurveArg::Omega => plancherel_omega_curve(*points)?,
                CurveArg::Mixf => limit_shape_f(need(*p, "p")?, *points)?,
            };
            out = curve.to_csv();
        }
    }
    Ok(out)
}

/// Exit code of a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) => 2,
        Error::Domain(_) => 3,
        Error::Numeric(_) => 4,
    }
}

/// Parse `args`, run, and write to `stdout`/`stderr`; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text.as_bytes()),
                None => stdout.write_all(text.as_bytes()),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(stderr, "error: cannot write output: {e}");
                    1
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
