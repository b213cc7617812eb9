use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eta_xray::io::cache::cache_dir;
use eta_xray::io::pipeline::{self, Outcome, T_MAX_LIMIT};
use eta_xray::io::xray::XrayPlotSpec;
use eta_xray::zerofinder::Rect;

/// Level curves of η(s) = π^(−s/2) Γ(s/2) ζ′(s), zero classification and
/// explicit-constant checks.
///
/// Exit codes: 0 all verifications passed, 2 a numeric verification
/// failed, 1 operational error.
#[derive(Debug, Parser)]
#[command(name = "eta-xray", version)]
struct Cli {
    /// Cache directory [default: $ETA_XRAY_CACHE_DIR or ./eta-xray-cache].
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Directory for reports and plots.
    #[arg(long, global = true, default_value = "eta-xray-out")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find ζ zeros, ζ′ zeros and real ζ′ zeros up to height T and cache them.
    Scan {
        #[arg(long, value_parser = parse_tmax)]
        tmax: f64,
    },
    /// Assign types to zeros below T and write the census.
    Classify {
        #[arg(long, value_parser = parse_tmax)]
        tmax: f64,
    },
    /// Plot the level curves of η in a rectangle as SVG.
    Xray {
        /// σ range as a:b.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        sigma: (f64, f64),
        /// t range as c:d.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        t: (f64, f64),
        /// Only the Re η = 0 families.
        #[arg(long)]
        zeta_only: bool,
        /// Boundary sampling step used to seed curves.
        #[arg(long, default_value_t = 0.05)]
        resolution: f64,
    },
    /// Constants ledger, positivity of F, gap integrals and bound checks.
    Zhang {
        #[arg(long, value_parser = parse_tmax)]
        tmax: f64,
    },
    /// Histograms of the geometry proxies by type.
    Stats {
        #[arg(long, value_parser = parse_tmax)]
        tmax: f64,
    },
    /// Merge an external zero list ("beta gamma" per line, '#' comments).
    Ingest {
        #[arg(long, value_enum)]
        kind: Kind,
        path: PathBuf,
    },
    /// Write cached zeros in the ingest format.
    Export {
        #[arg(long, value_enum)]
        kind: Kind,
        path: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "zeta_prime")]
    ZetaPrime,
}

fn parse_tmax(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if v > 7.0 && v <= T_MAX_LIMIT {
        Ok(v)
    } else {
        Err(format!("must satisfy 7 < T <= {T_MAX_LIMIT}"))
    }
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s}"))?;
    let num = |x: &str| x.trim().parse::<f64>().map_err(|_| format!("not a number: {x}"));
    Ok((num(a)?, num(b)?))
}

fn run(cli: Cli) -> eta_xray::Result<Outcome> {
    let dir = cache_dir(cli.cache.as_deref());
    let out = cli.out;
    match cli.command {
        Command::Scan { tmax } => pipeline::scan(&dir, tmax).map(|r| r.1),
        Command::Classify { tmax } => pipeline::classify(&dir, &out, tmax).map(|r| r.1),
        Command::Xray { sigma, t, zeta_only, resolution } => {
            let spec = XrayPlotSpec { region: Rect::new(sigma.0, sigma.1, t.0, t.1), zeta_only, resolution };
            pipeline::xray(&dir, &out, &spec)
        }
        Command::Zhang { tmax } => pipeline::zhang(&dir, &out, tmax),
        Command::Stats { tmax } => pipeline::stats(&dir, &out, tmax).map(|r| r.1),
        Command::Ingest { kind: Kind::ZetaPrime, path } => pipeline::ingest(&dir, &path).map(|r| r.1),
        Command::Export { kind: Kind::ZetaPrime, path } => {
            let n = pipeline::export_zero_list(&dir, &path)?;
            Ok(Outcome { lines: vec![format!("{n} zeros written to {}", path.display())], verified: true })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(o) => {
            for l in &o.lines {
                println!("{l}");
            }
            if o.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
