use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use smanifold::examples::ExampleTag;
use smanifold::report::{emit_json, run, RunConfig};
use smanifold::theorems::ConnectionSelection;
use smanifold::GeometryError;

/// Pointwise checks of S-manifold structure and curvature identities.
#[derive(Parser)]
#[command(name = "smanifold", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an example and verify every identity at seeded points.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleKind {
    Flat,
    Sphere,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConnectionArg {
    Riemannian,
    Ssm,
    Ssnm,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    example: ExampleKind,
    /// flat: half the dimension of the contact part
    #[arg(long)]
    m: Option<usize>,
    /// flat: number of structure fields
    #[arg(long)]
    t: Option<usize>,
    /// sphere: S^{2n+1}
    #[arg(long)]
    n: Option<usize>,
    /// sphere: number of structure fields
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, value_enum, default_value = "all")]
    connection: ConnectionArg,
    /// Shorthand for --connection all.
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = 20)]
    points: usize,
    #[arg(long, default_value_t = 10)]
    planes: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn config(a: &VerifyArgs) -> Result<RunConfig, GeometryError> {
    let example = match a.example {
        ExampleKind::Flat => {
            if a.n.is_some() || a.s.is_some() {
                return Err(GeometryError::InvalidConfig("flat takes --m and --t".into()));
            }
            ExampleTag::Flat {
                m: a.m.unwrap_or(1),
                t: a.t.unwrap_or(1),
            }
        }
        ExampleKind::Sphere => {
            if a.m.is_some() || a.t.is_some() {
                return Err(GeometryError::InvalidConfig("sphere takes --n and --s".into()));
            }
            ExampleTag::Sphere {
                n: a.n.unwrap_or(1),
                s: a.s.unwrap_or(2),
            }
        }
    };
    let connection = match (a.all, a.connection) {
        (true, _) | (_, ConnectionArg::All) => ConnectionSelection::All,
        (_, ConnectionArg::Riemannian) => ConnectionSelection::Riemannian,
        (_, ConnectionArg::Ssm) => ConnectionSelection::SemiSymmetricMetric,
        (_, ConnectionArg::Ssnm) => ConnectionSelection::SemiSymmetricNonMetric,
    };
    let cfg = RunConfig {
        example,
        connection,
        points: a.points,
        planes: a.planes,
        seed: a.seed,
        tol: a.tol,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let Command::Verify(args) = cli.command;
    let cfg = match config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    print!("{}", report.to_text());
    if let Some(path) = &args.json {
        let written = emit_json(&report).and_then(|bytes| {
            std::fs::write(path, bytes).map_err(|e| GeometryError::InvalidConfig(format!("{}: {e}", path.display())))
        });
        if let Err(e) = written {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
