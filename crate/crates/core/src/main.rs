use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nongauss::cli::{self, Command, Format, Grid, InputKind, RunConfig};
use nongauss::moments::OpKind;
use nongauss::teleport::XAxis;

#[derive(Parser, Debug)]
#[command(name = "nongauss", version, about = "Figures of merit of photon-subtracted/added two-mode squeezed vacua")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// EPR correlation, variances, sum squeezing and entropy per r.
    Metrics,
    /// Teleportation fidelity along r (or a solved EPR / entropy axis).
    Fidelity,
    /// Metrics and fidelities over an r range.
    Sweep,
    /// Fixed-EPR comparison against the printed reference values.
    Table1,
    /// Dataset for one figure panel.
    Figure,
    /// Identity and oracle-equivalence suite (exit status 2 on failure).
    Verify,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum KindArg {
    Ps,
    Pa,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum InputArg {
    Coherent,
    Squeezed,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum AxisArg {
    R,
    Epr,
    Entropy,
}

#[derive(clap::Args, Debug)]
struct Opts {
    #[arg(long, value_enum, default_value = "ps", global = true)]
    kind: KindArg,
    #[arg(long, default_value_t = 0, global = true)]
    k: u32,
    #[arg(long, default_value_t = 0, global = true)]
    l: u32,
    /// Single squeezing value.
    #[arg(long, global = true, conflicts_with = "r_range", allow_negative_numbers = true)]
    r: Option<f64>,
    /// Inclusive range A:B:STEP.
    #[arg(long = "r-range", global = true)]
    r_range: Option<String>,
    #[arg(long, value_enum, default_value = "coherent", global = true)]
    input: InputArg,
    #[arg(long, default_value_t = 0.0, global = true)]
    epsilon: f64,
    /// Input displacement as RE,IM (the fidelity does not depend on it).
    #[arg(long, global = true, value_parser = parse_beta, allow_negative_numbers = true)]
    beta: Option<[f64; 2]>,
    /// Meaning of the grid values for the fidelity command.
    #[arg(long = "x-axis", value_enum, default_value = "r", global = true)]
    x_axis: AxisArg,
    #[arg(long, global = true)]
    figure: Option<String>,
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: FormatArg,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long = "tail-tol", default_value_t = nongauss::states::DEFAULT_TAIL_TOL, global = true)]
    tail_tol: f64,
    /// Replace every verify tolerance by this value.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Verify on a reduced quadrature grid.
    #[arg(long, global = true)]
    quick: bool,
    /// Write the Fock amplitudes of the first grid point here (metrics).
    #[arg(long = "state-out", global = true)]
    state_out: Option<PathBuf>,
}

fn parse_beta(s: &str) -> Result<[f64; 2], String> {
    let (a, b) = s.split_once(',').ok_or("expected RE,IM")?;
    let p = |t: &str| t.trim().parse::<f64>().map_err(|e| e.to_string());
    Ok([p(a)?, p(b)?])
}

fn config(cli: &Cli) -> nongauss::Result<RunConfig> {
    let o = &cli.opts;
    let mut cfg = RunConfig::new(match cli.command {
        Cmd::Metrics => Command::Metrics,
        Cmd::Fidelity => Command::Fidelity,
        Cmd::Sweep => Command::Sweep,
        Cmd::Table1 => Command::Table1,
        Cmd::Figure => Command::Figure,
        Cmd::Verify => Command::Verify,
    });
    cfg.kind = match o.kind {
        KindArg::Ps => OpKind::Subtract,
        KindArg::Pa => OpKind::Add,
    };
    cfg.k = o.k;
    cfg.l = o.l;
    cfg.r = match (&o.r, &o.r_range) {
        (Some(r), _) => Some(Grid::Single(*r)),
        (None, Some(s)) => Some(Grid::parse_range(s)?),
        (None, None) => None,
    };
    cfg.input = match o.input {
        InputArg::Coherent => InputKind::Coherent,
        InputArg::Squeezed => InputKind::Squeezed,
    };
    cfg.epsilon = o.epsilon;
    cfg.beta = o.beta.unwrap_or([0.0, 0.0]);
    cfg.x_axis = match o.x_axis {
        AxisArg::R => XAxis::Squeezing,
        AxisArg::Epr => XAxis::Epr,
        AxisArg::Entropy => XAxis::Entropy,
    };
    cfg.figure = o.figure.clone();
    cfg.format = match o.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    cfg.out = o.out.clone();
    cfg.tail_tol = o.tail_tol;
    cfg.tolerance = o.tolerance;
    cfg.quick = o.quick;
    cfg.state_out = o.state_out.clone();
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = config(&cli).and_then(|cfg| {
        let out = cli::run(&cfg)?;
        cli::emit(&cfg, &out.table)?;
        Ok(out.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
