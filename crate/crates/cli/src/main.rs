use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use modone_cli::{run_experiment, Artifact, CliError, CliResult, Config, Format};

/// Local statistics of sequences modulo one.
///
/// Exit status: 0 success, 1 usage error, 2 reference mismatch, 3 resource limit.
#[derive(Parser)]
#[command(name = "modone", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Master seed for every random stream.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Gap histogram of {√(m√2)} at 12 significant digits, checked against the reference outliers.
    ReproMaple {
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Run an experiment file of `key = value` lines.
    Run {
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Nearest-neighbour gap histogram against e^{-s}.
    Gaps {
        /// malpha, sqrt-malpha, iid or worksheet.
        #[arg(long)]
        generator: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        bin_width: Option<String>,
        #[arg(long)]
        num_bins: Option<String>,
        /// open-chain or circular.
        #[arg(long)]
        convention: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Empirical window-count law E_N(k, L).
    Ekl {
        #[arg(long)]
        generator: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        n: Option<String>,
        #[arg(long = "L")]
        scaled_length: Option<String>,
        #[arg(long)]
        samples: Option<String>,
        #[arg(long)]
        k_max: Option<String>,
        /// Fix the window centre and draw only α.
        #[arg(long)]
        x0: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Haar Monte-Carlo estimate of the limiting law E(k, L).
    Oracle {
        /// rectangle or triangle.
        #[arg(long)]
        psi: Option<String>,
        #[arg(long = "L")]
        scaled_length: Option<String>,
        #[arg(long)]
        samples: Option<String>,
        #[arg(long)]
        k_max: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Diophantine profile, counting-bound calibration and singular average.
    Dioph {
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        q_max: Option<String>,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        samples: Option<String>,
        #[arg(long)]
        constant: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        average_n: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

fn build(command: Command) -> CliResult<(Config, Common)> {
    let mut cfg = Config::default();
    let put = |cfg: &mut Config, key: &str, v: Option<String>| -> CliResult<()> {
        match v {
            Some(v) => cfg.set(key, v),
            None => Ok(()),
        }
    };
    let common = match command {
        Command::ReproMaple { n, common } => {
            cfg.set("experiment", "repro-maple")?;
            put(&mut cfg, "n", n.map(|n| n.to_string()))?;
            common
        }
        Command::Run { config, common } => {
            let text = std::fs::read_to_string(&config).map_err(|source| CliError::Io {
                path: config.display().to_string(),
                source,
            })?;
            cfg = Config::parse(&text)?;
            common
        }
        Command::Gaps { generator, alpha, n, bin_width, num_bins, convention, common } => {
            cfg.set("experiment", "gaps")?;
            put(&mut cfg, "generator", generator)?;
            put(&mut cfg, "alpha", alpha)?;
            put(&mut cfg, "n", n)?;
            put(&mut cfg, "bin_width", bin_width)?;
            put(&mut cfg, "num_bins", num_bins)?;
            put(&mut cfg, "convention", convention)?;
            common
        }
        Command::Ekl { generator, alpha, n, scaled_length, samples, k_max, x0, common } => {
            let fixed = x0.is_some();
            cfg.set("experiment", if fixed { "fixed-center" } else { "ekl-empirical" })?;
            if fixed && generator.as_deref().is_some_and(|g| g != "malpha") {
                return Err(CliError::Usage("--x0 applies to the malpha generator only".into()));
            }
            if !fixed {
                put(&mut cfg, "generator", generator)?;
            }
            put(&mut cfg, "alpha", alpha)?;
            put(&mut cfg, "n", n)?;
            put(&mut cfg, "L", scaled_length)?;
            put(&mut cfg, "samples", samples)?;
            put(&mut cfg, "k_max", k_max)?;
            put(&mut cfg, "x0", x0)?;
            common
        }
        Command::Oracle { psi, scaled_length, samples, k_max, common } => {
            cfg.set("experiment", "ekl-oracle")?;
            put(&mut cfg, "psi", psi)?;
            put(&mut cfg, "L", scaled_length)?;
            put(&mut cfg, "samples", samples)?;
            put(&mut cfg, "k_max", k_max)?;
            common
        }
        Command::Dioph { alpha, q_max, n, samples, constant, beta, average_n, common } => {
            cfg.set("experiment", "dioph")?;
            put(&mut cfg, "alpha", alpha)?;
            put(&mut cfg, "q_max", q_max)?;
            put(&mut cfg, "n", n)?;
            put(&mut cfg, "samples", samples)?;
            put(&mut cfg, "constant", constant)?;
            put(&mut cfg, "beta", beta)?;
            put(&mut cfg, "average_n", average_n)?;
            common
        }
    };
    if let Some(seed) = common.seed {
        cfg.set("seed", seed.to_string())?;
    }
    Ok((cfg, common))
}

fn emit(artifact: &Artifact, cfg: &Config, common: &Common) -> CliResult<()> {
    let format = match (common.format, cfg.raw("format")) {
        (Some(f), _) => f,
        (None, None | Some("csv")) => Format::Csv,
        (None, Some("json")) => Format::Json,
        (None, Some(other)) => return Err(CliError::Usage(format!("unknown format `{other}`"))),
    };
    let dir = common.out.clone().or_else(|| cfg.raw("out_dir").map(PathBuf::from));
    match dir {
        Some(dir) => {
            for path in artifact.write(&dir, format)? {
                println!("{}", path.display());
            }
        }
        None => print!("{}", artifact.render(format)),
    }
    Ok(())
}

fn execute(command: Command) -> CliResult<bool> {
    let (mut cfg, common) = build(command)?;
    let artifact = run_experiment(&mut cfg)?;
    emit(&artifact, &cfg, &common)?;
    if let Some(lines) = &artifact.mismatch {
        eprintln!("{}: output differs from the reference", artifact.experiment);
        for l in lines {
            eprintln!("  {l}");
        }
        return Ok(false);
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
