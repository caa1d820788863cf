use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dyncomp::cli::{
    cmd_compile, cmd_emit, cmd_hamdemo, cmd_run, cmd_verify, CliError, Format, RunInput, Workspace,
};

#[derive(Parser)]
#[command(
    name = "dyncomp",
    version,
    about = "Computable functions as dynamical systems: machines, shifts, Cantor block maps, thickened graphs",
    after_help = "Environment: DYNCOMP_FUEL and DYNCOMP_SEED override the defaults of --fuel and --seed.\nExit codes: 0 success, 1 verification failure, 2 usage or parse error."
)]
struct Cli {
    /// Step budget for anything that could diverge
    #[arg(long, global = true)]
    fuel: Option<u64>,
    /// Seed for the randomized suites
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Structured JSON artifacts instead of the line formats
    #[arg(long, global = true)]
    json: bool,
    /// Output directory for written artifacts
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Translate an artifact forward along murec -> flowchart -> tm -> gshift -> blockmap
    Compile {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        input: PathBuf,
    },
    /// Run a machine, program, shift orbit or reaching walk
    Run {
        /// tm | murec | gshift | bordism
        #[arg(long)]
        model: String,
        path: PathBuf,
        /// Single natural input (or orbit step count for gshift)
        #[arg(long)]
        input: Option<u64>,
        /// Comma separated argument list
        #[arg(long, value_delimiter = ',')]
        args: Option<Vec<u64>>,
        /// Word literal like '...0 | 101...' for shift orbits
        #[arg(long)]
        word: Option<String>,
        /// unary | pair | binary input layout for machines
        #[arg(long)]
        codec: Option<String>,
        /// Thicken irreversible machines anyway
        #[arg(long)]
        allow_irreversible: bool,
    },
    /// Run a verification suite; nonzero exit on failure
    Verify {
        /// conjugacy-tm-gshift | conjugacy-gshift-blockmap | volume | betti | oracle-murec | lenc
        suite: String,
        /// Check this block map file instead of the generated corpus (volume only)
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Emit DOT, SVG or CSV derived artifacts
    Emit {
        /// graph-dot | blocks-svg | trace-csv | conjecture-csv
        kind: String,
        input: PathBuf,
        /// unary | pair | binary input layout for machine-backed emitters
        #[arg(long)]
        codec: Option<String>,
        /// Upper end of the input range for the CSV emitters
        #[arg(long)]
        range: Option<u64>,
        /// Thicken irreversible machines anyway
        #[arg(long)]
        allow_irreversible: bool,
    },
    /// Check the cotangent-lift construction numerically
    Hamdemo {
        /// rotation | cubic | zero
        #[arg(long, default_value = "rotation")]
        field: String,
        /// Start point, comma separated
        #[arg(long, value_delimiter = ',', default_value = "1.0,0.0")]
        q0: Vec<f64>,
        /// Integration horizon
        #[arg(long, default_value_t = 1.0)]
        horizon: f64,
        /// Step size
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
    },
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let ws = Workspace::new(cli.fuel, cli.seed, cli.json, cli.out);
    match cli.cmd {
        Cmd::Compile { from, to, input } => {
            let from = Format::parse(&from)?;
            let to = Format::parse(&to)?;
            let (path, summary) = cmd_compile(&ws, from, to, &input)?;
            println!("wrote {}", path.display());
            println!("{summary}");
            Ok(())
        }
        Cmd::Run {
            model,
            path,
            input,
            args,
            word,
            codec,
            allow_irreversible,
        } => {
            let run_input = RunInput {
                natural: input,
                args,
                word,
                codec,
                allow_irreversible,
            };
            let (text, _) = cmd_run(&ws, &model, &path, &run_input)?;
            print!("{text}");
            Ok(())
        }
        Cmd::Verify { suite, file } => {
            println!("seed {} fuel {}", ws.seed, ws.fuel);
            let report = cmd_verify(&ws, &suite, file.as_deref())?;
            print!("{}", report.render());
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Verification)
            }
        }
        Cmd::Emit {
            kind,
            input,
            codec,
            range,
            allow_irreversible,
        } => {
            let run_input = RunInput {
                codec,
                allow_irreversible,
                ..Default::default()
            };
            let (path, summary) = cmd_emit(&ws, &kind, &input, &run_input, range)?;
            println!("wrote {}", path.display());
            println!("{summary}");
            Ok(())
        }
        Cmd::Hamdemo {
            field,
            q0,
            horizon,
            step,
        } => {
            let (text, csv) = cmd_hamdemo(&ws, &field, &q0, horizon, step)?;
            print!("{text}");
            println!("wrote {}", csv.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Verification) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
