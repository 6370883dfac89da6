use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use rodier::cache::Cache;
use rodier::error::CliError;
use rodier::pipeline::with_decomposition;
use rodier::report::{Envelope, Timing};
use rodier::spec::ProblemSpec;
use rodier::verify::{verify, VerifyOptions};
use rodier::dot;
use rodier_core::cartan::DEFAULT_ENUMERATION_CAP;
use rodier_core::{CartanType, Family};

/// Decompose regular generalized principal series of split reductive groups
/// into irreducible constituents.
#[derive(Parser)]
#[command(name = "rodier", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose the representation described by a problem spec (`-` reads stdin).
    Decompose {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Leave timing out of the report, making the output reproducible.
        #[arg(long)]
        no_timing: bool,
    },
    /// Sweep every Levi of every type up to a rank, checking invariants and
    /// stress-testing wall independence.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        /// Comma-separated family letters, e.g. `A,D`.
        #[arg(long, value_delimiter = ',', default_value = "A,B,C,D,E,F,G")]
        families: Vec<String>,
        /// Stress-test draws per Levi.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        no_timing: bool,
    },
    /// Manage the Weyl group cache (`$RODIER_CACHE_DIR`, else `./.rodier-cache`).
    #[command(group(ArgGroup::new("action").required(true).args(["rebuild", "clear", "stat"])))]
    Cache {
        /// Regenerate the entry for a type, e.g. `F4`.
        #[arg(long, value_name = "TYPE")]
        rebuild: Option<String>,
        #[arg(long)]
        clear: bool,
        #[arg(long)]
        stat: bool,
    },
}

fn read_spec(path: &PathBuf) -> Result<ProblemSpec, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
    };
    ProblemSpec::parse(&text)
}

fn decompose(spec: &PathBuf, format: Format, no_timing: bool) -> Result<String, CliError> {
    let start = Instant::now();
    let spec = read_spec(spec)?;
    let cache = Cache::from_env();
    with_decomposition(&spec, &cache, |ctx| {
        if let Format::Dot = format {
            return dot::chamber_graph(ctx);
        }
        let mut env = Envelope::build(ctx);
        if !no_timing {
            env.timing = Some(Timing {
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            });
        }
        match format {
            Format::Text => env.to_text(),
            _ => env.to_json(),
        }
    })
}

fn run(cli: Cli) -> Result<(String, i32), CliError> {
    match cli.command {
        Command::Decompose {
            spec,
            format,
            no_timing,
        } => Ok((decompose(&spec, format, no_timing)?, 0)),
        Command::Verify {
            max_rank,
            families,
            trials,
            seed,
            no_timing,
        } => {
            let families = families
                .iter()
                .map(|f| {
                    let mut chars = f.trim().chars();
                    match (chars.next().and_then(Family::from_letter), chars.next()) {
                        (Some(f), None) => Ok(f),
                        _ => Err(CliError::Spec(format!("unknown family {f:?}"))),
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            let opts = VerifyOptions {
                max_rank,
                families,
                trials,
                seed,
                cap: DEFAULT_ENUMERATION_CAP,
                timing: !no_timing,
            };
            let report = verify(&opts, &Cache::from_env())?;
            if let Some(c) = &report.first_counterexample {
                eprintln!(
                    "verification failed on {} θ = {:?}: {}",
                    c.cartan,
                    c.theta,
                    serde_json::to_string(c).expect("counterexample serializes")
                );
            }
            let code = if report.passed { 0 } else { 1 };
            Ok((report.to_json(), code))
        }
        Command::Cache { rebuild, clear, stat } => {
            let cache = Cache::from_env();
            let mut out = String::new();
            if let Some(t) = rebuild {
                let t: CartanType = t.parse()?;
                let e = cache.rebuild(t, DEFAULT_ENUMERATION_CAP)?;
                out += &format!("rebuilt {}: {} elements, {} bytes\n", e.cartan, e.elements, e.bytes);
            }
            if clear {
                let n = cache.clear()?;
                out += &format!("removed {n} cache file(s) from {}\n", cache.dir().display());
            }
            if stat {
                let entries = cache.stat()?;
                out += &format!("cache directory {}\n", cache.dir().display());
                for e in entries {
                    let status = if e.valid { "ok" } else { "corrupt" };
                    out += &format!(
                        "{:<4} {:>8} elements {:>10} bytes  sha256 {}  {status}\n",
                        e.cartan, e.elements, e.bytes, e.checksum
                    );
                }
            }
            Ok((out, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            let mut stdout = io::stdout().lock();
            if let Err(e) = stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()) {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
