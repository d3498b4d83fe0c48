//! `bgg` — regular and singular BGG complex combinatorics for the
//! Lagrangian Grassmannian, on the command line.
//!
//! Exit codes: 0 on success, 1 when a verification or operator check
//! fails, 2 on usage errors.

use bgg_core::orbit::{Parity, SingularCharacter};
use bgg_core::penrose::{assemble_complex, spectral_first_page};
use bgg_core::render;
use bgg_core::verify::{run_all, Fault};
use bgg_core::weyl::RankCaps;
use bgg_core::{diffop, lsword};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

const MAX_RENDER_RANK: usize = 10;

#[derive(Parser)]
#[command(
    name = "bgg",
    version,
    about = "Hasse diagrams, singular orbits, spectral-sequence first pages and singular BGG complexes for the Lagrangian Grassmannian (type C)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiffopCheck {
    /// Compare the explicit operator with 4 times the operator determinant.
    Identity,
    /// Exact rank of the induced map between graded polynomial pieces.
    Surjectivity,
    /// Print the operator in its sum-of-terms form.
    Print,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the rendering to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// The regular Hasse diagram: words, diagrams, rho-orbit, arrows.
    Hasse {
        #[arg(short = 'n', long)]
        rank: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// A singular orbit with its standard arrows.
    Orbit {
        #[arg(short = 'n', long)]
        rank: usize,
        /// Index of the singular simple root.
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The first page of the transform's spectral sequence.
    Spectral {
        #[arg(short = 'n', long)]
        rank: usize,
        #[arg(long)]
        k: usize,
        /// Print surviving degrees per relative position instead of the grid.
        #[arg(long)]
        degrees_only: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The assembled singular BGG complex with operator orders.
    Complex {
        #[arg(short = 'n', long)]
        rank: usize,
        #[arg(long)]
        k: usize,
        /// Required when k = n (the orbit splits into two complexes).
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the full oracle verification suite.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_rank: usize,
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Checks on the explicit third-order operator of the rank-3 complex.
    Diffop {
        #[arg(long, value_enum)]
        check: DiffopCheck,
        /// Polynomial degree for the surjectivity check (default: 0..=3).
        #[arg(long)]
        degree: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Hasse { rank, output } => {
            if rank == 0 || rank > MAX_RENDER_RANK {
                return Err(format!("rank must be between 1 and {MAX_RENDER_RANK}"));
            }
            let rendering = match output.format {
                Format::Text => render::hasse_text(rank),
                Format::Json => pretty(lsword::regular_hasse(rank).to_json()),
                Format::Dot => lsword::regular_hasse(rank).to_dot("hasse"),
            };
            emit(&output, &rendering)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbit { rank, k, output } => {
            let sc = character(rank, k)?;
            let rendering = match output.format {
                Format::Text => render::orbit_text(&sc),
                Format::Json => pretty(render::orbit_json(&sc)),
                Format::Dot => render::orbit_graph(&sc).to_dot("orbit"),
            };
            emit(&output, &rendering)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Spectral {
            rank,
            k,
            degrees_only,
            output,
        } => {
            let sc = character(rank, k)?;
            let rendering = if degrees_only {
                match output.format {
                    Format::Text => render::spectral_degrees_text(&sc),
                    _ => return Err("--degrees-only supports text output only".to_string()),
                }
            } else {
                let page = spectral_first_page(&sc).map_err(|e| e.to_string())?;
                match output.format {
                    Format::Text => render::spectral_text(&page, &sc),
                    Format::Json => pretty(page.to_json()),
                    Format::Dot => render::spectral_dot(&page),
                }
            };
            emit(&output, &rendering)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Complex {
            rank,
            k,
            parity,
            output,
        } => {
            if rank < 2 {
                return Err("singular complexes need rank >= 2".to_string());
            }
            let sc = character(rank, k)?;
            let cx = assemble_complex(&sc, parity.map(Parity::from)).map_err(|e| e.to_string())?;
            let rendering = match output.format {
                Format::Text => render::complex_text(&cx, &sc),
                Format::Json => pretty(cx.to_json()),
                Format::Dot => cx.graph.to_dot("complex"),
            };
            emit(&output, &rendering)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            max_rank,
            inject_fault,
            output,
        } => {
            if max_rank == 0 {
                return Err("--max-rank must be positive".to_string());
            }
            let fault = match inject_fault {
                None => None,
                Some(name) => {
                    Some(Fault::parse(&name).ok_or_else(|| format!("unknown fault {name:?}"))?)
                }
            };
            let caps = RankCaps::from_env();
            let report = run_all(max_rank, &caps, fault);
            let rendering = match output.format {
                Format::Text => render::verify_text(&report),
                Format::Json => pretty(report.to_json()),
                Format::Dot => return Err("verify has no dot rendering".to_string()),
            };
            emit(&output, &rendering)?;
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Diffop {
            check,
            degree,
            output,
        } => {
            if output.format != Format::Text {
                return Err("diffop reports are text only".to_string());
            }
            let (rendering, ok) = diffop_report(check, degree)?;
            emit(&output, &rendering)?;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn character(rank: usize, k: usize) -> Result<SingularCharacter, String> {
    if rank == 0 || rank > MAX_RENDER_RANK {
        return Err(format!("rank must be between 1 and {MAX_RENDER_RANK}"));
    }
    SingularCharacter::minimal(rank, k).map_err(|e| e.to_string())
}

fn diffop_report(check: DiffopCheck, degree: Option<u32>) -> Result<(String, bool), String> {
    let d = diffop::operator_d();
    let mut out = String::new();
    let mut ok = true;
    match check {
        DiffopCheck::Print => {
            out.push_str(&format!("D = {d}\n"));
            out.push_str(&format!("order: {}\n", d.order()));
        }
        DiffopCheck::Identity => {
            let det = diffop::det_operator(3).map_err(|e| e.to_string())?;
            let scaled = det.scale(&bgg_core::Rational::from_integer(4.into()));
            if scaled == d {
                out.push_str("4*det = D: PASS\n");
            } else {
                ok = false;
                out.push_str("4*det = D: FAIL\n");
                out.push_str(&format!("4*det = {scaled}\n    D = {d}\n"));
            }
        }
        DiffopCheck::Surjectivity => {
            let degrees: Vec<u32> = match degree {
                Some(deg) => vec![deg],
                None => (0..=3).collect(),
            };
            for deg in degrees {
                let (rank, dim) = diffop::surjectivity_rank(&d, deg).map_err(|e| e.to_string())?;
                let verdict = if rank == dim {
                    "full rank"
                } else {
                    "RANK DEFICIENT"
                };
                if rank != dim {
                    ok = false;
                }
                out.push_str(&format!(
                    "degree {deg}: rank {rank} / target {dim} ({verdict})\n"
                ));
            }
        }
    }
    Ok((out, ok))
}

fn pretty(value: serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(&value).expect("renderable JSON");
    text.push('\n');
    text
}

fn emit(output: &OutputArgs, rendering: &str) -> Result<(), String> {
    match &output.out {
        None => {
            print!("{rendering}");
            Ok(())
        }
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
            file.write_all(rendering.as_bytes())
                .map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
    }
}
