//! `spincouple`: compile, simulate and verify heralded angular momentum eigenstates.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 I/O error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use spin_coupling::compiler::compile_setup;
use spin_coupling::optics::{export_dot, parse_setup, serialize_setup, validate_setup, OpticalSetup};
use spin_coupling::simulator::{simulate, success_probability_of};
use spin_coupling::spin::{enumerate_coupled_basis, CoupledLabel};
use spin_coupling::state::bitstring;
use spin_coupling::verify::{sweep_basis_with_tolerance, verify_label_with_tolerance, VerificationReport};

#[derive(Parser)]
#[command(name = "spincouple", version, about = "Heralded total angular momentum eigenstates from linear optics")]
struct Cli {
    /// Per-amplitude tolerance for exact-match comparisons.
    #[arg(long, global = true, env = "SPINCOUPLE_TOLERANCE", default_value_t = 1e-10)]
    tolerance: f64,

    /// Emit JSON instead of human-readable tables.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the 2^N coupled-basis labels.
    Basis { n: usize },
    /// Compile a label (e.g. `1/2,1,1/2;1/2` or `d:1,2,1;1`) into a setup document.
    Compile {
        label: String,
        /// Write the setup document here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also print the compiler trace (JSON) to stdout.
        #[arg(long)]
        trace: bool,
    },
    /// Simulate the post-selected detection event for a setup document.
    Simulate {
        file: PathBuf,
        /// Per-photon detection efficiency in (0, 1].
        #[arg(long, default_value_t = 1.0)]
        efficiency: f64,
    },
    /// Compile, simulate and compare one label with its Clebsch-Gordan reference.
    Verify { label: String },
    /// Verify every label of an N-qubit basis.
    Sweep {
        n: usize,
        /// Also write the CSV report to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Render a label's compiled setup, or a setup document, as Graphviz DOT.
    Graph { target: String },
}

enum Failure {
    Verification,
    Input(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification => 1,
            Failure::Input(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

fn input<E: ToString>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn parse_label(s: &str) -> Result<CoupledLabel, Failure> {
    s.parse::<CoupledLabel>().map_err(|e| Failure::Input(format!("invalid label `{s}`: {e}")))
}

fn read_setup(path: &Path) -> Result<OpticalSetup, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let setup = parse_setup(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let diagnostics = validate_setup(&setup);
    if !diagnostics.is_empty() {
        let list: Vec<String> = diagnostics.iter().map(ToString::to_string).collect();
        return Err(Failure::Input(format!("{}: invalid setup: {}", path.display(), list.join("; "))));
    }
    Ok(setup)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn report_text(r: &VerificationReport) -> String {
    format!(
        "label            {}\nfidelity         {:.12}\nexact_match      {}\nsuccess_prob     {:.12e} (model convention)\nnull_projection  {}\n",
        r.label, r.fidelity, r.exact_match, r.success_probability, r.null_projection
    )
}

fn run(cli: Cli) -> Result<String, (Failure, String)> {
    let no_output = |f: Failure| (f, String::new());
    let tol = cli.tolerance;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(no_output(Failure::Input(format!("tolerance must be positive, got {tol}"))));
    }
    match cli.command {
        Command::Basis { n } => {
            let labels = enumerate_coupled_basis(n).map_err(|e| no_output(input(e)))?;
            if cli.json {
                let names: Vec<String> = labels.iter().map(ToString::to_string).collect();
                Ok(serde_json::to_string_pretty(&names).unwrap() + "\n")
            } else {
                Ok(labels.iter().map(|l| format!("{l}\n")).collect())
            }
        }
        Command::Compile { label, output, trace } => {
            let label = parse_label(&label).map_err(no_output)?;
            let (setup, compiler_trace) = compile_setup(&label).map_err(|e| no_output(input(e)))?;
            let doc = serialize_setup(&setup);
            let mut out = String::new();
            match output {
                Some(path) => write_file(&path, &doc).map_err(no_output)?,
                None => out.push_str(&doc),
            }
            if trace {
                out.push_str(&compiler_trace.to_json());
            }
            Ok(out)
        }
        Command::Simulate { file, efficiency } => {
            let setup = read_setup(&file).map_err(no_output)?;
            let sim = simulate(&setup).map_err(|e| no_output(input(e)))?;
            let p = success_probability_of(&sim.projection, &setup, efficiency).map_err(|e| no_output(input(e)))?;
            if cli.json {
                let n = setup.n();
                let entries = |get: &dyn Fn(usize) -> (f64, f64)| -> Vec<serde_json::Value> {
                    (0..1usize << n)
                        .filter_map(|b| {
                            let (re, im) = get(b);
                            (re != 0.0 || im != 0.0).then(|| json!({ "bits": bitstring(b, n), "re": re, "im": im }))
                        })
                        .collect()
                };
                let doc = json!({
                    "n": n,
                    "exact": sim.projection.is_exact(),
                    "projection": entries(&|b| { let c = sim.projection.get(b); (c.re, c.im) }),
                    "state": entries(&|b| { let a = sim.state.amplitudes()[b]; (a.re, a.im) }),
                    "null_postselection": sim.null_postselection,
                    "efficiency": efficiency,
                    "success_probability": p,
                    "probability_convention": "model: 1/sqrt(2) per decay channel, 1/sqrt(deg) per fiber",
                });
                Ok(serde_json::to_string_pretty(&doc).unwrap() + "\n")
            } else {
                let mut out = String::new();
                out.push_str("# projection (unnormalized)\n");
                out.push_str(&sim.projection.to_text());
                out.push_str("# state (normalized)\n");
                out.push_str(&sim.state.to_text(0.0));
                let _ = writeln!(out, "# null_postselection {}", sim.null_postselection);
                let _ = writeln!(out, "# success_probability {p:.12e} (model convention, efficiency {efficiency})");
                Ok(out)
            }
        }
        Command::Verify { label } => {
            let label = parse_label(&label).map_err(no_output)?;
            let report = verify_label_with_tolerance(&label, tol).map_err(|e| no_output(input(e)))?;
            let out = if cli.json {
                serde_json::to_string_pretty(&report.to_json_value()).unwrap() + "\n"
            } else {
                report_text(&report)
            };
            if report.exact_match {
                Ok(out)
            } else {
                Err((Failure::Verification, out))
            }
        }
        Command::Sweep { n, csv } => {
            let sweep = sweep_basis_with_tolerance(n, tol).map_err(|e| no_output(input(e)))?;
            if let Some(path) = csv {
                let text = sweep.to_csv().map_err(|e| no_output(Failure::Io(e.to_string())))?;
                write_file(&path, &text).map_err(no_output)?;
            }
            let out = if cli.json {
                sweep.to_json()
            } else {
                let mut out = format!(
                    "{:<28} {:>5} {:>16} {:>20} {:>6} {:>5}\n",
                    "label", "2m", "fidelity", "success_prob", "exact", "null"
                );
                for r in &sweep.reports {
                    let _ = writeln!(
                        out,
                        "{:<28} {:>5} {:>16.12} {:>20.12e} {:>6} {:>5}",
                        r.label.to_string(),
                        r.label.m().twice(),
                        r.fidelity,
                        r.success_probability,
                        r.exact_match,
                        r.null_projection
                    );
                }
                let s = &sweep.summary;
                let _ = writeln!(
                    out,
                    "# {} / {} exact, min fidelity {:.12}, success probability {:.6e} .. {:.6e} (model convention)",
                    s.exact_matches, s.labels, s.min_fidelity, s.min_success_probability, s.max_success_probability
                );
                out
            };
            if sweep.summary.all_exact() {
                Ok(out)
            } else {
                Err((Failure::Verification, out))
            }
        }
        Command::Graph { target } => {
            let path = Path::new(&target);
            let setup = if path.is_file() {
                read_setup(path).map_err(no_output)?
            } else {
                let label = parse_label(&target).map_err(no_output)?;
                compile_setup(&label).map_err(|e| no_output(input(e)))?.0
            };
            Ok(export_dot(&setup))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err((failure, out)) => {
            print!("{out}");
            match &failure {
                Failure::Verification => eprintln!("error: verification failed"),
                Failure::Input(msg) | Failure::Io(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(failure.code())
        }
    }
}
