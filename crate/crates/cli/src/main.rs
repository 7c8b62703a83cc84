//! `bellgame`: classical, quantum, and no-signaling analysis of two-player
//! Bayesian games.
//!
//! Games are loaded from a file path or one of the bundled names
//! (`example1`, `example2`, `example3`). Exit codes: 0 on success, 2 on
//! parse or validation errors, 3 on resource-limit errors.

use bellgame_core::bell::{combine_payoffs, payoff_to_bell};
use bellgame_core::classical::{classical_payoff_polytope, local_bound};
use bellgame_core::error::Error as CoreError;
use bellgame_core::game::{Game, Player};
use bellgame_core::nosignaling::ns_maximize;
use bellgame_core::report::{
    emit_plot_data, report_to_json, run_analysis, AnalysisOptions, EquilibriumCandidate,
};
use bellgame_core::{format, games, tolerances};
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bellgame", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOptions {
    /// Game file path or bundled name (example1, example2, example3).
    game: String,

    /// Seed for all randomized stages; printed in every report.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// See-saw restarts per maximization.
    #[arg(long, default_value_t = tolerances::DEFAULT_RESTARTS)]
    restarts: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis: bounds, polytope, boundary sweep, equilibria; JSON out.
    Analyze {
        #[command(flatten)]
        common: CommonOptions,

        /// Directions for the quantum boundary sweep.
        #[arg(long, default_value_t = 32)]
        directions: usize,

        /// Extra payoff combination to bound, as `b1,b2`; repeatable.
        #[arg(long, value_parser = parse_beta)]
        beta: Vec<[f64; 2]>,

        /// Equilibrium candidates to certify; repeatable.
        #[arg(long, value_enum)]
        candidate: Vec<CandidateArg>,

        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Classical, quantum, and no-signaling bounds for the payoffs and any
    /// requested combinations.
    Bounds {
        #[command(flatten)]
        common: CommonOptions,

        #[arg(long, value_parser = parse_beta)]
        beta: Vec<[f64; 2]>,
    },

    /// Classical payoff polytope: hull vertices and facet inequalities.
    Polytope {
        /// Game file path or bundled name.
        game: String,

        /// Write vertices as CSV here instead of printing a summary.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Certify equilibrium candidates under their advice classes.
    Equilibrium {
        #[command(flatten)]
        common: CommonOptions,

        #[arg(long, value_enum)]
        candidate: Vec<CandidateArg>,

        /// Deviation-gain tolerance for the quantum checks.
        #[arg(long, default_value_t = tolerances::EQUILIBRIUM_QUANTUM)]
        epsilon: f64,
    },

    /// Emit CSV plot data (hull, quantum boundary, special points).
    PlotData {
        #[command(flatten)]
        common: CommonOptions,

        #[arg(long, default_value_t = 32)]
        directions: usize,

        /// Directory for hull.csv, quantum_boundary.csv, special_points.csv;
        /// prints all three to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::ValueEnum, Clone, Copy)]
enum CandidateArg {
    PrBox,
    ChshOptimal,
    BestQuantum,
    BestClassical,
}

impl From<CandidateArg> for EquilibriumCandidate {
    fn from(c: CandidateArg) -> Self {
        match c {
            CandidateArg::PrBox => EquilibriumCandidate::PrBox,
            CandidateArg::ChshOptimal => EquilibriumCandidate::ChshOptimal,
            CandidateArg::BestQuantum => EquilibriumCandidate::BestQuantum,
            CandidateArg::BestClassical => EquilibriumCandidate::BestClassical,
        }
    }
}

fn parse_beta(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected `b1,b2`, got `{s}`"));
    }
    let b1 = parts[0].trim().parse::<f64>().map_err(|e| e.to_string())?;
    let b2 = parts[1].trim().parse::<f64>().map_err(|e| e.to_string())?;
    Ok([b1, b2])
}

fn load_game(spec: &str) -> Result<Game, CoreError> {
    let text = match games::bundled(spec) {
        Some(bundled) => bundled.to_string(),
        None => std::fs::read_to_string(Path::new(spec)).map_err(|e| CoreError::Parse {
            line: 0,
            column: 0,
            message: format!("cannot read `{spec}`: {e}"),
        })?,
    };
    format::parse_game(&text)
}

fn exit_code_for(err: &CoreError) -> u8 {
    match err {
        CoreError::Parse { .. } | CoreError::InvalidGame(_) => 2,
        CoreError::ResourceLimit { .. } => 3,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<(), CoreError> {
    match cli.command {
        Command::Analyze {
            common,
            directions,
            beta,
            candidate,
            out,
        } => {
            let game = load_game(&common.game)?;
            let options = AnalysisOptions {
                seed: common.seed,
                restarts: common.restarts,
                directions,
                betas: if beta.is_empty() {
                    vec![[1.0, 1.0]]
                } else {
                    beta
                },
                equilibrium_candidates: if candidate.is_empty() {
                    default_candidates(&game)
                } else {
                    candidate.into_iter().map(Into::into).collect()
                },
                ..AnalysisOptions::default()
            };
            let report = run_analysis(&game, &options)?;
            let json = report_to_json(&report);
            match out {
                Some(path) => std::fs::write(&path, json).map_err(io_err)?,
                None => println!("{json}"),
            }
            Ok(())
        }
        Command::Bounds { common, beta } => {
            let game = load_game(&common.game)?;
            let mut targets: Vec<(String, bellgame_core::BellExpression)> = vec![
                ("F1".to_string(), payoff_to_bell(&game, Player::One)),
                ("F2".to_string(), payoff_to_bell(&game, Player::Two)),
            ];
            for b in beta {
                targets.push((
                    format!("{}*F1 + {}*F2", b[0], b[1]),
                    combine_payoffs(&game, b),
                ));
            }
            println!("game: {}", game.label());
            println!("seed: {}", common.seed);
            for (name, e) in targets {
                let (classical, _) = local_bound(&e)?;
                let quantum = if game.is_binary() {
                    Some(bellgame_core::seesaw_maximize(&e, common.restarts, common.seed)?.value)
                } else {
                    None
                };
                let (ns, _) = ns_maximize(&e)?;
                match quantum {
                    Some(q) => println!(
                        "{name}: classical {classical:.12}, quantum {q:.12}, no-signaling {ns:.12}"
                    ),
                    None => println!(
                        "{name}: classical {classical:.12}, quantum skipped (non-binary), no-signaling {ns:.12}"
                    ),
                }
            }
            Ok(())
        }
        Command::Polytope { game, out } => {
            let game = load_game(&game)?;
            let polytope = classical_payoff_polytope(&game)?;
            match out {
                Some(path) => {
                    let mut csv = String::from("f1,f2\n");
                    for v in &polytope.vertices {
                        csv.push_str(&format!("{:.16e},{:.16e}\n", v.f1, v.f2));
                    }
                    std::fs::write(&path, csv).map_err(io_err)?;
                }
                None => {
                    println!("game: {}", game.label());
                    println!("vertices ({}):", polytope.vertices.len());
                    for v in &polytope.vertices {
                        println!("  ({:.12}, {:.12})", v.f1, v.f2);
                    }
                    println!("facets ({}):", polytope.facets.len());
                    for f in &polytope.facets {
                        println!(
                            "  {:+.12}*F1 {:+.12}*F2 <= {:.12}",
                            f.beta[0], f.beta[1], f.beta0
                        );
                    }
                }
            }
            Ok(())
        }
        Command::Equilibrium {
            common,
            candidate,
            epsilon,
        } => {
            let game = load_game(&common.game)?;
            let candidates = if candidate.is_empty() {
                default_candidates(&game)
            } else {
                candidate.into_iter().map(Into::into).collect()
            };
            let options = AnalysisOptions {
                seed: common.seed,
                restarts: common.restarts,
                directions: 0,
                betas: vec![],
                equilibrium_candidates: candidates,
                epsilon_quantum: epsilon,
                ..AnalysisOptions::default()
            };
            let report = run_analysis(&game, &options)?;
            println!("game: {}", game.label());
            println!("seed: {}", common.seed);
            for entry in &report.equilibria {
                let r = &entry.report;
                println!(
                    "{:?} ({:?}): incumbent ({:.9}, {:.9}), gains ({:.3e}, {:.3e}), epsilon {:.1e} -> {}",
                    entry.candidate,
                    r.advice_class,
                    r.incumbent.f1,
                    r.incumbent.f2,
                    r.gains[0],
                    r.gains[1],
                    r.epsilon,
                    if r.is_equilibrium {
                        "equilibrium"
                    } else {
                        "not an equilibrium"
                    }
                );
            }
            for note in &report.skipped {
                println!("skipped: {note}");
            }
            Ok(())
        }
        Command::PlotData {
            common,
            directions,
            out,
        } => {
            let game = load_game(&common.game)?;
            let options = AnalysisOptions {
                seed: common.seed,
                restarts: common.restarts,
                directions,
                equilibrium_candidates: vec![],
                ..AnalysisOptions::default()
            };
            let report = run_analysis(&game, &options)?;
            let plot = emit_plot_data(&report);
            match out {
                Some(dir) => {
                    std::fs::create_dir_all(&dir).map_err(io_err)?;
                    std::fs::write(dir.join("hull.csv"), &plot.hull).map_err(io_err)?;
                    std::fs::write(dir.join("quantum_boundary.csv"), &plot.quantum_boundary)
                        .map_err(io_err)?;
                    std::fs::write(dir.join("special_points.csv"), &plot.special_points)
                        .map_err(io_err)?;
                }
                None => {
                    println!("# hull.csv");
                    print!("{}", plot.hull);
                    println!("# quantum_boundary.csv");
                    print!("{}", plot.quantum_boundary);
                    println!("# special_points.csv");
                    print!("{}", plot.special_points);
                }
            }
            Ok(())
        }
    }
}

fn default_candidates(game: &Game) -> Vec<EquilibriumCandidate> {
    if game.n_types() == [2, 2] && game.is_binary() {
        vec![
            EquilibriumCandidate::PrBox,
            EquilibriumCandidate::ChshOptimal,
            EquilibriumCandidate::BestQuantum,
            EquilibriumCandidate::BestClassical,
        ]
    } else {
        vec![EquilibriumCandidate::BestClassical]
    }
}

fn io_err(e: std::io::Error) -> CoreError {
    CoreError::Contract(format!("io error: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
