//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain-level negative (no equilibrium, failed
//! hypotheses, profile rejected), 2 usage, parse or input error.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use choiceform_core::analysis::{check_theorem_hypotheses, Aux, GridTopology, HypothesisParams, Variant, DEFAULT_BUDGET, DEFAULT_K_MAX};
use choiceform_core::generate::{derive_aux, interval_game, IntervalGameConfig};
use choiceform_core::solver::{check_tolerance, solve_ec, SolveError};
use choiceform_core::{
    check, enumerate, ChoiceFormGame, Clause, EquilibriumKind, Error as CoreError, GameRef, Profile, ProductSpace,
};

use crate::document::{parse_game, serialize_game, AuxSpec, DocumentError, Game, GameDocument, LoadedGame};
use crate::fixtures;
use crate::report::{digest, RunReport};

#[derive(Debug, Parser)]
#[command(name = "choiceform", version, about = "Equilibria of games in choice form on finite grids")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Fixed-point tolerance in embedding units (default: one mesh step).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Neighborhood radius in mesh steps.
    #[arg(long, global = true, default_value_t = 1)]
    pub radius: usize,
    /// Largest subset size for the exact weakly-convex-graph search.
    #[arg(long, global = true, default_value_t = DEFAULT_K_MAX)]
    pub kmax: usize,
    /// Keep solving when hypotheses fail.
    #[arg(long, global = true)]
    pub force: bool,
    /// Seed for `generate`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    ChoiceForm,
}

#[derive(Debug, clap::Args)]
pub struct AuxArgs {
    /// JSON file holding an aux section; replaces the document's own.
    #[arg(long)]
    pub aux: Option<PathBuf>,
    /// Fill missing aux ingredients from the game itself.
    #[arg(long)]
    pub derive_aux: bool,
    /// V4 only: open lower sections and the selection route.
    #[arg(long)]
    pub via_selection: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check one profile. Tokens are labels (grid points by coordinate),
    /// `#k` for the k-th strategy, or a bare index.
    Check {
        file: PathBuf,
        kind: String,
        /// Comma-separated, one token per player.
        profile: String,
    },
    /// List every profile of the given kind.
    Enumerate { file: PathBuf, kind: String },
    /// Evaluate the grid hypotheses of a variant (V1 to V5).
    Hypotheses {
        file: PathBuf,
        variant: String,
        #[command(flatten)]
        aux: AuxArgs,
    },
    /// Run the proof-mirroring solver for a variant.
    Solve {
        file: PathBuf,
        variant: String,
        #[command(flatten)]
        aux: AuxArgs,
    },
    /// Rewrite a game as its choice form.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a seeded interval-section grid game meeting the V4 hypotheses.
    Generate {
        #[arg(long, default_value_t = 2)]
        players: usize,
        #[arg(long, default_value_t = 9)]
        points: usize,
        #[arg(long, default_value_t = 0.25)]
        mesh: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the bundled fixtures into a directory.
    Fixtures { dir: PathBuf },
}

/// Usage, parse and input failures; always exit 2.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {error}")]
    Document { path: String, error: DocumentError },
    #[error("{0}")]
    Io(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliRun {
    pub exit_code: i32,
    pub report: Option<RunReport>,
}

/// Parses `args` (program name first), runs, writes to the given streams.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliRun
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return CliRun {
                exit_code: code,
                report: None,
            };
        }
    };
    let started = Instant::now();
    match execute(&cli) {
        Ok(Output::Report { command, digest, positive, results }) => {
            let exit_code = if positive { 0 } else { 1 };
            let report = RunReport {
                command: command.into(),
                input_digest: digest,
                exit_code,
                outcome: if positive { "success" } else { "negative" }.into(),
                results,
                wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
            };
            let text = match cli.output {
                OutputFormat::Json => report.to_json(),
                OutputFormat::Text => report.to_text(),
            };
            let _ = stdout.write_all(text.as_bytes());
            CliRun {
                exit_code,
                report: Some(report),
            }
        }
        Ok(Output::Raw(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            CliRun {
                exit_code: 0,
                report: None,
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            CliRun {
                exit_code: 2,
                report: None,
            }
        }
    }
}

enum Output {
    Report {
        command: &'static str,
        digest: Option<String>,
        positive: bool,
        results: Value,
    },
    Raw(String),
}

fn read(path: &PathBuf) -> Result<(LoadedGame, String), CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Io(format!("{}: not valid UTF-8", path.display())))?;
    let doc_err = |error| CliError::Document {
        path: path.display().to_string(),
        error,
    };
    let doc = parse_game(&text).map_err(doc_err)?;
    let loaded = doc.load().map_err(doc_err)?;
    Ok((loaded, digest(&bytes)))
}

fn parse_kind(s: &str) -> Result<EquilibriumKind, CliError> {
    s.parse().map_err(|e: CoreError| CliError::Usage(e.to_string()))
}

fn parse_variant(s: &str) -> Result<Variant, CliError> {
    s.parse().map_err(|e: CoreError| CliError::Usage(e.to_string()))
}

fn parse_profile(space: &ProductSpace, text: &str) -> Result<Profile, CliError> {
    let tokens: Vec<&str> = text.split(',').map(str::trim).collect();
    if tokens.len() != space.arity() {
        return Err(CliError::Usage(format!(
            "invalid profile: {} entries for a {}-player game",
            tokens.len(),
            space.arity()
        )));
    }
    let mut coords = Vec::with_capacity(tokens.len());
    for (k, tok) in tokens.iter().enumerate() {
        let f = space.factor(k);
        let by_label = (0..f.len()).find(|&j| f.label(j) == *tok);
        let idx = match by_label {
            Some(j) => j,
            None => tok
                .strip_prefix('#')
                .unwrap_or(tok)
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("invalid profile: no strategy {tok:?} for player {k}")))?,
        };
        coords.push(idx);
    }
    space.check(&coords)?;
    Ok(Profile(coords))
}

fn labels(space: &ProductSpace, p: &Profile) -> Vec<String> {
    p.0.iter().enumerate().map(|(k, &j)| space.factor(k).label(j)).collect()
}

/// Choice form for EC and SEC requests on other classes.
fn game_for_kind(game: &Game, kind: EquilibriumKind) -> (Option<ChoiceFormGame>, bool) {
    let wants_choice = matches!(kind, EquilibriumKind::Ec | EquilibriumKind::Sec);
    match game {
        Game::Choice(_) => (None, false),
        _ if wants_choice => (Some(game.to_choice_form()), true),
        _ => (None, false),
    }
}

fn params(cli: &Cli, via_selection: bool) -> HypothesisParams {
    HypothesisParams {
        topology: GridTopology::new(cli.radius),
        k_max: cli.kmax,
        wcg_budget: DEFAULT_BUDGET,
        via_selection,
    }
}

fn resolve_aux(loaded: &LoadedGame, g: &ChoiceFormGame, variant: Variant, args: &AuxArgs) -> Result<(Aux, &'static str), CliError> {
    let (mut aux, mut source) = match &args.aux {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let spec: AuxSpec = serde_json::from_str(&text).map_err(|e| CliError::Document {
                path: path.display().to_string(),
                error: DocumentError::Syntax {
                    line: e.line(),
                    column: e.column(),
                    message: e.to_string(),
                },
            })?;
            let doc = GameDocument {
                aux: Some(spec),
                ..GameDocument::from_game(&loaded.game, None)
            };
            let aux = doc
                .load()
                .map_err(|error| CliError::Document {
                    path: path.display().to_string(),
                    error,
                })?
                .aux;
            (aux, "aux file")
        }
        None => (loaded.aux.clone(), "document"),
    };
    if args.derive_aux {
        let derived = derive_aux(g, variant);
        let before = aux.clone();
        aux.dominant = aux.dominant.or(derived.dominant);
        aux.inner = aux.inner.or(derived.inner);
        aux.simplices = aux.simplices.or(derived.simplices);
        aux.open_families = aux.open_families.or(derived.open_families);
        if aux != before {
            source = "derived";
        }
    }
    Ok((aux, source))
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Check { file, kind, profile } => {
            let (loaded, dg) = read(file)?;
            let kind = parse_kind(kind)?;
            let (converted, was) = game_for_kind(&loaded.game, kind);
            let game = converted.as_ref().map_or(loaded.game.as_ref(), GameRef::Choice);
            let p = parse_profile(game.space(), profile)?;
            let c = check(game, kind, &p)?;
            Ok(Output::Report {
                command: "check",
                digest: Some(dg),
                positive: c.holds,
                results: json!({
                    "game_class": loaded.game.class().as_str(),
                    "converted_to_choice_form": was,
                    "kind": kind.as_str(),
                    "profile": p,
                    "labels": labels(game.space(), &p),
                    "holds": c.holds,
                    "clauses": c.clauses,
                }),
            })
        }
        Command::Enumerate { file, kind } => {
            let (loaded, dg) = read(file)?;
            let kind = parse_kind(kind)?;
            let (converted, was) = game_for_kind(&loaded.game, kind);
            let game = converted.as_ref().map_or(loaded.game.as_ref(), GameRef::Choice);
            let found = enumerate(game, kind)?;
            let list: Vec<Value> = found
                .iter()
                .map(|c| {
                    json!({
                        "profile": c.profile,
                        "labels": labels(game.space(), &c.profile),
                        "clauses": c.clauses,
                    })
                })
                .collect();
            Ok(Output::Report {
                command: "enumerate",
                digest: Some(dg),
                positive: !found.is_empty(),
                results: json!({
                    "game_class": loaded.game.class().as_str(),
                    "converted_to_choice_form": was,
                    "kind": kind.as_str(),
                    "count": found.len(),
                    "equilibria": list,
                }),
            })
        }
        Command::Hypotheses { file, variant, aux } => {
            let (loaded, dg) = read(file)?;
            let variant = parse_variant(variant)?;
            let g = loaded.game.to_choice_form();
            let (a, source) = resolve_aux(&loaded, &g, variant, aux)?;
            let report = check_theorem_hypotheses(&g, variant, &params(cli, aux.via_selection), &a)?;
            Ok(Output::Report {
                command: "hypotheses",
                digest: Some(dg),
                positive: report.passed(),
                results: json!({
                    "game_class": loaded.game.class().as_str(),
                    "converted_to_choice_form": !matches!(loaded.game, Game::Choice(_)),
                    "aux_source": source,
                    "passed": report.passed(),
                    "report": report,
                }),
            })
        }
        Command::Solve { file, variant, aux } => {
            let (loaded, dg) = read(file)?;
            let variant = parse_variant(variant)?;
            let g = loaded.game.to_choice_form();
            if let Some(t) = cli.tol {
                check_tolerance(g.space(), t)?;
            }
            let (a, source) = resolve_aux(&loaded, &g, variant, aux)?;
            let head = json!({
                "game_class": loaded.game.class().as_str(),
                "converted_to_choice_form": !matches!(loaded.game, Game::Choice(_)),
                "aux_source": source,
                "variant": variant.as_str(),
            });
            let mut results = head;
            let positive = match solve_ec(&g, variant, &params(cli, aux.via_selection), &a, cli.tol, cli.force) {
                Ok(cert) => {
                    results["certificate"] = json!({
                        "profile": cert.profile,
                        "labels": labels(g.space(), &cert.profile),
                        "kind": cert.kind.as_str(),
                        "clauses": cert.clauses,
                        "verified": cert.clauses.iter().all(|c| *c != Clause::Violated),
                        "trace": cert.trace,
                    });
                    true
                }
                Err(SolveError::Input(e)) => return Err(e.into()),
                Err(SolveError::Search { error: e @ CoreError::InvalidTolerance(_), .. }) => return Err(e.into()),
                Err(e) => {
                    let (stage, forced) = match &e {
                        SolveError::Hypotheses(_) => ("hypotheses", false),
                        SolveError::Search { forced, .. } => ("search", *forced),
                        SolveError::Unverified { forced, .. } => ("verification", *forced),
                        SolveError::Input(_) => unreachable!(),
                    };
                    let mut failure = json!({
                        "stage": stage,
                        "forced": forced,
                        "reason": e.to_string(),
                        "hypotheses": e.report(),
                    });
                    if let SolveError::Search { error: CoreError::NoFixedPoint { argmin, residual, tolerance }, .. } = &e {
                        failure["argmin"] = json!(argmin);
                        failure["residual"] = json!(residual);
                        failure["tolerance"] = json!(tolerance);
                    }
                    if let SolveError::Unverified { profile, residual, .. } = &e {
                        failure["candidate"] = json!(profile);
                        failure["candidate_labels"] = json!(labels(g.space(), profile));
                        failure["residual"] = json!(residual);
                    }
                    results["failure"] = failure;
                    false
                }
            };
            Ok(Output::Report {
                command: "solve",
                digest: Some(dg),
                positive,
                results,
            })
        }
        Command::Convert { file, to: Target::ChoiceForm, out } => {
            let (loaded, dg) = read(file)?;
            let g = Game::Choice(loaded.game.to_choice_form());
            let text = serialize_game(&GameDocument::from_game(&g, Some(&loaded.aux)));
            emit(text, out.as_ref(), "convert", Some(dg))
        }
        Command::Generate { players, points, mesh, out } => {
            let seed = cli.seed.unwrap_or(0);
            let cfg = IntervalGameConfig {
                players: *players,
                points: *points,
                mesh: *mesh,
                ..IntervalGameConfig::default()
            };
            let g = interval_game(seed, cfg)?;
            let text = serialize_game(&GameDocument::from_game(&Game::Choice(g), None));
            emit(text, out.as_ref(), "generate", None)
        }
        Command::Fixtures { dir } => {
            let written = fixtures::write_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            Ok(Output::Report {
                command: "fixtures",
                digest: None,
                positive: true,
                results: json!({ "written": written }),
            })
        }
    }
}

fn emit(text: String, out: Option<&PathBuf>, command: &'static str, dg: Option<String>) -> Result<Output, CliError> {
    match out {
        None => Ok(Output::Raw(text)),
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(Output::Report {
                command,
                digest: dg,
                positive: true,
                results: json!({ "written": path.display().to_string(), "output_digest": digest(text.as_bytes()) }),
            })
        }
    }
}
