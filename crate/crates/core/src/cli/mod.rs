//! Command-line front end.
//!
//! Subcommands:
//! - `rate` rates a match CSV with Massey, Keener, offense-defense or Elo;
//! - `graph-check` reports connectivity, bipartiteness and λ2 of the match graph;
//! - `network rate` rates the nodes of a weighted edge list;
//! - `simulate` generates a round robin and reports its day counts.
//!
//! Exit codes: 0 success, 2 parse error, 3 disconnected graph,
//! 4 numerical/convergence failure, 5 invalid configuration.

pub mod io;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::alt_ratings::{EloParams, Smoothing};
use crate::competition::{
    bipartition, build_match_graph, days_to_connected, days_to_nonbipartite, match_list_day_counts,
    round_robin_schedule, shuffled_round_robin, MatchList,
};
use crate::error::{Error, Result};
use crate::linalg::symmetric_eigenvalues;
use crate::netflow::{digraph_to_matches, rate_matches, NetworkRating, RatingMethod};

use self::report::{
    fixed, DiagnosticsOut, FlowOut, GraphCheckOut, MasseyColumns, Metadata, PartitionOut, RateOut,
    Ratings, SimulateOut,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DISCONNECTED: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;
pub const EXIT_CONFIG: i32 = 5;

/// Maps every library error to its documented exit code.
pub fn exit_code(err: &Error) -> i32 {
    use crate::linalg::LinalgError;
    match err {
        Error::Parse { .. } | Error::Io(_) => EXIT_PARSE,
        Error::DisconnectedGraph { .. } | Error::ZeroGames(_) | Error::NotIrreducible => {
            EXIT_DISCONNECTED
        }
        Error::Linalg(LinalgError::NotSquare { .. })
        | Error::Linalg(LinalgError::DimensionMismatch { .. }) => EXIT_CONFIG,
        Error::Linalg(_)
        | Error::NoConvergence { .. }
        | Error::InternalMismatch { .. }
        | Error::NeverConnected
        | Error::NeverNonBipartite => EXIT_NUMERICAL,
        Error::InvalidMatch { .. }
        | Error::UnknownTeam(_)
        | Error::TooFewTeams { .. }
        | Error::OddTeamCount(_)
        | Error::InvalidSchedule(_)
        | Error::RawUndefined(..)
        | Error::InvalidParameter(_) => EXIT_CONFIG,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum MethodArg {
    #[default]
    Massey,
    Keener,
    Odm,
    Elo,
}

impl MethodArg {
    fn name(self) -> &'static str {
        match self {
            MethodArg::Massey => "massey",
            MethodArg::Keener => "keener",
            MethodArg::Odm => "odm",
            MethodArg::Elo => "elo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum SmoothingArg {
    Raw,
    #[default]
    Laplace,
}

impl From<SmoothingArg> for Smoothing {
    fn from(s: SmoothingArg) -> Self {
        match s {
            SmoothingArg::Raw => Smoothing::Raw,
            SmoothingArg::Laplace => Smoothing::Laplace,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "rank-forge",
    version,
    about = "Least-squares and related team ratings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rate the teams of a match CSV.
    Rate(RateArgs),
    /// Connectivity, bipartiteness and spectral diagnostics of a match CSV.
    GraphCheck(InputArgs),
    /// Weighted directed networks.
    #[command(subcommand)]
    Network(NetworkCommand),
    /// Generate a circle-method round robin and report its day counts.
    Simulate(SimulateArgs),
}

#[derive(Debug, Subcommand)]
pub enum NetworkCommand {
    /// Rate the nodes of a `source,target,weight` CSV.
    Rate(RateArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input CSV path, `-` for stdin.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub output: OutputFormat,
}

#[derive(Debug, Args)]
pub struct RateArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[arg(long, value_enum, default_value_t)]
    pub method: MethodArg,
    /// Strength smoothing for keener/odm.
    #[arg(long, value_enum, default_value_t)]
    pub smoothing: SmoothingArg,
    /// Convergence tolerance for keener/odm.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 25.0)]
    pub kappa: f64,
    #[arg(long, default_value_t = 400.0)]
    pub zeta: f64,
    #[arg(long, default_value_t = 1500.0, allow_negative_numbers = true)]
    pub init_rating: f64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub teams: usize,
    /// Shuffle day order and team labels with this seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t)]
    pub output: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Rate,
    GraphCheck,
    NetworkRate,
    Simulate,
}

/// Validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub task: Task,
    pub method: MethodArg,
    pub smoothing: SmoothingArg,
    pub tol: f64,
    pub max_iter: usize,
    pub elo: EloParams,
    pub input_path: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub seed: Option<u64>,
    pub teams: Option<usize>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let base = |task, io: InputArgs| RunConfig {
            task,
            method: MethodArg::Massey,
            smoothing: SmoothingArg::Laplace,
            tol: 1e-10,
            max_iter: 100_000,
            elo: EloParams::default(),
            input_path: Some(io.input),
            output_format: io.output,
            seed: None,
            teams: None,
        };
        let with_rate = |task, a: RateArgs| -> Result<RunConfig> {
            if !(a.tol > 0.0 && a.tol.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "--tol must be positive, got {}",
                    a.tol
                )));
            }
            if a.max_iter == 0 {
                return Err(Error::InvalidParameter(
                    "--max-iter must be positive".into(),
                ));
            }
            let elo = EloParams::new(a.kappa, a.zeta, a.init_rating)?;
            Ok(RunConfig {
                method: a.method,
                smoothing: a.smoothing,
                tol: a.tol,
                max_iter: a.max_iter,
                elo,
                ..base(task, a.io)
            })
        };
        match cli.command {
            Command::Rate(a) => with_rate(Task::Rate, a),
            Command::Network(NetworkCommand::Rate(a)) => with_rate(Task::NetworkRate, a),
            Command::GraphCheck(io) => Ok(base(Task::GraphCheck, io)),
            Command::Simulate(s) => Ok(RunConfig {
                task: Task::Simulate,
                input_path: None,
                output_format: s.output,
                seed: s.seed,
                teams: Some(s.teams),
                ..base(
                    Task::Simulate,
                    InputArgs {
                        input: PathBuf::new(),
                        output: s.output,
                    },
                )
            }),
        }
    }

    fn rating_method(&self) -> RatingMethod {
        match self.method {
            MethodArg::Massey => RatingMethod::Massey,
            MethodArg::Keener => RatingMethod::Keener {
                smoothing: self.smoothing.into(),
                tol: self.tol,
                max_iter: self.max_iter,
            },
            MethodArg::Odm => RatingMethod::Odm {
                smoothing: self.smoothing.into(),
                tol: self.tol,
                max_iter: self.max_iter,
            },
            MethodArg::Elo => RatingMethod::Elo(self.elo),
        }
    }
}

/// Exit code plus what should go to stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn err(err: &Error) -> Self {
        Self {
            code: exit_code(err),
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

/// Parses arguments (including the program name) and runs.
pub fn main_with_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_CONFIG,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::ok(rendered)
            };
        }
    };
    match RunConfig::from_cli(cli) {
        Ok(config) => run(&config),
        Err(e) => Outcome::err(&e),
    }
}

/// Runs one configured command, never panicking on bad input.
pub fn run(config: &RunConfig) -> Outcome {
    match execute(config) {
        Ok(out) => Outcome::ok(out),
        Err(e) => Outcome::err(&e),
    }
}

fn read_input(config: &RunConfig) -> Result<String> {
    let path = config
        .input_path
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("--input is required".into()))?;
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| Error::Io(e.to_string()))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn execute(config: &RunConfig) -> Result<String> {
    match config.task {
        Task::Rate => {
            let matches = io::parse_matches_csv(&read_input(config)?)?;
            log::info!(
                "read {} matches over {} teams",
                matches.n_matches(),
                matches.n_teams()
            );
            let out = rate_report(&matches, config, None)?;
            render_rate(&out, config.output_format)
        }
        Task::NetworkRate => {
            let g = io::parse_edges_csv(&read_input(config)?)?;
            if g.dropped_self_loops() > 0 {
                log::warn!("dropped {} self-loop(s)", g.dropped_self_loops());
            }
            let matches = digraph_to_matches(&g);
            log::info!(
                "network of {} nodes yields {} matches",
                g.nodes().len(),
                matches.n_matches()
            );
            let out = rate_report(&matches, config, Some(g.dropped_self_loops()))?;
            render_rate(&out, config.output_format)
        }
        Task::GraphCheck => {
            let matches = io::parse_matches_csv(&read_input(config)?)?;
            let out = graph_check(&matches)?;
            render_plain(&out, config.output_format)
        }
        Task::Simulate => {
            let n = config.teams.unwrap_or(0);
            let schedule = match config.seed {
                Some(seed) => shuffled_round_robin(n, seed)?,
                None => round_robin_schedule(n)?,
            };
            let dc = days_to_connected(&schedule)?;
            let dnb = days_to_nonbipartite(&schedule)?;
            let out = SimulateOut {
                command: "simulate",
                teams: n,
                seed: config.seed,
                days: schedule
                    .days()
                    .iter()
                    .map(|day| day.iter().map(|&(a, b)| [a + 1, b + 1]).collect())
                    .collect(),
                days_to_connected: dc,
                days_to_nonbipartite: dnb,
                connected_bounds: [2, n / 2],
                nonbipartite_bounds: [3, n / 2 + 1],
                within_bounds: (2..=n / 2).contains(&dc) && (3..=n / 2 + 1).contains(&dnb),
            };
            render_plain(&out, config.output_format)
        }
    }
}

/// Builds the `rate` report for any method.
pub fn rate_report(
    matches: &MatchList,
    config: &RunConfig,
    self_loops_dropped: Option<usize>,
) -> Result<RateOut> {
    let metadata = Metadata {
        teams: matches.n_teams(),
        matches: matches.n_matches(),
        draws: matches.draw_count(),
        self_loops_dropped,
    };
    let teams = matches.teams().to_vec();
    let mut out = RateOut {
        command: if self_loops_dropped.is_some() {
            "network rate"
        } else {
            "rate"
        },
        method: config.method.name(),
        teams: teams.clone(),
        ratings: Ratings::Single { r: Vec::new() },
        lambda: None,
        iterations: None,
        flows: None,
        diagnostics: None,
        metadata,
    };
    match rate_matches(matches, &config.rating_method())? {
        NetworkRating::Massey(rep) => {
            out.ratings = Ratings::Massey(MasseyColumns {
                r: fixed(&rep.r),
                r1: fixed(&rep.r1),
                r2: fixed(&rep.r2),
                o: fixed(&rep.o),
                d: fixed(&rep.d),
            });
            out.flows = Some(
                rep.flows
                    .iter()
                    .map(|e| FlowOut {
                        from: teams[e.i].clone(),
                        to: teams[e.j].clone(),
                        flow: report::Fixed6(e.flow),
                    })
                    .collect(),
            );
            out.diagnostics = Some(DiagnosticsOut {
                connected: rep.diagnostics.connected,
                bipartite: rep.diagnostics.bipartite,
                lambda2: report::Fixed6(rep.diagnostics.lambda2),
                bound_lhs: report::Fixed6(rep.diagnostics.bound_lhs),
                bound_rhs: report::Fixed6(rep.diagnostics.bound_rhs),
            });
        }
        NetworkRating::Keener(k) => {
            out.ratings = Ratings::Single { r: fixed(&k.r) };
            out.lambda = Some(report::Fixed6(k.lambda));
            out.iterations = Some(k.iterations);
        }
        NetworkRating::Odm(odm) => {
            let overall: Vec<f64> = odm.o.iter().zip(odm.d.iter()).map(|(o, d)| o / d).collect();
            out.ratings = Ratings::OffenseDefense {
                rating: fixed(&overall),
                o: fixed(&odm.o),
                d: fixed(&odm.d),
            };
            out.iterations = Some(odm.iterations);
        }
        NetworkRating::Elo(r) => {
            out.ratings = Ratings::Single { r: fixed(&r) };
        }
    }
    Ok(out)
}

/// Graph diagnostics for a match list; never fails on a disconnected graph.
pub fn graph_check(matches: &MatchList) -> Result<GraphCheckOut> {
    let g = build_match_graph(matches);
    let teams = matches.teams().to_vec();
    let names = |ix: &[usize]| ix.iter().map(|&i| teams[i].clone()).collect::<Vec<_>>();
    let connected = g.is_connected();
    let partition = if connected { bipartition(&g)? } else { None };
    let eig = symmetric_eigenvalues(&g.laplacian())?;
    let dated = matches.n_matches() > 0 && matches.all_dated();
    let (dc, dnb) = if dated {
        match_list_day_counts(matches)
    } else {
        (None, None)
    };
    Ok(GraphCheckOut {
        command: "graph-check",
        teams: teams.clone(),
        matches: matches.n_matches(),
        connected,
        components: g.component_count(),
        isolated: (0..g.n())
            .filter(|&i| g.degree(i) == 0)
            .map(|i| teams[i].clone())
            .collect(),
        bipartite: connected.then_some(partition.is_some()),
        partition: partition.as_ref().map(|p| PartitionOut {
            u: names(&p.u),
            v: names(&p.v),
        }),
        has_odd_cycle: g.has_odd_cycle(),
        lambda2: report::Fixed6(eig.get(1).copied().unwrap_or(0.0)),
        dated,
        days_to_connected: dc,
        days_to_nonbipartite: dnb,
    })
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn render_rate(out: &RateOut, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => to_json(out),
        OutputFormat::Csv => Ok(out.to_csv()),
        OutputFormat::Table => Ok(out.to_table()),
    }
}

fn render_plain<T: serde::Serialize>(out: &T, format: OutputFormat) -> Result<String> {
    if format == OutputFormat::Json {
        return to_json(out);
    }
    let value = serde_json::to_value(out).map_err(|e| Error::Io(e.to_string()))?;
    let pairs = report::key_values(&value);
    Ok(match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"]).expect("in-memory write");
            for (k, v) in &pairs {
                w.write_record([k, v]).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
        }
        _ => {
            let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            pairs
                .iter()
                .map(|(k, v)| format!("{k:<width$}  {v}\n"))
                .collect()
        }
    })
}
