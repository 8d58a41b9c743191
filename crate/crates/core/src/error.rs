use thiserror::Error;

use crate::linalg::LinalgError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error("invalid match #{index}: {reason}")]
    InvalidMatch { index: usize, reason: String },
    #[error("unknown team index {0}")]
    UnknownTeam(usize),
    #[error("need at least {needed} teams, got {got}")]
    TooFewTeams { needed: usize, got: usize },

    /// The match graph has more than one component. `isolated` names the
    /// registered teams that have not played at all.
    #[error("match graph is disconnected ({components} components{})", fmt_isolated(.isolated))]
    DisconnectedGraph {
        components: usize,
        isolated: Vec<String>,
    },
    #[error("team {0} has not played any game")]
    ZeroGames(String),

    #[error("round robin needs an even team count >= 4, got {0}")]
    OddTeamCount(usize),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("the schedule never produces a connected match graph")]
    NeverConnected,
    #[error("the schedule never produces an odd cycle")]
    NeverNonBipartite,

    #[error("internal mismatch in {what}: deviation {deviation:e}")]
    InternalMismatch { what: &'static str, deviation: f64 },

    #[error("raw strength undefined for {0} vs {1}: no points scored either way (use laplace smoothing)")]
    RawUndefined(String, String),
    #[error("strength matrix is not irreducible")]
    NotIrreducible,
    #[error("{method} did not converge after {iterations} iterations")]
    NoConvergence {
        method: &'static str,
        iterations: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("i/o error: {0}")]
    Io(String),
}

fn fmt_isolated(isolated: &[String]) -> String {
    if isolated.is_empty() {
        String::new()
    } else {
        format!("; no games played by: {}", isolated.join(", "))
    }
}
