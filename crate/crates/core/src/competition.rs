//! Matches, the match graph and round-robin schedules.
//!
//! A [`MatchList`] owns a team registry (first-registration order) and the
//! matches played between registered teams. [`MatchGraph`] collapses it to
//! the symmetric match-count matrix `A` and the games-played vector `D`,
//! which is everything the Laplacian-based methods need.
//!
//! The schedule half of the module generates single round robins with the
//! circle method and measures after how many days the union of the played
//! matchings first becomes connected and first contains an odd cycle.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// One game. Teams are indices into the owning [`MatchList`] registry.
#[derive(Debug, Clone, PartialEq)]
pub struct Match {
    day: Option<u32>,
    team_a: usize,
    team_b: usize,
    score_a: f64,
    score_b: f64,
}

impl Match {
    pub fn new(
        day: Option<u32>,
        team_a: usize,
        team_b: usize,
        score_a: f64,
        score_b: f64,
    ) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidMatch {
            index: 0,
            reason: reason.to_string(),
        };
        if team_a == team_b {
            return Err(invalid("a team cannot play itself"));
        }
        if !score_a.is_finite() || !score_b.is_finite() {
            return Err(invalid("scores must be finite"));
        }
        if score_a < 0.0 || score_b < 0.0 {
            return Err(invalid("scores must be nonnegative"));
        }
        if day == Some(0) {
            return Err(invalid("day must be a positive integer"));
        }
        Ok(Self {
            day,
            team_a,
            team_b,
            score_a,
            score_b,
        })
    }

    pub fn day(&self) -> Option<u32> {
        self.day
    }

    pub fn team_a(&self) -> usize {
        self.team_a
    }

    pub fn team_b(&self) -> usize {
        self.team_b
    }

    pub fn score_a(&self) -> f64 {
        self.score_a
    }

    pub fn score_b(&self) -> f64 {
        self.score_b
    }

    pub fn is_draw(&self) -> bool {
        self.score_a == self.score_b
    }
}

/// Team registry plus the ordered matches between registered teams.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MatchList {
    teams: Vec<String>,
    index: HashMap<String, usize>,
    matches: Vec<Match>,
}

impl MatchList {
    pub fn new() -> Self {
        Self::default()
    }

    /// Creates a list with a pre-registered set of teams (duplicates ignored).
    pub fn with_teams<I, S>(teams: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut list = Self::new();
        for t in teams {
            list.register(t);
        }
        list
    }

    /// Returns the index of `name`, registering it if unseen.
    pub fn register(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        if let Some(&i) = self.index.get(&name) {
            return i;
        }
        let i = self.teams.len();
        self.index.insert(name.clone(), i);
        self.teams.push(name);
        i
    }

    /// Adds a match by team name, registering unseen teams in first-appearance order.
    pub fn add(
        &mut self,
        day: Option<u32>,
        team_a: &str,
        team_b: &str,
        score_a: f64,
        score_b: f64,
    ) -> Result<()> {
        if team_a == team_b {
            return Err(Error::InvalidMatch {
                index: self.matches.len(),
                reason: format!("team {team_a} cannot play itself"),
            });
        }
        let a = self.register(team_a);
        let b = self.register(team_b);
        self.push(Match::new(day, a, b, score_a, score_b).map_err(|e| self.reindex(e))?)
    }

    /// Appends a match whose team indices must already be registered.
    pub fn push(&mut self, m: Match) -> Result<()> {
        for t in [m.team_a, m.team_b] {
            if t >= self.teams.len() {
                return Err(Error::UnknownTeam(t));
            }
        }
        self.matches.push(m);
        Ok(())
    }

    fn reindex(&self, e: Error) -> Error {
        match e {
            Error::InvalidMatch { reason, .. } => Error::InvalidMatch {
                index: self.matches.len(),
                reason,
            },
            other => other,
        }
    }

    pub fn teams(&self) -> &[String] {
        &self.teams
    }

    pub fn team_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn team_name(&self, i: usize) -> &str {
        &self.teams[i]
    }

    pub fn matches(&self) -> &[Match] {
        &self.matches
    }

    pub fn n_teams(&self) -> usize {
        self.teams.len()
    }

    pub fn n_matches(&self) -> usize {
        self.matches.len()
    }

    pub fn draw_count(&self) -> usize {
        self.matches.iter().filter(|m| m.is_draw()).count()
    }

    /// Explicit day, or the 1-based input position when the day is absent.
    pub fn effective_day(&self, k: usize) -> u32 {
        self.matches[k].day.unwrap_or(k as u32 + 1)
    }

    pub fn all_dated(&self) -> bool {
        self.matches.iter().all(|m| m.day.is_some())
    }

    /// Match indices in (effective day, input order) sequence.
    pub fn chronological(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.matches.len()).collect();
        order.sort_by_key(|&k| self.effective_day(k));
        order
    }

    /// Matches grouped by effective day, days ascending.
    pub fn day_groups(&self) -> Vec<(u32, Vec<(usize, usize)>)> {
        let mut groups: Vec<(u32, Vec<(usize, usize)>)> = Vec::new();
        for k in self.chronological() {
            let day = self.effective_day(k);
            let pair = (self.matches[k].team_a, self.matches[k].team_b);
            match groups.last_mut() {
                Some((d, pairs)) if *d == day => pairs.push(pair),
                _ => groups.push((day, vec![pair])),
            }
        }
        groups
    }
}

/// Symmetric match-count matrix `A` with its degree vector `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchGraph {
    n: usize,
    adjacency: Vec<u32>,
    degrees: Vec<u32>,
}

impl MatchGraph {
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adjacency = vec![0u32; n * n];
        for (i, j) in pairs {
            assert!(i != j && i < n && j < n, "invalid pair ({i}, {j})");
            adjacency[i * n + j] += 1;
            adjacency[j * n + i] += 1;
        }
        let degrees = (0..n)
            .map(|i| adjacency[i * n..(i + 1) * n].iter().sum())
            .collect();
        Self {
            n,
            adjacency,
            degrees,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of matches between `i` and `j`.
    pub fn count(&self, i: usize, j: usize) -> u32 {
        self.adjacency[i * self.n + j]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.count(i, j) > 0)
    }

    /// Unordered matched pairs `(i, j)` with `i < j`, in registry order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            (i + 1..self.n)
                .filter(move |&j| self.count(i, j) > 0)
                .map(move |j| (i, j))
        })
    }

    pub fn adjacency_matrix(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n, self.n, |i, j| self.count(i, j) as f64).expect("finite")
    }

    /// `M = D − A`, computed in integers before conversion.
    pub fn laplacian(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n, self.n, |i, j| {
            if i == j {
                self.degrees[i] as f64
            } else {
                -(self.count(i, j) as f64)
            }
        })
        .expect("finite")
    }

    /// `N = D + A`.
    pub fn signless_laplacian(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n, self.n, |i, j| {
            if i == j {
                self.degrees[i] as f64
            } else {
                self.count(i, j) as f64
            }
        })
        .expect("finite")
    }

    /// Component label per node, labels numbered in order of lowest member.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().iter().max().map_or(0, |&m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// BFS two-colouring of every component; `None` on an odd cycle.
    fn two_coloring(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(true);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].expect("colored");
                for v in self.neighbors(u) {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.expect("colored")).collect())
    }

    /// True when some component contains an odd cycle.
    pub fn has_odd_cycle(&self) -> bool {
        self.two_coloring().is_none()
    }
}

/// Builds `A` and `D` by counting the matches of `matches`.
pub fn build_match_graph(matches: &MatchList) -> MatchGraph {
    MatchGraph::from_pairs(
        matches.n_teams(),
        matches.matches().iter().map(|m| (m.team_a, m.team_b)),
    )
}

pub fn is_connected(graph: &MatchGraph) -> bool {
    graph.is_connected()
}

/// The two sides of a bipartite match graph. `u` holds the lowest-indexed team.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
}

impl Bipartition {
    /// `+1` on `u`, `−1` on `v`: spans the nullspace of the signless Laplacian.
    pub fn sign_vector(&self, n: usize) -> Vec<f64> {
        let mut s = vec![-1.0; n];
        for &i in &self.u {
            s[i] = 1.0;
        }
        s
    }
}

/// Splits a connected graph into its two colour classes, or `None` when it has an odd cycle.
pub fn bipartition(graph: &MatchGraph) -> Result<Option<Bipartition>> {
    let components = graph.component_count();
    if components > 1 {
        return Err(Error::DisconnectedGraph {
            components,
            isolated: Vec::new(),
        });
    }
    Ok(graph.two_coloring().map(|colors| {
        // node 0 is coloured `true` first
        let (u, v): (Vec<usize>, Vec<usize>) = (0..graph.n()).partition(|&i| colors[i]);
        Bipartition { u, v }
    }))
}

/// A single round robin: every day is a perfect matching, no pair repeats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    n: usize,
    days: Vec<Vec<(usize, usize)>>,
}

impl Schedule {
    /// Validates that each day is a perfect matching on `0..n` and that no
    /// pair is played twice.
    pub fn from_days(n: usize, days: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::OddTeamCount(n));
        }
        let mut seen_pairs = HashSet::new();
        for (d, day) in days.iter().enumerate() {
            if day.len() != n / 2 {
                return Err(Error::InvalidSchedule(format!(
                    "day {} has {} matches, expected {}",
                    d + 1,
                    day.len(),
                    n / 2
                )));
            }
            let mut seen = vec![false; n];
            for &(a, b) in day {
                if a >= n || b >= n || a == b || seen[a] || seen[b] {
                    return Err(Error::InvalidSchedule(format!(
                        "day {} is not a perfect matching",
                        d + 1
                    )));
                }
                seen[a] = true;
                seen[b] = true;
                if !seen_pairs.insert((a.min(b), a.max(b))) {
                    return Err(Error::InvalidSchedule(format!(
                        "pair ({a}, {b}) repeats on day {}",
                        d + 1
                    )));
                }
            }
        }
        Ok(Self { n, days })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn days(&self) -> &[Vec<(usize, usize)>] {
        &self.days
    }

    /// Match graph after the first `k` days.
    pub fn graph_after(&self, k: usize) -> MatchGraph {
        MatchGraph::from_pairs(self.n, self.days[..k].iter().flatten().copied())
    }
}

/// Circle-method single round robin on `n` teams (0-based), `n − 1` days.
///
/// Team 0 stays fixed; the others rotate one seat per day. Seat `i` plays
/// seat `n − 1 − i`.
pub fn round_robin_schedule(n: usize) -> Result<Schedule> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::OddTeamCount(n));
    }
    let mut seats: Vec<usize> = (0..n).collect();
    let mut days = Vec::with_capacity(n - 1);
    for _ in 0..n - 1 {
        days.push((0..n / 2).map(|i| (seats[i], seats[n - 1 - i])).collect());
        let last = seats.pop().expect("n >= 4");
        seats.insert(1, last);
    }
    Schedule::from_days(n, days)
}

/// Circle-method schedule with day order and team labels shuffled by a seeded RNG.
pub fn shuffled_round_robin(n: usize, seed: u64) -> Result<Schedule> {
    let base = round_robin_schedule(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(&mut rng);
    let mut days: Vec<Vec<(usize, usize)>> = base
        .days
        .iter()
        .map(|day| day.iter().map(|&(a, b)| (labels[a], labels[b])).collect())
        .collect();
    days.shuffle(&mut rng);
    Schedule::from_days(n, days)
}

/// Smallest `k` such that the union of the first `k` day-groups satisfies `pred`.
fn first_day_where(
    n: usize,
    days: &[Vec<(usize, usize)>],
    pred: impl Fn(&MatchGraph) -> bool,
) -> Option<usize> {
    let mut pairs = Vec::new();
    for (k, day) in days.iter().enumerate() {
        pairs.extend_from_slice(day);
        if pred(&MatchGraph::from_pairs(n, pairs.iter().copied())) {
            return Some(k + 1);
        }
    }
    None
}

/// Number of days after which the match graph first becomes connected.
pub fn days_to_connected(schedule: &Schedule) -> Result<usize> {
    first_day_where(schedule.n, &schedule.days, MatchGraph::is_connected)
        .ok_or(Error::NeverConnected)
}

/// Number of days after which the match graph first contains an odd cycle.
pub fn days_to_nonbipartite(schedule: &Schedule) -> Result<usize> {
    first_day_where(schedule.n, &schedule.days, MatchGraph::has_odd_cycle)
        .ok_or(Error::NeverNonBipartite)
}

/// Day-count diagnostics for a dated match list (days need not be perfect matchings).
///
/// Returns the number of distinct match days after which the graph is first
/// connected / first non-bipartite, or `None` if it never happens.
pub fn match_list_day_counts(matches: &MatchList) -> (Option<usize>, Option<usize>) {
    let days: Vec<Vec<(usize, usize)>> = matches.day_groups().into_iter().map(|(_, p)| p).collect();
    let n = matches.n_teams();
    (
        first_day_where(n, &days, MatchGraph::is_connected),
        first_day_where(n, &days, MatchGraph::has_odd_cycle),
    )
}
