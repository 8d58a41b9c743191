//! Massey's least-squares ratings.
//!
//! Each match `k` between `i` and `j` contributes one row to the incidence
//! matrix `X` (`+1` for the winner, `−1` for the loser) and its absolute
//! margin to `y`. The normal equations `M r = p` with `M = XᵀX = D − A` and
//! `p = Xᵀy` are singular (`M e = 0`), so the solver replaces the last row of
//! `M` with all ones and the last entry of `p` with zero. For a connected
//! match graph this yields the unique zero-sum solution of the original
//! system.
//!
//! From `r` the module derives
//! - the split `r = r1 + r2` into mean opponent rating and mean point spread,
//! - offensive/defensive ratings from `(D + A) d = D r − f`, `o = r − d`,
//! - current flows `A_ij (r_i − r_j)` in the resistor-network reading,
//! - the bound `‖r − p/n‖ ≤ ‖p‖ (n − λ2) / (n λ2)` via the algebraic connectivity.

use crate::competition::{bipartition, build_match_graph, Bipartition, MatchGraph, MatchList};
use crate::error::{Error, Result};
use crate::linalg::{
    max_abs, max_diff, residual_max_norm, solve_dense, symmetric_eigenvalues, DenseMatrix,
    DenseVector, TOL_RESIDUAL,
};

/// The assembled least-squares system for one match list.
#[derive(Debug, Clone, PartialEq)]
pub struct MasseySystem {
    teams: Vec<String>,
    x: DenseMatrix,
    y: DenseVector,
    m: DenseMatrix,
    p: DenseVector,
    f: DenseVector,
    a: DenseVector,
    graph: MatchGraph,
}

impl MasseySystem {
    pub fn teams(&self) -> &[String] {
        &self.teams
    }

    pub fn n(&self) -> usize {
        self.teams.len()
    }

    /// Match-by-team incidence matrix.
    pub fn incidence(&self) -> &DenseMatrix {
        &self.x
    }

    /// Absolute margin per match.
    pub fn spreads(&self) -> &DenseVector {
        &self.y
    }

    /// `M = XᵀX = D − A`.
    pub fn normal_matrix(&self) -> &DenseMatrix {
        &self.m
    }

    /// `p = Xᵀy = f − a`.
    pub fn team_spread(&self) -> &DenseVector {
        &self.p
    }

    pub fn points_for(&self) -> &DenseVector {
        &self.f
    }

    pub fn points_against(&self) -> &DenseVector {
        &self.a
    }

    pub fn graph(&self) -> &MatchGraph {
        &self.graph
    }

    fn ensure_connected(&self) -> Result<()> {
        let components = self.graph.component_count();
        if components > 1 {
            let isolated = (0..self.n())
                .filter(|&i| self.graph.degree(i) == 0)
                .map(|i| self.teams[i].clone())
                .collect();
            return Err(Error::DisconnectedGraph {
                components,
                isolated,
            });
        }
        Ok(())
    }
}

fn check_team_count(matches: &MatchList) -> Result<()> {
    if matches.n_teams() < 2 {
        return Err(Error::TooFewTeams {
            needed: 2,
            got: matches.n_teams(),
        });
    }
    Ok(())
}

/// Builds `X` (m×n) and `y` (length m).
///
/// Draws put `+1` on the team with the lower registry index.
pub fn build_incidence(matches: &MatchList) -> Result<(DenseMatrix, DenseVector)> {
    check_team_count(matches)?;
    let n = matches.n_teams();
    let m = matches.n_matches();
    let mut x = vec![0.0; m * n];
    let mut y = Vec::with_capacity(m);
    for (k, game) in matches.matches().iter().enumerate() {
        let (i, j) = (game.team_a(), game.team_b());
        let (winner, loser) = if game.score_a() > game.score_b() {
            (i, j)
        } else if game.score_b() > game.score_a() {
            (j, i)
        } else {
            (i.min(j), i.max(j))
        };
        x[k * n + winner] = 1.0;
        x[k * n + loser] = -1.0;
        y.push((game.score_a() - game.score_b()).abs());
    }
    Ok((DenseMatrix::new(m, n, x)?, DenseVector::new(y)?))
}

/// Assembles the normal equations by direct accumulation and cross-checks
/// them against `XᵀX` and `Xᵀy`.
pub fn build_system(matches: &MatchList) -> Result<MasseySystem> {
    let (x, y) = build_incidence(matches)?;
    let n = matches.n_teams();
    let graph = build_match_graph(matches);
    let m = graph.laplacian();

    let mut p = vec![0.0; n];
    let mut f = vec![0.0; n];
    let mut a = vec![0.0; n];
    for game in matches.matches() {
        let (i, j) = (game.team_a(), game.team_b());
        let spread = game.score_a() - game.score_b();
        p[i] += spread;
        p[j] -= spread;
        f[i] += game.score_a();
        a[i] += game.score_b();
        f[j] += game.score_b();
        a[j] += game.score_a();
    }

    let xt = x.transpose();
    let xtx = xt.matmul(&x)?;
    let xty = xt.matvec(&y)?;
    let m_gap = max_diff(m.as_slice(), xtx.as_slice());
    if m_gap > TOL_RESIDUAL * (1.0 + m.max_abs()) {
        return Err(Error::InternalMismatch {
            what: "normal matrix",
            deviation: m_gap,
        });
    }
    let p_gap = max_diff(&p, &xty);
    if p_gap > TOL_RESIDUAL * (1.0 + max_abs(&p)) {
        return Err(Error::InternalMismatch {
            what: "team spread",
            deviation: p_gap,
        });
    }
    let fa: Vec<f64> = f.iter().zip(&a).map(|(u, v)| u - v).collect();
    let fa_gap = max_diff(&p, &fa);
    if fa_gap > TOL_RESIDUAL * (1.0 + max_abs(&p)) {
        return Err(Error::InternalMismatch {
            what: "points for/against",
            deviation: fa_gap,
        });
    }

    Ok(MasseySystem {
        teams: matches.teams().to_vec(),
        x,
        y,
        m,
        p: DenseVector::new(p)?,
        f: DenseVector::new(f)?,
        a: DenseVector::new(a)?,
        graph,
    })
}

/// Solves `M r = p` subject to `Σ r = 0` by replacing the last row.
pub fn solve_ratings(system: &MasseySystem) -> Result<DenseVector> {
    solve_with_replaced_row(system, system.n() - 1)
}

/// Same as [`solve_ratings`] but replacing row `row` of `M` with ones.
///
/// Any row gives the same `r` on a connected graph; this entry point exists
/// so that can be checked.
pub fn solve_with_replaced_row(system: &MasseySystem, row: usize) -> Result<DenseVector> {
    system.ensure_connected()?;
    let n = system.n();
    if row >= n {
        return Err(Error::InvalidParameter(format!(
            "row {row} out of range for {n} teams"
        )));
    }
    let m_hat = system.m.with_row_replaced(row, &vec![1.0; n])?;
    let mut p_hat = system.p.to_vec();
    p_hat[row] = 0.0;
    let r = solve_dense(&m_hat, &p_hat)?;

    let residual = residual_max_norm(&system.m, &r, &system.p);
    if residual > TOL_RESIDUAL * (1.0 + system.p.max_norm()) {
        return Err(Error::InternalMismatch {
            what: "Massey residual",
            deviation: residual,
        });
    }
    Ok(r)
}

/// Splits `r` into `r1_i = Σ_j A_ij r_j / D_ii` and `r2_i = p_i / D_ii`.
pub fn decompose_rating(system: &MasseySystem, r: &[f64]) -> Result<(DenseVector, DenseVector)> {
    let g = &system.graph;
    let mut r1 = Vec::with_capacity(system.n());
    let mut r2 = Vec::with_capacity(system.n());
    for i in 0..system.n() {
        let games = g.degree(i);
        if games == 0 {
            return Err(Error::ZeroGames(system.teams[i].clone()));
        }
        let games = games as f64;
        let opp: f64 = g.neighbors(i).map(|j| g.count(i, j) as f64 * r[j]).sum();
        r1.push(opp / games);
        r2.push(system.p[i] / games);
    }
    Ok((DenseVector::new(r1)?, DenseVector::new(r2)?))
}

/// Offensive and defensive ratings with `o + d = r`.
#[derive(Debug, Clone, PartialEq)]
pub struct OffenseDefense {
    pub o: DenseVector,
    pub d: DenseVector,
    /// Present when the match graph is bipartite and the perturbed system was used.
    pub partition: Option<Bipartition>,
}

/// Solves `(D + A) d = D r − f` and sets `o = r − d`.
///
/// `D + A` is singular exactly when the connected graph is bipartite. In that
/// case the last row is replaced by the side indicator `v` (`+1` on the part
/// holding team 0, `−1` on the other) and the last entry of the right-hand
/// side by zero, which picks the solution with `vᵀd = 0`.
pub fn offense_defense(system: &MasseySystem, r: &[f64]) -> Result<OffenseDefense> {
    system.ensure_connected()?;
    let n = system.n();
    let g = &system.graph;
    let nmat = g.signless_laplacian();
    let q: Vec<f64> = (0..n)
        .map(|i| g.degree(i) as f64 * r[i] - system.f[i])
        .collect();

    let partition = bipartition(g)?;
    let d = match &partition {
        Some(parts) => {
            let v = parts.sign_vector(n);
            let n_hat = nmat.with_row_replaced(n - 1, &v)?;
            let mut q_hat = q.clone();
            q_hat[n - 1] = 0.0;
            solve_dense(&n_hat, &q_hat)?
        }
        None => solve_dense(&nmat, &q)?,
    };

    let residual = residual_max_norm(&nmat, &d, &q);
    if residual > TOL_RESIDUAL * (1.0 + max_abs(&q)) {
        return Err(Error::InternalMismatch {
            what: "offense/defense residual",
            deviation: residual,
        });
    }
    let o = r.iter().zip(d.iter()).map(|(ri, di)| ri - di).collect();
    Ok(OffenseDefense {
        o: DenseVector::new(o)?,
        d,
        partition,
    })
}

/// Current through the edge between `i` and `j` (`i < j`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeFlow {
    pub i: usize,
    pub j: usize,
    pub flow: f64,
}

/// Ohm's law on the match network: conductance `A_ij`, potential `r`.
pub fn edge_flows(system: &MasseySystem, r: &[f64]) -> Vec<EdgeFlow> {
    let g = &system.graph;
    g.edges()
        .map(|(i, j)| EdgeFlow {
            i,
            j,
            flow: g.count(i, j) as f64 * (r[i] - r[j]),
        })
        .collect()
}

/// Net current leaving each node; equals `p` when `r` solves the system.
pub fn node_outflow(n: usize, flows: &[EdgeFlow]) -> Vec<f64> {
    let mut out = vec![0.0; n];
    for e in flows {
        out[e.i] += e.flow;
        out[e.j] -= e.flow;
    }
    out
}

/// Katz centrality `r = α A r + β`, solved as `(I − αA) r = β`.
pub fn katz_rating(a: &DenseMatrix, alpha: f64, beta: &[f64]) -> Result<DenseVector> {
    if !a.is_square() {
        return Err(crate::linalg::LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        }
        .into());
    }
    if !alpha.is_finite() {
        return Err(Error::InvalidParameter("alpha must be finite".into()));
    }
    let n = a.rows();
    let system = DenseMatrix::from_fn(n, n, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        id - alpha * a.get(i, j)
    })?;
    Ok(solve_dense(&system, beta)?)
}

/// Both sides of `‖r − p/n‖ ≤ ‖p‖ (n − λ2) / (n λ2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
/// `‖r − p/n‖ ≤ ‖p‖ (n − λ₂) / (n λ₂)`. Guaranteed only when every pair has
/// met at most once (then all Laplacian eigenvalues are at most `n`); repeated
/// fixtures can push `λ₂` above `n` and make the right side negative.
pub struct SpectralBound {
    pub lambda2: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl SpectralBound {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs + TOL_RESIDUAL * (1.0 + self.rhs)
    }
}

pub fn spectral_gap_bound(system: &MasseySystem, r: &[f64]) -> Result<SpectralBound> {
    system.ensure_connected()?;
    let n = system.n();
    let eig = symmetric_eigenvalues(&system.m)?;
    let lambda2 = eig[1];
    if lambda2 <= crate::linalg::TOL_EIG * n as f64 {
        return Err(Error::DisconnectedGraph {
            components: eig.iter().filter(|&&l| l.abs() <= 1e-8).count(),
            isolated: Vec::new(),
        });
    }
    let nf = n as f64;
    let diff = DenseVector::new(
        r.iter()
            .zip(system.p.iter())
            .map(|(ri, pi)| ri - pi / nf)
            .collect(),
    )?;
    Ok(SpectralBound {
        lambda2,
        lhs: diff.norm2(),
        rhs: system.p.norm2() * (nf - lambda2) / (nf * lambda2),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostics {
    pub connected: bool,
    pub bipartite: bool,
    pub lambda2: f64,
    pub bound_lhs: f64,
    pub bound_rhs: f64,
}

/// Everything the Massey pipeline produces for one match list.
#[derive(Debug, Clone, PartialEq)]
pub struct RatingReport {
    pub teams: Vec<String>,
    pub r: DenseVector,
    pub r1: DenseVector,
    pub r2: DenseVector,
    pub o: DenseVector,
    pub d: DenseVector,
    pub flows: Vec<EdgeFlow>,
    pub diagnostics: Diagnostics,
    pub draws: usize,
}

/// Runs the whole pipeline: system, ratings, decomposition, offense/defense,
/// flows and spectral diagnostics.
pub fn rate(matches: &MatchList) -> Result<RatingReport> {
    let system = build_system(matches)?;
    rate_system(&system, matches.draw_count())
}

pub fn rate_system(system: &MasseySystem, draws: usize) -> Result<RatingReport> {
    let r = solve_ratings(system)?;
    let (r1, r2) = decompose_rating(system, &r)?;
    let od = offense_defense(system, &r)?;
    let bound = spectral_gap_bound(system, &r)?;
    Ok(RatingReport {
        teams: system.teams.clone(),
        flows: edge_flows(system, &r),
        diagnostics: Diagnostics {
            connected: true,
            bipartite: od.partition.is_some(),
            lambda2: bound.lambda2,
            bound_lhs: bound.lhs,
            bound_rhs: bound.rhs,
        },
        r,
        r1,
        r2,
        o: od.o,
        d: od.d,
        draws,
    })
}
