//! Keener's Perron-vector rating, the offense-defense balancing method and Elo.
//!
//! Keener and offense-defense both start from a [`StrengthMatrix`] whose
//! entry `(i, j)` measures how strong `i` looked against `j`. Elo works on
//! the raw results directly, one match at a time.

use std::collections::VecDeque;

use crate::competition::MatchList;
use crate::error::{Error, Result};
use crate::linalg::{max_diff, DenseMatrix, DenseVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Smoothing {
    /// `S_ij / (S_ij + S_ji)`
    Raw,
    /// `(S_ij + 1) / (S_ij + S_ji + 2)`
    #[default]
    Laplace,
}

/// Nonnegative pairwise strengths with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct StrengthMatrix {
    entries: DenseMatrix,
}

impl StrengthMatrix {
    /// Accepts any square, nonnegative matrix with zero diagonal.
    pub fn new(entries: DenseMatrix) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::InvalidParameter(
                "strength matrix must be square".into(),
            ));
        }
        let n = entries.rows();
        for i in 0..n {
            if entries.get(i, i) != 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "strength matrix diagonal entry {i} is nonzero"
                )));
            }
            for j in 0..n {
                if entries.get(i, j) < 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "strength matrix entry ({i}, {j}) is negative"
                    )));
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries.get(i, j)
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.entries
    }

    /// Whether the directed graph of positive entries is strongly connected.
    pub fn is_irreducible(&self) -> bool {
        let n = self.n();
        if n <= 1 {
            return true;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            seen[0] = true;
            let mut queue = VecDeque::from([0]);
            while let Some(u) = queue.pop_front() {
                for (v, seen_v) in seen.iter_mut().enumerate() {
                    let w = if forward {
                        self.get(u, v)
                    } else {
                        self.get(v, u)
                    };
                    if w > 0.0 && !*seen_v {
                        *seen_v = true;
                        queue.push_back(v);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(true) && reach(false)
    }
}

/// Aggregates points scored pairwise and converts them to strengths.
///
/// Only pairs that actually met get a nonzero entry, under either smoothing.
pub fn strength_matrix(matches: &MatchList, smoothing: Smoothing) -> Result<StrengthMatrix> {
    let n = matches.n_teams();
    let mut scored = vec![0.0; n * n];
    let mut met = vec![false; n * n];
    for m in matches.matches() {
        let (i, j) = (m.team_a(), m.team_b());
        scored[i * n + j] += m.score_a();
        scored[j * n + i] += m.score_b();
        met[i * n + j] = true;
        met[j * n + i] = true;
    }
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if !met[i * n + j] {
                continue;
            }
            let (s_ij, s_ji) = (scored[i * n + j], scored[j * n + i]);
            entries[i * n + j] = match smoothing {
                Smoothing::Raw => {
                    if s_ij + s_ji == 0.0 {
                        return Err(Error::RawUndefined(
                            matches.team_name(i.min(j)).to_string(),
                            matches.team_name(i.max(j)).to_string(),
                        ));
                    }
                    s_ij / (s_ij + s_ji)
                }
                Smoothing::Laplace => (s_ij + 1.0) / (s_ij + s_ji + 2.0),
            };
        }
    }
    StrengthMatrix::new(DenseMatrix::new(n, n, entries)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct KeenerRating {
    /// Positive Perron vector, summing to one.
    pub r: DenseVector,
    pub lambda: f64,
    pub iterations: usize,
}

/// Perron vector of the strength matrix by power iteration.
///
/// Iterates with `A + I`, which has the same Perron vector as `A` but no
/// other eigenvalue of equal modulus, so periodic (bipartite) strength
/// patterns converge too.
pub fn keener_rating(a: &StrengthMatrix, tol: f64, max_iter: usize) -> Result<KeenerRating> {
    check_tol(tol)?;
    if !a.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let n = a.n();
    let m = a.matrix();
    let mut x = vec![1.0 / n as f64; n];
    for it in 1..=max_iter {
        let ax = m.matvec(&x)?;
        let mut next: Vec<f64> = ax.iter().zip(&x).map(|(p, q)| p + q).collect();
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|v| *v /= total);
        let change = max_diff(&next, &x);
        x = next;
        if change < tol {
            let lambda = m.matvec(&x)?.sum();
            return Ok(KeenerRating {
                r: DenseVector::new(x)?,
                lambda,
                iterations: it,
            });
        }
    }
    Err(Error::NoConvergence {
        method: "keener",
        iterations: max_iter,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OdmRating {
    /// Offensive ratings, geometric mean one. Higher is stronger.
    pub o: DenseVector,
    /// Defensive ratings. Lower is stronger.
    pub d: DenseVector,
    pub iterations: usize,
}

fn geometric_mean(v: &[f64]) -> f64 {
    (v.iter().map(|x| x.ln()).sum::<f64>() / v.len() as f64).exp()
}

/// `o = A d^÷`, `d = Aᵀ o^÷`, alternated from `d = 1`.
///
/// The fixed points form a family `(c·o, d/c)`; `o` is rescaled to geometric
/// mean one on every sweep so the iterates converge to a single member.
pub fn odm_rating(a: &StrengthMatrix, tol: f64, max_iter: usize) -> Result<OdmRating> {
    check_tol(tol)?;
    let n = a.n();
    let m = a.matrix();
    let mt = m.transpose();
    let no_convergence = |iterations| Error::NoConvergence {
        method: "offense-defense",
        iterations,
    };
    let recip = |v: &[f64]| -> Vec<f64> { v.iter().map(|x| 1.0 / x).collect() };
    let mut o = vec![1.0; n];
    let mut d = vec![1.0; n];
    for it in 1..=max_iter {
        let mut next_o = m
            .matvec(&recip(&d))
            .map_err(|_| no_convergence(it))?
            .into_inner();
        if next_o.iter().any(|&x| x <= 0.0) {
            return Err(no_convergence(it));
        }
        let g = geometric_mean(&next_o);
        next_o.iter_mut().for_each(|x| *x /= g);
        let next_d = mt
            .matvec(&recip(&next_o))
            .map_err(|_| no_convergence(it))?
            .into_inner();
        if next_d.iter().any(|&x| x <= 0.0) {
            return Err(no_convergence(it));
        }
        let change = max_diff(&next_o, &o).max(max_diff(&next_d, &d));
        o = next_o;
        d = next_d;
        if change < tol {
            return Ok(OdmRating {
                o: DenseVector::new(o)?,
                d: DenseVector::new(d)?,
                iterations: it,
            });
        }
    }
    Err(no_convergence(max_iter))
}

/// Residuals `(‖o − A d^÷‖∞, ‖d − Aᵀ o^÷‖∞)` of an offense-defense pair.
pub fn odm_residuals(a: &StrengthMatrix, o: &[f64], d: &[f64]) -> Result<(f64, f64)> {
    let recip = |v: &[f64]| -> Vec<f64> { v.iter().map(|x| 1.0 / x).collect() };
    let ao = a.matrix().matvec(&recip(d))?;
    let ad = a.matrix().transpose().matvec(&recip(o))?;
    Ok((max_diff(o, &ao), max_diff(d, &ad)))
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EloParams {
    kappa: f64,
    zeta: f64,
    initial_rating: f64,
}

impl Default for EloParams {
    fn default() -> Self {
        Self {
            kappa: 25.0,
            zeta: 400.0,
            initial_rating: 1500.0,
        }
    }
}

impl EloParams {
    pub fn new(kappa: f64, zeta: f64, initial_rating: f64) -> Result<Self> {
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "kappa must be positive, got {kappa}"
            )));
        }
        if !(zeta > 0.0 && zeta.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "zeta must be positive, got {zeta}"
            )));
        }
        if !initial_rating.is_finite() {
            return Err(Error::InvalidParameter(
                "initial rating must be finite".into(),
            ));
        }
        Ok(Self {
            kappa,
            zeta,
            initial_rating,
        })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    pub fn initial_rating(&self) -> f64 {
        self.initial_rating
    }
}

/// Expected score of `i` against `j`: `1 / (1 + 10^(−(r_i − r_j)/ζ))`.
pub fn elo_expected(r_i: f64, r_j: f64, zeta: f64) -> f64 {
    1.0 / (1.0 + 10f64.powf(-(r_i - r_j) / zeta))
}

/// One Elo update. `s_ij` is `i`'s score (1 win, 0.5 draw, 0 loss).
///
/// # Panics
///
/// If `s_ij` is outside `[0, 1]`.
pub fn elo_update(r_i: f64, r_j: f64, s_ij: f64, params: &EloParams) -> (f64, f64) {
    assert!((0.0..=1.0).contains(&s_ij), "score {s_ij} outside [0, 1]");
    let mu_ij = elo_expected(r_i, r_j, params.zeta);
    // j gains kappa * ((1 - s_ij) - (1 - mu_ij)), the same amount with opposite sign
    let delta = params.kappa * (s_ij - mu_ij);
    (r_i + delta, r_j - delta)
}

/// Sequential Elo over the matches in (day, input order).
pub fn elo_run(matches: &MatchList, params: &EloParams) -> DenseVector {
    let mut ratings = vec![params.initial_rating; matches.n_teams()];
    for k in matches.chronological() {
        let m = &matches.matches()[k];
        let (i, j) = (m.team_a(), m.team_b());
        let s = if m.score_a() > m.score_b() {
            1.0
        } else if m.score_a() == m.score_b() {
            0.5
        } else {
            0.0
        };
        let (ri, rj) = elo_update(ratings[i], ratings[j], s, params);
        ratings[i] = ri;
        ratings[j] = rj;
    }
    DenseVector::new(ratings).expect("finite ratings")
}
