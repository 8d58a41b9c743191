//! Random instance generators and solver-independent oracles shared by the
//! integration and acceptance tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rank_forge::competition::{round_robin_schedule, Match, MatchList};
use rank_forge::netflow::WeightedDigraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn team_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("T{i:02}")).collect()
}

/// Connected random season: spanning tree plus extra (possibly repeated)
/// fixtures, random order and orientation, integer scores in `0..=max_score`.
pub fn random_connected(
    rng: &mut ChaCha8Rng,
    n_range: (usize, usize),
    max_matches: usize,
    max_score: u32,
) -> MatchList {
    let n = rng.gen_range(n_range.0..=n_range.1);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut pairs: Vec<(usize, usize)> = (1..n)
        .map(|i| (labels[i], labels[rng.gen_range(0..i)]))
        .collect();
    let m = rng.gen_range(n - 1..=max_matches.max(n - 1));
    while pairs.len() < m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            pairs.push((a, b));
        }
    }
    pairs.shuffle(rng);
    let mut list = MatchList::with_teams(team_names(n));
    for (a, b) in pairs {
        let (a, b) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        let sa = rng.gen_range(0..=max_score) as f64;
        let sb = rng.gen_range(0..=max_score) as f64;
        list.push(Match::new(None, a, b, sa, sb).unwrap()).unwrap();
    }
    list
}

/// Connected season in which no pair meets twice.
pub fn random_simple_connected(
    rng: &mut ChaCha8Rng,
    n_range: (usize, usize),
    max_score: u32,
) -> MatchList {
    let n = rng.gen_range(n_range.0..=n_range.1);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut pairs: Vec<(usize, usize)> = (1..n)
        .map(|i| (labels[i], labels[rng.gen_range(0..i)]))
        .collect();
    let key = |(a, b): (usize, usize)| (a.min(b), a.max(b));
    let mut seen: std::collections::HashSet<(usize, usize)> =
        pairs.iter().map(|&p| key(p)).collect();
    let extra = rng.gen_range(0..=n * (n - 1) / 2 - (n - 1));
    while pairs.len() < n - 1 + extra {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b && seen.insert(key((a, b))) {
            pairs.push((a, b));
        }
    }
    pairs.shuffle(rng);
    let mut list = MatchList::with_teams(team_names(n));
    for (a, b) in pairs {
        let sa = rng.gen_range(0..=max_score) as f64;
        let sb = rng.gen_range(0..=max_score) as f64;
        list.push(Match::new(None, a, b, sa, sb).unwrap()).unwrap();
    }
    list
}

/// Every pair meets exactly once, random scores.
pub fn full_round_robin(rng: &mut ChaCha8Rng, n: usize, max_score: u32) -> MatchList {
    let schedule = round_robin_schedule(n).unwrap();
    let mut list = MatchList::with_teams(team_names(n));
    for (d, day) in schedule.days().iter().enumerate() {
        for &(a, b) in day {
            let sa = rng.gen_range(0..=max_score) as f64;
            let sb = rng.gen_range(0..=max_score) as f64;
            list.push(Match::new(Some(d as u32 + 1), a, b, sa, sb).unwrap())
                .unwrap();
        }
    }
    list
}

/// Random digraph whose underlying undirected graph is connected.
pub fn random_digraph(rng: &mut ChaCha8Rng) -> WeightedDigraph {
    let n = rng.gen_range(2..=8);
    let names = team_names(n);
    let mut g = WeightedDigraph::new();
    for name in &names {
        g.add_node(name);
    }
    let weight = |rng: &mut ChaCha8Rng| (rng.gen_range(1..=400) as f64) / 4.0;
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let w = weight(rng);
        if rng.gen_bool(0.5) {
            g.add_edge(&names[i], &names[j], w).unwrap();
        } else {
            g.add_edge(&names[j], &names[i], w).unwrap();
        }
    }
    for _ in 0..rng.gen_range(0..2 * n) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            let w = weight(rng);
            g.add_edge(&names[a], &names[b], w).unwrap();
        }
    }
    g
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    match n {
        0 => 1.0,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => (0..n)
            .map(|c| {
                let minor: Vec<Vec<f64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[0][c] * det(&minor)
            })
            .sum(),
    }
}

/// Cramer's rule.
pub fn cramer(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let d = det(a);
    assert!(d.abs() > 1e-9, "oracle system singular");
    (0..a.len())
        .map(|k| {
            let replaced: Vec<Vec<f64>> = a
                .iter()
                .zip(b)
                .map(|(row, &bi)| {
                    let mut r = row.clone();
                    r[k] = bi;
                    r
                })
                .collect();
            det(&replaced) / d
        })
        .collect()
}

/// Minimum-norm least-squares solution of `X r = y` for a connected match
/// list, built straight from the raw matches.
///
/// Normal equations `XᵀX r = Xᵀy` have nullspace `span(e)`; `XᵀX + eeᵀ` is
/// then nonsingular and its solution is orthogonal to `e`. The result is
/// projected onto `e⊥` once more to absorb rounding.
pub fn min_norm_least_squares(list: &MatchList) -> Vec<f64> {
    let n = list.n_teams();
    let mut normal = vec![vec![0.0; n]; n];
    let mut rhs = vec![0.0; n];
    for m in list.matches() {
        let (i, j) = (m.team_a(), m.team_b());
        // row: +1 at i, -1 at j, value score_a - score_b (orientation-free)
        let y = m.score_a() - m.score_b();
        normal[i][i] += 1.0;
        normal[j][j] += 1.0;
        normal[i][j] -= 1.0;
        normal[j][i] -= 1.0;
        rhs[i] += y;
        rhs[j] -= y;
    }
    for row in normal.iter_mut() {
        for v in row.iter_mut() {
            *v += 1.0;
        }
    }
    let r = cramer(&normal, &rhs);
    let mean = r.iter().sum::<f64>() / n as f64;
    r.into_iter().map(|v| v - mean).collect()
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}
