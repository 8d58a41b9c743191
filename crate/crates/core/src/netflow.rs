//! Rating the nodes of a weighted directed network as if they were teams.
//!
//! Every unordered pair of nodes joined by at least one edge becomes one
//! match: `i` scores the weight of `i → j`, `j` scores the weight of
//! `j → i` (zero when that edge is missing). Exporters, lenders and other
//! nodes with heavy outgoing edges end up with high ratings.

use std::collections::{BTreeMap, HashMap};

use crate::alt_ratings::{
    elo_run, keener_rating, odm_rating, strength_matrix, EloParams, KeenerRating, OdmRating,
    Smoothing,
};
use crate::competition::MatchList;
use crate::error::{Error, Result};
use crate::linalg::DenseVector;
use crate::massey::{rate, RatingReport};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct WeightedDigraph {
    nodes: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeMap<(usize, usize), f64>,
    dropped_self_loops: usize,
}

impl WeightedDigraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.nodes.len();
        self.index.insert(name.to_string(), i);
        self.nodes.push(name.to_string());
        i
    }

    /// Adds `source → target`. Repeated edges accumulate; self-loops are
    /// counted and dropped (the node is still registered).
    pub fn add_edge(&mut self, source: &str, target: &str, weight: f64) -> Result<()> {
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "edge {source} -> {target}: weight must be positive and finite, got {weight}"
            )));
        }
        let s = self.add_node(source);
        let t = self.add_node(target);
        if s == t {
            log::warn!("dropping self-loop on {source} (weight {weight})");
            self.dropped_self_loops += 1;
            return Ok(());
        }
        *self.edges.entry((s, t)).or_insert(0.0) += weight;
        Ok(())
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn weight(&self, source: usize, target: usize) -> Option<f64> {
        self.edges.get(&(source, target)).copied()
    }

    /// Edges in (source, target) index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.edges.iter().map(|(&(s, t), &w)| (s, t, w))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn dropped_self_loops(&self) -> usize {
        self.dropped_self_loops
    }

    /// Same nodes, every edge reversed.
    pub fn reversed(&self) -> Self {
        let mut g = self.clone();
        g.edges = self.edges.iter().map(|(&(s, t), &w)| ((t, s), w)).collect();
        g
    }

    /// Same topology with every weight multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "scale must be positive, got {c}"
            )));
        }
        let mut g = self.clone();
        g.edges.values_mut().for_each(|w| *w *= c);
        Ok(g)
    }
}

/// One aggregate match per connected unordered pair, all on day 1.
///
/// The lower-indexed node is listed first.
pub fn digraph_to_matches(g: &WeightedDigraph) -> MatchList {
    let mut list = MatchList::with_teams(g.nodes.iter().cloned());
    let mut pairs: Vec<(usize, usize)> =
        g.edges.keys().map(|&(s, t)| (s.min(t), s.max(t))).collect();
    pairs.sort_unstable();
    pairs.dedup();
    for (i, j) in pairs {
        let forward = g.weight(i, j).unwrap_or(0.0);
        let backward = g.weight(j, i).unwrap_or(0.0);
        let m = crate::competition::Match::new(Some(1), i, j, forward, backward)
            .expect("weights are validated on insertion");
        list.push(m).expect("registered nodes");
    }
    list
}

#[derive(Debug, Clone, PartialEq)]
pub enum RatingMethod {
    Massey,
    Keener {
        smoothing: Smoothing,
        tol: f64,
        max_iter: usize,
    },
    Odm {
        smoothing: Smoothing,
        tol: f64,
        max_iter: usize,
    },
    Elo(EloParams),
}

#[derive(Debug, Clone, PartialEq)]
pub enum NetworkRating {
    Massey(RatingReport),
    Keener(KeenerRating),
    Odm(OdmRating),
    Elo(DenseVector),
}

/// Rates the network's nodes with `method` applied to the derived matches.
pub fn rate_network(g: &WeightedDigraph, method: &RatingMethod) -> Result<NetworkRating> {
    rate_matches(&digraph_to_matches(g), method)
}

/// Dispatches a match list to a rating method.
pub fn rate_matches(matches: &MatchList, method: &RatingMethod) -> Result<NetworkRating> {
    Ok(match method {
        RatingMethod::Massey => NetworkRating::Massey(rate(matches)?),
        RatingMethod::Keener {
            smoothing,
            tol,
            max_iter,
        } => NetworkRating::Keener(keener_rating(
            &strength_matrix(matches, *smoothing)?,
            *tol,
            *max_iter,
        )?),
        RatingMethod::Odm {
            smoothing,
            tol,
            max_iter,
        } => NetworkRating::Odm(odm_rating(
            &strength_matrix(matches, *smoothing)?,
            *tol,
            *max_iter,
        )?),
        RatingMethod::Elo(params) => NetworkRating::Elo(elo_run(matches, params)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_diff;

    fn graph(edges: &[(&str, &str, f64)]) -> WeightedDigraph {
        let mut g = WeightedDigraph::new();
        for &(s, t, w) in edges {
            g.add_edge(s, t, w).unwrap();
        }
        g
    }

    fn massey_r(g: &WeightedDigraph) -> Vec<f64> {
        match rate_network(g, &RatingMethod::Massey).unwrap() {
            NetworkRating::Massey(rep) => rep.r.into_inner(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn reciprocal_edges_make_one_match() {
        let list = digraph_to_matches(&graph(&[("A", "B", 3.0), ("B", "A", 1.0)]));
        assert_eq!(list.n_matches(), 1);
        let m = &list.matches()[0];
        assert_eq!((m.score_a(), m.score_b()), (3.0, 1.0));
        assert_eq!(m.day(), Some(1));
    }

    #[test]
    fn one_way_edge_scores_zero() {
        let list = digraph_to_matches(&graph(&[("A", "B", 2.0)]));
        let m = &list.matches()[0];
        assert_eq!(
            (m.team_a(), m.team_b(), m.score_a(), m.score_b()),
            (0, 1, 2.0, 0.0)
        );
        // reverse-only edge is listed with the lower index first
        let list = digraph_to_matches(&graph(&[("A", "C", 1.0), ("B", "A", 2.0)]));
        let m = &list.matches()[1];
        assert_eq!(
            (m.team_a(), m.team_b(), m.score_a(), m.score_b()),
            (0, 2, 0.0, 2.0)
        );
    }

    #[test]
    fn empty_graph() {
        let list = digraph_to_matches(&WeightedDigraph::new());
        assert_eq!(list.n_matches(), 0);
        assert_eq!(list.n_teams(), 0);
    }

    #[test]
    fn ingestion_rules() {
        let g = graph(&[("A", "B", 3.0), ("A", "B", 2.0), ("A", "A", 5.0)]);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weight(0, 1), Some(5.0));
        assert_eq!(g.dropped_self_loops(), 1);
        let mut g = WeightedDigraph::new();
        assert!(g.add_edge("A", "B", 0.0).is_err());
        assert!(g.add_edge("A", "B", f64::NAN).is_err());
    }

    #[test]
    fn two_banks() {
        let r = massey_r(&graph(&[("A", "B", 10.0), ("B", "A", 4.0)]));
        assert!(max_diff(&r, &[3.0, -3.0]) < 1e-12);
    }

    #[test]
    fn symmetric_network_rates_zero() {
        let r = massey_r(&graph(&[
            ("A", "B", 2.0),
            ("B", "A", 2.0),
            ("B", "C", 5.0),
            ("C", "B", 5.0),
        ]));
        assert!(r.iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn star_exporter() {
        let r = massey_r(&graph(&[("A", "B", 1.0), ("A", "C", 1.0), ("A", "D", 1.0)]));
        // M r = p with p = (3,-1,-1,-1): r = (3/4, -1/4, -1/4, -1/4)
        assert!(max_diff(&r, &[0.75, -0.25, -0.25, -0.25]) < 1e-12);
    }

    #[test]
    fn other_methods_dispatch() {
        let g = graph(&[
            ("A", "B", 3.0),
            ("B", "A", 1.0),
            ("B", "C", 2.0),
            ("C", "A", 1.0),
        ]);
        let laplace = Smoothing::Laplace;
        assert!(matches!(
            rate_network(
                &g,
                &RatingMethod::Keener {
                    smoothing: laplace,
                    tol: 1e-10,
                    max_iter: 10_000
                }
            ),
            Ok(NetworkRating::Keener(_))
        ));
        assert!(matches!(
            rate_network(
                &g,
                &RatingMethod::Odm {
                    smoothing: laplace,
                    tol: 1e-10,
                    max_iter: 10_000
                }
            ),
            Ok(NetworkRating::Odm(_))
        ));
        match rate_network(&g, &RatingMethod::Elo(EloParams::default())).unwrap() {
            NetworkRating::Elo(r) => assert!((r.sum() - 4500.0).abs() < 1e-9),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn disconnected_network_propagates() {
        let g = graph(&[("A", "B", 1.0), ("C", "D", 1.0)]);
        assert!(matches!(
            rate_network(&g, &RatingMethod::Massey),
            Err(Error::DisconnectedGraph { .. })
        ));
    }
}
