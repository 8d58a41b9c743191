mod common;

use proptest::prelude::*;

use common::*;
use rank_forge::alt_ratings::{elo_run, keener_rating, strength_matrix, EloParams, Smoothing};
use rank_forge::cli::io::{parse_matches_csv, write_matches_csv};
use rank_forge::competition::{bipartition, build_match_graph, Match, MatchList};
use rank_forge::fixtures::four_team_example;
use rank_forge::linalg::symmetric_eigenvalues;
use rank_forge::massey::{build_incidence, build_system, solve_ratings};
use rank_forge::netflow::digraph_to_matches;

fn shifted(list: &MatchList, by: f64) -> MatchList {
    let mut out = MatchList::with_teams(list.teams().to_vec());
    for m in list.matches() {
        out.push(
            Match::new(
                m.day(),
                m.team_a(),
                m.team_b(),
                m.score_a() + by,
                m.score_b() + by,
            )
            .unwrap(),
        )
        .unwrap();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adding_a_constant_to_both_scores_leaves_ratings(seed in any::<u64>(), by in 0.0f64..50.0) {
        let list = random_connected(&mut rng(seed), (2, 8), 20, 9);
        let r = solve_ratings(&build_system(&list).unwrap()).unwrap();
        let s = solve_ratings(&build_system(&shifted(&list, by)).unwrap()).unwrap();
        prop_assert!(max_diff(&r, &s) < 1e-9);
    }

    #[test]
    fn incidence_rows_and_spread_sum_to_zero(seed in any::<u64>()) {
        let list = random_connected(&mut rng(seed), (2, 8), 20, 9);
        let (x, _) = build_incidence(&list).unwrap();
        for k in 0..x.rows() {
            prop_assert_eq!(x.row(k).iter().sum::<f64>(), 0.0);
        }
        let sys = build_system(&list).unwrap();
        prop_assert!(sys.team_spread().sum().abs() < 1e-9);
        prop_assert!(solve_ratings(&sys).unwrap().sum().abs() < 1e-9);
    }

    #[test]
    fn normal_matrix_is_degree_minus_adjacency(seed in any::<u64>()) {
        let list = random_connected(&mut rng(seed), (2, 8), 20, 9);
        let sys = build_system(&list).unwrap();
        let g = build_match_graph(&list);
        let m = sys.normal_matrix();
        for i in 0..g.n() {
            prop_assert_eq!(m.get(i, i), g.degree(i) as f64);
            prop_assert_eq!(m.row(i).iter().sum::<f64>(), 0.0);
            for j in 0..g.n() {
                if i != j {
                    prop_assert_eq!(m.get(i, j), -(g.count(i, j) as f64));
                }
            }
        }
    }

    #[test]
    fn laplacian_spectrum(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = 2 + (seed % 7) as usize;
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|_| rand::Rng::gen_bool(&mut rng, 0.4))
            .collect();
        let g = rank_forge::competition::MatchGraph::from_pairs(n, pairs);
        let eig = symmetric_eigenvalues(&g.laplacian()).unwrap();
        let max_degree = g.degrees().iter().copied().max().unwrap_or(0) as f64;
        prop_assert!(eig.iter().all(|&l| l > -1e-9 && l <= 2.0 * max_degree + 1e-9));
        let zeros = eig.iter().filter(|l| l.abs() < 1e-8).count();
        prop_assert_eq!(zeros, g.component_count());
    }

    #[test]
    fn bipartition_splits_every_edge(seed in any::<u64>()) {
        let list = random_connected(&mut rng(seed), (2, 8), 10, 9);
        let g = build_match_graph(&list);
        match bipartition(&g).unwrap() {
            Some(parts) => {
                prop_assert!(!g.has_odd_cycle());
                prop_assert_eq!(parts.u.len() + parts.v.len(), g.n());
                let v = parts.sign_vector(g.n());
                for (i, j) in g.edges() {
                    prop_assert!(v[i] != v[j]);
                }
            }
            None => prop_assert!(g.has_odd_cycle()),
        }
    }

    #[test]
    fn laplace_strengths_are_complementary(seed in any::<u64>()) {
        let list = random_connected(&mut rng(seed), (2, 8), 20, 9);
        let a = strength_matrix(&list, Smoothing::Laplace).unwrap();
        let g = build_match_graph(&list);
        for (i, j) in g.edges() {
            prop_assert!((a.get(i, j) + a.get(j, i) - 1.0).abs() < 1e-12);
            prop_assert!(a.get(i, j) > 0.0);
        }
        prop_assert!(a.is_irreducible());
    }

    #[test]
    fn csv_round_trip(seed in any::<u64>()) {
        let list = random_connected(&mut rng(seed), (2, 8), 20, 9);
        let text = write_matches_csv(&list);
        let back = parse_matches_csv(&text).unwrap();
        prop_assert_eq!(back.n_matches(), list.n_matches());
        prop_assert_eq!(write_matches_csv(&back), text);
    }

    #[test]
    fn network_pairs_collapse_to_one_match(seed in any::<u64>()) {
        let g = random_digraph(&mut rng(seed));
        let list = digraph_to_matches(&g);
        let mut pairs: Vec<(usize, usize)> = list.matches().iter().map(|m| (m.team_a(), m.team_b())).collect();
        prop_assert!(pairs.iter().all(|&(a, b)| a < b));
        let before = pairs.len();
        pairs.sort_unstable();
        pairs.dedup();
        prop_assert_eq!(pairs.len(), before);
    }
}

#[test]
fn elo_depends_on_match_order() {
    let list = four_team_example();
    let forward = elo_run(&list, &EloParams::default());
    let expected = [
        1524.5504702906808,
        1511.633247945324,
        1487.9495297093192,
        1475.866752054676,
    ];
    assert!(max_diff(&forward, &expected) < 1e-9);

    let mut reversed = MatchList::with_teams(list.teams().to_vec());
    for m in list.matches().iter().rev() {
        reversed.push(m.clone()).unwrap();
    }
    let backward = elo_run(&reversed, &EloParams::default());
    let expected = [
        1524.133247945324,
        1512.0504702906808,
        1488.366752054676,
        1475.4495297093192,
    ];
    assert!(max_diff(&backward, &expected) < 1e-9);
    assert!((forward.sum() - 6000.0).abs() < 1e-9);
}

#[test]
fn keener_on_example_ranks_a_first() {
    let a = strength_matrix(&four_team_example(), Smoothing::Laplace).unwrap();
    let k = keener_rating(&a, 1e-12, 100_000).unwrap();
    assert!(max_diff(&k.r, &[0.34600608, 0.24394673, 0.22780399, 0.1822432]) < 1e-6);
    assert!((k.lambda - 0.91515026).abs() < 1e-6);
}
