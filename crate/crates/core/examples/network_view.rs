//! Ratings seen as a network: edge flows, a Katz-style rating on the match
//! graph, and the spectral bound relating r to p/n.

use rank_forge::competition::build_match_graph;
use rank_forge::fixtures::four_team_example;
use rank_forge::massey::{
    build_system, edge_flows, katz_rating, node_outflow, solve_ratings, spectral_gap_bound,
};

fn main() -> rank_forge::Result<()> {
    let list = four_team_example();
    let sys = build_system(&list)?;
    let r = solve_ratings(&sys)?;

    let flows = edge_flows(&sys, &r);
    for f in &flows {
        println!(
            "{} -> {}: {:+.3}",
            list.team_name(f.i),
            list.team_name(f.j),
            f.flow
        );
    }
    println!(
        "outflow {:?} equals p {:?}",
        node_outflow(sys.n(), &flows),
        &**sys.team_spread()
    );

    let adjacency = build_match_graph(&list).adjacency_matrix();
    let katz = katz_rating(&adjacency, 0.2, &[1.0; 4])?;
    println!("\nkatz (alpha 0.2): {:?}", &*katz);

    let bound = spectral_gap_bound(&sys, &r)?;
    println!(
        "\nlambda2 = {:.4}, |r - p/n| = {:.6} <= {:.6}",
        bound.lambda2, bound.lhs, bound.rhs
    );
    Ok(())
}
