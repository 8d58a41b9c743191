//! Rates regions of a trade network: each flow `source -> target` counts as
//! the source "scoring" against the target.

use rank_forge::cli::io::parse_edges_csv;
use rank_forge::netflow::{rate_network, NetworkRating, RatingMethod};

fn main() -> rank_forge::Result<()> {
    let g = parse_edges_csv(include_str!("../data/trade.csv"))?;
    println!(
        "{} regions, {} edges, {} self-loop(s) dropped",
        g.nodes().len(),
        g.edge_count(),
        g.dropped_self_loops()
    );

    let rating = |g| match rate_network(g, &RatingMethod::Massey) {
        Ok(NetworkRating::Massey(report)) => Ok(report),
        Ok(_) => unreachable!(),
        Err(e) => Err(e),
    };
    let forward = rating(&g)?;
    let backward = rating(&g.reversed())?;
    let show = |x: f64| (x * 1e3).round() / 1e3 + 0.0;

    println!("\n{:<6} {:>9} {:>9}", "region", "rating", "reversed");
    for (i, name) in forward.teams.iter().enumerate() {
        println!(
            "{name:<6} {:>9.3} {:>9.3}",
            show(forward.r[i]),
            show(backward.r[i])
        );
    }
    Ok(())
}
