//! Keener, offense-defense (ODM) and Elo on the same season.

use rank_forge::alt_ratings::{
    elo_run, keener_rating, odm_rating, strength_matrix, EloParams, Smoothing,
};
use rank_forge::cli::io::parse_matches_csv;

fn main() -> rank_forge::Result<()> {
    let list = parse_matches_csv(include_str!("../data/league.csv"))?;
    let a = strength_matrix(&list, Smoothing::Laplace)?;

    let keener = keener_rating(&a, 1e-12, 100_000)?;
    let odm = odm_rating(&a, 1e-12, 100_000)?;
    let elo = elo_run(&list, &EloParams::default());

    println!(
        "keener lambda = {:.4} after {} iterations",
        keener.lambda, keener.iterations
    );
    println!("odm converged after {} sweeps\n", odm.iterations);
    println!(
        "{:<8} {:>8} {:>8} {:>8} {:>8}",
        "team", "keener", "odm o", "odm d", "elo"
    );
    for (i, team) in list.teams().iter().enumerate() {
        println!(
            "{team:<8} {:>8.4} {:>8.3} {:>8.3} {:>8.1}",
            keener.r[i], odm.o[i], odm.d[i], elo[i]
        );
    }
    Ok(())
}
