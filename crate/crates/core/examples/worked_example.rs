//! Massey ratings for the four-team example, step by step.

use rank_forge::fixtures::four_team_example;
use rank_forge::massey::{build_incidence, build_system, decompose_rating, solve_ratings};

fn main() -> rank_forge::Result<()> {
    let list = four_team_example();
    let (x, y) = build_incidence(&list)?;
    println!("X =\n{x}y = {:?}\n", &*y);

    let sys = build_system(&list)?;
    println!("M = X'X =\n{}", sys.normal_matrix());
    println!("p = {:?}", &**sys.team_spread());

    let r = solve_ratings(&sys)?;
    let (r1, r2) = decompose_rating(&sys, &r)?;
    println!("\n{:<4} {:>8} {:>8} {:>8}", "team", "r", "r1", "r2");
    for (i, team) in sys.teams().iter().enumerate() {
        println!("{team:<4} {:>8.4} {:>8.4} {:>8.4}", r[i], r1[i], r2[i]);
    }
    Ok(())
}
