//! Splits Massey ratings into offensive and defensive parts for a small
//! league read from CSV.

use rank_forge::cli::io::parse_matches_csv;
use rank_forge::massey::rate;

fn main() -> rank_forge::Result<()> {
    let list = parse_matches_csv(include_str!("../data/league.csv"))?;
    let report = rate(&list)?;
    println!("{:<8} {:>8} {:>8} {:>8}", "team", "r", "o", "d");
    let mut order: Vec<usize> = (0..report.teams.len()).collect();
    order.sort_by(|&a, &b| report.r[b].total_cmp(&report.r[a]));
    for i in order {
        println!(
            "{:<8} {:>8.3} {:>8.3} {:>8.3}",
            report.teams[i], report.r[i], report.o[i], report.d[i]
        );
    }
    println!("\n{} draws", report.draws);
    Ok(())
}
