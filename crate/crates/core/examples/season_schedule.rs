//! How many days a round robin needs before ratings are defined (the match
//! graph is connected) and before offense/defense needs no extra constraint
//! (an odd cycle appears).

use rank_forge::competition::{
    days_to_connected, days_to_nonbipartite, round_robin_schedule, shuffled_round_robin,
};

fn main() -> rank_forge::Result<()> {
    let schedule = round_robin_schedule(6)?;
    for (d, day) in schedule.days().iter().enumerate() {
        println!("day {}: {:?}", d + 1, day);
    }

    println!("\n  n  connected  odd cycle  (worst over 200 shuffles)");
    for n in (4..=16).step_by(2) {
        let mut worst = (0, 0);
        for seed in 0..200 {
            let s = shuffled_round_robin(n, seed)?;
            worst.0 = worst.0.max(days_to_connected(&s)?);
            worst.1 = worst.1.max(days_to_nonbipartite(&s)?);
        }
        println!("{n:>3} {:>10} {:>10}", worst.0, worst.1);
    }
    Ok(())
}
