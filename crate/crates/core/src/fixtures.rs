//! Small built-in competitions used by the examples and tests.

use crate::competition::MatchList;

/// Four teams, four matches: A–C 2:0, A–D 3:0, B–C 1:1, B–D 2:1.
///
/// Registry order is A, B, C, D; matches carry no day.
pub fn four_team_example() -> MatchList {
    let mut list = MatchList::with_teams(["A", "B", "C", "D"]);
    for (a, b, sa, sb) in [
        ("A", "C", 2.0, 0.0),
        ("A", "D", 3.0, 0.0),
        ("B", "C", 1.0, 1.0),
        ("B", "D", 2.0, 1.0),
    ] {
        list.add(None, a, b, sa, sb).expect("valid fixture");
    }
    list
}

/// The four-team example as the CSV accepted by the command line.
pub const FOUR_TEAM_CSV: &str = "day,team_a,team_b,score_a,score_b
,A,C,2,0
,A,D,3,0
,B,C,1,1
,B,D,2,1
";
