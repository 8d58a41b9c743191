//! CSV ingestion for match results and weighted edge lists.

use crate::competition::MatchList;
use crate::error::{Error, Result};
use crate::netflow::WeightedDigraph;

pub const MATCH_HEADER: [&str; 5] = ["day", "team_a", "team_b", "score_a", "score_b"];
pub const EDGE_HEADER: [&str; 3] = ["source", "target", "weight"];

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes())
}

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

fn check_header(rdr: &mut csv::Reader<&[u8]>, expected: &[&str]) -> Result<()> {
    let header = rdr.headers().map_err(|e| parse_err(1, e.to_string()))?;
    let got: Vec<&str> = header.iter().collect();
    if got != expected {
        return Err(parse_err(
            1,
            format!(
                "expected header `{}`, got `{}`",
                expected.join(","),
                got.join(",")
            ),
        ));
    }
    Ok(())
}

fn records(text: &str, expected: &[&str]) -> Result<Vec<(usize, csv::StringRecord)>> {
    let mut rdr = reader(text);
    check_header(&mut rdr, expected)?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            parse_err(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() != expected.len() {
            return Err(parse_err(
                line,
                format!("expected {} fields, got {}", expected.len(), rec.len()),
            ));
        }
        out.push((line, rec));
    }
    Ok(out)
}

fn parse_nonneg(line: usize, field: &str, value: &str) -> Result<f64> {
    let v: f64 = value
        .parse()
        .map_err(|_| parse_err(line, format!("{field} `{value}` is not a number")))?;
    if !v.is_finite() {
        return Err(parse_err(line, format!("{field} must be finite")));
    }
    if v < 0.0 {
        return Err(parse_err(
            line,
            format!("{field} must be nonnegative, got {value}"),
        ));
    }
    Ok(v)
}

/// Parses `day,team_a,team_b,score_a,score_b` rows.
///
/// Teams are registered in order of first appearance in the `team_a`
/// column, then in the `team_b` column. A blank day falls back to the row's
/// input position.
pub fn parse_matches_csv(text: &str) -> Result<MatchList> {
    let rows = records(text, &MATCH_HEADER)?;
    let mut list = MatchList::new();
    for (line, rec) in &rows {
        if rec[1].is_empty() || rec[2].is_empty() {
            return Err(parse_err(*line, "team name must not be empty"));
        }
    }
    for col in [1, 2] {
        for (_, rec) in &rows {
            list.register(&rec[col]);
        }
    }
    for (line, rec) in rows {
        let day = match &rec[0] {
            "" => None,
            d => match d.parse::<u32>() {
                Ok(v) if v > 0 => Some(v),
                _ => {
                    return Err(parse_err(
                        line,
                        format!("day `{d}` is not a positive integer"),
                    ))
                }
            },
        };
        let score_a = parse_nonneg(line, "score_a", &rec[3])?;
        let score_b = parse_nonneg(line, "score_b", &rec[4])?;
        list.add(day, &rec[1], &rec[2], score_a, score_b)
            .map_err(|e| match e {
                Error::InvalidMatch { reason, .. } => parse_err(line, reason),
                other => other,
            })?;
    }
    Ok(list)
}

/// Writes a match list in the format read by [`parse_matches_csv`].
pub fn write_matches_csv(list: &MatchList) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(MATCH_HEADER).expect("in-memory write");
    for m in list.matches() {
        let day = m.day().map(|d| d.to_string()).unwrap_or_default();
        w.write_record([
            day,
            list.team_name(m.team_a()).to_string(),
            list.team_name(m.team_b()).to_string(),
            m.score_a().to_string(),
            m.score_b().to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// Parses `source,target,weight` rows. Repeated edges are summed and
/// self-loops dropped (see [`WeightedDigraph::dropped_self_loops`]).
pub fn parse_edges_csv(text: &str) -> Result<WeightedDigraph> {
    let mut g = WeightedDigraph::new();
    for (line, rec) in records(text, &EDGE_HEADER)? {
        if rec[0].is_empty() || rec[1].is_empty() {
            return Err(parse_err(line, "node name must not be empty"));
        }
        let w = parse_nonneg(line, "weight", &rec[2])?;
        if w == 0.0 {
            return Err(parse_err(line, "weight must be positive"));
        }
        g.add_edge(&rec[0], &rec[1], w)
            .map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{four_team_example, FOUR_TEAM_CSV};

    #[test]
    fn example_table() {
        let list = parse_matches_csv(FOUR_TEAM_CSV).unwrap();
        assert_eq!(list.teams(), ["A", "B", "C", "D"]);
        assert_eq!(list.n_matches(), 4);
        assert_eq!(list, four_team_example());
    }

    #[test]
    fn header_only() {
        let list = parse_matches_csv("day,team_a,team_b,score_a,score_b\n").unwrap();
        assert_eq!(list.n_matches(), 0);
        assert_eq!(list.n_teams(), 0);
    }

    #[test]
    fn crlf_and_days() {
        let list =
            parse_matches_csv("day,team_a,team_b,score_a,score_b\r\n3,X,Y,1.5,0\r\n1,Y,Z,2,2\r\n")
                .unwrap();
        assert_eq!(list.matches()[0].day(), Some(3));
        assert_eq!(list.chronological(), vec![1, 0]);
        assert_eq!(list.teams(), ["X", "Y", "Z"]);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let text = "day,team_a,team_b,score_a,score_b\n,A,B,1,0\n,A,C,-1,0\n";
        assert_eq!(
            parse_matches_csv(text),
            Err(Error::Parse {
                line: 3,
                reason: "score_a must be nonnegative, got -1".into()
            })
        );
        let bad = [
            "team_a,team_b\nA,B\n",
            "day,team_a,team_b,score_a,score_b\n,A,B,x,0\n",
            "day,team_a,team_b,score_a,score_b\n0,A,B,1,0\n",
            "day,team_a,team_b,score_a,score_b\n,A,A,1,0\n",
            "day,team_a,team_b,score_a,score_b\n,A,,1,0\n",
            "day,team_a,team_b,score_a,score_b\n,A,B,1\n",
            "day,team_a,team_b,score_a,score_b\n,A,B,inf,0\n",
        ];
        for (k, t) in bad.iter().enumerate() {
            match parse_matches_csv(t) {
                Err(Error::Parse { line, .. }) => assert!(line >= 1, "case {k}"),
                other => panic!("case {k}: {other:?}"),
            }
        }
    }

    #[test]
    fn edge_list_rules() {
        let g = parse_edges_csv("source,target,weight\nA,B,3\nB,A,1\n").unwrap();
        assert_eq!(g.nodes().len(), 2);
        assert_eq!(g.edge_count(), 2);

        let g = parse_edges_csv("source,target,weight\nA,A,5\n").unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.dropped_self_loops(), 1);

        let g = parse_edges_csv("source,target,weight\nA,B,3\nA,B,2\n").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weight(0, 1), Some(5.0));

        assert!(matches!(
            parse_edges_csv("source,target,weight\nA,B,0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn writes_what_it_reads() {
        let text = "day,team_a,team_b,score_a,score_b\n2,A,B,1.25,0\n,B,C,3,3\n";
        let list = parse_matches_csv(text).unwrap();
        assert_eq!(write_matches_csv(&list), text);
    }
}
