//! Serializable report shapes and their JSON / CSV / table renderings.
//!
//! Struct field order is the JSON key order. Reals are written with exactly
//! six decimals.

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// A real printed with six decimals (`-0.000000` normalised to `0.000000`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fixed6(pub f64);

impl Fixed6 {
    pub fn render(self) -> String {
        let s = format!("{:.6}", self.0);
        if s == "-0.000000" {
            "0.000000".to_string()
        } else {
            s
        }
    }
}

impl Serialize for Fixed6 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(self.render()).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

pub fn fixed(values: &[f64]) -> Vec<Fixed6> {
    values.iter().copied().map(Fixed6).collect()
}

#[derive(Debug, Serialize)]
pub struct MasseyColumns {
    pub r: Vec<Fixed6>,
    pub r1: Vec<Fixed6>,
    pub r2: Vec<Fixed6>,
    pub o: Vec<Fixed6>,
    pub d: Vec<Fixed6>,
}

#[derive(Debug, Serialize)]
pub struct FlowOut {
    pub from: String,
    pub to: String,
    pub flow: Fixed6,
}

#[derive(Debug, Serialize)]
pub struct DiagnosticsOut {
    pub connected: bool,
    pub bipartite: bool,
    pub lambda2: Fixed6,
    pub bound_lhs: Fixed6,
    pub bound_rhs: Fixed6,
}

#[derive(Debug, Serialize)]
pub struct Metadata {
    pub teams: usize,
    pub matches: usize,
    pub draws: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_loops_dropped: Option<usize>,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Ratings {
    Massey(MasseyColumns),
    Single {
        r: Vec<Fixed6>,
    },
    OffenseDefense {
        rating: Vec<Fixed6>,
        o: Vec<Fixed6>,
        d: Vec<Fixed6>,
    },
}

#[derive(Debug, Serialize)]
pub struct RateOut {
    pub command: &'static str,
    pub method: &'static str,
    pub teams: Vec<String>,
    pub ratings: Ratings,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Fixed6>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flows: Option<Vec<FlowOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<DiagnosticsOut>,
    pub metadata: Metadata,
}

impl RateOut {
    /// Column names and per-team values, first column being `rating`.
    fn columns(&self) -> Vec<(&'static str, &[Fixed6])> {
        match &self.ratings {
            Ratings::Massey(c) => vec![
                ("rating", &c.r[..]),
                ("r1", &c.r1[..]),
                ("r2", &c.r2[..]),
                ("o", &c.o[..]),
                ("d", &c.d[..]),
            ],
            Ratings::Single { r } => vec![("rating", &r[..])],
            Ratings::OffenseDefense { rating, o, d } => {
                vec![("rating", &rating[..]), ("o", &o[..]), ("d", &d[..])]
            }
        }
    }

    pub fn to_csv(&self) -> String {
        let cols = self.columns();
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["team"];
        header.extend(cols.iter().map(|(name, _)| *name));
        w.write_record(&header).expect("in-memory write");
        for (i, team) in self.teams.iter().enumerate() {
            let mut row = vec![team.clone()];
            row.extend(cols.iter().map(|(_, v)| v[i].render()));
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_table(&self) -> String {
        let cols = self.columns();
        let width = self.teams.iter().map(|t| t.len()).max().unwrap_or(4).max(4);
        let mut out = format!("{:<width$}", "team");
        for (name, _) in &cols {
            out.push_str(&format!(" {name:>12}"));
        }
        out.push('\n');
        for (i, team) in self.teams.iter().enumerate() {
            out.push_str(&format!("{team:<width$}"));
            for (_, v) in &cols {
                out.push_str(&format!(" {:>12}", v[i].render()));
            }
            out.push('\n');
        }
        if let Some(diag) = &self.diagnostics {
            out.push_str(&format!(
                "\nconnected={} bipartite={} lambda2={} bound {} <= {}\n",
                diag.connected,
                diag.bipartite,
                diag.lambda2.render(),
                diag.bound_lhs.render(),
                diag.bound_rhs.render()
            ));
        }
        out.push_str(&format!(
            "{} teams, {} matches, {} draws\n",
            self.metadata.teams, self.metadata.matches, self.metadata.draws
        ));
        out
    }
}

#[derive(Debug, Serialize)]
pub struct PartitionOut {
    pub u: Vec<String>,
    pub v: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct GraphCheckOut {
    pub command: &'static str,
    pub teams: Vec<String>,
    pub matches: usize,
    pub connected: bool,
    pub components: usize,
    pub isolated: Vec<String>,
    pub bipartite: Option<bool>,
    pub partition: Option<PartitionOut>,
    pub has_odd_cycle: bool,
    pub lambda2: Fixed6,
    pub dated: bool,
    pub days_to_connected: Option<usize>,
    pub days_to_nonbipartite: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct SimulateOut {
    pub command: &'static str,
    pub teams: usize,
    pub seed: Option<u64>,
    pub days: Vec<Vec<[usize; 2]>>,
    pub days_to_connected: usize,
    pub days_to_nonbipartite: usize,
    pub connected_bounds: [usize; 2],
    pub nonbipartite_bounds: [usize; 2],
    pub within_bounds: bool,
}

/// Flat `key,value` lines for reports that are not per-team tables.
pub fn key_values(value: &serde_json::Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    if let serde_json::Value::Object(map) = value {
        for (k, v) in map {
            let rendered = match v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Null => String::new(),
                other => other.to_string(),
            };
            out.push((k.clone(), rendered));
        }
    }
    out
}
