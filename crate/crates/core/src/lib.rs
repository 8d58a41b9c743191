//! Least-squares team ratings and the graph machinery around them.
//!
//! The core is Massey's method: every match contributes an equation
//! `r_winner − r_loser = margin`, and the ratings are the least-squares
//! solution normalised to sum to zero. The crate also decomposes ratings
//! into schedule-strength and point-spread parts, splits them into
//! offensive and defensive components, and exposes the electrical-network
//! view of the system (edge flows, Katz centrality, spectral bounds).
//!
//! Related methods (Keener, offense-defense balancing, Elo) live in
//! [`alt_ratings`], and [`netflow`] turns any weighted directed network into
//! a competition so the same machinery can rate its nodes.
//!
//! ```
//! use rank_forge::{fixtures, massey};
//!
//! let matches = fixtures::four_team_example();
//! let report = massey::rate(&matches).unwrap();
//! assert!((report.r[0] - 1.75).abs() < 1e-12);
//! ```

pub mod alt_ratings;
pub mod cli;
pub mod competition;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod massey;
pub mod netflow;

pub use competition::{Match, MatchGraph, MatchList, Schedule};
pub use error::{Error, Result};
pub use linalg::{DenseMatrix, DenseVector};
