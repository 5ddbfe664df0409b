//! Exact solvers and learners for small two- and three-player zero-sum
//! imperfect-information games.
//!
//! The crate provides:
//!
//! - [`game`]: an extensive-form game abstraction with n-player Kuhn poker,
//!   n-player Leduc poker, and matrix games lifted to one-shot trees.
//! - [`policy`]: tabular probability/logit policies, the Euclidean simplex
//!   projection, schedules, and a streaming reward normalizer.
//! - [`cfr`]: vanilla counterfactual regret minimization with full tree walks.
//! - [`metrics`]: exact evaluation — expected returns, best response,
//!   NashConv, counterfactual values, and q-values.
//! - [`actor_critic`]: self-play tabular actor-critic training with QPG, RPG,
//!   RMPG, and A2C update rules.
//! - [`projected`]: projected policy-gradient policy iteration (PGPI / ACPI /
//!   SPGPI / SACPI) with per-state online-gradient regret tracking.
//! - [`dynamics`]: replicator / QPG / RPG vector fields, trajectory
//!   integration, and phase-portrait grids on normal-form games.
//! - [`harness`]: run records, flat-file configuration, CSV schemas, and the
//!   head-to-head match runner backing the CLI.

pub mod actor_critic;
pub mod cfr;
pub mod dynamics;
pub mod error;
pub mod game;
pub mod harness;
pub mod metrics;
pub mod policy;
pub mod projected;

pub use error::{Error, Result};
