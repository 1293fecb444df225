//! Cohesiveness measurement for communities in temporal, sentiment-labeled
//! social multigraphs, plus an evaluation harness for community search.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: the temporal directed multigraph, induced communities,
//!   simple views and dataset statistics.
//! * [`ingest`]: CSV / JSON-lines edge lists.
//! * [`decay`]: time-decay kernels.
//! * [`dynamics`]: sentiment-aware excitation and elicited sentiment.
//! * [`psych`]: the five psychology-informed measures (EI, SIT, CED, GIP, GID).
//! * [`structural`]: diameter, size, minimum degree, core and truss labels.
//! * [`search`]: reference k-core / k-truss community searchers.
//! * [`harness`]: query generation, parameter grids, search, mapping,
//!   measurement and aggregation.
//! * [`report`]: CSV and JSON report output.
//! * [`fixtures`]: seeded planted-community generator.

pub mod decay;
pub mod dynamics;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod harness;
pub mod ingest;
pub mod psych;
pub mod report;
pub mod search;
pub mod structural;

pub use error::{Error, Result};
