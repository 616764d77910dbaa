//! Network motif analysis for directed graphs.
//!
//! The crate counts 3- and 4-node motifs, compares the counts against
//! degree-preserving randomized ensembles, scores each motif's structural
//! stability from its feedback loops, and relates significance to stability
//! with rank statistics.
//!
//! ```no_run
//! use netmotifs::report::{run_pipeline, write_outputs, PipelineConfig};
//!
//! let cfg = PipelineConfig::new("graph.txt", "out");
//! let bundle = run_pipeline(&cfg)?;
//! write_outputs(&bundle, &cfg)?;
//! # Ok::<(), netmotifs::Error>(())
//! ```

pub mod census;
pub mod error;
pub mod graphio;
pub mod nullmodel;
pub mod report;
pub mod significance;
pub mod stability;
pub mod stats;

pub use census::{canonical_id, census, enumerate_classes, MotifId, MotifSize};
pub use error::{Error, Result};
pub use graphio::{normalize, parse_edge_list, DirectedGraph};
