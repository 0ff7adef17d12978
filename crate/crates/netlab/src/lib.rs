//! File formats, persistence, reports and the command-line front end for the
//! bilateral investment network toolkit in `cpis-netlab-core`.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod export;
pub mod ingest;
pub mod report;
pub mod store;

pub use error::{Error, Result};
pub use export::{export_graph, GraphFormat};
pub use ingest::{build_dataset, parse_econ_csv, parse_positions_csv, Dataset, PositionRow};
pub use report::{render_matrix, render_tier_table, Format, ReportConfig};
pub use store::{load_dataset, save_dataset};
