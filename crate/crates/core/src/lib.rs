//! Network indicators for yearly bilateral investment graphs.
//!
//! The crate is `no_std` (it needs `alloc`) and holds the pure parts of the
//! analysis:
//!
//! * [`graph`]: immutable directed weighted [`YearGraph`] snapshots, degrees
//!   and hop distances.
//! * [`metrics`]: centralities, centralizations, clustering and the eleven
//!   per-node indices `N1`–`N11`.
//! * [`correlation`]: Pearson coefficients and the 11 × 8 correlation matrix
//!   against economic indicators `E1`–`E8`.
//! * [`tiering`]: connectivity tiers from average closeness.
//!
//! File formats, persistence and the command line live in the `cpis-netlab`
//! crate.
#![no_std]

extern crate alloc;

pub mod correlation;
pub mod graph;
pub mod indicators;
pub mod metrics;
pub mod tiering;

pub use correlation::{
    align_series, correlation_matrix, pearson, pearson_centered, CellClass, CorrelationCell,
    CorrelationError, CorrelationMatrix, IndicatorSeries, UndefinedReason,
};
pub use graph::{CountryCode, DistanceMatrix, Edge, FlowRole, GraphError, PositionRecord, YearGraph};
pub use indicators::{EconIndicator, IndicatorCode, NetworkIndicator, UnknownIndicator};
pub use metrics::{GraphSummary, MetricError, NodeIndicators};
pub use tiering::{Tier, TierAssignment, TierError, TierReport, TierThresholds};
