//! Dataset-level analysis: indicator tables, tiers and correlation matrices.

use cpis_netlab_core::metrics::{self, GraphSummary, NodeIndicators};
use cpis_netlab_core::tiering::{classify_all, closeness_by_country};
use cpis_netlab_core::{
    correlation_matrix, CorrelationMatrix, CountryCode, EconIndicator, IndicatorCode,
    IndicatorSeries, NetworkIndicator, TierReport, TierThresholds,
};

use crate::error::Result;
use crate::ingest::Dataset;

/// N1–N11 for every (year, country), ordered by year then country.
pub fn indicator_table(ds: &Dataset) -> Vec<NodeIndicators> {
    ds.graphs().flat_map(metrics::node_indicators).collect()
}

pub fn graph_summaries(ds: &Dataset) -> Vec<GraphSummary> {
    ds.graphs().map(metrics::summarize).collect()
}

/// Yearly series of the eleven network indices of one country.
///
/// Years where an index is undefined (e.g. closeness of a node that reaches
/// nothing) are left out of that series.
pub fn network_series(ds: &Dataset, country: &CountryCode) -> Result<Vec<IndicatorSeries>> {
    let mut series: Vec<IndicatorSeries> = NetworkIndicator::ALL
        .iter()
        .map(|&n| IndicatorSeries::new(country.clone(), IndicatorCode::Network(n)))
        .collect();
    for g in ds.graphs() {
        let row = metrics::node_indicator_vector(g, country.as_str())?;
        for (s, &n) in series.iter_mut().zip(NetworkIndicator::ALL) {
            if let Some(v) = row.value(n) {
                s.insert(g.year(), v)?;
            }
        }
    }
    Ok(series)
}

pub fn economic_series(ds: &Dataset, country: &CountryCode) -> Vec<IndicatorSeries> {
    EconIndicator::ALL
        .iter()
        .filter_map(|&e| ds.econ_series(country, e).cloned())
        .collect()
}

pub fn correlate(ds: &Dataset, country: &CountryCode, threshold: f64) -> Result<CorrelationMatrix> {
    let network = network_series(ds, country)?;
    let economic = economic_series(ds, country);
    Ok(correlation_matrix(country, &network, &economic, threshold)?)
}

pub fn tiers(ds: &Dataset, thresholds: &TierThresholds) -> TierReport {
    let closeness = closeness_by_country(ds.graphs());
    classify_all(closeness.iter().map(|(c, v)| (c, v.as_slice())), thresholds)
}
