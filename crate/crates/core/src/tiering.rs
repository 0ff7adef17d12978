//! Connectivity tiers from average mean-distance closeness.
//!
//! A country's yearly closeness (mean hop distance, see
//! [`metrics::closeness_mean_distance`](crate::metrics::closeness_mean_distance))
//! is averaged over the years where it is defined, then bucketed:
//!
//! ```text
//! Tier 1:           avg ≤ t1_max   (default 1.05)
//! Tier 2: t1_max <  avg ≤ t2_max   (default 1.20)
//! Tier 3: t2_max <  avg
//! ```

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::graph::{CountryCode, YearGraph};
use crate::metrics::mean_distances;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TierError {
    #[error("thresholds must satisfy 1 <= t1 < t2, got t1={t1}, t2={t2}")]
    InvalidThresholds { t1: f64, t2: f64 },
    #[error("no defined closeness values to average")]
    NoDefinedValues,
    #[error("average closeness {0} is below 1, which hop distances cannot produce")]
    BelowOne(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TierThresholds {
    t1_max: f64,
    t2_max: f64,
}

impl TierThresholds {
    pub fn new(t1_max: f64, t2_max: f64) -> Result<Self, TierError> {
        if !(1.0 <= t1_max && t1_max < t2_max && t2_max.is_finite()) {
            return Err(TierError::InvalidThresholds {
                t1: t1_max,
                t2: t2_max,
            });
        }
        Ok(Self { t1_max, t2_max })
    }

    pub fn t1_max(&self) -> f64 {
        self.t1_max
    }

    pub fn t2_max(&self) -> f64 {
        self.t2_max
    }
}

impl Default for TierThresholds {
    fn default() -> Self {
        Self {
            t1_max: 1.05,
            t2_max: 1.20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum Tier {
    Tier1,
    Tier2,
    Tier3,
}

impl Tier {
    pub const ALL: [Tier; 3] = [Tier::Tier1, Tier::Tier2, Tier::Tier3];

    pub fn number(self) -> usize {
        self as usize + 1
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tier {}", self.number())
    }
}

/// Mean over the defined values, with the count of values used.
///
/// Values are summed in ascending order, so the result does not depend on
/// the order of the input.
pub fn average_closeness(values: &[Option<f64>]) -> Result<(f64, usize), TierError> {
    let mut defined: Vec<f64> = values.iter().flatten().copied().collect();
    if defined.is_empty() {
        return Err(TierError::NoDefinedValues);
    }
    defined.sort_by(f64::total_cmp);
    let sum: f64 = defined.iter().sum();
    Ok((sum / defined.len() as f64, defined.len()))
}

pub fn assign_tier(avg: f64, thresholds: &TierThresholds) -> Result<Tier, TierError> {
    if avg.is_nan() || avg < 1.0 {
        return Err(TierError::BelowOne(avg));
    }
    Ok(if avg <= thresholds.t1_max {
        Tier::Tier1
    } else if avg <= thresholds.t2_max {
        Tier::Tier2
    } else {
        Tier::Tier3
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TierAssignment {
    pub country: CountryCode,
    pub avg_closeness: f64,
    pub tier: Tier,
    pub years_counted: usize,
}

/// A country that could not be tiered, and why.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Untierable {
    pub country: CountryCode,
    pub reason: alloc::string::String,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TierReport {
    pub thresholds: TierThresholds,
    /// Sorted by tier, then average closeness, then country code.
    pub assignments: Vec<TierAssignment>,
    pub untierable: Vec<Untierable>,
}

impl TierReport {
    pub fn count(&self, tier: Tier) -> usize {
        self.assignments.iter().filter(|a| a.tier == tier).count()
    }

    pub fn members(&self, tier: Tier) -> impl Iterator<Item = &TierAssignment> {
        self.assignments.iter().filter(move |a| a.tier == tier)
    }
}

/// Tiers every country from its yearly closeness values.
pub fn classify_all<'a, I>(series: I, thresholds: &TierThresholds) -> TierReport
where
    I: IntoIterator<Item = (&'a CountryCode, &'a [Option<f64>])>,
{
    let mut assignments = Vec::new();
    let mut untierable = Vec::new();
    for (country, values) in series {
        let outcome = average_closeness(values)
            .and_then(|(avg, n)| assign_tier(avg, thresholds).map(|tier| (avg, n, tier)));
        match outcome {
            Ok((avg_closeness, years_counted, tier)) => assignments.push(TierAssignment {
                country: country.clone(),
                avg_closeness,
                tier,
                years_counted,
            }),
            Err(e) => untierable.push(Untierable {
                country: country.clone(),
                reason: alloc::format!("{e}"),
            }),
        }
    }
    assignments.sort_by(|a, b| {
        a.tier
            .cmp(&b.tier)
            .then(a.avg_closeness.total_cmp(&b.avg_closeness))
            .then_with(|| a.country.cmp(&b.country))
    });
    untierable.sort_by(|a, b| a.country.cmp(&b.country));
    TierReport {
        thresholds: *thresholds,
        assignments,
        untierable,
    }
}

/// Yearly mean-distance closeness per country, one entry per graph in the
/// order given. Countries missing from a graph get `None` for that year.
pub fn closeness_by_country<'g, I>(graphs: I) -> BTreeMap<CountryCode, Vec<Option<f64>>>
where
    I: IntoIterator<Item = &'g YearGraph>,
{
    let mut out: BTreeMap<CountryCode, Vec<Option<f64>>> = BTreeMap::new();
    for (k, g) in graphs.into_iter().enumerate() {
        let closeness = mean_distances(&g.shortest_paths());
        for (v, value) in closeness.into_iter().enumerate() {
            let entry = out.entry(g.node(v).clone()).or_default();
            entry.resize(k, None);
            entry.push(value);
        }
        for entry in out.values_mut() {
            entry.resize(k + 1, None);
        }
    }
    out
}
