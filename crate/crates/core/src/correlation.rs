//! Pearson correlation between indicator time series and the per-country
//! network × economic correlation matrix.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use thiserror::Error;

use crate::graph::CountryCode;
use crate::indicators::{EconIndicator, IndicatorCode, NetworkIndicator};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorrelationError {
    #[error("series lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("need at least 2 observations, got {0}")]
    TooFewObservations(usize),
    #[error("series share only {common} year(s); at least 2 are required")]
    InsufficientOverlap { common: usize },
    #[error("duplicate observation for {indicator} in {year}")]
    DuplicateYear { indicator: IndicatorCode, year: i32 },
    #[error("threshold {0} outside [0, 1]")]
    InvalidThreshold(f64),
    #[error("series for {found} supplied to the matrix of {expected}")]
    CountryMismatch {
        expected: CountryCode,
        found: CountryCode,
    },
    #[error("{0} supplied more than once")]
    DuplicateSeries(IndicatorCode),
    #[error("{0} supplied where a {1} indicator was expected")]
    WrongIndicatorKind(IndicatorCode, &'static str),
}

/// Yearly observations of one indicator for one country.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IndicatorSeries {
    pub country: CountryCode,
    pub indicator: IndicatorCode,
    observations: BTreeMap<i32, f64>,
}

impl IndicatorSeries {
    pub fn new(country: CountryCode, indicator: IndicatorCode) -> Self {
        Self {
            country,
            indicator,
            observations: BTreeMap::new(),
        }
    }

    pub fn from_observations<I>(
        country: CountryCode,
        indicator: IndicatorCode,
        observations: I,
    ) -> Result<Self, CorrelationError>
    where
        I: IntoIterator<Item = (i32, f64)>,
    {
        let mut series = Self::new(country, indicator);
        for (year, value) in observations {
            series.insert(year, value)?;
        }
        Ok(series)
    }

    /// Adds one observation; a second value for the same year is an error.
    pub fn insert(&mut self, year: i32, value: f64) -> Result<(), CorrelationError> {
        if self.observations.contains_key(&year) {
            return Err(CorrelationError::DuplicateYear {
                indicator: self.indicator,
                year,
            });
        }
        self.observations.insert(year, value);
        Ok(())
    }

    pub fn get(&self, year: i32) -> Option<f64> {
        self.observations.get(&year).copied()
    }

    /// Observations in ascending year order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        self.observations.iter().map(|(&y, &v)| (y, v))
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }
}

fn check_pair(x: &[f64], y: &[f64]) -> Result<(), CorrelationError> {
    if x.len() != y.len() {
        return Err(CorrelationError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(CorrelationError::TooFewObservations(x.len()));
    }
    Ok(())
}

fn is_constant(values: &[f64]) -> bool {
    values.iter().all(|&v| v == values[0])
}

fn clamp_unit(r: f64) -> f64 {
    r.clamp(-1.0, 1.0)
}

/// Sample Pearson coefficient in raw-sum form:
///
/// ```text
/// r = (n Σxy − Σx Σy) / sqrt((n Σx² − (Σx)²) · (n Σy² − (Σy)²))
/// ```
///
/// Both series are shifted by their first value before summing, which leaves
/// `r` unchanged and keeps the sums small for trending series such as GDP.
/// Returns `Ok(None)` when either series is constant.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<Option<f64>, CorrelationError> {
    check_pair(x, y)?;
    if is_constant(x) || is_constant(y) {
        return Ok(None);
    }
    let n = x.len() as f64;
    let (x0, y0) = (x[0], y[0]);
    let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (a, b) = (a - x0, b - y0);
        sx += a;
        sy += b;
        sxx += a * a;
        syy += b * b;
        sxy += a * b;
    }
    let num = n * sxy - sx * sy;
    let den = libm::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
    Ok(Some(clamp_unit(num / den)))
}

/// Sample Pearson coefficient in centered form:
///
/// ```text
/// r = Σ (x − x̄)(y − ȳ) / sqrt(Σ (x − x̄)² · Σ (y − ȳ)²)
/// ```
pub fn pearson_centered(x: &[f64], y: &[f64]) -> Result<Option<f64>, CorrelationError> {
    check_pair(x, y)?;
    if is_constant(x) || is_constant(y) {
        return Ok(None);
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    Ok(Some(clamp_unit(sxy / libm::sqrt(sxx * syy))))
}

/// Values of `a` and `b` for the years both contain, in ascending year order.
pub fn align_series(
    a: &IndicatorSeries,
    b: &IndicatorSeries,
) -> Result<(Vec<f64>, Vec<f64>), CorrelationError> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = a
        .iter()
        .filter_map(|(year, x)| b.get(year).map(|y| (x, y)))
        .unzip();
    if xs.len() < 2 {
        return Err(CorrelationError::InsufficientOverlap { common: xs.len() });
    }
    Ok((xs, ys))
}

/// Sign class of a correlation cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum CellClass {
    Positive,
    Negative,
    Weak,
    Undefined,
}

impl CellClass {
    /// `Weak` below the threshold in absolute value, otherwise by sign.
    pub fn classify(r: Option<f64>, threshold: f64) -> Self {
        match r {
            None => CellClass::Undefined,
            Some(r) if r.abs() < threshold => CellClass::Weak,
            Some(r) if r < 0.0 => CellClass::Negative,
            Some(_) => CellClass::Positive,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CellClass::Positive => "POSITIVE",
            CellClass::Negative => "NEGATIVE",
            CellClass::Weak => "WEAK",
            CellClass::Undefined => "UNDEFINED",
        }
    }
}

/// Why a cell has no coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum UndefinedReason {
    MissingSeries,
    InsufficientOverlap { common: usize },
    ZeroVariance,
    NotSupplied,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CorrelationCell {
    pub r: Option<f64>,
    pub n_obs: usize,
    pub class: CellClass,
    pub reason: Option<UndefinedReason>,
}

impl CorrelationCell {
    fn undefined(n_obs: usize, reason: UndefinedReason) -> Self {
        Self {
            r: None,
            n_obs,
            class: CellClass::Undefined,
            reason: Some(reason),
        }
    }

    fn defined(r: f64, n_obs: usize, threshold: f64) -> Self {
        Self {
            r: Some(r),
            n_obs,
            class: CellClass::classify(Some(r), threshold),
            reason: None,
        }
    }
}

pub const NETWORK_ROWS: usize = 11;
pub const ECON_COLS: usize = 8;

/// Correlations of the eleven network indices (rows) against the eight
/// economic indicators (columns) for one country.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CorrelationMatrix {
    pub country: CountryCode,
    pub threshold: f64,
    cells: Vec<CorrelationCell>,
}

fn check_threshold(threshold: f64) -> Result<(), CorrelationError> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(CorrelationError::InvalidThreshold(threshold));
    }
    Ok(())
}

impl CorrelationMatrix {
    /// Builds a matrix from precomputed coefficients, e.g. values transcribed
    /// from a published table. Cells are classified against `threshold`.
    pub fn from_values(
        country: CountryCode,
        threshold: f64,
        values: &[[Option<f64>; ECON_COLS]; NETWORK_ROWS],
        n_obs: usize,
    ) -> Result<Self, CorrelationError> {
        check_threshold(threshold)?;
        let cells = values
            .iter()
            .flatten()
            .map(|&r| match r {
                Some(r) => CorrelationCell::defined(r, n_obs, threshold),
                None => CorrelationCell::undefined(n_obs, UndefinedReason::NotSupplied),
            })
            .collect();
        Ok(Self {
            country,
            threshold,
            cells,
        })
    }

    pub fn cell(&self, row: NetworkIndicator, col: EconIndicator) -> &CorrelationCell {
        &self.cells[row.position() * ECON_COLS + col.position()]
    }

    /// Cells of one row in column order.
    pub fn row(&self, row: NetworkIndicator) -> &[CorrelationCell] {
        let start = row.position() * ECON_COLS;
        &self.cells[start..start + ECON_COLS]
    }

    pub fn cells(&self) -> impl Iterator<Item = (NetworkIndicator, EconIndicator, &CorrelationCell)> {
        NetworkIndicator::ALL.iter().flat_map(move |&n| {
            EconIndicator::ALL
                .iter()
                .map(move |&e| (n, e, self.cell(n, e)))
        })
    }
}

fn index_series<'a>(
    country: &CountryCode,
    series: &'a [IndicatorSeries],
    network: bool,
) -> Result<BTreeMap<IndicatorCode, &'a IndicatorSeries>, CorrelationError> {
    let mut map = BTreeMap::new();
    for s in series {
        if &s.country != country {
            return Err(CorrelationError::CountryMismatch {
                expected: country.clone(),
                found: s.country.clone(),
            });
        }
        match (network, s.indicator) {
            (true, IndicatorCode::Network(_)) | (false, IndicatorCode::Economic(_)) => {}
            (true, code) => return Err(CorrelationError::WrongIndicatorKind(code, "network")),
            (false, code) => return Err(CorrelationError::WrongIndicatorKind(code, "economic")),
        }
        if map.insert(s.indicator, s).is_some() {
            return Err(CorrelationError::DuplicateSeries(s.indicator));
        }
    }
    Ok(map)
}

fn correlate_cell(
    a: Option<&IndicatorSeries>,
    b: Option<&IndicatorSeries>,
    threshold: f64,
) -> CorrelationCell {
    let (Some(a), Some(b)) = (a, b) else {
        return CorrelationCell::undefined(0, UndefinedReason::MissingSeries);
    };
    match align_series(a, b) {
        Err(CorrelationError::InsufficientOverlap { common }) => {
            CorrelationCell::undefined(common, UndefinedReason::InsufficientOverlap { common })
        }
        Err(_) => unreachable!("align_series only reports insufficient overlap"),
        Ok((x, y)) => match pearson(&x, &y) {
            Ok(Some(r)) => CorrelationCell::defined(r, x.len(), threshold),
            _ => CorrelationCell::undefined(x.len(), UndefinedReason::ZeroVariance),
        },
    }
}

/// Correlates every network series against every economic series of one
/// country over pairwise-common years.
///
/// Series may be supplied in any order; absent series produce undefined cells.
pub fn correlation_matrix(
    country: &CountryCode,
    network: &[IndicatorSeries],
    economic: &[IndicatorSeries],
    threshold: f64,
) -> Result<CorrelationMatrix, CorrelationError> {
    check_threshold(threshold)?;
    let net = index_series(country, network, true)?;
    let econ = index_series(country, economic, false)?;
    let mut cells = Vec::with_capacity(NETWORK_ROWS * ECON_COLS);
    for &n in NetworkIndicator::ALL {
        for &e in EconIndicator::ALL {
            cells.push(correlate_cell(
                net.get(&IndicatorCode::Network(n)).copied(),
                econ.get(&IndicatorCode::Economic(e)).copied(),
                threshold,
            ));
        }
    }
    Ok(CorrelationMatrix {
        country: country.clone(),
        threshold,
        cells,
    })
}
