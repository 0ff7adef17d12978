//! CSV extracts in, [`Dataset`] out.
//!
//! Two inputs are understood:
//!
//! * positions: `source,target,year,amount_usd_millions`, one bilateral
//!   holding per row;
//! * economic indicators: `country,indicator,year,value` with indicator codes
//!   `E1`–`E8`.
//!
//! Position rows whose amount is missing, non-numeric (survey extracts mark
//! confidential cells with letters), zero or negative are skipped and
//! counted, as are domestic (self-loop) rows. Every other malformation is an
//! error carrying the line number.

use std::collections::{BTreeMap, BTreeSet};

use cpis_netlab_core::{
    CountryCode, EconIndicator, IndicatorCode, IndicatorSeries, PositionRecord, YearGraph,
};

use crate::error::{Error, Result};

pub const POSITIONS_HEADER: [&str; 4] = ["source", "target", "year", "amount_usd_millions"];
pub const ECON_HEADER: [&str; 4] = ["country", "indicator", "year", "value"];

/// One parsed position row.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionRow {
    pub source: CountryCode,
    pub target: CountryCode,
    pub year: i32,
    pub amount: f64,
}

/// Counts of position rows dropped by the skip policy.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SkipReport {
    pub missing: usize,
    pub non_numeric: usize,
    pub zero: usize,
    pub negative: usize,
    pub self_loop: usize,
}

impl SkipReport {
    pub fn total(&self) -> usize {
        self.missing + self.non_numeric + self.zero + self.negative + self.self_loop
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PositionsParse {
    pub rows: Vec<PositionRow>,
    pub skipped: SkipReport,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EconParse {
    /// One series per (country, indicator), ordered by country then indicator.
    pub series: Vec<IndicatorSeries>,
    /// Rows with a missing or non-numeric value.
    pub skipped: usize,
}

fn reader(bytes: &[u8]) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(bytes)
}

fn check_header(rdr: &mut csv::Reader<&[u8]>, expected: &[&str; 4], joined: &'static str) -> Result<()> {
    let found = rdr.headers()?;
    let ok = found.len() == expected.len()
        && found
            .iter()
            .zip(expected)
            .all(|(f, e)| f.eq_ignore_ascii_case(e));
    if !ok {
        return Err(Error::Header {
            expected: joined,
            found: found.iter().collect::<Vec<_>>().join(","),
        });
    }
    Ok(())
}

fn line_of(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

fn country(field: &str, line: u64) -> Result<CountryCode> {
    CountryCode::new(field).map_err(|e| Error::Row {
        line,
        message: e.to_string(),
    })
}

fn year(field: &str, line: u64) -> Result<i32> {
    field.parse().map_err(|_| Error::Row {
        line,
        message: format!("unparseable year {field:?}"),
    })
}

fn is_blank(bytes: &[u8]) -> bool {
    bytes.iter().all(u8::is_ascii_whitespace)
}

/// Parses a positions extract.
pub fn parse_positions_csv(bytes: &[u8]) -> Result<PositionsParse> {
    let mut out = PositionsParse::default();
    if is_blank(bytes) {
        return Ok(out);
    }
    let mut rdr = reader(bytes);
    check_header(&mut rdr, &POSITIONS_HEADER, "source,target,year,amount_usd_millions")?;
    for record in rdr.records() {
        let record = record?;
        let line = line_of(&record);
        let source = country(&record[0], line)?;
        let target = country(&record[1], line)?;
        let year = year(&record[2], line)?;
        let raw = &record[3];
        let skipped = &mut out.skipped;
        if raw.is_empty() {
            skipped.missing += 1;
            continue;
        }
        let amount = match raw.parse::<f64>() {
            Ok(a) if a.is_finite() => a,
            _ => {
                skipped.non_numeric += 1;
                continue;
            }
        };
        if amount == 0.0 {
            skipped.zero += 1;
        } else if amount < 0.0 {
            skipped.negative += 1;
        } else if source == target {
            skipped.self_loop += 1;
        } else {
            out.rows.push(PositionRow {
                source,
                target,
                year,
                amount,
            });
        }
    }
    Ok(out)
}

/// Parses an economic-indicator extract.
pub fn parse_econ_csv(bytes: &[u8]) -> Result<EconParse> {
    let mut out = EconParse::default();
    if is_blank(bytes) {
        return Ok(out);
    }
    let mut rdr = reader(bytes);
    check_header(&mut rdr, &ECON_HEADER, "country,indicator,year,value")?;
    let mut series: BTreeMap<(CountryCode, EconIndicator), IndicatorSeries> = BTreeMap::new();
    for record in rdr.records() {
        let record = record?;
        let line = line_of(&record);
        let code = country(&record[0], line)?;
        let indicator: EconIndicator = record[1].parse().map_err(|e| Error::Row {
            line,
            message: format!("{e}"),
        })?;
        let year = year(&record[2], line)?;
        let value = match record[3].parse::<f64>() {
            Ok(v) if v.is_finite() => v,
            _ => {
                out.skipped += 1;
                continue;
            }
        };
        series
            .entry((code.clone(), indicator))
            .or_insert_with(|| IndicatorSeries::new(code, IndicatorCode::Economic(indicator)))
            .insert(year, value)
            .map_err(|e| Error::Row {
                line,
                message: format!("{} {e}", &record[0]),
            })?;
    }
    out.series = series.into_values().collect();
    Ok(out)
}

/// Validated collection of yearly graphs and economic series.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    countries: Vec<CountryCode>,
    years: Vec<i32>,
    graphs: BTreeMap<i32, YearGraph>,
    econ: BTreeMap<(CountryCode, EconIndicator), IndicatorSeries>,
    provenance: String,
    min_edge_weight: f64,
}

impl Dataset {
    /// Assembles a dataset and checks its invariants: every graph spans
    /// exactly `countries`, graph years equal `years`, and every economic
    /// series belongs to a listed country.
    pub fn new(
        countries: Vec<CountryCode>,
        graphs: Vec<YearGraph>,
        econ: Vec<IndicatorSeries>,
        provenance: String,
        min_edge_weight: f64,
    ) -> Result<Self> {
        check_min_weight(min_edge_weight)?;
        let mut sorted = countries.clone();
        sorted.sort();
        sorted.dedup();
        if sorted != countries {
            return Err(Error::Mismatch(
                "country list must be sorted and free of duplicates".into(),
            ));
        }
        let mut by_year = BTreeMap::new();
        for g in graphs {
            if g.nodes() != countries.as_slice() {
                return Err(Error::Mismatch(format!(
                    "graph for {} does not span the dataset's country list",
                    g.year()
                )));
            }
            if let Some(e) = g.edges().find(|e| e.weight <= min_edge_weight) {
                return Err(Error::Mismatch(format!(
                    "edge {} -> {} in {} has weight {} at or below the minimum {}",
                    g.node(e.source),
                    g.node(e.target),
                    g.year(),
                    e.weight,
                    min_edge_weight
                )));
            }
            let year = g.year();
            if by_year.insert(year, g).is_some() {
                return Err(Error::Mismatch(format!("two graphs for year {year}")));
            }
        }
        let mut econ_map = BTreeMap::new();
        for s in econ {
            let IndicatorCode::Economic(ind) = s.indicator else {
                return Err(Error::Mismatch(format!(
                    "{} is not an economic indicator",
                    s.indicator
                )));
            };
            if countries.binary_search(&s.country).is_err() {
                return Err(Error::Mismatch(format!(
                    "economic series for unknown country {}",
                    s.country
                )));
            }
            if econ_map.insert((s.country.clone(), ind), s).is_some() {
                return Err(Error::Mismatch(format!("duplicate economic series {ind}")));
            }
        }
        Ok(Self {
            countries,
            years: by_year.keys().copied().collect(),
            graphs: by_year,
            econ: econ_map,
            provenance,
            min_edge_weight,
        })
    }

    pub fn countries(&self) -> &[CountryCode] {
        &self.countries
    }

    pub fn years(&self) -> &[i32] {
        &self.years
    }

    pub fn graph(&self, year: i32) -> Option<&YearGraph> {
        self.graphs.get(&year)
    }

    /// Graphs in ascending year order.
    pub fn graphs(&self) -> impl Iterator<Item = &YearGraph> {
        self.graphs.values()
    }

    pub fn econ_series(&self, country: &CountryCode, indicator: EconIndicator) -> Option<&IndicatorSeries> {
        self.econ.get(&(country.clone(), indicator))
    }

    /// All economic series, ordered by country then indicator.
    pub fn econ(&self) -> impl Iterator<Item = &IndicatorSeries> {
        self.econ.values()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn min_edge_weight(&self) -> f64 {
        self.min_edge_weight
    }

    pub fn country(&self, code: &str) -> Result<CountryCode> {
        let code = CountryCode::new(code)?;
        if self.countries.binary_search(&code).is_err() {
            return Err(Error::Invalid(format!("country {code} is not in the dataset")));
        }
        Ok(code)
    }
}

fn check_min_weight(w: f64) -> Result<()> {
    if !(w >= 0.0 && w.is_finite()) {
        return Err(Error::Invalid(format!(
            "minimum edge weight must be a finite value >= 0, got {w}"
        )));
    }
    Ok(())
}

/// Builds yearly graphs from position rows and attaches economic series.
///
/// The country list is every code appearing in either input. Duplicate rows
/// for a pair are summed first; the resulting edge is kept iff its weight
/// exceeds `min_edge_weight`.
pub fn build_dataset(
    positions: &[PositionRow],
    econ: &[IndicatorSeries],
    min_edge_weight: f64,
    provenance: impl Into<String>,
) -> Result<Dataset> {
    check_min_weight(min_edge_weight)?;
    let mut countries = BTreeSet::new();
    let mut by_year: BTreeMap<i32, Vec<PositionRecord>> = BTreeMap::new();
    for row in positions {
        countries.insert(row.source.clone());
        countries.insert(row.target.clone());
        by_year.entry(row.year).or_default().push(PositionRecord::new(
            row.source.clone(),
            row.target.clone(),
            row.amount,
        ));
    }
    countries.extend(econ.iter().map(|s| s.country.clone()));
    let countries: Vec<CountryCode> = countries.into_iter().collect();

    let mut graphs = Vec::with_capacity(by_year.len());
    for (year, records) in by_year {
        let full = YearGraph::build(year, countries.iter().cloned(), &records)?;
        let kept: Vec<PositionRecord> = full
            .edges()
            .filter(|e| e.weight > min_edge_weight)
            .map(|e| PositionRecord::new(full.node(e.source).clone(), full.node(e.target).clone(), e.weight))
            .collect();
        graphs.push(YearGraph::build(year, countries.iter().cloned(), &kept)?);
    }
    Dataset::new(countries, graphs, econ.to_vec(), provenance.into(), min_edge_weight)
}
