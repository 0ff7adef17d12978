//! Dataset directory layout:
//!
//! ```text
//! manifest.json        countries, years, min_edge_weight, provenance, format_version
//! edges_<year>.csv     source,target,weight   (one file per listed year)
//! econ.csv             country,indicator,year,value
//! ```
//!
//! Numbers are written with Rust's shortest round-trip formatting, so a
//! load after a save reproduces every value bit for bit.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use cpis_netlab_core::{CountryCode, PositionRecord, YearGraph};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::{parse_econ_csv, Dataset};

pub const FORMAT_VERSION: u32 = 1;
pub const MANIFEST: &str = "manifest.json";
pub const ECON_FILE: &str = "econ.csv";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    format_version: u32,
    countries: Vec<CountryCode>,
    years: Vec<i32>,
    min_edge_weight: f64,
    provenance: String,
}

pub fn edges_file_name(year: i32) -> String {
    format!("edges_{year}.csv")
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn edges_csv(g: &YearGraph) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["source", "target", "weight"])?;
    for e in g.edges() {
        w.write_record([
            g.node(e.source).as_str(),
            g.node(e.target).as_str(),
            &e.weight.to_string(),
        ])?;
    }
    w.into_inner().map_err(|e| Error::Invalid(e.to_string()))
}

fn econ_csv(ds: &Dataset) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["country", "indicator", "year", "value"])?;
    for s in ds.econ() {
        for (year, value) in s.iter() {
            w.write_record([
                s.country.as_str(),
                &s.indicator.to_string(),
                &year.to_string(),
                &value.to_string(),
            ])?;
        }
    }
    w.into_inner().map_err(|e| Error::Invalid(e.to_string()))
}

/// Writes `ds` into `dir`, creating it if needed.
pub fn save_dataset(ds: &Dataset, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let manifest = Manifest {
        format_version: FORMAT_VERSION,
        countries: ds.countries().to_vec(),
        years: ds.years().to_vec(),
        min_edge_weight: ds.min_edge_weight(),
        provenance: ds.provenance().to_owned(),
    };
    let mut json = serde_json::to_vec_pretty(&manifest).map_err(|e| Error::Invalid(e.to_string()))?;
    json.push(b'\n');
    write_file(&dir.join(MANIFEST), &json)?;
    for g in ds.graphs() {
        write_file(&dir.join(edges_file_name(g.year())), &edges_csv(g)?)?;
    }
    write_file(&dir.join(ECON_FILE), &econ_csv(ds)?)
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

fn load_edges(bytes: &[u8], year: i32, countries: &[CountryCode]) -> Result<YearGraph> {
    let mut rdr = csv::ReaderBuilder::new().from_reader(bytes);
    let header = rdr.headers()?;
    if header.iter().collect::<Vec<_>>() != ["source", "target", "weight"] {
        return Err(Error::Header {
            expected: "source,target,weight",
            found: header.iter().collect::<Vec<_>>().join(","),
        });
    }
    let mut records = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let weight: f64 = rec[2].parse().map_err(|_| Error::Row {
            line,
            message: format!("{}: bad weight {:?}", edges_file_name(year), &rec[2]),
        })?;
        records.push(PositionRecord::new(
            CountryCode::new(&rec[0])?,
            CountryCode::new(&rec[1])?,
            weight,
        ));
    }
    YearGraph::build(year, countries.iter().cloned(), &records).map_err(|e| {
        Error::Mismatch(format!("{}: {e}", edges_file_name(year)))
    })
}

/// Reads a dataset written by [`save_dataset`], checking that the manifest
/// and the data files agree.
pub fn load_dataset(dir: &Path) -> Result<Dataset> {
    let manifest_path = dir.join(MANIFEST);
    let raw = read_file(&manifest_path)?;
    let manifest: Manifest = serde_json::from_slice(&raw).map_err(|e| Error::Manifest {
        path: manifest_path.clone(),
        message: e.to_string(),
    })?;
    if manifest.format_version != FORMAT_VERSION {
        return Err(Error::Manifest {
            path: manifest_path,
            message: format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                manifest.format_version
            ),
        });
    }

    let listed: BTreeSet<i32> = manifest.years.iter().copied().collect();
    if listed.len() != manifest.years.len() {
        return Err(Error::Mismatch("manifest lists a year more than once".into()));
    }
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    for entry in entries {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        let name = entry.file_name();
        let Some(year) = name
            .to_str()
            .and_then(|n| n.strip_prefix("edges_"))
            .and_then(|n| n.strip_suffix(".csv"))
        else {
            continue;
        };
        match year.parse::<i32>() {
            Ok(y) if listed.contains(&y) => {}
            _ => {
                return Err(Error::Mismatch(format!(
                    "{} is not listed in the manifest years",
                    name.to_string_lossy()
                )))
            }
        }
    }

    let mut graphs = Vec::with_capacity(manifest.years.len());
    for &year in &manifest.years {
        let path = dir.join(edges_file_name(year));
        if !path.exists() {
            return Err(Error::Mismatch(format!(
                "missing edges file for year {year} ({})",
                path.display()
            )));
        }
        graphs.push(load_edges(&read_file(&path)?, year, &manifest.countries)?);
    }

    let econ = parse_econ_csv(&read_file(&dir.join(ECON_FILE))?)?;
    if econ.skipped > 0 {
        return Err(Error::Mismatch(format!(
            "{ECON_FILE} has {} unparseable value(s)",
            econ.skipped
        )));
    }
    Dataset::new(
        manifest.countries,
        graphs,
        econ.series,
        manifest.provenance,
        manifest.min_edge_weight,
    )
}
