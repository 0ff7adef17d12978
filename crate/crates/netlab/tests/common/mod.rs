//! Test support: the synthetic 26-country panel, seeded random datasets and
//! small independent DOT / GEXF readers.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use cpis_netlab::Dataset;
use cpis_netlab_core::{
    CountryCode, EconIndicator, IndicatorCode, IndicatorSeries, PositionRecord, YearGraph,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub const FIRST_YEAR: i32 = 2001;
pub const LAST_YEAR: i32 = 2014;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// `(country, tier)` rows of the roster fixture, in file order.
pub fn roster() -> Vec<(String, u8)> {
    let text = std::fs::read_to_string(fixture("tier_roster.csv")).unwrap();
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (c, t) = l.split_once(',').unwrap();
            (c.to_owned(), t.trim().parse().unwrap())
        })
        .collect()
}

/// Out-degree designed for a country of `tier` in year number `t` (0-based).
///
/// Every out-set contains a tier-1 country, which reaches everybody, so all
/// other 25 nodes sit at distance 1 or 2 and the mean distance is
/// `(k + 2 (25 - k)) / 25 = 2 - k / 25`:
///
/// | tier | k by year      | mean distance by year | average |
/// |------|----------------|-----------------------|---------|
/// | 1    | 25             | 1.0                   | 1.00    |
/// | 2    | 20, 25, 20, .. | 1.2, 1.0, ..          | 1.10    |
/// | 3    | 15, 20, 15, .. | 1.4, 1.2, ..          | 1.30    |
pub fn designed_out_degree(tier: u8, t: usize) -> usize {
    match (tier, t % 2) {
        (1, _) => 25,
        (2, 0) => 20,
        (2, _) => 25,
        (3, 0) => 15,
        (3, _) => 20,
        _ => unreachable!(),
    }
}

/// Hand-computed average mean distance for a tier.
pub fn designed_average(tier: u8) -> f64 {
    [1.00, 1.10, 1.30][tier as usize - 1]
}

/// The synthetic panel as CSV rows (header excluded).
pub struct Synthetic {
    pub positions: Vec<String>,
    pub econ: Vec<String>,
    /// Designed out-neighbours per (country, year).
    pub out_sets: BTreeMap<(String, i32), BTreeSet<String>>,
}

pub const POSITIONS_HEADER: &str = "source,target,year,amount_usd_millions";
pub const ECON_HEADER: &str = "country,indicator,year,value";

pub fn synthetic<R: Rng>(rng: &mut R) -> Synthetic {
    let roster = roster();
    assert_eq!(roster.len(), 26);
    let tier1: Vec<&str> = roster.iter().filter(|r| r.1 == 1).map(|r| r.0.as_str()).collect();
    let mut positions = Vec::new();
    let mut out_sets = BTreeMap::new();
    for (t, year) in (FIRST_YEAR..=LAST_YEAR).enumerate() {
        for (c, tier) in &roster {
            let k = designed_out_degree(*tier, t);
            let anchor = *tier1.iter().filter(|a| *a != c).collect::<Vec<_>>().choose(rng).unwrap();
            let mut rest: Vec<&str> = roster
                .iter()
                .map(|r| r.0.as_str())
                .filter(|o| o != c && o != anchor)
                .collect();
            rest.shuffle(rng);
            let chosen: BTreeSet<String> = std::iter::once(*anchor)
                .chain(rest.into_iter().take(k - 1))
                .map(str::to_owned)
                .collect();
            assert_eq!(chosen.len(), k);
            for (o, _) in &roster {
                if o == c {
                    if rng.gen_bool(0.1) {
                        positions.push(format!("{c},{c},{year},{}", rng.gen_range(1..1000)));
                    }
                } else if chosen.contains(o) {
                    let cents: u64 = rng.gen_range(1..5_000_000);
                    if rng.gen_bool(0.2) && cents > 1 {
                        let a = rng.gen_range(1..cents);
                        positions.push(format!("{c},{o},{year},{}", a as f64 / 100.0));
                        positions.push(format!("{c},{o},{year},{}", (cents - a) as f64 / 100.0));
                    } else {
                        positions.push(format!("{c},{o},{year},{}", cents as f64 / 100.0));
                    }
                } else if rng.gen_bool(0.15) {
                    let junk = ["C", "0", "-12.5", "", "n/a"].choose(rng).unwrap();
                    positions.push(format!("{c},{o},{year},{junk}"));
                }
            }
            out_sets.insert((c.clone(), year), chosen);
        }
    }

    let mut econ = Vec::new();
    for (c, _) in &roster {
        for e in EconIndicator::ALL {
            let mut level: f64 = rng.gen_range(-50.0..50.0);
            for year in FIRST_YEAR..=LAST_YEAR {
                level += rng.gen_range(-5.0..5.0);
                if rng.gen_bool(0.03) {
                    econ.push(format!("{c},{e},{year},n/a"));
                } else {
                    econ.push(format!("{c},{e},{year},{:.3}", level));
                }
            }
        }
    }
    Synthetic {
        positions,
        econ,
        out_sets,
    }
}

pub fn to_csv(header: &str, rows: &[String]) -> String {
    let mut s = String::from(header);
    s.push('\n');
    for r in rows {
        s.push_str(r);
        s.push('\n');
    }
    s
}

// ---------------------------------------------------------------------------
// Seeded random datasets

const CODE_POOL: [&str; 12] = [
    "AUT", "DEU", "FRA", "GRC", "ROU", "USA", "JPN", "A1", "X_9", "Q", "ZZZZ", "B2B",
];

fn random_weight<R: Rng>(rng: &mut R, floor: f64) -> f64 {
    loop {
        let w = match rng.gen_range(0..5) {
            0 => rng.gen_range(0.0..1e6),
            1 => f64::from_bits(rng.gen_range(1..(1u64 << 52))), // subnormal
            2 => rng.gen_range(1.0..10.0) * 10f64.powi(rng.gen_range(-300..300)),
            3 => f64::from_bits(rng.gen_range(0x3ff0_0000_0000_0000..0x7fef_ffff_ffff_ffff)),
            _ => (rng.gen_range(1..10_000_000) as f64) / 100.0,
        };
        if w > floor && w.is_finite() {
            return w;
        }
    }
}

fn random_value<R: Rng>(rng: &mut R) -> f64 {
    match rng.gen_range(0..4) {
        0 => -0.0,
        1 => rng.gen_range(-1e3..1e3),
        2 => f64::from_bits(rng.gen::<u64>() & !(0x7ffu64 << 52) | (rng.gen_range(0..0x7ffu64) << 52)),
        _ => (rng.gen_range(-100_000..100_000) as f64) / 1000.0,
    }
}

pub fn random_dataset<R: Rng>(rng: &mut R) -> Dataset {
    let n = rng.gen_range(1..=CODE_POOL.len());
    let mut countries: Vec<CountryCode> = CODE_POOL
        .choose_multiple(rng, n)
        .map(|c| CountryCode::new(c).unwrap())
        .collect();
    countries.sort();
    let min_w = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..10.0) };

    let year_count = rng.gen_range(0..5);
    let years: BTreeSet<i32> = (0..year_count).map(|_| rng.gen_range(1990..2030)).collect();
    let mut graphs = Vec::new();
    for &year in &years {
        let p: f64 = rng.gen_range(0.0..1.0);
        let mut records = Vec::new();
        for s in &countries {
            for t in &countries {
                if s != t && rng.gen_bool(p) {
                    records.push(PositionRecord::new(s.clone(), t.clone(), random_weight(rng, min_w)));
                }
            }
        }
        graphs.push(YearGraph::build(year, countries.iter().cloned(), &records).unwrap());
    }

    let mut econ = Vec::new();
    for c in &countries {
        for &e in EconIndicator::ALL {
            if rng.gen_bool(0.3) {
                let mut s = IndicatorSeries::new(c.clone(), IndicatorCode::Economic(e));
                for year in 1990..2030 {
                    if rng.gen_bool(0.3) {
                        s.insert(year, random_value(rng)).unwrap();
                    }
                }
                econ.push(s);
            }
        }
    }

    let provenance: String = ["", "IMF CPIS, derived tables", "quote \" comma , newline\nend", "Ünïcødé ✓"]
        .choose(rng)
        .unwrap()
        .to_string();
    Dataset::new(countries, graphs, econ, provenance, min_w).unwrap()
}

/// Bitwise comparison of every stored number and label.
pub fn bit_identical(a: &Dataset, b: &Dataset) -> Result<(), String> {
    if a.countries() != b.countries() || a.years() != b.years() || a.provenance() != b.provenance() {
        return Err("metadata differs".into());
    }
    if a.min_edge_weight().to_bits() != b.min_edge_weight().to_bits() {
        return Err("min_edge_weight bits differ".into());
    }
    for (ga, gb) in a.graphs().zip(b.graphs()) {
        let ea: Vec<_> = ga.edges().map(|e| (e.source, e.target, e.weight.to_bits())).collect();
        let eb: Vec<_> = gb.edges().map(|e| (e.source, e.target, e.weight.to_bits())).collect();
        if ea != eb {
            return Err(format!("edges of {} differ", ga.year()));
        }
    }
    let sa: Vec<_> = a
        .econ()
        .map(|s| (s.country.clone(), s.indicator, s.iter().map(|(y, v)| (y, v.to_bits())).collect::<Vec<_>>()))
        .collect();
    let sb: Vec<_> = b
        .econ()
        .map(|s| (s.country.clone(), s.indicator, s.iter().map(|(y, v)| (y, v.to_bits())).collect::<Vec<_>>()))
        .collect();
    if sa != sb {
        return Err("economic series differ".into());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Minimal readers for the export formats. Written against the formats'
// grammar, not against the writer code.

#[derive(Debug, Default, PartialEq)]
pub struct ParsedGraph {
    pub nodes: BTreeSet<String>,
    pub edges: BTreeMap<(String, String), f64>,
}

impl ParsedGraph {
    fn add_edge(&mut self, s: String, t: String, w: f64) -> Result<(), String> {
        if !self.nodes.contains(&s) || !self.nodes.contains(&t) {
            return Err(format!("edge {s} -> {t} references an undeclared node"));
        }
        if self.edges.insert((s.clone(), t.clone()), w).is_some() {
            return Err(format!("edge {s} -> {t} appears twice"));
        }
        Ok(())
    }

    /// Same labels, same directed edges, bitwise-equal weights.
    pub fn matches(&self, g: &YearGraph) -> Result<(), String> {
        let nodes: BTreeSet<String> = g.nodes().iter().map(|c| c.to_string()).collect();
        if nodes != self.nodes {
            return Err(format!("node sets differ: {:?} vs {:?}", self.nodes, nodes));
        }
        if self.edges.len() != g.edge_count() {
            return Err(format!("edge counts differ: {} vs {}", self.edges.len(), g.edge_count()));
        }
        for e in g.edges() {
            let key = (g.node(e.source).to_string(), g.node(e.target).to_string());
            match self.edges.get(&key) {
                Some(w) if w.to_bits() == e.weight.to_bits() => {}
                other => return Err(format!("edge {key:?}: parsed {other:?}, expected {}", e.weight)),
            }
        }
        Ok(())
    }
}

fn dot_id(s: &str) -> Result<(String, &str), String> {
    let s = s.trim_start();
    if let Some(rest) = s.strip_prefix('"') {
        let mut out = String::new();
        let mut chars = rest.char_indices();
        while let Some((i, c)) = chars.next() {
            match c {
                '\\' => out.push(chars.next().ok_or("dangling escape")?.1),
                '"' => return Ok((out, &rest[i + 1..])),
                c => out.push(c),
            }
        }
        Err("unterminated quoted id".into())
    } else {
        let end = s
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(s.len());
        if end == 0 {
            return Err(format!("expected an id at {s:?}"));
        }
        Ok((s[..end].to_owned(), &s[end..]))
    }
}

/// Reads the `digraph` subset: node statements `ID;` and edge statements
/// `ID -> ID [weight=W];`, one per line.
pub fn parse_dot(text: &str) -> Result<ParsedGraph, String> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let head = lines.next().ok_or("empty document")?;
    let name = head
        .strip_prefix("digraph ")
        .and_then(|h| h.strip_suffix('{'))
        .ok_or(format!("bad header {head:?}"))?;
    dot_id(name.trim())?;
    let mut g = ParsedGraph::default();
    let mut closed = false;
    for line in lines {
        if closed {
            return Err(format!("content after closing brace: {line:?}"));
        }
        if line == "}" {
            closed = true;
            continue;
        }
        let stmt = line.strip_suffix(';').ok_or(format!("missing ';' in {line:?}"))?;
        let (first, rest) = dot_id(stmt)?;
        let rest = rest.trim_start();
        if rest.is_empty() {
            if !g.nodes.insert(first.clone()) {
                return Err(format!("node {first} declared twice"));
            }
            continue;
        }
        let rest = rest.strip_prefix("->").ok_or(format!("expected -> in {line:?}"))?;
        let (second, rest) = dot_id(rest)?;
        let attrs = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or(format!("bad attribute list in {line:?}"))?;
        let w = attrs
            .trim()
            .strip_prefix("weight=")
            .ok_or(format!("no weight in {line:?}"))?
            .trim_matches('"')
            .parse::<f64>()
            .map_err(|e| format!("{line:?}: {e}"))?;
        g.add_edge(first, second, w)?;
    }
    if !closed {
        return Err("missing closing brace".into());
    }
    Ok(g)
}

fn xml_unescape(s: &str) -> String {
    s.replace("&lt;", "<")
        .replace("&gt;", ">")
        .replace("&quot;", "\"")
        .replace("&apos;", "'")
        .replace("&amp;", "&")
}

fn attributes(tag: &str) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    let mut rest = tag;
    while let Some(eq) = rest.find("=\"") {
        let key = rest[..eq].trim().rsplit(char::is_whitespace).next().unwrap().to_owned();
        let after = &rest[eq + 2..];
        let close = after.find('"').ok_or("unterminated attribute")?;
        out.insert(key, xml_unescape(&after[..close]));
        rest = &after[close + 1..];
    }
    Ok(out)
}

fn elements<'a>(text: &'a str, name: &str) -> Vec<&'a str> {
    let open = format!("<{name} ");
    let mut out = Vec::new();
    let mut rest = text;
    while let Some(i) = rest.find(&open) {
        let tail = &rest[i + open.len()..];
        let end = tail.find('>').unwrap_or(tail.len());
        out.push(&tail[..end]);
        rest = &tail[end..];
    }
    out
}

/// Reads node ids and weighted edges from a GEXF 1.2 document.
pub fn parse_gexf(text: &str) -> Result<ParsedGraph, String> {
    let root = elements(text, "gexf");
    let root = attributes(root.first().ok_or("no <gexf> element")?)?;
    if root.get("xmlns").map(String::as_str) != Some("http://www.gexf.net/1.2draft") {
        return Err("missing GEXF 1.2 namespace".into());
    }
    let graph = attributes(elements(text, "graph").first().ok_or("no <graph> element")?)?;
    if graph.get("defaultedgetype").map(String::as_str) != Some("directed") {
        return Err("graph is not directed".into());
    }
    let mut g = ParsedGraph::default();
    for node in elements(text, "node") {
        let a = attributes(node)?;
        let id = a.get("id").ok_or("node without id")?.clone();
        if a.get("label") != Some(&id) {
            return Err(format!("node {id}: label differs from id"));
        }
        if !g.nodes.insert(id.clone()) {
            return Err(format!("node {id} declared twice"));
        }
    }
    let mut ids = BTreeSet::new();
    for edge in elements(text, "edge") {
        let a = attributes(edge)?;
        let get = |k: &str| a.get(k).cloned().ok_or(format!("edge without {k}"));
        if !ids.insert(get("id")?) {
            return Err("duplicate edge id".into());
        }
        let w = get("weight")?.parse::<f64>().map_err(|e| e.to_string())?;
        g.add_edge(get("source")?, get("target")?, w)?;
    }
    Ok(g)
}
