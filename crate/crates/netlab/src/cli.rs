//! Command-line front end. [`run`] is the whole program minus the process
//! boundary, so tests can drive it in-process.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use cpis_netlab_core::{CorrelationMatrix, TierThresholds};

use crate::analysis;
use crate::error::{Error, Result};
use crate::export::{export_empty, export_graph, GraphFormat};
use crate::ingest::{build_dataset, parse_econ_csv, parse_positions_csv};
use crate::report::{
    parse_matrix_csv, render_indicators, render_matrix, render_summaries, render_tier_table,
    Format, ReportConfig,
};
use crate::store::{load_dataset, save_dataset};

pub const DATA_ENV: &str = "CPIS_NETLAB_DATA";

#[derive(Debug, Parser)]
#[command(name = "cpis-netlab", version, about = "Bilateral investment network analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a dataset directory from position and economic-indicator CSVs.
    Ingest {
        #[arg(long)]
        positions: PathBuf,
        #[arg(long)]
        econ: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Edges with an aggregated weight at or below this are dropped.
        #[arg(long, default_value_t = 0.0)]
        min_weight: f64,
        /// Free-text note on where the extracts came from.
        #[arg(long, default_value = "")]
        provenance: String,
    },
    /// Print node indicators N1–N11 (or graph-level summaries).
    Metrics {
        #[command(flatten)]
        data: DataArg,
        #[arg(long)]
        year: Option<i32>,
        #[arg(long)]
        country: Option<String>,
        /// Graph-level centralization and clustering instead of node rows.
        #[arg(long)]
        summary: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Classify countries into tiers by average closeness.
    Tiers {
        #[command(flatten)]
        data: DataArg,
        #[arg(long, default_value_t = 1.05)]
        t1: f64,
        #[arg(long, default_value_t = 1.20)]
        t2: f64,
        #[arg(long, value_enum, default_value_t = TierFormat::Text)]
        format: TierFormat,
    },
    /// Correlate a country's network indices with its economic indicators.
    Correlate {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Text)]
        format: MatrixFormat,
    },
    /// Render a correlation report (HTML or text).
    Report {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, value_enum, default_value_t = ReportFormat::Html)]
        format: ReportFormat,
    },
    /// Export one year's graph for external viewers.
    Export {
        #[command(flatten)]
        data: DataArg,
        #[arg(long)]
        year: i32,
        #[arg(long, value_enum)]
        format: ExportFormat,
    },
}

#[derive(Debug, Args)]
struct DataArg {
    /// Dataset directory written by `ingest`.
    #[arg(long, env = DATA_ENV)]
    data: PathBuf,
}

#[derive(Debug, Args)]
struct MatrixArgs {
    /// Dataset directory written by `ingest`.
    #[arg(long, env = DATA_ENV, required_unless_present = "matrix")]
    data: Option<PathBuf>,
    /// Precomputed matrix grid (`network,E1,...,E8`); takes precedence over --data.
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long)]
    country: String,
    /// |r| below this is reported as weak.
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    #[arg(long, default_value_t = 3)]
    decimals: usize,
    /// Observation count recorded for cells of a `--matrix` grid.
    #[arg(long, default_value_t = 14, requires = "matrix")]
    n_obs: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TierFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Text,
    Html,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Html,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExportFormat {
    Gexf,
    Dot,
}

impl From<TableFormat> for Format {
    fn from(f: TableFormat) -> Self {
        match f {
            TableFormat::Csv => Format::Csv,
            TableFormat::Json => Format::Json,
        }
    }
}

impl From<TierFormat> for Format {
    fn from(f: TierFormat) -> Self {
        match f {
            TierFormat::Text => Format::Text,
            TierFormat::Csv => Format::Csv,
            TierFormat::Json => Format::Json,
        }
    }
}

impl From<MatrixFormat> for Format {
    fn from(f: MatrixFormat) -> Self {
        match f {
            MatrixFormat::Text => Format::Text,
            MatrixFormat::Html => Format::Html,
            MatrixFormat::Csv => Format::Csv,
            MatrixFormat::Json => Format::Json,
        }
    }
}

impl From<ReportFormat> for Format {
    fn from(f: ReportFormat) -> Self {
        match f {
            ReportFormat::Html => Format::Html,
            ReportFormat::Text => Format::Text,
        }
    }
}

impl From<ExportFormat> for GraphFormat {
    fn from(f: ExportFormat) -> Self {
        match f {
            ExportFormat::Gexf => GraphFormat::Gexf,
            ExportFormat::Dot => GraphFormat::Dot,
        }
    }
}

/// Parses `args` (including the program name), executes the command and
/// returns the exit status: 0 success, 1 validation or usage error, 2 I/O error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                1
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

fn emit(out: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    out.write_all(bytes)
        .and_then(|()| out.flush())
        .map_err(|e| Error::io("<stdout>", e))
}

fn load_matrix(args: &MatrixArgs) -> Result<(CorrelationMatrix, ReportConfig)> {
    let cfg = ReportConfig::new(args.threshold, args.decimals)?;
    let matrix = match (&args.matrix, &args.data) {
        (Some(path), _) => {
            let country = cpis_netlab_core::CountryCode::new(&args.country)?;
            parse_matrix_csv(&read(path)?, country, cfg.threshold, args.n_obs)?
        }
        (None, Some(dir)) => {
            let ds = load_dataset(dir)?;
            let country = ds.country(&args.country)?;
            analysis::correlate(&ds, &country, cfg.threshold)?
        }
        (None, None) => return Err(Error::Invalid("either --data or --matrix is required".into())),
    };
    Ok((matrix, cfg))
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match command {
        Command::Ingest {
            positions,
            econ,
            out: dir,
            min_weight,
            provenance,
        } => {
            let p = parse_positions_csv(&read(&positions)?)?;
            let e = parse_econ_csv(&read(&econ)?)?;
            let ds = build_dataset(&p.rows, &e.series, min_weight, provenance)?;
            save_dataset(&ds, &dir)?;
            let s = p.skipped;
            let _ = writeln!(
                err,
                "ingested {} position rows into {} countries x {} years; skipped {} \
                 (missing {}, non-numeric {}, zero {}, negative {}, domestic {}); \
                 skipped {} economic values",
                p.rows.len(),
                ds.countries().len(),
                ds.years().len(),
                s.total(),
                s.missing,
                s.non_numeric,
                s.zero,
                s.negative,
                s.self_loop,
                e.skipped
            );
            Ok(())
        }
        Command::Metrics {
            data,
            year,
            country,
            summary,
            format,
        } => {
            let ds = load_dataset(&data.data)?;
            if let Some(y) = year {
                if ds.graph(y).is_none() {
                    let _ = writeln!(err, "warning: no graph for year {y} in the dataset");
                }
            }
            let country = country.map(|c| ds.country(&c)).transpose()?;
            let text = if summary {
                let rows: Vec<_> = analysis::graph_summaries(&ds)
                    .into_iter()
                    .filter(|s| year.is_none_or(|y| s.year == y))
                    .collect();
                render_summaries(&rows, format.into())
            } else {
                let rows: Vec<_> = analysis::indicator_table(&ds)
                    .into_iter()
                    .filter(|r| year.is_none_or(|y| r.year == y))
                    .filter(|r| country.as_ref().is_none_or(|c| &r.country == c))
                    .collect();
                render_indicators(&rows, format.into())
            };
            emit(out, text.as_bytes())
        }
        Command::Tiers {
            data,
            t1,
            t2,
            format,
        } => {
            let thresholds = TierThresholds::new(t1, t2)?;
            let ds = load_dataset(&data.data)?;
            let report = analysis::tiers(&ds, &thresholds);
            for u in &report.untierable {
                let _ = writeln!(err, "warning: {} not tiered: {}", u.country, u.reason);
            }
            emit(out, render_tier_table(&report, format.into()).as_bytes())
        }
        Command::Correlate { matrix, format } => {
            let (m, cfg) = load_matrix(&matrix)?;
            emit(out, render_matrix(&m, &cfg, format.into()).as_bytes())
        }
        Command::Report { matrix, format } => {
            let (m, cfg) = load_matrix(&matrix)?;
            emit(out, render_matrix(&m, &cfg, format.into()).as_bytes())
        }
        Command::Export { data, year, format } => {
            let ds = load_dataset(&data.data)?;
            let bytes = match ds.graph(year) {
                Some(g) => export_graph(g, format.into()),
                None => {
                    let _ = writeln!(err, "warning: no graph for year {year}; exporting an empty graph");
                    export_empty(year, format.into())
                }
            };
            emit(out, &bytes)
        }
    }
}
