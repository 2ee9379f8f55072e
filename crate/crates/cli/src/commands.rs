use std::path::PathBuf;

use anyhow::{bail, ensure};
use lclab_core::concavity::{self, first_vertical_failure, floor_power};
use lclab_core::polyfam::{self, default_xs};
use lclab_core::{partitions, ArithFn, HFn, StirlingColumnTable, Triangle};
use log::info;

use crate::args::{CheckCommand, ColumnRange, Command, FamilyArgs, Format, GSpec, ScanArgs};
use crate::cache::{Cache, Lookup};
use crate::ingest::ingest_custom_g;
use crate::output::{self, CheckOutput};

/// Validated settings shared by every command.
#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    pub format: Option<Format>,
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    fn format(&self) -> Format {
        self.format.unwrap_or(Format::Table)
    }

    fn cache(&self) -> anyhow::Result<Option<Cache>> {
        self.cache_dir.as_ref().map(Cache::open).transpose()
    }
}

/// Rendered output plus the verdict that decides the exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub passed: bool,
    pub body: String,
}

pub fn resolve_g(spec: &GSpec) -> anyhow::Result<ArithFn> {
    match spec {
        GSpec::Builtin(g) => Ok(g.clone()),
        GSpec::Custom(path) => ingest_custom_g(path),
    }
}

fn family(args: &FamilyArgs) -> anyhow::Result<(ArithFn, HFn)> {
    Ok((resolve_g(&args.g)?, args.h))
}

/// Full triangles go through the cache when one is configured; otherwise
/// only the requested columns are computed.
fn obtain(
    cfg: &RunConfig,
    g: &ArithFn,
    h: HFn,
    n: usize,
    columns: Option<usize>,
) -> anyhow::Result<Triangle> {
    if let Some(cache) = cfg.cache()? {
        let (tri, lookup) = cache.get_or_build(g, h, n)?;
        match lookup {
            Lookup::Hit { stored_n } => info!("cache hit ({} N={stored_n})", g.label()),
            Lookup::Miss => info!("cache miss ({} N={n}), stored", g.label()),
        }
        return Ok(tri);
    }
    let builder = Triangle::builder(g, h, n);
    Ok(match columns {
        Some(cap) => builder.columns(cap).build()?,
        None => builder.build()?,
    })
}

pub fn execute(command: &Command, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    match command {
        Command::Triangle(args) => {
            let (g, h) = family(&args.family)?;
            let tri = obtain(cfg, &g, h, args.n, None)?;
            let body = match cfg.format() {
                Format::Table => output::triangle_table(&tri),
                Format::Json => output::triangle_json(&tri),
                Format::Csv => output::triangle_csv(&tri),
            };
            Ok(Outcome { passed: true, body })
        }
        Command::Check(check) => {
            let result = run_check(check, cfg)?;
            let body = match cfg.format() {
                Format::Table => result.to_text(check.name()),
                Format::Json => result.to_json(check.name()),
                Format::Csv => bail!("csv output is only available for `triangle`"),
            };
            Ok(Outcome {
                passed: result.passed(),
                body,
            })
        }
    }
}

/// `(m_from, m_to)`, defaulting to every column of an `N`-row triangle.
fn column_range(range: &ColumnRange, n_max: usize) -> anyhow::Result<(usize, usize)> {
    let (from, to) = match range.m {
        Some(m) => (m, m),
        None => (
            range.m_from.unwrap_or(1),
            range.m_to.unwrap_or(n_max.max(1)),
        ),
    };
    ensure!(from >= 1, "column indices start at 1");
    ensure!(from <= to, "empty column range {from}..{to}");
    Ok((from, to))
}

fn horizontal(args: &ScanArgs, cfg: &RunConfig) -> anyhow::Result<CheckOutput> {
    let (g, h) = family(&args.family)?;
    let (m_from, m_to) = column_range(&args.columns, args.n_max)?;
    let tri = obtain(cfg, &g, h, args.n_max, None)?;
    let mut report = concavity::horizontal_check(&tri, 1, args.n_max)?;
    let keep = |c: &concavity::Coord| (m_from..=m_to).contains(&c.m);
    report.failures.retain(keep);
    report.equalities.retain(keep);
    report.m_from = m_from;
    report.m_to = m_to;
    report.passed = report.failures.is_empty();
    Ok(CheckOutput::Concavity(report))
}

fn vertical(args: &ScanArgs, cfg: &RunConfig) -> anyhow::Result<CheckOutput> {
    let (g, h) = family(&args.family)?;
    let (m_from, m_to) = column_range(&args.columns, args.n_max)?;
    let tri = obtain(cfg, &g, h, args.n_max, Some(m_to))?;
    Ok(CheckOutput::Concavity(concavity::vertical_check(
        &tri, m_from, m_to, args.n_max,
    )?))
}

fn table1(m_max: usize, n_limit: usize) -> anyhow::Result<CheckOutput> {
    ensure!(m_max >= 1, "--m-max must be at least 1");
    let tri = StirlingColumnTable::new(n_limit + 1, m_max).to_triangle();
    let n0 = (1..=m_max)
        .map(|m| first_vertical_failure(&tri, m, n_limit))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CheckOutput::Table1 { m_max, n_limit, n0 })
}

pub fn run_check(check: &CheckCommand, cfg: &RunConfig) -> anyhow::Result<CheckOutput> {
    Ok(match check {
        CheckCommand::Horizontal(args) => horizontal(args, cfg)?,
        CheckCommand::Vertical(args) => vertical(args, cfg)?,
        CheckCommand::Cscan {
            family: fam,
            c,
            m_max,
            include_m1,
        } => {
            let (g, h) = family(fam)?;
            let m_from = if *include_m1 { 1 } else { 2 };
            ensure!(*m_max >= m_from, "--m-max must be at least {m_from}");
            let limit = floor_power(c, *m_max);
            ensure!(limit < usize::MAX, "C^m_max is too large to scan");
            let tri = obtain(cfg, &g, h, limit + 1, Some(*m_max))?;
            let report = concavity::c_vertical_check(&tri, c, m_from, *m_max)?;
            if *include_m1 {
                CheckOutput::Concavity(report)
            } else {
                let column1 = concavity::c_vertical_check(&tri, c, 1, 1)?;
                CheckOutput::CScan { report, column1 }
            }
        }
        CheckCommand::Conversion { g, n_max } => {
            CheckOutput::Compare(polyfam::check_conversion(&resolve_g(g)?, *n_max)?)
        }
        CheckCommand::Genfun {
            family: fam,
            n_max,
            xs,
        } => {
            let (g, h) = family(fam)?;
            let xs = if xs.is_empty() {
                default_xs()
            } else {
                xs.clone()
            };
            CheckOutput::Compare(polyfam::genfun_crosscheck(&g, h, *n_max, &xs)?)
        }
        CheckCommand::Euler { g, n_max, x } => CheckOutput::Compare(
            polyfam::euler_product_crosscheck(&resolve_g(g)?, *n_max, x)?,
        ),
        CheckCommand::NoIdentity { n_max } => {
            CheckOutput::Compare(partitions::check_no_identity(*n_max)?)
        }
        CheckCommand::Hz { c, m_max } => {
            CheckOutput::Concavity(concavity::hong_zhang_scan(c, *m_max)?)
        }
        CheckCommand::Table1 { m_max, n_limit } => table1(*m_max, *n_limit)?,
        CheckCommand::ClosedForms { n_max } => {
            CheckOutput::Compare(polyfam::check_closed_forms(*n_max)?)
        }
    })
}
