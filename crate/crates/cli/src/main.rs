use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qflag_core::rootdata::{catalog, Capabilities, RootSystem, Series};
use qflag_core::runner::{run, Mode, Report, RunConfig, Suite};
use qflag_core::Error;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "qflag", version, about = "Verification suites for quantum irreducible flag manifolds")]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the supported (series, rank, node) cases with N, M and m.
    Catalog {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long)]
        exceptional: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Root system series: A, B, C, D (E with --exceptional).
    #[arg(long = "type")]
    series: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long)]
    node: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Symbolic)]
    mode: ModeArg,
    /// Comma list of rationals p/r in (0, 1].
    #[arg(long, default_value = "1/2")]
    q: String,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Comma list of appendixA, appendixB, algebra, calculus, kahler, or all.
    #[arg(long, default_value = "all")]
    suites: String,
    /// Report file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    jobs: Option<usize>,
    /// Enable E6 and E7.
    #[arg(long)]
    exceptional: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Symbolic,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Serialize)]
struct CatalogRow {
    series: Series,
    rank: usize,
    node: usize,
    #[serde(rename = "N")]
    n: u64,
    #[serde(rename = "M")]
    big_m: usize,
    m: i64,
}

fn catalog_rows(max_rank: usize, exceptional: bool) -> Vec<CatalogRow> {
    let caps = Capabilities { exceptional };
    catalog(max_rank, caps)
        .into_iter()
        .map(|e| {
            let rs = RootSystem::with_capabilities(e.series, e.rank, caps).expect("catalog entries are valid");
            CatalogRow {
                series: e.series,
                rank: e.rank,
                node: e.node,
                n: rs.weyl_dimension(&rs.fundamental(e.node)),
                big_m: rs.flag_dimension(e.node),
                m: rs.m,
            }
        })
        .collect()
}

fn config(args: &RunArgs) -> Result<RunConfig, Error> {
    let missing = |flag: &str| Error::UsageError(format!("--{flag} is required"));
    let series: Series = args.series.as_deref().ok_or_else(|| missing("type"))?.parse()?;
    let rank = args.rank.ok_or_else(|| missing("rank"))?;
    let node = args.node.ok_or_else(|| missing("node"))?;
    let mut cfg = RunConfig::new(series, rank, node);
    cfg.mode = match args.mode {
        ModeArg::Symbolic => Mode::Symbolic,
        ModeArg::Sampled => Mode::Sampled,
    };
    cfg.q_points = RunConfig::parse_q_list(&args.q)?;
    cfg.tol = args.tol;
    cfg.suites = Suite::parse_list(&args.suites)?;
    cfg.exceptional = args.exceptional;
    cfg.validate()?;
    Ok(cfg)
}

fn csv_report(report: &Report, out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["kind", "suite", "name", "point", "pass", "value"])?;
    for s in &report.suites {
        w.write_record(["suite", s.suite.name(), "", "", &s.pass.to_string(), ""])?;
        for c in &s.checks {
            let value = match (&c.deviation, &c.detail) {
                (Some(d), _) => format!("{d:e}"),
                (None, Some(d)) => d.clone(),
                (None, None) => String::new(),
            };
            w.write_record(["check", s.suite.name(), &c.name, &c.point, &c.pass.to_string(), &value])?;
        }
        for (k, v) in &s.facts {
            w.write_record(["fact", s.suite.name(), k, "", "", v])?;
        }
    }
    if let Some(cert) = &report.certificate {
        for e in &cert.lefschetz {
            let name = format!("k={} ({}x{})", e.k, e.size, e.size);
            if let Some(p) = &e.det_poly {
                w.write_record(["lefschetz", "kahler", &name, "symbolic", &(p != "0").to_string(), p])?;
            }
            for v in &e.values {
                w.write_record(["lefschetz", "kahler", &name, &v.q, &v.nonzero.to_string(), &v.value])?;
            }
        }
        w.write_record(["verdict", "kahler", "", "", &(cert.verdict == "pass").to_string(), &cert.verdict])?;
    }
    w.write_record(["overall", "", "", "", &report.pass.to_string(), ""])?;
    for (k, v) in &report.timings {
        w.write_record(["timing", "", k, "", "", &format!("{v:.3}")])?;
    }
    w.flush()?;
    Ok(())
}

fn emit<T: Serialize>(value: &T, out: &Option<PathBuf>, csv: impl FnOnce(Box<dyn Write>) -> io::Result<()>, format: Format) -> io::Result<()> {
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Json => {
            let mut sink = sink;
            serde_json::to_writer_pretty(&mut sink, value)?;
            writeln!(sink)?;
            sink.flush()
        }
        Format::Csv => csv(sink),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("qflag: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(Command::Catalog { max_rank, exceptional, format }) = cli.command {
        let rows = catalog_rows(max_rank, exceptional);
        let csv = |out: Box<dyn Write>| -> io::Result<()> {
            let mut w = csv::Writer::from_writer(out);
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()
        };
        return match emit(&rows, &None, csv, format) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(&Error::InternalConsistency(e.to_string())),
        };
    }

    let args = cli.run;
    let cfg = match config(&args) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = args.jobs {
        if j == 0 {
            return fail(&Error::UsageError("--jobs must be at least 1".into()));
        }
        pool = pool.num_threads(j);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return fail(&Error::InternalConsistency(e.to_string())),
    };
    let report = match pool.install(|| run(&cfg)) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let csv = |out: Box<dyn Write>| csv_report(&report, out).map_err(io::Error::other);
    if let Err(e) = emit(&report, &args.out, csv, args.format) {
        return fail(&Error::InternalConsistency(format!("writing the report: {e}")));
    }
    for s in &report.suites {
        eprintln!("{:<10} {}", s.suite.name(), if s.pass { "pass" } else { "FAIL" });
    }
    for (suite, c) in report.failing_checks() {
        eprintln!("  {suite}: {} [{}]", c.name, c.point);
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
