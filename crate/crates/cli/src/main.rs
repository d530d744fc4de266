use std::io::{self, Write};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use srh_core::schur::{schur_expansion, Method};
use srh_core::shorthand::{numbers, parse_graph, parse_partition};
use srh_core::tabloid::{enumerate_srh_g_tabloids, srh_tabloids};
use srh_core::verify::{self, SpiderForm, VerificationReport};
use srh_core::{CoefficientVector, Error, VertexSet};

#[derive(Parser)]
#[command(name = "srh", version, about = "Schur coefficients of chromatic symmetric functions via special rim hook tabloids")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for random graphs and relabelings.
    #[arg(long, default_value_t = 2024, global = true)]
    seed: u64,
    /// Wall-clock budget for the open-ended suites.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    /// Report wall_time_ms as 0 so output is byte-reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Schur expansion of X_G.
    Expand {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "tabloid")]
        method: Method,
    },
    /// Special rim hook tabloids of a shape, or its G-tabloids when a graph is given.
    Tabloids {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        graph: Option<String>,
    },
    /// Net recurrence over 1 <= m <= n <= n_max.
    NetRec {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
    },
    /// Spider recurrence over 3 <= n <= n_max.
    SpiderRec {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        /// Include the bottom-cell case the five-term form leaves out.
        #[arg(long)]
        corrected: bool,
    },
    /// Tailless-shape and pendant-tail lemmas.
    Structure {
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Head-group cancellation for tabloids with a pendant in the bottom cell.
    Cancel {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        lambda: String,
        /// Pendant labels (default: vertices with the pendant role).
        #[arg(long)]
        pendants: Option<String>,
        /// Body labels (default: anchors and buoys).
        #[arg(long)]
        body: Option<String>,
    },
    /// Schur positivity of nets, with the claw as control.
    Positivity {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
    },
    /// f(C,D) for C + D <= bound, checked against its recurrence.
    FTable {
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
    /// The spider coefficients the recurrence does not reach.
    OpenCoeffs {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// Singleton-removal identity for C + D <= bound.
    Singleton {
        #[arg(long, default_value_t = 5)]
        bound: usize,
    },
    /// Agreement of the three coefficient methods.
    Agree {
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        #[arg(long, default_value_t = 6)]
        random_vertices: usize,
        #[arg(long, default_value_t = 100)]
        random: usize,
    },
    /// Invariance of Schur expansions under random relabeling.
    Invariance {
        #[arg(long, default_value_t = 5)]
        relabelings: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().expect("pool built once");
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Internal(_) => 1,
                _ => 2,
            })
        }
    }
}

fn run(cli: &Cli) -> srh_core::Result<ExitCode> {
    let deadline = cli.budget_ms.map(|ms| Instant::now() + Duration::from_millis(ms));
    let report = match &cli.command {
        Command::Expand { graph, method } => {
            let g = parse_graph(graph)?;
            print_expansion(cli.format, &schur_expansion(&g, *method)?);
            return Ok(ExitCode::SUCCESS);
        }
        Command::Tabloids { shape, graph } => {
            print_tabloids(cli.format, shape, graph.as_deref())?;
            return Ok(ExitCode::SUCCESS);
        }
        Command::NetRec { n_max } => verify::run_net_recurrence_suite(*n_max)?,
        Command::SpiderRec { n_max, corrected } => {
            let form = if *corrected { SpiderForm::Corrected } else { SpiderForm::Stated };
            verify::run_spider_recurrence_suite(*n_max, form)?
        }
        Command::Structure { bound } => verify::run_structure_lemma_suite(*bound)?,
        Command::Cancel { graph, lambda, pendants, body } => {
            let g = parse_graph(graph)?;
            let lambda = parse_partition(lambda)?;
            let (default_pendants, default_body) = match (pendants, body) {
                (Some(_), Some(_)) => (0, 0),
                _ => verify::pendant_and_body_sets(&g)?,
            };
            let pendants = pendants.as_deref().map_or(Ok(default_pendants), vertex_set)?;
            let body = body.as_deref().map_or(Ok(default_body), vertex_set)?;
            verify::run_cancellation_check(&g, &lambda, pendants, body, deadline)?
        }
        Command::Positivity { n_max } => verify::run_positivity_sweep(*n_max, deadline)?,
        Command::FTable { bound } => {
            let (report, table) = verify::run_f_table_suite(*bound)?;
            if cli.format == Format::Text {
                println!("{:>3} {:>3}  f(C,D)", "C", "D");
                for ((c, d), value) in &table {
                    println!("{c:>3} {d:>3}  {value}");
                }
            } else if cli.format == Format::Csv {
                let mut w = csv::Writer::from_writer(io::stdout());
                w.write_record(["C", "D", "value"]).expect("stdout");
                for ((c, d), value) in &table {
                    w.write_record([c.to_string(), d.to_string(), value.to_string()]).expect("stdout");
                }
                w.flush().expect("stdout");
                return Ok(exit_for(&report));
            } else {
                let rows: Vec<_> =
                    table.iter().map(|((c, d), v)| json!({"C": c, "D": d, "value": v.to_string()})).collect();
                let mut report = report;
                strip_timing(cli, &mut report);
                let out = json!({"table": rows, "report": report});
                println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
                return Ok(exit_for(&report));
            }
            report
        }
        Command::OpenCoeffs { n_max } => verify::run_open_coefficient_report(*n_max, deadline)?,
        Command::Singleton { bound } => verify::run_singleton_lemma_suite(*bound)?,
        Command::Agree { max_vertices, random_vertices, random } => {
            verify::run_method_agreement(*max_vertices, *random_vertices, *random, cli.seed)?
        }
        Command::Invariance { relabelings } => {
            verify::run_label_invariance(&verify::swept_graphs(), *relabelings, cli.seed)?
        }
    };
    let mut report = report;
    strip_timing(cli, &mut report);
    print_report(cli.format, &report);
    Ok(exit_for(&report))
}

fn strip_timing(cli: &Cli, report: &mut VerificationReport) {
    if cli.no_timing {
        report.wall_time_ms = 0;
    }
}

fn exit_for(report: &VerificationReport) -> ExitCode {
    if report.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn vertex_set(s: &str) -> srh_core::Result<VertexSet> {
    let mut set = 0;
    for v in numbers(s.trim_matches(|c| c == '[' || c == ']'))? {
        if v == 0 || v > srh_core::graph::MAX_VERTICES {
            return Err(Error::InvalidArgument(format!("vertex {v} out of range")));
        }
        set |= srh_core::graph::bit(v);
    }
    Ok(set)
}

fn print_expansion(format: Format, v: &CoefficientVector) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(v).expect("serializable")),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(["partition", "value"]).expect("stdout");
            for (lambda, value) in v.iter() {
                w.write_record([lambda.to_string(), value.to_string()]).expect("stdout");
            }
            w.flush().expect("stdout");
        }
        Format::Text => {
            for (lambda, value) in v.iter() {
                println!("{lambda:<24} {value}");
            }
        }
    }
}

fn print_tabloids(format: Format, shape: &str, graph: Option<&str>) -> srh_core::Result<()> {
    let shape = parse_partition(shape)?;
    let rows: Vec<(i64, String, serde_json::Value)> = match graph {
        None => srh_tabloids(&shape)
            .iter()
            .map(|t| (t.sign(), t.content().to_string(), serde_json::to_value(t.as_ref()).expect("serializable")))
            .collect(),
        Some(graph) => {
            let g = parse_graph(graph)?;
            if g.n_vertices() != shape.size() {
                return Err(Error::SizeMismatch { partition: shape.size(), vertices: g.n_vertices() });
            }
            enumerate_srh_g_tabloids(&shape, &g)
                .iter()
                .map(|t| (t.sign(), t.content().to_string(), serde_json::to_value(t).expect("serializable")))
                .collect()
        }
    };
    match format {
        Format::Json => {
            let all: Vec<_> = rows.into_iter().map(|(_, _, v)| v).collect();
            println!("{}", serde_json::to_string_pretty(&all).expect("serializable"));
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(["sign", "content", "tabloid"]).expect("stdout");
            for (sign, content, value) in rows {
                w.write_record([sign.to_string(), content, value.to_string()]).expect("stdout");
            }
            w.flush().expect("stdout");
        }
        Format::Text => {
            let total: i64 = rows.iter().map(|r| r.0).sum();
            for (sign, content, _) in &rows {
                println!("{:>2}  {content}", if *sign > 0 { "+" } else { "-" });
            }
            println!("{} tabloids, signed sum {total}", rows.len());
        }
    }
    Ok(())
}

fn print_report(format: Format, report: &VerificationReport) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).expect("serializable")),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout());
            w.write_record(["statement_id", "status", "parameters", "lhs", "rhs", "terms"]).expect("stdout");
            for r in &report.instances {
                w.write_record([
                    report.statement_id.clone(),
                    r.status.to_string(),
                    serde_json::Value::Object(r.parameters.clone()).to_string(),
                    r.lhs.clone(),
                    r.rhs.clone(),
                    serde_json::to_string(&r.terms).expect("serializable"),
                ])
                .expect("stdout");
            }
            w.flush().expect("stdout");
        }
        Format::Text => {
            let mut out = io::stdout().lock();
            let verdict = if report.passed() { "PASS" } else if report.failures.is_empty() { "NO VERDICT" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{}: {verdict} ({} checked, {} failed, {} ms)",
                report.statement_id,
                report.instances_checked,
                report.failures.len(),
                report.wall_time_ms
            );
            for r in report.instances.iter().filter(|r| r.status != verify::Status::Pass) {
                let params = serde_json::Value::Object(r.parameters.clone());
                let _ = writeln!(out, "  [{}] {params} lhs={} rhs={}", r.status, r.lhs, r.rhs);
                for t in &r.terms {
                    let _ = writeln!(out, "      {} * {} = {}", t.factor, t.name, t.value);
                }
            }
            for note in &report.notes {
                let _ = writeln!(out, "  note: {note}");
            }
        }
    }
}
