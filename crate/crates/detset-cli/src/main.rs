//! `detset`: determining and generating numbers of concrete finite groups.
//!
//! Groups are named by expressions like `Z(6)`, `D(4)^2 x S(3)`, or `ST(3,5)`.
//! Single-group commands print one report; `verify` runs the theorem suite
//! over a generated catalog. Exit codes: 0 clean, 1 theorem violation,
//! 2 parse or usage error, 3 a resource cap left a verdict incomplete.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use detset::catalog::{build_catalog, CatalogSpec};
use detset::expr::{evaluate, parse_group_expr};
use detset::report::{emit_report, Format, Report, WitnessSet};
use detset::suite::theorem_suite;
use detset::{aut_group, determining_number, generating_number, Caps, Error, FiniteGroup};

#[derive(Parser)]
#[command(name = "detset", version, about = "Determining and generating numbers of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Fmt::Text)]
    format: Fmt,
    /// Cap on the number of automorphisms enumerated and stored.
    #[arg(long, global = true, value_name = "N")]
    aut_cap: Option<u64>,
    /// Node budget for subset searches.
    #[arg(long, global = true, value_name = "N")]
    node_budget: Option<u64>,
    /// Reserved. Every search here is already deterministic; the flag is
    /// accepted for interface stability and does nothing.
    #[arg(long, global = true)]
    seedless: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Determining number with a lexicographically least minimum witness.
    Alpha {
        #[arg(value_name = "EXPR")]
        expr: String,
    },
    /// Generating number with a lexicographically least minimum witness.
    Gamma {
        #[arg(value_name = "EXPR")]
        expr: String,
    },
    /// Automorphism group order, exact when enumerable.
    Aut {
        #[arg(value_name = "EXPR")]
        expr: String,
    },
    /// Whether the determining and generating numbers coincide.
    Deg {
        #[arg(value_name = "EXPR")]
        expr: String,
    },
    /// Basic structural facts about one group.
    Info {
        #[arg(value_name = "EXPR")]
        expr: String,
    },
    /// Run the theorem suite over the group catalog.
    Verify {
        /// Largest group order admitted to the catalog.
        #[arg(long, value_name = "N", default_value_t = 63)]
        max_order: usize,
        /// Worker threads for catalog analysis.
        #[arg(long, value_name = "N")]
        workers: Option<usize>,
    },
    /// List the catalog entries.
    Catalog {
        /// Largest group order admitted to the catalog.
        #[arg(long, value_name = "N", default_value_t = 63)]
        max_order: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Text,
    Json,
}

impl From<Fmt> for Format {
    fn from(f: Fmt) -> Format {
        match f {
            Fmt::Text => Format::Text,
            Fmt::Json => Format::Json,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = match Caps::from_env() {
        Ok(mut caps) => {
            if let Some(v) = cli.aut_cap {
                caps.aut_enumeration_cap = v;
            }
            if let Some(v) = cli.node_budget {
                caps.node_budget = v;
            }
            caps
        }
        Err(msg) => {
            eprintln!("detset: DETSET_CAPS: {msg}");
            return ExitCode::from(2);
        }
    };
    let format = cli.format.into();
    let result = match &cli.command {
        Command::Alpha { expr } => cmd_alpha(expr, &caps).map(|(r, c)| (emit_report(&r, format), c)),
        Command::Gamma { expr } => cmd_gamma(expr, &caps).map(|(r, c)| (emit_report(&r, format), c)),
        Command::Aut { expr } => cmd_aut(expr, &caps).map(|(r, c)| (emit_report(&r, format), c)),
        Command::Deg { expr } => cmd_deg(expr, &caps).map(|(r, c)| (emit_report(&r, format), c)),
        Command::Info { expr } => cmd_info(expr, &caps).map(|(r, c)| (emit_report(&r, format), c)),
        Command::Verify { max_order, workers } => {
            cmd_verify(*max_order, *workers, &caps).map(|(r, c)| (emit_report(&r, format), c))
        }
        Command::Catalog { max_order } => cmd_catalog(*max_order, &caps, format),
    };
    match result {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("detset: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

/// Syntax and parameter problems are usage errors; everything else a command
/// can surface is a cap that left the question unanswered.
fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } | Error::BadParameter { .. } => 2,
        _ => 3,
    }
}

fn build_group(expr: &str, caps: &Caps) -> Result<FiniteGroup, Error> {
    Ok(evaluate(&parse_group_expr(expr)?, caps)?.into_group())
}

/// Renders a budget stop as a capped flag carrying the proven lower bound;
/// any other error propagates.
fn capped_note(name: &str, e: Error) -> Result<String, Error> {
    match e {
        Error::NodeBudget { lower } => {
            Ok(format!("node budget exhausted during the {name} search; {name} >= {lower}"))
        }
        Error::SubsetBudget { size, estimate, budget } => Ok(format!(
            "{name} search refused size {size}: {estimate} subsets exceed the remaining budget {budget}; {name} >= {size}"
        )),
        other => Err(other),
    }
}

fn cmd_alpha(expr: &str, caps: &Caps) -> Result<(Report, u8), Error> {
    let g = build_group(expr, caps)?;
    let started = Instant::now();
    let mut report = Report::new(g.descriptor(), g.order());
    let mut code = 0u8;
    match determining_number(&g, caps) {
        Ok(a) => {
            report.alpha = Some(a.value);
            report.aut_order = a.aut_order;
            report.nodes = a.nodes;
            report
                .witnesses
                .push(WitnessSet { kind: "determining", labels: a.witness.labels(&g) });
        }
        Err(e) => {
            report.capped_flags.push(capped_note("alpha", e)?);
            code = 3;
        }
    }
    report.millis = started.elapsed().as_millis();
    Ok((report, code))
}

fn cmd_gamma(expr: &str, caps: &Caps) -> Result<(Report, u8), Error> {
    let g = build_group(expr, caps)?;
    let started = Instant::now();
    let mut report = Report::new(g.descriptor(), g.order());
    let mut code = 0u8;
    match generating_number(&g, caps) {
        Ok(gam) => {
            report.gamma = Some(gam.value);
            report.nodes = gam.nodes;
            report
                .witnesses
                .push(WitnessSet { kind: "generating", labels: gam.witness.labels(&g) });
        }
        Err(e) => {
            report.capped_flags.push(capped_note("gamma", e)?);
            code = 3;
        }
    }
    report.millis = started.elapsed().as_millis();
    Ok((report, code))
}

fn cmd_aut(expr: &str, caps: &Caps) -> Result<(Report, u8), Error> {
    let g = build_group(expr, caps)?;
    let started = Instant::now();
    let mut report = Report::new(g.descriptor(), g.order());
    let aut = aut_group(&g, caps);
    report.aut_order = aut.order();
    let mut code = 0u8;
    if !aut.complete {
        report.capped_flags.push(format!(
            "automorphism enumeration capped: {} candidates exceed {}; order >= {}",
            aut.candidate_estimate, aut.effective_cap, aut.order_lower_bound
        ));
        report
            .extras
            .push(("aut order bound".into(), format!(">= {}", aut.order_lower_bound)));
        code = 3;
    }
    report.extras.push(("generators".into(), aut.generators.len().to_string()));
    report.millis = started.elapsed().as_millis();
    Ok((report, code))
}

fn cmd_deg(expr: &str, caps: &Caps) -> Result<(Report, u8), Error> {
    let g = build_group(expr, caps)?;
    let started = Instant::now();
    let mut report = Report::new(g.descriptor(), g.order());
    let mut code = 0u8;
    match determining_number(&g, caps) {
        Ok(a) => {
            report.alpha = Some(a.value);
            report.aut_order = a.aut_order;
            report.nodes += a.nodes;
            report
                .witnesses
                .push(WitnessSet { kind: "determining", labels: a.witness.labels(&g) });
        }
        Err(e) => {
            report.capped_flags.push(capped_note("alpha", e)?);
            code = 3;
        }
    }
    match generating_number(&g, caps) {
        Ok(gam) => {
            report.gamma = Some(gam.value);
            report.nodes += gam.nodes;
            report
                .witnesses
                .push(WitnessSet { kind: "generating", labels: gam.witness.labels(&g) });
        }
        Err(e) => {
            report.capped_flags.push(capped_note("gamma", e)?);
            code = 3;
        }
    }
    report.millis = started.elapsed().as_millis();
    Ok((report, code))
}

fn cmd_info(expr: &str, caps: &Caps) -> Result<(Report, u8), Error> {
    let g = build_group(expr, caps)?;
    let started = Instant::now();
    let mut report = Report::new(g.descriptor(), g.order());
    report.extras.push(("abelian".into(), g.is_abelian().to_string()));
    report.extras.push(("nilpotent".into(), g.is_nilpotent().to_string()));
    report.extras.push(("chi".into(), g.chi().to_string()));
    report.extras.push(("center order".into(), g.center().len().to_string()));
    report.millis = started.elapsed().as_millis();
    Ok((report, 0))
}

fn cmd_verify(max_order: usize, workers: Option<usize>, caps: &Caps) -> Result<(Report, u8), Error> {
    let spec = CatalogSpec { max_order, families: None, include_products: true };
    let entries = build_catalog(&spec, caps)?;
    let workers = workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()).min(8))
        .max(1);
    let suite = theorem_suite(&entries, caps, workers);
    // For a suite run, `order` is the number of catalog groups analyzed.
    let mut report = Report::new(format!("catalog(max_order={max_order})"), suite.groups);
    report.nodes = suite.nodes;
    report.millis = suite.millis;
    let code = suite.exit_code() as u8;
    if suite.resource_skips > 0 {
        report
            .capped_flags
            .push(format!("{} verdicts skipped on exhausted budgets", suite.resource_skips));
    }
    report.suite_entries = Some(suite.entries);
    Ok((report, code))
}

#[derive(Serialize)]
struct CatalogRow {
    descriptor: String,
    order: usize,
    info_only: bool,
}

fn cmd_catalog(max_order: usize, caps: &Caps, format: Format) -> Result<(String, u8), Error> {
    let spec = CatalogSpec { max_order, families: None, include_products: true };
    let rows: Vec<CatalogRow> = build_catalog(&spec, caps)?
        .iter()
        .map(|e| CatalogRow {
            descriptor: e.descriptor.clone(),
            order: e.order(),
            info_only: e.info_only,
        })
        .collect();
    let out = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize infallibly");
            s.push('\n');
            s
        }
        Format::Text => {
            let width = rows.iter().map(|r| r.descriptor.len()).max().unwrap_or(0);
            let mut s = String::new();
            for r in &rows {
                let note = if r.info_only { "  info-only" } else { "" };
                s.push_str(&format!("{:<width$}  {:>5}{note}\n", r.descriptor, r.order));
            }
            s.push_str(&format!("{} groups\n", rows.len()));
            s
        }
    };
    Ok((out, 0))
}
