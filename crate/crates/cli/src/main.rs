use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use gwkit::commands::{self, Command};
use gwkit::config::{capped_budget, Loaded, RunConfig};
use gwkit::report::{self, SuiteReport};
use gwkit::suites::{self, SuiteContext};
use gwkit::exit;
use gwkit_core::lengths::DEFAULT_BUDGET;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    /// Run verification suites and write JSON-lines reports.
    Run,
    /// List the registered suites.
    Suites,
    Normalize,
    Multiply,
    Mmap,
    InA,
    Quotient,
    Iso,
    Predicates,
}

#[derive(Debug, Parser)]
#[command(name = "gwkit", version, about = "Graph products, wreath actions and their verification suites")]
struct Cli {
    command: Cmd,
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    radius: Option<usize>,
    /// Where to write JSON-lines reports (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Suites to run; repeatable. Overrides the config's list.
    #[arg(long = "suite")]
    suites: Vec<String>,
}

fn load(cli: &Cli) -> Result<Option<Loaded>, String> {
    let Some(path) = &cli.config else {
        return Ok(None);
    };
    RunConfig::from_path(path)
        .and_then(RunConfig::load)
        .map(Some)
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn write_reports(reports: &[SuiteReport], out: Option<&PathBuf>) -> io::Result<()> {
    let mut sink: Box<dyn Write> = match out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    for r in reports {
        writeln!(sink, "{}", r.to_json_line())?;
    }
    sink.flush()
}

fn run_suites(cli: &Cli, cfg: Option<&Loaded>) -> Result<i32, String> {
    let names = match (&cli.suites, cfg) {
        (s, _) if !s.is_empty() => s.clone(),
        (_, Some(c)) => c.raw.suites.clone(),
        _ => Vec::new(),
    };
    let ctx = SuiteContext {
        seed: cli.seed.or(cfg.map(Loaded::seed)).unwrap_or(1),
        samples: cli.samples.or(cfg.and_then(|c| c.raw.samples)),
        radius: cli.radius.or(cfg.and_then(|c| c.raw.radius)),
        budget: cfg.map_or_else(|| capped_budget(DEFAULT_BUDGET), Loaded::budget),
        config: cfg,
    };
    let reports = suites::run_named(&names, &ctx).map_err(|e| e.to_string())?;
    let out = cli.out.as_ref().or(cfg.and_then(|c| c.raw.out.as_ref()));
    write_reports(&reports, out).map_err(|e| format!("writing reports: {e}"))?;
    print!("{}", report::summary(&reports));
    Ok(report::exit_code(&reports))
}

fn command(cmd: Cmd) -> Option<Command> {
    Some(match cmd {
        Cmd::Normalize => Command::Normalize,
        Cmd::Multiply => Command::Multiply,
        Cmd::Mmap => Command::Mmap,
        Cmd::InA => Command::InA,
        Cmd::Quotient => Command::Quotient,
        Cmd::Iso => Command::Iso,
        Cmd::Predicates => Command::Predicates,
        Cmd::Run | Cmd::Suites => return None,
    })
}

fn real_main(cli: &Cli) -> Result<i32, String> {
    if let Cmd::Suites = cli.command {
        for name in suites::registry().names() {
            let suite = suites::registry().lookup(name).expect("registered");
            println!("{name}: {}", suite.statement());
        }
        return Ok(exit::PASS);
    }
    let cfg = load(cli)?;
    let Some(cmd) = command(cli.command) else {
        return run_suites(cli, cfg.as_ref());
    };
    let cfg = cfg.ok_or("this command needs --config")?;
    let output = commands::execute(cmd, &cfg, cli.radius).map_err(|e| e.to_string())?;
    for line in &output.lines {
        println!("{line}");
    }
    Ok(output.code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match real_main(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit::CONFIG as u8)
        }
    }
}
