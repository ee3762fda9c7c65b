use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use k3g2_core::pairs::PairRule;
use k3g2_core::torus::ConstructionCase;
use k3g2_report::artifact::{OutputFormat, Report};
use k3g2_report::commands::{self, Context};
use k3g2_report::data::{LiteratureCatalog, NikulinCatalog};
use k3g2_report::error::CliError;
use k3g2_report::verify;

#[derive(Parser)]
#[command(
    name = "k3g2",
    version,
    about = "Commuting K3 lattice involutions and Betti numbers of resolved T^3 x K3 quotients"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Nikulin triple catalogue; the bundled copy is used when omitted.
    #[arg(long, global = true)]
    nikulin_data: Option<PathBuf>,
    /// Use classified simple pairs only.
    #[arg(long, global = true)]
    simple_only: bool,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Rule::Strict)]
    rule: Rule,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Strict,
    Published,
}

#[derive(Subcommand)]
enum Command {
    /// Commuting involution pairs up to conjugation.
    ClassifyPairs {
        #[arg(long)]
        prime_only: bool,
    },
    /// Invariant tuple census.
    Tuples,
    /// Invariants of single simple involutions.
    SimpleTriples,
    /// Betti numbers of the resolved quotients.
    Betti {
        #[arg(long, value_parser = parse_case)]
        case: ConstructionCase,
    },
    /// Produced pairs absent from the literature catalogue.
    DiffLiterature {
        #[arg(long, value_parser = parse_diff_case)]
        case: ConstructionCase,
    },
    /// Fixed sets of the group elements on T^3.
    FixedSets {
        #[arg(long, value_parser = parse_case)]
        case: ConstructionCase,
    },
    /// Run the verification suite.
    VerifyPaper {
        /// Skip criteria that need the Nikulin catalogue.
        #[arg(long)]
        skip_external: bool,
    },
}

fn parse_case(s: &str) -> Result<ConstructionCase, String> {
    s.parse().map_err(|_| format!("unknown case {s:?}; expected 1, 2, 3 or d4"))
}

fn parse_diff_case(s: &str) -> Result<ConstructionCase, String> {
    match parse_case(s)? {
        c @ (ConstructionCase::Case2 | ConstructionCase::D4) => Ok(c),
        _ => Err(format!("no literature catalogue for case {s}; expected 2 or d4")),
    }
}

fn write(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let text = report.render(cli.format)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write { path: path.clone(), source }),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                Err(CliError::Write { path: PathBuf::from("<stdout>"), source: e })
            }
            _ => Ok(()),
        },
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CliError::ThreadPool(e.to_string()))?;
    pool.install(|| dispatch(cli))
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let skip_external = matches!(cli.command, Command::VerifyPaper { skip_external: true });
    let nikulin = match (&cli.nikulin_data, cli.simple_only || skip_external) {
        (_, true) => None,
        (Some(path), false) => Some(NikulinCatalog::load(path)?),
        (None, false) => Some(NikulinCatalog::bundled()),
    };
    let rule = match cli.rule {
        Rule::Strict => PairRule::Strict,
        Rule::Published => PairRule::Published,
    };
    let ctx = Context::new(rule, nikulin, LiteratureCatalog::bundled());
    let with_catalog = ctx.nikulin.is_some();
    let report = match &cli.command {
        Command::ClassifyPairs { prime_only } => commands::classify(&ctx, *prime_only)?,
        Command::Tuples => commands::tuples(&ctx)?,
        Command::SimpleTriples => commands::simple(&ctx)?,
        Command::Betti { case } => commands::betti(&ctx, *case, with_catalog)?,
        Command::DiffLiterature { case } => {
            let catalog = with_catalog && *case == ConstructionCase::D4;
            commands::diff_literature(&ctx, *case, catalog)?
        }
        Command::FixedSets { case } => commands::fixed_sets(*case)?,
        Command::VerifyPaper { .. } => {
            let result = verify::run(&ctx, skip_external)?;
            write(cli, &result.to_report())?;
            if !result.passed() {
                let ids: Vec<String> = result.failed_ids().iter().map(|i| i.to_string()).collect();
                return Err(CliError::VerificationFailed(format!("criteria {}", ids.join(", "))));
            }
            return Ok(());
        }
    };
    write(cli, &report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use k3g2_report::artifact::Report;

    fn run_to_file(args: &[&str]) -> (Result<(), CliError>, String) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out");
        let mut argv = vec!["k3g2"];
        argv.extend_from_slice(args);
        argv.extend_from_slice(&["--out", path.to_str().unwrap()]);
        let result = run(&Cli::try_parse_from(argv).unwrap());
        (result, std::fs::read_to_string(&path).unwrap_or_default())
    }

    #[test]
    fn output_is_identical_across_thread_counts() {
        for args in [&["betti", "--case", "d4"][..], &["classify-pairs", "--format", "json"][..]] {
            let (r1, one) = run_to_file(&[args, &["--threads", "1"]].concat());
            let (_, four) = run_to_file(&[args, &["--threads", "4"]].concat());
            let (_, again) = run_to_file(&[args, &["--threads", "4"]].concat());
            assert!(r1.is_ok());
            assert!(!one.is_empty());
            assert_eq!(one, four, "{args:?}");
            assert_eq!(four, again, "{args:?}");
        }
    }

    #[test]
    fn missing_data_file_exits_with_3() {
        let (r, _) = run_to_file(&["betti", "--case", "1", "--nikulin-data", "/nonexistent/nikulin.txt"]);
        let e = r.unwrap_err();
        assert_eq!(e.exit_code(), 3);
        assert!(e.to_string().contains("cannot read data file"));
    }

    #[test]
    fn simple_only_ignores_the_data_file() {
        let (r, text) =
            run_to_file(&["betti", "--case", "3", "--simple-only", "--nikulin-data", "/nonexistent/nikulin.txt"]);
        assert!(r.is_ok());
        assert!(text.contains("# b3 values: {71}"));
    }

    #[test]
    fn bad_case_arguments_are_rejected() {
        assert!(Cli::try_parse_from(["k3g2", "betti", "--case", "5"]).is_err());
        assert!(Cli::try_parse_from(["k3g2", "diff-literature", "--case", "1"]).is_err());
        assert!(Cli::try_parse_from(["k3g2", "fixed-sets", "--case", "D4"]).is_ok());
    }

    #[test]
    fn published_rule_summary_lines() {
        let (_, text) = run_to_file(&["classify-pairs", "--rule", "published", "--prime-only"]);
        assert!(text.contains("59 = 27+8+8+16"));
        let (_, text) = run_to_file(&["classify-pairs", "--rule", "published", "--format", "md"]);
        assert!(text.contains("- pair classes: 531"));
        assert!(text.contains("- distinct tuples: 342"));
    }

    #[test]
    fn json_report_parses_back() {
        let (_, text) = run_to_file(&["fixed-sets", "--case", "d4", "--format", "json"]);
        let report: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(report.render(OutputFormat::Json).unwrap(), text);
        assert_eq!(report.tables[0].name, "fixed-sets");
        assert_eq!(report.summary, vec!["case d4: group order 8".to_string()]);
    }

    #[test]
    fn csv_output_layout() {
        let (_, text) = run_to_file(&["simple-triples"]);
        assert!(text.starts_with("# simple-triples\nr,a,delta\n1,1,1\n"));
        assert!(text.ends_with("# simple triples: 28\n"));
    }

    #[test]
    fn skip_external_runs_without_the_data_file() {
        let (r, text) = run_to_file(&[
            "verify-paper",
            "--skip-external",
            "--nikulin-data",
            "/nonexistent/nikulin.txt",
            "--format",
            "json",
        ]);
        let report: Report = serde_json::from_str(&text).unwrap();
        assert!(report.summary.contains(&"skipped: 7, 10".to_string()));
        let failed = report.summary.iter().any(|l| l.contains("FAIL"));
        assert_eq!(r.map_err(|e| e.exit_code()), if failed { Err(1) } else { Ok(()) });
    }
}
