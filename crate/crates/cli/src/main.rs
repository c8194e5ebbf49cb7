mod commands;
mod report;

use std::io;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "mpav", version, about = "Pattern avoidance in multiset permutations and compositions")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Count avoiders among compositions of n or permutations of a multiset.
    Count(CountArgs),
    /// Recompute a shipped reference table and compare.
    Reproduce(ReproduceArgs),
    /// Group a family of pattern pairs into equivalence classes.
    Classify(ClassifyArgs),
    /// Check a bijection, a succession rule or an equivalence statement by brute force.
    Verify(VerifyArgs),
    /// Compare the composition series of the two conjectured pairs.
    Conjecture(ConjectureArgs),
    /// Check an equivalence of fillings of Ferrers shapes.
    Ferrers(FerrersArgs),
}

#[derive(Args)]
pub struct CountArgs {
    /// Pattern set, e.g. "121;1342".
    #[arg(long)]
    pub patterns: String,
    /// Count compositions of n.
    #[arg(long, conflicts_with = "multiset", required_unless_present = "multiset")]
    pub n: Option<usize>,
    /// Count permutations of the multiset with these exponents, e.g. 2,2,2,2,2.
    #[arg(long)]
    pub multiset: Option<String>,
}

#[derive(Args)]
pub struct ReproduceArgs {
    /// appendix1, appendix2 or table1-classes.
    #[arg(long)]
    pub table: String,
    /// Only rows mentioning a set that contains this substring, e.g. 121,1342.
    #[arg(long)]
    pub filter: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Family {
    #[value(name = "3x3")]
    F3x3,
    #[value(name = "3x4")]
    F3x4,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Mode {
    Multiset,
    Composition,
}

#[derive(Args)]
pub struct ClassifyArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Largest multiset size or largest n.
    #[arg(long)]
    pub bound: usize,
    /// Composition mode: recompute members of non-singleton classes up to this n.
    #[arg(long)]
    pub extend: Option<usize>,
    /// Also merge classes related by complementation.
    #[arg(long)]
    pub fold_complements: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("target").required(true).args(["bijection", "rule", "statement"])))]
pub struct VerifyArgs {
    /// Bijection id, or "all".
    #[arg(long)]
    pub bijection: Option<String>,
    /// Succession rule id, or "all".
    #[arg(long)]
    pub rule: Option<String>,
    /// Statement id, or "all".
    #[arg(long)]
    pub statement: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub max_size: usize,
    /// Parameter of the family-* statements.
    #[arg(long)]
    pub r: Option<usize>,
}

#[derive(Args)]
pub struct ConjectureArgs {
    #[arg(long, default_value_t = 28)]
    pub n_max: usize,
}

#[derive(Args)]
pub struct FerrersArgs {
    /// Named check or sf:A:B, ft:A:B, sparse:A:B, setsf:A;B:C;D.
    #[arg(long)]
    pub check: String,
    #[arg(long, default_value_t = 10)]
    pub max_cells: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Count(a) => commands::count(a),
        Command::Reproduce(a) => commands::reproduce(a),
        Command::Classify(a) => commands::classify(a),
        Command::Verify(a) => commands::verify(a),
        Command::Conjecture(a) => commands::conjecture(a),
        Command::Ferrers(a) => commands::ferrers(a),
    };
    match result {
        Ok(report) => {
            let mut out = io::stdout().lock();
            let written = match cli.format {
                Format::Json => report.write_json(&mut out),
                Format::Csv => report.write_csv(&mut out),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                mpav::Error::Overflow => 3,
                _ => 2,
            })
        }
    }
}
