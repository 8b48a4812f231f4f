//! `aplus`: build tables, run analyses and compute ranks of A⁺(B_n).
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 invalid arguments,
//! 3 budget exhausted (bounds printed).

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use aplus_core::ranks::{
    aplus_rank, rank_formulas, size_breakdown, smallest_prime_subset, verify_all, RankEntry,
    RankKind, RankValue,
};
use aplus_core::{
    export_table, APlus, Error, SearchBudget, SearchOutcome, Side, Stratum, TableFormat,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "aplus", version, about = "Exact rank computations for A+(B_n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Wall-clock budget per search, in seconds
    #[arg(long, global = true, env = "APLUS_BUDGET_SECS", default_value_t = 60.0,
          value_parser = positive_seconds)]
    budget: f64,

    /// Node budget per search
    #[arg(long, global = true, default_value_t = 100_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    nodes: u64,

    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Print timings to stderr
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the Cayley table of A+(B_n) (json or csv)
    Build(NArg),
    /// Element counts and the size formula
    Count(NArg),
    /// Green's R- and L-class counts with the support cross-check
    Greens(NArg),
    /// Compute one rank, or print every closed form
    Rank {
        #[command(flatten)]
        n: NArg,
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Branch and bound for the upper rank r4
    SearchR4 {
        #[command(flatten)]
        n: NArg,
        /// Cap each support class by its known independent-set bound
        #[arg(long)]
        strata_caps: bool,
    },
    /// Smallest nonempty proper prime subset, and r5
    Prime {
        #[command(flatten)]
        n: NArg,
        /// Largest prime subset size to try (defaults to n)
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Run every check and rank computation
    Verify(NArg),
}

#[derive(clap::Args, Debug)]
struct NArg {
    #[arg(long, value_parser = positive_n)]
    n: usize,
}

impl NArg {
    fn get(&self) -> usize {
        self.n
    }
}

fn positive_n(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("n must be a positive integer, got `{s}`")),
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Which {
    R1,
    R2,
    R3,
    R4,
    R5,
    Formulas,
}

fn positive_seconds(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a positive number of seconds")),
    }
}

/// What a command produced: text and JSON renderings plus its exit status.
struct Output {
    text: String,
    json: serde_json::Value,
    code: u8,
}

enum Failure {
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TheoremMismatch(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = SearchBudget::new(Duration::from_secs_f64(cli.budget), cli.nodes);
    let started = std::time::Instant::now();
    let result = match &cli.command {
        Command::Build(n) => build(n.get(), cli.format, cli.out.as_ref()),
        command => run(command, budget).and_then(|out| {
            let body = match cli.format.unwrap_or(Format::Text) {
                Format::Text => out.text.clone(),
                Format::Json => format!("{:#}\n", out.json),
                Format::Csv => {
                    return Err(Failure::Usage(
                        "csv output is only available for build".into(),
                    ))
                }
            };
            emit(body.as_bytes(), cli.out.as_ref())?;
            Ok(out.code)
        }),
    };
    if cli.verbose > 0 {
        eprintln!("elapsed {:.3} s", started.elapsed().as_secs_f64());
    }
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit(bytes: &[u8], out: Option<&PathBuf>) -> Result<(), Failure> {
    let written = match out {
        Some(path) => fs::write(path, bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| e.to_string()),
    };
    written.map_err(Failure::Usage)
}

fn build(n: usize, format: Option<Format>, out: Option<&PathBuf>) -> Result<u8, Failure> {
    let format = match format.unwrap_or(Format::Json) {
        Format::Json => TableFormat::Json,
        Format::Csv => TableFormat::Csv,
        Format::Text => return Err(Failure::Usage("build writes json or csv".into())),
    };
    let a = APlus::new(n)?;
    emit(&export_table(a.semigroup(), format)?, out)?;
    Ok(0)
}

fn run(command: &Command, budget: SearchBudget) -> Result<Output, Failure> {
    match command {
        Command::Build(_) => unreachable!("handled before dispatch"),
        Command::Count(n) => count(n.get()),
        Command::Greens(n) => greens(n.get()),
        Command::Rank { n, which } => rank(n.get(), *which, budget),
        Command::SearchR4 { n, strata_caps } => {
            let a = APlus::new(n.get())?;
            let entry = aplus_rank(&a, RankKind::R4, budget, *strata_caps)?;
            Ok(rank_output(n.get(), "r4", &entry))
        }
        Command::Prime { n, cap } => prime(n.get(), cap.unwrap_or(n.get()), budget),
        Command::Verify(n) => {
            let report = verify_all(n.get(), budget)?;
            let json = serde_json::to_value(&report).expect("reports serialise");
            Ok(Output {
                text: report.to_text(),
                json,
                code: report.exit_code() as u8,
            })
        }
    }
}

fn count(n: usize) -> Result<Output, Failure> {
    let b = size_breakdown(n)?;
    let headline = if n == 1 {
        "3 = |{xi(0), xi(1,1), id}|".to_string()
    } else {
        let n_squared = b.constants.clone() - 1u32;
        format!(
            "{} = ({n}!+1)·{n_squared} + {} + 1",
            b.total, b.singleton_support
        )
    };
    let mut text = format!(
        "{headline}\nconstants          {}\nsingleton support  {}\nn-support          {}\n",
        b.constants, b.singleton_support, b.n_support
    );
    let mut json = serde_json::to_value(&b).expect("breakdown serialises");
    let mut code = 0;
    if n <= aplus_core::aplus::MAX_TABLE_N {
        let enumerated = aplus_core::affine::enumerate_a_plus(n)?.len();
        text.push_str(&format!("enumerated         {enumerated}\n"));
        json["enumerated"] = json!(enumerated);
        if b.total != enumerated.into() {
            code = 1;
        }
    }
    Ok(Output { text, json, code })
}

fn greens(n: usize) -> Result<Output, Failure> {
    let a = APlus::new(n)?;
    let s = a.semigroup();
    let r = s.greens_classes(Side::Right).len();
    let l = s.greens_classes(Side::Left).len();
    let nsupport = a.stratum_set(Stratum::NSupport);
    let ns_classes = a
        .r_classes_by_support()
        .iter()
        .filter(|c| nsupport.contains(c[0]))
        .count();
    let expected = (1..=n).product::<usize>() * n;
    let matches = a.greens_match_characterisation();
    let ok = matches && ns_classes == expected;
    let text = format!(
        "R-classes {r}\nL-classes {l}\nn-support R-classes {ns_classes} (expected {n}!·{n} = {expected})\n\
         ideal partition matches supports: {}\n",
        if matches { "yes" } else { "no" }
    );
    let json = json!({
        "n": n,
        "r_classes": r,
        "l_classes": l,
        "n_support_r_classes": ns_classes,
        "expected_n_support_r_classes": expected,
        "characterisation_matches": matches,
    });
    Ok(Output {
        text,
        json,
        code: if ok { 0 } else { 1 },
    })
}

fn rank(n: usize, which: Which, budget: SearchBudget) -> Result<Output, Failure> {
    let kind = match which {
        Which::Formulas => {
            let report = rank_formulas(n)?;
            let mut text = String::new();
            for (k, e) in report.entries().iter().enumerate() {
                text.push_str(&format!("r{} = {}\n", k + 1, e.value));
            }
            let json = serde_json::to_value(&report).expect("reports serialise");
            return Ok(Output {
                text,
                json,
                code: 0,
            });
        }
        Which::R1 => RankKind::R1,
        Which::R2 => RankKind::R2,
        Which::R3 => RankKind::R3,
        Which::R4 => RankKind::R4,
        Which::R5 => RankKind::R5,
    };
    let a = APlus::new(n)?;
    let entry = aplus_rank(&a, kind, budget, false)?;
    let name = format!("r{}", kind as usize + 1);
    Ok(rank_output(n, &name, &entry))
}

fn rank_output(n: usize, name: &str, entry: &RankEntry) -> Output {
    let provenance = serde_json::to_value(entry.provenance).expect("provenance serialises");
    let provenance = provenance.as_str().unwrap_or_default();
    let mut text = match &entry.value {
        RankValue::Exact(v) => format!("{name} = {v} ({provenance})\n"),
        RankValue::Bounds { lower, upper } => {
            format!("{name} in [{lower}, {upper}] ({provenance})\n")
        }
    };
    if let Some(w) = &entry.witness {
        text.push_str(&format!("witness ({}): {}\n", w.len(), w.join(" ")));
    }
    let mut json = serde_json::to_value(entry).expect("entries serialise");
    json["n"] = json!(n);
    json["rank"] = json!(name);
    let code = if entry.value.as_exact().is_some() {
        0
    } else {
        3
    };
    Output { text, json, code }
}

fn prime(n: usize, cap: usize, budget: SearchBudget) -> Result<Output, Failure> {
    let a = APlus::new(n)?;
    let s = a.semigroup();
    if s.size() < 2 {
        return Err(Failure::Usage("no proper prime subsets".into()));
    }
    let r = smallest_prime_subset(s, cap, budget)?;
    let m = s.size();
    Ok(match &r.outcome {
        SearchOutcome::Exact { value, witness } => {
            let labels = s.labels_of(witness);
            Output {
                text: format!(
                    "smallest prime subset ({value}): {}\nr5 = {}\n",
                    labels.join(" "),
                    m - value + 1
                ),
                json: json!({ "n": n, "size": value, "prime_subset": labels, "r5": m - value + 1 }),
                code: 0,
            }
        }
        SearchOutcome::Bounds { lower, upper, .. } => Output {
            text: format!(
                "no prime subset with at most {cap} elements found; size in [{lower}, {upper}]\nr5 in [{}, {}]\n",
                m - upper + 1,
                m - lower + 1
            ),
            json: json!({ "n": n, "size_bounds": [lower, upper], "r5_bounds": [m - upper + 1, m - lower + 1] }),
            code: 3,
        },
    })
}
