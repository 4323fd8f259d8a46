use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use eaqs::capacity::{boundary_samples, samples_to_csv, samples_to_json};
use eaqs::codes::{by_name, LinearScheme, Params, FORMAT_VERSION};
use eaqs::harness::{run_sim, ErasurePolicy, SimConfig};
use eaqs::quantum::{
    apply_label_unitary, css_encode_state, factorization_check, quantum_verdicts, synthesize_decoder,
    transcript_json,
};
use eaqs::verify::{audit, oracle_verdicts, ErasurePattern, DEFAULT_ORACLE_CAP};
use eaqs::Error;

#[derive(Parser)]
#[command(name = "eaqs", version, about = "Storage codes with shared-randomness assistance")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeName {
    Baseline,
    Case2,
    Case3a,
    Case3b,
    Fig1,
    Appendixb,
}

impl SchemeName {
    fn as_str(self) -> &'static str {
        match self {
            SchemeName::Baseline => "baseline",
            SchemeName::Case2 => "case2",
            SchemeName::Case3a => "case3a",
            SchemeName::Case3b => "case3b",
            SchemeName::Fig1 => "fig1",
            SchemeName::Appendixb => "appendixb",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RegionFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Exhaustive,
    Random,
}

#[derive(clap::Args)]
struct ParamArgs {
    #[arg(long = "N")]
    n: usize,
    #[arg(long = "K")]
    k: usize,
    #[arg(long = "NB")]
    nb: usize,
    #[arg(long = "KB")]
    kb: usize,
}

impl ParamArgs {
    fn params(&self) -> Result<Params> {
        Ok(Params::new(self.n, self.k, self.nb, self.kb)?)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a scheme and write its JSON description.
    Construct {
        #[arg(long, value_enum)]
        scheme: SchemeName,
        // fig1 has fixed parameters, so these are optional there
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long = "K")]
        k: Option<usize>,
        #[arg(long = "NB")]
        nb: Option<usize>,
        #[arg(long = "KB")]
        kb: Option<usize>,
        /// Field order; defaults to the smallest admissible one.
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank audit of every erasure pattern.
    Verify {
        #[arg(long)]
        spec: PathBuf,
        /// Cross-check against the entropy oracle (small schemes only).
        #[arg(long)]
        oracle: bool,
    },
    /// Inner and outer capacity curves.
    Region {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, default_value_t = 11)]
        points: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: RegionFormat,
    },
    /// Erasure trials on a payload file.
    Simulate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        payload: PathBuf,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "exhaustive")]
        policy: PolicyArg,
    },
    /// Encode as a coset state, run the synthesized decoder, check factorization.
    QuantumCheck {
        #[arg(long)]
        spec: PathBuf,
        /// Single pattern such as "K=1,3;KB=1,2" (1-based).
        #[arg(long)]
        pattern: Option<String>,
        /// Write the decoder steps of --pattern here.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
}

fn load(path: &Path) -> Result<LinearScheme> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    LinearScheme::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Writes to stdout; a reader that hangs up early (`| head`) is not an error.
fn emit(text: &str) -> Result<()> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json(v: &serde_json::Value) -> Result<()> {
    emit(&(serde_json::to_string_pretty(v)? + "\n"))
}

fn construct(
    scheme: SchemeName,
    dims: [Option<usize>; 4],
    q: Option<u32>,
    out: Option<PathBuf>,
) -> Result<bool> {
    let params = match (scheme, dims) {
        (_, [Some(n), Some(k), Some(nb), Some(kb)]) => Params::new(n, k, nb, kb)?,
        (SchemeName::Fig1, [None, None, None, None]) => Params::new(3, 1, 3, 2)?,
        _ => anyhow::bail!("--N --K --NB --KB are required"),
    };
    let s = by_name(scheme.as_str(), params, q)?;
    let text = s.to_json();
    match out {
        Some(path) => std::fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
        None => emit(&(text + "\n"))?,
    }
    Ok(true)
}

fn verify(spec: &Path, oracle: bool) -> Result<bool> {
    let s = load(spec)?;
    let report = audit(&s)?;
    let mut out = report.to_json(&s);
    let mut ok = report.pass;
    if oracle {
        out["oracle"] = match oracle_verdicts(&s, DEFAULT_ORACLE_CAP) {
            Ok(o) => {
                let agree = o.sr_recovery == report.sr_recovery
                    && report
                        .patterns
                        .iter()
                        .zip(&o.patterns)
                        .all(|(v, (_, d, sec))| (v.decodable, v.secure) == (*d, *sec));
                ok &= agree;
                json!({"ran": true, "agrees": agree})
            }
            Err(e @ Error::TooLarge { .. }) => json!({"ran": false, "reason": e.to_string()}),
            Err(e) => return Err(e.into()),
        };
    }
    print_json(&out)?;
    Ok(ok)
}

fn region(p: Params, points: usize, format: RegionFormat) -> Result<bool> {
    let samples = boundary_samples(p, points)?;
    match format {
        RegionFormat::Csv => emit(&format!("# format_version={FORMAT_VERSION}\n{}", samples_to_csv(&samples)))?,
        RegionFormat::Json => print_json(&samples_to_json(p, &samples))?,
    }
    Ok(true)
}

fn simulate(spec: &Path, payload: &Path, trials: usize, seed: u64, policy: PolicyArg) -> Result<bool> {
    let scheme = load(spec)?;
    let payload = std::fs::read(payload).with_context(|| format!("reading {}", payload.display()))?;
    let policy = match policy {
        PolicyArg::Exhaustive => ErasurePolicy::Exhaustive,
        PolicyArg::Random => ErasurePolicy::Random,
    };
    let report = run_sim(&SimConfig { scheme, payload, trials, policy, seed })?;
    emit(&(report.to_json() + "\n"))?;
    Ok(report.all_recovered())
}

fn quantum_check(spec: &Path, pattern: Option<String>, transcript: Option<PathBuf>) -> Result<bool> {
    let s = load(spec)?;
    let encoded = match css_encode_state(&s) {
        Ok(st) => st,
        Err(e @ Error::InfeasibleScheme(_)) => {
            print_json(&json!({"format_version": FORMAT_VERSION, "pass": false, "error": e.to_string()}))?;
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    let verdicts: Vec<(ErasurePattern, bool, Option<serde_json::Value>)> = match pattern {
        Some(text) => {
            let p = ErasurePattern::parse(s.params(), &text)?;
            let (ok, steps) = match synthesize_decoder(&s, &p) {
                Ok(steps) => {
                    let mut st = encoded;
                    for u in &steps {
                        st = apply_label_unitary(&st, u)?;
                    }
                    (factorization_check(&st, &p)?, steps)
                }
                Err(Error::InfeasibleScheme(_)) => (false, Vec::new()),
                Err(e) => return Err(e.into()),
            };
            let t = transcript_json(&p, &steps, Some(ok));
            vec![(p, ok, Some(t))]
        }
        None => {
            if transcript.is_some() {
                anyhow::bail!("--transcript needs --pattern");
            }
            quantum_verdicts(&s)?.into_iter().map(|(p, ok)| (p, ok, None)).collect()
        }
    };
    if let (Some(path), Some((_, _, Some(t)))) = (&transcript, verdicts.first()) {
        let text = serde_json::to_string_pretty(t)?;
        std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    let pass = verdicts.iter().all(|v| v.1);
    let rows: Vec<serde_json::Value> = verdicts
        .iter()
        .map(|(p, ok, _)| {
            json!({
                "storage": p.storage.iter().map(|x| x + 1).collect::<Vec<_>>(),
                "sr": p.sr.iter().map(|x| x + 1).collect::<Vec<_>>(),
                "factorizes": ok,
            })
        })
        .collect();
    print_json(&json!({"format_version": FORMAT_VERSION, "patterns": rows, "pass": pass}))?;
    Ok(pass)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Construct { scheme, n, k, nb, kb, q, out } => construct(scheme, [n, k, nb, kb], q, out),
        Cmd::Verify { spec, oracle } => verify(&spec, oracle),
        Cmd::Region { p, points, format } => region(p.params()?, points, format),
        Cmd::Simulate { spec, payload, trials, seed, policy } => simulate(&spec, &payload, trials, seed, policy),
        Cmd::QuantumCheck { spec, pattern, transcript } => quantum_check(&spec, pattern, transcript),
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on bad flags
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        // input, parse and I/O errors all count as usage errors
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
