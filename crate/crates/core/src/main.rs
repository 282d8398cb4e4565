use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hgp_erasure_core::classical::{load_alist, save_alist};
use hgp_erasure_core::gf2;
use hgp_erasure_core::sim::{parse_p_grid, CodeSource};
use hgp_erasure_core::vh::Orientation;
use hgp_erasure_core::{
    classify, classify_residual, decompose, peg_generate, run_sweep, sample,
    write_csv, BinaryVector, ClusterStatus, DecoderKind, Error, ErasureSample, HgpCode, PegParams,
    RngStream, SweepSpec, Verdict,
};

const EXIT_INVALID: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_LOGICAL: u8 = 4;
const EXIT_ABORT: u8 = 5;

#[derive(Parser)]
#[command(name = "hgp-erasure", version, about = "Erasure decoders for hypergraph-product codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a classical LDPC code by progressive edge growth.
    GenCode(GenCodeArgs),
    /// Build the hypergraph product of an alist code and report its size.
    BuildHgp(BuildHgpArgs),
    /// Decode a single erasure pattern.
    Decode(DecodeArgs),
    /// Run a Monte Carlo sweep and write CSV.
    Sweep(SweepArgs),
    /// Summarize a code and optionally dump the VH graph of an erasure.
    Inspect(InspectArgs),
}

#[derive(Args)]
struct GenCodeArgs {
    /// Number of bits n.
    #[arg(long)]
    bits: usize,
    /// Number of checks r.
    #[arg(long)]
    checks: usize,
    /// Degree of every bit.
    #[arg(long)]
    bit_degree: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output alist file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BuildHgpArgs {
    /// Input alist file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Also print ranks and the input code size.
    #[arg(long)]
    report: bool,
}

#[derive(Args)]
struct DecodeArgs {
    /// Input alist file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Decoder: peeling, pruned[:m], vh, combined[:m] or ml.
    #[arg(long, default_value = "combined:1")]
    decoder: String,
    /// Erasure as a 0/1 string of length N.
    #[arg(long, requires = "error", conflicts_with_all = ["seed", "p"])]
    erasure: Option<String>,
    /// Hidden X error as a 0/1 string of length N.
    #[arg(long, requires = "erasure")]
    error: Option<String>,
    /// Seed for a sampled erasure.
    #[arg(long, requires = "p")]
    seed: Option<u64>,
    /// Erasure probability for a sampled erasure.
    #[arg(long, requires = "seed")]
    p: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    /// Input alist file.
    #[arg(long = "in", conflicts_with = "peg", required_unless_present = "peg")]
    input: Option<PathBuf>,
    /// Generate the input code instead: n,r,dv,seed.
    #[arg(long)]
    peg: Option<String>,
    /// Probability grid a:b:k.
    #[arg(long)]
    p_grid: String,
    /// Trials per point; scientific notation such as 1e5 is accepted.
    #[arg(long)]
    trials: String,
    /// Comma-separated decoders.
    #[arg(long, default_value = "peeling,pruned:1,vh,combined:1,ml")]
    decoders: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads.
    #[arg(long, env = "HGP_ERASURE_WORKERS", default_value_t = 1)]
    workers: usize,
    /// Record wall time per decoder (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
    /// Output CSV file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct InspectArgs {
    /// Input alist file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Erasure to decompose into VH clusters, as a 0/1 string.
    #[arg(long, conflicts_with_all = ["seed", "p"])]
    erasure: Option<String>,
    #[arg(long, requires = "p")]
    seed: Option<u64>,
    #[arg(long, requires = "seed")]
    p: Option<f64>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) => EXIT_IO,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::from(e).into()
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

fn load_code(path: &PathBuf) -> Result<HgpCode, Failure> {
    Ok(HgpCode::new(&load_alist(path)?)?)
}

fn parse_bits(text: &str, len: usize, what: &str) -> Result<BinaryVector, Failure> {
    let v: BinaryVector = text.parse()?;
    if v.len() != len {
        return Err(invalid(format!("{what} has length {}, expected {len}", v.len())));
    }
    Ok(v)
}

fn obtain_sample(
    code: &HgpCode,
    erasure: Option<&str>,
    error: Option<&str>,
    seed: Option<u64>,
    p: Option<f64>,
) -> Result<ErasureSample, Failure> {
    let n = code.num_qubits();
    match (erasure, seed, p) {
        (Some(er), _, _) => {
            let erasure = parse_bits(er, n, "erasure")?;
            let error = match error {
                Some(e) => parse_bits(e, n, "error")?,
                None => BinaryVector::zeros(n),
            };
            Ok(ErasureSample::from_parts(code, erasure, error)?)
        }
        (None, Some(seed), Some(p)) => Ok(sample(code, p, &RngStream::new(seed, 0))?),
        _ => Err(invalid("give either --erasure/--error or --seed/--p")),
    }
}

fn gen_code(a: GenCodeArgs) -> Result<u8, Failure> {
    let params = PegParams {
        num_bits: a.bits,
        num_checks: a.checks,
        bit_degree: a.bit_degree,
        seed: a.seed,
    };
    let g = peg_generate(&params)?;
    save_alist(&g, &a.out)?;
    let rank = gf2::rank(&g.to_matrix());
    println!("n={} r={} rank={} k={}", a.bits, a.checks, rank, a.bits - rank);
    Ok(0)
}

fn build_hgp(a: BuildHgpArgs) -> Result<u8, Failure> {
    let code = load_code(&a.input)?;
    if !code.is_css_valid() {
        return Err(invalid("h_x h_z^T is nonzero"));
    }
    println!(
        "N={} R_X={} R_Z={} k={}",
        code.num_qubits(),
        code.num_x_checks(),
        code.num_z_checks(),
        code.k_logical()
    );
    if a.report {
        println!(
            "input n={} r={} rank_x={} rank_z={}",
            code.input_bits(),
            code.input_checks(),
            code.rank_x(),
            code.rank_z()
        );
    }
    Ok(0)
}

fn decode(a: DecodeArgs) -> Result<u8, Failure> {
    let decoder: DecoderKind = a.decoder.parse()?;
    let code = load_code(&a.input)?;
    let s = obtain_sample(&code, a.erasure.as_deref(), a.error.as_deref(), a.seed, a.p)?;
    let out = decoder.decode(&code, &s)?;
    let verdict = if out.is_corrected() {
        classify_residual(&code, &out.correction, &s.error, &decoder.label())?.verdict
    } else {
        Verdict::Abort
    };
    println!("erasure    {}", s.erasure);
    println!("correction {}", out.correction);
    println!("status {:?}", out.status);
    println!("verdict {verdict}");
    Ok(match verdict {
        Verdict::Success => 0,
        Verdict::LogicalFailure => EXIT_LOGICAL,
        Verdict::Abort => EXIT_ABORT,
    })
}

fn parse_trials(text: &str) -> Result<u64, Failure> {
    let bad = || invalid(format!("invalid trial count {text:?}"));
    if let Ok(t) = text.parse::<u64>() {
        return Ok(t);
    }
    let t: f64 = text.parse().map_err(|_| bad())?;
    if t < 0.0 || t.fract() != 0.0 || t > u64::MAX as f64 {
        return Err(bad());
    }
    Ok(t as u64)
}

fn parse_peg(text: &str) -> Result<PegParams, Failure> {
    let bad = || invalid(format!("--peg expects n,r,dv,seed, got {text:?}"));
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [n, r, dv, seed] = parts.as_slice() else {
        return Err(bad());
    };
    Ok(PegParams {
        num_bits: n.parse().map_err(|_| bad())?,
        num_checks: r.parse().map_err(|_| bad())?,
        bit_degree: dv.parse().map_err(|_| bad())?,
        seed: seed.parse().map_err(|_| bad())?,
    })
}

fn sweep(a: SweepArgs) -> Result<u8, Failure> {
    let code_source = match (&a.input, &a.peg) {
        (Some(path), None) => CodeSource::Alist(path.clone()),
        (None, Some(peg)) => CodeSource::Peg(parse_peg(peg)?),
        _ => return Err(invalid("give exactly one of --in and --peg")),
    };
    let decoders = a
        .decoders
        .split(',')
        .map(str::parse)
        .collect::<Result<Vec<DecoderKind>, _>>()?;
    let spec = SweepSpec {
        code_source,
        p_grid: parse_p_grid(&a.p_grid)?,
        trials: parse_trials(&a.trials)?,
        decoders,
        seed: a.seed,
        max_workers: a.workers,
        record_timing: a.timing,
    };
    spec.validate()?;
    let result = run_sweep(&spec)?;
    let mut sink = BufWriter::new(File::create(&a.out)?);
    write_csv(&result, &mut sink)?;
    sink.flush()?;
    for r in &result.points {
        println!(
            "p={:.4} decoder={} failures={}/{} rate={:.3e} ci=[{:.3e}, {:.3e}]",
            r.p,
            r.decoder,
            r.failures(),
            r.trials,
            r.failure_rate,
            r.ci_low,
            r.ci_high
        );
    }
    Ok(0)
}

fn inspect(a: InspectArgs) -> Result<u8, Failure> {
    let code = load_code(&a.input)?;
    let input = code.input_graph();
    println!(
        "input n={} r={} edges={}",
        input.num_bits(),
        input.num_checks(),
        input.num_edges()
    );
    println!(
        "N={} R_X={} R_Z={} k={} rank_x={} rank_z={}",
        code.num_qubits(),
        code.num_x_checks(),
        code.num_z_checks(),
        code.k_logical(),
        code.rank_x(),
        code.rank_z()
    );
    if a.erasure.is_none() && a.seed.is_none() {
        return Ok(0);
    }
    let s = obtain_sample(&code, a.erasure.as_deref(), None, a.seed, a.p)?;
    let vh = decompose(&code, &s.erasure)?;
    println!("clusters={} edges={}", vh.clusters.len(), vh.edges.len());
    for (i, c) in vh.clusters.iter().enumerate() {
        let st = match classify(&code, c) {
            ClusterStatus::Isolated => "isolated".to_string(),
            ClusterStatus::FrozenDangling { check } => format!("frozen-dangling check={check}"),
            ClusterStatus::FreeDangling { check } => format!("free-dangling check={check}"),
            ClusterStatus::Blocked => "blocked".to_string(),
        };
        println!(
            "{}{} line={} size={} {st}",
            match c.orientation {
                Orientation::Vertical => 'V',
                Orientation::Horizontal => 'H',
            },
            i,
            c.line_index,
            c.qubits.len()
        );
    }
    print!("{}", vh.edge_list());
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID } else { 0 });
        }
    };
    let result = match cli.command {
        Command::GenCode(a) => gen_code(a),
        Command::BuildHgp(a) => build_hgp(a),
        Command::Decode(a) => decode(a),
        Command::Sweep(a) => sweep(a),
        Command::Inspect(a) => inspect(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
