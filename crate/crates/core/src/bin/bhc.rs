//! Command-line front end: solve, verify, generate, benchmark.
//!
//! Results go to stdout as JSON (or instance text for `gen`), diagnostics
//! to stderr. Exit codes: 0 solved (either answer), 1 invalid witness in
//! `verify`, 2 usage, 3 parse error, 4 solver refusal, 5 internal
//! verification failure.

use anyhow::Context;
use bhc_core::bitvec::BitVector;
use bhc_core::error::SolveError;
use bhc_core::instance::{first_violation, verify, Instance, Solution};
use bhc_core::{bench, branching, csp3, format, generators, ilp, oracle, real_lp, reductions, treewidth};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "bhc", version, about = "Exact hypersphere classification of binary data")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide an instance file and print the result as JSON.
    Solve(SolveArgs),
    /// Check a center/radius pair against an instance file.
    Verify(VerifyArgs),
    /// Generate instances, either randomly or from source problems.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Run a benchmark manifest and emit CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Auto,
    Brute,
    Bounded,
    Ilp,
    Csp3,
    BranchBlue,
    BranchRed,
    BranchScp,
    Treewidth,
    RealLp,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file (the real format for --algo real-lp).
    file: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    algo: Algo,
    /// Conciseness budget; required by bounded and branch-scp.
    #[arg(long)]
    scp: Option<u32>,
    /// Dimension cap for the brute-force sweep (env BHC_BRUTE_LIMIT).
    #[arg(long, env = "BHC_BRUTE_LIMIT", default_value_t = oracle::DEFAULT_BRUTE_LIMIT)]
    brute_limit: u32,
    /// Read a PACE tree-decomposition file instead of the built-in heuristic.
    #[arg(long)]
    td_file: Option<PathBuf>,
    /// Write the column ILP model (when --algo ilp).
    #[arg(long)]
    dump_ilp: Option<PathBuf>,
    /// Write the case CSPs in DIMACS (when --algo csp3), one file per case.
    #[arg(long)]
    dump_2sat: Option<PathBuf>,
    /// Drop the unit box on the center coordinates (real-lp only).
    #[arg(long)]
    no_box: bool,
    /// Deduplicate branches in branch-scp with a visited set.
    #[arg(long)]
    memoize: bool,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Space-separated support coordinates; empty for the all-zero center.
    #[arg(long, default_value = "")]
    center: String,
    #[arg(long)]
    radius: u32,
}

#[derive(Subcommand)]
enum GenCmd {
    /// Seeded random instance.
    Random(GenRandomArgs),
    /// Reduce a minimum-radius source file.
    FromMr(GenFromMrArgs),
    /// Reduce a hitting-set source file.
    FromHs(GenSourceArgs),
    /// Reduce a multicolored-independent-set source file.
    FromMcis(GenSourceArgs),
    /// Reduce a 4-ary CSP source file.
    FromGamma4(GenSourceArgs),
    /// Seeded window-structured instance with small incidence treewidth.
    Path(GenPathArgs),
}

#[derive(Args)]
struct GenRandomArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    nr: usize,
    #[arg(long)]
    nb: usize,
    #[arg(long)]
    icon: u32,
    #[arg(long)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenFromMrArgs {
    file: PathBuf,
    /// Two red vectors (the default direction).
    #[arg(long = "2red", conflicts_with = "two_blue")]
    two_red: bool,
    /// Two blue vectors.
    #[arg(long = "2blue")]
    two_blue: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenSourceArgs {
    file: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenPathArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    nr: usize,
    #[arg(long)]
    nb: usize,
    #[arg(long)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    manifest: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    jobs: usize,
}

#[derive(Serialize)]
struct SolveReport {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    center: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    radius: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conciseness: Option<u32>,
    algo: String,
    time_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    width: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nodes_expanded: Option<u64>,
}

#[derive(Serialize)]
struct RealSolveReport {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    center: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    radius_squared: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    slack: Option<String>,
    algo: String,
    time_ms: u64,
}

const EXIT_OK: u8 = 0;
const EXIT_INVALID: u8 = 1;
const EXIT_PARSE: u8 = 3;
const EXIT_REFUSED: u8 = 4;
const EXIT_INTERNAL: u8 = 5;

/// Print to stdout, tolerating a closed pipe (e.g. `bhc ... | head`).
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn emit_line(text: &str) {
    emit(text);
    emit("\n");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Cmd::Solve(args) => cmd_solve(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Bench(args) => cmd_bench(args),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn read_instance(path: &PathBuf) -> Result<Option<Instance>, anyhow::Error> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return Ok(None);
        }
    };
    match format::parse_instance(&text) {
        Ok(parsed) => {
            for w in &parsed.warnings {
                eprintln!("warning: {w}");
            }
            Ok(Some(parsed.instance))
        }
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            Ok(None)
        }
    }
}

fn cmd_solve(args: SolveArgs) -> Result<u8, anyhow::Error> {
    if args.algo == Algo::RealLp {
        return solve_real_lp(&args);
    }
    let Some(inst) = read_instance(&args.file)? else {
        return Ok(EXIT_PARSE);
    };

    let algo = match args.algo {
        Algo::Auto => {
            if args.scp.is_some() {
                Algo::BranchScp
            } else if inst.data_conciseness() <= 3 {
                Algo::Csp3
            } else if inst.dim() <= 16 {
                Algo::Brute
            } else {
                Algo::Treewidth
            }
        }
        a => a,
    };
    let algo_name = match algo {
        Algo::Brute => "brute",
        Algo::Bounded => "bounded",
        Algo::Ilp => "ilp",
        Algo::Csp3 => "csp3",
        Algo::BranchBlue => "branch-blue",
        Algo::BranchRed => "branch-red",
        Algo::BranchScp => "branch-scp",
        Algo::Treewidth => "treewidth",
        Algo::Auto | Algo::RealLp => unreachable!(),
    };

    let budget = match (algo, args.scp) {
        (Algo::Bounded | Algo::BranchScp, None) => {
            eprintln!("error: --scp is required for {algo_name}");
            return Ok(2);
        }
        (_, scp) => scp,
    };

    if let Some(path) = &args.dump_ilp {
        let types = ilp::column_types(&inst);
        if let Ok(model) = ilp::build_ilp(&inst, &types) {
            std::fs::write(path, ilp::dump_ilp(&model)).context("writing ILP dump")?;
        }
    }
    if let Some(path) = &args.dump_2sat {
        for (case, tag) in [(csp3::CaseId::RedZero, "case0"), (csp3::CaseId::RedOne, "case1")] {
            if let Ok(f) = csp3::build_case_csp(&inst, case) {
                let mut p = path.clone().into_os_string();
                p.push(format!(".{tag}.cnf"));
                std::fs::write(PathBuf::from(p), f.to_dimacs()).context("writing CNF dump")?;
            }
        }
    }

    let started = Instant::now();
    let mut width: Option<u32> = None;
    let mut nodes: Option<u64> = None;
    let outcome: Result<Option<Solution>, SolveError> = match algo {
        Algo::Brute => oracle::brute_force_solve_with_limit(&inst, args.brute_limit)
            .map(|o| o.map(|s| s.solution)),
        Algo::Bounded => Ok(oracle::solve_bounded_conciseness(&inst, budget.unwrap())),
        Algo::Ilp => ilp::solve_ilp(&inst),
        Algo::Csp3 => csp3::solve_icon3(&inst),
        Algo::BranchBlue => branching::solve_icon_blue(&inst),
        Algo::BranchRed => branching::solve_icon_red(&inst),
        Algo::BranchScp => {
            let (sol, stats) =
                branching::solve_scp_icon_with_stats(&inst, budget.unwrap(), args.memoize);
            nodes = Some(stats.nodes);
            Ok(sol)
        }
        Algo::Treewidth => match &args.td_file {
            None => treewidth::solve_treewidth_auto(&inst).map(|(r, w, stats)| {
                width = Some(w);
                nodes = Some(stats.total_keys);
                r.map(|o| o.solution)
            }),
            Some(td_path) => {
                let text = std::fs::read_to_string(td_path).context("reading td file")?;
                match treewidth::parse_pace_td(&text) {
                    Err(e) => {
                        eprintln!("error: {}: {e}", td_path.display());
                        return Ok(EXIT_PARSE);
                    }
                    Ok((td, _)) => {
                        let ntd = treewidth::nicify(&td);
                        width = Some(ntd.width());
                        treewidth::solve_treewidth(&inst, &ntd).map(|r| r.map(|o| o.solution))
                    }
                }
            }
        },
        Algo::Auto | Algo::RealLp => unreachable!(),
    };
    let time_ms = started.elapsed().as_millis() as u64;

    let solution = match outcome {
        Ok(s) => s,
        Err(SolveError::Refused(msg)) => {
            eprintln!("refused: {msg}");
            return Ok(EXIT_REFUSED);
        }
        Err(e) => {
            eprintln!("internal error: {e}");
            return Ok(EXIT_INTERNAL);
        }
    };

    // Defense in depth: no YES leaves the process unverified.
    if let Some(sol) = &solution {
        if !verify(&inst, &sol.center, sol.radius).unwrap_or(false) {
            eprintln!("internal error: solver returned a non-verifying witness");
            return Ok(EXIT_INTERNAL);
        }
        if let Some(b) = budget {
            if sol.center.conciseness() > b {
                eprintln!("internal error: witness exceeds the conciseness budget");
                return Ok(EXIT_INTERNAL);
            }
        }
    }

    let report = match &solution {
        Some(sol) => SolveReport {
            status: "yes",
            center: Some(sol.center.support().to_vec()),
            radius: Some(sol.radius),
            conciseness: Some(sol.center.conciseness()),
            algo: algo_name.into(),
            time_ms,
            width,
            nodes_expanded: nodes,
        },
        None => SolveReport {
            status: "no",
            center: None,
            radius: None,
            conciseness: None,
            algo: algo_name.into(),
            time_ms,
            width,
            nodes_expanded: nodes,
        },
    };
    emit_line(&serde_json::to_string(&report)?);
    Ok(EXIT_OK)
}

fn solve_real_lp(args: &SolveArgs) -> Result<u8, anyhow::Error> {
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.file.display());
            return Ok(EXIT_PARSE);
        }
    };
    let inst = match real_lp::parse_real_instance(&text) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {}: {e}", args.file.display());
            return Ok(EXIT_PARSE);
        }
    };
    let started = Instant::now();
    let solution = real_lp::solve_real_with(&inst, !args.no_box);
    let time_ms = started.elapsed().as_millis() as u64;
    if let Some(sol) = &solution {
        if !real_lp::strictly_separates(&inst, &sol.center) {
            eprintln!("internal error: LP center does not strictly separate");
            return Ok(EXIT_INTERNAL);
        }
    }
    let report = match &solution {
        Some(sol) => RealSolveReport {
            status: "yes",
            center: Some(sol.center.iter().map(|q| q.to_string()).collect()),
            radius_squared: Some(sol.radius_squared.to_string()),
            slack: Some(sol.slack.to_string()),
            algo: "real-lp".into(),
            time_ms,
        },
        None => RealSolveReport {
            status: "no",
            center: None,
            radius_squared: None,
            slack: None,
            algo: "real-lp".into(),
            time_ms,
        },
    };
    emit_line(&serde_json::to_string(&report)?);
    Ok(EXIT_OK)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, anyhow::Error> {
    let Some(inst) = read_instance(&args.file)? else {
        return Ok(EXIT_PARSE);
    };
    let coords: Result<Vec<u32>, _> =
        args.center.split_whitespace().map(str::parse::<u32>).collect();
    let Ok(coords) = coords else {
        eprintln!("error: --center must list support coordinates");
        return Ok(2);
    };
    let center = match BitVector::from_coords(inst.dim(), coords) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: bad center: {e}");
            return Ok(2);
        }
    };
    match first_violation(&inst, &center, args.radius) {
        Ok(None) => {
            emit_line("VALID");
            Ok(EXIT_OK)
        }
        Ok(Some((is_blue, index))) => {
            let v = if is_blue { &inst.blues()[index] } else { &inst.reds()[index] };
            let color = if is_blue { "blue" } else { "red" };
            emit_line(&format!(
                "INVALID {color} {:?} at distance {}",
                v,
                center.hamming(v).expect("same dim")
            ));
            Ok(EXIT_INVALID)
        }
        Err(e) => {
            eprintln!("error: {e}");
            Ok(2)
        }
    }
}

fn emit_instance(
    inst: &Instance,
    comments: &[String],
    output: Option<&PathBuf>,
) -> Result<(), anyhow::Error> {
    let text = format::write_instance_with_comments(inst, comments);
    match output {
        Some(path) => std::fs::write(path, text).context("writing instance")?,
        None => emit(&text),
    }
    Ok(())
}

fn cmd_gen(cmd: GenCmd) -> Result<u8, anyhow::Error> {
    match cmd {
        GenCmd::Random(a) => {
            let inst = match generators::gen_random(a.d, a.nr, a.nb, a.icon, a.seed) {
                Ok(i) => i,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(2);
                }
            };
            let comments = vec![format!(
                "random d={} nr={} nb={} icon={} seed={}",
                a.d, a.nr, a.nb, a.icon, a.seed
            )];
            emit_instance(&inst, &comments, a.output.as_ref())?;
            Ok(EXIT_OK)
        }
        GenCmd::Path(a) => {
            let inst = match generators::gen_path(a.d, a.nr, a.nb, a.seed) {
                Ok(i) => i,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(2);
                }
            };
            let comments = vec![format!("path d={} nr={} nb={} seed={}", a.d, a.nr, a.nb, a.seed)];
            emit_instance(&inst, &comments, a.output.as_ref())?;
            Ok(EXIT_OK)
        }
        GenCmd::FromMr(a) => {
            let text = std::fs::read_to_string(&a.file).context("reading source")?;
            let mr = match reductions::parse_mr(&text) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("error: {}: {e}", a.file.display());
                    return Ok(EXIT_PARSE);
                }
            };
            let inst =
                if a.two_blue { reductions::reduce_mr_to_2blue(&mr) } else { reductions::reduce_mr_to_2red(&mr) };
            let mut comments = vec![format!(
                "reduced from minimum-radius source ({} vectors, n={})",
                mr.vectors.len(),
                mr.n
            )];
            if let Ok(answer) = reductions::solve_mr_bf(&mr) {
                let answer = if answer { "yes" } else { "no" };
                comments.push(format!("source_answer={answer}"));
                eprintln!("source answer: {answer}");
            }
            emit_instance(&inst, &comments, a.output.as_ref())?;
            Ok(EXIT_OK)
        }
        GenCmd::FromHs(a) => {
            let text = std::fs::read_to_string(&a.file).context("reading source")?;
            let hs = match reductions::parse_hittingset(&text) {
                Ok(h) => h,
                Err(e) => {
                    eprintln!("error: {}: {e}", a.file.display());
                    return Ok(EXIT_PARSE);
                }
            };
            let (inst, scp) = reductions::reduce_hittingset(&hs);
            let mut comments = vec![format!("scp={scp}")];
            if let Ok(answer) = reductions::solve_hittingset_bf(&hs) {
                let answer = if answer { "yes" } else { "no" };
                comments.push(format!("source_answer={answer}"));
                eprintln!("source answer: {answer}");
            }
            emit_line(&format!("scp={scp}"));
            emit_instance(&inst, &comments, a.output.as_ref())?;
            Ok(EXIT_OK)
        }
        GenCmd::FromMcis(a) => {
            let text = std::fs::read_to_string(&a.file).context("reading source")?;
            let mcis = match reductions::parse_mcis(&text) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("error: {}: {e}", a.file.display());
                    return Ok(EXIT_PARSE);
                }
            };
            let (inst, scp) = reductions::reduce_mcis(&mcis);
            let mut comments = vec![format!("scp={scp}")];
            if let Ok(answer) = reductions::solve_mcis_bf(&mcis) {
                let answer = if answer { "yes" } else { "no" };
                comments.push(format!("source_answer={answer}"));
                eprintln!("source answer: {answer}");
            }
            emit_line(&format!("scp={scp}"));
            emit_instance(&inst, &comments, a.output.as_ref())?;
            Ok(EXIT_OK)
        }
        GenCmd::FromGamma4(a) => {
            let text = std::fs::read_to_string(&a.file).context("reading source")?;
            let csp = match reductions::parse_gamma4(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {}: {e}", a.file.display());
                    return Ok(EXIT_PARSE);
                }
            };
            let inst = match reductions::reduce_gamma4(&csp) {
                Ok(i) => i,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(2);
                }
            };
            let mut comments =
                vec![format!("reduced from a 4-ary CSP with {} variables", csp.num_vars)];
            if let Ok(answer) = reductions::solve_gamma4_bf(&csp) {
                let answer = if answer { "yes" } else { "no" };
                comments.push(format!("source_answer={answer}"));
                eprintln!("source answer: {answer}");
            }
            emit_instance(&inst, &comments, a.output.as_ref())?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_bench(args: BenchArgs) -> Result<u8, anyhow::Error> {
    let text = std::fs::read_to_string(&args.manifest).context("reading manifest")?;
    let entries = match bench::parse_manifest(&text) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {}: {e}", args.manifest.display());
            return Ok(EXIT_PARSE);
        }
    };
    let bin = std::env::current_exe().context("locating own binary")?;
    let rows = match bench::run_bench(&bin, &entries, args.jobs) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(EXIT_INTERNAL);
        }
    };
    let csv = bench::to_csv(&rows);
    match &args.output {
        Some(path) => std::fs::write(path, csv).context("writing CSV")?,
        None => emit(&csv),
    }
    Ok(EXIT_OK)
}
