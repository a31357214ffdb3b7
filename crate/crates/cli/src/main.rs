//! `pathpuzzle`: generate, reduce, solve and cross-check instances along the
//! chain from Positive 1-in-3-SAT to Path Puzzle.
//!
//! Results go to stdout (or `--out`), diagnostics to stderr. Exit codes:
//! 0 success, 1 mismatch or invalid solution, 2 input error, 3 oracle cap or
//! search budget exceeded.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use thiserror::Error;

use pathpuzzle_core::harness::{
    build_stage, check_parsimony, gen_instance, run_chain, ChainStep, Context, GenSpec, Instance,
    ProblemKind, Verdict,
};
use pathpuzzle_core::oracles::OracleCaps;
use pathpuzzle_core::pathpuzzle::{complete_row_labels, search_paths, EndpointEvidence, Engine};
use pathpuzzle_core::reductions::{Reduction, Stage};
use pathpuzzle_core::{Error, Int};

#[derive(Parser, Debug)]
#[command(
    name = "pathpuzzle",
    version,
    about = "Reduction chain toolkit for path puzzles"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Expected problem of the input instance (1in3, 3dm, n4dm, n3dm, lo, pp).
    #[arg(long, global = true)]
    format: Option<ProblemKind>,

    /// Input instance file; stdin when absent.
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    /// Output file (a directory for `chain`); stdout when absent.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Generator seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Oracle cap override, e.g. `nkdm=12`. Keys: sat, tdm, nkdm, lo-lengths, lo-horizon.
    #[arg(long, global = true, value_name = "KEY=VALUE")]
    cap: Vec<String>,

    /// Path search budget in node expansions.
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Path search engine (frontier or dfs).
    #[arg(long, global = true)]
    engine: Option<Engine>,

    /// Plain depth-first path search with pruning disabled.
    #[arg(long, global = true)]
    paranoid: bool,

    /// Stage tag (sat-3dm, 3dm-n4dm, n4dm-n3dm, n3dm-lo, lo-pp).
    #[arg(long, global = true)]
    stage: Option<Stage>,

    /// Where `reduce` writes the bookkeeping tables.
    #[arg(long, global = true, value_name = "FILE")]
    trace: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Generate a seeded instance.
    Gen {
        problem: ProblemKind,
        #[arg(long)]
        variables: Option<usize>,
        #[arg(long)]
        clauses: Option<usize>,
        /// Part size (3dm) or set size (n4dm, n3dm).
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long)]
        target: Option<Int>,
        #[arg(long)]
        intervals: Option<usize>,
        #[arg(long)]
        horizon: Option<Int>,
        #[arg(long)]
        rows: Option<Int>,
        #[arg(long)]
        cols: Option<Int>,
    },
    /// Apply one stage.
    Reduce {
        /// Fill every row label of a path puzzle (lo-pp only).
        #[arg(long)]
        complete: bool,
    },
    /// Print every solution.
    Solve,
    /// Print the exact number of solutions.
    Count,
    /// Check a solution against the instance.
    Verify {
        #[arg(long, value_name = "FILE")]
        solution: PathBuf,
    },
    /// Map a source solution across a stage.
    Lift {
        #[arg(long, value_name = "FILE")]
        solution: PathBuf,
    },
    /// Map a target solution back across a stage.
    Project {
        #[arg(long, value_name = "FILE")]
        solution: PathBuf,
    },
    /// Count both sides of a stage and round-trip every solution.
    CheckParsimony,
    /// Run every stage from the input, stopping after `--stage` if given.
    Chain,
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Usage(String),
    /// A check ran and failed; the details were already printed.
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) | CliError::Core(Error::InvalidSolution(_)) => 1,
            CliError::Core(Error::OracleCap(_) | Error::SearchBudget(_)) => 3,
            CliError::Core(Error::Construction(_)) => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

impl Cli {
    fn context(&self) -> Result<Context> {
        let mut caps = OracleCaps::default();
        for entry in &self.cap {
            let (key, value) = entry
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("cap `{entry}` is not KEY=VALUE")))?;
            let bad = || CliError::Usage(format!("cap `{entry}` has a bad value"));
            match key {
                "sat" => caps.sat_variables = value.parse().map_err(|_| bad())?,
                "tdm" => caps.tdm_part_size = value.parse().map_err(|_| bad())?,
                "nkdm" => caps.nkdm_size = value.parse().map_err(|_| bad())?,
                "lo-lengths" => caps.lo_lengths = value.parse().map_err(|_| bad())?,
                "lo-horizon" => caps.lo_horizon = value.parse().map_err(|_| bad())?,
                _ => return Err(CliError::Usage(format!("unknown cap `{key}`"))),
            }
        }
        let mut ctx = Context {
            caps,
            ..Context::default()
        };
        if let Some(b) = self.budget {
            ctx.search.budget = b;
        }
        if let Some(e) = self.engine {
            ctx.search.engine = e;
        }
        ctx.search.paranoid = self.paranoid;
        Ok(ctx)
    }

    fn instance(&self) -> Result<Instance> {
        let text = match &self.input {
            Some(p) => read_file(p)?,
            None => {
                let mut s = String::new();
                io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|source| CliError::Io {
                        path: "<stdin>".into(),
                        source,
                    })?;
                s
            }
        };
        let inst = Instance::parse_text(&text)?;
        if let Some(want) = self.format {
            if inst.kind() != want {
                return Err(CliError::Usage(format!(
                    "expected a {want} instance, got {}",
                    inst.kind()
                )));
            }
        }
        Ok(inst)
    }

    fn stage(&self) -> Result<Stage> {
        self.stage
            .ok_or_else(|| CliError::Usage("this verb needs --stage".into()))
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => write_file(p, text),
            None => {
                let mut out = io::stdout().lock();
                out.write_all(text.as_bytes())
                    .and_then(|_| out.flush())
                    .map_err(|source| CliError::Io {
                        path: "<stdout>".into(),
                        source,
                    })
            }
        }
    }
}

fn need<T>(value: Option<T>, flag: &str, problem: ProblemKind) -> Result<T> {
    value.ok_or_else(|| CliError::Usage(format!("gen {problem} needs --{flag}")))
}

fn verdict_result(verdicts: impl IntoIterator<Item = Verdict>) -> Result<()> {
    let verdicts: Vec<Verdict> = verdicts.into_iter().collect();
    if let Some(v) = verdicts.iter().find(|&&v| v == Verdict::Mismatch) {
        return Err(CliError::Mismatch(format!("verdict {v}")));
    }
    match verdicts.iter().find(|&&v| v != Verdict::Equal) {
        Some(Verdict::SearchBudget) => Err(Error::SearchBudget(0).into()),
        Some(v) => Err(Error::OracleCap(format!("verdict {v}")).into()),
        None => Ok(()),
    }
}

fn run(cli: &Cli) -> Result<()> {
    let ctx = cli.context()?;
    match &cli.verb {
        Verb::Gen {
            problem,
            variables,
            clauses,
            size,
            extra,
            target,
            intervals,
            horizon,
            rows,
            cols,
        } => {
            let p = *problem;
            let spec = match p {
                ProblemKind::OneInThree => GenSpec::OneInThree {
                    variables: need(*variables, "variables", p)?,
                    clauses: need(*clauses, "clauses", p)?,
                },
                ProblemKind::Tdm => GenSpec::Tdm {
                    part_size: need(*size, "size", p)?,
                    extra_triples: *extra,
                },
                ProblemKind::N4dm => GenSpec::N4dm {
                    size: need(*size, "size", p)?,
                },
                ProblemKind::N3dm => GenSpec::N3dm {
                    size: need(*size, "size", p)?,
                    target: need(*target, "target", p)?,
                },
                ProblemKind::Lo => GenSpec::Lo {
                    intervals: need(*intervals, "intervals", p)?,
                    horizon: need(*horizon, "horizon", p)?,
                },
                ProblemKind::Pp => GenSpec::Pp {
                    rows: need(*rows, "rows", p)?,
                    cols: need(*cols, "cols", p)?,
                },
            };
            let inst = gen_instance(spec, cli.seed)?;
            eprintln!("digest {}", inst.digest());
            cli.emit(&inst.to_text())
        }
        Verb::Reduce { complete } => {
            let stage = cli.stage()?;
            let mut step = build_stage(stage, &cli.instance()?)?;
            if *complete {
                let ChainStep::LoToPp(r) = &step else {
                    return Err(CliError::Usage(
                        "--complete applies to stage lo-pp only".into(),
                    ));
                };
                let evidence = EndpointEvidence::by_enumeration(r.source(), &ctx.caps)?;
                step = ChainStep::LoToPp(complete_row_labels(r, &evidence)?);
            }
            if let Some(p) = &cli.trace {
                write_file(p, &step.trace())?;
            }
            let target = step.target_instance();
            eprintln!("stage {stage}: target digest {}", target.digest());
            cli.emit(&target.to_text())
        }
        Verb::Solve => {
            let inst = cli.instance()?;
            let t0 = Instant::now();
            let sols = inst.solve_text(&ctx)?;
            eprintln!(
                "{} solutions in {:.3}s",
                sols.len(),
                t0.elapsed().as_secs_f64()
            );
            cli.emit(&sols.join("\n"))
        }
        Verb::Count => {
            let inst = cli.instance()?;
            let t0 = Instant::now();
            let count = match &inst {
                Instance::Pp(p) => {
                    let o = search_paths(p, &ctx.search, false)?;
                    eprintln!("nodes {}", o.nodes);
                    o.count
                }
                other => other.count(&ctx)?,
            };
            eprintln!("seconds {:.6}", t0.elapsed().as_secs_f64());
            cli.emit(&format!("{count}\n"))
        }
        Verb::Verify { solution } => {
            let inst = cli.instance()?;
            let violations = inst.verify_text(&read_file(solution)?)?;
            if violations.is_empty() {
                cli.emit("valid\n")
            } else {
                let lines: Vec<String> = violations.iter().map(|v| format!("{v}\n")).collect();
                cli.emit(&lines.concat())?;
                Err(CliError::Mismatch(format!(
                    "{} violations",
                    violations.len()
                )))
            }
        }
        Verb::Lift { solution } => {
            let step = build_stage(cli.stage()?, &cli.instance()?)?;
            cli.emit(&step.lift_text(&read_file(solution)?)?)
        }
        Verb::Project { solution } => {
            let step = build_stage(cli.stage()?, &cli.instance()?)?;
            cli.emit(&step.project_text(&read_file(solution)?)?)
        }
        Verb::CheckParsimony => {
            let report = check_parsimony(cli.stage()?, &cli.instance()?, &ctx)?;
            cli.emit(&report.to_text())?;
            verdict_result([report.verdict])
        }
        Verb::Chain => {
            let run = run_chain(cli.instance()?, cli.stage, &ctx)?;
            if let Some(dir) = &cli.out {
                fs::create_dir_all(dir).map_err(|source| CliError::Io {
                    path: dir.display().to_string(),
                    source,
                })?;
                for (k, inst) in run.instances.iter().enumerate() {
                    write_file(
                        &dir.join(format!("{k:02}-{}.txt", inst.kind())),
                        &inst.to_text(),
                    )?;
                }
                for (k, step) in run.steps.iter().enumerate() {
                    write_file(
                        &dir.join(format!("{:02}-{}.trace", k + 1, step.name())),
                        &step.trace(),
                    )?;
                }
            }
            let mut text = String::new();
            for r in &run.reports {
                eprintln!("{}: {}", r.stage, r.verdict);
                text += &r.to_text();
                text.push('\n');
            }
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
            verdict_result(run.reports.iter().map(|r| r.verdict))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
