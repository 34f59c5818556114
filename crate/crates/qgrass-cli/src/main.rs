//! Verification harness: runs the named check suites over parameter
//! grids, prints one line per check, and writes a versioned JSON report.
//!
//! Exit codes: 0 when every check passed, 1 when some identity failed
//! (the failing cases are in the output), 2 for unusable parameters.
//! Grid points are independent; `--jobs` runs them on worker threads.
//! With a fixed `--seed` the report is byte-identical across runs except
//! for the `millis` timing fields.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qgrass::checks;
use qgrass::report::{CheckReport, JobReport, ReportFile};
use qgrass::rform::KillingMode;

/// Inclusive integer range, written on the command line as "A" or "A..B".
#[derive(Clone, Copy, Debug)]
struct Interval {
    lo: u8,
    hi: u8,
}

impl Interval {
    fn at(v: u8) -> Interval {
        Interval { lo: v, hi: v }
    }

    fn new(lo: u8, hi: u8) -> Interval {
        Interval { lo, hi }
    }

    fn values(self) -> impl Iterator<Item = u8> {
        self.lo..=self.hi
    }
}

fn parse_interval(s: &str) -> Result<Interval, String> {
    let parse_end = |t: &str| {
        t.parse::<u8>()
            .map_err(|_| format!("'{}' is not a small integer", t))
    };
    let iv = match s.split_once("..") {
        Some((a, b)) => Interval::new(parse_end(a)?, parse_end(b)?),
        None => Interval::at(parse_end(s)?),
    };
    if iv.lo == 0 || iv.lo > iv.hi {
        return Err(format!("'{}' is not a nonempty range of positive values", s));
    }
    Ok(iv)
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// evaluate the two-sided form directly from the coproduct
    Brute,
    /// evaluate it through the antipode transfer identity
    Transfer,
}

impl From<Mode> for KillingMode {
    fn from(m: Mode) -> KillingMode {
        match m {
            Mode::Brute => KillingMode::Brute,
            Mode::Transfer => KillingMode::Transfer,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// seed for the sampled checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// worker threads over grid points
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// write the JSON report to this file (atomically)
    #[arg(long)]
    out: Option<PathBuf>,
    /// what to print on stdout
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct NArgs {
    /// matrix size n: a value or an inclusive range A..B
    #[arg(long, value_parser = parse_interval)]
    n: Option<Interval>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct NRArgs {
    /// matrix size n: a value or an inclusive range A..B
    #[arg(long, value_parser = parse_interval)]
    n: Option<Interval>,
    /// Grassmannian parameter r (needs 1 <= r < n): a value or a range A..B
    #[arg(long, value_parser = parse_interval)]
    r: Option<Interval>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Parser)]
#[command(
    name = "qgrass",
    version,
    about = "Exact verification of the quantum Grassmannian calculus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Presentation checks: rewriting confluence, coassociativity,
    /// determinant centrality, classical limit
    Relations(NArgs),
    /// Support laws of the one- and two-sided forms on all quantum minors,
    /// plus the form constants on the coordinate generators
    Goodearl {
        #[command(flatten)]
        args: NArgs,
        /// evaluation route for the two-sided form constants
        #[arg(long, value_enum, default_value_t = Mode::Brute)]
        mode: Mode,
    },
    /// Quantum Laplace expansions of every minor along every column block
    Laplace(NArgs),
    /// First-order calculus dimension and direction constants
    CalculusDim(NRArgs),
    /// Section dimensions of the line bundles at levels 0..=k-max and the
    /// vanishing at the negative levels
    BorelWeil {
        #[command(flatten)]
        args: NRArgs,
        /// highest level in the sweep
        #[arg(long, default_value_t = 2)]
        k_max: i64,
    },
    /// The mirrored calculus: no sections above, full sections below
    Opposite {
        #[command(flatten)]
        args: NRArgs,
        /// highest level in the sweep
        #[arg(long, default_value_t = 1)]
        k_max: i64,
    },
    /// Products of section spaces fill the higher levels
    CoordinateRing {
        #[command(flatten)]
        args: NRArgs,
        /// highest combined level
        #[arg(long, default_value_t = 2)]
        k_max: i64,
    },
    /// Twisted Leibniz ladder: rung laws, bottom-rung Leibniz rule,
    /// iterate constants, nonvanishing witnesses
    Twisted(NRArgs),
    /// Unit decompositions through both signs of each level
    EllMap {
        #[command(flatten)]
        args: NRArgs,
        /// highest level magnitude
        #[arg(long, default_value_t = 2)]
        k_max: i64,
    },
    /// Joint kernel of both differentials is the constants
    Connectedness {
        #[command(flatten)]
        args: NRArgs,
        /// product degree bound for the candidate span
        #[arg(long, default_value_t = 2)]
        max_deg: usize,
    },
    /// Every suite at its advertised grid
    All(RunArgs),
}

struct Job {
    params: serde_json::Value,
    suite: Box<dyn FnOnce() -> qgrass::Result<Vec<CheckReport>> + Send>,
}

impl Job {
    fn new(
        params: serde_json::Value,
        suite: impl FnOnce() -> qgrass::Result<Vec<CheckReport>> + Send + 'static,
    ) -> Job {
        Job {
            params,
            suite: Box::new(suite),
        }
    }
}

fn n_grid(arg: Option<Interval>, default: Interval) -> Vec<u8> {
    arg.unwrap_or(default).values().collect()
}

/// The (n, r) grid points with 1 <= r < n; an empty grid is a usage error.
fn nr_grid(
    n: Option<Interval>,
    r: Option<Interval>,
    dn: Interval,
    dr: Interval,
) -> Result<Vec<(u8, u8)>, String> {
    let mut out = Vec::new();
    for n in n.unwrap_or(dn).values() {
        for r in r.unwrap_or(dr).values() {
            if 1 <= r && r < n {
                out.push((n, r));
            }
        }
    }
    if out.is_empty() {
        return Err("empty parameter grid: need 1 <= r < n".into());
    }
    Ok(out)
}

fn relations_jobs(n: &[u8], seed: u64) -> Vec<Job> {
    n.iter()
        .map(|&n| {
            let words = if n <= 2 { 400 } else { 300 };
            let s = seed.wrapping_add(n as u64);
            Job::new(json!({ "n": n }), move || {
                checks::relations_suite(n, words, s)
            })
        })
        .collect()
}

fn goodearl_jobs(n: &[u8], mode: KillingMode) -> Vec<Job> {
    let mut jobs: Vec<Job> = n
        .iter()
        .map(|&n| Job::new(json!({ "n": n }), move || checks::goodearl_suite(n)))
        .collect();
    let label = match mode {
        KillingMode::Brute => "brute",
        KillingMode::Transfer => "transfer",
    };
    for &n in n {
        for r in 1..n {
            jobs.push(Job::new(
                json!({ "n": n, "r": r, "mode": label }),
                move || checks::killing_suite(n, r, mode),
            ));
        }
    }
    jobs
}

fn build_jobs(command: &Command) -> Result<(String, u64, Vec<Job>), String> {
    Ok(match command {
        Command::Relations(a) => {
            let grid = n_grid(a.n, Interval::new(2, 4));
            ("relations".into(), a.run.seed, relations_jobs(&grid, a.run.seed))
        }
        Command::Goodearl { args, mode } => {
            let grid = n_grid(args.n, Interval::new(2, 3));
            (
                "goodearl".into(),
                args.run.seed,
                goodearl_jobs(&grid, (*mode).into()),
            )
        }
        Command::Laplace(a) => {
            let grid = n_grid(a.n, Interval::new(2, 3));
            let jobs = grid
                .into_iter()
                .map(|n| Job::new(json!({ "n": n }), move || checks::laplace_suite(n)))
                .collect();
            ("laplace".into(), a.run.seed, jobs)
        }
        Command::CalculusDim(a) => {
            let grid = nr_grid(a.n, a.r, Interval::new(2, 4), Interval::new(1, 2))?;
            let jobs = grid
                .into_iter()
                .map(|(n, r)| {
                    Job::new(json!({ "n": n, "r": r }), move || {
                        checks::calculus_dim_suite(n, r)
                    })
                })
                .collect();
            ("calculus-dim".into(), a.run.seed, jobs)
        }
        Command::BorelWeil { args, k_max } => {
            if *k_max < 0 {
                return Err("k-max must be nonnegative".into());
            }
            let grid = nr_grid(args.n, args.r, Interval::new(2, 3), Interval::new(1, 2))?;
            let mut jobs = Vec::new();
            for (n, r) in grid {
                for k in 0..=*k_max {
                    jobs.push(Job::new(json!({ "n": n, "r": r, "k": k }), move || {
                        checks::borel_weil_suite(n, r, k)
                    }));
                }
            }
            ("borel-weil".into(), args.run.seed, jobs)
        }
        Command::Opposite { args, k_max } => {
            if *k_max < 1 {
                return Err("k-max must be at least 1".into());
            }
            let grid = nr_grid(args.n, args.r, Interval::new(2, 3), Interval::at(1))?;
            let mut jobs = Vec::new();
            for (n, r) in grid {
                for k in 1..=*k_max {
                    jobs.push(Job::new(json!({ "n": n, "r": r, "k": k }), move || {
                        checks::opposite_suite(n, r, k)
                    }));
                }
            }
            ("opposite".into(), args.run.seed, jobs)
        }
        Command::CoordinateRing { args, k_max } => {
            if *k_max < 2 {
                return Err("k-max must be at least 2".into());
            }
            let k_max = *k_max;
            let grid = nr_grid(args.n, args.r, Interval::new(2, 3), Interval::new(1, 2))?;
            let jobs = grid
                .into_iter()
                .map(|(n, r)| {
                    Job::new(json!({ "n": n, "r": r, "k_max": k_max }), move || {
                        checks::coordinate_ring_suite(n, r, k_max)
                    })
                })
                .collect();
            ("coordinate-ring".into(), args.run.seed, jobs)
        }
        Command::Twisted(a) => {
            let grid = nr_grid(a.n, a.r, Interval::new(2, 4), Interval::new(1, 3))?;
            let seed = a.run.seed;
            let jobs = grid
                .into_iter()
                .map(|(n, r)| {
                    Job::new(json!({ "n": n, "r": r }), move || {
                        checks::twisted_suite(n, r, 100, seed)
                    })
                })
                .collect();
            ("twisted".into(), a.run.seed, jobs)
        }
        Command::EllMap { args, k_max } => {
            if *k_max < 1 {
                return Err("k-max must be at least 1".into());
            }
            let k_max = *k_max;
            let grid = nr_grid(args.n, args.r, Interval::new(2, 3), Interval::new(1, 2))?;
            let jobs = grid
                .into_iter()
                .map(|(n, r)| {
                    Job::new(json!({ "n": n, "r": r, "k_max": k_max }), move || {
                        checks::ell_suite(n, r, k_max)
                    })
                })
                .collect();
            ("ell-map".into(), args.run.seed, jobs)
        }
        Command::Connectedness { args, max_deg } => {
            let max_deg = *max_deg;
            let grid = nr_grid(args.n, args.r, Interval::new(2, 3), Interval::new(1, 2))?;
            let jobs = grid
                .into_iter()
                .map(|(n, r)| {
                    Job::new(json!({ "n": n, "r": r, "max_deg": max_deg }), move || {
                        checks::connectedness_suite(n, r, max_deg)
                    })
                })
                .collect();
            ("connectedness".into(), args.run.seed, jobs)
        }
        Command::All(run) => {
            let seed = run.seed;
            let mut jobs = relations_jobs(&[2, 3, 4], seed);
            jobs.extend(goodearl_jobs(&[2, 3, 4], KillingMode::Brute));
            for (n, r) in [(2u8, 1u8), (3, 1), (3, 2), (4, 1), (4, 2)] {
                jobs.push(Job::new(
                    json!({ "n": n, "r": r, "mode": "transfer" }),
                    move || checks::killing_suite(n, r, KillingMode::Transfer),
                ));
            }
            for n in [2u8, 3] {
                jobs.push(Job::new(json!({ "n": n }), move || {
                    checks::laplace_suite(n)
                }));
            }
            for (n, r) in [(2u8, 1u8), (3, 1), (4, 1), (4, 2)] {
                jobs.push(Job::new(json!({ "n": n, "r": r }), move || {
                    checks::calculus_dim_suite(n, r)
                }));
            }
            for (n, r, k_max) in [(2u8, 1u8, 4i64), (3, 1, 3), (3, 2, 2), (4, 2, 2)] {
                for k in 0..=k_max {
                    jobs.push(Job::new(json!({ "n": n, "r": r, "k": k }), move || {
                        checks::borel_weil_suite(n, r, k)
                    }));
                }
            }
            for (n, r) in [(2u8, 1u8), (3, 1)] {
                jobs.push(Job::new(json!({ "n": n, "r": r, "k": 1 }), move || {
                    checks::opposite_suite(n, r, 1)
                }));
            }
            for (n, r) in [(2u8, 1u8), (3, 1), (4, 2)] {
                jobs.push(Job::new(json!({ "n": n, "r": r, "k_max": 2 }), move || {
                    checks::coordinate_ring_suite(n, r, 2)
                }));
            }
            for (n, r) in [(2u8, 1u8), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)] {
                let pairs = if (n, r) == (3, 1) || (n, r) == (4, 2) {
                    100
                } else {
                    0
                };
                jobs.push(Job::new(json!({ "n": n, "r": r }), move || {
                    checks::twisted_suite(n, r, pairs, seed)
                }));
            }
            for (n, r) in [(2u8, 1u8), (3, 1), (3, 2)] {
                jobs.push(Job::new(json!({ "n": n, "r": r, "k_max": 2 }), move || {
                    checks::ell_suite(n, r, 2)
                }));
                jobs.push(Job::new(json!({ "n": n, "r": r, "max_deg": 2 }), move || {
                    checks::connectedness_suite(n, r, 2)
                }));
            }
            ("all".into(), seed, jobs)
        }
    })
}

/// Runs the jobs on `workers` threads; results keep grid order regardless
/// of scheduling, so reports are deterministic.
fn run_jobs(jobs: Vec<Job>, workers: usize) -> qgrass::Result<Vec<JobReport>> {
    let slots: Vec<Mutex<Option<Job>>> = jobs.into_iter().map(|j| Mutex::new(Some(j))).collect();
    let results: Vec<Mutex<Option<qgrass::Result<JobReport>>>> =
        (0..slots.len()).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = workers.max(1).min(slots.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= slots.len() {
                    break;
                }
                let job = slots[i].lock().unwrap().take().expect("job taken once");
                let report = (job.suite)().map(|checks| JobReport::new(job.params, checks));
                *results[i].lock().unwrap() = Some(report);
            });
        }
    });
    results
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("every job ran"))
        .collect()
}

fn write_atomic(path: &Path, data: &str) -> std::io::Result<()> {
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "report".into());
    let tmp = path.with_file_name(format!("{}.tmp{}", name, std::process::id()));
    std::fs::write(&tmp, data)?;
    std::fs::rename(&tmp, path)
}

fn print_text(file: &ReportFile) {
    let mut total = 0usize;
    let mut failed = 0usize;
    for job in &file.jobs {
        for c in &job.checks {
            total += 1;
            if c.pass {
                println!("PASS  {}  {}", c.check, c.params);
            } else {
                failed += 1;
                println!(
                    "FAIL  {}  {}  expected {}  got {}",
                    c.check, c.params, c.expected, c.got
                );
            }
        }
    }
    println!(
        "{}: {} jobs, {} checks, {} failed",
        file.command,
        file.jobs.len(),
        total,
        failed
    );
}

fn real_main(cli: Cli) -> Result<ExitCode, String> {
    let (name, seed, jobs) = build_jobs(&cli.command)?;
    let run = match &cli.command {
        Command::Relations(a) | Command::Laplace(a) => &a.run,
        Command::Goodearl { args, .. } => &args.run,
        Command::CalculusDim(a) | Command::Twisted(a) => &a.run,
        Command::BorelWeil { args, .. }
        | Command::Opposite { args, .. }
        | Command::CoordinateRing { args, .. }
        | Command::EllMap { args, .. }
        | Command::Connectedness { args, .. } => &args.run,
        Command::All(run) => run,
    };
    let reports = run_jobs(jobs, run.jobs).map_err(|e| e.to_string())?;
    let file = ReportFile::new(name, seed, reports);
    let rendered = serde_json::to_string_pretty(&file).expect("report serializes");
    if let Some(path) = &run.out {
        write_atomic(path, &rendered).map_err(|e| format!("writing {}: {}", path.display(), e))?;
    }
    match run.format {
        Format::Text => print_text(&file),
        Format::Json => println!("{}", rendered),
    }
    Ok(if file.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match real_main(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intervals_parse() {
        let one = parse_interval("3").unwrap();
        assert_eq!((one.lo, one.hi), (3, 3));
        let range = parse_interval("2..4").unwrap();
        assert_eq!((range.lo, range.hi), (2, 4));
        assert!(parse_interval("0").is_err());
        assert!(parse_interval("4..2").is_err());
        assert!(parse_interval("x").is_err());
        assert!(parse_interval("2..y").is_err());
    }

    #[test]
    fn grids_filter_and_reject() {
        let grid = nr_grid(
            Some(Interval::new(2, 3)),
            Some(Interval::new(1, 2)),
            Interval::at(2),
            Interval::at(1),
        )
        .unwrap();
        assert_eq!(grid, vec![(2, 1), (3, 1), (3, 2)]);
        assert!(nr_grid(
            Some(Interval::at(2)),
            Some(Interval::at(2)),
            Interval::at(2),
            Interval::at(1)
        )
        .is_err());
    }

    #[test]
    fn borel_weil_example_grid_has_six_jobs() {
        let cmd = Command::BorelWeil {
            args: NRArgs {
                n: Some(Interval::new(2, 3)),
                r: Some(Interval::at(1)),
                run: RunArgs {
                    seed: 0,
                    jobs: 1,
                    out: None,
                    format: Format::Text,
                },
            },
            k_max: 2,
        };
        let (name, _, jobs) = build_jobs(&cmd).unwrap();
        assert_eq!(name, "borel-weil");
        assert_eq!(jobs.len(), 6);
    }
}
