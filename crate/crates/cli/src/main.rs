use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lpsurf::explorer::{
    explore_flips, explore_seeds, export, graphs_isomorphic, random_sequences, verify_correspondence,
    verify_laurent, ExchangeGraph, ExploreOptions, ExportFormat, DEFAULT_INFINITE_DEPTH,
};
use lpsurf::lp_core::{fresh_name, mutate_named, normalize, validate_seed, LPSeed, SeedFile};
use lpsurf::surface::{
    initial_quasi_triangulation, seed_from_quasi_triangulation, MarkedSurface, QuasiTriangulation,
};

#[derive(Parser)]
#[command(name = "lpsurf", version, about = "LP seeds, quasi-triangulations and their exchange graphs")]
struct Cli {
    /// Worker threads for exploration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate a seed in one direction and print the new seed.
    Mutate {
        #[arg(long)]
        seed: PathBuf,
        /// Cluster variable, by name or 1-based position.
        #[arg(long)]
        at: String,
        /// Name of the new cluster variable (default: primed).
        #[arg(long)]
        name: Option<String>,
    },
    /// Print the normalised exchange polynomials.
    Normalize {
        #[arg(long)]
        seed: PathBuf,
        /// Only this cluster variable.
        #[arg(long)]
        at: Option<String>,
    },
    /// Print the seed of a triangulated surface.
    SeedFromSurface {
        #[arg(long)]
        surface: PathBuf,
        /// Quasi-triangulation file; the standard one is used otherwise.
        #[arg(long)]
        triangulation: Option<PathBuf>,
    },
    /// Enumerate an exchange graph.
    Explore {
        #[command(flatten)]
        input: Input,
        /// Enumerate quasi-triangulations instead of seeds.
        #[arg(long)]
        flips: bool,
        #[arg(long)]
        depth: Option<usize>,
        /// dot or json.
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the seed graph of a surface with its flip graph, or two graph files.
    CompareGraphs {
        #[arg(long, conflicts_with = "graphs")]
        surface: Option<PathBuf>,
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        graphs: Option<Vec<PathBuf>>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Check that cluster variables stay Laurent along random mutation sequences.
    VerifyLaurent {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 200)]
        sequences: usize,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 1)]
        rng_seed: u64,
    },
    /// Check the seed conditions.
    Validate {
        #[arg(long)]
        seed: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    #[arg(long)]
    seed: Option<PathBuf>,
    #[arg(long)]
    surface: Option<PathBuf>,
}

/// A failure of the computation itself, as opposed to a usage error.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_seed(path: &Path) -> Result<LPSeed, Failure> {
    Ok(LPSeed::from_json(&read(path)?)?)
}

fn load_surface(path: &Path) -> Result<MarkedSurface, Failure> {
    Ok(MarkedSurface::from_json(&read(path)?)?)
}

fn direction(s: &LPSeed, at: &str) -> Result<usize, Failure> {
    if let Ok(i) = s.index_of(at) {
        return Ok(i);
    }
    match at.parse::<usize>() {
        Ok(k) if (1..=s.rank()).contains(&k) => Ok(k - 1),
        _ => Err(Failure(format!("no cluster variable `{at}`"))),
    }
}

/// Surfaces of finite type are explored to closure, the others to a fixed depth.
fn default_depth(s: &MarkedSurface) -> Option<usize> {
    let finite = s.orientable_genus == 0 && s.boundary.len() == 1 && s.cross_caps <= 1;
    (!finite).then_some(DEFAULT_INFINITE_DEPTH)
}

fn options(jobs: Option<usize>, depth: Option<usize>) -> ExploreOptions {
    ExploreOptions { jobs, ..ExploreOptions::from_env().depth(depth) }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let jobs = cli.jobs;
    match cli.command {
        Command::Mutate { seed, at, name } => {
            let s = load_seed(&seed)?;
            let i = direction(&s, &at)?;
            let name = name.unwrap_or_else(|| fresh_name(s.ctx(), i));
            emit(&mutate_named(&s, i, &name)?.to_json(), None)?;
        }
        Command::Normalize { seed, at } => {
            let s = load_seed(&seed)?;
            let dirs = match at {
                Some(a) => vec![direction(&s, &a)?],
                None => (0..s.rank()).collect(),
            };
            let mut out = String::new();
            for j in dirs {
                let (f, powers) = normalize(&s, j)?;
                let shifts: Vec<String> = powers
                    .iter()
                    .enumerate()
                    .filter(|&(_, &a)| a > 0)
                    .map(|(k, a)| format!("{}^{a}", s.cluster()[k]))
                    .collect();
                write!(out, "{}: {f}", s.cluster()[j]).unwrap();
                if !shifts.is_empty() {
                    write!(out, "  (divided by {})", shifts.join("*")).unwrap();
                }
                out.push('\n');
            }
            emit(&out, None)?;
        }
        Command::SeedFromSurface { surface, triangulation } => {
            let s = load_surface(&surface)?;
            let t = match triangulation {
                Some(p) => {
                    let t = QuasiTriangulation::from_json(&read(&p)?)?;
                    if *t.surface() != s {
                        return Err(Failure("triangulation belongs to another surface".into()));
                    }
                    t
                }
                None => initial_quasi_triangulation(&s)?,
            };
            emit(&seed_from_quasi_triangulation(&t)?.to_json(), None)?;
        }
        Command::Explore { input, flips, depth, format, out } => {
            let format: ExportFormat = format.parse()?;
            let g = match (input.seed, input.surface) {
                (Some(p), _) => {
                    if flips {
                        return Err(Failure("--flips needs --surface".into()));
                    }
                    explore_seeds(&load_seed(&p)?, &options(jobs, depth))?
                }
                (None, Some(p)) => {
                    let s = load_surface(&p)?;
                    let opts = options(jobs, depth.or(default_depth(&s)));
                    let t = initial_quasi_triangulation(&s)?;
                    if flips {
                        explore_flips(&t, &opts)?
                    } else {
                        explore_seeds(&seed_from_quasi_triangulation(&t)?, &opts)?
                    }
                }
                (None, None) => unreachable!("clap requires one input"),
            };
            emit(&export(&g, format), out.as_deref())?;
            eprintln!("nodes={}, edges={}, truncated={}", g.n_nodes(), g.n_edges(), g.truncated);
        }
        Command::CompareGraphs { surface, graphs, depth } => {
            let (a, b, problems) = match (surface, graphs) {
                (Some(p), _) => {
                    let s = load_surface(&p)?;
                    let t = initial_quasi_triangulation(&s)?;
                    let c = verify_correspondence(&t, &options(jobs, depth.or(default_depth(&s))))?;
                    (c.seeds, c.flips, c.mismatches)
                }
                (None, Some(files)) => {
                    let a = ExchangeGraph::from_json(&read(&files[0])?)?;
                    let b = ExchangeGraph::from_json(&read(&files[1])?)?;
                    (a, b, Vec::new())
                }
                (None, None) => return Err(Failure("give --surface or --graphs".into())),
            };
            let iso = graphs_isomorphic(&a, &b)?.is_some();
            println!("isomorphic: {iso}, nodes={}, edges={}", a.n_nodes(), a.n_edges());
            if a.n_nodes() != b.n_nodes() || a.n_edges() != b.n_edges() {
                println!("other graph: nodes={}, edges={}", b.n_nodes(), b.n_edges());
            }
            for m in &problems {
                println!("mismatch: {m}");
            }
            if !iso || !problems.is_empty() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::VerifyLaurent { input, sequences, max_len, rng_seed } => {
            let s0 = match (input.seed, input.surface) {
                (Some(p), _) => load_seed(&p)?,
                (None, Some(p)) => {
                    let s = load_surface(&p)?;
                    seed_from_quasi_triangulation(&initial_quasi_triangulation(&s)?)?
                }
                (None, None) => unreachable!("clap requires one input"),
            };
            let seqs = random_sequences(s0.rank(), sequences, max_len, rng_seed);
            let parallel = cfg!(feature = "parallel");
            let report = lpsurf::with_jobs(jobs, || verify_laurent(&s0, &seqs, parallel));
            println!(
                "sequences={}, values={}, violations={}",
                report.sequences,
                report.values_checked,
                report.violations.len()
            );
            for v in &report.violations {
                let seq: Vec<String> = v.sequence.iter().map(|i| s0.cluster()[*i].clone()).collect();
                println!("violation after {} of [{}]: {}", v.step, seq.join(" "), v.detail);
            }
            if !report.is_laurent() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Validate { seed } => {
            let file: SeedFile = serde_json::from_str(&read(&seed)?)?;
            let s = LPSeed::from_file_unchecked(&file)?;
            match validate_seed(&s) {
                Ok(()) => println!("valid"),
                Err(violations) => {
                    for v in violations {
                        println!("invalid: {v}");
                    }
                    return Ok(ExitCode::from(1));
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
