use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ggrid_core::bench::{run_benchmark, BenchOptions, SuiteConfig};
use ggrid_core::format::{parse_instance, serialize_instance};
use ggrid_core::generate::{generate_instance, GenMode, GenParams};
use ggrid_core::ggmst::approximate_ggmst;
use ggrid_core::oracle::{self, audit_subtree_lemmas, AuditReport, LEMMA_SIZES};
use ggrid_core::svg::{render_svg, Overlay};
use ggrid_core::{
    solve_ggmst, solve_ggtsp, Error, GgmstSolution, Instance, SolverConfig, Tour, TspVariant,
};

const EXIT_USAGE: u8 = 1;
const EXIT_AUDIT: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ggrid",
    version,
    about = "Generalized MST and TSP on unit-grid clusters"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Spanning tree through one point per cell.
    SolveGgmst {
        file: PathBuf,
        #[arg(long, default_value_t = SolverConfig::default().epsilon)]
        epsilon: f64,
        /// Write a drawing of the tree here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Closed tour through one point per cell.
    SolveGgtsp {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Variant::Christofides)]
        variant: Variant,
        #[arg(long, default_value_t = SolverConfig::default().epsilon)]
        epsilon: f64,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Exact optimum by exhaustive search (small instances only).
    Exact {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Problem::Mst)]
        problem: Problem,
    },
    /// Write a random instance.
    Gen {
        #[arg(long, default_value = "connected-cells")]
        mode: String,
        #[arg(long, default_value_t = 3)]
        rows: u32,
        #[arg(long, default_value_t = 5)]
        cols: u32,
        #[arg(long, default_value_t = 8)]
        cells: u32,
        /// Points per cell, `LO..HI` inclusive.
        #[arg(long, default_value = "1..3", value_parser = parse_range)]
        ppc: (u32, u32),
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run solvers over a suite and write a CSV report.
    Bench {
        /// TOML suite; a small built-in suite otherwise.
        #[arg(long)]
        suite: Option<PathBuf>,
        /// Compare against exact optima where feasible.
        #[arg(long)]
        oracle: bool,
        /// Fill the `ms` column (makes output nondeterministic).
        #[arg(long)]
        timing: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the approximation bounds and subtree lemmas on one instance.
    Audit {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = LEMMA_SIZES)]
        lemmas: Vec<usize>,
        /// Subtrees examined per lemma size.
        #[arg(long, default_value_t = 100_000)]
        sample_cap: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    DoubleTree,
    Christofides,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Mst,
    Tsp,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let lo = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad lower bound in {s:?}"))?;
    let hi = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad upper bound in {s:?}"))?;
    Ok((lo, hi))
}

enum Failure {
    Usage(String),
    Audit(String),
    Infeasible(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } | Error::InfeasibleOracle(_) => {
                Failure::Infeasible(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn tree_text(tag: &str, sol: &GgmstSolution) -> String {
    let mut out = format!("provenance {tag}\nweight {}\nchosen", sol.weight);
    for p in &sol.chosen {
        write!(out, " {p}").unwrap();
    }
    out.push('\n');
    for (p, q) in &sol.edges {
        writeln!(out, "edge {p} {q}").unwrap();
    }
    out
}

fn tour_text(tag: &str, tour: &Tour) -> String {
    let mut out = format!("provenance {tag}\nweight {}\ntour", tour.weight);
    for p in &tour.order {
        write!(out, " {p}").unwrap();
    }
    out.push('\n');
    out
}

fn audit_text(r: &AuditReport) -> String {
    r.to_csv()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::SolveGgmst { file, epsilon, svg } => {
            let inst = load(&file)?;
            let cfg = SolverConfig::with_epsilon(epsilon)?;
            let (sol, tag) = solve_ggmst(&inst, &cfg)?;
            print!("{}", tree_text(tag.tag(), &sol));
            if let Some(p) = svg {
                write_out(Some(&p), &render_svg(&inst, Overlay::Tree(&sol)))?;
            }
        }
        Cmd::SolveGgtsp {
            file,
            variant,
            epsilon,
            svg,
        } => {
            let inst = load(&file)?;
            let cfg = SolverConfig::with_epsilon(epsilon)?;
            let variant = match variant {
                Variant::DoubleTree => TspVariant::DoubleTree,
                Variant::Christofides => TspVariant::Christofides,
            };
            let (tour, tag) = solve_ggtsp(&inst, &cfg, variant)?;
            print!("{}", tour_text(tag.tag(), &tour));
            if let Some(p) = svg {
                write_out(Some(&p), &render_svg(&inst, Overlay::Tour(&tour)))?;
            }
        }
        Cmd::Exact { file, problem } => {
            let inst = load(&file)?;
            let cap = SolverConfig::default().exact_fallback_cap;
            match problem {
                Problem::Mst => print!("{}", tree_text("exact", &oracle::exact_ggmst(&inst, cap)?)),
                Problem::Tsp => print!("{}", tour_text("exact", &oracle::exact_ggtsp(&inst, cap)?)),
            }
        }
        Cmd::Gen {
            mode,
            rows,
            cols,
            cells,
            ppc,
            seed,
            output,
        } => {
            let params = GenParams {
                mode: mode.parse::<GenMode>()?,
                rows,
                cols,
                ppc,
                cells,
                seed,
            };
            write_out(
                output.as_deref(),
                &serialize_instance(&generate_instance(&params)?),
            )?;
        }
        Cmd::Bench {
            suite,
            oracle,
            timing,
            output,
        } => {
            let (cfg, base) = match &suite {
                Some(p) => {
                    let text = std::fs::read_to_string(p)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
                    let base = p.parent().map(Path::to_path_buf).unwrap_or_default();
                    (SuiteConfig::from_toml(&text)?, base)
                }
                None => (SuiteConfig::default(), PathBuf::new()),
            };
            let instances = cfg.instances(&base)?;
            let solver_cfg = SolverConfig::with_epsilon(cfg.epsilon)?;
            let report = run_benchmark(
                &instances,
                &cfg.solvers,
                &solver_cfg,
                BenchOptions { oracle, timing },
            )?;
            write_out(output.as_deref(), &report.to_csv())?;
            if !report.audits_passed() {
                return Err(Failure::Audit(
                    "bound violated; see min_margin column".into(),
                ));
            }
        }
        Cmd::Audit {
            file,
            lemmas,
            sample_cap,
        } => {
            let inst = load(&file)?;
            let cap = SolverConfig::default().exact_fallback_cap;
            let opt = oracle::exact_ggmst(&inst, cap)?;
            let approx = approximate_ggmst(&inst);
            let mut report = AuditReport::default();
            report.push(oracle::verify_additive_bound(&inst, &approx, &opt)?);
            report.push(oracle::verify_ratio_bound(&inst, &approx, &opt)?);
            report.push(oracle::verify_lower_bound(&inst, &opt)?);
            report.extend(audit_subtree_lemmas(&inst, &opt, &lemmas, sample_cap)?);
            print!("{}", audit_text(&report));
            if !report.passed() {
                return Err(Failure::Audit("audit failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Audit(m)) => {
            eprintln!("audit: {m}");
            ExitCode::from(EXIT_AUDIT)
        }
        Err(Failure::Infeasible(m)) => {
            eprintln!("infeasible: {m}");
            ExitCode::from(EXIT_INFEASIBLE)
        }
    }
}
