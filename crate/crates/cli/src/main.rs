use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tractrank::golden::run_golden;
use tractrank::io::parse_matrix_with;
use tractrank::linalg::TractMatrix;
use tractrank::matroids::enumerate_matroids_guarded;
use tractrank::ranks::{
    compute_report, parse_rank_list, sigma, sign_entries, solve_homogeneous, Mode, RankOptions, RankReport, Witness,
};
use tractrank::realize::{epic_lift, realize_sign_low_rank_via_alt, realize_sign_pattern, realize_zero_pattern};
use tractrank::{Guards, TractId};

#[derive(Parser)]
#[command(name = "tractrank", version, about = "Ranks of matrices over tracts")]
struct Cli {
    /// Guard overrides such as `det=7,enum=6`; applied after TRACTRANK_GUARDS.
    #[arg(long, global = true)]
    guards: Option<String>,
    /// Seed for randomized constructions.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute ranks of a matrix with witnesses.
    Rank(RankArgs),
    /// Build a rational matrix realizing a pattern at low rank.
    Realize(RealizeArgs),
    /// Check the built-in worked examples.
    Verify {
        /// Also write the results as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Enumerate labelled matroids.
    Enumerate(EnumerateArgs),
    /// List the nonzero solutions of a homogeneous system over a finite tract.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        tract: Option<String>,
    },
}

#[derive(Args)]
struct RankArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Comma separated: col,row,det,tri,mat,phimat:fpQ,preimage:fpQ,preimage:rational.
    #[arg(long, default_value = "col,row")]
    ranks: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Bounds)]
    mode: ModeArg,
    /// Read the entries in this tract instead of the file's header.
    #[arg(long)]
    tract: Option<String>,
    /// Write the report as JSON; `-` prints it instead of the table.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Bounds,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// Zero/nonzero pattern with at least `bound` nonzeros per row.
    Zero,
    /// Sign pattern whose rows have fewer than `bound` sign changes.
    Sign,
    /// Sign pattern through the alternating matroid construction.
    SignAlt,
    /// Zero/nonzero pattern lifted into the row space of `--witness`.
    Epic,
}

#[derive(Args)]
struct RealizeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum)]
    kind: Kind,
    /// Nonzeros per row (zero) or sign change bound (sign); defaults to the tightest value.
    #[arg(long)]
    bound: Option<usize>,
    /// Rational matrix for `--kind epic`.
    #[arg(long)]
    witness: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// Largest rank to include.
    #[arg(long)]
    rank_max: Option<usize>,
    /// Write every matroid, separated by blank lines.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_matrix(path: &Path, tract: Option<&str>) -> Result<TractMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let t = tract.map(str::parse::<TractId>).transpose()?;
    parse_matrix_with(&text, t.as_ref()).with_context(|| format!("parsing {}", path.display()))
}

fn one_based(xs: &[usize]) -> String {
    xs.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn describe(w: &Witness) -> String {
    match w {
        Witness::Columns {
            independent,
            dependent,
            coefficients,
        } => {
            let mut s = format!("independent {{{}}}", one_based(independent));
            if let (Some(d), Some(c)) = (dependent, coefficients) {
                s.push_str(&format!("; dependent {{{}}} with ({})", one_based(d), c.join(", ")));
            }
            s
        }
        Witness::Minor { rows, cols } => format!("rows {{{}}} cols {{{}}}", one_based(rows), one_based(cols)),
        Witness::Triangular { rows, cols } => {
            format!("diagonal rows ({}) cols ({})", one_based(rows), one_based(cols))
        }
        Witness::Matroid {
            lower_columns,
            rank,
            upper_source,
            ..
        } => format!(
            "columns {{{}}} independent; rank {rank} witness from {upper_source}",
            one_based(lower_columns)
        ),
        Witness::Echelon { q, rows } => {
            let rs: Vec<String> = rows
                .iter()
                .map(|r| r.iter().map(u8::to_string).collect::<Vec<_>>().join(" "))
                .collect();
            format!("GF({q}) echelon [{}]", rs.join("; "))
        }
        Witness::Lift {
            tract,
            rows,
            lower_source,
            upper_source,
        } => {
            let rs: Vec<String> = rows.iter().map(|r| r.join(" ")).collect();
            format!(
                "{tract} lift [{}]; lower from {lower_source}, upper from {upper_source}",
                rs.join("; ")
            )
        }
    }
}

fn print_report(r: &RankReport) {
    println!("tract {}", r.tract);
    for name in &r.requested {
        println!(
            "{name:<18} {:<12} {}",
            r.values[name].to_string(),
            describe(&r.witnesses[name])
        );
    }
    println!("chain {}", if r.chain_consistent { "consistent" } else { "VIOLATED" });
}

fn cmd_rank(a: RankArgs, guards: Guards, seed: u64) -> Result<bool> {
    let m = read_matrix(&a.input, a.tract.as_deref())?;
    let names = parse_rank_list(&a.ranks)?;
    let opts = RankOptions {
        mode: match a.mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Bounds => Mode::Bounds,
        },
        guards,
        seed,
    };
    let report = compute_report(&m, &names, &opts)?;
    match a.json.as_deref() {
        Some(p) if p == Path::new("-") => println!("{}", serde_json::to_string_pretty(&report)?),
        Some(p) => {
            fs::write(p, serde_json::to_string_pretty(&report)?)?;
            print_report(&report);
        }
        None => print_report(&report),
    }
    Ok(report.chain_consistent)
}

fn cmd_realize(a: RealizeArgs, seed: u64) -> Result<bool> {
    let m = read_matrix(&a.input, None)?;
    let result = match a.kind {
        Kind::Zero => {
            let t = a.bound.unwrap_or_else(|| {
                m.row_vectors()
                    .iter()
                    .map(|r| r.support().len())
                    .min()
                    .unwrap_or(1)
                    .max(1)
            });
            realize_zero_pattern(&m, t)?
        }
        Kind::Sign | Kind::SignAlt => {
            let k = match a.bound {
                Some(k) => k,
                None => {
                    let mut worst = 0;
                    for r in m.row_vectors() {
                        worst = worst.max(sigma(&sign_entries(&r)?));
                    }
                    worst + 1
                }
            };
            if matches!(a.kind, Kind::Sign) {
                realize_sign_pattern(&m, k)?
            } else {
                realize_sign_low_rank_via_alt(&m, k)?
            }
        }
        Kind::Epic => {
            let Some(w) = a.witness.as_deref() else {
                bail!("--kind epic needs --witness");
            };
            epic_lift(&m, &read_matrix(w, None)?, seed)?
        }
    };
    let status = if result.verified { "verified" } else { "NOT verified" };
    let text = format!(
        "# rank {} <= {} {status}\n{}",
        result.actual_rank, result.claimed_rank_bound, result.matrix
    );
    match a.out {
        Some(p) => {
            fs::write(&p, &text)?;
            println!("rank {} <= {} {status}", result.actual_rank, result.claimed_rank_bound);
        }
        None => print!("{text}"),
    }
    Ok(result.verified)
}

fn cmd_verify(json: Option<PathBuf>, guards: Guards) -> Result<bool> {
    let checks = run_golden(&guards);
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &checks {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        println!(
            "{mark} {:<width$}  expected {}  computed {}",
            c.name, c.expected, c.computed
        );
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    println!("{} checks, {failed} failed", checks.len());
    if let Some(p) = json {
        fs::write(p, serde_json::to_string_pretty(&checks)?)?;
    }
    Ok(failed == 0)
}

fn cmd_enumerate(a: EnumerateArgs, guards: Guards) -> Result<bool> {
    let r_max = a.rank_max.unwrap_or(a.n);
    let mut counts = vec![0usize; a.n + 1];
    let mut listing = String::new();
    for m in enumerate_matroids_guarded(a.n, r_max, guards.enumerate)? {
        counts[m.rank()] += 1;
        if a.out.is_some() {
            listing.push_str(&m.to_string());
            listing.push('\n');
        }
    }
    for (r, c) in counts.iter().enumerate().take(r_max.min(a.n) + 1) {
        println!("rank {r}: {c}");
    }
    println!("total: {}", counts.iter().sum::<usize>());
    if let Some(p) = a.out {
        fs::write(p, listing)?;
    }
    Ok(true)
}

fn cmd_solve(input: &Path, tract: Option<&str>, guards: Guards) -> Result<bool> {
    let m = read_matrix(input, tract)?;
    let sols = solve_homogeneous(&m, &guards)?;
    println!("{} nonzero solutions", sols.len());
    for s in sols {
        println!("{s}");
    }
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    let mut guards = Guards::from_env()?;
    if let Some(g) = &cli.guards {
        guards.apply(g)?;
    }
    match cli.command {
        Command::Rank(a) => cmd_rank(a, guards, cli.seed),
        Command::Realize(a) => cmd_realize(a, cli.seed),
        Command::Verify { json } => cmd_verify(json, guards),
        Command::Enumerate(a) => cmd_enumerate(a, guards),
        Command::Solve { input, tract } => cmd_solve(&input, tract.as_deref(), guards),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
