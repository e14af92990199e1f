//! Command-line surface for the exact class-number and intersection-number
//! machinery: tables, cusp reports, involutions, and batch verification.
//!
//! Exit codes: 0 on success, 1 when a verification suite finds a failing
//! proven identity or table mismatch, 2 on usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use hurwitz_core::arith::{gcd, is_square, ExactRational};
use hurwitz_core::cusps::{
    classify_cusps, cusps, gen_atkin_lehner, normalizes_g0, normalizes_gamma0,
    normalizes_gamma0_mprime,
};
use hurwitz_core::goldens::{self, GoldenEntry};
use hurwitz_core::hurwitz::hurwitz_level;
use hurwitz_core::intersect::{
    affine_intersection, cusp_multiplicity, delta_m, global_intersection, hurwitz_eichler_rhs,
    s_table, verify_conjecture, verify_identity,
};
use hurwitz_core::{arith, is_genus_zero_level};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "hurwitz",
    about = "Exact level Hurwitz class numbers, cusps, involutions and \
             intersection numbers for the genus-zero modular curves X_0(M)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// One-parameter identities against the branch divisor sums.
    Eichler,
    /// Class-number cells against the bundled (or given) fixtures.
    Tables,
    /// Sum cells S^M(N) against the bundled (or given) fixtures.
    Sums,
    /// Square-degree reports (failures warn, they do not fail the run).
    Conjecture,
    /// global = affine + cusp multiplicities, exactly.
    Decompose,
}

#[derive(Subcommand)]
enum Command {
    /// Print H^M(D) as an exact fraction.
    ClassNumber {
        #[arg(long)]
        level: i64,
        #[arg(long, allow_negative_numbers = true)]
        disc: i64,
    },
    /// Print H^M(D) for D = 0, 3 mod 4 up to a bound.
    Table {
        #[arg(long)]
        level: i64,
        #[arg(long, default_value_t = 100)]
        max_disc: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the cusps of X_0(M), optionally with their classification.
    Cusps {
        #[arg(long)]
        level: i64,
        #[arg(long)]
        classify: bool,
    },
    /// Print the generalized Atkin-Lehner involution W_m and its
    /// normalizer verdicts.
    Involution {
        #[arg(long)]
        level: i64,
        #[arg(long)]
        m: i64,
    },
    /// Print global, cusp and affine intersection numbers of T_N1 and T_N2.
    Intersect {
        #[arg(long)]
        level: i64,
        #[arg(long)]
        n1: i64,
        #[arg(long)]
        n2: i64,
    },
    /// Print S^M(N) for N up to a bound (level 0 = classical).
    SumTable {
        #[arg(long)]
        level: i64,
        #[arg(long, default_value_t = 25)]
        max_n: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite; exits 1 if a proven check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        level: Option<i64>,
        #[arg(long, default_value_t = 50)]
        max_n: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Worker threads for the sweep (0 = all available cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Directory with alternate fixture CSVs (defaults to the bundled
        /// tables).
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn require_genus_zero(level: i64) -> Result<(), String> {
    if is_genus_zero_level(level) {
        Ok(())
    } else {
        Err(format!("level {level} is not genus zero"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => usage_error(&message),
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::ClassNumber { level, disc } => {
            let value = hurwitz_level(level, disc).map_err(|e| e.to_string())?;
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Table {
            level,
            max_disc,
            format,
        } => {
            require_genus_zero(level)?;
            let discs: Vec<i64> = (0..=max_disc).filter(|d| d % 4 == 0 || d % 4 == 3).collect();
            let rows: Vec<(i64, ExactRational)> = discs
                .iter()
                .map(|&d| Ok((d, hurwitz_level(level, d).map_err(|e| e.to_string())?)))
                .collect::<Result<_, String>>()?;
            print_value_rows("disc", level, &rows, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Cusps { level, classify } => {
            require_genus_zero(level)?;
            if classify {
                let partition = classify_cusps(level);
                for c in &partition.in_both {
                    println!("{c}\tstratum n={}\tnormalizes: Gamma_0 and G_0", c.n);
                }
                for c in &partition.gamma0_only {
                    println!("{c}\tstratum n={}\tnormalizes: Gamma_0 only", c.n);
                }
                for c in &partition.outside {
                    println!("{c}\tstratum n={}\tnormalizes: neither", c.n);
                }
            } else {
                for c in cusps(level) {
                    println!("{c}\tstratum n={}\tscaled {}/{}", c.n, c.m_scaled, level);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Involution { level, m } => {
            require_genus_zero(level)?;
            let w = gen_atkin_lehner(level, m).map_err(|e| e.to_string())?;
            let (f, _) = arith::squarefree_decompose(level);
            let m_prime = level / gcd(f, m).max(1);
            println!("W_{m} at level {level}: {w}");
            println!("scale D = {}", w.scale);
            println!(
                "normalizes Gamma_0({level}): {}",
                yes_no(normalizes_gamma0(level, m).map_err(|e| e.to_string())?)
            );
            println!(
                "normalizes G_0({level}): {}",
                yes_no(normalizes_g0(level, m).map_err(|e| e.to_string())?)
            );
            println!(
                "normalizes diagonal-congruence subgroup mod {m_prime}: {}",
                yes_no(normalizes_gamma0_mprime(level, m_prime, m).map_err(|e| e.to_string())?)
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Intersect { level, n1, n2 } => {
            require_genus_zero(level)?;
            let global = global_intersection(n1, n2).map_err(|e| e.to_string())?;
            let classes = cusps(level);
            let mut cusp_total = 0;
            for s in &classes {
                for t in &classes {
                    cusp_total += cusp_multiplicity(level, s, t, n1, n2).map_err(|e| e.to_string())?;
                }
            }
            let affine = affine_intersection(level, n1, n2).map_err(|e| e.to_string())?;
            println!("global (compactified surface): {global}");
            println!("cusp contribution:            {cusp_total}");
            println!("affine (away from cusps):     {affine}");
            match delta_m(level, n1, n2) {
                Ok(delta) => println!("delta_{level}({n1}, {n2}) = {delta}"),
                Err(_) => println!("delta_{level}: undefined here (dedicated level-25 branch)"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::SumTable {
            level,
            max_n,
            format,
        } => {
            if level != 0 {
                require_genus_zero(level)?;
            }
            let rows = s_table(level, max_n).map_err(|e| e.to_string())?;
            print_value_rows("n", level.max(1), &rows, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            level,
            max_n,
            format,
            jobs,
            fixtures,
        } => verify(suite, level, max_n, format, jobs, fixtures),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn print_value_rows(key_name: &str, level: i64, rows: &[(i64, ExactRational)], format: Format) {
    match format {
        Format::Text => {
            for (key, value) in rows {
                println!("{key}\t{value}");
            }
        }
        Format::Csv => {
            println!("{key_name},value_num,value_den");
            for (key, value) in rows {
                println!("{key},{},{}", value.numer(), value.denom());
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|(key, value)| {
                    serde_json::json!({
                        key_name: key,
                        "num": value.numer().to_string(),
                        "den": value.denom().to_string(),
                    })
                })
                .collect();
            let body = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "level": level,
                "rows": rows,
            });
            println!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
        }
    }
}

/// One verification case: a label, a closure outcome, and the detail line.
struct CaseResult {
    label: String,
    pass: bool,
    detail: String,
    /// Conjectural cases report failures without failing the run.
    binding: bool,
}

fn sweep_levels(level: Option<i64>) -> Result<Vec<i64>, String> {
    match level {
        Some(m) => {
            require_genus_zero(m)?;
            Ok(vec![m])
        }
        None => Ok(hurwitz_core::GENUS_ZERO_LEVELS
            .iter()
            .copied()
            .filter(|&m| m >= 2)
            .collect()),
    }
}

fn load_fixtures(
    fixtures: Option<PathBuf>,
) -> Result<(Vec<GoldenEntry>, Vec<GoldenEntry>), String> {
    match fixtures {
        Some(dir) => goldens::load_from_dir(&dir).map_err(|e| e.to_string()),
        None => Ok((goldens::class_number_table(), goldens::sum_table())),
    }
}

fn verify(
    suite: Suite,
    level: Option<i64>,
    max_n: i64,
    format: Format,
    jobs: usize,
    fixtures: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let levels = sweep_levels(level)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| e.to_string())?;

    // Build the case list up front so output order is deterministic.
    let results: Vec<CaseResult> = match suite {
        Suite::Eichler => {
            let cases: Vec<(i64, i64)> = levels
                .iter()
                .flat_map(|&m| {
                    (2..=max_n)
                        .filter(move |n| gcd(m, *n) == 1 && !is_square(*n))
                        .map(move |n| (m, n))
                })
                .collect();
            pool.install(|| {
                cases
                    .par_iter()
                    .map(|&(m, n)| {
                        let report = verify_identity(m, 1, n).expect("validated case");
                        let (branch, label) = hurwitz_eichler_rhs(m, n).expect("validated case");
                        let branch_ok = report.rhs == ExactRational::from_integer(branch);
                        CaseResult {
                            label: format!("eichler M={m} N={n}"),
                            pass: report.pass && branch_ok,
                            detail: format!("lhs={} rhs={} [{label}]", report.lhs, report.rhs),
                            binding: true,
                        }
                    })
                    .collect()
            })
        }
        Suite::Tables => {
            let (class_table, _) = load_fixtures(fixtures)?;
            let cells: Vec<GoldenEntry> = class_table
                .into_iter()
                .filter(|e| level.is_none_or(|m| e.level == m))
                .collect();
            pool.install(|| {
                cells
                    .par_iter()
                    .map(|entry| {
                        let computed = hurwitz_level(entry.level, entry.key).expect("table cell");
                        CaseResult {
                            label: format!("H^{}({})", entry.level, entry.key),
                            pass: computed == entry.value,
                            detail: format!("computed={computed} table={}", entry.value),
                            binding: true,
                        }
                    })
                    .collect()
            })
        }
        Suite::Sums => {
            let (_, sum_table_cells) = load_fixtures(fixtures)?;
            let cells: Vec<GoldenEntry> = sum_table_cells
                .into_iter()
                .filter(|e| level.is_none_or(|m| e.level == m))
                .collect();
            pool.install(|| {
                cells
                    .par_iter()
                    .map(|entry| {
                        let computed = s_table(entry.level, entry.key)
                            .expect("table cell")
                            .pop()
                            .expect("nonempty")
                            .1;
                        CaseResult {
                            label: format!("S^{}({})", entry.level, entry.key),
                            pass: computed == entry.value,
                            detail: format!("computed={computed} table={}", entry.value),
                            binding: true,
                        }
                    })
                    .collect()
            })
        }
        Suite::Conjecture => {
            let cases: Vec<(i64, i64)> = levels
                .iter()
                .flat_map(|&m| {
                    (1..=max_n)
                        .filter(move |n| gcd(m, *n) == 1 && is_square(*n))
                        .map(move |n| (m, n))
                })
                .collect();
            pool.install(|| {
                cases
                    .par_iter()
                    .map(|&(m, n)| {
                        let report = verify_conjecture(m, n).expect("validated case");
                        CaseResult {
                            label: format!("conjecture M={m} N={n}"),
                            pass: report.pass,
                            detail: format!(
                                "lhs={} rhs={} [{}]",
                                report.lhs, report.rhs, report.case_label
                            ),
                            binding: false,
                        }
                    })
                    .collect()
            })
        }
        Suite::Decompose => {
            let mut cases: Vec<(i64, i64, i64)> = Vec::new();
            let all = match level {
                Some(m) => vec![m],
                None => hurwitz_core::GENUS_ZERO_LEVELS.to_vec(),
            };
            for m in all {
                require_genus_zero(m)?;
                for n1 in (1..=max_n).filter(|n| gcd(m, *n) == 1) {
                    for n2 in (1..=max_n).filter(|n| gcd(m, *n) == 1) {
                        if !is_square(n1 * n2) {
                            cases.push((m, n1, n2));
                        }
                    }
                }
            }
            pool.install(|| {
                cases
                    .par_iter()
                    .map(|&(m, n1, n2)| {
                        let classes = cusps(m);
                        let mut cusp_total = 0;
                        for s in &classes {
                            for t in &classes {
                                cusp_total +=
                                    cusp_multiplicity(m, s, t, n1, n2).expect("validated case");
                            }
                        }
                        let global = global_intersection(n1, n2).expect("positive degrees");
                        let affine = affine_intersection(m, n1, n2).expect("validated case");
                        CaseResult {
                            label: format!("decompose M={m} N1={n1} N2={n2}"),
                            pass: global == affine + cusp_total,
                            detail: format!("global={global} affine={affine} cusps={cusp_total}"),
                            binding: true,
                        }
                    })
                    .collect()
            })
        }
    };

    let passed = results.iter().filter(|r| r.pass).count();
    let binding_failures = results.iter().filter(|r| !r.pass && r.binding).count();
    let warnings = results.iter().filter(|r| !r.pass && !r.binding).count();

    match format {
        Format::Text => {
            for r in &results {
                let status = if r.pass {
                    "PASS"
                } else if r.binding {
                    "FAIL"
                } else {
                    "WARN"
                };
                println!("{status} {} {}", r.label, r.detail);
            }
            println!(
                "summary: {passed}/{} passed, {binding_failures} failed, {warnings} warnings",
                results.len()
            );
        }
        Format::Csv => {
            println!("case,status,detail");
            for r in &results {
                let status = if r.pass {
                    "pass"
                } else if r.binding {
                    "fail"
                } else {
                    "warn"
                };
                println!("{},{status},{}", r.label, r.detail.replace(',', ";"));
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct JsonCase<'a> {
                case: &'a str,
                pass: bool,
                binding: bool,
                detail: &'a str,
            }
            let cases: Vec<JsonCase> = results
                .iter()
                .map(|r| JsonCase {
                    case: &r.label,
                    pass: r.pass,
                    binding: r.binding,
                    detail: &r.detail,
                })
                .collect();
            let body = serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "suite": match suite {
                    Suite::Eichler => "eichler",
                    Suite::Tables => "tables",
                    Suite::Sums => "sums",
                    Suite::Conjecture => "conjecture",
                    Suite::Decompose => "decompose",
                },
                "passed": passed,
                "failed": binding_failures,
                "warnings": warnings,
                "cases": cases,
            });
            println!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
        }
    }

    if binding_failures > 0 {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
