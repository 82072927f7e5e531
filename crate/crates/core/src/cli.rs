//! Command-line front end. [`run`] parses an argument vector, dispatches to
//! the library and returns the exit code together with what should be
//! printed, so the binary and the tests share one code path.
//!
//! Exit codes: 0 success, 1 a verification failed (the report carries the
//! counterexample), 2 usage, malformed input or an exceeded limit.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::algebra::Presentation;
use crate::error::{Error, Result};
use crate::group::{Flavor, GroupElement};
use crate::grouptheory::{derived_series, lower_central_series, FiniteGroupTable, Family};
use crate::hopf::{default_degree_bound, HopfPresentation, DEFAULT_N};
use crate::milnor::{in_dual_span, in_j_basis, DualSymbol, Seq, SeqB};
use crate::partitions::enumerate_compositions;
use crate::sample::GroupSampler;
use crate::verify::{self, check_hopf, HopfCheck, VerifyConfig};
use crate::wire::{group_element_to_json, parse_group_elements, parse_presentation};

#[derive(Parser, Debug)]
#[command(name = "steenrod", version, about = "Steenrod group scheme and dual Steenrod algebra")]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; csv is only available for `sweep`.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InvertMethod {
    Closed,
    Recursive,
    Split,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Series {
    Lower,
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Full,
    Even,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// `α·β = β(α(X))`. Two files, or one file holding an array of two.
    Compose {
        #[arg(long = "in", required = true)]
        inputs: Vec<PathBuf>,
    },
    Invert {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "recursive")]
        method: InvertMethod,
    },
    /// `(α⁻¹β⁻¹)(αβ)`.
    Commutator {
        #[arg(long = "in", required = true)]
        inputs: Vec<PathBuf>,
    },
    Filtration {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Frobenius map to the next level.
    Rho {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Random group elements over a preset.
    Sample {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value = "A_dual")]
        preset: String,
        /// Level passed to the preset (n for `A`, k for `A_angle`, …).
        #[arg(long, default_value_t = 0)]
        level: u32,
        #[arg(long = "N", default_value_t = DEFAULT_N)]
        n_max: usize,
        #[arg(long = "D")]
        degree_bound: Option<i64>,
        #[arg(long, default_value = "base")]
        flavor: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        samples: usize,
    },
    /// Ordered compositions of n.
    Partitions { n: usize },
    /// Lower central or derived series of `G_{p,n}` over `A(n)`.
    Lcs {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// `A` (alias `A2n`) or `A_ev`.
        #[arg(long, default_value = "A")]
        preset: String,
        /// Presentation file used instead of the preset.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long = "D")]
        degree_bound: Option<i64>,
        #[arg(long, value_enum, default_value = "lower")]
        series: Series,
        #[arg(long, value_enum, default_value = "full")]
        family: FamilyArg,
    },
    /// Lower central series over a grid of primes and truncations.
    Sweep {
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        p: Vec<u32>,
        /// Largest n of the grid.
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Hopf-algebra axioms on the generators of a preset.
    Hopf {
        /// One of antipode, coassociativity, cocommutativity, counit,
        /// primitivity, or `all`.
        #[arg(long, default_value = "all")]
        check: String,
        #[arg(long, default_value = "A_dual")]
        preset: String,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long = "N", default_value_t = DEFAULT_N)]
        n_max: usize,
        #[arg(long = "D")]
        degree_bound: Option<i64>,
    },
    Milnor {
        #[command(subcommand)]
        query: MilnorQuery,
    },
    /// Runs the property suites.
    Verify {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long = "N", default_value_t = DEFAULT_N)]
        n_max: usize,
        #[arg(long = "D")]
        degree_bound: Option<i64>,
        /// Restrict to these suites (repeatable).
        #[arg(long)]
        suite: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum MilnorQuery {
    /// Is `τ(E)ξ(R)` a basis monomial of `J<k>`?
    InJ(MilnorArgs),
    /// Is the dual of index `(E, R)` in the spanning set of `(A/J<k>)*`?
    InSpan(MilnorArgs),
}

#[derive(clap::Args, Debug)]
pub struct MilnorArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    k: u32,
    /// `e_0,e_1,…` (empty for p = 2).
    #[arg(long = "E", default_value = "", allow_hyphen_values = true)]
    e: String,
    /// `r_1,r_2,…`.
    #[arg(long = "R", default_value = "")]
    r: String,
}

/// Exit code plus the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: String) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: message,
        }
    }
}

struct Report {
    text: String,
    ok: bool,
}

impl Report {
    fn json<T: Serialize>(value: &T, ok: bool) -> Self {
        let mut text = serde_json::to_string_pretty(value).expect("serializable");
        text.push('\n');
        Report { text, ok }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::usage(text)
            };
        }
    };
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(format!("error: {e}\n")),
    };
    let code = if report.ok { 0 } else { 1 };
    match &cli.out {
        Some(path) => match fs::write(path, &report.text) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome::usage(format!("error: cannot write {}: {e}\n", path.display())),
        },
        None => Outcome {
            code,
            stdout: report.text,
            stderr: String::new(),
        },
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let format = cli.format.unwrap_or(match cli.command {
        Command::Sweep { .. } => Format::Csv,
        _ => Format::Json,
    });
    if format == Format::Csv && !matches!(cli.command, Command::Sweep { .. }) {
        return Err(Error::Parse("csv output is only available for sweep".into()));
    }
    match &cli.command {
        Command::Compose { inputs } => {
            let [a, b] = read_pair(inputs)?;
            Ok(element_report(&a.compose(&b)?))
        }
        Command::Invert { input, method } => {
            let a = read_one(input)?;
            let inv = match method {
                InvertMethod::Closed => a.invert_closed(),
                InvertMethod::Recursive => a.invert_recursive(),
                InvertMethod::Split => a.invert_split()?,
            };
            Ok(element_report(&inv))
        }
        Command::Commutator { inputs } => {
            let [a, b] = read_pair(inputs)?;
            Ok(element_report(&a.commutator(&b)?))
        }
        Command::Filtration { input } => {
            let a = read_one(input)?;
            let level = a.filtration_level();
            Ok(Report::json(
                &json!({
                    "filtration": level.to_string(),
                    "value": level.as_f64(),
                    "abelian_kernel": a.in_abelian_kernel(),
                }),
                true,
            ))
        }
        Command::Rho { input } => Ok(element_report(&read_one(input)?.rho())),
        Command::Sample {
            p,
            k,
            preset,
            level,
            n_max,
            degree_bound,
            flavor,
            seed,
            samples,
        } => {
            let d = degree_bound.unwrap_or_else(|| default_degree_bound(*p));
            let hopf = HopfPresentation::preset(preset, *p, *level, *n_max, d)?;
            let flavor: Flavor = flavor.parse()?;
            let mut sampler = GroupSampler::new(hopf.presentation(), *k, flavor)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let items = (0..*samples)
                .map(|_| sampler.sample(&mut rng).map(|g| group_element_to_json(&g)))
                .collect::<Result<Vec<_>>>()?;
            if items.len() == 1 {
                Ok(Report::json(&items[0], true))
            } else {
                Ok(Report::json(&items, true))
            }
        }
        Command::Partitions { n } => Ok(Report::json(&enumerate_compositions(*n)?, true)),
        Command::Lcs {
            p,
            n,
            preset,
            input,
            degree_bound,
            series,
            family,
        } => {
            let alg = match input {
                Some(path) => parse_presentation(&read_text(path)?)?,
                None => {
                    let d = degree_bound.unwrap_or_else(|| default_degree_bound(*p));
                    lcs_algebra(preset, *p, *n, d)?
                }
            };
            let family = match family {
                FamilyArg::Full => Family::Full,
                FamilyArg::Even => Family::Even,
            };
            let g = FiniteGroupTable::enumerate(&alg, *n, family)?;
            let report = match series {
                Series::Lower => lower_central_series(&g),
                Series::Derived => derived_series(&g),
            };
            Ok(Report::json(&report, report.ok))
        }
        Command::Sweep { p, n } => sweep(p, *n, format),
        Command::Hopf {
            check,
            preset,
            p,
            k,
            n_max,
            degree_bound,
        } => {
            let d = degree_bound.unwrap_or_else(|| default_degree_bound(*p));
            let hopf = HopfPresentation::preset(preset, *p, *k, *n_max, d)?;
            let checks: Vec<HopfCheck> = if check == "all" {
                HopfCheck::ALL.to_vec()
            } else {
                vec![check.parse()?]
            };
            let mut reports = Vec::new();
            let mut all_ok = true;
            for c in checks {
                let (checked, counterexamples) = check_hopf(&hopf, c)?;
                let ok = counterexamples.is_empty();
                all_ok &= ok;
                reports.push(json!({
                    "check": c.name(),
                    "preset": hopf.label(),
                    "degree_bound": d,
                    "checked": checked,
                    "ok": ok,
                    "counterexamples": counterexamples,
                }));
            }
            if reports.len() == 1 {
                Ok(Report::json(&reports[0], all_ok))
            } else {
                Ok(Report::json(&reports, all_ok))
            }
        }
        Command::Milnor { query } => {
            let (args, span) = match query {
                MilnorQuery::InJ(a) => (a, false),
                MilnorQuery::InSpan(a) => (a, true),
            };
            if !crate::algebra::is_prime(args.p) {
                return Err(Error::NotPrime(args.p));
            }
            let e = SeqB::new(&parse_list(&args.e)?)?;
            let r = Seq::new(&parse_list(&args.r)?);
            if args.p == 2 && !e.is_empty() {
                return Err(Error::Parse("E must be empty for p = 2".into()));
            }
            let answer = if span {
                in_dual_span(&DualSymbol::dual_of(args.p, &e, &r), args.k)
            } else {
                in_j_basis(&e, &r, args.k, args.p)
            };
            Ok(Report::json(&answer, true))
        }
        Command::Verify {
            p,
            k,
            seed,
            samples,
            n_max,
            degree_bound,
            suite,
        } => {
            let mut cfg = VerifyConfig::new(*p, *k, *seed, *samples);
            cfg.n_max = *n_max;
            if let Some(d) = degree_bound {
                cfg.degree_bound = *d;
            }
            let known = verify::suite_names();
            if let Some(bad) = suite.iter().find(|s| !known.contains(&s.as_str())) {
                return Err(Error::Parse(format!("unknown suite {bad}")));
            }
            let report = verify::run(&cfg, suite)?;
            Ok(Report::json(&report, report.ok))
        }
    }
}

fn lcs_algebra(preset: &str, p: u32, n: usize, d: i64) -> Result<Arc<Presentation>> {
    let hopf = match preset {
        "A" | "A2n" => HopfPresentation::a_n(p, n.max(1), d)?,
        "A_ev" => HopfPresentation::a_ev_n(p, n.max(1), d)?,
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    Ok(Arc::clone(hopf.presentation()))
}

#[derive(Serialize)]
struct SweepRow {
    p: u32,
    n: usize,
    algebra: String,
    #[serde(rename = "|G|")]
    order: Option<usize>,
    class: Option<usize>,
    bound: usize,
    ok: Option<bool>,
}

/// One row per `(p, n, algebra)`; groups over the size limit get empty
/// order, class and ok cells.
fn sweep(primes: &[u32], n_max: usize, format: Format) -> Result<Report> {
    let mut rows = Vec::new();
    for &p in primes {
        if !crate::algebra::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        for n in 1..=n_max {
            let mut cases = vec![("", Family::Full)];
            if p != 2 {
                cases.push((":ev", Family::Even));
            }
            for (suffix, family) in cases {
                let alg = lcs_algebra("A", p, n, default_degree_bound(p))?;
                let bound = match family {
                    Family::Full => n + 1,
                    Family::Even => n,
                };
                let algebra = format!("A({n}){suffix}");
                let row = match FiniteGroupTable::enumerate(&alg, n, family) {
                    Ok(g) => {
                        let r = lower_central_series(&g);
                        SweepRow {
                            p,
                            n,
                            algebra,
                            order: Some(r.order),
                            class: r.class,
                            bound,
                            ok: Some(r.ok),
                        }
                    }
                    Err(Error::LimitExceeded { .. }) => SweepRow {
                        p,
                        n,
                        algebra,
                        order: None,
                        class: None,
                        bound,
                        ok: None,
                    },
                    Err(e) => return Err(e),
                };
                rows.push(row);
            }
        }
    }
    let ok = rows.iter().all(|r| r.ok != Some(false));
    if format == Format::Json {
        return Ok(Report::json(&rows, ok));
    }
    let cell = |v: Option<String>| v.unwrap_or_default();
    let mut text = String::from("p,n,algebra,|G|,class,bound,ok\n");
    for r in &rows {
        text.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.p,
            r.n,
            r.algebra,
            cell(r.order.map(|x| x.to_string())),
            cell(r.class.map(|x| x.to_string())),
            r.bound,
            cell(r.ok.map(|x| x.to_string())),
        ));
    }
    Ok(Report { text, ok })
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(format!("`{t}`: {e}"))))
        .collect()
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_all(paths: &[PathBuf]) -> Result<Vec<GroupElement>> {
    let mut out = Vec::new();
    for path in paths {
        out.extend(parse_group_elements(&read_text(path)?)?);
    }
    Ok(out)
}

fn read_one(path: &Path) -> Result<GroupElement> {
    let mut items = read_all(&[path.to_path_buf()])?;
    if items.len() != 1 {
        return Err(Error::Parse(format!("expected one group element, got {}", items.len())));
    }
    Ok(items.remove(0))
}

fn read_pair(paths: &[PathBuf]) -> Result<[GroupElement; 2]> {
    let items = read_all(paths)?;
    let n = items.len();
    <[GroupElement; 2]>::try_from(items)
        .map_err(|_| Error::Parse(format!("expected two group elements, got {n}")))
}

fn element_report(g: &GroupElement) -> Report {
    Report::json(&group_element_to_json(g), true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn partitions_of_three() {
        let out = run(["steenrod", "partitions", "3"]);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 4);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(["steenrod", "frobnicate"]).code, 2);
        assert_eq!(run(["steenrod", "partitions", "0"]).code, 2);
        assert_eq!(run(["steenrod", "partitions", "3", "--format", "csv"]).code, 2);
        assert_eq!(run(["steenrod", "milnor", "in-j", "--p", "4", "--k", "0"]).code, 2);
    }

    #[test]
    fn milnor_queries() {
        let yes = run(["steenrod", "milnor", "in-j", "--p", "3", "--k", "0", "--E", "1"]);
        assert_eq!(yes.stdout.trim(), "true");
        let no = run(["steenrod", "milnor", "in-span", "--p", "3", "--k", "0", "--E", "1"]);
        assert_eq!(no.stdout.trim(), "false");
        let r = run(["steenrod", "milnor", "in-j", "--p", "2", "--k", "1", "--R", "3,1"]);
        assert_eq!(r.stdout.trim(), "false");
    }
}
