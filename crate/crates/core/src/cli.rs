//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 argument or cap error.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::json;

use crate::arrangement::{zaslavsky_regions, CharPolyOptions, TypeCSubarrangement, FINITE_FIELD_N_CAP};
use crate::combinat::{boxed_coeffs, signed_odd_coeffs};
use crate::error::Error;
use crate::exactmath::{BigInt, Polynomial};
use crate::formulas::{
    chi, chi_boxed_threshold, chi_boxed_via_egf, chi_coefficient, region_count, regions_boxed,
    regions_boxed_via_egf, regions_threshold, regions_threshold_eulerian, FamilyId,
};
use crate::graphs::{enumerate_colored, enumerate_threshold_graphs, threshold_region_dictionary};
use crate::oracle::{compare_sets, enumerate_regions_with, OracleOptions, SignVector};
use crate::orders::{enumerate_half_orders, enumerate_threshold_orders, threshold_order_to_point};
use crate::reference::table1_row;

/// Largest `n` accepted by the enumeration-based count methods.
pub const ENUMERATION_N_CAP: usize = 7;
/// Largest `n` accepted by `enumerate` without `--cap-override`.
pub const ENUMERATE_OUTPUT_N_CAP: usize = 6;
/// Largest `n_max` accepted by `table`.
pub const TABLE_N_MAX: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "arratlas", version, about = "Regions of the threshold and boxed threshold arrangements")]
pub struct Cli {
    /// Worker threads for the sharded kernels.
    #[arg(long, global = true, env = "ARRATLAS_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the characteristic polynomial as JSON.
    Chi {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ChiMethod::Formula)]
        method: ChiMethod,
        /// First modulus of the interpolation schedule (odd).
        #[arg(long)]
        q0: Option<u64>,
        /// Lift the dimension cap of the finite-field count.
        #[arg(long)]
        cap_override: bool,
    },
    /// Print the number of regions.
    Count {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = CountMethod::Formula)]
        method: CountMethod,
        /// Lift the enumeration and oracle caps.
        #[arg(long)]
        cap_override: bool,
    },
    /// Characteristic polynomials and region counts of BT_n for 2 <= n <= n_max.
    Table {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Stream region labels as JSON lines.
    Enumerate {
        #[arg(long, value_enum)]
        what: What,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = EnumFormat::Jsonl)]
        format: EnumFormat,
        #[arg(long)]
        cap_override: bool,
    },
    /// Run a cross-validation suite; one JSON line per check.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        n_max: Option<usize>,
        /// Random sub-arrangements per dimension (shift suite).
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cap_override: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Threshold,
    Boxed,
}

impl From<Family> for FamilyId {
    fn from(f: Family) -> Self {
        match f {
            Family::Threshold => FamilyId::Threshold,
            Family::Boxed => FamilyId::BoxedThreshold,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ChiMethod {
    Formula,
    Interpolate,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CountMethod {
    Formula,
    Zaslavsky,
    Egf,
    Orders,
    Graphs,
    Oracle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EnumFormat {
    Jsonl,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum What {
    Orders,
    Graphs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Table1,
    Shift,
    Bijection,
    Coefficients,
    Egf,
    Eulerian,
}

enum Failure {
    Usage(String),
    Mismatch(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::VerificationModulusMismatch { .. } => Failure::Mismatch(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

pub fn run_from_env() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let code = run(std::env::args_os(), &mut out, &mut stderr.lock());
    let _ = out.flush();
    code
}

/// Parses `args` (program name first) and executes; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let result = match cli.jobs {
        Some(0) => Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => {
                // the pool runs the command on a worker thread; stdout locks are not Send
                let mut buf = Vec::new();
                let r = pool.install(|| dispatch(cli.command, &mut buf));
                out.write_all(&buf).map_err(Failure::Io).and(r)
            }
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => dispatch(cli.command, out),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Mismatch(msg)) => {
            let _ = writeln!(err, "mismatch: {msg}");
            1
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Chi {
            family,
            n,
            method,
            q0,
            cap_override,
        } => cmd_chi(family.into(), n, method, q0, cap_override, out),
        Command::Count {
            family,
            n,
            method,
            cap_override,
        } => cmd_count(family.into(), n, method, cap_override, out),
        Command::Table { n_max, format } => cmd_table(n_max, format, out),
        Command::Enumerate {
            what,
            n,
            format: EnumFormat::Jsonl,
            cap_override,
        } => cmd_enumerate(what, n, cap_override, out),
        Command::Verify {
            suite,
            n_max,
            trials,
            seed,
            cap_override,
        } => cmd_verify(suite, n_max, trials, seed, cap_override, out),
    }
}

fn arrangement_of(family: FamilyId, n: usize) -> TypeCSubarrangement {
    match family {
        FamilyId::Threshold => TypeCSubarrangement::threshold(n),
        FamilyId::BoxedThreshold => TypeCSubarrangement::boxed_threshold(n),
    }
}

fn cap_check(what: &'static str, n: usize, cap: usize, cap_override: bool) -> Outcome {
    if n > cap && !cap_override {
        return Err(Error::CapExceeded { what, n, cap }.into());
    }
    Ok(())
}

fn cmd_chi(
    family: FamilyId,
    n: usize,
    method: ChiMethod,
    q0: Option<u64>,
    cap_override: bool,
    out: &mut dyn Write,
) -> Outcome {
    let poly = match method {
        ChiMethod::Formula => chi(family, n),
        ChiMethod::Interpolate => {
            let opts = CharPolyOptions {
                q0,
                n_cap: (!cap_override).then_some(FINITE_FIELD_N_CAP),
            };
            let counted = arrangement_of(family, n).char_poly_with(&opts)?;
            if counted != chi(family, n) {
                return Err(Failure::Mismatch(format!(
                    "interpolated {counted} differs from closed form {}",
                    chi(family, n)
                )));
            }
            counted
        }
    };
    writeln!(out, "{}", serde_json::to_string(&poly).map_err(Error::from)?)?;
    Ok(())
}

fn count_regions(family: FamilyId, n: usize, method: CountMethod, cap_override: bool) -> Result<BigInt, Failure> {
    Ok(match method {
        CountMethod::Formula => region_count(family, n),
        CountMethod::Zaslavsky => zaslavsky_regions(&chi(family, n), n),
        CountMethod::Egf => {
            if family != FamilyId::BoxedThreshold {
                return Err(Failure::Usage("the egf method is only defined for --family boxed".into()));
            }
            regions_boxed_via_egf(n)?.swap_remove(n)
        }
        CountMethod::Orders => {
            cap_check("order enumeration", n, ENUMERATION_N_CAP, cap_override)?;
            match family {
                FamilyId::Threshold => BigInt::from(enumerate_threshold_orders(n).len()),
                FamilyId::BoxedThreshold => BigInt::from(enumerate_half_orders(n)?.count()),
            }
        }
        CountMethod::Graphs => {
            cap_check("graph enumeration", n, ENUMERATION_N_CAP, cap_override)?;
            match family {
                FamilyId::Threshold => BigInt::from(enumerate_threshold_graphs(n).count()),
                FamilyId::BoxedThreshold => BigInt::from(enumerate_colored(n).count()),
            }
        }
        CountMethod::Oracle => {
            let opts = if cap_override {
                OracleOptions { point_cap: None }
            } else {
                OracleOptions::default()
            };
            BigInt::from(enumerate_regions_with(&arrangement_of(family, n), &opts)?.len())
        }
    })
}

fn cmd_count(family: FamilyId, n: usize, method: CountMethod, cap_override: bool, out: &mut dyn Write) -> Outcome {
    let r = count_regions(family, n, method, cap_override)?;
    writeln!(out, "{r}")?;
    Ok(())
}

fn cmd_table(n_max: usize, format: TableFormat, out: &mut dyn Write) -> Outcome {
    if !(2..=TABLE_N_MAX).contains(&n_max) {
        return Err(Failure::Usage(format!("--n-max must be in 2..={TABLE_N_MAX}")));
    }
    let rows: Vec<(usize, Polynomial, BigInt)> = (2..=n_max)
        .map(|n| Ok((n, chi_boxed_threshold(n), regions_boxed(n)?)))
        .collect::<Result<_, Error>>()?;
    match format {
        TableFormat::Csv => {
            writeln!(out, "n,coeffs,regions")?;
            for (n, p, r) in &rows {
                let coeffs: Vec<String> = p.coeffs().iter().map(BigInt::to_string).collect();
                writeln!(out, "{n},{},{r}", coeffs.join(" "))?;
            }
        }
        TableFormat::Json => {
            let arr: Vec<serde_json::Value> = rows
                .iter()
                .map(|(n, p, r)| {
                    json!({
                        "n": n,
                        "coeffs": p.coeffs().iter().map(BigInt::to_string).collect::<Vec<_>>(),
                        "regions": r.to_string(),
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::Value::Array(arr))?;
        }
    }
    Ok(())
}

fn cmd_enumerate(what: What, n: usize, cap_override: bool, out: &mut dyn Write) -> Outcome {
    cap_check("enumerate output", n, ENUMERATE_OUTPUT_N_CAP, cap_override)?;
    match what {
        What::Orders => {
            for h in enumerate_half_orders(n)? {
                writeln!(out, "{}", serde_json::to_string(&h).map_err(Error::from)?)?;
            }
        }
        What::Graphs => {
            for g in enumerate_colored(n) {
                writeln!(out, "{}", serde_json::to_string(&g).map_err(Error::from)?)?;
            }
        }
    }
    Ok(())
}

/// Collects per-check results and prints each as one JSON line.
struct Checks<'a> {
    suite: &'static str,
    out: &'a mut dyn Write,
    failed: usize,
}

impl<'a> Checks<'a> {
    fn record(&mut self, check: String, ok: bool, detail: serde_json::Value) -> io::Result<()> {
        if !ok {
            self.failed += 1;
        }
        let line = json!({ "suite": self.suite, "check": check, "ok": ok, "detail": detail });
        writeln!(self.out, "{line}")
    }

    fn finish(self) -> Outcome {
        if self.failed == 0 {
            Ok(())
        } else {
            Err(Failure::Mismatch(format!("{} check(s) failed in suite {}", self.failed, self.suite)))
        }
    }
}

fn strings(p: &Polynomial) -> Vec<String> {
    p.coeffs().iter().map(BigInt::to_string).collect()
}

fn cmd_verify(
    suite: Suite,
    n_max: Option<usize>,
    trials: usize,
    seed: u64,
    cap_override: bool,
    out: &mut dyn Write,
) -> Outcome {
    let (name, default_max, cap) = match suite {
        Suite::Table1 => ("table1", 10, 10),
        Suite::Shift => ("shift", 4, 5),
        Suite::Bijection => ("bijection", 4, 5),
        Suite::Coefficients => ("coefficients", 8, 30),
        Suite::Egf => ("egf", 8, 30),
        Suite::Eulerian => ("eulerian", 12, 60),
    };
    let n_max = n_max.unwrap_or(default_max);
    cap_check(name, n_max, cap, cap_override)?;
    let mut checks = Checks {
        suite: name,
        out,
        failed: 0,
    };
    match suite {
        Suite::Table1 => {
            for n in 2..=n_max {
                let row = table1_row(n).ok_or_else(|| Failure::Usage(format!("no reference row for n = {n}")))?;
                let expected = Polynomial::from_i64(row.coeffs);
                let p = chi_boxed_threshold(n);
                let r = regions_boxed(n)?;
                let ok = p == expected && r == BigInt::from(row.regions) && zaslavsky_regions(&p, n) == r;
                checks.record(
                    format!("n={n}"),
                    ok,
                    json!({ "coeffs": strings(&p), "regions": r.to_string(), "expected_regions": row.regions.to_string() }),
                )?;
            }
        }
        Suite::Shift => {
            let mut rng = StdRng::seed_from_u64(seed);
            let shift = BigInt::from(2);
            for n in 2..=n_max {
                for trial in 0..trials {
                    let arr = TypeCSubarrangement::random_type_c(n, &mut rng);
                    let plain = arr.char_poly()?;
                    let boxed = arr.boxed()?.char_poly()?;
                    let ok = boxed == plain.shift(&shift);
                    checks.record(
                        format!("n={n} trial={trial}"),
                        ok,
                        json!({ "hyperplanes": arr.len(), "chi": strings(&plain), "chi_boxed": strings(&boxed) }),
                    )?;
                }
            }
        }
        Suite::Bijection => {
            let opts = OracleOptions::default();
            for n in 2..=n_max {
                let boxed = enumerate_regions_with(&TypeCSubarrangement::boxed_threshold(n), &opts)?;
                let rep = compare_sets(&boxed, enumerate_half_orders(n)?.map(|h| h.region()));
                checks.record(format!("orders n={n}"), rep.ok, serde_json::to_value(&rep).map_err(Error::from)?)?;
                let rep = compare_sets(&boxed, enumerate_colored(n).map(|g| g.region()));
                checks.record(format!("graphs n={n}"), rep.ok, serde_json::to_value(&rep).map_err(Error::from)?)?;

                let t = TypeCSubarrangement::threshold(n);
                let plain = enumerate_regions_with(&t, &opts)?;
                let labels: Vec<SignVector> = enumerate_threshold_orders(n)
                    .iter()
                    .map(|o| SignVector::of_point(&t, &threshold_order_to_point(o)))
                    .collect::<Result<_, Error>>()?;
                let rep = compare_sets(&plain, labels);
                checks.record(format!("threshold orders n={n}"), rep.ok, serde_json::to_value(&rep).map_err(Error::from)?)?;
                let labels: Vec<SignVector> = enumerate_threshold_graphs(n)
                    .map(|g| threshold_region_dictionary(&g))
                    .collect::<Result<_, Error>>()?;
                let rep = compare_sets(&plain, labels);
                checks.record(format!("threshold graphs n={n}"), rep.ok, serde_json::to_value(&rep).map_err(Error::from)?)?;
            }
        }
        Suite::Coefficients => {
            for family in [FamilyId::Threshold, FamilyId::BoxedThreshold] {
                for n in 0..=n_max {
                    let p = chi(family, n);
                    let from_formula: Vec<BigInt> = (0..=n).map(|j| chi_coefficient(family, n, j)).collect();
                    let expanded: Vec<BigInt> = (0..=n).map(|j| p.coeff(j)).collect();
                    checks.record(
                        format!("{family:?} n={n}"),
                        from_formula == expanded,
                        json!({ "coeffs": strings(&p) }),
                    )?;
                }
            }
            for k in 0..=n_max {
                let b = boxed_coeffs(k);
                let c = signed_odd_coeffs(k + 1);
                let mut prefix = BigInt::zero();
                let ok = (0..=k).all(|j| {
                    prefix += &c[j];
                    b[j] == -prefix.clone()
                });
                checks.record(format!("prefix relation k={k}"), ok, json!({}))?;
            }
        }
        Suite::Egf => {
            let series = regions_boxed_via_egf(n_max)?;
            for (n, v) in series.iter().enumerate() {
                let expected = region_count(FamilyId::BoxedThreshold, n);
                checks.record(
                    format!("regions n={n}"),
                    *v == expected,
                    json!({ "egf": v.to_string(), "formula": expected.to_string() }),
                )?;
            }
            for t in [3i64, 5, 7] {
                let values = chi_boxed_via_egf(t, n_max)?;
                for (n, v) in values.iter().enumerate() {
                    let expected = chi_boxed_threshold(n).eval_i64(t);
                    checks.record(
                        format!("chi t={t} n={n}"),
                        *v == expected,
                        json!({ "egf": v.to_string(), "polynomial": expected.to_string() }),
                    )?;
                }
            }
        }
        Suite::Eulerian => {
            for n in 2..=n_max {
                let e = regions_threshold_eulerian(n)?;
                let r = regions_threshold(n);
                checks.record(
                    format!("n={n}"),
                    e == r,
                    json!({ "eulerian": e.to_string(), "ordered_bell": r.to_string() }),
                )?;
            }
        }
    }
    checks.finish()
}
