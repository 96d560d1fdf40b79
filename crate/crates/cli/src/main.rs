use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

use specht_core::arith::PrimeP;
use specht_core::blocks::BlockVector;
use specht_core::constructions::{
    case1_u, case2_u, main_u, three_part_dim_check, three_part_search, Case1Params, Case2Params, Family, Witness,
};
use specht_core::designs::{admissible, construct_design, solve_design_oracle, verify_design};
use specht_core::selftest;
use specht_core::specht::{dim_m, dim_specht, h0_nonzero, hemmer_check, Composition, HemmerReport, TabloidVector};
use specht_core::wire::{from_json, to_json, DesignRecord};
use specht_core::Error;

#[derive(Parser)]
#[command(name = "specht", version, about = "Integral designs and Hemmer witnesses for Specht modules")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest permutation module to enumerate.
    #[arg(long, global = true, env = "SPECHT_GUARD", default_value_t = specht_core::specht::DEFAULT_TABLOID_GUARD)]
    guard: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build an integral design from (v, l, t, λ_0).
    DesignConstruct {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        lambda0: BigInt,
        /// Use the stacked integer solver instead of the pod induction.
        #[arg(long)]
        oracle: bool,
    },
    /// Check a design JSON file.
    DesignVerify {
        #[arg(long)]
        input: PathBuf,
    },
    /// First two-part family, shape (r p^n, p^n).
    UCase1 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u64,
    },
    /// Second two-part family, shape (a, p^n).
    UCase2 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: u64,
    },
    /// Design-based witness for the shape (a, b).
    UMain {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        p: u64,
    },
    /// Run Hemmer's conditions on a tabloid-vector JSON file.
    HemmerCheck {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: u64,
    },
    /// Module dimensions for a shape such as 3,2,1.
    Dims {
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<usize>,
    },
    /// Search the three-row lattice for a witness.
    Search3 {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        p: u64,
    },
    /// Run the verification grid.
    Selftest,
}

struct Output {
    body: String,
    code: u8,
}

impl Output {
    fn new(body: String, ok: bool) -> Self {
        Output { body, code: if ok { 0 } else { 1 } }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::GuardExceeded { .. } | Error::Internal(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.command, &cli.global);
    match result {
        Ok(out) => {
            if let Some(path) = &cli.global.out {
                if let Err(e) = fs::write(path, &out.body) {
                    eprintln!("specht: cannot write {}: {e}", path.display());
                    return ExitCode::from(3);
                }
            } else {
                print!("{}", out.body);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("specht: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn prime(p: u64) -> Result<PrimeP, Error> {
    PrimeP::new(p)
}

fn read_input(path: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn guard_shape(shape: &Composition, guard: u64) -> Result<(), Error> {
    let count = shape.tabloid_count();
    if count > guard.into() {
        return Err(Error::GuardExceeded { what: "tabloids", count: count.to_string(), guard });
    }
    Ok(())
}

fn run(command: &Command, opts: &GlobalOpts) -> Result<Output, Error> {
    match command {
        Command::DesignConstruct { v, l, t, lambda0, oracle } => {
            let params = admissible(*v, *l, *t, lambda0.clone())?;
            let design = if *oracle { solve_design_oracle(&params)? } else { construct_design(&params)? };
            let ok = verify_design(&design, &params);
            let record = DesignRecord { params, design };
            let body = if opts.json { to_json(&record)? } else { design_table(&record, ok) };
            Ok(Output::new(body, ok))
        }
        Command::DesignVerify { input } => {
            let record: DesignRecord = from_json(&read_input(input)?)?;
            let ok = verify_design(&record.design, &record.params);
            let body = if opts.json {
                to_json(&serde_json::json!({ "verdict": ok }))?
            } else {
                format!("verdict: {ok}\n")
            };
            Ok(Output::new(body, ok))
        }
        Command::UCase1 { p, n, r } => {
            let params = Case1Params::new(prime(*p)?, *n, *r)?;
            guard_shape(&params.shape(), opts.guard)?;
            let witness = Witness::new(Family::Case1, case1_u(&params)?, params.p())?;
            let ok = witness.report.verdict;
            Ok(Output::new(witness_output(&witness, opts.json, &[])?, ok))
        }
        Command::UCase2 { p, n, a } => {
            let params = Case2Params::new(prime(*p)?, *n, *a)?;
            guard_shape(&params.shape(), opts.guard)?;
            let witness = Witness::new(Family::Case2, case2_u(&params)?, params.p())?;
            let ok = witness.report.verdict;
            Ok(Output::new(witness_output(&witness, opts.json, &[])?, ok))
        }
        Command::UMain { a, b, p } => {
            let p = prime(*p)?;
            let shape = Composition::partition(vec![*a as usize, *b as usize])?;
            guard_shape(&shape, opts.guard)?;
            let built = main_u(*a, *b, p)?;
            let witness = Witness::new(Family::Main, built.u, p)?;
            // a positive verdict is only promised when the fixed space is nonzero
            let h0 = h0_nonzero(&shape, p);
            let ok = !h0 || witness.report.verdict;
            let extra = [
                format!("design scalars: {}", join(&built.lambdas)),
                format!("fixed space nonzero: {h0}"),
            ];
            Ok(Output::new(witness_output(&witness, opts.json, &extra)?, ok))
        }
        Command::HemmerCheck { input, p } => {
            let p = prime(*p)?;
            let u: TabloidVector = from_json(&read_input(input)?)?;
            guard_shape(u.shape(), opts.guard)?;
            let report = hemmer_check(&u, p)?;
            let body = if opts.json { to_json(&report)? } else { report_table(&report) };
            Ok(Output::new(body, report.verdict))
        }
        Command::Dims { lambda } => {
            let shape = Composition::partition(lambda.clone())?;
            let specht = dim_specht(&shape);
            let m = dim_m(&shape);
            let check = match shape.parts() {
                &[a, b, c] if c >= 1 => Some(three_part_dim_check(a as u64, b as u64, c as u64)?),
                _ => None,
            };
            let ok = check.as_ref().map_or(true, |c| c.holds);
            let body = if opts.json {
                let mut value = serde_json::json!({
                    "lambda": shape.parts(),
                    "dim_specht": specht.to_string(),
                    "dim_m": m.to_string(),
                });
                if let Some(c) = &check {
                    value["lhs"] = c.lhs.to_string().into();
                    value["rhs"] = c.rhs.to_string().into();
                    value["holds"] = c.holds.into();
                }
                to_json(&value)?
            } else {
                let mut s = String::new();
                writeln!(s, "shape      {shape}").unwrap();
                writeln!(s, "dim S      {specht}").unwrap();
                writeln!(s, "dim M      {m}").unwrap();
                if let Some(c) = &check {
                    writeln!(s, "lhs        {}", c.lhs).unwrap();
                    writeln!(s, "rhs        {}", c.rhs).unwrap();
                    writeln!(s, "holds      {}", c.holds).unwrap();
                }
                s
            };
            Ok(Output::new(body, ok))
        }
        Command::Search3 { a, b, c, p } => {
            let p = prime(*p)?;
            let outcome = three_part_search(*a, *b, *c, p, opts.guard)?;
            let ok = outcome.report.as_ref().is_some_and(|r| r.verdict);
            let body = match (&outcome.u, opts.json) {
                (Some(u), _) => {
                    let witness = Witness::new(Family::Search3, u.clone(), p)?;
                    let extra = [format!("lattice rank: {}", outcome.solution_dim)];
                    if opts.json {
                        let mut value = serde_json::to_value(&witness)?;
                        value["solution_dim"] = outcome.solution_dim.into();
                        to_json(&value)?
                    } else {
                        witness_output(&witness, false, &extra)?
                    }
                }
                (None, true) => to_json(&serde_json::json!({
                    "lambda": [a, b, c],
                    "p": p.get(),
                    "family": "search3",
                    "solution_dim": outcome.solution_dim,
                    "u": null,
                }))?,
                (None, false) => format!("lattice rank: {}\nno vector satisfies condition (i)\n", outcome.solution_dim),
            };
            Ok(Output::new(body, ok))
        }
        Command::Selftest => {
            let checks = selftest::run_with_seed(opts.seed);
            let ok = checks.iter().all(|c| c.passed);
            let body = if opts.json {
                let rows: Vec<_> = checks
                    .iter()
                    .map(|c| serde_json::json!({"id": c.id, "name": c.name, "passed": c.passed, "detail": c.detail}))
                    .collect();
                to_json(&serde_json::json!({ "checks": rows, "passed": ok }))?
            } else {
                let mut s = String::new();
                for c in &checks {
                    writeln!(s, "{c}").unwrap();
                }
                let failed = checks.iter().filter(|c| !c.passed).count();
                writeln!(s, "{} checks, {failed} failed", checks.len()).unwrap();
                s
            };
            Ok(Output::new(body, ok))
        }
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn design_table(record: &DesignRecord, ok: bool) -> String {
    let p = &record.params;
    let mut s = String::new();
    writeln!(s, "v {}  l {}  t {}  lambdas {}", p.v(), p.l(), p.t(), join(p.lambdas())).unwrap();
    write_blocks(&mut s, &record.design);
    writeln!(s, "verdict: {ok}").unwrap();
    s
}

fn write_blocks(s: &mut String, c: &BlockVector) {
    let width = c.iter().map(|(_, k)| k.to_string().len()).max().unwrap_or(1).max(5);
    writeln!(s, "{:>width$}  block", "coef").unwrap();
    for (x, k) in c.iter() {
        writeln!(s, "{:>width$}  {}", k.to_string(), overline(&x.to_string())).unwrap();
    }
}

/// Draws a bar over each rendered row, as in `\overline{6 7 8}`.
fn overline(text: &str) -> String {
    text.chars().map(|ch| if ch == ' ' || ch == '|' { ch.to_string() } else { format!("{ch}\u{305}") }).collect()
}

fn report_table(report: &HemmerReport) -> String {
    let mut s = String::new();
    writeln!(s, "shape {}  p {}", report.shape, report.p).unwrap();
    writeln!(s, "{:>3} {:>3}  {:>8}  {:>6}  {:>3}  {}", "i", "v", "multiple", "scalar", "mu", "exact").unwrap();
    for m in &report.maps {
        let scalar = m.scalar.map_or("-".to_string(), |k| k.to_string());
        let exact = m.integer_scalar.as_ref().map_or("-".to_string(), ToString::to_string);
        writeln!(s, "{:>3} {:>3}  {:>8}  {:>6}  {:>3}  {}", m.i, m.v, m.is_multiple_of_f(), scalar, m.mu, exact).unwrap();
    }
    writeln!(s, "condition (i):  {}", report.condition_i).unwrap();
    writeln!(s, "condition (ii): {}", report.condition_ii).unwrap();
    writeln!(s, "verdict: {}", report.verdict).unwrap();
    s
}

fn witness_output(w: &Witness, json: bool, extra: &[String]) -> Result<String, Error> {
    if json {
        return to_json(w);
    }
    let mut s = String::new();
    writeln!(s, "family {}  shape {}  p {}", w.family.as_str(), w.u.shape(), w.p).unwrap();
    let width = w.u.iter().map(|(_, k)| k.to_string().len()).max().unwrap_or(1).max(5);
    writeln!(s, "{:>width$}  rows 2..r", "coef").unwrap();
    for (t, k) in w.u.iter() {
        writeln!(s, "{:>width$}  {}", k.to_string(), overline(&t.to_string())).unwrap();
    }
    let scalars: Vec<String> = w.scalars.iter().map(|k| k.as_ref().map_or("-".into(), ToString::to_string)).collect();
    writeln!(s, "scalars: {}", scalars.join(" ")).unwrap();
    for line in extra {
        writeln!(s, "{line}").unwrap();
    }
    s.push_str(&report_table(&w.report));
    Ok(s)
}
