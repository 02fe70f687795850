mod input;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::{Signed, Zero};
use serde_json::json;

use input::{flag_err, parse_pattern, FlagError, ModelArgs};
use output::{Format, Report, DECIMAL_DIGITS};
use patwait::cluster::{avoiding_gf, stopping_gf};
use patwait::moments::{compare, expected_time, MomentReport, Prediction};
use patwait::poly::Poly;
use patwait::rational::{to_decimal, to_display, to_f64, to_wire};
use patwait::sequences::{
    c_coeff, eulerian_ext_poly, fib_k_bar, fib_k_prefix, fubini, EulerianTable, ExtEulerianTable,
};
use patwait::verify::{exact_distribution, run_checks, simulate, truncation_for_tail, SimConfig, SIM_MOMENTS};
use patwait::{Error, Ratio};

/// Exact moments of the waiting time for a word in rolls of a biased die.
#[derive(Debug, Parser)]
#[command(name = "patwait", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Out {
    /// Output format
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Shorthand for --format json
    #[arg(long, conflicts_with = "format")]
    json: bool,
}

impl Out {
    fn resolve(&self, default: Format) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format.unwrap_or(default)
        }
    }
}

#[derive(Debug, Args)]
struct PatternArgs {
    /// The word to wait for, e.g. HTH, ABRACADABRA or 1,3,2
    #[arg(long)]
    pattern: String,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    out: Out,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact E(Y^1..=Y^n)
    Moments {
        #[command(flatten)]
        args: PatternArgs,
        /// Highest moment, at most 12
        #[arg(long, default_value_t = 4)]
        n: u32,
    },
    /// Exact E(Y)
    Expected {
        #[command(flatten)]
        args: PatternArgs,
    },
    /// Exact Var(Y)
    Variance {
        #[command(flatten)]
        args: PatternArgs,
    },
    /// Series coefficients of the stopping (or avoiding) generating function
    Gf {
        #[command(flatten)]
        args: PatternArgs,
        /// Last coefficient printed
        #[arg(long, default_value_t = 20)]
        order: usize,
        /// Multiply coefficient d by m^d and print integer word counts (uniform only)
        #[arg(long)]
        counts: bool,
        /// Expand the avoiding-words function instead of the stopping-time one
        #[arg(long)]
        avoiding: bool,
    },
    /// P(Y = d) from the matching automaton, plus the remaining tail mass
    Distribution {
        #[command(flatten)]
        args: PatternArgs,
        /// Last d printed; defaults to the first d with P(Y > d) < 1e-9
        #[arg(long)]
        order: Option<usize>,
    },
    /// Eulerian number tables
    Table {
        #[command(subcommand)]
        table: TableKind,
    },
    /// Integer sequences used by the coin formulas
    Sequence {
        #[command(subcommand)]
        seq: SequenceKind,
    },
    /// Seeded Monte Carlo estimate of E(Y^1..=Y^4) against the exact values
    Simulate {
        #[command(flatten)]
        args: PatternArgs,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum rolls per trial; defaults to ceil(100 E(S)) when E(S) <= 10^6
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Expected occurrence counts of two words over a number of rolls
    Compare {
        #[command(flatten)]
        args: PatternArgs,
        /// The second word
        #[arg(long)]
        vs: String,
        #[arg(long, default_value_t = 100)]
        rolls: u64,
    },
    /// Run the identity suite; exits 1 if any identity fails
    Check {
        /// Restrict to the named checks
        #[arg(long)]
        only: Vec<String>,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Debug, Subcommand)]
enum TableKind {
    /// e_{n,i} for n, i <= N
    Eulerian {
        #[arg(long, default_value_t = 7)]
        n: usize,
    },
    /// e^k_{n,i} at one k, or as polynomials in k with --poly
    EulerianExt {
        #[arg(long, required_unless_present = "poly")]
        k: Option<u32>,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, conflicts_with = "k")]
        poly: bool,
    },
}

#[derive(Debug, Subcommand)]
enum SequenceKind {
    /// Ordered Bell numbers b_0..=b_n
    Fubini {
        #[arg(long, default_value_t = 10)]
        n: u32,
    },
    /// Order-k Fibonacci numbers F^k_0..=F^k_n
    Fib {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// Partial sums bar F^k_0..=bar F^k_n
    FibBar {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// Row c_{n,0..=n}
    CCoeff {
        #[arg(long)]
        n: u32,
    },
}

enum Failure {
    Flag(FlagError),
    Lib(Error),
    /// already reported on stdout
    Unreachable,
    ChecksFailed,
}

impl From<FlagError> for Failure {
    fn from(e: FlagError) -> Self {
        Failure::Flag(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Flag(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e @ Error::Unreachable { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Unreachable) => ExitCode::from(3),
        Err(Failure::ChecksFailed) => ExitCode::from(1),
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Moments { args, n } => moments_cmd(&args, n),
        Command::Expected { args } => expected_cmd(&args),
        Command::Variance { args } => variance_cmd(&args),
        Command::Gf {
            args,
            order,
            counts,
            avoiding,
        } => gf_cmd(&args, order, counts, avoiding),
        Command::Distribution { args, order } => distribution_cmd(&args, order),
        Command::Table { table } => {
            table_cmd(table);
            Ok(())
        }
        Command::Sequence { seq } => sequence_cmd(seq),
        Command::Simulate {
            args,
            trials,
            seed,
            cap,
        } => simulate_cmd(&args, trials, seed, cap),
        Command::Compare { args, vs, rolls } => compare_cmd(&args, &vs, rolls),
        Command::Check { only, out } => check_cmd(&only, out.resolve(Format::Tsv)),
    }
}

struct Setup {
    alphabet: patwait::Alphabet,
    model: patwait::ProbModel,
    word: patwait::Word,
    format: Format,
}

fn setup(args: &PatternArgs) -> Result<Setup, FlagError> {
    setup_as(args, Format::Tsv)
}

fn setup_as(args: &PatternArgs, default: Format) -> Result<Setup, FlagError> {
    let r = args.model.resolve(&[&args.pattern])?;
    let word = parse_pattern(&r.alphabet, "--pattern", &args.pattern)?;
    Ok(Setup {
        alphabet: r.alphabet,
        model: r.model,
        word,
        format: args.out.resolve(default),
    })
}

/// Renders an unreachable pattern as an infinite expectation and exits 3.
fn unreachable(s: &Setup, command: &str, e: Error) -> Failure {
    if !matches!(e, Error::Unreachable { .. }) {
        return Failure::Lib(e);
    }
    eprintln!("error: {e}");
    match s.format {
        Format::Json => {
            let mut r = Report::new(command);
            r.pattern(&s.alphabet, &s.model, &s.word);
            r.set("expected", "infinite").set("error", e.to_string());
            r.print();
        }
        Format::Tsv => println!("infinite"),
    }
    Failure::Unreachable
}

fn moments_cmd(args: &PatternArgs, n: u32) -> Outcome {
    let s = setup(args)?;
    let report = MomentReport::compute(&s.word, &s.model, n).map_err(|e| unreachable(&s, "moments", e))?;
    match s.format {
        Format::Tsv => {
            for m in &report.moments {
                println!("{}", to_display(m));
            }
        }
        Format::Json => {
            let mut r = Report::new("moments");
            r.pattern(&s.alphabet, &s.model, &s.word)
                .set("n_max", report.n_max)
                .ratio("expected", &report.expected)
                .ratios("moments", &report.moments)
                .ratio("variance", &report.variance);
            r.print();
        }
    }
    Ok(())
}

fn expected_cmd(args: &PatternArgs) -> Outcome {
    let s = setup(args)?;
    let e = expected_time(&s.word, &s.model).map_err(|e| unreachable(&s, "expected", e))?;
    match s.format {
        Format::Tsv => println!("{}", to_display(&e)),
        Format::Json => {
            let mut r = Report::new("expected");
            r.pattern(&s.alphabet, &s.model, &s.word).ratio("expected", &e);
            r.print();
        }
    }
    Ok(())
}

fn variance_cmd(args: &PatternArgs) -> Outcome {
    let s = setup(args)?;
    let report = MomentReport::compute(&s.word, &s.model, 2).map_err(|e| unreachable(&s, "variance", e))?;
    match s.format {
        Format::Tsv => println!("{}", to_display(&report.variance)),
        Format::Json => {
            let mut r = Report::new("variance");
            r.pattern(&s.alphabet, &s.model, &s.word)
                .ratio("expected", &report.expected)
                .ratio("variance", &report.variance);
            r.print();
        }
    }
    Ok(())
}

fn gf_cmd(args: &PatternArgs, order: usize, counts: bool, avoiding: bool) -> Outcome {
    let s = setup(args)?;
    if counts && !s.model.is_uniform() {
        return Err(FlagError {
            flag: "--counts",
            error: Error::InvalidInput("word counts need a uniform model".into()),
            example: "--counts --uniform",
        }
        .into());
    }
    let f = if avoiding {
        avoiding_gf(&s.word, &s.model)
    } else {
        stopping_gf(&s.word, &s.model)
    };
    let f = f.map_err(|e| unreachable(&s, "gf", e))?;
    let series = f.series(order);
    let coeffs: Vec<Ratio> = if counts {
        series.scaled_by_power(s.model.size())
    } else {
        series.coeffs().to_vec()
    };
    match s.format {
        Format::Tsv => {
            for c in &coeffs {
                if counts {
                    println!("{}", to_display(c));
                } else {
                    println!("{}", to_wire(c));
                }
            }
        }
        Format::Json => {
            let mut r = Report::new("gf");
            r.pattern(&s.alphabet, &s.model, &s.word)
                .set("kind", if avoiding { "avoiding" } else { "stopping" })
                .set(
                    "numerator",
                    f.numerator().coeffs().iter().map(to_wire).collect::<Vec<_>>(),
                )
                .set(
                    "denominator",
                    f.denominator().coeffs().iter().map(to_wire).collect::<Vec<_>>(),
                )
                .set("order", order);
            if counts {
                r.set("counts", coeffs.iter().map(to_display).collect::<Vec<_>>());
            } else {
                r.ratios("coefficients", &coeffs);
            }
            r.print();
        }
    }
    Ok(())
}

const MAX_AUTO_ORDER: usize = 100_000;

fn distribution_cmd(args: &PatternArgs, order: Option<usize>) -> Outcome {
    let s = setup(args)?;
    let order = match order {
        Some(o) => o,
        None => truncation_for_tail(&s.word, &s.model, 1e-9, MAX_AUTO_ORDER)
            .map_err(|e| unreachable(&s, "distribution", e))?,
    };
    let d = exact_distribution(&s.word, &s.model, order)?;
    match s.format {
        Format::Tsv => {
            for (i, p) in d.pmf.coeffs().iter().enumerate().skip(1) {
                println!("{i}\t{}", to_wire(p));
            }
            println!("tail\t{}", to_wire(&d.survival));
        }
        Format::Json => {
            let mut r = Report::new("distribution");
            r.pattern(&s.alphabet, &s.model, &s.word)
                .set("order", order)
                .ratios("pmf", d.pmf.coeffs())
                .ratio("tail", &d.survival);
            r.print();
        }
    }
    Ok(())
}

/// Integer polynomial in `k`, ascending, e.g. `1-2k-2k^2`.
fn render_poly(p: &Poly) -> String {
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = to_display(&c.abs());
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        match i {
            0 => out.push_str(&mag),
            _ => {
                if mag != "1" {
                    out.push_str(&mag);
                }
                out.push('k');
                if i > 1 {
                    out.push_str(&format!("^{i}"));
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn table_cmd(table: TableKind) {
    match table {
        TableKind::Eulerian { n } => {
            let t = EulerianTable::with_rows(n);
            let header: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
            println!("n\\i\t{}", header.join("\t"));
            for row in 0..=n {
                let cells: Vec<String> = (0..=n as i64)
                    .map(|i| {
                        let v = t.get(row, i);
                        if v.is_zero() {
                            String::new()
                        } else {
                            v.to_string()
                        }
                    })
                    .collect();
                println!("{row}\t{}", cells.join("\t"));
            }
        }
        TableKind::EulerianExt { k, n, poly } => {
            let header: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
            println!("n\\i\t{}", header.join("\t"));
            let t = k.map(|k| ExtEulerianTable::with_rows(k, n));
            for row in 0..=n {
                let cells: Vec<String> = (0..=n as i64)
                    .map(|i| {
                        if i > row as i64 {
                            String::new()
                        } else if poly {
                            render_poly(&eulerian_ext_poly(row, i))
                        } else {
                            t.as_ref()
                                .expect("k is required without --poly")
                                .get(row, i)
                                .to_string()
                        }
                    })
                    .collect();
                println!("{row}\t{}", cells.join("\t"));
            }
        }
    }
}

fn sequence_cmd(seq: SequenceKind) -> Outcome {
    let rows: Vec<String> = match seq {
        SequenceKind::Fubini { n } => (0..=n).map(|i| fubini(i).to_string()).collect(),
        SequenceKind::Fib { k, n } => {
            require_order(k)?;
            fib_k_prefix(k, n + 1).iter().map(|v| v.to_string()).collect()
        }
        SequenceKind::FibBar { k, n } => {
            require_order(k)?;
            (0..=n as i64).map(|i| fib_k_bar(i, k).to_string()).collect()
        }
        SequenceKind::CCoeff { n } => (0..=n)
            .map(|l| c_coeff(n, l).map(|v| v.to_string()))
            .collect::<Result<_, _>>()?,
    };
    for (i, v) in rows.iter().enumerate() {
        println!("{i}\t{v}");
    }
    Ok(())
}

fn require_order(k: u32) -> Result<(), FlagError> {
    if k == 0 {
        return Err(FlagError {
            flag: "--k",
            error: Error::InvalidInput("order must be at least 1".into()),
            example: "--k 2",
        });
    }
    Ok(())
}

fn simulate_cmd(args: &PatternArgs, trials: u64, seed: u64, cap: Option<u64>) -> Outcome {
    let s = setup_as(args, Format::Json)?;
    let exact =
        patwait::moments::moments(&s.word, &s.model, SIM_MOMENTS as u32).map_err(|e| unreachable(&s, "simulate", e))?;
    let cfg = match cap {
        Some(c) => SimConfig::new(trials, seed, c).map_err(flag_err("--trials", "--trials 1000000"))?,
        None => SimConfig::with_default_cap(&s.word, &s.model, trials, seed)
            .map_err(flag_err("--cap", "--cap 100000000"))?,
    };
    let rep = simulate(&s.word, &s.model, &cfg).map_err(flag_err("--cap", "--cap 1000"))?;
    let z: Vec<f64> = (0..SIM_MOMENTS)
        .map(|i| (rep.moments[i] - to_f64(&exact[i])) / rep.std_errors[i])
        .collect();
    match s.format {
        Format::Tsv => {
            println!("n\tempirical\tstd_error\texact\tz");
            for i in 0..SIM_MOMENTS {
                println!(
                    "{}\t{}\t{}\t{}\t{:.3}",
                    i + 1,
                    rep.moments[i],
                    rep.std_errors[i],
                    to_decimal(&exact[i], DECIMAL_DIGITS),
                    z[i]
                );
            }
            if rep.warning {
                eprintln!(
                    "warning: {} of {} trials hit the cap of {} rolls",
                    rep.capped, rep.trials, rep.cap
                );
            }
        }
        Format::Json => {
            let mut r = Report::new("simulate");
            let rows: Vec<_> = (0..SIM_MOMENTS)
                .map(|i| {
                    json!({
                        "n": i + 1,
                        "empirical": rep.moments[i],
                        "std_error": rep.std_errors[i],
                        "exact": to_wire(&exact[i]),
                        "exact_decimal": to_decimal(&exact[i], DECIMAL_DIGITS),
                        "z": z[i],
                    })
                })
                .collect();
            r.pattern(&s.alphabet, &s.model, &s.word)
                .set("trials", rep.trials)
                .set("seed", rep.seed)
                .set("cap", rep.cap)
                .set("hits", rep.hits)
                .set("capped", rep.capped)
                .set("capped_fraction", rep.capped_fraction)
                .set("warning", rep.warning)
                .set("moments", rows);
            r.print();
        }
    }
    Ok(())
}

fn compare_cmd(args: &PatternArgs, vs: &str, rolls: u64) -> Outcome {
    let r = args.model.resolve(&[&args.pattern, vs])?;
    let first = parse_pattern(&r.alphabet, "--pattern", &args.pattern)?;
    let second = parse_pattern(&r.alphabet, "--vs", vs)?;
    let s = Setup {
        alphabet: r.alphabet,
        model: r.model,
        word: first.clone(),
        format: args.out.resolve(Format::Tsv),
    };
    let rep = compare(&first, &second, &s.model, rolls).map_err(|e| unreachable(&s, "compare", e))?;
    let verdict = match rep.more_frequent {
        Prediction::First => "first",
        Prediction::Second => "second",
        Prediction::Tie => "tie",
    };
    match s.format {
        Format::Tsv => {
            println!("pattern\texpected\toverlaps\toccurrences");
            for (w, e) in [(&first, &rep.first), (&second, &rep.second)] {
                println!(
                    "{}\t{}\t{}\t{}",
                    s.alphabet.format_word(w),
                    to_display(&e.expected),
                    e.overlaps,
                    to_display(&e.occurrences)
                );
            }
            println!("more_frequent\t{verdict}");
        }
        Format::Json => {
            let entry = |w: &patwait::Word, e: &patwait::moments::CompareEntry| {
                json!({
                    "pattern": s.alphabet.format_word(w),
                    "letters": w.letters(),
                    "expected": to_wire(&e.expected),
                    "expected_decimal": to_decimal(&e.expected, DECIMAL_DIGITS),
                    "overlaps": e.overlaps,
                    "occurrences": to_wire(&e.occurrences),
                    "occurrences_decimal": to_decimal(&e.occurrences, DECIMAL_DIGITS),
                })
            };
            let mut out = Report::new("compare");
            out.set("alphabet", s.alphabet.spec())
                .set("model", s.model.probs().iter().map(to_wire).collect::<Vec<_>>())
                .set("rolls", rolls)
                .set("first", entry(&first, &rep.first))
                .set("second", entry(&second, &rep.second))
                .set("more_frequent", verdict);
            out.print();
        }
    }
    Ok(())
}

fn check_cmd(only: &[String], format: Format) -> Outcome {
    let known = patwait::verify::check_names();
    if let Some(bad) = only.iter().find(|o| !known.contains(&o.as_str())) {
        return Err(FlagError {
            flag: "--only",
            error: Error::InvalidInput(format!("unknown check {bad:?}; known: {}", known.join(", "))),
            example: "--only worpitzky",
        }
        .into());
    }
    let results = run_checks(only);
    let all_ok = results.iter().all(|r| r.passed);
    match format {
        Format::Tsv => {
            for r in &results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                match &r.failure {
                    Some(f) => println!("{status}\t{}\t{}\t{f}", r.name, r.cases),
                    None => println!("{status}\t{}\t{}", r.name, r.cases),
                }
            }
        }
        Format::Json => {
            let mut out = Report::new("check");
            out.set("passed", all_ok)
                .set("checks", serde_json::to_value(&results).expect("plain data"));
            out.print();
        }
    }
    if all_ok {
        Ok(())
    } else {
        Err(Failure::ChecksFailed)
    }
}
