use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use h122::count::{
    complementary_count_formula, complementary_n, rep_count_formula, rep_count_oracle, rep_count_oracle_sweep,
    Complementary, RepQuery, Restriction,
};
use h122::dyadic::primary_associate;
use h122::euclid::gcd;
use h122::modm::{reduce_mod_m, solve_rs, tau};
use h122::prime::{full_factor, primary_primes_of_norm};
use h122::{Error, OrderElement, Side};

const EXIT_USAGE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_INVARIANT: u8 = 3;

/// Arithmetic in the quaternion order H(1,2,2).
///
/// Quaternions are written `[g1,g2,g3,g4]` in the order basis, or as
/// `(A+Bi+Cr2j+Dr2k)/2` with `r2j`, `r2k` standing for sqrt2 j, sqrt2 k.
#[derive(Parser)]
#[command(name = "h122", version)]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RestrictionArg {
    None,
    I,
    Ii,
    Iii,
}

impl RestrictionArg {
    fn case(self) -> Option<Complementary> {
        match self {
            RestrictionArg::None => None,
            RestrictionArg::I => Some(Complementary::I),
            RestrictionArg::Ii => Some(Complementary::II),
            RestrictionArg::Iii => Some(Complementary::III),
        }
    }

    fn name(self) -> &'static str {
        match self {
            RestrictionArg::None => "none",
            RestrictionArg::I => "i",
            RestrictionArg::Ii => "ii",
            RestrictionArg::Iii => "iii",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Number of representations of n by x^2 + y^2 + 2z^2 + 2w^2.
    Count {
        n: u64,
        #[arg(long, value_enum, default_value = "none")]
        restriction: RestrictionArg,
        /// Cross-check against direct enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Factor a nonzero quaternion (always JSON).
    Factor {
        #[arg(allow_hyphen_values = true)]
        quat: String,
    },
    /// One-sided gcd with Bezout cofactors.
    Gcd {
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Image of a quaternion in the 2x2 matrices mod odd m.
    Tau {
        #[arg(short)]
        m: u64,
        #[arg(allow_hyphen_values = true)]
        quat: String,
    },
    /// Unit and primary associate of an odd quaternion.
    Primary {
        #[arg(allow_hyphen_values = true)]
        quat: String,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
    },
    /// Primary primes of odd prime norm p.
    Primes {
        #[arg(short)]
        p: u64,
    },
    /// Compare formula and enumeration for every n up to max-n.
    Verify {
        #[arg(long = "max-n")]
        max_n: u64,
    },
}

enum Failure {
    Usage(String),
    Mismatch(String),
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Failure::Invariant(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn quat(text: &str) -> Result<OrderElement, Failure> {
    text.parse().map_err(Failure::from)
}

fn q(e: &OrderElement) -> Value {
    serde_json::to_value(e).expect("quaternions serialize")
}

fn emit(json_mode: bool, value: Value, human: String) {
    if json_mode {
        println!("{value}");
    } else {
        println!("{human}");
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let js = cli.json;
    match cli.command {
        Command::Count { n, restriction, oracle } => {
            let (formula, decomposition) = match restriction.case() {
                None => {
                    let r = rep_count_formula(n)?;
                    (r.formula_count, r.decomposition)
                }
                Some(case) => {
                    RepQuery::new(n, case.into())?;
                    let m = n / if case == Complementary::II { 8 } else { 4 };
                    (complementary_count_formula(m, case)?, h122::arith::split_two_power(n))
                }
            };
            let oracle_count = if oracle {
                let r = restriction.case().map_or(Restriction::None, Restriction::from);
                Some(rep_count_oracle(&RepQuery::new(n, r)?)?)
            } else {
                None
            };
            let human = match oracle_count {
                Some(o) => format!("{formula} (oracle {o})"),
                None => formula.to_string(),
            };
            emit(
                js,
                json!({
                    "n": n,
                    "restriction": restriction.name(),
                    "formula_count": formula,
                    "oracle_count": oracle_count,
                    "decomposition": [decomposition.0, decomposition.1],
                }),
                human,
            );
            if let Some(o) = oracle_count {
                if o != formula {
                    return Err(Failure::Mismatch(format!("n = {n}: formula {formula}, oracle {o}")));
                }
            }
        }
        Command::Factor { quat: text } => {
            let f = full_factor(&quat(&text)?)?;
            println!("{}", serde_json::to_string(&f).expect("factorizations serialize"));
        }
        Command::Gcd { side, a, b } => {
            let g = gcd(&quat(&a)?, &quat(&b)?, side.into())?;
            let (x, y) = g.cofactors;
            let side_name = if matches!(g.side, Side::Left) { "left" } else { "right" };
            emit(
                js,
                json!({ "gcd": q(&g.gcd), "x": q(&x), "y": q(&y), "side": side_name }),
                format!("gcd {}\nx   {x}\ny   {y}", g.gcd),
            );
        }
        Command::Tau { m, quat: text } => {
            let params = solve_rs(m)?;
            let res = reduce_mod_m(&quat(&text)?, m)?;
            let mat = tau(&res, &params)?;
            emit(
                js,
                json!({ "m": m, "r": params.r, "s": params.s, "matrix": mat.rows() }),
                format!("{mat} (r,s)=({},{})", params.r, params.s),
            );
        }
        Command::Primary { quat: text, side } => {
            let (u, c) = primary_associate(&quat(&text)?, side.into())?;
            emit(js, json!({ "unit": q(&u), "primary": q(&c) }), format!("unit    {u}\nprimary {c}"));
        }
        Command::Primes { p } => {
            let primes = primary_primes_of_norm(p)?;
            let list: Vec<Value> = primes.iter().map(|pi| q(&pi.element)).collect();
            let human: Vec<String> = primes.iter().map(|pi| pi.element.to_string()).collect();
            emit(js, Value::Array(list), human.join("\n"));
        }
        Command::Verify { max_n } => {
            if max_n == 0 {
                return Err(Failure::Usage("--max-n must be positive".into()));
            }
            let oracle = rep_count_oracle_sweep(max_n)?;
            let mut checked = 0u64;
            let mut mismatches = Vec::new();
            for n in 1..=max_n {
                let f = rep_count_formula(n)?.formula_count;
                let o = oracle[n as usize - 1];
                checked += 1;
                if f != o {
                    mismatches.push(format!("n={n} formula={f} oracle={o}"));
                }
            }
            for case in [Complementary::I, Complementary::II, Complementary::III] {
                for m in (1..).step_by(2).take_while(|&m| complementary_n(m, case) <= max_n) {
                    let n = complementary_n(m, case);
                    let f = complementary_count_formula(m, case)?;
                    let o = rep_count_oracle(&RepQuery::new(n, case.into())?)?;
                    checked += 1;
                    if f != o {
                        mismatches.push(format!("case {case:?} m={m} formula={f} oracle={o}"));
                    }
                }
            }
            emit(
                js,
                json!({ "max_n": max_n, "checked": checked, "mismatches": mismatches }),
                format!("checked {checked} values up to {max_n}, {} mismatches", mismatches.len()),
            );
            if !mismatches.is_empty() {
                return Err(Failure::Mismatch(mismatches.join("\n")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(EXIT_MISMATCH)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(EXIT_INVARIANT)
        }
    }
}
