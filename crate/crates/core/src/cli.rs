//! The `kchains` command line. Every command writes one report (JSON or
//! CSV) to `--out` or stdout and a one-line verdict to stderr.
//!
//! Exit codes: 0 all checks passed, 1 a checked property failed, 2 usage
//! error, 3 a resource guard refused the run.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::SeedableRng;
use serde::Serialize;
use serde_json::json;

use crate::centred::{convexity_certificate, MkCurve, MkTable};
use crate::compression::{compress_to_fixpoint, RankDistribution};
use crate::descriptor::{parse_distribution_json, FamilySpec, PosetDescriptor, StartSpec};
use crate::error::Error;
use crate::expectation::{count_maximal_chains, expectation_report, monte_carlo_report, MAX_ENUMERATED_CHAINS};
use crate::poset::{check_descending, check_homogeneity_consequence, check_symmetry, DescentClass, Sampling};
use crate::verify::{erdos_katona_check, probe_minimize, verify_kleitman_suite, Strategy};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

/// Largest `n` for which `verify` on a boolean lattice adds the
/// closed-form comparable-pair bound.
const ERDOS_KATONA_MAX_N: usize = 8;

#[derive(Parser, Debug)]
#[command(name = "kchains", version, about = "Exact k-chain counts and extremal families in graded posets")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    HillClimb,
    Anneal,
}

#[derive(Args, Debug)]
struct Common {
    /// `boolean:N`, `subspace:Q,N` or `{"type": "boolean", "n": N}`
    #[arg(long)]
    poset: PosetDescriptor,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Level sizes, symmetry, homogeneity and descent of a poset.
    Profile {
        #[command(flatten)]
        common: Common,
        /// Largest chain length used by the symmetry and homogeneity checks.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Sample this many chains per rank set instead of checking all.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// The table of m_k(a) with its convexity certificate.
    Mk {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: usize,
        /// Report a single value instead of the table.
        #[arg(long)]
        a: Option<BigUint>,
    },
    /// Exhaustive minimum of c_k over all families of every size.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
    },
    /// Compress a rank-level distribution to its fixpoint.
    Compress {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: usize,
        /// `levels:i,j,...`, `file:<path>` or `random`
        #[arg(long)]
        start: StartSpec,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Expectations over uniform maximal chains for one family.
    Expect {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: usize,
        /// `levels:i,j`, `ids:x,y,...` or `random:a`
        #[arg(long)]
        members: FamilySpec,
        /// Sample this many chains instead of enumerating all of them.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Local search for a family with few k-chains.
    Probe {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        seed: u64,
        /// Number of proposed swaps.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, value_enum, default_value = "hill-climb")]
        strategy: StrategyArg,
    },
}

struct Outcome {
    passed: bool,
    summary: String,
    body: String,
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Error> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn need_seed(seed: Option<u64>, what: &str) -> Result<u64, Error> {
    seed.ok_or_else(|| Error::InvalidArgument(format!("{what} is randomized and needs --seed")))
}

fn cmd_profile(common: &Common, k: usize, budget: Option<usize>, seed: Option<u64>) -> Result<Outcome, Error> {
    let poset = common.poset.build()?;
    let sampling = match budget {
        Some(samples) => Some(Sampling {
            samples,
            seed: need_seed(seed, "sampled profiling")?,
        }),
        None => None,
    };
    let levels = poset.level_sizes();
    let descent = check_descending(&poset)?;
    let symmetry = check_symmetry(&poset, k, sampling)?;
    let homogeneity = check_homogeneity_consequence(&poset, k, sampling)?;
    let passed = symmetry.passed && homogeneity.passed && descent.class != DescentClass::Neither;
    let class = match descent.class {
        DescentClass::StrictlyDescending => "strictly descending",
        DescentClass::Descending => "descending",
        DescentClass::Neither => "not descending",
    };
    let level_list = levels.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let body = match common.format {
        Format::Json => to_json(&json!({
            "poset": common.poset.to_string(),
            "n": poset.n(),
            "levels": levels.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "descent": descent,
            "symmetry": symmetry,
            "homogeneity": homogeneity,
        }))?,
        Format::Csv => {
            let mut s = String::from("rank,size\n");
            for (r, l) in levels.iter().enumerate() {
                writeln!(s, "{r},{l}").expect("string");
            }
            s
        }
    };
    Ok(Outcome {
        passed,
        summary: format!(
            "{} profile {}: levels {level_list}; {class}; symmetric levels and pair counts: {}; chain counts depend only on ranks: {}",
            verdict(passed),
            common.poset,
            symmetry.passed,
            homogeneity.passed
        ),
        body,
    })
}

fn cmd_mk(common: &Common, k: usize, a: Option<&BigUint>) -> Result<Outcome, Error> {
    let profile = common.poset.profile()?;
    if let Some(a) = a {
        let value = MkCurve::new(&profile, k)?.eval(a)?;
        let body = match common.format {
            Format::Json => to_json(&json!({"k": k, "a": a.to_string(), "m_k": value.to_string()}))?,
            Format::Csv => format!("a,m_k\n{a},{value}\n"),
        };
        return Ok(Outcome {
            passed: true,
            summary: format!("PASS m_k {}: m_{k}({a}) = {value}", common.poset),
            body,
        });
    }
    let table = MkTable::new(&profile, k)?;
    let cert = convexity_certificate(&table);
    let passed = cert.holds();
    let body = match common.format {
        Format::Json => to_json(&json!({"poset": common.poset.to_string(), "table": table, "convexity": cert}))?,
        Format::Csv => table.to_csv(),
    };
    Ok(Outcome {
        passed,
        summary: format!(
            "{} m_k {} k={k}: increments nondecreasing: {}; strict at level boundaries: {}",
            verdict(passed),
            common.poset,
            cert.convex,
            cert.jumps_strict
        ),
        body,
    })
}

fn cmd_verify(common: &Common, ks: &[usize]) -> Result<Outcome, Error> {
    let poset = common.poset.build()?;
    let mut suite = verify_kleitman_suite(&poset, ks)?;
    if let Some(c) = suite.counterexample.as_mut() {
        c.poset = Some(common.poset.to_string());
    }
    let erdos = match common.poset {
        PosetDescriptor::Boolean { n } if n <= ERDOS_KATONA_MAX_N => Some(erdos_katona_check(n)?),
        _ => None,
    };
    let passed = suite.passed && erdos.as_ref().is_none_or(|e| e.holds);
    let body = match common.format {
        Format::Json => to_json(&json!({"poset": common.poset.to_string(), "suite": suite, "erdos_katona": erdos}))?,
        Format::Csv => suite.to_csv(),
    };
    Ok(Outcome {
        passed,
        summary: format!(
            "{} verify {} k={ks:?}: minimum over all families equals m_k(a) with only centred minimizers when positive: {}",
            verdict(passed),
            common.poset,
            suite.passed
        ),
        body,
    })
}

fn cmd_compress(common: &Common, k: usize, start: &StartSpec, seed: Option<u64>) -> Result<Outcome, Error> {
    let profile = common.poset.profile()?;
    let dist = match start {
        StartSpec::Levels(ranks) => RankDistribution::characteristic(&profile, ranks)?,
        StartSpec::File(path) => parse_distribution_json(&profile, &std::fs::read_to_string(path)?)?,
        StartSpec::Random => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(need_seed(seed, "a random start")?);
            RankDistribution::random(&profile, &mut rng)
        }
    };
    let t = compress_to_fixpoint(&profile, &dist, k)?;
    let passed = t.checks.all();
    let last = &t.points.last().expect("start point").w;
    let body = match common.format {
        Format::Json => to_json(&t)?,
        Format::Csv => t.to_csv(),
    };
    Ok(Outcome {
        passed,
        summary: format!(
            "{} compress {} k={k}: {} steps; w_k never increases: {}; ends at m_k(a) = {}: {}",
            verdict(passed),
            common.poset,
            t.steps.len(),
            t.checks.wk_nonincreasing,
            crate::report::rational_string(last),
            t.checks.endpoint_is_mk
        ),
        body,
    })
}

fn cmd_expect(
    common: &Common,
    k: usize,
    members: &FamilySpec,
    budget: Option<usize>,
    seed: Option<u64>,
) -> Result<Outcome, Error> {
    let poset = common.poset.build()?;
    let family = members.build(&poset, seed)?;
    let exact = budget.is_none() && count_maximal_chains(&poset) <= BigUint::from(MAX_ENUMERATED_CHAINS);
    if exact {
        let r = expectation_report(&family, k)?;
        let passed = r.checks.all() && r.equality.as_ref().is_none_or(|e| e.holds);
        let body = match common.format {
            Format::Json => to_json(&r)?,
            Format::Csv => format!(
                "k,size,chains,c_k,m_k,max_f,pass\n{},{},{},{},{},{},{}\n",
                r.k,
                r.size,
                r.chains,
                r.ck,
                r.mk,
                r.max_f,
                u8::from(passed)
            ),
        };
        Ok(Outcome {
            passed,
            summary: format!(
                "{} expect {} k={k}: c_k(A) = {} >= m_k(|A|) = {} via exact averages over {} maximal chains",
                verdict(passed),
                common.poset,
                r.ck,
                r.mk,
                r.chains
            ),
            body,
        })
    } else {
        let seed = need_seed(seed, "sampling maximal chains")?;
        let r = monte_carlo_report(&family, k, budget.unwrap_or(10_000), seed)?;
        let body = match common.format {
            Format::Json => to_json(&r)?,
            Format::Csv => format!(
                "k,size,samples,seed,c_k,m_k,max_f,pass\n{},{},{},{},{},{},{},{}\n",
                r.k,
                r.size,
                r.samples,
                r.seed,
                r.ck,
                r.mk,
                r.max_f,
                u8::from(r.consistent)
            ),
        };
        Ok(Outcome {
            passed: r.consistent,
            summary: format!(
                "{} expect {} k={k}: sampled estimators agree with c_k(A) and |A| within four standard errors",
                verdict(r.consistent),
                common.poset
            ),
            body,
        })
    }
}

fn cmd_probe(common: &Common, k: usize, a: usize, seed: u64, budget: u64, strategy: StrategyArg) -> Result<Outcome, Error> {
    let poset = common.poset.build()?;
    let strategy = match strategy {
        StrategyArg::HillClimb => Strategy::default(),
        StrategyArg::Anneal => Strategy::Annealing { t0: 2.0, cooling: 0.9999 },
    };
    let mut probe = probe_minimize(&poset, k, a, strategy, budget, seed)?;
    if let Some(c) = probe.counterexample.as_mut() {
        c.poset = Some(common.poset.to_string());
    }
    let passed = probe.counterexample.is_none();
    let body = match common.format {
        Format::Json => to_json(&probe)?,
        Format::Csv => format!(
            "k,a,budget,seed,best_c_k,m_k,reached_bound\n{},{},{},{},{},{},{}\n",
            probe.k,
            probe.a,
            probe.budget,
            probe.seed,
            probe.best_ck,
            probe.mk,
            u8::from(probe.reached_bound())
        ),
    };
    Ok(Outcome {
        passed,
        summary: format!(
            "{} probe {} k={k} a={a}: best {} against m_k(a) = {}",
            verdict(passed),
            common.poset,
            probe.best_ck,
            probe.mk
        ),
        body,
    })
}

fn execute(cli: &Cli) -> Result<(Outcome, Option<&PathBuf>), Error> {
    let (outcome, common) = match &cli.command {
        Command::Profile { common, k, budget, seed } => (cmd_profile(common, *k, *budget, *seed)?, common),
        Command::Mk { common, k, a } => (cmd_mk(common, *k, a.as_ref())?, common),
        Command::Verify { common, k } => (cmd_verify(common, k)?, common),
        Command::Compress { common, k, start, seed } => (cmd_compress(common, *k, start, *seed)?, common),
        Command::Expect {
            common,
            k,
            members,
            budget,
            seed,
        } => (cmd_expect(common, *k, members, *budget, *seed)?, common),
        Command::Probe {
            common,
            k,
            a,
            seed,
            budget,
            strategy,
        } => (cmd_probe(common, *k, *a, *seed, *budget, *strategy)?, common),
    };
    Ok((outcome, common.out.as_ref()))
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ResourceGuard(_) => EXIT_GUARD,
        Error::Invariant(_) => EXIT_VIOLATION,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok((outcome, out)) => {
            let written = match out {
                Some(path) => std::fs::write(path, &outcome.body),
                None => {
                    use std::io::Write;
                    std::io::stdout().write_all(outcome.body.as_bytes())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
            eprintln!("{}", outcome.summary);
            if outcome.passed {
                EXIT_PASS
            } else {
                EXIT_VIOLATION
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
