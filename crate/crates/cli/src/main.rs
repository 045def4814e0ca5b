//! `sympgen`: build generating pairs, re-check claims, search parameters
//! and certify generation from prime sets.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use sympgen::claims::primeset::{certify_pair, default_words};
use sympgen::claims::word::Scope;
use sympgen::claims::{run_all, search_parameter, ClaimError, RunOptions, Status};
use sympgen::construct::{build, default_recipe, field_of_order, gram, resolve_a, tau_of, Recipe};
use sympgen::grouporder::{prime_power_parts, Certificate};

#[derive(Parser)]
#[command(
    name = "sympgen",
    version,
    about = "(2,3)-generating pairs for Sp_2n(q)"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(clap::Args)]
struct PairArgs {
    /// Half-dimension.
    #[arg(long)]
    n: usize,
    /// Field order.
    #[arg(long)]
    q: u64,
    /// The parameter: an element of GF(q) or `minpoly:c0,c1,...`.
    #[arg(long)]
    a: Option<String>,
    /// general, n5, n6alt or n8alt; defaults to the one the construction uses.
    #[arg(long)]
    recipe: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build x and y and dump them with J.
    Build {
        #[command(flatten)]
        pair: PairArgs,
        /// Also dump tau.
        #[arg(long)]
        dump_tau: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the claims whose ids match a glob.
    Verify {
        #[arg(default_value = "*")]
        filter: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Record wall times (makes the output run-dependent).
        #[arg(long)]
        timings: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// List the admissible a of a lemma over GF(q).
    Search {
        #[arg(long)]
        lemma: String,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Certify that a pair generates Sp_2n(q) from the prime sets of words.
    Certify {
        #[command(flatten)]
        pair: PairArgs,
        /// A file with one word in x and y per line, or `default` for the
        /// bundled words of this (n, q).
        #[arg(long)]
        words: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// List the field moduli in use.
    Fields {
        /// Largest field order listed.
        #[arg(long, default_value_t = 64)]
        max: u64,
    },
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn threads() -> Result<Option<usize>> {
    match std::env::var("SYMPGEN_THREADS") {
        Ok(v) => {
            let t: usize = v
                .trim()
                .parse()
                .map_err(|_| anyhow!("SYMPGEN_THREADS must be a positive integer, got {v:?}"))?;
            if t == 0 {
                bail!("SYMPGEN_THREADS must be positive");
            }
            Ok(Some(t))
        }
        Err(_) => Ok(None),
    }
}

fn build_pair(args: &PairArgs) -> Result<sympgen::construct::GeneratorPair> {
    let k = field_of_order(args.q)?;
    let a = resolve_a(&k, args.a.as_deref().unwrap_or("1"))?;
    let recipe = match &args.recipe {
        Some(r) => Recipe::parse(r)?,
        None => default_recipe(args.n, args.q),
    };
    Ok(build(recipe, args.n, &k, a)?)
}

fn cmd_build(pair: &PairArgs, dump_tau: bool, output: Option<&PathBuf>) -> Result<ExitCode> {
    let pr = build_pair(pair)?;
    let mut out = format!(
        "# {}\n# x^2 = I, y^3 = I, x'Jx = y'Jy = J: verified\n",
        pr.describe()
    );
    out.push_str("# x\n");
    out.push_str(&pr.x.dump());
    out.push_str("# y\n");
    out.push_str(&pr.y.dump());
    out.push_str("# J\n");
    out.push_str(&gram(pr.field(), pr.n).dump());
    if dump_tau {
        out.push_str("# tau\n");
        out.push_str(&tau_of(&pr)?.dump());
    }
    emit(output, &out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    filter: &str,
    format: Format,
    timings: bool,
    output: Option<&PathBuf>,
) -> Result<ExitCode> {
    let opts = RunOptions {
        threads: threads()?,
        timings,
    };
    let report = run_all(filter, &opts)?;
    let text = match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => {
            let mut s = String::new();
            for c in &report.claims {
                let status = match &c.status {
                    Status::Pass => "pass".to_string(),
                    Status::Fail => "FAIL".to_string(),
                    Status::OpenQuestionResolved(d) => format!("pass (resolved: {d})"),
                };
                s.push_str(&format!("{:<20} {status}\n", c.id));
                if c.status.is_fail() {
                    for (name, got) in &c.computed {
                        let want = &c.expected[name];
                        if want != got {
                            s.push_str(&format!("    {name}: expected {want}, computed {got}\n"));
                        }
                    }
                }
            }
            let m = &report.summary;
            s.push_str(&format!(
                "{} claims: {} pass, {} fail, {} open question resolved\n",
                m.total, m.pass, m.fail, m.open_question_resolved
            ));
            s
        }
    };
    emit(output, &text)?;
    if report.summary.total == 0 {
        eprintln!("note: no claim matches {filter:?}");
    }
    Ok(if report.any_fail() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_search(lemma: &str, q: u64, format: Format) -> Result<ExitCode> {
    let (k, found) = match search_parameter(lemma, q) {
        Ok(r) => r,
        Err(ClaimError::NotApplicable(m)) => bail!("{m}"),
        Err(e) => return Err(e.into()),
    };
    let vals: Vec<String> = found.iter().map(|&b| k.format(b)).collect();
    match format {
        Format::Json => println!("{}", serde_json::to_string(&vals)?),
        Format::Text => {
            for v in &vals {
                println!("{v}");
            }
        }
    }
    if vals.is_empty() {
        eprintln!("note: no admissible a for {lemma} over GF({q})");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_certify(pair: &PairArgs, words: &str, format: Format) -> Result<ExitCode> {
    let (pr, ws) = if words == "default" {
        let claim = default_words(pair.n, pair.q)?
            .ok_or_else(|| anyhow!("no bundled words for n = {}, q = {}", pair.n, pair.q))?;
        if pair.a.is_some() || pair.recipe.is_some() {
            eprintln!(
                "note: the bundled words fix a = {}; --a and --recipe are ignored",
                claim.a
            );
        }
        (claim.pair(pair.n)?, claim.witnesses(pair.n)?)
    } else {
        let pr = build_pair(pair)?;
        let src = fs::read_to_string(words).with_context(|| format!("reading {words}"))?;
        let sc = Scope::new().with("x", pr.x.clone()).with("y", pr.y.clone());
        let mut ws = Vec::new();
        for line in src
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            ws.push(
                sc.eval_str(line)
                    .with_context(|| format!("word {line:?}"))?,
            );
        }
        (pr, ws)
    };
    let r = certify_pair(&pr, &ws)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&r)?),
        Format::Text => {
            println!("pair:      {}", r.pair);
            println!("target:    {}", r.target);
            println!("witnesses: {}", r.witnesses);
            println!("primes:    {} of {}", r.witnessed_primes, r.target_primes);
            if let Some(f) = &r.quadratic_form {
                println!(
                    "quadratic form: {}",
                    serde_json::to_value(f)?.as_str().unwrap_or("?")
                );
            }
            let v = match &r.certificate {
                Certificate::Certified => "certified".to_string(),
                Certificate::ExceptionPossible => "exception possible".to_string(),
                Certificate::Inconclusive { missing } => format!("inconclusive, missing {missing}"),
            };
            println!("verdict:   {v}");
        }
    }
    Ok(if r.certificate == Certificate::Certified {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_fields(max: u64) -> Result<ExitCode> {
    for q in 2..=max {
        if prime_power_parts(q).is_err() {
            continue;
        }
        let k = field_of_order(q)?;
        println!("{q:>6}  {}", k.spec());
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match &cli.cmd {
        Cmd::Build {
            pair,
            dump_tau,
            output,
        } => cmd_build(pair, *dump_tau, output.as_ref()),
        Cmd::Verify {
            filter,
            format,
            timings,
            output,
        } => cmd_verify(filter, *format, *timings, output.as_ref()),
        Cmd::Search { lemma, q, format } => cmd_search(lemma, *q, *format),
        Cmd::Certify {
            pair,
            words,
            format,
        } => cmd_certify(pair, words, *format),
        Cmd::Fields { max } => cmd_fields(*max),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
