//! Command runner behind the `graphknot` binary.
//!
//! Exit codes: 0 when everything verified, 1 when an input could not be
//! parsed or validated, 2 when the mathematics failed to verify (hypothesis
//! failure, containment failure or oracle mismatch). Input errors take
//! precedence.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

use graphknot::explain::{explain, steps_text};
use graphknot::generate::{random_batch, GenConfig};
use graphknot::oracle::{cross_validate, MIN_FIT_COLOR};
use graphknot::report::Report;
use graphknot::{parse, verify_conjecture_with, Error, ProfileOptions, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNVERIFIED: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Verify,
    OracleCheck,
    Batch,
    Explain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub enum Input {
    Text(String),
    File(PathBuf),
    None,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub input: Input,
    pub max_color: u32,
    pub include_meridian: bool,
    pub output: Output,
    pub seed: u64,
    pub count: usize,
    pub gen: GenConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: Command::Verify,
            input: Input::None,
            max_color: 8,
            include_meridian: false,
            output: Output::Text,
            seed: 0,
            count: 200,
            gen: GenConfig::default(),
        }
    }
}

/// Parses `"pmax,qmax"`.
pub fn parse_bounds(s: &str) -> Result<(i64, i64)> {
    let (p, q) = s
        .split_once(',')
        .context("bounds must look like PMAX,QMAX")?;
    Ok((p.trim().parse()?, q.trim().parse()?))
}

/// Expressions from a file: one per line, blank lines and lines starting
/// with `#` skipped.
pub fn read_expressions(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    if cfg.command == Command::Batch {
        return run_batch(cfg, out);
    }
    if cfg.command == Command::OracleCheck && cfg.max_color < MIN_FIT_COLOR {
        bail!("--max-color must be at least {MIN_FIT_COLOR} for oracle fitting");
    }
    let (texts, many) = match &cfg.input {
        Input::Text(t) => (vec![t.clone()], false),
        Input::File(path) => {
            let body = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            (read_expressions(&body), true)
        }
        Input::None => bail!("an expression or --file is required"),
    };

    let opts = ProfileOptions {
        include_meridian: cfg.include_meridian,
    };
    let outcomes: Vec<Outcome> = texts.iter().map(|t| run_one(cfg, opts, t)).collect();

    match cfg.output {
        Output::Json => {
            let docs: Vec<&Value> = outcomes.iter().map(|o| &o.json).collect();
            let v = if many { json!(docs) } else { docs[0].clone() };
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        Output::Text => {
            for (i, o) in outcomes.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                write!(out, "{}", o.text)?;
            }
        }
    }
    Ok(outcomes.iter().map(|o| o.code).fold(EXIT_OK, combine))
}

fn combine(a: i32, b: i32) -> i32 {
    if a == EXIT_INPUT || b == EXIT_INPUT {
        EXIT_INPUT
    } else {
        a.max(b)
    }
}

struct Outcome {
    code: i32,
    text: String,
    json: Value,
}

fn input_error(text: &str, e: &Error) -> Outcome {
    Outcome {
        code: EXIT_INPUT,
        text: format!("{text}\nerror: {e}\n"),
        json: json!({ "expression": text, "error": e.to_string() }),
    }
}

fn verdict_code(v: &Verdict) -> i32 {
    if v.is_verified() {
        EXIT_OK
    } else {
        EXIT_UNVERIFIED
    }
}

fn run_one(cfg: &RunConfig, opts: ProfileOptions, text: &str) -> Outcome {
    let k = match parse(text) {
        Ok(k) => k,
        Err(e) => return input_error(text, &e),
    };
    match cfg.command {
        Command::Analyze | Command::Verify => match verify_conjecture_with(&k, opts) {
            Ok(r) => {
                let report = Report::from(&r);
                let (body, mut json) = if cfg.command == Command::Analyze {
                    let mut v = serde_json::to_value(&report).expect("serializable");
                    if let Value::Object(m) = &mut v {
                        m.remove("membership_table");
                        m.remove("condition_trail");
                    }
                    (report.profile_text(), v)
                } else {
                    (report.text(), serde_json::to_value(&report).expect("serializable"))
                };
                if let Value::Object(m) = &mut json {
                    m.insert("input".into(), json!(text.trim()));
                }
                Outcome {
                    code: verdict_code(&r.profile.verdict),
                    text: body,
                    json,
                }
            }
            Err(e) => input_error(text, &e),
        },
        Command::OracleCheck => match cross_validate(&k, cfg.max_color) {
            Ok(r) => {
                let mut s = format!("expression: {}\n", r.expression);
                for smp in &r.samples {
                    s += &format!(
                        "  n = {:>2}: max {:>5} (delta {:>5})  min {:>5} (delta* {:>5})\n",
                        smp.n,
                        smp.max,
                        graphknot::rational::to_short_string(&smp.delta),
                        smp.min,
                        graphknot::rational::to_short_string(&smp.delta_star),
                    );
                }
                if r.passed() {
                    s += "oracle: all degrees match, period-2 fit reproduces (delta, delta*)\n";
                } else {
                    for m in &r.mismatches {
                        s += &format!("MISMATCH: {m}\n");
                    }
                }
                let mut json = serde_json::to_value(&r).expect("serializable");
                if let Value::Object(m) = &mut json {
                    m.insert("passed".into(), json!(r.passed()));
                }
                Outcome {
                    code: if r.passed() { EXIT_OK } else { EXIT_UNVERIFIED },
                    text: s,
                    json,
                }
            }
            Err(e) => input_error(text, &e),
        },
        Command::Explain => match (explain(&k, opts), verify_conjecture_with(&k, opts)) {
            (Ok(steps), Ok(r)) => Outcome {
                code: verdict_code(&r.profile.verdict),
                text: format!("{}verdict: {}\n", steps_text(&steps), r.profile.verdict),
                json: json!({
                    "expression": r.profile.expression,
                    "steps": steps,
                    "verdict": r.profile.verdict,
                }),
            },
            (Err(e), _) | (_, Err(e)) => input_error(text, &e),
        },
        Command::Batch => unreachable!(),
    }
}

fn run_batch(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    if let Err(e) = cfg.gen.check() {
        bail!(e);
    }
    let opts = ProfileOptions {
        include_meridian: cfg.include_meridian,
    };
    let exprs = random_batch(cfg.seed, cfg.count, &cfg.gen);
    // rayon's indexed collect keeps input order
    let verdicts: Vec<Result<Verdict, Error>> = exprs
        .par_iter()
        .map(|k| verify_conjecture_with(k, opts).map(|r| r.profile.verdict))
        .collect();

    let mut verified = 0usize;
    let mut hypothesis = 0usize;
    let mut other = 0usize;
    let mut errors = 0usize;
    let mut rows = Vec::with_capacity(exprs.len());
    for (i, (k, v)) in exprs.iter().zip(&verdicts).enumerate() {
        let (status, detail) = match v {
            Ok(Verdict::VerifiedSupersetLevel) => {
                verified += 1;
                ("VerifiedSupersetLevel", String::new())
            }
            Ok(Verdict::HypothesisFailure(d)) => {
                hypothesis += 1;
                ("HypothesisFailure", d.clone())
            }
            Ok(v) => {
                other += 1;
                ("Unverified", v.to_string())
            }
            Err(e) => {
                errors += 1;
                ("Error", e.to_string())
            }
        };
        rows.push((i, k.render(), status, detail));
    }

    match cfg.output {
        Output::Json => {
            let results: Vec<Value> = rows
                .iter()
                .map(|(i, e, s, d)| json!({"index": i, "expression": e, "verdict": s, "detail": d}))
                .collect();
            let doc = json!({
                "seed": cfg.seed,
                "count": cfg.count,
                "depth": cfg.gen.max_depth,
                "bounds": [cfg.gen.max_abs_p, cfg.gen.max_q],
                "summary": {
                    "verified": verified,
                    "hypothesis_failures": hypothesis,
                    "unverified": other,
                    "errors": errors,
                },
                "results": results,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Output::Text => {
            for (i, e, s, d) in &rows {
                if d.is_empty() {
                    writeln!(out, "{i:>4}  {s:<22} {e}")?;
                } else {
                    writeln!(out, "{i:>4}  {s:<22} {e}  [{d}]")?;
                }
            }
            writeln!(
                out,
                "summary: {verified} verified, {hypothesis} hypothesis failures, {other} unverified, {errors} errors (seed {}, count {})",
                cfg.seed, cfg.count
            )?;
        }
    }
    Ok(if errors > 0 {
        EXIT_INPUT
    } else if hypothesis + other > 0 {
        EXIT_UNVERIFIED
    } else {
        EXIT_OK
    })
}
