//! `abd`: command-line front end for clone identification, classification,
//! abduction solving, counting, enumeration, verification, instance
//! generation and representation synthesis.
//!
//! Exit codes: 0 success, 1 definite negative answer, 2 input error,
//! 3 budget exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use abduction_core::abduction::{
    oracle_count_full, oracle_enumerate, oracle_solve, validate_instance, verify_explanation,
    Explanation, Instance, SatCtx,
};
use abduction_core::boolean::{Connective, FunctionSet};
use abduction_core::io::{parse_base, parse_instance, write_instance};
use abduction_core::lattice::{
    classify_counting, classify_decision, identify_clone, signature_of, synthesize_representation,
    Variant, DEFAULT_SYNTH_BUDGET,
};
use abduction_core::par::Execution;
use abduction_core::reductions::{generate, random_source, Reduction, Source};
use abduction_core::solvers::{self, Method, SolveOutcome, SolverConfig, DEFAULT_BUDGET};
use abduction_core::AbdError;

#[derive(Parser)]
#[command(name = "abd", version, about = "Propositional abduction over restricted connective sets")]
struct Cli {
    /// Print a JSON payload instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock time in the payload.
    #[arg(long, global = true)]
    timing: bool,
    /// Run every search on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Identify the clone generated by a base file.
    Identify { base: PathBuf },
    /// Complexity labels for a base.
    Classify {
        base: PathBuf,
        /// Manifestation variant: all, Q, C, T or F.
        #[arg(long, default_value = "all")]
        variant: String,
        /// Classify counting full explanations instead of the decision problem.
        #[arg(long)]
        counting: bool,
    },
    /// Find an explanation.
    Solve(SolveArgs),
    /// Count full explanations.
    Count(SolveArgs),
    /// List full explanations in canonical order.
    Enumerate(SolveArgs),
    /// Check a candidate explanation, given as space-separated literals.
    Verify {
        instance: PathBuf,
        explanation: String,
    },
    /// Build an instance from a source problem via a reduction.
    Generate(GenArgs),
    /// Express a target function over a base.
    Repr {
        base: PathBuf,
        /// A `fn <name> <arity> <bits>` line, or a file holding one.
        target: String,
        #[arg(long, env = "ABD_BUDGET")]
        budget: Option<u64>,
    },
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    /// auto, oracle, or a solver path (literal-KB, V-witness, affine, monotone, general).
    #[arg(long, default_value = "auto")]
    method: String,
    /// Candidate budget for exhaustive paths.
    #[arg(long, env = "ABD_BUDGET")]
    budget: Option<u64>,
}

#[derive(Args)]
#[group(id = "input", required = true, args = ["seed", "source"])]
struct GenArgs {
    /// linsys, 2in3, 3sat-term, qsat2, pi1-count or pos2sat.
    #[arg(long)]
    reduction: String,
    #[arg(long)]
    base: PathBuf,
    /// Draw a random source problem from this seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Read the source problem from a file.
    #[arg(long)]
    source: Option<PathBuf>,
    /// Where to write the instance.
    #[arg(long)]
    out: PathBuf,
    /// Where to write the sidecar record (default: `<out>.json`).
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

/// Payload plus exit status of one command.
struct Output {
    code: u8,
    json: Value,
    text: String,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { code: 0, json, text }
    }
}

fn exit_code(e: &AbdError) -> u8 {
    match e {
        AbdError::Budget(_) => 3,
        AbdError::NoRepresentation => 1,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<String, AbdError> {
    fs::read_to_string(path).map_err(|e| AbdError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), AbdError> {
    fs::write(path, text).map_err(|e| AbdError::Input(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, AbdError> {
    let p = parse_instance(&read(path)?)?;
    let errs = validate_instance(&p);
    if !errs.is_empty() {
        return Err(AbdError::Input(errs.join("; ")));
    }
    Ok(p)
}

fn exec(cli: &Cli) -> Execution {
    if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn config(cli: &Cli, a: &SolveArgs) -> SolverConfig {
    SolverConfig {
        budget: a.budget.unwrap_or(DEFAULT_BUDGET),
        exec: exec(cli),
        ..SolverConfig::default()
    }
}

enum Choice {
    Auto,
    Oracle,
    Forced(Method),
}

fn choice(s: &str) -> Result<Choice, AbdError> {
    match s {
        "auto" => Ok(Choice::Auto),
        "oracle" => Ok(Choice::Oracle),
        m => Ok(Choice::Forced(m.parse()?)),
    }
}

fn show(e: &Explanation) -> String {
    if e.literals.is_empty() {
        "{}".to_string()
    } else {
        e.to_string()
    }
}

fn identify(path: &Path) -> Result<Output, AbdError> {
    let b = parse_base(&read(path)?)?;
    let c = identify_clone(&b);
    let json = json!({ "clone": c, "signature": signature_of(&b) });
    Ok(Output::ok(json, format!("clone: {c}\n")))
}

fn classify(path: &Path, variant: &str, counting: bool) -> Result<Output, AbdError> {
    let b = parse_base(&read(path)?)?;
    let c = identify_clone(&b);
    let rows: Vec<(String, String)> = if counting {
        vec![("count".into(), classify_counting(&b).to_string())]
    } else {
        let vs: Vec<Variant> = match variant {
            "all" => Variant::ALL.to_vec(),
            v => vec![v.parse()?],
        };
        vs.into_iter()
            .map(|v| (v.to_string(), classify_decision(&b, v).to_string()))
            .collect()
    };
    let mut text = format!("clone: {c}\n");
    for (v, l) in &rows {
        text += &format!("{v}: {l}\n");
    }
    let rows: Vec<Value> = rows.iter().map(|(v, l)| json!({ "variant": v, "label": l })).collect();
    Ok(Output::ok(json!({ "clone": c, "rows": rows }), text))
}

fn solve(cli: &Cli, a: &SolveArgs) -> Result<Output, AbdError> {
    let p = load_instance(&a.instance)?;
    let cfg = config(cli, a);
    let out = match choice(&a.method)? {
        Choice::Auto => solvers::solve(&p, &cfg)?,
        Choice::Forced(m) => solvers::solve_with_method(&p, m, &cfg)?,
        Choice::Oracle => SolveOutcome {
            explanation: oracle_solve(&p, cfg.exec)?,
            method: Method::Oracle,
            certificate_checked: false,
            candidates_tried: 0,
            sat_calls: 0,
        },
    };
    let mut json = json!({
        "found": out.found(),
        "method": out.method,
        "candidatesTried": out.candidates_tried,
        "satCalls": out.sat_calls,
    });
    let text = match &out.explanation {
        Some(e) => {
            json["explanation"] = json!(e);
            format!("explanation: {}\nmethod: {}\n", show(e), out.method)
        }
        None => format!("no explanation\nmethod: {}\n", out.method),
    };
    Ok(Output {
        code: if out.found() { 0 } else { 1 },
        json,
        text,
    })
}

fn count(cli: &Cli, a: &SolveArgs) -> Result<Output, AbdError> {
    let p = load_instance(&a.instance)?;
    let cfg = config(cli, a);
    let (count, method) = match choice(&a.method)? {
        Choice::Auto => {
            let c = solvers::count_full(&p, &cfg)?;
            (c.count, c.method)
        }
        Choice::Forced(m) => {
            let c = solvers::count_with_method(&p, m, &cfg)?;
            (c.count, c.method)
        }
        Choice::Oracle => (oracle_count_full(&p, cfg.exec)?, Method::Oracle),
    };
    let json = json!({ "count": count, "method": method, "exact": true });
    Ok(Output::ok(json, format!("count: {count}\nmethod: {method}\n")))
}

fn enumerate(cli: &Cli, a: &SolveArgs) -> Result<Output, AbdError> {
    let p = load_instance(&a.instance)?;
    let cfg = config(cli, a);
    let mut found = Vec::new();
    let method = match choice(&a.method)? {
        Choice::Oracle => {
            found = oracle_enumerate(&p, cfg.exec)?;
            Method::Oracle
        }
        Choice::Auto if solvers::enumeration_method(&p).is_some() => {
            // text mode streams each explanation as soon as it is produced
            let stream = !cli.json;
            solvers::enumerate_full(&p, &cfg, &mut |e| {
                if stream {
                    println!("{}", show(&e));
                } else {
                    found.push(e);
                }
            })?
        }
        Choice::Auto => {
            let (es, m) = solvers::enumerate_scan(&p, &cfg)?;
            found = es;
            m
        }
        Choice::Forced(m) => {
            return Err(AbdError::Input(format!(
                "enumerate takes --method auto or oracle, not {m}"
            )))
        }
    };
    let text: String = found.iter().map(|e| show(e) + "\n").collect();
    let json = json!({ "explanations": found, "count": found.len(), "method": method });
    Ok(Output::ok(json, text))
}

fn verify(path: &Path, explanation: &str) -> Result<Output, AbdError> {
    let p = load_instance(path)?;
    let e = Explanation::parse(explanation)?;
    let v = verify_explanation(&p, &e, &SatCtx::default())?;
    let text = format!(
        "isExplanation: {}\nsatisfiableWithE: {}\nentailsManifestation: {}\n",
        v.is_explanation, v.satisfiable_with_e, v.entails_manifestation
    );
    Ok(Output {
        code: if v.is_explanation { 0 } else { 1 },
        json: json!(v),
        text,
    })
}

fn gen(a: &GenArgs) -> Result<Output, AbdError> {
    let r: Reduction = a.reduction.parse()?;
    let base = parse_base(&read(&a.base)?)?;
    let src = match (&a.source, a.seed) {
        (Some(path), _) => Source::parse(r, &read(path)?)?,
        (None, Some(seed)) => random_source(r, seed),
        (None, None) => return Err(AbdError::Input("give --seed or --source".into())),
    };
    let g = generate(r, &src, &base)?;
    let sidecar_path = a.sidecar.clone().unwrap_or_else(|| {
        let mut s = a.out.clone().into_os_string();
        s.push(".json");
        PathBuf::from(s)
    });
    let sidecar = json!(g.sidecar);
    write(&a.out, &write_instance(&g.instance))?;
    write(&sidecar_path, &(serde_json::to_string_pretty(&sidecar).expect("plain record") + "\n"))?;

    let mut text = format!("instance: {}\nsidecar: {}\n", a.out.display(), sidecar_path.display());
    if let Some(b) = g.sidecar.expect_solvable {
        text += &format!("expectSolvable: {b}\n");
    }
    if let Some(c) = g.sidecar.expected_count {
        text += &format!("expectedCount: {c}\n");
    }
    if let Some(m) = g.sidecar.formula_models {
        text += &format!("formulaModels: {m}\n");
    }
    if let Some(n) = g.sidecar.n {
        text += &format!("n: {n}\n");
    }
    Ok(Output::ok(sidecar, text))
}

fn target_fn(arg: &str) -> Result<Connective, AbdError> {
    let text = if arg.trim_start().starts_with("fn ") {
        arg.to_string()
    } else {
        read(Path::new(arg))?
    };
    let fns: FunctionSet = parse_base(&text)?;
    let mut it = fns.iter();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok((**c).clone()),
        _ => Err(AbdError::Input("expected exactly one `fn` line as target".into())),
    }
}

fn repr(base: &Path, target: &str, budget: Option<u64>) -> Result<Output, AbdError> {
    let b = parse_base(&read(base)?)?;
    let t = target_fn(target)?;
    let tpl = synthesize_representation(&b, &t.table, budget.unwrap_or(DEFAULT_SYNTH_BUDGET))?;
    if tpl.table()? != t.table {
        return Err(AbdError::Internal(format!("representation of {} does not verify", t.name)));
    }
    let body = tpl.body.to_string();
    let json = json!({ "target": t.name, "params": tpl.params, "representation": body });
    Ok(Output::ok(json, format!("{body}\n")))
}

fn run(cli: &Cli) -> Result<Output, AbdError> {
    match &cli.cmd {
        Cmd::Identify { base } => identify(base),
        Cmd::Classify {
            base,
            variant,
            counting,
        } => classify(base, variant, *counting),
        Cmd::Solve(a) => solve(cli, a),
        Cmd::Count(a) => count(cli, a),
        Cmd::Enumerate(a) => enumerate(cli, a),
        Cmd::Verify {
            instance,
            explanation,
        } => verify(instance, explanation),
        Cmd::Generate(a) => gen(a),
        Cmd::Repr {
            base,
            target,
            budget,
        } => repr(base, target, *budget),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut out) => {
            let ms = start.elapsed().as_secs_f64() * 1e3;
            if cli.json {
                if cli.timing {
                    out.json["timeMs"] = json!(ms);
                }
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
                if cli.timing {
                    println!("timeMs: {ms:.3}");
                }
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                println!("{}", json!({ "error": e.to_string(), "exitCode": code }));
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
