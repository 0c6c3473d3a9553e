use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use regwt::catalog;
use regwt::record::{analyze, key_of, AnalysisRecord, CheckSet, Options, Toggle, Verifications, WeightRef};
use regwt_core::duality::{check_dual_type_props, dual_search, dual_type};
use regwt_core::orbifold::is_dual_pair;
use regwt_core::{Error, WeightSystem};
use serde::Serialize;

const PASS: u8 = 0;
const FAIL: u8 = 1;
const INVALID: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "regwt", version)]
#[command(about = "Invariants, duality and graded-ring checks for regular systems of weights")]
#[command(after_help = "EXAMPLES:
    regwt analyze 6 14 21 42 --json
    regwt dual 3 8 12 24
    regwt verify 3 4 5 13 --theorem --max-degree 26
    regwt enumerate --h-max 24 --dual-only --out catalog.jsonl --jobs 4

EXIT STATUS:
    0 all checks passed, 1 a check failed, 2 invalid input, usage or I/O error")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full invariants and every applicable check for one weight system
    Analyze(AnalyzeArgs),
    /// Dual candidates, the classified dual and both duality verdicts
    Dual(DualArgs),
    /// Write a line-delimited JSON catalog of regular systems
    Enumerate(EnumerateArgs),
    /// Run selected checks and report witnesses of failure
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct Weights {
    a1: u64,
    a2: u64,
    a3: u64,
    h: u64,
}

impl Weights {
    fn system(&self) -> Result<WeightSystem, Error> {
        WeightSystem::new([self.a1, self.a2, self.a3], self.h)
    }
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    weights: Weights,
    /// Print one JSON document instead of text
    #[arg(long)]
    json: bool,
    /// Top degree for the presentation check [default: 2h]
    #[arg(long)]
    max_degree: Option<usize>,
    /// Orbifold series and mirror identity [auto: on for h <= 30]
    #[arg(long, value_enum, default_value = "auto")]
    orbifold: Toggle,
}

#[derive(Args, Debug)]
struct DualArgs {
    #[command(flatten)]
    weights: Weights,
    #[arg(long)]
    json: bool,
    #[arg(long, value_enum, default_value = "auto")]
    orbifold: Toggle,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    h_max: u64,
    /// Output file [default: stdout]
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Only systems that fall into one of the five families
    #[arg(long)]
    dual_only: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long, value_enum, default_value = "auto")]
    orbifold: Toggle,
    /// Invariants and classification only
    #[arg(long)]
    no_verify: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    weights: Weights,
    /// Presentation of the graded ring by x, y, z and f_W
    #[arg(long)]
    theorem: bool,
    /// Existence and degree of ω_W
    #[arg(long)]
    lemma: bool,
    /// Involution, signatures and characteristic-polynomial duality
    #[arg(long)]
    saito: bool,
    /// Mirror identity for orbifold Poincaré series
    #[arg(long)]
    orbifold: bool,
    /// Graded Milnor algebra of f_W
    #[arg(long)]
    milnor: bool,
    /// Length of the exceptional collection
    #[arg(long)]
    exceptional: bool,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Dual(a) => cmd_dual(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Verify(a) => cmd_verify(a),
    };
    ExitCode::from(code.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        INVALID
    }))
}

fn print_json(value: &impl Serialize) -> Result<(), Error> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Error::Unsupported(e.to_string()))?;
    println!("{s}");
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn print_verifications(v: &Verifications) {
    for (name, check) in v.entries() {
        if let Some(c) = check {
            println!("  {name}: {}", verdict(c.passed));
            for w in &c.witnesses {
                println!("    {w}");
            }
        }
    }
}

fn print_record(r: &AnalysisRecord) {
    let me = WeightRef {
        weights: r.weights,
        h: r.h,
    };
    println!("{me}");
    println!("regular: {}", yes_no(r.regular));
    let Some(inv) = &r.invariants else {
        return;
    };
    println!("mu = {}, epsilon = {}, genus = {}", inv.mu, inv.epsilon, inv.genus);
    let alphas: Vec<String> = inv.signature.alphas.iter().map(u64::to_string).collect();
    println!("signature: ({};{})", inv.signature.genus, alphas.join(","));
    let exps: Vec<String> = inv.exponents.iter().map(i64::to_string).collect();
    println!("exponents: {}", exps.join(" "));
    let phi: Vec<String> = inv.cyclotomic.iter().map(|(d, e)| format!("{d}^{e}")).collect();
    println!("phi: {}", phi.join(" "));
    if r.classification.is_empty() {
        println!("type: none (not of dual type)");
    }
    for c in &r.classification {
        let p: Vec<String> = c.params.iter().map(u64::to_string).collect();
        println!("type: {}({}) as {}", c.tag, p.join(","), c.family_weights);
    }
    if let Some(d) = &r.dual {
        if key_of(d.weights, d.h) == key_of(r.weights, r.h) {
            println!("dual: {d} (self-dual)");
        } else {
            println!("dual: {d}");
        }
    }
    if let Some(terms) = &r.orbifold_principal {
        let t: Vec<String> = terms.iter().map(|(e, c)| format!("[{e}] {c}")).collect();
        println!("orbifold G0 (unit 1/{}): {}", 2 * r.h, t.join(", "));
    }
    if r.verifications != Verifications::default() {
        println!("checks:");
        print_verifications(&r.verifications);
    }
}

fn status(v: &Verifications) -> u8 {
    if v.all_passed() {
        PASS
    } else {
        FAIL
    }
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<u8, Error> {
    let w = a.weights.system()?;
    let opts = Options {
        max_degree: a.max_degree,
        orbifold: a.orbifold,
        checks: CheckSet::ALL,
    };
    let record = analyze(&w, &opts, None)?;
    if a.json {
        print_json(&record)?;
    } else {
        print_record(&record);
    }
    if !record.regular {
        return Ok(INVALID);
    }
    Ok(status(&record.verifications))
}

#[derive(Serialize)]
struct DualReport {
    key: String,
    candidates: Vec<WeightRef>,
    classified_dual: Option<WeightRef>,
    self_dual: bool,
    saito_duality: Option<bool>,
    saito_failures: Vec<String>,
    orbifold_duality: Option<bool>,
}

fn cmd_dual(a: DualArgs) -> Result<u8, Error> {
    let w = a.weights.system()?;
    w.require_regular()?;
    let search = dual_search(&w)?;
    let mut report = DualReport {
        key: w.key(),
        candidates: search.candidates.iter().map(WeightRef::from).collect(),
        classified_dual: search.classified_dual.as_ref().map(WeightRef::from),
        self_dual: search.classified_dual.as_ref() == Some(&w),
        saito_duality: None,
        saito_failures: Vec::new(),
        orbifold_duality: None,
    };
    if let Some(d) = &search.classified_dual {
        let props = check_dual_type_props(&w)?;
        report.saito_duality = Some(props.passed());
        report.saito_failures = props.failures().into_iter().map(String::from).collect();
        let opts = Options {
            orbifold: a.orbifold,
            ..Options::default()
        };
        if opts.orbifold_enabled(w.h()) {
            report.orbifold_duality = Some(is_dual_pair(&w, d)?);
        }
    }
    if a.json {
        print_json(&report)?;
    } else {
        println!("{}", WeightRef::from(&w));
        let c: Vec<String> = report.candidates.iter().map(WeightRef::to_string).collect();
        println!("phi* candidates: {}", if c.is_empty() { String::from("none") } else { c.join(" ") });
        match &report.classified_dual {
            None => println!("not of dual type"),
            Some(d) if report.self_dual => println!("dual: {d} (self-dual)"),
            Some(d) => println!("dual: {d}"),
        }
        if let Some(ok) = report.saito_duality {
            println!("saito duality: {}", verdict(ok));
            for f in &report.saito_failures {
                println!("  {f}");
            }
        }
        if let Some(ok) = report.orbifold_duality {
            println!("orbifold duality: {}", verdict(ok));
        }
    }
    if report.classified_dual.is_none() {
        return Ok(INVALID);
    }
    let ok = report.saito_duality != Some(false) && report.orbifold_duality != Some(false);
    Ok(if ok { PASS } else { FAIL })
}

fn cmd_enumerate(a: EnumerateArgs) -> Result<u8, Error> {
    let opts = if a.no_verify {
        catalog::unverified()
    } else {
        Options {
            max_degree: a.max_degree,
            orbifold: a.orbifold,
            checks: CheckSet::ALL,
        }
    };
    let entries = catalog::build(a.h_max, a.dual_only, &opts, a.jobs)?;
    let io_err = |e: io::Error| Error::Unsupported(format!("I/O: {e}"));
    match &a.out {
        Some(path) => {
            let file = File::create(path).map_err(io_err)?;
            catalog::write_lines(&entries, &mut BufWriter::new(file)).map_err(io_err)?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            catalog::write_lines(&entries, &mut lock).map_err(io_err)?;
            lock.flush().map_err(io_err)?;
        }
    }
    let ok = entries.iter().all(|e| e.record.verifications.all_passed());
    Ok(if ok { PASS } else { FAIL })
}

fn cmd_verify(a: VerifyArgs) -> Result<u8, Error> {
    let w = a.weights.system()?;
    w.require_regular()?;
    let mut checks = CheckSet {
        theorem: a.theorem,
        lemma: a.lemma,
        saito: a.saito,
        orbifold: a.orbifold,
        milnor: a.milnor,
        exceptional: a.exceptional,
    };
    let orbifold = if checks.is_empty() {
        checks = CheckSet::ALL;
        Toggle::Auto
    } else if a.orbifold {
        Toggle::On
    } else {
        Toggle::Off
    };
    dual_type(&w)?;
    let opts = Options {
        max_degree: a.max_degree,
        orbifold,
        checks,
    };
    let record = analyze(&w, &opts, None)?;
    if a.json {
        #[derive(Serialize)]
        struct Out<'a> {
            key: String,
            verifications: &'a Verifications,
        }
        print_json(&Out {
            key: w.key(),
            verifications: &record.verifications,
        })?;
    } else {
        println!("{}", WeightRef::from(&w));
        print_verifications(&record.verifications);
    }
    Ok(status(&record.verifications))
}
