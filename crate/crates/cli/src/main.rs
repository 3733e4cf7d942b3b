mod problem;

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use splitgenus::bounds::{
    angle_bound_r, bound_b1, bound_b2, lemma_bound_canonical, lemma_bound_custom, x0_level_filter, AngleSet,
    BoundReport, BoundValue, Method,
};
use splitgenus::exactnum::rational;
use splitgenus::lpsolve::{
    enumerate_vectors_parallel, ilp_maximize, lp_maximize, solve_auto, verify_certificate, Certificate, LPResult,
    LpStatus,
};
use splitgenus::places::{inequality_system, LinearSystem};
use splitgenus::weil::{admissible_elliptic_traces, ClassSpec, DecompositionVector};
use splitgenus::{reproduce, Error};

use problem::{Degree, MethodArg, Overrides, Problem, ProblemArgs};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
    InvalidCertificate(String),
}

impl CliError {
    /// Library errors caused by bad input rather than by the computation.
    pub fn input(e: Error) -> Self {
        match e {
            Error::InvalidFieldSize(_)
            | Error::WeilBound { .. }
            | Error::TraceNotAdmissible { .. }
            | Error::InvalidWeilPolynomial(_)
            | Error::InconsistentFieldSize { .. }
            | Error::Parse(_)
            | Error::Invalid(_) => CliError::Usage(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Compute(_) => 2,
            CliError::InvalidCertificate(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "splitgenus", version, about = "Genus bounds for curves with prescribed Frobenius angles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bound the genus by one method, or by all of them
    Bound {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        /// Coefficients a_1..a_n of a custom T, each `a` or `a:b` for a + b sqrt(q)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t_coeffs: Option<Vec<String>>,
        /// Angles as rational multiples of pi, e.g. 0,1/3,1
        #[arg(long, value_delimiter = ',')]
        angles: Option<Vec<String>>,
        /// Write the LP dual certificate, with its system, to this file
        #[arg(long, value_name = "FILE")]
        emit_cert: Option<String>,
    },
    /// List feasible decompositions of a given genus
    Enumerate {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        genus: Option<u64>,
        /// Worker threads for the search
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Traces of elliptic curves over F_q
    Traces {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check a dual certificate file
    VerifyCert {
        file: String,
        /// Used when the certificate does not embed its system
        #[command(flatten)]
        problem: ProblemArgs,
    },
    /// Largest level N with genus(X_0(N)) possibly at most G
    X0Filter {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run the reproduction suite
    ReproducePaper {
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = match &e {
                CliError::Usage(m) | CliError::Compute(m) => format!("error: {m}"),
                CliError::InvalidCertificate(m) => format!("invalid certificate: {m}"),
            };
            eprintln!("{msg}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Bound { problem, method, t_coeffs, angles, emit_cert } => {
            let p = problem.resolve(Overrides { method, genus: None, t_coeffs, angles })?;
            cmd_bound(&p, emit_cert.as_deref())
        }
        Command::Enumerate { problem, genus, jobs } => {
            let p = problem.resolve(Overrides { method: None, genus, t_coeffs: None, angles: None })?;
            cmd_enumerate(&p, jobs)
        }
        Command::Traces { q, json } => cmd_traces(q, json),
        Command::VerifyCert { file, problem } => cmd_verify_cert(&file, &problem),
        Command::X0Filter { genus, json } => cmd_x0_filter(genus, json),
        Command::ReproducePaper { json } => cmd_reproduce(json),
    }
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable output"));
}

/// JSON emitted by `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundOutput {
    pub format: u32,
    pub q: u64,
    pub reports: Vec<BoundReport>,
    /// Methods that did not apply, with the reason.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub skipped: BTreeMap<String, String>,
    pub best: Method,
    #[serde(with = "rational::serde_bigint")]
    pub genus_cap: BigInt,
}

fn angle_set(p: &Problem) -> Result<AngleSet, CliError> {
    match &p.angles {
        Some(rs) => AngleSet::from_pi_multiples(p.q, rs).map_err(CliError::input),
        None => AngleSet::from_classes(p.q, &p.classes).map_err(CliError::input),
    }
}

fn need_classes(p: &Problem) -> Result<(), CliError> {
    if p.classes.is_empty() {
        return Err(CliError::Usage("no classes given: pass --traces, --classes or --problem".into()));
    }
    Ok(())
}

fn run_b1(p: &Problem) -> Result<BoundReport, CliError> {
    let set = angle_set(p)?;
    if set.is_empty() {
        return Err(CliError::Compute(Error::NoConstraint.to_string()));
    }
    Ok(bound_b1(p.q, set.s() as u64))
}

fn run_b2(p: &Problem) -> Result<BoundReport, CliError> {
    let set = angle_set(p)?;
    if set.is_empty() {
        return Err(CliError::Compute(Error::NoConstraint.to_string()));
    }
    Ok(bound_b2(p.q, &angle_bound_r(&set)))
}

fn run_lemma(p: &Problem) -> Result<BoundReport, CliError> {
    let set = angle_set(p)?;
    match &p.t_coeffs {
        Some(coeffs) => lemma_bound_custom(&set, coeffs).map_err(CliError::input),
        None => lemma_bound_canonical(&set).map(|(r, _)| r).map_err(CliError::input),
    }
}

/// The system at the requested degree, escalating for `auto`.
fn system_for(p: &Problem) -> Result<LinearSystem, CliError> {
    need_classes(p)?;
    match p.degree {
        Degree::Fixed(d) => inequality_system(p.q, &p.classes, d).map_err(CliError::input),
        Degree::Auto => solve_auto(p.q, &p.classes, p.d_max, false).map(|a| a.system).map_err(CliError::input),
    }
}

fn lp_report(method: Method, sys: &LinearSystem, r: &LPResult) -> Result<BoundReport, CliError> {
    match r.status {
        LpStatus::Optimal => {}
        LpStatus::Unbounded => return Err(CliError::Compute(Error::Unbounded.to_string())),
        LpStatus::Infeasible => return Err(CliError::Compute(Error::Infeasible.to_string())),
    }
    let value = r.value.clone().expect("optimal result has a value");
    Ok(BoundReport::new(method, BoundValue::rational(value), false).with("D", sys.degree))
}

fn run_lp(p: &Problem, emit_cert: Option<&str>) -> Result<BoundReport, CliError> {
    let sys = system_for(p)?;
    let lp = lp_maximize(&sys);
    let report = lp_report(Method::Lp, &sys, &lp)?;
    if let Some(path) = emit_cert {
        let cert = verify_certificate(&sys, &lp.dual).map_err(CliError::input)?.with_system(&sys);
        let text = serde_json::to_string_pretty(&cert).expect("serializable certificate");
        std::fs::write(path, text + "\n").map_err(|e| CliError::Usage(format!("cannot write {path}: {e}")))?;
    }
    Ok(report)
}

fn run_ilp(p: &Problem) -> Result<BoundReport, CliError> {
    let sys = system_for(p)?;
    let ilp = ilp_maximize(&sys).map_err(CliError::input)?;
    lp_report(Method::Ilp, &sys, &ilp)
}

fn cmd_bound(p: &Problem, emit_cert: Option<&str>) -> Result<(), CliError> {
    let method = p.method.unwrap_or(MethodArg::All);
    if emit_cert.is_some() && !matches!(method, MethodArg::Lp | MethodArg::All) {
        return Err(CliError::Usage("--emit-cert needs --method lp or all".into()));
    }
    let mut reports = Vec::new();
    let mut skipped = BTreeMap::new();
    if method == MethodArg::All {
        let lp_ok = !p.classes.is_empty() && p.angles.is_none();
        for name in ["b1", "b2", "lemma", "lp", "ilp"] {
            let attempt = match name {
                "b1" => run_b1(p),
                "b2" => run_b2(p),
                "lemma" => run_lemma(p),
                _ if !lp_ok => Err(CliError::Usage("needs classes".into())),
                "lp" => run_lp(p, emit_cert),
                _ => run_ilp(p),
            };
            match attempt {
                Ok(r) => reports.push(r),
                Err(CliError::Usage(m) | CliError::Compute(m) | CliError::InvalidCertificate(m)) => {
                    skipped.insert(name.to_string(), m);
                }
            }
        }
        if reports.is_empty() {
            let why: Vec<String> = skipped.iter().map(|(k, v)| format!("{k}: {v}")).collect();
            return Err(CliError::Compute(format!("no method applies ({})", why.join("; "))));
        }
    } else {
        reports.push(match method {
            MethodArg::B1 => run_b1(p)?,
            MethodArg::B2 => run_b2(p)?,
            MethodArg::Lemma => run_lemma(p)?,
            MethodArg::Lp => run_lp(p, emit_cert)?,
            MethodArg::Ilp => run_ilp(p)?,
            MethodArg::All => unreachable!(),
        });
    }
    if p.approx {
        for r in reports.iter_mut() {
            r.details.insert("approx".into(), r.value.render(true));
        }
    }
    // Ties go to the later, sharper method.
    let best = reports.iter().rev().min_by(|a, b| a.genus_cap.cmp(&b.genus_cap)).expect("at least one report");
    let out = BoundOutput {
        format: 1,
        q: p.q,
        best: best.method,
        genus_cap: best.genus_cap.clone(),
        reports: reports.clone(),
        skipped,
    };
    if p.json {
        print_json(&out);
        return Ok(());
    }
    for r in &out.reports {
        let rel = if r.strict { "<" } else { "<=" };
        let mut line = format!("{}: g {rel} {}  genus_cap {}", r.method, r.value.render(p.approx), r.genus_cap);
        let extra: Vec<String> =
            r.details.iter().filter(|(k, _)| *k != "approx").map(|(k, v)| format!("{k}={v}")).collect();
        if !extra.is_empty() {
            line.push_str(&format!("  ({})", extra.join(", ")));
        }
        println!("{line}");
    }
    for (name, why) in &out.skipped {
        println!("{name}: skipped ({why})");
    }
    if out.reports.len() > 1 {
        println!("genus_cap {} ({})", out.genus_cap, out.best);
    }
    Ok(())
}

/// JSON emitted by `enumerate`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateOutput {
    pub format: u32,
    pub q: u64,
    #[serde(rename = "D")]
    pub degree: usize,
    pub genus: u64,
    pub classes: Vec<ClassSpec>,
    pub vectors: Vec<Vec<u64>>,
}

fn cmd_enumerate(p: &Problem, jobs: usize) -> Result<(), CliError> {
    let g = p.genus.ok_or_else(|| CliError::Usage("enumerate needs --genus".into()))?;
    let sys = system_for(p)?;
    let vectors = enumerate_vectors_parallel(&sys, g, jobs.max(1));
    if p.json {
        print_json(&EnumerateOutput {
            format: 1,
            q: p.q,
            degree: sys.degree,
            genus: g,
            classes: p.classes.iter().map(ClassSpec::from).collect(),
            vectors,
        });
        return Ok(());
    }
    for e in vectors {
        let dec = DecompositionVector::new(p.classes.clone(), e).map_err(CliError::input)?;
        println!("{}", dec.display_product());
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TracesOutput {
    pub format: u32,
    pub q: u64,
    pub traces: Vec<i64>,
}

fn cmd_traces(q: u64, json: bool) -> Result<(), CliError> {
    let traces = admissible_elliptic_traces(q).map_err(CliError::input)?;
    if json {
        print_json(&TracesOutput { format: 1, q, traces });
    } else {
        let s: Vec<String> = traces.iter().map(i64::to_string).collect();
        println!("{}", s.join(" "));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub format: u32,
    pub valid: bool,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_bigint")]
    pub genus_cap: Option<BigInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

mod opt_bigint {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};
    use splitgenus::exactnum::rational::serde_bigint;

    pub fn serialize<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => serde_bigint::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "serde_bigint")] BigInt);
        Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
    }
}

fn cmd_verify_cert(file: &str, args: &ProblemArgs) -> Result<(), CliError> {
    let mut cert: Certificate = problem::read_json(file)?;
    if cert.format != 1 {
        return Err(CliError::Usage(format!("unsupported certificate format {}", cert.format)));
    }
    if cert.system.is_none() {
        let p = args.resolve(Overrides { method: None, genus: None, t_coeffs: None, angles: None })?;
        let Degree::Fixed(_) = p.degree else {
            return Err(CliError::Usage("certificate has no system: pass --degree with --q and --traces".into()));
        };
        cert.system = Some(system_for(&p)?);
    }
    let outcome = cert.check();
    if args.json {
        let out = match &outcome {
            Ok(cap) => VerifyOutput { format: 1, valid: true, genus_cap: Some(cap.clone()), error: None },
            Err(e) => VerifyOutput { format: 1, valid: false, genus_cap: None, error: Some(e.to_string()) },
        };
        print_json(&out);
    }
    match outcome {
        Ok(cap) => {
            if !args.json {
                println!("valid, genus ≤ {cap}");
            }
            Ok(())
        }
        Err(e) => Err(CliError::InvalidCertificate(e.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct X0Output {
    pub format: u32,
    pub genus: u64,
    pub max_level: u64,
}

fn cmd_x0_filter(genus: u64, json: bool) -> Result<(), CliError> {
    let max_level = x0_level_filter(genus);
    if json {
        print_json(&X0Output { format: 1, genus, max_level });
    } else {
        println!("{max_level}");
    }
    Ok(())
}

fn cmd_reproduce(json: bool) -> Result<(), CliError> {
    let results = reproduce::run_all();
    if json {
        print_json(&serde_json::json!({ "format": 1, "criteria": results }));
    } else {
        for r in &results {
            let tag = if r.passed { "PASS" } else { "FAIL" };
            println!("{tag} {:>2}  {:<52} {:>7.2}s  {}", r.id, r.title, r.seconds, r.detail);
        }
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(CliError::Compute(format!("{failed} of {} criteria failed", results.len())));
    }
    Ok(())
}
