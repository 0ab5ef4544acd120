//! Command-line interface: subcommands over built-in examples, front
//! description files, and algebra interchange files, with text and JSON
//! reports.
//!
//! Exit codes: `0` success, `1` internal error, `2` usage error, `3`
//! unknown example, `4` invalid `q`/`m`, `5` file I/O failure, `6`
//! malformed or invalid input data, `7` verification failure.

use crate::arith::{fq_make, Fq, QSqrt};
use crate::aug;
use crate::augcat;
use crate::dga::{build_dga, describe_generators, load_dga, save_dga, Dga};
use crate::front::{self, PlatFront};
use crate::ruling;
use crate::verify;
use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::json;
use std::fmt::Write as _;
use std::path::PathBuf;

const EXIT_INTERNAL: i32 = 1;
const EXIT_UNKNOWN_EXAMPLE: i32 = 3;
const EXIT_BAD_QM: i32 = 4;
const EXIT_IO: i32 = 5;
const EXIT_MALFORMED: i32 = 6;
const EXIT_VERIFY_FAILED: i32 = 7;

/// Checks whose outcome depends on the base-point linearization rule for
/// the degree-1 generators (marked with `*` in text reports).
const X_RULE_CONSUMERS: &[&str] = &[
    "m1_structure",
    "duality",
    "degree_count_graded",
    "degree_count_all",
    "tb_from_cohomology",
    "cohomological_cardinality",
];

#[derive(Parser)]
#[command(
    name = "legcard",
    version,
    about = "Legendrian-link invariants: differential graded algebras, augmentations, \
             normal rulings, and augmentation-category cardinalities"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
#[group(id = "input", required = true, multiple = false)]
struct InputArgs {
    /// Built-in example (unknot, unlink2, hopf, trefoil, m821, m945)
    #[arg(long, value_name = "NAME", group = "input")]
    example: Option<String>,
    /// Front description file (JSON)
    #[arg(long, value_name = "FILE", group = "input")]
    front: Option<PathBuf>,
    /// Algebra interchange file (JSON)
    #[arg(long = "dga", value_name = "FILE", group = "input")]
    dga_file: Option<PathBuf>,
}

#[derive(Args)]
#[group(id = "input", required = true, multiple = false)]
struct FrontInputArgs {
    /// Built-in example (unknot, unlink2, hopf, trefoil, m821, m945)
    #[arg(long, value_name = "NAME", group = "input")]
    example: Option<String>,
    /// Front description file (JSON)
    #[arg(long, value_name = "FILE", group = "input")]
    front: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the differential graded algebra of an input.
    Dga {
        #[command(flatten)]
        input: InputArgs,
        /// Emit the algebra in the JSON interchange format.
        #[arg(long)]
        json: bool,
    },
    /// Enumerate augmentations to F_q with grading period 2m.
    Augs {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated field orders (prime powers).
        #[arg(long, default_value = "2")]
        q: String,
        /// Comma-separated grading periods (0 = integer grading).
        #[arg(long, default_value = "0")]
        m: String,
        /// Print every augmentation's value table.
        #[arg(long)]
        list: bool,
        /// Emit a JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Enumerate normal rulings and the ruling polynomial.
    Rulings {
        #[command(flatten)]
        input: FrontInputArgs,
        /// Comma-separated grading periods (0 = integer grading).
        #[arg(long, default_value = "0")]
        m: String,
        /// Print each ruling's switch set and crossing classification.
        #[arg(long)]
        list: bool,
        /// Emit a JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Isomorphism classes, automorphism counts, and cardinalities.
    Cardinality {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated field orders (prime powers).
        #[arg(long, default_value = "2")]
        q: String,
        /// Comma-separated grading periods (0 = integer grading).
        #[arg(long, default_value = "0")]
        m: String,
        /// Emit a JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Run the counting-identity battery; exits 7 on any failure.
    Verify {
        #[command(flatten)]
        input: VerifyInputArgs,
        /// Comma-separated field orders (prime powers).
        #[arg(long, default_value = "2")]
        q: String,
        /// Comma-separated grading periods (0 = integer grading).
        #[arg(long, default_value = "0")]
        m: String,
        /// Also verify a pseudo-randomly sampled front (reproducible).
        #[arg(long, value_name = "N")]
        seed: Option<u64>,
        /// Emit a JSON report.
        #[arg(long)]
        json: bool,
    },
    /// Test the degree-count identity on every augmentation.
    Conjecture {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated field orders (prime powers).
        #[arg(long, default_value = "2")]
        q: String,
        /// Comma-separated grading periods (0 = integer grading).
        #[arg(long, default_value = "1")]
        m: String,
        /// Emit a JSON report.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[group(id = "input", required = true, multiple = false)]
struct VerifyInputArgs {
    /// Built-in example (unknot, unlink2, hopf, trefoil, m821, m945)
    #[arg(long, value_name = "NAME", group = "input")]
    example: Option<String>,
    /// Front description file (JSON)
    #[arg(long, value_name = "FILE", group = "input")]
    front: Option<PathBuf>,
    /// Algebra interchange file (JSON)
    #[arg(long = "dga", value_name = "FILE", group = "input")]
    dga_file: Option<PathBuf>,
    /// Verify every built-in example.
    #[arg(long, group = "input")]
    all: bool,
}

#[derive(Debug)]
enum CliError {
    UnknownExample(String),
    BadQm(String),
    Io(PathBuf, std::io::Error),
    Malformed(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::UnknownExample(n) => {
                write!(
                    f,
                    "unknown example '{n}' (available: {})",
                    front::builtin_names().join(", ")
                )
            }
            CliError::BadQm(msg) => write!(f, "invalid q/m value: {msg}"),
            CliError::Io(p, e) => write!(f, "cannot read {}: {e}", p.display()),
            CliError::Malformed(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::UnknownExample(_) => EXIT_UNKNOWN_EXAMPLE,
            CliError::BadQm(_) => EXIT_BAD_QM,
            CliError::Io(..) => EXIT_IO,
            CliError::Malformed(_) => EXIT_MALFORMED,
        }
    }
}

/// One loaded input: a front (with its algebra) or a bare algebra.
struct Input {
    label: String,
    front: Option<PlatFront>,
    dga: Dga,
}

/// Writes a complete report to stdout. Readers like `head` may close the
/// pipe early; that is a request to stop, not an error.
fn emit(text: &str) {
    use std::io::Write as _;
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).and_then(|()| out.flush()).is_err() {
        std::process::exit(0);
    }
}

fn load_front_file(path: &PathBuf) -> Result<PlatFront, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e))?;
    front::parse_front(&text).map_err(|e| CliError::Malformed(e.to_string()))
}

fn load_example(name: &str) -> Result<PlatFront, CliError> {
    front::builtin(name).ok_or_else(|| CliError::UnknownExample(name.to_string()))
}

fn resolve_input(
    example: &Option<String>,
    front_path: &Option<PathBuf>,
    dga_path: &Option<PathBuf>,
) -> Result<Input, CliError> {
    if let Some(name) = example {
        let f = load_example(name)?;
        let dga = build_dga(&f);
        return Ok(Input { label: name.clone(), front: Some(f), dga });
    }
    if let Some(path) = front_path {
        let f = load_front_file(path)?;
        let dga = build_dga(&f);
        return Ok(Input { label: f.name().to_string(), front: Some(f), dga });
    }
    let path = dga_path.as_ref().expect("clap guarantees one input source");
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e))?;
    let dga = load_dga(&text).map_err(|e| CliError::Malformed(e.to_string()))?;
    let label =
        path.file_stem().map_or_else(|| "dga".to_string(), |s| s.to_string_lossy().into_owned());
    Ok(Input { label, front: None, dga })
}

fn parse_u32_list(s: &str, what: &str) -> Result<Vec<u32>, CliError> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let v: u32 =
            part.parse().map_err(|_| CliError::BadQm(format!("'{part}' is not a valid {what}")))?;
        out.push(v);
    }
    if out.is_empty() {
        return Err(CliError::BadQm(format!("empty {what} list")));
    }
    Ok(out)
}

/// Builds `F_q` from a prime-power order.
fn field_for(q: u32) -> Result<Fq, CliError> {
    if q < 2 {
        return Err(CliError::BadQm(format!("{q} is not a prime power")));
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if q % p != 0 {
        p = q; // q itself is prime
    }
    let mut k = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(CliError::BadQm(format!("{q} is not a prime power")));
    }
    fq_make(p, k).map_err(|e| CliError::BadQm(e.to_string()))
}

fn front_header(f: &PlatFront) -> String {
    let ci = front::classical_invariants(f);
    format!(
        "front {}: {} left cusps, {} crossings, {} component(s), tb = {}",
        f.name(),
        f.n_cusps(),
        f.events().len(),
        ci.components,
        ci.tb
    )
}

fn dga_header(input: &Input) -> String {
    match &input.front {
        Some(f) => front_header(f),
        None => format!(
            "algebra {}: {} generators, {} component(s)",
            input.label,
            input.dga.generators.len(),
            input.dga.components
        ),
    }
}

fn tb_of(input: &Input) -> i64 {
    match &input.front {
        Some(f) => front::classical_invariants(f).tb,
        None => input
            .dga
            .generators
            .iter()
            .map(|g| if g.degree.rem_euclid(2) == 0 { 1 } else { -1 })
            .sum(),
    }
}

fn cmd_dga(input: &Input, json: bool) -> i32 {
    if json {
        emit(&save_dga(&input.dga));
        return 0;
    }
    let mut text = String::new();
    let _ = writeln!(text, "{}", dga_header(input));
    let _ = writeln!(text, "generators (name, degree, r, c, height):");
    text.push_str(&describe_generators(&input.dga));
    let _ = writeln!(text, "differential:");
    for (i, p) in input.dga.differential.iter().enumerate() {
        let _ =
            writeln!(text, "  d {} = {}", input.dga.generators[i].name, input.dga.format_poly(p));
    }
    emit(&text);
    0
}

fn cmd_augs(
    input: &Input,
    qs: &[u32],
    ms: &[u32],
    list: bool,
    json: bool,
) -> Result<i32, CliError> {
    let ell = input.dga.components;
    let mut reports = Vec::new();
    let mut text = String::new();
    if !json {
        let _ = writeln!(text, "{}", dga_header(input));
    }
    for &q in qs {
        let fq = field_for(q)?;
        for &m in ms {
            let euler = aug::euler_data(&input.dga, m);
            let augs = aug::enumerate_augmentations(&input.dga, &fq, m);
            let normalized = aug::normalized_count(q, ell, euler.chi_star, augs.len());
            if json {
                let mut rep = json!({
                    "input": input.label,
                    "q": q,
                    "m": m,
                    "count": augs.len(),
                    "chi_star": euler.chi_star,
                    "normalized_count": normalized.to_string(),
                });
                if list {
                    let tables: Vec<serde_json::Value> = augs
                        .iter()
                        .map(|a| {
                            let mut obj = serde_json::Map::new();
                            for i in 0..ell {
                                obj.insert(format!("t{}", i + 1), json!(a.t_vals[i]));
                            }
                            for (j, g) in input.dga.generators.iter().enumerate() {
                                obj.insert(g.name.clone(), json!(a.chord_vals[j]));
                            }
                            serde_json::Value::Object(obj)
                        })
                        .collect();
                    rep["augmentations"] = json!(tables);
                }
                reports.push(rep);
            } else {
                let _ = writeln!(text, "q = {q}, m = {m}:");
                let _ = writeln!(text, "count = {}", augs.len());
                let _ = writeln!(text, "chi* = {}", euler.chi_star);
                let _ = writeln!(text, "normalized count = {normalized}");
                if list {
                    for (i, a) in augs.iter().enumerate() {
                        let mut parts: Vec<String> =
                            (0..ell).map(|c| format!("t{} = {}", c + 1, a.t_vals[c])).collect();
                        for (j, g) in input.dga.generators.iter().enumerate() {
                            parts.push(format!("{} = {}", g.name, a.chord_vals[j]));
                        }
                        let _ = writeln!(text, "  augmentation {}: {}", i + 1, parts.join(", "));
                    }
                }
            }
        }
    }
    if json {
        emit(&format!(
            "{}\n",
            serde_json::to_string_pretty(&reports).expect("report serialization")
        ));
    } else {
        emit(&text);
    }
    Ok(0)
}

fn cmd_rulings(f: &PlatFront, ms: &[u32], list: bool, json: bool) -> Result<i32, CliError> {
    let mut reports = Vec::new();
    let mut text = String::new();
    if !json {
        let _ = writeln!(text, "{}", front_header(f));
    }
    for &m in ms {
        let rulings = ruling::enumerate_rulings(f, m);
        let rpoly = ruling::ruling_polynomial(f, m);
        if json {
            let mut items = Vec::new();
            if list {
                for r in &rulings {
                    let roles =
                        ruling::classify_crossings_graded(f, r, m).map_err(CliError::Malformed)?;
                    let count = |want: ruling::Role| roles.iter().filter(|&&x| x == want).count();
                    items.push(json!({
                        "switches": r.switches,
                        "chi": r.chi,
                        "departures": count(ruling::Role::Departure),
                        "returns": count(ruling::Role::Return),
                        "switch_count": count(ruling::Role::Switch),
                    }));
                }
            }
            let mut rep = json!({
                "input": f.name(),
                "m": m,
                "count": rulings.len(),
                "ruling_polynomial": rpoly.to_string(),
            });
            if list {
                rep["rulings"] = json!(items);
            }
            reports.push(rep);
        } else {
            let _ = writeln!(text, "m = {m}: {} ruling(s)", rulings.len());
            let _ = writeln!(text, "R(z) = {rpoly}");
            if list {
                for (i, r) in rulings.iter().enumerate() {
                    let roles =
                        ruling::classify_crossings_graded(f, r, m).map_err(CliError::Malformed)?;
                    let count = |want: ruling::Role| roles.iter().filter(|&&x| x == want).count();
                    let _ = writeln!(
                        text,
                        "  ruling {}: switches = {:?}, chi = {}, departures = {}, returns = {}, switches(graded) = {}",
                        i + 1,
                        r.switches,
                        r.chi,
                        count(ruling::Role::Departure),
                        count(ruling::Role::Return),
                        count(ruling::Role::Switch),
                    );
                }
            }
        }
    }
    if json {
        emit(&format!(
            "{}\n",
            serde_json::to_string_pretty(&reports).expect("report serialization")
        ));
    } else {
        emit(&text);
    }
    Ok(0)
}

fn cmd_cardinality(input: &Input, qs: &[u32], ms: &[u32], json: bool) -> Result<i32, CliError> {
    let ell = input.dga.components;
    let tb = tb_of(input);
    let mut reports = Vec::new();
    let mut text = String::new();
    if !json {
        let _ = writeln!(text, "{}", dga_header(input));
    }
    for &q in qs {
        let fq = field_for(q)?;
        for &m in ms {
            let euler = aug::euler_data(&input.dga, m);
            let augs = aug::enumerate_augmentations(&input.dga, &fq, m);
            let classes = augcat::class_data(&input.dga, &fq, &augs);
            let normalized = aug::normalized_count(q, ell, euler.chi_star, augs.len());
            let groupoid = augcat::groupoid_cardinality(&classes);
            let chain = augcat::chain_level_cardinality(q, ell, tb, euler.chi_star, &classes);
            let hcard: Option<BigRational> =
                (m == 0).then(|| augcat::homotopy_cardinality(q, &classes));
            let ruling_rhs: Option<QSqrt> = input.front.as_ref().map(|f| {
                let rpoly = ruling::ruling_polynomial(f, m);
                QSqrt::q_pow_half(q, tb).mul(&crate::arith::qsqrt_eval_laurent(&rpoly, q))
            });
            let aut_multiset: Vec<String> = classes.iter().map(|c| c.aut.to_string()).collect();
            if json {
                let class_items: Vec<serde_json::Value> = classes
                    .iter()
                    .map(|c| {
                        json!({
                            "size": c.members.len(),
                            "aut": c.aut.to_string(),
                            "hom0": c.hom0,
                            "b0": c.b0,
                            "h_dims": c.h_dims.iter().map(|(k, v)| (k.to_string(), *v)).collect::<std::collections::BTreeMap<String, usize>>(),
                        })
                    })
                    .collect();
                let mut rep = json!({
                    "input": input.label,
                    "q": q,
                    "m": m,
                    "tb": tb,
                    "chi_star": euler.chi_star,
                    "count": augs.len(),
                    "classes": class_items,
                    "aut_multiset": aut_multiset,
                    "groupoid_cardinality": groupoid.to_string(),
                    "normalized_count": normalized.to_string(),
                    "chain_level_cardinality": chain.to_string(),
                });
                if let Some(h) = &hcard {
                    rep["homotopy_cardinality"] = json!(h.to_string());
                }
                if let Some(r) = &ruling_rhs {
                    rep["ruling_value"] = json!(r.to_string());
                }
                reports.push(rep);
            } else {
                let _ = writeln!(text, "q = {q}, m = {m}:");
                let _ = writeln!(text, "  augmentations = {}", augs.len());
                let _ = writeln!(text, "  chi* = {}", euler.chi_star);
                let _ = writeln!(text, "  iso classes = {}", classes.len());
                let _ = writeln!(text, "  |Aut| multiset = [{}]", aut_multiset.join(", "));
                let _ = writeln!(text, "  groupoid cardinality = {groupoid}");
                let _ = writeln!(text, "  normalized count = {normalized}");
                let _ = writeln!(text, "  chain-level cardinality = {chain}");
                if let Some(h) = &hcard {
                    let _ = writeln!(text, "  homotopy cardinality = {h}");
                }
                if let Some(r) = &ruling_rhs {
                    let _ = writeln!(text, "  q^(tb/2) * R(w) = {r}");
                }
            }
        }
    }
    if json {
        emit(&format!(
            "{}\n",
            serde_json::to_string_pretty(&reports).expect("report serialization")
        ));
    } else {
        emit(&text);
    }
    Ok(0)
}

fn format_checks(label: &str, q: u32, m: u32, checks: &[verify::Check], text: &mut String) {
    for c in checks {
        let star = if X_RULE_CONSUMERS.contains(&c.name.as_str()) { "*" } else { "" };
        let verdict = if c.passed {
            "pass"
        } else if c.advisory {
            "FINDING"
        } else {
            "FAIL"
        };
        let _ = writeln!(
            text,
            "[{label} q={q} m={m}] {:<28} {verdict:<8} {}",
            format!("{}{star}", c.name),
            c.detail
        );
    }
}

fn cmd_verify(
    inputs: &[Input],
    qs: &[u32],
    ms: &[u32],
    seed: Option<u64>,
    json: bool,
) -> Result<i32, CliError> {
    let mut sampled = Vec::new();
    if let Some(s) = seed {
        let f = front::sample_front(3, 8, s);
        let dga = build_dga(&f);
        sampled.push(Input { label: format!("sample-{s}"), front: Some(f), dga });
    }
    let mut reports = Vec::new();
    let mut text = String::new();
    let mut total = 0usize;
    let mut failed = 0usize;
    let mut findings = 0usize;
    for input in inputs.iter().chain(sampled.iter()) {
        for &q in qs {
            let fq = field_for(q)?;
            for &m in ms {
                let checks = match &input.front {
                    Some(f) => verify::verify_front(f, &fq, m),
                    None => verify::verify_dga(&input.dga, &fq, m),
                };
                total += checks.len();
                failed += checks.iter().filter(|c| !c.passed && !c.advisory).count();
                findings += checks.iter().filter(|c| !c.passed && c.advisory).count();
                if json {
                    let items: Vec<serde_json::Value> = checks
                        .iter()
                        .map(|c| {
                            json!({
                                "name": c.name,
                                "passed": c.passed,
                                "advisory": c.advisory,
                                "uses_basepoint_rule": X_RULE_CONSUMERS.contains(&c.name.as_str()),
                                "detail": c.detail,
                            })
                        })
                        .collect();
                    reports.push(json!({
                        "input": input.label,
                        "q": q,
                        "m": m,
                        "checks": items,
                    }));
                } else {
                    format_checks(&input.label, q, m, &checks, &mut text);
                }
            }
        }
    }
    if json {
        let doc = json!({
            "reports": reports,
            "total": total,
            "failed": failed,
            "findings": findings,
        });
        emit(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("report serialization")));
    } else {
        let _ = writeln!(
            text,
            "summary: {} checks, {} failed, {} findings ({} passed)",
            total,
            failed,
            findings,
            total - failed - findings
        );
        let _ = writeln!(text, "checks marked * use the base-point linearization convention");
        emit(&text);
    }
    Ok(if failed > 0 { EXIT_VERIFY_FAILED } else { 0 })
}

fn cmd_conjecture(input: &Input, qs: &[u32], ms: &[u32], json: bool) -> Result<i32, CliError> {
    let mut reports = Vec::new();
    let mut text = String::new();
    if !json {
        let _ = writeln!(text, "{}", dga_header(input));
    }
    let mut graded_failures = 0usize;
    let mut finding_count = 0usize;
    for &q in qs {
        let fq = field_for(q)?;
        for &m in ms {
            let euler = aug::euler_data(&input.dga, m);
            let augs = aug::enumerate_augmentations(&input.dga, &fq, m);
            let mut items = Vec::new();
            let mut n_graded = 0usize;
            let mut n_strict = 0usize;
            for (i, e) in augs.iter().enumerate() {
                let (lhs, rhs, z_graded) =
                    augcat::conjecture_sides(&input.dga, &fq, e, euler.chi_star);
                let ok = lhs == rhs;
                if z_graded {
                    n_graded += 1;
                    if !ok {
                        graded_failures += 1;
                    }
                } else {
                    n_strict += 1;
                    if !ok {
                        finding_count += 1;
                    }
                }
                if json {
                    items.push(json!({
                        "augmentation": i + 1,
                        "z_graded": z_graded,
                        "lhs": lhs,
                        "rhs": rhs,
                        "passed": ok,
                    }));
                } else if !ok || ms.len() * qs.len() <= 4 {
                    let kind = if z_graded { "Z-graded" } else { "strictly 2m-graded" };
                    let verdict = if ok { "pass" } else { "FINDING" };
                    let _ = writeln!(
                        text,
                        "  q = {q}, m = {m}, augmentation {} ({kind}): lhs = {lhs}, rhs = {rhs}  {verdict}",
                        i + 1
                    );
                }
            }
            if json {
                reports.push(json!({
                    "input": input.label,
                    "q": q,
                    "m": m,
                    "z_graded": n_graded,
                    "strictly_2m_graded": n_strict,
                    "augmentations": items,
                }));
            } else {
                let _ = writeln!(
                    text,
                    "q = {q}, m = {m}: {} augmentation(s), {} Z-graded, {} strictly 2m-graded",
                    n_graded + n_strict,
                    n_graded,
                    n_strict
                );
            }
        }
    }
    if json {
        emit(&format!(
            "{}\n",
            serde_json::to_string_pretty(&reports).expect("report serialization")
        ));
    } else {
        let _ = writeln!(
            text,
            "summary: {} Z-graded failure(s), {} finding(s) on strictly 2m-graded augmentations",
            graded_failures, finding_count
        );
        emit(&text);
    }
    Ok(if graded_failures > 0 { EXIT_VERIFY_FAILED } else { 0 })
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.cmd {
        Cmd::Dga { input, json } => {
            let input = resolve_input(&input.example, &input.front, &input.dga_file)?;
            Ok(cmd_dga(&input, json))
        }
        Cmd::Augs { input, q, m, list, json } => {
            let qs = parse_u32_list(&q, "field order")?;
            let ms = parse_u32_list(&m, "grading period")?;
            let input = resolve_input(&input.example, &input.front, &input.dga_file)?;
            cmd_augs(&input, &qs, &ms, list, json)
        }
        Cmd::Rulings { input, m, list, json } => {
            let ms = parse_u32_list(&m, "grading period")?;
            let f = match (&input.example, &input.front) {
                (Some(name), _) => load_example(name)?,
                (None, Some(path)) => load_front_file(path)?,
                (None, None) => unreachable!("clap requires an input"),
            };
            cmd_rulings(&f, &ms, list, json)
        }
        Cmd::Cardinality { input, q, m, json } => {
            let qs = parse_u32_list(&q, "field order")?;
            let ms = parse_u32_list(&m, "grading period")?;
            let input = resolve_input(&input.example, &input.front, &input.dga_file)?;
            cmd_cardinality(&input, &qs, &ms, json)
        }
        Cmd::Verify { input, q, m, seed, json } => {
            let qs = parse_u32_list(&q, "field order")?;
            let ms = parse_u32_list(&m, "grading period")?;
            let inputs: Vec<Input> = if input.all {
                front::builtin_names()
                    .into_iter()
                    .map(|name| {
                        let f = front::builtin(name).expect("built-in names resolve");
                        let dga = build_dga(&f);
                        Input { label: name.to_string(), front: Some(f), dga }
                    })
                    .collect()
            } else {
                vec![resolve_input(&input.example, &input.front, &input.dga_file)?]
            };
            cmd_verify(&inputs, &qs, &ms, seed, json)
        }
        Cmd::Conjecture { input, q, m, json } => {
            let qs = parse_u32_list(&q, "field order")?;
            let ms = parse_u32_list(&m, "grading period")?;
            let input = resolve_input(&input.example, &input.front, &input.dga_file)?;
            cmd_conjecture(&input, &qs, &ms, json)
        }
    }
}

/// Entry point used by the `legcard` binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| dispatch(cli))) {
        Ok(Ok(code)) => code,
        Ok(Err(err)) => {
            eprintln!("error: {err}");
            err.code()
        }
        Err(_) => EXIT_INTERNAL,
    }
}
