//! Argument parsing, command execution and report rendering for the
//! `gelmod` binary.

use std::collections::BTreeMap;
use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use gelmod::algebra::IntPolynomial;
use gelmod::characters::orthogonality_check;
use gelmod::coxeter::{matrix_group, CoxeterDescriptor, MatrixGroup, ProductDescriptor, DEFAULT_CAP};
use gelmod::fakedeg::{
    fake_degree_reports, gelfand_dimension, gelfand_verdict, gelfand_verdict_classification,
    gelfand_verdict_computed, oracle_check, poincare_check, Method, Verdict,
};
use gelmod::weylmodel::{convolve, dihedral_model_basis, model_via_theorem2, truncated_model_group};
use gelmod::{Error, Result};
use num::ToPrimitive;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "gelmod", version, about = "Fake degrees, polynomial models and Gelfand verdicts for finite Coxeter groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest group order that may be enumerated element by element.
    #[arg(long, default_value_t = DEFAULT_CAP, global = true)]
    pub cap: usize,
    /// Degree bound for kernel computations.
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fake degree, first occurrence, multiplicity and dimension of every irreducible.
    FakeDegrees { group: String },
    /// Whether the polynomial model is a Gelfand model.
    Verdict { group: String },
    /// Graded dimensions of the polynomial model.
    Model {
        group: String,
        /// Also compute the joint kernel of the invariant lowering operators and compare.
        #[arg(long)]
        kernel: bool,
    },
    /// Closed forms against the character sum, plus the regular-representation identity.
    Oracle { group: String },
    /// The explicit model of I2(n) with its annihilation certificate.
    DihedralModel { n: usize },
    /// Every consistency check available for the group.
    Check { group: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// What the process prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// A report in all three renderings.
struct Report {
    json: Value,
    text: String,
    /// header first
    rows: Vec<Vec<String>>,
    passed: bool,
}

pub fn parse_group(expr: &str) -> Result<ProductDescriptor> {
    expr.parse()
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code: 2 }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let report = match &cli.command {
        Command::FakeDegrees { group } => fake_degrees(group),
        Command::Verdict { group } => verdict(group),
        Command::Model { group, kernel } => model(group, *kernel, cli.cap, cli.max_degree),
        Command::Oracle { group } => oracle(group),
        Command::DihedralModel { n } => dihedral(*n),
        Command::Check { group } => check(group, cli.cap, cli.max_degree),
    };
    match report {
        Ok(r) => Outcome { stdout: render(&r, cli.format), stderr: String::new(), code: if r.passed { 0 } else { 1 } },
        Err(e) => error_outcome(&e, cli.format),
    }
}

fn error_outcome(e: &Error, format: Format) -> Outcome {
    if format == Format::Json {
        let v = json!({ "error": { "kind": error_kind(e), "message": e.to_string() } });
        Outcome { stdout: to_json(&v), stderr: String::new(), code: 2 }
    } else {
        Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: 2 }
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotDivisible => "NotDivisible",
        Error::NonInvertibleConstantTerm => "NonInvertibleConstantTerm",
        Error::PadTooSmall { .. } => "PadTooSmall",
        Error::UnsupportedFamily(_) => "UnsupportedFamily",
        Error::ParameterOutOfRange { .. } => "ParameterOutOfRange",
        Error::OrderExceedsCap { .. } => "OrderExceedsCap",
        Error::SizeMismatch { .. } => "SizeMismatch",
        Error::OddNegativeClass => "OddNegativeClass",
        Error::InvalidLabel(_) => "InvalidLabel",
        Error::NonIntegralResult { .. } => "NonIntegralResult",
        Error::ZeroPolynomial => "ZeroPolynomial",
        Error::MissingSplitTag(_) => "MissingSplitTag",
        Error::DimensionMismatch { .. } => "DimensionMismatch",
        Error::Parse { .. } => "ParseError",
        Error::UnknownType(_) => "UnknownType",
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn render(r: &Report, format: Format) -> String {
    match format {
        Format::Text => r.text.clone(),
        Format::Json => to_json(&r.json),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &r.rows {
                w.write_record(row).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
    }
}

fn coeff_array(f: &IntPolynomial) -> Value {
    Value::Array(f.coeffs().iter().map(|c| json!(c.to_i64().expect("coefficient fits in i64"))).collect())
}

fn coeff_list(f: &IntPolynomial) -> String {
    f.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn factors(group: &str) -> Result<(ProductDescriptor, Vec<CoxeterDescriptor>)> {
    let p = parse_group(group)?;
    let f = p.computable_factors()?;
    Ok((p, f))
}

fn fake_degrees(group: &str) -> Result<Report> {
    let (p, gs) = factors(group)?;
    let mut blocks = Vec::new();
    let mut text = String::new();
    let mut rows = vec![vec!["factor", "label", "p", "firstMultiplicity", "dim", "fakeDegree"]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>()];
    for g in &gs {
        let reports = fake_degree_reports(g)?;
        let width = reports.iter().map(|r| r.label_text.chars().count()).max().unwrap_or(0);
        text.push_str(&format!("{}\n", g.name()));
        for r in &reports {
            text.push_str(&format!(
                "  {:<width$}  p = {:<3} mult = {:<2} dim = {:<4} {}\n",
                r.label_text, r.p, r.first_multiplicity, r.dim, r.fake_degree
            ));
            rows.push(vec![
                g.name(),
                r.label_text.clone(),
                r.p.to_string(),
                r.first_multiplicity.to_string(),
                r.dim.to_string(),
                coeff_list(&r.fake_degree),
            ]);
        }
        blocks.push(json!({
            "factor": g.name(),
            "reports": serde_json::to_value(&reports).expect("reports serialize"),
        }));
    }
    Ok(Report { json: json!({ "group": p.to_string(), "factors": blocks }), text, rows, passed: true })
}

fn verdict_rule(v: &Verdict) -> &'static str {
    match v.method {
        Method::Computed => "first-occurrence multiplicities of fake degrees",
        Method::Classified => "classification rule: not Gelfand iff some factor is D_n with n even, E7 or E8",
    }
}

fn verdict(group: &str) -> Result<Report> {
    let p = parse_group(group)?;
    let v = gelfand_verdict(&p)?;
    let method = match v.method {
        Method::Computed => "computed",
        Method::Classified => "classified",
    };
    let witnesses: Vec<Value> = v
        .witnesses
        .iter()
        .map(|w| json!({ "factor": w.factor, "label": w.label, "multiplicity": w.multiplicity }))
        .collect();
    let mut text = format!(
        "{}: {} ({method}; {})\n",
        p,
        if v.is_gelfand { "Gelfand model" } else { "not a Gelfand model" },
        verdict_rule(&v)
    );
    for w in &v.witnesses {
        text.push_str(&format!("  {} {} first occurs with multiplicity {}\n", w.factor, w.label, w.multiplicity));
    }
    let witness_text = v.witnesses.iter().map(|w| format!("{}:{}:{}", w.factor, w.label, w.multiplicity)).collect::<Vec<_>>();
    let rows = vec![
        vec!["group".into(), "method".into(), "isGelfand".into(), "witnesses".into()],
        vec![p.to_string(), method.into(), v.is_gelfand.to_string(), witness_text.join(" ")],
    ];
    let json = json!({
        "group": p.to_string(),
        "method": method,
        "isGelfand": v.is_gelfand,
        "rule": verdict_rule(&v),
        "witnesses": witnesses,
    });
    Ok(Report { json, text, rows, passed: true })
}

fn graded(dims: &BTreeMap<usize, u64>) -> Value {
    Value::Array(dims.iter().map(|(d, k)| json!({ "degree": d, "dim": k })).collect())
}

fn product_group(gs: &[CoxeterDescriptor], cap: usize) -> Result<MatrixGroup> {
    let mut group = MatrixGroup::trivial();
    for g in gs {
        group = group.direct_product(&matrix_group(g, cap)?, cap)?;
    }
    Ok(group)
}

fn model(group: &str, kernel: bool, cap: usize, max_degree: Option<usize>) -> Result<Report> {
    let (p, gs) = factors(group)?;
    let mut dims = BTreeMap::from([(0usize, 1u64)]);
    for g in &gs {
        dims = convolve(&dims, &model_via_theorem2(g)?);
    }
    let total: u64 = dims.values().sum();
    let mut json = json!({ "group": p.to_string(), "gradedDimensions": graded(&dims), "total": total });
    let mut text = format!("{p}: polynomial model of dimension {total}\n");
    for (d, k) in &dims {
        text.push_str(&format!("  degree {d}: {k}\n"));
    }
    let mut rows = vec![vec!["degree".to_string(), "dim".to_string()]];
    let mut passed = true;
    if kernel {
        let bound = max_degree.unwrap_or_else(|| dims.keys().copied().max().unwrap_or(0));
        let group = product_group(&gs, cap)?;
        let model = truncated_model_group(&group, bound, bound)?;
        let computed = model.basis.dims();
        let window: BTreeMap<usize, u64> = dims.iter().filter(|(d, _)| **d <= bound).map(|(d, k)| (*d, *k)).collect();
        passed = computed == window;
        let budget: Vec<Value> =
            model.budget().iter().map(|(p, q, n)| json!({ "p": p, "q": q, "operators": n })).collect();
        json["kernel"] =
            json!({ "degreeBound": bound, "gradedDimensions": graded(&computed), "matches": passed, "budget": budget });
        text.push_str(&format!(
            "kernel of invariant lowering operators through degree {bound}: {}\n",
            if passed { "matches" } else { "DIFFERS" }
        ));
        for (d, k) in &computed {
            text.push_str(&format!("  degree {d}: {k}\n"));
        }
        rows[0].push("kernelDim".into());
        let keys: std::collections::BTreeSet<usize> = dims.keys().chain(computed.keys()).copied().collect();
        for d in keys {
            let k = dims.get(&d).map_or(String::new(), u64::to_string);
            let c = if d <= bound { computed.get(&d).copied().unwrap_or(0).to_string() } else { String::new() };
            rows.push(vec![d.to_string(), k, c]);
        }
    } else {
        rows.extend(dims.iter().map(|(d, k)| vec![d.to_string(), k.to_string()]));
    }
    Ok(Report { json, text, rows, passed })
}

fn oracle(group: &str) -> Result<Report> {
    let (p, gs) = factors(group)?;
    let mut blocks = Vec::new();
    let mut text = String::new();
    let mut rows = vec![["factor", "labelsCompared", "mismatches", "poincare", "passed"].map(String::from).to_vec()];
    let mut passed = true;
    for g in &gs {
        let r = oracle_check(g)?;
        let poincare = poincare_check(g)?.passed();
        let ok = r.passed() && poincare;
        passed &= ok;
        let mismatches: Vec<Value> = r
            .mismatches
            .iter()
            .map(|(l, closed, sum)| json!({ "label": l, "closedForm": coeff_array(closed), "characterSum": coeff_array(sum) }))
            .collect();
        text.push_str(&format!(
            "{}: {}, {} labels compared, {} mismatches, regular-representation identity {}\n",
            g.name(),
            if ok { "pass" } else { "FAIL" },
            r.compared,
            r.mismatches.len(),
            if poincare { "holds" } else { "FAILS" }
        ));
        for (l, closed, sum) in &r.mismatches {
            text.push_str(&format!("  {l}: closed form {closed}, character sum {sum}\n"));
        }
        rows.push(vec![g.name(), r.compared.to_string(), r.mismatches.len().to_string(), poincare.to_string(), ok.to_string()]);
        blocks.push(json!({
            "factor": g.name(),
            "labelsCompared": r.compared,
            "mismatches": mismatches,
            "poincare": poincare,
            "passed": ok,
        }));
    }
    Ok(Report { json: json!({ "group": p.to_string(), "passed": passed, "factors": blocks }), text, rows, passed })
}

fn dihedral(n: usize) -> Result<Report> {
    let model = dihedral_model_basis(n)?;
    let names = ["z", "zb"];
    let expected = 2 * (n / 2) + 2;
    let dim = model.basis.total() as usize;
    let passed = model.annihilated && dim == expected;
    let basis: Vec<(usize, String)> = model.basis.iter().map(|(d, p)| (d, p.display_with(&names))).collect();
    let ops: Vec<String> = model.operators.iter().map(|o| o.display_with(&names, &["d", "db"])).collect();
    let mut text = format!("I2({n}): model of dimension {dim} (expected {expected})\n");
    for (d, p) in &basis {
        text.push_str(&format!("  degree {d}: {p}\n"));
    }
    text.push_str(&format!(
        "annihilated by {}: {}\n",
        ops.join(" and "),
        if model.annihilated { "yes" } else { "NO" }
    ));
    let mut rows = vec![vec!["degree".to_string(), "polynomial".to_string()]];
    rows.extend(basis.iter().map(|(d, p)| vec![d.to_string(), p.clone()]));
    let json = json!({
        "n": n,
        "dimension": dim,
        "expectedDimension": expected,
        "basis": basis.iter().map(|(d, p)| json!({ "degree": d, "polynomial": p })).collect::<Vec<_>>(),
        "operators": ops,
        "annihilated": model.annihilated,
    });
    Ok(Report { json, text, rows, passed })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// Groups small enough that the kernel check runs without an explicit bound.
const KERNEL_ORDER_LIMIT: u64 = 48;
const KERNEL_DEGREE_LIMIT: usize = 6;

fn check_factor(g: &CoxeterDescriptor, cap: usize, max_degree: Option<usize>) -> Result<Vec<(&'static str, Status, String)>> {
    let mut out = Vec::new();
    let ortho = orthogonality_check(g)?;
    out.push((
        "orthogonality",
        Status::of(ortho.passed()),
        format!("{} characters on {} classes, {} failures", ortho.rows, ortho.classes, ortho.failures.len()),
    ));
    let oracle = oracle_check(g)?;
    out.push((
        "oracle",
        Status::of(oracle.passed()),
        format!("{} labels compared, {} mismatches", oracle.compared, oracle.mismatches.len()),
    ));
    let poincare = poincare_check(g)?;
    out.push(("poincare", Status::of(poincare.passed()), format!("defect {}", poincare.defect())));
    let gelfand = gelfand_dimension(g)?;
    if (g.order() as usize) <= cap {
        let elems = matrix_group(g, cap)?.elements;
        let involutions = elems.iter().filter(|m| (*m * *m).is_identity()).count();
        out.push((
            "involutions",
            Status::of(gelfand == involutions.into()),
            format!("sum of dimensions {gelfand}, involutions {involutions}"),
        ));
    } else {
        out.push(("involutions", Status::Skipped, format!("order {} exceeds cap {cap}", g.order())));
    }
    let computed = gelfand_verdict_computed(g)?;
    let classified = gelfand_verdict_classification(&computed.group);
    out.push((
        "verdict",
        Status::of(computed.is_gelfand == classified.is_gelfand),
        format!("computed {}, classified {}", computed.is_gelfand, classified.is_gelfand),
    ));
    let expected = model_via_theorem2(g)?;
    let top = expected.keys().copied().max().unwrap_or(0);
    let bound = match max_degree {
        Some(b) => Some(b),
        None if g.order() <= KERNEL_ORDER_LIMIT && top <= KERNEL_DEGREE_LIMIT => Some(top),
        None => None,
    };
    match bound {
        Some(b) if (g.order() as usize) <= cap => {
            let computed = truncated_model_group(&matrix_group(g, cap)?, b, b)?.basis.dims();
            let window: BTreeMap<usize, u64> = expected.iter().filter(|(d, _)| **d <= b).map(|(d, k)| (*d, *k)).collect();
            out.push(("kernel", Status::of(computed == window), format!("degrees through {b}: {computed:?}")));
        }
        Some(_) => out.push(("kernel", Status::Skipped, format!("order {} exceeds cap {cap}", g.order()))),
        None => out.push(("kernel", Status::Skipped, "pass --max-degree to run".into())),
    }
    Ok(out)
}

fn check(group: &str, cap: usize, max_degree: Option<usize>) -> Result<Report> {
    let (p, gs) = factors(group)?;
    let mut entries = Vec::new();
    let mut text = String::new();
    let mut rows = vec![["factor", "check", "status", "detail"].map(String::from).to_vec()];
    let mut passed = true;
    for g in &gs {
        text.push_str(&format!("{}\n", g.name()));
        for (name, status, detail) in check_factor(g, cap, max_degree)? {
            passed &= status != Status::Fail;
            text.push_str(&format!("  {:<14}{:<9}{detail}\n", name, status.name()));
            rows.push(vec![g.name(), name.into(), status.name().into(), detail.clone()]);
            entries.push(json!({ "factor": g.name(), "name": name, "status": status.name(), "detail": detail }));
        }
    }
    Ok(Report { json: json!({ "group": p.to_string(), "passed": passed, "checks": entries }), text, rows, passed })
}
