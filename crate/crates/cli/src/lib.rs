//! Argument parsing, dispatch and report rendering for the `bcklab` binary.
//!
//! Every verb builds a [`Report`]; [`render`] turns it into text or JSON.
//! Exit statuses: 0 success, 1 check failure or counterexample, 2 usage or
//! format error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use bcklab::adjoint::{find_adjoint_pairs, retract_ideals};
use bcklab::algebra::{axiom_violations, check_bck, classify, direct_product, BckAxiom};
use bcklab::catalog::{enumerate_bck, flag_string, naive_oracle, read_catalogs, write_catalog};
use bcklab::diagonal::diagonal;
use bcklab::format::{
    parse_element_list, read_algebra, read_map, read_mv, read_table, table_json, write_algebra,
    write_classes_line, write_ideal_line, write_map, write_mv,
};
use bcklab::ideals::{all_congruences, all_ideals, generated_ideal, IdealCertificate};
use bcklab::mv::{bck_to_mv, check_mv_state_correspondence, check_state_mv, MvAlgebra};
use bcklab::states::{
    all_state_ideals, certify_state, enumerate_state_operators, state_violation,
    subdirectly_irreducible, StateAlgebra,
};
use bcklab::suite::run_suite;
use bcklab::{CayleyAlgebra, Error, Limits, StateKind};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(
    name = "bcklab",
    version,
    about = "Finite BCK-algebras with state operators"
)]
pub struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Caps file with `key = value` lines (max_order, max_subset_order, ...).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Add the wall-clock time to the report.
    #[arg(long, global = true)]
    pub timestamps: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the BCK axioms on a table and print its flags.
    Check { file: PathBuf },
    /// List ideals, optionally congruences and a generated ideal.
    Ideals(IdealsArgs),
    /// Enumerate or check state operators.
    States(StatesArgs),
    /// List adjoint pairs (A, I) with their state-morphisms.
    Adjoint(AlgebraArg),
    /// List retract ideals with section maps.
    Retract(AlgebraArg),
    /// Convert to the MV-algebra and check MV states.
    Mv(MvArgs),
    /// Build the diagonal algebra X x X with μ(x, y) = (x, x).
    Diagonal(DiagonalArgs),
    /// Direct product of two algebras.
    Product(ProductArgs),
    /// Generate every BCK-algebra of an order up to isomorphism.
    Enumerate(EnumerateArgs),
    /// Run the theorem suite over a catalog.
    Suite(SuiteArgs),
}

#[derive(Debug, Args)]
pub struct AlgebraArg {
    #[arg(long, value_name = "FILE")]
    pub algebra: PathBuf,
}

#[derive(Debug, Args)]
pub struct IdealsArgs {
    #[arg(long, value_name = "FILE")]
    pub algebra: PathBuf,
    /// Also list congruences.
    #[arg(long)]
    pub congruences: bool,
    /// Print the ideal generated by these elements, e.g. `1,2`.
    #[arg(long, value_name = "ELEMENTS")]
    pub generate: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Left,
    Right,
    Morphism,
}

impl From<KindArg> for StateKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Left => StateKind::LeftState,
            KindArg::Right => StateKind::RightState,
            KindArg::Morphism => StateKind::StateMorphism,
        }
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["enumerate", "check"])))]
pub struct StatesArgs {
    #[arg(long, value_name = "FILE")]
    pub algebra: PathBuf,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Every operator of the kind.
    #[arg(long)]
    pub enumerate: bool,
    /// Certify one map.
    #[arg(long, value_name = "MAP")]
    pub check: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["from_bck", "mv"])))]
pub struct MvArgs {
    /// A bounded commutative BCK-algebra.
    #[arg(long, value_name = "FILE")]
    pub from_bck: Option<PathBuf>,
    /// An MV table.
    #[arg(long, value_name = "FILE")]
    pub mv: Option<PathBuf>,
    /// Check the MV state axioms for this map.
    #[arg(long, value_name = "MAP")]
    pub check_state: Option<PathBuf>,
    /// Compare left states and MV states over every self-map.
    #[arg(long, requires = "from_bck")]
    pub correspondence: bool,
}

#[derive(Debug, Args)]
pub struct DiagonalArgs {
    #[arg(long, value_name = "FILE")]
    pub algebra: PathBuf,
    /// Write the product table here.
    #[arg(long, value_name = "FILE")]
    pub emit: Option<PathBuf>,
    /// Write the operator here.
    #[arg(long, value_name = "FILE")]
    pub emit_map: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProductArgs {
    pub left: PathBuf,
    pub right: PathBuf,
    /// Write the product table here instead of printing it.
    #[arg(long, value_name = "FILE")]
    pub emit: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub order: usize,
    /// Catalog root; entries go to `<dir>/n=<order>/`.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Use the brute-force generator instead of the backtracking one.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// A `n=<k>` directory or a root holding several.
    #[arg(long, value_name = "DIR")]
    pub catalog: PathBuf,
    /// Also write the TSV report here.
    #[arg(long, value_name = "FILE")]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    Failed = 1,
    Usage = 2,
}

/// The JSON schema is `{verb, inputs, results, counterexamples}`, plus
/// `timestamp` when requested.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub verb: &'static str,
    pub inputs: Vec<String>,
    pub results: Vec<Value>,
    pub counterexamples: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    #[serde(skip)]
    pub lines: Vec<String>,
    #[serde(skip)]
    pub summary: String,
    #[serde(skip)]
    pub status: Status,
}

impl Report {
    fn new(verb: &'static str, inputs: &[&Path]) -> Self {
        Report {
            verb,
            inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
            results: Vec::new(),
            counterexamples: Vec::new(),
            timestamp: None,
            lines: Vec::new(),
            summary: String::new(),
            status: Status::Ok,
        }
    }

    fn line(&mut self, l: impl Into<String>) {
        self.lines.push(l.into());
    }

    fn result(&mut self, v: impl Serialize) {
        self.results.push(to_json(v));
    }

    fn counterexample(&mut self, v: impl Serialize) {
        self.counterexamples.push(to_json(v));
        self.status = Status::Failed;
    }
}

fn to_json(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

/// Text: the body lines then one summary line. JSON: the pretty object.
pub fn render(report: &Report, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(report).expect("report serializes");
        s.push('\n');
        return s;
    }
    let mut out = String::new();
    if let Some(t) = report.timestamp {
        writeln!(out, "# timestamp {t}").unwrap();
    }
    for l in &report.lines {
        out.push_str(l);
        out.push('\n');
    }
    writeln!(out, "{}", report.summary).unwrap();
    out
}

/// Status for an error: malformed input and exceeded caps are usage
/// errors, everything else is a failed check.
pub fn error_status(e: &Error) -> Status {
    match e {
        Error::InFile { source, .. } => error_status(source),
        Error::Capacity { .. } => Status::Usage,
        e if e.is_format() => Status::Usage,
        _ => Status::Failed,
    }
}

const CAP_KEYS: [&str; 6] = [
    "max_order",
    "max_subset_order",
    "max_map_candidates",
    "max_catalog_order",
    "max_oracle_order",
    "max_partition_order",
];

/// Reads caps from `key = value` lines; unknown keys are rejected.
pub fn load_limits(path: Option<&Path>) -> Result<Limits, String> {
    let Some(path) = path else {
        return Ok(Limits::default());
    };
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let table: toml::Table =
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if let Some(k) = table.keys().find(|k| !CAP_KEYS.contains(&k.as_str())) {
        return Err(format!(
            "{}: unknown key `{k}` (expected one of {})",
            path.display(),
            CAP_KEYS.join(", ")
        ));
    }
    table
        .try_into()
        .map_err(|e| format!("{}: {e}", path.display()))
}

/// Runs a parsed command. Errors come back with their status.
pub fn run(cli: &Cli) -> Result<Report, (Status, String)> {
    let limits = load_limits(cli.config.as_deref()).map_err(|e| (Status::Usage, e))?;
    let mut report =
        dispatch(&cli.command, &limits).map_err(|e| (error_status(&e), e.to_string()))?;
    if cli.timestamps {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        report.timestamp = Some(secs);
    }
    Ok(report)
}

/// Parses `args` (including the program name), runs, and returns the exit
/// status with what would go to stdout and stderr.
pub fn run_args<I, T>(args: I) -> (Status, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                (Status::Usage, String::new(), text)
            } else {
                (Status::Ok, text, String::new())
            };
        }
    };
    match run(&cli) {
        Ok(r) => (r.status, render(&r, cli.json), String::new()),
        Err((status, msg)) => (status, String::new(), format!("error: {msg}\n")),
    }
}

fn dispatch(cmd: &Command, limits: &Limits) -> bcklab::Result<Report> {
    match cmd {
        Command::Check { file } => check(file),
        Command::Ideals(a) => ideals(a, limits),
        Command::States(a) => states(a, limits),
        Command::Adjoint(a) => adjoint(&a.algebra, limits),
        Command::Retract(a) => retract(&a.algebra, limits),
        Command::Mv(a) => mv(a, limits),
        Command::Diagonal(a) => diagonal_cmd(a, limits),
        Command::Product(a) => product(a, limits),
        Command::Enumerate(a) => enumerate(a, limits),
        Command::Suite(a) => suite(a, limits),
    }
}

fn write_file(path: &Path, text: &str) -> bcklab::Result<()> {
    fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn name_of(a: &CayleyAlgebra) -> &str {
    a.name().unwrap_or("unnamed")
}

fn check(file: &Path) -> bcklab::Result<Report> {
    let mut r = Report::new("check", &[file]);
    let table = read_table(file)?;
    let violations = axiom_violations(&table);
    for axiom in [
        BckAxiom::Bck1,
        BckAxiom::Bck2,
        BckAxiom::Bck3,
        BckAxiom::Bck4,
    ] {
        let failed = violations.iter().filter(|v| v.axiom == axiom).count();
        r.result(json!({"axiom": axiom.to_string(), "ok": failed == 0, "failures": failed}));
        if failed == 0 {
            r.line(format!("{axiom} ok"));
        } else {
            r.line(format!("{axiom} fails on {failed} instance(s)"));
        }
    }
    for v in &violations {
        r.line(format!("violation {v}"));
        r.counterexample(v);
    }
    if !violations.is_empty() {
        r.summary = format!(
            "check: not a BCK-algebra, {} failed instance(s)",
            violations.len()
        );
        return Ok(r);
    }
    let a = check_bck(table)?;
    let flags = classify(&a);
    r.line(format!("flags {}", flag_string(&flags)));
    if let Some(top) = flags.bounded {
        r.line(format!("top {top}"));
    }
    r.result(json!({"order": a.order(), "flags": flags}));
    r.summary = format!(
        "check: {} is a BCK-algebra of order {}",
        name_of(&a),
        a.order()
    );
    Ok(r)
}

fn ideals(args: &IdealsArgs, limits: &Limits) -> bcklab::Result<Report> {
    let mut r = Report::new("ideals", &[&args.algebra]);
    let a = read_algebra(&args.algebra)?;
    let list = all_ideals(&a, limits)?;
    for i in &list {
        let c = IdealCertificate::new(&a, i.clone())?.checked();
        r.line(format!(
            "{}  # commutative {} prime {} maximal {}",
            write_ideal_line(i),
            c.commutative,
            c.prime,
            c.maximal
        ));
        r.result(json!({"ideal": c}));
    }
    let mut summary = format!("ideals: {} ideal(s)", list.len());
    if args.congruences {
        let congs = all_congruences(&a, None, limits)?;
        for c in &congs {
            r.line(write_classes_line(c));
            r.result(json!({"congruence": c.classes()}));
        }
        write!(summary, ", {} congruence(s)", congs.len()).unwrap();
    }
    if let Some(text) = &args.generate {
        let s = parse_element_list(text, a.order())?;
        let g = generated_ideal(&a, &s);
        r.line(format!("generated by {s}: {}", write_ideal_line(&g)));
        r.result(json!({"generators": s, "generated": g}));
    }
    r.summary = summary;
    Ok(r)
}

fn describe_operator(
    sa: &StateAlgebra,
    kind: StateKind,
    limits: &Limits,
) -> bcklab::Result<(String, Value)> {
    let count = all_state_ideals(sa, limits)?.len();
    let si = match subdirectly_irreducible(sa, limits) {
        Ok(v) => {
            if v.irreducible {
                "yes"
            } else {
                "no"
            }
        }
        Err(Error::NotApplicable(_)) => "n/a",
        Err(e) => return Err(e),
    };
    let (ker, im) = (sa.kernel(), sa.image());
    let line = format!(
        "{kind} {} ker {ker} im {im} state_ideals {count} si {si}",
        sa.mu()
    );
    let value = json!({
        "kind": kind,
        "map": sa.mu().values(),
        "kernel": ker,
        "image": im,
        "state_ideals": count,
        "subdirectly_irreducible": si,
    });
    Ok((line, value))
}

fn states(args: &StatesArgs, limits: &Limits) -> bcklab::Result<Report> {
    let kind = StateKind::from(args.kind);
    let mut inputs: Vec<&Path> = vec![&args.algebra];
    if let Some(m) = &args.check {
        inputs.push(m);
    }
    let mut r = Report::new("states", &inputs);
    let a = read_algebra(&args.algebra)?;
    if let Some(path) = &args.check {
        let mu = read_map(path)?;
        mu.check(a.order(), a.order())
            .map_err(|e| Error::in_file(path, e))?;
        if let Some(v) = state_violation(&a, &mu, kind)? {
            r.line(format!("violation {v}"));
            r.counterexample(&v);
            r.summary = format!(
                "states: {mu} is not a {kind} operator, witness ({}, {})",
                v.x, v.y
            );
            return Ok(r);
        }
        let sa = certify_state(&a, &mu, kind)?;
        let (line, value) = describe_operator(&sa, kind, limits)?;
        r.line(line);
        r.result(value);
        r.summary = format!("states: {mu} is a {kind} operator");
        return Ok(r);
    }
    let ops = enumerate_state_operators(&a, kind, limits)?;
    for sa in &ops {
        let (line, value) = describe_operator(sa, kind, limits)?;
        r.line(line);
        r.result(value);
    }
    r.summary = format!(
        "states: {} {kind} operator(s) on {}",
        ops.len(),
        name_of(&a)
    );
    Ok(r)
}

fn adjoint(path: &Path, limits: &Limits) -> bcklab::Result<Report> {
    let mut r = Report::new("adjoint", &[path]);
    let a = read_algebra(path)?;
    let pairs = find_adjoint_pairs(&a, limits)?;
    for p in &pairs {
        r.line(format!(
            "A {} I {} mu {}",
            p.subalgebra, p.ideal, p.component
        ));
        r.result(json!({"subalgebra": p.subalgebra, "ideal": p.ideal, "mu": p.component.values()}));
    }
    r.summary = format!("adjoint: {} pair(s)", pairs.len());
    Ok(r)
}

fn retract(path: &Path, limits: &Limits) -> bcklab::Result<Report> {
    let mut r = Report::new("retract", &[path]);
    let a = read_algebra(path)?;
    let list = retract_ideals(&a, limits)?;
    for ri in &list {
        r.line(format!(
            "{}  # section {}",
            write_ideal_line(&ri.ideal),
            ri.section
        ));
        r.result(json!({"ideal": ri.ideal, "section": ri.section.values()}));
    }
    r.summary = format!("retract: {} retract ideal(s)", list.len());
    Ok(r)
}

fn mv(args: &MvArgs, limits: &Limits) -> bcklab::Result<Report> {
    let mut inputs: Vec<&Path> = args
        .from_bck
        .iter()
        .chain(&args.mv)
        .map(|p| p.as_path())
        .collect();
    if let Some(s) = &args.check_state {
        inputs.push(s);
    }
    let mut r = Report::new("mv", &inputs);
    let (m, bck): (MvAlgebra, Option<CayleyAlgebra>) = match (&args.from_bck, &args.mv) {
        (Some(p), _) => {
            let a = read_algebra(p)?;
            (bck_to_mv(&a)?, Some(a))
        }
        (None, Some(p)) => (read_mv(p)?, None),
        (None, None) => unreachable!("clap requires a source"),
    };
    let mut summary = format!("mv: MV-algebra of order {}", m.order());
    if args.check_state.is_none() && !args.correspondence {
        for l in write_mv(&m).lines() {
            r.line(l);
        }
        r.result(json!({"oplus": m.oplus_rows(), "neg": m.neg_row()}));
    }
    if let Some(path) = &args.check_state {
        let s = read_map(path)?;
        s.check(m.order(), m.order())
            .map_err(|e| Error::in_file(path, e))?;
        let rep = check_state_mv(&m, &s)?;
        for f in &rep.failures {
            r.line(format!("violation {f}"));
            r.counterexample(f);
        }
        let verdict = if rep.passes() { "is" } else { "is not" };
        r.result(json!({"map": s.values(), "mv_state": rep.passes()}));
        write!(summary, "; {s} {verdict} an MV state").unwrap();
        if let Some(a) = &bck {
            let left = state_violation(a, &s, StateKind::LeftState)?.is_none();
            r.line(format!(
                "left state operator on the BCK reduct: {}",
                yes_no(left)
            ));
        }
    }
    if args.correspondence {
        let a = bck.as_ref().expect("clap requires --from-bck");
        let rep = check_mv_state_correspondence(a, limits)?;
        r.line(format!("maps {}", rep.candidates));
        r.line(format!("left states fixing the top {}", rep.left_states));
        r.line(format!("MV states {}", rep.state_mv));
        r.line(format!("state-morphisms fixing the top {}", rep.morphisms));
        for (label, list) in [
            ("left state that is not an MV state", &rep.forward_failures),
            ("MV state that is not a left state", &rep.converse_failures),
            (
                "state-morphism that is not an idempotent MV endomorphism",
                &rep.morphism_failures,
            ),
        ] {
            for m in list {
                r.line(format!("violation {label}: {m}"));
                r.counterexample(json!({"kind": label, "map": m.values()}));
            }
        }
        r.result(&rep);
        let verdict = if rep.passes() { "holds" } else { "fails" };
        write!(summary, "; state correspondence {verdict}").unwrap();
    }
    r.summary = summary;
    Ok(r)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn diagonal_cmd(args: &DiagonalArgs, limits: &Limits) -> bcklab::Result<Report> {
    let mut r = Report::new("diagonal", &[&args.algebra]);
    let a = read_algebra(&args.algebra)?;
    let d = diagonal(&a, limits)?;
    let (ker, im) = (d.kernel(), d.image());
    r.line(format!("order {}", d.product.order()));
    r.line(format!("mu {}", d.mu));
    r.line(format!("ker {ker}"));
    r.line(format!("im {im}"));
    r.line("state-morphism yes");
    r.result(json!({
        "order": d.product.order(),
        "table": table_json(&d.product.table()),
        "mu": d.mu.values(),
        "kernel": ker,
        "image": im,
    }));
    if let Some(p) = &args.emit {
        write_file(p, &write_algebra(&d.product))?;
    }
    if let Some(p) = &args.emit_map {
        write_file(p, &write_map(&d.mu))?;
    }
    r.summary = format!(
        "diagonal: D({}) has order {}",
        name_of(&a),
        d.product.order()
    );
    Ok(r)
}

fn product(args: &ProductArgs, limits: &Limits) -> bcklab::Result<Report> {
    let mut r = Report::new("product", &[&args.left, &args.right]);
    let x = read_algebra(&args.left)?;
    let y = read_algebra(&args.right)?;
    let p = direct_product(&x, &y, limits)?;
    let text = write_algebra(&p);
    match &args.emit {
        Some(path) => write_file(path, &text)?,
        None => {
            for l in text.lines() {
                r.line(l);
            }
        }
    }
    r.result(table_json(&p.table()));
    r.summary = format!("product: order {}", p.order());
    Ok(r)
}

fn enumerate(args: &EnumerateArgs, limits: &Limits) -> bcklab::Result<Report> {
    let inputs: Vec<&Path> = args.out.iter().map(|p| p.as_path()).collect();
    let mut r = Report::new("enumerate", &inputs);
    let cat = if args.oracle {
        naive_oracle(args.order, limits)?
    } else {
        enumerate_bck(args.order, limits)?
    };
    for e in &cat.entries {
        r.line(format!(
            "{}\t{}\t{}",
            name_of(&e.algebra),
            e.hash,
            flag_string(&e.flags)
        ));
        r.result(json!({"name": name_of(&e.algebra), "hash": e.hash, "flags": e.flags}));
    }
    if let Some(root) = &args.out {
        write_catalog(&cat, root)?;
    }
    r.summary = format!(
        "enumerate: {} algebra(s) of order {}",
        cat.len(),
        args.order
    );
    Ok(r)
}

fn suite(args: &SuiteArgs, limits: &Limits) -> bcklab::Result<Report> {
    let mut r = Report::new("suite", &[&args.catalog]);
    let cats = read_catalogs(&args.catalog)?;
    let report = run_suite(&cats, limits);
    let tsv = report.to_tsv();
    if let Some(p) = &args.report {
        write_file(p, &tsv)?;
    }
    for l in tsv.lines() {
        r.line(l);
    }
    for row in &report.rows {
        r.result(row);
    }
    for row in report.failing_rows() {
        r.counterexample(json!({"label": row.label, "first": row.first_counterexample}));
    }
    let observed = report
        .rows
        .iter()
        .filter(|row| row.observation && row.failures > 0)
        .count();
    r.summary = format!(
        "suite: {} entries, {} statements, {} failing, {} observation(s) with counterexamples",
        report.entries,
        report.rows.len(),
        report.failing_rows().count(),
        observed
    );
    Ok(r)
}
