//! Command-line front end: argument parsing, report assembly and exit codes.
//!
//! Exit status is 0 on success, 1 on a domain error (reported as a JSON
//! document `{code, message, context}` on stdout) and 2 on a usage error.

use std::fs;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use fcrystal::bounds::{self, bound_report, IsosimpleProfile, ReferenceExamples};
use fcrystal::crystal::{self, hodge_slopes, is_minimal, minimal_crystal, newton_slopes, CyclicFCrystal, NewtonPolygon, Slope};
use fcrystal::json::{self as fj, int, ratio};
use fcrystal::level_torsion::{hom_drifts, level_torsion, level_torsion_by_blocks};
use fcrystal::numsemigroup::{
    brauer_shockley, frobenius_dp, frobenius_for_crystal, frobenius_for_crystal_dp, FrobeniusMethod, SemigroupError,
    SemigroupGenerators,
};
use fcrystal::xilattice::XiLattice;
use fcrystal::Error;

#[derive(Debug, Parser)]
#[command(name = "fcrystal", version, about = "Exact computations for F-crystals, semigroups and xi-adic lattices")]
struct Cli {
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimal crystals.
    #[command(subcommand)]
    Minimal(MinimalCommand),
    /// Crystal reports.
    #[command(subcommand)]
    Crystal(CrystalCommand),
    /// Frobenius number of a numerical semigroup.
    Frobnum(FrobnumArgs),
    /// Isomorphism-number and minimal-height bounds of an isosimple profile.
    Bound(BoundArgs),
    /// Reference examples as a checked table.
    Examples(ExamplesArgs),
    /// Lattices in the isosimple isocrystal.
    #[command(subcommand)]
    Lattice(LatticeCommand),
}

#[derive(Debug, Subcommand)]
enum MinimalCommand {
    /// Minimal crystal of a Newton polygon.
    Construct(ConstructArgs),
}

#[derive(Debug, Args)]
struct ConstructArgs {
    /// Slopes with rank multiplicities, e.g. `0:1,1/3:3`.
    #[arg(long, conflicts_with = "newton_file", required_unless_present = "newton_file")]
    newton: Option<String>,
    /// Newton polygon JSON document (`-` for standard input).
    #[arg(long, value_name = "FILE")]
    newton_file: Option<String>,
}

#[derive(Debug, Subcommand)]
enum CrystalCommand {
    /// Slopes, minimality and level torsion of a crystal document.
    Info {
        /// Crystal JSON document (`-` for standard input).
        file: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Closed formula where its hypotheses hold, otherwise the residue search.
    Auto,
    Formula,
    Dp,
    Both,
}

#[derive(Debug, Args)]
struct FrobnumArgs {
    /// Comma-separated generators.
    #[arg(long, value_delimiter = ',', conflicts_with = "crystal", required_unless_present = "crystal")]
    gens: Option<Vec<u64>>,
    /// `s,r,e`: the semigroup `<s, re-s, r>`.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    crystal: Option<Vec<u64>>,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    /// Also list the gaps.
    #[arg(long)]
    gaps: bool,
}

#[derive(Debug, Args)]
struct BoundArgs {
    #[arg(long)]
    s: u64,
    #[arg(long)]
    r: u64,
    #[arg(long)]
    e: u64,
    /// Add the independent evaluations and the Dieudonné comparison.
    #[arg(long)]
    compare: bool,
}

#[derive(Debug, Args)]
struct ExamplesArgs {
    /// Tab-separated table instead of JSON.
    #[arg(long)]
    tsv: bool,
}

#[derive(Debug, Subcommand)]
enum LatticeCommand {
    /// Minimal height `q` and `m_alpha` of a lattice.
    QMin {
        /// Lattice JSON document (`-` for standard input).
        file: String,
    },
    /// Minimal height, Hodge slopes and quotient p-exponents of a lattice.
    Info {
        /// Lattice JSON document (`-` for standard input).
        file: String,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Domain(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

macro_rules! impl_from_domain {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Domain(Error::from(e))
            }
        }
    )*};
}

impl_from_domain!(
    fcrystal::CrystalError,
    fcrystal::SemigroupError,
    fcrystal::BoundsError,
    fcrystal::XiError,
    fcrystal::JsonError
);

struct Report {
    body: String,
    /// Non-zero status with a successful report, used by `examples`.
    status: i32,
}

impl Report {
    fn json(v: &Value) -> Self {
        Report { body: pretty(v), status: 0 }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialise");
    s.push('\n');
    s
}

/// Runs the command line `argv` (including the program name), reading `-`
/// arguments from `stdin`.
pub fn run<I, S>(argv: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let status = e.exit_code();
            let text = e.render().to_string();
            return if status == 0 {
                Outcome { status, stdout: text, stderr: String::new() }
            } else {
                Outcome { status, stdout: String::new(), stderr: text }
            };
        }
    };
    let command_name = command_name(&cli.command);
    let result = dispatch(&cli.command, stdin);
    let (status, body) = match result {
        Ok(report) => (report.status, report.body),
        Err(Failure::Usage(msg)) => return Outcome { status: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Domain(e)) => (
            1,
            pretty(&json!({
                "code": e.code(),
                "message": e.to_string(),
                "context": {"command": command_name, "module": e.module()},
            })),
        ),
        Err(Failure::Io(msg)) => {
            (1, pretty(&json!({"code": "io-error", "message": msg, "context": {"command": command_name}})))
        }
    };
    match &cli.output {
        Some(path) => match fs::write(path, &body) {
            Ok(()) => Outcome { status, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome {
                status: 1,
                stdout: pretty(&json!({
                    "code": "io-error",
                    "message": format!("cannot write {path}: {e}"),
                    "context": {"command": command_name},
                })),
                stderr: String::new(),
            },
        },
        None => Outcome { status, stdout: body, stderr: String::new() },
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Minimal(MinimalCommand::Construct(_)) => "minimal construct",
        Command::Crystal(CrystalCommand::Info { .. }) => "crystal info",
        Command::Frobnum(_) => "frobnum",
        Command::Bound(_) => "bound",
        Command::Examples(_) => "examples",
        Command::Lattice(LatticeCommand::QMin { .. }) => "lattice q-min",
        Command::Lattice(LatticeCommand::Info { .. }) => "lattice info",
    }
}

fn dispatch(c: &Command, stdin: &mut dyn Read) -> Result<Report, Failure> {
    match c {
        Command::Minimal(MinimalCommand::Construct(a)) => minimal_construct(a, stdin),
        Command::Crystal(CrystalCommand::Info { file }) => crystal_info(&read_document(file, stdin)?),
        Command::Frobnum(a) => frobnum(a),
        Command::Bound(a) => bound(a),
        Command::Examples(a) => Ok(examples(a.tsv)),
        Command::Lattice(LatticeCommand::QMin { file }) => lattice_q_min(&read_document(file, stdin)?),
        Command::Lattice(LatticeCommand::Info { file }) => lattice_info(&read_document(file, stdin)?),
    }
}

fn read_document(path: &str, stdin: &mut dyn Read) -> Result<Value, Failure> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text).map_err(|e| Failure::Io(format!("cannot read standard input: {e}")))?;
    } else {
        text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {path}: {e}")))?;
    }
    Ok(fj::parse_document(&text)?)
}

/// Parses `num/den:mult` items separated by commas; `den` defaults to 1.
fn parse_newton(spec: &str) -> Result<NewtonPolygon, Failure> {
    let mut slopes = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || Failure::Usage(format!("cannot parse Newton slope `{item}`; expected num/den:mult"));
        let (slope, mult) = item.split_once(':').ok_or_else(bad)?;
        let (num, den) = slope.split_once('/').unwrap_or((slope, "1"));
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        let mult: usize = mult.trim().parse().map_err(|_| bad())?;
        slopes.push((Slope::new(num, den)?, mult));
    }
    Ok(NewtonPolygon::from_unsorted(slopes)?)
}

fn minimal_construct(a: &ConstructArgs, stdin: &mut dyn Read) -> Result<Report, Failure> {
    let nu = match (&a.newton, &a.newton_file) {
        (Some(text), _) => parse_newton(text)?,
        (None, Some(file)) => fj::newton_from_json(&read_document(file, stdin)?)?,
        (None, None) => unreachable!("clap requires one of the two"),
    };
    Ok(Report::json(&fj::crystal_to_json(&minimal_crystal(&nu)?)))
}

fn crystal_info(doc: &Value) -> Result<Report, Failure> {
    let c: CyclicFCrystal = fj::crystal_from_json(doc)?.canonical();
    let minimality = is_minimal(&c);
    let witness = match &minimality.witness {
        None => Value::Null,
        Some(w) => json!({"cycle": int(w.cycle as u64), "i": int(w.i as u64), "q": int(w.q as u64), "epsilon": int(w.epsilon.clone())}),
    };
    let period = c.period();
    let windows: Vec<Value> = (1..=period)
        .map(|q| {
            let abd = crystal::alpha_beta_delta(&c, &q.into()).expect("q >= 1");
            json!({"q": int(q as u64), "alpha": int(abd.alpha), "beta": int(abd.beta), "delta": int(abd.delta)})
        })
        .collect();
    let drifts: Vec<Value> = hom_drifts(&c)
        .into_iter()
        .filter(|d| d.source != d.target)
        .map(|d| {
            json!({
                "source": int(d.source as u64),
                "target": int(d.target as u64),
                "value": int(d.value),
                "q": int(d.q as u64),
                "a": int(d.a as u64),
                "b": int(d.b as u64),
            })
        })
        .collect();
    let periodic: Vec<Value> = c
        .cycles()
        .iter()
        .map(|cy| crystal::check_periodicity(cy).map_or(Value::Null, Value::Bool))
        .collect();
    let lt = level_torsion(&c);
    let report = json!({
        "crystal": fj::crystal_to_json(&c),
        "rank": int(c.rank() as u64),
        "newton": fj::newton_to_json(&newton_slopes(&c)),
        "hodge_slopes": hodge_slopes(&c).into_iter().map(int).collect::<Vec<_>>(),
        "isoclinic": c.is_isoclinic(),
        "minimal": minimality.is_minimal(),
        "minimality_witness": witness,
        "periodic": periodic,
        "alpha_beta_delta": windows,
        "level_torsion": {
            "value": int(lt.clone()),
            "by_blocks": int(level_torsion_by_blocks(&c)),
            "drifts": drifts,
        },
    });
    Ok(Report::json(&report))
}

/// Frobenius number as a JSON integer, `-1` when every non-negative integer is representable.
fn frob_value(v: Option<u64>) -> Value {
    v.map_or_else(|| int(-1), int)
}

/// Brauer–Shockley on the first ordering `(x, y, z)` of a triple with `x | y + z`.
fn formula_for_triple(gens: &[u64]) -> Result<Option<u64>, SemigroupError> {
    if gens.len() != 3 {
        return Err(SemigroupError::Hypothesis(format!("the closed formula needs three generators, got {}", gens.len())));
    }
    let orders = [(0, 1, 2), (1, 0, 2), (2, 0, 1)];
    let mut last = None;
    for (i, j, k) in orders {
        match brauer_shockley(gens[i], gens[j], gens[k]) {
            Ok(v) => return Ok(v),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("three orderings tried"))
}

fn frobnum(a: &FrobnumArgs) -> Result<Report, Failure> {
    let mut report = serde_json::Map::new();
    let (gens, formula, dp, auto) = match (&a.gens, &a.crystal) {
        (Some(g), _) => {
            let sg = SemigroupGenerators::new(g.clone())?;
            let formula = matches!(a.method, Method::Formula | Method::Both).then(|| formula_for_triple(g));
            let dp = frobenius_dp(&sg);
            (sg, formula, dp, (dp, FrobeniusMethod::Dp))
        }
        (None, Some(t)) => {
            let [s, r, e] = t[..] else {
                return Err(Failure::Usage("--crystal expects s,r,e".into()));
            };
            let sg = SemigroupGenerators::new(fcrystal::numsemigroup::crystal_generators(s, r, e)?.to_vec())?;
            let auto = frobenius_for_crystal(s, r, e)?;
            let formula = matches!(a.method, Method::Formula | Method::Both).then(|| match auto.method {
                FrobeniusMethod::Formula => Ok(auto.value),
                FrobeniusMethod::Dp => Err(SemigroupError::Hypothesis(format!(
                    "generators {:?} are not pairwise coprime",
                    sg.generators()
                ))),
            });
            (sg.clone(), formula, frobenius_for_crystal_dp(s, r, e)?, (auto.value, auto.method))
        }
        (None, None) => unreachable!("clap requires one of the two"),
    };
    report.insert("generators".into(), Value::Array(gens.generators().iter().map(|&g| int(g)).collect()));
    match a.method {
        Method::Auto => {
            report.insert("value".into(), frob_value(auto.0));
            report.insert("method".into(), json!(auto.1.as_str()));
        }
        Method::Dp => {
            report.insert("value".into(), frob_value(dp));
            report.insert("method".into(), json!("dp"));
        }
        Method::Formula => {
            let v = formula.expect("requested")?;
            report.insert("value".into(), frob_value(v));
            report.insert("method".into(), json!("formula"));
        }
        Method::Both => {
            let v = formula.expect("requested")?;
            report.insert("value".into(), frob_value(dp));
            report.insert("formula_value".into(), frob_value(v));
            report.insert("dp_value".into(), frob_value(dp));
            report.insert("method".into(), json!("both"));
            report.insert("agreement".into(), json!(v == dp));
        }
    }
    if a.gaps {
        report.insert("gaps".into(), Value::Array(gens.apery_table().gaps().into_iter().map(int).collect()));
    }
    Ok(Report::json(&Value::Object(report)))
}

fn bound(a: &BoundArgs) -> Result<Report, Failure> {
    let profile = IsosimpleProfile::new(a.s, a.r, a.e)?;
    let rep = bound_report(&profile, a.compare)?;
    let mut v = json!({
        "s": int(a.s),
        "r": int(a.r),
        "e": int(a.e),
        "theorem_b": int(rep.isomorphism_bound),
        "q_bound": int(rep.q_bound),
        "isom_bound_from_q": int(rep.isom_bound_from_q),
        "frobenius": {"value": frob_value(rep.frobenius.value), "method": rep.frobenius.method.as_str()},
    });
    if let Some(cmp) = rep.comparison {
        v["comparison"] = json!({
            "lambda_form": int(cmp.lambda_form),
            "proof_chain": int(cmp.proof_chain),
            "dieudonne_optimal": cmp.dieudonne_optimal.map_or(Value::Null, int),
            "forms_agree": cmp.lambda_form == rep.isomorphism_bound,
        });
    }
    Ok(Report::json(&v))
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn examples_json(ex: &ReferenceExamples) -> Value {
    let h = &ex.hodge;
    json!({
        "hodge_slopes_0_1_3": {
            "hodge_slopes": h.hodge_slopes.iter().map(|&x| int(x)).collect::<Vec<_>>(),
            "s": int(h.profile.s()),
            "r": int(h.profile.r()),
            "e": int(h.profile.e()),
            "computed": int(h.computed),
            "expected": int(h.expected),
            "fixture": int(h.fixture),
            "relation": "computed < fixture",
            "status": status(h.pass),
        },
        "dieudonne": ex.dieudonne.iter().map(|d| json!({
            "c": int(d.c),
            "d": int(d.d),
            "computed": int(d.computed),
            "expected": int(d.expected),
            "optimal": int(d.optimal),
            "equal": d.equal,
            "fraction": ratio((d.c * d.d) % (d.c + d.d), d.c + d.d),
            "criterion": d.criterion,
            "status": status(d.pass),
        })).collect::<Vec<_>>(),
        "rank_two": ex.rank_two.iter().map(|r| json!({
            "e": int(r.e),
            "computed": int(r.computed),
            "expected": int(r.expected),
            "status": status(r.pass),
        })).collect::<Vec<_>>(),
        "all_pass": ex.all_pass(),
    })
}

fn examples_tsv(ex: &ReferenceExamples) -> String {
    let mut out = String::from("section\tparameters\tcomputed\treference\trelation\tstatus\n");
    let h = &ex.hodge;
    out.push_str(&format!(
        "hodge_slopes_0_1_3\ts={},r={},e={}\t{}\t{}\tcomputed < fixture\t{}\n",
        h.profile.s(),
        h.profile.r(),
        h.profile.e(),
        h.computed,
        h.fixture,
        status(h.pass)
    ));
    for d in &ex.dieudonne {
        out.push_str(&format!(
            "dieudonne\tc={},d={}\t{}\t{}\tequal={},criterion={}\t{}\n",
            d.c,
            d.d,
            d.computed,
            d.optimal,
            d.equal,
            d.criterion,
            status(d.pass)
        ));
    }
    for r in &ex.rank_two {
        out.push_str(&format!("rank_two\te={}\t{}\t{}\tcomputed = e\t{}\n", r.e, r.computed, r.expected, status(r.pass)));
    }
    out
}

fn examples(tsv: bool) -> Report {
    let ex = bounds::reference_examples(20, 21);
    let body = if tsv { examples_tsv(&ex) } else { pretty(&examples_json(&ex)) };
    Report { body, status: if ex.all_pass() { 0 } else { 1 } }
}

fn lattice_q_min(doc: &Value) -> Result<Report, Failure> {
    let l = fj::lattice_from_json(doc)?;
    let h = l.minimal_height()?;
    let profile = IsosimpleProfile::new(l.spec().s(), l.spec().r() as u64, l.spec().e()).ok();
    let qb = profile.map(|p| bounds::q_bound(&p)).transpose()?;
    Ok(Report::json(&json!({
        "n0": int(h.n0),
        "m_alpha": int(h.m_alpha),
        "alpha": ratio(h.m_alpha, l.spec().r() as u64),
        "q": int(h.q),
        "q_bound": qb.map_or(Value::Null, int),
    })))
}

fn lattice_info(doc: &Value) -> Result<Report, Failure> {
    let l: XiLattice = fj::lattice_from_json(doc)?;
    let h = l.minimal_height()?;
    let hodge = l.hodge_slopes()?;
    let pe = l.quotient_exponents()?;
    let (tm, tn) = l.spec().twist();
    Ok(Report::json(&json!({
        "spec": fj::xi_spec_to_json(l.spec()),
        "twist": {"m": int(tm), "n": int(tn)},
        "n0": int(h.n0),
        "m_alpha": int(h.m_alpha),
        "q": int(h.q),
        "hodge_slopes": hodge.into_iter().map(int).collect::<Vec<_>>(),
        "p_exponents": {
            "m_plus_over_m_minus": int(pe.m_plus_over_m_minus),
            "lattice_over_m_minus": int(pe.lattice_over_m_minus),
            "m_plus_over_lattice": int(pe.m_plus_over_lattice),
        },
        "basis": l.basis().iter().map(fj::xi_element_to_json).collect::<Vec<_>>(),
    })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let mut argv = vec!["fcrystal"];
        argv.extend_from_slice(args);
        run(argv, &mut std::io::empty())
    }

    fn json_of(o: &Outcome) -> Value {
        serde_json::from_str(&o.stdout).unwrap()
    }

    #[test]
    fn newton_parsing() {
        let nu = parse_newton("1/3:3, 0:1").unwrap();
        assert_eq!(nu.rank(), 4);
        assert!(parse_newton("1/3").is_err());
        assert!(parse_newton("x:1").is_err());
    }

    #[test]
    fn formula_ordering() {
        assert_eq!(formula_for_triple(&[5, 7, 3]), Ok(Some(4)));
        assert!(formula_for_triple(&[3, 5]).is_err());
        assert!(formula_for_triple(&[4, 6, 9]).is_err());
    }

    #[test]
    fn frobnum_methods() {
        let o = run_args(&["frobnum", "--gens", "3,5,7", "--method", "both"]);
        assert_eq!(o.status, 0);
        let v = json_of(&o);
        assert_eq!(v["value"], json!(4));
        assert_eq!(v["agreement"], json!(true));
        let v = json_of(&run_args(&["frobnum", "--crystal", "4,3,2", "--gaps"]));
        assert_eq!(v["method"], json!("dp"));
        assert_eq!(v["value"], json!(1));
        assert_eq!(v["gaps"], json!([1]));
        let o = run_args(&["frobnum", "--crystal", "4,3,2", "--method", "formula"]);
        assert_eq!(o.status, 1);
        assert_eq!(json_of(&o)["code"], json!("hypothesis-violation"));
        let v = json_of(&run_args(&["frobnum", "--crystal", "1,2,1"]));
        assert_eq!(v["value"], json!(-1));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["frobnum"]).status, 2);
        assert_eq!(run_args(&["bound", "--s", "4"]).status, 2);
        assert_eq!(run_args(&["nonsense"]).status, 2);
        assert_eq!(run_args(&["frobnum", "--crystal", "1,2"]).status, 2);
        assert_eq!(run_args(&["--help"]).status, 0);
    }

    #[test]
    fn domain_errors_are_structured() {
        let o = run_args(&["bound", "--s", "2", "--r", "4", "--e", "1"]);
        assert_eq!(o.status, 1);
        let v = json_of(&o);
        assert_eq!(v["code"], json!("hypothesis-violation"));
        assert_eq!(v["context"]["command"], json!("bound"));
        let o = run_args(&["crystal", "info", "/nonexistent/file.json"]);
        assert_eq!(o.status, 1);
        assert_eq!(json_of(&o)["code"], json!("io-error"));
    }
}
