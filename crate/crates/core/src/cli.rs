//! The `antipodal` command line.
//!
//! Every verb prints one JSON report on standard output. Exit status: 0 when the
//! property holds (or the computation succeeded), 1 when it fails, 2 on usage or
//! input errors, 3 when a search budget ran out.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::antipodality::{
    erdos_rank_k, is_rank_k_antipodal, joint_antipodal_direct, joint_antipodal_shrunk, strict_rank_k,
    AntipodalityCertificate, JointQuery, Mode,
};
use crate::construction::{gap_analysis, product_construct, theorem1_bound, volume_inequality_check, StartingConfig};
use crate::discrimination::{classical_subadditivity_check, error_prob, min_error, Measurement, StateSpace};
use crate::error::{Error, Result};
use crate::geometry::{AffineMap, PointSet, DEFAULT_VOLUME_DIM_CAP};
use crate::hashcodes::{
    counting_bound, greedy_code, is_perfect, max_code, random_code, rate_bounds, HashCode, MaxCode, ScanOrder,
    DEFAULT_BUDGET,
};
use crate::io;
use crate::rational::{self, Rational};

/// Subsets drawn when verification has to be sampled and `--sample` is absent.
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds = 0,
    Fails = 1,
    Usage = 2,
    Budget = 3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(name = "antipodal", version, about = "Exact checks and constructions for rank-k antipodal point sets")]
struct Cli {
    /// Worker threads for subset checks.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Add approximate decimal renderings next to exact values.
    #[arg(long, global = true)]
    decimal: bool,
    /// Replay a saved report: re-verify its certificates and compare it with a fresh run.
    #[arg(long, global = true, value_name = "REPORT")]
    verify: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Sampling {
    /// Check this many seeded random subsets instead of all of them.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct CodeParams {
    #[arg(long)]
    b: u32,
    /// Perfectness order.
    #[arg(long)]
    k: usize,
    #[arg(long)]
    m: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide joint antipodality of chosen points with respect to the hull of all points.
    CheckJoint {
        points: PathBuf,
        /// Comma-separated point indices.
        #[arg(long, value_delimiter = ',', required = true)]
        chosen: Vec<usize>,
        /// Comma-separated dilation factors in (0, 1) summing to k.
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<String>>,
    },
    /// Decide rank-k antipodality.
    CheckRank {
        points: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Decide Erdős rank-k antipodality (orthogonal projections).
    CheckErdos {
        points: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Decide strict rank-k antipodality.
    CheckStrict {
        points: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Check that a code is perfect.
    HashVerify { code: PathBuf },
    /// Exact maximum perfect code by branch and bound.
    HashSearch {
        #[command(flatten)]
        params: CodeParams,
        /// Search node limit.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Greedy perfect code; lexicographic scan, or shuffled with --seed.
    HashGreedy {
        #[command(flatten)]
        params: CodeParams,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Random perfect code by sampling and deletion.
    HashRandom {
        #[command(flatten)]
        params: CodeParams,
        #[arg(long)]
        seed: u64,
    },
    /// Product construction from a rank-k base set and a perfect code of order k + 1.
    Construct {
        base: PathBuf,
        #[arg(long)]
        k: usize,
        /// Code file; without it a maximum code of length --m is searched for.
        #[arg(long)]
        code: Option<PathBuf>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Also write the constructed points to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Size bound for rank-k sets in R^d; with --b and --m also the code counting bound.
    Bounds {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        b: Option<u32>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Exponent gap between product constructions and the size bound.
    Gap {
        #[arg(long)]
        k: usize,
        /// Dimension of the starting configuration.
        #[arg(long)]
        d: usize,
        #[arg(long)]
        b: usize,
    },
    /// Volumes of the hull and of its shrunk copies.
    VolumeCheck {
        points: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Minimum-error discrimination of STATES on the state space SPACE, or with
    /// --d the classical subadditivity check on Delta_d.
    Discriminate {
        space: Option<PathBuf>,
        states: Option<PathBuf>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Trials for the classical check.
        #[arg(long, default_value_t = 200)]
        sample: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Output { status: 0, stdout: text, stderr: String::new() }
                }
                _ => Output { status: Status::Usage as i32, stdout: String::new(), stderr: text },
            };
        }
    };
    if cli.threads == 0 {
        return usage("--threads must be at least 1".into());
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => return usage(format!("cannot start thread pool: {e}")),
    };
    match pool.install(|| execute(&cli)) {
        Ok((status, mut report)) => {
            if cli.decimal {
                add_decimals(&mut report);
            }
            let stdout = serde_json::to_string_pretty(&report).expect("reports are plain JSON") + "\n";
            Output { status: status as i32, stdout, stderr: String::new() }
        }
        Err(e) => usage(e.to_string()),
    }
}

fn usage(msg: String) -> Output {
    Output { status: Status::Usage as i32, stdout: String::new(), stderr: format!("error: {msg}\n") }
}

fn execute(cli: &Cli) -> Result<(Status, Value)> {
    match &cli.verify {
        None => dispatch(&cli.command),
        Some(path) => replay(&cli.command, path),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn load_points(path: &Path) -> Result<PointSet> {
    io::parse_point_set(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_code(path: &Path) -> Result<HashCode> {
    io::parse_code(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn holds(ok: bool) -> Status {
    if ok {
        Status::Holds
    } else {
        Status::Fails
    }
}

fn mode_for(n: usize, k: usize, s: &Sampling) -> Result<Mode> {
    match (s.sample, s.seed) {
        (Some(samples), Some(seed)) => Ok(Mode::Sampled { samples, seed }),
        (Some(_), None) => Err(Error::InvalidInput("--sample needs --seed".into())),
        (None, seed) => Mode::auto(n, k, DEFAULT_SAMPLES, seed),
    }
}

fn size_bound(d: usize, k: usize) -> Result<(Rational, u128)> {
    let bound = theorem1_bound(d, k)?;
    let floor = rational::floor_to_u128(&bound).ok_or_else(|| Error::InvalidInput("bound overflows".into()))?;
    Ok((bound, floor))
}

fn dispatch(cmd: &Command) -> Result<(Status, Value)> {
    match cmd {
        Command::CheckJoint { points, chosen, lambda } => {
            let x = load_points(points)?;
            let q = JointQuery::new(&x, chosen.clone())?;
            let lambda = lambda
                .as_ref()
                .map(|ls| ls.iter().map(|s| rational::parse(s.trim())).collect::<Result<Vec<_>>>())
                .transpose()?;
            let direct = joint_antipodal_direct(&q)?;
            let shrunk = joint_antipodal_shrunk(&q, lambda.as_deref())?;
            if direct.is_antipodal() != shrunk.is_antipodal() {
                return Err(Error::Inconsistent("direct and shrunk-copy verdicts differ".into()));
            }
            let ok = direct.is_antipodal();
            let summary = format!("points {chosen:?} are {}jointly antipodal", if ok { "" } else { "not " });
            Ok((
                holds(ok),
                json!({
                    "verb": "check-joint",
                    "summary": summary,
                    "chosen": chosen,
                    "antipodal": ok,
                    "certificate": to_value(&direct),
                    "shrunk_certificate": to_value(&shrunk),
                }),
            ))
        }
        Command::CheckRank { points, k, sampling } => {
            let x = load_points(points)?;
            let mode = mode_for(x.len(), *k, sampling)?;
            let verdict = is_rank_k_antipodal(&x, *k, mode)?;
            let (_, cap) = size_bound(x.dim(), *k)?;
            let summary = match &verdict.failure {
                None => format!("rank-{k} antipodal, {} points, bound {cap}", x.len()),
                Some(f) => format!("not rank-{k} antipodal: subset {:?} is not jointly antipodal", f.subset),
            };
            Ok((
                holds(verdict.holds),
                json!({ "verb": "check-rank", "summary": summary, "bound": cap.to_string(), "verdict": to_value(&verdict) }),
            ))
        }
        Command::CheckErdos { points, k } => {
            let x = load_points(points)?;
            let verdict = erdos_rank_k(&x, *k)?;
            let summary = match &verdict.failure {
                None => format!("Erdős rank-{k} antipodal, {} points", x.len()),
                Some(f) => format!("not Erdős rank-{k} antipodal: subset {:?} fails", f.subset()),
            };
            Ok((holds(verdict.holds), json!({ "verb": "check-erdos", "summary": summary, "verdict": to_value(&verdict) })))
        }
        Command::CheckStrict { points, k } => {
            let x = load_points(points)?;
            let verdict = strict_rank_k(&x, *k)?;
            let summary = match &verdict.failure {
                None => format!("strictly rank-{k} antipodal, {} points", x.len()),
                Some(f) => format!("not strictly rank-{k} antipodal: subset {:?} fails", f.subset),
            };
            Ok((holds(verdict.holds), json!({ "verb": "check-strict", "summary": summary, "verdict": to_value(&verdict) })))
        }
        Command::HashVerify { code } => {
            let c = load_code(code)?;
            let v = is_perfect(&c);
            let summary = match &v.violation {
                None => format!("perfect ({}, {})-hash code with {} words of length {}", c.b(), c.k(), c.len(), c.m()),
                Some(s) => format!("not perfect: words {s:?} have no separating coordinate"),
            };
            Ok((
                holds(v.perfect),
                json!({ "verb": "hash-verify", "summary": summary, "perfect": v.perfect, "violation": v.violation, "code": io::code_to_value(&c) }),
            ))
        }
        Command::HashSearch { params: p, budget } => {
            let r = max_code(p.b, p.k, p.m, *budget)?;
            let (status, summary, nodes) = match &r {
                MaxCode::Exact { size, nodes, .. } => {
                    (Status::Holds, format!("N({}, {}, {}) = {size}", p.b, p.k, p.m), *nodes)
                }
                MaxCode::BudgetExceeded { best, nodes, .. } => (
                    Status::Budget,
                    format!("budget exceeded: N({}, {}, {}) >= {}, maximum unknown", p.b, p.k, p.m, best.len()),
                    *nodes,
                ),
            };
            Ok((
                status,
                json!({
                    "verb": "hash-search",
                    "summary": summary,
                    "exact": r.exact_size().is_some(),
                    "size": r.code().len(),
                    "nodes": nodes,
                    "budget": budget,
                    "counting_bound": rational::render(&counting_bound(p.b, p.k, p.m)?),
                    "code": io::code_to_value(r.code()),
                }),
            ))
        }
        Command::HashGreedy { params: p, seed } => {
            let order = seed.map_or(ScanOrder::Lexicographic, |seed| ScanOrder::Shuffled { seed });
            let c = greedy_code(p.b, p.k, p.m, order)?;
            code_report("hash-greedy", &c)
        }
        Command::HashRandom { params: p, seed } => {
            let c = random_code(p.b, p.k, p.m, *seed)?;
            code_report("hash-random", &c)
        }
        Command::Construct { base, k, code, m, budget, out, sampling } => construct(base, *k, code, *m, *budget, out, sampling),
        Command::Bounds { d, k, b, m } => {
            let (bound, cap) = size_bound(*d, *k)?;
            let mut report = json!({
                "verb": "bounds",
                "summary": format!("{} (≤ {cap} points)", rational::render(&bound)),
                "d": d,
                "k": k,
                "bound": rational::render(&bound),
                "max_points": cap.to_string(),
            });
            if let (Some(b), Some(m)) = (b, m) {
                let rates = rate_bounds(*b, *k + 1)?;
                report["code_counting_bound"] = json!(rational::render(&counting_bound(*b, *k + 1, *m)?));
                report["code_rates"] = to_value(&rates);
            }
            Ok((Status::Holds, report))
        }
        Command::Gap { k, d, b } => {
            let g = gap_analysis(*k, *d, *b)?;
            let summary = if g.has_gap() {
                format!("strict gap: {:.6} < {:.6}", g.construction_exponent, g.bound_exponent)
            } else if g.b_admissible {
                format!("no gap: exponent {:.6}", g.construction_exponent)
            } else {
                format!("b = {b} exceeds the admissible {}", rational::render(&g.b_cap))
            };
            Ok((Status::Holds, json!({ "verb": "gap", "summary": summary, "report": to_value(&g) })))
        }
        Command::VolumeCheck { points, k } => {
            let x = load_points(points)?;
            let r = volume_inequality_check(&x, *k, DEFAULT_VOLUME_DIM_CAP)?;
            let summary = format!(
                "sum of copy volumes {} {} k vol = {}",
                rational::render(&r.sum),
                if r.tight { "=" } else if r.holds { "<" } else { ">" },
                rational::render(&r.k_volume)
            );
            Ok((holds(r.holds && r.ratios_exact), json!({ "verb": "volume-check", "summary": summary, "report": to_value(&r) })))
        }
        Command::Discriminate { space, states, d, k, sample, seed } => discriminate(space, states, *d, *k, *sample, *seed),
    }
}

fn code_report(verb: &str, c: &HashCode) -> Result<(Status, Value)> {
    let v = is_perfect(c);
    if !v.perfect {
        return Err(Error::Inconsistent("constructed code is not perfect".into()));
    }
    Ok((
        Status::Holds,
        json!({
            "verb": verb,
            "summary": format!("perfect ({}, {})-hash code with {} words of length {}", c.b(), c.k(), c.len(), c.m()),
            "size": c.len(),
            "code": io::code_to_value(c),
        }),
    ))
}

fn construct(
    base: &Path,
    k: usize,
    code: &Option<PathBuf>,
    m: Option<usize>,
    budget: u64,
    out: &Option<PathBuf>,
    sampling: &Sampling,
) -> Result<(Status, Value)> {
    let x0 = load_points(base)?;
    let start = StartingConfig::new(x0, k)?;
    let b = u32::try_from(start.b()).map_err(|_| Error::InvalidInput("base set too large".into()))?;
    let (code, exact) = match (code, m) {
        (Some(path), _) => (load_code(path)?, None),
        (None, Some(m)) => {
            let r = max_code(b, k + 1, m, budget)?;
            (r.code().clone(), Some(r.exact_size().is_some()))
        }
        (None, None) => return Err(Error::InvalidInput("give --code or --m".into())),
    };
    let ps = product_construct(start, code)?;
    let mode = mode_for(ps.points().len(), k, sampling)?;
    let verdict = ps.verify(mode)?;
    let d = ps.points().dim();
    let (_, cap) = size_bound(d, k.min(d))?;
    if let Some(path) = out {
        std::fs::write(path, io::write_point_set(ps.points()))
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    }
    let status = match (verdict.holds, exact) {
        (false, _) => Status::Fails,
        (true, Some(false)) => Status::Budget,
        (true, _) => Status::Holds,
    };
    let summary = format!(
        "{} points in R^{d}, {}rank-{k} antipodal{}, bound {cap}",
        ps.points().len(),
        if verdict.holds { "" } else { "not " },
        if verdict.sampled { " on sampled subsets" } else { "" }
    );
    Ok((
        status,
        json!({
            "verb": "construct",
            "summary": summary,
            "code_exact": exact,
            "code": io::code_to_value(ps.code()),
            "points": io::point_set_to_value(ps.points()),
            "bound": cap.to_string(),
            "verdict": to_value(&verdict),
        }),
    ))
}

fn discriminate(
    space: &Option<PathBuf>,
    states: &Option<PathBuf>,
    d: Option<usize>,
    k: Option<usize>,
    trials: usize,
    seed: Option<u64>,
) -> Result<(Status, Value)> {
    if let (Some(space), Some(states)) = (space, states) {
        let s = StateSpace::new(load_points(space)?);
        let states = load_points(states)?;
        let r = min_error(&s, states.points())?;
        let summary = format!("minimum error {}", rational::render(&r.min_error));
        return Ok((
            Status::Holds,
            json!({
                "verb": "discriminate",
                "summary": summary,
                "min_error": rational::render(&r.min_error),
                "distinguishable": r.min_error == Rational::from_integer(0.into()),
                "measurement": to_value(&r.measurement),
            }),
        ));
    }
    let (Some(n), Some(k)) = (d, k) else {
        return Err(Error::InvalidInput("give SPACE and STATES files, or --d, --k and --seed".into()));
    };
    let seed = seed.ok_or_else(|| Error::InvalidInput("the classical check needs --seed".into()))?;
    let r = classical_subadditivity_check(n, k, trials, seed)?;
    let summary = format!("{} of {} trials satisfy subadditivity", r.passed, r.trials);
    Ok((holds(r.holds()), json!({ "verb": "discriminate", "summary": summary, "subadditivity": to_value(&r) })))
}

fn strip_decimals(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.retain(|key, _| !key.ends_with("_approx"));
            map.values_mut().for_each(strip_decimals);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_decimals),
        _ => {}
    }
}

fn approx(v: &Value) -> Option<Value> {
    match v {
        Value::String(s) => {
            let x = rational::parse(s).ok()?;
            Some(json!(rational::to_f64(&x)))
        }
        Value::Array(items) if !items.is_empty() => items.iter().map(approx).collect::<Option<Vec<_>>>().map(Value::Array),
        _ => None,
    }
}

/// Adds `<key>_approx` with floating-point renderings beside every exact field.
fn add_decimals(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.values_mut().for_each(add_decimals);
            let extra: Map<String, Value> =
                map.iter().filter_map(|(key, val)| approx(val).map(|a| (format!("{key}_approx"), a))).collect();
            map.extend(extra);
        }
        Value::Array(items) => items.iter_mut().for_each(add_decimals),
        _ => {}
    }
}

fn field<'a>(v: &'a Value, path: &[&str]) -> Result<&'a Value> {
    path.iter().try_fold(v, |cur, key| {
        cur.get(key).ok_or_else(|| Error::Parse(format!("report has no field {}", path.join("."))))
    })
}

fn decode<T: serde::de::DeserializeOwned>(v: &Value, what: &str) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn check_certificate(x: &PointSet, chosen: Vec<usize>, cert: &Value, want: Option<bool>) -> Result<()> {
    let q = JointQuery::new(x, chosen)?;
    let cert: AntipodalityCertificate = decode(cert, "certificate")?;
    cert.verify(&q)?;
    if want.is_some_and(|w| w != cert.is_antipodal()) {
        return Err(Error::Certificate("certificate type contradicts the verdict".into()));
    }
    Ok(())
}

/// Certificates inside a saved report, checked without rerunning the decision.
fn replay_certificates(cmd: &Command, saved: &Value) -> Result<usize> {
    match cmd {
        Command::CheckJoint { points, .. } => {
            let x = load_points(points)?;
            let chosen: Vec<usize> = decode(field(saved, &["chosen"])?, "chosen")?;
            let antipodal: bool = decode(field(saved, &["antipodal"])?, "antipodal")?;
            check_certificate(&x, chosen.clone(), field(saved, &["certificate"])?, Some(antipodal))?;
            check_certificate(&x, chosen, field(saved, &["shrunk_certificate"])?, Some(antipodal))?;
            Ok(2)
        }
        Command::CheckRank { points, .. } => {
            let failure = field(saved, &["verdict", "failure"])?;
            if failure.is_null() {
                return Ok(0);
            }
            let x = load_points(points)?;
            let subset: Vec<usize> = decode(field(failure, &["subset"])?, "subset")?;
            check_certificate(&x, subset, field(failure, &["certificate"])?, Some(false))?;
            Ok(1)
        }
        Command::CheckStrict { points, .. } => {
            let failure = field(saved, &["verdict", "failure"])?;
            if failure.is_null() {
                return Ok(0);
            }
            let x = load_points(points)?;
            let subset: Vec<usize> = decode(field(failure, &["subset"])?, "subset")?;
            check_certificate(&x, subset, field(failure, &["analysis", "certificate"])?, None)?;
            Ok(1)
        }
        Command::HashVerify { .. } | Command::HashSearch { .. } | Command::HashGreedy { .. } | Command::HashRandom { .. } => {
            let code = io::code_from_value(field(saved, &["code"])?)?;
            let perfect = saved.get("perfect").and_then(Value::as_bool).unwrap_or(true);
            if is_perfect(&code).perfect != perfect {
                return Err(Error::Certificate("saved code does not match its perfection verdict".into()));
            }
            Ok(1)
        }
        Command::Construct { base, .. } => {
            let code = io::code_from_value(field(saved, &["code"])?)?;
            let points = io::point_set_from_value(field(saved, &["points"])?)?;
            let start = StartingConfig::trusted(load_points(base)?, code.k() - 1);
            if product_construct(start, code)?.points() != &points {
                return Err(Error::Certificate("saved points are not the product of base and code".into()));
            }
            Ok(1)
        }
        Command::Discriminate { space: Some(space), states: Some(states), .. } => {
            let s = StateSpace::new(load_points(space)?);
            let states = load_points(states)?;
            let map: AffineMap = decode(field(saved, &["measurement", "map"])?, "measurement")?;
            let claimed = rational::parse(field(saved, &["min_error"])?.as_str().unwrap_or_default())?;
            let m = Measurement::new(&s, map)?;
            if error_prob(&s, &m, states.points())? != claimed {
                return Err(Error::Certificate("measurement does not attain the reported error".into()));
            }
            Ok(1)
        }
        _ => Ok(0),
    }
}

fn replay(cmd: &Command, path: &Path) -> Result<(Status, Value)> {
    let mut saved: Value =
        serde_json::from_str(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    strip_decimals(&mut saved);
    let (checked, problem) = match replay_certificates(cmd, &saved) {
        Ok(n) => (n, None),
        Err(e @ (Error::Certificate(_) | Error::Parse(_))) => (0, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let (_, fresh) = dispatch(cmd)?;
    let matches = fresh == saved;
    let ok = problem.is_none() && matches;
    Ok((
        holds(ok),
        json!({
            "verb": saved.get("verb").cloned().unwrap_or(Value::Null),
            "summary": if ok { "replay verified" } else { "replay rejected" },
            "replay": {
                "certificates_checked": checked,
                "certificate_problem": problem,
                "matches_recomputation": matches,
            },
        }),
    ))
}
