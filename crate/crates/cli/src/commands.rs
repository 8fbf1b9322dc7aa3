//! The subcommands. Each produces a [`Report`] and lines of plain text.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use torsor_core::cohom::{h1, h1_cyclic_oracle, h1_tabulated, Cocycle1};
use torsor_core::cycles::CycleModel;
use torsor_core::ellcurve::{frobenius_module, lang_check, lang_sweep, CurvePointGroup, FiniteField};
use torsor_core::fgab::{format_factors, format_vec, Int};
use torsor_core::generate::{random_model_pair, scenario_rng};
use torsor_core::rationality::{quadric_parity_argument, Verdict, WcRelationSystem};
use torsor_core::torsor::{check_points, TwistedModule, EXHAUSTIVE_LIMIT};

use crate::build::{build, Built, BuiltModule};
use crate::checks;
use crate::error::InputError;
use crate::format::{parse, print};
use crate::report::{int_json, vec_json, Failure, Report, Status};

#[derive(Debug, Parser)]
#[command(
    name = "torsor",
    version,
    about = "Torsor classes and cohomology of finite Galois-style models"
)]
pub struct Cli {
    /// Print the machine-readable report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// H^1 of a module in a scenario file.
    H1 {
        file: PathBuf,
        /// Module name; the first module of the file by default.
        #[arg(long)]
        module: Option<String>,
    },
    /// The torsor class of the file's scenario.
    Class { file: PathBuf },
    /// Checks the cocycle, basepoint and additivity identities.
    Verify {
        file: Option<PathBuf>,
        /// Generate this many random scenario pairs instead of reading a file.
        #[arg(long)]
        random: Option<usize>,
        /// Seed for --random.
        #[arg(long, env = "TORSOR_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Looks for a fixed point of a twisted module.
    Twist { file: PathBuf },
    /// Checks the d-fold symmetric power of the scenario.
    Sym {
        file: PathBuf,
        /// Number of factors.
        #[arg(long)]
        d: usize,
    },
    /// Builds and checks the descent datum of a scenario with several components.
    Descend { file: PathBuf },
    /// H^1 of Frobenius acting on the points of an elliptic curve.
    Lang {
        /// Read the curve from the [curve] section of a file.
        file: Option<PathBuf>,
        /// Characteristic.
        #[arg(long)]
        p: Option<u64>,
        /// Degree of the field of definition of the points over F_p.
        #[arg(long)]
        n: Option<u32>,
        /// Coefficient of x in y^2 = x^3 + a x + b.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
        /// Constant term.
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
        /// Every nonsingular curve with coefficients in F_p.
        #[arg(long)]
        sweep: bool,
        /// Frobenius over F_(p^m) for this m dividing n.
        #[arg(long, default_value_t = 1)]
        base_degree: u32,
    },
    /// Decides whether P is forced to vanish by 2P = Q, P = dQ, 2Q = 0.
    Parity {
        /// Degree d in P = dQ.
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        /// Leave out 2Q = 0.
        #[arg(long)]
        drop_canonical: bool,
    },
    /// Decides the query of the file's [relations] section.
    Relations { file: PathBuf },
    /// Prints the file in normal form.
    Print { file: PathBuf },
}

/// What a command produced.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub text: Vec<String>,
}

impl Outcome {
    fn new(report: Report) -> Self {
        Outcome {
            report,
            text: Vec::new(),
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    fn fail(&mut self, f: Failure) {
        self.line(format!("FAIL {}: {}", f.identity, f.at));
        self.report.fail(f);
    }
}

pub fn load(path: &Path) -> Result<Built, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    build(&parse(&text)?)
}

fn factors_json(f: &[Int]) -> Value {
    vec_json(f)
}

fn file_args(file: &Path) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("file".into(), json!(file.display().to_string()));
    m
}

fn model(built: &Built) -> Result<(&CycleModel, usize), InputError> {
    built
        .model
        .as_ref()
        .map(|(m, t)| (m, *t))
        .ok_or_else(|| InputError::Missing("the file has no [scenario] section".into()))
}

fn core_failure(e: torsor_core::Error) -> Failure {
    Failure::new("library precondition", json!({"error": e.to_string()}))
}

pub fn run(cli: &Command) -> Result<Outcome, InputError> {
    match cli {
        Command::H1 { file, module } => h1_command(file, module.as_deref()),
        Command::Class { file } => class_command(file),
        Command::Verify { file, random, seed } => match (file, random) {
            (Some(_), Some(_)) => Err(InputError::Usage("give either a file or --random, not both".into())),
            (Some(f), None) => verify_file(f),
            (None, Some(n)) => Ok(verify_random(*n, *seed)),
            (None, None) => Err(InputError::Usage("verify needs a file or --random N".into())),
        },
        Command::Twist { file } => twist_command(file),
        Command::Sym { file, d } => sym_command(file, *d),
        Command::Descend { file } => descend_command(file),
        Command::Lang {
            file,
            p,
            n,
            a,
            b,
            sweep,
            base_degree,
        } => lang_command(file.as_deref(), *p, *n, *a, *b, *sweep, *base_degree),
        Command::Parity { d, drop_canonical } => Ok(parity(*d, *drop_canonical)),
        Command::Relations { file } => relations_command(file),
        Command::Print { file } => print_command(file),
    }
}

fn h1_command(file: &Path, name: Option<&str>) -> Result<Outcome, InputError> {
    let built = load(file)?;
    let name = match name {
        Some(n) => n.to_string(),
        None => built
            .module_order
            .first()
            .cloned()
            .ok_or_else(|| InputError::Missing("the file defines no module".into()))?,
    };
    let module = built
        .modules
        .get(&name)
        .ok_or_else(|| InputError::Missing(format!("no module `{name}`")))?;
    let mut args = file_args(file);
    args.insert("module".into(), json!(name));
    let mut out = Outcome::new(Report::new("h1", args));
    let (factors, oracle) = match module {
        BuiltModule::Presented(m) => {
            let factors = h1(m).invariant_factors();
            let oracle = match h1_cyclic_oracle(m) {
                Ok(q) => Some(q.invariant_factors()),
                Err(torsor_core::Error::NotCyclic) => None,
                Err(e) => {
                    return Err(InputError::Invalid {
                        context: name,
                        source: e,
                    })
                }
            };
            (factors, oracle)
        }
        BuiltModule::Tabulated(m) => {
            let q = h1_tabulated(m).map_err(InputError::invalid(format!("[module {name}]")))?;
            (q.invariant_factors(), None)
        }
    };
    out.line(format!("H^1(G, {name}) = {}", format_factors(&factors)));
    if let Some(o) = &oracle {
        out.line(format!("cyclic oracle: {}", format_factors(o)));
        if *o != factors {
            out.fail(Failure::new(
                "cochain H^1 = ker N / im(s - 1)",
                json!({"cochain": factors_json(&factors), "oracle": factors_json(o)}),
            ));
        }
    }
    out.report.results = json!({
        "invariant_factors": factors_json(&factors),
        "oracle": oracle.as_deref().map(factors_json),
    });
    Ok(out)
}

fn class_command(file: &Path) -> Result<Outcome, InputError> {
    let built = load(file)?;
    let (s, t0) = model(&built)?;
    let mut out = Outcome::new(Report::new("class", file_args(file)));
    let cc = s.build_cocycle(t0).map_err(InputError::invalid("[scenario]"))?;
    let class = cc.cocycle.class();
    let factors = class.h1().invariant_factors();
    out.line(format!(
        "stabilizer of the base component: order {} of {}",
        cc.subgroup.order(),
        s.group().order()
    ));
    out.line(format!("H^1 = {}", format_factors(&factors)));
    out.line(format!("class = {}", format_vec(class.coords())));
    out.line(if class.is_zero() {
        "the class is trivial"
    } else {
        "the class is nontrivial"
    });
    out.report.results = json!({
        "basepoint": t0,
        "subgroup": cc.subgroup.elements(),
        "h1": factors_json(&factors),
        "class": vec_json(class.coords()),
        "nontrivial": !class.is_zero(),
        "order": class.order().as_ref().map(int_json),
        "cocycle": checks::cocycle_table(&cc.cocycle),
    });
    Ok(out)
}

fn verify_file(file: &Path) -> Result<Outcome, InputError> {
    let built = load(file)?;
    let (s, t0) = model(&built)?;
    let mut out = Outcome::new(Report::new("verify", file_args(file)));
    let run = || -> torsor_core::Result<Vec<(&'static str, Option<Failure>)>> {
        let mut res = vec![
            ("cocycle", checks::cocycle(s, t0)?),
            ("basepoints", checks::basepoints(s, t0)?),
            ("equivariance", checks::equivariance(s, t0)?),
            ("additivity", checks::additivity(s, t0, s, t0)?.1),
            ("negation", checks::additivity(s, t0, &s.negate(), t0)?.1),
        ];
        if !s.is_connected() && s.components().is_transitive() {
            res.push(("descent", checks::descent(s, t0)?));
        }
        Ok(res)
    };
    let results = run().map_err(InputError::invalid("[scenario]"))?;
    let mut summary = Map::new();
    for (name, failure) in results {
        summary.insert(name.into(), json!(failure.is_none()));
        match failure {
            None => out.line(format!("pass {name}")),
            Some(f) => out.fail(f),
        }
    }
    out.report.results = Value::Object(summary);
    Ok(out)
}

/// One generated scenario pair; never touches shared state, so pairs can
/// be checked in any order.
fn random_item(seed: u64, index: usize) -> (Value, Option<Failure>) {
    let (s1, s2) = random_model_pair(&mut scenario_rng(seed, index as u64));
    let item = |status: &str| {
        json!({
            "index": index,
            "group_order": s1.group().order(),
            "points": [s1.points().size(), s2.points().size()],
            "status": status,
        })
    };
    match checks::theorem_suite(&s1, 0, &s2, 0) {
        Err(e) => (item("fail"), Some(core_failure(e))),
        Ok((Some(f), _, _)) => (item("fail"), Some(f)),
        Ok((None, class1, sum)) => {
            let h = s1.target();
            let mut v = item("pass");
            v["h1"] = factors_json(&h1(h).invariant_factors());
            v["class1"] = vec_json(&class1);
            v["sum"] = vec_json(&sum);
            (v, None)
        }
    }
}

pub fn verify_random(n: usize, seed: u64) -> Outcome {
    let mut args = Map::new();
    args.insert("random".into(), json!(n));
    let mut out = Outcome::new(Report::new("verify", args));
    out.report.seed = Some(seed);
    let items: Vec<(Value, Option<Failure>)> = (0..n).into_par_iter().map(|i| random_item(seed, i)).collect();
    let mut passed = 0;
    let mut nontrivial = 0;
    let mut list = Vec::with_capacity(n);
    for (i, (item, failure)) in items.into_iter().enumerate() {
        match failure {
            None => {
                passed += 1;
                if item["class1"]
                    .as_array()
                    .is_some_and(|c| c.iter().any(|x| x != &json!(0)))
                {
                    nontrivial += 1;
                }
            }
            Some(mut f) => {
                if let Value::Object(m) = &mut f.at {
                    m.insert("scenario".into(), json!(i));
                }
                out.fail(f);
            }
        }
        list.push(item);
    }
    out.line(format!(
        "{passed}/{n} scenarios pass (seed {seed}); {nontrivial} with a nontrivial class"
    ));
    out.report.results = json!({
        "scenarios": n,
        "passed": passed,
        "nontrivial": nontrivial,
        "items": list,
    });
    out
}

fn twist_command(file: &Path) -> Result<Outcome, InputError> {
    let built = load(file)?;
    let beta: Cocycle1 = match (&built.cocycle, &built.model) {
        (Some(c), _) => c.clone(),
        (None, Some((s, t0))) => s.cocycle_over_group(*t0).map_err(InputError::invalid("[scenario]"))?,
        (None, None) => {
            return Err(InputError::Missing(
                "twist needs a [cocycle] or [scenario] section".into(),
            ))
        }
    };
    let mut out = Outcome::new(Report::new("twist", file_args(file)));
    let t = TwistedModule::from_cocycle(beta);
    let module = t.module().clone();
    if let Some((a, b, x)) = t.composition_violation(&check_points(&module, 64)) {
        out.fail(Failure::new(
            "(b^s)^t = b^(st) for the twisted action",
            json!({"s": a, "t": b, "b": vec_json(&x)}),
        ));
    }
    let fixed = t.fixed_point();
    let class = t.class();
    out.line(format!("H^1 = {}", format_factors(&class.h1().invariant_factors())));
    out.line(format!("class = {}", format_vec(class.coords())));
    match &fixed {
        Some(b) => {
            out.line(format!("fixed point {}", format_vec(&module.base().canonical(b))));
            if !t.is_fixed(b) {
                out.fail(Failure::new(
                    "b^s = b for the reported fixed point",
                    json!({"b": vec_json(b)}),
                ));
            }
        }
        None => out.line("no fixed point: the torsor is nontrivial"),
    }
    if fixed.is_some() != class.is_zero() {
        out.fail(Failure::new(
            "fixed point exists iff the class is zero",
            json!({"class": vec_json(class.coords())}),
        ));
    }
    let small = module.base().order().is_some_and(|o| o <= Int::from(EXHAUSTIVE_LIMIT));
    if small {
        let exhaustive = t
            .fixed_point_exhaustive()
            .map_err(InputError::invalid("twisted module"))?;
        if exhaustive.is_some() != fixed.is_some() {
            out.fail(Failure::new(
                "fixed point search agrees with enumeration",
                json!({"enumeration": exhaustive.is_some()}),
            ));
        }
    }
    out.report.results = json!({
        "h1": factors_json(&class.h1().invariant_factors()),
        "class": vec_json(class.coords()),
        "trivial": class.is_zero(),
        "fixed_point": fixed.as_ref().map(|b| vec_json(&module.base().canonical(b))),
        "enumerated": small,
    });
    Ok(out)
}

/// Largest product `|S|^d` accepted by `sym`.
const MAX_SYM_POINTS: usize = 20_000;

fn sym_command(file: &Path, d: usize) -> Result<Outcome, InputError> {
    let built = load(file)?;
    let (s, t0) = model(&built)?;
    if d == 0 {
        return Err(InputError::Usage("--d must be at least 1".into()));
    }
    let size = s.points().size().checked_pow(d as u32).filter(|&x| x <= MAX_SYM_POINTS);
    if size.is_none() {
        return Err(InputError::Usage(format!("|S|^{d} exceeds {MAX_SYM_POINTS} points")));
    }
    let mut args = file_args(file);
    args.insert("d".into(), json!(d));
    let mut out = Outcome::new(Report::new("sym", args));
    let (class, failure) = checks::symmetric_power(s, t0, d).map_err(InputError::invalid("[scenario]"))?;
    out.line(format!("class of the {d}-fold power = {}", format_vec(&class)));
    match failure {
        Some(f) => out.fail(f),
        None => out.line(format!(
            "psi is symmetric on {} points and the class is {d} times the base class",
            size.unwrap_or(0)
        )),
    }
    out.report.results = json!({"d": d, "points": size, "class": vec_json(&class)});
    Ok(out)
}

fn descend_command(file: &Path) -> Result<Outcome, InputError> {
    let built = load(file)?;
    let (s, t0) = model(&built)?;
    let mut out = Outcome::new(Report::new("descend", file_args(file)));
    let d = s.disconnected_descent(t0).map_err(InputError::invalid("[scenario]"))?;
    let failure = checks::descent(s, t0).map_err(InputError::invalid("[scenario]"))?;
    let restricted = d
        .induced
        .restricted_cocycle()
        .map_err(InputError::invalid("[scenario]"))?;
    let class = restricted.class();
    out.line(format!(
        "{} components; stabilizer of the base component has order {}",
        d.induced.reps.len(),
        d.induced.subgroup.order()
    ));
    out.line(format!("coset representatives {:?}", d.induced.reps));
    out.line(format!(
        "class over the stabilizer = {} in {}",
        format_vec(class.coords()),
        format_factors(&class.h1().invariant_factors())
    ));
    match failure {
        Some(f) => out.fail(f),
        None => out.line("action law, equivariance, restriction and conjugation all hold"),
    }
    out.report.results = json!({
        "components": d.induced.reps.len(),
        "subgroup": d.induced.subgroup.elements(),
        "representatives": d.induced.reps,
        "h1": factors_json(&class.h1().invariant_factors()),
        "class": vec_json(class.coords()),
        "psi": d.psi.iter().map(|(r, m)| json!([r, vec_json(&s.target().base().canonical(m))])).collect::<Vec<_>>(),
    });
    Ok(out)
}

fn curve_json(e: &CurvePointGroup, h1_factors: &[Int]) -> Value {
    let (a, b) = e.coefficients();
    json!({
        "a": a,
        "b": b,
        "points": e.num_points(),
        "structure": vec_json(&e.structure()),
        "hasse": e.within_hasse_bound(),
        "h1": vec_json(h1_factors),
    })
}

fn lang_command(
    file: Option<&Path>,
    p: Option<u64>,
    n: Option<u32>,
    a: Option<i64>,
    b: Option<i64>,
    sweep: bool,
    base_degree: u32,
) -> Result<Outcome, InputError> {
    let mut args = Map::new();
    if let Some(f) = file {
        args.insert("file".into(), json!(f.display().to_string()));
    }
    for (k, v) in [("p", p.map(|x| x as i64)), ("n", n.map(i64::from)), ("a", a), ("b", b)] {
        if let Some(v) = v {
            args.insert(k.into(), json!(v));
        }
    }
    if sweep {
        args.insert("sweep".into(), json!(true));
    }
    args.insert("base_degree".into(), json!(base_degree));
    let mut out = Outcome::new(Report::new("lang", args));
    if sweep {
        let (Some(p), Some(n)) = (p, n) else {
            return Err(InputError::Usage("--sweep needs --p and --n".into()));
        };
        if a.is_some() || b.is_some() || file.is_some() {
            return Err(InputError::Usage("--sweep takes no curve".into()));
        }
        let entries = lang_sweep(p, n).map_err(InputError::invalid("field"))?;
        let mut curves = Vec::with_capacity(entries.len());
        for e in &entries {
            if !e.hasse {
                out.fail(Failure::new(
                    "|#E - q - 1| <= 2 sqrt(q)",
                    json!({"a": e.a, "b": e.b, "points": e.points}),
                ));
            }
            if !e.h1_trivial {
                out.fail(Failure::new("H^1(Frobenius, E) = 0", json!({"a": e.a, "b": e.b})));
            }
            curves.push(json!({"a": e.a, "b": e.b, "points": e.points, "structure": vec_json(&e.structure)}));
        }
        out.line(format!(
            "{} nonsingular curves over F_{}^{}: {} with trivial H^1, {} within the Hasse bound",
            entries.len(),
            p,
            n,
            entries.iter().filter(|e| e.h1_trivial).count(),
            entries.iter().filter(|e| e.hasse).count()
        ));
        out.report.results = json!({"p": p, "n": n, "curves": curves.len(), "list": curves});
        return Ok(out);
    }
    let (curve, m) = match (file, p, n, a, b) {
        (Some(f), None, None, None, None) => {
            let built = load(f)?;
            built
                .curve
                .clone()
                .ok_or_else(|| InputError::Missing("the file has no [curve] section".into()))?
        }
        (None, Some(p), Some(n), Some(a), Some(b)) => {
            let field = FiniteField::new(p, n).map_err(InputError::invalid("field"))?;
            let e = CurvePointGroup::over_prime_field(Arc::new(field), a, b).map_err(InputError::invalid("curve"))?;
            (Arc::new(e), base_degree)
        }
        _ => {
            return Err(InputError::Usage(
                "lang needs a file, or --p --n --a --b, or --p --n --sweep".into(),
            ))
        }
    };
    let module = frobenius_module(&curve, m).map_err(InputError::invalid("curve"))?;
    let factors = lang_check(&curve, m)
        .map_err(InputError::invalid("curve"))?
        .invariant_factors();
    let f = curve.field();
    out.line(format!(
        "E: y^2 = x^3 + a x + b with a = {}, b = {} over F_{}^{}: {} points, structure {}",
        curve.coefficients().0,
        curve.coefficients().1,
        f.characteristic(),
        f.degree(),
        curve.num_points(),
        format_factors(&curve.structure())
    ));
    out.line(format!(
        "Frobenius group of order {}; H^1 = {}",
        module.group().order(),
        format_factors(&factors)
    ));
    if !curve.within_hasse_bound() {
        out.fail(Failure::new(
            "|#E - q - 1| <= 2 sqrt(q)",
            json!({"points": curve.num_points()}),
        ));
    }
    if !factors.is_empty() {
        out.fail(Failure::new("H^1(Frobenius, E) = 0", json!({"h1": vec_json(&factors)})));
    }
    out.report.results = curve_json(&curve, &factors);
    Ok(out)
}

fn verdict_json(sys: &WcRelationSystem, v: &Verdict) -> Value {
    json!({
        "forced_zero": v.forced_zero,
        "order": v.order.as_ref().map(int_json),
        "certificate": v.certificate.as_ref().map(|c| json!({
            "combination": vec_json(&c.combination),
            "verified": c.verify(sys),
        })),
    })
}

fn certificate_text(sys: &WcRelationSystem, v: &Verdict) -> String {
    match &v.certificate {
        Some(c) => {
            let mut text = String::new();
            for (k, r) in c.combination.iter().zip(sys.relations()) {
                if *k == Int::from(0u8) {
                    continue;
                }
                let sign = if *k < Int::from(0u8) { "-" } else { "+" };
                let abs = if *k < Int::from(0u8) { -k.clone() } else { k.clone() };
                if text.is_empty() {
                    text = if sign == "-" {
                        format!("-{abs}")
                    } else {
                        abs.to_string()
                    };
                } else {
                    text.push_str(&format!(" {sign} {abs}"));
                }
                text.push_str(&format!("*({})", sys.format_element(r)));
            }
            if text.is_empty() {
                "empty combination".into()
            } else {
                text
            }
        }
        None => "no certificate".into(),
    }
}

pub fn parity(d: i64, drop_canonical: bool) -> Outcome {
    let mut args = Map::new();
    args.insert("d".into(), json!(d));
    args.insert("drop_canonical".into(), json!(drop_canonical));
    let mut out = Outcome::new(Report::new("parity", args));
    let r = quadric_parity_argument(d, !drop_canonical);
    out.line(format!("relations {}", r.system));
    out.line(format!(
        "Q {}",
        if r.q.forced_zero {
            "forced zero"
        } else {
            "not forced zero"
        }
    ));
    out.line(format!(
        "P {} ({})",
        if r.p.forced_zero {
            "forced zero"
        } else {
            "not forced zero"
        },
        certificate_text(&r.system, &r.p)
    ));
    out.line(format!("quotient {}", format_factors(&r.quotient_factors)));
    for v in [&r.q, &r.p] {
        if let Some(c) = &v.certificate {
            if !c.verify(&r.system) {
                out.fail(Failure::new(
                    "certificate combination equals the target",
                    json!({"target": vec_json(&c.target)}),
                ));
            }
        }
    }
    if !drop_canonical && !r.p.forced_zero {
        out.fail(Failure::new("P = 0", json!({"d": d})));
    }
    out.report.results = json!({
        "relations": r.system.relations().iter().map(|x| r.system.format_element(x)).collect::<Vec<_>>(),
        "q": verdict_json(&r.system, &r.q),
        "p": verdict_json(&r.system, &r.p),
        "quotient": vec_json(&r.quotient_factors),
    });
    out
}

fn relations_command(file: &Path) -> Result<Outcome, InputError> {
    let built = load(file)?;
    let (sys, query) = built
        .relations
        .as_ref()
        .ok_or_else(|| InputError::Missing("the file has no [relations] section".into()))?;
    let mut out = Outcome::new(Report::new("relations", file_args(file)));
    let q = sys.quotient();
    out.line(format!("relations {sys}"));
    out.line(format!("quotient {}", format_factors(&q.invariant_factors())));
    let mut results = json!({"quotient": vec_json(&q.invariant_factors())});
    if let Some(x) = query {
        let v = sys.is_forced_zero(x).map_err(InputError::invalid("[relations]"))?;
        out.line(format!(
            "{} {} ({})",
            sys.format_element(x),
            if v.forced_zero {
                "forced zero"
            } else {
                "not forced zero"
            },
            certificate_text(sys, &v)
        ));
        if let Some(c) = &v.certificate {
            if !c.verify(sys) {
                out.fail(Failure::new("certificate combination equals the target", json!({})));
            }
        }
        results["query"] = json!(sys.format_element(x));
        results["verdict"] = verdict_json(sys, &v);
    }
    out.report.results = results;
    Ok(out)
}

fn print_command(file: &Path) -> Result<Outcome, InputError> {
    let text = std::fs::read_to_string(file).map_err(|source| InputError::Io {
        path: file.display().to_string(),
        source,
    })?;
    let parsed = parse(&text)?;
    build(&parsed)?;
    let printed = print(&parsed);
    let mut out = Outcome::new(Report::new("print", file_args(file)));
    if parse(&printed)? != parsed {
        out.fail(Failure::new("parse(print(x)) = x", json!({})));
    }
    out.text = printed.lines().map(str::to_string).collect();
    out.report.results = json!({"text": printed});
    Ok(out)
}

/// Exit status for a finished command.
pub fn exit_code(report: &Report) -> i32 {
    match report.status {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Error => 2,
    }
}
