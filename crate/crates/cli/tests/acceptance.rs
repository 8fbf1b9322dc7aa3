//! The acceptance suite. Runs every criterion, prints one PASS/FAIL line for
//! each, and exits nonzero if any failed.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use rand::Rng;
use serde_json::Value;
use torsor_cli::checks;
use torsor_cli::report::Report;
use torsor_core::cohom::{h1, h1_cyclic_oracle};
use torsor_core::ellcurve::lang_sweep;
use torsor_core::fgab::{int, is_zero, smith_normal_form, IntMatrix};
use torsor_core::generate::{
    random_disconnected_model, random_model, random_model_pair, random_module, scenario_rng, small_cyclic_groups,
};
use torsor_core::rationality::quadric_parity_argument;

const SEED: u64 = 20261017;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn torsor_json(args: &[&str]) -> Result<(Vec<u8>, Report), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_torsor"))
        .arg("--json")
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8(out.stdout.clone()).map_err(|e| e.to_string())?;
    let report = Report::from_json(&text).map_err(|e| format!("{e}: {text}"))?;
    Ok((out.stdout, report))
}

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn theorem_suite() -> Outcome {
    const N: u64 = 500;
    let mut nontrivial = 0;
    for i in 0..N {
        let (a, b) = random_model_pair(&mut scenario_rng(SEED, i));
        let (failure, class, _) = checks::theorem_suite(&a, 0, &b, 0).map_err(|e| format!("scenario {i}: {e}"))?;
        if let Some(f) = failure {
            return Err(format!("scenario {i}: {} at {}", f.identity, f.at));
        }
        if class.iter().any(|x| !is_zero(x)) {
            nontrivial += 1;
        }
    }
    Ok(format!("{N} scenario pairs, {nontrivial} with a nontrivial class"))
}

fn equivariance() -> Outcome {
    let mut maps = 0;
    for i in 0..500 {
        let (a, b) = random_model_pair(&mut scenario_rng(SEED, i));
        for s in [&a, &b] {
            if let Some(f) = checks::equivariance(s, 0).map_err(|e| e.to_string())? {
                return Err(format!("scenario {i}: {}", f.at));
            }
            maps += 1;
        }
    }
    for i in 0..50 {
        let s = random_disconnected_model(&mut scenario_rng(SEED + 1, i));
        let d = s.disconnected_descent(0).map_err(|e| e.to_string())?;
        if let Some((t, g)) = d.equivariance_violation(s.points()) {
            return Err(format!("disconnected scenario {i}: t = {t}, sigma = {g}"));
        }
        maps += 1;
    }
    Ok(format!("{maps} descended maps, every (t, sigma)"))
}

fn worked_model() -> Outcome {
    let (_, class) = torsor_json(&["class", &example("nontrivial-class.wc")])?;
    let (_, h) = torsor_json(&["h1", &example("nontrivial-class.wc")])?;
    let (_, twist) = torsor_json(&["twist", &example("twist.wc")])?;
    let two = serde_json::json!([2]);
    if h.results["invariant_factors"] != two || class.results["h1"] != two {
        return Err(format!("H^1 = {}", h.results["invariant_factors"]));
    }
    if class.results["nontrivial"] != Value::Bool(true) {
        return Err(format!("class {} is trivial", class.results["class"]));
    }
    if twist.results["fixed_point"] != Value::Null || twist.results["enumerated"] != Value::Bool(true) {
        return Err(format!("twist found a fixed point {}", twist.results["fixed_point"]));
    }
    Ok("H^1 = Z/2, class (1), no fixed point in the twist".into())
}

fn oracle() -> Outcome {
    let mut count = 0;
    let mut rng = scenario_rng(SEED + 2, 0);
    for group in small_cyclic_groups() {
        for _ in 0..20 {
            let m = random_module(&mut rng, &group, 3);
            let cochain = h1(&m).invariant_factors();
            let tate = h1_cyclic_oracle(&m).map_err(|e| e.to_string())?.invariant_factors();
            if cochain != tate {
                return Err(format!("order {}: {cochain:?} vs {tate:?}", group.order()));
            }
            count += 1;
        }
    }
    Ok(format!("{count} modules over cyclic groups of order 1 to 8"))
}

fn snf() -> Outcome {
    const N: usize = 1000;
    let mut rng = scenario_rng(SEED + 3, 0);
    for k in 0..N {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(-20..=20)).collect())
            .collect();
        let m = IntMatrix::from_rows(&rows);
        let snf = smith_normal_form(&m);
        let product = snf.u.mul(&m).and_then(|x| x.mul(&snf.v)).map_err(|e| e.to_string())?;
        if product != snf.s {
            return Err(format!("matrix {k}: U M V != S"));
        }
        for (name, x) in [("U", &snf.u), ("V", &snf.v)] {
            let det = x.determinant().map_err(|e| e.to_string())?;
            if det != int(1) && det != int(-1) {
                return Err(format!("matrix {k}: det {name} = {det}"));
            }
        }
        if snf.u.mul(&snf.u_inv).map_err(|e| e.to_string())? != IntMatrix::identity(r) {
            return Err(format!("matrix {k}: U^-1 is wrong"));
        }
        for i in 0..r {
            for j in 0..c {
                let expected = if i == j && i < snf.diagonal.len() {
                    snf.diagonal[i].clone()
                } else {
                    int(0)
                };
                if *snf.s.get(i, j) != expected {
                    return Err(format!("matrix {k}: S is not the diagonal at ({i}, {j})"));
                }
            }
        }
        for w in snf.diagonal.windows(2) {
            if w[0] <= int(0) || !is_zero(&(&w[1] % &w[0])) {
                return Err(format!("matrix {k}: {} does not divide {}", w[0], w[1]));
            }
        }
        if snf.diagonal.last().is_some_and(|d| *d <= int(0)) {
            return Err(format!("matrix {k}: nonpositive invariant factor"));
        }
    }
    Ok(format!("{N} matrices up to 6x6"))
}

fn descent() -> Outcome {
    const N: u64 = 50;
    let mut components = [0; 4];
    for i in 0..N {
        let s = random_disconnected_model(&mut scenario_rng(SEED + 1, i));
        let k = s.components().size();
        if !(2..=3).contains(&k) || !s.components().is_transitive() {
            return Err(format!("scenario {i}: {k} components"));
        }
        components[k] += 1;
        if let Some(f) = checks::descent(&s, 0).map_err(|e| format!("scenario {i}: {e}"))? {
            return Err(format!("scenario {i}: {} at {}", f.identity, f.at));
        }
    }
    Ok(format!(
        "{N} scenarios ({} with 2 components, {} with 3)",
        components[2], components[3]
    ))
}

fn symmetric_powers() -> Outcome {
    const N: u64 = 50;
    let mut cubes = 0;
    for i in 0..N {
        let s = random_model(&mut scenario_rng(SEED + 4, i));
        let d = if s.points().size() <= 6 { 3 } else { 2 };
        if let (_, Some(f)) = checks::symmetric_power(&s, 0, d).map_err(|e| e.to_string())? {
            return Err(format!("scenario {i}: {} at {}", f.identity, f.at));
        }
        cubes += usize::from(d == 3);
    }
    Ok(format!("{N} scenarios, {cubes} with d = 3 and the rest with d = 2"))
}

fn lang() -> Outcome {
    let mut curves = 0;
    for p in [5u64, 7, 11, 13] {
        for n in 1..=3u32 {
            if p.pow(n) > 1 << 20 {
                continue;
            }
            for e in lang_sweep(p, n).map_err(|e| e.to_string())? {
                if !e.hasse {
                    return Err(format!("Hasse bound fails for a = {}, b = {} over F_{p}^{n}", e.a, e.b));
                }
                if !e.h1_trivial {
                    return Err(format!("nonzero H^1 for a = {}, b = {} over F_{p}^{n}", e.a, e.b));
                }
                curves += 1;
            }
        }
    }
    Ok(format!("{curves} curves"))
}

fn parity() -> Outcome {
    for d in -10..=10i64 {
        let (_, r) = torsor_json(&["parity", "--d", &d.to_string()])?;
        let p = &r.results["p"];
        if p["forced_zero"] != Value::Bool(true) || p["certificate"]["verified"] != Value::Bool(true) {
            return Err(format!("d = {d}: P not forced"));
        }
        let direct = quadric_parity_argument(d, true);
        if !direct.p.forced_zero || !direct.p.certificate.as_ref().is_some_and(|c| c.verify(&direct.system)) {
            return Err(format!("d = {d}: library verdict disagrees"));
        }
    }
    for d in (-10..=10i64).filter(|d| d.abs() > 1 && d % 2 != 0) {
        let (_, r) = torsor_json(&["parity", "--d", &d.to_string(), "--drop-canonical"])?;
        let expected = serde_json::json!([(1 - 2 * d).abs()]);
        if r.results["p"]["forced_zero"] != Value::Bool(false) || r.results["quotient"] != expected {
            return Err(format!("control d = {d}: quotient {}", r.results["quotient"]));
        }
    }
    Ok("P forced for d in [-10, 10]; control quotients Z/|1 - 2d|".into())
}

fn determinism() -> Outcome {
    let args = ["verify", "--random", "100", "--seed", "7"];
    let (first, r) = torsor_json(&args)?;
    let (second, _) = torsor_json(&args)?;
    if first != second {
        return Err("reports differ".into());
    }
    Ok(format!("{} bytes, status {:?}", first.len(), r.status))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("theorem suite", theorem_suite),
        ("descended-map equivariance", equivariance),
        ("nontrivial-class witness", worked_model),
        ("cyclic oracle equivalence", oracle),
        ("Smith normal form contract", snf),
        ("disconnected descent", descent),
        ("symmetric powers", symmetric_powers),
        ("Lang sweep", lang),
        ("parity argument", parity),
        ("determinism", determinism),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{tag} {:>2} {name}: {detail} [{:.1}s]",
            k + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "{}/10 criteria pass in {:.1}s",
        10 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
