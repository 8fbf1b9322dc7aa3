//! Verification of the identities a cycle model must satisfy. Each check
//! returns the first violation it finds.

use itertools::Itertools;
use serde_json::json;
use torsor_core::cohom::{cocycle_violation, Cocycle1};
use torsor_core::cycles::{conjugation_consistency, CycleModel};
use torsor_core::fgab::{vec_sub, Int};
use torsor_core::torsor::check_points;
use torsor_core::{Error, Result};

use crate::report::{vec_json, vecs_json, Failure};

pub const COCYCLE: &str = "a_(st) = (a_s)^t + a_t";
pub const BASEPOINT: &str = "a(t0) - a(t1) = coboundary of f(t0, t1)";
pub const ADDITIVITY: &str = "class(S1 boxplus S2) = class(S1) + class(S2)";
pub const EQUIVARIANCE: &str = "psi(t^s) = a_s + psi(t)^s";
pub const ACTION_LAW: &str = "((r, m)^s)^t = (r, m)^(st)";
pub const COSETS: &str = "representatives permute as cosets";
pub const GLOBAL_EQUIVARIANCE: &str = "Psi(t^s) = Psi(t)^s";
pub const RESTRICTION: &str = "restriction to the base component = connected cocycle";
pub const CONJUGATION: &str = "cocycle at t0^tau = conjugate of the cocycle at t0";
pub const SYMMETRY: &str = "psi is invariant under permuting factors";
pub const LINEARITY: &str = "class(d-fold) = d class";

/// `a_s = f(t0^s, t0)` over the component stabilizer, checked directly
/// against the cocycle identity.
pub fn cocycle(s: &CycleModel, t0: usize) -> Result<Option<Failure>> {
    let h = s.component_stabilizer(t0);
    let module = if h.is_whole() {
        s.target().clone()
    } else {
        std::sync::Arc::new(s.target().restrict(&h))
    };
    let values = h
        .elements()
        .iter()
        .map(|&g| s.f(s.points().apply(t0, g), t0))
        .collect::<Result<Vec<_>>>()?;
    Ok(cocycle_violation(&module, &values).map(|(a, b)| {
        Failure::new(
            COCYCLE,
            json!({"basepoint": t0, "sigma": h.parent_index(a), "tau": h.parent_index(b)}),
        )
    }))
}

/// For every `t1` in the component of `t0`, the cocycles differ by the
/// coboundary of `m = f(t0, t1)`, checked at every element.
pub fn basepoints(s: &CycleModel, t0: usize) -> Result<Option<Failure>> {
    let alpha = s.build_cocycle(t0)?;
    let base = s.target().base();
    for t1 in s.component_points(s.component_of(t0)) {
        let beta = s.build_cocycle(t1)?;
        let m = s.f(t0, t1)?;
        for (local, &g) in alpha.subgroup.elements().iter().enumerate() {
            let lhs = vec_sub(alpha.cocycle.value(local), beta.cocycle.value(local));
            let rhs = vec_sub(&s.target().act(&m, g), &m);
            if !base.eq_vec(&lhs, &rhs) {
                return Ok(Some(Failure::new(
                    BASEPOINT,
                    json!({"t0": t0, "t1": t1, "sigma": g, "witness": vec_json(&m)}),
                )));
            }
        }
    }
    Ok(None)
}

pub fn equivariance(s: &CycleModel, t0: usize) -> Result<Option<Failure>> {
    let d = s.descended_map(t0)?;
    Ok(d.equivariance_violation(s.points())
        .map(|(t, g)| Failure::new(EQUIVARIANCE, json!({"t": t, "sigma": g}))))
}

/// Compares class coordinates of `s1 ⊞ s2` at `(t1, t2)` with the sum.
pub fn additivity(s1: &CycleModel, t1: usize, s2: &CycleModel, t2: usize) -> Result<(Vec<Int>, Option<Failure>)> {
    let sum = s1.boxplus(s2)?;
    let lhs = sum.torsor_class(t1 * s2.points().size() + t2)?;
    let rhs = s1.torsor_class(t1)?.add(&s2.torsor_class(t2)?)?;
    let failure = (lhs != rhs || lhs.coords() != rhs.coords()).then(|| {
        Failure::new(
            ADDITIVITY,
            json!({"lhs": vec_json(lhs.coords()), "rhs": vec_json(rhs.coords())}),
        )
    });
    Ok((lhs.coords().to_vec(), failure))
}

/// The checks for a model whose components are permuted transitively.
pub fn descent(s: &CycleModel, t0: usize) -> Result<Option<Failure>> {
    let d = s.disconnected_descent(t0)?;
    let pts = check_points(s.target(), 64);
    if let Some((a, b, (r, m))) = d.induced.action_law_violation(&pts) {
        return Ok(Some(Failure::new(
            ACTION_LAW,
            json!({"s": a, "t": b, "r": r, "m": vec_json(&m)}),
        )));
    }
    if let Some((r, g)) = d.induced.coset_permutation_violation() {
        return Ok(Some(Failure::new(COSETS, json!({"r": r, "sigma": g}))));
    }
    if let Some((t, g)) = d.equivariance_violation(s.points()) {
        return Ok(Some(Failure::new(GLOBAL_EQUIVARIANCE, json!({"t": t, "sigma": g}))));
    }
    let restricted = d.induced.restricted_cocycle()?;
    let direct = s.build_cocycle(t0)?.cocycle;
    if restricted.values() != direct.values() {
        let at = direct
            .values()
            .iter()
            .zip(restricted.values())
            .position(|(a, b)| a != b)
            .expect("values differ somewhere");
        return Ok(Some(Failure::new(
            RESTRICTION,
            json!({"sigma": s.component_stabilizer(t0).parent_index(at)}),
        )));
    }
    match conjugation_consistency(s, t0) {
        Ok(()) => Ok(None),
        Err(Error::Violation(msg)) => Ok(Some(Failure::new(CONJUGATION, json!({"detail": msg})))),
        Err(e) => Err(e),
    }
}

/// Index of `(t_1, ..., t_d)` in the `d`-fold product.
fn tuple_index(t: &[usize], n: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * n + x)
}

/// Symmetry of the family and of `psi` on `S^d`, and linearity of the class.
pub fn symmetric_power(s: &CycleModel, t0: usize, d: usize) -> Result<(Vec<Int>, Option<Failure>)> {
    let n = s.points().size();
    let p = s.sym_power(d)?;
    let diag = tuple_index(&vec![t0; d], n);
    let class = p.torsor_class(diag)?;
    let expected = s.torsor_class(t0)?.scale(d as i64);
    if class != expected {
        return Ok((
            class.coords().to_vec(),
            Some(Failure::new(
                LINEARITY,
                json!({"d": d, "lhs": vec_json(class.coords()), "rhs": vec_json(expected.coords())}),
            )),
        ));
    }
    let psi = p.descended_map(diag)?;
    let ambient = s.ambient().base();
    let fiber = s.target().base();
    for tuple in (0..d).map(|_| 0..n).multi_cartesian_product() {
        let i = tuple_index(&tuple, n);
        for perm in (0..d).permutations(d) {
            let permuted: Vec<usize> = perm.iter().map(|&k| tuple[k]).collect();
            let j = tuple_index(&permuted, n);
            let same_point = ambient.eq_vec(&p.pointmap()[i], &p.pointmap()[j]);
            let same_psi = match (&psi.values[i], &psi.values[j]) {
                (Some(a), Some(b)) => fiber.eq_vec(a, b),
                (None, None) => true,
                _ => false,
            };
            if !same_point || !same_psi {
                return Ok((
                    class.coords().to_vec(),
                    Some(Failure::new(SYMMETRY, json!({"tuple": tuple, "permutation": perm}))),
                ));
            }
        }
    }
    Ok((class.coords().to_vec(), None))
}

/// Runs the theorem checks on one model at `t0`, and additivity against
/// `other` at `t_other`. Returns the class of the model and of the sum.
pub fn theorem_suite(
    s: &CycleModel,
    t0: usize,
    other: &CycleModel,
    t_other: usize,
) -> Result<(Option<Failure>, Vec<Int>, Vec<Int>)> {
    for m in [(s, t0), (other, t_other)] {
        for check in [cocycle, basepoints, equivariance] {
            if let Some(f) = check(m.0, m.1)? {
                return Ok((Some(f), Vec::new(), Vec::new()));
            }
        }
    }
    let (sum, failure) = additivity(s, t0, other, t_other)?;
    Ok((failure, s.torsor_class(t0)?.coords().to_vec(), sum))
}

pub fn cocycle_table(c: &Cocycle1) -> serde_json::Value {
    let base = c.module().base();
    let canon: Vec<Vec<Int>> = c.values().iter().map(|v| base.canonical(v)).collect();
    vecs_json(&canon)
}
