use std::sync::Arc;

use torsor_core::ellcurve::{frobenius_module, lang_sweep, CurvePointGroup, FiniteField};
use torsor_core::gmod::FiniteAbelian;

/// Points counted by brute force over all pairs `(x, y)`.
fn brute_count(f: &FiniteField, a: u32, b: u32) -> usize {
    let mut n = 1;
    for x in 0..f.size() {
        let rhs = f.add(f.add(f.mul(f.mul(x, x), x), f.mul(a, x)), b);
        n += (0..f.size()).filter(|&y| f.mul(y, y) == rhs).count();
    }
    n
}

#[test]
fn point_counts_match_brute_force() {
    for (p, n) in [(5, 1), (7, 1), (5, 2), (11, 1)] {
        let f = Arc::new(FiniteField::new(p, n).unwrap());
        for a in 0..p as i64 {
            for b in 0..p as i64 {
                if let Ok(e) = CurvePointGroup::over_prime_field(f.clone(), a, b) {
                    let (ea, eb) = e.coefficients();
                    assert_eq!(e.num_points(), brute_count(&f, ea, eb));
                    assert!(e.within_hasse_bound());
                    assert_eq!(e.associativity_violation(100), None);
                }
            }
        }
    }
}

#[test]
fn frobenius_is_an_automorphism_of_order_dividing_n() {
    let f = Arc::new(FiniteField::new(7, 3).unwrap());
    let e = Arc::new(CurvePointGroup::over_prime_field(f, 2, 3).unwrap());
    let perm = e.frobenius_permutation(1);
    let mut seen = vec![false; perm.len()];
    for &x in &perm {
        assert!(!std::mem::replace(&mut seen[x as usize], true));
    }
    for x in 0..e.size() as u32 {
        for y in (0..e.size() as u32).step_by(7) {
            assert_eq!(perm[e.add(x, y) as usize], e.add(perm[x as usize], perm[y as usize]));
        }
        let mut z = x;
        for _ in 0..3 {
            z = perm[z as usize];
        }
        assert_eq!(z, x);
    }
    assert_eq!(frobenius_module(&e, 1).unwrap().group().order(), 3);
}

#[test]
fn small_sweep_has_trivial_h1() {
    for (p, n) in [(5, 1), (5, 2), (7, 2), (5, 3)] {
        for entry in lang_sweep(p, n).unwrap() {
            assert!(entry.hasse && entry.h1_trivial, "{entry:?}");
        }
    }
}
