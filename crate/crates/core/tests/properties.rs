use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torsor_core::cohom::{conjugate_cocycle, h1, h1_cyclic_oracle, is_cocycle, Cocycle1, CohClass};
use torsor_core::fgab::{int, is_zero, AbHom, FgAbGroup, Int, IntMatrix};
use torsor_core::generate::{
    random_disconnected_model, random_gset, random_module, scenario_rng, small_cyclic_groups, small_groups,
};
use torsor_core::gmod::{equivariant_hom_basis, EquivariantHom, GModule};
use torsor_core::rationality::quadric_parity_argument;
use torsor_core::torsor::{check_points, conjugation_intertwining_violation, TwistedModule};

fn random_cocycle(rng: &mut ChaCha8Rng, m: &Arc<GModule>) -> Cocycle1 {
    let h = h1(m);
    let coords: Vec<Int> = h
        .group()
        .invariant_factors()
        .iter()
        .map(|d| {
            if is_zero(d) {
                int(rng.gen_range(-3..=3))
            } else {
                let d: i64 = d.try_into().unwrap();
                int(rng.gen_range(0..d))
            }
        })
        .collect();
    let base = h.cocycle_of(m.clone(), &coords);
    let shift = Cocycle1::coboundary_of(m.clone(), &m.base().random_vec(rng, 4));
    base.add(&shift).unwrap()
}

fn mat(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-12i64..=12, cols), rows)
}

proptest! {
    #[test]
    fn canonical_form_is_idempotent(rel in mat(3, 3), x in prop::collection::vec(-50i64..50, 3)) {
        let g = FgAbGroup::new(3, IntMatrix::from_rows(&rel)).unwrap();
        let x: Vec<Int> = x.into_iter().map(int).collect();
        let r = g.reduce(&x);
        prop_assert_eq!(g.canonical(&r), g.canonical(&x));
        prop_assert_eq!(g.reduce(&r), r);
    }

    #[test]
    fn element_count_is_product_of_factors(d in prop::collection::vec(1i64..=9, 1..4), p in mat(3, 3)) {
        let n = d.len();
        let rel = IntMatrix::from_rows(&p[..n].iter().map(|r| r[..n].to_vec()).collect::<Vec<_>>());
        // diag(d) composed with an arbitrary matrix keeps the group finite when det != 0
        let diag = IntMatrix::diagonal(&d.iter().map(|&x| int(x)).collect::<Vec<_>>());
        let rel = diag.mul(&rel).unwrap();
        prop_assume!(!is_zero(&rel.determinant().unwrap()));
        let g = FgAbGroup::new(n, rel).unwrap();
        let order = g.order().unwrap();
        prop_assume!(order <= int(10_000));
        let elems = g.elements().unwrap();
        prop_assert_eq!(int(elems.len() as i64), order);
        let mut canon: Vec<Vec<Int>> = elems.iter().map(|e| g.canonical(e)).collect();
        canon.sort();
        canon.dedup();
        prop_assert_eq!(canon.len(), elems.len());
    }

    #[test]
    fn cokernel_of_image_matches_cokernel(rel in mat(2, 2), m in mat(2, 3)) {
        let src = Arc::new(FgAbGroup::free(3));
        let tgt = Arc::new(FgAbGroup::new(2, IntMatrix::from_rows(&rel)).unwrap());
        let h = AbHom::new(src, tgt, IntMatrix::from_rows(&m)).unwrap();
        let direct = h.cokernel().group.invariant_factors();
        let via = h.image().embedding.cokernel().group.invariant_factors();
        prop_assert_eq!(direct, via);
        prop_assert!(h.kernel().embedding.then(&h).unwrap().is_zero());
    }
}

#[test]
fn order_of_one_one_in_two_torsion() {
    let g = Arc::new(FgAbGroup::new(2, IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]])).unwrap());
    let x = g.elem(vec![int(1), int(1)]).unwrap();
    assert_eq!(x.order(), Some(int(2)));
    let z4 = Arc::new(FgAbGroup::cyclic(4));
    let three = z4.elem(vec![int(3)]).unwrap();
    assert!(three
        .add(&three)
        .unwrap()
        .equals(&z4.elem(vec![int(2)]).unwrap())
        .unwrap());
    assert!(three.add(&three.neg()).unwrap().is_zero());
}

#[test]
fn orbit_stabilizer_on_random_gsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (_, g) in small_groups() {
        for _ in 0..10 {
            let s = random_gset(&mut rng, &g, 12);
            assert_eq!(s.first_law_violation(), None);
            let mut covered = 0;
            for orbit in s.orbits() {
                covered += orbit.len();
                for &t in &orbit {
                    assert_eq!(orbit.len() * s.stabilizer(t).order(), g.order());
                }
            }
            assert_eq!(covered, s.size());
        }
    }
}

#[test]
fn equivariant_homs_commute_with_the_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for (_, g) in small_groups() {
        let a = Arc::new(random_module(&mut rng, &g, 3));
        let b = Arc::new(random_module(&mut rng, &g, 3));
        for basis in equivariant_hom_basis(&a, &b).unwrap() {
            let phi = EquivariantHom::new(a.clone(), b.clone(), basis).unwrap();
            for _ in 0..50 {
                let m = a.base().random_vec(&mut rng, 20);
                for s in g.elements() {
                    let lhs = phi.apply(&a.act(&m, s));
                    let rhs = b.act(&phi.apply(&m), s);
                    assert!(b.base().eq_vec(&lhs, &rhs));
                }
            }
        }
    }
}

#[test]
fn cochain_h1_matches_cyclic_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for g in small_cyclic_groups() {
        for _ in 0..15 {
            let m = random_module(&mut rng, &g, 3);
            assert_eq!(
                h1(&m).invariant_factors(),
                h1_cyclic_oracle(&m).unwrap().invariant_factors(),
                "{m:?}"
            );
        }
    }
}

#[test]
fn coboundaries_and_class_arithmetic() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for (_, g) in small_groups() {
        let m = Arc::new(random_module(&mut rng, &g, 2));
        let c = Cocycle1::coboundary_of(m.clone(), &m.base().random_vec(&mut rng, 9));
        assert!(is_cocycle(&m, c.values()));
        assert!(c.class().is_zero());
        let a = random_cocycle(&mut rng, &m);
        let b = random_cocycle(&mut rng, &m);
        let ca = a.class();
        let cb = b.class();
        let sum = ca.add(&cb).unwrap();
        assert_eq!(sum, a.add(&b).unwrap().class());
        let h = h1(&m);
        let expected = h.group().canonical(
            &ca.coords()
                .iter()
                .zip(cb.coords())
                .map(|(x, y)| x + y)
                .collect::<Vec<_>>(),
        );
        assert_eq!(sum.coords(), &expected[..]);
        assert!(ca.add(&ca.neg()).unwrap().is_zero());
        assert_eq!(ca.add(&CohClass::zero(m.clone())).unwrap(), ca);
        assert_eq!(ca.add(&cb).unwrap(), cb.add(&ca).unwrap());
    }
}

#[test]
fn twisted_actions_and_fixed_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let groups = small_groups();
    let mut exhaustive = 0;
    for i in 0..200 {
        let (_, g) = &groups[i % groups.len()];
        let m = Arc::new(random_module(&mut rng, g, 2));
        let beta = random_cocycle(&mut rng, &m);
        let t = TwistedModule::from_cocycle(beta.clone());
        let trivial_by_class = h1(&m).coords_of(&beta).iter().all(is_zero);
        assert_eq!(t.is_trivial(), trivial_by_class);
        if let Some(b) = t.fixed_point() {
            assert!(t.is_fixed(&b));
        }
        if m.base().order().is_some_and(|o| o <= int(64)) {
            exhaustive += 1;
            assert_eq!(t.composition_violation(&check_points(&m, 64)), None);
            assert_eq!(t.fixed_point_exhaustive().unwrap().is_some(), t.is_trivial());
        }
    }
    assert!(exhaustive > 20);
}

#[test]
fn conjugation_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for (_, g) in small_groups() {
        let m = Arc::new(random_module(&mut rng, &g, 2));
        for h in g.all_subgroups() {
            let restricted = Arc::new(m.restrict(&h));
            let beta = random_cocycle(&mut rng, &restricted);
            for tau in g.elements() {
                let (conj, bt) = conjugate_cocycle(&m, &h, &beta, tau).unwrap();
                assert!(is_cocycle(bt.module(), bt.values()));
                for tau2 in [g.identity(), g.generators().first().copied().unwrap_or(0)] {
                    let (c2, btt) = conjugate_cocycle(&m, &conj, &bt, tau2).unwrap();
                    let (c3, direct) = conjugate_cocycle(&m, &h, &beta, g.mul(tau, tau2)).unwrap();
                    assert_eq!(c2, c3);
                    assert_eq!(btt.values(), direct.values());
                }
                let pts = check_points(&m, 0);
                assert_eq!(
                    conjugation_intertwining_violation(&m, &h, &beta, tau, &pts).unwrap(),
                    None
                );
            }
            let (_, same) = conjugate_cocycle(&m, &h, &beta, g.identity()).unwrap();
            assert_eq!(same.values(), beta.values());
        }
    }
}

#[test]
fn conjugating_coboundary_inside_subgroup() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let d4 = small_groups().into_iter().find(|(n, _)| n == "D4").unwrap().1;
    let m = Arc::new(random_module(&mut rng, &d4, 3));
    for h in d4.all_subgroups() {
        let restricted = Arc::new(m.restrict(&h));
        let w = m.base().random_vec(&mut rng, 5);
        let beta = Cocycle1::coboundary_of(restricted, &w);
        for &tau in h.elements() {
            let (_, bt) = conjugate_cocycle(&m, &h, &beta, tau).unwrap();
            let expected = Cocycle1::coboundary_of(bt.module().clone(), &m.act(&w, tau));
            assert!(bt.equals(&expected));
        }
    }
}

#[test]
fn descent_is_independent_of_representatives() {
    for i in 0..10 {
        let s = random_disconnected_model(&mut scenario_rng(77, i));
        let h = s.component_stabilizer(0);
        let canonical = s.disconnected_descent(0).unwrap();
        let mut reps: Vec<usize> = h.right_cosets().iter().map(|c| *c.last().unwrap()).collect();
        reps.reverse();
        let other = s.disconnected_descent_with_reps(0, &reps).unwrap();
        assert_eq!(other.induced.action_law_violation(&check_points(s.target(), 16)), None);
        assert_eq!(other.equivariance_violation(s.points()), None);
        // the class over H does not depend on the representative of H itself
        let r0 = reps[other.induced.reps.iter().position(|&r| h.contains(r)).unwrap()];
        let moved = s.build_cocycle(s.points().apply(0, r0)).unwrap();
        let base = canonical.induced.restricted_cocycle().unwrap();
        assert_eq!(moved.cocycle.class(), base.class());
    }
}

#[test]
fn parity_argument_for_small_d() {
    for d in -10..=10 {
        let r = quadric_parity_argument(d, true);
        assert!(r.p.forced_zero, "d={d}");
        assert!(r.p.certificate.as_ref().unwrap().verify(&r.system));
        let control = quadric_parity_argument(d, false);
        if d % 2 != 0 && d.abs() > 1 {
            assert!(!control.p.forced_zero, "d={d}");
            assert_eq!(control.quotient_factors, vec![int((1 - 2 * d).abs())]);
        }
    }
}
