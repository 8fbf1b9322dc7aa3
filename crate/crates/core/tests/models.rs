use torsor_core::cohom::{is_cocycle, Cocycle1};
use torsor_core::cycles::conjugation_consistency;
use torsor_core::generate::{random_disconnected_model, random_model, random_model_pair, scenario_rng};
use torsor_core::torsor::check_points;

#[test]
fn random_models_satisfy_theorem_parts() {
    let mut nontrivial = 0;
    for i in 0..60 {
        let (s1, s2) = random_model_pair(&mut scenario_rng(101, i));
        for s in [&s1, &s2] {
            let alpha = s.cocycle_over_group(0).unwrap();
            assert!(is_cocycle(alpha.module(), alpha.values()), "scenario {i}");
            s.basepoint_witnesses(0).unwrap();
            let d = s.descended_map(0).unwrap();
            assert_eq!(d.equivariance_violation(s.points()), None, "scenario {i}");
            if !alpha.class().is_zero() {
                nontrivial += 1;
            }
        }
        let sum = s1.boxplus(&s2).unwrap();
        let lhs = sum.torsor_class(0).unwrap();
        let rhs = s1.torsor_class(0).unwrap().add(&s2.torsor_class(0).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "scenario {i}");
        assert_eq!(lhs.coords(), rhs.coords());
    }
    assert!(nontrivial > 0, "the generator should produce some nontrivial classes");
}

#[test]
fn random_models_cocycles_match_direct_f() {
    for i in 0..20 {
        let s = random_model(&mut scenario_rng(5, i));
        for t in 0..s.points().size() {
            for u in 0..s.points().size() {
                assert_eq!(
                    s.target().base().canonical(&s.f(t, u).unwrap()),
                    s.target().base().canonical(&s.f_direct(t, u).unwrap())
                );
            }
        }
    }
}

#[test]
fn symmetric_powers_scale_the_class() {
    for i in 0..15 {
        let s = random_model(&mut scenario_rng(202, i));
        let c = s.torsor_class(0).unwrap();
        for d in 1..=3usize {
            let p = s.sym_power(d).unwrap();
            assert_eq!(p.torsor_class(0).unwrap(), c.scale(d as i64), "scenario {i}, d={d}");
        }
    }
}

#[test]
fn disconnected_models_descend() {
    for i in 0..20 {
        let s = random_disconnected_model(&mut scenario_rng(303, i));
        let d = s.disconnected_descent(0).unwrap();
        let pts = check_points(s.target(), 64);
        assert_eq!(d.induced.action_law_violation(&pts), None, "scenario {i}");
        assert_eq!(d.induced.coset_permutation_violation(), None);
        assert_eq!(d.equivariance_violation(s.points()), None);
        let restricted = d.induced.restricted_cocycle().unwrap();
        let direct = s.build_cocycle(0).unwrap().cocycle;
        assert_eq!(restricted.values(), direct.values());
        conjugation_consistency(&s, 0).unwrap();
        let zero = Cocycle1::zero(direct.module().clone());
        assert!(zero.class().is_zero());
    }
}
