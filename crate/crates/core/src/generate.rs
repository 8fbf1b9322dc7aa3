//! Seeded random groups, modules, G-sets and cycle models.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cycles::CycleModel;
use crate::error::Result;
use crate::fgab::{int, is_zero, vec_sub, FgAbGroup, Int, IntMatrix};
use crate::gmod::{
    equivariant_hom_basis, pointmap_from_representatives, random_equivariant_pointmap, FiniteGroup, GModule, GSet,
    Subgroup,
};

/// Every group of order at most 8, with a short name.
pub fn small_groups() -> Vec<(String, Arc<FiniteGroup>)> {
    let c = |n: usize| FiniteGroup::cyclic(n).expect("positive order");
    let mut out: Vec<(String, FiniteGroup)> = (1..=8).map(|n| (format!("C{n}"), c(n))).collect();
    out.push(("C2xC2".into(), FiniteGroup::direct_product(&c(2), &c(2))));
    out.push(("S3".into(), FiniteGroup::symmetric(3).expect("S3")));
    out.push(("D4".into(), FiniteGroup::dihedral(4).expect("D4")));
    out.push(("Q8".into(), FiniteGroup::quaternion()));
    out.push(("C2xC4".into(), FiniteGroup::direct_product(&c(2), &c(4))));
    out.push((
        "C2xC2xC2".into(),
        FiniteGroup::direct_product(&FiniteGroup::direct_product(&c(2), &c(2)), &c(2)),
    ));
    out.into_iter().map(|(n, g)| (n, Arc::new(g))).collect()
}

/// The cyclic groups of order at most 8.
pub fn small_cyclic_groups() -> Vec<Arc<FiniteGroup>> {
    (1..=8)
        .map(|n| Arc::new(FiniteGroup::cyclic(n).expect("positive order")))
        .collect()
}

/// The generator for scenario `index` of a run seeded with `seed`; streams
/// are independent so scenarios can be produced in any order.
pub fn scenario_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Largest ambient rank of generated modules.
pub const MAX_RANK: usize = 3;
/// Largest invariant factor of generated modules.
pub const MAX_FACTOR: i64 = 12;
/// Largest generated G-set.
pub const MAX_POINTS: usize = 12;

fn characters(group: &Arc<FiniteGroup>) -> Vec<Vec<i64>> {
    let mut out = vec![vec![1; group.order()]];
    for k in group.all_subgroups() {
        if k.index() == 2 {
            out.push(group.elements().map(|s| if k.contains(s) { 1 } else { -1 }).collect());
        }
    }
    out
}

/// 0 about a third of the time, otherwise a divisor `> 1` of `exponent`;
/// keeping every torsion modulus of a module dividing one `exponent <= 12`
/// keeps its invariant factors at most 12.
fn random_modulus<R: Rng + ?Sized>(rng: &mut R, exponent: i64) -> i64 {
    if rng.gen_bool(0.35) {
        0
    } else {
        random_divisor(rng, exponent)
    }
}

fn random_divisor<R: Rng + ?Sized>(rng: &mut R, exponent: i64) -> i64 {
    let divisors: Vec<i64> = (2..=exponent).filter(|d| exponent % d == 0).collect();
    *divisors.choose(rng).expect("exponent > 1")
}

/// `e_i -> chi(s) e_(i^s)` on `Z^n / d Z^n` for a transitive G-set of size `n`.
fn signed_permutation_piece<R: Rng + ?Sized>(
    rng: &mut R,
    group: &Arc<FiniteGroup>,
    max_rank: usize,
    exponent: i64,
) -> GModule {
    let candidates: Vec<Subgroup> = group
        .all_subgroups()
        .into_iter()
        .filter(|h| h.index() <= max_rank)
        .collect();
    let h = candidates.choose(rng).expect("the whole group qualifies");
    let set = GSet::coset_space(h);
    let chars = characters(group);
    let chi = chars.choose(rng).expect("trivial character");
    let n = set.size();
    let d = random_modulus(rng, exponent);
    let action = group
        .elements()
        .map(|s| {
            let mut a = IntMatrix::zeros(n, n);
            for i in 0..n {
                a.set(set.apply(i, s), i, int(chi[s]));
            }
            a
        })
        .collect();
    let base = Arc::new(FgAbGroup::new(n, IntMatrix::identity(n).scale(&int(d))).expect("square"));
    GModule::new(group.clone(), base, action).expect("signed permutation action")
}

/// `Z/d` with the generator of a cyclic group acting by a unit of order
/// dividing the group order.
fn unit_piece<R: Rng + ?Sized>(rng: &mut R, group: &Arc<FiniteGroup>, exponent: i64) -> Option<GModule> {
    let gen = group.cyclic_generator()?;
    let n = group.order() as i64;
    let d = random_divisor(rng, exponent);
    let units: Vec<i64> = (1..d)
        .filter(|&u| crate::fgab::gcd(&int(u), &int(d)) == int(1))
        .filter(|&u| (0..n).fold(1i64, |acc, _| acc * u % d) == 1)
        .collect();
    let u = *units.choose(rng)?;
    let base = Arc::new(FgAbGroup::cyclic(d));
    let g = group.clone();
    let action = g
        .elements()
        .map(|s| {
            // s = gen^k
            let k = (0..g.order()).find(|&k| g.pow(gen, k) == s).expect("cyclic");
            IntMatrix::from_rows(&[vec![(0..k).fold(1i64, |acc, _| acc * u % d)]])
        })
        .collect();
    GModule::new(group.clone(), base, action).ok()
}

/// `Z^2 / d Z^2` with the generator of a cyclic group acting by a matrix of
/// order 3, 4 or 6 dividing the group order.
fn rotation_piece<R: Rng + ?Sized>(rng: &mut R, group: &Arc<FiniteGroup>, exponent: i64) -> Option<GModule> {
    group.cyclic_generator()?;
    let n = group.order();
    let mats: Vec<(usize, IntMatrix)> = [
        (3, IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]])),
        (4, IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]])),
        (6, IntMatrix::from_rows(&[vec![1, -1], vec![1, 0]])),
    ]
    .into_iter()
    .filter(|(k, _)| n.is_multiple_of(*k))
    .collect();
    let (_, m) = mats.choose(rng)?.clone();
    let d = random_modulus(rng, exponent);
    let base = Arc::new(FgAbGroup::new(2, IntMatrix::identity(2).scale(&int(d))).expect("square"));
    GModule::from_generators(group.clone(), base, &[m]).ok()
}

/// A random unimodular matrix and its inverse.
fn random_unimodular<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(n);
    let mut p_inv = IntMatrix::identity(n);
    if n < 2 {
        if rng.gen_bool(0.5) {
            let m = IntMatrix::from_rows(&[vec![-1]]);
            return (m.clone(), m);
        }
        return (p, p_inv);
    }
    for _ in 0..2 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = rng.gen_range(-2..=2);
        let mut e = IntMatrix::identity(n);
        e.set(i, j, int(k));
        let mut e_inv = IntMatrix::identity(n);
        e_inv.set(i, j, int(-k));
        p = e.mul(&p).expect("square");
        p_inv = p_inv.mul(&e_inv).expect("square");
    }
    (p, p_inv)
}

/// The same module written in the basis changed by `p`.
fn change_basis(m: &GModule, p: &IntMatrix, p_inv: &IntMatrix) -> GModule {
    let rel = p.mul(m.base().relations()).expect("shape");
    let base = Arc::new(FgAbGroup::new(m.rank(), rel).expect("shape"));
    let action = m
        .group()
        .elements()
        .map(|s| p.mul(m.action_matrix(s)).and_then(|a| a.mul(p_inv)).expect("shape"))
        .collect();
    GModule::new(m.group().clone(), base, action).expect("conjugate of a module")
}

/// A random presented module of rank between 1 and `max_rank`, a direct sum
/// of signed permutation modules and (for cyclic groups) unit and rotation
/// modules, written in a random basis. Invariant factors stay at most 12.
pub fn random_module<R: Rng + ?Sized>(rng: &mut R, group: &Arc<FiniteGroup>, max_rank: usize) -> GModule {
    let target_rank = rng.gen_range(1..=max_rank.max(1));
    let exponent = rng.gen_range(2..=MAX_FACTOR);
    let mut pieces: Vec<GModule> = Vec::new();
    let mut rank = 0;
    while rank < target_rank {
        let room = target_rank - rank;
        let piece = match rng.gen_range(0..4) {
            0 => unit_piece(rng, group, exponent),
            1 if room >= 2 => rotation_piece(rng, group, exponent),
            _ => None,
        }
        .unwrap_or_else(|| signed_permutation_piece(rng, group, room, exponent));
        rank += piece.rank();
        pieces.push(piece);
    }
    let refs: Vec<&GModule> = pieces.iter().collect();
    let sum = GModule::direct_sum(&refs).expect("same group");
    let (p, p_inv) = random_unimodular(rng, sum.rank());
    change_basis(&sum, &p, &p_inv)
}

/// A union of one to three coset spaces with at most `max_points` points.
pub fn random_gset<R: Rng + ?Sized>(rng: &mut R, group: &Arc<FiniteGroup>, max_points: usize) -> GSet {
    let subs = group.all_subgroups();
    let orbits = rng.gen_range(1..=3);
    let mut set: Option<GSet> = None;
    let mut used = 0;
    for _ in 0..orbits {
        let fitting: Vec<&Subgroup> = subs.iter().filter(|h| used + h.index() <= max_points).collect();
        let Some(h) = fitting.choose(rng) else { break };
        let orbit = GSet::coset_space(h);
        used += orbit.size();
        set = Some(match set {
            None => orbit,
            Some(s) => s.disjoint_union(&orbit).expect("same group"),
        });
    }
    set.expect("the whole group always fits")
}

/// Generators of a random `M'_0`: the differences within each component
/// plus `k M'` for a random `k` in `0..=3`, reduced to a small generating set.
fn random_triv_gens<R: Rng + ?Sized>(
    rng: &mut R,
    ambient: &GModule,
    pointmap: &[Vec<Int>],
    labels: &[usize],
) -> IntMatrix {
    let n = ambient.rank();
    let mut cols: Vec<Vec<Int>> = Vec::new();
    for (t, &c) in labels.iter().enumerate() {
        let r = labels.iter().position(|&l| l == c).expect("own label");
        cols.push(vec_sub(&pointmap[t], &pointmap[r]));
    }
    let k = rng.gen_range(0..=3);
    if k > 0 {
        for i in 0..n {
            let mut e = vec![int(0); n];
            e[i] = int(k);
            cols.push(e);
        }
    }
    let gens = IntMatrix::from_columns(n, &cols);
    let sub = ambient
        .submodule_simplified(&gens)
        .expect("differences span a submodule");
    sub.embedding.matrix().clone()
}

/// A random equivariant map from the submodule spanned by `gens` to `target`.
fn random_phi<R: Rng + ?Sized>(
    rng: &mut R,
    ambient: &GModule,
    gens: &IntMatrix,
    target: &GModule,
) -> Result<IntMatrix> {
    let sub = ambient.submodule(gens)?;
    let basis = equivariant_hom_basis(&sub.module, target)?;
    let mut phi = IntMatrix::zeros(target.rank(), gens.cols());
    for b in basis {
        let c = int(rng.gen_range(-2..=2));
        phi = phi.add(&b.scale(&c))?;
    }
    Ok(phi)
}

/// A cycle model with a single component over `group` with values in `target`.
pub fn random_connected_model<R: Rng + ?Sized>(
    rng: &mut R,
    group: &Arc<FiniteGroup>,
    target: &Arc<GModule>,
) -> CycleModel {
    let points = random_gset(rng, group, MAX_POINTS);
    let ambient = Arc::new(random_module(rng, group, MAX_RANK));
    let pointmap = random_equivariant_pointmap(&points, &ambient, rng, 3).expect("same group");
    let labels = vec![0; points.size()];
    let gens = random_triv_gens(rng, &ambient, &pointmap, &labels);
    let phi = random_phi(rng, &ambient, &gens, target).expect("valid submodule");
    CycleModel::new(points, ambient, pointmap, &gens, target.clone(), phi, labels).expect("generated model is valid")
}

/// A free module with nonzero `H^1` and the modulus `k` to reduce by: `Z`
/// twisted by a sign character on a permutation module of rank at most 2,
/// or for cyclic groups of order divisible by 3 or 4 a free rotation module.
fn reduction_piece<R: Rng + ?Sized>(rng: &mut R, group: &Arc<FiniteGroup>) -> Option<(GModule, i64)> {
    let signs: Vec<Vec<i64>> = characters(group).into_iter().skip(1).collect();
    if let Some(chi) = signs.choose(rng) {
        let subs: Vec<Subgroup> = group.all_subgroups().into_iter().filter(|h| h.index() <= 2).collect();
        let set = GSet::coset_space(subs.choose(rng).expect("the whole group qualifies"));
        let n = set.size();
        let action = group
            .elements()
            .map(|s| {
                let mut a = IntMatrix::zeros(n, n);
                for i in 0..n {
                    a.set(set.apply(i, s), i, int(chi[s]));
                }
                a
            })
            .collect();
        let m = GModule::new(group.clone(), Arc::new(FgAbGroup::free(n)), action).ok()?;
        return Some((m, *[2, 4].choose(rng).expect("nonempty")));
    }
    let order = group.order();
    // (modulus, period of the rotation, rotation)
    let options: Vec<(i64, usize, IntMatrix)> = [
        (3, 3, IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]])),
        (2, 4, IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]])),
    ]
    .into_iter()
    .filter(|(_, period, _)| order.is_multiple_of(*period))
    .collect();
    group.cyclic_generator()?;
    let (k, _, m) = options.choose(rng)?.clone();
    let m = GModule::from_generators(group.clone(), Arc::new(FgAbGroup::free(2)), &[m]).ok()?;
    Some((m, k))
}

/// Candidate basepoint values tried by [`reduction_model`].
const REDUCTION_CANDIDATES: usize = 24;

/// A model on one orbit `G/H` with `M'_0 = k M'`, `A = M' / k M'` and
/// `phi(k x) = x mod k`. The basepoint value is fixed by `H` and invariant
/// modulo `k`, so the class is the reduction of its image under the
/// connecting map; candidates with a nonzero class are preferred. `None`
/// if `phi` is not well defined for the drawn module.
pub fn reduction_model<R: Rng + ?Sized>(rng: &mut R, group: &Arc<FiniteGroup>) -> Option<CycleModel> {
    let (piece, k) = reduction_piece(rng, group)?;
    let mut parts = vec![piece];
    let room = MAX_RANK - parts[0].rank();
    if room > 0 && rng.gen_bool(0.5) {
        let extra = random_module(rng, group, room);
        let coprime = extra
            .base()
            .invariant_factors()
            .iter()
            .all(|d| is_zero(d) || crate::fgab::gcd(d, &int(k)) == int(1));
        if coprime {
            parts.push(extra);
        }
    }
    let refs: Vec<&GModule> = parts.iter().collect();
    let sum = GModule::direct_sum(&refs).expect("same group");
    let (p, p_inv) = random_unimodular(rng, sum.rank());
    let ambient = Arc::new(change_basis(&sum, &p, &p_inv));
    let n = ambient.rank();
    let kid = IntMatrix::identity(n).scale(&int(k));
    let rel = ambient.base().relations().hcat(&kid).ok()?;
    let base = Arc::new(FgAbGroup::new(n, rel).ok()?);
    let gens: Vec<IntMatrix> = group
        .generators()
        .iter()
        .map(|&s| ambient.action_matrix(s).clone())
        .collect();
    let target = Arc::new(GModule::from_generators(group.clone(), base, &gens).ok()?);
    let subs: Vec<Subgroup> = group
        .all_subgroups()
        .into_iter()
        .filter(|h| h.index() <= MAX_POINTS)
        .collect();
    let h = subs.choose(rng).expect("the whole group qualifies");
    let points = GSet::coset_space(h);
    let fixed = ambient.fixed_submodule(h);
    let triv = ambient.submodule(&kid).ok()?;
    let mut chosen: Option<CycleModel> = None;
    for _ in 0..REDUCTION_CANDIDATES {
        let v = fixed.embedding.apply(&fixed.group.random_vec(rng, 3));
        let invariant = group
            .generators()
            .iter()
            .all(|&s| triv.preimage(&vec_sub(&ambient.act(&v, s), &v)).is_some());
        if !invariant {
            continue;
        }
        let pointmap = pointmap_from_representatives(&points, &ambient, &[v]).ok()?;
        let model = CycleModel::connected(
            points.clone(),
            ambient.clone(),
            pointmap,
            &kid,
            target.clone(),
            IntMatrix::identity(n),
        )
        .ok()?;
        let nontrivial = !model.torsor_class(0).ok()?.is_zero();
        chosen = Some(model);
        if nontrivial {
            break;
        }
    }
    chosen
}

/// A connected model over a random small group: half of the time a
/// [`reduction_model`], otherwise one with a random target.
pub fn random_model<R: Rng + ?Sized>(rng: &mut R) -> CycleModel {
    let groups = small_groups();
    let (_, group) = groups.choose(rng).expect("nonempty");
    if rng.gen_bool(0.5) {
        if let Some(m) = reduction_model(rng, group) {
            return m;
        }
    }
    let target = Arc::new(random_module(rng, group, MAX_RANK));
    random_connected_model(rng, group, &target)
}

/// Two connected models over the same group and target; the first is a
/// [`reduction_model`] half of the time.
pub fn random_model_pair<R: Rng + ?Sized>(rng: &mut R) -> (CycleModel, CycleModel) {
    let groups = small_groups();
    let (_, group) = groups.choose(rng).expect("nonempty");
    if rng.gen_bool(0.5) {
        if let Some(a) = reduction_model(rng, group) {
            let b = random_connected_model(rng, group, a.target());
            return (a, b);
        }
    }
    let target = Arc::new(random_module(rng, group, MAX_RANK));
    let a = random_connected_model(rng, group, &target);
    let b = random_connected_model(rng, group, &target);
    (a, b)
}

/// A model whose 2 or 3 components are permuted transitively: components
/// are the cosets of a subgroup `K` of index 2 or 3, and points are cosets
/// of subgroups of `K`.
pub fn random_disconnected_model<R: Rng + ?Sized>(rng: &mut R) -> CycleModel {
    let groups: Vec<(Arc<FiniteGroup>, Vec<Subgroup>)> = small_groups()
        .into_iter()
        .map(|(_, g)| {
            let ks = g
                .all_subgroups()
                .into_iter()
                .filter(|k| (2..=3).contains(&k.index()))
                .collect();
            (g, ks)
        })
        .filter(|(_, ks): &(Arc<FiniteGroup>, Vec<Subgroup>)| !ks.is_empty())
        .collect();
    let (group, ks) = groups.choose(rng).expect("some group has such a subgroup");
    let k = ks.choose(rng).expect("nonempty").clone();
    let inside: Vec<Subgroup> = group
        .all_subgroups()
        .into_iter()
        .filter(|h| h.elements().iter().all(|&x| k.contains(x)) && h.index() <= MAX_POINTS)
        .collect();
    let orbits = rng.gen_range(1..=2);
    let mut points: Option<GSet> = None;
    let mut labels = Vec::new();
    for _ in 0..orbits {
        let used = points.as_ref().map_or(0, GSet::size);
        let fitting: Vec<&Subgroup> = inside.iter().filter(|h| used + h.index() <= MAX_POINTS).collect();
        let Some(h) = fitting.choose(rng) else { break };
        for coset in h.right_cosets() {
            labels.push(k.coset_index(coset[0]));
        }
        let orbit = GSet::coset_space(h);
        points = Some(match points {
            None => orbit,
            Some(s) => s.disjoint_union(&orbit).expect("same group"),
        });
    }
    let points = points.expect("K itself fits");
    let target = Arc::new(random_module(rng, group, MAX_RANK));
    let ambient = Arc::new(random_module(rng, group, MAX_RANK));
    let pointmap = random_equivariant_pointmap(&points, &ambient, rng, 3).expect("same group");
    let gens = random_triv_gens(rng, &ambient, &pointmap, &labels);
    let phi = random_phi(rng, &ambient, &gens, &target).expect("valid submodule");
    CycleModel::new(points, ambient, pointmap, &gens, target, phi, labels).expect("generated model is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups_are_distinct_sizes() {
        let g = small_groups();
        assert_eq!(g.len(), 14);
        assert!(g.iter().all(|(_, g)| g.order() <= 8));
    }

    #[test]
    fn generated_modules_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (_, g) in small_groups() {
            for _ in 0..5 {
                let m = random_module(&mut rng, &g, MAX_RANK);
                assert!(m.rank() <= MAX_RANK);
                assert!(m.base().invariant_factors().iter().all(|d| *d <= int(MAX_FACTOR)));
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = random_model(&mut scenario_rng(7, 3));
        let b = random_model(&mut scenario_rng(7, 3));
        assert_eq!(a.pointmap(), b.pointmap());
        assert_eq!(a.phi().matrix(), b.phi().matrix());
    }

    #[test]
    fn disconnected_models_are_transitive_on_components() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let m = random_disconnected_model(&mut rng);
            assert!(m.components().is_transitive());
            assert!((2..=3).contains(&m.components().size()));
        }
    }
}
