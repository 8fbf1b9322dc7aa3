use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use super::group::{FiniteGroup, Subgroup};
use super::gset::GSet;
use crate::cohom::H1;
use crate::error::{Error, Result};
use crate::fgab::{AbHom, AbSubgroup, Congruences, FgAbGroup, GroupElem, Int, IntMatrix};

/// A G-module `Z^n / L` with a right action by automorphisms: the matrix
/// of `s t` is `A_t * A_s`, so that `b^(st) = (b^s)^t`.
pub struct GModule {
    group: Arc<FiniteGroup>,
    base: Arc<FgAbGroup>,
    action: Vec<IntMatrix>,
    pub(crate) h1_cache: OnceLock<Arc<H1>>,
}

impl Clone for GModule {
    fn clone(&self) -> Self {
        GModule {
            group: self.group.clone(),
            base: self.base.clone(),
            action: self.action.clone(),
            h1_cache: self.h1_cache.clone(),
        }
    }
}

impl PartialEq for GModule {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group && *self.base == *other.base && self.action == other.action
    }
}

impl Eq for GModule {}

impl fmt::Debug for GModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GModule({:?}, {:?}, gens -> [", self.group, self.base)?;
        for (i, &s) in self.group.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.action[s])?;
        }
        write!(f, "])")
    }
}

/// Stacks "`m x` lies in the relation lattice of `base`" for several `m`
/// and returns the congruence system on `x`.
pub(crate) fn stacked_conditions(base: &FgAbGroup, mats: &[IntMatrix]) -> (IntMatrix, Vec<Int>) {
    let cols = mats.first().map_or(0, |m| m.cols());
    let mut rows = IntMatrix::zeros(0, cols);
    let mut moduli = Vec::new();
    for m in mats {
        let (r, md) = base.lattice_conditions(m);
        rows = rows.vcat(&r).expect("same unknowns");
        moduli.extend(md);
    }
    (rows, moduli)
}

impl GModule {
    /// Validates an action given for every group element.
    pub fn new(group: Arc<FiniteGroup>, base: Arc<FgAbGroup>, action: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "{} matrices for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        let m = GModule {
            group,
            base,
            action,
            h1_cache: OnceLock::new(),
        };
        m.validate()?;
        Ok(m)
    }

    /// Extends matrices for `group.generators()` to the whole group.
    pub fn from_generators(group: Arc<FiniteGroup>, base: Arc<FgAbGroup>, images: &[IntMatrix]) -> Result<Self> {
        let gens = group.generators().to_vec();
        if images.len() != gens.len() {
            return Err(Error::InvalidAction(format!(
                "{} generator matrices for {} generators",
                images.len(),
                gens.len()
            )));
        }
        for a in images {
            AbHom::new(base.clone(), base.clone(), a.clone())
                .map_err(|e| Error::InvalidAction(format!("generator matrix: {e}")))?;
        }
        let n = base.rank();
        let mut action: Vec<Option<IntMatrix>> = vec![None; group.order()];
        action[group.identity()] = Some(IntMatrix::identity(n));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(g) = queue.pop_front() {
            let cur = action[g].clone().expect("visited");
            for (&s, a) in gens.iter().zip(images) {
                let gs = group.mul(g, s);
                let next = a.mul(&cur)?;
                match &action[gs] {
                    Some(existing) => {
                        if !same_endomorphism(&base, existing, &next) {
                            return Err(Error::InvalidAction(format!(
                                "composition law violated: two different matrices for element {gs}"
                            )));
                        }
                    }
                    None => {
                        action[gs] = Some(next);
                        queue.push_back(gs);
                    }
                }
            }
        }
        let action = action
            .into_iter()
            .map(|a| a.ok_or_else(|| Error::InvalidAction("generators do not reach every element".into())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, base, action)
    }

    pub fn trivial(group: Arc<FiniteGroup>, base: Arc<FgAbGroup>) -> Self {
        let action = vec![IntMatrix::identity(base.rank()); group.order()];
        GModule {
            group,
            base,
            action,
            h1_cache: OnceLock::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        let g = &self.group;
        for (s, a) in self.action.iter().enumerate() {
            AbHom::new(self.base.clone(), self.base.clone(), a.clone())
                .map_err(|e| Error::InvalidAction(format!("element {s}: {e}")))?;
        }
        let id = IntMatrix::identity(self.base.rank());
        if !same_endomorphism(&self.base, &self.action[g.identity()], &id) {
            return Err(Error::InvalidAction("identity does not act trivially".into()));
        }
        for s in g.elements() {
            for t in g.elements() {
                let lhs = &self.action[g.mul(s, t)];
                let rhs = self.action[t].mul(&self.action[s])?;
                if !same_endomorphism(&self.base, lhs, &rhs) {
                    return Err(Error::InvalidAction(format!(
                        "composition law b^(st) = (b^s)^t violated for s={s}, t={t}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn base(&self) -> &Arc<FgAbGroup> {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.base.rank()
    }

    pub fn action_matrix(&self, s: usize) -> &IntMatrix {
        &self.action[s]
    }

    /// `x^s`, reduced.
    pub fn act(&self, x: &[Int], s: usize) -> Vec<Int> {
        self.base.reduce(&self.action[s].mul_vec(x))
    }

    pub fn act_elem(&self, x: &GroupElem, s: usize) -> Result<GroupElem> {
        if **x.owner() != *self.base {
            return Err(Error::MixedOwners);
        }
        self.base.elem(self.action[s].mul_vec(x.coords()))
    }

    pub fn is_trivial_action(&self) -> bool {
        let id = IntMatrix::identity(self.rank());
        self.action.iter().all(|a| same_endomorphism(&self.base, a, &id))
    }

    /// The same module viewed over a subgroup.
    pub fn restrict(&self, h: &Subgroup) -> GModule {
        assert!(**h.parent() == *self.group, "subgroup of a different group");
        GModule {
            group: h.as_group().clone(),
            base: self.base.clone(),
            action: h.elements().iter().map(|&s| self.action[s].clone()).collect(),
            h1_cache: OnceLock::new(),
        }
    }

    pub fn direct_sum(parts: &[&GModule]) -> Result<GModule> {
        let group = parts
            .first()
            .ok_or_else(|| Error::Dimension("empty direct sum".into()))?
            .group
            .clone();
        if parts.iter().any(|m| *m.group != *group) {
            return Err(Error::ModuleMismatch);
        }
        let bases: Vec<&FgAbGroup> = parts.iter().map(|m| m.base.as_ref()).collect();
        let base = Arc::new(FgAbGroup::direct_sum(&bases));
        let action = group
            .elements()
            .map(|s| {
                let blocks: Vec<&IntMatrix> = parts.iter().map(|m| &m.action[s]).collect();
                IntMatrix::block_diagonal(&blocks)
            })
            .collect();
        Ok(GModule {
            group,
            base,
            action,
            h1_cache: OnceLock::new(),
        })
    }

    /// Elements fixed by every element of `h`.
    pub fn fixed_submodule(&self, h: &Subgroup) -> AbSubgroup {
        let n = self.rank();
        let id = IntMatrix::identity(n);
        let mats: Vec<IntMatrix> = h
            .as_group()
            .generators()
            .iter()
            .map(|&l| self.action[h.parent_index(l)].sub(&id).expect("square"))
            .collect();
        let basis = if mats.is_empty() {
            IntMatrix::identity(n)
        } else {
            let (rows, moduli) = stacked_conditions(&self.base, &mats);
            Congruences::new(&rows, &moduli).kernel_basis()
        };
        self.base
            .subgroup(&basis)
            .expect("basis lives in the module")
            .simplified()
    }

    /// Sub-G-module generated (as a group) by the columns of `gens`; fails
    /// unless the span is stable under the action. The submodule is
    /// presented on exactly the given generators.
    pub fn submodule(&self, gens: &IntMatrix) -> Result<SubModule> {
        let sub = self.base.subgroup(gens)?;
        self.submodule_from(sub)
    }

    /// As [`Self::submodule`], but with a diagonal presentation.
    pub fn submodule_simplified(&self, gens: &IntMatrix) -> Result<SubModule> {
        let sub = self.base.subgroup(gens)?.simplified();
        self.submodule_from(sub)
    }

    fn submodule_from(&self, sub: AbSubgroup) -> Result<SubModule> {
        let k = sub.group.rank();
        let emb = sub.embedding.matrix();
        let mut action = Vec::with_capacity(self.group.order());
        for s in self.group.elements() {
            let mut cols = Vec::with_capacity(k);
            for j in 0..k {
                let img = self.action[s].mul_vec(&emb.column(j));
                let pre = sub
                    .preimage(&img)
                    .ok_or_else(|| Error::InvalidAction(format!("submodule is not stable under element {s}")))?;
                cols.push(pre);
            }
            action.push(IntMatrix::from_columns(k, &cols));
        }
        let module = Arc::new(GModule::new(self.group.clone(), sub.group.clone(), action)?);
        Ok(SubModule::new(module, sub.embedding))
    }
}

/// A sub-G-module with its (injective, equivariant) embedding.
#[derive(Clone, Debug)]
pub struct SubModule {
    pub module: Arc<GModule>,
    pub embedding: AbHom,
    solver: Arc<Congruences>,
}

impl SubModule {
    fn new(module: Arc<GModule>, embedding: AbHom) -> Self {
        let (rows, moduli) = embedding.target().lattice_conditions(embedding.matrix());
        SubModule {
            module,
            embedding,
            solver: Arc::new(Congruences::new(&rows, &moduli)),
        }
    }

    /// Coordinates in the submodule of an ambient element, if it lies there.
    pub fn preimage(&self, x: &[Int]) -> Option<Vec<Int>> {
        let rhs = self.embedding.target().condition_values(x);
        self.solver.solve(&rhs).map(|z| self.module.base().reduce(&z))
    }

    pub fn generators(&self) -> &IntMatrix {
        self.embedding.matrix()
    }
}

pub(crate) fn same_endomorphism(base: &FgAbGroup, a: &IntMatrix, b: &IntMatrix) -> bool {
    match a.sub(b) {
        Ok(d) => d.columns().iter().all(|c| base.is_zero_vec(c)),
        Err(_) => false,
    }
}

/// A homomorphism of G-modules over the same group.
#[derive(Clone, Debug)]
pub struct EquivariantHom {
    source: Arc<GModule>,
    target: Arc<GModule>,
    hom: AbHom,
}

impl EquivariantHom {
    pub fn new(source: Arc<GModule>, target: Arc<GModule>, matrix: IntMatrix) -> Result<Self> {
        if *source.group != *target.group {
            return Err(Error::ModuleMismatch);
        }
        let hom = AbHom::new(source.base.clone(), target.base.clone(), matrix)?;
        for s in source.group.elements() {
            let lhs = hom.matrix().mul(&source.action[s])?;
            let rhs = target.action[s].mul(hom.matrix())?;
            if !same_endomorphism(&target.base, &lhs, &rhs) {
                return Err(Error::NotEquivariant(format!("phi(m^s) != phi(m)^s for s={s}")));
            }
        }
        Ok(EquivariantHom { source, target, hom })
    }

    pub fn source(&self) -> &Arc<GModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GModule> {
        &self.target
    }

    pub fn hom(&self) -> &AbHom {
        &self.hom
    }

    pub fn matrix(&self) -> &IntMatrix {
        self.hom.matrix()
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.hom.apply(x)
    }
}

/// Lifts of a basis of `Hom_G(source, target)`, as matrices.
pub fn equivariant_hom_basis(source: &GModule, target: &GModule) -> Result<Vec<IntMatrix>> {
    if *source.group != *target.group {
        return Err(Error::ModuleMismatch);
    }
    let k = target.rank();
    let r = source.rank();
    let unknowns = k * r;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    // Each condition is a k x (k r) matrix acting on vec(Phi), Phi[i][j] at i * r + j.
    let mut conditions = Vec::new();
    let rel = source.base.relations();
    for c in 0..rel.cols() {
        let mut m = IntMatrix::zeros(k, unknowns);
        for i in 0..k {
            for j in 0..r {
                m.set(i, i * r + j, rel.get(j, c).clone());
            }
        }
        conditions.push(m);
    }
    for &s in source.group.generators() {
        let a_src = &source.action[s];
        let a_tgt = &target.action[s];
        for j in 0..r {
            // Phi * A_src e_j - A_tgt * Phi e_j
            let mut m = IntMatrix::zeros(k, unknowns);
            for i in 0..k {
                for l in 0..r {
                    let v = m.get(i, i * r + l) + a_src.get(l, j);
                    m.set(i, i * r + l, v);
                }
                for row in 0..k {
                    let v = m.get(row, i * r + j) - a_tgt.get(row, i);
                    m.set(row, i * r + j, v);
                }
            }
            conditions.push(m);
        }
    }
    let basis = if conditions.is_empty() {
        IntMatrix::identity(unknowns)
    } else {
        let (rows, moduli) = stacked_conditions(&target.base, &conditions);
        Congruences::new(&rows, &moduli).kernel_basis()
    };
    Ok(basis
        .columns()
        .into_iter()
        .map(|v| IntMatrix::from_data(k, r, v).expect("k * r entries"))
        .collect())
}

/// A random equivariant map from the points of `set` into `module`.
///
/// Values are free on orbit representatives subject to being fixed by the
/// representative's stabilizer, and are transported along each orbit.
pub fn random_equivariant_pointmap<R: Rng + ?Sized>(
    set: &GSet,
    module: &GModule,
    rng: &mut R,
    bound: i64,
) -> Result<Vec<Vec<Int>>> {
    if **set.group() != *module.group {
        return Err(Error::ModuleMismatch);
    }
    let mut values: Vec<Option<Vec<Int>>> = vec![None; set.size()];
    for orbit in set.orbits() {
        let t = orbit[0];
        let stab = set.stabilizer(t);
        let fixed = module.fixed_submodule(&stab);
        let v = fixed.embedding.apply(&fixed.group.random_vec(rng, bound));
        extend_along_orbit(set, module, t, &v, &mut values);
    }
    Ok(values.into_iter().map(|v| v.expect("every orbit visited")).collect())
}

/// Equivariant map determined by values on orbit representatives (the least
/// point of each orbit, in orbit order). Each value must be fixed by its
/// representative's stabilizer.
pub fn pointmap_from_representatives(set: &GSet, module: &GModule, reps: &[Vec<Int>]) -> Result<Vec<Vec<Int>>> {
    let orbits = set.orbits();
    if reps.len() != orbits.len() {
        return Err(Error::Dimension(format!(
            "{} representative values for {} orbits",
            reps.len(),
            orbits.len()
        )));
    }
    let mut values: Vec<Option<Vec<Int>>> = vec![None; set.size()];
    for (orbit, v) in orbits.iter().zip(reps) {
        if v.len() != module.rank() {
            return Err(Error::Dimension("point value length".into()));
        }
        let t = orbit[0];
        let v = module.base.reduce(v);
        for &h in set.stabilizer(t).elements() {
            if !module.base.eq_vec(&module.act(&v, h), &v) {
                return Err(Error::NotEquivariant(format!(
                    "value at point {t} is not fixed by its stabilizer element {h}"
                )));
            }
        }
        extend_along_orbit(set, module, t, &v, &mut values);
    }
    Ok(values.into_iter().map(|v| v.expect("every orbit visited")).collect())
}

fn extend_along_orbit(set: &GSet, module: &GModule, t: usize, v: &[Int], values: &mut [Option<Vec<Int>>]) {
    for (u, s) in set.transversal(t).into_iter().enumerate() {
        if let Some(s) = s {
            values[u] = Some(module.act(v, s));
        }
    }
}

/// First `(point, s)` where `g(t^s) = g(t)^s` fails.
pub fn pointmap_violation(set: &GSet, module: &GModule, values: &[Vec<Int>]) -> Option<(usize, usize)> {
    for t in 0..set.size() {
        for s in set.group().elements() {
            if !module.base.eq_vec(&values[set.apply(t, s)], &module.act(&values[t], s)) {
                return Some((t, s));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::{int, ints};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z() -> Arc<FgAbGroup> {
        Arc::new(FgAbGroup::free(1))
    }

    fn negation(order: usize) -> Result<GModule> {
        let g = Arc::new(FiniteGroup::cyclic(order).unwrap());
        GModule::from_generators(g, z(), &[IntMatrix::from_rows(&[vec![-1]])])
    }

    #[test]
    fn trivial_action_is_valid() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let m = GModule::trivial(g.clone(), Arc::new(FgAbGroup::cyclic(6)));
        assert!(GModule::new(g, m.base().clone(), m.action.clone()).is_ok());
    }

    #[test]
    fn negation_orders() {
        assert!(negation(2).is_ok());
        assert!(matches!(negation(3), Err(Error::InvalidAction(_))));
        assert!(negation(4).is_ok());
    }

    #[test]
    fn negation_is_fine_mod_two() {
        // -1 = 1 on Z/2, so even Z/3 may act by it
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let m = GModule::from_generators(g, Arc::new(FgAbGroup::cyclic(2)), &[IntMatrix::from_rows(&[vec![-1]])]);
        assert!(m.is_ok());
    }

    #[test]
    fn pointmap_on_swapped_pair() {
        let m = negation(2).unwrap();
        let s = GSet::from_generator_images(m.group().clone(), 2, &[vec![1, 0]]).unwrap();
        let g = pointmap_from_representatives(&s, &m, &[ints(&[1])]).unwrap();
        assert_eq!(g, vec![ints(&[1]), ints(&[-1])]);
    }

    #[test]
    fn fixed_point_of_negation_must_vanish() {
        let m = negation(2).unwrap();
        let s = GSet::trivial(m.group().clone(), 1);
        assert!(pointmap_from_representatives(&s, &m, &[ints(&[1])]).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let g = random_equivariant_pointmap(&s, &m, &mut rng, 5).unwrap();
            assert_eq!(g, vec![ints(&[0])]);
        }
    }

    #[test]
    fn random_pointmaps_are_equivariant() {
        let d4 = Arc::new(FiniteGroup::dihedral(4).unwrap());
        // D4 acting on Z^2 by its symmetries of the square's vertices (x, y)
        let gens: Vec<IntMatrix> = d4.generators().iter().map(|_| IntMatrix::identity(2)).collect();
        let _ = gens;
        let rot = IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]);
        let refl = IntMatrix::from_rows(&[vec![1, 0], vec![0, -1]]);
        let (d4p, idx) = FiniteGroup::from_permutations(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap();
        let d4p = Arc::new(d4p);
        assert_eq!(idx, d4p.generators().to_vec());
        let m = GModule::from_generators(d4p.clone(), Arc::new(FgAbGroup::free(2)), &[rot, refl]).unwrap();
        let mut set = GSet::coset_space(&d4p.generated_subgroup(&[idx[1]]));
        set = set.disjoint_union(&GSet::coset_space(&d4p.whole())).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let g = random_equivariant_pointmap(&set, &m, &mut rng, 4).unwrap();
            assert_eq!(pointmap_violation(&set, &m, &g), None);
            // the D4-fixed point must map to 0
            assert_eq!(g[set.size() - 1], ints(&[0, 0]));
        }
        let _ = d4;
    }

    #[test]
    fn equivariant_homs_between_sign_modules() {
        let sign = Arc::new(negation(2).unwrap());
        let triv = Arc::new(GModule::trivial(sign.group().clone(), z()));
        // Hom_G(sign, trivial Z) = 0, Hom_G(sign, sign) = Z
        let b = equivariant_hom_basis(&sign, &triv).unwrap();
        assert!(b.iter().all(|m| m.is_zero()));
        let b = equivariant_hom_basis(&sign, &sign).unwrap();
        assert_eq!(b.len(), 1);
        assert!(EquivariantHom::new(sign.clone(), sign.clone(), b[0].clone()).is_ok());
        assert!(EquivariantHom::new(sign.clone(), triv.clone(), IntMatrix::from_rows(&[vec![1]])).is_err());
        // into Z/2 with trivial action every map is equivariant
        let z2 = Arc::new(GModule::trivial(sign.group().clone(), Arc::new(FgAbGroup::cyclic(2))));
        let b = equivariant_hom_basis(&sign, &z2).unwrap();
        assert!(b.iter().any(|m| !z2.base().is_zero_vec(&m.column(0))));
        let _ = int(0);
    }

    #[test]
    fn submodule_of_even_integers() {
        let m = negation(2).unwrap();
        let sub = m.submodule(&IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert_eq!(sub.preimage(&ints(&[-4])), Some(ints(&[-2])));
        assert_eq!(sub.preimage(&ints(&[3])), None);
        assert_eq!(sub.module.action_matrix(1), &IntMatrix::from_rows(&[vec![-1]]));
    }
}
