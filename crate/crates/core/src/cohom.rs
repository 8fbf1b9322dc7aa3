//! Degree-one group cohomology of presented and tabulated modules.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fgab::{vec_add, vec_neg, vec_scale, vec_sub, AbHom, Congruences, ExactSolver, FgAbGroup, Int, IntMatrix};
use crate::gmod::{stacked_conditions, subquotient_invariant_factors, GModule, Subgroup, TabulatedModule};

/// A 1-cocycle `G -> M`: `a_(st) = (a_s)^t + a_t`. Values are reduced.
#[derive(Clone)]
pub struct Cocycle1 {
    module: Arc<GModule>,
    values: Vec<Vec<Int>>,
}

impl fmt::Debug for Cocycle1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.values.iter().map(|v| self.module.base().canonical(v)))
            .finish()
    }
}

/// First `(s, t)` with `a_(st) != (a_s)^t + a_t`.
pub fn cocycle_violation(module: &GModule, values: &[Vec<Int>]) -> Option<(usize, usize)> {
    let g = module.group();
    let base = module.base();
    for s in g.elements() {
        for t in g.elements() {
            let rhs = vec_add(&module.act(&values[s], t), &values[t]);
            if !base.eq_vec(&values[g.mul(s, t)], &rhs) {
                return Some((s, t));
            }
        }
    }
    None
}

pub fn is_cocycle(module: &GModule, values: &[Vec<Int>]) -> bool {
    values.len() == module.group().order() && cocycle_violation(module, values).is_none()
}

impl Cocycle1 {
    pub fn new(module: Arc<GModule>, values: Vec<Vec<Int>>) -> Result<Self> {
        if values.len() != module.group().order() || values.iter().any(|v| v.len() != module.rank()) {
            return Err(Error::Dimension("one module element per group element required".into()));
        }
        if let Some((sigma, tau)) = cocycle_violation(&module, &values) {
            return Err(Error::NotCocycle { sigma, tau });
        }
        Ok(Self::trusted(module, values))
    }

    pub(crate) fn trusted(module: Arc<GModule>, values: Vec<Vec<Int>>) -> Self {
        let values = values.iter().map(|v| module.base().reduce(v)).collect();
        Cocycle1 { module, values }
    }

    /// The cocycle with the given values on `group.generators()`, extended
    /// by the cocycle rule; fails if the extension is inconsistent.
    pub fn from_generators(module: Arc<GModule>, images: &[Vec<Int>]) -> Result<Self> {
        let g = module.group().clone();
        let gens = g.generators().to_vec();
        if images.len() != gens.len() {
            return Err(Error::Dimension(format!(
                "{} generator values for {} generators",
                images.len(),
                gens.len()
            )));
        }
        let mut values: Vec<Option<Vec<Int>>> = vec![None; g.order()];
        values[g.identity()] = Some(module.base().zero_vec());
        let mut queue = std::collections::VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            let ax = values[x].clone().expect("visited");
            for (&s, v) in gens.iter().zip(images) {
                let xs = g.mul(x, s);
                if values[xs].is_none() {
                    values[xs] = Some(module.base().reduce(&vec_add(&module.act(&ax, s), v)));
                    queue.push_back(xs);
                }
            }
        }
        let values = values
            .into_iter()
            .map(|v| v.expect("generators reach every element"))
            .collect();
        Self::new(module, values)
    }

    pub fn zero(module: Arc<GModule>) -> Self {
        let values = vec![module.base().zero_vec(); module.group().order()];
        Cocycle1 { module, values }
    }

    /// `s -> m^s - m`.
    pub fn coboundary_of(module: Arc<GModule>, m: &[Int]) -> Self {
        let values = module
            .group()
            .elements()
            .map(|s| vec_sub(&module.act(m, s), m))
            .collect();
        Self::trusted(module, values)
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn value(&self, s: usize) -> &[Int] {
        &self.values[s]
    }

    pub fn values(&self) -> &[Vec<Int>] {
        &self.values
    }

    fn same_module(&self, other: &Cocycle1) -> Result<()> {
        if Arc::ptr_eq(&self.module, &other.module) || *self.module == *other.module {
            Ok(())
        } else {
            Err(Error::ModuleMismatch)
        }
    }

    pub fn add(&self, other: &Cocycle1) -> Result<Cocycle1> {
        self.same_module(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| vec_add(a, b))
            .collect();
        Ok(Self::trusted(self.module.clone(), values))
    }

    pub fn neg(&self) -> Cocycle1 {
        Self::trusted(self.module.clone(), self.values.iter().map(|v| vec_neg(v)).collect())
    }

    pub fn sub(&self, other: &Cocycle1) -> Result<Cocycle1> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Cocycle1 {
        let k = Int::from(k);
        Self::trusted(
            self.module.clone(),
            self.values.iter().map(|v| vec_scale(v, &k)).collect(),
        )
    }

    pub fn equals(&self, other: &Cocycle1) -> bool {
        self.same_module(other).is_ok()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| self.module.base().eq_vec(a, b))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| self.module.base().is_zero_vec(v))
    }

    /// Some `m` with `a_s = m^s - m` for every `s`.
    ///
    /// Checking the generators suffices: two cocycles agreeing on a
    /// generating set agree everywhere.
    pub fn coboundary_witness(&self) -> Option<Vec<Int>> {
        let g = self.module.group();
        let base = self.module.base();
        let gens = g.generators();
        if gens.is_empty() {
            return Some(base.zero_vec());
        }
        let id = IntMatrix::identity(self.module.rank());
        let mats: Vec<IntMatrix> = gens
            .iter()
            .map(|&s| self.module.action_matrix(s).sub(&id).expect("square"))
            .collect();
        let (rows, moduli) = stacked_conditions(base, &mats);
        let rhs: Vec<Int> = gens
            .iter()
            .flat_map(|&s| base.condition_values(&self.values[s]))
            .collect();
        let m = Congruences::new(&rows, &moduli).solve(&rhs)?;
        Some(base.reduce(&m))
    }

    pub fn is_coboundary(&self) -> bool {
        self.coboundary_witness().is_some()
    }

    /// Restriction to a subgroup of the module's group.
    pub fn restrict(&self, h: &Subgroup) -> Result<Cocycle1> {
        if **h.parent() != **self.module.group() {
            return Err(Error::NotSubgroup("subgroup of a different group".into()));
        }
        let module = Arc::new(self.module.restrict(h));
        let values = h.elements().iter().map(|&s| self.values[s].clone()).collect();
        Ok(Cocycle1 { module, values })
    }

    pub fn class(&self) -> CohClass {
        CohClass::of(self.clone())
    }
}

/// Conjugate of a cocycle `b` over `h` (its module is `full` restricted to
/// `h`) by `tau`: the cocycle on `tau^-1 h tau` with
/// `(b^tau)_(tau^-1 s tau) = (b_s)^tau`.
pub fn conjugate_cocycle(full: &GModule, h: &Subgroup, beta: &Cocycle1, tau: usize) -> Result<(Subgroup, Cocycle1)> {
    if **h.parent() != **full.group() {
        return Err(Error::NotSubgroup("subgroup of a different group".into()));
    }
    if **beta.module.group() != **h.as_group() || **beta.module.base() != **full.base() {
        return Err(Error::ModuleMismatch);
    }
    let g = full.group();
    let conj = h.conjugate(tau);
    let tau_inv = g.inv(tau);
    let values = conj
        .elements()
        .iter()
        .map(|&s_prime| {
            let s = g.mul(g.mul(tau, s_prime), tau_inv);
            let local = h.local_index(s).expect("conjugate lies in h");
            full.act(&beta.values[local], tau)
        })
        .collect();
    let module = Arc::new(full.restrict(&conj));
    let cocycle = Cocycle1::new(module, values)?;
    Ok((conj, cocycle))
}

/// `H^1(G, M)` for a presented module, as the quotient of the cocycle lattice
/// by the coboundary lattice inside `M^(|G|-1)` (identity slot omitted).
pub struct H1 {
    group: Arc<FgAbGroup>,
    /// Columns span the lifts of all cocycles to `Z^(n (|G|-1))`.
    z_basis: IntMatrix,
    z_solver: ExactSolver,
    /// From `Z`-lattice coordinates to coordinates in `group`.
    to: AbHom,
    /// From coordinates in `group` to `Z`-lattice coordinates.
    from: AbHom,
    slots: Vec<usize>,
    rank: usize,
    order: usize,
}

impl fmt::Debug for H1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H1({:?})", self.group.invariant_factors())
    }
}

impl H1 {
    fn compute(module: &GModule) -> H1 {
        let g = module.group();
        let base = module.base();
        let n = base.rank();
        let slots: Vec<usize> = g.elements().filter(|&s| s != g.identity()).collect();
        let mut slot_of = vec![None; g.order()];
        for (k, &s) in slots.iter().enumerate() {
            slot_of[s] = Some(k);
        }
        let unknowns = n * slots.len();

        // Cocycle condition c_(xs) - A_s c_x - c_s ∈ L for every x and every generator s.
        let mut conditions = Vec::new();
        for x in g.elements() {
            for &s in g.generators() {
                let mut m = IntMatrix::zeros(n, unknowns);
                let mut place = |slot: Option<usize>, block: &IntMatrix, sign: i64| {
                    if let Some(k) = slot {
                        for i in 0..n {
                            for j in 0..n {
                                let v = m.get(i, k * n + j) + block.get(i, j) * sign;
                                m.set(i, k * n + j, v);
                            }
                        }
                    }
                };
                let id = IntMatrix::identity(n);
                place(slot_of[g.mul(x, s)], &id, 1);
                place(slot_of[x], module.action_matrix(s), -1);
                place(slot_of[s], &id, -1);
                conditions.push(m);
            }
        }
        let z_basis = if conditions.is_empty() || unknowns == 0 {
            IntMatrix::identity(unknowns)
        } else {
            let (rows, moduli) = stacked_conditions(base, &conditions);
            Congruences::new(&rows, &moduli).kernel_basis()
        };

        // Coboundaries (A_s - 1) e_i together with L in every slot.
        let mut b_gens: Vec<Vec<Int>> = Vec::new();
        for i in 0..n {
            let mut e = base.zero_vec();
            e[i] = Int::from(1);
            let mut col = Vec::with_capacity(unknowns);
            for &s in &slots {
                col.extend(vec_sub(&module.action_matrix(s).mul_vec(&e), &e));
            }
            b_gens.push(col);
        }
        let rel = base.relations();
        for k in 0..slots.len() {
            for c in 0..rel.cols() {
                let mut col = vec![Int::from(0); unknowns];
                for i in 0..n {
                    col[k * n + i] = rel.get(i, c).clone();
                }
                b_gens.push(col);
            }
        }
        let z_solver = ExactSolver::new(&z_basis);
        let b_coords: Vec<Vec<Int>> = b_gens
            .iter()
            .map(|v| z_solver.solve(v).expect("coboundaries are cocycles"))
            .collect();
        let quotient = Arc::new(
            FgAbGroup::new(z_basis.cols(), IntMatrix::from_columns(z_basis.cols(), &b_coords)).expect("shape"),
        );
        let simple = quotient.simplify();
        H1 {
            group: simple.group,
            z_basis,
            z_solver,
            to: simple.to,
            from: simple.from,
            slots,
            rank: n,
            order: g.order(),
        }
    }

    pub fn group(&self) -> &Arc<FgAbGroup> {
        &self.group
    }

    pub fn invariant_factors(&self) -> Vec<Int> {
        self.group.invariant_factors()
    }

    /// Coordinates of the class of a cocycle, canonical in [`Self::group`].
    pub fn coords_of(&self, alpha: &Cocycle1) -> Vec<Int> {
        assert_eq!(alpha.values.len(), self.order, "cocycle over a different group");
        let stacked: Vec<Int> = self
            .slots
            .iter()
            .flat_map(|&s| alpha.values[s].iter().cloned())
            .collect();
        let y = self
            .z_solver
            .solve(&stacked)
            .expect("a cocycle lies in the cocycle lattice");
        self.group.canonical(&self.to.apply(&y))
    }

    /// A representative cocycle for coordinates in [`Self::group`].
    pub fn cocycle_of(&self, module: Arc<GModule>, coords: &[Int]) -> Cocycle1 {
        let z = self.from.apply(&self.group.from_canonical(coords));
        let lifted = self.z_basis.mul_vec(&z);
        let mut values = vec![module.base().zero_vec(); self.order];
        for (k, &s) in self.slots.iter().enumerate() {
            values[s] = lifted[k * self.rank..(k + 1) * self.rank].to_vec();
        }
        Cocycle1::trusted(module, values)
    }
}

/// `H^1` of a presented module, computed once per module.
pub fn h1(module: &GModule) -> Arc<H1> {
    module.h1_cache.get_or_init(|| Arc::new(H1::compute(module))).clone()
}

/// `H^1` of a tabulated module; only cyclic groups are supported.
pub fn h1_tabulated(module: &TabulatedModule) -> Result<FgAbGroup> {
    h1_cyclic_oracle_tabulated(module).map_err(|e| match e {
        Error::NotCyclic => Error::Unsupported("tabulated modules support only cyclic groups".into()),
        other => other,
    })
}

/// `ker(N) / im(s - 1)` for a generator `s` of a cyclic group, on a
/// presented module. Independent of the cochain computation.
pub fn h1_cyclic_oracle(module: &GModule) -> Result<FgAbGroup> {
    let g = module.group();
    let s = g.cyclic_generator().ok_or(Error::NotCyclic)?;
    let base = module.base();
    let n = base.rank();
    let mut norm = IntMatrix::zeros(n, n);
    let mut power = g.identity();
    for _ in 0..g.order() {
        norm = norm.add(module.action_matrix(power)).expect("square");
        power = g.mul(power, s);
    }
    let kernel = base.kernel_lattice(&norm);
    let mut image_gens = module
        .action_matrix(s)
        .sub(&IntMatrix::identity(n))
        .expect("square")
        .hcat(base.relations())
        .expect("rows");
    if image_gens.cols() == 0 {
        image_gens = IntMatrix::zeros(n, 1);
    }
    let solver = ExactSolver::new(&kernel);
    let coords: Vec<Vec<Int>> = image_gens
        .columns()
        .iter()
        .map(|v| solver.solve(v).expect("im(s - 1) lies in ker N"))
        .collect();
    let q = FgAbGroup::new(kernel.cols(), IntMatrix::from_columns(kernel.cols(), &coords))?;
    Ok(FgAbGroup::from_factors(&q.invariant_factors()))
}

/// The cyclic oracle on a tabulated module, by enumeration.
pub fn h1_cyclic_oracle_tabulated(module: &TabulatedModule) -> Result<FgAbGroup> {
    let g = module.group();
    let s = g.cyclic_generator().ok_or(Error::NotCyclic)?;
    let base = module.base().as_ref();
    let size = base.size();
    let mut kernel = vec![false; size];
    let mut image = vec![false; size];
    for x in 0..size as u32 {
        let mut acc = base.zero();
        let mut y = x;
        for _ in 0..g.order() {
            acc = base.add(acc, y);
            y = module.act(y, s);
        }
        kernel[x as usize] = acc == base.zero();
        image[base.sub(module.act(x, s), x) as usize] = true;
    }
    if let Some(x) = (0..size).find(|&x| image[x] && !kernel[x]) {
        return Err(Error::Violation(format!("element {x} is in im(s - 1) but not ker N")));
    }
    Ok(FgAbGroup::from_factors(&subquotient_invariant_factors(
        base, &kernel, &image,
    )))
}

/// A class in `H^1(G, M)`.
#[derive(Clone)]
pub struct CohClass {
    representative: Cocycle1,
    h1: Arc<H1>,
    coords: Vec<Int>,
}

impl fmt::Debug for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CohClass({:?} in {:?})", self.coords, self.h1)
    }
}

impl PartialEq for CohClass {
    /// Decided by whether the difference of representatives is a coboundary.
    fn eq(&self, other: &Self) -> bool {
        self.representative
            .sub(&other.representative)
            .map(|d| d.is_coboundary())
            .unwrap_or(false)
    }
}

impl CohClass {
    pub fn of(representative: Cocycle1) -> Self {
        let h1 = h1(&representative.module);
        let coords = h1.coords_of(&representative);
        CohClass {
            representative,
            h1,
            coords,
        }
    }

    pub fn zero(module: Arc<GModule>) -> Self {
        Self::of(Cocycle1::zero(module))
    }

    pub fn from_coords(module: Arc<GModule>, coords: &[Int]) -> Self {
        let h = h1(&module);
        Self::of(h.cocycle_of(module, coords))
    }

    pub fn representative(&self) -> &Cocycle1 {
        &self.representative
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.representative.module
    }

    pub fn h1(&self) -> &Arc<H1> {
        &self.h1
    }

    /// Canonical coordinates in `H^1` as a group.
    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_coboundary()
    }

    pub fn add(&self, other: &CohClass) -> Result<CohClass> {
        Ok(Self::of(self.representative.add(&other.representative)?))
    }

    pub fn neg(&self) -> CohClass {
        Self::of(self.representative.neg())
    }

    pub fn scale(&self, k: i64) -> CohClass {
        Self::of(self.representative.scale(k))
    }

    pub fn order(&self) -> Option<Int> {
        self.h1.group.order_of(&self.h1.group.from_canonical(&self.coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::{int, ints};
    use crate::gmod::{AdditionTable, FiniteAbelian, FiniteGroup};

    fn module(order: usize, base: FgAbGroup, gen: &[Vec<i64>]) -> Arc<GModule> {
        let g = Arc::new(FiniteGroup::cyclic(order).unwrap());
        Arc::new(GModule::from_generators(g, Arc::new(base), &[IntMatrix::from_rows(gen)]).unwrap())
    }

    #[test]
    fn cocycle_examples() {
        let z2 = module(2, FgAbGroup::cyclic(2), &[vec![1]]);
        assert!(is_cocycle(&z2, &[ints(&[0]), ints(&[0])]));
        assert!(is_cocycle(&z2, &[ints(&[0]), ints(&[1])]));
        let z = module(2, FgAbGroup::free(1), &[vec![1]]);
        assert_eq!(cocycle_violation(&z, &[ints(&[0]), ints(&[1])]), Some((1, 1)));
    }

    #[test]
    fn coboundary_examples() {
        let neg = module(2, FgAbGroup::free(1), &[vec![-1]]);
        let c = Cocycle1::coboundary_of(neg.clone(), &ints(&[1]));
        assert_eq!(c.value(1), &ints(&[-2])[..]);
        assert!(Cocycle1::coboundary_of(neg, &ints(&[0])).is_zero());
        let z2 = module(2, FgAbGroup::cyclic(2), &[vec![1]]);
        let a = Cocycle1::new(z2, vec![ints(&[0]), ints(&[1])]).unwrap();
        assert_eq!(a.coboundary_witness(), None);
    }

    #[test]
    fn h1_examples() {
        let triv = module(3, FgAbGroup::free(1), &[vec![1]]);
        assert!(h1(&triv).invariant_factors().is_empty());
        let neg = module(2, FgAbGroup::free(1), &[vec![-1]]);
        assert_eq!(h1(&neg).invariant_factors(), ints(&[2]));
        let z2 = module(2, FgAbGroup::cyclic(2), &[vec![1]]);
        assert_eq!(h1(&z2).invariant_factors(), ints(&[2]));
        let z5 = module(5, FgAbGroup::cyclic(5), &[vec![1]]);
        assert_eq!(h1(&z5).invariant_factors(), ints(&[5]));
        assert_eq!(h1_cyclic_oracle(&z5).unwrap().invariant_factors(), ints(&[5]));
        assert_eq!(h1_cyclic_oracle(&neg).unwrap().invariant_factors(), ints(&[2]));
    }

    #[test]
    fn oracle_rejects_noncyclic() {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let m = GModule::trivial(g, Arc::new(FgAbGroup::free(1)));
        assert!(matches!(h1_cyclic_oracle(&m), Err(Error::NotCyclic)));
        // Hom(S3, Z/2) = Z/2
        let m = Arc::new(GModule::trivial(m.group().clone(), Arc::new(FgAbGroup::cyclic(2))));
        assert_eq!(h1(&m).invariant_factors(), ints(&[2]));
    }

    #[test]
    fn class_round_trip() {
        let z2 = module(2, FgAbGroup::cyclic(2), &[vec![1]]);
        let a = Cocycle1::new(z2.clone(), vec![ints(&[0]), ints(&[1])]).unwrap();
        let c = a.class();
        assert!(!c.is_zero());
        assert!(c.add(&c).unwrap().is_zero());
        let back = CohClass::from_coords(z2.clone(), c.coords());
        assert_eq!(back, c);
        assert_eq!(c.order(), Some(int(2)));
    }

    #[test]
    fn tabulated_oracle_matches_presented() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let z6: Arc<dyn FiniteAbelian> = Arc::new(AdditionTable::cyclic(6));
        let neg: Vec<u32> = (0..6).map(|k| ((6 - k) % 6) as u32).collect();
        let t = TabulatedModule::from_generators(g.clone(), z6, &[neg]).unwrap();
        let p = module(2, FgAbGroup::cyclic(6), &[vec![-1]]);
        assert_eq!(
            h1_tabulated(&t).unwrap().invariant_factors(),
            h1(&p).invariant_factors()
        );
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let t3 = TabulatedModule::new(s3, Arc::new(AdditionTable::cyclic(2)), vec![vec![0, 1]; 6]).unwrap();
        assert!(matches!(h1_tabulated(&t3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn restriction_to_subgroup() {
        let z2 = module(4, FgAbGroup::cyclic(2), &[vec![1]]);
        let a = Cocycle1::from_generators(z2.clone(), &[ints(&[1])]).unwrap();
        let g = z2.group().clone();
        let h = g.generated_subgroup(&[g.pow(g.generators()[0], 2)]);
        let r = a.restrict(&h).unwrap();
        assert!(is_cocycle(r.module(), r.values()));
        // the homomorphism Z/4 -> Z/2 vanishes on 2Z/4
        assert!(r.is_zero());
        let trivial = g.generated_subgroup(&[]);
        assert!(a.restrict(&trivial).unwrap().is_zero());
    }
}
