//! Cycle models: families of classes over a G-set, the cocycle they induce,
//! and the operations on them.

use std::sync::Arc;

use crate::cohom::{conjugate_cocycle, Cocycle1, CohClass};
use crate::error::{Error, Result};
use crate::fgab::{ints, vec_add, vec_neg, vec_sub, FgAbGroup, Int, IntMatrix};
use crate::gmod::{pointmap_violation, EquivariantHom, FiniteGroup, GModule, GSet, SubModule, Subgroup};
use crate::torsor::{InducedObject, TwistedModule};

/// The data of a family of classes `t -> g(t)` in an ambient module `M'`,
/// a submodule `M'_0` holding the differences within each component, and an
/// equivariant map `phi: M'_0 -> A`.
#[derive(Clone, Debug)]
pub struct CycleModel {
    points: GSet,
    ambient: Arc<GModule>,
    pointmap: Vec<Vec<Int>>,
    triv: SubModule,
    target: Arc<GModule>,
    phi: EquivariantHom,
    labels: Vec<usize>,
    components: GSet,
    /// `phi(g(t) - g(r))` where `r` is the least point of the component of `t`.
    anchored: Vec<Vec<Int>>,
}

impl CycleModel {
    /// `triv_gens` are the generating columns of `M'_0` in `M'`; `phi` is the
    /// matrix of the map on those generators; `labels[t]` names the
    /// component of `t`.
    pub fn new(
        points: GSet,
        ambient: Arc<GModule>,
        pointmap: Vec<Vec<Int>>,
        triv_gens: &IntMatrix,
        target: Arc<GModule>,
        phi: IntMatrix,
        labels: Vec<usize>,
    ) -> Result<Self> {
        if **points.group() != **ambient.group() || **ambient.group() != **target.group() {
            return Err(Error::ModuleMismatch);
        }
        if pointmap.len() != points.size() || pointmap.iter().any(|v| v.len() != ambient.rank()) {
            return Err(Error::Dimension("one ambient element per point required".into()));
        }
        let pointmap: Vec<Vec<Int>> = pointmap.iter().map(|v| ambient.base().reduce(v)).collect();
        if let Some((t, s)) = pointmap_violation(&points, &ambient, &pointmap) {
            return Err(Error::NotEquivariant(format!("g(t^s) != g(t)^s for t={t}, s={s}")));
        }
        let components = points.quotient(&labels)?;
        let triv = ambient.submodule(triv_gens)?;
        let phi = EquivariantHom::new(triv.module.clone(), target.clone(), phi)?;
        let mut anchor = vec![None; components.size()];
        for (t, &c) in labels.iter().enumerate() {
            anchor[c].get_or_insert(t);
        }
        let mut anchored = Vec::with_capacity(points.size());
        for (t, &c) in labels.iter().enumerate() {
            let r = anchor[c].expect("every label used");
            let diff = vec_sub(&pointmap[t], &pointmap[r]);
            let lift = triv.preimage(&diff).ok_or_else(|| {
                Error::Component(format!("g({t}) - g({r}) is not in the submodule of trivial classes"))
            })?;
            anchored.push(phi.apply(&lift));
        }
        Ok(CycleModel {
            points,
            ambient,
            pointmap,
            triv,
            target,
            phi,
            labels,
            components,
            anchored,
        })
    }

    /// A model with a single component.
    pub fn connected(
        points: GSet,
        ambient: Arc<GModule>,
        pointmap: Vec<Vec<Int>>,
        triv_gens: &IntMatrix,
        target: Arc<GModule>,
        phi: IntMatrix,
    ) -> Result<Self> {
        let labels = vec![0; points.size()];
        Self::new(points, ambient, pointmap, triv_gens, target, phi, labels)
    }

    /// Two points swapped by `Z/2`, `M' = Z` with negation, `g = (k, -k)`,
    /// `M'_0 = 2kZ`, `A = Z/2` with trivial action and `phi(2k) = 1`.
    pub fn swap_example(k: i64) -> Self {
        assert!(k != 0, "scale must be nonzero");
        let g = Arc::new(FiniteGroup::cyclic(2).expect("order 2"));
        let points = GSet::from_generator_images(g.clone(), 2, &[vec![1, 0]]).expect("swap");
        let ambient = Arc::new(
            GModule::from_generators(
                g.clone(),
                Arc::new(FgAbGroup::free(1)),
                &[IntMatrix::from_rows(&[vec![-1]])],
            )
            .expect("negation"),
        );
        let target = Arc::new(GModule::trivial(g, Arc::new(FgAbGroup::cyclic(2))));
        Self::connected(
            points,
            ambient,
            vec![ints(&[k]), ints(&[-k])],
            &IntMatrix::from_rows(&[vec![2 * k]]),
            target,
            IntMatrix::from_rows(&[vec![1]]),
        )
        .expect("valid model")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.points.group()
    }

    pub fn points(&self) -> &GSet {
        &self.points
    }

    pub fn ambient(&self) -> &Arc<GModule> {
        &self.ambient
    }

    pub fn pointmap(&self) -> &[Vec<Int>] {
        &self.pointmap
    }

    pub fn triv(&self) -> &SubModule {
        &self.triv
    }

    pub fn target(&self) -> &Arc<GModule> {
        &self.target
    }

    pub fn phi(&self) -> &EquivariantHom {
        &self.phi
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn components(&self) -> &GSet {
        &self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components.size() == 1
    }

    pub fn component_of(&self, t: usize) -> usize {
        self.labels[t]
    }

    pub fn component_points(&self, c: usize) -> Vec<usize> {
        (0..self.points.size()).filter(|&t| self.labels[t] == c).collect()
    }

    /// `f(t, u) = phi(g(t) - g(u))`, defined for points of one component.
    pub fn f(&self, t: usize, u: usize) -> Result<Vec<Int>> {
        if self.labels[t] != self.labels[u] {
            return Err(Error::Component(format!(
                "points {t} and {u} lie in different components"
            )));
        }
        Ok(self
            .target
            .base()
            .reduce(&vec_sub(&self.anchored[t], &self.anchored[u])))
    }

    /// `f` computed directly from the definition, without the cached anchors.
    pub fn f_direct(&self, t: usize, u: usize) -> Result<Vec<Int>> {
        if self.labels[t] != self.labels[u] {
            return Err(Error::Component(format!(
                "points {t} and {u} lie in different components"
            )));
        }
        let diff = vec_sub(&self.pointmap[t], &self.pointmap[u]);
        let lift = self
            .triv
            .preimage(&diff)
            .ok_or_else(|| Error::Component(format!("g({t}) - g({u}) is not a trivial class")))?;
        Ok(self.phi.apply(&lift))
    }

    /// The stabilizer of the component of `t0`.
    pub fn component_stabilizer(&self, t0: usize) -> Subgroup {
        self.components.stabilizer(self.labels[t0])
    }

    /// The module over the stabilizer of the component of `t0` in which the
    /// cocycle lives; the target itself when the stabilizer is everything.
    fn fiber_module(&self, h: &Subgroup) -> Arc<GModule> {
        if h.is_whole() {
            self.target.clone()
        } else {
            Arc::new(self.target.restrict(h))
        }
    }

    /// `a_s = f(t0^s, t0)` over the stabilizer `H` of the component of `t0`.
    pub fn build_cocycle(&self, t0: usize) -> Result<ComponentCocycle> {
        self.check_point(t0)?;
        let h = self.component_stabilizer(t0);
        let module = self.fiber_module(&h);
        let values = h
            .elements()
            .iter()
            .map(|&s| self.f(self.points.apply(t0, s), t0))
            .collect::<Result<Vec<_>>>()?;
        let cocycle = Cocycle1::new(module, values)?;
        Ok(ComponentCocycle { subgroup: h, cocycle })
    }

    /// The cocycle over the whole group; fails unless the component of `t0`
    /// is stable under every element.
    pub fn cocycle_over_group(&self, t0: usize) -> Result<Cocycle1> {
        self.check_point(t0)?;
        let c = self.labels[t0];
        if let Some(s) = self.group().elements().find(|&s| self.components.apply(c, s) != c) {
            return Err(Error::Component(format!(
                "element {s} moves the component of point {t0}"
            )));
        }
        Ok(self.build_cocycle(t0)?.cocycle)
    }

    fn check_point(&self, t: usize) -> Result<()> {
        if t >= self.points.size() {
            return Err(Error::Dimension(format!("no point {t}")));
        }
        Ok(())
    }

    /// The class of the component containing `t0`.
    pub fn torsor_class(&self, t0: usize) -> Result<CohClass> {
        Ok(self.build_cocycle(t0)?.cocycle.class())
    }

    /// Compares the cocycle at `t0` with the cocycle at every other point of
    /// its component: their difference must be the coboundary of
    /// `f(t0, t1)`. Returns the witnesses.
    pub fn basepoint_witnesses(&self, t0: usize) -> Result<Vec<(usize, Vec<Int>)>> {
        let alpha = self.build_cocycle(t0)?.cocycle;
        let mut out = Vec::new();
        for t1 in self.component_points(self.labels[t0]) {
            let beta = self.build_cocycle(t1)?.cocycle;
            let m = self.f(t0, t1)?;
            let expected = Cocycle1::coboundary_of(alpha.module().clone(), &m);
            if !alpha.sub(&beta)?.equals(&expected) {
                return Err(Error::Violation(format!(
                    "cocycles at points {t0} and {t1} do not differ by the coboundary of f({t0}, {t1})"
                )));
            }
            out.push((t1, m));
        }
        Ok(out)
    }

    /// `psi(t) = f(t, t0)` on the component of `t0`.
    pub fn descended_map(&self, t0: usize) -> Result<DescendedMap> {
        let cc = self.build_cocycle(t0)?;
        let values = (0..self.points.size())
            .map(|t| {
                if self.labels[t] == self.labels[t0] {
                    self.f(t, t0).map(Some)
                } else {
                    Ok(None)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DescendedMap {
            basepoint: t0,
            subgroup: cc.subgroup,
            target: TwistedModule::from_cocycle(cc.cocycle),
            values,
        })
    }

    /// `(t1, t2) -> (g1(t1), g2(t2))` in `M'_1 + M'_2`, with `phi = phi_1 + phi_2`.
    pub fn boxplus(&self, other: &CycleModel) -> Result<CycleModel> {
        if **self.group() != **other.group() {
            return Err(Error::ModuleMismatch);
        }
        if *self.target != *other.target {
            return Err(Error::ModuleMismatch);
        }
        let points = self.points.product(&other.points)?;
        let ambient = Arc::new(GModule::direct_sum(&[&self.ambient, &other.ambient])?);
        let m = other.points.size();
        let pointmap = (0..points.size())
            .map(|p| {
                let mut v = self.pointmap[p / m].clone();
                v.extend(other.pointmap[p % m].iter().cloned());
                v
            })
            .collect();
        let gens = IntMatrix::block_diagonal(&[self.triv.generators(), other.triv.generators()]);
        let phi = self.phi.matrix().hcat(other.phi.matrix())?;
        let k = other.components.size();
        let labels = (0..points.size())
            .map(|p| self.labels[p / m] * k + other.labels[p % m])
            .collect();
        CycleModel::new(points, ambient, pointmap, &gens, self.target.clone(), phi, labels)
    }

    /// The family `t -> -g(t)`.
    pub fn negate(&self) -> CycleModel {
        let mut out = self.clone();
        out.pointmap = self
            .pointmap
            .iter()
            .map(|v| self.ambient.base().reduce(&vec_neg(v)))
            .collect();
        out.anchored = self
            .anchored
            .iter()
            .map(|v| self.target.base().reduce(&vec_neg(v)))
            .collect();
        out
    }

    /// The family `(t_1, ..., t_d) -> g(t_1) + ... + g(t_d)` on `S^d`; point
    /// `(t_1, ..., t_d)` has index `sum t_i |S|^(d-i)`.
    pub fn sym_power(&self, d: usize) -> Result<CycleModel> {
        if d == 0 {
            return Err(Error::Precondition("symmetric power of degree 0".into()));
        }
        let mut points = self.points.clone();
        let mut pointmap = self.pointmap.clone();
        let mut labels = self.labels.clone();
        let n = self.points.size();
        let k = self.components.size();
        for _ in 1..d {
            points = points.product(&self.points)?;
            pointmap = (0..points.size())
                .map(|p| vec_add(&pointmap[p / n], &self.pointmap[p % n]))
                .collect();
            labels = (0..points.size())
                .map(|p| labels[p / n] * k + self.labels[p % n])
                .collect();
        }
        CycleModel::new(
            points,
            self.ambient.clone(),
            pointmap,
            self.triv.generators(),
            self.target.clone(),
            self.phi.matrix().clone(),
            labels,
        )
    }

    /// The descent datum for a model whose components are permuted
    /// transitively, with representatives of `H\G` chosen canonically.
    pub fn disconnected_descent(&self, t0: usize) -> Result<Descent> {
        self.check_point(t0)?;
        let h = self.component_stabilizer(t0);
        let reps = h.right_coset_reps();
        self.disconnected_descent_with_reps(t0, &reps)
    }

    /// As [`Self::disconnected_descent`] with explicit representatives, one
    /// per right coset of the stabilizer, in any order.
    pub fn disconnected_descent_with_reps(&self, t0: usize, reps: &[usize]) -> Result<Descent> {
        self.check_point(t0)?;
        if !self.components.is_transitive() {
            return Err(Error::Component("components are not permuted transitively".into()));
        }
        let g = self.group().clone();
        let h = self.component_stabilizer(t0);
        let mut which = vec![None; h.index()];
        for (r, &rho) in reps.iter().enumerate() {
            let c = h.coset_index(rho);
            if which[c].replace(r).is_some() {
                return Err(Error::Precondition(format!("two representatives for coset {c}")));
            }
        }
        let which: Vec<usize> = which
            .into_iter()
            .map(|w| w.ok_or_else(|| Error::Precondition("a coset has no representative".into())))
            .collect::<Result<_>>()?;
        let basepoints: Vec<usize> = reps.iter().map(|&rho| self.points.apply(t0, rho)).collect();
        let component_rep: Vec<(usize, usize)> = basepoints
            .iter()
            .enumerate()
            .map(|(r, &t)| (self.labels[t], r))
            .collect();
        let rep_of_component = |c: usize| component_rep.iter().find(|(cc, _)| *cc == c).map(|&(_, r)| r);
        let mut transport = Vec::with_capacity(reps.len());
        for (r, &rho) in reps.iter().enumerate() {
            let mut row = Vec::with_capacity(g.order());
            for s in g.elements() {
                let r2 = which[h.coset_index(g.mul(rho, s))];
                // t_rho^s lies in the component of t_rho2, so f is defined here
                let moved = self.points.apply(basepoints[r], s);
                row.push((r2, self.f(moved, basepoints[r2])?));
            }
            transport.push(row);
        }
        let psi = (0..self.points.size())
            .map(|t| {
                let r = rep_of_component(self.labels[t])
                    .ok_or_else(|| Error::Component(format!("point {t} is in no translate of the base component")))?;
                Ok((r, self.f(t, basepoints[r])?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Descent {
            induced: InducedObject {
                subgroup: h,
                reps: reps.to_vec(),
                basepoints,
                fiber: self.target.clone(),
                transport,
            },
            psi,
            basepoint: t0,
        })
    }
}

/// A cocycle over the stabilizer of a component.
#[derive(Clone, Debug)]
pub struct ComponentCocycle {
    pub subgroup: Subgroup,
    pub cocycle: Cocycle1,
}

/// `psi(t) = f(t, t0)` with values in the twisted module of the cocycle at `t0`.
#[derive(Clone, Debug)]
pub struct DescendedMap {
    pub basepoint: usize,
    pub subgroup: Subgroup,
    pub target: TwistedModule,
    /// `None` outside the component of the basepoint.
    pub values: Vec<Option<Vec<Int>>>,
}

impl DescendedMap {
    /// First `(t, s)` with `psi(t^s) != a_s + psi(t)^s`, over the stabilizer.
    pub fn equivariance_violation(&self, points: &GSet) -> Option<(usize, usize)> {
        let base = self.target.module().base();
        for (t, v) in self.values.iter().enumerate() {
            let Some(v) = v else { continue };
            for (local, &s) in self.subgroup.elements().iter().enumerate() {
                let lhs = match &self.values[points.apply(t, s)] {
                    Some(w) => w,
                    None => return Some((t, s)),
                };
                if !base.eq_vec(lhs, &self.target.act(v, local)) {
                    return Some((t, s));
                }
            }
        }
        None
    }
}

/// The descent datum of a model with several components.
#[derive(Clone, Debug)]
pub struct Descent {
    pub induced: InducedObject,
    /// `Psi(t) = (r, f(t, t_r))`.
    pub psi: Vec<(usize, Vec<Int>)>,
    pub basepoint: usize,
}

impl Descent {
    /// First `(t, s)` with `Psi(t^s) != Psi(t)^s`.
    pub fn equivariance_violation(&self, points: &GSet) -> Option<(usize, usize)> {
        let base = self.induced.fiber.base();
        for t in 0..points.size() {
            for s in points.group().elements() {
                let lhs = &self.psi[points.apply(t, s)];
                let rhs = self.induced.act(&self.psi[t], s);
                if lhs.0 != rhs.0 || !base.eq_vec(&lhs.1, &rhs.1) {
                    return Some((t, s));
                }
            }
        }
        None
    }
}

/// Verifies for every `tau` that the cocycle built at `t0^tau` equals the
/// conjugate by `tau` of the cocycle at `t0`, value by value and as classes.
pub fn conjugation_consistency(model: &CycleModel, t0: usize) -> Result<()> {
    let base = model.build_cocycle(t0)?;
    for tau in model.group().elements() {
        let (conj, conjugated) = conjugate_cocycle(model.target(), &base.subgroup, &base.cocycle, tau)?;
        let pulled = model.build_cocycle(model.points().apply(t0, tau))?;
        if pulled.subgroup != conj {
            return Err(Error::Violation(format!(
                "stabilizer of the translated component differs from the conjugate subgroup for tau={tau}"
            )));
        }
        let pulled_cocycle = Cocycle1::new(conjugated.module().clone(), pulled.cocycle.values().to_vec())?;
        if !pulled_cocycle.equals(&conjugated) {
            return Err(Error::Violation(format!(
                "conjugated cocycle differs from the cocycle at the translated basepoint for tau={tau}"
            )));
        }
        if conjugated.class() != pulled_cocycle.class() {
            return Err(Error::Violation(format!("classes differ for tau={tau}")));
        }
    }
    Ok(())
}

/// Given `g1(t1) - g2(t2) ∈ M'_0` with `phi` of it zero, shows the two
/// models define the same class, via `class(s1) - class(s2) = class(s1 ⊞ -s2)`.
pub fn equivalent_fibers_imply_isomorphic(
    s1: &CycleModel,
    s2: &CycleModel,
    t1: usize,
    t2: usize,
) -> Result<FiberComparison> {
    if *s1.ambient != *s2.ambient
        || *s1.target != *s2.target
        || s1.triv.generators() != s2.triv.generators()
        || s1.phi.matrix() != s2.phi.matrix()
    {
        return Err(Error::Precondition("models do not share M', M'_0 and phi".into()));
    }
    let diff = vec_sub(&s1.pointmap[t1], &s2.pointmap[t2]);
    let lift = s1
        .triv
        .preimage(&diff)
        .ok_or_else(|| Error::Precondition(format!("g1({t1}) - g2({t2}) is not a trivial class")))?;
    if !s1.target.base().is_zero_vec(&s1.phi.apply(&lift)) {
        return Err(Error::Precondition(format!("phi(g1({t1}) - g2({t2})) is not zero")));
    }
    let c1 = s1.build_cocycle(t1)?;
    let c2 = s2.build_cocycle(t2)?;
    if c1.subgroup != c2.subgroup {
        return Err(Error::Precondition(
            "the fibers lie over components with different stabilizers".into(),
        ));
    }
    let difference = s1.boxplus(&s2.negate())?;
    let t = t1 * s2.points.size() + t2;
    let difference_class = difference.torsor_class(t)?;
    let class1 = c1.cocycle.class();
    let class2 = c2.cocycle.class();
    let witness = TwistedModule::from_cocycle(c1.cocycle.clone());
    let translation = crate::torsor::torsors_isomorphic(&witness, &TwistedModule::from_cocycle(c2.cocycle.clone()))?;
    Ok(FiberComparison {
        isomorphic: class1 == class2,
        difference_is_zero: difference_class.is_zero(),
        translation,
    })
}

#[derive(Clone, Debug)]
pub struct FiberComparison {
    pub isomorphic: bool,
    pub difference_is_zero: bool,
    pub translation: Option<Vec<Int>>,
}
