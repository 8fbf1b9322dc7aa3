//! Twisted modules, Weil–Châtelet arithmetic and induced objects.

use std::sync::Arc;

use crate::cohom::{conjugate_cocycle, Cocycle1, CohClass};
use crate::error::{Error, Result};
use crate::fgab::{int, vec_add, Int};
use crate::gmod::{GModule, Subgroup};

/// Largest module enumerated by the exhaustive cross-checks.
pub const EXHAUSTIVE_LIMIT: usize = 1000;

/// Points on which an affine identity is checked: `0`, the ambient basis
/// vectors, and every element when the module has at most `limit` elements.
pub fn check_points(module: &GModule, limit: usize) -> Vec<Vec<Int>> {
    let base = module.base();
    if let Some(order) = base.order() {
        if order <= Int::from(limit) {
            return base.elements().expect("finite");
        }
    }
    let mut out = vec![base.zero_vec()];
    for i in 0..base.rank() {
        let mut e = base.zero_vec();
        e[i] = int(1);
        out.push(e);
    }
    out
}

/// A module with the action `b -> beta_s + b^s`.
#[derive(Clone, Debug)]
pub struct TwistedModule {
    twist: Cocycle1,
}

impl TwistedModule {
    pub fn new(module: Arc<GModule>, values: Vec<Vec<Int>>) -> Result<Self> {
        Ok(TwistedModule {
            twist: Cocycle1::new(module, values)?,
        })
    }

    pub fn from_cocycle(twist: Cocycle1) -> Self {
        TwistedModule { twist }
    }

    pub fn module(&self) -> &Arc<GModule> {
        self.twist.module()
    }

    pub fn twist(&self) -> &Cocycle1 {
        &self.twist
    }

    pub fn act(&self, b: &[Int], s: usize) -> Vec<Int> {
        let m = self.module();
        m.base().add_vec(self.twist.value(s), &m.act(b, s))
    }

    /// First `(s, t, b)` with `(b^s~)^t~ != b^(st)~`, over the given points.
    pub fn composition_violation(&self, points: &[Vec<Int>]) -> Option<(usize, usize, Vec<Int>)> {
        let g = self.module().group();
        let base = self.module().base();
        for b in points {
            for s in g.elements() {
                let bs = self.act(b, s);
                for t in g.elements() {
                    if !base.eq_vec(&self.act(&bs, t), &self.act(b, g.mul(s, t))) {
                        return Some((s, t, b.clone()));
                    }
                }
            }
        }
        None
    }

    /// A point fixed by the twisted action, found by solving for a
    /// coboundary witness `m` of the twist and returning `-m`.
    pub fn fixed_point(&self) -> Option<Vec<Int>> {
        self.twist
            .coboundary_witness()
            .map(|m| self.module().base().neg_vec(&m))
    }

    /// A fixed point found by enumerating the module, if it is small enough.
    pub fn fixed_point_exhaustive(&self) -> Result<Option<Vec<Int>>> {
        let base = self.module().base();
        match base.order() {
            Some(order) if order <= Int::from(EXHAUSTIVE_LIMIT) => {}
            _ => return Err(Error::Unsupported("module too large to enumerate".into())),
        }
        let g = self.module().group();
        Ok(base
            .elements()?
            .into_iter()
            .find(|b| g.elements().all(|s| base.eq_vec(&self.act(b, s), b))))
    }

    pub fn is_trivial(&self) -> bool {
        self.fixed_point().is_some()
    }

    pub fn is_fixed(&self, b: &[Int]) -> bool {
        let base = self.module().base();
        self.module()
            .group()
            .elements()
            .all(|s| base.eq_vec(&self.act(b, s), b))
    }

    pub fn class(&self) -> CohClass {
        self.twist.class()
    }
}

/// A translation `c` such that `b -> b + c` carries the action of `t1` to that
/// of `t2`, if the torsors are isomorphic.
pub fn torsors_isomorphic(t1: &TwistedModule, t2: &TwistedModule) -> Result<Option<Vec<Int>>> {
    let diff = t1.twist.sub(&t2.twist)?;
    Ok(diff.coboundary_witness())
}

/// Checks that translation by `c` is an isomorphism `t1 -> t2` on the given points.
pub fn translation_violation(
    t1: &TwistedModule,
    t2: &TwistedModule,
    c: &[Int],
    points: &[Vec<Int>],
) -> Option<(usize, Vec<Int>)> {
    let base = t1.module().base();
    for b in points {
        for s in t1.module().group().elements() {
            let lhs = vec_add(&t1.act(b, s), c);
            let rhs = t2.act(&vec_add(b, c), s);
            if !base.eq_vec(&lhs, &rhs) {
                return Some((s, b.clone()));
            }
        }
    }
    None
}

pub fn wc_add(c1: &CohClass, c2: &CohClass) -> Result<CohClass> {
    c1.add(c2)
}

/// `(b^s~)^tau = (b^tau)^(s'~)` with `s' = tau^-1 s tau`, the right side
/// twisted by the conjugate cocycle. Returns the first failing `(s, b)`.
pub fn conjugation_intertwining_violation(
    full: &GModule,
    h: &Subgroup,
    beta: &Cocycle1,
    tau: usize,
    points: &[Vec<Int>],
) -> Result<Option<(usize, Vec<Int>)>> {
    let (conj, beta_tau) = conjugate_cocycle(full, h, beta, tau)?;
    let g = full.group();
    let base = full.base();
    let original = TwistedModule::from_cocycle(beta.clone());
    let pulled = TwistedModule::from_cocycle(beta_tau);
    for b in points {
        for (local, &s) in h.elements().iter().enumerate() {
            let lhs = full.act(&original.act(b, local), tau);
            let s_prime = g.mul(g.mul(g.inv(tau), s), tau);
            let local_prime = conj.local_index(s_prime).expect("conjugate subgroup");
            let rhs = pulled.act(&full.act(b, tau), local_prime);
            if !base.eq_vec(&lhs, &rhs) {
                return Ok(Some((s, b.clone())));
            }
        }
    }
    Ok(None)
}

/// `R x A` with `(rho, m)^s = (rho', c(rho, s) + m^s)`, where `rho'`
/// represents the coset of `rho s`.
#[derive(Clone, Debug)]
pub struct InducedObject {
    /// Stabilizer of the distinguished component.
    pub subgroup: Subgroup,
    /// Right coset representatives of `subgroup`, identity first.
    pub reps: Vec<usize>,
    /// One anchor point per representative.
    pub basepoints: Vec<usize>,
    pub fiber: Arc<GModule>,
    /// `transport[r][s] = (r', c(r, s))`.
    pub transport: Vec<Vec<(usize, Vec<Int>)>>,
}

impl InducedObject {
    pub fn act(&self, state: &(usize, Vec<Int>), s: usize) -> (usize, Vec<Int>) {
        let (r, m) = state;
        let (r2, c) = &self.transport[*r][s];
        (*r2, self.fiber.base().add_vec(c, &self.fiber.act(m, s)))
    }

    fn same_state(&self, a: &(usize, Vec<Int>), b: &(usize, Vec<Int>)) -> bool {
        a.0 == b.0 && self.fiber.base().eq_vec(&a.1, &b.1)
    }

    /// First `(s, t, state)` violating `((r, m)^s)^t = (r, m)^(st)`; every
    /// representative is combined with every fiber point given.
    pub fn action_law_violation(&self, fiber_points: &[Vec<Int>]) -> Option<(usize, usize, (usize, Vec<Int>))> {
        let g = self.fiber.group();
        for r in 0..self.reps.len() {
            for m in fiber_points {
                let state = (r, m.clone());
                for s in g.elements() {
                    let once = self.act(&state, s);
                    for t in g.elements() {
                        if !self.same_state(&self.act(&once, t), &self.act(&state, g.mul(s, t))) {
                            return Some((s, t, state));
                        }
                    }
                }
            }
        }
        None
    }

    /// Checks that `s` permutes representatives as it permutes cosets.
    pub fn coset_permutation_violation(&self) -> Option<(usize, usize)> {
        let g = self.fiber.group();
        for (r, &rho) in self.reps.iter().enumerate() {
            for s in g.elements() {
                let target = self.transport[r][s].0;
                if self.subgroup.coset_index(g.mul(rho, s)) != self.subgroup.coset_index(self.reps[target]) {
                    return Some((r, s));
                }
            }
        }
        None
    }

    /// The cocycle over the subgroup read off the identity component.
    pub fn restricted_cocycle(&self) -> Result<Cocycle1> {
        if self.reps.first().copied() != Some(self.fiber.group().identity()) {
            return Err(Error::Precondition("first representative must be the identity".into()));
        }
        let module = Arc::new(self.fiber.restrict(&self.subgroup));
        let values = self
            .subgroup
            .elements()
            .iter()
            .map(|&s| {
                let (r2, c) = &self.transport[0][s];
                debug_assert_eq!(*r2, 0);
                c.clone()
            })
            .collect();
        Cocycle1::new(module, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::{ints, FgAbGroup, IntMatrix};
    use crate::gmod::FiniteGroup;

    fn z2_trivial() -> Arc<GModule> {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        Arc::new(GModule::trivial(g, Arc::new(FgAbGroup::cyclic(2))))
    }

    #[test]
    fn untwisted_is_ordinary_action() {
        let m = z2_trivial();
        let t = TwistedModule::from_cocycle(Cocycle1::zero(m.clone()));
        assert_eq!(t.act(&ints(&[1]), 1), ints(&[1]));
        assert_eq!(t.fixed_point(), Some(ints(&[0])));
    }

    #[test]
    fn nontrivial_twist_has_no_fixed_point() {
        let m = z2_trivial();
        let t = TwistedModule::new(m.clone(), vec![ints(&[0]), ints(&[1])]).unwrap();
        assert_eq!(t.act(&ints(&[0]), 1), ints(&[1]));
        assert_eq!(t.fixed_point(), None);
        assert_eq!(t.fixed_point_exhaustive().unwrap(), None);
        assert_eq!(t.composition_violation(&check_points(&m, 64)), None);
        let untwisted = TwistedModule::from_cocycle(Cocycle1::zero(m));
        assert_eq!(torsors_isomorphic(&t, &untwisted).unwrap(), None);
        let c = t.class();
        assert!(wc_add(&c, &c).unwrap().is_zero());
    }

    #[test]
    fn coboundary_twist_is_fixed_at_minus_witness() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let m = Arc::new(
            GModule::from_generators(
                g,
                Arc::new(FgAbGroup::free(2)),
                &[IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]])],
            )
            .unwrap(),
        );
        let w = ints(&[2, -5]);
        let t = TwistedModule::from_cocycle(Cocycle1::coboundary_of(m.clone(), &w));
        let b = t.fixed_point().unwrap();
        assert!(t.is_fixed(&b));
        assert!(t.is_fixed(&ints(&[-2, 5])));
        let other = TwistedModule::from_cocycle(Cocycle1::zero(m.clone()));
        let c = torsors_isomorphic(&other, &t).unwrap().unwrap();
        assert_eq!(translation_violation(&other, &t, &c, &check_points(&m, 0)), None);
    }
}
