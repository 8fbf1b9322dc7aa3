use std::collections::VecDeque;
use std::sync::Arc;

use super::group::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// A finite set with a right action: `act[s][t]` is `t^s`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    size: usize,
    act: Vec<Vec<usize>>,
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n && p.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

impl GSet {
    /// Validates a full action table.
    pub fn new(group: Arc<FiniteGroup>, size: usize, act: Vec<Vec<usize>>) -> Result<Self> {
        if act.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "{} permutations for a group of order {}",
                act.len(),
                group.order()
            )));
        }
        if let Some(s) = act.iter().position(|p| !is_permutation(p, size)) {
            return Err(Error::InvalidAction(format!(
                "image of element {s} is not a permutation"
            )));
        }
        let set = GSet { group, size, act };
        set.check_action_law()?;
        Ok(set)
    }

    /// Extends permutations given for `group.generators()` to the whole group.
    pub fn from_generator_images(group: Arc<FiniteGroup>, size: usize, images: &[Vec<usize>]) -> Result<Self> {
        let gens = group.generators().to_vec();
        if images.len() != gens.len() {
            return Err(Error::InvalidAction(format!(
                "{} generator images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        if let Some(i) = images.iter().position(|p| !is_permutation(p, size)) {
            return Err(Error::InvalidAction(format!(
                "image of generator {i} is not a permutation"
            )));
        }
        let mut act: Vec<Option<Vec<usize>>> = vec![None; group.order()];
        act[group.identity()] = Some((0..size).collect());
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(g) = queue.pop_front() {
            let cur = act[g].clone().expect("visited");
            for (&s, perm) in gens.iter().zip(images) {
                let gs = group.mul(g, s);
                let next: Vec<usize> = cur.iter().map(|&t| perm[t]).collect();
                match &act[gs] {
                    Some(existing) if *existing != next => {
                        return Err(Error::InvalidAction(format!(
                            "composition law violated at element {gs}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        act[gs] = Some(next);
                        queue.push_back(gs);
                    }
                }
            }
        }
        let act: Vec<Vec<usize>> = act
            .into_iter()
            .map(|p| p.ok_or_else(|| Error::InvalidAction("generators do not reach every element".into())))
            .collect::<Result<_>>()?;
        Self::new(group, size, act)
    }

    pub fn trivial(group: Arc<FiniteGroup>, size: usize) -> Self {
        let act = vec![(0..size).collect(); group.order()];
        GSet { group, size, act }
    }

    /// Right cosets `H\G` with `(Hx)^s = Hxs`, indexed as in `h.right_cosets()`.
    pub fn coset_space(h: &Subgroup) -> Self {
        let g = h.parent().clone();
        let cosets = h.right_cosets();
        let mut which = vec![0; g.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                which[x] = i;
            }
        }
        let act = (0..g.order())
            .map(|s| cosets.iter().map(|c| which[g.mul(c[0], s)]).collect())
            .collect();
        GSet {
            size: cosets.len(),
            group: g,
            act,
        }
    }

    /// Disjoint union; points of `other` are shifted by `self.size()`.
    pub fn disjoint_union(&self, other: &GSet) -> Result<Self> {
        self.same_group(other)?;
        let act = self
            .act
            .iter()
            .zip(&other.act)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&x| x + self.size)).collect())
            .collect();
        Ok(GSet {
            group: self.group.clone(),
            size: self.size + other.size,
            act,
        })
    }

    /// Product with the diagonal action; `(i, j)` is point `i * other.size() + j`.
    pub fn product(&self, other: &GSet) -> Result<Self> {
        self.same_group(other)?;
        let m = other.size;
        let act = self
            .act
            .iter()
            .zip(&other.act)
            .map(|(a, b)| (0..self.size * m).map(|p| a[p / m] * m + b[p % m]).collect())
            .collect();
        Ok(GSet {
            group: self.group.clone(),
            size: self.size * m,
            act,
        })
    }

    fn same_group(&self, other: &GSet) -> Result<()> {
        if *self.group != *other.group {
            return Err(Error::InvalidAction("G-sets over different groups".into()));
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn apply(&self, t: usize, s: usize) -> usize {
        self.act[s][t]
    }

    pub fn permutation(&self, s: usize) -> &[usize] {
        &self.act[s]
    }

    /// First `(s, t, point)` at which `x^(st) = (x^s)^t` fails, if any.
    pub fn first_law_violation(&self) -> Option<(usize, usize, usize)> {
        let g = &self.group;
        if self.act[g.identity()].iter().enumerate().any(|(i, &x)| i != x) {
            return Some((g.identity(), g.identity(), 0));
        }
        for s in g.elements() {
            for t in g.elements() {
                let st = g.mul(s, t);
                for x in 0..self.size {
                    if self.act[st][x] != self.act[t][self.act[s][x]] {
                        return Some((s, t, x));
                    }
                }
            }
        }
        None
    }

    fn check_action_law(&self) -> Result<()> {
        match self.first_law_violation() {
            None => Ok(()),
            Some((s, t, x)) => Err(Error::InvalidAction(format!(
                "point {x}: x^(st) != (x^s)^t for s={s}, t={t}"
            ))),
        }
    }

    pub fn orbit(&self, t: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.group.elements().map(|s| self.apply(t, s)).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// Orbits, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for t in 0..self.size {
            if !seen[t] {
                let o = self.orbit(t);
                for &x in &o {
                    seen[x] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.size > 0 && self.orbit(0).len() == self.size
    }

    pub fn stabilizer(&self, t: usize) -> Subgroup {
        let elems: Vec<usize> = self.group.elements().filter(|&s| self.apply(t, s) == t).collect();
        Subgroup::new(&self.group, &elems).expect("stabilizers are subgroups")
    }

    /// Setwise stabilizer of a subset of points.
    pub fn set_stabilizer(&self, points: &[usize]) -> Subgroup {
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        let elems: Vec<usize> = self
            .group
            .elements()
            .filter(|&s| {
                let mut img: Vec<usize> = sorted.iter().map(|&x| self.apply(x, s)).collect();
                img.sort_unstable();
                img == sorted
            })
            .collect();
        Subgroup::new(&self.group, &elems).expect("set stabilizers are subgroups")
    }

    /// For each point `u` of the orbit of `t`, the least `s` with `t^s = u`.
    pub fn transversal(&self, t: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; self.size];
        for s in self.group.elements() {
            let u = self.apply(t, s);
            if out[u].is_none() {
                out[u] = Some(s);
            }
        }
        out
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&t| self.group.elements().all(|s| self.apply(t, s) == t))
            .collect()
    }

    /// The G-set induced on labels by a labelling `c` of the points, if the
    /// labelling is compatible with the action (`c(t) = c(u)` implies
    /// `c(t^s) = c(u^s)`). Labels must be `0..k` and all used.
    pub fn quotient(&self, labels: &[usize]) -> Result<GSet> {
        if labels.len() != self.size {
            return Err(Error::Component("one label per point required".into()));
        }
        let k = labels.iter().max().map_or(0, |m| m + 1);
        let mut rep = vec![None; k];
        for (t, &c) in labels.iter().enumerate() {
            rep[c].get_or_insert(t);
        }
        if rep.iter().any(Option::is_none) {
            return Err(Error::Component("labels must be 0..k without gaps".into()));
        }
        let mut act = vec![vec![0; k]; self.group.order()];
        for s in self.group.elements() {
            for t in 0..self.size {
                let c = labels[t];
                let img = labels[self.apply(t, s)];
                let expected = labels[self.apply(rep[c].expect("checked"), s)];
                if img != expected {
                    return Err(Error::Component(format!(
                        "labelling is not preserved by element {s} at point {t}"
                    )));
                }
                act[s][c] = img;
            }
        }
        GSet::new(self.group.clone(), k, act)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_action() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let s = GSet::trivial(g.clone(), 4);
        assert_eq!(s.orbits().len(), 4);
        assert_eq!(s.stabilizer(2).order(), 3);
        assert_eq!(s.fixed_points().len(), 4);
    }

    #[test]
    fn swap_of_two_points() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let s = GSet::from_generator_images(g, 2, &[vec![1, 0]]).unwrap();
        assert_eq!(s.orbits(), vec![vec![0, 1]]);
        assert_eq!(s.stabilizer(0).order(), 1);
        assert!(s.is_transitive());
    }

    #[test]
    fn s3_on_three_points() {
        let (s3, _) = FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![0, 2, 1]]).unwrap();
        let s3 = Arc::new(s3);
        let gens = s3.generators().to_vec();
        // the group was built from these permutations; recover their images
        let perms = [vec![1, 0, 2], vec![0, 2, 1]];
        let set = GSet::from_generator_images(s3.clone(), 3, &perms[..gens.len()]).unwrap();
        let stab = set.stabilizer(0);
        assert_eq!(stab.order(), 2);
        assert_eq!(stab.right_coset_reps().len(), 3);
        assert_eq!(set.orbit(0).len() * stab.order(), s3.order());
    }

    #[test]
    fn inconsistent_generator_images_rejected() {
        // the generator of Z/3 cannot act as a transposition
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        assert!(GSet::from_generator_images(g, 2, &[vec![1, 0]]).is_err());
    }

    #[test]
    fn coset_space_is_transitive() {
        let d4 = Arc::new(FiniteGroup::dihedral(4).unwrap());
        for h in d4.all_subgroups() {
            let s = GSet::coset_space(&h);
            assert!(s.is_transitive());
            assert_eq!(s.size(), h.index());
            assert_eq!(s.stabilizer(0), h);
            assert!(s.first_law_violation().is_none());
        }
    }

    #[test]
    fn quotient_by_labels() {
        let g = Arc::new(FiniteGroup::cyclic(4).unwrap());
        let s = GSet::coset_space(&g.generated_subgroup(&[]));
        // points 0..4 = powers; label by parity
        let labels: Vec<usize> = (0..4).map(|t| t % 2).collect();
        let c = s.quotient(&labels).unwrap();
        assert_eq!(c.size(), 2);
        assert!(c.is_transitive());
        assert!(s.quotient(&[0, 0, 1, 1]).is_err());
    }
}
