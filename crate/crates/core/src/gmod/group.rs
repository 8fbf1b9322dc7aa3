use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite group given by its multiplication table.
///
/// Products are read left to right: `mul(s, t)` is "first `s`, then `t`",
/// which matches right actions `x^(st) = (x^s)^t`.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
    generators: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.identity == other.identity && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {}, generators {:?})", self.order, self.generators)
    }
}

const MAX_PERMUTATION_GROUP: usize = 100_000;

impl FiniteGroup {
    /// Cyclic group; element `k` is the `k`-th power of the generator `1`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let inv = (0..n).map(|a| (n - a) % n).collect();
        Ok(FiniteGroup {
            order: n,
            mul,
            identity: 0,
            inv,
            generators: if n > 1 { vec![1] } else { vec![] },
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("order 1")
    }

    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not an n x n array over 0..n".into()));
        }
        let mul: Vec<usize> = table.iter().flatten().copied().collect();
        let m = |a: usize, b: usize| mul[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inv = vec![0; n];
        for (a, slot) in inv.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut g = FiniteGroup {
            order: n,
            mul,
            identity,
            inv,
            generators: Vec::new(),
        };
        g.generators = g.greedy_generators();
        Ok(g)
    }

    /// The group generated by permutations of `0..degree`, composed left to
    /// right. Returns the group and the element indices of the generators.
    /// Element 0 is the identity.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<(Self, Vec<usize>)> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidGroup(format!(
                    "{g:?} is not a permutation of 0..{degree}"
                )));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for g in gens {
                let prod: Vec<usize> = elems[e].iter().map(|&p| g[p]).collect();
                if !index.contains_key(&prod) {
                    if elems.len() >= MAX_PERMUTATION_GROUP {
                        return Err(Error::InvalidGroup("permutation group too large".into()));
                    }
                    index.insert(prod.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(prod);
                }
            }
        }
        let n = elems.len();
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = elems[a].iter().map(|&p| elems[b][p]).collect();
                mul[a * n + b] = index[&prod];
            }
        }
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mul[a * n + b] == 0).expect("finite group");
        }
        let gen_idx: Vec<usize> = gens.iter().map(|g| index[g]).collect();
        let mut group = FiniteGroup {
            order: n,
            mul,
            identity: 0,
            inv,
            generators: Vec::new(),
        };
        let mut declared: Vec<usize> = Vec::new();
        for &g in &gen_idx {
            if g != 0 && !declared.contains(&g) {
                declared.push(g);
            }
        }
        group.generators = declared;
        Ok((group, gen_idx))
    }

    /// Dihedral group of order `2n` as symmetries of an `n`-gon.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 2 {
            return Self::cyclic(2 * n.max(1));
        }
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Ok(Self::from_permutations(n, &[rot, refl])?.0)
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n < 2 {
            return Ok(Self::trivial());
        }
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        Ok(Self::from_permutations(n, &[cycle, swap])?.0)
    }

    /// Quaternion group of order 8, via its regular representation.
    pub fn quaternion() -> Self {
        // elements (sign, unit) with unit in {1, i, j, k}; index = 4 * (sign<0) + unit
        let unit_mul = |a: usize, b: usize| -> (bool, usize) {
            // returns (negate, unit)
            const T: [[(bool, usize); 4]; 4] = [
                [(false, 0), (false, 1), (false, 2), (false, 3)],
                [(false, 1), (true, 0), (false, 3), (true, 2)],
                [(false, 2), (true, 3), (true, 0), (false, 1)],
                [(false, 3), (false, 2), (true, 1), (true, 0)],
            ];
            T[a][b]
        };
        let table: Vec<Vec<usize>> = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (neg, u) = unit_mul(x % 4, y % 4);
                        let sign = (x >= 4) ^ (y >= 4) ^ neg;
                        u + if sign { 4 } else { 0 }
                    })
                    .collect()
            })
            .collect();
        Self::from_table(&table).expect("quaternion table is a group")
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (n, m) = (a.order, b.order);
        let table: Vec<Vec<usize>> = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        let mut g = Self::from_table(&table).expect("product of groups");
        let mut gens: Vec<usize> = a.generators.iter().map(|&s| s * m + b.identity).collect();
        gens.extend(b.generators.iter().map(|&t| a.identity * m + t));
        g.generators = gens;
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// A generating set (possibly empty for the trivial group).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `t^-1 s t`
    pub fn conjugate(&self, s: usize, t: usize) -> usize {
        self.mul(self.mul(self.inv(t), s), t)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Some element generating the whole group, if cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.order).find(|&a| self.element_order(a) == self.order)
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set.into_iter().collect()
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        // prefer high-order elements so cyclic groups get a single generator
        let mut candidates: Vec<usize> = (0..self.order).collect();
        candidates.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        for a in candidates {
            if span.len() == self.order {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Replaces the generating list; module and G-set data given "per
    /// generator" follow this order. Repeats and the identity are allowed.
    pub fn with_generators(mut self, gens: &[usize]) -> Result<Self> {
        if let Some(&g) = gens.iter().find(|&&g| g >= self.order) {
            return Err(Error::InvalidGroup(format!("no element {g}")));
        }
        if self.closure(gens).len() != self.order {
            return Err(Error::InvalidGroup(format!("{gens:?} does not generate the group")));
        }
        self.generators = gens.to_vec();
        Ok(self)
    }

    pub fn subgroup(self: &Arc<Self>, elements: &[usize]) -> Result<Subgroup> {
        Subgroup::new(self, elements)
    }

    pub fn generated_subgroup(self: &Arc<Self>, gens: &[usize]) -> Subgroup {
        Subgroup::new(self, &self.closure(gens)).expect("closures are subgroups")
    }

    pub fn whole(self: &Arc<Self>) -> Subgroup {
        let all: Vec<usize> = self.elements().collect();
        Subgroup::new(self, &all).expect("whole group")
    }

    /// Every subgroup, each listed once, ordered by size then elements.
    pub fn all_subgroups(self: &Arc<Self>) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier = vec![vec![self.identity]];
        found.insert(vec![self.identity]);
        while let Some(h) = frontier.pop() {
            for g in 0..self.order {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.closure(&gens);
                if found.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        let mut subs: Vec<Vec<usize>> = found.into_iter().collect();
        subs.sort_by_key(|s| (s.len(), s.clone()));
        subs.iter().map(|s| Subgroup::new(self, s).expect("closure")).collect()
    }
}

/// A subgroup, stored as sorted element indices of the parent, together
/// with the subgroup as a group in its own right (local indices follow the
/// sorted order).
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
    local: Arc<FiniteGroup>,
    position: Vec<Option<usize>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && *self.parent == *other.parent
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

impl Subgroup {
    pub fn new(parent: &Arc<FiniteGroup>, elements: &[usize]) -> Result<Self> {
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.iter().any(|&x| x >= parent.order()) {
            return Err(Error::NotSubgroup("element index out of range".into()));
        }
        if elems.binary_search(&parent.identity()).is_err() {
            return Err(Error::NotSubgroup("missing the identity".into()));
        }
        let mut position = vec![None; parent.order()];
        for (i, &x) in elems.iter().enumerate() {
            position[x] = Some(i);
        }
        let k = elems.len();
        let mut table = vec![vec![0; k]; k];
        for (i, &a) in elems.iter().enumerate() {
            if position[parent.inv(a)].is_none() {
                return Err(Error::NotSubgroup(format!("not closed under inverse at {a}")));
            }
            for (j, &b) in elems.iter().enumerate() {
                table[i][j] =
                    position[parent.mul(a, b)].ok_or_else(|| Error::NotSubgroup(format!("not closed: {a} * {b}")))?;
            }
        }
        let mut local = FiniteGroup::from_table(&table).expect("subgroup of a group");
        // keep generators in parent order for readability
        local.generators = {
            let mut gens = Vec::new();
            let mut span = local.closure(&gens);
            for i in 0..k {
                if span.len() == k {
                    break;
                }
                if span.binary_search(&i).is_err() {
                    gens.push(i);
                    span = local.closure(&gens);
                }
            }
            gens
        };
        Ok(Subgroup {
            parent: Arc::clone(parent),
            elements: elems,
            local: Arc::new(local),
            position,
        })
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.position.get(g).is_some_and(|p| p.is_some())
    }

    /// The subgroup as an abstract group; local index `i` is `elements()[i]`.
    pub fn as_group(&self) -> &Arc<FiniteGroup> {
        &self.local
    }

    pub fn local_index(&self, g: usize) -> Option<usize> {
        self.position.get(g).copied().flatten()
    }

    pub fn parent_index(&self, local: usize) -> usize {
        self.elements[local]
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    pub fn is_normal(&self) -> bool {
        self.elements
            .iter()
            .all(|&h| (0..self.parent.order()).all(|g| self.contains(self.parent.conjugate(h, g))))
    }

    /// `t^-1 H t`
    pub fn conjugate(&self, t: usize) -> Subgroup {
        let elems: Vec<usize> = self.elements.iter().map(|&h| self.parent.conjugate(h, t)).collect();
        Subgroup::new(&self.parent, &elems).expect("conjugate of a subgroup")
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let elems: Vec<usize> = self.elements.iter().copied().filter(|&g| other.contains(g)).collect();
        Subgroup::new(&self.parent, &elems).expect("intersection of subgroups")
    }

    /// Right cosets `H g`, each sorted; ordered so the coset of the identity
    /// comes first and the rest by least element.
    pub fn right_cosets(&self) -> Vec<Vec<usize>> {
        let g = &self.parent;
        let mut seen = vec![false; g.order()];
        let mut cosets = Vec::new();
        let mut starts: Vec<usize> = vec![g.identity()];
        starts.extend((0..g.order()).filter(|&x| x != g.identity()));
        for x in starts {
            if seen[x] {
                continue;
            }
            let mut coset: Vec<usize> = self.elements.iter().map(|&h| g.mul(h, x)).collect();
            coset.sort_unstable();
            for &y in &coset {
                seen[y] = true;
            }
            cosets.push(coset);
        }
        cosets
    }

    /// One representative per right coset: the identity first, otherwise the
    /// least element index of each coset.
    pub fn right_coset_reps(&self) -> Vec<usize> {
        let id = self.parent.identity();
        self.right_cosets()
            .iter()
            .map(|c| if c.contains(&id) { id } else { c[0] })
            .collect()
    }

    /// Position (in `right_cosets()` order) of the coset `H g`.
    pub fn coset_index(&self, g: usize) -> usize {
        self.right_cosets()
            .iter()
            .position(|c| c.binary_search(&g).is_ok())
            .expect("cosets partition the group")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        assert_eq!(FiniteGroup::cyclic(1).unwrap().order(), 1);
        assert_eq!(FiniteGroup::cyclic(2).unwrap().order(), 2);
        let (s3, gens) = FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![0, 2, 1]]).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(gens.len(), 2);
        assert!(!s3.is_abelian());
        assert_eq!(FiniteGroup::dihedral(4).unwrap().order(), 8);
        assert_eq!(FiniteGroup::quaternion().order(), 8);
        assert!(FiniteGroup::quaternion().cyclic_generator().is_none());
        let v4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(2).unwrap());
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.generators().len(), 2);
    }

    #[test]
    fn bad_tables_rejected() {
        // not associative: a "group" where 1*1 = 1 but no inverse structure
        assert!(FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(&[vec![0, 1], vec![1]]).is_err());
        assert!(FiniteGroup::from_permutations(3, &[vec![0, 0, 1]]).is_err());
        // associativity failure with identity and inverses present
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(&t).is_err());
    }

    #[test]
    fn subgroup_checks_closure() {
        let g = Arc::new(FiniteGroup::cyclic(4).unwrap());
        assert!(g.subgroup(&[0, 2]).is_ok());
        assert!(matches!(g.subgroup(&[0, 1]), Err(Error::NotSubgroup(_))));
        assert_eq!(g.all_subgroups().len(), 3);
        let q8 = Arc::new(FiniteGroup::quaternion());
        assert_eq!(q8.all_subgroups().len(), 6);
        let d4 = Arc::new(FiniteGroup::dihedral(4).unwrap());
        assert_eq!(d4.all_subgroups().len(), 10);
    }

    #[test]
    fn right_cosets_cover_once() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        for h in s3.all_subgroups() {
            let cosets = h.right_cosets();
            assert_eq!(cosets.len(), h.index());
            let mut all: Vec<usize> = cosets.concat();
            all.sort_unstable();
            assert_eq!(all, (0..6).collect::<Vec<_>>());
            let reps = h.right_coset_reps();
            assert_eq!(reps[0], s3.identity());
            for (i, &r) in reps.iter().enumerate() {
                assert_eq!(h.coset_index(r), i);
            }
        }
    }
}
