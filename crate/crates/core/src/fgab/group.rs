use std::fmt;
use std::sync::Arc;

use ibig::ops::RemEuclid;
use rand::Rng;

use super::hom::AbHom;
use super::lattice::Congruences;
use super::matrix::{int, is_zero, vec_add, vec_neg, vec_scale, Int, IntMatrix};
use super::snf::{smith_normal_form, Smith};
use crate::error::{Error, Result};

/// `Z^n / L` where the columns of `relations` span `L`.
///
/// Equality is equality of presentations; use [`FgAbGroup::is_isomorphic`]
/// to compare up to isomorphism.
#[derive(Clone)]
pub struct FgAbGroup {
    rank: usize,
    relations: IntMatrix,
    smith: Smith,
    /// Modulus of each Smith coordinate (0 for free coordinates).
    moduli: Vec<Int>,
    /// Smith coordinates whose modulus is not 1.
    nontrivial: Vec<usize>,
}

impl PartialEq for FgAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.relations == other.relations
    }
}

impl Eq for FgAbGroup {}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup(Z^{} / {:?}", self.rank, self.relations)?;
        write!(f, " ~ {})", format_factors(&self.invariant_factors()))
    }
}

/// `Z/2 x Z/6 x Z` style rendering; the trivial group is `0`.
pub fn format_factors(factors: &[Int]) -> String {
    if factors.is_empty() {
        return "0".to_string();
    }
    factors
        .iter()
        .map(|d| if is_zero(d) { "Z".to_string() } else { format!("Z/{d}") })
        .collect::<Vec<_>>()
        .join(" x ")
}

impl FgAbGroup {
    pub fn new(rank: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != rank {
            return Err(Error::Dimension(format!(
                "relation matrix has {} rows, ambient rank is {rank}",
                relations.rows()
            )));
        }
        let smith = smith_normal_form(&relations);
        let moduli: Vec<Int> = (0..rank)
            .map(|i| smith.diagonal.get(i).cloned().unwrap_or_else(|| int(0)))
            .collect();
        let nontrivial = (0..rank).filter(|&i| moduli[i] != int(1)).collect();
        Ok(FgAbGroup {
            rank,
            relations,
            smith,
            moduli,
            nontrivial,
        })
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, IntMatrix::zeros(rank, 0)).expect("shape")
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `Z/n`, with `n = 0` giving `Z`.
    pub fn cyclic(n: i64) -> Self {
        Self::from_factors(&[int(n)])
    }

    /// `Z/d_1 x ... x Z/d_k` with the obvious diagonal presentation.
    pub fn from_factors(factors: &[Int]) -> Self {
        let k = factors.len();
        let cols: Vec<Vec<Int>> = factors
            .iter()
            .enumerate()
            .filter(|(_, d)| !is_zero(d))
            .map(|(i, d)| {
                let mut c = vec![int(0); k];
                c[i] = d.clone();
                c
            })
            .collect();
        Self::new(k, IntMatrix::from_columns(k, &cols)).expect("shape")
    }

    pub fn direct_sum(parts: &[&FgAbGroup]) -> Self {
        let rank = parts.iter().map(|g| g.rank).sum();
        let blocks: Vec<&IntMatrix> = parts.iter().map(|g| &g.relations).collect();
        Self::new(rank, IntMatrix::block_diagonal(&blocks)).expect("shape")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn smith(&self) -> &Smith {
        &self.smith
    }

    /// Invariant factors `d_1 | d_2 | ...`, unit factors dropped, free
    /// summands reported as trailing zeros.
    pub fn invariant_factors(&self) -> Vec<Int> {
        self.nontrivial.iter().map(|&i| self.moduli[i].clone()).collect()
    }

    /// Moduli of the canonical coordinates, aligned with [`Self::canonical`].
    pub fn canonical_moduli(&self) -> Vec<Int> {
        self.invariant_factors()
    }

    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }

    pub fn is_finite(&self) -> bool {
        self.nontrivial.iter().all(|&i| !is_zero(&self.moduli[i]))
    }

    pub fn is_trivial(&self) -> bool {
        self.nontrivial.is_empty()
    }

    pub fn order(&self) -> Option<Int> {
        if !self.is_finite() {
            return None;
        }
        Some(self.nontrivial.iter().fold(int(1), |acc, &i| acc * &self.moduli[i]))
    }

    /// Coordinates in the Smith basis, reduced; unique per coset of `L`.
    pub fn canonical(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.rank, "coordinate length");
        self.nontrivial
            .iter()
            .map(|&i| {
                let y: Int = self
                    .smith
                    .u
                    .row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !is_zero(a) && !is_zero(b))
                    .fold(int(0), |acc, (a, b)| acc + a * b);
                let m = &self.moduli[i];
                if is_zero(m) {
                    y
                } else {
                    y.rem_euclid(m)
                }
            })
            .collect()
    }

    pub fn from_canonical(&self, c: &[Int]) -> Vec<Int> {
        assert_eq!(c.len(), self.nontrivial.len(), "canonical length");
        let mut x = vec![int(0); self.rank];
        for (k, &i) in self.nontrivial.iter().enumerate() {
            if is_zero(&c[k]) {
                continue;
            }
            for (r, xr) in x.iter_mut().enumerate() {
                let u = self.smith.u_inv.get(r, i);
                if !is_zero(u) {
                    *xr += u * &c[k];
                }
            }
        }
        x
    }

    /// The distinguished representative of the coset `x + L`.
    pub fn reduce(&self, x: &[Int]) -> Vec<Int> {
        self.from_canonical(&self.canonical(x))
    }

    pub fn is_zero_vec(&self, x: &[Int]) -> bool {
        self.canonical(x).iter().all(is_zero)
    }

    pub fn eq_vec(&self, a: &[Int], b: &[Int]) -> bool {
        self.canonical(a) == self.canonical(b)
    }

    pub fn add_vec(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        self.reduce(&vec_add(a, b))
    }

    pub fn neg_vec(&self, a: &[Int]) -> Vec<Int> {
        self.reduce(&vec_neg(a))
    }

    pub fn zero_vec(&self) -> Vec<Int> {
        vec![int(0); self.rank]
    }

    /// Order of an element; `None` if infinite.
    pub fn order_of(&self, x: &[Int]) -> Option<Int> {
        let c = self.canonical(x);
        let mut acc = int(1);
        for (k, &i) in self.nontrivial.iter().enumerate() {
            let m = &self.moduli[i];
            if is_zero(m) {
                if !is_zero(&c[k]) {
                    return None;
                }
                continue;
            }
            let o = m / gcd(&c[k], m);
            acc = lcm(&acc, &o);
        }
        Some(acc)
    }

    /// All elements of a finite group, as reduced ambient vectors.
    pub fn elements(&self) -> Result<Vec<Vec<Int>>> {
        if !self.is_finite() {
            return Err(Error::Unsupported("cannot enumerate an infinite group".into()));
        }
        let moduli = self.invariant_factors();
        let mut out = Vec::new();
        let mut c = vec![int(0); moduli.len()];
        loop {
            out.push(self.from_canonical(&c));
            let mut k = 0;
            loop {
                if k == moduli.len() {
                    return Ok(out);
                }
                c[k] += 1;
                if c[k] < moduli[k] {
                    break;
                }
                c[k] = int(0);
                k += 1;
            }
        }
    }

    /// A random element; free coordinates drawn from `[-bound, bound]`.
    pub fn random_vec<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Vec<Int> {
        let c: Vec<Int> = self
            .invariant_factors()
            .iter()
            .map(|m| {
                if is_zero(m) {
                    int(rng.gen_range(-bound..=bound))
                } else {
                    let m64: i64 = m.try_into().unwrap_or(i64::MAX);
                    int(rng.gen_range(0..m64))
                }
            })
            .collect();
        self.from_canonical(&c)
    }

    /// Translates "`a x` lies in `L`" into congruences on `x`.
    pub fn lattice_conditions(&self, a: &IntMatrix) -> (IntMatrix, Vec<Int>) {
        assert_eq!(a.rows(), self.rank, "condition matrix rows");
        let ua = self.smith.u.mul(a).expect("shape");
        let rows = ua.select_rows(&self.nontrivial);
        let moduli = self.nontrivial.iter().map(|&i| self.moduli[i].clone()).collect();
        (rows, moduli)
    }

    /// Right-hand side matching [`Self::lattice_conditions`]: `a x ≡ v (mod L)`
    /// iff `rows x ≡ condition_values(v)`.
    pub fn condition_values(&self, v: &[Int]) -> Vec<Int> {
        let t = self.smith.u.mul_vec(v);
        self.nontrivial.iter().map(|&i| t[i].clone()).collect()
    }

    /// Some `x` with `gens * x ≡ target (mod L)`.
    pub fn solve(&self, gens: &IntMatrix, target: &[Int]) -> Option<Vec<Int>> {
        let (rows, moduli) = self.lattice_conditions(gens);
        let t = self.condition_values(target);
        Congruences::new(&rows, &moduli).solve(&t)
    }

    /// Basis of `{ x : a x ∈ L }`.
    pub fn kernel_lattice(&self, a: &IntMatrix) -> IntMatrix {
        let (rows, moduli) = self.lattice_conditions(a);
        Congruences::new(&rows, &moduli).kernel_basis()
    }

    pub fn elem(self: &Arc<Self>, coords: Vec<Int>) -> Result<GroupElem> {
        if coords.len() != self.rank {
            return Err(Error::Dimension(format!(
                "element of length {} in a group of rank {}",
                coords.len(),
                self.rank
            )));
        }
        Ok(GroupElem {
            coords: self.reduce(&coords),
            owner: Arc::clone(self),
        })
    }

    pub fn zero(self: &Arc<Self>) -> GroupElem {
        GroupElem {
            coords: self.zero_vec(),
            owner: Arc::clone(self),
        }
    }

    /// Subgroup generated by the columns of `gens`, presented on exactly
    /// those generators.
    pub fn subgroup(self: &Arc<Self>, gens: &IntMatrix) -> Result<AbSubgroup> {
        if gens.rows() != self.rank {
            return Err(Error::Dimension("generator length".into()));
        }
        let rel = self.kernel_lattice(gens);
        let group = Arc::new(FgAbGroup::new(gens.cols(), rel)?);
        let embedding = AbHom::new(group.clone(), Arc::clone(self), gens.clone())?;
        Ok(AbSubgroup { group, embedding })
    }

    /// An isomorphic group with diagonal presentation on the non-unit
    /// factors, with the isomorphisms both ways.
    pub fn simplify(self: &Arc<Self>) -> Simplified {
        let factors = self.invariant_factors();
        let simple = Arc::new(FgAbGroup::from_factors(&factors));
        let to = self.smith.u.select_rows(&self.nontrivial);
        let from = self.smith.u_inv.select_columns(&self.nontrivial);
        Simplified {
            to: AbHom::new(Arc::clone(self), simple.clone(), to).expect("SNF rows are well defined"),
            from: AbHom::new(simple.clone(), Arc::clone(self), from).expect("SNF columns are well defined"),
            group: simple,
        }
    }
}

pub struct Simplified {
    pub group: Arc<FgAbGroup>,
    pub to: AbHom,
    pub from: AbHom,
}

/// A group together with an injective homomorphism into a larger group.
#[derive(Clone, Debug)]
pub struct AbSubgroup {
    pub group: Arc<FgAbGroup>,
    pub embedding: AbHom,
}

impl AbSubgroup {
    /// Coordinates (in `self.group`) of an ambient element, if it lies in
    /// the subgroup.
    pub fn preimage(&self, x: &[Int]) -> Option<Vec<Int>> {
        self.embedding
            .target()
            .solve(self.embedding.matrix(), x)
            .map(|z| self.group.reduce(&z))
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.preimage(x).is_some()
    }

    /// Same subgroup, diagonal presentation.
    pub fn simplified(&self) -> AbSubgroup {
        let s = self.group.simplify();
        AbSubgroup {
            embedding: s.from.then(&self.embedding).expect("compatible"),
            group: s.group,
        }
    }
}

/// A group together with a surjection onto it.
#[derive(Clone, Debug)]
pub struct AbQuotient {
    pub group: Arc<FgAbGroup>,
    pub projection: AbHom,
}

/// An element of a specific [`FgAbGroup`], stored in reduced form.
#[derive(Clone)]
pub struct GroupElem {
    owner: Arc<FgAbGroup>,
    coords: Vec<Int>,
}

impl PartialEq for GroupElem {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.owner == other.owner
    }
}

impl Eq for GroupElem {}

impl fmt::Debug for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_vec(&self.coords))
    }
}

pub fn format_vec(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

impl GroupElem {
    pub fn owner(&self) -> &Arc<FgAbGroup> {
        &self.owner
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.coords
    }

    pub fn canonical(&self) -> Vec<Int> {
        self.owner.canonical(&self.coords)
    }

    fn same_owner(&self, other: &GroupElem) -> Result<()> {
        if Arc::ptr_eq(&self.owner, &other.owner) || self.owner == other.owner {
            Ok(())
        } else {
            Err(Error::MixedOwners)
        }
    }

    fn wrap(&self, coords: Vec<Int>) -> GroupElem {
        GroupElem {
            coords: self.owner.reduce(&coords),
            owner: Arc::clone(&self.owner),
        }
    }

    pub fn add(&self, other: &GroupElem) -> Result<GroupElem> {
        self.same_owner(other)?;
        Ok(self.wrap(vec_add(&self.coords, &other.coords)))
    }

    pub fn sub(&self, other: &GroupElem) -> Result<GroupElem> {
        self.same_owner(other)?;
        Ok(self.wrap(super::matrix::vec_sub(&self.coords, &other.coords)))
    }

    pub fn neg(&self) -> GroupElem {
        self.wrap(vec_neg(&self.coords))
    }

    pub fn scale(&self, k: i64) -> GroupElem {
        self.wrap(vec_scale(&self.coords, &int(k)))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(is_zero)
    }

    pub fn equals(&self, other: &GroupElem) -> Result<bool> {
        self.same_owner(other)?;
        Ok(self.coords == other.coords)
    }

    /// Least `k > 0` with `k x = 0`, or `None` for infinite order.
    pub fn order(&self) -> Option<Int> {
        self.owner.order_of(&self.coords)
    }
}

pub fn gcd(a: &Int, b: &Int) -> Int {
    let (mut a, mut b) = (abs(a), abs(b));
    while !is_zero(&b) {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: &Int, b: &Int) -> Int {
    if is_zero(a) || is_zero(b) {
        return int(0);
    }
    abs(&(a / gcd(a, b) * b))
}

fn abs(a: &Int) -> Int {
    if *a < int(0) {
        -a
    } else {
        a.clone()
    }
}
