use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::fgab::{int, Int};

/// A finite abelian group whose elements are the indices `0..size()`.
pub trait FiniteAbelian: Send + Sync {
    fn size(&self) -> usize;
    fn zero(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;

    fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// `k a` by double-and-add.
    fn scale(&self, a: u32, k: i64) -> u32 {
        let mut base = if k < 0 { self.neg(a) } else { a };
        let mut k = k.unsigned_abs();
        let mut acc = self.zero();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    fn order_of(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.zero() {
            x = self.add(x, a);
            k += 1;
        }
        k
    }
}

/// A finite abelian group given by its full addition table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdditionTable {
    size: usize,
    zero: u32,
    table: Vec<u32>,
    neg: Vec<u32>,
}

impl AdditionTable {
    /// Validates commutativity, associativity, identity and inverses.
    pub fn new(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) || rows.iter().flatten().any(|&x| x as usize >= n) {
            return Err(Error::InvalidGroup(
                "addition table must be square with entries below its size".into(),
            ));
        }
        let zero = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] as usize == x))
            .ok_or_else(|| Error::InvalidGroup("no additive identity".into()))? as u32;
        let mut neg = vec![0; n];
        for (x, slot) in neg.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&y| rows[x][y] == zero)
                .ok_or_else(|| Error::InvalidGroup(format!("element {x} has no negative")))? as u32;
        }
        for x in 0..n {
            for y in 0..n {
                if rows[x][y] != rows[y][x] {
                    return Err(Error::InvalidGroup(format!("{x} + {y} != {y} + {x}")));
                }
                for z in 0..n {
                    if rows[rows[x][y] as usize][z] != rows[x][rows[y][z] as usize] {
                        return Err(Error::InvalidGroup(format!(
                            "addition not associative at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(AdditionTable {
            size: n,
            zero,
            table: rows.concat(),
            neg,
        })
    }

    /// `Z/n` with element `k` at index `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        let neg = (0..n).map(|k| ((n - k) % n) as u32).collect();
        AdditionTable {
            size: n,
            zero: 0,
            table,
            neg,
        }
    }
}

impl FiniteAbelian for AdditionTable {
    fn size(&self) -> usize {
        self.size
    }

    fn zero(&self) -> u32 {
        self.zero
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.size + b as usize]
    }

    fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }
}

/// Above this size additivity of the action is checked on random samples.
const EXHAUSTIVE_ADDITIVITY: usize = 64;
const ADDITIVITY_SAMPLES: usize = 200;

/// A G-module on a tabulated finite abelian group; `action[s][x]` is `x^s`.
#[derive(Clone)]
pub struct TabulatedModule {
    group: Arc<FiniteGroup>,
    base: Arc<dyn FiniteAbelian>,
    action: Vec<Vec<u32>>,
}

impl fmt::Debug for TabulatedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TabulatedModule(order {}, |M| = {})",
            self.group.order(),
            self.base.size()
        )
    }
}

impl TabulatedModule {
    pub fn new(group: Arc<FiniteGroup>, base: Arc<dyn FiniteAbelian>, action: Vec<Vec<u32>>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::InvalidAction(
                "one permutation per group element required".into(),
            ));
        }
        let m = TabulatedModule { group, base, action };
        m.validate()?;
        Ok(m)
    }

    /// Extends the maps given for `group.generators()` to the whole group.
    pub fn from_generators(group: Arc<FiniteGroup>, base: Arc<dyn FiniteAbelian>, images: &[Vec<u32>]) -> Result<Self> {
        let gens = group.generators().to_vec();
        if images.len() != gens.len() {
            return Err(Error::InvalidAction(format!(
                "{} generator maps for {} generators",
                images.len(),
                gens.len()
            )));
        }
        let n = base.size();
        if images.iter().any(|p| p.len() != n) {
            return Err(Error::InvalidAction("generator map has the wrong length".into()));
        }
        let mut action: Vec<Option<Vec<u32>>> = vec![None; group.order()];
        action[group.identity()] = Some((0..n as u32).collect());
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(g) = queue.pop_front() {
            let cur = action[g].clone().expect("visited");
            for (&s, img) in gens.iter().zip(images) {
                let gs = group.mul(g, s);
                let next: Vec<u32> = cur.iter().map(|&x| img[x as usize]).collect();
                match &action[gs] {
                    Some(existing) if *existing != next => {
                        return Err(Error::InvalidAction(format!(
                            "composition law violated at element {gs}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        action[gs] = Some(next);
                        queue.push_back(gs);
                    }
                }
            }
        }
        let action = action
            .into_iter()
            .map(|p| p.ok_or_else(|| Error::InvalidAction("generators do not reach every element".into())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, base, action)
    }

    fn validate(&self) -> Result<()> {
        let n = self.base.size();
        for (s, p) in self.action.iter().enumerate() {
            let mut seen = vec![false; n];
            for &x in p {
                if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::InvalidAction(format!("element {s} does not act bijectively")));
                }
            }
            if let Some((x, y)) = self.additivity_violation(s) {
                return Err(Error::InvalidAction(format!(
                    "element {s} is not additive on ({x}, {y})"
                )));
            }
        }
        let g = &self.group;
        if self.action[g.identity()]
            .iter()
            .enumerate()
            .any(|(i, &x)| i as u32 != x)
        {
            return Err(Error::InvalidAction("identity does not act trivially".into()));
        }
        for s in g.elements() {
            for t in g.elements() {
                let st = &self.action[g.mul(s, t)];
                if (0..n).any(|x| st[x] != self.action[t][self.action[s][x] as usize]) {
                    return Err(Error::InvalidAction(format!(
                        "composition law x^(st) = (x^s)^t violated for s={s}, t={t}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// First pair `(x, y)` with `(x + y)^s != x^s + y^s`: exhaustive for
    /// small groups, sampled with a fixed seed otherwise.
    pub fn additivity_violation(&self, s: usize) -> Option<(u32, u32)> {
        let n = self.base.size();
        let p = &self.action[s];
        let bad = |x: u32, y: u32| p[self.base.add(x, y) as usize] != self.base.add(p[x as usize], p[y as usize]);
        if n <= EXHAUSTIVE_ADDITIVITY {
            for x in 0..n as u32 {
                for y in 0..n as u32 {
                    if bad(x, y) {
                        return Some((x, y));
                    }
                }
            }
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(s as u64);
        (0..ADDITIVITY_SAMPLES)
            .map(|_| (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32)))
            .find(|&(x, y)| bad(x, y))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn base(&self) -> &Arc<dyn FiniteAbelian> {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    #[inline]
    pub fn act(&self, x: u32, s: usize) -> u32 {
        self.action[s][x as usize]
    }

    pub fn permutation(&self, s: usize) -> &[u32] {
        &self.action[s]
    }

    pub fn fixed_points(&self) -> Vec<u32> {
        (0..self.size() as u32)
            .filter(|&x| self.group.elements().all(|s| self.act(x, s) == x))
            .collect()
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors of `K / I` for subgroups of a tabulated group given as
/// membership masks, with `I ⊆ K`, read off from the sizes of the `p^j`-torsion.
pub fn subquotient_invariant_factors(base: &dyn FiniteAbelian, k: &[bool], i: &[bool]) -> Vec<Int> {
    let size_k = k.iter().filter(|&&b| b).count();
    let size_i = i.iter().filter(|&&b| b).count();
    assert!(size_i > 0 && size_k % size_i == 0, "I must be a subgroup of K");
    let order = size_k / size_i;
    // for each prime, at_least[j] = number of cyclic factors of order >= p^(j+1),
    // which is log_p of |Q[p^(j+1)]| / |Q[p^j]|
    let mut by_prime: Vec<(usize, Vec<usize>)> = Vec::new();
    for p in prime_factors(order) {
        let mut at_least = Vec::new();
        let mut prev = 1;
        let mut pj: i64 = 1;
        loop {
            pj *= p as i64;
            let c = (0..base.size() as u32)
                .filter(|&x| k[x as usize] && i[base.scale(x, pj) as usize])
                .count()
                / size_i;
            let mut ratio = c / prev;
            let mut r = 0;
            while ratio > 1 {
                ratio /= p;
                r += 1;
            }
            if r == 0 {
                break;
            }
            at_least.push(r);
            prev = c;
        }
        by_prime.push((p, at_least));
    }
    let slots = by_prime
        .iter()
        .filter_map(|(_, a)| a.first().copied())
        .max()
        .unwrap_or(0);
    let mut out = vec![int(1); slots];
    for (p, at_least) in &by_prime {
        for &r in at_least {
            for slot in out.iter_mut().rev().take(r) {
                *slot *= *p;
            }
        }
    }
    out.retain(|d| *d != int(1));
    out
}

/// Invariant factors of a tabulated group.
pub fn tabulated_invariant_factors(base: &dyn FiniteAbelian) -> Vec<Int> {
    let all = vec![true; base.size()];
    let mut zero = vec![false; base.size()];
    zero[base.zero() as usize] = true;
    subquotient_invariant_factors(base, &all, &zero)
}
