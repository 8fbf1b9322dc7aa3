//! Elliptic curves over small finite fields with their Frobenius action.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohom::h1_cyclic_oracle_tabulated;
use crate::error::{Error, Result};
use crate::fgab::{FgAbGroup, Int};
use crate::gmod::{tabulated_invariant_factors, FiniteAbelian, FiniteGroup, TabulatedModule};

/// Largest field size accepted.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `F_(p^n)` as `F_p[x] / (f)` with `f` primitive. Element `k` has base-`p`
/// digits equal to its coefficients, constant term first.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    n: u32,
    size: u32,
    /// Monic modulus, coefficients of `x^0 .. x^(n-1)` (the leading 1 omitted).
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        if p < 5 {
            return Err(Error::Field("characteristics 2 and 3 are not supported".into()));
        }
        if n == 0 {
            return Err(Error::Field("degree must be positive".into()));
        }
        let size = (p as u128)
            .checked_pow(n)
            .filter(|&q| q <= MAX_FIELD_SIZE as u128)
            .ok_or_else(|| Error::Field(format!("field of size {p}^{n} exceeds the limit {MAX_FIELD_SIZE}")))?
            as u64;
        let p32 = p as u32;
        let n_us = n as usize;
        let order = size - 1;
        let primes = prime_divisors(order);
        // search monic polynomials for one in which x is primitive
        for code in 0..size {
            let modulus: Vec<u32> = (0..n_us).map(|i| ((code / p.pow(i as u32)) % p) as u32).collect();
            if modulus[0] == 0 {
                continue;
            }
            let x: Vec<u32> = if n == 1 {
                // in degree one "x" is the residue -f(0); test it like any element
                vec![(p32 - modulus[0]) % p32]
            } else {
                let mut v = vec![0; n_us];
                v[1] = 1;
                v
            };
            let pw = |e: u64| poly_pow(&x, e, &modulus, p32);
            let one = {
                let mut v = vec![0; n_us];
                v[0] = 1;
                v
            };
            if pw(order) != one || primes.iter().any(|&r| pw(order / r) == one) {
                continue;
            }
            let mut exp = Vec::with_capacity(order as usize);
            let mut log = vec![u32::MAX; size as usize];
            let mut cur = one.clone();
            for i in 0..order {
                let k = encode(&cur, p32);
                exp.push(k);
                log[k as usize] = i as u32;
                cur = poly_mulmod(&cur, &x, &modulus, p32);
            }
            return Ok(FiniteField {
                p: p32,
                n,
                size: size as u32,
                modulus,
                exp,
                log,
            });
        }
        Err(Error::Field(format!(
            "no primitive polynomial of degree {n} over F_{p}"
        )))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Coefficients of the monic modulus, constant term first, leading 1 included.
    pub fn modulus(&self) -> Vec<u32> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// The image of an integer.
    pub fn from_int(&self, k: i64) -> u32 {
        k.rem_euclid(self.p as i64) as u32
    }

    pub fn digits(&self, a: u32) -> Vec<u32> {
        let mut a = a;
        (0..self.n)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % (self.size as u64 - 1);
        self.exp[e as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let q1 = self.size - 1;
        Some(self.exp[((q1 - self.log[a as usize]) % q1) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let q1 = self.size as u64 - 1;
        self.exp[((self.log[a as usize] as u64 * (e % q1)) % q1) as usize]
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: u32, k: u32) -> u32 {
        self.pow(a, (self.p as u64).pow(k % self.n.max(1)))
    }

    /// A square root, if `a` is a square.
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return Some(0);
        }
        let l = self.log[a as usize];
        l.is_multiple_of(2).then(|| self.exp[(l / 2) as usize])
    }

    /// Whether `a` lies in the subfield `F_(p^m)`.
    pub fn in_subfield(&self, a: u32, m: u32) -> bool {
        self.frobenius(a, m) == a
    }
}

fn encode(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product modulo a monic polynomial whose lower coefficients are `f`.
fn poly_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let n = f.len();
    let p64 = p as u64;
    let mut prod = vec![0u64; 2 * n];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    for k in (n..2 * n).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        // x^k = x^(k-n) * x^n and x^n = -f
        for (i, &fi) in f.iter().enumerate() {
            prod[k - n + i] = (prod[k - n + i] + (p64 - c) * fi as u64) % p64;
        }
    }
    prod[..n].iter().map(|&c| c as u32).collect()
}

fn poly_pow(x: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
    let n = f.len();
    let mut acc = vec![0; n];
    acc[0] = 1;
    let mut base = x.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, f, p);
        }
        base = poly_mulmod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

const NONE: u32 = u32::MAX;

/// The points of `y^2 = x^3 + a x + b`; index 0 is the point at infinity.
#[derive(Clone, Debug)]
pub struct CurvePointGroup {
    field: Arc<FiniteField>,
    a: u32,
    b: u32,
    xs: Vec<u32>,
    ys: Vec<u32>,
    by_x: Vec<[u32; 2]>,
}

impl CurvePointGroup {
    pub fn new(field: Arc<FiniteField>, a: u32, b: u32) -> Result<Self> {
        let f = &field;
        if a >= f.size() || b >= f.size() {
            return Err(Error::Field("coefficient outside the field".into()));
        }
        let a3 = f.mul(f.mul(a, a), a);
        let disc = f.add(f.mul(f.from_int(4), a3), f.mul(f.from_int(27), f.mul(b, b)));
        if disc == 0 {
            return Err(Error::SingularCurve);
        }
        let mut xs = vec![NONE];
        let mut ys = vec![NONE];
        let mut by_x = vec![[NONE; 2]; f.size() as usize];
        for x in 0..f.size() {
            let rhs = f.add(f.add(f.mul(f.mul(x, x), x), f.mul(a, x)), b);
            if let Some(y) = f.sqrt(rhs) {
                let first = xs.len() as u32;
                xs.push(x);
                ys.push(y);
                by_x[x as usize][0] = first;
                if y != 0 {
                    xs.push(x);
                    ys.push(f.neg(y));
                    by_x[x as usize][1] = first + 1;
                }
            }
        }
        Ok(CurvePointGroup {
            field,
            a,
            b,
            xs,
            ys,
            by_x,
        })
    }

    /// Coefficients given as integers, read in the prime field.
    pub fn over_prime_field(field: Arc<FiniteField>, a: i64, b: i64) -> Result<Self> {
        let (a, b) = (field.from_int(a), field.from_int(b));
        Self::new(field, a, b)
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coefficients(&self) -> (u32, u32) {
        (self.a, self.b)
    }

    pub fn num_points(&self) -> usize {
        self.xs.len()
    }

    /// Affine coordinates, `None` for the point at infinity.
    pub fn point(&self, i: u32) -> Option<(u32, u32)> {
        (i != 0).then(|| (self.xs[i as usize], self.ys[i as usize]))
    }

    pub fn index_of(&self, x: u32, y: u32) -> Option<u32> {
        self.by_x
            .get(x as usize)?
            .iter()
            .copied()
            .find(|&i| i != NONE && self.ys[i as usize] == y)
    }

    /// `|#E - (q + 1)| <= 2 sqrt(q)`, checked in integers.
    pub fn within_hasse_bound(&self) -> bool {
        let q = self.field.size() as i64;
        let t = self.num_points() as i64 - (q + 1);
        t * t <= 4 * q
    }

    /// Invariant factors `[d1, d2]` with `d1 | d2` (unit factors dropped).
    pub fn structure(&self) -> Vec<Int> {
        tabulated_invariant_factors(self)
    }

    /// First random triple (fixed seed) on which addition is not associative.
    pub fn associativity_violation(&self, samples: usize) -> Option<(u32, u32, u32)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.num_points() as u64);
        let n = self.num_points() as u32;
        (0..samples)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
            .find(|&(x, y, z)| self.add(self.add(x, y), z) != self.add(x, self.add(y, z)))
    }

    /// The permutation of points induced by `(x, y) -> (x^(p^k), y^(p^k))`.
    pub fn frobenius_permutation(&self, k: u32) -> Vec<u32> {
        let f = &self.field;
        (0..self.num_points() as u32)
            .map(|i| match self.point(i) {
                None => 0,
                Some((x, y)) => self
                    .index_of(f.frobenius(x, k), f.frobenius(y, k))
                    .expect("Frobenius maps the curve to itself"),
            })
            .collect()
    }
}

impl FiniteAbelian for CurvePointGroup {
    fn size(&self) -> usize {
        self.num_points()
    }

    fn zero(&self) -> u32 {
        0
    }

    fn neg(&self, p: u32) -> u32 {
        match self.point(p) {
            None => 0,
            Some((x, y)) => self.index_of(x, self.field.neg(y)).expect("negative on the curve"),
        }
    }

    fn add(&self, p: u32, q: u32) -> u32 {
        let f = &self.field;
        let (x1, y1) = match self.point(p) {
            None => return q,
            Some(c) => c,
        };
        let (x2, y2) = match self.point(q) {
            None => return p,
            Some(c) => c,
        };
        let lambda = if x1 == x2 {
            if f.add(y1, y2) == 0 {
                return 0;
            }
            // tangent: (3 x^2 + a) / 2y
            let num = f.add(f.mul(f.from_int(3), f.mul(x1, x1)), self.a);
            f.mul(num, f.inv(f.mul(f.from_int(2), y1)).expect("y != 0"))
        } else {
            f.mul(f.sub(y2, y1), f.inv(f.sub(x2, x1)).expect("x1 != x2"))
        };
        let x3 = f.sub(f.sub(f.mul(lambda, lambda), x1), x2);
        let y3 = f.sub(f.mul(lambda, f.sub(x1, x3)), y1);
        self.index_of(x3, y3).expect("sum lies on the curve")
    }
}

/// The curve's points with the cyclic group of order `n / m` acting through
/// the `p^m`-power Frobenius. The coefficients must lie in `F_(p^m)`.
pub fn frobenius_module(curve: &Arc<CurvePointGroup>, m: u32) -> Result<TabulatedModule> {
    let f = curve.field();
    let n = f.degree();
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::Field(format!("base degree {m} does not divide {n}")));
    }
    if !f.in_subfield(curve.a, m) || !f.in_subfield(curve.b, m) {
        return Err(Error::Field(format!(
            "curve is not defined over the subfield of degree {m}"
        )));
    }
    let group = Arc::new(FiniteGroup::cyclic((n / m) as usize)?);
    let images = if group.order() == 1 {
        Vec::new()
    } else {
        vec![curve.frobenius_permutation(m)]
    };
    TabulatedModule::from_generators(group, curve.clone(), &images)
}

/// `H^1` of the Frobenius module, which must vanish.
pub fn lang_check(curve: &Arc<CurvePointGroup>, m: u32) -> Result<FgAbGroup> {
    let module = frobenius_module(curve, m)?;
    h1_cyclic_oracle_tabulated(&module)
}

/// One curve of a sweep.
#[derive(Clone, Debug)]
pub struct SweepEntry {
    pub p: u64,
    pub n: u32,
    pub a: i64,
    pub b: i64,
    pub points: usize,
    pub structure: Vec<Int>,
    pub hasse: bool,
    pub h1_trivial: bool,
}

/// Every nonsingular curve `y^2 = x^3 + a x + b` with `a, b` in `F_p`,
/// over `F_(p^n)` with the Frobenius of `F_(p^n) / F_p` acting.
pub fn lang_sweep(p: u64, n: u32) -> Result<Vec<SweepEntry>> {
    let field = Arc::new(FiniteField::new(p, n)?);
    let mut out = Vec::new();
    for a in 0..p as i64 {
        for b in 0..p as i64 {
            let curve = match CurvePointGroup::over_prime_field(field.clone(), a, b) {
                Ok(c) => Arc::new(c),
                Err(Error::SingularCurve) => continue,
                Err(e) => return Err(e),
            };
            let h1 = lang_check(&curve, 1)?;
            out.push(SweepEntry {
                p,
                n,
                a,
                b,
                points: curve.num_points(),
                structure: curve.structure(),
                hasse: curve.within_hasse_bound(),
                h1_trivial: h1.is_trivial(),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::int;

    fn field(p: u64, n: u32) -> Arc<FiniteField> {
        Arc::new(FiniteField::new(p, n).unwrap())
    }

    #[test]
    fn field_guards() {
        assert!(FiniteField::new(4, 1).is_err());
        assert!(FiniteField::new(3, 1).is_err());
        assert!(FiniteField::new(5, 9).is_err());
        assert_eq!(field(5, 1).size(), 5);
    }

    #[test]
    fn degree_two_modulus_has_no_roots() {
        let f = field(5, 2);
        assert_eq!(f.size(), 25);
        let m = f.modulus();
        for r in 0..5u32 {
            let v = m.iter().rev().fold(0u32, |acc, &c| (acc * r + c) % 5);
            assert_ne!(v, 0, "root {r}");
        }
    }

    #[test]
    fn field_axioms_spot_check() {
        let f = field(7, 2);
        for a in 0..f.size() {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in (0..f.size()).step_by(5) {
                for c in (0..f.size()).step_by(7) {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
            assert_eq!(f.frobenius(a, 2), a);
            assert_eq!(f.in_subfield(a, 1), f.digits(a)[1] == 0);
        }
    }

    #[test]
    fn small_point_counts() {
        let f = field(5, 1);
        assert_eq!(
            CurvePointGroup::over_prime_field(f.clone(), 1, 0).unwrap().num_points(),
            4
        );
        let e = CurvePointGroup::over_prime_field(f.clone(), -1, 0).unwrap();
        assert_eq!(e.num_points(), 8);
        assert_eq!(e.structure(), vec![int(2), int(4)]);
        assert!(matches!(
            CurvePointGroup::over_prime_field(f, 0, 0),
            Err(Error::SingularCurve)
        ));
    }

    #[test]
    fn frobenius_fixes_prime_field_points() {
        let f = field(5, 2);
        let e = Arc::new(CurvePointGroup::over_prime_field(f.clone(), 1, 0).unwrap());
        let module = frobenius_module(&e, 1).unwrap();
        let fixed = module.fixed_points();
        assert_eq!(fixed.len(), 4);
        for i in fixed {
            if let Some((x, y)) = e.point(i) {
                assert!(f.in_subfield(x, 1) && f.in_subfield(y, 1));
            }
        }
        assert!(lang_check(&e, 1).unwrap().is_trivial());
        assert_eq!(frobenius_module(&e, 2).unwrap().group().order(), 1);
        assert!(frobenius_module(&e, 3).is_err());
    }
}
