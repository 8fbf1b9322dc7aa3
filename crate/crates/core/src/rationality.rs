//! Integer relations among formal torsor classes and the deductions they force.

use std::fmt;

use crate::error::{Error, Result};
use crate::fgab::{int, is_zero, vec_scale, zero_vec, ExactSolver, FgAbGroup, Int, IntMatrix};

/// Named formal classes with integer relations declared zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WcRelationSystem {
    names: Vec<String>,
    relations: Vec<Vec<Int>>,
    degree_one: Option<usize>,
}

/// `target = sum combination[j] * relation[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub target: Vec<Int>,
    pub combination: Vec<Int>,
}

impl Certificate {
    pub fn verify(&self, sys: &WcRelationSystem) -> bool {
        if self.combination.len() != sys.relations.len() {
            return false;
        }
        let mut acc = zero_vec(sys.names.len());
        for (c, r) in self.combination.iter().zip(&sys.relations) {
            for (a, x) in acc.iter_mut().zip(r) {
                *a += c * x;
            }
        }
        acc == self.target
    }
}

/// Outcome of a membership query.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub forced_zero: bool,
    pub certificate: Option<Certificate>,
    /// Order of the element in the quotient by the relations; `None` if infinite.
    pub order: Option<Int>,
}

impl WcRelationSystem {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::UnknownGenerator(format!("invalid generator name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::UnknownGenerator(format!("duplicate generator {n}")));
            }
        }
        Ok(WcRelationSystem {
            names,
            relations: Vec::new(),
            degree_one: None,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relations(&self) -> &[Vec<Int>] {
        &self.relations
    }

    pub fn degree_one(&self) -> Option<&str> {
        self.degree_one.map(|i| self.names[i].as_str())
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn set_degree_one(&mut self, name: &str) -> Result<()> {
        self.degree_one = Some(self.index_of(name)?);
        Ok(())
    }

    /// The vector of `sum k * name`.
    pub fn element(&self, terms: &[(&str, i64)]) -> Result<Vec<Int>> {
        let mut v = zero_vec(self.names.len());
        for &(name, k) in terms {
            v[self.index_of(name)?] += k;
        }
        Ok(v)
    }

    /// Parses `2P - Q + 3 R` style combinations; `0` is the zero element.
    pub fn parse_element(&self, text: &str) -> Result<Vec<Int>> {
        let mut v = zero_vec(self.names.len());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(v);
        }
        if compact.is_empty() {
            return Err(Error::UnknownGenerator("empty combination".into()));
        }
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, tail) = match rest.as_bytes()[0] {
                b'+' => (1i64, &rest[1..]),
                b'-' => (-1i64, &rest[1..]),
                _ => (1i64, rest),
            };
            let end = tail.find(['+', '-']).unwrap_or(tail.len());
            let term = &tail[..end];
            rest = &tail[end..];
            let split = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
            let (digits, name) = term.split_at(split);
            let k: i64 = if digits.is_empty() {
                1
            } else {
                digits
                    .parse()
                    .map_err(|_| Error::UnknownGenerator(format!("bad coefficient in {term:?}")))?
            };
            if name.is_empty() {
                return Err(Error::UnknownGenerator(format!("term {term:?} names no generator")));
            }
            v[self.index_of(name)?] += sign * k;
        }
        Ok(v)
    }

    pub fn format_element(&self, v: &[Int]) -> String {
        let mut out = String::new();
        for (c, name) in v.iter().zip(&self.names) {
            if is_zero(c) {
                continue;
            }
            let neg = *c < int(0);
            let abs = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if abs != int(1) {
                out.push_str(&abs.to_string());
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn add_relation(&mut self, v: Vec<Int>) -> Result<()> {
        if v.len() != self.names.len() {
            return Err(Error::Dimension("relation length".into()));
        }
        self.relations.push(v);
        Ok(())
    }

    /// Declares `lhs = rhs`.
    pub fn relate(&mut self, lhs: &str, rhs: &str) -> Result<()> {
        let a = self.parse_element(lhs)?;
        let b = self.parse_element(rhs)?;
        self.add_relation(a.iter().zip(&b).map(|(x, y)| x - y).collect())
    }

    fn relation_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.names.len(), &self.relations)
    }

    /// The group generated by the classes subject to the relations.
    pub fn quotient(&self) -> FgAbGroup {
        FgAbGroup::new(self.names.len(), self.relation_matrix()).expect("one row per generator")
    }

    pub fn is_forced_zero(&self, x: &[Int]) -> Result<Verdict> {
        if x.len() != self.names.len() {
            return Err(Error::Dimension("element length".into()));
        }
        let q = self.quotient();
        let order = q.order_of(x);
        if x.iter().all(is_zero) {
            return Ok(Verdict {
                forced_zero: true,
                certificate: Some(Certificate {
                    target: x.to_vec(),
                    combination: zero_vec(self.relations.len()),
                }),
                order,
            });
        }
        let certificate = if self.relations.is_empty() {
            None
        } else {
            ExactSolver::new(&self.relation_matrix())
                .solve(x)
                .map(|combination| Certificate {
                    target: x.to_vec(),
                    combination,
                })
        };
        Ok(Verdict {
            forced_zero: certificate.is_some(),
            certificate,
            order,
        })
    }

    /// `d` times the degree-one class.
    pub fn pic_class(&self, d: i64) -> Result<Vec<Int>> {
        let i = self.degree_one.ok_or(Error::NoDegreeOne)?;
        let mut e = zero_vec(self.names.len());
        e[i] = int(1);
        Ok(vec_scale(&e, &int(d)))
    }
}

impl fmt::Display for WcRelationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| format!("{} = 0", self.format_element(r)))
            .collect();
        write!(f, "<{} | {}>", self.names.join(", "), rels.join(", "))
    }
}

/// The relations for a genus-two curve `D` with `Q` its degree-one class and
/// a torsor `P` with `2P = Q` and `P = dQ`; with `canonical` the relation
/// `2Q = 0` coming from the canonical divisor is included.
pub fn quadric_system(d: i64, canonical: bool) -> WcRelationSystem {
    let mut sys = WcRelationSystem::new(&["P", "Q"]).expect("valid names");
    sys.set_degree_one("Q").expect("declared");
    if canonical {
        sys.add_relation(sys.pic_class(2).expect("degree one set"))
            .expect("length");
    }
    sys.relate("2P", "Q").expect("known names");
    let pd = sys.pic_class(d).expect("degree one set");
    let p = sys.element(&[("P", 1)]).expect("known name");
    sys.add_relation(p.iter().zip(&pd).map(|(a, b)| a - b).collect())
        .expect("length");
    sys
}

#[derive(Clone, Debug)]
pub struct ParityReport {
    pub d: i64,
    pub system: WcRelationSystem,
    /// Verdict on `Q`, the first step of the deduction.
    pub q: Verdict,
    /// Verdict on `P`.
    pub p: Verdict,
    pub quotient_factors: Vec<Int>,
}

pub fn quadric_parity_argument(d: i64, canonical: bool) -> ParityReport {
    let system = quadric_system(d, canonical);
    let q = system
        .is_forced_zero(&system.element(&[("Q", 1)]).expect("known"))
        .expect("length");
    let p = system
        .is_forced_zero(&system.element(&[("P", 1)]).expect("known"))
        .expect("length");
    let quotient_factors = system.quotient().invariant_factors();
    ParityReport {
        d,
        system,
        q,
        p,
        quotient_factors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::ints;

    #[test]
    fn zero_is_forced() {
        let sys = WcRelationSystem::new(&["Q"]).unwrap();
        let v = sys.is_forced_zero(&ints(&[0])).unwrap();
        assert!(v.forced_zero);
        assert!(v.certificate.unwrap().verify(&sys));
    }

    #[test]
    fn two_torsion_is_not_zero() {
        let mut sys = WcRelationSystem::new(&["Q"]).unwrap();
        sys.relate("2Q", "0").unwrap();
        let v = sys.is_forced_zero(&ints(&[1])).unwrap();
        assert!(!v.forced_zero);
        assert_eq!(v.order, Some(int(2)));
    }

    #[test]
    fn pic_classes() {
        let mut sys = WcRelationSystem::new(&["Q"]).unwrap();
        assert!(matches!(sys.pic_class(1), Err(Error::NoDegreeOne)));
        sys.set_degree_one("Q").unwrap();
        sys.relate("2Q", "0").unwrap();
        assert_eq!(sys.pic_class(0).unwrap(), ints(&[0]));
        assert!(sys.is_forced_zero(&sys.pic_class(2).unwrap()).unwrap().forced_zero);
        assert!(sys.is_forced_zero(&sys.pic_class(-8).unwrap()).unwrap().forced_zero);
        let three = sys.pic_class(3).unwrap();
        assert!(!sys.is_forced_zero(&three).unwrap().forced_zero);
        let diff: Vec<Int> = three.iter().zip(&ints(&[1])).map(|(a, b)| a - b).collect();
        assert!(sys.is_forced_zero(&diff).unwrap().forced_zero);
    }

    #[test]
    fn parity_with_three() {
        let r = quadric_parity_argument(3, true);
        assert!(r.q.forced_zero && r.p.forced_zero);
        assert!(r.q.certificate.as_ref().unwrap().verify(&r.system));
        assert!(r.p.certificate.as_ref().unwrap().verify(&r.system));
        let r = quadric_parity_argument(3, false);
        assert!(!r.p.forced_zero);
        assert_eq!(r.quotient_factors, ints(&[5]));
        assert_eq!(r.p.order, Some(int(5)));
    }

    #[test]
    fn parsing_and_printing() {
        let sys = WcRelationSystem::new(&["P", "Q"]).unwrap();
        assert_eq!(sys.parse_element("2P - Q").unwrap(), ints(&[2, -1]));
        assert_eq!(sys.parse_element("-P+3Q").unwrap(), ints(&[-1, 3]));
        assert_eq!(sys.format_element(&ints(&[-1, 3])), "-P + 3Q");
        assert!(matches!(sys.parse_element("R"), Err(Error::UnknownGenerator(_))));
    }
}
