use std::fmt;
use std::sync::Arc;

use super::group::{AbQuotient, AbSubgroup, FgAbGroup, GroupElem};
use super::matrix::{Int, IntMatrix};
use crate::error::{Error, Result};

/// A homomorphism `Z^n / L_src -> Z^k / L_tgt` given by a `k x n` matrix on
/// ambient coordinates.
#[derive(Clone)]
pub struct AbHom {
    source: Arc<FgAbGroup>,
    target: Arc<FgAbGroup>,
    matrix: IntMatrix,
}

impl fmt::Debug for AbHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbHom({:?})", self.matrix)
    }
}

impl AbHom {
    pub fn new(source: Arc<FgAbGroup>, target: Arc<FgAbGroup>, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for a map Z^{} -> Z^{}",
                matrix.rows(),
                matrix.cols(),
                source.rank(),
                target.rank()
            )));
        }
        let images = matrix.mul(source.relations())?;
        for j in 0..images.cols() {
            if !target.is_zero_vec(&images.column(j)) {
                return Err(Error::IllDefinedHom { column: j });
            }
        }
        Ok(AbHom { source, target, matrix })
    }

    pub fn identity(group: Arc<FgAbGroup>) -> Self {
        let n = group.rank();
        AbHom {
            source: group.clone(),
            target: group,
            matrix: IntMatrix::identity(n),
        }
    }

    pub fn zero(source: Arc<FgAbGroup>, target: Arc<FgAbGroup>) -> Self {
        let matrix = IntMatrix::zeros(target.rank(), source.rank());
        AbHom { source, target, matrix }
    }

    pub fn source(&self) -> &Arc<FgAbGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FgAbGroup> {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Image of an ambient vector, reduced in the target.
    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    pub fn apply_elem(&self, x: &GroupElem) -> Result<GroupElem> {
        if **x.owner() != *self.source {
            return Err(Error::MixedOwners);
        }
        self.target.elem(self.matrix.mul_vec(x.coords()))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &AbHom) -> Result<AbHom> {
        if *self.target != *next.source {
            return Err(Error::Dimension("composition of incompatible maps".into()));
        }
        Ok(AbHom {
            source: self.source.clone(),
            target: next.target.clone(),
            matrix: next.matrix.mul(&self.matrix)?,
        })
    }

    /// Pointwise sum of two maps with the same source and target.
    pub fn plus(&self, other: &AbHom) -> Result<AbHom> {
        if *self.source != *other.source || *self.target != *other.target {
            return Err(Error::Dimension("sum of maps with different endpoints".into()));
        }
        Ok(AbHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    /// Equality as maps of groups.
    pub fn same_map(&self, other: &AbHom) -> bool {
        *self.source == *other.source
            && *self.target == *other.target
            && self
                .matrix
                .sub(&other.matrix)
                .map(|d| d.columns().iter().all(|c| self.target.is_zero_vec(c)))
                .unwrap_or(false)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.columns().iter().all(|c| self.target.is_zero_vec(c))
    }

    pub fn kernel(&self) -> AbSubgroup {
        let basis = self.target.kernel_lattice(&self.matrix);
        self.source
            .subgroup(&basis)
            .expect("kernel lattice lives in the source")
            .simplified()
    }

    pub fn image(&self) -> AbSubgroup {
        self.target
            .subgroup(&self.matrix)
            .expect("images live in the target")
            .simplified()
    }

    pub fn cokernel(&self) -> AbQuotient {
        let rel = self.target.relations().hcat(&self.matrix).expect("row counts agree");
        let q = Arc::new(FgAbGroup::new(self.target.rank(), rel).expect("shape"));
        let proj = AbHom {
            source: self.target.clone(),
            target: q.clone(),
            matrix: IntMatrix::identity(self.target.rank()),
        };
        let s = q.simplify();
        AbQuotient {
            projection: proj.then(&s.to).expect("compatible"),
            group: s.group,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::matrix::{int, ints};

    fn z() -> Arc<FgAbGroup> {
        Arc::new(FgAbGroup::free(1))
    }

    #[test]
    fn doubling_on_z() {
        let h = AbHom::new(z(), z(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert!(h.kernel().group.is_trivial());
        assert_eq!(h.cokernel().group.invariant_factors(), ints(&[2]));
        assert_eq!(h.image().group.invariant_factors(), ints(&[0]));
    }

    #[test]
    fn zero_map_on_z() {
        let h = AbHom::zero(z(), z());
        assert_eq!(h.kernel().group.invariant_factors(), ints(&[0]));
        assert_eq!(h.cokernel().group.invariant_factors(), ints(&[0]));
        assert!(h.image().group.is_trivial());
    }

    #[test]
    fn z_to_z4_by_two() {
        let z4 = Arc::new(FgAbGroup::cyclic(4));
        let h = AbHom::new(z(), z4.clone(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        // enumeration: images of 0..4 are {0, 2}
        let mut imgs: Vec<Vec<Int>> = (0..4).map(|k| z4.canonical(&h.apply(&ints(&[k])))).collect();
        imgs.sort();
        imgs.dedup();
        assert_eq!(imgs.len(), 2);
        assert_eq!(h.image().group.invariant_factors(), ints(&[2]));
        assert_eq!(h.cokernel().group.invariant_factors(), ints(&[2]));
        assert_eq!(h.kernel().group.invariant_factors(), ints(&[0]));
    }

    #[test]
    fn ill_defined_rejected() {
        let z4 = Arc::new(FgAbGroup::cyclic(4));
        let z3 = Arc::new(FgAbGroup::cyclic(3));
        let bad = AbHom::new(z4, z3, IntMatrix::from_rows(&[vec![1]]));
        assert!(matches!(bad, Err(Error::IllDefinedHom { .. })));
    }

    #[test]
    fn exactness_of_kernel_and_cokernel() {
        let src = Arc::new(FgAbGroup::new(2, IntMatrix::from_rows(&[vec![6], vec![0]])).unwrap());
        let tgt = Arc::new(FgAbGroup::new(2, IntMatrix::from_rows(&[vec![4, 0], vec![0, 0]])).unwrap());
        let h = AbHom::new(src, tgt, IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]])).unwrap();
        let k = h.kernel();
        assert!(k.embedding.then(&h).unwrap().is_zero());
        let c = h.cokernel();
        assert!(h.then(&c.projection).unwrap().is_zero());
        // cokernel of the image embedding agrees with the direct cokernel
        let via_image = h.image().embedding.cokernel();
        assert!(via_image.group.is_isomorphic(&c.group));
        // Z/6 + Z -> Z/4 + Z by diag(2, 3): cokernel Z/2 + Z/3, kernel {0, 2, 4} in Z/6
        assert_eq!(c.group.invariant_factors(), vec![int(6)]);
        assert_eq!(k.group.invariant_factors(), vec![int(3)]);
    }
}
