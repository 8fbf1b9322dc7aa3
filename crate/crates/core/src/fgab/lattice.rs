//! Integer lattices: bases, kernels, exact and modular linear solving.

use super::matrix::{int, is_zero, Int, IntMatrix};
use super::snf::{smith_normal_form, Smith};

/// A basis (as columns) of the lattice spanned by the columns of `gens`.
pub fn lattice_basis(gens: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(gens);
    let cols: Vec<Vec<Int>> = snf
        .diagonal
        .iter()
        .enumerate()
        .map(|(i, d)| snf.u_inv.column(i).iter().map(|x| x * d).collect())
        .collect();
    IntMatrix::from_columns(gens.rows(), &cols)
}

/// A basis of `{ x : a x = 0 }`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let idx: Vec<usize> = (snf.rank()..a.cols()).collect();
    snf.v.select_columns(&idx)
}

/// Solves `a x = b` over the integers for many right-hand sides.
#[derive(Clone, Debug)]
pub struct ExactSolver {
    snf: Smith,
    rows: usize,
    cols: usize,
}

impl ExactSolver {
    pub fn new(a: &IntMatrix) -> Self {
        ExactSolver {
            snf: smith_normal_form(a),
            rows: a.rows(),
            cols: a.cols(),
        }
    }

    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let ub = self.snf.u.mul_vec(b);
        let mut y = vec![int(0); self.cols];
        for (i, v) in ub.iter().enumerate() {
            if i < self.snf.rank() {
                let d = &self.snf.diagonal[i];
                if !is_zero(&(v % d)) {
                    return None;
                }
                y[i] = v / d;
            } else if !is_zero(v) {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&y))
    }
}

pub fn solve_exact(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    ExactSolver::new(a).solve(b)
}

/// The system `a x ≡ b` where row `i` is read modulo `moduli[i]`
/// (a zero modulus means the row must hold exactly).
#[derive(Clone, Debug)]
pub struct Congruences {
    unknowns: usize,
    solver: ExactSolver,
    augmented: IntMatrix,
}

impl Congruences {
    pub fn new(a: &IntMatrix, moduli: &[Int]) -> Self {
        assert_eq!(a.rows(), moduli.len(), "one modulus per row");
        let slack: Vec<Vec<Int>> = moduli
            .iter()
            .enumerate()
            .filter(|(_, m)| !is_zero(m))
            .map(|(i, m)| {
                let mut col = vec![int(0); a.rows()];
                col[i] = m.clone();
                col
            })
            .collect();
        let augmented = a
            .hcat(&IntMatrix::from_columns(a.rows(), &slack))
            .expect("same row count");
        Congruences {
            unknowns: a.cols(),
            solver: ExactSolver::new(&augmented),
            augmented,
        }
    }

    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        self.solver.solve(b).map(|mut x| {
            x.truncate(self.unknowns);
            x
        })
    }

    /// A basis of the solution lattice of the homogeneous system.
    pub fn kernel_basis(&self) -> IntMatrix {
        let k = integer_kernel(&self.augmented);
        let idx: Vec<usize> = (0..self.unknowns).collect();
        let projected = k.select_rows(&idx);
        lattice_basis(&projected)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::matrix::ints;

    #[test]
    fn kernel_of_row() {
        let a = IntMatrix::from_rows(&[vec![2, 3]]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).unwrap().is_zero());
        let c = k.column(0);
        assert!(c == ints(&[3, -2]) || c == ints(&[-3, 2]));
    }

    #[test]
    fn exact_solve() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(solve_exact(&a, &ints(&[4, 9])), Some(ints(&[2, 3])));
        assert_eq!(solve_exact(&a, &ints(&[1, 0])), None);
    }

    #[test]
    fn congruence_solve() {
        // 2x ≡ 1 (mod 5)  ->  x ≡ 3
        let c = Congruences::new(&IntMatrix::from_rows(&[vec![2]]), &ints(&[5]));
        let x = c.solve(&ints(&[1])).unwrap();
        assert_eq!((&x[0] * int(2) - int(1)) % int(5), int(0));
        // 2x ≡ 1 (mod 4) has no solution
        let c = Congruences::new(&IntMatrix::from_rows(&[vec![2]]), &ints(&[4]));
        assert!(c.solve(&ints(&[1])).is_none());
        // kernel of 2x ≡ 0 (mod 4) is 2Z
        let k = c.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.get(0, 0).clone() * k.get(0, 0), int(4));
    }

    #[test]
    fn basis_of_redundant_generators() {
        let g = IntMatrix::from_rows(&[vec![2, 4, 6], vec![0, 2, 2]]);
        let b = lattice_basis(&g);
        assert_eq!(b.cols(), 2);
        assert_eq!(b.determinant().unwrap().pow(2), int(16));
    }
}
