//! Smith normal form over the integers.
//!
//! For an `r x c` matrix `M` we compute unimodular `U` (`r x r`) and `V`
//! (`c x c`) with `U * M * V = S`, where `S` is diagonal with nonnegative
//! entries `d_1 | d_2 | ... | d_k`, followed by zeros. The inverse of `U`
//! is tracked alongside so that quotient coordinates can be mapped back to
//! the ambient lattice without a separate inversion.
//!
//! Pivoting picks the entry of least absolute value; after a row and column
//! are cleared, any remaining entry not divisible by the pivot is folded
//! into the pivot row and the reduction is repeated. This is the textbook
//! elimination; entries can grow, which is why everything is `IBig`.

use super::matrix::{int, is_zero, Int, IntMatrix};

#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries, in chain order.
    pub diagonal: Vec<Int>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    // row[dst] += k * row[src]
    fn row_op(&mut self, dst: usize, src: usize, k: &Int) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        let neg = -k;
        self.u_inv.add_col_multiple(src, dst, &neg);
    }

    // col[dst] += k * col[src]
    fn col_op(&mut self, dst: usize, src: usize, k: &Int) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, Int)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let e = self.a.get(i, j);
                if is_zero(e) {
                    continue;
                }
                let abs = if *e < int(0) { -e } else { e.clone() };
                if best.as_ref().is_none_or(|(_, _, b)| abs < *b) {
                    let one = abs == int(1);
                    best = Some((i, j, abs));
                    if one {
                        break;
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn smallest_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut best_abs = abs(self.a.get(t, t));
        for i in t + 1..self.a.rows() {
            let e = self.a.get(i, t);
            if !is_zero(e) && (is_zero(&best_abs) || abs(e) < best_abs) {
                best = (i, t);
                best_abs = abs(e);
            }
        }
        for j in t + 1..self.a.cols() {
            let e = self.a.get(t, j);
            if !is_zero(e) && (is_zero(&best_abs) || abs(e) < best_abs) {
                best = (t, j);
                best_abs = abs(e);
            }
        }
        best
    }

    fn move_to_pivot(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    /// Clears row and column `t` using the pivot at `(t, t)`. Returns false
    /// if some remainder survived.
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        let pivot = self.a.get(t, t).clone();
        for i in t + 1..self.a.rows() {
            if is_zero(self.a.get(i, t)) {
                continue;
            }
            let q = self.a.get(i, t) / &pivot;
            self.row_op(i, t, &-q);
            if !is_zero(self.a.get(i, t)) {
                clean = false;
            }
        }
        for j in t + 1..self.a.cols() {
            if is_zero(self.a.get(t, j)) {
                continue;
            }
            let q = self.a.get(t, j) / &pivot;
            self.col_op(j, t, &-q);
            if !is_zero(self.a.get(t, j)) {
                clean = false;
            }
        }
        clean
    }

    fn non_divisible(&self, t: usize) -> Option<usize> {
        let pivot = self.a.get(t, t);
        for i in t + 1..self.a.rows() {
            for j in t + 1..self.a.cols() {
                let e = self.a.get(i, j);
                if !is_zero(e) && !is_zero(&(e % pivot)) {
                    return Some(i);
                }
            }
        }
        None
    }
}

fn abs(v: &Int) -> Int {
    if *v < int(0) {
        -v
    } else {
        v.clone()
    }
}

/// Computes the Smith normal form `U * M * V = S` of `m`.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (r, c) = (m.rows(), m.cols());
    let mut red = Reducer {
        a: m.clone(),
        u: IntMatrix::identity(r),
        u_inv: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
    };
    let mut diagonal = Vec::new();
    for t in 0..r.min(c) {
        let Some(pos) = red.smallest_in_block(t) else {
            break;
        };
        red.move_to_pivot(t, pos);
        loop {
            if !red.clear_cross(t) {
                let pos = red.smallest_in_cross(t);
                red.move_to_pivot(t, pos);
                continue;
            }
            match red.non_divisible(t) {
                Some(i) => {
                    red.row_op(t, i, &int(1));
                }
                None => break,
            }
        }
        if *red.a.get(t, t) < int(0) {
            red.negate_row(t);
        }
        diagonal.push(red.a.get(t, t).clone());
    }
    Smith {
        u: red.u,
        u_inv: red.u_inv,
        s: red.a,
        v: red.v,
        diagonal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) {
        let snf = smith_normal_form(m);
        let lhs = snf.u.mul(m).unwrap().mul(&snf.v).unwrap();
        assert_eq!(lhs, snf.s, "U*M*V != S for {m:?}");
        assert!(snf.s.is_diagonal());
        let one = int(1);
        assert_eq!(snf.u.determinant().unwrap().pow(2), one);
        assert_eq!(snf.v.determinant().unwrap().pow(2), one);
        assert_eq!(snf.u.mul(&snf.u_inv).unwrap(), IntMatrix::identity(m.rows()));
        for w in snf.diagonal.windows(2) {
            assert!(is_zero(&(&w[1] % &w[0])), "chain broken: {:?}", snf.diagonal);
        }
        for d in &snf.diagonal {
            assert!(*d > int(0));
        }
        for i in snf.rank()..m.rows().min(m.cols()) {
            assert!(is_zero(snf.s.get(i, i)));
        }
    }

    #[test]
    fn identity_is_fixed() {
        let snf = smith_normal_form(&IntMatrix::identity(2));
        assert_eq!(snf.s, IntMatrix::identity(2));
        assert_eq!(snf.u, IntMatrix::identity(2));
        assert_eq!(snf.v, IntMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diagonal, vec![int(2), int(4)]);
        check(&m);
    }

    #[test]
    fn zero_matrix() {
        let m = IntMatrix::from_rows(&[vec![0]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.s, m);
        assert!(snf.diagonal.is_empty());
    }

    #[test]
    fn non_divisible_diagonal_gets_fixed() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diagonal, vec![int(1), int(6)]);
        check(&m);
    }

    #[test]
    fn empty_shapes() {
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(3, 0));
    }

    proptest! {
        #[test]
        fn contract_on_random_matrices(
            (r, c, data) in (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
                (Just(r), Just(c), proptest::collection::vec(-20i64..=20, r * c))
            })
        ) {
            let rows: Vec<Vec<i64>> = data.chunks(c).map(|ch| ch.to_vec()).collect();
            let m = IntMatrix::from_rows(&rows);
            prop_assume!(m.rows() == r);
            check(&m);
        }
    }
}
