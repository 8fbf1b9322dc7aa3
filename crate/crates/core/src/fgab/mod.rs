//! Finitely generated abelian groups as integer lattice quotients.

mod group;
mod hom;
mod lattice;
mod matrix;
mod snf;

pub use group::{format_factors, format_vec, gcd, lcm, AbQuotient, AbSubgroup, FgAbGroup, GroupElem, Simplified};
pub use hom::AbHom;
pub use lattice::{integer_kernel, lattice_basis, solve_exact, Congruences, ExactSolver};
pub use matrix::{int, ints, is_zero, vec_add, vec_neg, vec_scale, vec_sub, zero_vec, Int, IntMatrix};
pub use snf::{smith_normal_form, Smith};
