mod group;
mod gset;
mod module;
mod tabulated;

pub use group::{FiniteGroup, Subgroup};
pub use gset::GSet;
pub(crate) use module::stacked_conditions;
pub use module::{
    equivariant_hom_basis, pointmap_from_representatives, pointmap_violation, random_equivariant_pointmap,
    EquivariantHom, GModule, SubModule,
};
pub use tabulated::{
    subquotient_invariant_factors, tabulated_invariant_factors, AdditionTable, FiniteAbelian, TabulatedModule,
};
