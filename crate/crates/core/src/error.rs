use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("elements belong to different groups")]
    MixedOwners,

    #[error(
        "homomorphism is not well defined: relation column {column} does not map into the target relation lattice"
    )]
    IllDefinedHom { column: usize },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),

    #[error("cocycle condition fails at sigma={sigma}, tau={tau}")]
    NotCocycle { sigma: usize, tau: usize },

    #[error("group is not cyclic")]
    NotCyclic,

    #[error("unsupported representation: {0}")]
    Unsupported(String),

    #[error("modules differ")]
    ModuleMismatch,

    #[error("component error: {0}")]
    Component(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid field: {0}")]
    Field(String),

    #[error("singular curve: 4a^3 + 27b^2 = 0")]
    SingularCurve,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("no degree-one generator designated")]
    NoDegreeOne,

    #[error("identity violated: {0}")]
    Violation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
