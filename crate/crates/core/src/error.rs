use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("closure exceeded the order cap ({cap}); reached at least {reached} elements")]
    ClosureCapExceeded { cap: usize, reached: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("action image of element {0} is not an automorphism")]
    NotAutomorphism(usize),
    #[error("action is not a homomorphism into the automorphism group")]
    NotActionHomomorphism,
    #[error("matrices do not satisfy the relations of the acting group")]
    RelationMismatch,
    #[error("isomorphism test limited to order {cap}, got {order}")]
    IsoCapExceeded { cap: usize, order: usize },
    #[error("subgroup lattice exceeded {cap} subgroups")]
    SubgroupCountCapExceeded { cap: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("group is not soluble")]
    NotSoluble,
    #[error("formation {0} has no canonical satellite table")]
    NoSatellite(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("bad formation name `{0}`")]
    BadFormation(String),
    #[error("bad group spec: {0}")]
    BadSpec(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for the errors that come from a size limit rather than bad input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::ClosureCapExceeded { .. }
                | Error::IsoCapExceeded { .. }
                | Error::SubgroupCountCapExceeded { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
