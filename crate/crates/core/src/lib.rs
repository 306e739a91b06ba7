//! Formation theory on small finite groups: πF-hypercentres, intersections of
//! F-maximal subgroups, K-F-subnormality, and exhaustive checks of the
//! relations between them over a catalog of groups.

pub mod analyze;
pub mod bits;
pub mod catalog;
pub mod chief;
pub mod criticality;
pub mod error;
pub mod formation;
pub mod group;
pub mod intersections;
pub mod lattice;
pub mod module;
pub mod perm;
pub mod primes;
pub mod quotient;
pub mod spec;
pub mod subgroup;
pub mod suites;

pub use chief::{
    chief_series, chief_series_through, z_f, z_pi_f, z_pi_f_oracle, ChiefFactor, ChiefSeries,
};
pub use error::{Error, Result};
pub use formation::Formation;
pub use group::{
    are_isomorphic, group_from_permutations, Group, DEFAULT_ISO_CAP, DEFAULT_ORDER_CAP,
};
pub use intersections::{
    f_max_report, f_maximal_subgroups, int_f, int_star_f, is_k_f_subnormal, FMaxReport,
};
pub use lattice::{Lattice, NamedSubgroup, DEFAULT_SUBGROUP_CAP};
pub use perm::Perm;
pub use primes::PrimeSet;
pub use quotient::{quotient_group, QuotientMap};
pub use subgroup::SubgroupSet;
