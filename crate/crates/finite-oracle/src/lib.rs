//! Ground truth on finite abelian groups: every subgroup, closures under a
//! set of endomorphisms, and the closure and (FS) bounds measured exactly.

pub mod bounds;
pub mod closure;
pub mod endo;
pub mod gf2;
pub mod group;
pub mod json;
pub mod lattice;
pub mod module;
pub mod table;

pub use bounds::{check_closure_bound, closure_bounds, fs_bound, ClosureBound, FsReport};
pub use endo::{random_endo, FiniteEndo};
pub use group::{p_groups, Elem, FiniteAbelianGroup};
pub use module::{cyclic_module, CyclicModule};
pub use table::{enumerate_subgroups, Subgroup, SubgroupTable};

/// Largest group order handled.
pub const DEFAULT_CAP: u32 = 1 << 14;
/// Largest number of subgroups kept in memory by the generic enumeration.
pub const LIMIT: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("group order {order} exceeds the cap {cap}")]
    CapExceeded { order: u64, cap: u32 },
    #[error("more than {limit} subgroups")]
    TooManySubgroups { limit: usize },
    #[error("{0} is not a p-group")]
    NotPGroup(String),
    #[error("cyclic module did not stabilize within {cap} iterates")]
    NotStabilized { cap: usize },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Group(#[from] inertia_group::GroupError),
    #[error(transparent)]
    Endo(#[from] inertia_endo::EndoError),
}

/// Phi-closures of a single subgroup.
pub fn phi_closure_up(g: &FiniteAbelianGroup, x: &Subgroup, phi: &[FiniteEndo]) -> Subgroup {
    let refs: Vec<&FiniteEndo> = phi.iter().collect();
    Subgroup::from_bits(g, closure::up(g, &x.bits, &refs))
}

pub fn phi_closure_down(g: &FiniteAbelianGroup, x: &Subgroup, phi: &[FiniteEndo]) -> Subgroup {
    let refs: Vec<&FiniteEndo> = phi.iter().collect();
    Subgroup::from_bits(g, closure::down(&x.bits, &refs))
}
