//! Simplicial complexes, posets, and the list posets built from a finite
//! abelian group.

mod poset;
mod rbs;
mod simplicial;

pub use poset::{x_elements, x_poset, FinitePoset};
pub use rbs::{
    boundary_rbs, boundary_rbs_elements, check_rbs, merges_to, rbs_elements, rbs_poset, rbs_to_sdx, sdx_chains, sdx_le,
    sdx_to_rbs, RbsCheck, RbsList, SdChain,
};
pub use simplicial::{matching_complex, SimplicialComplex};
