//! Symmetric-times-exterior cdgas: the one on `Sym^2` of a vector space, its
//! multiset blocks, the self-conjugate partition formula for its rational
//! homology, and the group-indexed variant.

pub mod cdga;
pub mod dprime;
pub mod partition;

pub use cdga::{
    below_sqrt_line, block_decompose, build_block, build_jw_slice, jw_homology, multisets, squarefree_block, Content,
    JwSlice, MultisetBlock, DEFAULT_BLOCK_CAP,
};
pub use dprime::{
    build_dprime_slice, closed_generator_count, dprime_homology, verify_tensor_decomposition, DPrimeSlice,
    DecompositionReport,
};
pub use partition::{partition_formula_dim, partitions, self_conjugate_partitions, Partition};
