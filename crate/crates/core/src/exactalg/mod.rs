//! Exact linear algebra over `Z`, `Q` and `F_p`, and homology of free chain
//! complexes.

pub mod complex;
pub mod domain;
pub mod elim;
pub mod field;
pub mod matrix;
pub mod smith;

pub use complex::{homology, rank, FreeChainComplex, HomologyGroup, HomologyResult};
pub use domain::{CoefficientDomain, Prime};
pub use elim::{field_rank, rank_of_vectors, Echelon};
pub use field::{with_field, Field, FieldTask, Fp, Rat};
pub use matrix::{ExactMatrix, SparseMatrix, SparseVec};
pub use smith::{canonical_torsion, smith_normal_form, SmithForm};
