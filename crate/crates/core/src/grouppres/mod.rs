//! Finitely presented groups, abelianization, and exact matrix checks of
//! presentations over `Z[w]`, `w^2 = -5`.

mod builtin;
mod quadint;
mod word;

pub use builtin::{
    abelianization_table, builtin, builtin_fgt_sl, builtin_swan_sl2, derive_conjugation_action, evaluate,
    extension_report, reflection, verify_relators, ActionCertificate, ActionEntry, ExtensionReport, MatrixPresentation,
    RelatorCheck, RelatorReport, TableEntry,
};
pub use quadint::{Matrix2, QuadInt};
pub use word::{abelianize, semidirect_z2, AbelianGroupResult, GroupPresentation, Word};
