//! The quadratic algebra attached to a finite abelian group, its graded
//! modules, and Tor computed from the reduced bar complex.

pub mod algebra;
pub mod bar;
pub mod group;
pub mod presentation;
pub mod realize;
pub mod regularity;

pub use algebra::{ap_multiply, ApAlgebra, Monomial};
pub use bar::{bar_tor_module, bar_tor_trivial, tor_of_realized, TorTable};
pub use group::{FiniteAbelianGroup, GroupElem};
pub use presentation::{example_module, GradedModulePresentation, EXAMPLE_MODULE_TEXT};
pub use realize::{realize_module, ModuleSummary, RealizedModule};
pub use regularity::{
    h_number, judge_regularity, random_family, random_presentation, verify_regularity_lemma,
    verify_stabilization_surjectivity, HNumber, RegularityReport, Status, SurjectivityReport,
};
