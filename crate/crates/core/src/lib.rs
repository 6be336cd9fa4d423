//! Exact computations for homological stability of general linear groups.
//!
//! * [`exactalg`]: sparse exact matrices, Smith normal form, homology of free
//!   chain complexes over `Z`, `Q` and `Fp`.
//! * [`apalgebra`]: the quadratic algebra of a finite abelian group, graded
//!   module presentations and Tor through the bar complex.
//! * [`jwcdga`]: slices of the bigraded cdga and its twisted variant, split
//!   into multiset blocks.
//! * [`complexes`]: simplicial complexes, finite posets, matching complexes
//!   and lists of blocks.
//! * [`boundprop`]: propagation of vanishing bounds through a chart.
//! * [`grouppres`]: finitely presented groups, abelianization and 2x2
//!   matrices over `Q(sqrt(-5))`.
//! * [`verify`]: the numbered verification suite.
//!
//! The guide in `book/` walks through each module with runnable examples.
//!
//! ```
//! use homstab::complexes::matching_complex;
//! use homstab::exactalg::CoefficientDomain;
//!
//! let h = matching_complex(7)?.reduced_homology(CoefficientDomain::Integers);
//! assert_eq!(h.degree(1).render(h.domain), "Z/3");
//! # Ok::<(), homstab::Error>(())
//! ```

pub mod apalgebra;
pub mod boundprop;
pub mod complexes;
pub mod error;
pub mod exactalg;
pub mod grouppres;
pub mod jwcdga;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/exact-homology.md")]
    pub mod exact_homology {}
    #[doc = include_str!("../../../book/src/group-algebras.md")]
    pub mod group_algebras {}
    #[doc = include_str!("../../../book/src/cdga.md")]
    pub mod cdga {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    pub mod complexes {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    pub mod bounds {}
    #[doc = include_str!("../../../book/src/groups.md")]
    pub mod groups {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
