//! Finite groups as Cayley tables, with the machinery to compute
//! nilpotentizers `nil(x) = { y : <x, y> nilpotent }` and the structural
//! subgroups around them.
//!
//! ```
//! use nilpotentizer::{catalog, Analysis, BuildOptions, Group};
//!
//! let s4 = Group::build(&catalog::symmetric(4), &BuildOptions::default()).unwrap();
//! let x = s4.resolve_element("(1 2)(3 4)").unwrap();
//! let a = Analysis::new(s4);
//! let nil = a.nil_element(x);
//! assert_eq!(nil.len(), 16);
//! assert!(!a.group().is_closed(&nil));
//! ```

mod analysis;
pub mod arith;
pub mod catalog;
mod description;
mod element_set;
mod error;
mod group;
mod nilpotentizer;
mod perm;
mod product;
mod quotient;
pub mod store;
mod structure;
mod subgroup;
mod verdict;
mod word;

pub use analysis::Analysis;
pub use description::{BuildOptions, GroupDescription, DEFAULT_ORDER_CAP, DEFAULT_SEED};
pub use element_set::ElementSet;
pub use error::{GroupError, Result};
pub use group::Group;
pub use nilpotentizer::{CommutatorCondition, NilProfile, QuotientAnalysis, DEFAULT_WORK_CAP};
pub use perm::Perm;
pub use product::DirectProduct;
pub use quotient::Quotient;
pub use structure::{SeriesKind, SeriesReport, StructureProfile, SylowData};
pub use subgroup::{Subgroup, SubgroupBuilder};
pub use verdict::{Outcome, Status};
