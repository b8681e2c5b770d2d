//! Permutation-group engine for Sylow, Fitting, obliquity and fusion invariants
//! of finite groups and of finite towers approximating profinite groups.

pub mod backtrack;
pub mod caps;
pub mod chain;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod fusion;
pub mod group;
pub mod hom;
pub mod linalg;
pub mod normal;
pub mod perm;
pub mod series;
pub mod sylow;
pub mod towers;

pub use caps::Caps;
pub use error::{GroupError, Result};
pub use group::PermGroup;
pub use hom::GroupHom;
pub use perm::Permutation;
