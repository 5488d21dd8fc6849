//! Automorphisms of finite group extensions `1 → H → G → Q → 1`.

pub mod abelian;
pub mod autos;
pub mod caps;
pub mod compat;
pub mod corpus;
pub mod cohomology;
pub mod error;
pub mod extensions;
pub mod groups;
pub mod io;
pub mod perm;

pub use caps::Caps;
pub use error::{Error, Result};
pub use groups::{Group, GroupSpec, Hom, Subgroup};
pub use perm::{Automorphism, Perm, PermGroup};
