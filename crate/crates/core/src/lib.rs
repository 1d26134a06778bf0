//! Finite groups given by Cayley tables or generators, with the abelian-simple
//! length, generalized derived series, twisted wreath products, `F_p`-modules,
//! matrix groups and Larsen-Pink filtrations.

pub mod catalog;
pub mod construct;
pub mod derived;
pub mod error;
pub mod fp;
pub mod group;
pub mod hom;
pub mod iso;
pub mod keys;
pub mod lp;
pub mod matrix;
pub mod normal;
pub mod oracle;
pub mod perm;
pub mod ring;
pub mod series;
pub mod subgroup;
pub mod verify;
pub mod wreath;

pub use error::{Error, Result};
pub use group::{Backend, Caps, Group};
pub use hom::Homomorphism;
pub use subgroup::Subgroup;
