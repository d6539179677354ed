//! Cobordism groups of stopped surfaces, computed combinatorially.
//!
//! A stopped surface is presented as a polygon word; its relative homology
//! `H_1(S, dS - f)` comes from a cellular model and Smith normal form, and the
//! cobordism group comes from a minimal full arc system with one relation per
//! complementary disk. The two are compared exactly.

pub mod cobordism;
pub mod cone;
pub mod disk;
pub mod error;
pub mod gluing;
pub mod group;
pub mod matrix;
pub mod par;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};
pub use group::AbelianGroup;
pub use matrix::{smith_normal_form, BigMatrix, IntMatrix, SmithForm};
pub use surface::{ConnectedSurface, StoppedSurface};
