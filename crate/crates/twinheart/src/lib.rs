//! Hearts of twin cotorsion pairs on finite triangulated categories,
//! executed and verified over small prime fields.
//!
//! The engine works with completely finite data: a category is a table of
//! hom-space dimensions and structure constants over F_p, a triangulation is
//! a shift table plus a cone procedure, and every categorical claim
//! (exactness, universal properties, abelianness) is decided by linear
//! algebra and bounded enumeration.

// Much of the linear algebra walks several tables in lockstep by index;
// rewriting those loops with iterator adapters would obscure the indexing.
#![allow(clippy::needless_range_loop)]

pub mod conesearch;
pub mod error;
pub mod pairs;
pub mod quotient;
pub mod verify;
pub mod workbench;
pub mod gf;
pub mod heart;
pub mod io;
pub mod lincat;
pub mod nakayama;
pub mod pentagon;
pub mod tricat;

pub use error::{Error, Result};
pub use lincat::{LinearCategory, Mor, Obj, ValidationReport};
pub use nakayama::generate_nakayama_stable;
pub use pentagon::pentagon_substrate;
pub use tricat::{ConeBackend, StarCfg, StarResult, SubCat, Substrate, Triangle, TriStructure};
