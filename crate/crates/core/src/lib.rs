//! Extended Weyl groups of domestic and wild type.
//!
//! An extended Coxeter–Dynkin diagram (a star with a doubled center) defines
//! a degenerate symmetric form and a reflection group `W`. This crate builds
//! `W` exactly over the integers, splits its elements into a projected part
//! and a translation vector, and searches the Hurwitz action of braid groups
//! on reduced reflection factorizations of Coxeter transformations.

pub mod absorder;
pub mod arith;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod group;
pub mod hurwitz;
pub mod lattice;
pub mod linalg;
pub mod rootsys;
pub mod space;

pub use diagram::{DiagramSpec, Signature, Vertex, WeylType};
pub use error::{Error, Result};
pub use group::{ExtendedWeylGroup, GroupElement, NormalForm, Reflection};
pub use space::{ExtendedSpace, IntVector, ProjVector};
