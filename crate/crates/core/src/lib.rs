//! Projective models of isometries and legs, the sphere-condition duality
//! between them, and constructions of mobile pods with infinitely many legs.

pub mod error;
pub mod constructions;
pub mod duality;
pub mod models;
pub mod reproduce;
pub mod verify;

pub use error::{PodError, Result};
