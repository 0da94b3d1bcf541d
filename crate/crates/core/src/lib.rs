pub mod cli;
pub mod congruence;
pub mod energetics;
pub mod error;
pub mod fields;
pub mod geometry;
pub mod newman;
pub mod potential;
pub mod pulse;
pub mod quad;
pub mod scalar;
pub mod vector;
pub mod verify;

pub use error::{Error, Result};
pub use fields::Helicity;
pub use vector::{CVec3, Point3, Vec3};
