pub mod error;
pub mod gfproj;
pub mod groups;
pub mod mapgeom;
pub mod record;
pub mod triples;
pub mod verify;

pub use error::{Error, Result};
