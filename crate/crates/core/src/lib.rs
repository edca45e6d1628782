pub mod adelic;
pub mod census;
pub mod cyclo;
pub mod error;
pub mod finite_field;
pub mod group;
pub mod linalg;
pub mod quaternion;
pub mod reps;
pub mod roundtrip;
pub mod spectral;
pub mod tame;

pub use error::{Error, Result};

/// Version tag written into every JSON and TSV output.
pub const SCHEMA_VERSION: u32 = 1;
