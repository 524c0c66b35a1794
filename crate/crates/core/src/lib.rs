//! Self-dual codes over F2, F2 + uF2 and F2 + uF2 + vF2 + uvF2 from
//! λ-circulant four-circulant constructions, their bordered and extended
//! variants, and verification of extremality through weight distributions.

pub mod circulant;
pub mod codec;
pub mod constructions;
pub mod error;
pub mod f2;
pub mod rings;
pub mod search;
pub mod tables;
pub mod weightdist;

pub use error::{Error, Result};
