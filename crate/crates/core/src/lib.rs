//! Distance-transitive graphs over finite geometries: construction,
//! geodesic enumeration, automorphism orbits and the polar Grassmann
//! geodesic calculus.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

pub mod algebra;
pub mod error;
pub mod families;
pub mod metrics;
pub mod polar_geo;
pub mod spaces;
pub mod symmetry;

pub use error::{Error, Result};

/// Size limits shared by every enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Bounds {
    /// Largest `q^n` for which vectors or subspaces of `GF(q)^n` are listed.
    pub max_vectors: u64,
    /// Largest vertex count of a constructed graph.
    pub max_vertices: usize,
    /// Largest number of flag pairs mapped by a bijection check.
    pub max_flag_maps: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_vectors: 1 << 24, max_vertices: 100_000, max_flag_maps: 10_000_000 }
    }
}
