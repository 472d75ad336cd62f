//! Constructions of the classical distance-transitive families, together with
//! explicit automorphism generators, and the halved, folded, bipartite double,
//! distance-power and line-graph operators.
//!
//! ```
//! use geodex::families::{build, FamilySpec};
//! use geodex::Bounds;
//!
//! let built = build(&FamilySpec::Johnson { n: 5, k: 2 }, &Bounds::default()).unwrap();
//! assert_eq!(built.graph.n(), 10);
//! assert_eq!(built.graph.valency(), Some(6));
//! ```

mod forms;
mod graph;
pub mod io;
mod iso;
mod ops;
mod polar;
pub(crate) mod projective;
mod sets;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use graph::{induced_permutation, GeneratorSet, Graph, GraphMeta, Label};
pub use iso::{are_isomorphic, find_isomorphism};
pub use ops::{bipartite_double, distance_power, folded, halved, line_graph, Part};

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::spaces::{FormedSpace, SpaceKind};
use crate::Bounds;

/// A formed space named by kind, Witt index and field order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub kind: SpaceKind,
    pub omega: usize,
    pub q: u32,
}

impl SpaceSpec {
    pub fn new(kind: SpaceKind, omega: usize, q: u32) -> SpaceSpec {
        SpaceSpec { kind, omega, q }
    }

    pub fn build(&self) -> Result<FormedSpace> {
        FormedSpace::new(self.kind, self.omega, self.q)
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.kind.name(), self.omega, self.q)
    }
}

/// Which graph to build. Set families act on `{0, …, n−1}`; vector-space
/// families on `GF(q)^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    /// `k`-subsets of an `n`-set, adjacent when they meet in `k−1` points.
    Johnson {
        n: usize,
        k: usize,
    },
    /// `(k−1)`-subsets of a `(2k−1)`-set, adjacent when disjoint.
    Odd {
        k: usize,
    },
    /// `(k−1)`- and `k`-subsets of a `(2k−1)`-set, adjacent when nested.
    DoubledOdd {
        k: usize,
    },
    /// Johnson graph `J(2k, k)` modulo complementation.
    FoldedJohnson {
        k: usize,
    },
    /// Words of length `k` over an alphabet of size `m`.
    Hamming {
        k: usize,
        m: usize,
    },
    /// `k`-subspaces of `GF(q)^n`, adjacent when they meet in dimension `k−1`.
    Grassmann {
        n: usize,
        k: usize,
        q: u32,
    },
    /// `(k−1)`- and `k`-subspaces of `GF(q)^(2k−1)`, adjacent when nested.
    DoubledGrassmann {
        k: usize,
        q: u32,
    },
    /// Points versus hyperplanes of `GF(q)^n`.
    IncidenceDesign {
        n: usize,
        q: u32,
    },
    /// Points off a fixed hyperplane versus hyperplanes missing a fixed point.
    IncidenceOpposites {
        n: usize,
        q: u32,
    },
    DualPolar {
        space: SpaceSpec,
    },
    HalfDualPolar {
        space: SpaceSpec,
    },
    /// Singular `k`-subspaces; for `k < ω` adjacent when they span a singular
    /// `(k+1)`-space.
    PolarGrassmann {
        space: SpaceSpec,
        k: usize,
    },
    /// `m × k` matrices over `GF(q)`, adjacent when the difference has rank 1.
    BilinearForms {
        m: usize,
        k: usize,
        q: u32,
    },
    /// Alternating `k × k` matrices, adjacent at difference rank 2.
    AlternatingForms {
        k: usize,
        q: u32,
    },
    /// Hermitian `k × k` matrices over `GF(r²)`, adjacent at difference rank 1.
    HermitianForms {
        k: usize,
        r: u32,
    },
    /// Points versus totally isotropic lines of the symplectic quadrangle `W(3, q)`.
    SymplecticQuadrangleIncidence {
        q: u32,
    },
    Cycle {
        k: usize,
    },
}

/// A constructed graph with automorphism generators.
#[derive(Clone, Debug)]
pub struct Built {
    pub graph: Graph,
    pub gens: GeneratorSet,
    /// Remarks about the construction, such as omitted generators.
    pub notes: Vec<String>,
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Johnson { .. } => "johnson",
            FamilySpec::Odd { .. } => "odd",
            FamilySpec::DoubledOdd { .. } => "doubled_odd",
            FamilySpec::FoldedJohnson { .. } => "folded_johnson",
            FamilySpec::Hamming { .. } => "hamming",
            FamilySpec::Grassmann { .. } => "grassmann",
            FamilySpec::DoubledGrassmann { .. } => "doubled_grassmann",
            FamilySpec::IncidenceDesign { .. } => "incidence_design",
            FamilySpec::IncidenceOpposites { .. } => "incidence_opposites",
            FamilySpec::DualPolar { .. } => "dual_polar",
            FamilySpec::HalfDualPolar { .. } => "half_dual_polar",
            FamilySpec::PolarGrassmann { .. } => "polar_grassmann",
            FamilySpec::BilinearForms { .. } => "bilinear_forms",
            FamilySpec::AlternatingForms { .. } => "alternating_forms",
            FamilySpec::HermitianForms { .. } => "hermitian_forms",
            FamilySpec::SymplecticQuadrangleIncidence { .. } => "symplectic_quadrangle_incidence",
            FamilySpec::Cycle { .. } => "cycle",
        }
    }

    /// The field the vertices are built over, for the vector-space families.
    pub fn field(&self) -> Result<Option<Field>> {
        let q = match self {
            FamilySpec::Grassmann { q, .. }
            | FamilySpec::DoubledGrassmann { q, .. }
            | FamilySpec::IncidenceDesign { q, .. }
            | FamilySpec::IncidenceOpposites { q, .. }
            | FamilySpec::BilinearForms { q, .. }
            | FamilySpec::AlternatingForms { q, .. }
            | FamilySpec::SymplecticQuadrangleIncidence { q } => *q,
            FamilySpec::HermitianForms { r, .. } => {
                r.checked_mul(*r).ok_or_else(|| Error::BadParams(format!("r = {r} too large")))?
            }
            FamilySpec::DualPolar { space }
            | FamilySpec::HalfDualPolar { space }
            | FamilySpec::PolarGrassmann { space, .. } => space.q,
            _ => return Ok(None),
        };
        Field::of_order(q).map(Some)
    }

    /// The formed space, for the polar families.
    pub fn space(&self) -> Result<Option<FormedSpace>> {
        match self {
            FamilySpec::DualPolar { space }
            | FamilySpec::HalfDualPolar { space }
            | FamilySpec::PolarGrassmann { space, .. } => space.build().map(Some),
            FamilySpec::SymplecticQuadrangleIncidence { q } => FormedSpace::new(SpaceKind::Symplectic, 2, *q).map(Some),
            _ => Ok(None),
        }
    }

    fn meta(&self) -> GraphMeta {
        let value = serde_json::to_value(self).expect("serialisable spec");
        let mut meta = GraphMeta::new(self.name());
        if let serde_json::Value::Object(map) = value {
            for (k, v) in map {
                if k != "family" {
                    meta.params.insert(k, v);
                }
            }
        }
        meta
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.name();
        match self {
            FamilySpec::Johnson { n, k } => write!(f, "{name}({n},{k})"),
            FamilySpec::Odd { k }
            | FamilySpec::DoubledOdd { k }
            | FamilySpec::FoldedJohnson { k }
            | FamilySpec::Cycle { k } => {
                write!(f, "{name}({k})")
            }
            FamilySpec::Hamming { k, m } => write!(f, "{name}({k},{m})"),
            FamilySpec::Grassmann { n, k, q } => write!(f, "{name}({n},{k},{q})"),
            FamilySpec::DoubledGrassmann { k, q } | FamilySpec::AlternatingForms { k, q } => {
                write!(f, "{name}({k},{q})")
            }
            FamilySpec::IncidenceDesign { n, q } | FamilySpec::IncidenceOpposites { n, q } => {
                write!(f, "{name}({n},{q})")
            }
            FamilySpec::DualPolar { space } | FamilySpec::HalfDualPolar { space } => write!(f, "{name}({space})"),
            FamilySpec::PolarGrassmann { space, k } => write!(f, "{name}({space},{k})"),
            FamilySpec::BilinearForms { m, k, q } => write!(f, "{name}({m},{k},{q})"),
            FamilySpec::HermitianForms { k, r } => write!(f, "{name}({k},{r})"),
            FamilySpec::SymplecticQuadrangleIncidence { q } => write!(f, "{name}({q})"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses the [`Display`](fmt::Display) form, e.g. `johnson(5,2)` or
    /// `polar_grassmann(sp,3,2,2)`. Short names such as `J`, `H`, `G` and `D`
    /// are accepted too.
    fn from_str(s: &str) -> Result<FamilySpec> {
        let s = s.trim();
        let (name, rest) =
            s.split_once('(').ok_or_else(|| Error::BadParams(format!("expected name(args), got '{s}'")))?;
        let args = rest.strip_suffix(')').ok_or_else(|| Error::BadParams(format!("missing ')' in '{s}'")))?;
        let args: Vec<&str> = args.split(',').map(str::trim).filter(|a| !a.is_empty()).collect();
        let num = |i: usize| -> Result<usize> {
            args.get(i)
                .ok_or_else(|| Error::BadParams(format!("'{s}' needs at least {} arguments", i + 1)))?
                .parse::<usize>()
                .map_err(|e| Error::BadParams(format!("argument {} of '{s}': {e}", i + 1)))
        };
        let q32 = |i: usize| -> Result<u32> {
            u32::try_from(num(i)?).map_err(|_| Error::BadParams(format!("field order in '{s}' too large")))
        };
        let space = |i: usize| -> Result<SpaceSpec> {
            let kind: SpaceKind =
                args.get(i).ok_or_else(|| Error::BadParams(format!("'{s}' needs a space kind")))?.parse()?;
            Ok(SpaceSpec { kind, omega: num(i + 1)?, q: q32(i + 2)? })
        };
        let want = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::BadParams(format!("'{s}' takes {n} arguments, got {}", args.len())))
            }
        };
        let spec = match name.trim().to_ascii_lowercase().as_str() {
            "johnson" | "j" => {
                want(2)?;
                FamilySpec::Johnson { n: num(0)?, k: num(1)? }
            }
            "odd" | "o" => {
                want(1)?;
                FamilySpec::Odd { k: num(0)? }
            }
            "doubled_odd" | "2o" => {
                want(1)?;
                FamilySpec::DoubledOdd { k: num(0)? }
            }
            "folded_johnson" => {
                want(1)?;
                FamilySpec::FoldedJohnson { k: num(0)? }
            }
            "hamming" | "h" => {
                want(2)?;
                FamilySpec::Hamming { k: num(0)?, m: num(1)? }
            }
            "grassmann" | "g" => {
                want(3)?;
                FamilySpec::Grassmann { n: num(0)?, k: num(1)?, q: q32(2)? }
            }
            "doubled_grassmann" | "2g" => {
                want(2)?;
                FamilySpec::DoubledGrassmann { k: num(0)?, q: q32(1)? }
            }
            "incidence_design" | "id" => {
                want(2)?;
                FamilySpec::IncidenceDesign { n: num(0)?, q: q32(1)? }
            }
            "incidence_opposites" | "idop" => {
                want(2)?;
                FamilySpec::IncidenceOpposites { n: num(0)?, q: q32(1)? }
            }
            "dual_polar" | "d" => {
                want(3)?;
                FamilySpec::DualPolar { space: space(0)? }
            }
            "half_dual_polar" => {
                want(3)?;
                FamilySpec::HalfDualPolar { space: space(0)? }
            }
            "polar_grassmann" | "pg" => {
                want(4)?;
                FamilySpec::PolarGrassmann { space: space(0)?, k: num(3)? }
            }
            "bilinear_forms" | "bf" => {
                want(3)?;
                FamilySpec::BilinearForms { m: num(0)?, k: num(1)?, q: q32(2)? }
            }
            "alternating_forms" | "af" => {
                want(2)?;
                FamilySpec::AlternatingForms { k: num(0)?, q: q32(1)? }
            }
            "hermitian_forms" | "hf" => {
                want(2)?;
                FamilySpec::HermitianForms { k: num(0)?, r: q32(1)? }
            }
            "symplectic_quadrangle_incidence" | "go" => {
                want(1)?;
                FamilySpec::SymplecticQuadrangleIncidence { q: q32(0)? }
            }
            "cycle" | "c" => {
                want(1)?;
                FamilySpec::Cycle { k: num(0)? }
            }
            other => return Err(Error::BadParams(format!("unknown family '{other}'"))),
        };
        Ok(spec)
    }
}

fn check_count(count: f64, bounds: &Bounds) -> Result<()> {
    if count > bounds.max_vertices as f64 {
        Err(Error::TooLarge(format!("{count} vertices exceeds the bound of {}", bounds.max_vertices)))
    } else {
        Ok(())
    }
}

fn field_of(q: u32) -> Result<Field> {
    Field::of_order(q)
}

/// Builds the graph and its generators, verifying that every generator is an
/// automorphism and that the graph is connected.
pub fn build(spec: &FamilySpec, bounds: &Bounds) -> Result<Built> {
    let meta = spec.meta();
    let mut built = match *spec {
        FamilySpec::Johnson { n, k } => sets::johnson(n, k, meta, bounds)?,
        FamilySpec::Odd { k } => sets::odd(k, meta, bounds)?,
        FamilySpec::DoubledOdd { k } => sets::doubled_odd(k, meta, bounds)?,
        FamilySpec::FoldedJohnson { k } => sets::folded_johnson(k, meta, bounds)?,
        FamilySpec::Hamming { k, m } => sets::hamming(k, m, meta, bounds)?,
        FamilySpec::Cycle { k } => sets::cycle(k, meta, bounds)?,
        FamilySpec::Grassmann { n, k, q } => projective::grassmann(&field_of(q)?, n, k, meta, bounds)?,
        FamilySpec::DoubledGrassmann { k, q } => projective::doubled_grassmann(&field_of(q)?, k, meta, bounds)?,
        FamilySpec::IncidenceDesign { n, q } => projective::incidence_design(&field_of(q)?, n, meta, bounds)?,
        FamilySpec::IncidenceOpposites { n, q } => projective::incidence_opposites(&field_of(q)?, n, meta, bounds)?,
        FamilySpec::DualPolar { space } => polar::polar_grassmann(&space.build()?, space.omega, meta, bounds)?,
        FamilySpec::PolarGrassmann { space, k } => polar::polar_grassmann(&space.build()?, k, meta, bounds)?,
        FamilySpec::HalfDualPolar { space } => {
            if space.kind != SpaceKind::OrthogonalPlus {
                return Err(Error::BadParams(format!(
                    "half dual polar graphs need an orthogonal_plus space, got {}",
                    space.kind
                )));
            }
            let dual = polar::polar_grassmann(&space.build()?, space.omega, meta.clone(), bounds)?;
            let (mut graph, gens) = halved(&dual.graph, &dual.gens, Part::Plus)?;
            graph.set_meta(meta);
            Built { graph, gens, notes: dual.notes }
        }
        FamilySpec::SymplecticQuadrangleIncidence { q } => polar::quadrangle_incidence(q, meta, bounds)?,
        FamilySpec::BilinearForms { m, k, q } => forms::bilinear(&field_of(q)?, m, k, meta, bounds)?,
        FamilySpec::AlternatingForms { k, q } => forms::alternating(&field_of(q)?, k, meta, bounds)?,
        FamilySpec::HermitianForms { k, r } => {
            let q = r.checked_mul(r).ok_or_else(|| Error::BadParams(format!("r = {r} too large")))?;
            forms::hermitian(&field_of(q)?, k, meta, bounds)?
        }
    };
    if !built.graph.is_connected() {
        return Err(Error::Disconnected);
    }
    built.gens.verify(&built.graph)?;
    built.notes.sort();
    built.notes.dedup();
    Ok(built)
}
