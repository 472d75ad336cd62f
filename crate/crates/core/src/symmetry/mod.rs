//! Permutation groups, orbit computations, transitivity verdicts and
//! arithmetic screens.
//!
//! Verdicts are relative to the group generated by the supplied generators,
//! which may be a proper subgroup of the full automorphism group. A `true`
//! verdict is therefore conclusive; a `false` one may reflect missing
//! generators.
//!
//! ```
//! use geodex::families::{build, FamilySpec};
//! use geodex::symmetry::{check_distance_transitive, Bsgs};
//! use geodex::Bounds;
//!
//! let p = build(&FamilySpec::Odd { k: 3 }, &Bounds::default()).unwrap();
//! assert_eq!(Bsgs::new(&p.gens.perms, 10).unwrap().order().to_string(), "120");
//! assert!(check_distance_transitive(&p.graph, &p.gens.perms).unwrap().holds);
//! ```

pub mod bsgs;
pub mod classical;
mod decimal;
pub mod orbits;
pub mod perm;
pub mod screens;

pub use bsgs::Bsgs;
pub use classical::{psigmasp_order, psp_order, sp_order};
pub use orbits::{
    all_arcs, all_geodesics, check_distance_transitive, check_geodesic_transitive, check_geodesic_transitive_rooted,
    geodesics_from, is_group_primitive, orbits_on_arcs, orbits_on_tuples, ObjectClass, OrbitReport,
    TransitivityVerdict,
};
pub use perm::Permutation;
pub use screens::{census_screens, divisibility_screen, sporadic_screens, ScreenReport, SporadicScreen, TaylorScreen};
