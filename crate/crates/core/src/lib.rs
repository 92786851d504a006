//! Torus-equivariant classes of orbit closures of the orthogonal and
//! symplectic groups on the flag variety of `GL(N)`.
//!
//! Four symmetric pairs are covered: `(GL(2n+1), O(2n+1))`,
//! `(GL(2n), O(2n))`, `(SL(2n), SO(2n))` and `(SL(2n), Sp(2n))`. Classes of
//! the closed orbits are known explicitly; every other class is obtained by
//! divided differences along the weak order, and everything can be checked
//! by restricting to the torus-fixed points of the flag variety.
//!
//! ```
//! use korbit::{compute_classes, Family, OrbitParameter, Polynomial, Ring, SymmetricPairConfig};
//!
//! let config = SymmetricPairConfig::new(Family::Sp, 2)?;
//! let (_graph, table) = compute_classes(&config)?;
//! let node = OrbitParameter::parse("(1,3)(2,4)", &config)?;
//! let expected = Polynomial::parse("x1 + x2", Ring::for_config(&config))?;
//! assert_eq!(table.get(&node), Some(&expected));
//! # Ok::<(), korbit::Error>(())
//! ```

pub mod class_engine;
pub mod closed_orbits;
pub mod combinatorics;
pub mod degeneracy;
pub mod error;
pub mod export;
pub mod localization;
pub mod polyring;
pub mod render;
pub mod weak_order;

pub use class_engine::{compute_classes, verify_table, ClassTable, TableCheck, TableReport};
pub use closed_orbits::{alternate_odd_class, closed_orbit_classes, ClosedOrbitDatum};
pub use combinatorics::{
    fpf_involutions, involutions, permutations, rank_number, rank_table, weyl_k_fixed_points,
    Component, Family, Permutation, SignedPermutation, SymmetricPairConfig,
};
pub use degeneracy::{
    closure_conditions, gram_matrix, parameter_flag, representative_flag, to_chern_formula,
    verify_orbit_membership, ChernFormula, FlagBasis, RankCondition,
};
pub use error::{Error, Result};
pub use localization::{
    fixed_point_in_orbit_closure, normal_weights, verify_closed_orbit_class,
    verify_vanishing_outside_closure, RestrictionMap, RootSystemK, VerificationReport,
    VerificationRow,
};
pub use polyring::{restrict_at_fixed_point, LinearWeight, Polynomial, Rational, Ring};
pub use weak_order::{
    component_representative, generate_graph, resolve_split_edge, weak_order_step, Edge,
    OrbitParameter, StepOutcome, WeakOrderGraph,
};
