//! Exact convolution algebra of finitely supported measures on
//! discrete semigroups, together with the orbit machinery that builds
//! and verifies ambit witnesses.
//!
//! Everything is computed in arbitrary-precision rational arithmetic;
//! algebraic laws are checked as exact structural equalities, never up
//! to a tolerance. The main pieces:
//!
//! - [`semigroup`]: finite multiplication tables and enumerable
//!   built-in families (free words, naturals, left/right zero), with
//!   canonical enumeration and cancellation-evidence checkers;
//! - [`uniform`]: pseudometrics on finite windows, Lipschitz-ball
//!   membership, and quantitative equicontinuity reports;
//! - [`measure`]: molecular measures with convolution, norms,
//!   positivity, and an exact Lipschitz-dual distance;
//! - [`orbit`]: right translations, orbit traces, and the map from
//!   measures to mixtures of translates;
//! - [`ambit`]: the neighborhood stream, greedy disjoint selection,
//!   and construction/verification of the piecewise orbit function;
//! - [`io`]: canonical JSON document formats for all of the above;
//! - [`sampling`] and [`properties`]: seeded generators and the law
//!   suites built on them.
//!
//! All types are immutable after construction and all operations are
//! pure, so values can be shared freely across threads.

pub mod ambit;
pub mod error;
pub mod io;
mod lp;
pub mod measure;
pub mod orbit;
pub mod properties;
pub mod rat;
pub mod sampling;
pub mod semigroup;
pub mod uniform;

pub use ambit::{
    build_ambit_function, enumerate_neighborhoods, greedy_select, verify_ambit, AmbitWitness,
    BasicNeighborhood, EpsilonRule, WitnessCheck, WitnessReport,
};
pub use error::{Error, Result};
pub use measure::{
    action_convolve, difference, linear_combine, ueb_distance, FnAction, MolecularMeasure,
    SelfAction, SemigroupAction,
};
pub use orbit::{find_approximant, orbit_trace, phi_map, right_translate, OrbitTrace};
pub use rat::{format_rat, parse_rat, rat, rat_int, Rat};
pub use sampling::{Sampler, DEFAULT_SEED};
pub use semigroup::{
    check_associativity, check_separating_translations, check_weak_left_cancellation,
    preimage_set, Associativity, ClosedFormVerdict, Element, Family, PreimageReport, Semigroup,
    SeparationReport, Window,
};
pub use uniform::{
    check_distance_matrix, equicontinuity_report, equicontinuity_report_with, lip_membership,
    validate_pseudometric, EquicontinuityReport, LipCheck, MatrixCheck, MetricTable, Pseudometric,
    WindowFunction,
};
