//! Harmonic and proper-biharmonic regular orbits of cohomogeneity-one
//! commutative Hermann actions on compact symmetric spaces.
//!
//! A regular orbit of such an action is a homogeneous hypersurface whose
//! geometry is controlled by a rank-one symmetric triad: a pattern of
//! restricted roots `{α, 2α}` together with integer multiplicities.  Under
//! the metric induced by the negative Killing form the ambient space is
//! Einstein with constant `1/2`, so an orbit with constant mean curvature is
//! proper biharmonic exactly when `‖B‖² = 1/2` and `τ ≠ 0`.  Both conditions
//! reduce to quadratic equations in `tan²ϑ` whose solutions are quadratic
//! surds.
//!
//! The crate is organised in four layers:
//!
//! * [`surd`] — exact arithmetic on quadratic surds `(p + q√d)/r`;
//! * [`roots`] and [`triad`] — root systems, symmetric triads, multiplicity
//!   axioms and the rank-one triad types with their cell structure;
//! * [`catalog`](mod@catalog) and [`solver`] — the classified families of commutative
//!   Hermann actions of cohomogeneity one, the closed forms for `‖B‖²` and
//!   the tension field, and the exact harmonic/biharmonic solver;
//! * [`oracle`] — a brute-force verifier that rebuilds `so(n)` and `su(n)`
//!   with two commuting involutions, recovers the restricted roots and
//!   multiplicities from eigenspaces of `(ad H)²`, assembles the second
//!   fundamental form bracket by bracket, and cross-checks the closed forms.
//!
//! ```
//! use hermann::{classify, CaseGroup, Triad1, TriadKind};
//!
//! // the (E6, SO(10)·U(1), F4) family: type III-BC1 with (8, 7, 8, 1)
//! let triad = Triad1::new(TriadKind::IiiBc1, 8, 7, 8, 1)?;
//! let result = classify(&triad);
//! assert_eq!(result.case, CaseGroup::TwoProper);
//! let proper: Vec<i64> = result.proper.iter().map(|u| u.p()).collect();
//! assert_eq!(proper, vec![3, 5]); // tan²ϑ of the two proper biharmonic orbits
//! # Ok::<(), hermann::Error>(())
//! ```

// index loops over Gram matrices and bracket tables follow the math
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod oracle;
pub mod roots;
pub mod solver;
pub mod surd;
pub mod triad;

pub use catalog::{catalog, CaseGroup, CatalogEntry, TheoremCase};
pub use solver::{classify, classify_catalog, Classification};
pub use surd::QuadraticSurd;
pub use triad::{Triad1, TriadKind};

/// Exact rational scalar used throughout the crate.
pub type Rational = num_rational::Ratio<i64>;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid triad: {0}")]
    InvalidTriad(String),
    #[error("incompatible radicands √{0} and √{1}")]
    IncompatibleRadicands(i64, i64),
    #[error("singular angle s = {s}: {wall}")]
    SingularAngle { s: f64, wall: String },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Einstein constant of a compact semisimple quotient carrying the metric
/// induced by the negative Killing form: the Ricci transform is `(1/2)·Id`.
/// This is the threshold value for `‖B‖²` in the biharmonic criterion.
pub fn einstein_constant() -> Rational {
    Rational::new(1, 2)
}
