//! Brute-force matrix Lie-algebra verification of the closed forms.
//!
//! The oracle rebuilds the orbit geometry from first principles: explicit
//! bases of `so(1+b+c)` and realified `su(1+b+c)`, an exact bracket table,
//! the Killing form as adjoint traces of structure constants, restricted
//! roots and multiplicities from eigenspaces of `(ad Ĥ)²`, and the second
//! fundamental form assembled bracket by bracket.  None of those steps
//! shares a formula with [`crate::solver`], so agreement between the two
//! paths is a genuine cross-check.

mod algebra;
mod builders;
mod decomp;
mod exact;
mod verify;

pub use algebra::{Involution, MatrixLieAlgebra};
pub use builders::{build_so_triad, build_su_triad, HermannTriple, DEFAULT_SIZE_CAP};
pub use decomp::{Decomposition, RootBlock};
pub use verify::{
    sample_angles, second_fundamental_form, verify_closed_forms, verify_duality, DualityReport,
    OracleReport, SecondFormEval,
};
