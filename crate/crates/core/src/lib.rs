//! Spherical unitary duals of quantum groups: q-numbers, type A weights,
//! characters, an explicit model of the principal series of `SU_q(2)`, and
//! the unitarizability classification for `SL_q(3,ℂ)` together with the
//! property (T) isolation tests.

pub mod charrep;
pub mod cli;
pub mod error;
pub mod qnum;
pub mod spectra;
pub mod suq2;
pub mod weyl;

pub use charrep::{char_value, freudenthal, qdim, tensor_decompose, FusionDecomposition, WeightMultiplicityTable};
pub use error::{Error, Result};
pub use qnum::{QContext, RealLattice};
pub use spectra::{
    classify_su3, fiber_dimension_allowed, has_invariant_form, isolation_witness, norm_bound_test, IsolationVerdict,
    NonUnitaryReason, UnitaryClass,
};
pub use suq2::{classify_su2, intertwiner_closed_form, intertwiner_numeric, principal_series};
pub use weyl::{permutations, CartanData, DominantWeight, Root, Weight, XPoint};
