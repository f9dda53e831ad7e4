//! Explicit model of the quantum Lorentz group `SL_q(2,ℂ)` built from
//! `U_q(𝔰𝔩₂)` matrices and matrix coefficients of `SU_q(2)`.

pub mod cg;
pub mod coeff;
pub mod intertwiner;
pub mod principal;
pub mod uq;

pub use cg::{cg_decompose, CGIsometry};
pub use coeff::{antipode, antipode_gen, coefficient_action, star, star_gen, CcElement, Coefficient, Generator, Side};
pub use intertwiner::{classify_su2, intertwiner_closed_form, intertwiner_numeric};
pub use principal::{haar_dual_weight, invariant_pairing, principal_series, PrincipalSeriesModel};
pub use uq::{uq_sl2_module, CMat, SU2Module};
