//! Invariant sesquilinear forms, cyclicity of the spherical vector, and
//! irreducibility of `L(0,ν)`.

use crate::error::Result;
use crate::qnum::{QContext, RealLattice};
use crate::weyl::{in_imaginary_root_lattice, permutations, x_reduce, CartanData, Weight};

/// A permutation `w` with `−ν̄ ≡ wν` modulo `i·(2π/|log q|)·Q`, if any.
pub fn invariant_form_witness(ctx: &QContext, cd: &CartanData, nu: &Weight) -> Result<Option<Vec<usize>>> {
    let rep = x_reduce(ctx, cd, nu)?.rep;
    let target = rep.neg_conj();
    let period = ctx.lattice_period();
    for w in permutations(cd.n()) {
        let d = target.sub(&rep.permute(&w));
        if in_imaginary_root_lattice(ctx, &d, period) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn has_invariant_form(ctx: &QContext, cd: &CartanData, nu: &Weight) -> Result<bool> {
    Ok(invariant_form_witness(ctx, cd, nu)?.is_some())
}

/// No positive root pairs into `lattice + i·(2π/|log q|)·ℤ`.
fn avoids(ctx: &QContext, cd: &CartanData, nu: &Weight, lattice: &RealLattice) -> Result<bool> {
    cd.check(nu)?;
    let step = ctx.lattice_period();
    Ok(cd
        .positive_roots()
        .iter()
        .all(|r| !ctx.lattice_member(r.pair(nu), lattice, step)))
}

/// The spherical vector generates `L(0,ν)`: `(ν,α∨) ∉ 2ℤ₋ + 2πi log(q)⁻¹ℤ`.
pub fn is_spherical_cyclic(ctx: &QContext, cd: &CartanData, nu: &Weight) -> Result<bool> {
    avoids(ctx, cd, nu, &RealLattice::NegativeEven)
}

/// Every nonzero submodule contains the spherical vector:
/// `(ν,α∨) ∉ 2ℤ₊ + 2πi log(q)⁻¹ℤ`.
pub fn is_cospherical(ctx: &QContext, cd: &CartanData, nu: &Weight) -> Result<bool> {
    avoids(ctx, cd, nu, &RealLattice::PositiveEven)
}

/// `(ν,α∨) ∉ (2ℤ∖{0}) + 2πi log(q)⁻¹ℤ` for every positive root.
pub fn is_l_irreducible(ctx: &QContext, cd: &CartanData, nu: &Weight) -> Result<bool> {
    avoids(ctx, cd, nu, &RealLattice::EvenNonzero)
}
