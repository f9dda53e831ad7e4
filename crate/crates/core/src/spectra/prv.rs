//! PRV determinants and spherical multiplicities.

use num_complex::Complex64;
use serde::Serialize;

use super::forms::{is_cospherical, is_spherical_cyclic};
use crate::charrep::{dual_weight, freudenthal, tensor_decompose};
use crate::error::{arg, Result};
use crate::qnum::{QContext, RealLattice};
use crate::weyl::{CartanData, DominantWeight, Weight};

/// `∏_{α>0} ∏_{n≥1} (K_α − q^{2(n−(ρ,α∨))} K_{−α})^{dim V(λ)_{nα}}` at `ν`,
/// with `K_α(ν) = q^{(ν,α)}`. Exactly zero when some factor vanishes.
pub fn prv_determinant(ctx: &QContext, cd: &CartanData, lambda: &DominantWeight, nu: &Weight) -> Result<Complex64> {
    cd.check(nu)?;
    if lambda.n() != cd.n() {
        return arg(format!("highest weight {lambda} does not belong to sl_{}", cd.n()));
    }
    let table = freudenthal(cd, lambda)?;
    let mut det = Complex64::new(1.0, 0.0);
    for root in cd.positive_roots() {
        let alpha = cd.root_vector(root);
        let p = root.pair(nu);
        let (up, down) = (ctx.q_power(p), ctx.q_power(-p));
        // the α-string through 0 is unbroken, so stop at the first gap
        for n in 1.. {
            let mult = table.multiplicity(&alpha.scale(n as f64));
            if mult == 0 {
                break;
            }
            let shift = 2.0 * (n as f64 - root.height() as f64);
            let factor = up - down * ctx.q_power_real(shift);
            if factor.norm() < ctx.tol() {
                return Ok(Complex64::new(0.0, 0.0));
            }
            det *= factor.powu(mult as u32);
        }
    }
    Ok(det)
}

/// `(ν+ρ,α∨) ∉ ℤ₊ + πi log(q)⁻¹ℤ` for every positive root.
pub fn prv_invertible(ctx: &QContext, cd: &CartanData, nu: &Weight) -> Result<bool> {
    cd.check(nu)?;
    let shifted = nu.add(&cd.rho());
    let step = ctx.half_period();
    Ok(cd
        .positive_roots()
        .iter()
        .all(|r| !ctx.lattice_member(r.pair(&shifted), &RealLattice::PositiveIntegers, step)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value")]
pub enum SphericalMultiplicity {
    Exact(u64),
    /// Neither integral nor generic; the rank of the PRV matrix is not
    /// determined by the data implemented here.
    NotComputed,
}

/// `μ = −ν/2 − ρ` when it is dominant integral.
fn integral_point(ctx: &QContext, cd: &CartanData, nu: &Weight) -> Option<DominantWeight> {
    let mu = nu.scale(-0.5).sub(&cd.rho());
    let n = cd.n();
    let mut labels = Vec::with_capacity(n - 1);
    for k in 0..n - 1 {
        let d = mu.coords()[k] - mu.coords()[k + 1];
        if !ctx.lattice_member(d, &RealLattice::Integers, 0.0) || d.re < -0.5 {
            return None;
        }
        labels.push(d.re.round() as u32);
    }
    let mut parts = vec![0u32; n];
    for k in (0..n - 1).rev() {
        parts[k] = parts[k + 1] + labels[k];
    }
    DominantWeight::new(cd, &parts).ok()
}

/// `[L⁰(0,ν) : V(λ)]`: the multiplicity in `V(μ)⊗V(μ)*` when
/// `ν = −2μ − 2ρ` is integral, `dim V(λ)₀` in the generic case.
pub fn spherical_multiplicity(
    ctx: &QContext,
    cd: &CartanData,
    lambda: &DominantWeight,
    nu: &Weight,
) -> Result<SphericalMultiplicity> {
    cd.check(nu)?;
    if lambda.n() != cd.n() {
        return arg(format!("highest weight {lambda} does not belong to sl_{}", cd.n()));
    }
    if let Some(mu) = integral_point(ctx, cd, nu) {
        let fusion = tensor_decompose(cd, &mu, &dual_weight(cd, &mu)?)?;
        return Ok(SphericalMultiplicity::Exact(fusion.multiplicity(lambda)));
    }
    if is_spherical_cyclic(ctx, cd, nu)? && is_cospherical(ctx, cd, nu)? {
        return Ok(SphericalMultiplicity::Exact(
            freudenthal(cd, lambda)?.zero_weight_multiplicity(),
        ));
    }
    Ok(SphericalMultiplicity::NotComputed)
}
