//! Truncated spherical principal series `L(0,ν)` of the quantum Lorentz group.
//!
//! `L(0,ν)` is realized on `{ω : ωK_λ = ω}`, i.e. on blocks whose columns sit
//! at weight zero, with basis `e^{(s)}_{i,0}` for integer `s ≤ S_max`. For a
//! corepresentation entry `m_{ij}`
//!
//! `π^ν(m_ij) Λ(ω) = Σ_k K_{ν−2ρ}(m_kk) Λ(m_kj ▷ ω ◁ S(m_ik))`,
//!
//! where `K_{ν−2ρ}(a) = q^{ν−1}` and `K_{ν−2ρ}(d) = q^{1−ν}`.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use super::coeff::{antipode, CcElement, CgCache, Coefficient, Generator, Side};
use super::uq::CMat;
use crate::error::{arg, Result};
use crate::qnum::QContext;

#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalSeriesModel {
    pub q: f64,
    pub nu: Complex64,
    pub s_max: u32,
    /// `π^ν(a), π^ν(b), π^ν(c), π^ν(d)` on the truncated basis.
    pub actions: [CMat; 4],
    /// Whether the generator had output above `S_max` that was dropped.
    pub truncated: [bool; 4],
}

/// Position of `e^{(s)}_{i,0}` in the truncated basis (spins in increasing order).
pub fn basis_index(s: u32, i: usize) -> usize {
    (s * s) as usize + i
}

/// Spin of a basis position.
pub fn basis_spin(idx: usize) -> u32 {
    (idx as f64).sqrt().floor() as u32
}

/// The operator `e^{(s)}_{i,0}`.
pub fn basis_element(s: u32, i: usize) -> CcElement {
    CcElement::unit(2 * s, i, s as usize)
}

/// `ω ↦ ω·P₀`: keep weight-zero columns, which is where `Λ` factors through.
pub fn lambda_project(omega: &CcElement) -> CcElement {
    let mut out = CcElement::new();
    for (&two_s, m) in &omega.blocks {
        if two_s % 2 == 1 {
            continue;
        }
        let s = (two_s / 2) as usize;
        let mut p = CMat::zeros(m.nrows(), m.ncols());
        p.set_column(s, &m.column(s));
        out.add_to_block(two_s, &p);
    }
    out
}

/// Coordinates of `Λ(ω)` on the basis of spins `≤ s_max`; also reports the
/// largest dropped entry.
pub fn lambda_vector(omega: &CcElement, s_max: u32) -> (DVector<Complex64>, f64) {
    let dim = ((s_max + 1) * (s_max + 1)) as usize;
    let mut v = DVector::zeros(dim);
    let mut dropped: f64 = 0.0;
    for (&two_s, m) in &omega.blocks {
        if two_s % 2 == 1 {
            continue;
        }
        let s = two_s / 2;
        for i in 0..m.nrows() {
            let x = m[(i, s as usize)];
            if s <= s_max {
                v[basis_index(s, i)] += x;
            } else {
                dropped = dropped.max(x.norm());
            }
        }
    }
    (v, dropped)
}

pub(crate) struct PrincipalAction {
    cache: CgCache,
    // S(m_ik) and m_kj as spin-½ coefficients, indexed by corepresentation position
    s_m: [[Coefficient; 2]; 2],
    m: [[Coefficient; 2]; 2],
    k_factor: [Complex64; 2],
}

impl PrincipalAction {
    pub(crate) fn new(ctx: &QContext, nu: Complex64) -> Self {
        let m = [0, 1].map(|i| [0, 1].map(|j| Coefficient::generator(ctx, Generator::from_index(i, j))));
        let s_m = m.map(|row| row.map(|x| antipode(ctx, &x)));
        let one = Complex64::new(1.0, 0.0);
        Self {
            cache: CgCache::new(ctx),
            s_m,
            m,
            k_factor: [ctx.q_power(nu - one), ctx.q_power(one - nu)],
        }
    }

    /// Representative of `π^ν(g)Λ(ω)`, already projected by `Λ`.
    pub(crate) fn apply(&self, g: Generator, omega: &CcElement) -> Result<CcElement> {
        let (i, j) = g.index();
        let mut out = CcElement::new();
        for k in 0..2 {
            let left = self.cache.hit(&self.m[k][j], omega, Side::Left)?;
            let both = self.cache.hit(&self.s_m[i][k], &left, Side::Right)?;
            out.add_scaled(&both, self.k_factor[k]);
        }
        Ok(lambda_project(&out))
    }

    #[cfg(test)]
    pub(crate) fn right_hit(&self, x: &Coefficient, omega: &CcElement) -> Result<CcElement> {
        self.cache.hit(x, omega, Side::Right)
    }
}

pub fn principal_series(ctx: &QContext, nu: Complex64, s_max: u32) -> Result<PrincipalSeriesModel> {
    if s_max < 2 {
        return arg(format!("S_max must be at least 2, got {s_max}"));
    }
    if !nu.re.is_finite() || !nu.im.is_finite() {
        return arg(format!("nu = {nu} is not finite"));
    }
    let act = PrincipalAction::new(ctx, nu);
    let dim = ((s_max + 1) * (s_max + 1)) as usize;
    let mut actions: [CMat; 4] = std::array::from_fn(|_| CMat::zeros(dim, dim));
    let mut truncated = [false; 4];
    for s in 0..=s_max {
        for i in 0..=(2 * s as usize) {
            let col = basis_index(s, i);
            let omega = basis_element(s, i);
            for (gi, g) in Generator::ALL.into_iter().enumerate() {
                let r = act.apply(g, &omega)?;
                let (v, dropped) = lambda_vector(&r, s_max);
                actions[gi].set_column(col, &v);
                if dropped > 1e-14 {
                    truncated[gi] = true;
                }
            }
        }
    }
    Ok(PrincipalSeriesModel {
        q: ctx.q(),
        nu,
        s_max,
        actions,
        truncated,
    })
}

impl PrincipalSeriesModel {
    pub fn dim(&self) -> usize {
        ((self.s_max + 1) * (self.s_max + 1)) as usize
    }

    pub fn action(&self, g: Generator) -> &CMat {
        &self.actions[g as usize]
    }

    /// `π^ν(x)` for an arbitrary spin-½ coefficient.
    pub fn action_of(&self, ctx: &QContext, x: &Coefficient) -> CMat {
        let m = x.corep_coords(ctx);
        let mut out = CMat::zeros(self.dim(), self.dim());
        for g in Generator::ALL {
            let (i, j) = g.index();
            if m[(i, j)].norm() > 0.0 {
                out += self.action(g) * m[(i, j)];
            }
        }
        out
    }

    /// Number of basis vectors of spin `≤ s_max − depth`.
    pub fn interior(&self, depth: u32) -> usize {
        let top = self.s_max.saturating_sub(depth);
        ((top + 1) * (top + 1)) as usize
    }

    pub fn dump(&self) -> ModelDump {
        let mat = |m: &CMat| -> Vec<Vec<[f64; 2]>> {
            (0..m.nrows())
                .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
                .collect()
        };
        ModelDump {
            q: self.q,
            nu: [self.nu.re, self.nu.im],
            s_max: self.s_max,
            dim: self.dim(),
            basis: (0..=self.s_max)
                .flat_map(|s| (0..=2 * s).map(move |i| [s, i]))
                .collect(),
            generators: Generator::ALL
                .into_iter()
                .map(|g| GeneratorDump {
                    name: g.name(),
                    truncated: self.truncated[g as usize],
                    matrix: mat(self.action(g)),
                })
                .collect(),
        }
    }
}

/// JSON form of a model: dense row-major matrices of `[re, im]` pairs.
#[derive(Debug, Clone, Serialize)]
pub struct ModelDump {
    pub q: f64,
    pub nu: [f64; 2],
    pub s_max: u32,
    pub dim: usize,
    /// `[s, i]` for each basis position.
    pub basis: Vec<[u32; 2]>,
    pub generators: Vec<GeneratorDump>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorDump {
    pub name: &'static str,
    pub truncated: bool,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

/// `φ̂(ω) = Σ_s Tr_s(K_{2ρ}) Tr_s(K_{−2ρ} ω_s)`.
pub fn haar_dual_weight(ctx: &QContext, omega: &CcElement) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (&two_s, m) in &omega.blocks {
        let s = two_s as f64 / 2.0;
        let qdim = ctx.q_int_real(2.0 * s + 1.0);
        let tr: Complex64 = (0..m.nrows())
            .map(|i| m[(i, i)] * ctx.q_power_real(-2.0 * (s - i as f64)))
            .sum();
        acc += tr * qdim;
    }
    acc
}

/// `‖Λ(e^{(s)}_{i,0})‖² = [2s+1]_q`, in basis order.
pub fn gram_diagonal(ctx: &QContext, s_max: u32) -> DVector<f64> {
    let dim = ((s_max + 1) * (s_max + 1)) as usize;
    DVector::from_fn(dim, |idx, _| ctx.q_int(2 * basis_spin(idx) as i64 + 1))
}

/// `(Λx, Λy) = φ̂(y*x)`, linear in `v` and antilinear in `w`.
pub fn invariant_pairing(
    ctx: &QContext,
    model: &PrincipalSeriesModel,
    v: &DVector<Complex64>,
    w: &DVector<Complex64>,
) -> Complex64 {
    let g = gram_diagonal(ctx, model.s_max);
    (0..model.dim()).map(|k| v[k] * w[k].conj() * g[k]).sum()
}

/// Build `Λ(ω)` as a `c_c` element from coordinates.
pub fn vector_to_element(v: &DVector<Complex64>, s_max: u32) -> CcElement {
    let mut out = CcElement::new();
    for s in 0..=s_max {
        let d = 2 * s as usize + 1;
        let mut m = CMat::zeros(d, d);
        for i in 0..d {
            m[(i, s as usize)] = v[basis_index(s, i)];
        }
        out.add_to_block(2 * s, &m);
    }
    out
}
