//! Isolation of the trivial representation in odd rank: the two local
//! conditions around `2ρ` and a replay of the argument that rules out every
//! nearby `ν ≠ 2ρ`.
//!
//! Coordinates are labelled `k = m, m−1, …, −m` for `𝔰𝔩_{2m+1}`; array slot
//! `i` carries label `m − i`, so `2ρ_k = 2k`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{arg, Result};
use crate::qnum::{QContext, RealLattice};
use crate::weyl::{CartanData, Weight};

const MAX_RANK: usize = 9;

fn check_shape(cd: &CartanData) -> Result<usize> {
    let n = cd.n();
    if n.is_multiple_of(2) {
        return arg(format!("isolation needs an odd number of coordinates, got {n}"));
    }
    if cd.rank() > MAX_RANK {
        return arg(format!("rank {} exceeds the supported maximum {MAX_RANK}", cd.rank()));
    }
    Ok((n - 1) / 2)
}

fn label(m: usize, i: usize) -> i64 {
    m as i64 - i as i64
}

/// `Σ_{l=1}^{N} q^{N−2l+1}`, the trace of `K_{2ρ}` on the vector
/// representation of `𝔰𝔩_N`.
fn vector_qdim(ctx: &QContext, size: usize) -> f64 {
    (1..=size)
        .map(|l| ctx.q_power_real(size as f64 - 2.0 * l as f64 + 1.0))
        .sum()
}

/// Condition (1): `|ν_k − 2k| < min(1, π/|log q|)` for every `k`.
/// Condition (2): `Σ_{k∈p} |q^{ν_k}| > Σ_{l=1}^{#p} q^{−#p+2l−1}` for every
/// proper `p` containing the top label and closed under `k ↦ −k`.
pub fn prop_t_conditions(ctx: &QContext, cd: &CartanData, nu: &Weight) -> Result<(bool, bool)> {
    let m = check_shape(cd)?;
    cd.check(nu)?;
    let n = cd.n();
    let width = ctx.half_period().min(1.0);
    let two_rho = cd.two_rho();
    let first = nu
        .coords()
        .iter()
        .zip(two_rho.coords())
        .all(|(a, b)| (a - b).norm() < width);

    // choices: one bit per pair {k, −k} with 0 < k < m, plus one for k = 0
    let abs_q: Vec<f64> = nu.coords().iter().map(|z| ctx.q_power_real(z.re)).collect();
    let bits = m;
    let mut second = true;
    for mask in 0..(1usize << bits) {
        if mask == (1 << bits) - 1 {
            continue; // p would be everything
        }
        let mut p = vec![0, n - 1];
        for j in 1..m {
            if mask & (1 << (j - 1)) != 0 {
                p.extend([j, n - 1 - j]);
            }
        }
        if mask & (1 << (bits - 1)) != 0 {
            p.push(m);
        }
        let lhs: f64 = p.iter().map(|&i| abs_q[i]).sum();
        if lhs <= vector_qdim(ctx, p.len()) {
            second = false;
            break;
        }
    }
    Ok((first, second))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IsolationVerdict {
    NotUnitarizable,
    Inconclusive,
    IsTrivialPoint,
}

/// Record of each stage reached. Labels are the `k` above; complex scalars
/// are `[re, im]`.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct IsolationSteps {
    /// `ν_{−k} = −ν̄_k` for all `k`.
    pub symmetric: bool,
    pub p: Option<Vec<i64>>,
    /// `ν̃` lists `ν` at these labels.
    pub permutation: Option<Vec<i64>>,
    pub nu_tilde: Option<Weight>,
    /// Labels `k` of the simple roots `α_k = e_k − e_{k−1}` in each block.
    pub sigma1: Option<Vec<i64>>,
    pub sigma2: Option<Vec<i64>>,
    pub t: Option<[f64; 2]>,
    pub s: Option<[f64; 2]>,
    /// `|Tr_λ(K_{ν̃¹})|` and `Tr_λ(K_{2ρ^{Σ₁}})` for the vector representation.
    pub character_lhs: Option<f64>,
    pub character_rhs: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsolationCertificate {
    pub nu: Weight,
    pub steps: IsolationSteps,
    pub verdict: IsolationVerdict,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn isolation_witness(ctx: &QContext, cd: &CartanData, nu: &Weight) -> Result<IsolationCertificate> {
    let m = check_shape(cd)?;
    let (first, second) = prop_t_conditions(ctx, cd, nu)?;
    if !first {
        return arg(format!(
            "{nu} violates the closeness condition |ν_k − 2k| < min(1, π/|log q|)"
        ));
    }
    if !second {
        return arg(format!(
            "{nu} violates the subset inequality for some symmetric proper p"
        ));
    }
    let n = cd.n();
    let c = nu.coords();
    let zero = RealLattice::Finite(vec![0.0]);
    let mut steps = IsolationSteps {
        symmetric: (0..n).all(|i| ctx.lattice_member(c[n - 1 - i] + c[i].conj(), &zero, 0.0)),
        ..Default::default()
    };
    let done = |steps: IsolationSteps, verdict| IsolationCertificate {
        nu: nu.clone(),
        steps,
        verdict,
    };
    if !steps.symmetric {
        // an invariant form would force the symmetry under condition (1)
        return Ok(done(steps, IsolationVerdict::NotUnitarizable));
    }

    let period = ctx.lattice_period();
    let top = c[0];
    let in_p: Vec<bool> = (0..n)
        .map(|i| {
            ctx.lattice_member(c[i] - top, &RealLattice::EvenIntegers, period)
                || ctx.lattice_member(-c[i].conj() - top, &RealLattice::EvenIntegers, period)
        })
        .collect();
    let p: Vec<usize> = (0..n).filter(|&i| in_p[i]).collect();
    steps.p = Some(p.iter().map(|&i| label(m, i)).collect());
    if p.len() == n {
        let verdict = if nu.approx_eq(&cd.two_rho(), ctx.tol()) {
            IsolationVerdict::IsTrivialPoint
        } else {
            IsolationVerdict::Inconclusive
        };
        return Ok(done(steps, verdict));
    }

    // ν̃: the p-block first, each block with decreasing real part
    let by_re_desc = |a: &usize, b: &usize| c[*b].re.total_cmp(&c[*a].re).then(a.cmp(b));
    let mut block = p.clone();
    block.sort_by(by_re_desc);
    let mut rest: Vec<usize> = (0..n).filter(|&i| !in_p[i]).collect();
    rest.sort_by(by_re_desc);
    let order: Vec<usize> = block.iter().chain(&rest).copied().collect();
    let nu_tilde = nu.permute(&order);
    steps.permutation = Some(order.iter().map(|&i| label(m, i)).collect());
    steps.nu_tilde = Some(nu_tilde.clone());

    let size = block.len();
    let l = m as i64 - size as i64 + 1;
    steps.sigma1 = Some((l + 1..=m as i64).rev().collect());
    steps.sigma2 = Some((-(m as i64) + 1..l).rev().collect());

    let tc = nu_tilde.coords();
    let t = tc[..size].iter().sum::<Complex64>() / size as f64;
    let s = tc[size..].iter().sum::<Complex64>() / (n - size) as f64;
    steps.t = Some(pair(t));
    steps.s = Some(pair(s));

    let lhs = tc[..size].iter().map(|&z| ctx.q_power(z - t)).sum::<Complex64>().norm();
    let rhs = vector_qdim(ctx, size);
    steps.character_lhs = Some(lhs);
    steps.character_rhs = Some(rhs);
    let verdict = if lhs > rhs * (1.0 + ctx.tol()) {
        IsolationVerdict::NotUnitarizable
    } else {
        IsolationVerdict::Inconclusive
    };
    Ok(done(steps, verdict))
}
