//! Weight multiplicities, characters and tensor products of finite-dimensional
//! 𝔰𝔩ₙ-modules.
//!
//! Internally weights are integer compositions of `|λ|` (the polynomial
//! `GLₙ` model). Two weights with the same size differ from their trace-zero
//! projections by the same multiple of `(1, …, 1)`, so root pairings and
//! differences of squared norms are unchanged.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{arg, Result};
use crate::qnum::QContext;
use crate::weyl::{CartanData, DominantWeight, Weight};

/// Weight multiplicities of `V(λ)`. Keys are `n·μ` for the trace-zero weight
/// `μ`, which keeps them integral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightMultiplicityTable {
    pub highest: DominantWeight,
    pub entries: BTreeMap<Vec<i64>, u64>,
}

impl WeightMultiplicityTable {
    pub fn n(&self) -> usize {
        self.highest.n()
    }

    pub fn dim(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn weights(&self) -> impl Iterator<Item = (Weight, u64)> + '_ {
        let n = self.n() as f64;
        self.entries
            .iter()
            .map(move |(k, &m)| (Weight::from_real_unchecked(k.iter().map(|&x| x as f64 / n)), m))
    }

    /// Multiplicity of an integral weight given in trace-zero coordinates.
    pub fn multiplicity(&self, mu: &Weight) -> u64 {
        let n = self.n() as f64;
        let mut key = Vec::with_capacity(self.n());
        for c in mu.coords() {
            let x = c.re * n;
            if c.im.abs() > 1e-9 || (x - x.round()).abs() > 1e-6 {
                return 0;
            }
            key.push(x.round() as i64);
        }
        self.entries.get(&key).copied().unwrap_or(0)
    }

    pub fn zero_weight_multiplicity(&self) -> u64 {
        self.entries.get(&vec![0; self.n()]).copied().unwrap_or(0)
    }

    /// Weights as compositions of `|λ|` (nonnegative integer vectors).
    fn compositions(&self) -> impl Iterator<Item = (Vec<i64>, u64)> + '_ {
        let n = self.n() as i64;
        let size = self.highest.size() as i64;
        self.entries
            .iter()
            .map(move |(k, &m)| (k.iter().map(|&x| (x + size) / n).collect(), m))
    }
}

/// `V(λ) ⊗ V(μ) ≅ ⊕ V(κ)^{mult(κ)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionDecomposition {
    pub summands: BTreeMap<DominantWeight, u64>,
}

impl FusionDecomposition {
    pub fn dim(&self) -> u64 {
        self.summands.iter().map(|(k, m)| m * k.weyl_dimension()).sum()
    }

    pub fn multiplicity(&self, kappa: &DominantWeight) -> u64 {
        self.summands.get(kappa).copied().unwrap_or(0)
    }
}

fn check_rank(cd: &CartanData, lambda: &DominantWeight) -> Result<()> {
    if lambda.n() != cd.n() {
        return arg(format!(
            "weight {lambda} belongs to sl_{}, expected sl_{}",
            lambda.n(),
            cd.n()
        ));
    }
    Ok(())
}

type Cache = Mutex<HashMap<DominantWeight, Arc<WeightMultiplicityTable>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Multiplicity table of `V(λ)` via Freudenthal's recursion. Results are
/// memoized per highest weight.
pub fn freudenthal(cd: &CartanData, lambda: &DominantWeight) -> Result<Arc<WeightMultiplicityTable>> {
    check_rank(cd, lambda)?;
    if let Some(t) = cache().lock().unwrap().get(lambda) {
        return Ok(t.clone());
    }
    let table = Arc::new(compute_freudenthal(lambda));
    cache().lock().unwrap().insert(lambda.clone(), table.clone());
    Ok(table)
}

fn partitions_dominated_by(lambda: &[i64]) -> Vec<Vec<i64>> {
    let n = lambda.len();
    let total: i64 = lambda.iter().sum();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(
        lambda: &[i64],
        rem: i64,
        max: i64,
        prefix_l: i64,
        prefix_m: i64,
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        let n = lambda.len();
        let k = cur.len();
        if k == n {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let slots = (n - k) as i64;
        for x in (0..=max.min(rem)).rev() {
            // the remaining parts cannot exceed x each
            if x * slots < rem {
                break;
            }
            // dominance: partial sums of μ never exceed those of λ
            if prefix_m + x > prefix_l + lambda[k] {
                continue;
            }
            cur.push(x);
            rec(lambda, rem - x, x, prefix_l + lambda[k], prefix_m + x, cur, out);
            cur.pop();
        }
    }
    rec(lambda, total, lambda[0], 0, 0, &mut cur, &mut out);
    out
}

fn sorted_desc(v: &[i64]) -> Vec<i64> {
    let mut s = v.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

fn sq_norm(v: &[i64]) -> i64 {
    v.iter().map(|x| x * x).sum()
}

fn distinct_permutations(v: &[i64]) -> Vec<Vec<i64>> {
    let mut p = v.to_vec();
    p.sort_unstable();
    let n = p.len();
    let mut out = Vec::new();
    loop {
        out.push(p.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

fn compute_freudenthal(lambda: &DominantWeight) -> WeightMultiplicityTable {
    let n = lambda.n();
    let lam: Vec<i64> = lambda.partition().iter().map(|&x| x as i64).collect();
    let rho: Vec<i64> = (0..n).map(|k| (n - 1 - k) as i64).collect();
    let shift = |v: &[i64]| -> Vec<i64> { v.iter().zip(&rho).map(|(a, b)| a + b).collect() };
    let lam_norm = sq_norm(&shift(&lam));

    let mut dominant = partitions_dominated_by(&lam);
    // depth = height of λ − μ; every μ + kα is strictly shallower than μ
    let depth = |mu: &[i64]| -> i64 {
        let mut acc = 0;
        let mut partial = 0;
        for k in 0..n {
            partial += lam[k] - mu[k];
            acc += partial;
        }
        acc
    };
    dominant.sort_by_key(|mu| depth(mu));

    let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
    for mu in &dominant {
        if *mu == lam {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let mut acc: i64 = 0;
        for i in 0..n {
            for j in i + 1..n {
                let mut w = mu.clone();
                loop {
                    w[i] += 1;
                    w[j] -= 1;
                    if w[j] < 0 || w[i] > lam[0] {
                        break;
                    }
                    let m = mult.get(&sorted_desc(&w)).copied().unwrap_or(0) as i64;
                    acc += m * (w[i] - w[j]);
                }
            }
        }
        let denom = lam_norm - sq_norm(&shift(mu));
        debug_assert!(denom > 0 && (2 * acc) % denom == 0);
        let m = (2 * acc / denom) as u64;
        if m > 0 {
            mult.insert(mu.clone(), m);
        }
    }

    let size = lambda.size() as i64;
    let mut entries = BTreeMap::new();
    for (mu, m) in mult {
        for w in distinct_permutations(&mu) {
            entries.insert(w.iter().map(|&x| n as i64 * x - size).collect(), m);
        }
    }
    WeightMultiplicityTable {
        highest: lambda.clone(),
        entries,
    }
}

/// `Tr_λ(K_ν) = Σ_μ dim V(λ)_μ · q^{(ν,μ)}`.
pub fn char_value(ctx: &QContext, cd: &CartanData, lambda: &DominantWeight, nu: &Weight) -> Result<Complex64> {
    check_rank(cd, lambda)?;
    if nu.len() != cd.n() {
        return arg(format!("weight has {} coordinates, expected {}", nu.len(), cd.n()));
    }
    let table = freudenthal(cd, lambda)?;
    let n = cd.n() as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (key, &m) in &table.entries {
        let p: Complex64 = key.iter().zip(nu.coords()).map(|(&k, c)| c * (k as f64 / n)).sum();
        acc += ctx.q_power(p) * m as f64;
    }
    Ok(acc)
}

/// Quantum dimension `Tr_λ(K_{2ρ})`.
pub fn qdim(ctx: &QContext, cd: &CartanData, lambda: &DominantWeight) -> Result<f64> {
    Ok(char_value(ctx, cd, lambda, &cd.two_rho())?.re)
}

/// Classical decomposition of `V(λ) ⊗ V(μ)` by the Brauer–Klimyk rule.
pub fn tensor_decompose(cd: &CartanData, lambda: &DominantWeight, mu: &DominantWeight) -> Result<FusionDecomposition> {
    check_rank(cd, lambda)?;
    check_rank(cd, mu)?;
    let n = cd.n();
    let lam: Vec<i64> = lambda.partition().iter().map(|&x| x as i64).collect();
    let rho: Vec<i64> = (0..n).map(|k| (n - 1 - k) as i64).collect();
    let table = freudenthal(cd, mu)?;
    let mut signed: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for (w, m) in table.compositions() {
        let mut v: Vec<i64> = (0..n).map(|k| lam[k] + w[k] + rho[k]).collect();
        // sort descending, tracking the permutation sign
        let mut sign = 1i64;
        for i in 1..n {
            let mut j = i;
            while j > 0 && v[j - 1] < v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|p| p[0] == p[1]) {
            continue;
        }
        let kappa: Vec<u32> = (0..n).map(|k| (v[k] - rho[k]) as u32).collect();
        *signed.entry(kappa).or_insert(0) += sign * m as i64;
    }
    let mut summands = BTreeMap::new();
    for (kappa, m) in signed {
        debug_assert!(m >= 0, "negative fusion multiplicity");
        if m > 0 {
            summands.insert(DominantWeight::new(cd, &kappa)?, m as u64);
        }
    }
    Ok(FusionDecomposition { summands })
}

/// `λ* = −w₀λ`.
pub fn dual_weight(cd: &CartanData, lambda: &DominantWeight) -> Result<DominantWeight> {
    check_rank(cd, lambda)?;
    let p = lambda.partition();
    let n = p.len();
    let dual: Vec<u32> = (0..n).map(|i| p[0] - p[n - 1 - i]).collect();
    DominantWeight::new(cd, &dual)
}

/// Every dominant weight with `dim V(λ) ≤ max_dim`, ordered by partition.
pub fn dominant_weights_up_to_dim(cd: &CartanData, max_dim: u64) -> Vec<DominantWeight> {
    let r = cd.rank();
    let mut out = Vec::new();
    let mut labels = vec![0u32; r];
    fn to_weight(cd: &CartanData, labels: &[u32]) -> DominantWeight {
        let r = labels.len();
        let mut p = vec![0u32; r + 1];
        for k in (0..r).rev() {
            p[k] = p[k + 1] + labels[k];
        }
        DominantWeight::new(cd, &p).unwrap()
    }
    fn rec(cd: &CartanData, k: usize, labels: &mut Vec<u32>, max_dim: u64, out: &mut Vec<DominantWeight>) {
        if k == labels.len() {
            out.push(to_weight(cd, labels));
            return;
        }
        // dimension is increasing in every Dynkin label
        loop {
            if to_weight(cd, labels).weyl_dimension() > max_dim {
                break;
            }
            rec(cd, k + 1, labels, max_dim, out);
            labels[k] += 1;
        }
        labels[k] = 0;
    }
    rec(cd, 0, &mut labels, max_dim, &mut out);
    out.sort();
    out
}
