//! Type A root data, weights and the Weyl group `Sₙ`.
//!
//! 𝔥* for 𝔰𝔩ₙ is modelled as trace-zero vectors in ℂⁿ with the plain dot
//! product, so every root has `(α, α) = 2`, coroots equal roots, and the Weyl
//! group acts by permuting coordinates.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{arg, Result};
use crate::qnum::QContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartanData {
    n: usize,
}

impl CartanData {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return arg(format!("sl_n needs n >= 2, got {n}"));
        }
        Ok(Self { n })
    }

    pub fn sl2() -> Self {
        Self { n: 2 }
    }

    pub fn sl3() -> Self {
        Self { n: 3 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    /// `α_k = e_k − e_{k+1}` as index pairs `(k, k+1)`.
    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.n - 1).map(|k| Root { i: k, j: k + 1 }).collect()
    }

    /// `e_i − e_j` for `i < j`, ordered lexicographically.
    pub fn positive_roots(&self) -> Vec<Root> {
        let mut out = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push(Root { i, j });
            }
        }
        out
    }

    pub fn rho(&self) -> Weight {
        let n = self.n as f64;
        Weight::from_real_unchecked((0..self.n).map(|k| (n - 1.0 - 2.0 * k as f64) / 2.0))
    }

    /// `2ρ = (n−1, n−3, …, 1−n)`.
    pub fn two_rho(&self) -> Weight {
        self.rho().scale(2.0)
    }

    pub fn fundamental_weights(&self) -> Vec<Weight> {
        let n = self.n as f64;
        (1..self.n)
            .map(|k| {
                let mean = k as f64 / n;
                Weight::from_real_unchecked((0..self.n).map(|i| if i < k { 1.0 - mean } else { -mean }))
            })
            .collect()
    }

    pub fn root_vector(&self, root: Root) -> Weight {
        let mut c = vec![Complex64::new(0.0, 0.0); self.n];
        c[root.i] = 1.0.into();
        c[root.j] = (-1.0).into();
        Weight { coords: c }
    }

    pub(crate) fn check(&self, w: &Weight) -> Result<()> {
        if w.coords.len() != self.n {
            return arg(format!(
                "weight has {} coordinates, sl_{} needs {}",
                w.coords.len(),
                self.n,
                self.n
            ));
        }
        Ok(())
    }
}

/// Positive root `e_i − e_j` (`i < j`), also its own coroot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    /// `(ρ, α∨)`, the height of the root.
    pub fn height(&self) -> usize {
        self.j - self.i
    }

    /// `(ν, α∨) = ν_i − ν_j`.
    pub fn pair(&self, nu: &Weight) -> Complex64 {
        nu.coords[self.i] - nu.coords[self.j]
    }
}

/// Trace-zero complex vector representing an element of 𝔥*.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    coords: Vec<Complex64>,
}

impl Weight {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.is_empty() {
            return arg("weight must have at least one coordinate");
        }
        let scale = coords.iter().map(|c| c.norm()).fold(1.0, f64::max);
        let sum: Complex64 = coords.iter().sum();
        if sum.norm() > 1e-9 * scale {
            return arg(format!("weight coordinates must sum to zero, got sum {sum}"));
        }
        Ok(Self { coords })
    }

    pub fn from_real(coords: &[f64]) -> Result<Self> {
        Self::new(coords.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub(crate) fn from_real_unchecked(coords: impl IntoIterator<Item = f64>) -> Self {
        Self {
            coords: coords.into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub(crate) fn from_coords_unchecked(coords: Vec<Complex64>) -> Self {
        Self { coords }
    }

    /// Rank-one parameter `ν ∈ ℂ` embedded as `(ν, −ν)`, so that `α ↦ 1`
    /// and the form becomes `(x, y) = 2xy`.
    pub fn sl2(nu: Complex64) -> Self {
        Self { coords: vec![nu, -nu] }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            coords: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Weight) -> Self {
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Self {
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    /// `−ν̄`
    pub fn neg_conj(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|c| -c.conj()).collect(),
        }
    }

    pub fn real_part(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.re).collect()
    }

    pub fn imag_part(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.im).collect()
    }

    /// `(w·ν)_k = ν_{perm[k]}`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        Self {
            coords: perm.iter().map(|&p| self.coords[p]).collect(),
        }
    }

    pub fn reflect(&self, root: Root) -> Self {
        let mut c = self.coords.clone();
        c.swap(root.i, root.j);
        Self { coords: c }
    }

    pub fn max_abs_diff(&self, other: &Weight) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Weight, tol: f64) -> bool {
        self.len() == other.len() && self.max_abs_diff(other) <= tol
    }

    pub fn is_imaginary(&self, tol: f64) -> bool {
        self.coords.iter().all(|c| c.re.abs() <= tol)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "{}{:+}i", c.re, c.im)?;
            }
        }
        write!(f, ")")
    }
}

// JSON form: array of [re, im] pairs
impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.coords.iter().map(|c| [c.re, c.im]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        Weight::new(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect()).map_err(serde::de::Error::custom)
    }
}

/// Dominant integral weight of 𝔰𝔩ₙ stored as a partition of length `n` whose
/// last entry is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DominantWeight {
    partition: Vec<u32>,
}

impl DominantWeight {
    /// Accepts up to `n` nonincreasing entries; pads with zeros and removes
    /// the common column (subtracts the last entry).
    pub fn new(cd: &CartanData, parts: &[u32]) -> Result<Self> {
        let n = cd.n();
        if parts.len() > n {
            return arg(format!("partition {parts:?} has more than {n} parts"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return arg(format!("partition {parts:?} is not nonincreasing"));
        }
        let mut p = parts.to_vec();
        p.resize(n, 0);
        let last = p[n - 1];
        for x in &mut p {
            *x -= last;
        }
        Ok(Self { partition: p })
    }

    pub fn trivial(cd: &CartanData) -> Self {
        Self {
            partition: vec![0; cd.n()],
        }
    }

    /// Spin `two_s / 2` representation of 𝔰𝔩₂.
    pub fn spin(two_s: u32) -> Self {
        Self {
            partition: vec![two_s, 0],
        }
    }

    pub fn n(&self) -> usize {
        self.partition.len()
    }

    pub fn partition(&self) -> &[u32] {
        &self.partition
    }

    pub fn size(&self) -> u32 {
        self.partition.iter().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.partition.iter().all(|&x| x == 0)
    }

    pub fn coords(&self) -> Weight {
        let mean = self.size() as f64 / self.n() as f64;
        Weight::from_real_unchecked(self.partition.iter().map(|&x| x as f64 - mean))
    }

    /// Weyl dimension formula `∏_{i<j} (λ_i − λ_j + j − i)/(j − i)`, exact.
    pub fn weyl_dimension(&self) -> u64 {
        let n = self.n();
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..n {
            for j in i + 1..n {
                num *= (self.partition[i] - self.partition[j]) as u128 + (j - i) as u128;
                den *= (j - i) as u128;
            }
        }
        (num / den) as u64
    }

    /// `(λ, α_k∨)` for each simple root.
    pub fn dynkin_labels(&self) -> Vec<u32> {
        self.partition.windows(2).map(|w| w[0] - w[1]).collect()
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let trimmed: Vec<String> = self.partition[..self.n() - 1].iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", trimmed.join(","))
    }
}

/// Point of `X = 𝔥*/2πi log(q)⁻¹Q∨` held by a canonical representative.
#[derive(Debug, Clone, PartialEq)]
pub struct XPoint {
    pub rep: Weight,
    pub period: f64,
}

fn cmp_tol(a: Complex64, b: Complex64, tol: f64) -> Ordering {
    if (a.re - b.re).abs() > tol {
        return a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal);
    }
    if (a.im - b.im).abs() > tol {
        return a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal);
    }
    Ordering::Equal
}

/// All distinct coordinate permutations of `ν`, deduplicated within `tol`.
pub fn weyl_orbit(cd: &CartanData, nu: &Weight, tol: f64) -> Result<Vec<Weight>> {
    cd.check(nu)?;
    // cluster equal coordinates, then enumerate multiset permutations
    let mut reps: Vec<Complex64> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for &c in nu.coords() {
        match reps.iter().position(|&r| (r - c).norm() <= tol) {
            Some(k) => counts[k] += 1,
            None => {
                reps.push(c);
                counts.push(1);
            }
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(cd.n());
    multiset_perms(&reps, &mut counts, cd.n(), &mut current, &mut out);
    Ok(out)
}

fn multiset_perms(
    reps: &[Complex64],
    counts: &mut [usize],
    n: usize,
    current: &mut Vec<Complex64>,
    out: &mut Vec<Weight>,
) {
    if current.len() == n {
        out.push(Weight::from_coords_unchecked(current.clone()));
        return;
    }
    for k in 0..reps.len() {
        if counts[k] == 0 {
            continue;
        }
        counts[k] -= 1;
        current.push(reps[k]);
        multiset_perms(reps, counts, n, current, out);
        current.pop();
        counts[k] += 1;
    }
}

/// Lexicographically largest orbit element under (real part, imaginary part).
pub fn weyl_canonical(cd: &CartanData, nu: &Weight, tol: f64) -> Result<Weight> {
    cd.check(nu)?;
    let mut c = nu.coords().to_vec();
    c.sort_by(|a, b| cmp_tol(*b, *a, tol));
    Ok(Weight::from_coords_unchecked(c))
}

/// Remove `i·(2π/|log q|)·Q` from `ν` so that the first `n−1` imaginary
/// coordinates lie in `[0, 2π/|log q|)`.
pub fn x_reduce(ctx: &QContext, cd: &CartanData, nu: &Weight) -> Result<XPoint> {
    cd.check(nu)?;
    let period = ctx.lattice_period();
    let n = cd.n();
    let mut c = nu.coords().to_vec();
    for k in 0..n - 1 {
        let mut m = (c[k].im / period).floor();
        // snap values within tol below a period boundary onto it
        if c[k].im - m * period > period - ctx.tol() {
            m += 1.0;
        }
        c[k].im -= m * period;
        c[n - 1].im += m * period;
        if c[k].im.abs() <= ctx.tol() {
            c[k].im = 0.0;
        }
    }
    Ok(XPoint {
        rep: Weight::from_coords_unchecked(c),
        period,
    })
}

/// Is `d` an element of `i·period·Q` (within `tol` per coordinate)?
pub fn in_imaginary_root_lattice(ctx: &QContext, d: &Weight, period: f64) -> bool {
    use crate::qnum::RealLattice;
    let zero = RealLattice::Finite(vec![0.0]);
    d.coords().iter().all(|&z| ctx.lattice_member(z, &zero, period))
}

pub fn pairing(cd: &CartanData, mu: &Weight, nu: &Weight) -> Result<Complex64> {
    cd.check(mu)?;
    cd.check(nu)?;
    Ok(mu.coords().iter().zip(nu.coords()).map(|(a, b)| a * b).sum())
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn w(re: &[f64]) -> Weight {
        Weight::from_real(re).unwrap()
    }

    #[test]
    fn cartan_invariants() {
        for n in 2..=6 {
            let cd = CartanData::new(n).unwrap();
            assert_eq!(cd.positive_roots().len(), n * (n - 1) / 2);
            for r in cd.positive_roots() {
                let v = cd.root_vector(r);
                assert!((pairing(&cd, &v, &v).unwrap() - 2.0).norm() < 1e-15);
            }
            let rho = cd.rho();
            for r in cd.simple_roots() {
                assert!((r.pair(&rho) - 1.0).norm() < 1e-15);
            }
            for (k, r) in cd.simple_roots().into_iter().enumerate() {
                for (l, fw) in cd.fundamental_weights().iter().enumerate() {
                    let expect = if k == l { 1.0 } else { 0.0 };
                    assert!((r.pair(fw) - expect).norm() < 1e-15);
                }
            }
        }
        assert_eq!(CartanData::sl3().two_rho(), w(&[2.0, 0.0, -2.0]));
        assert!(CartanData::new(1).is_err());
    }

    #[test]
    fn weight_validation() {
        assert!(Weight::from_real(&[1.0, 1.0, 0.0]).is_err());
        assert!(Weight::new(vec![]).is_err());
        assert!(Weight::new(vec![c(1.0, 1.0), c(-1.0, -1.0)]).is_ok());
    }

    #[test]
    fn orbit_examples() {
        let cd = CartanData::sl3();
        assert_eq!(weyl_orbit(&cd, &Weight::zero(3), 1e-9).unwrap().len(), 1);
        assert_eq!(weyl_orbit(&cd, &w(&[2.0, 0.0, -2.0]), 1e-9).unwrap().len(), 6);
        assert_eq!(weyl_orbit(&cd, &w(&[1.0, 1.0, -2.0]), 1e-9).unwrap().len(), 3);
    }

    #[test]
    fn canonical_examples() {
        let cd = CartanData::sl3();
        assert_eq!(
            weyl_canonical(&cd, &w(&[0.0, 2.0, -2.0]), 1e-9).unwrap(),
            w(&[2.0, 0.0, -2.0])
        );
        assert_eq!(
            weyl_canonical(&cd, &w(&[2.0, 0.0, -2.0]), 1e-9).unwrap(),
            w(&[2.0, 0.0, -2.0])
        );
        let nu = Weight::new(vec![c(0.0, 1.0), c(0.0, -1.0), c(0.0, 0.0)]).unwrap();
        let expect = Weight::new(vec![c(0.0, 1.0), c(0.0, 0.0), c(0.0, -1.0)]).unwrap();
        assert_eq!(weyl_canonical(&cd, &nu, 1e-9).unwrap(), expect);
    }

    #[test]
    fn x_reduce_examples() {
        let ctx = QContext::new(0.5).unwrap();
        let cd = CartanData::sl3();
        let p = ctx.lattice_period();
        let real = w(&[0.3, 0.2, -0.5]);
        assert_eq!(x_reduce(&ctx, &cd, &real).unwrap().rep, real);
        let lat = Weight::new(vec![c(0.0, p), c(0.0, -p), c(0.0, 0.0)]).unwrap();
        assert!(x_reduce(&ctx, &cd, &lat)
            .unwrap()
            .rep
            .approx_eq(&Weight::zero(3), 1e-12));
        let shifted = Weight::new(vec![c(1.0, p), c(-1.0, -p), c(0.0, 0.0)]).unwrap();
        assert!(x_reduce(&ctx, &cd, &shifted)
            .unwrap()
            .rep
            .approx_eq(&w(&[1.0, -1.0, 0.0]), 1e-12));
    }

    #[test]
    fn pairing_examples() {
        let cd = CartanData::sl3();
        let p = pairing(&cd, &w(&[2.0, 0.0, -2.0]), &w(&[1.0, -1.0, 0.0])).unwrap();
        assert!((p - 2.0).norm() < 1e-15);
        assert!(pairing(&cd, &w(&[1.0, -1.0]), &w(&[1.0, -1.0, 0.0])).is_err());
    }

    #[test]
    fn dominant_weight_normalization() {
        let cd = CartanData::sl3();
        let a = DominantWeight::new(&cd, &[3, 2, 1]).unwrap();
        assert_eq!(a.partition(), &[2, 1, 0]);
        assert_eq!(a.weyl_dimension(), 8);
        assert!(DominantWeight::new(&cd, &[1, 2]).is_err());
        assert!(DominantWeight::new(&cd, &[1, 1, 1, 1]).is_err());
        assert_eq!(DominantWeight::spin(2).weyl_dimension(), 3);
        assert_eq!(a.dynkin_labels(), vec![1, 1]);
    }

    #[test]
    fn weight_json_roundtrip_is_exact() {
        let nu = Weight::new(vec![c(0.1, 1.0 / 3.0), c(-0.1, -1.0 / 3.0 + 1e-300), c(0.0, -1e-300)]).unwrap();
        let s = serde_json::to_string(&nu).unwrap();
        let back: Weight = serde_json::from_str(&s).unwrap();
        assert_eq!(back, nu);
    }

    #[test]
    fn permutations_lexicographic() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[5], vec![2, 1, 0]);
    }

    fn complex_weight(n: usize) -> impl Strategy<Value = Weight> {
        proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), n).prop_map(|v| {
            let mut cs: Vec<Complex64> = v.into_iter().map(|(a, b)| c(a, b)).collect();
            let mean: Complex64 = cs.iter().sum::<Complex64>() / cs.len() as f64;
            for x in &mut cs {
                *x -= mean;
            }
            Weight::new(cs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn reflections_preserve_pairing(
            (n, mu, nu) in (2usize..=5).prop_flat_map(|n| (Just(n), complex_weight(n), complex_weight(n)))
        ) {
            let cd = CartanData::new(n).unwrap();
            for r in cd.positive_roots() {
                let a = pairing(&cd, &mu.reflect(r), &nu.reflect(r)).unwrap();
                let b = pairing(&cd, &mu, &nu).unwrap();
                prop_assert!((a - b).norm() < 1e-12);
            }
        }

        #[test]
        fn canonical_is_orbit_invariant(nu in complex_weight(4), k in 0usize..24) {
            let cd = CartanData::new(4).unwrap();
            let perm = &permutations(4)[k];
            let a = weyl_canonical(&cd, &nu, 1e-9).unwrap();
            let b = weyl_canonical(&cd, &nu.permute(perm), 1e-9).unwrap();
            prop_assert!(a.approx_eq(&b, 1e-12));
            let again = weyl_canonical(&cd, &a, 1e-9).unwrap();
            prop_assert_eq!(again, a);
        }

        #[test]
        fn x_reduce_idempotent_and_lattice_invariant(nu in complex_weight(3), m1 in -3i32..=3, m2 in -3i32..=3) {
            let ctx = QContext::new(0.5).unwrap();
            let cd = CartanData::sl3();
            let p = ctx.lattice_period();
            let r1 = x_reduce(&ctx, &cd, &nu).unwrap();
            let r2 = x_reduce(&ctx, &cd, &r1.rep).unwrap();
            prop_assert!(r1.rep.approx_eq(&r2.rep, 1e-9));
            let shift = Weight::new(vec![c(0.0, m1 as f64 * p), c(0.0, m2 as f64 * p), c(0.0, -(m1 + m2) as f64 * p)]).unwrap();
            let r3 = x_reduce(&ctx, &cd, &nu.add(&shift)).unwrap();
            prop_assert!(r1.rep.approx_eq(&r3.rep, 1e-9));
            prop_assert!(in_imaginary_root_lattice(&ctx, &r1.rep.sub(&nu), p));
            prop_assert!(r1.rep.real_part().iter().zip(nu.real_part()).all(|(a, b)| a == &b));
        }
    }
}
