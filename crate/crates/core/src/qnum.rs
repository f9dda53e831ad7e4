//! q-deformed scalar arithmetic.
//!
//! Everything is evaluated in double-precision complex arithmetic for a fixed
//! deformation parameter `0 < q < 1`. The [`QContext`] also carries the single
//! absolute tolerance used by every lattice-membership and equality test in
//! the crate.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{arg, Result};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const Q_MIN: f64 = 1e-3;
pub const Q_MAX: f64 = 0.999;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QContext {
    q: f64,
    log_q: f64,
    tol: f64,
    lattice_period: f64,
}

impl QContext {
    pub fn new(q: f64) -> Result<Self> {
        Self::with_tol(q, DEFAULT_TOL)
    }

    pub fn with_tol(q: f64, tol: f64) -> Result<Self> {
        if !q.is_finite() || !(Q_MIN..=Q_MAX).contains(&q) {
            return arg(format!("q = {q} outside the supported range [{Q_MIN}, {Q_MAX}]"));
        }
        if !tol.is_finite() || tol <= 0.0 {
            return arg(format!("tolerance must be positive, got {tol}"));
        }
        let log_q = q.ln();
        Ok(Self {
            q,
            log_q,
            tol,
            lattice_period: 2.0 * PI / log_q.abs(),
        })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn log_q(&self) -> f64 {
        self.log_q
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Imaginary period `2π/|log q|` of `z ↦ q^z`.
    pub fn lattice_period(&self) -> f64 {
        self.lattice_period
    }

    /// `π/|log q|`, the half period appearing in the rank-one criteria.
    pub fn half_period(&self) -> f64 {
        0.5 * self.lattice_period
    }

    pub fn q_power(&self, z: Complex64) -> Complex64 {
        (z * self.log_q).exp()
    }

    pub fn q_power_real(&self, x: f64) -> f64 {
        (x * self.log_q).exp()
    }

    /// Symmetric q-integer `(qⁿ − q⁻ⁿ)/(q − q⁻¹)`.
    pub fn q_int(&self, n: i64) -> f64 {
        let q = self.q;
        let nf = n as f64;
        (self.q_power_real(nf) - self.q_power_real(-nf)) / (q - 1.0 / q)
    }

    /// `[x]_q` for real `x`; half-integers appear in spin labels.
    pub fn q_int_real(&self, x: f64) -> f64 {
        (self.q_power_real(x) - self.q_power_real(-x)) / (self.q - 1.0 / self.q)
    }

    pub fn q_factorial(&self, n: u32) -> f64 {
        (1..=n as i64).map(|k| self.q_int(k)).product()
    }

    pub fn q_binomial(&self, n: u32, m: u32) -> Result<f64> {
        if m > n {
            return arg(format!("q-binomial needs 0 <= m <= n, got n = {n}, m = {m}"));
        }
        // product form avoids the overflow of three separate factorials
        let k = m.min(n - m);
        let mut acc = 1.0;
        for j in 0..k {
            acc *= self.q_int((n - j) as i64) / self.q_int((j + 1) as i64);
        }
        Ok(acc)
    }

    /// Is `z` within `tol` of `{r + i·k·imag_step : r ∈ real_lattice, k ∈ ℤ}`?
    /// `imag_step = 0` means a purely real lattice.
    pub fn lattice_member(&self, z: Complex64, real_lattice: &RealLattice, imag_step: f64) -> bool {
        self.lattice_distance(z, real_lattice, imag_step) < self.tol
    }

    pub fn lattice_distance(&self, z: Complex64, real_lattice: &RealLattice, imag_step: f64) -> f64 {
        let dim = if imag_step > 0.0 {
            let k = (z.im / imag_step).round();
            (z.im - k * imag_step).abs()
        } else {
            z.im.abs()
        };
        let dre = real_lattice.distance(z.re);
        dre.hypot(dim)
    }
}

/// Subsets of ℝ used as the real part of a membership lattice.
#[derive(Debug, Clone, PartialEq)]
pub enum RealLattice {
    Integers,
    /// ℤ∖{0}
    NonzeroIntegers,
    /// ℤ₊ = {1, 2, …}
    PositiveIntegers,
    /// ℤ₋ = {−1, −2, …}
    NegativeIntegers,
    EvenIntegers,
    EvenNonzero,
    /// 2ℤ₊ = {2, 4, …}
    PositiveEven,
    /// 2ℤ₋ = {−2, −4, …}
    NegativeEven,
    Finite(Vec<f64>),
}

impl RealLattice {
    /// Distance from `x` to the nearest point of the set (`∞` for an empty finite set).
    pub fn distance(&self, x: f64) -> f64 {
        match self {
            RealLattice::Integers => (x - x.round()).abs(),
            RealLattice::NonzeroIntegers => {
                let k = x.round();
                if k != 0.0 {
                    (x - k).abs()
                } else {
                    (x - 1.0).abs().min((x + 1.0).abs())
                }
            }
            RealLattice::PositiveIntegers => (x - x.round().max(1.0)).abs(),
            RealLattice::NegativeIntegers => (x - x.round().min(-1.0)).abs(),
            RealLattice::EvenIntegers => (x - 2.0 * (x / 2.0).round()).abs(),
            RealLattice::EvenNonzero => {
                let k = (x / 2.0).round();
                if k != 0.0 {
                    (x - 2.0 * k).abs()
                } else {
                    (x - 2.0).abs().min((x + 2.0).abs())
                }
            }
            RealLattice::PositiveEven => (x - 2.0 * (x / 2.0).round().max(1.0)).abs(),
            RealLattice::NegativeEven => (x - 2.0 * (x / 2.0).round().min(-1.0)).abs(),
            RealLattice::Finite(points) => points.iter().map(|p| (x - p).abs()).fold(f64::INFINITY, f64::min),
        }
    }
}
