//! Grid scans of the classifiers with CSV output.

use std::io::{self, Write};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::classify::classify_su3;
use super::UnitaryClass;
use crate::error::{arg, Result};
use crate::qnum::QContext;
use crate::suq2::classify_su2;
use crate::weyl::Weight;

/// Hard cap on the number of grid points in one scan.
pub const MAX_SCAN_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScanGroup {
    /// Scalar `ν` for `SL_q(2,ℂ)`.
    Su2,
    /// Trace-zero `ν ∈ ℂ³`.
    Su3,
}

impl ScanGroup {
    pub fn arity(&self) -> usize {
        match self {
            ScanGroup::Su2 => 1,
            ScanGroup::Su3 => 3,
        }
    }

    pub fn classify(&self, ctx: &QContext, nu: &[Complex64]) -> Result<UnitaryClass> {
        if nu.len() != self.arity() {
            return arg(format!("expected {} coordinates, got {}", self.arity(), nu.len()));
        }
        match self {
            ScanGroup::Su2 => Ok(classify_su2(ctx, nu[0])),
            ScanGroup::Su3 => classify_su3(ctx, &Weight::new(nu.to_vec())?),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub nu: Vec<Complex64>,
    pub class: UnitaryClass,
}

/// One scan direction `center + x·dir`, `x ∈ lo, lo+step, … ≤ hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub dir: Vec<Complex64>,
    pub lo: f64,
    pub hi: f64,
}

fn axis_len(lo: f64, hi: f64, step: f64) -> usize {
    if hi < lo {
        0
    } else {
        ((hi - lo) / step + 1e-9).floor() as usize + 1
    }
}

// grid coordinates are snapped so that 0.1-steps print as 0.3, not 0.30000000000000004
fn snap(x: f64) -> f64 {
    let y = (x * 1e12).round() / 1e12;
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

fn check_step(step: f64) -> Result<()> {
    if !(step.is_finite() && step > 0.0) {
        return arg(format!("step must be positive, got {step}"));
    }
    Ok(())
}

fn check_count(count: usize) -> Result<()> {
    if count > MAX_SCAN_POINTS {
        return arg(format!("grid has {count} points, the limit is {MAX_SCAN_POINTS}"));
    }
    Ok(())
}

/// Lexicographic product of the axes, the first axis slowest.
pub fn box_grid(center: &[Complex64], axes: &[Axis], step: f64) -> Result<Vec<Vec<Complex64>>> {
    check_step(step)?;
    let n = center.len();
    if let Some(a) = axes.iter().find(|a| a.dir.len() != n) {
        return arg(format!("direction has {} coordinates, center has {n}", a.dir.len()));
    }
    let lens: Vec<usize> = axes.iter().map(|a| axis_len(a.lo, a.hi, step)).collect();
    let count = lens
        .iter()
        .try_fold(1usize, |acc, &l| acc.checked_mul(l))
        .unwrap_or(usize::MAX);
    check_count(count)?;
    let mut out = Vec::with_capacity(count);
    for idx in 0..count {
        let mut rem = idx;
        let mut point = center.to_vec();
        for (a, &len) in axes.iter().zip(&lens).rev() {
            let x = a.lo + (rem % len) as f64 * step;
            rem /= len;
            for (p, d) in point.iter_mut().zip(&a.dir) {
                *p += d * x;
            }
        }
        out.push(
            point
                .into_iter()
                .map(|z| Complex64::new(snap(z.re), snap(z.im)))
                .collect(),
        );
    }
    Ok(out)
}

/// Every `center + δ` with real and imaginary parts of the free coordinates
/// of `δ` on the `step` lattice and `max_k max(|Re δ_k|, |Im δ_k|) ≤ radius`.
/// For trace-zero groups the last coordinate is `−Σ` of the others.
pub fn cube_grid(group: ScanGroup, center: &[Complex64], radius: f64, step: f64) -> Result<Vec<Vec<Complex64>>> {
    check_step(step)?;
    if center.len() != group.arity() {
        return arg(format!(
            "center has {} coordinates, expected {}",
            center.len(),
            group.arity()
        ));
    }
    if !(radius.is_finite() && radius >= 0.0) {
        return arg(format!("radius must be nonnegative, got {radius}"));
    }
    let free = match group {
        ScanGroup::Su2 => 1,
        ScanGroup::Su3 => 2,
    };
    let k = (radius / step + 1e-9).floor() as i64;
    let side = (2 * k + 1) as usize;
    let count = side.checked_pow(2 * free as u32).unwrap_or(usize::MAX);
    check_count(count)?;
    let eps = 1e-9 * step;
    let mut out = Vec::new();
    for idx in 0..count {
        let mut rem = idx;
        let mut parts = vec![0.0; 2 * free];
        for slot in parts.iter_mut().rev() {
            *slot = ((rem % side) as i64 - k) as f64 * step;
            rem /= side;
        }
        let mut delta: Vec<Complex64> = (0..free)
            .map(|j| Complex64::new(parts[2 * j], parts[2 * j + 1]))
            .collect();
        if group == ScanGroup::Su3 {
            let last = -delta.iter().sum::<Complex64>();
            delta.push(last);
        }
        if delta
            .iter()
            .any(|d| d.re.abs() > radius + eps || d.im.abs() > radius + eps)
        {
            continue;
        }
        out.push(
            center
                .iter()
                .zip(&delta)
                .map(|(c, d)| Complex64::new(snap(c.re + d.re), snap(c.im + d.im)))
                .collect(),
        );
    }
    Ok(out)
}

/// Classify every point; rows come back in input order.
pub fn scan(ctx: &QContext, group: ScanGroup, points: &[Vec<Complex64>]) -> Result<Vec<ScanRow>> {
    check_count(points.len())?;
    points
        .par_iter()
        .map(|p| {
            Ok(ScanRow {
                nu: p.clone(),
                class: group.classify(ctx, p)?,
            })
        })
        .collect()
}

/// Header `ν_re_1..n, ν_im_1..n, class, t, s, reason`; empty cells where a
/// field does not apply.
pub fn write_csv<W: Write>(out: &mut W, arity: usize, rows: &[ScanRow]) -> io::Result<()> {
    let mut header: Vec<String> = (1..=arity).map(|k| format!("ν_re_{k}")).collect();
    header.extend((1..=arity).map(|k| format!("ν_im_{k}")));
    header.extend(["class", "t", "s", "reason"].map(String::from));
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        let mut cells: Vec<String> = row.nu.iter().map(|z| z.re.to_string()).collect();
        cells.extend(row.nu.iter().map(|z| z.im.to_string()));
        cells.push(row.class.name().to_string());
        match row.class {
            UnitaryClass::Complementary { t, s } => {
                cells.push(t.to_string());
                cells.push(s.to_string());
            }
            _ => cells.extend([String::new(), String::new()]),
        }
        cells.push(row.class.reason().map(|r| r.name().to_string()).unwrap_or_default());
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}
