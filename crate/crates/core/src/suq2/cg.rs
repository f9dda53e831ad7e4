//! Clebsch–Gordan isometries `V(j) → V(s₁) ⊗ V(s₂)` by highest-weight
//! extraction.

use num_complex::Complex64;

use super::uq::{tensor_action, uq_sl2_module, Action, CMat};
use crate::error::{Error, Result};
use crate::qnum::QContext;

#[derive(Debug, Clone, PartialEq)]
pub struct CGIsometry {
    pub two_s1: u32,
    pub two_s2: u32,
    /// `(2j, injection)` in decreasing `j`; injection columns are the
    /// standard basis of `V(j)`.
    pub targets: Vec<(u32, CMat)>,
}

impl CGIsometry {
    pub fn injection(&self, two_j: u32) -> Option<&CMat> {
        self.targets.iter().find(|(j, _)| *j == two_j).map(|(_, m)| m)
    }

    pub fn target_spins(&self) -> Vec<u32> {
        self.targets.iter().map(|(j, _)| *j).collect()
    }
}

const KERNEL_TOL: f64 = 1e-9;

pub fn cg_decompose(ctx: &QContext, two_s1: u32, two_s2: u32) -> Result<CGIsometry> {
    let m1 = uq_sl2_module(ctx, two_s1);
    let m2 = uq_sl2_module(ctx, two_s2);
    let t = tensor_action(&Action::from(&m1), &Action::from(&m2));
    let d1 = m1.dim();
    let d2 = m2.dim();
    // twice the weight of each tensor basis vector
    let two_weight = |idx: usize| -> i64 {
        let (i1, i2) = (idx / d2, idx % d2);
        two_s1 as i64 - 2 * i1 as i64 + two_s2 as i64 - 2 * i2 as i64
    };

    let mut targets: Vec<(u32, CMat)> = Vec::new();
    let lo = (two_s1 as i64 - two_s2 as i64).unsigned_abs() as u32;
    let mut two_j = two_s1 + two_s2;
    loop {
        let cols: Vec<usize> = (0..d1 * d2).filter(|&i| two_weight(i) == two_j as i64).collect();
        let mut sub = t.e.select_columns(&cols);
        // equilibrate columns; entries span many orders of magnitude for small q
        let col_scale: Vec<f64> = (0..cols.len())
            .map(|k| {
                let n = sub.column(k).norm();
                if n > 0.0 {
                    1.0 / n
                } else {
                    1.0
                }
            })
            .collect();
        for (k, &w) in col_scale.iter().enumerate() {
            sub.column_mut(k).scale_mut(w);
        }
        let svd = sub.svd(false, true);
        let v_t = svd.v_t.as_ref().expect("requested V^T");
        let scale = svd.singular_values.max().max(1.0);
        let kernel: Vec<usize> = (0..cols.len())
            .filter(|&k| svd.singular_values[k] <= KERNEL_TOL * scale)
            .collect();
        if kernel.len() != 1 {
            return Err(Error::Consistency(format!(
                "highest-weight space of weight {two_j}/2 in V({two_s1}/2)⊗V({two_s2}/2) has dimension {}, expected 1",
                kernel.len()
            )));
        }
        let row = v_t.row(kernel[0]);
        let mut hv = vec![Complex64::new(0.0, 0.0); d1 * d2];
        for (k, &c) in cols.iter().enumerate() {
            hv[c] = row[k].conj() * col_scale[k];
        }
        // phase: positive coefficient on v_{s₁} ⊗ v_{j−s₁}, else on the largest entry
        let i2 = (two_s1 as i64 + two_s2 as i64 - two_j as i64) / 2;
        let anchor = if i2 >= 0 && (i2 as usize) < d2 && hv[i2 as usize].norm() > 1e-8 {
            i2 as usize
        } else {
            (0..hv.len())
                .max_by(|&a, &b| hv[a].norm().total_cmp(&hv[b].norm()))
                .unwrap()
        };
        let norm: f64 = hv.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let phase = hv[anchor].conj() / (hv[anchor].norm() * norm);
        let top = nalgebra::DVector::from_iterator(hv.len(), hv.iter().map(|c| c * phase));

        let mj = uq_sl2_module(ctx, two_j);
        let dj = mj.dim();
        let mut inj = CMat::from_element(d1 * d2, dj, Complex64::new(0.0, 0.0));
        inj.set_column(0, &top);
        for k in 0..dj - 1 {
            // the F-coefficient fixes the phase. Lowering amplifies error along
            // higher summands by their larger F-coefficients, so project those
            // out (they are already exact), then renormalize.
            let mut next = &t.f * inj.column(k) / mj.f[(k + 1, k)];
            for (higher_j, higher) in &targets {
                // same weight j − (k+1) inside the higher summand
                let idx = (*higher_j - two_j) as usize / 2 + k + 1;
                let h = higher.column(idx);
                let overlap = h.dotc(&next);
                next -= h * overlap;
            }
            let n = next.norm();
            inj.set_column(k + 1, &(next / Complex64::from(n)));
        }
        targets.push((two_j, inj));
        if two_j < lo + 2 {
            break;
        }
        two_j -= 2;
    }
    Ok(CGIsometry {
        two_s1,
        two_s2,
        targets,
    })
}
