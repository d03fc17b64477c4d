//! The algebroid differential written on the coordinate frame:
//!
//! `(d psi)(e_0..e_k) = sum_i (-1)^i rho(e_i) psi(..^e_i..)
//!                    + sum_{i<j} (-1)^{i+j} psi([e_i, e_j], ..^e_i..^e_j..)`.
//!
//! It is used as an oracle for `d_N` and `d_pi`, and for the differential of
//! a Lagrangian complement in the Courant module.

use crate::polyring::Polynomial;
use crate::tensorfield::{increasing_tuples, Alt, Variance, VectorField};

/// Anchor images and structure brackets of a frame `e_0..e_{n-1}`.
#[derive(Debug, Clone)]
pub struct Frame {
    /// `rho(e_a)`.
    pub anchors: Vec<VectorField>,
    /// `brackets[a][b][c]` is the `e_c` component of `[e_a, e_b]`.
    pub brackets: Vec<Vec<Vec<Polynomial>>>,
}

impl Frame {
    pub fn dim(&self) -> usize {
        self.anchors.len()
    }
}

/// Differential of `psi`, whose components are its values on the frame.
pub fn frame_differential<V: Variance>(psi: &Alt<V>, frame: &Frame) -> Alt<V> {
    let chart = psi.chart();
    let n = frame.dim();
    assert_eq!(n, chart.dim(), "frame size");
    let k = psi.degree();
    let mut entries = Vec::new();
    for tuple in increasing_tuples(n, k + 1) {
        let mut acc = chart.zero();
        for i in 0..=k {
            let mut rest = tuple.clone();
            let a = rest.remove(i);
            let term = frame.anchors[a].apply(&psi.component(&rest));
            if i % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        for i in 0..=k {
            for j in i + 1..=k {
                let (a, b) = (tuple[i], tuple[j]);
                let rest: Vec<usize> = tuple
                    .iter()
                    .enumerate()
                    .filter(|&(t, _)| t != i && t != j)
                    .map(|(_, &v)| v)
                    .collect();
                let mut term = chart.zero();
                for (c, coeff) in frame.brackets[a][b].iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut idx = Vec::with_capacity(k);
                    idx.push(c);
                    idx.extend_from_slice(&rest);
                    let val = psi.component(&idx);
                    if !val.is_zero() {
                        term += &(coeff * &val);
                    }
                }
                if (i + j) % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
        }
        entries.push((tuple, acc));
    }
    Alt::from_components(chart, k + 1, entries)
}
