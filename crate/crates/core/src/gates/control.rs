//! Conditional-control gates seen as finite automata: the first `k` lines
//! are an alphabet symbol that selects a next-state map on the remaining lines.

use super::{index_pattern, pattern_index, Gate};
use crate::error::{Error, Result};

/// A gate split into `k` control lines and one transition map per control pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlDecomposition {
    pub d: u8,
    pub k: usize,
    /// `deltas[a]` acts on the target lines when the control lines hold the
    /// pattern with index `a` (first control line most significant).
    pub deltas: Vec<Gate>,
}

impl ControlDecomposition {
    /// Size of the control alphabet, `d^k`.
    pub fn alphabet_size(&self) -> usize {
        self.deltas.len()
    }
}

/// Splits off the first `k` lines as controls if the gate passes them through
/// unchanged on every row.
pub fn control_decompose(g: &Gate, k: usize) -> Option<ControlDecomposition> {
    let (n, d) = (g.n(), g.d());
    if k == 0 || k >= n || g.m() != n {
        return None;
    }
    let mut ctrl = vec![0; k];
    let targets = (d as usize).pow((n - k) as u32);
    let mut deltas = Vec::with_capacity(g.rows() / targets);
    for (a, block) in g.table().chunks(targets * n).enumerate() {
        index_pattern(a, d, &mut ctrl);
        let mut table = Vec::with_capacity(targets * (n - k));
        for row in block.chunks(n) {
            if row[..k] != ctrl[..] {
                return None;
            }
            table.extend_from_slice(&row[k..]);
        }
        deltas.push(Gate::from_raw(d, (n - k) as u8, (n - k) as u8, table));
    }
    Some(ControlDecomposition { d, k, deltas })
}

/// Reassembles `(a, s) -> (a, δ_a(s))`.
pub fn automaton_to_gate(dec: &ControlDecomposition) -> Result<Gate> {
    let d = dec.d;
    let expected = (d as usize)
        .checked_pow(dec.k as u32)
        .ok_or_else(|| Error::Shape("control alphabet too large".into()))?;
    if dec.k == 0 || dec.deltas.len() != expected {
        return Err(Error::Shape(format!(
            "{} control lines need {expected} transition maps, got {}",
            dec.k,
            dec.deltas.len()
        )));
    }
    let width = dec.deltas[0].n();
    if let Some(bad) = dec
        .deltas
        .iter()
        .find(|g| g.d() != d || g.n() != width || g.m() != width)
    {
        return Err(Error::Shape(format!(
            "transition maps must all be L_{d} maps on {width} lines; found a ({}, {}) map over L_{}",
            bad.n(),
            bad.m(),
            bad.d()
        )));
    }
    let n = dec.k + width;
    Gate::from_fn(d.into(), n, n, |x, y| {
        let a = pattern_index(&x[..dec.k], d);
        y[..dec.k].copy_from_slice(&x[..dec.k]);
        y[dec.k..].copy_from_slice(dec.deltas[a].row(pattern_index(&x[dec.k..], d)));
    })
}
