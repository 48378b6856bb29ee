//! Landauer accounting: spectra of a gate, the entropy lost by merging
//! inputs, and the internal energy balance of each row.
//!
//! Entropies are in units of Boltzmann's constant with natural logarithms;
//! the dissipation is in units of `kT`. Inputs are taken as equiprobable over
//! all `d^n` patterns.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::{pattern_index, Gate};

/// One eigenvalue (an output pattern in the image) with its eigenspace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralEntry {
    pub output: Vec<u8>,
    /// Input row indices mapped to `output`, ascending.
    pub inputs: Vec<usize>,
}

impl SpectralEntry {
    /// Indistinguishability degree `|M_G(λ)|`.
    pub fn multiplicity(&self) -> usize {
        self.inputs.len()
    }
}

/// Partition of the inputs by their output, ordered by output pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralDecomposition {
    pub d: u8,
    pub n: usize,
    pub entries: Vec<SpectralEntry>,
}

impl SpectralDecomposition {
    /// Probability of each eigenvalue under uniform inputs.
    pub fn probabilities(&self) -> Vec<f64> {
        let total = (self.d as f64).powi(self.n as i32);
        self.entries
            .iter()
            .map(|e| e.multiplicity() as f64 / total)
            .collect()
    }

    /// Characteristic function of each eigenspace at input row `x`.
    pub fn projections(&self, x: usize) -> Vec<u8> {
        self.entries
            .iter()
            .map(|e| e.inputs.binary_search(&x).is_ok() as u8)
            .collect()
    }

    /// `multiplicity -> number of eigenvalues with that multiplicity`.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for e in &self.entries {
            *h.entry(e.multiplicity()).or_insert(0) += 1;
        }
        h
    }
}

pub fn spectrum(g: &Gate) -> SpectralDecomposition {
    let mut by_output: BTreeMap<&[u8], Vec<usize>> = BTreeMap::new();
    for i in 0..g.rows() {
        by_output.entry(g.row(i)).or_default().push(i);
    }
    SpectralDecomposition {
        d: g.d(),
        n: g.n(),
        entries: by_output
            .into_iter()
            .map(|(output, inputs)| SpectralEntry {
                output: output.to_vec(),
                inputs,
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyReport {
    /// `S_i = n ln d`.
    pub input_entropy: f64,
    pub output_entropy: f64,
    /// `ΔE = S_i - S_f` in units of `kT`.
    pub dissipation: f64,
}

impl EntropyReport {
    /// The same report with entropies in bits instead of nats.
    pub fn in_bits(&self) -> EntropyReport {
        let k = std::f64::consts::LN_2;
        EntropyReport {
            input_entropy: self.input_entropy / k,
            output_entropy: self.output_entropy / k,
            dissipation: self.dissipation / k,
        }
    }
}

pub fn entropy_report(g: &Gate) -> EntropyReport {
    let total = g.rows() as f64;
    // ΔE = (1/d^n) Σ |M| ln |M|, summed in multiplicity order for reproducibility
    let mut mults: Vec<usize> = spectrum(g)
        .entries
        .iter()
        .map(|e| e.multiplicity())
        .collect();
    mults.sort_unstable();
    let dissipation: f64 = mults
        .iter()
        .map(|&m| m as f64 * (m as f64).ln())
        .sum::<f64>()
        / total;
    let input_entropy = g.n() as f64 * f64::from(g.d()).ln();
    EntropyReport {
        input_entropy,
        output_entropy: input_entropy - dissipation,
        dissipation,
    }
}

/// Energy carried by each truth level on a line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyModel {
    levels: Vec<f64>,
}

impl EnergyModel {
    /// Equally spaced levels `ε(k) = k * step`.
    pub fn equally_spaced(d: u8, step: f64) -> Result<EnergyModel> {
        EnergyModel::new((0..d).map(|k| f64::from(k) * step).collect())
    }

    /// Arbitrary levels; must be strictly increasing.
    pub fn new(levels: Vec<f64>) -> Result<EnergyModel> {
        if levels.len() < 2
            || levels
                .windows(2)
                .any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
        {
            return Err(Error::Shape(
                "energy levels must be at least two and strictly increasing".into(),
            ));
        }
        Ok(EnergyModel { levels })
    }

    pub fn energy(&self, level: u8) -> f64 {
        self.levels[level as usize]
    }

    fn pattern_energy(&self, p: &[u8]) -> f64 {
        p.iter().map(|&k| self.energy(k)).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InternalEnergy {
    /// `ΔU` of each row, in row order.
    pub rows: Vec<f64>,
    pub total: f64,
}

/// `ΔU(x, G(x))` for every row and their sum.
pub fn internal_energy(g: &Gate, model: &EnergyModel) -> Result<InternalEnergy> {
    if g.n() != g.m() {
        return Err(Error::Shape("internal energy needs n = m".into()));
    }
    if model.levels.len() != g.d() as usize {
        return Err(Error::Shape(format!(
            "energy model has {} levels, gate has d={}",
            model.levels.len(),
            g.d()
        )));
    }
    let rows: Vec<f64> = g
        .iter_rows()
        .map(|(x, y)| model.pattern_energy(y) - model.pattern_energy(&x))
        .collect();
    let total = rows.iter().sum();
    Ok(InternalEnergy { rows, total })
}

/// Rebuilds each output from the spectral resolution `Σ_λ λ·χ_λ(x)`.
pub fn resolve(spec: &SpectralDecomposition, x: &[u8]) -> Vec<u32> {
    let chi = spec.projections(pattern_index(x, spec.d));
    let width = spec.entries.first().map_or(0, |e| e.output.len());
    let mut out = vec![0u32; width];
    for (e, &c) in spec.entries.iter().zip(&chi) {
        for (o, &lam) in out.iter_mut().zip(&e.output) {
            *o += u32::from(lam) * u32::from(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::named_gate;

    #[test]
    fn landauer_spectrum() {
        let s = spectrum(&named_gate("LANDAUER").unwrap());
        let mults: Vec<(Vec<u8>, usize)> = s
            .entries
            .iter()
            .map(|e| (e.output.clone(), e.multiplicity()))
            .collect();
        assert_eq!(
            mults,
            vec![
                (vec![0, 0, 0], 3),
                (vec![0, 0, 1], 1),
                (vec![1, 1, 0], 3),
                (vec![1, 1, 1], 1)
            ]
        );
        assert!((s.probabilities().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn landauer_dissipation() {
        let r = entropy_report(&named_gate("LANDAUER").unwrap());
        assert!((r.dissipation - 0.75 * 3f64.ln()).abs() < 1e-12);
        assert!((r.dissipation - 0.824).abs() < 0.005);
        assert!((r.input_entropy - 3.0 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn constant_gate() {
        let g = Gate::from_fn(2, 2, 2, |_, y| y.fill(0)).unwrap();
        let s = spectrum(&g);
        assert_eq!(s.entries.len(), 1);
        assert_eq!(s.entries[0].multiplicity(), 4);
        let r = entropy_report(&g);
        assert!((r.dissipation - 2.0 * 2f64.ln()).abs() < 1e-12);
        assert!(r.output_entropy.abs() < 1e-12);
    }

    #[test]
    fn energy_balance() {
        let model = EnergyModel::new(vec![0.0, 1.0]).unwrap();
        let u = internal_energy(&named_gate("REV22").unwrap(), &model).unwrap();
        assert_eq!(u.rows[0], 2.0);
        let fredkin = internal_energy(&named_gate("FREDKIN").unwrap(), &model).unwrap();
        assert!(fredkin.rows.iter().all(|&r| r == 0.0));
        assert!(EnergyModel::new(vec![1.0, 1.0]).is_err());
        let f1 = named_gate("F1").unwrap();
        let eq = EnergyModel::equally_spaced(3, 0.7).unwrap();
        assert!(internal_energy(&f1, &eq)
            .unwrap()
            .rows
            .iter()
            .all(|r| r.abs() < 1e-12));
    }

    #[test]
    fn spectral_resolution_rebuilds_outputs() {
        let g = named_gate("LANDAUER").unwrap();
        let s = spectrum(&g);
        for (x, y) in g.iter_rows() {
            let chi = s.projections(pattern_index(&x, 2));
            assert_eq!(chi.iter().map(|&c| c as u32).sum::<u32>(), 1);
            let rebuilt: Vec<u8> = resolve(&s, &x).iter().map(|&v| v as u8).collect();
            assert_eq!(rebuilt, y);
        }
    }
}
