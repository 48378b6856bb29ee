//! Making Boolean gates reversible and then conservative.
//!
//! `reversibilize` embeds `G: {0,1}^n -> {0,1}^m` into the permutation
//! `(a, s) -> (a, s xor G(a))`. `conservativize` then adds `ℓ` ancilla lines
//! that lend ones and `h` lines that absorb ones, so that every row keeps its
//! count of ones while the original gate is still read off the first lines.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::{pattern_index, Gate};

fn require_boolean(g: &Gate, what: &str) -> Result<()> {
    if g.d() != 2 {
        return Err(Error::Transform(format!(
            "{what} is defined for Boolean gates only (d={})",
            g.d()
        )));
    }
    Ok(())
}

/// `(a, s) -> (a, s xor G(a))` on `n + m` lines.
pub fn reversibilize(g: &Gate) -> Result<Gate> {
    require_boolean(g, "reversibilization")?;
    let (n, m) = (g.n(), g.m());
    Gate::from_fn(2, n + m, n + m, |x, y| {
        let out = g.row(pattern_index(&x[..n], 2));
        y[..n].copy_from_slice(&x[..n]);
        for ((slot, &s), &o) in y[n..].iter_mut().zip(&x[n..]).zip(out) {
            *slot = s ^ o;
        }
    })
}

/// Ancilla counts and the per-row change in the number of ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConservativizationPlan {
    /// Line count of the reversible gate being conservativized.
    pub width: usize,
    /// One-lending ancillae, `-min E`.
    pub ell: usize,
    /// One-absorbing ancillae, `max E`.
    pub h: usize,
    /// `E(x) = ones(G(x)) - ones(x)` for each input row.
    pub imbalance: Vec<i32>,
}

impl ConservativizationPlan {
    /// `E value -> number of rows with that imbalance`, ascending.
    pub fn histogram(&self) -> Vec<(i32, usize)> {
        let mut sorted = self.imbalance.clone();
        sorted.sort_unstable();
        let mut out: Vec<(i32, usize)> = Vec::new();
        for e in sorted {
            match out.last_mut() {
                Some((v, c)) if *v == e => *c += 1,
                _ => out.push((e, 1)),
            }
        }
        out
    }

    /// Total line count after conservativization.
    pub fn lines(&self) -> usize {
        self.width + self.ell + self.h
    }
}

fn ones(p: &[u8]) -> i32 {
    p.iter().map(|&b| i32::from(b)).sum()
}

pub fn imbalance_plan(gr: &Gate) -> Result<ConservativizationPlan> {
    require_boolean(gr, "conservativization")?;
    if gr.n() != gr.m() || !gr.is_reversible() {
        return Err(Error::Transform(
            "conservativization needs a reversible gate with n = m".into(),
        ));
    }
    let imbalance: Vec<i32> = gr.iter_rows().map(|(x, y)| ones(y) - ones(&x)).collect();
    let min = imbalance.iter().copied().min().unwrap_or(0);
    let max = imbalance.iter().copied().max().unwrap_or(0);
    Ok(ConservativizationPlan {
        width: gr.n(),
        ell: (-min).max(0) as usize,
        h: max.max(0) as usize,
        imbalance,
    })
}

/// Bit-level view of the `(x, y, z)` split used by the case rules.
struct Layout<'a> {
    plan: &'a ConservativizationPlan,
    inverse: Vec<usize>,
    forward: Vec<usize>,
}

/// Which of the printed rules produced an output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    LendOnes,
    ReturnLent,
    Balanced,
    AbsorbOnes,
    ReturnAbsorbed,
    Fallback,
}

impl<'a> Layout<'a> {
    fn new(gr: &'a Gate, plan: &'a ConservativizationPlan) -> Result<Self> {
        require_boolean(gr, "conservativization")?;
        if gr.n() != plan.width || gr.m() != plan.width || plan.imbalance.len() != gr.rows() {
            return Err(Error::Transform(
                "plan was not computed for this gate".into(),
            ));
        }
        if plan.lines() > 24 {
            return Err(Error::Transform(format!(
                "{} lines are too many to tabulate",
                plan.lines()
            )));
        }
        let forward: Vec<usize> = (0..gr.rows())
            .map(|i| pattern_index(gr.row(i), 2))
            .collect();
        let mut inverse = vec![usize::MAX; forward.len()];
        for (i, &o) in forward.iter().enumerate() {
            if inverse[o] != usize::MAX {
                return Err(Error::Transform("gate is not reversible".into()));
            }
            inverse[o] = i;
        }
        Ok(Layout {
            plan,
            inverse,
            forward,
        })
    }

    fn e(&self, x: usize) -> i32 {
        self.plan.imbalance[x]
    }

    /// `E_ℓ`: `-E` ones followed by zeros.
    fn lend(&self, x: usize) -> usize {
        let e = (-self.e(x)) as usize;
        ((1 << e) - 1) << (self.plan.ell - e)
    }

    /// `E_h^c`: `E` zeros followed by ones.
    fn absorb(&self, x: usize) -> usize {
        (1 << (self.plan.h - self.e(x) as usize)) - 1
    }

    fn ones_z(&self) -> usize {
        (1 << self.plan.h) - 1
    }

    fn pack(&self, x: usize, y: usize, z: usize) -> usize {
        (x << (self.plan.ell + self.plan.h)) | (y << self.plan.h) | z
    }

    /// Every rule among the first five whose guard holds, with its output.
    /// With `inverse_balanced` the balanced rule runs `G^r` backwards.
    fn firing(&self, x: usize, y: usize, z: usize, inverse_balanced: bool) -> Vec<(Rule, usize)> {
        let full_z = self.ones_z();
        let mut hits = Vec::new();
        let e = self.e(x);
        if e < 0 && y == 0 && z == full_z {
            hits.push((
                Rule::LendOnes,
                self.pack(self.forward[x], self.lend(x), full_z),
            ));
        }
        let k = self.inverse[x];
        if self.e(k) < 0 && y == self.lend(k) && z == full_z {
            hits.push((Rule::ReturnLent, self.pack(k, 0, full_z)));
        }
        if inverse_balanced {
            if self.e(k) == 0 && y == 0 && z == full_z {
                hits.push((Rule::Balanced, self.pack(k, 0, full_z)));
            }
        } else if e == 0 && y == 0 && z == full_z {
            hits.push((Rule::Balanced, self.pack(self.forward[x], 0, full_z)));
        }
        if e > 0 && y == 0 && z == full_z {
            hits.push((
                Rule::AbsorbOnes,
                self.pack(self.forward[x], 0, self.absorb(x)),
            ));
        }
        if self.e(k) > 0 && y == 0 && z == self.absorb(k) {
            hits.push((Rule::ReturnAbsorbed, self.pack(k, 0, full_z)));
        }
        hits
    }

    fn build(&self, inverse_balanced: bool) -> Result<Gate> {
        let (ell, h) = (self.plan.ell, self.plan.h);
        let lines = self.plan.lines();
        let total = 1usize << lines;
        let mut targets = vec![0usize; total];
        for (input, slot) in targets.iter_mut().enumerate() {
            let x = input >> (ell + h);
            let y = (input >> h) & ((1 << ell) - 1);
            let z = input & ((1 << h) - 1);
            let hits = self.firing(x, y, z, inverse_balanced);
            if hits.len() > 1 {
                let rules: Vec<Rule> = hits.iter().map(|h| h.0).collect();
                return Err(Error::Transform(format!(
                    "rules {rules:?} all apply to input {}",
                    bits(input, lines)
                )));
            }
            *slot = hits.first().map_or((Rule::Fallback, input), |h| *h).1;
        }
        let mut source = vec![usize::MAX; total];
        for (input, &out) in targets.iter().enumerate() {
            if source[out] != usize::MAX {
                return Err(Error::Transform(format!(
                    "inputs {} and {} both map to {}; the construction is not a permutation for this gate",
                    bits(source[out], lines),
                    bits(input, lines),
                    bits(out, lines)
                )));
            }
            source[out] = input;
        }
        let mut table = Vec::with_capacity(total * lines);
        for out in targets {
            table.extend((0..lines).rev().map(|b| ((out >> b) & 1) as u8));
        }
        Gate::from_table(2, lines, lines, table)
    }
}

fn bits(v: usize, width: usize) -> String {
    (0..width)
        .rev()
        .map(|b| if (v >> b) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Builds the conservative extension of a reversible Boolean gate.
///
/// The case rules are applied in printed order after checking that no two of
/// the five guarded rules apply to the same input, and the resulting table is
/// checked to be a permutation. Either failure is reported as
/// [`Error::Transform`]; the construction is a permutation whenever the gate
/// maps its balanced rows (`E = 0`) onto balanced rows, which holds for
/// every output of [`reversibilize`].
pub fn conservativize(gr: &Gate, plan: &ConservativizationPlan) -> Result<Gate> {
    Layout::new(gr, plan)?.build(false)
}

/// The inverse of [`conservativize`], obtained by running the balanced rule
/// backwards.
pub fn conservativize_inverse(gr: &Gate, plan: &ConservativizationPlan) -> Result<Gate> {
    Layout::new(gr, plan)?.build(true)
}

/// Reads the original gate back: feeds `(a, 0_m, 0_ℓ, 1_h)` and projects
/// onto the `m` lines after the first `n`.
pub fn realize_original(
    grc: &Gate,
    plan: &ConservativizationPlan,
    n: usize,
    a: &[u8],
) -> Result<Vec<u8>> {
    if a.len() != n || n >= plan.width || grc.n() != plan.lines() {
        return Err(Error::Transform(
            "input does not fit the conservativized gate".into(),
        ));
    }
    let m = plan.width - n;
    let mut input = a.to_vec();
    input.extend(std::iter::repeat_n(0, m + plan.ell));
    input.extend(std::iter::repeat_n(1, plan.h));
    Ok(grc.apply(&input)?[n..n + m].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{all_patterns, control_decompose, named_gate};

    #[test]
    fn reversible_and() {
        let gr = reversibilize(&named_gate("AND").unwrap()).unwrap();
        assert_eq!(gr.apply(&[1, 1, 0]).unwrap(), [1, 1, 1]);
        assert!(gr.is_self_reversible());
        let dec = control_decompose(&gr, 2).unwrap();
        assert_eq!(dec.deltas[3], named_gate("NOT").unwrap());
    }

    #[test]
    fn reversible_not() {
        let gr = reversibilize(&named_gate("NOT").unwrap()).unwrap();
        assert_eq!(gr.table(), [0, 1, 0, 0, 1, 0, 1, 1]);
    }

    #[test]
    fn and_plan_and_rules() {
        let gr = reversibilize(&named_gate("AND").unwrap()).unwrap();
        let plan = imbalance_plan(&gr).unwrap();
        assert_eq!((plan.ell, plan.h), (1, 1));
        assert_eq!(plan.imbalance.iter().sum::<i32>(), 0);
        assert_eq!(plan.imbalance[0b110], 1);
        assert_eq!(plan.imbalance[0b111], -1);
        let grc = conservativize(&gr, &plan).unwrap();
        assert_eq!(grc.apply(&[1, 1, 0, 0, 1]).unwrap(), [1, 1, 1, 0, 0]);
        assert_eq!(grc.apply(&[1, 1, 1, 0, 1]).unwrap(), [1, 1, 0, 1, 1]);
        assert_eq!(grc.apply(&[0, 1, 0, 0, 1]).unwrap(), [0, 1, 0, 0, 1]);
        assert!(grc.is_reversible());
        assert!(grc.is_weakly_conservative());
    }

    #[test]
    fn fredkin_needs_no_ancillae() {
        let plan = imbalance_plan(&named_gate("FREDKIN").unwrap()).unwrap();
        assert_eq!((plan.ell, plan.h), (0, 0));
        let grc = conservativize(&named_gate("FREDKIN").unwrap(), &plan).unwrap();
        assert_eq!(grc, named_gate("FREDKIN").unwrap());
    }

    #[test]
    fn identity_realization() {
        let id = Gate::identity(2, 1).unwrap();
        let gr = reversibilize(&id).unwrap();
        assert_eq!(gr, named_gate("CNOT").unwrap());
        let plan = imbalance_plan(&gr).unwrap();
        let grc = conservativize(&gr, &plan).unwrap();
        for a in [0u8, 1] {
            assert_eq!(realize_original(&grc, &plan, 1, &[a]).unwrap(), [a]);
        }
    }

    #[test]
    fn inverse_composes_to_identity() {
        let gr = reversibilize(&named_gate("LANDAUER").unwrap()).unwrap();
        let plan = imbalance_plan(&gr).unwrap();
        let grc = conservativize(&gr, &plan).unwrap();
        let inv = conservativize_inverse(&gr, &plan).unwrap();
        let id = Gate::identity(2, plan.lines()).unwrap();
        assert_eq!(grc.then(&inv).unwrap(), id);
        assert_eq!(inv, grc.invert().unwrap());
    }

    #[test]
    fn three_cycle_is_reported() {
        // 01 -> 10 -> 11 -> 01 moves a balanced row onto an unbalanced one
        let gr = Gate::from_table(2, 2, 2, vec![0, 0, 1, 0, 1, 1, 0, 1]).unwrap();
        let plan = imbalance_plan(&gr).unwrap();
        let err = conservativize(&gr, &plan).unwrap_err();
        assert!(
            matches!(err, Error::Transform(ref m) if m.contains("not a permutation")),
            "{err}"
        );
    }

    #[test]
    fn rejects_non_boolean() {
        assert!(reversibilize(&named_gate("F1").unwrap()).is_err());
        assert!(imbalance_plan(&named_gate("CONS22").unwrap()).is_err());
    }

    #[test]
    fn landauer_round_trip() {
        let g = named_gate("LANDAUER").unwrap();
        let gr = reversibilize(&g).unwrap();
        let plan = imbalance_plan(&gr).unwrap();
        let grc = conservativize(&gr, &plan).unwrap();
        for a in all_patterns(3, 2) {
            assert_eq!(
                realize_original(&grc, &plan, 3, &a).unwrap(),
                g.apply(&a).unwrap()
            );
        }
    }
}
