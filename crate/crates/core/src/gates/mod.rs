//! Gate tables over `L_d` and their structural properties.
//!
//! A gate with `n` inputs and `m` outputs is stored as a dense array of
//! `d^n` output rows. Input patterns are indexed in base `d` with the first
//! line as the most significant digit, so row order is lexicographic order.

mod control;
mod family;
mod format;
mod named;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::values::{check_arity, Value};

pub use control::{automaton_to_gate, control_decompose, ControlDecomposition};
pub use family::{family_gate, rule_overlaps, Family};
pub use named::{named_gate, NAMED_GATES};

/// Index of `pattern` among all patterns of its length, first line most significant.
pub fn pattern_index(pattern: &[u8], d: u8) -> usize {
    pattern
        .iter()
        .fold(0, |acc, &x| acc * d as usize + x as usize)
}

/// Writes the pattern with the given index into `out` (whose length is the line count).
pub fn index_pattern(mut index: usize, d: u8, out: &mut [u8]) {
    for slot in out.iter_mut().rev() {
        *slot = (index % d as usize) as u8;
        index /= d as usize;
    }
}

/// All patterns of length `n` over `L_d`, in index order.
pub fn all_patterns(n: usize, d: u8) -> impl Iterator<Item = Vec<u8>> {
    let total = (d as usize).pow(n as u32);
    (0..total).map(move |i| {
        let mut p = vec![0; n];
        index_pattern(i, d, &mut p);
        p
    })
}

fn pattern_count(d: u8, n: usize) -> Result<usize> {
    (d as usize)
        .checked_pow(n as u32)
        .filter(|&c| c <= 1 << 26)
        .ok_or_else(|| Error::Shape(format!("d^n too large for a dense table (d={d}, n={n})")))
}

/// Property flags of a gate. Flags that only make sense for a given shape
/// are `None` when the gate has another shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GateReport {
    pub reversible: bool,
    pub self_reversible: bool,
    pub strictly_conservative: Option<bool>,
    pub weakly_conservative: bool,
    pub zero_regular: Option<bool>,
    pub one_regular: Option<bool>,
    /// F-7: the first output always equals the first input.
    pub conditional_control_first_line: Option<bool>,
    /// F-8: on Boolean triples the gate behaves as the Fredkin gate.
    pub boolean_fredkin: Option<bool>,
}

impl GateReport {
    /// `(name, value)` pairs in a stable order, `None` for inapplicable flags.
    pub fn entries(&self) -> [(&'static str, Option<bool>); 8] {
        [
            ("reversible", Some(self.reversible)),
            ("self_reversible", Some(self.self_reversible)),
            ("strictly_conservative", self.strictly_conservative),
            ("weakly_conservative", Some(self.weakly_conservative)),
            ("zero_regular", self.zero_regular),
            ("one_regular", self.one_regular),
            (
                "conditional_control_first_line",
                self.conditional_control_first_line,
            ),
            ("boolean_fredkin", self.boolean_fredkin),
        ]
    }
}

/// A total map `L_d^n -> L_d^m` stored as a dense table.
#[derive(Clone, Serialize)]
pub struct Gate {
    d: u8,
    n: u8,
    m: u8,
    table: Vec<u8>,
    #[serde(skip)]
    report: OnceLock<GateReport>,
}

impl PartialEq for Gate {
    fn eq(&self, other: &Self) -> bool {
        (self.d, self.n, self.m) == (other.d, other.n, other.m) && self.table == other.table
    }
}

impl Eq for Gate {}

impl Hash for Gate {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.d, self.n, self.m).hash(state);
        self.table.hash(state);
    }
}

impl fmt::Debug for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gate")
            .field("d", &self.d)
            .field("n", &self.n)
            .field("m", &self.m)
            .field("table", &self.table)
            .finish()
    }
}

impl Gate {
    /// Builds a gate from explicit `(input, output)` rows given as levels.
    /// Rows may come in any order but must cover every input exactly once.
    pub fn new<I, P, Q>(d: u32, n: usize, m: usize, rows: I) -> Result<Gate>
    where
        I: IntoIterator<Item = (P, Q)>,
        P: AsRef<[u8]>,
        Q: AsRef<[u8]>,
    {
        let d8 = check_arity(d)?;
        Self::check_lines(n, m)?;
        let count = pattern_count(d8, n)?;
        let mut table = vec![0u8; count * m];
        let mut seen = vec![false; count];
        for (input, output) in rows {
            let (input, output) = (input.as_ref(), output.as_ref());
            if input.len() != n || output.len() != m {
                return Err(Error::Table(format!(
                    "row {input:?} -> {output:?} does not have shape {n} -> {m}"
                )));
            }
            if let Some(&bad) = input.iter().chain(output).find(|&&x| x >= d8) {
                return Err(Error::LevelOutOfRange {
                    level: bad.into(),
                    d,
                });
            }
            let i = pattern_index(input, d8);
            if seen[i] {
                return Err(Error::Table(format!("duplicate row for input {input:?}")));
            }
            seen[i] = true;
            table[i * m..(i + 1) * m].copy_from_slice(output);
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            let mut p = vec![0; n];
            index_pattern(missing, d8, &mut p);
            return Err(Error::Table(format!("missing row for input {p:?}")));
        }
        Ok(Gate::from_raw(d8, n as u8, m as u8, table))
    }

    /// Builds a gate from a flat table of `d^n * m` output levels in row order.
    pub fn from_table(d: u32, n: usize, m: usize, table: Vec<u8>) -> Result<Gate> {
        let d8 = check_arity(d)?;
        Self::check_lines(n, m)?;
        let count = pattern_count(d8, n)?;
        if table.len() != count * m {
            return Err(Error::Table(format!(
                "expected {} table entries, got {}",
                count * m,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= d8) {
            return Err(Error::LevelOutOfRange {
                level: bad.into(),
                d,
            });
        }
        Ok(Gate::from_raw(d8, n as u8, m as u8, table))
    }

    /// Tabulates `f` over every input pattern.
    pub fn from_fn<F>(d: u32, n: usize, m: usize, mut f: F) -> Result<Gate>
    where
        F: FnMut(&[u8], &mut [u8]),
    {
        let d8 = check_arity(d)?;
        Self::check_lines(n, m)?;
        let count = pattern_count(d8, n)?;
        let mut table = vec![0u8; count * m];
        let mut input = vec![0u8; n];
        for (i, out) in table.chunks_mut(m).enumerate() {
            index_pattern(i, d8, &mut input);
            f(&input, out);
        }
        Gate::from_table(d, n, m, table)
    }

    /// The identity gate on `n` lines.
    pub fn identity(d: u32, n: usize) -> Result<Gate> {
        Gate::from_fn(d, n, n, |x, y| y.copy_from_slice(x))
    }

    pub(crate) fn from_raw(d: u8, n: u8, m: u8, table: Vec<u8>) -> Gate {
        Gate {
            d,
            n,
            m,
            table,
            report: OnceLock::new(),
        }
    }

    fn check_lines(n: usize, m: usize) -> Result<()> {
        if n == 0 || m == 0 || n > 24 || m > 255 {
            return Err(Error::Shape(format!(
                "unsupported line counts n={n}, m={m}"
            )));
        }
        Ok(())
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn m(&self) -> usize {
        self.m as usize
    }

    /// Number of rows, `d^n`.
    pub fn rows(&self) -> usize {
        self.table.len() / self.m as usize
    }

    /// The flat output table.
    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn into_table(self) -> Vec<u8> {
        self.table
    }

    /// Output row for the input with the given index.
    pub fn row(&self, index: usize) -> &[u8] {
        let m = self.m as usize;
        &self.table[index * m..(index + 1) * m]
    }

    /// Output for an input pattern of levels.
    pub fn apply(&self, input: &[u8]) -> Result<&[u8]> {
        if input.len() != self.n() {
            return Err(Error::Shape(format!(
                "input has {} lines, gate has {}",
                input.len(),
                self.n
            )));
        }
        if let Some(&bad) = input.iter().find(|&&x| x >= self.d) {
            return Err(Error::LevelOutOfRange {
                level: bad.into(),
                d: self.d.into(),
            });
        }
        Ok(self.row(pattern_index(input, self.d)))
    }

    /// Output for an input pattern of values.
    pub fn apply_values(&self, input: &[Value]) -> Result<Vec<Value>> {
        if let Some(v) = input.iter().find(|v| v.d() != self.d) {
            return Err(Error::ArityMismatch {
                left: v.d(),
                right: self.d,
            });
        }
        let levels: Vec<u8> = input.iter().map(|v| v.level()).collect();
        Ok(self
            .apply(&levels)?
            .iter()
            .map(|&k| Value::from_raw(k, self.d))
            .collect())
    }

    /// `(input, output)` pairs in row order.
    pub fn iter_rows(&self) -> impl Iterator<Item = (Vec<u8>, &[u8])> + '_ {
        all_patterns(self.n(), self.d).zip(self.table.chunks(self.m()))
    }

    fn top(&self) -> u8 {
        self.d - 1
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.n != self.m {
            return Err(Error::Shape(format!(
                "{what} needs as many outputs as inputs (n={}, m={})",
                self.n, self.m
            )));
        }
        Ok(())
    }

    fn require_three(&self, what: &str) -> Result<()> {
        if self.n != 3 || self.m != 3 {
            return Err(Error::Shape(format!(
                "{what} is defined for (3,d)-gates only (n={}, m={})",
                self.n, self.m
            )));
        }
        Ok(())
    }

    /// Output-row indices; used for injectivity and inversion.
    fn output_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.table
            .chunks(self.m())
            .map(|r| pattern_index(r, self.d))
    }

    /// Injective (for `n <= m`); never true when `n > m`.
    pub fn is_reversible(&self) -> bool {
        self.injectivity_witness().is_none() && self.n <= self.m
    }

    /// First pair of inputs sharing an output, if any.
    fn injectivity_witness(&self) -> Option<(usize, usize)> {
        if self.n > self.m {
            return Some((0, 0));
        }
        let images = (self.d as usize).pow(self.m as u32);
        let mut first = vec![usize::MAX; images.min(1 << 26)];
        if images > first.len() {
            // fall back to sorting for very wide outputs
            let mut outs: Vec<(usize, usize)> = self.output_indices().zip(0..).collect();
            outs.sort_unstable();
            return outs
                .windows(2)
                .find(|w| w[0].0 == w[1].0)
                .map(|w| (w[0].1, w[1].1));
        }
        for (i, o) in self.output_indices().enumerate() {
            if first[o] != usize::MAX {
                return Some((first[o], i));
            }
            first[o] = i;
        }
        None
    }

    /// `g ∘ g = id`; false unless `n = m`.
    pub fn is_self_reversible(&self) -> bool {
        self.n == self.m
            && self
                .output_indices()
                .enumerate()
                .all(|(i, o)| pattern_index(self.row(o), self.d) == i)
    }

    /// Every output row is a rearrangement of its input row.
    pub fn is_strictly_conservative(&self) -> Result<bool> {
        self.require_square("strict conservativeness")?;
        let mut counts = vec![0i32; self.d as usize];
        Ok(self.iter_rows().all(|(x, y)| {
            counts.iter_mut().for_each(|c| *c = 0);
            x.iter().for_each(|&a| counts[a as usize] += 1);
            y.iter().for_each(|&b| counts[b as usize] -= 1);
            counts.iter().all(|&c| c == 0)
        }))
    }

    /// The level sums of each input row and its output row agree.
    pub fn is_weakly_conservative(&self) -> bool {
        self.iter_rows().all(|(x, y)| level_sum(&x) == level_sum(y))
    }

    /// Inputs on which `G(0, a, b) = (0, b, a)` fails.
    pub fn zero_regular_violations(&self) -> Result<Vec<Vec<u8>>> {
        self.require_three("0-regularity")?;
        Ok(self
            .iter_rows()
            .filter(|(x, y)| x[0] == 0 && *y != [0, x[2], x[1]])
            .map(|(x, _)| x)
            .collect())
    }

    /// Inputs on which `G(1, a, b) = (1, a, b)` fails.
    pub fn one_regular_violations(&self) -> Result<Vec<Vec<u8>>> {
        self.require_three("1-regularity")?;
        let top = self.top();
        Ok(self
            .iter_rows()
            .filter(|(x, y)| x[0] == top && *y != x.as_slice())
            .map(|(x, _)| x)
            .collect())
    }

    /// Inputs whose first output differs from the first input (F-7).
    pub fn first_line_violations(&self) -> Result<Vec<Vec<u8>>> {
        self.require_three("F-7")?;
        Ok(self
            .iter_rows()
            .filter(|(x, y)| x[0] != y[0])
            .map(|(x, _)| x)
            .collect())
    }

    /// Boolean-level triples on which the gate differs from Fredkin (F-8).
    pub fn boolean_fredkin_violations(&self) -> Result<Vec<Vec<u8>>> {
        self.require_three("F-8")?;
        let top = self.top();
        Ok(self
            .iter_rows()
            .filter(|(x, _)| x.iter().all(|&a| a == 0 || a == top))
            .filter(|(x, y)| *y != fredkin_levels(x))
            .map(|(x, _)| x)
            .collect())
    }

    pub fn is_zero_regular(&self) -> Result<bool> {
        Ok(self.zero_regular_violations()?.is_empty())
    }

    pub fn is_one_regular(&self) -> Result<bool> {
        Ok(self.one_regular_violations()?.is_empty())
    }

    pub fn satisfies_first_line_identity(&self) -> Result<bool> {
        Ok(self.first_line_violations()?.is_empty())
    }

    pub fn is_boolean_fredkin(&self) -> Result<bool> {
        Ok(self.boolean_fredkin_violations()?.is_empty())
    }

    /// All property flags, computed once and cached.
    pub fn report(&self) -> &GateReport {
        self.report.get_or_init(|| {
            let three = self.n == 3 && self.m == 3;
            let when3 = |r: Result<bool>| if three { r.ok() } else { None };
            GateReport {
                reversible: self.is_reversible(),
                self_reversible: self.is_self_reversible(),
                strictly_conservative: self.is_strictly_conservative().ok(),
                weakly_conservative: self.is_weakly_conservative(),
                zero_regular: when3(self.is_zero_regular()),
                one_regular: when3(self.is_one_regular()),
                conditional_control_first_line: when3(self.satisfies_first_line_identity()),
                boolean_fredkin: when3(self.is_boolean_fredkin()),
            }
        })
    }

    /// Inverse of an injective gate. For `n < m` patterns outside the image
    /// map to the all-zero pattern.
    pub fn invert(&self) -> Result<Gate> {
        if let Some((a, b)) = self.injectivity_witness() {
            if self.n > self.m {
                return Err(Error::Shape(
                    "a gate with more inputs than outputs has no inverse".into(),
                ));
            }
            let mut first = vec![0; self.n()];
            let mut second = vec![0; self.n()];
            index_pattern(a, self.d, &mut first);
            index_pattern(b, self.d, &mut second);
            return Err(Error::NotInjective { first, second });
        }
        let (n, m) = (self.n(), self.m());
        let count = pattern_count(self.d, m)?;
        let mut table = vec![0u8; count * n];
        let mut input = vec![0u8; n];
        for (i, o) in self.output_indices().enumerate() {
            index_pattern(i, self.d, &mut input);
            table[o * n..(o + 1) * n].copy_from_slice(&input);
        }
        Ok(Gate::from_raw(self.d, self.m, self.n, table))
    }

    /// `other ∘ self`: feeds the outputs of `self` into `other`.
    pub fn then(&self, other: &Gate) -> Result<Gate> {
        if self.d != other.d || self.m != other.n {
            return Err(Error::Shape(format!(
                "cannot feed a {}-output L_{} gate into a {}-input L_{} gate",
                self.m, self.d, other.n, other.d
            )));
        }
        let table = self
            .output_indices()
            .flat_map(|o| other.row(o).iter().copied())
            .collect();
        Ok(Gate::from_raw(self.d, self.n, other.m, table))
    }

    /// Lengths of the cycles of a square reversible gate, sorted.
    pub fn cycle_lengths(&self) -> Result<Vec<usize>> {
        self.require_square("cycle structure")?;
        if !self.is_reversible() {
            return Err(Error::Shape(
                "cycle structure needs a reversible gate".into(),
            ));
        }
        let next: Vec<usize> = self.output_indices().collect();
        let mut seen = vec![false; next.len()];
        let mut lengths = Vec::new();
        for start in 0..next.len() {
            if seen[start] {
                continue;
            }
            let (mut i, mut len) = (start, 0);
            while !seen[i] {
                seen[i] = true;
                i = next[i];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable();
        Ok(lengths)
    }

    /// Restriction obtained by pinning some input lines to constants and
    /// reading a selection of output lines. The result is a gate over the
    /// free lines (in ascending order) with the selected outputs.
    pub fn pin_inputs(&self, pins: &[(usize, Value)], outputs: &[usize]) -> Result<Gate> {
        let mut levels = Vec::with_capacity(pins.len());
        for &(line, v) in pins {
            if v.d() != self.d {
                return Err(Error::ArityMismatch {
                    left: v.d(),
                    right: self.d,
                });
            }
            levels.push((line, v.level()));
        }
        self.pin_levels(&levels, outputs)
    }

    /// [`Gate::pin_inputs`] with constants given as raw levels.
    pub fn pin_levels(&self, pins: &[(usize, u8)], outputs: &[usize]) -> Result<Gate> {
        let n = self.n();
        let mut pinned = vec![None; n];
        for &(line, level) in pins {
            if line >= n {
                return Err(Error::Shape(format!(
                    "input line {line} out of range (n={n})"
                )));
            }
            if level >= self.d {
                return Err(Error::LevelOutOfRange {
                    level: level.into(),
                    d: self.d.into(),
                });
            }
            if pinned[line].replace(level).is_some() {
                return Err(Error::Shape(format!("input line {line} pinned twice")));
            }
        }
        if let Some(&o) = outputs.iter().find(|&&o| o >= self.m()) {
            return Err(Error::Shape(format!(
                "output line {o} out of range (m={})",
                self.m
            )));
        }
        let free: Vec<usize> = (0..n).filter(|&i| pinned[i].is_none()).collect();
        if free.is_empty() || outputs.is_empty() {
            return Err(Error::Shape(
                "pinning must leave a free input and select an output".into(),
            ));
        }
        let mut input: Vec<u8> = pinned.iter().map(|p| p.unwrap_or(0)).collect();
        Gate::from_fn(self.d.into(), free.len(), outputs.len(), |x, y| {
            for (&line, &a) in free.iter().zip(x) {
                input[line] = a;
            }
            let row = self.row(pattern_index(&input, self.d));
            for (slot, &o) in y.iter_mut().zip(outputs) {
                *slot = row[o];
            }
        })
    }

    /// Same table read as levels of `L_target` through the embedding
    /// `0 -> 0, 1 -> target-1`; only valid for Boolean gates.
    pub fn embed_boolean(&self, target: u32) -> Result<Gate> {
        if self.d != 2 {
            return Err(Error::Shape("only Boolean gates can be embedded".into()));
        }
        let top = check_arity(target)? - 1;
        Gate::from_fn(target, self.n(), self.m(), |x, y| {
            if x.iter().all(|&a| a == 0 || a == top) {
                let b: Vec<u8> = x.iter().map(|&a| (a == top) as u8).collect();
                let out = self.row(pattern_index(&b, 2));
                for (slot, &o) in y.iter_mut().zip(out) {
                    *slot = o * top;
                }
            } else {
                y.copy_from_slice(&x[..y.len().min(x.len())]);
            }
        })
    }
}

fn level_sum(p: &[u8]) -> u32 {
    p.iter().map(|&x| u32::from(x)).sum()
}

fn fredkin_levels(x: &[u8]) -> [u8; 3] {
    if x[0] == 0 {
        [x[0], x[2], x[1]]
    } else {
        [x[0], x[1], x[2]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fredkin() -> Gate {
        named_gate("FREDKIN").unwrap()
    }

    #[test]
    fn index_order_is_lexicographic() {
        let pats: Vec<_> = all_patterns(2, 3).collect();
        assert_eq!(pats[0], [0, 0]);
        assert_eq!(pats[1], [0, 1]);
        assert_eq!(pats[3], [1, 0]);
        for (i, p) in pats.iter().enumerate() {
            assert_eq!(pattern_index(p, 3), i);
        }
    }

    #[test]
    fn make_gate_checks_totality() {
        let rows = [([0u8], [1u8]), ([1], [2]), ([2], [0])];
        assert!(Gate::new(3, 1, 1, rows).is_ok());
        assert!(matches!(
            Gate::new(3, 1, 1, rows[..2].to_vec()),
            Err(Error::Table(_))
        ));
        let dup = [([0u8], [1u8]), ([0], [2]), ([2], [0])];
        assert!(matches!(Gate::new(3, 1, 1, dup), Err(Error::Table(_))));
        let bad = [([0u8], [3u8]), ([1], [2]), ([2], [0])];
        assert!(matches!(
            Gate::new(3, 1, 1, bad),
            Err(Error::LevelOutOfRange { .. })
        ));
    }

    #[test]
    fn fredkin_properties() {
        let g = fredkin();
        assert_eq!(g.apply(&[0, 0, 1]).unwrap(), [0, 1, 0]);
        let r = g.report();
        assert!(r.reversible && r.self_reversible);
        assert_eq!(r.strictly_conservative, Some(true));
        assert_eq!(r.zero_regular, Some(true));
        assert_eq!(r.one_regular, Some(true));
        assert_eq!(r.boolean_fredkin, Some(true));
        assert_eq!(g.invert().unwrap(), g);
    }

    #[test]
    fn rev22_and_cons22() {
        let rev = named_gate("REV22").unwrap();
        assert!(rev.is_reversible());
        assert!(!rev.is_strictly_conservative().unwrap());
        assert_eq!(rev.invert().unwrap().apply(&[1, 1]).unwrap(), [0, 0]);
        let cons = named_gate("CONS22").unwrap();
        assert!(cons.is_strictly_conservative().unwrap());
        assert!(!cons.is_reversible());
        assert!(matches!(cons.invert(), Err(Error::NotInjective { .. })));
    }

    #[test]
    fn wide_gate_inversion() {
        let g = named_gate("REV24").unwrap();
        assert!(g.is_reversible());
        let inv = g.invert().unwrap();
        for (x, y) in g.iter_rows() {
            assert_eq!(inv.apply(y).unwrap(), x.as_slice());
        }
        assert!(!g.invert().unwrap().is_reversible());
    }

    #[test]
    fn shape_errors() {
        let and = named_gate("AND").unwrap();
        assert!(and.is_strictly_conservative().is_err());
        assert!(and.is_zero_regular().is_err());
        assert!(!and.is_reversible());
        assert_eq!(and.report().zero_regular, None);
    }

    #[test]
    fn pinning_fredkin() {
        let g = fredkin();
        let and = g.pin_levels(&[(2, 0)], &[1]).unwrap();
        assert_eq!(and, named_gate("AND").unwrap());
        let fan = g.pin_levels(&[(1, 1), (2, 0)], &[0, 1]).unwrap();
        assert_eq!(fan.table(), [0, 0, 1, 1]);
        assert!(g.pin_levels(&[(3, 0)], &[0]).is_err());
        assert!(g.pin_levels(&[(0, 0), (0, 1)], &[0]).is_err());
    }

    #[test]
    fn composition() {
        let g = named_gate("F1").unwrap();
        assert_eq!(g.then(&g).unwrap(), Gate::identity(3, 3).unwrap());
        assert!(g.cycle_lengths().unwrap().iter().all(|&c| c <= 2));
    }

    #[test]
    fn embedding_keeps_boolean_rows() {
        let g = fredkin().embed_boolean(5).unwrap();
        assert!(g.is_boolean_fredkin().unwrap());
        assert_eq!(g.apply(&[0, 4, 0]).unwrap(), [0, 0, 4]);
    }
}
