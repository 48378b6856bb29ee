//! Constrained exhaustive enumeration of square gates and extraction of the
//! connectives a gate realizes once some of its inputs are pinned.
//!
//! The enumerator is a backtracking search over rows in ascending order,
//! trying outputs in ascending order, so gates come out in lexicographic
//! order of their flattened tables. Row-local properties (weight or
//! multiset preservation, first-line identity, the regularity and Fredkin
//! pins) shrink each row's domain before the search starts; injectivity and
//! the involution pairing are enforced while branching.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::{index_pattern, Gate};
use crate::values::{check_arity, BinaryConnective, UnaryConnective, Value};

/// Default ceiling on the estimated number of search leaves.
pub const DEFAULT_LIMIT: f64 = 1e9;

/// A catalog entry: something a pinned gate configuration can realize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Connective {
    Unary(UnaryConnective),
    Binary(BinaryConnective),
    /// `x -> (x, x)` on two output lines.
    FanOut,
}

impl Connective {
    pub fn name(&self) -> String {
        match self {
            Connective::Unary(c) => c.name(),
            Connective::Binary(c) => c.name().to_string(),
            Connective::FanOut => "FAN_OUT".to_string(),
        }
    }

    fn arity(&self) -> usize {
        match self {
            Connective::Binary(_) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Connective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.to_ascii_uppercase();
        if upper == "FAN_OUT" || upper == "FANOUT" {
            return Ok(Connective::FanOut);
        }
        if let Ok(c) = upper.parse::<BinaryConnective>() {
            return Ok(Connective::Binary(c));
        }
        upper.parse::<UnaryConnective>().map(Connective::Unary)
    }
}

/// The connectives matched by [`extract_connectives`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog(pub Vec<Connective>);

impl Catalog {
    /// Identity, the five unary connectives, the six lattice/MV binaries,
    /// both projections, and FAN-OUT.
    pub fn standard() -> Catalog {
        use BinaryConnective::*;
        use UnaryConnective::*;
        let mut v: Vec<Connective> = [Id, Not, Sim, Flat, Poss, Nec]
            .into_iter()
            .map(Connective::Unary)
            .collect();
        v.extend(
            [ToL, ToG, Or, And, Oplus, Odot, Pr1, Pr2]
                .into_iter()
                .map(Connective::Binary),
        );
        v.push(Connective::FanOut);
        Catalog(v)
    }

    /// [`Catalog::standard`] plus `↔L`, the tertium constant and every `j_k`, `h_k`.
    pub fn full(d: u32) -> Result<Catalog> {
        let mut c = Catalog::standard();
        c.0.push(Connective::Binary(BinaryConnective::EqvL));
        c.0.push(Connective::Unary(UnaryConnective::Tertium));
        for k in Value::all(d)? {
            c.0.push(Connective::Unary(UnaryConnective::J(k)));
            c.0.push(Connective::Unary(UnaryConnective::H(k)));
        }
        Ok(c)
    }
}

/// One way of realizing a connective: pin some inputs, feed the arguments
/// to `inputs` (in argument order), read `outputs`; the rest is garbage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizationRow {
    pub connective: Connective,
    pub pins: Vec<(usize, u8)>,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub garbage: Vec<usize>,
}

/// `(pins, free lines, base row index)` of one pinning.
type Pinning = (Vec<(usize, u8)>, Vec<usize>, usize);

/// Every pinning of an `(n, d)` gate, precomputed once and reused across gates.
#[derive(Debug)]
pub struct PinPlan {
    d: u8,
    n: usize,
    weights: Vec<usize>,
    /// `by_free[k]`: pinnings leaving `k` lines free.
    by_free: Vec<Vec<Pinning>>,
}

impl PinPlan {
    pub fn new(n: usize, d: u8) -> Self {
        let weights: Vec<usize> = (0..n)
            .map(|i| (d as usize).pow((n - 1 - i) as u32))
            .collect();
        let mut by_free = vec![Vec::new(); n + 1];
        for mask in 0u32..(1 << n) {
            let pinned: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let free: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) == 0).collect();
            let combos = (d as usize).pow(pinned.len() as u32);
            let mut consts = vec![0u8; pinned.len()];
            for c in 0..combos {
                index_pattern(c, d, &mut consts);
                let pins: Vec<(usize, u8)> =
                    pinned.iter().copied().zip(consts.iter().copied()).collect();
                let base = pins.iter().map(|&(l, c)| weights[l] * c as usize).sum();
                by_free[free.len()].push((pins, free.clone(), base));
            }
        }
        for list in &mut by_free {
            list.sort();
        }
        PinPlan {
            d,
            n,
            weights,
            by_free,
        }
    }

    fn unary_matches(
        &self,
        g: &Gate,
        c: UnaryConnective,
        base: usize,
        free: usize,
        out: usize,
    ) -> bool {
        let top = self.d - 1;
        if let UnaryConnective::J(k) | UnaryConnective::H(k) = c {
            if k.d() != self.d {
                return false;
            }
        }
        (0..self.d).all(|x| {
            let expected = if c == UnaryConnective::Tertium && self.d == 2 {
                1
            } else {
                c.eval_level(x, top)
            };
            g.row(base + self.weights[free] * x as usize)[out] == expected
        })
    }

    fn binary_matches(
        &self,
        g: &Gate,
        c: BinaryConnective,
        base: usize,
        a: usize,
        b: usize,
        out: usize,
    ) -> bool {
        let top = self.d - 1;
        (0..self.d).all(|x| {
            (0..self.d).all(|y| {
                let i = base + self.weights[a] * x as usize + self.weights[b] * y as usize;
                g.row(i)[out] == c.eval_level(x, y, top)
            })
        })
    }

    fn fanout_matches(&self, g: &Gate, base: usize, free: usize, o1: usize, o2: usize) -> bool {
        (0..self.d).all(|x| {
            let row = g.row(base + self.weights[free] * x as usize);
            row[o1] == x && row[o2] == x
        })
    }

    /// Visits every configuration of `g` realizing `c`; stops early when `visit` returns false.
    pub fn witnesses(
        &self,
        g: &Gate,
        c: Connective,
        mut visit: impl FnMut(RealizationRow) -> bool,
    ) {
        if g.n() != self.n || g.d() != self.d || c.arity() > self.n {
            return;
        }
        let m = g.m();
        let garbage = |used: &[usize]| (0..m).filter(|o| !used.contains(o)).collect::<Vec<_>>();
        let row = |pins: &[(usize, u8)], inputs: Vec<usize>, outputs: Vec<usize>| RealizationRow {
            connective: c,
            pins: pins.to_vec(),
            inputs,
            garbage: garbage(&outputs),
            outputs,
        };
        for (pins, free, base) in &self.by_free[c.arity()] {
            let base = *base;
            match c {
                Connective::Unary(u) => {
                    for out in 0..m {
                        if self.unary_matches(g, u, base, free[0], out)
                            && !visit(row(pins, free.clone(), vec![out]))
                        {
                            return;
                        }
                    }
                }
                Connective::FanOut => {
                    for o1 in 0..m {
                        for o2 in o1 + 1..m {
                            if self.fanout_matches(g, base, free[0], o1, o2)
                                && !visit(row(pins, free.clone(), vec![o1, o2]))
                            {
                                return;
                            }
                        }
                    }
                }
                Connective::Binary(b) => {
                    let orders: &[(usize, usize)] = if b.is_commutative()
                        || matches!(b, BinaryConnective::Pr1 | BinaryConnective::Pr2)
                    {
                        &[(0, 1)]
                    } else {
                        &[(0, 1), (1, 0)]
                    };
                    for &(i, j) in orders {
                        for out in 0..m {
                            if self.binary_matches(g, b, base, free[i], free[j], out)
                                && !visit(row(pins, vec![free[i], free[j]], vec![out]))
                            {
                                return;
                            }
                        }
                    }
                }
            }
        }
    }

    pub fn realizes(&self, g: &Gate, c: Connective) -> bool {
        let mut found = false;
        self.witnesses(g, c, |_| {
            found = true;
            false
        });
        found
    }
}

/// Every configuration of `g` that realizes a catalog entry, grouped in
/// catalog order.
pub fn extract_connectives(g: &Gate, catalog: &Catalog) -> Vec<RealizationRow> {
    let p = PinPlan::new(g.n(), g.d());
    let mut rows = Vec::new();
    for &c in &catalog.0 {
        p.witnesses(g, c, |r| {
            rows.push(r);
            true
        });
    }
    rows
}

/// Whether some pinning of `g` realizes `c`.
pub fn realizes(g: &Gate, c: Connective) -> bool {
    PinPlan::new(g.n(), g.d()).realizes(g, c)
}

/// The properties a searched gate must have, plus connectives it must realize.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    /// F-2
    pub reversible: bool,
    /// F-2′
    pub self_reversible: bool,
    /// F-3
    pub weakly_conservative: bool,
    /// F-3′
    pub strictly_conservative: bool,
    /// F-5
    pub zero_regular: bool,
    /// F-6
    pub one_regular: bool,
    /// F-7
    pub first_line_identity: bool,
    /// F-8
    pub boolean_fredkin: bool,
    pub required: Vec<Connective>,
}

impl ConstraintSet {
    fn injective(&self) -> bool {
        self.reversible || self.self_reversible
    }

    fn needs_three_lines(&self) -> bool {
        self.zero_regular || self.one_regular || self.first_line_identity || self.boolean_fredkin
    }

    /// Independent check of every constraint through the gate predicates.
    pub fn accepts(&self, g: &Gate) -> bool {
        let r = g.report();
        (!self.reversible || r.reversible)
            && (!self.self_reversible || r.self_reversible)
            && (!self.weakly_conservative || r.weakly_conservative)
            && (!self.strictly_conservative || r.strictly_conservative == Some(true))
            && (!self.zero_regular || r.zero_regular == Some(true))
            && (!self.one_regular || r.one_regular == Some(true))
            && (!self.first_line_identity || r.conditional_control_first_line == Some(true))
            && (!self.boolean_fredkin || r.boolean_fredkin == Some(true))
            && self.required.iter().all(|&c| realizes(g, c))
    }
}

const UNSET: u8 = u8::MAX;

/// Precomputed row domains shared by all branches of one search.
#[derive(Debug)]
struct Space {
    d: u8,
    n: usize,
    rows: usize,
    involution: bool,
    injective: bool,
    domains: Vec<u64>,
    /// Row assignments forced before branching.
    fixed: Vec<u8>,
    fixed_used: u64,
    /// Flattened output patterns by row index.
    patterns: Vec<u8>,
    required: Vec<Connective>,
    plan: PinPlan,
    empty: bool,
}

fn falling(t: u32, k: u32) -> f64 {
    if k > t {
        return 0.0;
    }
    (t - k + 1..=t).map(f64::from).product()
}

fn involutions(k: u32) -> f64 {
    let (mut a, mut b) = (1.0, 1.0); // I(0), I(1)
    if k == 0 {
        return 1.0;
    }
    for i in 2..=k {
        let c = b + f64::from(i - 1) * a;
        a = b;
        b = c;
    }
    b
}

impl Space {
    fn build(n: usize, d: u32, c: &ConstraintSet) -> Result<Space> {
        let d8 = check_arity(d)?;
        if c.needs_three_lines() && n != 3 {
            return Err(Error::Shape(
                "regularity, F-7 and F-8 are defined for 3 lines only".into(),
            ));
        }
        let rows = (d8 as usize)
            .checked_pow(n as u32)
            .filter(|&r| r <= 64)
            .ok_or_else(|| {
                Error::Shape(format!("search supports at most 64 rows (d={d}, n={n})"))
            })?;
        let top = d8 - 1;
        let mut patterns = vec![0u8; rows * n];
        for (i, p) in patterns.chunks_mut(n).enumerate() {
            index_pattern(i, d8, p);
        }
        let pat = |i: usize| &patterns[i * n..(i + 1) * n];
        let sum = |p: &[u8]| p.iter().map(|&v| u32::from(v)).sum::<u32>();
        let sorted = |p: &[u8]| {
            let mut s = p.to_vec();
            s.sort_unstable();
            s
        };
        let mut domains = vec![0u64; rows];
        let mut fixed = vec![UNSET; rows];
        let mut empty = false;
        for i in 0..rows {
            let x = pat(i);
            let mut forced: Option<Vec<u8>> = None;
            let force = |want: Vec<u8>, forced: &mut Option<Vec<u8>>| match forced {
                Some(prev) if *prev != want => false,
                _ => {
                    *forced = Some(want);
                    true
                }
            };
            let mut ok = true;
            if c.zero_regular && x[0] == 0 {
                ok &= force(vec![0, x[2], x[1]], &mut forced);
            }
            if c.one_regular && x[0] == top {
                ok &= force(x.to_vec(), &mut forced);
            }
            if c.boolean_fredkin && x.iter().all(|&v| v == 0 || v == top) {
                let y = if x[0] == 0 {
                    vec![x[0], x[2], x[1]]
                } else {
                    x.to_vec()
                };
                ok &= force(y, &mut forced);
            }
            let mut dom = 0u64;
            for j in 0..rows {
                let y = pat(j);
                let fits = (!c.first_line_identity || y[0] == x[0])
                    && (!c.weakly_conservative || sum(y) == sum(x))
                    && (!c.strictly_conservative || sorted(y) == sorted(x))
                    && forced.as_deref().is_none_or(|f| f == y);
                if fits && ok {
                    dom |= 1 << j;
                }
            }
            if dom == 0 {
                empty = true;
            }
            if forced.is_some() && dom != 0 {
                fixed[i] = dom.trailing_zeros() as u8;
            }
            domains[i] = dom;
        }
        let mut space = Space {
            d: d8,
            n,
            rows,
            involution: c.self_reversible,
            injective: c.injective(),
            domains,
            fixed,
            fixed_used: 0,
            patterns,
            required: c.required.clone(),
            plan: PinPlan::new(n, d8),
            empty,
        };
        space.settle_fixed();
        Ok(space)
    }

    /// Propagates the pinned rows: used outputs and involution partners.
    fn settle_fixed(&mut self) {
        if self.empty {
            return;
        }
        for i in 0..self.rows {
            let j = self.fixed[i];
            if j == UNSET {
                continue;
            }
            let j = j as usize;
            if self.involution {
                match self.fixed[j] {
                    UNSET if self.domains[j] & (1 << i) != 0 => {
                        self.fixed[j] = i as u8;
                        self.domains[j] = 1 << i;
                    }
                    v if v as usize == i => {}
                    _ => {
                        self.empty = true;
                        return;
                    }
                }
            }
        }
        let mut used = 0u64;
        for &j in &self.fixed {
            if j == UNSET {
                continue;
            }
            if self.injective && used & (1 << j) != 0 {
                self.empty = true;
                return;
            }
            used |= 1 << j;
        }
        self.fixed_used = if self.injective { used } else { 0 };
        if self.injective {
            for i in 0..self.rows {
                if self.fixed[i] == UNSET {
                    self.domains[i] &= !used;
                    if self.domains[i] == 0 {
                        self.empty = true;
                    }
                }
            }
        }
    }

    /// Rough count of the leaves the search will visit.
    fn estimate(&self) -> f64 {
        if self.empty {
            return 0.0;
        }
        let free: Vec<usize> = (0..self.rows).filter(|&i| self.fixed[i] == UNSET).collect();
        if !self.injective {
            return free
                .iter()
                .map(|&i| f64::from(self.domains[i].count_ones()))
                .product();
        }
        let mut groups: Vec<(u64, u64)> = Vec::new(); // (domain, rows)
        for &i in &free {
            match groups.iter_mut().find(|g| g.0 == self.domains[i]) {
                Some(g) => g.1 |= 1 << i,
                None => groups.push((self.domains[i], 1 << i)),
            }
        }
        groups
            .iter()
            .map(|&(dom, members)| {
                let (t, k) = (dom.count_ones(), members.count_ones());
                if self.involution && dom == members {
                    involutions(k)
                } else {
                    falling(t, k)
                }
            })
            .product()
    }

    fn gate(&self, out: &[u8]) -> Gate {
        let n = self.n;
        let mut table = Vec::with_capacity(self.rows * n);
        for &j in out {
            table.extend_from_slice(&self.patterns[j as usize * n..(j as usize + 1) * n]);
        }
        Gate::from_raw(self.d, n as u8, n as u8, table)
    }
}

#[derive(Debug, Clone)]
struct Frame {
    row: usize,
    cands: u64,
    choice: Option<usize>,
}

/// Lazy, deterministic stream of the gates satisfying a [`ConstraintSet`].
pub struct GateSearch {
    space: std::sync::Arc<Space>,
    out: Vec<u8>,
    used: u64,
    stack: Vec<Frame>,
    root_mask: u64,
    started: bool,
    finished: bool,
}

/// Gates with `n = 3` lines over `L_d` satisfying `constraints`.
pub fn enumerate_gates(d: u32, constraints: &ConstraintSet) -> Result<GateSearch> {
    GateSearch::new(3, d, constraints, DEFAULT_LIMIT)
}

impl GateSearch {
    /// Search over `(n, d)`-gates, rejecting spaces estimated above `limit` leaves.
    pub fn new(n: usize, d: u32, constraints: &ConstraintSet, limit: f64) -> Result<GateSearch> {
        let d8 = check_arity(d)?;
        if !(constraints.reversible
            || constraints.self_reversible
            || constraints.weakly_conservative
            || constraints.strictly_conservative)
        {
            let rows = (f64::from(d8)).powi(n as i32);
            let estimate = f64::from(d8).powf(n as f64 * rows);
            return Err(Error::Infeasible { estimate, limit });
        }
        let space = Space::build(n, d, constraints)?;
        let estimate = space.estimate();
        if estimate > limit {
            return Err(Error::Infeasible { estimate, limit });
        }
        let out = space.fixed.clone();
        Ok(GateSearch {
            used: space.fixed_used,
            out,
            stack: Vec::new(),
            root_mask: u64::MAX,
            started: false,
            finished: space.empty,
            space: std::sync::Arc::new(space),
        })
    }

    /// Estimated number of candidate tables before the connective filter.
    pub fn estimate(&self) -> f64 {
        self.space.estimate()
    }

    /// Splits the search on the choices for its first free row. Running the
    /// parts in order yields exactly the gates of the whole search, in order.
    pub fn split(self) -> Vec<GateSearch> {
        let Some(row) = self.next_free(0) else {
            return vec![self];
        };
        let mut cands = self.candidates(row);
        let mut parts = Vec::new();
        while cands != 0 {
            let bit = cands & cands.wrapping_neg();
            cands &= cands - 1;
            parts.push(GateSearch {
                space: self.space.clone(),
                out: self.out.clone(),
                used: self.used,
                stack: Vec::new(),
                root_mask: bit,
                started: false,
                finished: self.finished,
            });
        }
        parts
    }

    fn next_free(&self, from: usize) -> Option<usize> {
        (from..self.space.rows).find(|&r| self.out[r] == UNSET)
    }

    fn candidates(&self, row: usize) -> u64 {
        let s = &self.space;
        let mut c = s.domains[row];
        if s.injective {
            c &= !self.used;
        }
        if s.involution {
            // j -> row is forced, so j must be free and admit row
            let mut filtered = 0;
            let mut rest = c;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if j == row || (self.out[j] == UNSET && s.domains[j] & (1 << row) != 0) {
                    filtered |= 1 << j;
                }
            }
            c = filtered;
        }
        c
    }

    fn assign(&mut self, row: usize, j: usize) {
        self.out[row] = j as u8;
        if self.space.injective {
            self.used |= 1 << j;
        }
        if self.space.involution && j != row {
            self.out[j] = row as u8;
            self.used |= 1 << row;
        }
    }

    fn unassign(&mut self, row: usize, j: usize) {
        self.out[row] = UNSET;
        if self.space.injective {
            self.used &= !(1 << j);
        }
        if self.space.involution && j != row {
            self.out[j] = UNSET;
            self.used &= !(1 << row);
        }
    }

    /// Every later free row still has a candidate.
    fn viable(&self, after: usize) -> bool {
        if !self.space.injective {
            return true;
        }
        (after + 1..self.space.rows)
            .all(|r| self.out[r] != UNSET || self.space.domains[r] & !self.used != 0)
    }

    /// Moves to the next complete assignment.
    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            match self.next_free(0) {
                None => return true,
                Some(r) => {
                    let cands = self.candidates(r) & self.root_mask;
                    self.stack.push(Frame {
                        row: r,
                        cands,
                        choice: None,
                    });
                }
            }
        }
        while let Some(top) = self.stack.last_mut() {
            let row = top.row;
            if let Some(j) = top.choice.take() {
                self.unassign(row, j);
            }
            let mut chosen = None;
            loop {
                let frame = self.stack.last_mut().expect("frame is on the stack");
                if frame.cands == 0 {
                    break;
                }
                let j = frame.cands.trailing_zeros() as usize;
                frame.cands &= frame.cands - 1;
                self.assign(row, j);
                if self.viable(row) {
                    chosen = Some(j);
                    break;
                }
                self.unassign(row, j);
            }
            let Some(j) = chosen else {
                self.stack.pop();
                continue;
            };
            self.stack.last_mut().expect("frame is on the stack").choice = Some(j);
            match self.next_free(row + 1) {
                None => return true,
                Some(r) => {
                    let cands = self.candidates(r);
                    self.stack.push(Frame {
                        row: r,
                        cands,
                        choice: None,
                    });
                }
            }
        }
        false
    }
}

impl Iterator for GateSearch {
    type Item = Gate;

    fn next(&mut self) -> Option<Gate> {
        if self.finished {
            return None;
        }
        loop {
            if !self.advance() {
                self.finished = true;
                return None;
            }
            if self.stack.is_empty() {
                // every row was pinned: a single candidate
                self.finished = true;
            }
            let g = self.space.gate(&self.out);
            if self
                .space
                .required
                .iter()
                .all(|&c| self.space.plan.realizes(&g, c))
            {
                return Some(g);
            }
            if self.finished {
                return None;
            }
        }
    }
}

/// Runs the search on all cores and returns the gates in sequential order.
pub fn enumerate_gates_par(d: u32, constraints: &ConstraintSet) -> Result<Vec<Gate>> {
    let parts = enumerate_gates(d, constraints)?.split();
    let chunks: Vec<Vec<Gate>> = parts.into_par_iter().map(|s| s.collect()).collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// Counts the gates of a search on all cores.
pub fn count_gates_par(search: GateSearch) -> usize {
    search.split().into_par_iter().map(|s| s.count()).sum()
}

/// Outcome of the search for a gate realizing all six binary MV/Gödel connectives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoLmvReport {
    pub d: u32,
    /// Gates satisfying F-2, F-3 and F-8.
    pub gates_examined: usize,
    /// How many of them realize `∧, ∨, →L, →G`.
    pub lattice_and_implications: usize,
    /// How many realize `⊕, ⊙`.
    pub mv_pair: usize,
    /// First gate realizing all six, if any.
    pub counterexample: Option<Vec<u8>>,
}

impl NoLmvReport {
    /// True when no examined gate realizes all six connectives.
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// The six binary connectives checked by [`check_no_lmv`].
pub const LMV_CONNECTIVES: [BinaryConnective; 6] = [
    BinaryConnective::And,
    BinaryConnective::Or,
    BinaryConnective::ToL,
    BinaryConnective::ToG,
    BinaryConnective::Oplus,
    BinaryConnective::Odot,
];

/// Searches every reversible, weakly conservative, Boolean-Fredkin
/// `(3, d)`-gate for one realizing all six of [`LMV_CONNECTIVES`].
pub fn check_no_lmv(d: u32) -> Result<NoLmvReport> {
    let c = ConstraintSet {
        reversible: true,
        weakly_conservative: true,
        boolean_fredkin: true,
        ..Default::default()
    };
    let parts = enumerate_gates(d, &c)?.split();
    let plan = PinPlan::new(3, check_arity(d)?);
    let lattice = [
        BinaryConnective::And,
        BinaryConnective::Or,
        BinaryConnective::ToL,
        BinaryConnective::ToG,
    ];
    let mv = [BinaryConnective::Oplus, BinaryConnective::Odot];
    let per_part: Vec<(usize, usize, usize, Option<Vec<u8>>)> = parts
        .into_par_iter()
        .map(|search| {
            let (mut total, mut lat, mut mvc, mut hit) = (0, 0, 0, None);
            for g in search {
                total += 1;
                let has = |c: BinaryConnective| plan.realizes(&g, Connective::Binary(c));
                let l = lattice.iter().all(|&c| has(c));
                let m = mv.iter().all(|&c| has(c));
                lat += l as usize;
                mvc += m as usize;
                if l && m && hit.is_none() {
                    hit = Some(g.table().to_vec());
                }
            }
            (total, lat, mvc, hit)
        })
        .collect();
    Ok(NoLmvReport {
        d,
        gates_examined: per_part.iter().map(|p| p.0).sum(),
        lattice_and_implications: per_part.iter().map(|p| p.1).sum(),
        mv_pair: per_part.iter().map(|p| p.2).sum(),
        counterexample: per_part.into_iter().find_map(|p| p.3),
    })
}

/// Verdict on FAN-OUT inside strictly conservative `(n, d)`-gates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FanoutVerdict {
    Impossible,
    NotApplicable { counterexample: String },
}

/// One pinning configuration together with a value it cannot clone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanoutWitness {
    pub free_line: usize,
    pub constants: Vec<u8>,
    /// A level absent from the constants; it occurs once in every
    /// rearrangement of the input row, so it cannot reach two outputs.
    pub uncloneable: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanoutReport {
    pub n: usize,
    pub d: u32,
    pub verdict: FanoutVerdict,
    /// One witness per pinning configuration (free line and constants).
    pub witnesses: Vec<FanoutWitness>,
    /// Strictly conservative gates enumerated, and how many realize FAN-OUT,
    /// when the full space is small enough to enumerate.
    pub enumeration: Option<(usize, usize)>,
}

impl FanoutReport {
    pub fn impossible(&self) -> bool {
        self.verdict == FanoutVerdict::Impossible
    }
}

/// Shows that no strictly conservative `(n, d)`-gate with `n <= d` realizes
/// FAN-OUT by pinning `n - 1` inputs.
///
/// For each pinning the multiset argument names a level missing from the
/// constants. A row-wise decision then confirms that for that level no
/// rearrangement of the input row puts it on two outputs. Small spaces are
/// also enumerated outright.
pub fn check_no_fanout(n: usize, d: u32) -> Result<FanoutReport> {
    let d8 = check_arity(d)?;
    if n == 0 {
        return Err(Error::Shape("need at least one line".into()));
    }
    if n > d as usize {
        return Ok(FanoutReport {
            n,
            d,
            verdict: FanoutVerdict::NotApplicable {
                counterexample: "Fredkin (n=3, d=2)".into(),
            },
            witnesses: Vec::new(),
            enumeration: None,
        });
    }
    let mut witnesses = Vec::new();
    let mut consts = vec![0u8; n - 1];
    for free_line in 0..n {
        for c in 0..(d8 as usize).pow((n - 1) as u32) {
            index_pattern(c, d8, &mut consts);
            let uncloneable = (0..d8)
                .find(|v| !consts.contains(v))
                .ok_or_else(|| Error::Shape("pigeonhole failed".into()))?;
            // row-wise decision: the value must occur at least twice in the row
            let occurrences = 1 + consts.iter().filter(|&&v| v == uncloneable).count();
            if occurrences >= 2 {
                return Err(Error::Shape("multiset argument inconsistent".into()));
            }
            witnesses.push(FanoutWitness {
                free_line,
                constants: consts.clone(),
                uncloneable,
            });
        }
    }
    let enumeration = if (d8 as usize).pow(n as u32) <= 9 {
        let c = ConstraintSet {
            strictly_conservative: true,
            ..Default::default()
        };
        let mut total = 0;
        let mut realizing = 0;
        for g in GateSearch::new(n, d, &c, DEFAULT_LIMIT)? {
            total += 1;
            realizing += realizes(&g, Connective::FanOut) as usize;
        }
        Some((total, realizing))
    } else {
        None
    };
    let verdict = match enumeration {
        Some((_, r)) if r > 0 => {
            return Err(Error::Shape("enumeration contradicts the argument".into()))
        }
        _ => FanoutVerdict::Impossible,
    };
    Ok(FanoutReport {
        n,
        d,
        verdict,
        witnesses,
        enumeration,
    })
}

/// Realization rows rendered as a tab-separated table.
pub fn realization_tsv(rows: &[RealizationRow]) -> String {
    let lines = |v: &[usize], p: &str| {
        v.iter()
            .map(|i| format!("{p}{}", i + 1))
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut s = String::from("connective\tinputs\tconstants\toutputs\tgarbage\n");
    for r in rows {
        let pins = r
            .pins
            .iter()
            .map(|&(l, c)| format!("x{}={c}", l + 1))
            .collect::<Vec<_>>()
            .join(",");
        s.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            r.connective,
            lines(&r.inputs, "x"),
            pins,
            lines(&r.outputs, "y"),
            lines(&r.garbage, "y")
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::named_gate;
    use BinaryConnective::*;

    fn has_row(
        rows: &[RealizationRow],
        c: Connective,
        pins: &[(usize, u8)],
        inputs: &[usize],
        out: usize,
    ) -> bool {
        rows.iter().any(|r| {
            r.connective == c && r.pins == pins && r.inputs == inputs && r.outputs == [out]
        })
    }

    #[test]
    fn f1_realizations() {
        let rows = extract_connectives(&named_gate("F1").unwrap(), &Catalog::standard());
        assert!(has_row(
            &rows,
            Connective::Binary(ToL),
            &[(1, 2)],
            &[0, 2],
            2
        ));
        assert!(has_row(
            &rows,
            Connective::Binary(ToG),
            &[(2, 2)],
            &[0, 1],
            1
        ));
        let fan: Vec<_> = rows
            .iter()
            .filter(|r| r.connective == Connective::FanOut)
            .collect();
        assert!(fan
            .iter()
            .any(|r| r.pins == [(1, 2), (2, 0)] && r.outputs == [0, 1]));
    }

    #[test]
    fn f3_realizations() {
        let rows = extract_connectives(&named_gate("F3").unwrap(), &Catalog::standard());
        assert!(has_row(
            &rows,
            Connective::Binary(Oplus),
            &[(1, 2)],
            &[0, 2],
            1
        ));
        assert!(has_row(
            &rows,
            Connective::Unary(UnaryConnective::Nec),
            &[(0, 1), (1, 0)],
            &[2],
            2
        ));
    }

    #[test]
    fn identity_realizes_only_trivia() {
        let id = Gate::identity(3, 3).unwrap();
        let rows = extract_connectives(&id, &Catalog::standard());
        let mut names: Vec<String> = rows.iter().map(|r| r.connective.name()).collect();
        names.dedup();
        assert_eq!(names, ["ID", "PR1", "PR2"]);
    }

    #[test]
    fn fredkin_search() {
        let c = ConstraintSet {
            reversible: true,
            strictly_conservative: true,
            boolean_fredkin: true,
            ..Default::default()
        };
        let gates: Vec<Gate> = enumerate_gates(2, &c).unwrap().collect();
        assert_eq!(gates, vec![named_gate("FREDKIN").unwrap()]);
    }

    #[test]
    fn involutive_search_is_sorted_sound_and_complete() {
        let c = ConstraintSet {
            self_reversible: true,
            weakly_conservative: true,
            boolean_fredkin: true,
            ..Default::default()
        };
        let search = enumerate_gates(3, &c).unwrap();
        assert_eq!(search.estimate(), 59392.0);
        let gates: Vec<Gate> = search.collect();
        assert_eq!(gates.len(), 59392);
        assert!(gates.windows(2).all(|w| w[0].table() < w[1].table()));
        for name in ["F1", "F2", "F3"] {
            assert!(gates
                .binary_search_by(|g| g.table().cmp(named_gate(name).unwrap().table()))
                .is_ok());
        }
        for g in gates.iter().step_by(97) {
            assert!(c.accepts(g));
        }
        assert_eq!(enumerate_gates_par(3, &c).unwrap(), gates);
    }

    #[test]
    fn required_connectives_filter() {
        let c = ConstraintSet {
            self_reversible: true,
            weakly_conservative: true,
            boolean_fredkin: true,
            required: vec![Connective::Binary(Oplus), Connective::Binary(Odot)],
            ..Default::default()
        };
        let gates: Vec<Gate> = enumerate_gates(3, &c).unwrap().collect();
        assert!(gates.contains(&named_gate("F3").unwrap()));
        assert!(!gates.contains(&named_gate("F1").unwrap()));
        assert!(gates.iter().all(|g| c.accepts(g)));
    }

    #[test]
    fn infeasible_spaces_are_rejected() {
        let none = ConstraintSet {
            boolean_fredkin: true,
            ..Default::default()
        };
        assert!(matches!(
            enumerate_gates(3, &none),
            Err(Error::Infeasible { .. })
        ));
        let weak = ConstraintSet {
            weakly_conservative: true,
            ..Default::default()
        };
        assert!(matches!(
            enumerate_gates(3, &weak),
            Err(Error::Infeasible { .. })
        ));
        let two_line = ConstraintSet {
            reversible: true,
            zero_regular: true,
            ..Default::default()
        };
        assert!(GateSearch::new(2, 2, &two_line, DEFAULT_LIMIT).is_err());
    }

    #[test]
    fn small_reversible_count() {
        let c = ConstraintSet {
            reversible: true,
            ..Default::default()
        };
        assert_eq!(
            GateSearch::new(2, 2, &c, DEFAULT_LIMIT).unwrap().count(),
            24
        );
        let inv = ConstraintSet {
            self_reversible: true,
            ..Default::default()
        };
        assert_eq!(
            GateSearch::new(2, 2, &inv, DEFAULT_LIMIT).unwrap().count(),
            10
        );
        assert_eq!(
            count_gates_par(GateSearch::new(1, 5, &inv, DEFAULT_LIMIT).unwrap()),
            26
        );
    }

    #[test]
    fn fanout_reports() {
        let r = check_no_fanout(2, 2).unwrap();
        assert!(r.impossible());
        assert_eq!(r.enumeration, Some((4, 0)));
        assert_eq!(r.witnesses.len(), 4);
        assert!(check_no_fanout(3, 3).unwrap().impossible());
        let na = check_no_fanout(3, 2).unwrap();
        assert!(matches!(na.verdict, FanoutVerdict::NotApplicable { .. }));
        let fredkin = named_gate("FREDKIN").unwrap();
        assert!(realizes(&fredkin, Connective::FanOut));
        assert_eq!(fredkin.is_strictly_conservative(), Ok(true));
    }

    #[test]
    fn connective_names_parse() {
        assert_eq!(
            "to_l".parse::<Connective>().unwrap(),
            Connective::Binary(ToL)
        );
        assert_eq!("fan_out".parse::<Connective>().unwrap(), Connective::FanOut);
        assert_eq!(
            "nec".parse::<Connective>().unwrap(),
            Connective::Unary(UnaryConnective::Nec)
        );
        assert!("xor".parse::<Connective>().is_err());
    }
}
