//! Analytic `(3, d)`-gate families defined by ordered case rules.

use std::fmt;
use std::str::FromStr;

use super::Gate;
use crate::error::{Error, Result};
use crate::values::check_arity;

/// A parametric gate family. `F2` carries its parameter as a level in `1..=d-2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Gate for the Łukasiewicz and Gödel connectives (`f1`).
    F1,
    /// The `λ`-parameterised variant adding necessity (`f2`).
    F2 { lambda: u8 },
    /// Gate for the MV connectives `⊕` and `⊙` (`m`).
    M,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::F1 => write!(f, "f1"),
            Family::F2 { lambda } => write!(f, "f2[l={lambda}]"),
            Family::M => write!(f, "m"),
        }
    }
}

type Triple = [u8; 3];

/// Every non-fallback rule that fires on `x`, as `(rule number, output)`.
/// Rule numbers are 1-based in the printed order; the last rule of each
/// family (the identity) is the fallback and is not listed.
fn firing_rules(family: Family, top: u8, x: Triple) -> Vec<(usize, Triple)> {
    let [x1, x2, x3] = x;
    let t = top;
    let swap = [x1, x3, x2];
    // sums are taken in u16 so guards like x3 + x1 >= 1 never overflow
    let s13 = u16::from(x1) + u16::from(x3);
    let s12 = u16::from(x1) + u16::from(x2);
    let tt = u16::from(t);
    let mut hits = Vec::new();
    let mut rule = |idx: usize, guard: bool, out: &dyn Fn() -> Triple| {
        if guard {
            hits.push((idx, out()));
        }
    };
    match family {
        Family::F1 => {
            rule(1, x1 == 0 && x2 != x3, &|| swap);
            rule(2, 0 < x1 && x1 <= x3 && x3 < t && x2 == t, &|| swap);
            rule(3, 0 < x1 && x1 <= x2 && x2 < t && x3 == t, &|| swap);
            rule(4, x3 < x1 && x1 < t && x2 == t, &|| [x1, x1, t - x1 + x3]);
            rule(5, x1 < t && x2 == x1 && s13 >= tt && x3 < t, &|| {
                [x1, t, (s13 - tt) as u8]
            });
            rule(6, 0 < x1 && x1 < x2 && x2 < t && x3 == 0, &|| {
                [x1, x1, x2 - x1]
            });
            rule(7, 0 < x1 && x2 == x1 && s13 < tt && x3 > 0, &|| {
                [x1, s13 as u8, 0]
            });
        }
        Family::F2 { lambda: l } => {
            rule(1, x1 == 0 && 0 < x2 && x2 < t && x3 == l, &|| [x2, x1, x3]);
            rule(2, 0 < x1 && x1 < t && x2 == 0 && x3 == l, &|| [x2, x1, x3]);
            rule(3, x1 == 0 && x2 != l && x3 != l && x2 != x3, &|| swap);
            rule(4, x1 <= x3 && x3 < t && x2 == t, &|| swap);
            rule(5, x1 <= x2 && x2 < t && x3 == t, &|| swap);
            rule(6, x3 < x1 && x1 < t && x2 == t, &|| [x1, x1, t - x1 + x3]);
            rule(7, x1 < t && x2 == x1 && s13 >= tt && x3 < t, &|| {
                [x1, t, (s13 - tt) as u8]
            });
            rule(8, x1 < x2 && x2 < t && x3 == 0, &|| [x1, x1, x2 - x1]);
            rule(9, x2 == x1 && s13 < tt && x3 > 0, &|| [x1, s13 as u8, 0]);
        }
        Family::M => {
            rule(1, x1 == 0 && x2 != x3, &|| swap);
            rule(2, x1 > 0 && x2 == t && s13 < tt, &|| {
                [x1, s13 as u8, t - x1]
            });
            rule(3, 0 < x1 && x1 <= x2 && x2 < t && x3 == t - x1, &|| {
                [x1, t, x2 - x1]
            });
            rule(4, x1 < t && x2 < t && x3 == 0 && s12 > tt, &|| {
                [x1, (s12 - tt) as u8, t - x1]
            });
            rule(5, 0 < x2 && x2 < x1 && x1 < t && x3 == t - x1, &|| {
                [x1, x2 + x3, 0]
            });
            rule(6, 0 < x1 && x2 > 0 && x3 == 0 && s12 <= tt, &|| swap);
            rule(7, 0 < x1 && x2 == 0 && x3 > 0 && s13 <= tt, &|| swap);
        }
    }
    hits
}

fn check_family(family: Family, d: u32) -> Result<u8> {
    let d8 = check_arity(d)?;
    if let Family::F2 { lambda } = family {
        if lambda == 0 || lambda >= d8 - 1 {
            return Err(Error::FamilyParameter(format!(
                "lambda must be a level strictly between 0 and {} (got {lambda})",
                d8 - 1
            )));
        }
    }
    Ok(d8)
}

/// Input triples on which more than one non-fallback rule fires, with the
/// rule numbers involved.
pub fn rule_overlaps(family: Family, d: u32) -> Result<Vec<(Triple, Vec<usize>)>> {
    let d8 = check_family(family, d)?;
    let mut out = Vec::new();
    for x in super::all_patterns(3, d8) {
        let x = [x[0], x[1], x[2]];
        let hits = firing_rules(family, d8 - 1, x);
        if hits.len() > 1 {
            out.push((x, hits.iter().map(|h| h.0).collect()));
        }
    }
    Ok(out)
}

/// Tabulates a family member on all `d^3` triples.
///
/// Rules are applied first-match in printed order. Where guards overlap the
/// validator insists that every firing rule yields the same output, and
/// reports [`Error::IllDefined`] otherwise.
pub fn family_gate(family: Family, d: u32) -> Result<Gate> {
    let d8 = check_family(family, d)?;
    let top = d8 - 1;
    let mut conflict = None;
    let gate = Gate::from_fn(d, 3, 3, |x, y| {
        let x = [x[0], x[1], x[2]];
        let hits = firing_rules(family, top, x);
        let out = hits.first().map_or(x, |h| h.1);
        if conflict.is_none() && hits.iter().any(|h| h.1 != out) {
            conflict = Some((x, hits.iter().map(|h| h.0).collect()));
        }
        y.copy_from_slice(&out);
    })?;
    match conflict {
        Some((triple, rules)) => Err(Error::IllDefined { triple, rules }),
        None => Ok(gate),
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `f1`, `m` and `f2:<level>`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "f1" => Ok(Family::F1),
            "m" => Ok(Family::M),
            _ => lower
                .strip_prefix("f2:")
                .and_then(|l| l.parse().ok())
                .map(|lambda| Family::F2 { lambda })
                .ok_or_else(|| Error::FamilyParameter(format!("unknown family `{s}`"))),
        }
    }
}
