//! Shared fixtures: the printed operator tables and the golden gate files.
#![allow(dead_code)]

use std::path::PathBuf;

use mvgate::search::{Connective, RealizationRow};

/// Columns: connective | inputs | constants | outputs | garbage.
pub const F1_OPERATORS: &[&str] = &[
    "FAN_OUT | x1     | x2=1, x3=0 | y1, y2 | y3",
    "PR1     | x2, x3 | x1=0       | y3     | y1, y2",
    "PR2     | x2, x3 | x1=0       | y2     | y1, y3",
    "TO_L    | x1, x3 | x2=1       | y3     | y1, y2",
    "TO_G    | x1, x2 | x3=1       | y2     | y1, y3",
    "OR      | x1, x3 | x2=1       | y2     | y1, y3",
    "AND     | x1, x2 | x3=0       | y2     | y1, y3",
    "ID      | x1     | x2=0, x3=0 | y1     | y2, y3",
    "NOT     | x1     | x2=1, x3=0 | y3     | y1, y2",
    "SIM     | x1     | x2=0, x3=1 | y2     | y1, y3",
    "POSS    | x1     | x2=0, x3=1 | y3     | y1, y2",
];

pub const F2_OPERATORS: &[&str] = &[
    "FAN_OUT | x1     | x2=1, x3=0   | y1, y2 | y3",
    "PR1     | x2, x3 | x1=1         | y2     | y1, y3",
    "PR2     | x2, x3 | x1=1         | y3     | y1, y2",
    "TO_L    | x1, x3 | x2=1         | y3     | y1, y2",
    "TO_G    | x1, x2 | x3=1         | y2     | y1, y3",
    "OR      | x1, x3 | x2=1         | y2     | y1, y3",
    "AND     | x1, x2 | x3=0         | y2     | y1, y3",
    "ID      | x1     | x2=0, x3=0   | y1     | y2, y3",
    "NOT     | x1     | x2=1, x3=0   | y3     | y1, y2",
    "SIM     | x1     | x2=0, x3=1   | y2     | y1, y3",
    "POSS    | x1     | x2=0, x3=1   | y3     | y1, y2",
    "NEC     | x1     | x2=0, x3=1/2 | y1     | y2, y3",
];

pub const F3_OPERATORS: &[&str] = &[
    "FAN_OUT | x1     | x2=1, x3=0   | y1, y2 | y3",
    "PR1     | x2, x3 | x1=0         | y3     | y1, y2",
    "PR2     | x2, x3 | x1=0         | y2     | y1, y3",
    "OPLUS   | x1, x3 | x2=1         | y2     | y1, y3",
    "ODOT    | x1, x2 | x3=0         | y2     | y1, y3",
    "ID      | x1     | x2=0, x3=0   | y1     | y2, y3",
    "NOT     | x1     | x2=1, x3=0   | y3     | y1, y2",
    "SIM     | x1     | x2=0, x3=1   | y2     | y1, y3",
    "POSS    | x1     | x2=0, x3=1   | y3     | y1, y2",
    "NEC     | x3     | x1=1/2, x2=0 | y3     | y1, y2",
];

/// The `f1` family table is the F1 table for every `d`.
pub const FAMILY_F1_OPERATORS: &[&str] = F1_OPERATORS;

/// `l` stands for the family parameter.
pub const FAMILY_F2_OPERATORS: &[&str] = &[
    "FAN_OUT | x1     | x2=1, x3=0 | y1, y2 | y3",
    "PR1     | x2, x3 | x1=1       | y2     | y1, y3",
    "PR2     | x2, x3 | x1=1       | y3     | y1, y2",
    "TO_L    | x1, x3 | x2=1       | y3     | y1, y2",
    "TO_G    | x1, x2 | x3=1       | y2     | y1, y3",
    "OR      | x1, x3 | x2=1       | y2     | y1, y3",
    "AND     | x1, x2 | x3=0       | y2     | y1, y3",
    "ID      | x1     | x2=0, x3=0 | y1     | y2, y3",
    "NOT     | x1     | x2=1, x3=0 | y3     | y1, y2",
    "SIM     | x1     | x2=0, x3=1 | y2     | y1, y3",
    "POSS    | x1     | x2=0, x3=1 | y3     | y1, y2",
    "NEC     | x1     | x2=0, x3=l | y1     | y2, y3",
];

/// `1/(d-1)` is the first level above zero.
pub const FAMILY_M_OPERATORS: &[&str] = &[
    "FAN_OUT | x1     | x2=1, x3=0       | y1, y2 | y3",
    "PR1     | x2, x3 | x1=0             | y3     | y1, y2",
    "PR2     | x2, x3 | x1=0             | y2     | y1, y3",
    "OPLUS   | x1, x3 | x2=1             | y2     | y1, y3",
    "ODOT    | x1, x2 | x3=0             | y2     | y1, y3",
    "ID      | x1     | x2=0, x3=0       | y1     | y2, y3",
    "NOT     | x1     | x2=1, x3=0       | y3     | y1, y2",
    "SIM     | x1     | x2=0, x3=1       | y2     | y1, y3",
    "POSS    | x1     | x2=0, x3=1       | y3     | y1, y2",
    "NEC     | x3     | x1=1/(d-1), x2=0 | y3     | y1, y2",
];

fn lines(s: &str, prefix: char) -> Vec<usize> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.strip_prefix(prefix).unwrap().parse::<usize>().unwrap() - 1)
        .collect()
}

fn level(s: &str, d: u8, lambda: u8) -> u8 {
    let top = d - 1;
    match s {
        "0" => 0,
        "1" => top,
        "l" => lambda,
        "1/(d-1)" => 1,
        frac => {
            let (p, q) = frac.split_once('/').unwrap();
            let (p, q): (u8, u8) = (p.parse().unwrap(), q.parse().unwrap());
            assert_eq!((p * top) % q, 0, "{frac} is not a level of L_{d}");
            p * top / q
        }
    }
}

/// Parses one printed row for a `(3, d)` gate.
pub fn operator_row(spec: &str, d: u8, lambda: u8) -> RealizationRow {
    let cols: Vec<&str> = spec.split('|').map(str::trim).collect();
    assert_eq!(cols.len(), 5, "{spec}");
    let mut pins: Vec<(usize, u8)> = cols[2]
        .split(',')
        .map(|p| {
            let (l, v) = p.trim().split_once('=').unwrap();
            (lines(l, 'x')[0], level(v, d, lambda))
        })
        .collect();
    pins.sort();
    RealizationRow {
        connective: cols[0].parse::<Connective>().unwrap(),
        pins,
        inputs: lines(cols[1], 'x'),
        outputs: lines(cols[3], 'y'),
        garbage: lines(cols[4], 'y'),
    }
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

pub const GOLDEN: [&str; 10] = [
    "LANDAUER", "REV24", "REV22", "CONS22", "EXC", "CNOT", "FREDKIN", "F1", "F2", "F3",
];

pub fn golden_text(name: &str) -> String {
    std::fs::read_to_string(golden_dir().join(format!("{name}.mvgate"))).unwrap()
}

/// Properties stated for each printed gate, as
/// `(reversible, self_reversible, strictly, weakly, zero_regular, one_regular, first_line, fredkin)`;
/// `None` where nothing is claimed.
pub type Claims = [Option<bool>; 8];

pub fn stated_properties(name: &str) -> Claims {
    let t = Some(true);
    let f = Some(false);
    let n = None;
    match name {
        "LANDAUER" => [f, f, n, n, n, n, n, n],
        "REV24" => [t, n, n, n, n, n, n, n],
        "REV22" => [t, n, f, f, n, n, n, n],
        "CONS22" => [f, f, t, t, n, n, n, n],
        "EXC" => [t, t, t, t, n, n, n, n],
        "CNOT" => [t, n, f, f, n, n, n, n],
        "FREDKIN" => [t, t, t, t, t, t, t, t],
        "F1" => [t, t, f, t, t, t, t, t],
        "F2" => [t, t, f, t, f, t, f, t],
        "F3" => [t, t, f, t, t, t, t, t],
        other => panic!("no claims for {other}"),
    }
}

/// Compares a report against the claims; returns the mismatching property names.
pub fn claim_mismatches(report: &mvgate::GateReport, claims: &Claims) -> Vec<&'static str> {
    report
        .entries()
        .iter()
        .zip(claims)
        .filter(|((_, actual), want)| want.is_some_and(|w| *actual != Some(w)))
        .map(|((name, _), _)| *name)
        .collect()
}
