use super::Gate;
use crate::error::{Error, Result};

/// Names accepted by [`named_gate`].
pub const NAMED_GATES: [&str; 13] = [
    "LANDAUER", "REV24", "REV22", "CONS22", "EXC", "CNOT", "FREDKIN", "F1", "F2", "F3", "AND",
    "OR", "NOT",
];

// Output columns of the three-valued gates, one triple per input in row
// order 000, 001, ..., 222 (digit k stands for level k, so 1 is one half).
const F1_OUT: &str = "000 010 020 001 011 021 002 012 022 \
                      100 101 102 110 120 121 111 112 122 \
                      200 201 202 210 211 212 220 221 222";
const F2_OUT: &str = "000 010 020 001 101 021 002 012 022 \
                      100 011 102 110 120 121 111 112 122 \
                      200 201 202 210 211 212 220 221 222";
const F3_OUT: &str = "000 010 020 001 011 021 002 012 022 \
                      100 110 102 101 120 112 111 121 122 \
                      200 201 202 210 211 212 220 221 222";

const LANDAUER_OUT: &str = "000 110 000 110 000 110 001 111";
const REV24_OUT: &str = "0000 0110 0111 1001";
const REV22_OUT: &str = "11 10 01 00";
const CONS22_OUT: &str = "00 10 10 11";
const EXC_OUT: &str = "00 10 01 11";
const CNOT_OUT: &str = "00 01 11 10";
const FREDKIN_OUT: &str = "000 010 001 011 100 101 110 111";
const AND_OUT: &str = "0 0 0 1";
const OR_OUT: &str = "0 1 1 1";
const NOT_OUT: &str = "1 0";

fn from_columns(d: u32, n: usize, outputs: &str) -> Result<Gate> {
    let rows: Vec<&str> = outputs.split_whitespace().collect();
    let m = rows[0].len();
    let table = rows
        .iter()
        .flat_map(|r| r.bytes().map(|b| b - b'0'))
        .collect();
    Gate::from_table(d, n, m, table)
}

/// The gates printed as explicit truth tables, plus the Boolean AND, OR and NOT.
///
/// `REV24` is the two-input/four-output reversible gate; `TABLE2` is accepted
/// as an alias. Names are case-insensitive.
pub fn named_gate(name: &str) -> Result<Gate> {
    let (d, n, out) = match name.to_ascii_uppercase().as_str() {
        "LANDAUER" => (2, 3, LANDAUER_OUT),
        "REV24" | "TABLE2" => (2, 2, REV24_OUT),
        "REV22" => (2, 2, REV22_OUT),
        "CONS22" => (2, 2, CONS22_OUT),
        "EXC" => (2, 2, EXC_OUT),
        "CNOT" => (2, 2, CNOT_OUT),
        "FREDKIN" => (2, 3, FREDKIN_OUT),
        "F1" => (3, 3, F1_OUT),
        "F2" => (3, 3, F2_OUT),
        "F3" => (3, 3, F3_OUT),
        "AND" => (2, 2, AND_OUT),
        "OR" => (2, 2, OR_OUT),
        "NOT" => (2, 1, NOT_OUT),
        _ => return Err(Error::UnknownGate(name.to_string())),
    };
    from_columns(d, n, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_builds() {
        for name in NAMED_GATES {
            let g = named_gate(name).unwrap();
            assert_eq!(g.rows(), (g.d() as usize).pow(g.n() as u32));
        }
        assert!(matches!(
            named_gate("nonexistent"),
            Err(Error::UnknownGate(_))
        ));
        assert_eq!(named_gate("table2").unwrap(), named_gate("REV24").unwrap());
    }

    #[test]
    fn marked_rows_of_f1() {
        let f1 = named_gate("F1").unwrap();
        assert_eq!(f1.apply(&[1, 1, 1]).unwrap(), [1, 2, 0]);
        assert_eq!(f1.apply(&[1, 2, 0]).unwrap(), [1, 1, 1]);
        let f3 = named_gate("F3").unwrap();
        assert_eq!(f3.apply(&[1, 0, 1]).unwrap(), [1, 1, 0]);
    }

    #[test]
    fn f2_differs_from_f1_on_two_rows() {
        let (f1, f2) = (named_gate("F1").unwrap(), named_gate("F2").unwrap());
        let diff: Vec<_> = f1
            .iter_rows()
            .zip(f2.iter_rows())
            .filter(|(a, b)| a.1 != b.1)
            .map(|(a, _)| a.0)
            .collect();
        assert_eq!(diff, vec![vec![0, 1, 1], vec![1, 0, 1]]);
    }

    #[test]
    fn stated_properties() {
        let f1 = named_gate("F1").unwrap();
        let r = f1.report();
        assert!(r.self_reversible && r.weakly_conservative);
        assert_eq!((r.zero_regular, r.one_regular), (Some(true), Some(true)));
        let r2 = named_gate("F2").unwrap();
        assert_eq!(r2.report().zero_regular, Some(false));
        assert_eq!(r2.report().one_regular, Some(true));
        for name in ["F1", "F2", "F3"] {
            assert_eq!(
                named_gate(name).unwrap().report().strictly_conservative,
                Some(false)
            );
        }
    }
}
