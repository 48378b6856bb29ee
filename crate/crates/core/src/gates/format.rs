//! The line-oriented `mvgate` text format.
//!
//! ```text
//! mvgate 1
//! d=3 n=1 m=1
//! 0 -> 2   # rows in any order
//! 2 -> 0
//! 1 -> 1
//! ```

use std::fmt;
use std::str::FromStr;

use super::Gate;
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_levels(text: &str, line: usize) -> Result<Vec<u8>> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<u8>()
                .map_err(|_| parse_err(line, format!("bad level `{t}`")))
        })
        .collect()
}

fn parse_header(text: &str, line: usize) -> Result<(u32, usize, usize)> {
    let (mut d, mut n, mut m) = (None, None, None);
    for field in text.split_whitespace() {
        let (key, val) = field
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("expected key=value, got `{field}`")))?;
        let val: u32 = val
            .parse()
            .map_err(|_| parse_err(line, format!("bad number in `{field}`")))?;
        let slot = match key {
            "d" => &mut d,
            "n" => &mut n,
            "m" => &mut m,
            _ => return Err(parse_err(line, format!("unknown key `{key}`"))),
        };
        if slot.replace(val).is_some() {
            return Err(parse_err(line, format!("`{key}` given twice")));
        }
    }
    match (d, n, m) {
        (Some(d), Some(n), Some(m)) => Ok((d, n as usize, m as usize)),
        _ => Err(parse_err(line, "header needs d=, n= and m=")),
    }
}

impl Gate {
    /// Parses the `mvgate` format.
    pub fn parse_mvgate(text: &str) -> Result<Gate> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, "mvgate 1")) => {}
            Some((i, other)) => {
                return Err(parse_err(i, format!("expected `mvgate 1`, got `{other}`")))
            }
            None => return Err(parse_err(0, "empty input")),
        }
        let (hline, header) = lines
            .next()
            .ok_or_else(|| parse_err(0, "missing header line"))?;
        let (d, n, m) = parse_header(header, hline)?;
        let mut rows = Vec::new();
        for (i, l) in lines {
            let (lhs, rhs) = l
                .split_once("->")
                .ok_or_else(|| parse_err(i, "expected `inputs -> outputs`"))?;
            let (input, output) = (parse_levels(lhs, i)?, parse_levels(rhs, i)?);
            if input.len() != n || output.len() != m {
                return Err(parse_err(
                    i,
                    format!(
                        "row has shape {} -> {}, header says {n} -> {m}",
                        input.len(),
                        output.len()
                    ),
                ));
            }
            rows.push((input, output));
        }
        Gate::new(d, n, m, rows)
    }

    /// Renders the gate in the `mvgate` format, rows in ascending order.
    pub fn to_mvgate(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mvgate 1")?;
        writeln!(f, "d={} n={} m={}", self.d, self.n, self.m)?;
        let join = |p: &[u8]| p.iter().map(u8::to_string).collect::<Vec<_>>().join(" ");
        for (x, y) in self.iter_rows() {
            writeln!(f, "{} -> {}", join(&x), join(y))?;
        }
        Ok(())
    }
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Gate::parse_mvgate(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{named_gate, NAMED_GATES};

    #[test]
    fn round_trip_named() {
        for name in NAMED_GATES {
            let g = named_gate(name).unwrap();
            let text = g.to_mvgate();
            assert_eq!(Gate::parse_mvgate(&text).unwrap(), g, "{name}");
            assert_eq!(Gate::parse_mvgate(&text).unwrap().to_mvgate(), text);
        }
    }

    #[test]
    fn comments_and_order() {
        let text = "# a cyclic shift\nmvgate 1\nd=3 n=1 m=1\n2 -> 0\n0 -> 1 # first\n\n1 -> 2\n";
        let g: Gate = text.parse().unwrap();
        assert_eq!(g.table(), [1, 2, 0]);
        assert_eq!(
            g.to_mvgate(),
            "mvgate 1\nd=3 n=1 m=1\n0 -> 1\n1 -> 2\n2 -> 0\n"
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        let missing = "mvgate 1\nd=3 n=1 m=1\n0 -> 1\n1 -> 2\n";
        assert!(matches!(Gate::parse_mvgate(missing), Err(Error::Table(_))));
        let bad = "mvgate 1\nd=2 n=1 m=1\n0 -> 1\n1 => 0\n";
        assert_eq!(
            Gate::parse_mvgate(bad).unwrap_err(),
            Error::Parse {
                line: 4,
                msg: "expected `inputs -> outputs`".into()
            }
        );
        assert!(Gate::parse_mvgate("mvgate 2\n").is_err());
        assert!(Gate::parse_mvgate("mvgate 1\nd=2 n=1\n").is_err());
        let shape = "mvgate 1\nd=2 n=1 m=1\n0 1 -> 1\n";
        assert!(matches!(
            Gate::parse_mvgate(shape),
            Err(Error::Parse { line: 3, .. })
        ));
    }
}
