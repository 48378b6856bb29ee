//! Parsing of gate mnemonics, truth values and line lists.

use mvgate::gates::{family_gate, named_gate};
use mvgate::{Error, Family, Gate};

use crate::GateArg;

pub type Fallible<T> = Result<T, Box<dyn std::error::Error>>;

/// `F1`, `FREDKIN`, `f1:d=5`, `f2:d=4,l=1`, `m:d=3`.
pub fn parse_gate(spec: &str) -> Fallible<Gate> {
    let Some((family, params)) = spec.split_once(':') else {
        return Ok(named_gate(spec)?);
    };
    let mut d = None;
    let mut lambda = None;
    for p in params.split(',') {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| Error::FamilyParameter(format!("expected key=value in `{spec}`")))?;
        let v: u32 = v
            .trim()
            .parse()
            .map_err(|_| Error::FamilyParameter(format!("bad number in `{p}`")))?;
        match k.trim() {
            "d" => d = Some(v),
            "l" => lambda = Some(v),
            other => {
                return Err(Error::FamilyParameter(format!("unknown parameter `{other}`")).into())
            }
        }
    }
    let d = d.ok_or_else(|| Error::FamilyParameter(format!("`{spec}` needs d=")))?;
    let fam = match (family.to_ascii_lowercase().as_str(), lambda) {
        ("f1", None) => Family::F1,
        ("m", None) => Family::M,
        ("f2", Some(l)) => Family::F2 {
            lambda: u8::try_from(l)
                .map_err(|_| Error::FamilyParameter(format!("l={l} out of range")))?,
        },
        ("f2", None) => return Err(Error::FamilyParameter("f2 needs l=".into()).into()),
        _ => return Err(Error::FamilyParameter(format!("unknown family in `{spec}`")).into()),
    };
    Ok(family_gate(fam, d)?)
}

pub fn load_gate(arg: &GateArg) -> Fallible<(String, Gate)> {
    match (&arg.gate, &arg.file) {
        (Some(spec), _) => Ok((spec.clone(), parse_gate(spec)?)),
        (None, Some(path)) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok((path.display().to_string(), text.parse::<Gate>()?))
        }
        (None, None) => Err("no gate given".into()),
    }
}

/// A truth value `0`, `1` or `p/q`, as a level of `L_d`.
pub fn parse_level(s: &str, d: u8) -> Fallible<u8> {
    let top = u32::from(d) - 1;
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<u32>()?, q.trim().parse::<u32>()?),
        None => (s.trim().parse::<u32>()?, 1),
    };
    if q == 0 || p > q || (p * top) % q != 0 {
        return Err(format!("`{s}` is not a truth value of L_{d}").into());
    }
    Ok((p * top / q) as u8)
}

/// `x1,x3` or `y2` as 0-based line indices.
pub fn parse_lines(s: &str, prefix: char) -> Fallible<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let digits = t.strip_prefix(prefix).unwrap_or(t);
            match digits.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(format!("bad line `{t}` (expected {prefix}1, {prefix}2, ...)").into()),
            }
        })
        .collect()
}

/// `x2=1,x3=1/2` as `(line, level)` pairs.
pub fn parse_pins(s: &str, d: u8) -> Fallible<Vec<(usize, u8)>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (line, value) = t
                .split_once('=')
                .ok_or_else(|| format!("bad pin `{t}` (expected x2=1)"))?;
            Ok((parse_lines(line, 'x')?[0], parse_level(value, d)?))
        })
        .collect()
}

/// Rows of a gate as `000 010 ...` output patterns in row order.
pub fn compact_table(g: &Gate) -> String {
    (0..g.rows())
        .map(|i| g.row(i).iter().map(|v| v.to_string()).collect::<String>())
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mnemonics() {
        assert_eq!(parse_gate("f1:d=3").unwrap(), named_gate("F1").unwrap());
        assert_eq!(parse_gate("f2:d=3,l=1").unwrap(), named_gate("F2").unwrap());
        assert_eq!(parse_gate("m:d=3").unwrap(), named_gate("F3").unwrap());
        assert_eq!(parse_gate("f2:d=5,l=2").unwrap().d(), 5);
        assert!(parse_gate("f2:d=4").is_err());
        assert!(parse_gate("f2:d=4,l=3").is_err());
        assert!(parse_gate("q:d=4").is_err());
        assert!(parse_gate("nonexistent").is_err());
    }

    #[test]
    fn levels_and_lines() {
        assert_eq!(parse_level("1/2", 3).unwrap(), 1);
        assert_eq!(parse_level("1", 5).unwrap(), 4);
        assert_eq!(parse_level("2/4", 5).unwrap(), 2);
        assert!(parse_level("1/3", 3).is_err());
        assert!(parse_level("2", 3).is_err());
        assert_eq!(parse_lines("x1, x3", 'x').unwrap(), vec![0, 2]);
        assert!(parse_lines("x0", 'x').is_err());
        assert_eq!(parse_pins("x2=1,x3=0", 3).unwrap(), vec![(1, 2), (2, 0)]);
    }
}
