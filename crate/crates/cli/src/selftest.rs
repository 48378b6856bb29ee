//! Regression suite over the printed tables, runnable from the binary.

use std::fmt::Write as _;

use mvgate::algebra::{FiniteStructure, Signature};
use mvgate::gates::{family_gate, named_gate, NAMED_GATES};
use mvgate::search::{extract_connectives, Catalog, Connective};
use mvgate::thermo::entropy_report;
use mvgate::transforms::{conservativize, imbalance_plan, realize_original, reversibilize};
use mvgate::{Family, Gate};

use crate::commands::Output;
use crate::spec::{parse_lines, parse_pins, Fallible};

/// `(gate, connective, pins, inputs, outputs)` for each printed configuration.
const CONFIGURATIONS: &[(&str, &str, &str, &str, &str)] = &[
    ("F1", "FAN_OUT", "x2=1,x3=0", "x1", "y1,y2"),
    ("F1", "TO_L", "x2=1", "x1,x3", "y3"),
    ("F1", "TO_G", "x3=1", "x1,x2", "y2"),
    ("F1", "OR", "x2=1", "x1,x3", "y2"),
    ("F1", "AND", "x3=0", "x1,x2", "y2"),
    ("F1", "NOT", "x2=1,x3=0", "x1", "y3"),
    ("F1", "SIM", "x2=0,x3=1", "x1", "y2"),
    ("F1", "POSS", "x2=0,x3=1", "x1", "y3"),
    ("F2", "PR1", "x1=1", "x2,x3", "y2"),
    ("F2", "NEC", "x2=0,x3=1/2", "x1", "y1"),
    ("F3", "OPLUS", "x2=1", "x1,x3", "y2"),
    ("F3", "ODOT", "x3=0", "x1,x2", "y2"),
    ("F3", "NEC", "x1=1/2,x2=0", "x3", "y3"),
];

fn configurations() -> Fallible<usize> {
    let mut ok = 0;
    for &(gate, conn, pins, inputs, outputs) in CONFIGURATIONS {
        let g = named_gate(gate)?;
        let c: Connective = conn.parse()?;
        let pins = parse_pins(pins, 3)?;
        let inputs = parse_lines(inputs, 'x')?;
        let outputs = parse_lines(outputs, 'y')?;
        let rows = extract_connectives(&g, &Catalog(vec![c]));
        if rows
            .iter()
            .any(|r| r.pins == pins && r.inputs == inputs && r.outputs == outputs)
        {
            ok += 1;
        }
    }
    Ok(ok)
}

pub fn run(json: bool) -> Fallible<Output> {
    let mut checks: Vec<(&str, usize, usize)> = Vec::new();

    let round_trips = NAMED_GATES
        .iter()
        .filter(|n| {
            let g = named_gate(n).unwrap();
            g.to_mvgate().parse::<Gate>().is_ok_and(|p| p == g)
        })
        .count();
    checks.push(("named gate round trips", round_trips, NAMED_GATES.len()));

    let pairs = [
        (Family::F1, "F1"),
        (Family::F2 { lambda: 1 }, "F2"),
        (Family::M, "F3"),
    ];
    let equal = pairs
        .iter()
        .filter(|(f, n)| family_gate(*f, 3).ok() == named_gate(n).ok())
        .count();
    checks.push(("family members equal printed gates", equal, pairs.len()));

    let mut props = 0;
    let mut total = 0;
    for d in [3u32, 4, 5, 7] {
        let mut fams = vec![Family::F1, Family::M];
        fams.extend((1..=d as u8 - 2).map(|lambda| Family::F2 { lambda }));
        for f in fams {
            let g = family_gate(f, d)?;
            total += 1;
            props += (g.is_self_reversible() && g.is_weakly_conservative()) as usize;
        }
    }
    checks.push((
        "family members self-reversible and weakly conservative",
        props,
        total,
    ));

    checks.push((
        "printed pin configurations",
        configurations()?,
        CONFIGURATIONS.len(),
    ));

    let landauer = entropy_report(&named_gate("LANDAUER")?).dissipation;
    let zero = ["FREDKIN", "EXC", "REV22", "REV24"]
        .iter()
        .filter(|n| entropy_report(&named_gate(n).unwrap()).dissipation.abs() < 1e-12)
        .count();
    checks.push((
        "entropy values",
        zero + ((landauer - 0.824).abs() < 0.005) as usize,
        5,
    ));

    let mut recovered = 0;
    for name in ["AND", "OR", "LANDAUER", "REV24"] {
        let g = named_gate(name)?;
        let gr = reversibilize(&g)?;
        let plan = imbalance_plan(&gr)?;
        let grc = conservativize(&gr, &plan)?;
        let mut ok = grc.is_reversible() && grc.is_strictly_conservative()?;
        for (x, y) in g.iter_rows() {
            ok &= realize_original(&grc, &plan, g.n(), &x)? == y;
        }
        recovered += ok as usize;
    }
    checks.push(("conservativized gates", recovered, 4));

    let mut algebras = 0;
    let mut algebra_total = 0;
    for d in 2..=6 {
        for sig in [
            Signature::Bzw,
            Signature::Bzmv,
            Signature::Mv,
            Signature::Wajsberg,
            Signature::Chang,
        ] {
            for r in FiniteStructure::standard_model(d, sig)?.check_expected()? {
                algebra_total += 1;
                algebras += r.holds() as usize;
            }
        }
    }
    checks.push(("axiom sets on standard models", algebras, algebra_total));

    let success = checks.iter().all(|(_, p, t)| p == t);
    if json {
        let v: Vec<_> = checks
            .iter()
            .map(|(name, passed, total)| serde_json::json!({ "check": name, "passed": passed, "total": total }))
            .collect();
        return Ok(Output {
            text: serde_json::to_string_pretty(&v)? + "\n",
            success,
        });
    }
    let mut out = String::new();
    for (name, passed, total) in &checks {
        let status = if passed == total { "ok" } else { "FAIL" };
        writeln!(out, "{name}: {passed}/{total} {status}")?;
    }
    let passed = checks.iter().filter(|(_, p, t)| p == t).count();
    writeln!(out, "selftest: {passed}/{} checks passed", checks.len())?;
    Ok(Output { text: out, success })
}
