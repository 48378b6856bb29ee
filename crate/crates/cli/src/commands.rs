use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde::Serialize;
use serde_json::json;

use mvgate::algebra::{
    check_rough, check_sharp, derived_lattice, mutation_sensitivity, rough_approximation,
    translate, AxiomReport, AxiomSet, Direction, FiniteStructure, Signature,
};
use mvgate::gates::control_decompose;
use mvgate::search::{
    check_no_fanout, check_no_lmv, count_gates_par, extract_connectives, realization_tsv, Catalog,
    Connective, ConstraintSet, FanoutVerdict, GateSearch, DEFAULT_LIMIT,
};
use mvgate::synthesis::{synthesize, verify_expr, NormalForm, TruthFunction};
use mvgate::thermo::{entropy_report, spectrum};
use mvgate::transforms::{
    conservativize, conservativize_inverse, imbalance_plan, realize_original, reversibilize,
};
use mvgate::{BinaryConnective, Gate, UnaryConnective};

use crate::spec::{compact_table, load_gate, parse_gate, parse_lines, parse_pins, Fallible};
use crate::GateArg;

pub struct Output {
    pub text: String,
    pub success: bool,
}

impl Output {
    fn ok(text: String) -> Output {
        Output {
            text,
            success: true,
        }
    }

    fn json(value: &impl Serialize) -> Fallible<Output> {
        Ok(Output::ok(serde_json::to_string_pretty(value)? + "\n"))
    }
}

fn flag(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "n/a",
    }
}

fn pattern(p: &[u8]) -> String {
    p.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn show(arg: &GateArg, control: Option<usize>, json: bool) -> Fallible<Output> {
    let (_, g) = load_gate(arg)?;
    let dec = match control {
        Some(k) => Some(
            control_decompose(&g, k)
                .ok_or_else(|| format!("gate is not a {k}-line control gate"))?,
        ),
        None => None,
    };
    if json {
        let deltas: Option<Vec<&Gate>> = dec.as_ref().map(|d| d.deltas.iter().collect());
        return Output::json(&json!({ "gate": g, "control": deltas }));
    }
    let mut out = g.to_mvgate();
    if let Some(dec) = dec {
        let mut sym = vec![0u8; dec.k];
        for (a, delta) in dec.deltas.iter().enumerate() {
            mvgate::gates::index_pattern(a, dec.d, &mut sym);
            writeln!(out, "# control {}: {}", pattern(&sym), compact_table(delta))?;
        }
    }
    Ok(Output::ok(out))
}

pub fn verify(arg: &GateArg, violations: bool, json: bool) -> Fallible<Output> {
    let (name, g) = load_gate(arg)?;
    let report = g.report();
    let lists = if violations && g.n() == 3 && g.m() == 3 {
        Some([
            ("zero_regular", g.zero_regular_violations()?),
            ("one_regular", g.one_regular_violations()?),
            ("conditional_control_first_line", g.first_line_violations()?),
            ("boolean_fredkin", g.boolean_fredkin_violations()?),
        ])
    } else {
        None
    };
    if json {
        let v: Option<serde_json::Map<String, serde_json::Value>> = lists
            .as_ref()
            .map(|ls| ls.iter().map(|(k, v)| (k.to_string(), json!(v))).collect());
        return Output::json(
            &json!({ "gate": name, "d": g.d(), "n": g.n(), "m": g.m(), "report": report, "violations": v }),
        );
    }
    let mut out = format!("gate: {name} (d={}, n={}, m={})\n", g.d(), g.n(), g.m());
    for (k, v) in report.entries() {
        writeln!(out, "{k}: {}", flag(v))?;
    }
    for (k, v) in lists.iter().flatten() {
        let pats: Vec<String> = v.iter().map(|p| pattern(p)).collect();
        writeln!(out, "{k}_violations: {} [{}]", v.len(), pats.join("; "))?;
    }
    Ok(Output::ok(out))
}

pub fn entropy(arg: &GateArg, bits: bool, show_spectrum: bool, json: bool) -> Fallible<Output> {
    let (name, g) = load_gate(arg)?;
    let nats = entropy_report(&g);
    let r = if bits { nats.in_bits() } else { nats };
    let spec = spectrum(&g);
    if json {
        let s = show_spectrum.then_some(&spec);
        return Output::json(&json!({
            "gate": name,
            "unit": if bits { "bits" } else { "nats" },
            "input_entropy": r.input_entropy,
            "output_entropy": r.output_entropy,
            "dissipation": r.dissipation,
            "dE_kT": nats.dissipation,
            "spectrum": s,
        }));
    }
    let unit = if bits { "bits" } else { "nats" };
    let mut out = format!("gate: {name}\nunit: {unit}\n");
    writeln!(out, "S_i: {:.4}", r.input_entropy)?;
    writeln!(out, "S_f: {:.4}", r.output_entropy)?;
    writeln!(out, "dE_kT: {:.4}", nats.dissipation)?;
    writeln!(out, "eigenvalues: {}", spec.entries.len())?;
    let mut hist = std::collections::BTreeMap::new();
    for e in &spec.entries {
        *hist.entry(e.multiplicity()).or_insert(0usize) += 1;
    }
    let hist: Vec<String> = hist.iter().map(|(m, c)| format!("{m}:{c}")).collect();
    writeln!(out, "multiplicities: {}", hist.join(" "))?;
    if show_spectrum {
        for e in &spec.entries {
            writeln!(out, "{} <- {} inputs", pattern(&e.output), e.multiplicity())?;
        }
    }
    Ok(Output::ok(out))
}

pub fn transform(arg: &GateArg, emit: Option<&str>, json: bool) -> Fallible<Output> {
    let (name, g) = load_gate(arg)?;
    let gr = reversibilize(&g)?;
    let plan = imbalance_plan(&gr)?;
    let grc = conservativize(&gr, &plan)?;
    let inv = conservativize_inverse(&gr, &plan)?;
    let conserves = grc.is_strictly_conservative()?;
    let mut recovers = true;
    for (x, y) in g.iter_rows() {
        recovers &= realize_original(&grc, &plan, g.n(), &x)? == y;
    }
    let identity = Gate::identity(2, plan.lines())?;
    let inverse_ok = grc.then(&inv)? == identity;
    if let Some(which) = emit {
        let t = match which {
            "reversible" => &gr,
            "conservative" => &grc,
            _ => &inv,
        };
        return if json {
            Output::json(t)
        } else {
            Ok(Output::ok(t.to_mvgate()))
        };
    }
    if json {
        return Output::json(&json!({
            "gate": name,
            "plan": plan,
            "histogram": plan.histogram(),
            "permutation": grc.is_reversible(),
            "conserves_ones": conserves,
            "recovers_original": recovers,
            "inverse_composes_to_identity": inverse_ok,
        }));
    }
    let mut out = format!("gate: {name} (n={}, m={})\n", g.n(), g.m());
    writeln!(out, "reversible_lines: {}", plan.width)?;
    writeln!(out, "lending_ancillae: {}", plan.ell)?;
    writeln!(out, "absorbing_ancillae: {}", plan.h)?;
    writeln!(out, "lines: {}", plan.lines())?;
    writeln!(out, "plan: l={} h={}", plan.ell, plan.h)?;
    let hist: Vec<String> = plan
        .histogram()
        .iter()
        .map(|(e, c)| format!("{e}:{c}"))
        .collect();
    writeln!(out, "imbalance: {}", hist.join(" "))?;
    writeln!(out, "permutation: {}", grc.is_reversible())?;
    writeln!(out, "conserves_ones: {conserves}")?;
    writeln!(out, "recovers_original: {recovers}")?;
    writeln!(out, "inverse_composes_to_identity: {inverse_ok}")?;
    Ok(Output::ok(out))
}

pub fn pin(
    arg: &GateArg,
    set: &str,
    keep: Option<&str>,
    connectives: bool,
    full: bool,
    json: bool,
) -> Fallible<Output> {
    let (_, g) = load_gate(arg)?;
    if connectives {
        let catalog = if full {
            Catalog::full(u32::from(g.d()))?
        } else {
            Catalog::standard()
        };
        let rows = extract_connectives(&g, &catalog);
        if json {
            let v: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "connective": r.connective.name(),
                        "pins": r.pins,
                        "inputs": r.inputs,
                        "outputs": r.outputs,
                        "garbage": r.garbage,
                    })
                })
                .collect();
            return Output::json(&v);
        }
        return Ok(Output::ok(realization_tsv(&rows)));
    }
    let pins = parse_pins(set, g.d())?;
    let outputs = match keep {
        Some(k) => parse_lines(k, 'y')?,
        None => (0..g.m()).collect(),
    };
    let p = g.pin_levels(&pins, &outputs)?;
    if json {
        Output::json(&p)
    } else {
        Ok(Output::ok(p.to_mvgate()))
    }
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Number of truth values.
    #[arg(long, default_value_t = 3)]
    d: u32,
    /// Number of lines.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Comma-separated properties: F-2, F-2', F-3, F-3', F-5, F-6, F-7, F-8.
    /// Defaults to F-2',F-3,F-8 when no property is given.
    #[arg(long, default_value = "")]
    constraints: String,
    /// F-2.
    #[arg(long)]
    reversible: bool,
    /// F-2'.
    #[arg(long)]
    self_reversible: bool,
    /// F-3.
    #[arg(long)]
    weak_conservative: bool,
    /// F-3'.
    #[arg(long)]
    strict_conservative: bool,
    /// F-5.
    #[arg(long)]
    zero_regular: bool,
    /// F-6.
    #[arg(long)]
    one_regular: bool,
    /// F-7.
    #[arg(long)]
    first_line: bool,
    /// F-8.
    #[arg(long)]
    boolean_fredkin: bool,
    /// Connectives every gate must realize, e.g. TO_L,NEC,FAN_OUT.
    #[arg(long, default_value = "")]
    require: String,
    /// Print each gate as its row-ordered output patterns.
    #[arg(long)]
    list: bool,
    /// Stop after this many gates.
    #[arg(long)]
    limit: Option<usize>,
    /// Write each gate as an mvgate file into this directory, plus a
    /// `realizations.tsv` summary.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Refuse searches estimated above this many candidates.
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    max_candidates: f64,
    /// Run a named check instead: `no-lmv` or `no-fanout`.
    #[arg(long, value_parser = ["no-lmv", "no-fanout"])]
    check: Option<String>,
}

fn constraints(args: &SearchArgs) -> Fallible<ConstraintSet> {
    let mut c = parse_constraints(&args.constraints, &args.require)?;
    c.reversible |= args.reversible;
    c.self_reversible |= args.self_reversible;
    c.weakly_conservative |= args.weak_conservative;
    c.strictly_conservative |= args.strict_conservative;
    c.zero_regular |= args.zero_regular;
    c.one_regular |= args.one_regular;
    c.first_line_identity |= args.first_line;
    c.boolean_fredkin |= args.boolean_fredkin;
    let none = ConstraintSet {
        required: c.required.clone(),
        ..ConstraintSet::default()
    };
    if c == none {
        c = ConstraintSet {
            self_reversible: true,
            weakly_conservative: true,
            boolean_fredkin: true,
            ..none
        };
    }
    Ok(c)
}

fn parse_constraints(s: &str, required: &str) -> Fallible<ConstraintSet> {
    let mut c = ConstraintSet::default();
    for raw in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let t = raw.to_ascii_uppercase().replace('′', "'").replace('-', "");
        match t.as_str() {
            "F2" => c.reversible = true,
            "F2'" => c.self_reversible = true,
            "F3" => c.weakly_conservative = true,
            "F3'" => c.strictly_conservative = true,
            "F5" => c.zero_regular = true,
            "F6" => c.one_regular = true,
            "F7" => c.first_line_identity = true,
            "F8" => c.boolean_fredkin = true,
            _ => return Err(format!("unknown constraint `{raw}`").into()),
        }
    }
    for name in required.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        c.required.push(name.parse::<Connective>()?);
    }
    Ok(c)
}

pub fn search(args: &SearchArgs, json: bool) -> Fallible<Output> {
    match args.check.as_deref() {
        Some("no-lmv") => {
            let r = check_no_lmv(args.d)?;
            if json {
                return Output::json(&r);
            }
            let mut out = format!("d: {}\n", r.d);
            writeln!(out, "gates_examined: {}", r.gates_examined)?;
            writeln!(
                out,
                "realize_and_or_to_l_to_g: {}",
                r.lattice_and_implications
            )?;
            writeln!(out, "realize_oplus_odot: {}", r.mv_pair)?;
            if let Some(c) = &r.counterexample {
                writeln!(out, "realizes_all_six: {}", pattern(c))?;
            }
            writeln!(out, "holds: {}", r.holds())?;
            return Ok(Output::ok(out));
        }
        Some(_) => {
            let r = check_no_fanout(args.n, args.d)?;
            if json {
                return Output::json(&r);
            }
            let mut out = format!("n: {}\nd: {}\n", r.n, r.d);
            match &r.verdict {
                FanoutVerdict::Impossible => writeln!(out, "verdict: impossible")?,
                FanoutVerdict::NotApplicable { counterexample } => writeln!(
                    out,
                    "verdict: not applicable (n > d, e.g. {counterexample})"
                )?,
            }
            writeln!(out, "pinning_configurations: {}", r.witnesses.len())?;
            if let Some((total, realizing)) = r.enumeration {
                writeln!(
                    out,
                    "enumerated_gates: {total}\nrealizing_fan_out: {realizing}"
                )?;
            }
            return Ok(Output::ok(out));
        }
        None => {}
    }
    let c = constraints(args)?;
    let search = GateSearch::new(args.n, args.d, &c, args.max_candidates)?;
    let estimate = search.estimate();
    let (count, gates) = if args.list || args.out.is_some() || args.limit.is_some() {
        let gates: Vec<Gate> = search.take(args.limit.unwrap_or(usize::MAX)).collect();
        (gates.len(), gates)
    } else {
        (count_gates_par(search), Vec::new())
    };
    if let Some(dir) = &args.out {
        write_hits(dir, &gates)?;
    }
    let gates = if args.list { gates } else { Vec::new() };
    if json {
        let tables: Vec<String> = gates.iter().map(compact_table).collect();
        return Output::json(
            &json!({ "d": args.d, "n": args.n, "estimate": estimate, "gates": count, "tables": tables }),
        );
    }
    let mut out = format!(
        "d: {}\nn: {}\nestimate: {estimate}\ngates: {count}\n",
        args.d, args.n
    );
    for g in &gates {
        writeln!(out, "{}", compact_table(g))?;
    }
    Ok(Output::ok(out))
}

fn write_hits(dir: &std::path::Path, gates: &[Gate]) -> Fallible<()> {
    std::fs::create_dir_all(dir)?;
    let width = gates.len().to_string().len();
    let catalog = Catalog::standard();
    let mut tsv = String::from("gate\tconnective\tinputs\tconstants\toutputs\tgarbage\n");
    for (i, g) in gates.iter().enumerate() {
        let name = format!("gate{:0width$}", i + 1);
        std::fs::write(dir.join(format!("{name}.mvgate")), g.to_mvgate())?;
        let rows = realization_tsv(&extract_connectives(g, &catalog));
        for line in rows.lines().skip(1) {
            writeln!(tsv, "{name}\t{line}")?;
        }
    }
    std::fs::write(dir.join("realizations.tsv"), tsv)?;
    Ok(())
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    /// Number of truth values (with --table or --connective).
    #[arg(long)]
    d: Option<u32>,
    /// Arity of the function given by --table.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Function values as levels 0..d-1 in row order.
    #[arg(long)]
    table: Option<String>,
    /// A catalog connective such as TO_L or SIM.
    #[arg(long)]
    connective: Option<String>,
    /// A single-output gate by name or family mnemonic.
    #[arg(long)]
    gate: Option<String>,
    /// A single-output gate in mvgate format.
    #[arg(long)]
    input: Option<PathBuf>,
    /// gdnf, gcnf or clay; all three when omitted.
    #[arg(long)]
    form: Option<String>,
    /// Use modal literals and drop Boolean constants.
    #[arg(long)]
    simplify: bool,
}

pub fn synth(args: &SynthArgs, json: bool) -> Fallible<Output> {
    let given = [
        args.table.is_some(),
        args.connective.is_some(),
        args.gate.is_some(),
        args.input.is_some(),
    ];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err("give exactly one of --table, --connective, --gate, --input".into());
    }
    let f = if let Some(t) = &args.table {
        let d = args.d.ok_or("--table needs --d")?;
        let table = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u8>())
            .collect::<Result<Vec<_>, _>>()?;
        TruthFunction::new(d, args.n, table)?
    } else if let Some(c) = &args.connective {
        let d = args.d.ok_or("--connective needs --d")?;
        if let Ok(b) = c.parse::<BinaryConnective>() {
            TruthFunction::from_binary(b, d)?
        } else {
            TruthFunction::from_unary(c.parse::<UnaryConnective>()?, d)?
        }
    } else if let Some(g) = &args.gate {
        TruthFunction::from_gate(&parse_gate(g)?)?
    } else {
        let arg = GateArg {
            gate: None,
            file: args.input.clone(),
        };
        TruthFunction::from_gate(&load_gate(&arg)?.1)?
    };
    let forms = match &args.form {
        Some(s) => vec![s.parse::<NormalForm>()?],
        None => vec![NormalForm::Gdnf, NormalForm::Gcnf, NormalForm::Clay],
    };
    let mut results = Vec::new();
    for form in forms {
        let e = synthesize(form, &f, args.simplify);
        let ok = verify_expr(&e, &f);
        results.push((form, e, ok));
    }
    let success = results.iter().all(|r| r.2);
    if json {
        let v: Vec<_> = results
            .iter()
            .map(|(form, e, ok)| json!({ "form": form, "expr": e.to_string(), "size": e.size(), "verified": ok }))
            .collect();
        return Ok(Output {
            success,
            ..Output::json(&v)?
        });
    }
    let mut out = String::new();
    for (form, e, ok) in &results {
        let name = format!("{form:?}").to_ascii_lowercase();
        writeln!(
            out,
            "{name}: {e}\n{name}_size: {}\n{name}_verified: {ok}",
            e.size()
        )?;
    }
    Ok(Output { text: out, success })
}

#[derive(Args, Debug)]
pub struct StructureArg {
    /// Signature of a standard model: bzw, bzmv, mv, wajsberg, chang, bz-lattice.
    #[arg(long, requires = "d")]
    signature: Option<String>,
    /// Number of truth values of the standard model.
    #[arg(long, requires = "signature")]
    d: Option<u32>,
    /// A structure in mvalg format.
    #[arg(long, conflicts_with_all = ["signature", "d"])]
    file: Option<PathBuf>,
}

impl StructureArg {
    fn load(&self) -> Fallible<FiniteStructure> {
        match (&self.signature, self.d, &self.file) {
            (Some(sig), Some(d), None) => Ok(FiniteStructure::standard_model(
                d,
                sig.parse::<Signature>()?,
            )?),
            (None, None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                Ok(text.parse::<FiniteStructure>()?)
            }
            _ => Err("give --signature and --d, or --file".into()),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCommand {
    /// Check axiom sets (default: those the signature should satisfy).
    Check {
        #[command(flatten)]
        structure: StructureArg,
        /// Axiom set name; repeatable.
        #[arg(long = "set")]
        sets: Vec<String>,
    },
    /// Print the structure in mvalg format.
    Show {
        #[command(flatten)]
        structure: StructureArg,
    },
    /// Derive the BZ lattice and check its laws.
    Lattice {
        #[command(flatten)]
        structure: StructureArg,
    },
    /// The four sets of sharp elements and their relations.
    Sharp {
        #[command(flatten)]
        structure: StructureArg,
    },
    /// Rough approximations of one element, or of all.
    Rough {
        #[command(flatten)]
        structure: StructureArg,
        /// Element label such as 1/2.
        #[arg(long)]
        x: Option<String>,
    },
    /// Translate between BZW/BZMV or Chang/Wajsberg presentations.
    Translate {
        #[command(flatten)]
        structure: StructureArg,
        /// bzw-to-bzmv, bzmv-to-bzw, chang-to-wajsberg or wajsberg-to-chang.
        #[arg(long)]
        direction: String,
    },
    /// Fraction of single-cell table mutations caught by the axioms.
    Mutate {
        #[command(flatten)]
        structure: StructureArg,
        #[arg(long = "set")]
        sets: Vec<String>,
    },
}

fn render_reports(reports: &[AxiomReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let passed = r.results.iter().filter(|a| a.holds).count();
        let _ = writeln!(out, "set {}: {passed}/{} pass", r.set, r.results.len());
        for a in &r.results {
            let _ = writeln!(out, "  {a}");
        }
    }
    out
}

fn parse_sets(s: &FiniteStructure, names: &[String]) -> Fallible<Vec<AxiomSet>> {
    if names.is_empty() {
        return Ok(s.signature().expected_sets().to_vec());
    }
    Ok(names
        .iter()
        .map(|n| n.parse::<AxiomSet>())
        .collect::<Result<Vec<_>, _>>()?)
}

pub fn algebra(cmd: &AlgebraCommand, json: bool) -> Fallible<Output> {
    let reports_out = |reports: Vec<AxiomReport>| -> Fallible<Output> {
        if json {
            Output::json(&reports)
        } else {
            Ok(Output::ok(render_reports(&reports)))
        }
    };
    match cmd {
        AlgebraCommand::Check { structure, sets } => {
            let s = structure.load()?;
            let reports = parse_sets(&s, sets)?
                .into_iter()
                .map(|set| s.check_axioms(set))
                .collect::<Result<Vec<_>, _>>()?;
            reports_out(reports)
        }
        AlgebraCommand::Show { structure } => {
            let s = structure.load()?;
            if json {
                Output::json(&s)
            } else {
                Ok(Output::ok(s.to_mvalg()))
            }
        }
        AlgebraCommand::Lattice { structure } => {
            let (lattice, report) = derived_lattice(&structure.load()?)?;
            if json {
                return Output::json(&json!({ "lattice": lattice, "report": report }));
            }
            Ok(Output::ok(format!(
                "{}{}",
                lattice.to_mvalg(),
                render_reports(&[report])
            )))
        }
        AlgebraCommand::Sharp { structure } => {
            let s = structure.load()?;
            let sets = mvgate::algebra::sharp_sets(&s)?;
            let report = check_sharp(&s)?;
            if json {
                return Output::json(&json!({ "sets": sets, "report": report }));
            }
            let names = |v: &[u8]| {
                v.iter()
                    .map(|&e| s.label(e).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let mut out = String::new();
            writeln!(out, "modal: {}", names(&sets.modal))?;
            writeln!(out, "kleene: {}", names(&sets.kleene))?;
            writeln!(out, "brouwer: {}", names(&sets.brouwer))?;
            writeln!(out, "implicative: {}", names(&sets.implicative))?;
            out.push_str(&render_reports(&[report]));
            Ok(Output::ok(out))
        }
        AlgebraCommand::Rough { structure, x } => {
            let s = structure.load()?;
            let elems: Vec<u8> = match x {
                Some(label) => {
                    vec![s
                        .element(label)
                        .ok_or_else(|| format!("no element labelled `{label}`"))?]
                }
                None => (0..s.size() as u8).collect(),
            };
            let mut pairs = Vec::new();
            for e in elems {
                let (lo, hi) = rough_approximation(&s, e)?;
                pairs.push((
                    s.label(e).to_string(),
                    s.label(lo).to_string(),
                    s.label(hi).to_string(),
                ));
            }
            let report = check_rough(&s)?;
            if json {
                let v: Vec<_> = pairs
                    .iter()
                    .map(|(x, lo, hi)| json!({ "x": x, "inner": lo, "outer": hi }))
                    .collect();
                return Output::json(&json!({ "approximations": v, "report": report }));
            }
            let mut out = String::new();
            for (x, lo, hi) in &pairs {
                writeln!(out, "r({x}) = <{lo}, {hi}>")?;
            }
            out.push_str(&render_reports(&[report]));
            Ok(Output::ok(out))
        }
        AlgebraCommand::Translate {
            structure,
            direction,
        } => {
            let t = translate(&structure.load()?, direction.parse::<Direction>()?)?;
            if json {
                Output::json(&t)
            } else {
                Ok(Output::ok(t.to_mvalg()))
            }
        }
        AlgebraCommand::Mutate { structure, sets } => {
            let s = structure.load()?;
            let sets = if sets.is_empty() {
                vec![s.signature().defining_set()]
            } else {
                parse_sets(&s, sets)?
            };
            let (caught, total) = mutation_sensitivity(&s, &sets)?;
            let rate = if total == 0 {
                1.0
            } else {
                caught as f64 / total as f64
            };
            if json {
                return Output::json(&json!({ "caught": caught, "total": total, "rate": rate }));
            }
            Ok(Output::ok(format!(
                "mutations: {total}\ncaught: {caught}\nrate: {rate:.4}\n"
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraint_names() {
        let c = parse_constraints("F-2',F-3, f8", "TO_L").unwrap();
        assert!(c.self_reversible && c.weakly_conservative && c.boolean_fredkin);
        assert!(!c.reversible);
        assert_eq!(c.required.len(), 1);
        assert!(parse_constraints("F-9", "").is_err());
        assert!(parse_constraints("F-2′", "").unwrap().self_reversible);
    }
}
