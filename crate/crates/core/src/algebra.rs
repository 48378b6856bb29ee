//! A finite model checker for the Brouwer-Zadeh style algebras built on
//! Łukasiewicz logic: BZW, BZMV, MV (Mangani and Chang presentations),
//! Wajsberg algebras and the BZ lattices they induce.
//!
//! A [`FiniteStructure`] stores the primitive operation tables of its
//! [`Signature`] and materializes every derived operation (`0`, `1`, `→`,
//! `⊕`, `⊙`, `∨`, `∧`, `□`, `◇`, `♭`) once from its defining term. Axioms are
//! plain strings in a small term language, parsed into [`Formula`]s and checked
//! exhaustively over all assignments of their variables.
//!
//! Term syntax: variables `x y z u w`, constants `0 1`, prefix operators
//! `¬ ∼ ♭ □ ◇` (ASCII `! ~`), infix `→ ⊕ ⊙ ∨ ∧` (ASCII `-> + * | &`), and
//! relations `=`, `≤` (`<=`). Precedence from loosest: `→`, then `⊕ ∨`, then
//! `⊙ ∧`; all infix operators associate to the left.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::values::{check_arity, BinaryConnective, UnaryConnective, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Op1 {
    /// Kleene negation `¬`.
    Neg,
    /// Brouwer negation `∼`.
    Sim,
    /// Anti-intuitionistic negation `♭x = ¬∼¬x`.
    Flat,
    /// Necessity `□x = ∼¬x`.
    Nec,
    /// Possibility `◇x = ¬□¬x`.
    Poss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Op2 {
    Imp,
    Oplus,
    Odot,
    Join,
    Meet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Constant {
    Zero,
    One,
}

impl Op1 {
    pub const ALL: [Op1; 5] = [Op1::Neg, Op1::Sim, Op1::Flat, Op1::Nec, Op1::Poss];

    pub fn name(self) -> &'static str {
        match self {
            Op1::Neg => "neg",
            Op1::Sim => "sim",
            Op1::Flat => "flat",
            Op1::Nec => "nec",
            Op1::Poss => "poss",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Op1::Neg => "¬",
            Op1::Sim => "∼",
            Op1::Flat => "♭",
            Op1::Nec => "□",
            Op1::Poss => "◇",
        }
    }

    fn connective(self) -> UnaryConnective {
        match self {
            Op1::Neg => UnaryConnective::Not,
            Op1::Sim => UnaryConnective::Sim,
            Op1::Flat => UnaryConnective::Flat,
            Op1::Nec => UnaryConnective::Nec,
            Op1::Poss => UnaryConnective::Poss,
        }
    }
}

impl Op2 {
    pub const ALL: [Op2; 5] = [Op2::Imp, Op2::Oplus, Op2::Odot, Op2::Join, Op2::Meet];

    pub fn name(self) -> &'static str {
        match self {
            Op2::Imp => "imp",
            Op2::Oplus => "oplus",
            Op2::Odot => "odot",
            Op2::Join => "join",
            Op2::Meet => "meet",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Op2::Imp => "→",
            Op2::Oplus => "⊕",
            Op2::Odot => "⊙",
            Op2::Join => "∨",
            Op2::Meet => "∧",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            Op2::Imp => 1,
            Op2::Oplus | Op2::Join => 2,
            Op2::Odot | Op2::Meet => 3,
        }
    }

    fn connective(self) -> BinaryConnective {
        match self {
            Op2::Imp => BinaryConnective::ToL,
            Op2::Oplus => BinaryConnective::Oplus,
            Op2::Odot => BinaryConnective::Odot,
            Op2::Join => BinaryConnective::Or,
            Op2::Meet => BinaryConnective::And,
        }
    }
}

impl Constant {
    pub const ALL: [Constant; 2] = [Constant::Zero, Constant::One];

    pub fn name(self) -> &'static str {
        match self {
            Constant::Zero => "zero",
            Constant::One => "one",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Constant::Zero => "0",
            Constant::One => "1",
        }
    }
}

/// One operation table of a structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Slot {
    Unary(Op1),
    Binary(Op2),
    Constant(Constant),
}

impl Slot {
    pub fn name(self) -> &'static str {
        match self {
            Slot::Unary(o) => o.name(),
            Slot::Binary(o) => o.name(),
            Slot::Constant(c) => c.name(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Slot::Unary(o) => o.symbol(),
            Slot::Binary(o) => o.symbol(),
            Slot::Constant(c) => c.symbol(),
        }
    }

    fn all() -> impl Iterator<Item = Slot> {
        Op2::ALL
            .into_iter()
            .map(Slot::Binary)
            .chain(Op1::ALL.into_iter().map(Slot::Unary))
            .chain(Constant::ALL.into_iter().map(Slot::Constant))
    }
}

impl FromStr for Slot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slot> {
        Slot::all()
            .find(|slot| slot.name() == s)
            .ok_or_else(|| Error::Algebra(format!("unknown operation '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Signature {
    /// `⟨A, →, ¬, ∼, 1⟩`
    Bzw,
    /// `⟨A, ⊕, ¬, ∼, 0⟩`
    Bzmv,
    /// `⟨A, ⊕, ¬, 0⟩`
    Mv,
    /// `⟨A, →, ¬, 1⟩`
    Wajsberg,
    /// Chang's original `⟨A, ⊕, ⊙, ∨, ∧, ¬, 0, 1⟩`.
    Chang,
    /// `⟨A, ∨, ∧, ¬, ∼, 0⟩`
    BzLattice,
}

impl Signature {
    pub const ALL: [Signature; 6] = [
        Signature::Bzw,
        Signature::Bzmv,
        Signature::Mv,
        Signature::Wajsberg,
        Signature::Chang,
        Signature::BzLattice,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Signature::Bzw => "bzw",
            Signature::Bzmv => "bzmv",
            Signature::Mv => "mv",
            Signature::Wajsberg => "wajsberg",
            Signature::Chang => "chang",
            Signature::BzLattice => "bz-lattice",
        }
    }

    pub fn primitives(self) -> &'static [Slot] {
        use Slot::*;
        match self {
            Signature::Bzw => &[
                Binary(Op2::Imp),
                Unary(Op1::Neg),
                Unary(Op1::Sim),
                Constant(self::Constant::One),
            ],
            Signature::Bzmv => &[
                Binary(Op2::Oplus),
                Unary(Op1::Neg),
                Unary(Op1::Sim),
                Constant(self::Constant::Zero),
            ],
            Signature::Mv => &[
                Binary(Op2::Oplus),
                Unary(Op1::Neg),
                Constant(self::Constant::Zero),
            ],
            Signature::Wajsberg => &[
                Binary(Op2::Imp),
                Unary(Op1::Neg),
                Constant(self::Constant::One),
            ],
            Signature::Chang => &[
                Binary(Op2::Oplus),
                Binary(Op2::Odot),
                Binary(Op2::Join),
                Binary(Op2::Meet),
                Unary(Op1::Neg),
                Constant(self::Constant::Zero),
                Constant(self::Constant::One),
            ],
            Signature::BzLattice => &[
                Binary(Op2::Join),
                Binary(Op2::Meet),
                Unary(Op1::Neg),
                Unary(Op1::Sim),
                Constant(self::Constant::Zero),
            ],
        }
    }

    /// Definitions of the non-primitive operations, applied in order.
    fn derived(self) -> Vec<(Slot, &'static str)> {
        use Slot::*;
        let mut defs = match self {
            Signature::Bzw | Signature::Wajsberg => vec![
                (Constant(self::Constant::Zero), "¬1"),
                (Binary(Op2::Join), "(x → y) → y"),
                (Binary(Op2::Meet), "¬((¬x → ¬y) → ¬y)"),
                (Binary(Op2::Oplus), "¬x → y"),
                (Binary(Op2::Odot), "¬(x → ¬y)"),
            ],
            Signature::Bzmv | Signature::Mv => vec![
                (Constant(self::Constant::One), "¬0"),
                (Binary(Op2::Imp), "¬x ⊕ y"),
                (Binary(Op2::Odot), "¬(¬x ⊕ ¬y)"),
                (Binary(Op2::Join), "¬(¬x ⊕ y) ⊕ y"),
                (Binary(Op2::Meet), "¬(¬(x ⊕ ¬y) ⊕ ¬y)"),
            ],
            Signature::Chang => vec![(Binary(Op2::Imp), "¬x ⊕ y")],
            Signature::BzLattice => vec![(Constant(self::Constant::One), "¬0")],
        };
        if self.primitives().contains(&Unary(Op1::Sim)) {
            defs.extend([
                (Unary(Op1::Nec), "∼¬x"),
                (Unary(Op1::Poss), "¬□¬x"),
                (Unary(Op1::Flat), "¬∼¬x"),
            ]);
        }
        defs
    }

    /// The axiom sets a structure of this signature is expected to satisfy.
    pub fn expected_sets(self) -> &'static [AxiomSet] {
        use AxiomSet::*;
        const BZ: [AxiomSet; 7] = [
            AxiomSet::Lattice,
            AxiomSet::Kleene,
            AxiomSet::Brouwer,
            AxiomSet::Interconnection,
            AxiomSet::AntiIntuitionistic,
            AxiomSet::Modal,
            AxiomSet::WeakConsecutio,
        ];
        match self {
            Signature::Bzw => &[
                Bzw,
                BzwDeMorgan,
                Wajsberg,
                Lattice,
                Kleene,
                Brouwer,
                Interconnection,
                AntiIntuitionistic,
                Modal,
                WeakConsecutio,
            ],
            Signature::Bzmv => &[
                Bzmv,
                Mv,
                Lattice,
                Kleene,
                Brouwer,
                Interconnection,
                AntiIntuitionistic,
                Modal,
                WeakConsecutio,
            ],
            Signature::Mv => &[Mv, Chang, Lattice, Kleene],
            Signature::Wajsberg => &[Wajsberg, Mv, Lattice, Kleene],
            Signature::Chang => &[Chang, Mv, Lattice, Kleene],
            Signature::BzLattice => &BZ,
        }
    }

    /// The axiom set that defines the signature.
    pub fn defining_set(self) -> AxiomSet {
        match self {
            Signature::Bzw => AxiomSet::Bzw,
            Signature::Bzmv => AxiomSet::Bzmv,
            Signature::Mv => AxiomSet::Mv,
            Signature::Wajsberg => AxiomSet::Wajsberg,
            Signature::Chang => AxiomSet::Chang,
            Signature::BzLattice => AxiomSet::Lattice,
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Signature> {
        let lower = s.to_ascii_lowercase();
        Signature::ALL
            .into_iter()
            .find(|sig| {
                sig.name() == lower || (lower == "bzlattice" && *sig == Signature::BzLattice)
            })
            .ok_or_else(|| Error::Algebra(format!("unknown signature '{s}'")))
    }
}

// ---------------------------------------------------------------- terms

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    Const(Constant),
    Unary(Op1, Box<Term>),
    Binary(Op2, Box<Term>, Box<Term>),
}

impl Term {
    fn slots(&self, out: &mut Vec<Slot>) {
        let slot = match self {
            Term::Var(_) => return,
            Term::Const(c) => Slot::Constant(*c),
            Term::Unary(o, a) => {
                a.slots(out);
                Slot::Unary(*o)
            }
            Term::Binary(o, a, b) => {
                a.slots(out);
                b.slots(out);
                Slot::Binary(*o)
            }
        };
        if !out.contains(&slot) {
            out.push(slot);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Eq,
    Leq,
}

/// `lhs = rhs` or `lhs ≤ rhs`, universally quantified over `vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    pub lhs: Term,
    pub rhs: Term,
    pub relation: Relation,
    pub vars: Vec<char>,
}

impl Formula {
    /// Operations mentioned, plus `∧` for inequalities.
    pub fn slots(&self) -> Vec<Slot> {
        let mut out = Vec::new();
        self.lhs.slots(&mut out);
        self.rhs.slots(&mut out);
        if self.relation == Relation::Leq && !out.contains(&Slot::Binary(Op2::Meet)) {
            out.push(Slot::Binary(Op2::Meet));
        }
        out
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        let mut p = TermParser {
            chars: s.chars().collect(),
            pos: 0,
            vars: Vec::new(),
        };
        let lhs = p.expr(0)?;
        p.skip_ws();
        let relation = if p.eat("=") {
            Relation::Eq
        } else if p.eat("≤") || p.eat("<=") {
            Relation::Leq
        } else {
            return Err(p.error("expected '=' or '≤'"));
        };
        let rhs = p.expr(0)?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(p.error("trailing input"));
        }
        Ok(Formula {
            lhs,
            rhs,
            relation,
            vars: p.vars,
        })
    }
}

struct TermParser {
    chars: Vec<char>,
    pos: usize,
    vars: Vec<char>,
}

impl TermParser {
    fn error(&self, msg: &str) -> Error {
        let src: String = self.chars.iter().collect();
        Error::Algebra(format!("{msg} at column {} of '{src}'", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        let n = tok.chars().count();
        if self.chars.len() >= self.pos + n
            && tok
                .chars()
                .eq(self.chars[self.pos..self.pos + n].iter().copied())
        {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn peek_binary(&mut self) -> Option<(Op2, usize)> {
        self.skip_ws();
        const TOKENS: [(&str, Op2); 10] = [
            ("→", Op2::Imp),
            ("->", Op2::Imp),
            ("⊕", Op2::Oplus),
            ("+", Op2::Oplus),
            ("⊙", Op2::Odot),
            ("*", Op2::Odot),
            ("∨", Op2::Join),
            ("|", Op2::Join),
            ("∧", Op2::Meet),
            ("&", Op2::Meet),
        ];
        TOKENS.iter().find_map(|&(tok, op)| {
            let n = tok.chars().count();
            (self.chars.len() >= self.pos + n
                && tok
                    .chars()
                    .eq(self.chars[self.pos..self.pos + n].iter().copied()))
            .then_some((op, n))
        })
    }

    fn expr(&mut self, min_prec: u8) -> Result<Term> {
        let mut lhs = self.prefix()?;
        while let Some((op, len)) = self.peek_binary() {
            if op.precedence() < min_prec {
                break;
            }
            self.pos += len;
            let rhs = self.expr(op.precedence() + 1)?;
            lhs = Term::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Term> {
        self.skip_ws();
        let Some(&c) = self.chars.get(self.pos) else {
            return Err(self.error("unexpected end of term"));
        };
        let unary = match c {
            '¬' | '!' => Some(Op1::Neg),
            '∼' | '~' => Some(Op1::Sim),
            '♭' => Some(Op1::Flat),
            '□' => Some(Op1::Nec),
            '◇' => Some(Op1::Poss),
            _ => None,
        };
        if let Some(op) = unary {
            self.pos += 1;
            return Ok(Term::Unary(op, Box::new(self.prefix()?)));
        }
        self.pos += 1;
        match c {
            '(' | '[' => {
                let t = self.expr(0)?;
                self.skip_ws();
                let close = if c == '(' { ")" } else { "]" };
                if !self.eat(close) {
                    return Err(self.error(&format!("expected '{close}'")));
                }
                Ok(t)
            }
            '0' => Ok(Term::Const(Constant::Zero)),
            '1' => Ok(Term::Const(Constant::One)),
            'x' | 'y' | 'z' | 'u' | 'w' => {
                let i = match self.vars.iter().position(|&v| v == c) {
                    Some(i) => i,
                    None => {
                        self.vars.push(c);
                        self.vars.len() - 1
                    }
                };
                Ok(Term::Var(i))
            }
            _ => {
                self.pos -= 1;
                Err(self.error(&format!("unexpected '{c}'")))
            }
        }
    }
}

// ----------------------------------------------------------- structures

/// A finite algebra: a carrier `{0, ..., size-1}` with display labels and
/// every operation table the signature provides or derives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteStructure {
    signature: Signature,
    labels: Vec<String>,
    unary: [Option<Vec<u8>>; 5],
    binary: [Option<Vec<u8>>; 5],
    constants: [Option<u8>; 2],
}

impl FiniteStructure {
    /// Builds a structure from its primitive tables; binary tables are
    /// row-major (`table[x * size + y]`). Derived operations are filled in.
    pub fn new(
        signature: Signature,
        labels: Vec<String>,
        tables: Vec<(Slot, Vec<u8>)>,
    ) -> Result<Self> {
        let size = labels.len();
        if size == 0 || size > 255 {
            return Err(Error::Algebra(format!(
                "carrier size {size} out of range 1..=255"
            )));
        }
        let mut s = FiniteStructure {
            signature,
            labels,
            unary: Default::default(),
            binary: Default::default(),
            constants: [None; 2],
        };
        for (slot, table) in tables {
            if !signature.primitives().contains(&slot) {
                return Err(Error::Algebra(format!(
                    "'{}' is not a primitive operation of {signature}",
                    slot.name()
                )));
            }
            let want = match slot {
                Slot::Unary(_) => size,
                Slot::Binary(_) => size * size,
                Slot::Constant(_) => 1,
            };
            if table.len() != want {
                return Err(Error::Algebra(format!(
                    "table '{}' has {} entries, expected {want}",
                    slot.name(),
                    table.len()
                )));
            }
            if let Some(&bad) = table.iter().find(|&&v| usize::from(v) >= size) {
                return Err(Error::Algebra(format!(
                    "table '{}' contains {bad}, outside the carrier of size {size}",
                    slot.name()
                )));
            }
            if s.table(slot).is_some() {
                return Err(Error::Algebra(format!(
                    "table '{}' given twice",
                    slot.name()
                )));
            }
            s.set(slot, table);
        }
        if let Some(missing) = signature
            .primitives()
            .iter()
            .find(|&&p| s.table(p).is_none())
        {
            return Err(Error::Algebra(format!(
                "{signature} structure is missing operation '{}'",
                missing.name()
            )));
        }
        s.materialize();
        Ok(s)
    }

    fn set(&mut self, slot: Slot, table: Vec<u8>) {
        match slot {
            Slot::Unary(o) => self.unary[o as usize] = Some(table),
            Slot::Binary(o) => self.binary[o as usize] = Some(table),
            Slot::Constant(c) => self.constants[c as usize] = Some(table[0]),
        }
    }

    fn materialize(&mut self) {
        for (slot, def) in self.signature.derived() {
            let f: Formula = format!("{def} = 0")
                .parse()
                .expect("derived definitions parse");
            let n = self.size();
            let table: Vec<u8> = match slot {
                Slot::Constant(_) => vec![self.eval(&f.lhs, &[])],
                Slot::Unary(_) => (0..n as u8).map(|a| self.eval(&f.lhs, &[a])).collect(),
                Slot::Binary(_) => (0..n as u8)
                    .flat_map(|a| (0..n as u8).map(move |b| (a, b)))
                    .map(|(a, b)| self.eval(&f.lhs, &[a, b]))
                    .collect(),
            };
            self.set(slot, table);
        }
    }

    /// `L_d` with the Łukasiewicz connectives filling the signature's tables.
    pub fn standard_model(d: u32, signature: Signature) -> Result<Self> {
        let d = check_arity(d)?;
        let top = d - 1;
        let labels = (0..d).map(|k| Value::from_raw(k, d).to_string()).collect();
        let tables = signature
            .primitives()
            .iter()
            .map(|&slot| {
                let t = match slot {
                    Slot::Unary(o) => (0..d).map(|x| o.connective().eval_level(x, top)).collect(),
                    Slot::Binary(o) => (0..d)
                        .flat_map(|x| (0..d).map(move |y| o.connective().eval_level(x, y, top)))
                        .collect(),
                    Slot::Constant(Constant::Zero) => vec![0],
                    Slot::Constant(Constant::One) => vec![top],
                };
                (slot, t)
            })
            .collect();
        FiniteStructure::new(signature, labels, tables)
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: u8) -> &str {
        &self.labels[e as usize]
    }

    /// Index of the element with the given label.
    pub fn element(&self, label: &str) -> Option<u8> {
        self.labels.iter().position(|l| l == label).map(|i| i as u8)
    }

    /// The table of an operation, if the structure has it (a constant is a
    /// one-entry table).
    pub fn table(&self, slot: Slot) -> Option<&[u8]> {
        match slot {
            Slot::Unary(o) => self.unary[o as usize].as_deref(),
            Slot::Binary(o) => self.binary[o as usize].as_deref(),
            Slot::Constant(c) => self.constants[c as usize]
                .as_ref()
                .map(std::slice::from_ref),
        }
    }

    /// The primitive tables in signature order.
    pub fn primitive_tables(&self) -> Vec<(Slot, Vec<u8>)> {
        self.signature
            .primitives()
            .iter()
            .map(|&slot| {
                (
                    slot,
                    self.table(slot).expect("primitives are present").to_vec(),
                )
            })
            .collect()
    }

    pub fn constant(&self, c: Constant) -> u8 {
        self.constants[c as usize].expect("every signature derives both constants")
    }

    /// Panics if the structure has no such operation.
    pub fn apply1(&self, op: Op1, a: u8) -> u8 {
        self.unary[op as usize]
            .as_ref()
            .unwrap_or_else(|| panic!("no operation {}", op.name()))[a as usize]
    }

    /// Panics if the structure has no such operation.
    pub fn apply2(&self, op: Op2, a: u8, b: u8) -> u8 {
        let t = self.binary[op as usize]
            .as_ref()
            .unwrap_or_else(|| panic!("no operation {}", op.name()));
        t[a as usize * self.size() + b as usize]
    }

    /// `a ≤ b` iff `a ∧ b = a`.
    pub fn leq(&self, a: u8, b: u8) -> bool {
        self.apply2(Op2::Meet, a, b) == a
    }

    fn eval(&self, t: &Term, env: &[u8]) -> u8 {
        match t {
            Term::Var(i) => env[*i],
            Term::Const(c) => self.constant(*c),
            Term::Unary(o, a) => self.apply1(*o, self.eval(a, env)),
            Term::Binary(o, a, b) => self.apply2(*o, self.eval(a, env), self.eval(b, env)),
        }
    }

    fn require(&self, slots: &[Slot], context: &str) -> Result<()> {
        match slots.iter().find(|&&s| self.table(s).is_none()) {
            Some(s) => Err(Error::Algebra(format!(
                "{context}: operation {} is not available in a {} structure",
                s.symbol(),
                self.signature
            ))),
            None => Ok(()),
        }
    }

    /// Evaluates a term given as text under an assignment of its variables in
    /// order of first appearance.
    pub fn evaluate(&self, term: &str, env: &[u8]) -> Result<u8> {
        let f: Formula = format!("{term} = 0").parse()?;
        self.require(&f.slots(), term)?;
        if env.len() != f.vars.len() || env.iter().any(|&e| usize::from(e) >= self.size()) {
            return Err(Error::Algebra(format!("bad assignment for '{term}'")));
        }
        Ok(self.eval(&f.lhs, env))
    }

    /// Checks one formula over every assignment of its variables.
    pub fn check(&self, name: &str, statement: &str) -> Result<AxiomResult> {
        let f: Formula = statement.parse()?;
        self.require(&f.slots(), name)?;
        let n = self.size();
        let k = f.vars.len();
        let mut env = vec![0u8; k];
        for idx in 0..n.pow(k as u32) {
            let mut r = idx;
            for slot in env.iter_mut().rev() {
                *slot = (r % n) as u8;
                r /= n;
            }
            let (a, b) = (self.eval(&f.lhs, &env), self.eval(&f.rhs, &env));
            let ok = match f.relation {
                Relation::Eq => a == b,
                Relation::Leq => self.leq(a, b),
            };
            if !ok {
                let assignment = f
                    .vars
                    .iter()
                    .zip(&env)
                    .map(|(v, &e)| (v.to_string(), self.label(e).to_string()))
                    .collect();
                return Ok(AxiomResult::fail(
                    name,
                    statement,
                    Counterexample {
                        assignment,
                        lhs: self.label(a).into(),
                        rhs: self.label(b).into(),
                    },
                ));
            }
        }
        Ok(AxiomResult::pass(name, statement))
    }

    /// Checks every axiom of a set.
    pub fn check_axioms(&self, set: AxiomSet) -> Result<AxiomReport> {
        let results = set
            .axioms()
            .iter()
            .map(|&(name, text)| self.check(name, text))
            .collect::<Result<Vec<_>>>()?;
        Ok(AxiomReport {
            set: set.name().into(),
            results,
        })
    }

    /// Every set in [`Signature::expected_sets`].
    pub fn check_expected(&self) -> Result<Vec<AxiomReport>> {
        self.signature
            .expected_sets()
            .iter()
            .map(|&s| self.check_axioms(s))
            .collect()
    }

    /// Renders the structure in the `mvalg` text format.
    pub fn to_mvalg(&self) -> String {
        let mut out = format!(
            "mvalg 1\nsignature {}\nsize {}\n",
            self.signature,
            self.size()
        );
        out.push_str(&format!("labels {}\n", self.labels.join(" ")));
        let join = |v: &[u8]| v.iter().map(u8::to_string).collect::<Vec<_>>().join(" ");
        for (slot, t) in self.primitive_tables() {
            match slot {
                Slot::Constant(c) => out.push_str(&format!("const {} {}\n", c.name(), t[0])),
                Slot::Unary(o) => out.push_str(&format!("unary {} {}\n", o.name(), join(&t))),
                Slot::Binary(o) => {
                    out.push_str(&format!("binary {}\n", o.name()));
                    for row in t.chunks(self.size()) {
                        out.push_str(&join(row));
                        out.push('\n');
                    }
                }
            }
        }
        out
    }

    /// Parses the `mvalg` text format: a `mvalg 1` header, `signature`,
    /// `size`, optional `labels`, then `const NAME v`, `unary NAME v...` and
    /// `binary NAME v...` (row-major) entries. `#` starts a comment.
    pub fn parse_mvalg(text: &str) -> Result<Self> {
        let tokens: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .flat_map(|(i, l)| {
                l.split('#')
                    .next()
                    .unwrap_or("")
                    .split_whitespace()
                    .map(move |t| (i + 1, t))
            })
            .collect();
        let mut it = tokens.into_iter().peekable();
        let last_line = text.lines().count().max(1);
        let mut next = |what: &str| {
            it.next().ok_or_else(|| Error::Parse {
                line: last_line,
                msg: format!("expected {what}"),
            })
        };
        let header = [next("'mvalg'")?, next("version")?];
        if header[0].1 != "mvalg" || header[1].1 != "1" {
            return Err(Error::Parse {
                line: header[0].0,
                msg: "expected header 'mvalg 1'".into(),
            });
        }
        let mut signature = None;
        let mut size: Option<usize> = None;
        let mut labels = None;
        let mut tables = Vec::new();
        let parse_num = |(line, t): (usize, &str), bound: usize| -> Result<usize> {
            t.parse::<usize>()
                .ok()
                .filter(|&v| v < bound)
                .ok_or_else(|| Error::Parse {
                    line,
                    msg: format!("expected a number below {bound}, got '{t}'"),
                })
        };
        while let Ok((line, kw)) = next("keyword") {
            let need_size = || {
                size.ok_or(Error::Parse {
                    line,
                    msg: "'size' must come first".into(),
                })
            };
            match kw {
                "signature" => {
                    let (l, s) = next("signature name")?;
                    signature = Some(s.parse::<Signature>().map_err(|e| Error::Parse {
                        line: l,
                        msg: e.to_string(),
                    })?);
                }
                "size" => size = Some(parse_num(next("size")?, 256)?),
                "labels" => {
                    let n = need_size()?;
                    labels = Some(
                        (0..n)
                            .map(|_| next("label").map(|t| t.1.to_string()))
                            .collect::<Result<Vec<_>>>()?,
                    );
                }
                "const" | "unary" | "binary" => {
                    let n = need_size()?;
                    let (l, name) = next("operation name")?;
                    let slot: Slot = name.parse().map_err(|e: Error| Error::Parse {
                        line: l,
                        msg: e.to_string(),
                    })?;
                    let count = match (kw, slot) {
                        ("const", Slot::Constant(_)) => 1,
                        ("unary", Slot::Unary(_)) => n,
                        ("binary", Slot::Binary(_)) => n * n,
                        _ => {
                            return Err(Error::Parse {
                                line: l,
                                msg: format!("'{name}' is not a {kw} operation"),
                            })
                        }
                    };
                    let t = (0..count)
                        .map(|_| parse_num(next("table entry")?, n).map(|v| v as u8))
                        .collect::<Result<Vec<_>>>()?;
                    tables.push((slot, t));
                }
                other => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("unknown keyword '{other}'"),
                    })
                }
            }
        }
        let signature = signature.ok_or(Error::Parse {
            line: 1,
            msg: "missing 'signature'".into(),
        })?;
        let size = size.ok_or(Error::Parse {
            line: 1,
            msg: "missing 'size'".into(),
        })?;
        let labels = labels.unwrap_or_else(|| (0..size).map(|i| i.to_string()).collect());
        FiniteStructure::new(signature, labels, tables)
    }
}

impl fmt::Display for FiniteStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_mvalg())
    }
}

impl FromStr for FiniteStructure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FiniteStructure::parse_mvalg(s)
    }
}

impl Serialize for FiniteStructure {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let tables: std::collections::BTreeMap<&str, Vec<u8>> = Slot::all()
            .filter_map(|s| self.table(s).map(|t| (s.name(), t.to_vec())))
            .collect();
        let mut st = serializer.serialize_struct("FiniteStructure", 3)?;
        st.serialize_field("signature", self.signature.name())?;
        st.serialize_field("labels", &self.labels)?;
        st.serialize_field("tables", &tables)?;
        st.end()
    }
}

// -------------------------------------------------------------- axioms

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// `(variable, element label)` pairs.
    pub assignment: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub name: String,
    pub statement: String,
    pub holds: bool,
    /// The first failing assignment in lexicographic order.
    pub counterexample: Option<Counterexample>,
}

impl AxiomResult {
    fn pass(name: &str, statement: &str) -> Self {
        AxiomResult {
            name: name.into(),
            statement: statement.into(),
            holds: true,
            counterexample: None,
        }
    }

    fn fail(name: &str, statement: &str, c: Counterexample) -> Self {
        AxiomResult {
            name: name.into(),
            statement: statement.into(),
            holds: false,
            counterexample: Some(c),
        }
    }

    fn from_elements(
        name: &str,
        statement: &str,
        s: &FiniteStructure,
        bad: Option<Vec<(&str, u8)>>,
    ) -> Self {
        match bad {
            None => AxiomResult::pass(name, statement),
            Some(v) => AxiomResult::fail(
                name,
                statement,
                Counterexample {
                    assignment: v
                        .into_iter()
                        .map(|(k, e)| (k.to_string(), s.label(e).to_string()))
                        .collect(),
                    lhs: String::new(),
                    rhs: String::new(),
                },
            ),
        }
    }
}

impl fmt::Display for AxiomResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}",
            self.name,
            if self.holds { "pass" } else { "FAIL" }
        )?;
        if let Some(c) = &self.counterexample {
            let a: Vec<String> = c
                .assignment
                .iter()
                .map(|(v, e)| format!("{v}={e}"))
                .collect();
            write!(f, " at {}", a.join(", "))?;
            if !c.lhs.is_empty() {
                write!(f, " (lhs {}, rhs {})", c.lhs, c.rhs)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub set: String,
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.results.iter().all(|r| r.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.results.iter().filter(|r| !r.holds)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AxiomSet {
    /// BZW1–BZW4.
    Wajsberg,
    /// BZW1–BZW7.
    Bzw,
    /// BZW1–BZW6 with BZW7′ in place of BZW7.
    BzwDeMorgan,
    Bzmv,
    /// Mangani's P1–P5.
    Mv,
    /// C1–C11′.
    Chang,
    /// Bounded distributive lattice laws for `∨`, `∧`, `0`, `1`.
    Lattice,
    /// K1–K3.
    Kleene,
    /// B1–B3.
    Brouwer,
    /// `¬∼x = ∼∼x`.
    Interconnection,
    /// AB1–AB3.
    AntiIntuitionistic,
    /// T, S4, B and S5 principles plus the modal identities.
    Modal,
    /// `¬x → □◇x = □◇x`.
    WeakConsecutio,
    /// `(¬x → x) → x = 1`, which fails in general.
    StrongConsecutio,
}

impl AxiomSet {
    pub const ALL: [AxiomSet; 14] = [
        AxiomSet::Wajsberg,
        AxiomSet::Bzw,
        AxiomSet::BzwDeMorgan,
        AxiomSet::Bzmv,
        AxiomSet::Mv,
        AxiomSet::Chang,
        AxiomSet::Lattice,
        AxiomSet::Kleene,
        AxiomSet::Brouwer,
        AxiomSet::Interconnection,
        AxiomSet::AntiIntuitionistic,
        AxiomSet::Modal,
        AxiomSet::WeakConsecutio,
        AxiomSet::StrongConsecutio,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomSet::Wajsberg => "wajsberg",
            AxiomSet::Bzw => "bzw",
            AxiomSet::BzwDeMorgan => "bzw-dm",
            AxiomSet::Bzmv => "bzmv",
            AxiomSet::Mv => "mv",
            AxiomSet::Chang => "chang",
            AxiomSet::Lattice => "lattice",
            AxiomSet::Kleene => "kleene",
            AxiomSet::Brouwer => "brouwer",
            AxiomSet::Interconnection => "interconnection",
            AxiomSet::AntiIntuitionistic => "anti-intuitionistic",
            AxiomSet::Modal => "modal",
            AxiomSet::WeakConsecutio => "weak-consecutio",
            AxiomSet::StrongConsecutio => "strong-consecutio",
        }
    }

    /// `(name, statement)` pairs.
    pub fn axioms(self) -> &'static [(&'static str, &'static str)] {
        const BZW_BASE: [(&str, &str); 6] = [
            ("BZW1", "1 → x = x"),
            ("BZW2", "(x → y) → ((y → z) → (x → z)) = 1"),
            ("BZW3", "(x → y) → y = (y → x) → x"),
            ("BZW4", "(¬x → ¬y) → (y → x) = 1"),
            ("BZW5", "¬∼x → ∼∼x = 1"),
            ("BZW6", "(¬x → ∼∼x) → ∼∼x = 1"),
        ];
        const BZW7: (&str, &str) = ("BZW7", "¬∼((x → y) → y) = (¬∼x → ∼∼y) → ∼∼y");
        const BZW7DM: (&str, &str) = ("BZW7′", "∼¬[(¬x → ¬y) → ¬y] = (¬∼∼x → ¬∼∼y) → ¬∼∼y");
        const BZW: [(&str, &str); 7] = [
            BZW_BASE[0],
            BZW_BASE[1],
            BZW_BASE[2],
            BZW_BASE[3],
            BZW_BASE[4],
            BZW_BASE[5],
            BZW7,
        ];
        const BZW_DM: [(&str, &str); 7] = [
            BZW_BASE[0],
            BZW_BASE[1],
            BZW_BASE[2],
            BZW_BASE[3],
            BZW_BASE[4],
            BZW_BASE[5],
            BZW7DM,
        ];
        match self {
            AxiomSet::Wajsberg => &BZW_BASE[..4],
            AxiomSet::Bzw => &BZW,
            AxiomSet::BzwDeMorgan => &BZW_DM,
            AxiomSet::Bzmv => &[
                ("BZMV1", "(x ⊕ y) ⊕ z = (y ⊕ z) ⊕ x"),
                ("BZMV2", "x ⊕ 0 = x"),
                ("BZMV3", "¬(¬x) = x"),
                ("BZMV4", "¬(¬x ⊕ y) ⊕ y = ¬(x ⊕ ¬y) ⊕ x"),
                ("BZMV5", "∼x ⊕ ∼∼x = ¬0"),
                ("BZMV6", "x ⊕ ∼∼x = ∼∼x"),
                ("BZMV7", "¬∼[(¬(¬x ⊕ y) ⊕ y)] = ¬(∼x ⊕ ∼∼y) ⊕ ∼∼y"),
            ],
            AxiomSet::Mv => &[
                ("P1", "(x ⊕ y) ⊕ z = (y ⊕ z) ⊕ x"),
                ("P2", "x ⊕ 0 = x"),
                ("P3", "x ⊕ ¬0 = ¬0"),
                ("P4", "¬(¬0) = 0"),
                ("P5", "¬(¬x ⊕ y) ⊕ y = ¬(x ⊕ ¬y) ⊕ x"),
            ],
            AxiomSet::Chang => &[
                ("C1", "x ⊕ y = y ⊕ x"),
                ("C1′", "x ⊙ y = y ⊙ x"),
                ("C2", "x ⊕ (y ⊕ z) = (x ⊕ y) ⊕ z"),
                ("C2′", "x ⊙ (y ⊙ z) = (x ⊙ y) ⊙ z"),
                ("C3", "x ⊕ ¬x = 1"),
                ("C3′", "x ⊙ ¬x = 0"),
                ("C4", "x ⊕ 1 = 1"),
                ("C4′", "x ⊙ 0 = 0"),
                ("C5", "x ⊕ 0 = x"),
                ("C5′", "x ⊙ 1 = x"),
                ("C6", "¬(x ⊕ y) = ¬x ⊙ ¬y"),
                ("C6′", "¬(x ⊙ y) = ¬x ⊕ ¬y"),
                ("C7", "¬(¬x) = x"),
                ("C8", "¬0 = 1"),
                ("C9", "x ∨ y = y ∨ x"),
                ("C9′", "x ∧ y = y ∧ x"),
                ("C10", "x ∨ (y ∨ z) = (x ∨ y) ∨ z"),
                ("C10′", "x ∧ (y ∧ z) = (x ∧ y) ∧ z"),
                ("C11", "x ⊕ (y ∧ z) = (x ⊕ y) ∧ (x ⊕ z)"),
                ("C11′", "x ⊙ (y ∨ z) = (x ⊙ y) ∨ (x ⊙ z)"),
            ],
            AxiomSet::Lattice => &[
                ("join-commutative", "x ∨ y = y ∨ x"),
                ("meet-commutative", "x ∧ y = y ∧ x"),
                ("join-associative", "x ∨ (y ∨ z) = (x ∨ y) ∨ z"),
                ("meet-associative", "x ∧ (y ∧ z) = (x ∧ y) ∧ z"),
                ("join-absorption", "x ∨ (x ∧ y) = x"),
                ("meet-absorption", "x ∧ (x ∨ y) = x"),
                ("meet-distributive", "x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)"),
                ("join-distributive", "x ∨ (y ∧ z) = (x ∨ y) ∧ (x ∨ z)"),
                ("bottom", "0 ≤ x"),
                ("top", "x ≤ 1"),
            ],
            AxiomSet::Kleene => &[
                ("K1", "¬(¬x) = x"),
                ("K2", "¬(x ∨ y) = ¬x ∧ ¬y"),
                ("K3", "x ∧ ¬x ≤ y ∨ ¬y"),
            ],
            AxiomSet::Brouwer => &[
                ("B1", "x ∧ ∼∼x = x"),
                ("B2", "∼(x ∨ y) = ∼x ∧ ∼y"),
                ("B3", "x ∧ ∼x = 0"),
            ],
            AxiomSet::Interconnection => &[("in", "¬∼x = ∼∼x")],
            AxiomSet::AntiIntuitionistic => &[
                ("AB1", "♭♭x ≤ x"),
                ("AB2", "♭x ∨ ♭y = ♭(x ∧ y)"),
                ("AB3", "x ∨ ♭x = 1"),
            ],
            AxiomSet::Modal => &[
                ("T-nec", "□x ≤ x"),
                ("T-poss", "x ≤ ◇x"),
                ("S4-nec", "□(□x) = □x"),
                ("S4-poss", "◇(◇x) = ◇x"),
                ("B", "x ≤ □(◇x)"),
                ("S5-poss", "◇x = □(◇x)"),
                ("S5-nec", "□x = ◇(□x)"),
                ("poss-is-neg-sim", "◇x = ¬∼x"),
                ("nec-poss-is-sim-sim", "□(◇x) = ∼∼x"),
                ("sim-is-nec-neg", "∼x = □(¬x)"),
                ("sim-is-neg-poss", "∼x = ¬(◇x)"),
                ("flat-is-neg-nec", "♭x = ¬(□x)"),
                ("flat-is-poss-neg", "♭x = ◇(¬x)"),
            ],
            AxiomSet::WeakConsecutio => &[("weak-consecutio", "¬x → □(◇x) = □(◇x)")],
            AxiomSet::StrongConsecutio => &[("strong-consecutio", "(¬x → x) → x = 1")],
        }
    }
}

impl fmt::Display for AxiomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<AxiomSet> {
        let lower = s.to_ascii_lowercase();
        AxiomSet::ALL
            .into_iter()
            .find(|a| a.name() == lower)
            .ok_or_else(|| Error::Algebra(format!("unknown axiom set '{s}'")))
    }
}

/// Checks `set` on `s`.
pub fn check_axioms(s: &FiniteStructure, set: AxiomSet) -> Result<AxiomReport> {
    s.check_axioms(set)
}

pub fn standard_model(d: u32, signature: Signature) -> Result<FiniteStructure> {
    FiniteStructure::standard_model(d, signature)
}

fn require_set(s: &FiniteStructure, set: AxiomSet) -> Result<()> {
    let report = s.check_axioms(set)?;
    let failure = report.failures().next().map(|f| f.to_string());
    match failure {
        Some(f) => Err(Error::Algebra(format!(
            "{} is not a {} algebra: {f}",
            s.signature, set
        ))),
        None => Ok(()),
    }
}

fn elements(s: &FiniteStructure) -> impl Iterator<Item = u8> + Clone {
    0..s.size() as u8
}

// ------------------------------------------------------ derived lattice

/// The BZ lattice `⟨A, ∨, ∧, ¬, ∼, 0⟩` induced by a BZW or BZMV algebra,
/// together with the lattice, Kleene, Brouwer and interconnection checks and
/// the agreement of `x → y = 1` with the lattice order.
pub fn derived_lattice(s: &FiniteStructure) -> Result<(FiniteStructure, AxiomReport)> {
    match s.signature {
        Signature::Bzw | Signature::Bzmv => require_set(s, s.signature.defining_set())?,
        other => {
            return Err(Error::Algebra(format!(
                "derived lattice needs a BZW or BZMV algebra, got {other}"
            )))
        }
    }
    let tables = Signature::BzLattice
        .primitives()
        .iter()
        .map(|&slot| (slot, s.table(slot).expect("derived").to_vec()))
        .collect();
    let lattice = FiniteStructure::new(Signature::BzLattice, s.labels.clone(), tables)?;
    let mut results = Vec::new();
    for set in [
        AxiomSet::Lattice,
        AxiomSet::Kleene,
        AxiomSet::Brouwer,
        AxiomSet::Interconnection,
    ] {
        results.extend(lattice.check_axioms(set)?.results);
    }
    let one = s.constant(Constant::One);
    let bad = elements(s)
        .flat_map(|x| elements(s).map(move |y| (x, y)))
        .find(|&(x, y)| (s.apply2(Op2::Imp, x, y) == one) != lattice.leq(x, y));
    results.push(AxiomResult::from_elements(
        "order",
        "x → y = 1 iff x ∧ y = x",
        s,
        bad.map(|(x, y)| vec![("x", x), ("y", y)]),
    ));
    Ok((
        lattice,
        AxiomReport {
            set: "derived-lattice".into(),
            results,
        },
    ))
}

/// The modal principles; `s` needs `¬` and `∼` (BZW, BZMV or a BZ lattice).
pub fn modal_theorems(s: &FiniteStructure) -> Result<AxiomReport> {
    s.check_axioms(AxiomSet::Modal)
}

// ----------------------------------------------------------- sharpness

/// The four kinds of exact elements, each as ascending element indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharpSets {
    /// `◇e = e`
    pub modal: Vec<u8>,
    /// `e ∧ ¬e = 0`
    pub kleene: Vec<u8>,
    /// `∼∼e = e`
    pub brouwer: Vec<u8>,
    /// `¬e → e = e`
    pub implicative: Vec<u8>,
}

impl SharpSets {
    pub fn all_equal(&self) -> bool {
        self.modal == self.kleene && self.kleene == self.brouwer && self.brouwer == self.implicative
    }
}

fn filter(s: &FiniteStructure, p: impl Fn(u8) -> bool) -> Vec<u8> {
    elements(s).filter(|&e| p(e)).collect()
}

pub fn sharp_sets(s: &FiniteStructure) -> Result<SharpSets> {
    s.require(
        &[Slot::Binary(Op2::Imp), Slot::Unary(Op1::Sim)],
        "sharp sets",
    )?;
    let zero = s.constant(Constant::Zero);
    Ok(SharpSets {
        modal: filter(s, |e| s.apply1(Op1::Poss, e) == e),
        kleene: filter(s, |e| s.apply2(Op2::Meet, e, s.apply1(Op1::Neg, e)) == zero),
        brouwer: filter(s, |e| s.apply1(Op1::Sim, s.apply1(Op1::Sim, e)) == e),
        implicative: filter(s, |e| s.apply2(Op2::Imp, s.apply1(Op1::Neg, e), e) == e),
    })
}

/// Relations among the sharp sets: `A∼ = A_M ⊆ A→ = A¬`, the alternative
/// characterizations of each set, and the closure and Boolean behaviour of
/// `A¬` and `A∼`. Equality of all four sets is reported as `all-equal`,
/// which is expected exactly for de Morgan algebras.
pub fn check_sharp(s: &FiniteStructure) -> Result<AxiomReport> {
    let sets = sharp_sets(s)?;
    let one = s.constant(Constant::One);
    let member = |set: &[u8], e: u8| set.binary_search(&e).is_ok();
    let first_diff = |a: &[u8], b: &[u8]| elements(s).find(|&e| member(a, e) != member(b, e));
    let mut results = Vec::new();
    let mut push = |name: &str, statement: &str, bad: Option<Vec<(&str, u8)>>| {
        results.push(AxiomResult::from_elements(name, statement, s, bad));
    };
    let one_elem = |e: Option<u8>| e.map(|e| vec![("e", e)]);

    push(
        "brouwer-eq-modal",
        "A∼ = A_M",
        one_elem(first_diff(&sets.brouwer, &sets.modal)),
    );
    push(
        "modal-in-implicative",
        "A_M ⊆ A→",
        one_elem(
            sets.modal
                .iter()
                .copied()
                .find(|&e| !member(&sets.implicative, e)),
        ),
    );
    push(
        "implicative-eq-kleene",
        "A→ = A¬",
        one_elem(first_diff(&sets.implicative, &sets.kleene)),
    );
    push(
        "all-equal",
        "A∼ = A_M = A→ = A¬",
        one_elem(first_diff(&sets.brouwer, &sets.kleene)),
    );

    let alt = [
        (
            "modal-by-nec",
            "A_M = {e : □e = e}",
            &sets.modal,
            filter(s, |e| s.apply1(Op1::Nec, e) == e),
        ),
        (
            "kleene-by-excluded-middle",
            "A¬ = {e : e ∨ ¬e = 1}",
            &sets.kleene,
            filter(s, |e| s.apply2(Op2::Join, e, s.apply1(Op1::Neg, e)) == one),
        ),
        (
            "kleene-by-oplus",
            "A¬ = {e : e ⊕ e = e}",
            &sets.kleene,
            filter(s, |e| s.apply2(Op2::Oplus, e, e) == e),
        ),
        (
            "kleene-by-odot",
            "A¬ = {e : e ⊙ e = e}",
            &sets.kleene,
            filter(s, |e| s.apply2(Op2::Odot, e, e) == e),
        ),
        (
            "brouwer-by-flat",
            "A∼ = {e : ♭♭e = e}",
            &sets.brouwer,
            filter(s, |e| s.apply1(Op1::Flat, s.apply1(Op1::Flat, e)) == e),
        ),
    ];
    for (name, statement, set, other) in alt {
        push(name, statement, one_elem(first_diff(set, &other)));
    }

    for (tag, set) in [("kleene", &sets.kleene), ("brouwer", &sets.brouwer)] {
        let pairs = || set.iter().flat_map(|&e| set.iter().map(move |&f| (e, f)));
        let closed = pairs()
            .find(|&(e, f)| {
                [
                    s.apply2(Op2::Oplus, e, f),
                    s.apply2(Op2::Odot, e, f),
                    s.apply1(Op1::Neg, e),
                    s.apply1(Op1::Sim, e),
                ]
                .iter()
                .any(|&r| !member(set, r))
            })
            .map(|(e, f)| vec![("e", e), ("f", f)]);
        push(&format!("{tag}-closed"), "closed under ⊕, ⊙, ¬, ∼", closed);
        let sums = pairs()
            .find(|&(e, f)| {
                s.apply2(Op2::Oplus, e, f) != s.apply2(Op2::Join, e, f)
                    || s.apply2(Op2::Odot, e, f) != s.apply2(Op2::Meet, e, f)
            })
            .map(|(e, f)| vec![("e", e), ("f", f)]);
        push(
            &format!("{tag}-sums-are-lattice"),
            "e ⊕ f = e ∨ f and e ⊙ f = e ∧ f",
            sums,
        );
    }
    push(
        "kleene-boolean",
        "e ∨ ¬e = 1 on A¬",
        one_elem(
            sets.kleene
                .iter()
                .copied()
                .find(|&e| s.apply2(Op2::Join, e, s.apply1(Op1::Neg, e)) != one),
        ),
    );
    push(
        "brouwer-negations-agree",
        "¬e = ∼e on A∼",
        one_elem(
            sets.brouwer
                .iter()
                .copied()
                .find(|&e| s.apply1(Op1::Neg, e) != s.apply1(Op1::Sim, e)),
        ),
    );
    Ok(AxiomReport {
        set: "sharp".into(),
        results,
    })
}

// ------------------------------------------------------------- rough sets

/// `r(x) = ⟨□x, ◇x⟩`.
pub fn rough_approximation(s: &FiniteStructure, x: u8) -> Result<(u8, u8)> {
    s.require(
        &[Slot::Unary(Op1::Nec), Slot::Unary(Op1::Poss)],
        "rough approximation",
    )?;
    if usize::from(x) >= s.size() {
        return Err(Error::Algebra(format!("element {x} outside the carrier")));
    }
    Ok((s.apply1(Op1::Nec, x), s.apply1(Op1::Poss, x)))
}

/// Inner/outer approximation properties, with best-approximation checked by
/// quantifying over every B-sharp element.
pub fn check_rough(s: &FiniteStructure) -> Result<AxiomReport> {
    s.require(
        &[Slot::Unary(Op1::Nec), Slot::Binary(Op2::Meet)],
        "rough approximation",
    )?;
    let sharp = filter(s, |e| s.apply1(Op1::Sim, s.apply1(Op1::Sim, e)) == e);
    let is_sharp = |e: u8| sharp.binary_search(&e).is_ok();
    let r = |x: u8| (s.apply1(Op1::Nec, x), s.apply1(Op1::Poss, x));
    let find = |p: &dyn Fn(u8) -> bool| elements(s).find(|&x| !p(x)).map(|x| vec![("x", x)]);
    let find_pair = |p: &dyn Fn(u8, u8) -> bool| {
        elements(s)
            .flat_map(|x| sharp.iter().map(move |&e| (x, e)))
            .find(|&(x, e)| !p(x, e))
            .map(|(x, e)| vec![("x", x), ("e", e)])
    };
    let results = vec![
        AxiomResult::from_elements("I1", "□x is B-sharp", s, find(&|x| is_sharp(r(x).0))),
        AxiomResult::from_elements("I2", "□x ≤ x", s, find(&|x| s.leq(r(x).0, x))),
        AxiomResult::from_elements(
            "I3",
            "e B-sharp and e ≤ x imply e ≤ □x",
            s,
            find_pair(&|x, e| !s.leq(e, x) || s.leq(e, r(x).0)),
        ),
        AxiomResult::from_elements("O1", "◇x is B-sharp", s, find(&|x| is_sharp(r(x).1))),
        AxiomResult::from_elements("O2", "x ≤ ◇x", s, find(&|x| s.leq(x, r(x).1))),
        AxiomResult::from_elements(
            "O3",
            "f B-sharp and x ≤ f imply ◇x ≤ f",
            s,
            find_pair(&|x, f| !s.leq(x, f) || s.leq(r(x).1, f)),
        ),
        AxiomResult::from_elements(
            "fixed",
            "e B-sharp iff r(e) = ⟨e, e⟩",
            s,
            find(&|e| is_sharp(e) == (r(e) == (e, e))),
        ),
    ];
    Ok(AxiomReport {
        set: "rough".into(),
        results,
    })
}

// ------------------------------------------------------------ translation

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    /// `x ⊕ y := ¬x → y`, `0 := ¬1`.
    BzwToBzmv,
    /// `x → y := ¬x ⊕ y`, `1 := ¬0`.
    BzmvToBzw,
    /// `⟨⊕, ¬, 0⟩` to `⟨→, ¬, 1⟩`.
    ChangToWajsberg,
    /// `⟨→, ¬, 1⟩` to `⟨⊕, ¬, 0⟩`.
    WajsbergToChang,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::BzwToBzmv,
        Direction::BzmvToBzw,
        Direction::ChangToWajsberg,
        Direction::WajsbergToChang,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Direction::BzwToBzmv => "bzw-to-bzmv",
            Direction::BzmvToBzw => "bzmv-to-bzw",
            Direction::ChangToWajsberg => "chang-to-wajsberg",
            Direction::WajsbergToChang => "wajsberg-to-chang",
        }
    }

    pub fn inverse(self) -> Direction {
        match self {
            Direction::BzwToBzmv => Direction::BzmvToBzw,
            Direction::BzmvToBzw => Direction::BzwToBzmv,
            Direction::ChangToWajsberg => Direction::WajsbergToChang,
            Direction::WajsbergToChang => Direction::ChangToWajsberg,
        }
    }

    fn sources(self) -> &'static [Signature] {
        match self {
            Direction::BzwToBzmv => &[Signature::Bzw],
            Direction::BzmvToBzw => &[Signature::Bzmv],
            Direction::ChangToWajsberg => &[Signature::Mv, Signature::Chang],
            Direction::WajsbergToChang => &[Signature::Wajsberg],
        }
    }

    fn target(self) -> Signature {
        match self {
            Direction::BzwToBzmv => Signature::Bzmv,
            Direction::BzmvToBzw => Signature::Bzw,
            Direction::ChangToWajsberg => Signature::Wajsberg,
            Direction::WajsbergToChang => Signature::Mv,
        }
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Direction> {
        Direction::ALL
            .into_iter()
            .find(|d| d.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Algebra(format!("unknown translation '{s}'")))
    }
}

/// Re-expresses `s` in the target signature. The source must satisfy its
/// defining axioms and the result is checked against the target's.
pub fn translate(s: &FiniteStructure, direction: Direction) -> Result<FiniteStructure> {
    if !direction.sources().contains(&s.signature) {
        return Err(Error::Algebra(format!(
            "{} cannot translate a {} structure",
            direction.name(),
            s.signature
        )));
    }
    require_set(s, s.signature.defining_set())?;
    let target = direction.target();
    // the source's materialized tables already hold the defining terms
    let tables = target
        .primitives()
        .iter()
        .map(|&slot| (slot, s.table(slot).expect("derived").to_vec()))
        .collect();
    let out = FiniteStructure::new(target, s.labels.clone(), tables)?;
    require_set(&out, target.defining_set())?;
    Ok(out)
}

// ------------------------------------------------------------- mutation

/// Counts single-cell mutations of the primitive tables of `s` caught by at
/// least one axiom of `sets`; returns `(caught, total)`.
pub fn mutation_sensitivity(s: &FiniteStructure, sets: &[AxiomSet]) -> Result<(usize, usize)> {
    let n = s.size() as u8;
    let base = s.primitive_tables();
    let mut caught = 0;
    let mut total = 0;
    for (i, (_, table)) in base.iter().enumerate() {
        for (cell, &orig) in table.iter().enumerate() {
            for v in (0..n).filter(|&v| v != orig) {
                let mut tables = base.clone();
                tables[i].1[cell] = v;
                let m = FiniteStructure::new(s.signature, s.labels.clone(), tables)?;
                total += 1;
                let mut failed = false;
                for &set in sets {
                    if !m.check_axioms(set)?.holds() {
                        failed = true;
                        break;
                    }
                }
                if failed {
                    caught += 1;
                }
            }
        }
    }
    Ok((caught, total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(d: u32, sig: Signature) -> FiniteStructure {
        FiniteStructure::standard_model(d, sig).unwrap()
    }

    #[test]
    fn parse_precedence() {
        let f: Formula = "x ⊕ y ∧ z → x = 1".parse().unwrap();
        let Term::Binary(Op2::Imp, lhs, _) = &f.lhs else {
            panic!("{f:?}")
        };
        assert!(matches!(**lhs, Term::Binary(Op2::Oplus, _, _)));
        assert_eq!(f.vars, vec!['x', 'y', 'z']);
        let g: Formula = "!~x -> y <= x | y & 0".parse().unwrap();
        assert_eq!(g.relation, Relation::Leq);
        assert!("x = ".parse::<Formula>().is_err());
        assert!("x ⊕ (y = x".parse::<Formula>().is_err());
        assert!("x ? y = x".parse::<Formula>().is_err());
    }

    #[test]
    fn standard_model_tables() {
        let s = model(3, Signature::Bzw);
        assert_eq!(s.constant(Constant::One), 2);
        assert_eq!(s.apply1(Op1::Neg, 1), 1);
        assert_eq!(s.apply1(Op1::Sim, 1), 0);
        assert_eq!(s.labels(), ["0", "1/2", "1"]);
        let mv = model(2, Signature::Mv);
        assert_eq!(mv.table(Slot::Binary(Op2::Oplus)).unwrap(), [0, 1, 1, 1]);
        let bzmv = model(4, Signature::Bzmv);
        assert_eq!(bzmv.table(Slot::Unary(Op1::Sim)).unwrap(), [3, 0, 0, 0]);
        assert!(FiniteStructure::standard_model(1, Signature::Bzw).is_err());
    }

    #[test]
    fn expected_sets_hold_on_standard_models() {
        for d in 2..=6 {
            for sig in Signature::ALL
                .into_iter()
                .filter(|&s| s != Signature::BzLattice)
            {
                for r in model(d, sig).check_expected().unwrap() {
                    assert!(
                        r.holds(),
                        "d={d} {sig} {}: {:?}",
                        r.set,
                        r.failures().next()
                    );
                }
            }
        }
    }

    #[test]
    fn missing_operation_is_an_error() {
        let mv = model(3, Signature::Mv);
        assert!(matches!(
            mv.check_axioms(AxiomSet::Brouwer),
            Err(Error::Algebra(_))
        ));
        assert!(sharp_sets(&mv).is_err());
    }

    #[test]
    fn strong_consecutio_fails_at_half() {
        let r = model(3, Signature::Bzw)
            .check_axioms(AxiomSet::StrongConsecutio)
            .unwrap();
        let c = r.results[0].counterexample.clone().unwrap();
        assert_eq!(c.assignment, vec![("x".to_string(), "1/2".to_string())]);
        assert_eq!(c.lhs, "1/2");
        assert!(model(2, Signature::Bzw)
            .check_axioms(AxiomSet::StrongConsecutio)
            .unwrap()
            .holds());
    }

    #[test]
    fn derived_lattice_is_min_max() {
        let s = model(3, Signature::Bzw);
        let (lat, report) = derived_lattice(&s).unwrap();
        assert!(report.holds());
        for x in 0..3u8 {
            for y in 0..3u8 {
                assert_eq!(lat.apply2(Op2::Join, x, y), x.max(y));
                assert_eq!(lat.apply2(Op2::Meet, x, y), x.min(y));
            }
        }
        assert_eq!(lat.constant(Constant::Zero), 0);
        assert!(modal_theorems(&lat).unwrap().holds());
        assert!(derived_lattice(&model(3, Signature::Mv)).is_err());
    }

    #[test]
    fn intuitionistic_behaviour() {
        for d in 3..=6u32 {
            let s = model(d, Signature::Bzw);
            let top = (d - 1) as u8;
            for x in 1..top {
                assert_ne!(s.evaluate("x ∨ ∼x", &[x]).unwrap(), top);
                assert_eq!(s.evaluate("x ∧ ∼x", &[x]).unwrap(), 0);
            }
        }
    }

    #[test]
    fn sharp_sets_standard() {
        let s = sharp_sets(&model(3, Signature::Bzw)).unwrap();
        assert!(s.all_equal());
        assert_eq!(s.kleene, vec![0, 2]);
        let b = sharp_sets(&model(2, Signature::Bzmv)).unwrap();
        assert_eq!(b.modal, vec![0, 1]);
        assert!(b.all_equal());
        for d in 2..=6 {
            assert!(check_sharp(&model(d, Signature::Bzw)).unwrap().holds());
        }
    }

    #[test]
    fn rough_pairs() {
        let s = model(3, Signature::Bzw);
        assert_eq!(rough_approximation(&s, 1).unwrap(), (0, 2));
        assert_eq!(rough_approximation(&s, 0).unwrap(), (0, 0));
        assert_eq!(rough_approximation(&s, 2).unwrap(), (2, 2));
        assert_eq!(
            rough_approximation(&model(5, Signature::Bzw), 1).unwrap(),
            (0, 4)
        );
        assert!(rough_approximation(&s, 3).is_err());
        assert!(check_rough(&model(5, Signature::Bzmv)).unwrap().holds());
    }

    #[test]
    fn translations_round_trip() {
        for d in 2..=5 {
            let bzw = model(d, Signature::Bzw);
            let bzmv = translate(&bzw, Direction::BzwToBzmv).unwrap();
            assert_eq!(bzmv, model(d, Signature::Bzmv));
            assert_eq!(translate(&bzmv, Direction::BzmvToBzw).unwrap(), bzw);
        }
        let mv = model(4, Signature::Mv);
        let w = translate(&mv, Direction::ChangToWajsberg).unwrap();
        assert_eq!(w, model(4, Signature::Wajsberg));
        assert_eq!(translate(&w, Direction::WajsbergToChang).unwrap(), mv);
        assert!(translate(&mv, Direction::BzwToBzmv).is_err());
    }

    #[test]
    fn broken_source_is_rejected() {
        let mut tables = model(3, Signature::Mv).primitive_tables();
        tables[0].1[4] = 0;
        let bad = FiniteStructure::new(
            Signature::Mv,
            vec!["a".into(), "b".into(), "c".into()],
            tables,
        )
        .unwrap();
        assert!(translate(&bad, Direction::ChangToWajsberg).is_err());
    }

    #[test]
    fn mvalg_round_trip() {
        for sig in Signature::ALL {
            let s = FiniteStructure::standard_model(4, sig).unwrap();
            let text = s.to_mvalg();
            assert_eq!(text.parse::<FiniteStructure>().unwrap(), s);
        }
        let txt = "mvalg 1\nsignature mv\nsize 2\n# boolean\nunary neg 1 0\nconst zero 0\nbinary oplus\n0 1\n1 1\n";
        let s: FiniteStructure = txt.parse().unwrap();
        assert_eq!(s.labels(), ["0", "1"]);
        assert!(s.check_axioms(AxiomSet::Mv).unwrap().holds());
        let e = "mvalg 1\nsignature mv\nsize 2\nunary neg 1 2\n"
            .parse::<FiniteStructure>()
            .unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e:?}");
        assert!("mvalg 1\nsignature mv\nsize 2\nunary neg 1 0\n"
            .parse::<FiniteStructure>()
            .is_err());
    }

    #[test]
    fn rejects_non_primitive_tables() {
        let labels = vec!["0".to_string(), "1".to_string()];
        let e = FiniteStructure::new(
            Signature::Mv,
            labels,
            vec![(Slot::Binary(Op2::Imp), vec![1, 1, 0, 1])],
        );
        assert!(e.is_err());
    }

    #[test]
    fn mutation_of_mv_model_is_caught() {
        let s = model(3, Signature::Mv);
        let (caught, total) = mutation_sensitivity(&s, &[AxiomSet::Mv]).unwrap();
        assert_eq!(total, 9 * 2 + 3 * 2 + 2);
        assert!(caught as f64 >= 0.95 * total as f64, "{caught}/{total}");
        let lattice = model(3, Signature::BzLattice);
        let (caught, total) =
            mutation_sensitivity(&lattice, Signature::BzLattice.expected_sets()).unwrap();
        assert!(caught as f64 >= 0.95 * total as f64, "{caught}/{total}");
    }
}
