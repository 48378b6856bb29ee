//! Expressions over the connectives of `L_d` and three constructive normal
//! forms that express any truth function `L_d^n -> L_d`.
//!
//! All three forms are built from the indicator minterm
//! `M(x, c) = ⋀ j_{c_i}(x_i)` (one exactly when `x = c`) or the maxterm
//! `S(x, c) = ⋁ h_{c_i}(x_i)` (zero exactly when `x = c`):
//!
//! * GDNF: `⋁_{f(c) ≠ 0} [M(x, c) ∧ f(c)]`
//! * GCNF: `⋀_{f(c) ≠ 1} [S(x, c) ∨ f(c)]`
//! * Clay: `⋀_{f(c) ≠ 1} [M(x, c) →L f(c)]`

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::{index_pattern, pattern_index, Gate};
use crate::values::{check_arity, BinaryConnective, UnaryConnective, Value};

/// An expression tree. Empty joins denote 0 and empty meets denote 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(usize),
    Const(Value),
    Unary(UnaryConnective, Box<Expr>),
    Binary(BinaryConnective, Box<Expr>, Box<Expr>),
    Join(Vec<Expr>),
    Meet(Vec<Expr>),
}

impl Expr {
    pub fn var(i: usize) -> Expr {
        Expr::Var(i)
    }

    pub fn unary(c: UnaryConnective, e: Expr) -> Expr {
        Expr::Unary(c, Box::new(e))
    }

    pub fn binary(c: BinaryConnective, a: Expr, b: Expr) -> Expr {
        Expr::Binary(c, Box::new(a), Box::new(b))
    }

    /// Evaluates on raw levels of `L_d`.
    pub fn eval_levels(&self, d: u8, x: &[u8]) -> Result<u8> {
        let top = d - 1;
        Ok(match self {
            Expr::Var(i) => *x.get(*i).ok_or_else(|| {
                Error::Expr(format!(
                    "variable x{} used with only {} inputs",
                    i + 1,
                    x.len()
                ))
            })?,
            Expr::Const(v) => {
                if v.d() != d {
                    return Err(Error::ArityMismatch {
                        left: v.d(),
                        right: d,
                    });
                }
                v.level()
            }
            Expr::Unary(c, e) => {
                if let UnaryConnective::J(k) | UnaryConnective::H(k) = c {
                    if k.d() != d {
                        return Err(Error::ArityMismatch {
                            left: k.d(),
                            right: d,
                        });
                    }
                }
                c.eval_level(e.eval_levels(d, x)?, top)
            }
            Expr::Binary(c, a, b) => c.eval_level(a.eval_levels(d, x)?, b.eval_levels(d, x)?, top),
            Expr::Join(es) => {
                let mut acc = 0;
                for e in es {
                    acc = acc.max(e.eval_levels(d, x)?);
                }
                acc
            }
            Expr::Meet(es) => {
                let mut acc = top;
                for e in es {
                    acc = acc.min(e.eval_levels(d, x)?);
                }
                acc
            }
        })
    }

    /// Evaluates under an assignment of values to `x1, x2, ...`.
    pub fn eval(&self, assignment: &[Value]) -> Result<Value> {
        let d = assignment
            .first()
            .map(|v| v.d())
            .ok_or_else(|| Error::Expr("empty assignment".into()))?;
        if let Some(v) = assignment.iter().find(|v| v.d() != d) {
            return Err(Error::ArityMismatch {
                left: v.d(),
                right: d,
            });
        }
        let levels: Vec<u8> = assignment.iter().map(|v| v.level()).collect();
        Ok(Value::from_raw(self.eval_levels(d, &levels)?, d))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Expr::Var(_) | Expr::Const(_) => 1,
            Expr::Unary(_, e) => 1 + e.size(),
            Expr::Binary(_, a, b) => 1 + a.size() + b.size(),
            Expr::Join(es) | Expr::Meet(es) => 1 + es.iter().map(Expr::size).sum::<usize>(),
        }
    }
}

/// Canonical prefix form, e.g. `JOIN(AND(MEET(J[1/2](x1)), 1))`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, es: &[Expr]| {
            write!(f, "{name}(")?;
            for (i, e) in es.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, ")")
        };
        match self {
            Expr::Var(i) => write!(f, "x{}", i + 1),
            Expr::Const(v) => write!(f, "{v}"),
            Expr::Unary(c, e) => write!(f, "{}({e})", c.name()),
            Expr::Binary(c, a, b) => write!(f, "{}({a}, {b})", c.name()),
            Expr::Join(es) => list(f, "JOIN", es),
            Expr::Meet(es) => list(f, "MEET", es),
        }
    }
}

/// A total function `L_d^n -> L_d` as a dense table in row order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TruthFunction {
    d: u8,
    n: usize,
    table: Vec<u8>,
}

impl TruthFunction {
    pub fn new(d: u32, n: usize, table: Vec<u8>) -> Result<Self> {
        let g = Gate::from_table(d, n, 1, table)?;
        Ok(TruthFunction {
            d: g.d(),
            n,
            table: g.into_table(),
        })
    }

    pub fn from_fn(d: u32, n: usize, mut f: impl FnMut(&[u8]) -> u8) -> Result<Self> {
        let g = Gate::from_fn(d, n, 1, |x, y| y[0] = f(x))?;
        Ok(TruthFunction {
            d: g.d(),
            n,
            table: g.into_table(),
        })
    }

    /// A single-output gate read as a truth function.
    pub fn from_gate(g: &Gate) -> Result<Self> {
        if g.m() != 1 {
            return Err(Error::Shape(format!(
                "a truth function needs one output, gate has {}",
                g.m()
            )));
        }
        Ok(TruthFunction {
            d: g.d(),
            n: g.n(),
            table: g.table().to_vec(),
        })
    }

    pub fn to_gate(&self) -> Gate {
        Gate::from_raw(self.d, self.n as u8, 1, self.table.clone())
    }

    pub fn from_unary(c: UnaryConnective, d: u32) -> Result<Self> {
        let top = check_arity(d)? - 1;
        TruthFunction::from_fn(d, 1, |x| c.eval_level(x[0], top))
    }

    pub fn from_binary(c: BinaryConnective, d: u32) -> Result<Self> {
        let top = check_arity(d)? - 1;
        TruthFunction::from_fn(d, 2, |x| c.eval_level(x[0], x[1], top))
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn level_at(&self, x: &[u8]) -> u8 {
        self.table[pattern_index(x, self.d)]
    }

    /// `(c, f(c))` for every input `c`, in row order.
    fn points(&self) -> impl Iterator<Item = (Vec<u8>, u8)> + '_ {
        self.table.iter().enumerate().map(move |(i, &v)| {
            let mut c = vec![0; self.n];
            index_pattern(i, self.d, &mut c);
            (c, v)
        })
    }

    fn value(&self, level: u8) -> Value {
        Value::from_raw(level, self.d)
    }

    fn top(&self) -> u8 {
        self.d - 1
    }
}

/// Which normal form to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NormalForm {
    Gdnf,
    Gcnf,
    Clay,
}

impl FromStr for NormalForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gdnf" => Ok(NormalForm::Gdnf),
            "gcnf" => Ok(NormalForm::Gcnf),
            "clay" => Ok(NormalForm::Clay),
            _ => Err(Error::Expr(format!(
                "unknown normal form `{s}` (gdnf, gcnf or clay)"
            ))),
        }
    }
}

/// `j_k(x_i)`, or with `simplify` the equivalent `□x` / `∼x` for `k = 1` / `k = 0`.
fn indicator(f: &TruthFunction, i: usize, k: u8, simplify: bool) -> Expr {
    let c = if simplify && k == f.top() {
        UnaryConnective::Nec
    } else if simplify && k == 0 {
        UnaryConnective::Sim
    } else {
        UnaryConnective::J(f.value(k))
    };
    Expr::unary(c, Expr::Var(i))
}

/// `h_k(x_i)`, or with `simplify` the equivalent `♭x` / `◇x` for `k = 1` / `k = 0`.
fn co_indicator(f: &TruthFunction, i: usize, k: u8, simplify: bool) -> Expr {
    let c = if simplify && k == f.top() {
        UnaryConnective::Flat
    } else if simplify && k == 0 {
        UnaryConnective::Poss
    } else {
        UnaryConnective::H(f.value(k))
    };
    Expr::unary(c, Expr::Var(i))
}

/// The minterm `M(x, c)`.
pub fn minterm(f: &TruthFunction, c: &[u8], simplify: bool) -> Expr {
    Expr::Meet(
        c.iter()
            .enumerate()
            .map(|(i, &k)| indicator(f, i, k, simplify))
            .collect(),
    )
}

/// The maxterm `S(x, c)`.
pub fn maxterm(f: &TruthFunction, c: &[u8], simplify: bool) -> Expr {
    Expr::Join(
        c.iter()
            .enumerate()
            .map(|(i, &k)| co_indicator(f, i, k, simplify))
            .collect(),
    )
}

pub fn gdnf(f: &TruthFunction) -> Expr {
    Expr::Join(
        f.points()
            .filter(|&(_, v)| v != 0)
            .map(|(c, v)| {
                Expr::binary(
                    BinaryConnective::And,
                    minterm(f, &c, false),
                    Expr::Const(f.value(v)),
                )
            })
            .collect(),
    )
}

pub fn gcnf(f: &TruthFunction) -> Expr {
    let top = f.top();
    Expr::Meet(
        f.points()
            .filter(|&(_, v)| v != top)
            .map(|(c, v)| {
                Expr::binary(
                    BinaryConnective::Or,
                    maxterm(f, &c, false),
                    Expr::Const(f.value(v)),
                )
            })
            .collect(),
    )
}

pub fn clay(f: &TruthFunction) -> Expr {
    let top = f.top();
    Expr::Meet(
        f.points()
            .filter(|&(_, v)| v != top)
            .map(|(c, v)| {
                Expr::binary(
                    BinaryConnective::ToL,
                    minterm(f, &c, false),
                    Expr::Const(f.value(v)),
                )
            })
            .collect(),
    )
}

/// The forms expanded over `E = {0, 1}`: points with a Boolean value drop
/// their constant, and indicators at 0 and 1 use the modal connectives.
pub fn simplified(form: NormalForm, f: &TruthFunction) -> Expr {
    let top = f.top();
    let inner = |v: u8| v != 0 && v != top;
    let pts: Vec<(Vec<u8>, u8)> = f.points().collect();
    let konst = |v: u8| Expr::Const(f.value(v));
    match form {
        NormalForm::Gdnf => {
            let mut terms: Vec<Expr> = pts
                .iter()
                .filter(|(_, v)| inner(*v))
                .map(|(c, v)| Expr::binary(BinaryConnective::And, minterm(f, c, true), konst(*v)))
                .collect();
            terms.extend(
                pts.iter()
                    .filter(|(_, v)| *v == top)
                    .map(|(c, _)| minterm(f, c, true)),
            );
            Expr::Join(terms)
        }
        NormalForm::Gcnf => {
            let mut terms: Vec<Expr> = pts
                .iter()
                .filter(|(_, v)| inner(*v))
                .map(|(c, v)| Expr::binary(BinaryConnective::Or, maxterm(f, c, true), konst(*v)))
                .collect();
            terms.extend(
                pts.iter()
                    .filter(|(_, v)| *v == 0)
                    .map(|(c, _)| maxterm(f, c, true)),
            );
            Expr::Meet(terms)
        }
        NormalForm::Clay => {
            let mut terms: Vec<Expr> = pts
                .iter()
                .filter(|(_, v)| inner(*v))
                .map(|(c, v)| Expr::binary(BinaryConnective::ToL, minterm(f, c, true), konst(*v)))
                .collect();
            terms.extend(
                pts.iter()
                    .filter(|(_, v)| *v == 0)
                    .map(|(c, _)| Expr::unary(UnaryConnective::Not, minterm(f, c, true))),
            );
            Expr::Meet(terms)
        }
    }
}

/// Builds the requested form, plain or simplified.
pub fn synthesize(form: NormalForm, f: &TruthFunction, simplify: bool) -> Expr {
    match (form, simplify) {
        (_, true) => simplified(form, f),
        (NormalForm::Gdnf, false) => gdnf(f),
        (NormalForm::Gcnf, false) => gcnf(f),
        (NormalForm::Clay, false) => clay(f),
    }
}

/// Exhaustive equality of `expr` with `f` over all `d^n` inputs.
pub fn verify_expr(expr: &Expr, f: &TruthFunction) -> bool {
    f.points()
        .all(|(c, v)| matches!(expr.eval_levels(f.d, &c), Ok(got) if got == v))
}
