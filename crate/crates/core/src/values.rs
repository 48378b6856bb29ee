//! Exact truth values of the finite Łukasiewicz chain `L_d = {0, 1/(d-1), ..., 1}`
//! and the catalog of unary and binary connectives over it.
//!
//! A value is stored as an integer level `k` together with the number of
//! truth values `d`; its rational meaning is `k/(d-1)`. All connectives are
//! computed with integer `min`/`max`/`+` on levels, so tables compare
//! bit-exactly.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported number of truth values.
pub const MAX_ARITY: u32 = 255;

pub(crate) fn check_arity(d: u32) -> Result<u8> {
    if (2..=MAX_ARITY).contains(&d) {
        Ok(d as u8)
    } else {
        Err(Error::InvalidArity(d))
    }
}

/// A truth value `level/(d-1)` of `L_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Value {
    level: u8,
    d: u8,
}

impl Value {
    /// Builds the value `k/(d-1)`.
    pub fn new(k: u32, d: u32) -> Result<Self> {
        let d = check_arity(d)?;
        if k >= u32::from(d) {
            return Err(Error::LevelOutOfRange {
                level: k,
                d: u32::from(d),
            });
        }
        Ok(Value { level: k as u8, d })
    }

    pub(crate) const fn from_raw(level: u8, d: u8) -> Self {
        Value { level, d }
    }

    pub fn zero(d: u32) -> Result<Self> {
        Value::new(0, d)
    }

    pub fn one(d: u32) -> Result<Self> {
        Value::new(d.saturating_sub(1), d)
    }

    /// Embeds a classical truth value: false -> level 0, true -> level d-1.
    pub fn from_bool(b: bool, d: u32) -> Result<Self> {
        if b {
            Value::one(d)
        } else {
            Value::zero(d)
        }
    }

    pub fn level(self) -> u8 {
        self.level
    }

    /// Number of truth values of the chain this value lives in.
    pub fn d(self) -> u8 {
        self.d
    }

    /// The top level `d-1`.
    pub fn top(self) -> u8 {
        self.d - 1
    }

    pub fn is_zero(self) -> bool {
        self.level == 0
    }

    pub fn is_one(self) -> bool {
        self.level == self.top()
    }

    pub fn is_boolean(self) -> bool {
        self.is_zero() || self.is_one()
    }

    /// The value as a reduced fraction `(numerator, denominator)`.
    pub fn as_fraction(self) -> (u32, u32) {
        let (num, den) = (u32::from(self.level), u32::from(self.top()));
        let g = gcd(num, den);
        (num / g, den / g)
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.level) / f64::from(self.top())
    }

    /// Every value of `L_d` in ascending order.
    pub fn all(d: u32) -> Result<Vec<Value>> {
        let d8 = check_arity(d)?;
        Ok((0..d8).map(|k| Value::from_raw(k, d8)).collect())
    }

    fn same_chain(self, other: Value) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::ArityMismatch {
                left: self.d,
                right: other.d,
            })
        }
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_fraction() {
            (n, 1) => write!(f, "{n}"),
            (n, den) => write!(f, "{n}/{den}"),
        }
    }
}

/// Unary connectives. `J(k)` and `H(k)` are the indicator of `k` and its
/// complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnaryConnective {
    Id,
    /// Diametrical negation `¬x = 1 - x`.
    Not,
    /// Intuitionistic negation (impossibility) `∼`.
    Sim,
    /// Anti-intuitionistic negation (contingency) `♭`.
    Flat,
    /// Possibility `◇`.
    Poss,
    /// Necessity `□`.
    Nec,
    J(Value),
    H(Value),
    /// Słupecki's constant `1/(d-1)`.
    Tertium,
}

impl UnaryConnective {
    /// The parameter-free unary connectives.
    pub const BASIC: [UnaryConnective; 7] = [
        UnaryConnective::Id,
        UnaryConnective::Not,
        UnaryConnective::Sim,
        UnaryConnective::Flat,
        UnaryConnective::Poss,
        UnaryConnective::Nec,
        UnaryConnective::Tertium,
    ];

    /// Evaluates on a raw level; `top` is `d-1`. The caller is responsible for
    /// matching the arity of `J`/`H` parameters.
    #[inline]
    pub fn eval_level(self, x: u8, top: u8) -> u8 {
        use UnaryConnective::*;
        let flag = |b: bool| if b { top } else { 0 };
        match self {
            Id => x,
            Not => top - x,
            Sim => flag(x == 0),
            Flat => flag(x != top),
            Poss => flag(x != 0),
            Nec => flag(x == top),
            J(k) => flag(x == k.level),
            H(k) => flag(x != k.level),
            Tertium => 1,
        }
    }

    pub fn name(self) -> String {
        use UnaryConnective::*;
        match self {
            Id => "ID".into(),
            Not => "NOT".into(),
            Sim => "SIM".into(),
            Flat => "FLAT".into(),
            Poss => "POSS".into(),
            Nec => "NEC".into(),
            J(k) => format!("J[{k}]"),
            H(k) => format!("H[{k}]"),
            Tertium => "TERTIUM".into(),
        }
    }

    pub fn symbol(self) -> String {
        use UnaryConnective::*;
        match self {
            Id => "id".into(),
            Not => "¬".into(),
            Sim => "∼".into(),
            Flat => "♭".into(),
            Poss => "◇".into(),
            Nec => "□".into(),
            J(k) => format!("j[{k}]"),
            H(k) => format!("h[{k}]"),
            Tertium => "T".into(),
        }
    }
}

impl FromStr for UnaryConnective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use UnaryConnective::*;
        Ok(match s.to_ascii_uppercase().as_str() {
            "ID" => Id,
            "NOT" | "NEG" => Not,
            "SIM" | "IMPOSSIBILITY" => Sim,
            "FLAT" | "CONTINGENCY" => Flat,
            "POSS" | "POSSIBILITY" => Poss,
            "NEC" | "NECESSITY" => Nec,
            "TERTIUM" => Tertium,
            _ => return Err(Error::Expr(format!("unknown unary connective `{s}`"))),
        })
    }
}

/// Binary connectives; `Pr1`/`Pr2` are the projections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BinaryConnective {
    /// Łukasiewicz implication.
    ToL,
    /// Gödel implication.
    ToG,
    Or,
    And,
    /// Truncated sum.
    Oplus,
    /// Truncated product.
    Odot,
    /// Łukasiewicz equivalence, derived as `(x →L y) ∧ (y →L x)`.
    EqvL,
    Pr1,
    Pr2,
}

impl BinaryConnective {
    pub const ALL: [BinaryConnective; 9] = [
        BinaryConnective::ToL,
        BinaryConnective::ToG,
        BinaryConnective::Or,
        BinaryConnective::And,
        BinaryConnective::Oplus,
        BinaryConnective::Odot,
        BinaryConnective::EqvL,
        BinaryConnective::Pr1,
        BinaryConnective::Pr2,
    ];

    #[inline]
    pub fn eval_level(self, x: u8, y: u8, top: u8) -> u8 {
        use BinaryConnective::*;
        // u16 keeps x + y from overflowing for d close to 255
        let (xw, yw, t) = (u16::from(x), u16::from(y), u16::from(top));
        match self {
            ToL => (t - xw + yw).min(t) as u8,
            ToG => {
                if y < x {
                    y
                } else {
                    top
                }
            }
            Or => x.max(y),
            And => x.min(y),
            Oplus => (xw + yw).min(t) as u8,
            Odot => (xw + yw).saturating_sub(t) as u8,
            EqvL => ToL.eval_level(x, y, top).min(ToL.eval_level(y, x, top)),
            Pr1 => x,
            Pr2 => y,
        }
    }

    pub fn is_commutative(self) -> bool {
        use BinaryConnective::*;
        matches!(self, Or | And | Oplus | Odot | EqvL)
    }

    pub fn name(self) -> &'static str {
        use BinaryConnective::*;
        match self {
            ToL => "TO_L",
            ToG => "TO_G",
            Or => "OR",
            And => "AND",
            Oplus => "OPLUS",
            Odot => "ODOT",
            EqvL => "EQV_L",
            Pr1 => "PR1",
            Pr2 => "PR2",
        }
    }

    pub fn symbol(self) -> &'static str {
        use BinaryConnective::*;
        match self {
            ToL => "→L",
            ToG => "→G",
            Or => "∨",
            And => "∧",
            Oplus => "⊕",
            Odot => "⊙",
            EqvL => "↔L",
            Pr1 => "pr1",
            Pr2 => "pr2",
        }
    }
}

impl FromStr for BinaryConnective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use BinaryConnective::*;
        Ok(match s.to_ascii_uppercase().as_str() {
            "TO_L" | "TOL" | "IMPL" => ToL,
            "TO_G" | "TOG" => ToG,
            "OR" | "JOIN" => Or,
            "AND" | "MEET" => And,
            "OPLUS" => Oplus,
            "ODOT" => Odot,
            "EQV_L" | "EQVL" => EqvL,
            "PR1" => Pr1,
            "PR2" => Pr2,
            _ => return Err(Error::Expr(format!("unknown binary connective `{s}`"))),
        })
    }
}

/// Applies a unary connective to a value.
pub fn apply_unary(c: UnaryConnective, x: Value) -> Result<Value> {
    if let UnaryConnective::J(k) | UnaryConnective::H(k) = c {
        k.same_chain(x)?;
    }
    if c == UnaryConnective::Tertium && x.d == 2 {
        // 1/(d-1) is the top level in the Boolean case
        return Ok(Value::from_raw(1, 2));
    }
    Ok(Value::from_raw(c.eval_level(x.level, x.top()), x.d))
}

/// Applies a binary connective to two values of the same chain.
pub fn apply_binary(c: BinaryConnective, x: Value, y: Value) -> Result<Value> {
    x.same_chain(y)?;
    Ok(Value::from_raw(
        c.eval_level(x.level, y.level, x.top()),
        x.d,
    ))
}

/// The lattice order of `L_d`.
pub fn leq(x: Value, y: Value) -> Result<bool> {
    x.same_chain(y)?;
    Ok(x.level <= y.level)
}
