//! The identity AST and its canonical printer.
//!
//! An identity file states `Σ_k lhs(n, k) = rhs(n)` in a small expression
//! language:
//!
//! ```text
//! # Newton, normalized
//! sum k: binomial(n, k) / 2^n == 1
//! ```
//!
//! The printer emits a canonical form — single line, explicit `*`, spaces
//! around binary operators, parentheses exactly where precedence demands
//! them — and parsing that form reproduces the AST node for node.  That
//! round-trip stability is what lets a SHA-256 of the canonical statement
//! serve as the identity's fingerprint in certificate records.

use std::fmt;

use wz_algebra::Rat;

/// One `sum` clause: a summation variable, optionally with explicit
/// inclusive bounds.  Without bounds the sum runs over the summand's
/// natural support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumClause {
    pub var: String,
    pub range: Option<(Expr, Expr)>,
}

/// A parsed identity: summation clauses, the two sides, and any
/// free-text remarks carried along from `@remark` lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityAst {
    pub sums: Vec<SumClause>,
    pub lhs: Expr,
    pub rhs: Expr,
    pub remarks: Vec<String>,
}

/// The reserved call forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CallKind {
    /// `binomial(top, bottom)`
    Binomial,
    /// `factorial(arg)`
    Factorial,
    /// `poch(base, len)` — the rising factorial `(base)_len`
    Poch,
}

impl CallKind {
    pub fn name(self) -> &'static str {
        match self {
            CallKind::Binomial => "binomial",
            CallKind::Factorial => "factorial",
            CallKind::Poch => "poch",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            CallKind::Binomial | CallKind::Poch => 2,
            CallKind::Factorial => 1,
        }
    }

    pub fn from_name(s: &str) -> Option<CallKind> {
        match s {
            "binomial" => Some(CallKind::Binomial),
            "factorial" => Some(CallKind::Factorial),
            "poch" => Some(CallKind::Poch),
            _ => None,
        }
    }
}

/// Expression tree.  Parentheses in the source don't appear here; the
/// printer reinstates exactly the ones precedence requires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rat),
    Var(String),
    Call(CallKind, Vec<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn int(v: i64) -> Expr {
        Expr::Num(wz_algebra::rat(v, 1))
    }

    /// Binding strength, used by the printer to decide parenthesization.
    /// Additive 1, multiplicative 2, unary minus 3, power 4, atoms 5.
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(q) => {
                // "1/2" re-reads as a division, "-3" as a negation; give
                // literals the precedence of the expression they print as.
                if !q.is_integer() {
                    2
                } else if q < &Rat::from_integer(0.into()) {
                    3
                } else {
                    5
                }
            }
            Expr::Var(_) | Expr::Call(..) => 5,
        }
    }

    fn write(&self, out: &mut String, min: u8) {
        let prec = self.prec();
        if prec < min {
            out.push('(');
            self.write(out, 0);
            out.push(')');
            return;
        }
        match self {
            Expr::Num(q) => out.push_str(&q.to_string()),
            Expr::Var(v) => out.push_str(v),
            Expr::Call(kind, args) => {
                out.push_str(kind.name());
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    a.write(out, 0);
                }
                out.push(')');
            }
            Expr::Neg(x) => {
                out.push('-');
                x.write(out, 4);
            }
            Expr::Pow(b, e) => {
                b.write(out, 5);
                out.push('^');
                e.write(out, 5);
            }
            Expr::Mul(a, b) => {
                a.write(out, 2);
                out.push_str(" * ");
                b.write(out, 3);
            }
            Expr::Div(a, b) => {
                a.write(out, 2);
                out.push_str(" / ");
                b.write(out, 3);
            }
            Expr::Add(a, b) => {
                a.write(out, 1);
                out.push_str(" + ");
                b.write(out, 2);
            }
            Expr::Sub(a, b) => {
                a.write(out, 1);
                out.push_str(" - ");
                b.write(out, 2);
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s, 0);
        f.write_str(&s)
    }
}

impl IdentityAst {
    /// The canonical one-line statement, without remarks.  This exact byte
    /// sequence is what certificate records fingerprint.
    pub fn canonical_statement(&self) -> String {
        let mut out = String::new();
        for clause in &self.sums {
            out.push_str("sum ");
            out.push_str(&clause.var);
            if let Some((lo, hi)) = &clause.range {
                out.push_str(" = ");
                lo.write(&mut out, 1);
                out.push_str(" .. ");
                hi.write(&mut out, 1);
            }
            out.push(' ');
        }
        // The trailing clause space becomes the separator before ':'.
        out.pop();
        out.push_str(": ");
        self.lhs.write(&mut out, 0);
        out.push_str(" == ");
        self.rhs.write(&mut out, 0);
        out
    }
}

impl fmt::Display for IdentityAst {
    /// Full canonical print: remarks first, then the statement.  Parsing
    /// this text reproduces the AST exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.remarks {
            writeln!(f, "@remark {r}")?;
        }
        f.write_str(&self.canonical_statement())
    }
}
