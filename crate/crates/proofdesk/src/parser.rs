//! Parser for the identity language.
//!
//! The surface syntax is small: one or more `sum` clauses, a colon, and
//! two expressions joined by `==`.  Expressions use `+ - * / ^`, integer
//! literals, variables, and the calls `binomial`, `factorial`, and
//! `poch`.  Juxtaposition multiplies (`4k`, `2n`, `k(k+1)`), `#` starts a
//! comment, and `@remark` lines attach prose to the identity.
//!
//! Every rejection carries a line and column.  Shape errors that a
//! grammar cannot express — a nonlinear call argument, a variable power
//! with a non-polynomial base — are caught here too, while positions are
//! still known, so later stages never fail structurally on parsed input.

use num_bigint::BigInt;
use wz_algebra::Rat;

use crate::ast::{CallKind, Expr, IdentityAst, SumClause};
use crate::error::DeskError;
use crate::lower::{const_int, linear_form, poly_of, ConstantRule};

const MAX_DEPTH: u32 = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(BigInt),
    LParen,
    RParen,
    Comma,
    Colon,
    Caret,
    Star,
    Slash,
    Plus,
    Minus,
    Eq,
    EqEq,
    DotDot,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(x) => format!("`{x}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Eq => "`=`".into(),
            Tok::EqEq => "`==`".into(),
            Tok::DotDot => "`..`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Sp {
    tok: Tok,
    line: u32,
    col: u32,
}

fn lex(src: &str) -> Result<(Vec<Sp>, Vec<String>), DeskError> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut remarks = Vec::new();
    let mut i = 0;
    let mut line = 1u32;
    let mut col = 1u32;

    let parse_err = |line, col, message: String| DeskError::Parse {
        line,
        column: col,
        message,
    };

    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
                col += 1;
            }
            continue;
        }
        if c == '@' {
            let start_col = col;
            i += 1;
            col += 1;
            let word_start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
                col += 1;
            }
            let word: String = chars[word_start..i].iter().collect();
            if word != "remark" {
                return Err(parse_err(
                    line,
                    start_col,
                    format!("unknown directive `@{word}`"),
                ));
            }
            let text_start = i;
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
                col += 1;
            }
            let text: String = chars[text_start..i].iter().collect();
            remarks.push(text.trim().to_string());
            continue;
        }
        let start = (line, col);
        if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
                col += 1;
            }
            let text: String = chars[s..i].iter().collect();
            let value: BigInt = text.parse().expect("digit run parses as an integer");
            toks.push(Sp {
                tok: Tok::Number(value),
                line: start.0,
                col: start.1,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let s = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
            {
                i += 1;
                col += 1;
            }
            let text: String = chars[s..i].iter().collect();
            toks.push(Sp {
                tok: Tok::Ident(text),
                line: start.0,
                col: start.1,
            });
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ':' => Tok::Colon,
            '^' => Tok::Caret,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '=' => {
                if chars.get(i + 1) == Some(&'=') {
                    i += 1;
                    col += 1;
                    Tok::EqEq
                } else {
                    Tok::Eq
                }
            }
            '.' => {
                if chars.get(i + 1) == Some(&'.') {
                    i += 1;
                    col += 1;
                    Tok::DotDot
                } else {
                    return Err(parse_err(line, col, "expected `..`".into()));
                }
            }
            other => {
                return Err(parse_err(
                    line,
                    col,
                    format!("unexpected character `{other}`"),
                ))
            }
        };
        i += 1;
        col += 1;
        toks.push(Sp {
            tok,
            line: start.0,
            col: start.1,
        });
    }
    toks.push(Sp {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok((toks, remarks))
}

struct RangeDraft {
    lo: Expr,
    lo_pos: (u32, u32),
    hi: Expr,
    hi_pos: (u32, u32),
}

struct ClauseDraft {
    var: String,
    range: Option<RangeDraft>,
}

struct Parser {
    toks: Vec<Sp>,
    pos: usize,
    depth: u32,
    sum_vars: Vec<String>,
    in_rhs: bool,
}

impl Parser {
    fn peek(&self) -> &Sp {
        &self.toks[self.pos]
    }

    fn here(&self) -> (u32, u32) {
        (self.peek().line, self.peek().col)
    }

    fn bump(&mut self) -> Sp {
        let sp = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        sp
    }

    fn parse_err(&self, at: (u32, u32), message: String) -> DeskError {
        DeskError::Parse {
            line: at.0,
            column: at.1,
            message,
        }
    }

    fn sem_err(&self, at: (u32, u32), message: String) -> DeskError {
        DeskError::Semantic {
            line: at.0,
            column: at.1,
            message,
        }
    }

    fn expect(&mut self, want: &Tok, context: &str) -> Result<Sp, DeskError> {
        if &self.peek().tok == want {
            Ok(self.bump())
        } else {
            Err(self.parse_err(
                self.here(),
                format!(
                    "expected {} {context}, found {}",
                    want.describe(),
                    self.peek().tok.describe()
                ),
            ))
        }
    }

    fn enter(&mut self) -> Result<(), DeskError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            Err(self.parse_err(self.here(), "expression is too deeply nested".into()))
        } else {
            Ok(())
        }
    }

    fn expr(&mut self) -> Result<Expr, DeskError> {
        self.enter()?;
        let r = self.expr_inner();
        self.depth -= 1;
        r
    }

    fn expr_inner(&mut self) -> Result<Expr, DeskError> {
        let mut lhs = self.mul_level()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.mul_level()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.mul_level()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    /// True when the upcoming token continues a product by juxtaposition.
    fn starts_factor(&self) -> bool {
        match &self.peek().tok {
            Tok::Ident(name) => name != "sum",
            Tok::LParen => true,
            _ => false,
        }
    }

    fn mul_level(&mut self) -> Result<Expr, DeskError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Tok::Slash => {
                    let at = self.here();
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = self.build_div(lhs, rhs, at)?;
                }
                _ if self.starts_factor() => {
                    let rhs = self.unary()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn build_div(&self, a: Expr, b: Expr, at: (u32, u32)) -> Result<Expr, DeskError> {
        if let (Expr::Num(x), Expr::Num(y)) = (&a, &b) {
            if y == &Rat::from_integer(BigInt::from(0)) {
                return Err(self.sem_err(at, "division by zero".into()));
            }
            return Ok(Expr::Num(x / y));
        }
        Ok(Expr::Div(Box::new(a), Box::new(b)))
    }

    fn unary(&mut self) -> Result<Expr, DeskError> {
        self.enter()?;
        let r = if self.peek().tok == Tok::Minus {
            self.bump();
            self.unary().map(negated)
        } else {
            self.pow_level()
        };
        self.depth -= 1;
        r
    }

    fn pow_level(&mut self) -> Result<Expr, DeskError> {
        let base_pos = self.here();
        let base = self.primary()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let expo_pos = self.here();
            let expo = self.pow_rhs()?;
            return self.build_pow(base, base_pos, expo, expo_pos);
        }
        Ok(base)
    }

    fn pow_rhs(&mut self) -> Result<Expr, DeskError> {
        self.enter()?;
        let r = if self.peek().tok == Tok::Minus {
            self.bump();
            self.pow_rhs().map(negated)
        } else {
            self.pow_level()
        };
        self.depth -= 1;
        r
    }

    fn build_pow(
        &self,
        base: Expr,
        base_pos: (u32, u32),
        expo: Expr,
        expo_pos: (u32, u32),
    ) -> Result<Expr, DeskError> {
        if const_int(&expo).is_none() {
            linear_form(&expo, ConstantRule::Integer)
                .map_err(|m| self.sem_err(expo_pos, format!("exponent: {m}")))?;
            let sign_base = matches!(&base, Expr::Num(q) if *q == wz_algebra::rat(-1, 1));
            if !sign_base {
                poly_of(&base).map_err(|m| {
                    self.sem_err(
                        base_pos,
                        format!("base of a variable power must be polynomial: {m}"),
                    )
                })?;
            }
        }
        Ok(Expr::Pow(Box::new(base), Box::new(expo)))
    }

    fn primary(&mut self) -> Result<Expr, DeskError> {
        let at = self.here();
        match self.bump().tok {
            Tok::Number(x) => Ok(Expr::Num(Rat::from_integer(x))),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(&Tok::RParen, "to close the parenthesis")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                if name == "sum" {
                    return Err(self.parse_err(
                        at,
                        "`sum` may only introduce a summation clause".into(),
                    ));
                }
                if let Some(kind) = CallKind::from_name(&name) {
                    return self.call(kind, at);
                }
                if self.in_rhs && self.sum_vars.contains(&name) {
                    return Err(self.sem_err(
                        at,
                        format!(
                            "the right-hand side must be free of the summation variable `{name}`"
                        ),
                    ));
                }
                Ok(Expr::Var(name))
            }
            other => Err(self.parse_err(
                at,
                format!("expected an expression, found {}", other.describe()),
            )),
        }
    }

    fn call(&mut self, kind: CallKind, name_pos: (u32, u32)) -> Result<Expr, DeskError> {
        if self.peek().tok != Tok::LParen {
            return Err(self.sem_err(
                name_pos,
                format!(
                    "`{}` is a function name; call it like `{}(...)`",
                    kind.name(),
                    kind.name()
                ),
            ));
        }
        self.bump();
        let mut args = Vec::new();
        let mut arg_pos = Vec::new();
        loop {
            arg_pos.push(self.here());
            args.push(self.expr()?);
            match self.peek().tok {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RParen => {
                    self.bump();
                    break;
                }
                _ => {
                    return Err(self.parse_err(
                        self.here(),
                        format!(
                            "expected `,` or `)` in the arguments of `{}`, found {}",
                            kind.name(),
                            self.peek().tok.describe()
                        ),
                    ))
                }
            }
        }
        if args.len() != kind.arity() {
            return Err(self.sem_err(
                name_pos,
                format!(
                    "`{}` expects {} argument{}, got {}",
                    kind.name(),
                    kind.arity(),
                    if kind.arity() == 1 { "" } else { "s" },
                    args.len()
                ),
            ));
        }
        for (idx, arg) in args.iter().enumerate() {
            let rule = match (kind, idx) {
                (CallKind::Poch, 0) => ConstantRule::RationalOk,
                _ => ConstantRule::Integer,
            };
            linear_form(arg, rule).map_err(|m| {
                self.sem_err(
                    arg_pos[idx],
                    format!("argument {} of `{}`: {m}", idx + 1, kind.name()),
                )
            })?;
        }
        Ok(Expr::Call(kind, args))
    }

    fn sum_clause(&mut self) -> Result<ClauseDraft, DeskError> {
        self.expect(&Tok::Ident("sum".into()), "to introduce a summation")?;
        let at = self.here();
        let var = match self.bump().tok {
            Tok::Ident(name) => name,
            other => {
                return Err(self.parse_err(
                    at,
                    format!("expected a summation variable, found {}", other.describe()),
                ))
            }
        };
        if var == "sum" || CallKind::from_name(&var).is_some() {
            return Err(self.sem_err(
                at,
                format!("`{var}` is reserved and cannot name a summation variable"),
            ));
        }
        if self.sum_vars.contains(&var) {
            return Err(self.sem_err(at, format!("duplicate summation variable `{var}`")));
        }
        self.sum_vars.push(var.clone());
        let range = if self.peek().tok == Tok::Eq {
            self.bump();
            let lo_pos = self.here();
            let lo = self.expr()?;
            self.expect(&Tok::DotDot, "between the range bounds")?;
            let hi_pos = self.here();
            let hi = self.expr()?;
            Some(RangeDraft {
                lo,
                lo_pos,
                hi,
                hi_pos,
            })
        } else {
            None
        };
        Ok(ClauseDraft { var, range })
    }
}

fn negated(e: Expr) -> Expr {
    match e {
        Expr::Num(q) => Expr::Num(-q),
        other => Expr::Neg(Box::new(other)),
    }
}

fn vars_of(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Var(v) => {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        Expr::Num(_) => {}
        Expr::Call(_, args) => args.iter().for_each(|a| vars_of(a, out)),
        Expr::Neg(x) => vars_of(x, out),
        Expr::Pow(a, b)
        | Expr::Mul(a, b)
        | Expr::Div(a, b)
        | Expr::Add(a, b)
        | Expr::Sub(a, b) => {
            vars_of(a, out);
            vars_of(b, out);
        }
    }
}

/// Parses one identity from `src`.
///
/// The result is structurally sound: call arguments are integer-linear
/// (the first `poch` argument may have a rational constant), variable
/// exponents are linear forms over polynomial bases, range bounds are
/// integer-linear and mention no summation variable, and the right-hand
/// side is free of every summation variable.
pub fn parse_identity(src: &str) -> Result<IdentityAst, DeskError> {
    let (toks, remarks) = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        depth: 0,
        sum_vars: Vec::new(),
        in_rhs: false,
    };

    if !matches!(&p.peek().tok, Tok::Ident(name) if name == "sum") {
        return Err(p.parse_err(
            p.here(),
            format!(
                "an identity starts with a `sum` clause, found {}",
                p.peek().tok.describe()
            ),
        ));
    }
    let mut drafts = Vec::new();
    while matches!(&p.peek().tok, Tok::Ident(name) if name == "sum") {
        drafts.push(p.sum_clause()?);
    }
    p.expect(&Tok::Colon, "after the summation clauses")?;
    let lhs = p.expr()?;
    p.expect(&Tok::EqEq, "between the two sides of the identity")?;
    p.in_rhs = true;
    let rhs = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.parse_err(
            p.here(),
            format!("unexpected trailing {}", p.peek().tok.describe()),
        ));
    }

    let mut sums = Vec::new();
    for draft in drafts {
        let range = match draft.range {
            None => None,
            Some(r) => {
                for (bound, pos) in [(&r.lo, r.lo_pos), (&r.hi, r.hi_pos)] {
                    let mut mentioned = Vec::new();
                    vars_of(bound, &mut mentioned);
                    if let Some(v) = mentioned.iter().find(|v| p.sum_vars.contains(v)) {
                        return Err(p.sem_err(
                            pos,
                            format!(
                                "the summation variable `{v}` cannot appear in a range bound"
                            ),
                        ));
                    }
                    linear_form(bound, ConstantRule::Integer).map_err(|m| {
                        p.sem_err(pos, format!("range bound of `{}`: {m}", draft.var))
                    })?;
                }
                Some((r.lo, r.hi))
            }
        };
        sums.push(SumClause {
            var: draft.var,
            range,
        });
    }

    Ok(IdentityAst {
        sums,
        lhs,
        rhs,
        remarks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(src: &str) -> String {
        parse_identity(src).unwrap().to_string()
    }

    #[test]
    fn the_halved_binomial_row_reads_back_unchanged() {
        let src = "sum k: binomial(n, k) / 2^n == 1";
        assert_eq!(roundtrip(src), src);
    }

    #[test]
    fn juxtaposition_multiplies() {
        assert_eq!(
            roundtrip("sum k: 4k + 1 == n"),
            "sum k: 4 * k + 1 == n"
        );
        assert_eq!(
            roundtrip("sum k: 1 / (k(k + 1)) == n"),
            "sum k: 1 / (k * (k + 1)) == n"
        );
    }

    #[test]
    fn printing_is_a_fixed_point_of_parsing() {
        let sources = [
            "sum k: (-1)^k (4k + 1) poch(1/2, k)^2 poch(-n, k) \
             / (factorial(k)^2 poch(3/2 + n, k)) == poch(3/2, n) / factorial(n)",
            "sum k: k binomial(n, k) / (n 2^(n - 1)) == 1",
            "sum k1 = 0 .. n sum k2 = 0 .. n: factorial(n) \
             / (factorial(k1) factorial(k2) factorial(n - k1 - k2)) \
             x^k1 y^k2 z^(n - k1 - k2) / (x + y + z)^n == 1",
        ];
        for src in sources {
            let once = roundtrip(src);
            assert_eq!(roundtrip(&once), once, "not a fixed point: {src}");
        }
    }

    #[test]
    fn nonlinear_call_arguments_are_semantic_errors_with_positions() {
        let err = parse_identity("sum k: factorial(n*k) == 1").unwrap_err();
        match err {
            DeskError::Semantic {
                line,
                column,
                ref message,
            } => {
                assert_eq!((line, column), (1, 18));
                assert!(message.contains("not linear"), "{message}");
            }
            other => panic!("expected a semantic error, got {other}"),
        }
    }

    #[test]
    fn a_missing_colon_is_reported_where_it_should_have_been() {
        let err = parse_identity("sum k binomial(n, k) == 1").unwrap_err();
        match err {
            DeskError::Parse { line, column, .. } => assert_eq!((line, column), (1, 7)),
            other => panic!("expected a parse error, got {other}"),
        }
    }

    #[test]
    fn the_right_side_may_not_mention_a_summation_variable() {
        let err = parse_identity("sum k: binomial(n, k) == k").unwrap_err();
        match err {
            DeskError::Semantic {
                line,
                column,
                ref message,
            } => {
                assert_eq!((line, column), (1, 26));
                assert!(message.contains("right-hand side"), "{message}");
            }
            other => panic!("expected a semantic error, got {other}"),
        }
    }

    #[test]
    fn duplicate_and_reserved_summation_variables_are_rejected() {
        let dup = parse_identity("sum k sum k: k == 1").unwrap_err();
        assert!(dup.to_string().contains("duplicate"), "{dup}");
        let res = parse_identity("sum poch: 1 == 1").unwrap_err();
        assert!(res.to_string().contains("reserved"), "{res}");
    }

    #[test]
    fn a_bare_function_name_is_not_a_variable() {
        let err = parse_identity("sum k: factorial == 1").unwrap_err();
        assert!(err.to_string().contains("function name"), "{err}");
    }

    #[test]
    fn range_bounds_may_not_mention_summation_variables() {
        let err =
            parse_identity("sum k1 = 0 .. k2 sum k2: k1 == n").unwrap_err();
        assert!(err.to_string().contains("range bound"), "{err}");
    }

    #[test]
    fn runaway_nesting_is_cut_off() {
        let mut src = String::from("sum k: ");
        for _ in 0..300 {
            src.push('(');
        }
        src.push('k');
        for _ in 0..300 {
            src.push(')');
        }
        src.push_str(" == n");
        let err = parse_identity(&src).unwrap_err();
        assert!(err.to_string().contains("deeply nested"), "{err}");
    }

    #[test]
    fn stray_characters_are_positioned() {
        let err = parse_identity("sum k: k $ == n").unwrap_err();
        match err {
            DeskError::Parse { line, column, .. } => assert_eq!((line, column), (1, 10)),
            other => panic!("expected a parse error, got {other}"),
        }
    }

    #[test]
    fn comments_vanish_and_remarks_survive() {
        let src = "@remark a terminating series\n\
                   # the half-row normalization\n\
                   sum k: binomial(n, k) / 2^n == 1\n";
        let ast = parse_identity(src).unwrap();
        assert_eq!(ast.remarks, ["a terminating series"]);
        assert_eq!(
            ast.to_string(),
            "@remark a terminating series\nsum k: binomial(n, k) / 2^n == 1"
        );
        let err = parse_identity("@remork x\nsum k: k == n").unwrap_err();
        assert!(err.to_string().contains("unknown directive"), "{err}");
    }

    #[test]
    fn negative_exponents_parse_tightly() {
        assert_eq!(roundtrip("sum k: 2^-n k == 1"), "sum k: 2^(-n) * k == 1");
        assert_eq!(roundtrip("sum k: 2^(-3) == n"), "sum k: 2^(-3) == n");
    }

    #[test]
    fn literal_division_folds_to_a_rational() {
        let ast = parse_identity("sum k: (1/2)^k == n").unwrap();
        assert_eq!(ast.to_string(), "sum k: (1/2)^k == n");
        let err = parse_identity("sum k: 1/0 == n").unwrap_err();
        assert!(err.to_string().contains("division by zero"), "{err}");
    }
}
