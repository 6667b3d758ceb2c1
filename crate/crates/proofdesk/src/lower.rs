//! From syntax to substance: turning a validated AST into the engine's
//! structured term form.
//!
//! The parser guarantees shape (call arguments are linear, exponents are
//! linear forms or integer constants), so the conversions here are total on
//! parser output; the string-typed errors they can still produce surface
//! only for programmatically built ASTs and are reported without positions.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{ToPrimitive, Zero};
use wz_algebra::{rat, MultiPoly, Rat};
use wz_hyperterm::{HyperTerm, Identity, LinForm, SumRange};

use crate::ast::{CallKind, Expr, IdentityAst};
use crate::error::DeskError;

/// How strict a linear form's constant part must be.
#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum ConstantRule {
    Integer,
    RationalOk,
}

/// A folded linear form: rational coefficients per variable plus a
/// constant, before the integrality check.
struct Folded {
    coeffs: BTreeMap<String, Rat>,
    constant: Rat,
}

impl Folded {
    fn constant(q: Rat) -> Folded {
        Folded {
            coeffs: BTreeMap::new(),
            constant: q,
        }
    }

    fn scale(mut self, c: &Rat) -> Folded {
        for v in self.coeffs.values_mut() {
            *v *= c;
        }
        self.constant *= c;
        self
    }

    fn combine(mut self, other: Folded, sign: i64) -> Folded {
        let s = rat(sign, 1);
        for (v, c) in other.coeffs {
            let entry = self.coeffs.entry(v).or_insert_with(Rat::zero);
            *entry += c * &s;
        }
        self.constant += other.constant * &s;
        self
    }

    fn as_constant(&self) -> Option<&Rat> {
        self.coeffs.values().all(Rat::is_zero).then_some(&self.constant)
    }
}

fn fold_linear(e: &Expr) -> Result<Folded, String> {
    match e {
        Expr::Num(q) => Ok(Folded::constant(q.clone())),
        Expr::Var(v) => {
            let mut coeffs = BTreeMap::new();
            coeffs.insert(v.clone(), rat(1, 1));
            Ok(Folded {
                coeffs,
                constant: Rat::zero(),
            })
        }
        Expr::Neg(x) => Ok(fold_linear(x)?.scale(&rat(-1, 1))),
        Expr::Add(a, b) => Ok(fold_linear(a)?.combine(fold_linear(b)?, 1)),
        Expr::Sub(a, b) => Ok(fold_linear(a)?.combine(fold_linear(b)?, -1)),
        Expr::Mul(a, b) => {
            let fa = fold_linear(a)?;
            let fb = fold_linear(b)?;
            if let Some(c) = fa.as_constant() {
                let c = c.clone();
                Ok(fb.scale(&c))
            } else if let Some(c) = fb.as_constant() {
                let c = c.clone();
                Ok(fa.scale(&c))
            } else {
                Err("a product of two variable expressions is not linear".into())
            }
        }
        Expr::Div(a, b) => {
            let fb = fold_linear(b)?;
            match fb.as_constant() {
                Some(c) if !c.is_zero() => {
                    let inv = rat(1, 1) / c;
                    Ok(fold_linear(a)?.scale(&inv))
                }
                Some(_) => Err("division by zero".into()),
                None => Err("a nonconstant divisor is not linear".into()),
            }
        }
        Expr::Pow(a, b) => {
            let base = fold_linear(a)?;
            let expo = fold_linear(b)?;
            match (base.as_constant(), expo.as_constant()) {
                (Some(c), Some(e)) => {
                    let e = rat_to_i64(e).ok_or("exponent must be an integer")?;
                    if c.is_zero() && e < 0 {
                        return Err("division by zero".into());
                    }
                    Ok(Folded::constant(rat_pow(c, e)?))
                }
                _ => Err("a power of a variable expression is not linear".into()),
            }
        }
        Expr::Call(kind, _) => Err(format!(
            "`{}` cannot appear inside a linear argument",
            kind.name()
        )),
    }
}

fn rat_to_i64(q: &Rat) -> Option<i64> {
    q.is_integer().then(|| q.numer().to_i64())?
}

fn rat_pow(base: &Rat, e: i64) -> Result<Rat, String> {
    let e32 = i32::try_from(e).map_err(|_| "exponent out of range".to_string())?;
    Ok(num_traits::Pow::pow(base.clone(), e32))
}

/// Folds `e` as an integer-linear form, or explains why it is not one.
pub(crate) fn linear_form(e: &Expr, rule: ConstantRule) -> Result<LinForm, String> {
    let folded = fold_linear(e)?;
    let mut coeffs = BTreeMap::new();
    for (v, c) in &folded.coeffs {
        if c.is_zero() {
            continue;
        }
        let c = rat_to_i64(c)
            .ok_or_else(|| format!("the coefficient of `{v}` is not an integer"))?;
        coeffs.insert(v.clone(), c);
    }
    if rule == ConstantRule::Integer && !folded.constant.is_integer() {
        return Err("the constant part must be an integer here".into());
    }
    Ok(LinForm::new(coeffs, folded.constant))
}

/// Folds `e` to an integer constant, if that is what it is.
pub(crate) fn const_int(e: &Expr) -> Option<i64> {
    let folded = fold_linear(e).ok()?;
    rat_to_i64(folded.as_constant()?)
}

/// Expands `e` as a polynomial with rational coefficients, or explains
/// why it is not one.
pub(crate) fn poly_of(e: &Expr) -> Result<MultiPoly, String> {
    match e {
        Expr::Num(q) => Ok(MultiPoly::constant(q.clone())),
        Expr::Var(v) => Ok(MultiPoly::var(v)),
        Expr::Neg(x) => Ok(-poly_of(x)?),
        Expr::Add(a, b) => Ok(&poly_of(a)? + &poly_of(b)?),
        Expr::Sub(a, b) => Ok(&poly_of(a)? - &poly_of(b)?),
        Expr::Mul(a, b) => Ok(&poly_of(a)? * &poly_of(b)?),
        Expr::Div(a, b) => {
            let denom = poly_of(b)?;
            match poly_constant(&denom) {
                Some(c) if !c.is_zero() => Ok(poly_of(a)?.mul_rat(&(rat(1, 1) / c))),
                Some(_) => Err("division by zero".into()),
                None => Err("a nonconstant divisor is not polynomial".into()),
            }
        }
        Expr::Pow(a, b) => {
            let e = const_int(b).ok_or("a polynomial power needs a constant integer exponent")?;
            let e = u32::try_from(e)
                .map_err(|_| "a negative power is not polynomial".to_string())?;
            Ok(poly_of(a)?.pow(e))
        }
        Expr::Call(kind, _) => Err(format!(
            "`{}` cannot appear inside a polynomial factor",
            kind.name()
        )),
    }
}

fn poly_constant(p: &MultiPoly) -> Option<Rat> {
    let mut value = Rat::zero();
    for (m, c) in p.iter_terms() {
        if m.0.iter().any(|&e| e > 0) {
            return None;
        }
        value = c.clone();
    }
    Some(value)
}

/// True when the expression is the literal `-1` (the sign base).
fn is_minus_one(e: &Expr) -> bool {
    matches!(e, Expr::Num(q) if *q == rat(-1, 1))
}

/// Multiplies `e^exp` onto `t`, factor by factor.
fn mul_expr(e: &Expr, exp: i64, t: HyperTerm) -> Result<HyperTerm, String> {
    let hyper = |err: wz_hyperterm::HyperError| err.to_string();
    match e {
        Expr::Mul(a, b) => mul_expr(b, exp, mul_expr(a, exp, t)?),
        Expr::Div(a, b) => mul_expr(b, -exp, mul_expr(a, exp, t)?),
        Expr::Neg(x) => {
            let t = if exp % 2 != 0 {
                t.mul_rat(rat(-1, 1)).map_err(hyper)?
            } else {
                t
            };
            mul_expr(x, exp, t)
        }
        Expr::Num(q) => {
            if q.is_zero() && exp < 0 {
                return Err("division by zero".into());
            }
            t.mul_rat(rat_pow(q, exp)?).map_err(hyper)
        }
        Expr::Var(v) => t.mul_poly(MultiPoly::var(v), exp).map_err(hyper),
        Expr::Add(..) | Expr::Sub(..) => t.mul_poly(poly_of(e)?, exp).map_err(hyper),
        Expr::Call(CallKind::Factorial, args) => {
            let arg = linear_form(&args[0], ConstantRule::Integer)?;
            t.mul_factorial(arg, exp).map_err(hyper)
        }
        Expr::Call(CallKind::Binomial, args) => {
            let top = linear_form(&args[0], ConstantRule::Integer)?;
            let bottom = linear_form(&args[1], ConstantRule::Integer)?;
            t.mul_binomial(top, bottom, exp).map_err(hyper)
        }
        Expr::Call(CallKind::Poch, args) => {
            let base = linear_form(&args[0], ConstantRule::RationalOk)?;
            let len = linear_form(&args[1], ConstantRule::Integer)?;
            t.mul_pochhammer(base, len, exp).map_err(hyper)
        }
        Expr::Pow(base, expo) => {
            if let Some(c) = const_int(expo) {
                if c == 0 {
                    return Ok(t);
                }
                let scaled = exp
                    .checked_mul(c)
                    .ok_or_else(|| "exponent overflow".to_string())?;
                return mul_expr(base, scaled, t);
            }
            let lin = linear_form(expo, ConstantRule::Integer)?;
            if is_minus_one(base) {
                if exp % 2 == 0 {
                    return Ok(t);
                }
                return t.mul_sign(lin).map_err(hyper);
            }
            let p = poly_of(base)?;
            t.mul_power(p, lin, exp).map_err(hyper)
        }
    }
}

/// Lowers a whole expression to a structured term.
pub fn term_of(e: &Expr) -> Result<HyperTerm, String> {
    mul_expr(e, 1, HyperTerm::one())
}

/// The lowered identity plus the variable bookkeeping the driver needs.
#[derive(Debug, Clone)]
pub struct Lowered {
    pub identity: Identity,
    pub n_var: String,
    pub sum_vars: Vec<String>,
    /// Variables free in the identity other than the recurrence variable,
    /// sorted; these need `--at` bindings for numeric work.
    pub parameters: Vec<String>,
}

fn collect_vars(e: &Expr, out: &mut BTreeSet<String>) {
    match e {
        Expr::Var(v) => {
            out.insert(v.clone());
        }
        Expr::Num(_) => {}
        Expr::Call(_, args) => args.iter().for_each(|a| collect_vars(a, out)),
        Expr::Neg(x) => collect_vars(x, out),
        Expr::Pow(a, b)
        | Expr::Mul(a, b)
        | Expr::Div(a, b)
        | Expr::Add(a, b)
        | Expr::Sub(a, b) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
    }
}

/// Converts a parsed identity into the engine's form, deciding the
/// recurrence variable along the way: a free variable literally named `n`
/// wins; otherwise a unique free variable is accepted; otherwise the
/// choice is ambiguous and reported as such.
pub fn lower(ast: &IdentityAst) -> Result<Lowered, DeskError> {
    let usage = DeskError::Usage;
    let sum_vars: Vec<String> = ast.sums.iter().map(|c| c.var.clone()).collect();

    let mut vars = BTreeSet::new();
    collect_vars(&ast.lhs, &mut vars);
    collect_vars(&ast.rhs, &mut vars);
    for clause in &ast.sums {
        if let Some((lo, hi)) = &clause.range {
            collect_vars(lo, &mut vars);
            collect_vars(hi, &mut vars);
        }
    }
    let free: Vec<String> = vars
        .iter()
        .filter(|v| !sum_vars.contains(v))
        .cloned()
        .collect();

    let n_var = if free.iter().any(|v| v == "n") {
        "n".to_string()
    } else {
        match free.len() {
            0 => "n".to_string(),
            1 => free[0].clone(),
            _ => {
                return Err(usage(format!(
                    "cannot decide the recurrence variable among {}; name one of them `n`",
                    free.join(", ")
                )))
            }
        }
    };

    let summand =
        term_of(&ast.lhs).map_err(|m| usage(format!("left-hand side: {m}")))?;
    let rhs = term_of(&ast.rhs).map_err(|m| usage(format!("right-hand side: {m}")))?;
    if rhs.constant().is_zero() {
        return Err(usage(
            "the right-hand side is identically zero; state the identity with a nonzero closed form"
                .into(),
        ));
    }

    let mut ranges = BTreeMap::new();
    for clause in &ast.sums {
        if let Some((lo, hi)) = &clause.range {
            let lo = linear_form(lo, ConstantRule::Integer)
                .map_err(|m| usage(format!("range of `{}`: {m}", clause.var)))?;
            let hi = linear_form(hi, ConstantRule::Integer)
                .map_err(|m| usage(format!("range of `{}`: {m}", clause.var)))?;
            ranges.insert(clause.var.clone(), SumRange::Explicit(lo, hi));
        }
    }

    let identity = Identity::new(summand, rhs, &n_var, sum_vars.clone(), ranges)?;
    let parameters = free.into_iter().filter(|v| *v != n_var).collect();
    Ok(Lowered {
        identity,
        n_var,
        sum_vars,
        parameters,
    })
}

/// Evaluates a linear form at a point of rational values.
pub(crate) fn eval_linform(
    l: &LinForm,
    point: &BTreeMap<String, Rat>,
) -> Result<Rat, DeskError> {
    let mut value = l.constant_part().clone();
    for (v, c) in l.coeffs() {
        let bound = point.get(v).ok_or_else(|| {
            DeskError::Usage(format!("no value given for `{v}`; bind it with --at"))
        })?;
        value += bound * rat(*c, 1);
    }
    Ok(value)
}

/// Resolves every summation range at a concrete point into finite
/// integer windows, in declaration order.
pub fn resolve_ranges(
    lowered: &Lowered,
    point: &BTreeMap<String, Rat>,
) -> Result<Vec<(String, i64, i64)>, DeskError> {
    let mut out = Vec::new();
    for v in &lowered.sum_vars {
        match lowered.identity.range(v) {
            SumRange::Explicit(lo, hi) => {
                let lo = eval_linform(lo, point)?;
                let hi = eval_linform(hi, point)?;
                let as_int = |q: &Rat, side: &str| {
                    rat_to_i64(q).ok_or_else(|| {
                        DeskError::Usage(format!(
                            "{side} bound of `{v}` is {q}, not an integer"
                        ))
                    })
                };
                out.push((v.clone(), as_int(&lo, "lower")?, as_int(&hi, "upper")?));
            }
            SumRange::NaturalSupport => {
                let bounds =
                    wz_oracle::natural_bounds(lowered.identity.summand(), v, point).map_err(
                        |e| match e {
                            wz_oracle::OracleError::UnboundedRange(_) => DeskError::Usage(format!(
                                "the natural range of `{v}` is unbounded here; give it explicit \
                                 bounds, e.g. `sum {v} = 0 .. n`"
                            )),
                            other => DeskError::Usage(format!(
                                "cannot resolve the natural range of `{v}`: {other}; give it \
                                 explicit bounds, e.g. `sum {v} = 0 .. n`"
                            )),
                        },
                    )?;
                out.push((v.clone(), bounds.0, bounds.1));
            }
        }
    }
    Ok(out)
}

/// Both sides of the identity at a full numeric point: the literal sum of
/// the summand over the resolved ranges, and the right-hand side's value.
pub fn sum_and_rhs(
    lowered: &Lowered,
    point: &BTreeMap<String, Rat>,
) -> Result<(Rat, Rat), DeskError> {
    let ranges = resolve_ranges(lowered, point)?;
    let borrowed: Vec<(&str, i64, i64)> =
        ranges.iter().map(|(v, lo, hi)| (v.as_str(), *lo, *hi)).collect();
    let lhs = wz_oracle::exact_sum_multi(lowered.identity.summand(), point, &borrowed)?;
    let rhs = lowered.identity.rhs().eval_exact(point)?;
    Ok((lhs, rhs))
}
