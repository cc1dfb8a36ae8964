//! Closed-form scalar expressions over chart coordinates.
//!
//! Expressions are immutable trees of rational/decimal constants, coordinate
//! references, the elementary functions exp/sin/cos/sinh/cosh, the four
//! arithmetic operations, and powers with constant exponents. They support
//! exact symbolic differentiation and a small set of sound local rewrites;
//! equality of expressions is decided numerically by sampling, never
//! symbolically.

mod parser;

pub use parser::{parse, ParseError};

use crate::chart::Chart;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, ToPrimitive};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// A numeric constant: exact rational when possible, IEEE double otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Number {
    Rational(Ratio<i64>),
    Float(f64),
}

impl Number {
    pub fn integer(n: i64) -> Number {
        Number::Rational(Ratio::from_integer(n))
    }

    /// Exact rational p/q. Panics if q == 0.
    pub fn rational(p: i64, q: i64) -> Number {
        Number::Rational(Ratio::new(p, q))
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Number::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Number::Float(v) => *v,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Number::Rational(r) => r.numer() == &0,
            Number::Float(v) => *v == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Number::Rational(r) => r.numer() == &1 && r.denom() == &1,
            Number::Float(v) => *v == 1.0,
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Number::Rational(r) => r.is_integer(),
            Number::Float(v) => v.is_finite() && v.fract() == 0.0,
        }
    }

    pub fn neg(self) -> Number {
        match self {
            Number::Rational(r) => Number::Rational(-r),
            Number::Float(v) => Number::Float(-v),
        }
    }

    // Arithmetic stays rational when both sides are rational and nothing
    // overflows i64; otherwise it falls back to doubles.
    pub fn add(self, other: Number) -> Number {
        match (self, other) {
            (Number::Rational(a), Number::Rational(b)) => a
                .checked_add(&b)
                .map(Number::Rational)
                .unwrap_or_else(|| Number::Float(self.as_f64() + other.as_f64())),
            _ => Number::Float(self.as_f64() + other.as_f64()),
        }
    }

    pub fn sub(self, other: Number) -> Number {
        match (self, other) {
            (Number::Rational(a), Number::Rational(b)) => a
                .checked_sub(&b)
                .map(Number::Rational)
                .unwrap_or_else(|| Number::Float(self.as_f64() - other.as_f64())),
            _ => Number::Float(self.as_f64() - other.as_f64()),
        }
    }

    pub fn mul(self, other: Number) -> Number {
        match (self, other) {
            (Number::Rational(a), Number::Rational(b)) => a
                .checked_mul(&b)
                .map(Number::Rational)
                .unwrap_or_else(|| Number::Float(self.as_f64() * other.as_f64())),
            _ => Number::Float(self.as_f64() * other.as_f64()),
        }
    }

    /// Exact division; `None` when the divisor is zero.
    pub fn div(self, other: Number) -> Option<Number> {
        if other.is_zero() {
            return None;
        }
        Some(match (self, other) {
            (Number::Rational(a), Number::Rational(b)) => a
                .checked_div(&b)
                .map(Number::Rational)
                .unwrap_or_else(|| Number::Float(self.as_f64() / other.as_f64())),
            _ => Number::Float(self.as_f64() / other.as_f64()),
        })
    }

    /// Constant power. `None` when folding is unsound (0 to a negative power,
    /// negative base with fractional exponent) or would leave i64 range.
    pub fn pow(self, exp: Number) -> Option<Number> {
        if self.is_zero() && exp.as_f64() < 0.0 {
            return None;
        }
        if let (Number::Rational(base), Number::Rational(e)) = (self, exp) {
            if e.is_integer() {
                let n = *e.numer();
                if n.unsigned_abs() <= 64 {
                    let mut acc = Ratio::from_integer(1i64);
                    for _ in 0..n.unsigned_abs() {
                        acc = acc.checked_mul(&base)?;
                    }
                    if n < 0 {
                        if acc.numer() == &0 {
                            return None;
                        }
                        acc = acc.recip();
                    }
                    return Some(Number::Rational(acc));
                }
            }
        }
        let (b, e) = (self.as_f64(), exp.as_f64());
        if b < 0.0 && !exp.is_integer() {
            return None;
        }
        let v = if exp.is_integer() && e.abs() < 2_147_483_647.0 {
            b.powi(e as i32)
        } else {
            b.powf(e)
        };
        v.is_finite().then_some(Number::Float(v))
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Number::Float(v) => {
                if v.is_finite() && v.fract() == 0.0 {
                    // keep the decimal point so the constant reparses as a double
                    write!(f, "{:.1}", v)
                } else {
                    write!(f, "{}", v)
                }
            }
        }
    }
}

/// The elementary functions of the expression grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
}

impl Func {
    pub fn name(&self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            _ => return None,
        })
    }

    fn apply(&self, v: f64) -> f64 {
        match self {
            Func::Exp => v.exp(),
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Sinh => v.sinh(),
            Func::Cosh => v.cosh(),
        }
    }
}

/// Immutable expression tree. Subtrees are shared via `Arc`, so clones are
/// shallow and evaluation from multiple threads is safe.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Number),
    Coord(usize),
    Neg(Arc<Expr>),
    Func(Func, Arc<Expr>),
    Add(Arc<Expr>, Arc<Expr>),
    Sub(Arc<Expr>, Arc<Expr>),
    Mul(Arc<Expr>, Arc<Expr>),
    Div(Arc<Expr>, Arc<Expr>),
    Pow(Arc<Expr>, Number),
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EvalError {
    #[error("division by zero at point {point:?}")]
    DivisionByZero { point: Vec<f64> },
    #[error("{what} at point {point:?}")]
    Domain { what: String, point: Vec<f64> },
}

impl Expr {
    pub fn integer(n: i64) -> Expr {
        Expr::Const(Number::integer(n))
    }

    pub fn rational(p: i64, q: i64) -> Expr {
        Expr::Const(Number::rational(p, q))
    }

    pub fn float(v: f64) -> Expr {
        Expr::Const(Number::Float(v))
    }

    pub fn coord(i: usize) -> Expr {
        Expr::Coord(i)
    }

    pub fn zero() -> Expr {
        Expr::integer(0)
    }

    pub fn one() -> Expr {
        Expr::integer(1)
    }

    pub fn is_zero_const(&self) -> bool {
        matches!(self, Expr::Const(n) if n.is_zero())
    }

    pub fn is_one_const(&self) -> bool {
        matches!(self, Expr::Const(n) if n.is_one())
    }

    // Smart constructors. These apply exactly the sound rewrites listed for
    // `simplify` (zero/one absorption, constant folding, double negation) at
    // build time, which keeps derived tensors like the Riemann components from
    // drowning in structural zeros.

    pub fn neg(e: Expr) -> Expr {
        match e {
            Expr::Const(n) => Expr::Const(n.neg()),
            Expr::Neg(inner) => inner.as_ref().clone(),
            _ => Expr::Neg(Arc::new(e)),
        }
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        if a.is_zero_const() {
            return b;
        }
        if b.is_zero_const() {
            return a;
        }
        if let (Expr::Const(x), Expr::Const(y)) = (&a, &b) {
            return Expr::Const(x.add(*y));
        }
        Expr::Add(Arc::new(a), Arc::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        if b.is_zero_const() {
            return a;
        }
        if a.is_zero_const() {
            return Expr::neg(b);
        }
        if let (Expr::Const(x), Expr::Const(y)) = (&a, &b) {
            return Expr::Const(x.sub(*y));
        }
        Expr::Sub(Arc::new(a), Arc::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        if a.is_zero_const() || b.is_zero_const() {
            return Expr::zero();
        }
        if a.is_one_const() {
            return b;
        }
        if b.is_one_const() {
            return a;
        }
        if let (Expr::Const(x), Expr::Const(y)) = (&a, &b) {
            return Expr::Const(x.mul(*y));
        }
        Expr::Mul(Arc::new(a), Arc::new(b))
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        if b.is_one_const() {
            return a;
        }
        if let (Expr::Const(x), Expr::Const(y)) = (&a, &b) {
            if let Some(q) = x.div(*y) {
                return Expr::Const(q);
            }
        }
        Expr::Div(Arc::new(a), Arc::new(b))
    }

    pub fn pow(base: Expr, exp: Number) -> Expr {
        if exp.is_one() {
            return base;
        }
        if exp.is_zero() {
            return Expr::one();
        }
        if let Expr::Const(b) = &base {
            if let Some(v) = b.pow(exp) {
                return Expr::Const(v);
            }
        }
        Expr::Pow(Arc::new(base), exp)
    }

    pub fn func(f: Func, e: Expr) -> Expr {
        Expr::Func(f, Arc::new(e))
    }

    /// IEEE double-precision value at a point.
    pub fn eval(&self, point: &[f64]) -> Result<f64, EvalError> {
        Ok(match self {
            Expr::Const(n) => n.as_f64(),
            Expr::Coord(i) => point[*i],
            Expr::Neg(e) => -e.eval(point)?,
            Expr::Func(f, e) => f.apply(e.eval(point)?),
            Expr::Add(a, b) => a.eval(point)? + b.eval(point)?,
            Expr::Sub(a, b) => a.eval(point)? - b.eval(point)?,
            Expr::Mul(a, b) => a.eval(point)? * b.eval(point)?,
            Expr::Div(a, b) => {
                let d = b.eval(point)?;
                if d == 0.0 {
                    return Err(EvalError::DivisionByZero {
                        point: point.to_vec(),
                    });
                }
                a.eval(point)? / d
            }
            Expr::Pow(base, exp) => {
                let b = base.eval(point)?;
                let e = exp.as_f64();
                if b == 0.0 && e < 0.0 {
                    return Err(EvalError::DivisionByZero {
                        point: point.to_vec(),
                    });
                }
                if b < 0.0 && !exp.is_integer() {
                    return Err(EvalError::Domain {
                        what: format!("negative base {b} raised to non-integer exponent {e}"),
                        point: point.to_vec(),
                    });
                }
                if exp.is_integer() && e.abs() < 2_147_483_647.0 {
                    b.powi(e as i32)
                } else {
                    b.powf(e)
                }
            }
        })
    }

    /// Exact symbolic partial derivative with respect to coordinate `i`.
    pub fn diff(&self, i: usize) -> Expr {
        match self {
            Expr::Const(_) => Expr::zero(),
            Expr::Coord(j) => {
                if *j == i {
                    Expr::one()
                } else {
                    Expr::zero()
                }
            }
            Expr::Neg(e) => Expr::neg(e.diff(i)),
            Expr::Func(f, e) => {
                let inner = e.as_ref().clone();
                let outer = match f {
                    Func::Exp => Expr::func(Func::Exp, inner),
                    Func::Sin => Expr::func(Func::Cos, inner),
                    Func::Cos => Expr::neg(Expr::func(Func::Sin, inner)),
                    Func::Sinh => Expr::func(Func::Cosh, inner),
                    Func::Cosh => Expr::func(Func::Sinh, inner),
                };
                Expr::mul(outer, e.diff(i))
            }
            Expr::Add(a, b) => Expr::add(a.diff(i), b.diff(i)),
            Expr::Sub(a, b) => Expr::sub(a.diff(i), b.diff(i)),
            Expr::Mul(a, b) => Expr::add(
                Expr::mul(a.diff(i), b.as_ref().clone()),
                Expr::mul(a.as_ref().clone(), b.diff(i)),
            ),
            Expr::Div(a, b) => Expr::div(
                Expr::sub(
                    Expr::mul(a.diff(i), b.as_ref().clone()),
                    Expr::mul(a.as_ref().clone(), b.diff(i)),
                ),
                Expr::pow(b.as_ref().clone(), Number::integer(2)),
            ),
            Expr::Pow(base, exp) => Expr::mul(
                Expr::mul(
                    Expr::Const(*exp),
                    Expr::pow(base.as_ref().clone(), exp.sub(Number::integer(1))),
                ),
                base.diff(i),
            ),
        }
    }

    /// Sound local rewrites only: 0+e, 1*e, 0*e, e^1, e^0, constant folding on
    /// exact rationals, double negation. Evaluation is preserved at every
    /// point of the domain.
    pub fn simplify(&self) -> Expr {
        match self {
            Expr::Const(_) | Expr::Coord(_) => self.clone(),
            Expr::Neg(e) => Expr::neg(e.simplify()),
            Expr::Func(f, e) => Expr::func(*f, e.simplify()),
            Expr::Add(a, b) => Expr::add(a.simplify(), b.simplify()),
            Expr::Sub(a, b) => Expr::sub(a.simplify(), b.simplify()),
            Expr::Mul(a, b) => Expr::mul(a.simplify(), b.simplify()),
            Expr::Div(a, b) => Expr::div(a.simplify(), b.simplify()),
            Expr::Pow(base, exp) => Expr::pow(base.simplify(), *exp),
        }
    }

    /// Infix rendering; `parse(render(e), chart)` returns a structurally
    /// identical tree for any `e` produced by the parser.
    pub fn render(&self, chart: &Chart) -> String {
        let mut s = String::new();
        self.render_prec(chart, 0, &mut s);
        s
    }

    // Precedence levels: 0 = add/sub, 1 = mul/div, 2 = unary minus, 3 = power,
    // 4 = atom.
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Mul(..) | Expr::Div(..) => 1,
            Expr::Neg(_) => 2,
            Expr::Const(n) if n.as_f64() < 0.0 => 2,
            Expr::Pow(..) => 3,
            _ => 4,
        }
    }

    fn render_prec(&self, chart: &Chart, min: u8, out: &mut String) {
        let needs_parens = self.prec() < min;
        if needs_parens {
            out.push('(');
        }
        match self {
            Expr::Const(n) => {
                if n.as_f64() < 0.0 {
                    out.push('-');
                    out.push_str(&n.neg().to_string());
                } else {
                    out.push_str(&n.to_string());
                }
            }
            Expr::Coord(i) => out.push_str(chart.name(*i)),
            Expr::Neg(e) => {
                out.push('-');
                e.render_prec(chart, 3, out);
            }
            Expr::Func(f, e) => {
                out.push_str(f.name());
                out.push('(');
                e.render_prec(chart, 0, out);
                out.push(')');
            }
            Expr::Add(a, b) => {
                a.render_prec(chart, 0, out);
                out.push_str(" + ");
                b.render_prec(chart, 1, out);
            }
            Expr::Sub(a, b) => {
                a.render_prec(chart, 0, out);
                out.push_str(" - ");
                b.render_prec(chart, 1, out);
            }
            Expr::Mul(a, b) => {
                a.render_prec(chart, 1, out);
                out.push_str(" * ");
                b.render_prec(chart, 2, out);
            }
            Expr::Div(a, b) => {
                a.render_prec(chart, 1, out);
                out.push_str(" / ");
                b.render_prec(chart, 2, out);
            }
            Expr::Pow(base, exp) => {
                base.render_prec(chart, 4, out);
                out.push('^');
                if exp.as_f64() < 0.0 {
                    out.push('-');
                    out.push_str(&exp.neg().to_string());
                } else {
                    out.push_str(&exp.to_string());
                }
            }
        }
        if needs_parens {
            out.push(')');
        }
    }

    /// Folds a coordinate-free tree to a number; `None` if any coordinate or
    /// function appears.
    pub fn const_value(&self) -> Option<Number> {
        match self {
            Expr::Const(n) => Some(*n),
            Expr::Coord(_) | Expr::Func(..) => None,
            Expr::Neg(e) => e.const_value().map(Number::neg),
            Expr::Add(a, b) => Some(a.const_value()?.add(b.const_value()?)),
            Expr::Sub(a, b) => Some(a.const_value()?.sub(b.const_value()?)),
            Expr::Mul(a, b) => Some(a.const_value()?.mul(b.const_value()?)),
            Expr::Div(a, b) => a.const_value()?.div(b.const_value()?),
            Expr::Pow(base, exp) => base.const_value()?.pow(*exp),
        }
    }
}

/// Relative residual |a−b| / max(1, |a|, |b|).
pub fn rel_residual(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}

/// Sampled numeric equality over the chart's seeded sample points.
/// Returns (equal within `tol`, max relative residual).
pub fn equal_numeric(
    a: &Expr,
    b: &Expr,
    chart: &Chart,
    tol: f64,
) -> Result<(bool, f64), EvalError> {
    let mut max = 0.0f64;
    for p in chart.sample_points() {
        let va = a.eval(&p)?;
        let vb = b.eval(&p)?;
        max = max.max(rel_residual(va, vb));
    }
    Ok((max <= tol, max))
}
