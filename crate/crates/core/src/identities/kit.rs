//! Small helpers shared by the catalog builders.

use crate::algebra::{LaurentPoly, RationalExpr, SeriesCtx, SymbolTable, TruncatedSeries, Var};
use crate::error::{Error, Result};
use crate::qkernel::{binom2, inv_qfactorial, qpochhammer, qpochhammer_inf_inv_series, qpochhammer_inf_series, qpochhammer_inv};
use crate::special::{eq_deformed, phi_series, HyperSpec};

/// One family instance handed to a builder.
#[derive(Clone, Debug)]
pub struct Inst {
    pub order: u32,
    pub scale: u32,
    values: Vec<(&'static str, i64)>,
}

impl Inst {
    pub fn new(order: u32, scale: u32, values: Vec<(&'static str, i64)>) -> Self {
        Inst { order, scale: scale.max(1), values }
    }

    pub fn get(&self, name: &str) -> i64 {
        self.values
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| *v)
            .unwrap_or_else(|| panic!("family parameter `{name}` not set"))
    }

    /// Nonnegative family value.
    pub fn nat(&self, name: &str) -> u32 {
        self.get(name).max(0) as u32
    }

    pub fn table(&self) -> SymbolTable {
        SymbolTable::new(self.scale)
    }

    pub fn describe(&self) -> String {
        self.values.iter().map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(", ")
    }
}

pub fn var(v: Var) -> LaurentPoly {
    LaurentPoly::var(v)
}

pub fn one() -> LaurentPoly {
    LaurentPoly::one()
}

pub fn int(c: i64) -> LaurentPoly {
    LaurentPoly::int(c)
}

pub fn q(t: &SymbolTable, k: i64) -> LaurentPoly {
    LaurentPoly::q_pow(t, k)
}

pub fn sqrt_q(t: &SymbolTable) -> Result<LaurentPoly> {
    LaurentPoly::q_frac(t, 1, 2)
}

/// `c^C(k,2)` for a single-term `c`.
pub fn tri(c: &LaurentPoly, k: i64) -> Result<LaurentPoly> {
    c.pow_i(binom2(k))
}

pub fn sign(k: i64) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Finite `(a;q)_n`.
pub fn poch(t: &SymbolTable, a: &LaurentPoly, n: u32) -> LaurentPoly {
    qpochhammer(t, a, n)
}

/// `1/(a;q)_n` as a rational expression.
pub fn poch_inv(t: &SymbolTable, a: &LaurentPoly, n: u32) -> Result<RationalExpr> {
    qpochhammer_inv(t, a, n)
}

/// `1/(q;q)_n`.
pub fn inv_fact(t: &SymbolTable, n: u32) -> RationalExpr {
    inv_qfactorial(t, n)
}

pub fn rat(p: LaurentPoly) -> RationalExpr {
    RationalExpr::from_poly(p)
}

/// `(a;q)_inf` through the Euler expansion.
pub fn pinf(ctx: &SeriesCtx, a: &LaurentPoly) -> Result<TruncatedSeries> {
    qpochhammer_inf_series(ctx, a)
}

/// `1/(a;q)_inf`.
pub fn pinf_inv(ctx: &SeriesCtx, a: &LaurentPoly) -> Result<TruncatedSeries> {
    qpochhammer_inf_inv_series(ctx, a)
}

/// Product of `(a;q)_inf` over `num` and `1/(b;q)_inf` over `den`.
pub fn pinf_ratio(ctx: &SeriesCtx, num: &[LaurentPoly], den: &[LaurentPoly]) -> Result<TruncatedSeries> {
    let mut acc = ctx.one();
    for a in num {
        acc = acc.mul_ref(&pinf(ctx, a)?);
    }
    for b in den {
        acc = acc.mul_ref(&pinf_inv(ctx, b)?);
    }
    Ok(acc)
}

pub fn eq(ctx: &SeriesCtx, z: &LaurentPoly, u: &LaurentPoly) -> Result<TruncatedSeries> {
    eq_deformed(ctx, z, u)
}

/// Deformed `rPhi_s(upper; lower; q, u, z)`.
pub fn phi(ctx: &SeriesCtx, upper: Vec<LaurentPoly>, lower: Vec<LaurentPoly>, u: LaurentPoly, z: LaurentPoly) -> Result<TruncatedSeries> {
    phi_series(ctx, &HyperSpec::deformed(ctx.table, upper, lower, u, z))
}

/// Classical `rphi_s(upper; lower; q, z)`.
pub fn phic(ctx: &SeriesCtx, upper: Vec<LaurentPoly>, lower: Vec<LaurentPoly>, z: LaurentPoly) -> Result<TruncatedSeries> {
    phi_series(ctx, &HyperSpec::classical(ctx.table, upper, lower, z))
}

/// Largest `k` with `k * val(p) <= order`; every later term of a sum carrying
/// the factor `p^k` lies beyond the truncation.
pub fn kmax(ctx: &SeriesCtx, p: &LaurentPoly) -> u32 {
    let d = ctx.valuation(p);
    if d < 1 {
        panic!("summation factor has no small content");
    }
    (ctx.order as i64 / d) as u32
}

/// `coef * s`, truncated back to the context order.
pub fn scaled(ctx: &SeriesCtx, s: &TruncatedSeries, coef: &RationalExpr) -> Result<TruncatedSeries> {
    Ok(s.mul_rational(coef)?.truncate(ctx.order))
}

pub fn total(ctx: &SeriesCtx, parts: &[TruncatedSeries]) -> TruncatedSeries {
    TruncatedSeries::sum(ctx.small, ctx.order, parts.iter())
}

/// `sum_{k=0}^{kmax} f(k)` in the context.
pub fn sum_k<F>(ctx: &SeriesCtx, kmax: u32, mut f: F) -> Result<TruncatedSeries>
where
    F: FnMut(u32) -> Result<TruncatedSeries>,
{
    let mut parts = Vec::with_capacity(kmax as usize + 1);
    for k in 0..=kmax {
        parts.push(f(k)?.truncate(ctx.order));
    }
    Ok(total(ctx, &parts))
}

/// `sum_n coef(n) z^n` for a generating function in a single small
/// monomial `z`.
pub fn gen_sum<F>(ctx: &SeriesCtx, z: &LaurentPoly, mut coef: F) -> Result<TruncatedSeries>
where
    F: FnMut(u32) -> Result<RationalExpr>,
{
    let top = kmax(ctx, z);
    let mut parts = Vec::new();
    for n in 0..=top {
        let c = coef(n)?.mul_poly(&z.pow(n));
        parts.push(ctx.rat(&c)?);
    }
    Ok(total(ctx, &parts))
}

pub fn invalid(msg: &str) -> Error {
    Error::Invalid(msg.to_string())
}

/// `[n k]` in base `b` as `(b;b)_n / ((b;b)_k (b;b)_(n-k))`, by exact
/// polynomial division; independent of the Pascal recurrence.
pub fn binom_quotient(b: &LaurentPoly, n: i64, k: i64) -> Result<LaurentPoly> {
    if k < 0 || k > n {
        return Ok(LaurentPoly::zero());
    }
    let f = |m: i64| crate::qkernel::qpochhammer_base(b, b, m as u32);
    f(n).exact_div(&(f(k) * f(n - k))).ok_or_else(|| invalid("Gaussian quotient is not a polynomial"))
}

/// `sum_(n,m) coef(n, m) t^n s^m` over two small monomials.
pub fn double_gen<F>(ctx: &SeriesCtx, t: &LaurentPoly, s: &LaurentPoly, mut coef: F) -> Result<TruncatedSeries>
where
    F: FnMut(u32, u32) -> Result<RationalExpr>,
{
    let (dt, ds) = (ctx.valuation(t), ctx.valuation(s));
    if dt < 1 || ds < 1 {
        return Err(invalid("generating variables must be small"));
    }
    let mut parts = Vec::new();
    for n in 0..=(ctx.order as i64 / dt) {
        for m in 0..=((ctx.order as i64 - n * dt) / ds) {
            let c = coef(n as u32, m as u32)?.mul_poly(&(t.pow(n as u32) * s.pow(m as u32)));
            parts.push(ctx.rat(&c)?);
        }
    }
    Ok(total(ctx, &parts))
}
