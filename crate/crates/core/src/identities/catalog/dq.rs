use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::super::kit::*;
use super::super::{Built, IdentitySpec};
use crate::algebra::{LaurentPoly, SeriesCtx, SymbolTable, TruncatedSeries, Var};
use crate::error::Result;
use crate::qkernel::{binom2, dq_pow, gauss_binomial, qpochhammer_base};

const LEIBNIZ_SEED: u64 = 0x5eed_0d0c;

pub fn specs() -> Vec<IdentitySpec> {
    vec![
        IdentitySpec::new(
            "dq.leibniz",
            "D^n(f g) = sum_k q^(k(k-n)) [n k] D^k f(x) * D^(n-k)[g(q^k x)], D applied after substitution",
            leibniz,
        )
        .param("trial", 0, 24)
        .notes(&["f, g random integer polynomials of degree <= 4 from a fixed-seed ChaCha8 stream; n = 0..4 per trial"]),
        IdentitySpec::new("dq.monomial_power", "D^n x^k = (q;q)_k/(q;q)_(k-n) x^(k-n), zero for n > k", monomial_power)
            .param("n", 0, 6)
            .param("k", 0, 8),
        IdentitySpec::new("dq.kder_basic", "D^k e_q(ax,u) = a^k u^C(k,2) e_q(a u^k x, u)", kder_basic)
            .param("k", 0, 4)
            .small(&["x"]),
        IdentitySpec::new(
            "dq.product_rule",
            "D^n[e_q(ax,u) e_q(bx,v)] = sum_k [n k] u^C(k,2) v^C(n-k,2) a^k b^(n-k) e_q(a u^k x,u) e_q(b q^k v^(n-k) x,v)",
            product_rule,
        )
        .param("n", 0, 3)
        .small(&["x"])
        .order(6),
        IdentitySpec::new(
            "dq.product.iden6",
            "D^n (ax,bx;q)_inf = (-1)^n q^C(n,2) (ax, b q^n x;q)_inf sum_k [n k] q^(k(k-n)) a^k b^(n-k) / (ax;q)_k",
            iden6,
        )
        .param("n", 0, 3)
        .small(&["x"])
        .order(6)
        .notes(&["carries the sign (-1)^n; the unsigned form is in the errata registry"]),
        IdentitySpec::new(
            "dq.product.iden7",
            "D^n [(-ax;q)_inf/(bx;q)_inf] = (-ax;q)_inf/(bx;q)_inf sum_k [n k] q^C(k,2) a^k b^(n-k) (bx;q)_k/(-ax;q)_k",
            iden7,
        )
        .param("n", 0, 3)
        .small(&["x"])
        .order(6),
        IdentitySpec::new(
            "dq.product.iden8",
            "D^n 1/(ax,bx;q)_inf = 1/(ax,bx;q)_inf sum_k [n k] a^k b^(n-k) (bx;q)_k",
            iden8,
        )
        .param("n", 0, 3)
        .small(&["x"])
        .order(6),
    ]
}

fn random_poly(rng: &mut ChaCha8Rng, x: Var) -> LaurentPoly {
    let deg = rng.gen_range(0..=4);
    let parts: Vec<LaurentPoly> = (0..=deg).map(|k| LaurentPoly::int(rng.gen_range(-5..=5)) * LaurentPoly::var_pow(x, k)).collect();
    LaurentPoly::sum(parts.iter())
}

fn leibniz(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let x = t.parameter("x");
    let mut rng = ChaCha8Rng::seed_from_u64(LEIBNIZ_SEED ^ i.get("trial") as u64);
    let f = random_poly(&mut rng, x);
    let g = random_poly(&mut rng, x);
    let mut checks = Vec::new();
    for n in 0..=4u32 {
        let lhs = dq_pow(&t, &(&f * &g), x, n)?;
        let mut parts = Vec::new();
        for k in 0..=n as i64 {
            let shifted = g.dilate(x, &q(&t, k))?;
            let term = q(&t, k * (k - n as i64))
                * gauss_binomial(&t, n as i64, k)
                * dq_pow(&t, &f, x, k as u32)?
                * dq_pow(&t, &shifted, x, n - k as u32)?;
            parts.push(term);
        }
        checks.push((n, lhs, LaurentPoly::sum(parts.iter())));
    }
    let mut b = Built::new(t);
    for (n, l, r) in checks {
        b = b.poly(format!("n={n}"), l, r);
    }
    Ok(b)
}

fn monomial_power(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let x = t.parameter("x");
    let (n, k) = (i.nat("n"), i.nat("k"));
    let lhs = dq_pow(&t, &LaurentPoly::var_pow(x, k as i32), x, n)?;
    let rhs = if n > k {
        LaurentPoly::zero()
    } else {
        // (q;q)_k/(q;q)_(k-n) = (q^(k-n+1);q)_n
        qpochhammer_base(&q(&t, (k - n + 1) as i64), &q(&t, 1), n) * LaurentPoly::var_pow(x, (k - n) as i32)
    };
    Ok(Built::new(t).poly("", lhs, rhs))
}

/// Context one order above `ctx` for a series that is differentiated `n` times.
fn lifted<'a>(ctx: &SeriesCtx<'a>, n: u32) -> SeriesCtx<'a> {
    ctx.with_order(ctx.order + n)
}

fn dq_n(t: &SymbolTable, s: &TruncatedSeries, x: Var, n: u32) -> Result<TruncatedSeries> {
    s.dq_pow(t, x, n)
}

fn kder_basic(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let x = t.small("x");
    let a = var(t.parameter("a"));
    let u = var(t.parameter("u"));
    let k = i.nat("k");
    let ctx = SeriesCtx::new(&t, i.order);
    let xp = var(x);
    let lhs = dq_n(&t, &eq(&lifted(&ctx, k), &(&a * &xp), &u)?, x, k)?;
    let coef = rat(a.pow(k) * tri(&u, k as i64)?);
    let rhs = scaled(&ctx, &eq(&ctx, &(&a * &u.pow(k) * &xp), &u)?, &coef)?;
    Ok(Built::new(t.clone()).series("", lhs, rhs))
}

fn product_rule(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let x = t.small("x");
    let a = var(t.parameter("a"));
    let b = var(t.parameter("b"));
    let u = var(t.parameter("u"));
    let v = var(t.parameter("v"));
    let n = i.nat("n");
    let ctx = SeriesCtx::new(&t, i.order);
    let up = lifted(&ctx, n);
    let xp = var(x);
    let f = eq(&up, &(&a * &xp), &u)?.mul_ref(&eq(&up, &(&b * &xp), &v)?);
    let lhs = dq_n(&t, &f, x, n)?;
    let rhs = sum_k(&ctx, n, |k| {
        let k = k as i64;
        let n = n as i64;
        let coef = gauss_binomial(&t, n, k) * tri(&u, k)? * tri(&v, n - k)? * a.pow(k as u32) * b.pow((n - k) as u32);
        let s = eq(&ctx, &(&a * &u.pow(k as u32) * &xp), &u)?
            .mul_ref(&eq(&ctx, &(&b * &q(&t, k) * &v.pow((n - k) as u32) * &xp), &v)?);
        scaled(&ctx, &s, &rat(coef))
    })?;
    Ok(Built::new(t.clone()).series("", lhs, rhs))
}

fn iden6(i: &Inst) -> Result<Built> {
    iden6_with_sign(i, true)
}

/// Shared with the errata entry, which drops the sign.
pub(crate) fn iden6_with_sign(i: &Inst, signed: bool) -> Result<Built> {
    let mut t = i.table();
    let x = t.small("x");
    let a = var(t.parameter("a"));
    let b = var(t.parameter("b"));
    let n = i.nat("n");
    let ctx = SeriesCtx::new(&t, i.order);
    let up = lifted(&ctx, n);
    let (ax, bx) = (&a * &var(x), &b * &var(x));
    let lhs = dq_n(&t, &pinf_ratio(&up, &[ax.clone(), bx.clone()], &[])?, x, n)?;
    let inner = sum_k(&ctx, n, |k| {
        let k = k as i64;
        let n = n as i64;
        let c = rat(gauss_binomial(&t, n, k) * q(&t, k * (k - n)) * a.pow(k as u32) * b.pow((n - k) as u32))
            .mul_ref(&poch_inv(&t, &ax, k as u32)?);
        ctx.rat(&c)
    })?;
    let sign = if signed { sign(n as i64) } else { 1 };
    let pre = rat(int(sign) * q(&t, binom2(n as i64)));
    let rhs = scaled(&ctx, &pinf_ratio(&ctx, &[ax.clone(), &bx * &q(&t, n as i64)], &[])?.mul_ref(&inner), &pre)?;
    Ok(Built::new(t.clone()).series("", lhs, rhs))
}

fn iden7(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let x = t.small("x");
    let a = var(t.parameter("a"));
    let b = var(t.parameter("b"));
    let n = i.nat("n");
    let ctx = SeriesCtx::new(&t, i.order);
    let up = lifted(&ctx, n);
    let (ax, bx) = (&a * &var(x), &b * &var(x));
    let lhs = dq_n(&t, &pinf_ratio(&up, &[ax.neg_ref()], &[bx.clone()])?, x, n)?;
    let inner = sum_k(&ctx, n, |k| {
        let k = k as i64;
        let n = n as i64;
        let c = rat(gauss_binomial(&t, n, k) * q(&t, binom2(k)) * a.pow(k as u32) * b.pow((n - k) as u32) * poch(&t, &bx, k as u32))
            .mul_ref(&poch_inv(&t, &ax.neg_ref(), k as u32)?);
        ctx.rat(&c)
    })?;
    let rhs = pinf_ratio(&ctx, &[ax.neg_ref()], &[bx.clone()])?.mul_ref(&inner);
    Ok(Built::new(t.clone()).series("", lhs, rhs))
}

fn iden8(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let x = t.small("x");
    let a = var(t.parameter("a"));
    let b = var(t.parameter("b"));
    let n = i.nat("n");
    let ctx = SeriesCtx::new(&t, i.order);
    let up = lifted(&ctx, n);
    let (ax, bx) = (&a * &var(x), &b * &var(x));
    let lhs = dq_n(&t, &pinf_ratio(&up, &[], &[ax.clone(), bx.clone()])?, x, n)?;
    let inner = sum_k(&ctx, n, |k| {
        let k = k as i64;
        let n = n as i64;
        ctx.poly(&(gauss_binomial(&t, n, k) * a.pow(k as u32) * b.pow((n - k) as u32) * poch(&t, &bx, k as u32)))
    })?;
    let rhs = pinf_ratio(&ctx, &[], &[ax.clone(), bx.clone()])?.mul_ref(&inner);
    Ok(Built::new(t.clone()).series("", lhs, rhs))
}
