use super::super::kit::*;
use super::super::{Built, IdentitySpec};
use crate::algebra::{LaurentPoly, SeriesCtx, SymbolTable, TruncatedSeries};
use crate::error::Result;
use crate::special::{named_exponential, named_poly, r_poly_u, ExpKind, NamedPoly};

// Every sum below carries z^n or b^n with z, b small, so truncating at the
// index where that factor passes the order is exact.

pub fn specs() -> Vec<IdentitySpec> {
    let zbd = &["z", "b", "d"];
    vec![
        IdentitySpec::new(
            "heine.generalized",
            "sum e_q(cq^n,u) (a;q)_n (b;q)_n z^n/(q;q)_n = (b,az;q)_inf/(z;q)_inf sum R_n(1,c/b;u) (z;q)_n b^n/((az;q)_n (q;q)_n)",
            generalized,
        )
        .small(zbd)
        .order(6)
        .subs(&["c = b*d"]),
        IdentitySpec::new(
            "heine.phi32",
            "3phi2(a,b,c; 0,0; q, z) = (az,b,c;q)_inf/(z;q)_inf sum h_n(c/b|q) (z;q)_n b^n/((az;q)_n (q;q)_n)",
            phi32,
        )
        .small(zbd)
        .order(6)
        .subs(&["c = b*d"]),
        IdentitySpec::new(
            "heine.rr",
            "sum R_q(cq^n) (a;q)_n (b;q)_n z^n/(q;q)_n = (b,az;q)_inf/(z;q)_inf sum S_n(c/b;q) (z;q)_n b^n/((az;q)_n (q;q)_n)",
            rr,
        )
        .small(zbd)
        .order(6)
        .subs(&["c = b*d"]),
        IdentitySpec::new(
            "heine.rn_representation",
            "sum R_n(1,x;u) (z;q)_n b^n/((az;q)_n (q;q)_n) = (z;q)_inf/(az,b;q)_inf sum e_q(bxq^n,u) (a;q)_n (b;q)_n z^n/(q;q)_n",
            rn_representation,
        )
        .small(&["z", "b"])
        .order(6),
    ]
}

struct Syms {
    t: SymbolTable,
    z: LaurentPoly,
    b: LaurentPoly,
    a: LaurentPoly,
    u: LaurentPoly,
}

fn syms(i: &Inst) -> Syms {
    let mut t = i.table();
    let z = var(t.small("z"));
    let b = var(t.small("b"));
    let a = var(t.parameter("a"));
    let u = var(t.parameter("u"));
    Syms { t, z, b, a, u }
}

/// `sum_n f(n) (a;q)_n (b;q)_n z^n/(q;q)_n` for a series-valued `f`.
fn left(ctx: &SeriesCtx, s: &Syms, mut f: impl FnMut(u32) -> Result<TruncatedSeries>) -> Result<TruncatedSeries> {
    sum_k(ctx, kmax(ctx, &s.z), |n| {
        let c = inv_fact(&s.t, n).mul_poly(&(poch(&s.t, &s.a, n) * poch(&s.t, &s.b, n) * s.z.pow(n)));
        scaled(ctx, &f(n)?, &c)
    })
}

/// `sum_n p(n) (z;q)_n b^n/((az;q)_n (q;q)_n)` for a polynomial-valued `p`.
fn right_sum(ctx: &SeriesCtx, s: &Syms, mut p: impl FnMut(u32) -> Result<LaurentPoly>) -> Result<TruncatedSeries> {
    let az = &s.a * &s.z;
    sum_k(ctx, kmax(ctx, &s.b), |n| {
        let c = inv_fact(&s.t, n).mul_ref(&poch_inv(&s.t, &az, n)?).mul_poly(&(p(n)? * poch(&s.t, &s.z, n) * s.b.pow(n)));
        ctx.rat(&c)
    })
}

fn generalized(i: &Inst) -> Result<Built> {
    let mut s = syms(i);
    let d = var(s.t.small("d"));
    let ctx = SeriesCtx::new(&s.t, i.order);
    let c = &s.b * &d;
    let lhs = left(&ctx, &s, |n| eq(&ctx, &(&c * &q(&s.t, n as i64)), &s.u))?;
    let pre = pinf_ratio(&ctx, &[s.b.clone(), &s.a * &s.z], &[s.z.clone()])?;
    let rhs = pre.mul_ref(&right_sum(&ctx, &s, |n| Ok(r_poly_u(&s.t, n, &one(), &d, &s.u)))?);
    Ok(Built::new(s.t.clone()).series("", lhs, rhs))
}

fn phi32(i: &Inst) -> Result<Built> {
    let mut s = syms(i);
    let d = var(s.t.small("d"));
    let ctx = SeriesCtx::new(&s.t, i.order);
    let c = &s.b * &d;
    let zero = LaurentPoly::zero();
    let lhs = phic(&ctx, vec![s.a.clone(), s.b.clone(), c.clone()], vec![zero.clone(), zero], s.z.clone())?;
    let pre = pinf_ratio(&ctx, &[&s.a * &s.z, s.b.clone(), c], &[s.z.clone()])?;
    let rhs = pre.mul_ref(&right_sum(&ctx, &s, |n| named_poly(&s.t, NamedPoly::RogersSzego, n, &d, &LaurentPoly::zero()))?);
    Ok(Built::new(s.t.clone()).series("", lhs, rhs))
}

fn rr(i: &Inst) -> Result<Built> {
    let mut s = syms(i);
    let d = var(s.t.small("d"));
    let ctx = SeriesCtx::new(&s.t, i.order);
    let c = &s.b * &d;
    let lhs = left(&ctx, &s, |n| named_exponential(&ctx, ExpKind::RogersRamanujan, &(&c * &q(&s.t, n as i64))))?;
    let pre = pinf_ratio(&ctx, &[s.b.clone(), &s.a * &s.z], &[s.z.clone()])?;
    let rhs = pre.mul_ref(&right_sum(&ctx, &s, |n| named_poly(&s.t, NamedPoly::StieltjesWigert, n, &d, &LaurentPoly::zero()))?);
    Ok(Built::new(s.t.clone()).series("", lhs, rhs))
}

fn rn_representation(i: &Inst) -> Result<Built> {
    let mut s = syms(i);
    let x = var(s.t.parameter("x"));
    let ctx = SeriesCtx::new(&s.t, i.order);
    let lhs = right_sum(&ctx, &s, |n| Ok(r_poly_u(&s.t, n, &one(), &x, &s.u)))?;
    let pre = pinf_ratio(&ctx, &[s.z.clone()], &[&s.a * &s.z, s.b.clone()])?;
    let rhs = pre.mul_ref(&left(&ctx, &s, |n| eq(&ctx, &(&s.b * &x * &q(&s.t, n as i64)), &s.u))?);
    Ok(Built::new(s.t.clone()).series("", lhs, rhs))
}
