use super::super::kit::*;
use super::super::{Built, IdentitySpec};
use crate::algebra::{LaurentPoly, SeriesCtx, SymbolKind, SymbolTable, TruncatedSeries};
use crate::error::Result;
use crate::qkernel::{binom2, qpochhammer_qpower_truncated};
use crate::special::{named_exponential, named_poly, phi_series, r_poly_u, ExpKind, HyperSpec, NamedPoly};

pub fn specs() -> Vec<IdentitySpec> {
    let z = &["z"];
    vec![
        IdentitySpec::new(
            "genfunc.v",
            "sum v^C(n,2) R_n(x,y;u) z^n/(q;q)_n = sum_k (uv)^C(k,2) (yz)^k/(q;q)_k e_q(v^k xz, v)",
            gen_v,
        )
        .small(z),
        IdentitySpec::new("genfunc.qbinomial", "sum R_n(x,y;u) z^n/(q;q)_n = e_q(yz,u)/(xz;q)_inf", gen_qbinomial).small(z),
        IdentitySpec::new("genfunc.specials.hn", "sum h_n(x|q) z^n/(q;q)_n = 1/(z,xz;q)_inf", gen_hn).small(z),
        IdentitySpec::new("genfunc.specials.cauchy", "sum P_n(x,y) z^n/(q;q)_n = (yz;q)_inf/(xz;q)_inf", gen_cauchy).small(z),
        IdentitySpec::new(
            "genfunc.specials.exton",
            "sum E_n(x,y) z^n/(q;q)_n = e_q(yz,q^(1/2))/(xz;q)_inf = 1phi1(0; -q^(1/2); q^(1/2), -yz)/(xz;q)_inf",
            gen_exton,
        )
        .small(z)
        .scale(2),
        IdentitySpec::new(
            "genfunc.specials.stieltjes_wigert",
            "sum S_n(x;q) z^n/(q;q)_n = R_q(xz)/(z;q)_inf with R_q(z) = e_q(qz,q^2)",
            gen_sw,
        )
        .small(z),
        IdentitySpec::new(
            "genfunc.rr_products.first",
            "sum q^(n^2)/(q;q)_n = 1/((q;q^5)_inf (q^4;q^5)_inf)",
            |i| rr_product(i, 0),
        )
        .small(&["q"])
        .order(30)
        .notes(&["R_q(xz)/(z;q)_inf cannot be set at xz = 1 while z stays small; the value R_q(1) is checked as a pure q-series"]),
        IdentitySpec::new(
            "genfunc.rr_products.second",
            "sum q^(n^2+n)/(q;q)_n = 1/((q^2;q^5)_inf (q^3;q^5)_inf)",
            |i| rr_product(i, 1),
        )
        .small(&["q"])
        .order(30),
        IdentitySpec::new(
            "genfunc.v_eq_q",
            "sum (-1)^n q^C(n,2) R_n(x,y;u) z^n/(q;q)_n = (xz;q)_inf 1Phi1(0; xz; q, u, yz)",
            gen_v_eq_q,
        )
        .small(z),
        IdentitySpec::new(
            "genfunc.v_q_u_qinv",
            "sum q^C(n,2) R_n(x,y;q^-1) z^n/(q;q)_n = (-xz;q)_inf sum_k (yz)^k/((q;q)_k (-xz;q)_k) = 1phi1(yz; 0; q, -xz)/(yz;q)_inf",
            gen_v_q_u_qinv,
        )
        .small(z),
    ]
}

struct Syms {
    t: SymbolTable,
    z: LaurentPoly,
    x: LaurentPoly,
    y: LaurentPoly,
}

fn syms(i: &Inst) -> Syms {
    let mut t = i.table();
    let z = var(t.small("z"));
    let x = var(t.parameter("x"));
    let y = var(t.parameter("y"));
    Syms { t, z, x, y }
}

/// `sum_k (uv)^C(k,2) (yz)^k/(q;q)_k e_q(v^k xz, v)`.
fn v_side(ctx: &SeriesCtx, s: &Syms, u: &LaurentPoly, v: &LaurentPoly) -> Result<TruncatedSeries> {
    let yz = &s.y * &s.z;
    let xz = &s.x * &s.z;
    let uv = u * v;
    sum_k(ctx, kmax(ctx, &s.z), |k| {
        let c = inv_fact(&s.t, k).mul_poly(&(tri(&uv, k as i64)? * yz.pow(k)));
        scaled(ctx, &eq(ctx, &(v.pow_i(k as i64)? * &xz), v)?, &c)
    })
}

fn gen_v(i: &Inst) -> Result<Built> {
    let mut s = syms(i);
    let u = var(s.t.parameter("u"));
    let v = var(s.t.parameter("v"));
    let ctx = SeriesCtx::new(&s.t, i.order);
    let lhs = gen_sum(&ctx, &s.z, |n| Ok(inv_fact(&s.t, n).mul_poly(&(tri(&v, n as i64)? * r_poly_u(&s.t, n, &s.x, &s.y, &u)))))?;
    let rhs = v_side(&ctx, &s, &u, &v)?;
    Ok(Built::new(s.t.clone()).series("", lhs, rhs))
}

fn gen_qbinomial(i: &Inst) -> Result<Built> {
    let mut s = syms(i);
    let u = var(s.t.parameter("u"));
    let ctx = SeriesCtx::new(&s.t, i.order);
    let lhs = gen_sum(&ctx, &s.z, |n| Ok(inv_fact(&s.t, n).mul_poly(&r_poly_u(&s.t, n, &s.x, &s.y, &u))))?;
    let rhs = eq(&ctx, &(&s.y * &s.z), &u)?.mul_ref(&pinf_inv(&ctx, &(&s.x * &s.z))?);
    Ok(Built::new(s.t.clone()).series("", lhs, rhs))
}

fn gen_named(i: &Inst, kind: NamedPoly, rhs: impl Fn(&SeriesCtx, &Syms) -> Result<TruncatedSeries>) -> Result<Built> {
    let s = syms(i);
    let ctx = SeriesCtx::new(&s.t, i.order);
    let lhs = gen_sum(&ctx, &s.z, |n| Ok(inv_fact(&s.t, n).mul_poly(&named_poly(&s.t, kind, n, &s.x, &s.y)?)))?;
    let r = rhs(&ctx, &s)?;
    Ok(Built::new(s.t.clone()).series("", lhs, r))
}

fn gen_hn(i: &Inst) -> Result<Built> {
    gen_named(i, NamedPoly::RogersSzego, |ctx, s| pinf_ratio(ctx, &[], &[s.z.clone(), &s.x * &s.z]))
}

fn gen_cauchy(i: &Inst) -> Result<Built> {
    gen_named(i, NamedPoly::Cauchy, |ctx, s| pinf_ratio(ctx, &[&s.y * &s.z], &[&s.x * &s.z]))
}

fn gen_exton(i: &Inst) -> Result<Built> {
    let s = syms(i);
    let ctx = SeriesCtx::new(&s.t, i.order);
    let lhs = gen_sum(&ctx, &s.z, |n| Ok(inv_fact(&s.t, n).mul_poly(&named_poly(&s.t, NamedPoly::Exton, n, &s.x, &s.y)?)))?;
    let yz = &s.y * &s.z;
    let inv = pinf_inv(&ctx, &(&s.x * &s.z))?;
    let r = sqrt_q(&s.t)?;
    let via_eq = named_exponential(&ctx, ExpKind::Exton, &yz)?.mul_ref(&inv);
    let spec = HyperSpec::classical(&s.t, vec![LaurentPoly::zero()], vec![r.neg_ref()], yz.neg_ref()).with_base(r);
    let via_phi = phi_series(&ctx, &spec)?.mul_ref(&inv);
    Ok(Built::new(s.t.clone()).series("e_q form", lhs.clone(), via_eq).series("1phi1 form", lhs, via_phi))
}

fn gen_sw(i: &Inst) -> Result<Built> {
    gen_named(i, NamedPoly::StieltjesWigert, |ctx, s| {
        Ok(named_exponential(ctx, ExpKind::RogersRamanujan, &(&s.x * &s.z))?.mul_ref(&pinf_inv(ctx, &s.z)?))
    })
}

/// `sum q^(n^2 + a n)/(q;q)_n` against the quintuple-modulus product for `a` in {0, 1}.
fn rr_product(i: &Inst, a: i64) -> Result<Built> {
    let mut t = i.table();
    let base = t.base();
    t.set_kind(base, SymbolKind::Small);
    let ctx = SeriesCtx::new(&t, i.order);
    let mut parts = Vec::new();
    let mut n = 0i64;
    while n * n + a * n <= i.order as i64 {
        parts.push(ctx.rat(&inv_fact(&t, n as u32).mul_poly(&q(&t, n * n + a * n)))?);
        n += 1;
    }
    let lhs = total(&ctx, &parts);
    let (m1, m2) = if a == 0 { (1, 4) } else { (2, 3) };
    let den = qpochhammer_qpower_truncated(&t, m1, 5, i.order) * qpochhammer_qpower_truncated(&t, m2, 5, i.order);
    let rhs = TruncatedSeries::inverse_poly(&den, ctx.small, ctx.order)?;
    Ok(Built::new(t.clone()).series("", lhs, rhs))
}

fn gen_v_eq_q(i: &Inst) -> Result<Built> {
    let mut s = syms(i);
    let u = var(s.t.parameter("u"));
    let ctx = SeriesCtx::new(&s.t, i.order);
    let lhs = gen_sum(&ctx, &s.z, |n| {
        let w = int(sign(n as i64)) * q(&s.t, binom2(n as i64));
        Ok(inv_fact(&s.t, n).mul_poly(&(w * r_poly_u(&s.t, n, &s.x, &s.y, &u))))
    })?;
    let xz = &s.x * &s.z;
    let rhs = pinf(&ctx, &xz)?.mul_ref(&phi(&ctx, vec![LaurentPoly::zero()], vec![xz.clone()], u, &s.y * &s.z)?);
    Ok(Built::new(s.t.clone()).series("", lhs, rhs))
}

fn gen_v_q_u_qinv(i: &Inst) -> Result<Built> {
    let s = syms(i);
    let ctx = SeriesCtx::new(&s.t, i.order);
    let qi = q(&s.t, -1);
    let lhs = gen_sum(&ctx, &s.z, |n| {
        Ok(inv_fact(&s.t, n).mul_poly(&(q(&s.t, binom2(n as i64)) * r_poly_u(&s.t, n, &s.x, &s.y, &qi))))
    })?;
    let (xz, yz) = (&s.x * &s.z, &s.y * &s.z);
    let mxz = xz.neg_ref();
    let first = pinf(&ctx, &mxz)?.mul_ref(&sum_k(&ctx, kmax(&ctx, &s.z), |k| {
        let c = inv_fact(&s.t, k).mul_ref(&poch_inv(&s.t, &mxz, k)?).mul_poly(&yz.pow(k));
        Ok(ctx.rat(&c)?)
    })?);
    let second = pinf_inv(&ctx, &yz)?.mul_ref(&phic(&ctx, vec![yz.clone()], vec![LaurentPoly::zero()], mxz)?);
    Ok(Built::new(s.t.clone()).series("v-side", lhs.clone(), first).series("1phi1", lhs, second))
}
