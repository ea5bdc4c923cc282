use super::super::kit::*;
use super::super::{Built, IdentitySpec};
use crate::algebra::{LaurentPoly, SeriesCtx, SymbolTable, TruncatedSeries};
use crate::error::Result;
use crate::operators::OperatorSpec;
use crate::qkernel::qpochhammer_base;
use crate::special::{named_exponential, named_poly, r_poly_u, ExpKind, NamedPoly};

// R(yD_q) = T(qyD_q|q^2) and R_q(z) = e_q(qz,q^2). Every k-sum carries a
// power of a small symbol, so it stops once that power passes the order.

pub fn specs() -> Vec<IdentitySpec> {
    let xy = &["x", "y"];
    vec![
        IdentitySpec::new("rr_op.on_exp", "R(yD_q){1/(ax;q)_inf} = R_q(ay)/(ax;q)_inf", on_exp).small(xy).order(6),
        IdentitySpec::new(
            "rr_op.on_product",
            "R(yD_q){1/(ax,bx;q)_inf} = 1/(ax,bx;q)_inf sum_k q^(k^2) (bx;q)_k (ay)^k/(q;q)_k R_q(bq^(2k) y)",
            on_product,
        )
        .small(xy)
        .order(6),
        IdentitySpec::new(
            "rr_op.phi45",
            "sum q^(n^2) R_n(x,y;1,q^-2) z^n/(q;q)_n = 1/(qyz;q)_inf sum_m q^(m^2) (xz)^m (qyz;q)_(2m)/(q;q)_m = 1/(qyz;q)_inf 4phi5(sqrt(qyz), -sqrt(qyz), q sqrt(yz), -q sqrt(yz); 0,0,0,0,0; q, qxz)",
            |i| phi45(i, false),
        )
        .small(&["z"])
        .order(6)
        .notes(&[
            "the 4phi5 route pairs (a;q)_m (-a;q)_m = (a^2;q^2)_m, so (qyz;q^2)_m (q^2yz;q^2)_m stands in for the four square-root parameters at base scale 1",
            "the printed prefactor 1/(yz;q)_inf with argument q^2 xz is in the errata registry",
        ]),
        IdentitySpec::new(
            "rr_op.mehler_hn_sn",
            "sum h_n(x|q) S_n(y;q) t^n/(q;q)_n = 1/(t,tx;q)_inf sum_k q^(k^2) (t;q)_k (txy)^k/(q;q)_k R_q(tyq^(2k))",
            mehler_hn_sn,
        )
        .small(&["t"])
        .order(6),
        IdentitySpec::new(
            "rr_op.mehler_sa_sn",
            "sum S_n(y;q) (x;q)_n t^n/(q;q)_n = (tx;q)_inf/(t;q)_inf sum_k q^((3k^2-k)/2) (t;q)_k (-txy)^k/((q;q)_k (tx;q)_k) R_q(tyq^(2k))",
            mehler_sa_sn,
        )
        .small(&["t"])
        .order(6),
        IdentitySpec::new(
            "rr_op.mehler_sn_sn",
            "sum S_n(x;q) S_n(y;q) t^n/(q;q)_n = 1/(t;q)_inf sum_k q^(2k^2) (t;q)_k (txy)^k/(q;q)_k R_q(tyq^(2k)) R_q(txq^(2k))",
            mehler_sn_sn,
        )
        .small(&["t"])
        .order(6),
        IdentitySpec::new(
            "rr_op.rogers_sn",
            "sum_(n,m) S_(n+m)(x;q) t^n s^m/((q;q)_n (q;q)_m) = 1/(t,s;q)_inf sum_k q^(k^2) (s;q)_k (tx)^k/(q;q)_k R_q(q^(2k) sx)",
            |i| rogers_sn(i, false),
        )
        .small(&["t", "s"])
        .order(6)
        .notes(&["the variable in the sum is x; the printed y is in the errata registry"]),
    ]
}

fn rr(ctx: &SeriesCtx, z: &LaurentPoly) -> Result<TruncatedSeries> {
    named_exponential(ctx, ExpKind::RogersRamanujan, z)
}

struct Op {
    t: SymbolTable,
    x: crate::algebra::Var,
    xp: LaurentPoly,
    y: LaurentPoly,
    a: LaurentPoly,
    b: LaurentPoly,
}

fn op_syms(i: &Inst) -> Op {
    let mut t = i.table();
    let x = t.small("x");
    let y = var(t.small("y"));
    let a = var(t.parameter("a"));
    let b = var(t.parameter("b"));
    Op { t, x, xp: var(x), y, a, b }
}

fn on_exp(i: &Inst) -> Result<Built> {
    let s = op_syms(i);
    let ctx = SeriesCtx::new(&s.t, i.order);
    let base = pinf_inv(&ctx, &(&s.a * &s.xp))?;
    let lhs = OperatorSpec::rogers_ramanujan(&s.t, s.x, s.y.clone()).apply_to_series(&ctx, &base)?;
    let rhs = rr(&ctx, &(&s.a * &s.y))?.mul_ref(&base);
    Ok(Built::new(s.t.clone()).series("", lhs, rhs))
}

fn on_product(i: &Inst) -> Result<Built> {
    let s = op_syms(i);
    let ctx = SeriesCtx::new(&s.t, i.order);
    let (ax, bx, ay) = (&s.a * &s.xp, &s.b * &s.xp, &s.a * &s.y);
    let base = pinf_ratio(&ctx, &[], &[ax, bx.clone()])?;
    let lhs = OperatorSpec::rogers_ramanujan(&s.t, s.x, s.y.clone()).apply_to_series(&ctx, &base)?;
    let sum = sum_k(&ctx, kmax(&ctx, &ay), |k| {
        let kk = k as i64;
        let c = inv_fact(&s.t, k).mul_poly(&(q(&s.t, kk * kk) * poch(&s.t, &bx, k) * ay.pow(k)));
        scaled(&ctx, &rr(&ctx, &(&s.b * q(&s.t, 2 * kk) * &s.y))?, &c)
    })?;
    Ok(Built::new(s.t.clone()).series("", lhs, base.mul_ref(&sum)))
}

/// Both sides of the `4phi5` expansion. `printed` selects the displayed
/// right side, `1/(yz;q)_inf sum q^(m^2) (qxz)^m (yz;q)_(2m)/(q;q)_m`.
pub(crate) fn phi45(i: &Inst, printed: bool) -> Result<Built> {
    let mut t = i.table();
    let z = var(t.small("z"));
    let x = var(t.parameter("x"));
    let y = var(t.parameter("y"));
    let ctx = SeriesCtx::new(&t, i.order);
    let lhs = gen_sum(&ctx, &z, |n| {
        let nn = n as i64;
        Ok(inv_fact(&t, n).mul_poly(&(q(&t, nn * nn) * r_poly_u(&t, n, &x, &y, &q(&t, -2)))))
    })?;
    let yz = &y * &z;
    let (lead, xz) = if printed { (yz.clone(), q(&t, 1) * &x * &z) } else { (q(&t, 1) * &yz, &x * &z) };
    let q2 = q(&t, 2);
    let mut direct = Vec::new();
    let mut paired = Vec::new();
    for m in 0..=kmax(&ctx, &z) {
        let mm = m as i64;
        let w = inv_fact(&t, m).mul_poly(&(q(&t, mm * mm) * xz.pow(m)));
        direct.push(scaled(&ctx, &ctx.poly(&poch(&t, &lead, 2 * m))?, &w)?);
        let pair = qpochhammer_base(&lead, &q2, m) * qpochhammer_base(&(&lead * q(&t, 1)), &q2, m);
        paired.push(scaled(&ctx, &ctx.poly(&pair)?, &w)?);
    }
    let pre = pinf_inv(&ctx, &lead)?;
    let first = pre.mul_ref(&total(&ctx, &direct));
    let second = pre.mul_ref(&total(&ctx, &paired));
    Ok(Built::new(t.clone()).series("(a;q)_(2m) form", lhs.clone(), first).series("4phi5 pairing", lhs, second))
}

struct Mt {
    tb: SymbolTable,
    t: LaurentPoly,
    x: LaurentPoly,
    y: LaurentPoly,
}

fn mt(i: &Inst) -> Mt {
    let mut tb = i.table();
    let t = var(tb.small("t"));
    let x = var(tb.parameter("x"));
    let y = var(tb.parameter("y"));
    Mt { tb, t, x, y }
}

fn sn(tb: &SymbolTable, n: u32, x: &LaurentPoly) -> Result<LaurentPoly> {
    named_poly(tb, NamedPoly::StieltjesWigert, n, x, &LaurentPoly::zero())
}

fn mehler_hn_sn(i: &Inst) -> Result<Built> {
    let m = mt(i);
    let ctx = SeriesCtx::new(&m.tb, i.order);
    let tb = &m.tb;
    let lhs = gen_sum(&ctx, &m.t, |n| {
        Ok(inv_fact(tb, n).mul_poly(&(named_poly(tb, NamedPoly::RogersSzego, n, &m.x, &LaurentPoly::zero())? * sn(tb, n, &m.y)?)))
    })?;
    let txy = &m.t * &m.x * &m.y;
    let sum = sum_k(&ctx, kmax(&ctx, &m.t), |k| {
        let kk = k as i64;
        let c = inv_fact(tb, k).mul_poly(&(q(tb, kk * kk) * poch(tb, &m.t, k) * txy.pow(k)));
        scaled(&ctx, &rr(&ctx, &(&m.t * &m.y * q(tb, 2 * kk)))?, &c)
    })?;
    let rhs = pinf_ratio(&ctx, &[], &[m.t.clone(), &m.t * &m.x])?.mul_ref(&sum);
    Ok(Built::new(tb.clone()).series("", lhs, rhs))
}

fn mehler_sa_sn(i: &Inst) -> Result<Built> {
    let m = mt(i);
    let ctx = SeriesCtx::new(&m.tb, i.order);
    let tb = &m.tb;
    let lhs = gen_sum(&ctx, &m.t, |n| Ok(inv_fact(tb, n).mul_poly(&(sn(tb, n, &m.y)? * poch(tb, &m.x, n)))))?;
    let tx = &m.t * &m.x;
    let mtxy = -(&tx * &m.y);
    let sum = sum_k(&ctx, kmax(&ctx, &m.t), |k| {
        let kk = k as i64;
        let c = inv_fact(tb, k)
            .mul_ref(&poch_inv(tb, &tx, k)?)
            .mul_poly(&(q(tb, (3 * kk * kk - kk) / 2) * poch(tb, &m.t, k) * mtxy.pow(k)));
        scaled(&ctx, &rr(&ctx, &(&m.t * &m.y * q(tb, 2 * kk)))?, &c)
    })?;
    let rhs = pinf_ratio(&ctx, &[tx.clone()], &[m.t.clone()])?.mul_ref(&sum);
    Ok(Built::new(tb.clone()).series("", lhs, rhs))
}

fn mehler_sn_sn(i: &Inst) -> Result<Built> {
    let m = mt(i);
    let ctx = SeriesCtx::new(&m.tb, i.order);
    let tb = &m.tb;
    let lhs = gen_sum(&ctx, &m.t, |n| Ok(inv_fact(tb, n).mul_poly(&(sn(tb, n, &m.x)? * sn(tb, n, &m.y)?))))?;
    let txy = &m.t * &m.x * &m.y;
    let sum = sum_k(&ctx, kmax(&ctx, &m.t), |k| {
        let kk = k as i64;
        let c = inv_fact(tb, k).mul_poly(&(q(tb, 2 * kk * kk) * poch(tb, &m.t, k) * txy.pow(k)));
        let e = rr(&ctx, &(&m.t * &m.y * q(tb, 2 * kk)))?.mul_ref(&rr(&ctx, &(&m.t * &m.x * q(tb, 2 * kk)))?);
        scaled(&ctx, &e, &c)
    })?;
    let rhs = pinf_inv(&ctx, &m.t)?.mul_ref(&sum);
    Ok(Built::new(tb.clone()).series("", lhs, rhs))
}

/// Rogers-type `S_n` expansion; `printed` puts a fresh `y` where `x` belongs.
pub(crate) fn rogers_sn(i: &Inst, printed: bool) -> Result<Built> {
    let mut tb = i.table();
    let t = var(tb.small("t"));
    let s = var(tb.small("s"));
    let x = var(tb.parameter("x"));
    let w = if printed { var(tb.parameter("y")) } else { x.clone() };
    let ctx = SeriesCtx::new(&tb, i.order);
    let lhs = double_gen(&ctx, &t, &s, |n, m| Ok(inv_fact(&tb, n).mul_ref(&inv_fact(&tb, m)).mul_poly(&sn(&tb, n + m, &x)?)))?;
    let tw = &t * &w;
    let sum = sum_k(&ctx, kmax(&ctx, &t), |k| {
        let kk = k as i64;
        let c = inv_fact(&tb, k).mul_poly(&(q(&tb, kk * kk) * poch(&tb, &s, k) * tw.pow(k)));
        scaled(&ctx, &rr(&ctx, &(q(&tb, 2 * kk) * &s * &w))?, &c)
    })?;
    let rhs = pinf_ratio(&ctx, &[], &[t.clone(), s.clone()])?.mul_ref(&sum);
    Ok(Built::new(tb.clone()).series("", lhs, rhs))
}
