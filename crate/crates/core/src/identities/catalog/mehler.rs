use super::super::kit::*;
use super::super::{Built, IdentitySpec};
use crate::algebra::{LaurentPoly, RationalExpr, SeriesCtx, SymbolTable, TruncatedSeries};
use crate::error::Result;
use crate::qkernel::binom2;
use crate::special::{named_poly, r_poly_u, NamedPoly};

// The k-sums carry (ty)^k, (twy)^k or (aty)^k with t small, and the inner
// n-sums carry s^n, so they end where that factor passes the order.

pub fn specs() -> Vec<IdentitySpec> {
    let t = &["t"];
    let ts = &["t", "s"];
    vec![
        IdentitySpec::new(
            "mehler.generalized",
            "sum R_n(x,y;u) R_n(z,w;v) t^n/(q;q)_n = 1/(tzx;q)_inf sum_k (uv)^C(k,2) (twy)^k (tzx;q)_k/(q;q)_k e_q(twxv^k,v) e_q(tyzu^k,u)",
            mehler_generalized,
        )
        .small(t)
        .order(6),
        IdentitySpec::new(
            "mehler.srivastava_agarwal",
            "sum R_n(x,y;u) (a;q)_n t^n/(q;q)_n = 1/(tx;q)_inf sum_k (uq)^C(k,2) (-aty)^k (tx;q)_k/(q;q)_k (atxq^k;q)_inf e_q(tyu^k,u)",
            |i| srivastava_agarwal(i, false),
        )
        .small(t)
        .order(6)
        .notes(&["the case z = 1, w = -a, v = q of the Mehler expansion; the printed form with (-ty;q) factors and symbolic v holds only at u = v = q and is in the errata registry"]),
        IdentitySpec::new(
            "mehler.sa_hn",
            "sum h_n(x|q) (y;q)_n t^n/(q;q)_n = (ty;q)_inf/(t,tx;q)_inf 1phi1(t; ty; q, txy)",
            sa_hn,
        )
        .small(t)
        .order(6),
        IdentitySpec::new(
            "mehler.phi12_transform",
            "2phi1(x,y; 0; q, t) = (tx,ty;q)_inf/(t;q)_inf 1phi2(t; tx,ty; q, txy)",
            |i| phi12_transform(i, 1),
        )
        .small(t)
        .order(6)
        .notes(&["the 1phi2 argument is +txy; the printed -txy is in the errata registry"]),
        IdentitySpec::new(
            "rogers.generalized",
            "sum_(n,m) R_(n+m)(x,y;u) v^C(n,2) w^C(m,2) t^n s^m/((q;q)_n (q;q)_m) = sum_(k,n) (uv)^C(k,2) (uw)^C(n,2) (ty)^k (u^k sy)^n/((q;q)_k (q;q)_n) e_q(tv^k x,v) e_q(sq^k w^n x,w)",
            rogers_generalized,
        )
        .small(ts)
        .order(6),
        IdentitySpec::new(
            "rogers.saad_rn",
            "sum_(n,m) r_(n+m)(x,y) t^n s^m/((q;q)_n (q;q)_m) = (stxy;q)_inf/(tx,sx,sy,ty;q)_inf",
            saad_rn,
        )
        .small(ts)
        .order(6),
        IdentitySpec::new(
            "rogers.corollaries.u_q",
            "sum_(n,m) (x;q)_(n+m) t^n s^m/((q;q)_n (q;q)_m) = (sx;q)_inf/(t,s;q)_inf 1phi1(s; sx; q, tx)",
            cor_u_q,
        )
        .small(ts)
        .order(6),
        IdentitySpec::new(
            "rogers.corollaries.v1_wq",
            "sum_(n,m) R_(n+m)(x,y;u) q^C(m,2) t^n s^m/((q;q)_n (q;q)_m) = (-sx;q)_inf/(tx;q)_inf sum_k u^C(k,2) (ty)^k/((-sx;q)_k (q;q)_k) 1Phi1(0; -sxq^k; q, u, -u^k sy)",
            cor_v1_wq,
        )
        .small(ts)
        .order(6),
        IdentitySpec::new(
            "rogers.corollaries.u1_sneg",
            "sum_(n,m) (-1)^m r_(n+m)(x,y) q^C(m,2) t^n s^m/((q;q)_n (q;q)_m) = (sx;q)_inf/(tx;q)_inf sum_k (ty)^k/((sx;q)_k (q;q)_k) 1phi1(0; sxq^k; q, sy)",
            cor_u1_sneg,
        )
        .small(ts)
        .order(6),
        IdentitySpec::new(
            "rogers.corollaries.uq_sneg",
            "sum_(n,m) (-1)^m (x;q)_(n+m) q^C(m,2) t^n s^m/((q;q)_n (q;q)_m) = (s;q)_inf/(t;q)_inf sum_k q^C(k,2) (-tx)^k/((s;q)_k (q;q)_k) 0phi1(-; sq^k; q, q^k sx)",
            cor_uq_sneg,
        )
        .small(ts)
        .order(6),
        IdentitySpec::new(
            "rogers.corollaries.u_qinv",
            "sum_(n,m) R_(n+m)(x,y;q^-1) q^C(m,2) t^n s^m/((q;q)_n (q;q)_m) = (-sx;q)_inf/(tx;q)_inf sum_k q^-C(k,2) (ty)^k/((-sx;q)_k (q;q)_k) 2phi1(0,0; -sxq^k; q, q^-k sy)",
            |i| cor_u_qinv(i, -1),
        )
        .small(ts)
        .order(6)
        .notes(&["the 2phi1 argument is q^-k sy; the printed q^k sy is in the errata registry"]),
    ]
}

fn mehler_generalized(i: &Inst) -> Result<Built> {
    let mut tb = i.table();
    let t = var(tb.small("t"));
    let [x, y, z, w, u, v] = ["x", "y", "z", "w", "u", "v"].map(|n| var(tb.parameter(n)));
    let ctx = SeriesCtx::new(&tb, i.order);
    let lhs = gen_sum(&ctx, &t, |n| {
        Ok(inv_fact(&tb, n).mul_poly(&(r_poly_u(&tb, n, &x, &y, &u) * r_poly_u(&tb, n, &z, &w, &v))))
    })?;
    let tzx = &t * &z * &x;
    let twy = &t * &w * &y;
    let uv = &u * &v;
    let sum = sum_k(&ctx, kmax(&ctx, &t), |k| {
        let c = inv_fact(&tb, k).mul_poly(&(tri(&uv, k as i64)? * twy.pow(k) * poch(&tb, &tzx, k)));
        let e = eq(&ctx, &(&t * &w * &x * v.pow(k)), &v)?.mul_ref(&eq(&ctx, &(&t * &y * &z * u.pow(k)), &u)?);
        scaled(&ctx, &e, &c)
    })?;
    Ok(Built::new(tb.clone()).series("", lhs, pinf_inv(&ctx, &tzx)?.mul_ref(&sum)))
}

/// The Srivastava-Agarwal type expansion; `printed` selects the displayed
/// form with `(-ty;q)` factors and a free `v`.
pub(crate) fn srivastava_agarwal(i: &Inst, printed: bool) -> Result<Built> {
    let mut tb = i.table();
    let t = var(tb.small("t"));
    let [x, y, a, u] = ["x", "y", "a", "u"].map(|n| var(tb.parameter(n)));
    let v = if printed { var(tb.parameter("v")) } else { q(&tb, 1) };
    let ctx = SeriesCtx::new(&tb, i.order);
    let lhs = gen_sum(&ctx, &t, |n| Ok(inv_fact(&tb, n).mul_poly(&(r_poly_u(&tb, n, &x, &y, &u) * poch(&tb, &a, n)))))?;
    let tx = &t * &x;
    let ty = &t * &y;
    let uq = &u * &q(&tb, 1);
    let aty = -(&a * &ty);
    let rhs = if printed {
        let mty = ty.neg_ref();
        let sum = sum_k(&ctx, kmax(&ctx, &t), |k| {
            let c = inv_fact(&tb, k).mul_ref(&poch_inv(&tb, &mty, k)?).mul_poly(&(tri(&uq, k as i64)? * aty.pow(k) * poch(&tb, &tx, k)));
            scaled(&ctx, &eq(&ctx, &(-(&a * &tx) * v.pow(k)), &v)?, &c)
        })?;
        pinf_ratio(&ctx, &[mty], &[tx.clone()])?.mul_ref(&sum)
    } else {
        let sum = sum_k(&ctx, kmax(&ctx, &t), |k| {
            let c = inv_fact(&tb, k).mul_poly(&(tri(&uq, k as i64)? * aty.pow(k) * poch(&tb, &tx, k)));
            let e = pinf(&ctx, &(&a * &tx * q(&tb, k as i64)))?.mul_ref(&eq(&ctx, &(&ty * u.pow(k)), &u)?);
            scaled(&ctx, &e, &c)
        })?;
        pinf_inv(&ctx, &tx)?.mul_ref(&sum)
    };
    Ok(Built::new(tb.clone()).series("", lhs, rhs))
}

fn sa_hn(i: &Inst) -> Result<Built> {
    let mut tb = i.table();
    let t = var(tb.small("t"));
    let [x, y] = ["x", "y"].map(|n| var(tb.parameter(n)));
    let ctx = SeriesCtx::new(&tb, i.order);
    let lhs = gen_sum(&ctx, &t, |n| {
        Ok(inv_fact(&tb, n).mul_poly(&(named_poly(&tb, NamedPoly::RogersSzego, n, &x, &LaurentPoly::zero())? * poch(&tb, &y, n))))
    })?;
    let ty = &t * &y;
    let rhs = pinf_ratio(&ctx, &[ty.clone()], &[t.clone(), &t * &x])?.mul_ref(&phic(&ctx, vec![t.clone()], vec![ty], &t * &x * &y)?);
    Ok(Built::new(tb.clone()).series("", lhs, rhs))
}

/// `2phi1(x,y; 0; q, t)` against the `1phi2` side with argument `sign * txy`.
pub(crate) fn phi12_transform(i: &Inst, sign: i64) -> Result<Built> {
    let mut tb = i.table();
    let t = var(tb.small("t"));
    let [x, y] = ["x", "y"].map(|n| var(tb.parameter(n)));
    let ctx = SeriesCtx::new(&tb, i.order);
    let (tx, ty) = (&t * &x, &t * &y);
    let lhs = phic(&ctx, vec![x.clone(), y.clone()], vec![LaurentPoly::zero()], t.clone())?;
    let rhs = pinf_ratio(&ctx, &[tx.clone(), ty.clone()], &[t.clone()])?
        .mul_ref(&phic(&ctx, vec![t.clone()], vec![tx, ty], int(sign) * &t * &x * &y)?);
    Ok(Built::new(tb.clone()).series("", lhs, rhs))
}

struct Rs {
    tb: SymbolTable,
    t: LaurentPoly,
    s: LaurentPoly,
    x: LaurentPoly,
    y: LaurentPoly,
}

fn rs(i: &Inst) -> Rs {
    let mut tb = i.table();
    let t = var(tb.small("t"));
    let s = var(tb.small("s"));
    let x = var(tb.parameter("x"));
    let y = var(tb.parameter("y"));
    Rs { tb, t, s, x, y }
}

/// `sum_(n,m) p(n+m) w(n, m) t^n s^m/((q;q)_n (q;q)_m)`.
fn rogers_lhs(
    ctx: &SeriesCtx,
    r: &Rs,
    p: impl Fn(u32) -> Result<LaurentPoly>,
    w: impl Fn(u32, u32) -> Result<LaurentPoly>,
) -> Result<TruncatedSeries> {
    double_gen(ctx, &r.t, &r.s, |n, m| Ok(inv_fact(&r.tb, n).mul_ref(&inv_fact(&r.tb, m)).mul_poly(&(p(n + m)? * w(n, m)?))))
}

fn rogers_generalized(i: &Inst) -> Result<Built> {
    let mut r = rs(i);
    let [u, v, w] = ["u", "v", "w"].map(|n| var(r.tb.parameter(n)));
    let ctx = SeriesCtx::new(&r.tb, i.order);
    let lhs = rogers_lhs(&ctx, &r, |n| Ok(r_poly_u(&r.tb, n, &r.x, &r.y, &u)), |n, m| Ok(tri(&v, n as i64)? * tri(&w, m as i64)?))?;
    let (uv, uw) = (&u * &v, &u * &w);
    let (ty, sy) = (&r.t * &r.y, &r.s * &r.y);
    let mut parts = Vec::new();
    for k in 0..=kmax(&ctx, &r.t) {
        let ek = eq(&ctx, &(&r.t * v.pow(k) * &r.x), &v)?;
        for n in 0..=(i.order - k) {
            let c = inv_fact(&r.tb, k)
                .mul_ref(&inv_fact(&r.tb, n))
                .mul_poly(&(tri(&uv, k as i64)? * tri(&uw, n as i64)? * ty.pow(k) * (u.pow(k) * &sy).pow(n)));
            let en = eq(&ctx, &(&r.s * q(&r.tb, k as i64) * w.pow(n) * &r.x), &w)?;
            parts.push(scaled(&ctx, &ek.mul_ref(&en), &c)?);
        }
    }
    Ok(Built::new(r.tb.clone()).series("", lhs, total(&ctx, &parts)))
}

fn saad_rn(i: &Inst) -> Result<Built> {
    let r = rs(i);
    let ctx = SeriesCtx::new(&r.tb, i.order);
    let lhs = rogers_lhs(&ctx, &r, |n| Ok(r_poly_u(&r.tb, n, &r.x, &r.y, &one())), |_, _| Ok(one()))?;
    let (t, s, x, y) = (&r.t, &r.s, &r.x, &r.y);
    let rhs = pinf_ratio(&ctx, &[s * t * x * y], &[t * x, s * x, s * y, t * y])?;
    Ok(Built::new(r.tb.clone()).series("", lhs, rhs))
}

fn cor_u_q(i: &Inst) -> Result<Built> {
    let r = rs(i);
    let ctx = SeriesCtx::new(&r.tb, i.order);
    let lhs = rogers_lhs(&ctx, &r, |n| Ok(poch(&r.tb, &r.x, n)), |_, _| Ok(one()))?;
    let (t, s, x) = (&r.t, &r.s, &r.x);
    let rhs = pinf_ratio(&ctx, &[s * x], &[t.clone(), s.clone()])?.mul_ref(&phic(&ctx, vec![s.clone()], vec![s * x], t * x)?);
    Ok(Built::new(r.tb.clone()).series("", lhs, rhs))
}

/// `pre * sum_k coef(k) (ty)^k/((c;q)_k (q;q)_k) inner(k)` with `coef` a single term.
fn k_sum(
    ctx: &SeriesCtx,
    tb: &SymbolTable,
    ty: &LaurentPoly,
    c: &LaurentPoly,
    coef: impl Fn(u32) -> Result<LaurentPoly>,
    inner: impl Fn(u32) -> Result<TruncatedSeries>,
) -> Result<TruncatedSeries> {
    sum_k(ctx, kmax(ctx, ty), |k| {
        let w: RationalExpr = inv_fact(tb, k).mul_ref(&poch_inv(tb, c, k)?).mul_poly(&(coef(k)? * ty.pow(k)));
        scaled(ctx, &inner(k)?, &w)
    })
}

fn cor_v1_wq(i: &Inst) -> Result<Built> {
    let mut r = rs(i);
    let u = var(r.tb.parameter("u"));
    let ctx = SeriesCtx::new(&r.tb, i.order);
    let tb = &r.tb;
    let lhs = rogers_lhs(&ctx, &r, |n| Ok(r_poly_u(tb, n, &r.x, &r.y, &u)), |_, m| Ok(q(tb, binom2(m as i64))))?;
    let msx = -(&r.s * &r.x);
    let sum = k_sum(&ctx, tb, &(&r.t * &r.y), &msx, |k| tri(&u, k as i64), |k| {
        phi(&ctx, vec![LaurentPoly::zero()], vec![&msx * q(tb, k as i64)], u.clone(), -(u.pow(k) * &r.s * &r.y))
    })?;
    let rhs = pinf_ratio(&ctx, &[msx.clone()], &[&r.t * &r.x])?.mul_ref(&sum);
    Ok(Built::new(tb.clone()).series("", lhs, rhs))
}

fn cor_u1_sneg(i: &Inst) -> Result<Built> {
    let r = rs(i);
    let ctx = SeriesCtx::new(&r.tb, i.order);
    let tb = &r.tb;
    let lhs = rogers_lhs(&ctx, &r, |n| Ok(r_poly_u(tb, n, &r.x, &r.y, &one())), |_, m| Ok(int(sign(m as i64)) * q(tb, binom2(m as i64))))?;
    let sx = &r.s * &r.x;
    let sum = k_sum(&ctx, tb, &(&r.t * &r.y), &sx, |_| Ok(one()), |k| {
        phic(&ctx, vec![LaurentPoly::zero()], vec![&sx * q(tb, k as i64)], &r.s * &r.y)
    })?;
    let rhs = pinf_ratio(&ctx, &[sx.clone()], &[&r.t * &r.x])?.mul_ref(&sum);
    Ok(Built::new(tb.clone()).series("", lhs, rhs))
}

fn cor_uq_sneg(i: &Inst) -> Result<Built> {
    let r = rs(i);
    let ctx = SeriesCtx::new(&r.tb, i.order);
    let tb = &r.tb;
    let lhs = rogers_lhs(&ctx, &r, |n| Ok(poch(tb, &r.x, n)), |_, m| Ok(int(sign(m as i64)) * q(tb, binom2(m as i64))))?;
    let s = &r.s;
    let sum = k_sum(&ctx, tb, &-(&r.t * &r.x), s, |k| Ok(q(tb, binom2(k as i64))), |k| {
        phic(&ctx, vec![], vec![s * q(tb, k as i64)], q(tb, k as i64) * s * &r.x)
    })?;
    let rhs = pinf_ratio(&ctx, &[s.clone()], &[r.t.clone()])?.mul_ref(&sum);
    Ok(Built::new(tb.clone()).series("", lhs, rhs))
}

/// The `u = q^-1` case with `2phi1` argument `q^(dir*k) sy`.
pub(crate) fn cor_u_qinv(i: &Inst, dir: i64) -> Result<Built> {
    let r = rs(i);
    let ctx = SeriesCtx::new(&r.tb, i.order);
    let tb = &r.tb;
    let qi = q(tb, -1);
    let lhs = rogers_lhs(&ctx, &r, |n| Ok(r_poly_u(tb, n, &r.x, &r.y, &qi)), |_, m| Ok(q(tb, binom2(m as i64))))?;
    let msx = -(&r.s * &r.x);
    let zero = LaurentPoly::zero();
    let sum = k_sum(&ctx, tb, &(&r.t * &r.y), &msx, |k| Ok(q(tb, -binom2(k as i64))), |k| {
        phic(&ctx, vec![zero.clone(), zero.clone()], vec![&msx * q(tb, k as i64)], q(tb, dir * k as i64) * &r.s * &r.y)
    })?;
    let rhs = pinf_ratio(&ctx, &[msx.clone()], &[&r.t * &r.x])?.mul_ref(&sum);
    Ok(Built::new(tb.clone()).series("", lhs, rhs))
}
