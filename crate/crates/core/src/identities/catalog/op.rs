use super::super::kit::*;
use super::super::{Built, IdentitySpec};
use crate::algebra::{LaurentPoly, SeriesCtx, SymbolTable, Var};
use crate::error::Result;
use crate::operators::{operator_on_exponential, operator_on_product, OperatorSpec};
use crate::qkernel::{binom2, gauss_binomial};
use crate::special::r_poly_u;

pub fn specs() -> Vec<IdentitySpec> {
    let xy = &["x", "y"];
    vec![
        IdentitySpec::new(
            "op.translation",
            "T(yD_q|u){x^n} = R_n(x,y;u) = sum [n k] u^C(k,2) x^(n-k) y^k; T(yD_q){x^n} = r_n(x,y)",
            translation,
        )
        .param("n", 0, 8),
        IdentitySpec::new(
            "op.on_exp",
            "T(yD_q|u){e_q(ax,v)} = sum_k (uv)^C(k,2) (ay)^k/(q;q)_k e_q(a v^k x, v)",
            on_exp,
        )
        .small(xy)
        .order(6),
        IdentitySpec::new("op.on_exp.v1", "T(yD_q|u){1/(ax;q)_inf} = e_q(ay,u)/(ax;q)_inf", on_exp_v1).small(xy).order(6),
        IdentitySpec::new(
            "op.on_exp.vq",
            "T(yD_q|u){(ax;q)_inf} = (ax;q)_inf 1Phi1(0; ax; q, u, ay) = (ax;q)_inf 2Phi1(0, 0; ax; q, qu, -ay)",
            on_exp_vq,
        )
        .small(xy)
        .order(6)
        .notes(&["the 2Phi1 argument is -ay; the printed +ay is in the errata registry"]),
        IdentitySpec::new(
            "op.on_product",
            "T(yD_q|u){e_q(ax,v) e_q(bx,w)} = sum_(k,n) (uv)^C(k,2) (uw)^C(n,2) (ay)^k (u^k by)^n/((q;q)_k (q;q)_n) e_q(a v^k x, v) e_q(b q^k w^n x, w)",
            on_product,
        )
        .small(xy)
        .order(6),
        IdentitySpec::new(
            "op.on_product.vw1",
            "T(yD_q|u){1/(ax,bx;q)_inf} = 1/(ax,bx;q)_inf sum_k u^C(k,2) (bx;q)_k (ay)^k/(q;q)_k e_q(u^k by, u)",
            on_product_vw1,
        )
        .small(xy)
        .order(6),
        IdentitySpec::new(
            "op.on_product.chen_liu",
            "T(yD_q){1/(ax,bx;q)_inf} = (abxy;q)_inf / (ax,bx,ay,by;q)_inf",
            chen_liu,
        )
        .small(xy)
        .order(6),
        IdentitySpec::new(
            "op.on_product.saad_sukhi",
            "T(-yD_q|q){1/(ax,bx;q)_inf} = (by;q)_inf/(ax,bx;q)_inf 1phi1(bx; by; q, ay)",
            saad_sukhi,
        )
        .small(xy)
        .order(6),
        IdentitySpec::new(
            "op.on_product.v1_wq",
            "T(yD_q|u){(bx;q)_inf/(ax;q)_inf} = (bx;q)_inf/(ax;q)_inf sum_k u^C(k,2) (ay)^k/((q;q)_k (bx;q)_k) 1Phi1(0; bxq^k; q, u, u^k by)",
            v1_wq,
        )
        .small(xy)
        .order(6),
        IdentitySpec::new(
            "op.saad_sukhi_phi11",
            "1phi1(b/a; bx; q, ay) = sum_k q^C(k,2) (-ay)^k/((q;q)_k (bx;q)_k) 0phi1(-; bxq^k; q, q^k by) = T(-yD_q|q){(bx;q)_inf/(ax;q)_inf} (ax;q)_inf/(bx;q)_inf",
            saad_sukhi_phi11,
        )
        .small(xy)
        .order(6)
        .notes(&["the 1phi1 has lower parameter bx and the summand carries (-ay)^k; the printed form with ax and (ay)^k is in the errata registry"]),
    ]
}

struct Syms {
    x: Var,
    y: LaurentPoly,
    xp: LaurentPoly,
    a: LaurentPoly,
    b: LaurentPoly,
    u: LaurentPoly,
}

fn syms(t: &mut SymbolTable) -> Syms {
    let x = t.small("x");
    let y = var(t.small("y"));
    let a = var(t.parameter("a"));
    let b = var(t.parameter("b"));
    let u = var(t.parameter("u"));
    Syms { x, y, xp: var(x), a, b, u }
}

fn translation(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let x = t.parameter("x");
    let y = var(t.parameter("y"));
    let u = var(t.parameter("u"));
    let n = i.nat("n");
    let xp = var(x);
    let mono = xp.pow(n);
    let lhs = OperatorSpec::new(x, y.clone(), u.clone()).apply_to_poly(&t, &mono)?;
    let parts: Vec<LaurentPoly> = (0..=n as i64)
        .map(|k| Ok(gauss_binomial(&t, n as i64, k) * tri(&u, k)? * xp.pow(n - k as u32) * y.pow(k as u32)))
        .collect::<Result<_>>()?;
    let sum = LaurentPoly::sum(parts.iter());
    let chen = OperatorSpec::chen(x, y.clone()).apply_to_poly(&t, &mono)?;
    let rn = r_poly_u(&t, n, &xp, &y, &one());
    Ok(Built::new(t.clone()).poly("R_n", lhs.clone(), r_poly_u(&t, n, &xp, &y, &u)).poly("sum", lhs, sum).poly("u = 1", chen, rn))
}

fn on_exp(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let s = syms(&mut t);
    let v = var(t.parameter("v"));
    let ctx = SeriesCtx::new(&t, i.order);
    let (l, r) = operator_on_exponential(&ctx, &OperatorSpec::new(s.x, s.y, s.u), &s.a, &v)?;
    Ok(Built::new(t.clone()).series("", l, r))
}

fn on_exp_v1(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let s = syms(&mut t);
    let ctx = SeriesCtx::new(&t, i.order);
    let ax = &s.a * &s.xp;
    let lhs = OperatorSpec::new(s.x, s.y.clone(), s.u.clone()).apply_to_series(&ctx, &pinf_inv(&ctx, &ax)?)?;
    let rhs = eq(&ctx, &(&s.a * &s.y), &s.u)?.mul_ref(&pinf_inv(&ctx, &ax)?);
    Ok(Built::new(t.clone()).series("", lhs, rhs))
}

/// `T(yD_q|u){(ax;q)_inf}` against `(ax;q)_inf 1Phi1(0; ax; q, u, ay)` and `(ax;q)_inf 2Phi1(0, 0; ax; q, qu, sign*ay)`.
pub(crate) fn on_exp_vq_with(i: &Inst, sign: i64) -> Result<Built> {
    let mut t = i.table();
    let s = syms(&mut t);
    let ctx = SeriesCtx::new(&t, i.order);
    let ax = &s.a * &s.xp;
    let ay = &s.a * &s.y;
    let p = pinf(&ctx, &ax)?;
    let lhs = OperatorSpec::new(s.x, s.y.clone(), s.u.clone()).apply_to_series(&ctx, &p)?;
    let zero = LaurentPoly::zero();
    let r1 = p.mul_ref(&phi(&ctx, vec![zero.clone()], vec![ax.clone()], s.u.clone(), ay.clone())?);
    let r2 = p.mul_ref(&phi(&ctx, vec![zero.clone(), zero], vec![ax.clone()], q(&t, 1) * &s.u, int(sign) * &ay)?);
    Ok(Built::new(t.clone()).series("1Phi1", lhs.clone(), r1).series("2Phi1", lhs, r2))
}

fn on_exp_vq(i: &Inst) -> Result<Built> {
    on_exp_vq_with(i, -1)
}

fn on_product(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let s = syms(&mut t);
    let v = var(t.parameter("v"));
    let w = var(t.parameter("w"));
    let ctx = SeriesCtx::new(&t, i.order);
    let (l, r) = operator_on_product(&ctx, &OperatorSpec::new(s.x, s.y, s.u), &s.a, &v, &s.b, &w)?;
    Ok(Built::new(t.clone()).series("", l, r))
}

fn on_product_vw1(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let s = syms(&mut t);
    let ctx = SeriesCtx::new(&t, i.order);
    let (ax, bx) = (&s.a * &s.xp, &s.b * &s.xp);
    let base = pinf_ratio(&ctx, &[], &[ax, bx.clone()])?;
    let lhs = OperatorSpec::new(s.x, s.y.clone(), s.u.clone()).apply_to_series(&ctx, &base)?;
    let ay = &s.a * &s.y;
    let sum = sum_k(&ctx, kmax(&ctx, &ay), |k| {
        let c = inv_fact(&t, k).mul_poly(&(tri(&s.u, k as i64)? * poch(&t, &bx, k) * ay.pow(k)));
        scaled(&ctx, &eq(&ctx, &(s.u.pow(k) * &s.b * &s.y), &s.u)?, &c)
    })?;
    Ok(Built::new(t.clone()).series("", lhs, base.mul_ref(&sum)))
}

fn chen_liu(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let s = syms(&mut t);
    let ctx = SeriesCtx::new(&t, i.order);
    let (ax, bx, ay, by) = (&s.a * &s.xp, &s.b * &s.xp, &s.a * &s.y, &s.b * &s.y);
    let lhs = OperatorSpec::chen(s.x, s.y.clone()).apply_to_series(&ctx, &pinf_ratio(&ctx, &[], &[ax.clone(), bx.clone()])?)?;
    let rhs = pinf_ratio(&ctx, &[&s.a * &s.b * &s.xp * &s.y], &[ax, bx, ay, by])?;
    Ok(Built::new(t.clone()).series("", lhs, rhs))
}

fn saad_sukhi(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let s = syms(&mut t);
    let ctx = SeriesCtx::new(&t, i.order);
    let (ax, bx, ay, by) = (&s.a * &s.xp, &s.b * &s.xp, &s.a * &s.y, &s.b * &s.y);
    let lhs = OperatorSpec::saad(&t, s.x, s.y.clone()).apply_to_series(&ctx, &pinf_ratio(&ctx, &[], &[ax.clone(), bx.clone()])?)?;
    let rhs = pinf_ratio(&ctx, &[by.clone()], &[ax, bx.clone()])?.mul_ref(&phic(&ctx, vec![bx], vec![by], ay)?);
    Ok(Built::new(t.clone()).series("", lhs, rhs))
}

fn v1_wq(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let s = syms(&mut t);
    let ctx = SeriesCtx::new(&t, i.order);
    let (ax, bx, ay) = (&s.a * &s.xp, &s.b * &s.xp, &s.a * &s.y);
    let base = pinf_ratio(&ctx, &[bx.clone()], &[ax])?;
    let lhs = OperatorSpec::new(s.x, s.y.clone(), s.u.clone()).apply_to_series(&ctx, &base)?;
    let sum = sum_k(&ctx, kmax(&ctx, &ay), |k| {
        let c = inv_fact(&t, k).mul_ref(&poch_inv(&t, &bx, k)?).mul_poly(&(tri(&s.u, k as i64)? * ay.pow(k)));
        let inner = phi(&ctx, vec![LaurentPoly::zero()], vec![&bx * &q(&t, k as i64)], s.u.clone(), s.u.pow(k) * &s.b * &s.y)?;
        scaled(&ctx, &inner, &c)
    })?;
    Ok(Built::new(t.clone()).series("", lhs, base.mul_ref(&sum)))
}

/// `1phi1(b/a; c; q, ay)` against `sum_k q^C(k,2) (sign*ay)^k/((q;q)_k (bx;q)_k) 0phi1(-; bxq^k; q, q^k by)`.
/// The correct choice is `c = bx`, `sign = -1`; `printed` selects `c = ax`, `sign = +1`.
pub(crate) fn saad_sukhi_phi11_with(i: &Inst, printed: bool) -> Result<Built> {
    let mut t = i.table();
    let s = syms(&mut t);
    let ctx = SeriesCtx::new(&t, i.order);
    let (ax, bx, ay) = (&s.a * &s.xp, &s.b * &s.xp, &s.a * &s.y);
    let sign = if printed { 1 } else { -1 };
    let sum = sum_k(&ctx, kmax(&ctx, &ay), |k| {
        let c = inv_fact(&t, k)
            .mul_ref(&poch_inv(&t, &bx, k)?)
            .mul_poly(&(q(&t, binom2(k as i64)) * (int(sign) * &ay).pow(k)));
        let inner = phic(&ctx, vec![], vec![&bx * &q(&t, k as i64)], q(&t, k as i64) * &s.b * &s.y)?;
        scaled(&ctx, &inner, &c)
    })?;
    let lower = if printed { ax.clone() } else { bx.clone() };
    let p11 = phic(&ctx, vec![&s.b * s.a.pow_i(-1)?], vec![lower], ay.clone())?;
    let mut b = Built::new(t.clone()).series("1phi1", p11, sum.clone());
    if !printed {
        let base = pinf_ratio(&ctx, &[bx.clone()], &[ax])?;
        let lhs = OperatorSpec::saad(&t, s.x, s.y.clone()).apply_to_series(&ctx, &base)?;
        b = b.series("operator", lhs, base.mul_ref(&sum));
    }
    Ok(b)
}

fn saad_sukhi_phi11(i: &Inst) -> Result<Built> {
    saad_sukhi_phi11_with(i, false)
}

