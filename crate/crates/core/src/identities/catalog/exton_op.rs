use super::super::kit::*;
use super::super::{Built, IdentitySpec};
use crate::algebra::{LaurentPoly, SeriesCtx, SymbolTable, TruncatedSeries, Var};
use crate::error::Result;
use crate::operators::OperatorSpec;
use crate::qkernel::binom2;
use crate::special::{named_exponential, named_poly, phi_series, r_poly, ExpKind, HyperSpec, NamedPoly};

// E(yD_q) = T(yD_q|q^(1/2)) and E_q(z) = e_q(z,q^(1/2)) = 1phi1(0; -q^(1/2); q^(1/2), -z).
// Every entry needs base scale 2. The k-sums carry a power of a small symbol.

pub fn specs() -> Vec<IdentitySpec> {
    let xy = &["x", "y"];
    vec![
        IdentitySpec::new(
            "exton_op.on_exp",
            "E(yD_q){1/(ax;q)_inf} = E_q(ay)/(ax;q)_inf = 1/(ax;q)_inf 1phi1(0; -q^(1/2); q^(1/2), -ay)",
            |i| on_exp(i, false),
        )
        .small(xy)
        .order(6)
        .scale(2)
        .notes(&["the 1phi1 argument is -ay; the printed -ax is in the errata registry"]),
        IdentitySpec::new(
            "exton_op.on_product",
            "E(yD_q){1/(ax,bx;q)_inf} = 1/(ax,bx;q)_inf sum_k q^(C(k,2)/2) (bx;q)_k (ay)^k/(q;q)_k 1phi1(0; -q^(1/2); q^(1/2), -bq^(k/2) y)",
            on_product,
        )
        .small(xy)
        .order(6)
        .scale(2),
        IdentitySpec::new(
            "exton_op.phi54",
            "sum q^(C(n,2)/2) R_n(x,y;1,q^(-1/2)) z^n/(q;q)_n = 1/(yz;q)_inf 5Phi4(yz,0,0,0,0; q^(1/2),-q^(1/2),-q,0; q, q^2, q^(1/2) x^2 z^2) + xz/((1-q)(q^(1/2) yz;q)_inf) 5Phi4(q^(1/2) yz,0,0,0,0; q^(3/2),-q^(3/2),-q,0; q, q^2, q^(3/2) x^2 z^2)",
            |i| phi54(i, false),
        )
        .small(&["z"])
        .order(6)
        .scale(2)
        .notes(&["1/(q^(m/2) yz;q)_inf = (yz;q)_j/(yz;q)_inf for m = 2j puts (yz;q)_j upstairs; the printed form with yz among the lower parameters is in the errata registry"]),
        IdentitySpec::new(
            "exton_op.mehler_hn_en",
            "sum h_n(x|q) E_n(y,z) t^n/(q;q)_n = 1/(ty,txy;q)_inf sum_k q^(C(k,2)/2) (ty;q)_k (tzx)^k/(q;q)_k E_q(tzq^(k/2))",
            |i| mehler_hn_en(i, false),
        )
        .small(&["t"])
        .order(6)
        .scale(2)
        .notes(&["E_q is a 1phi1 in base q^(1/2); the printed base q is in the errata registry"]),
        IdentitySpec::new(
            "exton_op.mehler_poch_en",
            "sum (x;q)_n E_n(y,z) t^n/(q;q)_n = (txy;q)_inf/(ty;q)_inf sum_k q^(3C(k,2)/2) (ty;q)_k (-tzx)^k/((q;q)_k (txy;q)_k) E_q(tzq^(k/2))",
            mehler_poch_en,
        )
        .small(&["t"])
        .order(6)
        .scale(2),
        IdentitySpec::new(
            "exton_op.mehler_en_en",
            "sum E_n(x,y) E_n(z,w) t^n/(q;q)_n = 1/(txz;q)_inf sum_k q^C(k,2) (txz;q)_k (twy)^k/(q;q)_k E_q(txwq^(k/2)) E_q(tyzq^(k/2))",
            mehler_en_en,
        )
        .small(&["t"])
        .order(6)
        .scale(2),
        IdentitySpec::new(
            "exton_op.rogers_en",
            "sum_(n,m) E_(n+m)(x,y) t^n s^m/((q;q)_n (q;q)_m) = 1/(tx,sx;q)_inf sum_k q^(C(k,2)/2) (sx;q)_k (ty)^k/(q;q)_k E_q(syq^(k/2))",
            rogers_en,
        )
        .small(&["t", "s"])
        .order(6)
        .scale(2),
    ]
}

/// `E_q(z)` as `1phi1(0; -q^(1/2); base, -z)`; the correct base is `q^(1/2)`.
fn exton_phi(ctx: &SeriesCtx, z: &LaurentPoly, base: &LaurentPoly) -> Result<TruncatedSeries> {
    let r = sqrt_q(ctx.table)?;
    let spec = HyperSpec::classical(ctx.table, vec![LaurentPoly::zero()], vec![r.neg_ref()], z.neg_ref()).with_base(base.clone());
    phi_series(ctx, &spec)
}

fn ex(ctx: &SeriesCtx, z: &LaurentPoly) -> Result<TruncatedSeries> {
    exton_phi(ctx, z, &sqrt_q(ctx.table)?)
}

struct Op {
    t: SymbolTable,
    x: Var,
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

/// `printed` uses the displayed `1phi1` argument `-ax`.
pub(crate) fn on_exp(i: &Inst, printed: bool) -> Result<Built> {
    let s = op_syms(i);
    let ctx = SeriesCtx::new(&s.t, i.order);
    let ax = &s.a * &s.xp;
    let base = pinf_inv(&ctx, &ax)?;
    let lhs = OperatorSpec::exton(&s.t, s.x, s.y.clone())?.apply_to_series(&ctx, &base)?;
    let arg = if printed { ax } else { &s.a * &s.y };
    let via_eq = named_exponential(&ctx, ExpKind::Exton, &(&s.a * &s.y))?.mul_ref(&base);
    let via_phi = ex(&ctx, &arg)?.mul_ref(&base);
    Ok(Built::new(s.t.clone()).series("E_q", lhs.clone(), via_eq).series("1phi1", lhs, via_phi))
}

fn on_product(i: &Inst) -> Result<Built> {
    let s = op_syms(i);
    let ctx = SeriesCtx::new(&s.t, i.order);
    let (ax, bx, ay) = (&s.a * &s.xp, &s.b * &s.xp, &s.a * &s.y);
    let base = pinf_ratio(&ctx, &[], &[ax, bx.clone()])?;
    let lhs = OperatorSpec::exton(&s.t, s.x, s.y.clone())?.apply_to_series(&ctx, &base)?;
    let r = sqrt_q(&s.t)?;
    let sum = sum_k(&ctx, kmax(&ctx, &ay), |k| {
        let c = inv_fact(&s.t, k).mul_poly(&(tri(&r, k as i64)? * poch(&s.t, &bx, k) * ay.pow(k)));
        scaled(&ctx, &ex(&ctx, &(&s.b * r.pow(k) * &s.y))?, &c)
    })?;
    Ok(Built::new(s.t.clone()).series("", lhs, base.mul_ref(&sum)))
}

/// The even/odd `5Phi4` split; `printed` places `yz` among the lower parameters.
pub(crate) fn phi54(i: &Inst, printed: bool) -> Result<Built> {
    let mut t = i.table();
    let z = var(t.small("z"));
    let x = var(t.parameter("x"));
    let y = var(t.parameter("y"));
    let ctx = SeriesCtx::new(&t, i.order);
    let r = sqrt_q(&t)?;
    let lhs = gen_sum(&ctx, &z, |n| {
        let w = r.pow_i(binom2(n as i64))? * r_poly(&t, n, &x, &y, &one(), &r.pow_i(-1)?);
        Ok(inv_fact(&t, n).mul_poly(&w))
    })?;
    let yz = &y * &z;
    let x2z2 = (&x * &z).pow(2);
    let q1 = q(&t, 1);
    let zero = LaurentPoly::zero();
    let part = |lead: LaurentPoly, lower: [LaurentPoly; 3], arg: LaurentPoly| -> Result<TruncatedSeries> {
        let (upper, mut low) = if printed {
            (vec![zero.clone(); 5], lower.to_vec())
        } else {
            (vec![lead.clone(), zero.clone(), zero.clone(), zero.clone(), zero.clone()], lower.to_vec())
        };
        low.push(if printed { lead.clone() } else { zero.clone() });
        Ok(pinf_inv(&ctx, &lead)?.mul_ref(&phi(&ctx, upper, low, q(&t, 2), arg)?))
    };
    let even = part(yz.clone(), [r.clone(), r.neg_ref(), q1.neg_ref()], &r * &x2z2)?;
    let r3 = &r * &q1;
    let odd = part(&r * &yz, [r3.clone(), r3.neg_ref(), q1.neg_ref()], &r3 * &x2z2)?;
    let odd = odd.mul_rational(&poch_inv(&t, &q1, 1)?.mul_poly(&(&x * &z)))?.truncate(ctx.order);
    let rhs = even.add_ref(&odd);
    // Independent route: the split sums before any Pochhammer rewriting.
    let direct = sum_k(&ctx, kmax(&ctx, &z), |m| {
        let c = inv_fact(&t, m).mul_poly(&(r.pow_i(binom2(m as i64))? * (&x * &z).pow(m)));
        scaled(&ctx, &pinf_inv(&ctx, &(r.pow(m) * &yz))?, &c)
    })?;
    Ok(Built::new(t.clone()).series("5Phi4 split", lhs.clone(), rhs).series("unsplit sum", lhs, direct))
}

struct Mt {
    tb: SymbolTable,
    t: LaurentPoly,
}

fn mt(i: &Inst) -> Mt {
    let mut tb = i.table();
    let t = var(tb.small("t"));
    Mt { tb, t }
}

fn en(tb: &SymbolTable, n: u32, x: &LaurentPoly, y: &LaurentPoly) -> Result<LaurentPoly> {
    named_poly(tb, NamedPoly::Exton, n, x, y)
}

/// `printed` evaluates `E_q` as a `1phi1` in base `q`.
pub(crate) fn mehler_hn_en(i: &Inst, printed: bool) -> Result<Built> {
    let mut m = mt(i);
    let [x, y, z] = ["x", "y", "z"].map(|n| var(m.tb.parameter(n)));
    let tb = &m.tb;
    let ctx = SeriesCtx::new(tb, i.order);
    let lhs = gen_sum(&ctx, &m.t, |n| {
        Ok(inv_fact(tb, n).mul_poly(&(named_poly(tb, NamedPoly::RogersSzego, n, &x, &LaurentPoly::zero())? * en(tb, n, &y, &z)?)))
    })?;
    let r = sqrt_q(tb)?;
    let base = if printed { q(tb, 1) } else { r.clone() };
    let ty = &m.t * &y;
    let tzx = &m.t * &z * &x;
    let sum = sum_k(&ctx, kmax(&ctx, &m.t), |k| {
        let c = inv_fact(tb, k).mul_poly(&(tri(&r, k as i64)? * poch(tb, &ty, k) * tzx.pow(k)));
        scaled(&ctx, &exton_phi(&ctx, &(&m.t * &z * r.pow(k)), &base)?, &c)
    })?;
    let rhs = pinf_ratio(&ctx, &[], &[ty.clone(), &ty * &x])?.mul_ref(&sum);
    Ok(Built::new(tb.clone()).series("", lhs, rhs))
}

fn mehler_poch_en(i: &Inst) -> Result<Built> {
    let mut m = mt(i);
    let [x, y, z] = ["x", "y", "z"].map(|n| var(m.tb.parameter(n)));
    let tb = &m.tb;
    let ctx = SeriesCtx::new(tb, i.order);
    let lhs = gen_sum(&ctx, &m.t, |n| Ok(inv_fact(tb, n).mul_poly(&(poch(tb, &x, n) * en(tb, n, &y, &z)?))))?;
    let r = sqrt_q(tb)?;
    let ty = &m.t * &y;
    let txy = &ty * &x;
    let mtzx = -(&m.t * &z * &x);
    let sum = sum_k(&ctx, kmax(&ctx, &m.t), |k| {
        let c = inv_fact(tb, k)
            .mul_ref(&poch_inv(tb, &txy, k)?)
            .mul_poly(&(r.pow_i(3 * binom2(k as i64))? * poch(tb, &ty, k) * mtzx.pow(k)));
        scaled(&ctx, &ex(&ctx, &(&m.t * &z * r.pow(k)))?, &c)
    })?;
    let rhs = pinf_ratio(&ctx, &[txy.clone()], &[ty.clone()])?.mul_ref(&sum);
    Ok(Built::new(tb.clone()).series("", lhs, rhs))
}

fn mehler_en_en(i: &Inst) -> Result<Built> {
    let mut m = mt(i);
    let [x, y, z, w] = ["x", "y", "z", "w"].map(|n| var(m.tb.parameter(n)));
    let tb = &m.tb;
    let ctx = SeriesCtx::new(tb, i.order);
    let lhs = gen_sum(&ctx, &m.t, |n| Ok(inv_fact(tb, n).mul_poly(&(en(tb, n, &x, &y)? * en(tb, n, &z, &w)?))))?;
    let r = sqrt_q(tb)?;
    let txz = &m.t * &x * &z;
    let twy = &m.t * &w * &y;
    let sum = sum_k(&ctx, kmax(&ctx, &m.t), |k| {
        let c = inv_fact(tb, k).mul_poly(&(q(tb, binom2(k as i64)) * poch(tb, &txz, k) * twy.pow(k)));
        let e = ex(&ctx, &(&m.t * &x * &w * r.pow(k)))?.mul_ref(&ex(&ctx, &(&m.t * &y * &z * r.pow(k)))?);
        scaled(&ctx, &e, &c)
    })?;
    let rhs = pinf_inv(&ctx, &txz)?.mul_ref(&sum);
    Ok(Built::new(tb.clone()).series("", lhs, rhs))
}

fn rogers_en(i: &Inst) -> Result<Built> {
    let mut tb = i.table();
    let t = var(tb.small("t"));
    let s = var(tb.small("s"));
    let x = var(tb.parameter("x"));
    let y = var(tb.parameter("y"));
    let ctx = SeriesCtx::new(&tb, i.order);
    let lhs = double_gen(&ctx, &t, &s, |n, m| Ok(inv_fact(&tb, n).mul_ref(&inv_fact(&tb, m)).mul_poly(&en(&tb, n + m, &x, &y)?)))?;
    let r = sqrt_q(&tb)?;
    let (sx, ty) = (&s * &x, &t * &y);
    let sum = sum_k(&ctx, kmax(&ctx, &t), |k| {
        let c = inv_fact(&tb, k).mul_poly(&(tri(&r, k as i64)? * poch(&tb, &sx, k) * ty.pow(k)));
        scaled(&ctx, &ex(&ctx, &(&s * &y * r.pow(k)))?, &c)
    })?;
    let rhs = pinf_ratio(&ctx, &[], &[&t * &x, sx.clone()])?.mul_ref(&sum);
    Ok(Built::new(tb.clone()).series("", lhs, rhs))
}
