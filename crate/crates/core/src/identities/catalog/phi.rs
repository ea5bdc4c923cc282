use super::super::kit::*;
use super::super::{Built, IdentitySpec};
use crate::algebra::{LaurentPoly, RationalExpr, SeriesCtx, SymbolTable, TruncatedSeries};
use crate::error::Result;
use crate::special::{gauss2f1_deformed, HyperSpec};

pub fn specs() -> Vec<IdentitySpec> {
    vec![
        IdentitySpec::new(
            "phi.deformed_reduction",
            "(r+1)Phi(r)(a_1..a_r, 0; b_1..b_r; q, q, z) = rphir(a_1..a_r; b_1..b_r; q, -z)",
            deformed_reduction,
        )
        .param("r", 1, 2)
        .small(&["z"]),
        IdentitySpec::new("phi.eq_representation", "e_q(z,u) = 1Phi0(0; -; q, u, z)", eq_representation).small(&["z"]),
        IdentitySpec::new(
            "phi.term_ratio",
            "v_(n+1)/v_n = u^n prod(1 - a_i q^n) / ((1 - q^(n+1)) prod(1 - b_j q^n)) * (-q^n)^(1+s-r)",
            term_ratio,
        )
        .param("n", 0, 4),
        IdentitySpec::new(
            "phi21.definition",
            "2Phi1(a,b;c;q,u,z) = sum u^C(n,2) (a;q)_n (b;q)_n / ((q;q)_n (c;q)_n) z^n",
            phi21_definition,
        )
        .small(&["z"]),
        IdentitySpec::new(
            "phi21.dq_pow",
            "D_z^n 2Phi1(a,b;c;q,u,z) = u^C(n,2) (a;q)_n (b;q)_n/(c;q)_n 2Phi1(aq^n, bq^n; cq^n; q, u, u^n z)",
            phi21_dq_pow,
        )
        .param("n", 0, 3)
        .small(&["z"])
        .order(6),
        IdentitySpec::new(
            "phi21.qdiff",
            "f = 2Phi1(a,b;c;q,u,z): c z D^2 f(z) - abq z^2 D^2[f(uz)] + (1-c) D f(z) + ((1-a)(1-b) - (1-abq)) z D[f(uz)] - (1-a)(1-b) f(uz) = 0",
            phi21_qdiff,
        )
        .small(&["z"])
        .order(10)
        .notes(&["D acts after substituting uz for z"]),
        IdentitySpec::new(
            "gauss2F1.limit_eq",
            "f = sum u^C(n,2) (a)_n (b)_n/((c)_n n!) z^n: z f''(z) - z^2 [f(uz)]'' + c f'(z) - (a+b+1) z [f(uz)]' - ab f(uz) = 0",
            gauss_limit,
        )
        .small(&["z"])
        .notes(&["derivatives act after substituting uz for z"]),
    ]
}

fn deformed_reduction(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let r = i.nat("r") as usize;
    let upper: Vec<LaurentPoly> = (0..r).map(|k| var(t.parameter(&format!("a{}", k + 1)))).collect();
    let lower: Vec<LaurentPoly> = (0..r).map(|k| var(t.parameter(&format!("b{}", k + 1)))).collect();
    let z = var(t.small("z"));
    let ctx = SeriesCtx::new(&t, i.order);
    let mut up0 = upper.clone();
    up0.push(LaurentPoly::zero());
    let lhs = phi(&ctx, up0, lower.clone(), q(&t, 1), z.clone())?;
    let rhs = phic(&ctx, upper, lower, z.neg_ref())?;
    Ok(Built::new(t.clone()).series("", lhs, rhs))
}

fn eq_representation(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let u = var(t.parameter("u"));
    let z = var(t.small("z"));
    let ctx = SeriesCtx::new(&t, i.order);
    let lhs = eq(&ctx, &z, &u)?;
    let rhs = phi(&ctx, vec![LaurentPoly::zero()], vec![], u.clone(), z.clone())?;
    Ok(Built::new(t.clone()).series("", lhs, rhs))
}

fn term_ratio(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let a: Vec<LaurentPoly> = (1..=3).map(|k| var(t.parameter(&format!("a{k}")))).collect();
    let b: Vec<LaurentPoly> = (1..=2).map(|k| var(t.parameter(&format!("b{k}")))).collect();
    let u = var(t.parameter("u"));
    let z = var(t.parameter("z"));
    let n = i.get("n");
    let mut b_out = Built::new(t.clone());
    // (r, s) = (3, 2), (2, 2) and (1, 2) exercise exponents 0, 1 and 2 of the sign-power factor.
    for r in 1..=3usize {
        let spec = HyperSpec::deformed(&t, a[..r].to_vec(), b.clone(), u.clone(), z.clone());
        let e = 1 + 2 - r as i64;
        let mut num = u.pow(n as u32) * q(&t, n * e) * int(sign(e));
        for ai in &a[..r] {
            num = num * (one() - ai * &q(&t, n));
        }
        let mut den = one() - q(&t, n + 1);
        for bj in &b {
            den = den * (one() - bj * &q(&t, n));
        }
        let ratio = RationalExpr::new(num, &den)?;
        let lhs = spec.term_coefficient(n as u32 + 1)?;
        let rhs = spec.term_coefficient(n as u32)?.mul_ref(&ratio);
        let incremental = spec.terms(&t, n as u32 + 1)?.pop().expect("n+2 terms");
        b_out = b_out
            .rational(format!("ratio r={r}"), lhs.clone(), rhs)
            .rational(format!("incremental r={r}"), lhs.mul_poly(&z.pow(n as u32 + 1)), incremental);
    }
    Ok(b_out)
}

fn phi21(ctx: &SeriesCtx, a: &LaurentPoly, b: &LaurentPoly, c: &LaurentPoly, u: &LaurentPoly, z: &LaurentPoly) -> Result<TruncatedSeries> {
    phi(ctx, vec![a.clone(), b.clone()], vec![c.clone()], u.clone(), z.clone())
}

struct Phi21Syms {
    t: SymbolTable,
    a: LaurentPoly,
    b: LaurentPoly,
    c: LaurentPoly,
    u: LaurentPoly,
    z: LaurentPoly,
}

fn phi21_syms(i: &Inst) -> Phi21Syms {
    let mut t = i.table();
    let a = var(t.parameter("a"));
    let b = var(t.parameter("b"));
    let c = var(t.parameter("c"));
    let u = var(t.parameter("u"));
    let z = var(t.small("z"));
    Phi21Syms { t, a, b, c, u, z }
}

fn phi21_definition(i: &Inst) -> Result<Built> {
    let Phi21Syms { t, a, b, c, u, z } = phi21_syms(i);
    let ctx = SeriesCtx::new(&t, i.order);
    let lhs = phi21(&ctx, &a, &b, &c, &u, &z)?;
    let rhs = gen_sum(&ctx, &z, |n| {
        Ok(rat(tri(&u, n as i64)? * poch(&t, &a, n) * poch(&t, &b, n))
            .mul_ref(&inv_fact(&t, n))
            .mul_ref(&poch_inv(&t, &c, n)?))
    })?;
    Ok(Built::new(t.clone()).series("", lhs, rhs))
}

fn phi21_dq_pow(i: &Inst) -> Result<Built> {
    let Phi21Syms { t, a, b, c, u, z } = phi21_syms(i);
    let n = i.nat("n");
    let zv = t.var("z")?;
    let ctx = SeriesCtx::new(&t, i.order);
    let lhs = phi21(&ctx.with_order(i.order + n), &a, &b, &c, &u, &z)?.dq_pow(&t, zv, n)?;
    let qn = q(&t, n as i64);
    let inner = phi21(&ctx, &(&a * &qn), &(&b * &qn), &(&c * &qn), &u, &(u.pow(n) * &z))?;
    let pre = rat(tri(&u, n as i64)? * poch(&t, &a, n) * poch(&t, &b, n)).mul_ref(&poch_inv(&t, &c, n)?);
    let rhs = scaled(&ctx, &inner, &pre)?;
    Ok(Built::new(t.clone()).series("", lhs, rhs))
}

fn phi21_qdiff(i: &Inst) -> Result<Built> {
    let Phi21Syms { t, a, b, c, u, z } = phi21_syms(i);
    let zv = t.var("z")?;
    let ctx = SeriesCtx::new(&t, i.order);
    let up = ctx.with_order(i.order + 2);
    let f = phi21(&up, &a, &b, &c, &u, &z)?;
    let g = f.dilate(zv, &u)?;
    let (one, q1) = (one(), q(&t, 1));
    let ab1 = (&one - &a) * (&one - &b);
    let parts = [
        f.dq_pow(&t, zv, 2)?.mul_poly(&(&c * &z))?,
        g.dq_pow(&t, zv, 2)?.mul_poly(&(&a * &b * &q1 * z.pow(2)))?.neg_ref(),
        f.dq(&t, zv)?.mul_poly(&(&one - &c))?,
        g.dq(&t, zv)?.mul_poly(&((&ab1 - (&one - &a * &b * &q1)) * &z))?,
        g.mul_poly(&ab1)?.neg_ref(),
    ];
    let lhs = total(&ctx, &parts);
    Ok(Built::new(t.clone()).series("", lhs, ctx.zero()))
}

fn gauss_limit(i: &Inst) -> Result<Built> {
    let Phi21Syms { t, a, b, c, u, z } = phi21_syms(i);
    let zv = t.var("z")?;
    let ctx = SeriesCtx::new(&t, i.order);
    let up = ctx.with_order(i.order + 2);
    let f = gauss2f1_deformed(&up, &a, &b, &c, &u, &z)?;
    let g = f.dilate(zv, &u)?;
    let one = one();
    let parts = [
        f.derivative(zv)?.derivative(zv)?.mul_poly(&z)?,
        g.derivative(zv)?.derivative(zv)?.mul_poly(&z.pow(2))?.neg_ref(),
        f.derivative(zv)?.mul_poly(&c)?,
        g.derivative(zv)?.mul_poly(&((&a + &b + &one) * &z))?.neg_ref(),
        g.mul_poly(&(&a * &b))?.neg_ref(),
    ];
    let lhs = total(&ctx, &parts);
    Ok(Built::new(t.clone()).series("", lhs, ctx.zero()))
}
