use super::super::kit::*;
use super::super::{Built, IdentitySpec};
use crate::algebra::{LaurentPoly, RationalExpr, SeriesCtx};
use crate::error::Result;
use crate::qkernel::{binom2, gauss_binomial, qpochhammer_base};
use crate::special::{named_exponential, named_poly, ExpKind, HyperSpec, NamedPoly};

pub fn specs() -> Vec<IdentitySpec> {
    vec![
        IdentitySpec::new("pochhammer.iden1", "(a;q)_n = (a;q)_inf / (aq^n;q)_inf", iden1)
            .param("n", 0, 8)
            .small(&["a"])
            .order(10)
            .notes(&["a is small so both infinite products are formal series; the finite form (a;q)_(n+k) = (a;q)_n (aq^n;q)_k is checked alongside"]),
        IdentitySpec::new("pochhammer.iden2", "(a;q)_(n+k) = (a;q)_n (aq^n;q)_k", iden2).param("n", 0, 8).param("k", 0, 8),
        IdentitySpec::new("pochhammer.iden3", "(a;q)_(2n) = (a;q^2)_n (aq;q^2)_n", iden3).param("n", 0, 8),
        IdentitySpec::new("pochhammer.iden4", "(a^2;q^2)_n = (a;q)_n (-a;q)_n", iden4).param("n", 0, 8),
        IdentitySpec::new("pochhammer.inverse_base", "(x;q^-1)_n = q^(-C(n,2)) (-x)^n (x^-1;q)_n", inverse_base).param("n", 0, 8),
        IdentitySpec::new("pascal.both", "[n+1 k] = [n k] + q^(n+1-k) [n k-1] = q^k [n k] + [n k-1]", pascal)
            .param("n", 0, 12)
            .param("k", 0, 13)
            .constraint(|v| v[1] <= v[0] + 1),
        IdentitySpec::new("qbinomial.neg_n_rep", "[n k] = (q^-n;q)_k / (q;q)_k * (-q^n)^k * q^(-C(k,2))", neg_n_rep)
            .param("n", 0, 8)
            .param("k", 0, 8)
            .constraint(|v| v[1] <= v[0]),
        IdentitySpec::new(
            "binomial.exponent_identities",
            "C(n+k,2) = C(n,2) + C(k,2) + nk and C(n-k,2) = C(n,2) + C(k,2) + k(1-n)",
            exponent_identities,
        )
        .param("n", 0, 20)
        .param("k", 0, 20),
        IdentitySpec::new("qbinomial.theorem", "1phi0(a;-;q,z) = sum (a;q)_n z^n/(q;q)_n = (az;q)_inf / (z;q)_inf", qbinomial_theorem)
            .small(&["z"])
            .order(10),
        IdentitySpec::new(
            "eq.classical",
            "e_q(z,1) = 1phi0(0;-;q,z) = 1/(z;q)_inf; e_q(-z,q) = E_q(z) = 1phi1(0;0;q,-z) = (z;q)_inf; e_q(z,0) = 1 + z/(1-q)",
            eq_classical,
        )
        .small(&["z"])
        .notes(&["the 1phi0 argument is +z; see the errata registry for the printed sign"]),
        IdentitySpec::new("eq.exton_phi11", "e_q(z,q^(1/2)) = sum q^(C(n,2)/2) z^n/(q;q)_n = 1phi1(0;-q^(1/2);q^(1/2),-z)", eq_exton)
            .small(&["z"])
            .scale(2),
        IdentitySpec::new("eq.rogers_ramanujan", "e_q(qz,q^2) = R_q(z) = sum q^(n^2) z^n/(q;q)_n = 0phi1(-;0;q,qz)", eq_rr).small(&["z"]),
        IdentitySpec::new("sokal.functional_eq", "e_q(z,u) - e_q(qz,u) - z e_q(uz,u) = 0", sokal)
            .small(&["z"])
            .order(10),
        IdentitySpec::new("hn.generating", "sum h_n(x|q) t^n/(q;q)_n = 1/(t,xt;q)_inf", hn_generating).small(&["t"]),
        IdentitySpec::new("hn.mehler", "sum h_n(x|q) h_n(y|q) t^n/(q;q)_n = (xyt^2;q)_inf / (t,xt,yt,xyt;q)_inf", hn_mehler).small(&["t"]),
        IdentitySpec::new(
            "hn.rogers",
            "sum_(n,m) h_(n+m)(x|q) t^n s^m/((q;q)_n (q;q)_m) = (xst;q)_inf / (t,xt,s,xs;q)_inf",
            hn_rogers,
        )
        .small(&["t", "s"])
        .order(6),
    ]
}

fn iden1(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let a = var(t.small("a"));
    let n = i.nat("n");
    let ctx = SeriesCtx::new(&t, i.order);
    let lhs = ctx.poly(&poch(&t, &a, n))?;
    let rhs = pinf(&ctx, &a)?.mul_ref(&pinf_inv(&ctx, &(&a * &q(&t, n as i64)))?);
    let mut checks = Vec::new();
    for k in 0..=3u32 {
        checks.push((k, poch(&t, &a, n + k), poch(&t, &a, n) * poch(&t, &(&a * &q(&t, n as i64)), k)));
    }
    let mut b = Built::new(t.clone()).series("infinite quotient", lhs, rhs);
    for (k, l, r) in checks {
        b = b.poly(format!("finite k={k}"), l, r);
    }
    Ok(b)
}

fn iden2(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let a = var(t.parameter("a"));
    let (n, k) = (i.nat("n"), i.nat("k"));
    let lhs = poch(&t, &a, n + k);
    let rhs = poch(&t, &a, n) * poch(&t, &(&a * &q(&t, n as i64)), k);
    Ok(Built::new(t).poly("", lhs, rhs))
}

fn iden3(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let a = var(t.parameter("a"));
    let n = i.nat("n");
    let q2 = q(&t, 2);
    let lhs = poch(&t, &a, 2 * n);
    let rhs = qpochhammer_base(&a, &q2, n) * qpochhammer_base(&(&a * &q(&t, 1)), &q2, n);
    Ok(Built::new(t).poly("", lhs, rhs))
}

fn iden4(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let a = var(t.parameter("a"));
    let n = i.nat("n");
    let lhs = qpochhammer_base(&a.pow(2), &q(&t, 2), n);
    let rhs = poch(&t, &a, n) * poch(&t, &a.neg_ref(), n);
    Ok(Built::new(t).poly("", lhs, rhs))
}

fn inverse_base(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let x = var(t.parameter("x"));
    let n = i.nat("n");
    let lhs = qpochhammer_base(&x, &q(&t, -1), n);
    let rhs = q(&t, -binom2(n as i64)) * x.neg_ref().pow(n) * poch(&t, &x.inv_term()?, n);
    Ok(Built::new(t).poly("", lhs, rhs))
}

fn pascal(i: &Inst) -> Result<Built> {
    let t = i.table();
    let (n, k) = (i.get("n"), i.get("k"));
    let g = |a, b| gauss_binomial(&t, a, b);
    let lhs = g(n + 1, k);
    let first = g(n, k) + q(&t, n + 1 - k) * g(n, k - 1);
    let second = q(&t, k) * g(n, k) + g(n, k - 1);
    let quotient = binom_quotient(&q(&t, 1), n + 1, k)?;
    Ok(Built::new(t)
        .poly("first rule", lhs.clone(), first)
        .poly("second rule", lhs.clone(), second)
        .poly("quotient oracle", lhs, quotient))
}

fn neg_n_rep(i: &Inst) -> Result<Built> {
    let t = i.table();
    let (n, k) = (i.get("n"), i.get("k"));
    let lhs = RationalExpr::from_poly(gauss_binomial(&t, n, k));
    let num = poch(&t, &q(&t, -n), k as u32) * LaurentPoly::int(sign(k)) * q(&t, n * k - binom2(k));
    let rhs = rat(num).mul_ref(&inv_fact(&t, k as u32));
    Ok(Built::new(t).rational("", lhs, rhs))
}

fn exponent_identities(i: &Inst) -> Result<Built> {
    let (n, k) = (i.get("n"), i.get("k"));
    // Direct count of pairs, independent of the closed form used by binom2.
    let pairs = |m: i64| -> i64 {
        if m >= 0 {
            (0..m).sum()
        } else {
            (1..=-m).sum()
        }
    };
    let l1 = pairs(n + k);
    let r1 = pairs(n) + pairs(k) + n * k;
    let l2 = pairs(n - k);
    let r2 = pairs(n) + pairs(k) + k * (1 - n);
    Ok(Built::new(i.table())
        .predicate("sum", l1 == r1, l1.to_string(), r1.to_string())
        .predicate("difference", l2 == r2, l2.to_string(), r2.to_string()))
}

fn qbinomial_theorem(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let a = var(t.parameter("a"));
    let z = var(t.small("z"));
    let ctx = SeriesCtx::new(&t, i.order);
    let phi = phic(&ctx, vec![a.clone()], vec![], z.clone())?;
    let prod = pinf(&ctx, &(&a * &z))?.mul_ref(&pinf_inv(&ctx, &z)?);
    let direct = gen_sum(&ctx, &z, |n| Ok(rat(poch(&t, &a, n)).mul_ref(&inv_fact(&t, n))))?;
    Ok(Built::new(t.clone()).series("product", phi.clone(), prod).series("coefficients", phi, direct))
}

fn eq_classical(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let z = var(t.small("z"));
    let ctx = SeriesCtx::new(&t, i.order);
    let one = one();
    let e1 = eq(&ctx, &z, &one)?;
    let big = eq(&ctx, &z.neg_ref(), &q(&t, 1))?;
    let e0 = eq(&ctx, &z, &LaurentPoly::zero())?;
    let e0_rhs = ctx.rat(&(RationalExpr::one() + RationalExpr::new(z.clone(), &(one.clone() - q(&t, 1)))?))?;
    Ok(Built::new(t.clone())
        .series("e_q(z,1) = 1/(z;q)_inf", e1.clone(), pinf_inv(&ctx, &z)?)
        .series("e_q(z,1) = 1phi0(0;-;q,z)", e1.clone(), phic(&ctx, vec![LaurentPoly::zero()], vec![], z.clone())?)
        .series("e_q(z,1) (z;q)_inf = 1", e1.mul_ref(&pinf(&ctx, &z)?), ctx.one())
        .series("e_q(-z,q) = (z;q)_inf", big.clone(), pinf(&ctx, &z)?)
        .series("E_q = 1phi1(0;0;q,-z)", eq(&ctx, &z, &q(&t, 1))?, phic(&ctx, vec![LaurentPoly::zero()], vec![LaurentPoly::zero()], z.neg_ref())?)
        .series("e_q(z,0)", e0, e0_rhs))
}

fn eq_exton(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let z = var(t.small("z"));
    let ctx = SeriesCtx::new(&t, i.order);
    let r = sqrt_q(&t)?;
    let lhs = named_exponential(&ctx, ExpKind::Exton, &z)?;
    let spec = HyperSpec::classical(&t, vec![LaurentPoly::zero()], vec![r.neg_ref()], z.neg_ref()).with_base(r.clone());
    let rhs = crate::special::phi_series(&ctx, &spec)?;
    let direct = gen_sum(&ctx, &z, |n| Ok(rat(r.pow_i(binom2(n as i64))?).mul_ref(&inv_fact(&t, n))))?;
    Ok(Built::new(t.clone()).series("1phi1 in base q^(1/2)", lhs.clone(), rhs).series("coefficients", lhs, direct))
}

fn eq_rr(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let z = var(t.small("z"));
    let ctx = SeriesCtx::new(&t, i.order);
    let lhs = named_exponential(&ctx, ExpKind::RogersRamanujan, &z)?;
    let direct = gen_sum(&ctx, &z, |n| Ok(rat(q(&t, (n * n) as i64)).mul_ref(&inv_fact(&t, n))))?;
    let phi = phic(&ctx, vec![], vec![LaurentPoly::zero()], &q(&t, 1) * &z)?;
    Ok(Built::new(t.clone()).series("coefficients", lhs.clone(), direct).series("0phi1", lhs, phi))
}

fn sokal(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let u = var(t.parameter("u"));
    let z = var(t.small("z"));
    let ctx = SeriesCtx::new(&t, i.order);
    let lhs = eq(&ctx, &z, &u)?
        .sub_ref(&eq(&ctx, &(&q(&t, 1) * &z), &u)?)
        .sub_ref(&eq(&ctx, &(&u * &z), &u)?.mul_poly(&z)?);
    Ok(Built::new(t.clone()).series("", lhs, ctx.zero()))
}

fn hn_generating(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let x = var(t.parameter("x"));
    let tt = var(t.small("t"));
    let ctx = SeriesCtx::new(&t, i.order);
    let y = LaurentPoly::zero();
    let lhs = gen_sum(&ctx, &tt, |n| Ok(rat(named_poly(&t, NamedPoly::RogersSzego, n, &x, &y)?).mul_ref(&inv_fact(&t, n))))?;
    let rhs = pinf_ratio(&ctx, &[], &[tt.clone(), &x * &tt])?;
    Ok(Built::new(t.clone()).series("", lhs, rhs))
}

fn hn_mehler(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let x = var(t.parameter("x"));
    let y = var(t.parameter("y"));
    let tt = var(t.small("t"));
    let ctx = SeriesCtx::new(&t, i.order);
    let h = |n, v: &LaurentPoly| named_poly(&t, NamedPoly::RogersSzego, n, v, &LaurentPoly::zero());
    let lhs = gen_sum(&ctx, &tt, |n| Ok(rat(h(n, &x)? * h(n, &y)?).mul_ref(&inv_fact(&t, n))))?;
    let xy = &x * &y;
    let rhs = pinf_ratio(&ctx, &[&xy * &tt.pow(2)], &[tt.clone(), &x * &tt, &y * &tt, &xy * &tt])?;
    Ok(Built::new(t.clone()).series("", lhs, rhs))
}

fn hn_rogers(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let x = var(t.parameter("x"));
    let tt = var(t.small("t"));
    let s = var(t.small("s"));
    let ctx = SeriesCtx::new(&t, i.order);
    let lhs = double_gen(&ctx, &tt, &s, |n, m| {
        Ok(rat(named_poly(&t, NamedPoly::RogersSzego, n + m, &x, &LaurentPoly::zero())?)
            .mul_ref(&inv_fact(&t, n))
            .mul_ref(&inv_fact(&t, m)))
    })?;
    let rhs = pinf_ratio(&ctx, &[&x * &s * &tt], &[tt.clone(), &x * &tt, s.clone(), &x * &s])?;
    Ok(Built::new(t.clone()).series("", lhs, rhs))
}
