use super::super::kit::*;
use super::super::{Built, IdentitySpec};
use crate::algebra::{LaurentPoly, RationalExpr, SymbolTable};
use crate::error::Result;
use crate::qkernel::{binom2, gauss_binomial, qpochhammer_base};
use crate::special::{
    named_poly, phi_terminating, r_poly, r_poly_u, rn_hypergeometric_rep, rn_qdifference_residual, rn_recurrence_step,
    rn_shift_expansion, HyperSpec, NamedPoly, Recurrence,
};

pub fn specs() -> Vec<IdentitySpec> {
    vec![
        IdentitySpec::new("rn.specializations.hn", "h_n(x|q) = R_n(1,x;1,1) = sum [n k] x^k", spec_hn).param("n", 0, 10),
        IdentitySpec::new(
            "rn.specializations.inverse_hn",
            "R_n(1,x;q,q) = q^C(n,2) sum [n k] q^(k(k-n)) x^k = q^C(n,2) h_n(x|q^-1)",
            spec_inverse_hn,
        )
        .param("n", 0, 10)
        .notes(&["h_n(x|q^-1) is the Rogers-Szego polynomial in base q^-1; the factor q^C(n,2) is needed"]),
        IdentitySpec::new("rn.specializations.rn", "r_n(x,y) = R_n(x,y;1,1) = sum [n k] x^(n-k) y^k = x^n h_n(y/x|q)", spec_rn).param("n", 0, 10),
        IdentitySpec::new(
            "rn.specializations.pochhammer",
            "(x;q)_n = R_n(1,-x;1,q) = sum [n k] (-1)^k q^C(k,2) x^k",
            spec_pochhammer,
        )
        .param("n", 0, 10),
        IdentitySpec::new(
            "rn.specializations.stieltjes_wigert",
            "S_n(x;q) = R_n(1,qx;1,q^2) = sum [n k] q^(k^2) x^k",
            spec_sw,
        )
        .param("n", 0, 10),
        IdentitySpec::new(
            "rn.exton_def",
            "E_n(x,y) = R_n(x,y;1,q^(1/2)) = sum [n k] q^(C(k,2)/2) x^(n-k) y^k = sum [n k]_(q^(1/2)) (-q^(1/2);q^(1/2))_n / ((-q^(1/2);q^(1/2))_k (-q^(1/2);q^(1/2))_(n-k)) q^(C(k,2)/2) x^(n-k) y^k",
            exton_def,
        )
        .param("n", 0, 8)
        .scale(2),
        IdentitySpec::new("rn.uv_reduction", "R_n(x,y;u,v) = u^C(n,2) R_n(x, u^(1-n) y; 1, uv)", uv_reduction).param("n", 0, 8),
        IdentitySpec::new("rn.homogeneity", "R_n(cx,cy;u,v) = c^n R_n(x,y;u,v)", homogeneity).param("n", 0, 8),
        IdentitySpec::new(
            "rn.recurrences",
            "R_(n+1)(x,y;u) = x R_n(x,qy;u) + y R_n(x,uy;u) = x R_n(x,y;u) + y R_n(qx,uy;u)",
            recurrences,
        )
        .param("n", 0, 10),
        IdentitySpec::new(
            "rn.shift",
            "R_(n+m)(x,y;u) = sum_k [m k] u^C(k,2) x^(m-k) y^k R_n(x, q^(m-k) u^k y; u)",
            shift,
        )
        .param("n", 0, 10)
        .param("m", 0, 10)
        .constraint(|v| v[0] + v[1] <= 10),
        IdentitySpec::new(
            "rn.limit",
            "[x^k] R_n(1,x;u) - u^C(k,2)/(q;q)_k = u^C(k,2) ((q^(n-k+1);q)_k - 1)/(q;q)_k has q-valuation >= n-k+1",
            limit,
        )
        .param("n", 8, 10)
        .param("k", 0, 4)
        .constraint(|v| v[0] % 2 == 0),
        IdentitySpec::new("rn.hyper_rep", "R_n(1,x;u) = 2Phi0(q^-n, 0; -; q, u, q^n x)", hyper_rep).param("n", 0, 8),
        IdentitySpec::new(
            "rn.hyper_rep.hn",
            "h_n(x|q) = 2Phi0(q^-n, 0; -; q, 1, q^n x) = 2phi0(q^-n, 0; -; q, q^n x)",
            rep_hn,
        )
        .param("n", 0, 8),
        IdentitySpec::new(
            "rn.hyper_rep.inverse_hn",
            "R_n(1,x;q,q) = q^C(n,2) 2Phi0(q^-n, 0; -; q, q^2, qx) = q^C(n,2) 1phi1(q^-n; 0; q, qx)",
            rep_inverse_hn,
        )
        .param("n", 0, 8),
        IdentitySpec::new(
            "rn.hyper_rep.rn",
            "r_n(x,y) = x^n 2Phi0(q^-n, 0; -; q, 1, q^n y/x) = x^n 2phi0(q^-n, 0; -; q, q^n y/x)",
            rep_rn,
        )
        .param("n", 0, 8),
        IdentitySpec::new(
            "rn.hyper_rep.pochhammer",
            "(x;q)_n = 2Phi0(q^-n, 0; -; q, q, -q^n x) = 2phi1(q^-n, 0; 0; q, q^n x)",
            rep_pochhammer,
        )
        .param("n", 0, 8),
        IdentitySpec::new(
            "rn.hyper_rep.stieltjes_wigert",
            "S_n(x;q) = 2Phi0(q^-n, 0; -; q, q^2, q^(n+1) x) = 1phi1(q^-n; 0; q, q^(n+1) x)",
            rep_sw,
        )
        .param("n", 0, 8)
        .notes(&["the 1phi1 argument is +q^(n+1) x; the printed minus sign is in the errata registry"]),
        IdentitySpec::new(
            "rn.hyper_rep.exton",
            "E_n(x,y) = x^n 2Phi0(q^-n, 0; -; q, q^(1/2), q^n y/x) = x^n 3phi1(q^(-n/2), -q^(-n/2), 0; -q^(1/2); q^(1/2), q^n y/x)",
            rep_exton,
        )
        .param("n", 0, 8)
        .scale(2)
        .notes(&["the printed 4phi2 form carries an extra (q;q^(1/2))_k/(q^(1/2);q^(1/2))_k and is in the errata registry"]),
        IdentitySpec::new(
            "rn.qdiff",
            "f(x) = R_n(1,x;u): (D f)(x/u) + q^(n-1) x (D f)(x/q) = (1-q^n) f(x), equivalently f(x/u) - f(qx/u) + q^n (x/u) f(x/q) - (x/u) f(x) = 0",
            qdiff,
        )
        .param("n", 1, 8),
    ]
}

fn xy(t: &mut SymbolTable) -> (LaurentPoly, LaurentPoly) {
    (var(t.parameter("x")), var(t.parameter("y")))
}

fn direct(t: &SymbolTable, n: u32, f: impl Fn(i64) -> Result<LaurentPoly>) -> Result<LaurentPoly> {
    let parts: Vec<LaurentPoly> = (0..=n as i64).map(|k| Ok(gauss_binomial(t, n as i64, k) * f(k)?)).collect::<Result<_>>()?;
    Ok(LaurentPoly::sum(parts.iter()))
}

fn spec_hn(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let (x, _) = xy(&mut t);
    let n = i.nat("n");
    let lhs = named_poly(&t, NamedPoly::RogersSzego, n, &x, &LaurentPoly::zero())?;
    let rhs = direct(&t, n, |k| Ok(x.pow(k as u32)))?;
    Ok(Built::new(t).poly("", lhs, rhs))
}

fn spec_inverse_hn(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let (x, _) = xy(&mut t);
    let n = i.nat("n");
    let lhs = named_poly(&t, NamedPoly::InverseRogersSzego, n, &x, &LaurentPoly::zero())?;
    let pre = q(&t, binom2(n as i64));
    let rhs = &pre * direct(&t, n, |k| Ok(q(&t, k * (k - n as i64)) * x.pow(k as u32)))?;
    // h_n(x|q^-1): invert the base inside the ordinary Rogers-Szego polynomial.
    let p = t.base();
    let h = named_poly(&t, NamedPoly::RogersSzego, n, &x, &LaurentPoly::zero())?;
    let h_inv = h.substitute(&[(p, LaurentPoly::var_pow(p, -1))])?;
    Ok(Built::new(t).poly("sum", lhs.clone(), rhs).poly("base inversion", lhs, &pre * &h_inv))
}

fn spec_rn(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let (x, y) = xy(&mut t);
    let n = i.nat("n");
    let lhs = named_poly(&t, NamedPoly::Homogeneous, n, &x, &y)?;
    let rhs = direct(&t, n, |k| Ok(x.pow(n - k as u32) * y.pow(k as u32)))?;
    let h = direct(&t, n, |k| Ok((&y * &x.inv_term()?).pow(k as u32)))?;
    Ok(Built::new(t).poly("sum", lhs.clone(), rhs).poly("x^n h_n(y/x)", lhs, x.pow(n) * h))
}

fn spec_pochhammer(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let (x, _) = xy(&mut t);
    let n = i.nat("n");
    let lhs = named_poly(&t, NamedPoly::Pochhammer, n, &x, &LaurentPoly::zero())?;
    let rhs = direct(&t, n, |k| Ok(int(sign(k)) * q(&t, binom2(k)) * x.pow(k as u32)))?;
    Ok(Built::new(t.clone()).poly("sum", lhs.clone(), rhs).poly("product", lhs, poch(&t, &x, n)))
}

fn spec_sw(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let (x, _) = xy(&mut t);
    let n = i.nat("n");
    let lhs = named_poly(&t, NamedPoly::StieltjesWigert, n, &x, &LaurentPoly::zero())?;
    let rhs = direct(&t, n, |k| Ok(q(&t, k * k) * x.pow(k as u32)))?;
    Ok(Built::new(t).poly("", lhs, rhs))
}

/// `E_n` with the exponent on `q^(1/2)` supplied by `expo(n, k)`; shared with the errata entry.
pub(crate) fn exton_def_with(i: &Inst, expo: fn(i64, i64) -> i64) -> Result<Built> {
    let mut t = i.table();
    let (x, y) = xy(&mut t);
    let n = i.nat("n") as i64;
    let r = sqrt_q(&t)?;
    let lhs = named_poly(&t, NamedPoly::Exton, n as u32, &x, &y)?;
    let mono = |k: i64| -> Result<LaurentPoly> { Ok(r.pow_i(expo(n, k))? * x.pow((n - k) as u32) * y.pow(k as u32)) };
    let first = direct(&t, n as u32, |k| mono(k))?;
    let neg = r.neg_ref();
    // [n k]_(q^(1/2)) times the (-q^(1/2);q^(1/2)) ratio; only the product is a polynomial.
    let f = |m: i64| qpochhammer_base(&r, &r, m as u32) * qpochhammer_base(&neg, &r, m as u32);
    let mut parts = Vec::new();
    for k in 0..=n {
        let c = f(n)
            .exact_div(&(f(k) * f(n - k)))
            .ok_or_else(|| invalid("base q^(1/2) quotient is not a polynomial"))?;
        parts.push(c * mono(k)?);
    }
    let second = LaurentPoly::sum(parts.iter());
    Ok(Built::new(t).poly("q-binomial sum", lhs.clone(), first).poly("base q^(1/2) form", lhs, second))
}

fn exton_def(i: &Inst) -> Result<Built> {
    exton_def_with(i, |_, k| binom2(k))
}

fn uv_reduction(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let (x, y) = xy(&mut t);
    let u = var(t.parameter("u"));
    let v = var(t.parameter("v"));
    let n = i.nat("n");
    let lhs = r_poly(&t, n, &x, &y, &u, &v);
    let rhs = tri(&u, n as i64)? * r_poly(&t, n, &x, &(u.pow_i(1 - n as i64)? * &y), &one(), &(&u * &v));
    Ok(Built::new(t).poly("", lhs, rhs))
}

fn homogeneity(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let (x, y) = xy(&mut t);
    let u = var(t.parameter("u"));
    let v = var(t.parameter("v"));
    let c = var(t.parameter("c"));
    let n = i.nat("n");
    let lhs = r_poly(&t, n, &(&c * &x), &(&c * &y), &u, &v);
    let rhs = c.pow(n) * r_poly(&t, n, &x, &y, &u, &v);
    Ok(Built::new(t).poly("", lhs, rhs))
}

fn recurrences(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let (x, y) = xy(&mut t);
    let u = var(t.parameter("u"));
    let n = i.nat("n");
    let (l1, r1) = rn_recurrence_step(&t, n, Recurrence::First, &x, &y, &u);
    let (l2, r2) = rn_recurrence_step(&t, n, Recurrence::Second, &x, &y, &u);
    // Independent route: the sum definition at n+1.
    let direct_lhs = r_poly_u(&t, n + 1, &x, &y, &u);
    Ok(Built::new(t).poly("first", direct_lhs.clone(), r1).poly("second", direct_lhs, r2).poly("lhs", l1, l2))
}

fn shift(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let (x, y) = xy(&mut t);
    let u = var(t.parameter("u"));
    let (l, r) = rn_shift_expansion(&t, i.nat("n"), i.nat("m"), &x, &y, &u);
    Ok(Built::new(t).poly("", l, r))
}

fn limit(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let (x, _) = xy(&mut t);
    let u = var(t.parameter("u"));
    let (n, k) = (i.nat("n"), i.nat("k"));
    let xv = t.var("x")?;
    let p = t.base();
    let poly = r_poly_u(&t, n, &one(), &x, &u);
    let coef: LaurentPoly = LaurentPoly::from_terms(
        poly.terms().iter().filter(|(m, _)| m.exp(xv) == k as i32).map(|(m, c)| {
            let mut mm = *m;
            mm.set_exp(xv, 0);
            (mm, c.clone())
        }),
    );
    // coef - u^C(k,2)/(q;q)_k over the common denominator (q;q)_k.
    let num = coef * poch(&t, &q(&t, 1), k) - tri(&u, k as i64)?;
    let val = num.valuation(p).map(|e| e as i64 / t.base_scale() as i64);
    let bound = (n - k + 1) as i64;
    let ok = match val {
        None => true,
        Some(v) => v >= bound,
    };
    let shown = val.map_or("infinite".to_string(), |v| v.to_string());
    Ok(Built::new(t).predicate("", ok, format!("q-valuation {shown}"), format!(">= {bound}")))
}

fn terminating(t: &SymbolTable, spec: HyperSpec) -> Result<RationalExpr> {
    phi_terminating(t, &spec)
}

fn rep_pair(t: &SymbolTable, n: u32, x: &LaurentPoly, u: LaurentPoly) -> Result<RationalExpr> {
    let spec = HyperSpec::deformed(t, vec![q(t, -(n as i64)), LaurentPoly::zero()], vec![], u, q(t, n as i64) * x);
    terminating(t, spec)
}

fn hyper_rep(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let (x, _) = xy(&mut t);
    let u = var(t.parameter("u"));
    let (l, r) = rn_hypergeometric_rep(&t, i.nat("n"), &x, &u)?;
    Ok(Built::new(t).rational("", rat(l), r))
}

fn rep_hn(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let (x, _) = xy(&mut t);
    let n = i.nat("n");
    let lhs = rat(named_poly(&t, NamedPoly::RogersSzego, n, &x, &LaurentPoly::zero())?);
    let deformed = rep_pair(&t, n, &x, one())?;
    let classical = terminating(&t, HyperSpec::classical(&t, vec![q(&t, -(n as i64)), LaurentPoly::zero()], vec![], q(&t, n as i64) * &x))?;
    Ok(Built::new(t).rational("2Phi0", lhs.clone(), deformed).rational("2phi0", lhs, classical))
}

fn rep_inverse_hn(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let (x, _) = xy(&mut t);
    let n = i.nat("n") as i64;
    let lhs = rat(named_poly(&t, NamedPoly::InverseRogersSzego, n as u32, &x, &LaurentPoly::zero())?);
    let pre = q(&t, binom2(n));
    let phi2 = terminating(&t, HyperSpec::deformed(&t, vec![q(&t, -n), LaurentPoly::zero()], vec![], q(&t, 2), q(&t, 1) * &x))?;
    let phi1 = terminating(&t, HyperSpec::classical(&t, vec![q(&t, -n)], vec![LaurentPoly::zero()], q(&t, 1) * &x))?;
    Ok(Built::new(t).rational("2Phi0", lhs.clone(), phi2.mul_poly(&pre)).rational("1phi1", lhs, phi1.mul_poly(&pre)))
}

fn rep_rn(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let (x, y) = xy(&mut t);
    let n = i.nat("n") as i64;
    let lhs = rat(named_poly(&t, NamedPoly::Homogeneous, n as u32, &x, &y)?);
    let arg = q(&t, n) * &y * x.inv_term()?;
    let d = terminating(&t, HyperSpec::deformed(&t, vec![q(&t, -n), LaurentPoly::zero()], vec![], one(), arg.clone()))?;
    let c = terminating(&t, HyperSpec::classical(&t, vec![q(&t, -n), LaurentPoly::zero()], vec![], arg))?;
    let xn = x.pow(n as u32);
    Ok(Built::new(t).rational("2Phi0", lhs.clone(), d.mul_poly(&xn)).rational("2phi0", lhs, c.mul_poly(&xn)))
}

fn rep_pochhammer(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let (x, _) = xy(&mut t);
    let n = i.nat("n") as i64;
    let lhs = rat(poch(&t, &x, n as u32));
    let d = terminating(&t, HyperSpec::deformed(&t, vec![q(&t, -n), LaurentPoly::zero()], vec![], q(&t, 1), -(q(&t, n) * &x)))?;
    let c = terminating(&t, HyperSpec::classical(&t, vec![q(&t, -n), LaurentPoly::zero()], vec![LaurentPoly::zero()], q(&t, n) * &x))?;
    Ok(Built::new(t).rational("2Phi0", lhs.clone(), d).rational("2phi1", lhs, c))
}

/// `S_n` against `2Phi0` and against `1phi1` with argument `sign * q^(n+1) x`.
pub(crate) fn rep_sw_with(i: &Inst, sign: i64) -> Result<Built> {
    let mut t = i.table();
    let (x, _) = xy(&mut t);
    let n = i.nat("n") as i64;
    let lhs = rat(named_poly(&t, NamedPoly::StieltjesWigert, n as u32, &x, &LaurentPoly::zero())?);
    let arg = q(&t, n + 1) * &x;
    let d = terminating(&t, HyperSpec::deformed(&t, vec![q(&t, -n), LaurentPoly::zero()], vec![], q(&t, 2), arg.clone()))?;
    let c = terminating(&t, HyperSpec::classical(&t, vec![q(&t, -n)], vec![LaurentPoly::zero()], int(sign) * arg))?;
    Ok(Built::new(t).rational("2Phi0", lhs.clone(), d).rational("1phi1", lhs, c))
}

fn rep_sw(i: &Inst) -> Result<Built> {
    rep_sw_with(i, 1)
}

/// `E_n` against `2Phi0` and a terminating series in base `q^(1/2)`; the correct
/// one is `3phi1(q^(-n/2), -q^(-n/2), 0; -q^(1/2); q^(1/2), q^n y/x)`, while `printed`
/// selects `4phi2(q^(-n/2), -q^(-n/2), q, 0; q^(1/2), -q^(1/2); q^(1/2), q^n y/x)`.
pub(crate) fn rep_exton_with(i: &Inst, printed: bool) -> Result<Built> {
    let mut t = i.table();
    let (x, y) = xy(&mut t);
    let n = i.nat("n") as i64;
    let lhs = rat(named_poly(&t, NamedPoly::Exton, n as u32, &x, &y)?);
    let arg = q(&t, n) * &y * x.inv_term()?;
    let r = sqrt_q(&t)?;
    let d = terminating(&t, HyperSpec::deformed(&t, vec![q(&t, -n), LaurentPoly::zero()], vec![], r.clone(), arg.clone()))?;
    let top = r.pow_i(-n)?;
    let (upper, lower) = if printed {
        (vec![top.clone(), top.neg_ref(), q(&t, 1), LaurentPoly::zero()], vec![r.clone(), r.neg_ref()])
    } else {
        (vec![top.clone(), top.neg_ref(), LaurentPoly::zero()], vec![r.neg_ref()])
    };
    let half = terminating(&t, HyperSpec::classical(&t, upper, lower, arg).with_base(r))?;
    let xn = x.pow(n as u32);
    let b = Built::new(t).rational("base q^(1/2)", lhs.clone(), half.mul_poly(&xn));
    Ok(if printed { b } else { b.rational("2Phi0", lhs, d.mul_poly(&xn)) })
}

fn rep_exton(i: &Inst) -> Result<Built> {
    rep_exton_with(i, false)
}

fn qdiff(i: &Inst) -> Result<Built> {
    let mut t = i.table();
    let x = t.parameter("x");
    let u = var(t.parameter("u"));
    let (first, second) = rn_qdifference_residual(&t, i.nat("n"), x, &u)?;
    Ok(Built::new(t).poly("first form", first, LaurentPoly::zero()).poly("second form", second, LaurentPoly::zero()))
}
