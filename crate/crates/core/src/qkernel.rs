//! q-shifted factorials, Gaussian binomials and the q-derivative.

use std::sync::{Mutex, OnceLock};

use rustc_hash::FxHashMap;

use crate::algebra::{ExactRational, LaurentPoly, Monomial, RationalExpr, SeriesCtx, SymbolTable, TruncatedSeries, Var};
use crate::error::{Error, Result};

/// `C(n, 2)` for any integer `n`.
pub fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// `(a; base)_n = prod_{k<n} (1 - a base^k)`.
pub fn qpochhammer_base(a: &LaurentPoly, base: &LaurentPoly, n: u32) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    let mut shift = a.clone();
    for _ in 0..n {
        acc = acc.mul_ref(&(LaurentPoly::one() - &shift));
        shift = shift.mul_ref(base);
    }
    acc
}

/// `(a; q)_n`, expanded.
pub fn qpochhammer(table: &SymbolTable, a: &LaurentPoly, n: u32) -> LaurentPoly {
    qpochhammer_base(a, &LaurentPoly::q_pow(table, 1), n)
}

/// `1 / (a; base)_n` with factored denominator.
pub fn qpochhammer_inv_base(a: &LaurentPoly, base: &LaurentPoly, n: u32) -> Result<RationalExpr> {
    let mut acc = RationalExpr::one();
    let mut shift = a.clone();
    for _ in 0..n {
        acc = acc.div_poly(&(LaurentPoly::one() - &shift))?;
        shift = shift.mul_ref(base);
    }
    Ok(acc)
}

/// `1 / (a; q)_n`; fails when some factor vanishes.
pub fn qpochhammer_inv(table: &SymbolTable, a: &LaurentPoly, n: u32) -> Result<RationalExpr> {
    qpochhammer_inv_base(a, &LaurentPoly::q_pow(table, 1), n)
}

/// `1 / (q; q)_n`.
pub fn inv_qfactorial(table: &SymbolTable, n: u32) -> RationalExpr {
    qpochhammer_inv(table, &LaurentPoly::q_pow(table, 1), n).expect("(q;q)_n is nonzero")
}

fn check_small(ctx: &SeriesCtx, a: &LaurentPoly) -> Result<i64> {
    if a.is_zero() {
        return Ok(i64::MAX);
    }
    let d = ctx.valuation(a);
    if d < 1 {
        return Err(Error::NotFormallySmall(a.display(ctx.table).to_string()));
    }
    Ok(d)
}

/// `(a; q)_inf` by the Euler expansion `sum (-1)^n q^C(n,2) a^n / (q;q)_n`.
pub fn qpochhammer_inf_series(ctx: &SeriesCtx, a: &LaurentPoly) -> Result<TruncatedSeries> {
    euler_sum(ctx, a, true)
}

/// `1 / (a; q)_inf = sum a^n / (q;q)_n`.
pub fn qpochhammer_inf_inv_series(ctx: &SeriesCtx, a: &LaurentPoly) -> Result<TruncatedSeries> {
    euler_sum(ctx, a, false)
}

fn euler_sum(ctx: &SeriesCtx, a: &LaurentPoly, alternating: bool) -> Result<TruncatedSeries> {
    let d = check_small(ctx, a)?;
    let nmax = if d == i64::MAX { 0 } else { ctx.order as i64 / d };
    let mut parts = Vec::new();
    let mut apow = LaurentPoly::one();
    for n in 0..=nmax {
        let mut c = apow.clone();
        if alternating {
            c = c.mul_ref(&ctx.q(binom2(n)));
            if n % 2 == 1 {
                c = c.neg_ref();
            }
        }
        let r = RationalExpr::from_poly(c).mul_ref(&inv_qfactorial(ctx.table, n as u32));
        parts.push(ctx.rat(&r)?);
        apow = apow.mul_ref(a);
    }
    Ok(TruncatedSeries::sum(ctx.small, ctx.order, parts.iter()))
}

/// `(a; q)_n` as a series (the argument may involve small symbols).
pub fn qpochhammer_series(ctx: &SeriesCtx, a: &LaurentPoly, n: u32) -> Result<TruncatedSeries> {
    ctx.poly(&qpochhammer(ctx.table, a, n))
}

/// `1 / (a; q)_n` as a series; each factor must have a nonzero constant part
/// in the small symbols.
pub fn qpochhammer_inv_series(ctx: &SeriesCtx, a: &LaurentPoly, n: u32) -> Result<TruncatedSeries> {
    ctx.rat(&qpochhammer_inv(ctx.table, a, n)?)
}

/// `(q^m; q^r)_inf` correct through q-degree `n_max`: only factors
/// `1 - q^(m+kr)` with `m + kr <= n_max` can touch those degrees.
pub fn qpochhammer_qpower_truncated(table: &SymbolTable, m: u32, r: u32, n_max: u32) -> LaurentPoly {
    assert!(m >= 1 && r >= 1);
    let q = table.base();
    let limit = n_max as i64 * table.base_scale() as i64;
    let mut acc = LaurentPoly::one();
    let mut e = m;
    while e <= n_max {
        acc = acc.mul_ref(&(LaurentPoly::one() - LaurentPoly::q_pow(table, e as i64)));
        acc = acc.truncate_degree(crate::algebra::SymbolSet::single(q), limit);
        e += r;
    }
    acc
}

/// Gaussian binomial `[n k]_q` via the Pascal recurrence
/// `[n k] = [n-1 k-1] + q^k [n-1 k]`, memoized across calls.
pub fn gauss_binomial(table: &SymbolTable, n: i64, k: i64) -> LaurentPoly {
    if k < 0 || n < 0 || k > n {
        return LaurentPoly::zero();
    }
    if k == 0 || k == n {
        return LaurentPoly::one();
    }
    static MEMO: OnceLock<Mutex<FxHashMap<(u32, i64, i64), LaurentPoly>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let key = (table.base_scale(), n, k);
    if let Some(p) = memo.lock().unwrap().get(&key) {
        return p.clone();
    }
    let a = gauss_binomial(table, n - 1, k - 1);
    let b = gauss_binomial(table, n - 1, k);
    let p = a + LaurentPoly::q_pow(table, k).mul_ref(&b);
    memo.lock().unwrap().insert(key, p.clone());
    p
}

/// `D_q` in `x`: `x^k -> (1 - q^k) x^(k-1)`.
pub fn dq(table: &SymbolTable, f: &LaurentPoly, x: Var) -> Result<LaurentPoly> {
    if f.min_exp(x).unwrap_or(0) < 0 {
        return Err(Error::NegativeExponent(f.display(table).to_string()));
    }
    let terms = f.terms().iter().filter(|(m, _)| m.exp(x) > 0).map(|(m, c)| {
        let k = m.exp(x);
        let mut mm: Monomial = *m;
        mm.set_exp(x, k - 1);
        (LaurentPoly::one() - LaurentPoly::q_pow(table, k as i64)).mul_term(c, &mm)
    });
    let parts: Vec<_> = terms.collect();
    Ok(LaurentPoly::sum(parts.iter()))
}

pub fn dq_pow(table: &SymbolTable, f: &LaurentPoly, x: Var, n: u32) -> Result<LaurentPoly> {
    let mut g = f.clone();
    for _ in 0..n {
        g = dq(table, &g, x)?;
    }
    Ok(g)
}

/// The defining quotient `(f(x) - f(qx)) / x`, used as an independent check
/// of [`dq`].
pub fn dq_quotient(table: &SymbolTable, f: &LaurentPoly, x: Var) -> Result<LaurentPoly> {
    let shifted = f.substitute(&[(x, LaurentPoly::q_pow(table, 1) * LaurentPoly::var(x))])?;
    let diff = f - &shifted;
    Ok(diff.mul_monomial(&Monomial::var_pow(x, -1)))
}

/// Ordinary rising factorial `(c)_n = c (c+1) ... (c+n-1)`.
pub fn rising(c: &LaurentPoly, n: u32) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for j in 0..n {
        acc = acc.mul_ref(&(c + &LaurentPoly::int(j as i64)));
    }
    acc
}

/// `n!` as an exact rational.
pub fn factorial(n: u32) -> ExactRational {
    ExactRational::factorial(n as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{series_equal, SymbolSet};

    #[test]
    fn pochhammer_examples() {
        let mut t = SymbolTable::new(1);
        let a = t.parameter("a");
        let x = t.parameter("x");
        assert!(qpochhammer(&t, &LaurentPoly::var(a), 0).is_one());
        let q = LaurentPoly::q_pow(&t, 1);
        let expect = LaurentPoly::one() - &q - LaurentPoly::q_pow(&t, 2) + LaurentPoly::q_pow(&t, 3);
        assert_eq!(qpochhammer(&t, &q, 2), expect);
        assert_eq!(qpochhammer(&t, &LaurentPoly::var(x), 1), LaurentPoly::one() - LaurentPoly::var(x));
    }

    #[test]
    fn infinite_pochhammer_matches_factor_oracle() {
        let mut t = SymbolTable::new(1);
        let z = t.small("z");
        let ctx = SeriesCtx::new(&t, 2);
        let s = qpochhammer_inf_series(&ctx, &LaurentPoly::var(z)).unwrap();
        let zq = |k| LaurentPoly::q_pow(&t, k);
        let c1 = RationalExpr::new(LaurentPoly::int(-1), &(LaurentPoly::one() - zq(1))).unwrap();
        assert_eq!(s.coefficient(&Monomial::var(z)), c1);
        let c2 = RationalExpr::new(zq(1), &((LaurentPoly::one() - zq(1)) * (LaurentPoly::one() - zq(2)))).unwrap();
        assert_eq!(s.coefficient(&Monomial::var_pow(z, 2)), c2);
        let inv = qpochhammer_inf_inv_series(&ctx.with_order(1), &LaurentPoly::var(z)).unwrap();
        let e = ctx
            .with_order(1)
            .rat(&(RationalExpr::one() + RationalExpr::new(LaurentPoly::var(z), &(LaurentPoly::one() - zq(1))).unwrap()))
            .unwrap();
        assert!(series_equal(&inv, &e).unwrap().is_equal());
        let zero = qpochhammer_inf_series(&ctx, &LaurentPoly::zero()).unwrap();
        assert!(series_equal(&zero, &ctx.one()).unwrap().is_equal());
        assert!(matches!(qpochhammer_inf_series(&ctx, &zq(1)), Err(Error::NotFormallySmall(_))));
    }

    #[test]
    fn qpower_truncation() {
        let t = SymbolTable::new(1);
        let q = |k| LaurentPoly::q_pow(&t, k);
        assert_eq!(qpochhammer_qpower_truncated(&t, 1, 5, 5), LaurentPoly::one() - q(1));
        assert!(qpochhammer_qpower_truncated(&t, 4, 5, 3).is_one());
        assert_eq!(qpochhammer_qpower_truncated(&t, 1, 1, 3), LaurentPoly::one() - q(1) - q(2));
    }

    #[test]
    fn gaussian_binomials() {
        let t = SymbolTable::new(1);
        let q = |k| LaurentPoly::q_pow(&t, k);
        assert!(gauss_binomial(&t, 5, 0).is_one());
        assert_eq!(gauss_binomial(&t, 2, 1), LaurentPoly::one() + q(1));
        let expect = LaurentPoly::one() + q(1) + q(2).scale(&ExactRational::from_i64(2)) + q(3) + q(4);
        assert_eq!(gauss_binomial(&t, 4, 2), expect);
        let qq = |n| qpochhammer(&t, &q(1), n);
        assert_eq!(qq(4).exact_div(&(qq(2) * qq(2))), Some(expect));
        assert!(gauss_binomial(&t, 3, 4).is_zero());
        assert!(gauss_binomial(&t, 3, -1).is_zero());
    }

    #[test]
    fn q_derivative() {
        let mut t = SymbolTable::new(1);
        let x = t.parameter("x");
        let q = |k| LaurentPoly::q_pow(&t, k);
        let x2 = LaurentPoly::var_pow(x, 2);
        assert_eq!(dq(&t, &x2, x).unwrap(), (LaurentPoly::one() - q(2)) * LaurentPoly::var(x));
        assert!(dq(&t, &LaurentPoly::one(), x).unwrap().is_zero());
        assert_eq!(dq_pow(&t, &x2, x, 2).unwrap(), (LaurentPoly::one() - q(2)) * (LaurentPoly::one() - q(1)));
        assert_eq!(dq_pow(&t, &x2, x, 0).unwrap(), x2);
        assert!(dq_pow(&t, &x2, x, 3).unwrap().is_zero());
        let x3 = LaurentPoly::var_pow(x, 3);
        assert_eq!(
            dq_pow(&t, &x3, x, 2).unwrap(),
            (LaurentPoly::one() - q(2)) * (LaurentPoly::one() - q(3)) * LaurentPoly::var(x)
        );
        assert_eq!(dq_quotient(&t, &x3, x).unwrap(), dq(&t, &x3, x).unwrap());
        assert!(matches!(dq(&t, &LaurentPoly::var_pow(x, -1), x), Err(Error::NegativeExponent(_))));
        let _ = SymbolSet::empty();
    }
}
