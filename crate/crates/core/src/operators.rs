//! The u-deformed q-exponential operator `T(yD_q|u) = sum u^C(n,2) (y D_q)^n / (q;q)_n`.

use crate::algebra::{LaurentPoly, RationalExpr, SeriesCtx, SymbolSet, SymbolTable, TruncatedSeries, Var};
use crate::error::{Error, Result};
use crate::qkernel::{binom2, dq, inv_qfactorial};
use crate::special::eq_deformed;

/// `T(c D_q | u)` acting on the symbol `target`.
#[derive(Clone, Debug)]
pub struct OperatorSpec {
    pub target: Var,
    /// The `y` multiplying `D_q`; may be any polynomial free of `target`.
    pub coefficient: LaurentPoly,
    pub deformation: LaurentPoly,
}

impl OperatorSpec {
    pub fn new(target: Var, coefficient: LaurentPoly, deformation: LaurentPoly) -> Self {
        OperatorSpec { target, coefficient, deformation }
    }

    /// Chen's `T(bD_q) = T(bD_q|1)`.
    pub fn chen(target: Var, b: LaurentPoly) -> Self {
        Self::new(target, b, LaurentPoly::one())
    }

    /// Saad's `R(bD_q) = T(-bD_q|q)`.
    pub fn saad(table: &SymbolTable, target: Var, b: LaurentPoly) -> Self {
        Self::new(target, b.neg_ref(), LaurentPoly::q_pow(table, 1))
    }

    /// Exton's operator `T(yD_q|q^(1/2))`; needs an even base scale.
    pub fn exton(table: &SymbolTable, target: Var, y: LaurentPoly) -> Result<Self> {
        Ok(Self::new(target, y, LaurentPoly::q_frac(table, 1, 2)?))
    }

    /// The Rogers-Ramanujan operator `T(qyD_q|q^2)`.
    pub fn rogers_ramanujan(table: &SymbolTable, target: Var, y: LaurentPoly) -> Self {
        Self::new(target, LaurentPoly::q_pow(table, 1) * y, LaurentPoly::q_pow(table, 2))
    }

    fn check_disjoint(&self, table: &SymbolTable, support: SymbolSet) -> Result<()> {
        if self.coefficient.support().contains(self.target) {
            return Err(Error::TargetSymbolInCoefficient(table.name(self.target).to_string()));
        }
        for v in self.coefficient.support().iter() {
            if v != table.base() && support.contains(v) {
                return Err(Error::TargetSymbolInCoefficient(table.name(v).to_string()));
            }
        }
        Ok(())
    }

    /// Applies the operator to a polynomial in the target symbol; the sum is
    /// finite because `D_q^n` kills degrees below `n`.
    pub fn apply_to_poly(&self, table: &SymbolTable, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_disjoint(table, f.support())?;
        let x = self.target;
        if f.min_exp(x).unwrap_or(0) < 0 {
            return Err(Error::NegativeExponent(f.display(table).to_string()));
        }
        let top = f.max_exp(x).unwrap_or(0).max(0) as u32;
        let mut parts = Vec::new();
        let mut d = f.clone();
        let mut ypow = LaurentPoly::one();
        for n in 0..=top {
            if n > 0 {
                d = dq(table, &d, x)?;
                ypow = ypow.mul_ref(&self.coefficient);
            }
            let qq = crate::qkernel::qpochhammer(table, &LaurentPoly::q_pow(table, 1), n);
            let scaled = d
                .exact_div(&qq)
                .ok_or_else(|| Error::Invalid("D_q^n f not divisible by (q;q)_n".into()))?;
            parts.push(scaled * self.deformation.pow_i(binom2(n as i64))? * &ypow);
        }
        Ok(LaurentPoly::sum(parts.iter()))
    }

    /// Applies the operator to a series; the coefficient must be small so that
    /// the output stays exact to the input order.
    pub fn apply_to_series(&self, ctx: &SeriesCtx, f: &TruncatedSeries) -> Result<TruncatedSeries> {
        let mut support = SymbolSet::empty();
        for (m, c) in f.terms() {
            support = support.union(m.support()).union(c.support());
        }
        self.check_disjoint(ctx.table, support)?;
        let d = ctx.valuation(&self.coefficient);
        if d < 1 {
            return Err(Error::NotFormallySmall(self.coefficient.display(ctx.table).to_string()));
        }
        let mut parts = Vec::new();
        let mut g = f.clone();
        let mut ypow = LaurentPoly::one();
        for n in 0..=f.order() {
            if n > 0 {
                g = g.dq(ctx.table, self.target)?;
                ypow = ypow.mul_ref(&self.coefficient);
            }
            let w = RationalExpr::from_poly(self.deformation.pow_i(binom2(n as i64))?).mul_ref(&inv_qfactorial(ctx.table, n));
            parts.push(g.mul_poly(&ypow)?.scale(&w).truncate(f.order()));
        }
        Ok(TruncatedSeries::sum(f.small(), f.order(), parts.iter()))
    }
}

/// Both sides of `T(yD_q|u){e_q(ax, v)} = sum_k (uv)^C(k,2) (ay)^k/(q;q)_k e_q(a v^k x, v)`.
///
/// The right side is summed while `(ay)^k` still has small degree `<= N`.
pub fn operator_on_exponential(
    ctx: &SeriesCtx,
    op: &OperatorSpec,
    a: &LaurentPoly,
    v: &LaurentPoly,
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let x = LaurentPoly::var(op.target);
    let y = &op.coefficient;
    let u = &op.deformation;
    let lhs = op.apply_to_series(ctx, &eq_deformed(ctx, &(a * &x), v)?)?;
    let ay = a * y;
    let kmax = ctx.order as i64 / ctx.valuation(&ay).max(1);
    let uv = u * v;
    let mut parts = Vec::new();
    for k in 0..=kmax {
        let w = RationalExpr::from_poly(uv.pow_i(binom2(k))? * ay.pow(k as u32)).mul_ref(&inv_qfactorial(ctx.table, k as u32));
        let e = eq_deformed(ctx, &(a * &v.pow_i(k)? * &x), v)?;
        parts.push(e.mul_rational(&w)?.truncate(ctx.order));
    }
    Ok((lhs, TruncatedSeries::sum(ctx.small, ctx.order, parts.iter())))
}

/// Both sides of the double-sum expansion of `T(yD_q|u){e_q(ax,v) e_q(bx,w)}`.
pub fn operator_on_product(
    ctx: &SeriesCtx,
    op: &OperatorSpec,
    a: &LaurentPoly,
    v: &LaurentPoly,
    b: &LaurentPoly,
    w: &LaurentPoly,
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let x = LaurentPoly::var(op.target);
    let y = &op.coefficient;
    let u = &op.deformation;
    let q = |k| LaurentPoly::q_pow(ctx.table, k);
    let f = eq_deformed(ctx, &(a * &x), v)?.mul_ref(&eq_deformed(ctx, &(b * &x), w)?);
    let lhs = op.apply_to_series(ctx, &f)?;
    let ay = a * y;
    let by = b * y;
    let kmax = ctx.order as i64 / ctx.valuation(&ay).max(1);
    let nmax = ctx.order as i64 / ctx.valuation(&by).max(1);
    let (uv, uw) = (u * v, u * w);
    let mut parts = Vec::new();
    for k in 0..=kmax {
        let ea = eq_deformed(ctx, &(a * &v.pow_i(k)? * &x), v)?;
        for n in 0..=nmax {
            if ctx.valuation(&ay) * k + ctx.valuation(&by) * n > ctx.order as i64 {
                continue;
            }
            let coef = uv.pow_i(binom2(k))? * uw.pow_i(binom2(n))? * ay.pow(k as u32) * (u.pow_i(k)? * &by).pow(n as u32);
            let wgt = RationalExpr::from_poly(coef)
                .mul_ref(&inv_qfactorial(ctx.table, k as u32))
                .mul_ref(&inv_qfactorial(ctx.table, n as u32));
            let eb = eq_deformed(ctx, &(b * &q(k) * &w.pow_i(n)? * &x), w)?;
            parts.push(ea.mul_ref(&eb).mul_rational(&wgt)?.truncate(ctx.order));
        }
    }
    Ok((lhs, TruncatedSeries::sum(ctx.small, ctx.order, parts.iter())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::series_equal;
    use crate::special::r_poly_u;

    #[test]
    fn translation_on_monomials() {
        let mut t = SymbolTable::new(1);
        let x = t.parameter("x");
        let y = LaurentPoly::var(t.parameter("y"));
        let u = LaurentPoly::var(t.parameter("u"));
        let op = OperatorSpec::new(x, y.clone(), u.clone());
        for n in 0..=6 {
            let got = op.apply_to_poly(&t, &LaurentPoly::var_pow(x, n)).unwrap();
            assert_eq!(got, r_poly_u(&t, n as u32, &LaurentPoly::var(x), &y, &u));
        }
        let chen = OperatorSpec::chen(x, y.clone());
        assert!(chen.apply_to_poly(&t, &LaurentPoly::one()).unwrap().is_one());
    }

    #[test]
    fn saad_operator_on_square() {
        let mut t = SymbolTable::new(1);
        let x = t.parameter("x");
        let b = LaurentPoly::var(t.parameter("b"));
        let op = OperatorSpec::saad(&t, x, b.clone());
        let xp = LaurentPoly::var(x);
        let q = LaurentPoly::q_pow(&t, 1);
        let expect = xp.pow(2) - (LaurentPoly::one() + &q) * &xp * &b + &q * &b.pow(2);
        assert_eq!(op.apply_to_poly(&t, &xp.pow(2)).unwrap(), expect);
    }

    #[test]
    fn coefficient_sharing_target_rejected() {
        let mut t = SymbolTable::new(1);
        let x = t.parameter("x");
        let y = t.parameter("y");
        let op = OperatorSpec::new(x, LaurentPoly::var(y), LaurentPoly::one());
        let f = LaurentPoly::var(x) * LaurentPoly::var(y);
        assert!(matches!(op.apply_to_poly(&t, &f), Err(Error::TargetSymbolInCoefficient(_))));
    }

    #[test]
    fn exponential_rule_holds() {
        let mut t = SymbolTable::new(1);
        let x = t.small("x");
        let y = t.small("y");
        let a = LaurentPoly::var(t.parameter("a"));
        let u = LaurentPoly::var(t.parameter("u"));
        let v = LaurentPoly::var(t.parameter("v"));
        let ctx = SeriesCtx::new(&t, 4);
        let op = OperatorSpec::new(x, LaurentPoly::var(y), u);
        let (l, r) = operator_on_exponential(&ctx, &op, &a, &v).unwrap();
        assert!(series_equal(&l, &r).unwrap().is_equal());
    }
}
