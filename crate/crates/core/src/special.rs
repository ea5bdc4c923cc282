//! Deformed q-exponentials, deformed basic hypergeometric series, the
//! deformed Gauss series and the homogeneous polynomials `R_n`.

use crate::algebra::{LaurentPoly, RationalExpr, SeriesCtx, SymbolTable, TruncatedSeries, Var};
use crate::error::{Error, Result};
use crate::qkernel::{binom2, dq, factorial, gauss_binomial, inv_qfactorial, rising};

// Hard cap for series whose argument is not small and must terminate.
const TERMINATION_CAP: u32 = 512;

/// Sokal's deformed exponential `e_q(z, u) = sum u^C(n,2) z^n / (q;q)_n`.
///
/// `u = 0` leaves `1 + z/(1-q)`.
pub fn eq_deformed(ctx: &SeriesCtx, z: &LaurentPoly, u: &LaurentPoly) -> Result<TruncatedSeries> {
    if z.is_zero() {
        return Ok(ctx.one());
    }
    let d = ctx.valuation(z);
    if d < 1 {
        return Err(Error::NotFormallySmall(z.display(ctx.table).to_string()));
    }
    let nmax = ctx.order as i64 / d;
    let mut parts = Vec::new();
    let mut zpow = LaurentPoly::one();
    for n in 0..=nmax {
        let w = u.pow_i(binom2(n))?;
        if !w.is_zero() {
            let r = RationalExpr::from_poly(zpow.mul_ref(&w)).mul_ref(&inv_qfactorial(ctx.table, n as u32));
            parts.push(ctx.rat(&r)?);
        }
        zpow = zpow.mul_ref(z);
    }
    Ok(TruncatedSeries::sum(ctx.small, ctx.order, parts.iter()))
}

/// Named specializations of [`eq_deformed`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpKind {
    /// `e_q(z) = e_q(z, 1) = 1/(z;q)_inf`.
    Little,
    /// `E_q(z) = e_q(z, q) = (-z;q)_inf`.
    Big,
    /// Exton's function, `e_q(z, q^(1/2))`.
    Exton,
    /// `R_q(z) = e_q(qz, q^2) = sum q^(n^2) z^n / (q;q)_n`.
    RogersRamanujan,
}

pub fn named_exponential(ctx: &SeriesCtx, kind: ExpKind, z: &LaurentPoly) -> Result<TruncatedSeries> {
    match kind {
        ExpKind::Little => eq_deformed(ctx, z, &LaurentPoly::one()),
        ExpKind::Big => eq_deformed(ctx, z, &ctx.q(1)),
        ExpKind::Exton => eq_deformed(ctx, z, &ctx.q_frac(1, 2)?),
        ExpKind::RogersRamanujan => eq_deformed(ctx, &(ctx.q(1) * z), &ctx.q(2)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// Carries the deformation weight `u^C(n,2)`.
    Deformed,
    /// The classical series (deformation ignored, i.e. `u = 1`).
    Classical,
}

/// Parameters of `rPhi_s(a; b; base, u, z)`.
#[derive(Clone, Debug)]
pub struct HyperSpec {
    pub upper: Vec<LaurentPoly>,
    pub lower: Vec<LaurentPoly>,
    /// The base, a single term such as `q`, `q^(1/2)` or `q^2`.
    pub base: LaurentPoly,
    pub deformation: LaurentPoly,
    pub argument: LaurentPoly,
    pub kind: SeriesKind,
}

impl HyperSpec {
    pub fn deformed(table: &SymbolTable, upper: Vec<LaurentPoly>, lower: Vec<LaurentPoly>, u: LaurentPoly, z: LaurentPoly) -> Self {
        HyperSpec { upper, lower, base: LaurentPoly::q_pow(table, 1), deformation: u, argument: z, kind: SeriesKind::Deformed }
    }

    pub fn classical(table: &SymbolTable, upper: Vec<LaurentPoly>, lower: Vec<LaurentPoly>, z: LaurentPoly) -> Self {
        HyperSpec {
            upper,
            lower,
            base: LaurentPoly::q_pow(table, 1),
            deformation: LaurentPoly::one(),
            argument: z,
            kind: SeriesKind::Classical,
        }
    }

    pub fn with_base(mut self, base: LaurentPoly) -> Self {
        self.base = base;
        self
    }

    /// `u^C(n,2) [(-1)^n B^C(n,2)]^(1+s-r)`, the non-Pochhammer weight of term `n`.
    fn weight(&self, n: i64) -> Result<RationalExpr> {
        let e = 1 + self.lower.len() as i64 - self.upper.len() as i64;
        let mut w = match self.kind {
            SeriesKind::Deformed => RationalExpr::from_poly(self.deformation.pow_i(binom2(n))?),
            SeriesKind::Classical => RationalExpr::one(),
        };
        let bpow = self.base.pow_i(binom2(n) * e)?;
        w = w.mul_poly(&bpow);
        if (n * e) % 2 != 0 {
            w = w.neg_ref();
        }
        Ok(w)
    }

    /// Term `n` divided by `z^n`, computed from scratch.
    pub fn term_coefficient(&self, n: u32) -> Result<RationalExpr> {
        let mut num = LaurentPoly::one();
        let mut den = LaurentPoly::one();
        for k in 0..n as i64 {
            let bk = self.base.pow_i(k)?;
            for a in &self.upper {
                num = num.mul_ref(&(LaurentPoly::one() - a.mul_ref(&bk)));
            }
            for b in self.lower.iter().chain(std::iter::once(&self.base)) {
                den = den.mul_ref(&(LaurentPoly::one() - b.mul_ref(&bk)));
            }
        }
        if num.is_zero() {
            return Ok(RationalExpr::zero());
        }
        if den.is_zero() {
            return Err(Error::ZeroDenominatorParameter(format!("{:?}", self.lower)));
        }
        Ok(RationalExpr::new(num, &den)?.mul_ref(&self.weight(n as i64)?))
    }

    /// Terms `t_n = coef_n z^n` for `n <= nmax`, stopping early when an upper
    /// parameter terminates the series.
    pub fn terms(&self, table: &SymbolTable, nmax: u32) -> Result<Vec<RationalExpr>> {
        let _ = table;
        let mut out = Vec::new();
        let mut poch = RationalExpr::one();
        let mut zpow = LaurentPoly::one();
        for n in 0..=nmax {
            if n > 0 {
                let bk = self.base.pow_i(n as i64 - 1)?;
                let mut num = LaurentPoly::one();
                for a in &self.upper {
                    num = num.mul_ref(&(LaurentPoly::one() - a.mul_ref(&bk)));
                }
                if num.is_zero() {
                    break;
                }
                poch = poch.mul_poly(&num);
                for (i, b) in self.lower.iter().enumerate() {
                    let f = LaurentPoly::one() - b.mul_ref(&bk);
                    if f.is_zero() {
                        return Err(Error::ZeroDenominatorParameter(format!("lower parameter {}", i + 1)));
                    }
                    poch = poch.div_poly(&f)?;
                }
                poch = poch.div_poly(&(LaurentPoly::one() - self.base.mul_ref(&bk)))?;
                zpow = zpow.mul_ref(&self.argument);
            }
            out.push(poch.mul_ref(&self.weight(n as i64)?).mul_poly(&zpow));
        }
        Ok(out)
    }

    fn terminates_within(&self, nmax: u32) -> bool {
        let mut k = 0i64;
        while k < nmax as i64 {
            let bk = match self.base.pow_i(k) {
                Ok(b) => b,
                Err(_) => return false,
            };
            if self.upper.iter().any(|a| (LaurentPoly::one() - a.mul_ref(&bk)).is_zero()) {
                return true;
            }
            k += 1;
        }
        false
    }
}

/// The series `rPhi_s` truncated to the context order.
pub fn phi_series(ctx: &SeriesCtx, spec: &HyperSpec) -> Result<TruncatedSeries> {
    let d = ctx.valuation(&spec.argument);
    let nmax = if spec.argument.is_zero() {
        0
    } else if d >= 1 {
        (ctx.order as i64 / d) as u32
    } else if spec.terminates_within(TERMINATION_CAP) {
        TERMINATION_CAP
    } else {
        return Err(Error::NotFormallySmall(spec.argument.display(ctx.table).to_string()));
    };
    let terms = spec.terms(ctx.table, nmax)?;
    let parts: Vec<TruncatedSeries> = terms.iter().map(|t| ctx.rat(t)).collect::<Result<_>>()?;
    Ok(TruncatedSeries::sum(ctx.small, ctx.order, parts.iter()))
}

/// Sum of a terminating series as a rational expression.
pub fn phi_terminating(table: &SymbolTable, spec: &HyperSpec) -> Result<RationalExpr> {
    if !spec.terminates_within(TERMINATION_CAP) {
        return Err(Error::Invalid("series does not terminate".into()));
    }
    let terms = spec.terms(table, TERMINATION_CAP)?;
    Ok(RationalExpr::sum(terms.iter()))
}

/// `sum u^C(n,2) (a)_n (b)_n / (c)_n z^n / n!` with ordinary rising factorials.
pub fn gauss2f1_deformed(
    ctx: &SeriesCtx,
    a: &LaurentPoly,
    b: &LaurentPoly,
    c: &LaurentPoly,
    u: &LaurentPoly,
    z: &LaurentPoly,
) -> Result<TruncatedSeries> {
    let d = ctx.valuation(z);
    if d < 1 {
        return Err(Error::NotFormallySmall(z.display(ctx.table).to_string()));
    }
    let nmax = (ctx.order as i64 / d) as u32;
    let mut parts = Vec::new();
    for n in 0..=nmax {
        let num = rising(a, n) * rising(b, n) * u.pow_i(binom2(n as i64))? * z.pow(n);
        let r = RationalExpr::new(num.scale(&factorial(n).recip()), &rising(c, n))?;
        parts.push(ctx.rat(&r)?);
    }
    Ok(TruncatedSeries::sum(ctx.small, ctx.order, parts.iter()))
}

/// `R_n(x, y; u, v | q) = sum_k [n k] u^C(n-k,2) v^C(k,2) x^(n-k) y^k`.
pub fn r_poly(table: &SymbolTable, n: u32, x: &LaurentPoly, y: &LaurentPoly, u: &LaurentPoly, v: &LaurentPoly) -> LaurentPoly {
    let n = n as i64;
    let parts: Vec<LaurentPoly> = (0..=n)
        .map(|k| {
            gauss_binomial(table, n, k)
                * u.pow_i(binom2(n - k)).expect("nonnegative power")
                * v.pow_i(binom2(k)).expect("nonnegative power")
                * x.pow((n - k) as u32)
                * y.pow(k as u32)
        })
        .collect();
    LaurentPoly::sum(parts.iter())
}

/// The u-deformed form `R_n(x, y; u | q) = R_n(x, y; 1, u | q)`.
pub fn r_poly_u(table: &SymbolTable, n: u32, x: &LaurentPoly, y: &LaurentPoly, u: &LaurentPoly) -> LaurentPoly {
    r_poly(table, n, x, y, &LaurentPoly::one(), u)
}

/// Arguments of `R_n(x, y; u, v | q)`; `x` and `y` may be arbitrary monomials.
#[derive(Clone, Debug)]
pub struct RnSpec {
    pub n: u32,
    pub x: LaurentPoly,
    pub y: LaurentPoly,
    pub u: LaurentPoly,
    pub v: LaurentPoly,
}

impl RnSpec {
    pub fn poly(&self, table: &SymbolTable) -> LaurentPoly {
        r_poly(table, self.n, &self.x, &self.y, &self.u, &self.v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedPoly {
    /// `h_n(x|q) = R_n(1, x; 1, 1)`.
    RogersSzego,
    /// `R_n(1, x; q, q)`.
    InverseRogersSzego,
    /// `r_n(x, y) = R_n(x, y; 1, 1)`.
    Homogeneous,
    /// `(x;q)_n = R_n(1, -x; 1, q)`.
    Pochhammer,
    /// `S_n(x;q) = R_n(1, qx; 1, q^2)`.
    StieltjesWigert,
    /// `P_n(x, y) = R_n(x, -y; 1, q)`.
    Cauchy,
    /// `E_n(x, y) = R_n(x, y; 1, q^(1/2))`.
    Exton,
}

impl NamedPoly {
    pub fn spec(self, table: &SymbolTable, n: u32, x: &LaurentPoly, y: &LaurentPoly) -> Result<RnSpec> {
        let one = LaurentPoly::one();
        let q = |k| LaurentPoly::q_pow(table, k);
        let (xx, yy, u, v) = match self {
            NamedPoly::RogersSzego => (one.clone(), x.clone(), one.clone(), one),
            NamedPoly::InverseRogersSzego => (one, x.clone(), q(1), q(1)),
            NamedPoly::Homogeneous => (x.clone(), y.clone(), one.clone(), one),
            NamedPoly::Pochhammer => (one.clone(), x.neg_ref(), one, q(1)),
            NamedPoly::StieltjesWigert => (one.clone(), q(1) * x, one, q(2)),
            NamedPoly::Cauchy => (x.clone(), y.neg_ref(), one, q(1)),
            NamedPoly::Exton => (x.clone(), y.clone(), one, LaurentPoly::q_frac(table, 1, 2)?),
        };
        Ok(RnSpec { n, x: xx, y: yy, u, v })
    }
}

/// Evaluates a named family; single-variable families ignore `y`.
pub fn named_poly(table: &SymbolTable, kind: NamedPoly, n: u32, x: &LaurentPoly, y: &LaurentPoly) -> Result<LaurentPoly> {
    Ok(kind.spec(table, n, x, y)?.poly(table))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recurrence {
    First,
    Second,
}

/// Both sides of the two three-term recurrences for `R_{n+1}(x, y; u)`.
pub fn rn_recurrence_step(
    table: &SymbolTable,
    n: u32,
    which: Recurrence,
    x: &LaurentPoly,
    y: &LaurentPoly,
    u: &LaurentPoly,
) -> (LaurentPoly, LaurentPoly) {
    let q = LaurentPoly::q_pow(table, 1);
    let lhs = r_poly_u(table, n + 1, x, y, u);
    let rhs = match which {
        Recurrence::First => x * &r_poly_u(table, n, x, &(&q * y), u) + y * &r_poly_u(table, n, x, &(u * y), u),
        Recurrence::Second => x * &r_poly_u(table, n, x, y, u) + y * &r_poly_u(table, n, &(&q * x), &(u * y), u),
    };
    (lhs, rhs)
}

/// Both sides of
/// `R_{n+m}(x,y;u) = sum_k [m k] u^C(k,2) x^(m-k) y^k R_n(x, q^(m-k) u^k y; u)`.
pub fn rn_shift_expansion(
    table: &SymbolTable,
    n: u32,
    m: u32,
    x: &LaurentPoly,
    y: &LaurentPoly,
    u: &LaurentPoly,
) -> (LaurentPoly, LaurentPoly) {
    let lhs = r_poly_u(table, n + m, x, y, u);
    let parts: Vec<LaurentPoly> = (0..=m as i64)
        .map(|k| {
            let arg = LaurentPoly::q_pow(table, m as i64 - k) * u.pow(k as u32) * y;
            gauss_binomial(table, m as i64, k)
                * u.pow(binom2(k) as u32)
                * x.pow((m as i64 - k) as u32)
                * y.pow(k as u32)
                * r_poly_u(table, n, x, &arg, u)
        })
        .collect();
    (lhs, LaurentPoly::sum(parts.iter()))
}

/// Residuals of the two forms of the q-difference equation satisfied by
/// `f(x) = R_n(1, x; u)`; `u` must be a single invertible term.
///
/// First form: `(D_q f)(x/u) + q^(n-1) x (D_q f)(x/q) - (1 - q^n) f(x)`.
/// Second form: `f(x/u) - f(qx/u) + q^n x/u f(x/q) - x/u f(x)`.
pub fn rn_qdifference_residual(table: &SymbolTable, n: u32, x: Var, u: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
    let xp = LaurentPoly::var(x);
    let q = |k| LaurentPoly::q_pow(table, k);
    let f = r_poly_u(table, n, &LaurentPoly::one(), &xp, u);
    let uinv = u.inv_term()?;
    let at = |p: &LaurentPoly, factor: &LaurentPoly| p.substitute(&[(x, factor * &xp)]);
    let df = dq(table, &f, x)?;
    let first = at(&df, &uinv)? + q(n as i64 - 1) * &xp * at(&df, &q(-1))? - (LaurentPoly::one() - q(n as i64)) * &f;
    let second = at(&f, &uinv)? - at(&f, &(q(1) * &uinv))? + q(n as i64) * &xp * &uinv * at(&f, &q(-1))?
        - &xp * &uinv * &f;
    Ok((first, second))
}

/// `R_n(1, x; u)` and the terminating `2Phi0(q^-n, 0; -; q, u, q^n x)`.
pub fn rn_hypergeometric_rep(table: &SymbolTable, n: u32, x: &LaurentPoly, u: &LaurentPoly) -> Result<(LaurentPoly, RationalExpr)> {
    let lhs = r_poly_u(table, n, &LaurentPoly::one(), x, u);
    let spec = HyperSpec::deformed(
        table,
        vec![LaurentPoly::q_pow(table, -(n as i64)), LaurentPoly::zero()],
        vec![],
        u.clone(),
        LaurentPoly::q_pow(table, n as i64) * x,
    );
    Ok((lhs, phi_terminating(table, &spec)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{series_equal, Monomial};
    use crate::qkernel::{qpochhammer_inf_inv_series, qpochhammer_inf_series};

    #[test]
    fn deformed_exponential_specializations() {
        let mut t = SymbolTable::new(2);
        let z = t.small("z");
        let ctx = SeriesCtx::new(&t, 6);
        let zp = LaurentPoly::var(z);
        let e1 = eq_deformed(&ctx, &zp, &LaurentPoly::one()).unwrap();
        assert!(series_equal(&e1, &qpochhammer_inf_inv_series(&ctx, &zp).unwrap()).unwrap().is_equal());
        let e0 = eq_deformed(&ctx, &zp, &LaurentPoly::zero()).unwrap();
        let expect = ctx.rat(&(RationalExpr::one() + RationalExpr::new(zp.clone(), &(LaurentPoly::one() - ctx.q(1))).unwrap())).unwrap();
        assert!(series_equal(&e0, &expect).unwrap().is_equal());
        let eneg = eq_deformed(&ctx, &zp.neg_ref(), &ctx.q(1)).unwrap();
        assert!(series_equal(&eneg, &qpochhammer_inf_series(&ctx, &zp).unwrap()).unwrap().is_equal());
        let rr = named_exponential(&ctx, ExpKind::RogersRamanujan, &zp).unwrap();
        for n in 0..=5u32 {
            let c = RationalExpr::from_poly(ctx.q((n * n) as i64)).mul_ref(&inv_qfactorial(&t, n));
            assert_eq!(rr.coefficient(&Monomial::var_pow(z, n as i32)), c);
        }
        let ex = named_exponential(&ctx, ExpKind::Exton, &zp).unwrap();
        let c2 = RationalExpr::from_poly(ctx.q_frac(1, 2).unwrap()).mul_ref(&inv_qfactorial(&t, 2));
        assert_eq!(ex.coefficient(&Monomial::var_pow(z, 2)), c2);
    }

    #[test]
    fn exton_needs_even_scale() {
        let mut t = SymbolTable::new(1);
        let z = t.small("z");
        let ctx = SeriesCtx::new(&t, 3);
        let err = named_exponential(&ctx, ExpKind::Exton, &LaurentPoly::var(z)).unwrap_err();
        assert!(matches!(err, Error::ScaleUnavailable { .. }));
    }

    #[test]
    fn r_poly_small_degrees() {
        let mut t = SymbolTable::new(1);
        let x = LaurentPoly::var(t.parameter("x"));
        let y = LaurentPoly::var(t.parameter("y"));
        let u = LaurentPoly::var(t.parameter("u"));
        let v = LaurentPoly::var(t.parameter("v"));
        let one = LaurentPoly::one();
        assert!(r_poly(&t, 0, &x, &y, &u, &v).is_one());
        assert_eq!(r_poly(&t, 1, &x, &y, &u, &v), &x + &y);
        let q = LaurentPoly::q_pow(&t, 1);
        let r2 = &u * &x.pow(2) + (&one + &q) * &x * &y + &v * &y.pow(2);
        assert_eq!(r_poly(&t, 2, &x, &y, &u, &v), r2);
        let r2u = x.pow(2) + (&one + &q) * &x * &y + &u * &y.pow(2);
        assert_eq!(r_poly(&t, 2, &x, &y, &one, &u), r2u);
    }

    #[test]
    fn named_polynomial_examples() {
        let mut t = SymbolTable::new(1);
        let x = LaurentPoly::var(t.parameter("x"));
        let y = LaurentPoly::var(t.parameter("y"));
        let one = LaurentPoly::one();
        let q = LaurentPoly::q_pow(&t, 1);
        let h2 = named_poly(&t, NamedPoly::RogersSzego, 2, &x, &y).unwrap();
        assert_eq!(h2, &one + (&one + &q) * &x + x.pow(2));
        let p2 = named_poly(&t, NamedPoly::Cauchy, 2, &x, &y).unwrap();
        assert_eq!(p2, (&x - &y) * (&x - &q * &y));
        let s1 = named_poly(&t, NamedPoly::StieltjesWigert, 1, &x, &y).unwrap();
        assert_eq!(s1, &one + &q * &x);
        let t1 = SymbolTable::new(1);
        assert!(named_poly(&t1, NamedPoly::Exton, 1, &one, &one).is_err());
    }

    #[test]
    fn recurrences_and_shift() {
        let mut t = SymbolTable::new(1);
        let x = LaurentPoly::var(t.parameter("x"));
        let y = LaurentPoly::var(t.parameter("y"));
        let u = LaurentPoly::var(t.parameter("u"));
        for n in 0..=4 {
            for which in [Recurrence::First, Recurrence::Second] {
                let (l, r) = rn_recurrence_step(&t, n, which, &x, &y, &u);
                assert_eq!(l, r);
            }
        }
        for (n, m) in [(0, 0), (3, 0), (2, 1), (2, 2), (1, 3)] {
            let (l, r) = rn_shift_expansion(&t, n, m, &x, &y, &u);
            assert_eq!(l, r);
        }
    }

    #[test]
    fn qdifference_and_representation() {
        let mut t = SymbolTable::new(1);
        let x = t.parameter("x");
        let u = LaurentPoly::var(t.parameter("u"));
        for n in 1..=3 {
            let (a, b) = rn_qdifference_residual(&t, n, x, &u).unwrap();
            assert!(a.is_zero() && b.is_zero(), "n = {n}");
        }
        for n in 0..=3 {
            let (l, r) = rn_hypergeometric_rep(&t, n, &LaurentPoly::var(x), &u).unwrap();
            assert_eq!(RationalExpr::from_poly(l), r, "n = {n}");
        }
    }

    #[test]
    fn lower_parameter_pole() {
        let mut t = SymbolTable::new(1);
        let z = t.small("z");
        let ctx = SeriesCtx::new(&t, 4);
        let spec = HyperSpec::classical(&t, vec![LaurentPoly::zero()], vec![ctx.q(-2)], LaurentPoly::var(z));
        assert!(matches!(phi_series(&ctx, &spec), Err(Error::ZeroDenominatorParameter(_))));
    }

    #[test]
    fn gauss_first_coefficients() {
        let mut t = SymbolTable::new(1);
        let a = LaurentPoly::var(t.parameter("a"));
        let b = LaurentPoly::var(t.parameter("b"));
        let c = LaurentPoly::var(t.parameter("c"));
        let z = t.small("z");
        let ctx = SeriesCtx::new(&t, 4);
        let s = gauss2f1_deformed(&ctx, &a, &b, &c, &LaurentPoly::one(), &LaurentPoly::var(z)).unwrap();
        assert_eq!(s.coefficient(&Monomial::one()), RationalExpr::one());
        assert_eq!(s.coefficient(&Monomial::var(z)), RationalExpr::new(&a * &b, &c).unwrap());
    }
}
