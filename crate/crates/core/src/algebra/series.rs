//! Formal power series in the small symbols, truncated by total degree.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::poly::{LaurentPoly, Monomial};
use super::ratexpr::RationalExpr;
use super::rational::ExactRational;
use super::symbols::{SymbolSet, SymbolTable, Var};
use crate::error::{Error, Result};

/// Series `sum c_m m` over small monomials `m` of total degree `<= order`.
///
/// Coefficients never mention small symbols.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    small: SymbolSet,
    order: u32,
    terms: BTreeMap<Monomial, RationalExpr>,
}

/// Outcome of [`series_equal`].
#[derive(Clone, Debug)]
pub enum SeriesComparison {
    Equal,
    Mismatch { monomial: Monomial, lhs: RationalExpr, rhs: RationalExpr },
}

impl SeriesComparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, SeriesComparison::Equal)
    }
}

/// Graded order: total degree ascending, then larger exponents of earlier
/// declared symbols first.
pub fn graded_cmp(a: &Monomial, b: &Monomial, set: SymbolSet) -> Ordering {
    a.degree_in(set).cmp(&b.degree_in(set)).then_with(|| {
        for v in set.iter() {
            match b.exp(v).cmp(&a.exp(v)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

impl TruncatedSeries {
    pub fn zero(small: SymbolSet, order: u32) -> Self {
        TruncatedSeries { small, order, terms: BTreeMap::new() }
    }

    pub fn one(small: SymbolSet, order: u32) -> Self {
        Self::constant(small, order, RationalExpr::one())
    }

    pub fn constant(small: SymbolSet, order: u32, c: RationalExpr) -> Self {
        let mut s = Self::zero(small, order);
        if !c.is_zero() {
            s.terms.insert(Monomial::one(), c);
        }
        s
    }

    pub fn small(&self) -> SymbolSet {
        self.small
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, RationalExpr> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> RationalExpr {
        self.terms.get(m).cloned().unwrap_or_else(RationalExpr::zero)
    }

    /// Terms in graded order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &RationalExpr)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| graded_cmp(a.0, b.0, self.small));
        v
    }

    fn insert_checked(&mut self, m: Monomial, c: RationalExpr) {
        if !c.is_zero() && m.degree_in(self.small) <= self.order as i64 {
            self.terms.insert(m, c);
        }
    }

    fn from_groups(small: SymbolSet, order: u32, groups: FxHashMap<Monomial, Vec<RationalExpr>>) -> Self {
        let mut s = Self::zero(small, order);
        for (m, cs) in groups {
            let c = RationalExpr::sum(cs.iter());
            s.insert_checked(m, c);
        }
        s
    }

    /// Expands a Laurent polynomial; small symbols must have nonnegative
    /// exponents.
    pub fn from_poly(p: &LaurentPoly, small: SymbolSet, order: u32) -> Result<Self> {
        let mut s = Self::zero(small, order);
        for (m, cof) in p.split_by(small) {
            if small.iter().any(|v| m.exp(v) < 0) {
                return Err(Error::NotFormallySmall(format!("{p:?}")));
            }
            s.insert_checked(m, RationalExpr::from_poly(cof));
        }
        Ok(s)
    }

    /// `1/p` for a polynomial whose small-degree-0 part is nonzero.
    pub fn inverse_poly(p: &LaurentPoly, small: SymbolSet, order: u32) -> Result<Self> {
        let s = Self::from_poly(p, small, order)?;
        s.inverse()
    }

    /// Expands a rational expression, inverting denominator factors that
    /// involve small symbols as geometric series.
    pub fn from_rational(r: &RationalExpr, small: SymbolSet, order: u32) -> Result<Self> {
        let mut free = Vec::new();
        let mut bound = Vec::new();
        for (a, e) in r.denominator_atoms() {
            if a.support().iter().any(|v| small.contains(v)) {
                bound.push((a.clone(), *e));
            } else {
                free.push((a.clone(), *e));
            }
        }
        let coef = RationalExpr::from_atoms(LaurentPoly::one(), &free);
        let mut out = Self::from_poly(r.numerator(), small, order)?.scale(&coef);
        for (a, e) in &bound {
            let inv = Self::inverse_poly(&a.expand(), small, order)?;
            for _ in 0..*e {
                out = out.mul_ref(&inv);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RationalExpr) -> Self {
        let mut s = Self::zero(self.small, self.order);
        if c.is_zero() {
            return s;
        }
        for (m, a) in &self.terms {
            s.terms.insert(*m, a.mul_ref(c));
        }
        s
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&RationalExpr::int(c))
    }

    /// Multiplies by a polynomial that may mention small symbols; the order
    /// grows by the polynomial's minimum small degree.
    pub fn mul_poly(&self, p: &LaurentPoly) -> Result<Self> {
        let d = p.min_degree_in(self.small).unwrap_or(0).max(0) as u32;
        let order = self.order + d;
        let mut groups: FxHashMap<Monomial, Vec<RationalExpr>> = FxHashMap::default();
        for (pm, cof) in p.split_by(self.small) {
            if self.small.iter().any(|v| pm.exp(v) < 0) {
                return Err(Error::NotFormallySmall(format!("{p:?}")));
            }
            for (m, a) in &self.terms {
                let mm = m.mul(&pm);
                if mm.degree_in(self.small) <= order as i64 {
                    groups.entry(mm).or_default().push(a.mul_poly(&cof));
                }
            }
        }
        Ok(Self::from_groups(self.small, order, groups))
    }

    /// Multiplies by a rational expression whose numerator and denominator may
    /// mention small symbols; small-free denominator factors stay symbolic.
    pub fn mul_rational(&self, r: &RationalExpr) -> Result<Self> {
        let mut free = Vec::new();
        let mut bound = Vec::new();
        for (a, e) in r.denominator_atoms() {
            if a.support().iter().any(|v| self.small.contains(v)) {
                bound.push((a.clone(), *e));
            } else {
                free.push((a.clone(), *e));
            }
        }
        let coef = RationalExpr::from_atoms(LaurentPoly::one(), &free);
        let mut out = self.mul_poly(r.numerator())?.scale(&coef);
        for (a, e) in &bound {
            let inv = Self::inverse_poly(&a.expand(), self.small, out.order)?;
            for _ in 0..*e {
                out = out.mul_ref(&inv);
            }
        }
        Ok(out)
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        self.checked_add(o).expect("series with different small symbols")
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        if self.small != o.small {
            return Err(Error::SmallSymbolMismatch);
        }
        let order = self.order.min(o.order);
        let mut s = Self::zero(self.small, order);
        for (m, a) in &self.terms {
            if m.degree_in(self.small) > order as i64 {
                continue;
            }
            match o.terms.get(m) {
                Some(b) => s.insert_checked(*m, a.add_ref(b)),
                None => s.insert_checked(*m, a.clone()),
            }
        }
        for (m, b) in &o.terms {
            if !self.terms.contains_key(m) {
                s.insert_checked(*m, b.clone());
            }
        }
        Ok(s)
    }

    pub fn neg_ref(&self) -> Self {
        TruncatedSeries {
            small: self.small,
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect(),
        }
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.neg_ref())
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.checked_sub(o).expect("series with different small symbols")
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        if self.small != o.small {
            return Err(Error::SmallSymbolMismatch);
        }
        let order = self.order.min(o.order);
        let lim = order as i64;
        let mut groups: FxHashMap<Monomial, Vec<RationalExpr>> = FxHashMap::default();
        let bd: Vec<_> = o.terms.iter().map(|(m, c)| (m, c, m.degree_in(self.small))).collect();
        for (ma, ca) in &self.terms {
            let da = ma.degree_in(self.small);
            if da > lim {
                continue;
            }
            for (mb, cb, db) in &bd {
                if da + db > lim {
                    continue;
                }
                groups.entry(ma.mul(mb)).or_default().push(ca.mul_ref(cb));
            }
        }
        Ok(Self::from_groups(self.small, order, groups))
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("series with different small symbols")
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.small, self.order);
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Sum of many series of the same small set.
    pub fn sum<'a, I: IntoIterator<Item = &'a TruncatedSeries>>(small: SymbolSet, order: u32, it: I) -> Self {
        let mut order = order;
        let mut groups: FxHashMap<Monomial, Vec<RationalExpr>> = FxHashMap::default();
        let items: Vec<_> = it.into_iter().collect();
        for s in &items {
            assert_eq!(s.small, small, "series with different small symbols");
            order = order.min(s.order);
        }
        for s in &items {
            for (m, c) in &s.terms {
                groups.entry(*m).or_default().push(c.clone());
            }
        }
        Self::from_groups(small, order, groups)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coefficient(&Monomial::one());
        let c0_inv = c0.inv()?;
        // self = c0 (1 + t), t without constant term.
        let mut t = self.scale(&c0_inv);
        t.terms.remove(&Monomial::one());
        let mut acc = Self::one(self.small, self.order);
        for _ in 0..self.order {
            acc = Self::one(self.small, self.order).sub_ref(&t.mul_ref(&acc));
        }
        Ok(acc.scale(&c0_inv))
    }

    /// Drops everything above total degree `n`.
    pub fn truncate(&self, n: u32) -> Self {
        let order = self.order.min(n);
        TruncatedSeries {
            small: self.small,
            order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(self.small) <= order as i64)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Rescales small symbols by degree-preserving factors: each binding maps
    /// a small symbol `v` to `factor * v` where `factor` is small-free.
    pub fn dilate(&self, v: Var, factor: &LaurentPoly) -> Result<Self> {
        assert!(self.small.contains(v));
        if factor.min_degree_in(self.small).unwrap_or(0) != 0 || factor.max_degree_in(self.small).unwrap_or(0) != 0 {
            return Err(Error::Invalid("dilation factor must be free of small symbols".into()));
        }
        let mut out = Self::zero(self.small, self.order);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let f = if e == 0 { RationalExpr::one() } else { RationalExpr::from_poly(factor.clone()).pow_i(e as i64)? };
            out.terms.insert(*m, c.mul_ref(&f));
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Replaces small symbol `v` by `image` (a polynomial of small degree >= 1).
    pub fn compose(&self, v: Var, image: &TruncatedSeries) -> Result<Self> {
        if image.small != self.small {
            return Err(Error::SmallSymbolMismatch);
        }
        if image.terms.keys().any(|m| m.degree_in(self.small) < 1) {
            return Err(Error::NotFormallySmall("composition image".into()));
        }
        let maxe = self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0);
        let mut pows = vec![Self::one(self.small, self.order)];
        for k in 1..=maxe as usize {
            let p = pows[k - 1].mul_ref(image);
            pows.push(p);
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            let mut rest = *m;
            rest.set_exp(v, 0);
            let piece = pows[e].mul_poly(&LaurentPoly::monomial(rest))?.truncate(self.order).scale(c);
            parts.push(piece);
        }
        Ok(Self::sum(self.small, self.order, parts.iter()))
    }

    /// Applies a substitution to every coefficient.
    pub fn substitute_coefficients(&self, bindings: &[(Var, LaurentPoly)]) -> Result<Self> {
        let mut out = Self::zero(self.small, self.order);
        for (m, c) in &self.terms {
            let s = c.substitute(bindings)?;
            out.insert_checked(*m, s);
        }
        Ok(out)
    }

    /// Maps every coefficient through `f`.
    pub fn map_coefficients<F: Fn(&RationalExpr) -> RationalExpr>(&self, f: F) -> Self {
        let mut out = Self::zero(self.small, self.order);
        for (m, c) in &self.terms {
            out.insert_checked(*m, f(c));
        }
        out
    }

    /// The q-derivative in small symbol `x`; the order drops by one.
    pub fn dq(&self, table: &SymbolTable, x: Var) -> Result<Self> {
        if self.order == 0 {
            return Err(Error::OrderExhausted);
        }
        let mut out = Self::zero(self.small, self.order - 1);
        for (m, c) in &self.terms {
            let k = m.exp(x);
            if k == 0 {
                continue;
            }
            let factor = LaurentPoly::one() - LaurentPoly::q_pow(table, k as i64);
            let mut mm = *m;
            mm.set_exp(x, k - 1);
            out.insert_checked(mm, c.mul_poly(&factor));
        }
        Ok(out)
    }

    pub fn dq_pow(&self, table: &SymbolTable, x: Var, n: u32) -> Result<Self> {
        let mut s = self.clone();
        for _ in 0..n {
            s = s.dq(table, x)?;
        }
        Ok(s)
    }

    /// Ordinary formal derivative in small symbol `x`; the order drops by one.
    pub fn derivative(&self, x: Var) -> Result<Self> {
        if self.order == 0 {
            return Err(Error::OrderExhausted);
        }
        let mut out = Self::zero(self.small, self.order - 1);
        for (m, c) in &self.terms {
            let k = m.exp(x);
            if k == 0 {
                continue;
            }
            let mut mm = *m;
            mm.set_exp(x, k - 1);
            out.insert_checked(mm, c.scale(&ExactRational::from_i64(k as i64)));
        }
        Ok(out)
    }

    /// Collapses to a polynomial (exact only if the represented object is a
    /// polynomial of small degree within the order).
    pub fn to_poly(&self) -> Result<LaurentPoly> {
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let p = c
                .as_poly()
                .cloned()
                .or_else(|| {
                    let r = c.reduce();
                    r.as_poly().cloned()
                })
                .ok_or_else(|| Error::Invalid("coefficient is not a polynomial".into()))?;
            parts.push(p.mul_monomial(m));
        }
        Ok(LaurentPoly::sum(parts.iter()))
    }

    pub fn display<'a>(&'a self, table: &'a SymbolTable) -> impl fmt::Display + 'a {
        super::render::SeriesDisplay { series: self, table }
    }
}

/// Compares up to the smaller order; reports the first mismatch in graded
/// order.
pub fn series_equal(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<SeriesComparison> {
    if a.small != b.small {
        return Err(Error::SmallSymbolMismatch);
    }
    let order = a.order.min(b.order) as i64;
    let mut keys: Vec<&Monomial> = a.terms.keys().chain(b.terms.keys()).filter(|m| m.degree_in(a.small) <= order).collect();
    keys.sort_by(|x, y| graded_cmp(x, y, a.small));
    keys.dedup();
    for m in keys {
        let l = a.coefficient(m);
        let r = b.coefficient(m);
        if !l.equals(&r) {
            return Ok(SeriesComparison::Mismatch { monomial: *m, lhs: l, rhs: r });
        }
    }
    Ok(SeriesComparison::Equal)
}

impl<'a> Add<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.sub_ref(rhs)
    }
}

impl<'a> Mul<&'a TruncatedSeries> for &'a TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.mul_ref(rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (SymbolTable, Var, SymbolSet) {
        let mut t = SymbolTable::new(1);
        let z = t.small("z");
        let s = t.small_set();
        (t, z, s)
    }

    #[test]
    fn product_of_binomials() {
        let (_, z, s) = setup();
        let a = TruncatedSeries::from_poly(&(LaurentPoly::one() + LaurentPoly::var(z)), s, 3).unwrap();
        let b = TruncatedSeries::from_poly(&(LaurentPoly::one() - LaurentPoly::var(z)), s, 3).unwrap();
        let p = &a * &b;
        let e = TruncatedSeries::from_poly(&(LaurentPoly::one() - LaurentPoly::var_pow(z, 2)), s, 3).unwrap();
        assert!(series_equal(&p, &e).unwrap().is_equal());
        assert_eq!(p.order(), 3);
    }

    #[test]
    fn orders_take_minimum() {
        let (_, z, s) = setup();
        let a = TruncatedSeries::from_poly(&LaurentPoly::var(z), s, 5).unwrap();
        let b = TruncatedSeries::from_poly(&LaurentPoly::var(z), s, 3).unwrap();
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
    }

    #[test]
    fn geometric_series_times_one_minus_z() {
        let (_, z, s) = setup();
        let g = TruncatedSeries::inverse_poly(&(LaurentPoly::one() - LaurentPoly::var(z)), s, 2).unwrap();
        let expect = TruncatedSeries::from_poly(
            &(LaurentPoly::one() + LaurentPoly::var(z) + LaurentPoly::var_pow(z, 2)),
            s,
            2,
        )
        .unwrap();
        assert!(series_equal(&g, &expect).unwrap().is_equal());
        let b = TruncatedSeries::from_poly(&(LaurentPoly::one() - LaurentPoly::var(z)), s, 2).unwrap();
        assert!(series_equal(&(&g * &b), &TruncatedSeries::one(s, 2)).unwrap().is_equal());
    }

    #[test]
    fn truncation_limits_comparison() {
        let (_, z, s) = setup();
        let a = TruncatedSeries::from_poly(&(LaurentPoly::one() + LaurentPoly::var(z)), s, 1).unwrap();
        let b = TruncatedSeries::from_poly(
            &(LaurentPoly::one() + LaurentPoly::var(z) + LaurentPoly::var_pow(z, 2)),
            s,
            1,
        )
        .unwrap();
        assert!(series_equal(&a, &b).unwrap().is_equal());
    }

    #[test]
    fn mismatch_reports_first_monomial() {
        let (t, z, s) = setup();
        let a = TruncatedSeries::from_poly(&(LaurentPoly::one() + LaurentPoly::var(z)), s, 3).unwrap();
        let b = TruncatedSeries::from_poly(&(LaurentPoly::one() + LaurentPoly::q_pow(&t, 1) * LaurentPoly::var(z)), s, 3)
            .unwrap();
        match series_equal(&a, &b).unwrap() {
            SeriesComparison::Mismatch { monomial, lhs, rhs } => {
                assert_eq!(monomial, Monomial::var(z));
                assert_eq!(lhs, RationalExpr::one());
                assert_eq!(rhs, RationalExpr::from_poly(LaurentPoly::q_pow(&t, 1)));
            }
            SeriesComparison::Equal => panic!("expected mismatch"),
        }
    }

    #[test]
    fn mismatched_small_sets_error() {
        let (mut t, _, s) = setup();
        let w = t.small("w");
        let s2 = SymbolSet::single(w);
        let a = TruncatedSeries::one(s, 2);
        let b = TruncatedSeries::one(s2, 2);
        assert_eq!(a.checked_mul(&b).err(), Some(Error::SmallSymbolMismatch));
    }

    #[test]
    fn rational_with_small_denominator() {
        let (t, z, s) = setup();
        // 1/(1 - q z) = sum q^n z^n
        let r = RationalExpr::new(LaurentPoly::one(), &(LaurentPoly::one() - LaurentPoly::q_pow(&t, 1) * LaurentPoly::var(z)))
            .unwrap();
        let ser = TruncatedSeries::from_rational(&r, s, 4).unwrap();
        for n in 0..=4 {
            assert_eq!(ser.coefficient(&Monomial::var_pow(z, n)), RationalExpr::from_poly(LaurentPoly::q_pow(&t, n as i64)));
        }
    }
}
