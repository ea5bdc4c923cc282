//! Sparse multivariate Laurent polynomials over [`ExactRational`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::rational::ExactRational;
use super::symbols::{SymbolSet, SymbolTable, Var, MAX_SYMBOLS};
use crate::error::{Error, Result};

/// Exponent vector, one slot per symbol of the owning table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub(crate) [i32; MAX_SYMBOLS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_SYMBOLS])
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        let mut m = Self::one();
        m.0[v.index()] = e;
        m
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn set_exp(&mut self, v: Var, e: i32) {
        self.0[v.index()] = e;
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a += *b;
        }
        r
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a -= *b;
        }
        r
    }

    pub fn inv(&self) -> Monomial {
        let mut r = *self;
        for a in r.0.iter_mut() {
            *a = -*a;
        }
        r
    }

    pub fn pow(&self, e: i32) -> Monomial {
        let mut r = *self;
        for a in r.0.iter_mut() {
            *a *= e;
        }
        r
    }

    /// Total degree in the symbols of `set`.
    pub fn degree_in(&self, set: SymbolSet) -> i64 {
        set.iter().map(|v| self.exp(v) as i64).sum()
    }

    /// Splits into (part in `set`, part outside `set`).
    pub fn split(&self, set: SymbolSet) -> (Monomial, Monomial) {
        let mut inside = Monomial::one();
        let mut outside = *self;
        for v in set.iter() {
            inside.0[v.index()] = self.0[v.index()];
            outside.0[v.index()] = 0;
        }
        (inside, outside)
    }

    pub fn support(&self) -> SymbolSet {
        let mut s = SymbolSet::empty();
        for (i, &e) in self.0.iter().enumerate() {
            if e != 0 {
                s.insert(Var(i as u8));
            }
        }
        s
    }

    /// Componentwise minimum.
    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        r
    }
}

/// A finite sum of `coefficient * monomial` with no stored zero coefficients.
///
/// Terms are kept sorted by exponent vector, so structural equality is value
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, ExactRational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(c: i64) -> Self {
        Self::constant(ExactRational::from_i64(c))
    }

    pub fn term(c: ExactRational, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(ExactRational::one(), m)
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v))
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        Self::monomial(Monomial::var_pow(v, e))
    }

    /// `q^k` in the table's scaled base.
    pub fn q_pow(table: &SymbolTable, k: i64) -> Self {
        let e = table.base_exponent(k, 1).expect("integer q-power");
        Self::var_pow(table.base(), e as i32)
    }

    /// `q^(num/den)`; fails when the table's scale cannot represent it.
    pub fn q_frac(table: &SymbolTable, num: i64, den: i64) -> Result<Self> {
        let e = table.base_exponent(num, den)?;
        Ok(Self::var_pow(table.base(), e as i32))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, ExactRational)>>(it: I) -> Self {
        let mut map: FxHashMap<Monomial, ExactRational> = FxHashMap::default();
        for (m, c) in it {
            if c.is_zero() {
                continue;
            }
            map.entry(m).and_modify(|e| *e += &c).or_insert(c);
        }
        Self::from_map(map)
    }

    fn from_map(map: FxHashMap<Monomial, ExactRational>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        LaurentPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, ExactRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The single term, if this is a nonzero monomial times a coefficient.
    pub fn as_term(&self) -> Option<(&Monomial, &ExactRational)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((m, c)),
            _ => None,
        }
    }

    pub fn as_constant(&self) -> Option<ExactRational> {
        match self.terms.as_slice() {
            [] => Some(ExactRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactRational {
        match self.terms.binary_search_by(|t| t.0.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => ExactRational::zero(),
        }
    }

    /// Symbols with a nonzero exponent somewhere.
    pub fn support(&self) -> SymbolSet {
        self.terms.iter().fold(SymbolSet::empty(), |s, (m, _)| s.union(m.support()))
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        // Translation preserves the lexicographic order.
        LaurentPoly { terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect() }
    }

    /// Multiplies by a single term `c * m`.
    pub fn mul_term(&self, c: &ExactRational, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect() }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Less => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*mb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((*ma, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&o.terms[j..]);
        LaurentPoly { terms: out }
    }

    pub fn neg_ref(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some((m, c)) = o.as_term() {
            return self.mul_term(c, m);
        }
        if let Some((m, c)) = self.as_term() {
            return o.mul_term(c, m);
        }
        let mut map: FxHashMap<Monomial, ExactRational> =
            FxHashMap::with_capacity_and_hasher(self.len() * o.len(), Default::default());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let p = ca * cb;
                map.entry(ma.mul(mb)).and_modify(|e| *e += &p).or_insert(p);
            }
        }
        Self::from_map(map)
    }

    /// Sum of many polynomials with one hash pass.
    pub fn sum<'a, I: IntoIterator<Item = &'a LaurentPoly>>(it: I) -> Self {
        let mut map: FxHashMap<Monomial, ExactRational> = FxHashMap::default();
        for p in it {
            for (m, c) in &p.terms {
                map.entry(*m).and_modify(|e| *e += c).or_insert_with(|| c.clone());
            }
        }
        Self::from_map(map)
    }

    pub fn pow(&self, e: u32) -> Self {
        if let Some((m, c)) = self.as_term() {
            return Self::term(c.pow(e), m.pow(e as i32));
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Integer power; negative exponents need a single-term base.
    pub fn pow_i(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            return Ok(self.pow(e as u32));
        }
        let (m, c) = self.as_term().ok_or_else(|| Error::NotMonomial(format!("{self:?}")))?;
        Ok(Self::term(c.recip().pow((-e) as u32), m.pow(e as i32)))
    }

    /// Inverse of a single term.
    pub fn inv_term(&self) -> Result<Self> {
        self.pow_i(-1)
    }

    pub fn min_exp(&self, v: Var) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).min()
    }

    pub fn max_exp(&self, v: Var) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).max()
    }

    /// Minimum total degree in `set` over all terms.
    pub fn min_degree_in(&self, set: SymbolSet) -> Option<i64> {
        self.terms.iter().map(|(m, _)| m.degree_in(set)).min()
    }

    pub fn max_degree_in(&self, set: SymbolSet) -> Option<i64> {
        self.terms.iter().map(|(m, _)| m.degree_in(set)).max()
    }

    /// Componentwise minimum of all exponent vectors.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(),
            Some((first, _)) => it.fold(*first, |acc, (m, _)| acc.gcd(m)),
        }
    }

    /// Applies `x_v -> binding` for each pair, expanding products exactly.
    ///
    /// A binding for a symbol that occurs with a negative exponent must be a
    /// single term so that its inverse exists in the Laurent ring.
    pub fn substitute(&self, bindings: &[(Var, LaurentPoly)]) -> Result<Self> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        for (v, b) in bindings {
            if b.as_term().is_none() && self.min_exp(*v).unwrap_or(0) < 0 {
                return Err(Error::SubstitutionNotInvertible(format!("{:?}", v)));
            }
        }
        // Fast path: every binding is a single term, so each monomial maps to a
        // single term as well.
        if bindings.iter().all(|(_, b)| b.as_term().is_some() || b.is_zero()) {
            let mut out = Vec::with_capacity(self.terms.len());
            'terms: for (m, c) in &self.terms {
                // Clear every bound symbol first so that images may mention
                // other bound symbols.
                let mut mono = *m;
                for (v, _) in bindings {
                    mono.set_exp(*v, 0);
                }
                let mut coef = c.clone();
                for (v, b) in bindings {
                    let e = m.exp(*v);
                    if e == 0 {
                        continue;
                    }
                    match b.as_term() {
                        Some((bm, bc)) => {
                            mono = mono.mul(&bm.pow(e));
                            coef = if e > 0 { &coef * &bc.pow(e as u32) } else { &coef * &bc.recip().pow((-e) as u32) };
                        }
                        None => continue 'terms, // zero binding, positive power
                    }
                }
                out.push((mono, coef));
            }
            return Ok(Self::from_terms(out));
        }
        let mut acc: Vec<LaurentPoly> = Vec::with_capacity(self.terms.len());
        let mut pow_cache: FxHashMap<(usize, i32), LaurentPoly> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut piece = LaurentPoly::one();
            for (bi, (v, b)) in bindings.iter().enumerate() {
                let e = m.exp(*v);
                if e == 0 {
                    continue;
                }
                rest.set_exp(*v, 0);
                let p = match pow_cache.get(&(bi, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = b.pow_i(e as i64)?;
                        pow_cache.insert((bi, e), p.clone());
                        p
                    }
                };
                piece = piece.mul_ref(&p);
            }
            acc.push(piece.mul_term(c, &rest));
        }
        Ok(Self::sum(acc.iter()))
    }

    /// Rescales `v` by a single term: `f(x) -> f(c*m*x)`.
    pub fn dilate(&self, v: Var, factor: &LaurentPoly) -> Result<Self> {
        let mut b = LaurentPoly::var(v);
        b = b.mul_ref(factor);
        if b.as_term().is_none() {
            return Err(Error::NotMonomial(format!("{factor:?}")));
        }
        self.substitute(&[(v, b)])
    }

    /// Groups terms by their monomial in `set`; values are the cofactors.
    pub fn split_by(&self, set: SymbolSet) -> Vec<(Monomial, LaurentPoly)> {
        let mut groups: FxHashMap<Monomial, Vec<(Monomial, ExactRational)>> = FxHashMap::default();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(set);
            groups.entry(inside).or_default().push((outside, c.clone()));
        }
        let mut out: Vec<_> = groups
            .into_iter()
            .map(|(k, mut v)| {
                v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
                (k, LaurentPoly { terms: v })
            })
            .collect();
        out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Keeps the terms whose total degree in `set` is at most `max`.
    pub fn truncate_degree(&self, set: SymbolSet, max: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().filter(|(m, _)| m.degree_in(set) <= max).cloned().collect(),
        }
    }

    /// Lowest exponent of `v` whose coefficient is nonzero (valuation).
    pub fn valuation(&self, v: Var) -> Option<i32> {
        self.min_exp(v)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// Needs a symbol in which `d` has a single-term leading coefficient;
    /// returns `None` if no such symbol exists.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((m, c)) = d.as_term() {
            return Some(self.mul_term(&c.recip(), &m.inv()));
        }
        let support = d.support();
        let v = support.iter().find(|&v| {
            let hi = d.max_exp(v).unwrap();
            let lo = d.min_exp(v).unwrap();
            hi > lo && d.terms.iter().filter(|(m, _)| m.exp(v) == hi).count() == 1
        })?;
        let dhi = d.max_exp(v).unwrap();
        let dlo = d.min_exp(v).unwrap();
        let (lead_m, lead_c) = d.terms.iter().find(|(m, _)| m.exp(v) == dhi).map(|(m, c)| (*m, c.clone())).unwrap();
        let lead_inv_c = lead_c.recip();
        let lead_inv_m = lead_m.inv();
        let mut rem = self.clone();
        let mut quotient: Vec<LaurentPoly> = Vec::new();
        while !rem.is_zero() {
            let hi = rem.max_exp(v).unwrap();
            let lo = rem.min_exp(v).unwrap();
            if hi - lo < dhi - dlo {
                return None;
            }
            let top: Vec<(Monomial, ExactRational)> = rem
                .terms
                .iter()
                .filter(|(m, _)| m.exp(v) == hi)
                .map(|(m, c)| (m.mul(&lead_inv_m), c * &lead_inv_c))
                .collect();
            let part = LaurentPoly::from_terms(top);
            rem = rem.sub_ref(&part.mul_ref(d));
            quotient.push(part);
        }
        Some(Self::sum(quotient.iter()))
    }

    pub fn display<'a>(&'a self, table: &'a SymbolTable) -> impl fmt::Display + 'a {
        super::render::PolyDisplay { poly: self, table }
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<'a> $tr<&'a LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$imp(rhs)
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$imp(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$imp(rhs)
            }
        }
        impl<'a> $tr<LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$imp(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, add_ref);
poly_binop!(Sub, sub, sub_ref);
poly_binop!(Mul, mul, mul_ref);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl From<i64> for LaurentPoly {
    fn from(v: i64) -> Self {
        LaurentPoly::int(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> (SymbolTable, Var, Var) {
        let mut t = SymbolTable::new(1);
        let x = t.parameter("x");
        let y = t.parameter("y");
        (t, x, y)
    }

    #[test]
    fn difference_of_squares() {
        let t = SymbolTable::new(1);
        let q = LaurentPoly::q_pow(&t, 1);
        let one = LaurentPoly::one();
        let p = (&one + &q) * (&one - &q);
        assert_eq!(p, &one - &LaurentPoly::q_pow(&t, 2));
    }

    #[test]
    fn binomial_square() {
        let (_, x, y) = table();
        let (xp, yp) = (LaurentPoly::var(x), LaurentPoly::var(y));
        let sq = (&xp + &yp).pow(2);
        let expect = xp.pow(2) + (&xp * &yp).scale(&ExactRational::from_i64(2)) + yp.pow(2);
        assert_eq!(sq, expect);
    }

    #[test]
    fn scale_two_base_square_is_q() {
        let t = SymbolTable::new(2);
        let p = LaurentPoly::q_frac(&t, 1, 2).unwrap();
        assert_eq!(&p * &p, LaurentPoly::q_pow(&t, 1));
    }

    #[test]
    fn laurent_substitution() {
        let mut t = SymbolTable::new(1);
        let u = t.parameter("u");
        let x = t.parameter("x");
        // u^2 q^3 with u -> q^{-1} gives q
        let f = LaurentPoly::var_pow(u, 2) * LaurentPoly::q_pow(&t, 3);
        let g = f.substitute(&[(u, LaurentPoly::q_pow(&t, -1))]).unwrap();
        assert_eq!(g, LaurentPoly::q_pow(&t, 1));
        // u x with u -> q
        let f = LaurentPoly::var(u) * LaurentPoly::var(x);
        let g = f.substitute(&[(u, LaurentPoly::q_pow(&t, 1))]).unwrap();
        assert_eq!(g, LaurentPoly::q_pow(&t, 1) * LaurentPoly::var(x));
    }

    #[test]
    fn non_monomial_binding_for_negative_power_fails() {
        let (_, x, y) = table();
        let f = LaurentPoly::var_pow(x, -1);
        let err = f.substitute(&[(x, LaurentPoly::var(y) + LaurentPoly::one())]);
        assert!(matches!(err, Err(Error::SubstitutionNotInvertible(_))));
    }

    #[test]
    fn general_substitution_expands() {
        let (t, x, y) = table();
        // 1 + y with y -> q x
        let f = LaurentPoly::one() + LaurentPoly::var(y);
        let g = f.substitute(&[(y, LaurentPoly::q_pow(&t, 1) * LaurentPoly::var(x))]).unwrap();
        assert_eq!(g, LaurentPoly::one() + LaurentPoly::q_pow(&t, 1) * LaurentPoly::var(x));
        // (x + y)^2 with y -> 1 + x
        let h = (LaurentPoly::var(x) + LaurentPoly::var(y)).pow(2);
        let k = h.substitute(&[(y, LaurentPoly::one() + LaurentPoly::var(x))]).unwrap();
        let expect = (LaurentPoly::var(x).scale(&ExactRational::from_i64(2)) + LaurentPoly::one()).pow(2);
        assert_eq!(k, expect);
    }

    #[test]
    fn exact_division() {
        let t = SymbolTable::new(1);
        let (_, x, _) = table();
        let q = LaurentPoly::q_pow(&t, 1);
        let a = LaurentPoly::one() - &q;
        let b = LaurentPoly::one() + &q * LaurentPoly::var(x);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a), Some(b.clone()));
        assert_eq!(prod.exact_div(&b), Some(a.clone()));
        assert_eq!(b.exact_div(&a), None);
        let laurent = prod.mul_monomial(&Monomial::var_pow(x, -3));
        assert_eq!(laurent.exact_div(&a), Some(b.mul_monomial(&Monomial::var_pow(x, -3))));
    }
}
