//! Quotients of Laurent polynomials with a factored denominator.
//!
//! The denominator is kept as a product of normalized atoms. Binomials
//! `1 - r^g` and `1 + r^g` (with `r` a primitive Laurent monomial) split into
//! cyclotomic pieces `Phi_d(r)`, which is what makes sums of terms over
//! `(q;q)_n`-type denominators cheap: the common denominator is a true LCM of
//! atoms and numerators are multiplied only by the missing cofactors.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::poly::{LaurentPoly, Monomial};
use super::rational::ExactRational;
use super::symbols::{SymbolSet, SymbolTable, Var};
use crate::error::{Error, Result};

/// An irreducible-ish denominator factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// `1 - r` for `d = 1`, otherwise the cyclotomic polynomial `Phi_d(r)`.
    /// `r` is primitive and its first nonzero exponent is positive.
    Cyclotomic { d: u32, r: Monomial },
    /// A content-free polynomial whose first term has coefficient 1.
    Poly(LaurentPoly),
}

fn cyclotomic_coeffs(d: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&d) {
        return c.clone();
    }
    // x^d - 1 divided by Phi_e for every proper divisor e.
    let mut num = vec![0i64; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for e in 1..d {
        if d % e != 0 {
            continue;
        }
        let div = cyclotomic_coeffs(e);
        num = int_poly_div(&num, &div);
    }
    let arc = Arc::new(num);
    cache.lock().unwrap().insert(d, arc.clone());
    arc
}

// Exact division of integer polynomials (ascending coefficients, monic divisor).
fn int_poly_div(num: &[i64], div: &[i64]) -> Vec<i64> {
    let dn = div.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quo = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn] / div[dn];
        quo[i] = c;
        for (j, &dc) in div.iter().enumerate() {
            rem[i + j] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Atom {
    pub fn expand(&self) -> Arc<LaurentPoly> {
        static CACHE: OnceLock<RwLock<FxHashMap<Atom, Arc<LaurentPoly>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(p) = cache.read().unwrap().get(self) {
            return p.clone();
        }
        let p = match self {
            Atom::Poly(p) => p.clone(),
            Atom::Cyclotomic { d: 1, r } => LaurentPoly::one() - LaurentPoly::monomial(*r),
            Atom::Cyclotomic { d, r } => {
                let coeffs = cyclotomic_coeffs(*d);
                LaurentPoly::from_terms(
                    coeffs
                        .iter()
                        .enumerate()
                        .map(|(i, &c)| (r.pow(i as i32), ExactRational::from_i64(c))),
                )
            }
        };
        let arc = Arc::new(p);
        cache.write().unwrap().insert(self.clone(), arc.clone());
        arc
    }

    pub fn support(&self) -> SymbolSet {
        match self {
            Atom::Cyclotomic { r, .. } => r.support(),
            Atom::Poly(p) => p.support(),
        }
    }
}

/// `p = constant * monomial * prod(atoms)`.
#[derive(Clone, Debug)]
pub struct Factored {
    pub constant: ExactRational,
    pub monomial: Monomial,
    pub atoms: Vec<(Atom, u32)>,
}

/// Splits a nonzero polynomial into unit part and normalized atoms.
pub fn factor(p: &LaurentPoly) -> Factored {
    assert!(!p.is_zero(), "factor of zero");
    let content = p.monomial_content();
    let p1 = p.mul_monomial(&content.inv());
    let (m0, c0) = {
        let (m, c) = &p1.terms()[0];
        (*m, c.clone())
    };
    if p1.len() == 1 {
        return Factored { constant: c0, monomial: content.mul(&m0), atoms: Vec::new() };
    }
    let p2 = p1.scale(&c0.recip());
    let mut constant = c0;
    let mut monomial = content;
    if p2.len() == 2 {
        let (ma, _) = &p2.terms()[0];
        let (mb, e) = &p2.terms()[1];
        let e = e.as_i64();
        if e == Some(1) || e == Some(-1) {
            let e = e.unwrap();
            monomial = monomial.mul(ma);
            let mut r = mb.div(ma);
            let first = r.0.iter().find(|&&x| x != 0).copied().unwrap();
            if first < 0 {
                // 1 + e r = e r (1 + e r^{-1})
                constant = &constant * &ExactRational::from_i64(e);
                monomial = monomial.mul(&r);
                r = r.inv();
            }
            let g = r.0.iter().fold(0u32, |acc, &x| gcd(acc, x.unsigned_abs()));
            let mut r0 = r;
            for x in r0.0.iter_mut() {
                *x /= g as i32;
            }
            let atoms = if e == -1 {
                divisors(g).into_iter().map(|d| (Atom::Cyclotomic { d, r: r0 }, 1)).collect()
            } else {
                divisors(2 * g)
                    .into_iter()
                    .filter(|d| g % d != 0)
                    .map(|d| (Atom::Cyclotomic { d, r: r0 }, 1))
                    .collect()
            };
            return Factored { constant, monomial, atoms };
        }
    }
    Factored { constant, monomial, atoms: vec![(Atom::Poly(p2), 1)] }
}

fn merge_atoms(a: &[(Atom, u32)], b: &[(Atom, u32)]) -> Vec<(Atom, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0.clone(), a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn atoms_product(atoms: &[(Atom, u32)]) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for (a, e) in atoms {
        acc = acc.mul_ref(&a.expand().pow(*e));
    }
    acc
}

/// A rational function `num / prod(atom^e)`.
#[derive(Clone, Debug, Default)]
pub struct RationalExpr {
    num: LaurentPoly,
    den: Vec<(Atom, u32)>,
}

impl RationalExpr {
    pub fn zero() -> Self {
        RationalExpr { num: LaurentPoly::zero(), den: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalExpr { num: p, den: Vec::new() }
    }

    pub fn from_rational(c: ExactRational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn int(c: i64) -> Self {
        Self::from_poly(LaurentPoly::int(c))
    }

    /// `num / den`; fails when `den` is zero.
    pub fn new(num: LaurentPoly, den: &LaurentPoly) -> Result<Self> {
        Self::from_poly(num).div_poly(den)
    }

    /// Builds `num / prod(atoms)` from already normalized atoms.
    pub fn from_atoms(num: LaurentPoly, atoms: &[(Atom, u32)]) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut den: Vec<(Atom, u32)> = Vec::new();
        for (a, e) in atoms {
            den = merge_atoms(&den, &[(a.clone(), *e)]);
        }
        RationalExpr { num, den }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator_atoms(&self) -> &[(Atom, u32)] {
        &self.den
    }

    /// Expanded denominator.
    pub fn denominator(&self) -> LaurentPoly {
        atoms_product(&self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn support(&self) -> SymbolSet {
        self.den.iter().fold(self.num.support(), |s, (a, _)| s.union(a.support()))
    }

    fn with_factored_den(num: LaurentPoly, f: Factored, power: u32) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let num = num.mul_term(&f.constant.recip().pow(power), &f.monomial.inv().pow(power as i32));
        let atoms: Vec<_> = f.atoms.into_iter().map(|(a, e)| (a, e * power)).collect();
        RationalExpr { num, den: atoms }
    }

    pub fn div_poly(&self, d: &LaurentPoly) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let f = factor(d);
        let r = Self::with_factored_den(self.num.clone(), Factored { atoms: Vec::new(), ..f.clone() }, 1);
        Ok(RationalExpr { num: r.num, den: merge_atoms(&self.den, &f.atoms) })
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        if p.is_zero() || self.is_zero() {
            return Self::zero();
        }
        RationalExpr { num: self.num.mul_ref(p), den: self.den.clone() }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalExpr { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        RationalExpr { num: self.num.mul_ref(&o.num), den: merge_atoms(&self.den, &o.den) }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = factor(&self.num);
        let num = atoms_product(&self.den);
        Ok(Self::with_factored_den(num, f, 1))
    }

    pub fn div_ref(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_ref(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalExpr {
            num: self.num.pow(e),
            den: self.den.iter().map(|(a, k)| (a.clone(), k * e)).collect(),
        }
    }

    pub fn pow_i(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow((-e) as u32))
        }
    }

    pub fn neg_ref(&self) -> Self {
        RationalExpr { num: self.num.neg_ref(), den: self.den.clone() }
    }

    /// Sum with a single common denominator (LCM of all atom powers).
    pub fn sum<'a, I: IntoIterator<Item = &'a RationalExpr>>(it: I) -> Self {
        let items: Vec<&RationalExpr> = it.into_iter().filter(|r| !r.is_zero()).collect();
        match items.len() {
            0 => return Self::zero(),
            1 => return items[0].clone(),
            _ => {}
        }
        let mut lcm: Vec<(Atom, u32)> = Vec::new();
        for r in &items {
            let mut merged = Vec::with_capacity(lcm.len() + r.den.len());
            let (mut i, mut j) = (0, 0);
            while i < lcm.len() && j < r.den.len() {
                match lcm[i].0.cmp(&r.den[j].0) {
                    std::cmp::Ordering::Less => {
                        merged.push(lcm[i].clone());
                        i += 1;
                    }
                    std::cmp::Ordering::Greater => {
                        merged.push(r.den[j].clone());
                        j += 1;
                    }
                    std::cmp::Ordering::Equal => {
                        merged.push((lcm[i].0.clone(), lcm[i].1.max(r.den[j].1)));
                        i += 1;
                        j += 1;
                    }
                }
            }
            merged.extend_from_slice(&lcm[i..]);
            merged.extend_from_slice(&r.den[j..]);
            lcm = merged;
        }
        let mut cof_cache: FxHashMap<Vec<(Atom, u32)>, LaurentPoly> = FxHashMap::default();
        let mut parts: Vec<LaurentPoly> = Vec::with_capacity(items.len());
        for r in &items {
            let missing = cofactor_atoms(&lcm, &r.den);
            if missing.is_empty() {
                parts.push(r.num.clone());
                continue;
            }
            let cof = cof_cache.entry(missing).or_insert_with_key(|k| atoms_product(k));
            parts.push(r.num.mul_ref(cof));
        }
        let num = LaurentPoly::sum(parts.iter());
        if num.is_zero() {
            return Self::zero();
        }
        RationalExpr { num, den: lcm }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        Self::sum([self, o])
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        Self::sum([self, &o.neg_ref()])
    }

    /// Exact value equality by cross-multiplication over the LCM.
    pub fn equals(&self, o: &Self) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        self.sub_ref(o).is_zero()
    }

    /// Cancels denominator atoms that divide the numerator.
    pub fn reduce(&self) -> Self {
        if self.den.is_empty() || self.num.is_zero() {
            return self.clone();
        }
        let mut num = self.num.clone();
        let mut den = Vec::with_capacity(self.den.len());
        for (a, e) in &self.den {
            let mut left = *e;
            let ex = a.expand();
            while left > 0 {
                match num.exact_div(&ex) {
                    Some(qt) => {
                        num = qt;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.push((a.clone(), left));
            }
        }
        RationalExpr { num, den }
    }

    pub fn substitute(&self, bindings: &[(Var, LaurentPoly)]) -> Result<Self> {
        let num = self.num.substitute(bindings)?;
        let mut out = Self::from_poly(num);
        if out.is_zero() {
            // Denominators must still be checked for vanishing.
            for (a, _) in &self.den {
                if a.expand().substitute(bindings)?.is_zero() {
                    return Err(Error::DivisionByZero);
                }
            }
            return Ok(out);
        }
        for (a, e) in &self.den {
            let touches = bindings.iter().any(|(v, _)| a.support().contains(*v));
            if !touches {
                out.den = merge_atoms(&out.den, &[(a.clone(), *e)]);
                continue;
            }
            let s = a.expand().substitute(bindings)?;
            if s.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let f = factor(&s);
            let r = Self::with_factored_den(out.num.clone(), Factored { atoms: Vec::new(), ..f.clone() }, *e);
            let atoms: Vec<_> = f.atoms.into_iter().map(|(a, k)| (a, k * e)).collect();
            out = RationalExpr { num: r.num, den: merge_atoms(&out.den, &atoms) };
        }
        Ok(out)
    }

    pub fn display<'a>(&'a self, table: &'a SymbolTable) -> impl fmt::Display + 'a {
        super::render::RatDisplay { expr: self, table }
    }
}

fn cofactor_atoms(lcm: &[(Atom, u32)], den: &[(Atom, u32)]) -> Vec<(Atom, u32)> {
    let mut out = Vec::new();
    let mut j = 0;
    for (a, e) in lcm {
        let have = if j < den.len() && den[j].0 == *a {
            j += 1;
            den[j - 1].1
        } else {
            0
        };
        if *e > have {
            out.push((a.clone(), e - have));
        }
    }
    out
}

impl PartialEq for RationalExpr {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl From<LaurentPoly> for RationalExpr {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for RationalExpr {
    fn from(v: i64) -> Self {
        Self::int(v)
    }
}

impl<'a> Add<&'a RationalExpr> for &'a RationalExpr {
    type Output = RationalExpr;
    fn add(self, rhs: &RationalExpr) -> RationalExpr {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a RationalExpr> for &'a RationalExpr {
    type Output = RationalExpr;
    fn sub(self, rhs: &RationalExpr) -> RationalExpr {
        self.sub_ref(rhs)
    }
}

impl<'a> Mul<&'a RationalExpr> for &'a RationalExpr {
    type Output = RationalExpr;
    fn mul(self, rhs: &RationalExpr) -> RationalExpr {
        self.mul_ref(rhs)
    }
}

impl<'a> Div<&'a RationalExpr> for &'a RationalExpr {
    type Output = RationalExpr;
    fn div(self, rhs: &RationalExpr) -> RationalExpr {
        self.div_ref(rhs).expect("division by zero")
    }
}

impl Neg for &RationalExpr {
    type Output = RationalExpr;
    fn neg(self) -> RationalExpr {
        self.neg_ref()
    }
}

impl Zero for RationalExpr {
    fn zero() -> Self {
        RationalExpr::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RationalExpr {
    type Output = RationalExpr;
    fn add(self, rhs: RationalExpr) -> RationalExpr {
        self.add_ref(&rhs)
    }
}

impl Mul for RationalExpr {
    type Output = RationalExpr;
    fn mul(self, rhs: RationalExpr) -> RationalExpr {
        self.mul_ref(&rhs)
    }
}

impl One for RationalExpr {
    fn one() -> Self {
        RationalExpr::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(t: &SymbolTable, k: i64) -> LaurentPoly {
        LaurentPoly::q_pow(t, k)
    }

    #[test]
    fn cyclotomic_tables() {
        assert_eq!(*cyclotomic_coeffs(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_coeffs(2), vec![1, 1]);
        assert_eq!(*cyclotomic_coeffs(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_coeffs(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn factoring_round_trips() {
        let t = SymbolTable::new(1);
        for k in 1..=12 {
            for sign in [-1, 1] {
                let p = LaurentPoly::one() + qp(&t, k).scale(&ExactRational::from_i64(sign));
                let f = factor(&p);
                let back = LaurentPoly::term(f.constant.clone(), f.monomial).mul_ref(&atoms_product(&f.atoms));
                assert_eq!(back, p);
                let p = p.mul_monomial(&Monomial::var_pow(t.base(), -k as i32 - 2));
                let f = factor(&p);
                let back = LaurentPoly::term(f.constant.clone(), f.monomial).mul_ref(&atoms_product(&f.atoms));
                assert_eq!(back, p);
            }
        }
    }

    #[test]
    fn lcm_addition_matches_cross_multiplication() {
        let t = SymbolTable::new(1);
        let one = LaurentPoly::one();
        let d2 = (&one - qp(&t, 1)) * (&one - qp(&t, 2));
        let d3 = &d2 * (&one - qp(&t, 3));
        let a = RationalExpr::new(one.clone(), &d2).unwrap();
        let b = RationalExpr::new(qp(&t, 1), &d3).unwrap();
        let s = &a + &b;
        // 1/(q)_2 + q/(q)_3 = (1 - q^3 + q)/(q)_3
        let expect = RationalExpr::new(&one - qp(&t, 3) + qp(&t, 1), &d3).unwrap();
        assert_eq!(s, expect);
        let r = &a / &b;
        assert_eq!(&r * &b, a);
    }

    #[test]
    fn reduce_cancels() {
        let t = SymbolTable::new(1);
        let one = LaurentPoly::one();
        let d = &one - qp(&t, 4);
        let n = (&one - qp(&t, 2)) * (&one + qp(&t, 5));
        let r = RationalExpr::new(n, &d).unwrap().reduce();
        assert_eq!(r.denominator_atoms().len(), 1);
        assert_eq!(r, RationalExpr::new(&one + qp(&t, 5), &(&one + qp(&t, 2))).unwrap());
    }

    #[test]
    fn substitution_into_denominator() {
        let mut t = SymbolTable::new(1);
        let a = t.parameter("a");
        let one = LaurentPoly::one();
        let r = RationalExpr::new(one.clone(), &(&one - LaurentPoly::var(a) * qp(&t, 2))).unwrap();
        let s = r.substitute(&[(a, qp(&t, 1))]).unwrap();
        assert_eq!(s, RationalExpr::new(one.clone(), &(&one - qp(&t, 3))).unwrap());
        let z = r.substitute(&[(a, qp(&t, -2))]);
        assert_eq!(z.err(), Some(Error::DivisionByZero));
    }
}
