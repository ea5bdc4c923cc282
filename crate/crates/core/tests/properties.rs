use std::collections::BTreeMap;

use proptest::prelude::*;
use qdeform::algebra::{
    series_equal, ExactRational, LaurentPoly, Monomial, RationalExpr, SymbolTable, TruncatedSeries, Var,
};
use qdeform::qkernel::{dq, dq_pow, gauss_binomial, qpochhammer};

// Symbols: q (base), x, y parameters; z, w, t small.
struct Syms {
    t: SymbolTable,
    x: Var,
    y: Var,
    small: [Var; 3],
}

fn syms() -> Syms {
    let mut t = SymbolTable::new(1);
    let x = t.parameter("x");
    let y = t.parameter("y");
    let z = t.small("z");
    let w = t.small("w");
    let s = t.small("s");
    Syms { t, x, y, small: [z, w, s] }
}

type RawTerm = (i64, [i32; 3]);

fn raw_laurent() -> impl Strategy<Value = Vec<RawTerm>> {
    prop::collection::vec((-3i64..=3, [-2i32..=3, -2i32..=3, -2i32..=3]), 0..5)
}

fn raw_positive() -> impl Strategy<Value = Vec<RawTerm>> {
    prop::collection::vec((-3i64..=3, [0i32..=3, 0i32..=3, 0i32..=2]), 0..5)
}

/// Terms over (q, x, y).
fn build(s: &Syms, raw: &[RawTerm]) -> LaurentPoly {
    let vars = [s.t.base(), s.x, s.y];
    LaurentPoly::from_terms(raw.iter().map(|(c, e)| {
        let mut m = Monomial::one();
        for (v, k) in vars.iter().zip(e) {
            m.set_exp(*v, *k);
        }
        (m, ExactRational::from_i64(*c))
    }))
}

fn nonzero(p: LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        LaurentPoly::one()
    } else {
        p
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in raw_laurent(), b in raw_laurent(), c in raw_laurent()) {
        let s = syms();
        let (a, b, c) = (build(&s, &a), build(&s, &b), build(&s, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &LaurentPoly::zero(), a.clone());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!(a.terms().iter().all(|(_, c)| *c != ExactRational::from_i64(0)));
    }

    #[test]
    fn pow_is_repeated_product(a in raw_laurent(), e in 0u32..4) {
        let s = syms();
        let a = build(&s, &a);
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = &acc * &a;
        }
        prop_assert_eq!(a.pow(e), acc);
    }

    #[test]
    fn rational_field_axioms(a in raw_positive(), b in raw_positive(), c in raw_positive(), d in raw_positive()) {
        let s = syms();
        let (a, b) = (nonzero(build(&s, &a)), nonzero(build(&s, &b)));
        let (c, d) = (build(&s, &c), nonzero(build(&s, &d)));
        let r1 = RationalExpr::new(a.clone(), &b).unwrap();
        let r2 = RationalExpr::new(c.clone(), &d).unwrap();
        let r3 = RationalExpr::new(b.clone(), &a).unwrap();
        prop_assert!(r1.mul_ref(&r3).equals(&RationalExpr::one()));
        prop_assert!(r1.add_ref(&r2).equals(&r2.add_ref(&r1)));
        prop_assert!(r1.mul_ref(&r2.add_ref(&r3)).equals(&r1.mul_ref(&r2).add_ref(&r1.mul_ref(&r3))));
        prop_assert!(r1.mul_ref(&r2).mul_ref(&r3).equals(&r1.mul_ref(&r2.mul_ref(&r3))));
        prop_assert!(r1.add_ref(&RationalExpr::zero()).equals(&r1));
        prop_assert!(r1.sub_ref(&r1).is_zero());
    }

    #[test]
    fn rational_equality_is_an_equivalence(a in raw_positive(), b in raw_positive(), k in raw_positive(), m in raw_positive()) {
        let s = syms();
        let (a, b) = (build(&s, &a), nonzero(build(&s, &b)));
        let (k, m) = (nonzero(build(&s, &k)), nonzero(build(&s, &m)));
        // three spellings of the same value
        let r = RationalExpr::new(a.clone(), &b).unwrap();
        let rk = RationalExpr::new(&a * &k, &(&b * &k)).unwrap();
        let rkm = RationalExpr::new(&(&a * &k) * &m, &(&(&b * &k) * &m)).unwrap();
        prop_assert!(r.equals(&r));
        prop_assert_eq!(r.equals(&rk), rk.equals(&r));
        prop_assert!(r.equals(&rk) && rk.equals(&rkm) && r.equals(&rkm));
        // cross-multiplication definition
        let cross = (&(r.numerator() * &rk.denominator()) - &(rk.numerator() * &r.denominator())).is_zero();
        prop_assert_eq!(cross, r.equals(&rk));
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(
        f in raw_laurent(),
        g in raw_laurent(),
        cx in -2i64..=2,
        ex in -2i32..=2,
        qx in -2i64..=2,
        ey in 0i32..=2,
    ) {
        let s = syms();
        let (f, g) = (build(&s, &f), build(&s, &g));
        let cx = if cx == 0 { 1 } else { cx };
        // x -> cx q^qx y^ex is invertible, so negative powers of x are fine
        let xb = LaurentPoly::q_pow(&s.t, qx).mul_term(&ExactRational::from_i64(cx), &Monomial::var_pow(s.y, ex));
        let yb = LaurentPoly::q_pow(&s.t, 1).mul_monomial(&Monomial::var_pow(s.x, ey));
        let b = [(s.x, xb), (s.y, yb)];
        let sub = |p: &LaurentPoly| p.substitute(&b).unwrap();
        prop_assert_eq!(sub(&(&f * &g)), &sub(&f) * &sub(&g));
        prop_assert_eq!(sub(&(&f + &g)), &sub(&f) + &sub(&g));
        // also on rational expressions
        let den = nonzero(build(&s, &[(1, [1, 0, 0])])) + LaurentPoly::one();
        let rf = RationalExpr::new(f.clone(), &den).unwrap();
        let rg = RationalExpr::new(g.clone(), &den).unwrap();
        let lhs = rf.mul_ref(&rg).substitute(&b).unwrap();
        let rhs = rf.substitute(&b).unwrap().mul_ref(&rg.substitute(&b).unwrap());
        prop_assert!(lhs.equals(&rhs));
    }
}

/// Polynomial with small content in `z, w, s` and q-polynomial coefficients.
fn raw_small() -> impl Strategy<Value = Vec<(i64, i32, [i32; 3])>> {
    prop::collection::vec((-3i64..=3, 0i32..=2, [0i32..=3, 0i32..=3, 0i32..=3]), 0..7)
}

fn build_small(s: &Syms, raw: &[(i64, i32, [i32; 3])], nsmall: usize) -> LaurentPoly {
    LaurentPoly::from_terms(raw.iter().map(|(c, qe, e)| {
        let mut m = Monomial::var_pow(s.t.base(), *qe);
        for (v, k) in s.small.iter().zip(e).take(nsmall) {
            m.set_exp(*v, *k);
        }
        (m, ExactRational::from_i64(*c))
    }))
}

/// Coefficient table of a polynomial in the small symbols.
fn table_of(s: &Syms, p: &LaurentPoly) -> BTreeMap<Monomial, LaurentPoly> {
    let set = s.t.small_set();
    let mut out: BTreeMap<Monomial, LaurentPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let (sm, rest) = m.split(set);
        let e = out.entry(sm).or_insert_with(LaurentPoly::zero);
        *e = &*e + &LaurentPoly::term(c.clone(), rest);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_product_is_truncated_convolution(
        a in raw_small(),
        b in raw_small(),
        nsmall in 1usize..=3,
        na in 0u32..=6,
        nb in 0u32..=6,
    ) {
        let s = syms();
        let set = s.t.small_set();
        let (pa, pb) = (build_small(&s, &a, nsmall), build_small(&s, &b, nsmall));
        let sa = TruncatedSeries::from_poly(&pa, set, na).unwrap();
        let sb = TruncatedSeries::from_poly(&pb, set, nb).unwrap();
        let prod = &sa * &sb;
        let n = na.min(nb);
        prop_assert_eq!(prod.order(), n);

        // brute force over the two coefficient tables
        let (ta, tb) = (table_of(&s, &pa), table_of(&s, &pb));
        let mut conv: BTreeMap<Monomial, LaurentPoly> = BTreeMap::new();
        for (ma, ca) in &ta {
            for (mb, cb) in &tb {
                if ma.degree_in(set) > n as i64 || mb.degree_in(set) > n as i64 {
                    continue;
                }
                let m = ma.mul(mb);
                if m.degree_in(set) <= n as i64 {
                    let e = conv.entry(m).or_insert_with(LaurentPoly::zero);
                    *e = &*e + &(ca * cb);
                }
            }
        }
        conv.retain(|_, c| !c.is_zero());
        let got: BTreeMap<Monomial, LaurentPoly> =
            prod.terms().iter().map(|(m, c)| (*m, c.as_poly().cloned().unwrap_or_else(|| c.reduce().as_poly().unwrap().clone()))).collect();
        prop_assert_eq!(got, conv);
    }

    #[test]
    fn series_dq_is_linear_and_obeys_product_rule(a in raw_small(), b in raw_small(), c1 in -3i64..=3, c2 in -3i64..=3) {
        let s = syms();
        let set = s.t.small_set();
        let z = s.small[0];
        let n = 6;
        let f = TruncatedSeries::from_poly(&build_small(&s, &a, 2), set, n).unwrap();
        let g = TruncatedSeries::from_poly(&build_small(&s, &b, 2), set, n).unwrap();
        let d = |h: &TruncatedSeries| h.dq(&s.t, z).unwrap();

        let comb = &f.scale_int(c1) + &g.scale_int(c2);
        let lin = &d(&f).scale_int(c1) + &d(&g).scale_int(c2);
        prop_assert!(series_equal(&d(&comb), &lin).unwrap().is_equal());

        // D(fg) = f(qz) D g + g D f
        let fq = f.dilate(z, &LaurentPoly::q_pow(&s.t, 1)).unwrap();
        let rhs = &(&fq * &d(&g)) + &(&g * &d(&f));
        prop_assert!(series_equal(&d(&(&f * &g)), &rhs).unwrap().is_equal());
    }

    #[test]
    fn leibniz_rule_on_polynomials(a in raw_positive(), b in raw_positive(), n in 0u32..=4) {
        // D^n(fg) = sum_k [n k] q^(k(k-n)) D^k f(x) D^(n-k) [g(q^k x)]
        let s = syms();
        let x = s.x;
        let f = build(&s, &a);
        let g = build(&s, &b);
        let lhs = dq_pow(&s.t, &(&f * &g), x, n).unwrap();
        let mut rhs = LaurentPoly::zero();
        for k in 0..=n {
            let gk = g.dilate(x, &LaurentPoly::q_pow(&s.t, k as i64)).unwrap();
            let dg = dq_pow(&s.t, &gk, x, n - k).unwrap();
            let w = gauss_binomial(&s.t, n as i64, k as i64) * LaurentPoly::q_pow(&s.t, (k as i64) * (k as i64 - n as i64));
            rhs = &rhs + &(&(&w * &dq_pow(&s.t, &f, x, k).unwrap()) * &dg);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dq_matches_defining_quotient(a in raw_positive()) {
        let s = syms();
        let f = build(&s, &a);
        let shifted = f.substitute(&[(s.x, LaurentPoly::q_pow(&s.t, 1) * LaurentPoly::var(s.x))]).unwrap();
        let quotient = (&f - &shifted).mul_monomial(&Monomial::var_pow(s.x, -1));
        prop_assert_eq!(dq(&s.t, &f, s.x).unwrap(), quotient);
    }
}

/// `(q;q)_n / ((q;q)_k (q;q)_(n-k))` by exact division.
fn binomial_oracle(t: &SymbolTable, n: i64, k: i64) -> LaurentPoly {
    if k < 0 || k > n {
        return LaurentPoly::zero();
    }
    let q = LaurentPoly::q_pow(t, 1);
    let f = |m: i64| qpochhammer(t, &q, m as u32);
    f(n).exact_div(&(f(k) * f(n - k))).expect("Gaussian quotient divides")
}

#[test]
fn gaussian_binomial_matches_quotient_oracle() {
    let t = SymbolTable::new(1);
    for n in 0..=12 {
        for k in -1..=n + 1 {
            assert_eq!(gauss_binomial(&t, n, k), binomial_oracle(&t, n, k), "[{n} {k}]");
        }
    }
    // [4 2] = 1 + q + 2q^2 + q^3 + q^4
    let q = |k| LaurentPoly::q_pow(&t, k);
    let expect = LaurentPoly::one() + q(1) + q(2).scale(&ExactRational::from_i64(2)) + q(3) + q(4);
    assert_eq!(gauss_binomial(&t, 4, 2), expect);
}

#[test]
fn gaussian_binomial_symmetry_and_value_at_one() {
    let t = SymbolTable::new(1);
    for n in 0..=10i64 {
        for k in 0..=n {
            let g = gauss_binomial(&t, n, k);
            assert_eq!(g, gauss_binomial(&t, n, n - k));
            // q -> 1 recovers the ordinary binomial coefficient
            let at1 = g.substitute(&[(t.base(), LaurentPoly::one())]).unwrap();
            let mut c = 1i64;
            for i in 0..k {
                c = c * (n - i) / (i + 1);
            }
            assert_eq!(at1, LaurentPoly::int(c));
        }
    }
}
