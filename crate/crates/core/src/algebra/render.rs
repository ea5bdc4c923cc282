//! Canonical text rendering.
//!
//! Terms are grouped by their small-symbol monomial (all symbols count as
//! small when the table declares none) and listed by ascending total degree,
//! larger exponents of earlier-declared symbols first. Parameter cofactors are
//! written inline, e.g. `u*x^2 + (1+q)*x*y + v*y^2`.

use std::fmt;

use num_integer::Integer;
use num_traits::One;

use super::poly::{LaurentPoly, Monomial};
use super::ratexpr::RationalExpr;
use super::rational::ExactRational;
use super::series::{graded_cmp, TruncatedSeries};
use super::symbols::{SymbolSet, SymbolTable};

fn exponent_text(num: i64, den: i64) -> String {
    let g = num.gcd(&den);
    let (n, d) = (num / g, den / g);
    match (n, d) {
        (1, 1) => String::new(),
        (n, 1) if n > 0 => format!("^{n}"),
        (n, 1) => format!("^({n})"),
        (n, d) => format!("^({n}/{d})"),
    }
}

fn all_symbols(table: &SymbolTable) -> SymbolSet {
    let mut s = SymbolSet::empty();
    for v in table.vars() {
        s.insert(v);
    }
    s
}

/// Renders the factors of `m` restricted to `set`, or `None` for the unit.
pub fn monomial_text(m: &Monomial, table: &SymbolTable, set: SymbolSet) -> Option<String> {
    let mut parts = Vec::new();
    for v in set.iter() {
        if v.index() >= table.len() {
            continue;
        }
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        let den = if v == table.base() { table.base_scale() as i64 } else { 1 };
        parts.push(format!("{}{}", table.name(v), exponent_text(e as i64, den)));
    }
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

fn term_text(c: &ExactRational, mono: Option<String>) -> String {
    match mono {
        None => c.to_string(),
        Some(m) if c.is_one() => m,
        Some(m) if *c == ExactRational::from_i64(-1) => format!("-{m}"),
        Some(m) => format!("{c}*{m}"),
    }
}

fn join(terms: &[String], sep_plus: &str, sep_minus: &str) -> String {
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(sep_minus);
            out.push_str(rest);
        } else {
            out.push_str(sep_plus);
            out.push_str(t);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// Compact rendering without spaces, used for coefficients.
pub fn poly_inline(p: &LaurentPoly, table: &SymbolTable) -> String {
    let all = all_symbols(table);
    let mut terms: Vec<_> = p.terms().iter().collect();
    terms.sort_by(|a, b| graded_cmp(&a.0, &b.0, all));
    let texts: Vec<String> = terms.iter().map(|(m, c)| term_text(c, monomial_text(m, table, all))).collect();
    join(&texts, "+", "-")
}

fn paren_if_sum(s: String, p: &LaurentPoly) -> String {
    if p.len() > 1 {
        format!("({s})")
    } else {
        s
    }
}

/// Renders a rational coefficient; single terms stay bare.
pub fn rational_inline(r: &RationalExpr, table: &SymbolTable) -> String {
    let num = poly_inline(r.numerator(), table);
    if r.is_polynomial() {
        return num;
    }
    let mut den = Vec::new();
    for (a, e) in r.denominator_atoms() {
        let body = format!("({})", poly_inline(&a.expand(), table));
        den.push(if *e == 1 { body } else { format!("{body}^{e}") });
    }
    let den = if den.len() == 1 { den.remove(0) } else { format!("({})", den.join("*")) };
    format!("{}/{den}", paren_if_sum(num, r.numerator()))
}

/// One group term: cofactor times main monomial.
fn group_term(c: &RationalExpr, mono: Option<String>, table: &SymbolTable) -> String {
    if let Some(p) = c.as_poly() {
        if let Some((pm, pc)) = p.as_term() {
            let params = monomial_text(pm, table, all_symbols(table));
            let joined = match (params, mono) {
                (None, m) => m,
                (Some(a), None) => Some(a),
                (Some(a), Some(b)) => Some(format!("{a}*{b}")),
            };
            return term_text(pc, joined);
        }
        let inner = format!("({})", poly_inline(p, table));
        return match mono {
            None => inner,
            Some(m) => format!("{inner}*{m}"),
        };
    }
    let inner = format!("({})", rational_inline(c, table));
    match mono {
        None => inner,
        Some(m) => format!("{inner}*{m}"),
    }
}

fn render_groups(groups: Vec<(Monomial, RationalExpr)>, table: &SymbolTable, main: SymbolSet) -> String {
    let texts: Vec<String> =
        groups.iter().map(|(m, c)| group_term(c, monomial_text(m, table, main), table)).collect();
    join(&texts, " + ", " - ")
}

pub fn render_poly(p: &LaurentPoly, table: &SymbolTable) -> String {
    let small = table.small_set();
    if small.is_empty() || p.support().iter().all(|v| !small.contains(v)) {
        let all = all_symbols(table);
        let mut terms: Vec<_> = p.terms().iter().collect();
        terms.sort_by(|a, b| graded_cmp(&a.0, &b.0, all));
        let texts: Vec<String> = terms.iter().map(|(m, c)| term_text(c, monomial_text(m, table, all))).collect();
        return join(&texts, " + ", " - ");
    }
    let mut groups: Vec<(Monomial, RationalExpr)> =
        p.split_by(small).into_iter().map(|(m, c)| (m, RationalExpr::from_poly(c))).collect();
    groups.sort_by(|a, b| graded_cmp(&a.0, &b.0, small));
    render_groups(groups, table, small)
}

pub fn render_series(s: &TruncatedSeries, table: &SymbolTable) -> String {
    let groups: Vec<(Monomial, RationalExpr)> =
        s.sorted_terms().into_iter().map(|(m, c)| (*m, c.clone())).collect();
    let body = render_groups(groups, table, s.small());
    format!("{body} + O(deg {})", s.order() + 1)
}

pub(crate) struct PolyDisplay<'a> {
    pub poly: &'a LaurentPoly,
    pub table: &'a SymbolTable,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_poly(self.poly, self.table))
    }
}

pub(crate) struct RatDisplay<'a> {
    pub expr: &'a RationalExpr,
    pub table: &'a SymbolTable,
}

impl fmt::Display for RatDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rational_inline(self.expr, self.table))
    }
}

pub(crate) struct SeriesDisplay<'a> {
    pub series: &'a TruncatedSeries,
    pub table: &'a SymbolTable,
}

impl fmt::Display for SeriesDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_series(self.series, self.table))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grouped_rendering() {
        let mut t = SymbolTable::new(1);
        let x = t.small("x");
        let y = t.small("y");
        let u = t.parameter("u");
        let v = t.parameter("v");
        let p = LaurentPoly::var(u) * LaurentPoly::var_pow(x, 2)
            + (LaurentPoly::one() + LaurentPoly::q_pow(&t, 1)) * LaurentPoly::var(x) * LaurentPoly::var(y)
            + LaurentPoly::var(v) * LaurentPoly::var_pow(y, 2);
        assert_eq!(render_poly(&p, &t), "u*x^2 + (1+q)*x*y + v*y^2");
    }

    #[test]
    fn plain_rendering_and_half_powers() {
        let t = SymbolTable::new(2);
        let p = LaurentPoly::one() - LaurentPoly::q_frac(&t, 1, 2).unwrap() + LaurentPoly::q_pow(&t, -1).scale(&ExactRational::from_i64(3));
        assert_eq!(render_poly(&p, &t), "3*q^(-1) + 1 - q^(1/2)");
        assert_eq!(render_poly(&LaurentPoly::zero(), &t), "0");
    }
}
