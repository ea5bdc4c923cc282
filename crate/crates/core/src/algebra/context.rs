use super::poly::LaurentPoly;
use super::ratexpr::RationalExpr;
use super::series::TruncatedSeries;
use super::symbols::{SymbolSet, SymbolTable, Var};
use crate::error::Result;

/// Symbol table plus truncation settings shared by series constructors.
#[derive(Clone, Copy, Debug)]
pub struct SeriesCtx<'a> {
    pub table: &'a SymbolTable,
    pub small: SymbolSet,
    pub order: u32,
}

impl<'a> SeriesCtx<'a> {
    /// Uses every small symbol declared in `table`.
    pub fn new(table: &'a SymbolTable, order: u32) -> Self {
        SeriesCtx { table, small: table.small_set(), order }
    }

    pub fn with_order(&self, order: u32) -> Self {
        SeriesCtx { order, ..*self }
    }

    pub fn q(&self, k: i64) -> LaurentPoly {
        LaurentPoly::q_pow(self.table, k)
    }

    pub fn q_frac(&self, num: i64, den: i64) -> Result<LaurentPoly> {
        LaurentPoly::q_frac(self.table, num, den)
    }

    pub fn var(&self, v: Var) -> LaurentPoly {
        LaurentPoly::var(v)
    }

    pub fn zero(&self) -> TruncatedSeries {
        TruncatedSeries::zero(self.small, self.order)
    }

    pub fn one(&self) -> TruncatedSeries {
        TruncatedSeries::one(self.small, self.order)
    }

    pub fn poly(&self, p: &LaurentPoly) -> Result<TruncatedSeries> {
        TruncatedSeries::from_poly(p, self.small, self.order)
    }

    pub fn rat(&self, r: &RationalExpr) -> Result<TruncatedSeries> {
        TruncatedSeries::from_rational(r, self.small, self.order)
    }

    /// Small degree of the lowest term of `p` (0 for constants and zero).
    pub fn valuation(&self, p: &LaurentPoly) -> i64 {
        p.min_degree_in(self.small).unwrap_or(0)
    }
}
