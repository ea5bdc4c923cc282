//! Exact scalars, Laurent polynomials, factored rational expressions and
//! truncated multivariate series.

pub mod context;
pub mod poly;
pub mod ratexpr;
pub mod rational;
pub mod render;
pub mod series;
pub mod symbols;

pub use context::SeriesCtx;
pub use poly::{LaurentPoly, Monomial};
pub use ratexpr::{Atom, RationalExpr};
pub use rational::ExactRational;
pub use series::{series_equal, SeriesComparison, TruncatedSeries};
pub use symbols::{SymbolKind, SymbolSet, SymbolTable, Var, MAX_SYMBOLS};
