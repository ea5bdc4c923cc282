use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of symbols a single table may declare.
pub const MAX_SYMBOLS: usize = 12;

/// Index of a symbol inside its [`SymbolTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub(crate) u8);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    /// Exact symbolic parameter; may carry negative exponents.
    Parameter,
    /// Series variable; series are truncated by total degree in these.
    Small,
}

/// A set of symbols, stored as a bit mask and iterated in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct SymbolSet(u16);

impl SymbolSet {
    pub fn empty() -> Self {
        SymbolSet(0)
    }

    pub fn single(v: Var) -> Self {
        SymbolSet(1 << v.0)
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & (1 << v.0) != 0
    }

    pub fn insert(&mut self, v: Var) {
        self.0 |= 1 << v.0;
    }

    pub fn union(self, other: SymbolSet) -> SymbolSet {
        SymbolSet(self.0 | other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Var> {
        (0..MAX_SYMBOLS as u8).filter(move |i| self.0 & (1 << i) != 0).map(Var)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct SymbolInfo {
    name: String,
    kind: SymbolKind,
}

/// Declared symbols for one computation.
///
/// Slot 0 is always the base. With `base_scale = s` the stored base variable
/// `p` satisfies `q = p^s`, so `q^(1/2)` is the integer power `p^(s/2)` when
/// `s` is even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolTable {
    symbols: Vec<SymbolInfo>,
    base_scale: u32,
}

impl SymbolTable {
    pub fn new(base_scale: u32) -> Self {
        Self::with_base_name("q", base_scale)
    }

    pub fn with_base_name(name: &str, base_scale: u32) -> Self {
        assert!(base_scale >= 1, "base scale must be positive");
        SymbolTable {
            symbols: vec![SymbolInfo { name: name.to_string(), kind: SymbolKind::Parameter }],
            base_scale,
        }
    }

    pub fn declare(&mut self, name: &str, kind: SymbolKind) -> Result<Var> {
        if self.symbols.iter().any(|s| s.name == name) {
            return Err(Error::DuplicateSymbol(name.to_string()));
        }
        if self.symbols.len() >= MAX_SYMBOLS {
            return Err(Error::TooManySymbols(MAX_SYMBOLS));
        }
        self.symbols.push(SymbolInfo { name: name.to_string(), kind });
        Ok(Var((self.symbols.len() - 1) as u8))
    }

    /// Declares a parameter; panics on duplicates (builder convenience).
    pub fn parameter(&mut self, name: &str) -> Var {
        self.declare(name, SymbolKind::Parameter).expect("declare parameter")
    }

    /// Declares a small (series) symbol; panics on duplicates.
    pub fn small(&mut self, name: &str) -> Var {
        self.declare(name, SymbolKind::Small).expect("declare small symbol")
    }

    pub fn set_kind(&mut self, v: Var, kind: SymbolKind) {
        self.symbols[v.index()].kind = kind;
    }

    pub fn base(&self) -> Var {
        Var(0)
    }

    pub fn base_scale(&self) -> u32 {
        self.base_scale
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        self.symbols.iter().position(|s| s.name == name).map(|i| Var(i as u8))
    }

    pub fn var(&self, name: &str) -> Result<Var> {
        self.lookup(name).ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn name(&self, v: Var) -> &str {
        &self.symbols[v.index()].name
    }

    pub fn kind(&self, v: Var) -> SymbolKind {
        self.symbols[v.index()].kind
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.symbols.len()).map(|i| Var(i as u8))
    }

    pub fn small_set(&self) -> SymbolSet {
        let mut s = SymbolSet::empty();
        for v in self.vars() {
            if self.kind(v) == SymbolKind::Small {
                s.insert(v);
            }
        }
        s
    }

    /// Exponent of the stored base variable representing `q^(num/den)`.
    pub fn base_exponent(&self, num: i64, den: i64) -> Result<i64> {
        let scaled = num * self.base_scale as i64;
        if scaled % den != 0 {
            return Err(Error::ScaleUnavailable { scale: self.base_scale, num, den });
        }
        Ok(scaled / den)
    }

    pub fn supports_sqrt_q(&self) -> bool {
        self.base_scale % 2 == 0
    }
}

impl fmt::Display for SymbolTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.symbols.iter().map(|s| s.name.as_str()).collect();
        write!(f, "[{}] (scale {})", names.join(", "), self.base_scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut t = SymbolTable::new(1);
        t.parameter("x");
        assert_eq!(t.declare("x", SymbolKind::Small), Err(Error::DuplicateSymbol("x".into())));
        assert_eq!(t.declare("q", SymbolKind::Small), Err(Error::DuplicateSymbol("q".into())));
    }

    #[test]
    fn half_powers_need_even_scale() {
        let t1 = SymbolTable::new(1);
        assert!(t1.base_exponent(1, 2).is_err());
        assert_eq!(t1.base_exponent(3, 1), Ok(3));
        let t2 = SymbolTable::new(2);
        assert_eq!(t2.base_exponent(1, 2), Ok(1));
        assert_eq!(t2.base_exponent(-3, 1), Ok(-6));
    }

    #[test]
    fn small_set_follows_declaration_order() {
        let mut t = SymbolTable::new(1);
        let z = t.small("z");
        let a = t.parameter("a");
        let b = t.small("b");
        let s = t.small_set();
        assert!(s.contains(z) && s.contains(b) && !s.contains(a));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![z, b]);
    }
}
