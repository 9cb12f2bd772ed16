//! Basis, elements, bracket and grading of W(2,2).

use std::fmt;

use serde::{Serialize, Serializer};

use crate::combination::Combination;
use crate::rational::{int, Rational};

/// One generator of the algebra.
///
/// The derived order is the canonical one: `c` first, then the `L` block by
/// index, then the `W` block by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisSymbol {
    C,
    L(i64),
    W(i64),
}

impl BasisSymbol {
    pub fn degree(self) -> i64 {
        match self {
            BasisSymbol::C => 0,
            BasisSymbol::L(n) | BasisSymbol::W(n) => n,
        }
    }

    pub fn index(self) -> Option<i64> {
        match self {
            BasisSymbol::C => None,
            BasisSymbol::L(n) | BasisSymbol::W(n) => Some(n),
        }
    }

    /// Absolute index; zero for `c`.
    pub fn height(self) -> i64 {
        self.index().map_or(0, i64::abs)
    }

    pub fn is_central(self) -> bool {
        matches!(self, BasisSymbol::C)
    }
}

impl fmt::Display for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisSymbol::C => write!(f, "c"),
            BasisSymbol::L(n) => write!(f, "L[{n}]"),
            BasisSymbol::W(n) => write!(f, "W[{n}]"),
        }
    }
}

impl Serialize for BasisSymbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Finitely supported rational combination of basis symbols.
pub type AlgebraElement = Combination<BasisSymbol>;

impl AlgebraElement {
    pub fn symbol(sym: BasisSymbol) -> Self {
        Combination::basis(sym)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Degree(pub i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Homogeneous(Degree),
    Inhomogeneous,
}

impl Homogeneity {
    pub fn degree(self) -> Option<i64> {
        match self {
            Homogeneity::Homogeneous(Degree(d)) => Some(d),
            Homogeneity::Inhomogeneous => None,
        }
    }
}

/// Homogeneity of a set of degrees; the empty set counts as degree 0.
pub(crate) fn homogeneity_of(degrees: impl IntoIterator<Item = i64>) -> Homogeneity {
    let mut found = None;
    for d in degrees {
        match found {
            None => found = Some(d),
            Some(prev) if prev != d => return Homogeneity::Inhomogeneous,
            Some(_) => {}
        }
    }
    Homogeneity::Homogeneous(Degree(found.unwrap_or(0)))
}

pub fn degree_of(x: &AlgebraElement) -> Homogeneity {
    homogeneity_of(x.keys().map(|s| s.degree()))
}

/// The finite sub-collection `{L_n, W_n : |n| <= radius} ∪ {c}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DegreeWindow {
    radius: u32,
}

impl DegreeWindow {
    pub fn new(radius: u32) -> Self {
        Self { radius }
    }

    pub fn radius(self) -> i64 {
        i64::from(self.radius)
    }

    pub fn contains(self, sym: BasisSymbol) -> bool {
        sym.height() <= self.radius()
    }

    pub fn contains_element(self, x: &AlgebraElement) -> bool {
        x.keys().all(|&s| self.contains(s))
    }

    /// The window shrunk by `margin` on both sides.
    pub fn shrink(self, margin: u32) -> Self {
        Self::new(self.radius.saturating_sub(margin))
    }

    /// All symbols of the window in canonical order.
    pub fn symbols(self) -> Vec<BasisSymbol> {
        let n = self.radius();
        let mut out = Vec::with_capacity(4 * self.radius as usize + 3);
        out.push(BasisSymbol::C);
        out.extend((-n..=n).map(BasisSymbol::L));
        out.extend((-n..=n).map(BasisSymbol::W));
        out
    }
}

/// Central coefficient `(m^3 - m)/12`.
fn central_charge(m: i64) -> Rational {
    let m = i128::from(m);
    Rational::new((m * m * m - m).into(), 12.into())
}

/// Bracket of two basis symbols as at most two `(symbol, coefficient)` terms.
pub fn bracket_symbols(a: BasisSymbol, b: BasisSymbol) -> Vec<(BasisSymbol, Rational)> {
    use BasisSymbol::*;
    let (m, n, target, sign): (i64, i64, fn(i64) -> BasisSymbol, i64) = match (a, b) {
        (L(m), L(n)) => (m, n, L, 1),
        (L(m), W(n)) => (m, n, W, 1),
        (W(m), L(n)) => (n, m, W, -1),
        _ => return Vec::new(),
    };
    let mut out = Vec::with_capacity(2);
    if m != n {
        out.push((target(m + n), int(sign * (m - n))));
    }
    if m + n == 0 {
        let z = central_charge(m);
        if z != int(0) {
            out.push((C, if sign < 0 { -z } else { z }));
        }
    }
    out
}

pub fn bracket(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (a, ca) in x {
        for (b, cb) in y {
            let k = ca * cb;
            for (s, coeff) in bracket_symbols(*a, *b) {
                out.add_term(s, coeff * &k);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorSet {
    /// Generates the whole algebra.
    Full,
    /// Generates the Virasoro subalgebra spanned by `L_n` and `c`.
    Virasoro,
}

pub fn generator_symbols(which: GeneratorSet) -> [BasisSymbol; 4] {
    use BasisSymbol::*;
    match which {
        GeneratorSet::Full => [L(-2), L(1), L(2), W(2)],
        GeneratorSet::Virasoro => [L(-2), L(-1), L(1), L(2)],
    }
}

pub fn generators(which: GeneratorSet) -> Vec<AlgebraElement> {
    generator_symbols(which)
        .into_iter()
        .map(AlgebraElement::symbol)
        .collect()
}
