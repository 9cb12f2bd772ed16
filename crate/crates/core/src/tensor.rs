//! Tensor square and cube of the algebra, the twist and cyclic maps, the
//! diagonal adjoint action and the quotient by the line spanned by `c⊗c`.

use std::fmt;

use serde::Serialize;

use crate::algebra::{bracket_symbols, homogeneity_of, AlgebraElement, BasisSymbol, Homogeneity};
use crate::combination::Combination;
use crate::rational::{rat, Rational};

pub type Pair = (BasisSymbol, BasisSymbol);
pub type Triple = (BasisSymbol, BasisSymbol, BasisSymbol);

/// Element of the tensor square.
pub type Tensor2 = Combination<Pair>;
/// Element of the tensor cube.
pub type Tensor3 = Combination<Triple>;

/// Keys of the tensor powers: ordered tuples of basis symbols.
///
/// The diagonal adjoint action is defined once for every power through
/// [`TensorKey::factors`] and [`TensorKey::with_factor`].
pub trait TensorKey: Ord + Clone + Send + Sync + fmt::Debug {
    const ARITY: usize;

    fn factors(&self) -> Vec<BasisSymbol>;

    fn from_factors(factors: &[BasisSymbol]) -> Self;

    fn with_factor(&self, slot: usize, sym: BasisSymbol) -> Self {
        let mut f = self.factors();
        f[slot] = sym;
        Self::from_factors(&f)
    }

    fn degree(&self) -> i64 {
        self.factors().into_iter().map(BasisSymbol::degree).sum()
    }

    /// Largest absolute index among the factors.
    fn height(&self) -> i64 {
        self.factors().into_iter().map(BasisSymbol::height).max().unwrap_or(0)
    }
}

impl TensorKey for BasisSymbol {
    const ARITY: usize = 1;

    fn factors(&self) -> Vec<BasisSymbol> {
        vec![*self]
    }

    fn from_factors(factors: &[BasisSymbol]) -> Self {
        factors[0]
    }

    fn with_factor(&self, _slot: usize, sym: BasisSymbol) -> Self {
        sym
    }
}

impl TensorKey for Pair {
    const ARITY: usize = 2;

    fn factors(&self) -> Vec<BasisSymbol> {
        vec![self.0, self.1]
    }

    fn from_factors(factors: &[BasisSymbol]) -> Self {
        (factors[0], factors[1])
    }

    fn with_factor(&self, slot: usize, sym: BasisSymbol) -> Self {
        match slot {
            0 => (sym, self.1),
            _ => (self.0, sym),
        }
    }
}

impl TensorKey for Triple {
    const ARITY: usize = 3;

    fn factors(&self) -> Vec<BasisSymbol> {
        vec![self.0, self.1, self.2]
    }

    fn from_factors(factors: &[BasisSymbol]) -> Self {
        (factors[0], factors[1], factors[2])
    }

    fn with_factor(&self, slot: usize, sym: BasisSymbol) -> Self {
        match slot {
            0 => (sym, self.1, self.2),
            1 => (self.0, sym, self.2),
            _ => (self.0, self.1, sym),
        }
    }
}

/// `x · key` for a single basis symbol `x` and a single basis tensor, as a
/// list of terms (possibly with repeated keys).
pub fn act_symbol_on_key<K: TensorKey>(x: BasisSymbol, key: &K) -> Vec<(K, Rational)> {
    let mut out = Vec::new();
    for (slot, f) in key.factors().into_iter().enumerate() {
        for (s, coeff) in bracket_symbols(x, f) {
            out.push((key.with_factor(slot, s), coeff));
        }
    }
    out
}

/// Diagonal adjoint action on any tensor power.
pub fn act<K: TensorKey>(x: &AlgebraElement, t: &Combination<K>) -> Combination<K> {
    let mut out = Combination::zero();
    for (sym, cx) in x {
        for (key, ct) in t {
            let k = cx * ct;
            for (image, coeff) in act_symbol_on_key(*sym, key) {
                out.add_term(image, coeff * &k);
            }
        }
    }
    out
}

/// `x · Σ a⊗b = Σ [x,a]⊗b + a⊗[x,b]`.
pub fn diag_act(x: &AlgebraElement, t: &Tensor2) -> Tensor2 {
    act(x, t)
}

/// Slotwise diagonal action on the tensor cube.
pub fn diag_act3(x: &AlgebraElement, t: &Tensor3) -> Tensor3 {
    act(x, t)
}

/// `τ(x⊗y) = y⊗x`.
pub fn twist(t: &Tensor2) -> Tensor2 {
    t.map_keys(|&(a, b)| (b, a))
}

/// `ξ(x1⊗x2⊗x3) = x2⊗x3⊗x1`.
pub fn cyclic(t: &Tensor3) -> Tensor3 {
    t.map_keys(|&(a, b, c)| (b, c, a))
}

/// `(1 + ξ + ξ²) t`.
pub fn cyclic_sum(t: &Tensor3) -> Tensor3 {
    let once = cyclic(t);
    let twice = cyclic(&once);
    let mut out = t.clone();
    out += &once;
    out += &twice;
    out
}

pub fn tensor2(a: &AlgebraElement, b: &AlgebraElement) -> Tensor2 {
    let mut out = Tensor2::zero();
    for (x, cx) in a {
        for (y, cy) in b {
            out.add_term((*x, *y), cx * cy);
        }
    }
    out
}

pub fn tensor3(a: &AlgebraElement, b: &AlgebraElement, c: &AlgebraElement) -> Tensor3 {
    let mut out = Tensor3::zero();
    for ((x, y), cxy) in &tensor2(a, b) {
        for (z, cz) in c {
            out.add_term((*x, *y, *z), cxy * cz);
        }
    }
    out
}

/// `a ∧ b = a⊗b − b⊗a`.
pub fn wedge(a: BasisSymbol, b: BasisSymbol) -> Tensor2 {
    let mut out = Tensor2::basis((a, b));
    out.add_term((b, a), -crate::rational::one());
    out
}

pub fn tensor_degree<K: TensorKey>(t: &Combination<K>) -> Homogeneity {
    homogeneity_of(t.keys().map(TensorKey::degree))
}

/// Splits `t` into its homogeneous components, keyed by degree.
pub fn homogeneous_parts<K: TensorKey>(
    t: &Combination<K>,
) -> std::collections::BTreeMap<i64, Combination<K>> {
    let mut out = std::collections::BTreeMap::<i64, Combination<K>>::new();
    for (k, c) in t {
        out.entry(k.degree())
            .or_default()
            .add_term(k.clone(), c.clone());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewDecomposition {
    /// `(t − τt)/2`, in `Im(1−τ)`.
    pub skew: Tensor2,
    /// `(t + τt)/2`.
    pub sym: Tensor2,
}

pub fn skew_project(t: &Tensor2) -> SkewDecomposition {
    let tw = twist(t);
    let half = rat(1, 2);
    SkewDecomposition {
        skew: (t - &tw).scaled(&half),
        sym: (t + &tw).scaled(&half),
    }
}

/// Membership in `Im(1−τ)`; equivalent to `τt = −t` since 2 is invertible.
pub fn is_skew(t: &Tensor2) -> bool {
    t.iter()
        .all(|(&(a, b), c)| t.coeff(&(b, a)) == -c.clone())
}

/// Canonical preimage `u` with `(1−τ)u = t` for skew `t`: the coefficients of
/// `t` on pairs `a⊗b` with `a < b`.
pub fn skew_preimage(t: &Tensor2) -> Option<Tensor2> {
    is_skew(t).then(|| t.filtered(|(a, b)| a < b))
}

const CC: Pair = (BasisSymbol::C, BasisSymbol::C);

/// Deletes the `c⊗c` term.
pub fn reduce_mod_cc(t: &Tensor2) -> Tensor2 {
    t.filtered(|k| *k != CC)
}

pub fn eq_mod_cc(s: &Tensor2, t: &Tensor2) -> bool {
    reduce_mod_cc(&(s - t)).is_zero()
}

/// Whether equality and zero tests on the tensor square are taken modulo the
/// line spanned by `c⊗c`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct QuotientFlag {
    pub modulo_cc: bool,
}

impl QuotientFlag {
    pub const EXACT: QuotientFlag = QuotientFlag { modulo_cc: false };
    pub const MODULO_CC: QuotientFlag = QuotientFlag { modulo_cc: true };

    pub fn reduce(self, t: &Tensor2) -> Tensor2 {
        if self.modulo_cc {
            reduce_mod_cc(t)
        } else {
            t.clone()
        }
    }

    pub fn keeps(self, key: &Pair) -> bool {
        !(self.modulo_cc && *key == CC)
    }

    pub fn eq(self, s: &Tensor2, t: &Tensor2) -> bool {
        self.reduce(&(s - t)).is_zero()
    }
}
