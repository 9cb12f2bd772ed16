//! Derivations of the algebra into its tensor square, invariant tensors,
//! skew reduction and the classification of cobracket tables.
//!
//! All solvers work on a finite window `|n| <= N`. Values of a derivation
//! are sought with every tensor factor index capped at `N + 2`, and images
//! that leave the cap still produce equations (they are never truncated), so
//! a windowed solution is a finitely supported one. Only conclusions on the
//! core band `|n| <= N - 2` are reported: near the window edge fewer bracket
//! relations are available and the system is under-determined there.

use std::collections::BTreeMap;

use num::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    bracket_symbols, generator_symbols, AlgebraElement, BasisSymbol, DegreeWindow, GeneratorSet,
};
use crate::bialgebra::{check_compatibility, mybe_check, CobracketTable, CybeReport};
use crate::combination::Combination;
use crate::linalg::{Echelon, LinearSystem, SolveOptions};
use crate::par;
use crate::rational::Rational;
use crate::tensor::{
    act_symbol_on_key, diag_act, homogeneous_parts, is_skew, skew_preimage, skew_project,
    tensor_degree, twist, Pair, QuotientFlag, Tensor2, Tensor3, TensorKey,
};

/// Minimum window radius for the derivation solver: the generators and their
/// pairwise brackets must fit.
pub const MIN_DERIVATION_RADIUS: i64 = 4;

/// Extra room beyond the window radius allowed for tensor factor indices.
pub const CAP_MARGIN: i64 = 2;

/// Width of the boundary band excluded from reported conclusions.
pub const CORE_MARGIN: u32 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("window radius {radius} is too small (need at least {required})")]
    WindowTooSmall { radius: i64, required: i64 },
    #[error("seed tensor is not homogeneous")]
    InhomogeneousSeed,
    #[error("tensor power {0} is not supported (expected 1, 2 or 3)")]
    UnsupportedPower(usize),
    #[error("table is not a 1-cocycle: compatibility fails at ({x}, {y})")]
    NotACocycle { x: BasisSymbol, y: BasisSymbol },
    #[error("degree {degree} slice has no inner representative in the window")]
    NoInnerRepresentative { degree: i64 },
}

/// A degree-homogeneous linear map from the algebra to its tensor square,
/// given by its values on the symbols of a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationTable {
    pub degree: i64,
    pub window: DegreeWindow,
    pub values: BTreeMap<BasisSymbol, Tensor2>,
    pub modulo_cc: QuotientFlag,
}

impl DerivationTable {
    pub fn value(&self, s: BasisSymbol) -> Tensor2 {
        self.values.get(&s).cloned().unwrap_or_else(Tensor2::zero)
    }

    /// The same map on a smaller window.
    pub fn restrict(&self, window: DegreeWindow) -> Self {
        Self {
            degree: self.degree,
            window,
            values: self
                .values
                .iter()
                .filter(|(s, _)| window.contains(**s))
                .map(|(s, v)| (*s, v.clone()))
                .collect(),
            modulo_cc: self.modulo_cc,
        }
    }

    /// Every value lies in degree `deg(x) + degree`.
    pub fn is_homogeneous(&self) -> bool {
        self.values
            .iter()
            .all(|(s, v)| v.keys().all(|k| k.degree() == s.degree() + self.degree))
    }

    /// Equality on the symbols of `window`, modulo `c⊗c` when either side
    /// carries the quotient flag.
    pub fn agrees_on(&self, other: &DerivationTable, window: DegreeWindow) -> bool {
        let q = QuotientFlag {
            modulo_cc: self.modulo_cc.modulo_cc || other.modulo_cc.modulo_cc,
        };
        window
            .symbols()
            .into_iter()
            .all(|s| q.eq(&self.value(s), &other.value(s)))
    }

    /// Whether the table is `x ↦ x·γ` on `window` with
    /// `γ = −degree⁻¹ · values(L_0)`. Only meaningful for nonzero degree.
    pub fn matches_closed_form(&self, window: DegreeWindow) -> bool {
        if self.degree == 0 {
            return false;
        }
        let gamma = self
            .value(BasisSymbol::L(0))
            .scaled(&-Rational::from_integer(self.degree.into()).recip());
        window.symbols().into_iter().all(|s| {
            self.modulo_cc
                .eq(&self.value(s), &diag_act(&AlgebraElement::symbol(s), &gamma))
        })
    }
}

/// The inner derivation `x ↦ x·v` on `window`.
pub fn inner_derivation(v: &Tensor2, window: DegreeWindow) -> Result<DerivationTable, CohomologyError> {
    let degree = tensor_degree(v)
        .degree()
        .ok_or(CohomologyError::InhomogeneousSeed)?;
    let symbols = window.symbols();
    let values = par::map(&symbols, |&s| diag_act(&AlgebraElement::symbol(s), v));
    Ok(DerivationTable {
        degree,
        window,
        values: symbols.into_iter().zip(values).collect(),
        modulo_cc: QuotientFlag::EXACT,
    })
}

/// Basis tensors of degree `d` whose factor indices are at most `cap`.
pub fn graded_pairs(d: i64, cap: i64) -> Vec<Pair> {
    use BasisSymbol::*;
    let mut out = Vec::new();
    for p in -cap..=cap {
        let q = d - p;
        if q.abs() > cap {
            continue;
        }
        out.extend([(L(p), L(q)), (L(p), W(q)), (W(p), L(q)), (W(p), W(q))]);
    }
    if d.abs() <= cap {
        out.extend([(L(d), C), (C, L(d)), (W(d), C), (C, W(d))]);
    }
    if d == 0 {
        out.push((C, C));
    }
    out.sort();
    out
}

/// Column label of the derivation system. Outer symbols sort first so they
/// are eliminated in terms of the inner ones, which keeps fill-in low.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Coordinate {
    band: i64,
    symbol: BasisSymbol,
    coord: Pair,
}

impl Coordinate {
    fn new(symbol: BasisSymbol, coord: Pair) -> Self {
        let band = if symbol.is_central() { 1 } else { -symbol.height() };
        Self { band, symbol, coord }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DerivationOptions {
    pub modulo_cc: bool,
    pub solve: SolveOptions,
}

/// Solution space of the windowed derivation system together with the inner
/// derivations that live in the same ansatz.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    pub degree: i64,
    pub window: DegreeWindow,
    pub cap: i64,
    pub modulo_cc: QuotientFlag,
    pub solutions: Vec<DerivationTable>,
    pub inner: Vec<DerivationTable>,
    pub seeds: Vec<Tensor2>,
    pub equations: usize,
    pub unknowns: usize,
}

struct Ansatz {
    window: DegreeWindow,
    degree: i64,
    quotient: QuotientFlag,
    columns: Vec<Coordinate>,
    by_symbol: BTreeMap<BasisSymbol, Vec<(Pair, usize)>>,
}

impl Ansatz {
    fn new(degree: i64, window: DegreeWindow, cap: i64, quotient: QuotientFlag) -> Self {
        let mut columns: Vec<Coordinate> = window
            .symbols()
            .into_iter()
            .flat_map(|s| {
                graded_pairs(s.degree() + degree, cap)
                    .into_iter()
                    .filter(|k| quotient.keeps(k))
                    .map(move |k| Coordinate::new(s, k))
            })
            .collect();
        columns.sort();
        let mut by_symbol: BTreeMap<BasisSymbol, Vec<(Pair, usize)>> = BTreeMap::new();
        for (i, c) in columns.iter().enumerate() {
            by_symbol.entry(c.symbol).or_default().push((c.coord, i));
        }
        Self {
            window,
            degree,
            quotient,
            columns,
            by_symbol,
        }
    }

    fn cols(&self, s: BasisSymbol) -> &[(Pair, usize)] {
        self.by_symbol.get(&s).map_or(&[], Vec::as_slice)
    }

    /// Rows of `D([x,y]) − x·D(y) + y·D(x) = 0`, one per output coordinate.
    fn pair_rows(&self, x: BasisSymbol, y: BasisSymbol) -> Vec<BTreeMap<usize, Rational>> {
        let mut acc: BTreeMap<Pair, BTreeMap<usize, Rational>> = BTreeMap::new();
        let mut add = |img: Pair, col: usize, k: Rational| {
            if self.quotient.keeps(&img) {
                *acc.entry(img)
                    .or_default()
                    .entry(col)
                    .or_insert_with(Rational::zero) += k;
            }
        };
        for (s, k) in bracket_symbols(x, y) {
            for &(coord, col) in self.cols(s) {
                add(coord, col, k.clone());
            }
        }
        for &(coord, col) in self.cols(y) {
            for (img, k) in act_symbol_on_key(x, &coord) {
                add(img, col, -k);
            }
        }
        for &(coord, col) in self.cols(x) {
            for (img, k) in act_symbol_on_key(y, &coord) {
                add(img, col, k);
            }
        }
        acc.into_values()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .filter(|row: &BTreeMap<usize, Rational>| !row.is_empty())
            .collect()
    }

    fn table_from_vector(&self, v: &[Rational]) -> DerivationTable {
        let mut values: BTreeMap<BasisSymbol, Tensor2> = self
            .window
            .symbols()
            .into_iter()
            .map(|s| (s, Tensor2::zero()))
            .collect();
        for (c, x) in self.columns.iter().zip(v) {
            if !x.is_zero() {
                values
                    .get_mut(&c.symbol)
                    .expect("column symbol in window")
                    .add_term(c.coord, x.clone());
            }
        }
        DerivationTable {
            degree: self.degree,
            window: self.window,
            values,
            modulo_cc: self.quotient,
        }
    }

    fn vector_from_table(&self, t: &DerivationTable) -> Vec<Rational> {
        self.columns
            .iter()
            .map(|c| {
                t.values
                    .get(&c.symbol)
                    .map_or_else(Rational::zero, |v| v.coeff(&c.coord))
            })
            .collect()
    }

    fn core_projection(&self, v: &[Rational], core: DegreeWindow) -> Vec<Rational> {
        self.columns
            .iter()
            .zip(v)
            .filter(|(c, _)| core.contains(c.symbol))
            .map(|(_, x)| x.clone())
            .collect()
    }
}

impl DerivationSpace {
    /// Whether `table` lies in the span of the windowed solutions.
    pub fn contains(&self, table: &DerivationTable) -> bool {
        let ansatz = Ansatz::new(self.degree, self.window, self.cap, self.modulo_cc);
        let fits = self.window.symbols().into_iter().all(|s| {
            let v = self.modulo_cc.reduce(&table.value(s));
            ansatz.cols(s).len() >= v.len()
                && v.keys().all(|k| ansatz.cols(s).iter().any(|(c, _)| c == k))
        });
        if !fits {
            return false;
        }
        let mut span = Echelon::new(ansatz.columns.len());
        for t in &self.solutions {
            span.insert_dense(&ansatz.vector_from_table(t));
        }
        let mut reduced = table.clone();
        for v in reduced.values.values_mut() {
            *v = self.modulo_cc.reduce(v);
        }
        span.spans_dense(&ansatz.vector_from_table(&reduced))
    }
}

/// Seeds `v` of the given degree (factor indices within `cap`) whose inner
/// derivation keeps every window value inside the cap.
fn inner_seeds(
    degree: i64,
    window: DegreeWindow,
    cap: i64,
    quotient: QuotientFlag,
    opts: SolveOptions,
) -> Vec<Tensor2> {
    let coords: Vec<Pair> = graded_pairs(degree, cap)
        .into_iter()
        .filter(|k| quotient.keeps(k) && *k != (BasisSymbol::C, BasisSymbol::C))
        .collect();
    let mut sys = LinearSystem::new(coords.iter().copied());
    let symbols = window.symbols();
    let rows = par::flat_map(&symbols, |&x| {
        let mut acc: BTreeMap<Pair, BTreeMap<usize, Rational>> = BTreeMap::new();
        for (i, u) in coords.iter().enumerate() {
            for (img, k) in act_symbol_on_key(x, u) {
                if img.height() > cap {
                    *acc.entry(img)
                        .or_default()
                        .entry(i)
                        .or_insert_with(Rational::zero) += k;
                }
            }
        }
        acc.into_values().collect::<Vec<_>>()
    });
    for row in rows {
        sys.push_indexed(row, Rational::zero());
    }
    sys.nullspace_with(opts)
        .into_iter()
        .map(|v| {
            sys.unknowns()
                .iter()
                .zip(v)
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (*k, x))
                .collect()
        })
        .collect()
}

fn check_radius(window: DegreeWindow) -> Result<(), CohomologyError> {
    if window.radius() < MIN_DERIVATION_RADIUS {
        return Err(CohomologyError::WindowTooSmall {
            radius: window.radius(),
            required: MIN_DERIVATION_RADIUS,
        });
    }
    Ok(())
}

/// Solves the windowed derivation system of degree `degree`.
pub fn derivation_space(
    degree: i64,
    window: DegreeWindow,
    opts: DerivationOptions,
) -> Result<DerivationSpace, CohomologyError> {
    check_radius(window)?;
    let cap = window.radius() + CAP_MARGIN;
    let quotient = QuotientFlag {
        modulo_cc: opts.modulo_cc,
    };
    let ansatz = Ansatz::new(degree, window, cap, quotient);
    let symbols = window.symbols();
    let pairs: Vec<(BasisSymbol, BasisSymbol)> = symbols
        .iter()
        .enumerate()
        .flat_map(|(i, &x)| symbols[i + 1..].iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| {
            bracket_symbols(x, y)
                .iter()
                .all(|(s, _)| window.contains(*s))
        })
        .collect();
    let rows = par::flat_map(&pairs, |&(x, y)| ansatz.pair_rows(x, y));
    let mut sys = LinearSystem::new(ansatz.columns.iter().copied());
    let equations = rows.len();
    for row in rows {
        sys.push_indexed(row, Rational::zero());
    }
    let kernel = sys.nullspace_with(opts.solve);
    let solutions: Vec<DerivationTable> =
        kernel.iter().map(|v| ansatz.table_from_vector(v)).collect();

    let seeds = inner_seeds(degree, window, cap, quotient, opts.solve);
    let inner = par::map(&seeds, |v| {
        let mut t = inner_derivation(v, window).expect("seeds are homogeneous");
        t.degree = degree;
        t.modulo_cc = quotient;
        for value in t.values.values_mut() {
            *value = quotient.reduce(value);
        }
        t
    });
    Ok(DerivationSpace {
        degree,
        window,
        cap,
        modulo_cc: quotient,
        solutions,
        inner,
        seeds,
        equations,
        unknowns: ansatz.columns.len(),
    })
}

/// First-cohomology report for one degree on a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub degree: i64,
    pub window: DegreeWindow,
    pub modulo_cc: bool,
    pub core_radius: i64,
    pub dim_derivations_window: usize,
    pub dim_inner_window: usize,
    pub dim_derivations_core: usize,
    pub dim_inner_core: usize,
    /// Core restrictions of derivations spanning a complement of the inner ones.
    pub quotient_basis: Vec<DerivationTable>,
    /// Whether every inner derivation in the ansatz solves the system.
    pub inner_are_cocycles: bool,
}

impl CohomologyReport {
    pub fn quotient_dim(&self) -> usize {
        self.quotient_basis.len()
    }
}

pub fn solve_derivations(
    degree: i64,
    window: DegreeWindow,
    modulo_cc: bool,
) -> Result<CohomologyReport, CohomologyError> {
    solve_derivations_with(
        degree,
        window,
        DerivationOptions {
            modulo_cc,
            ..Default::default()
        },
    )
}

pub fn solve_derivations_with(
    degree: i64,
    window: DegreeWindow,
    opts: DerivationOptions,
) -> Result<CohomologyReport, CohomologyError> {
    let space = derivation_space(degree, window, opts)?;
    Ok(report_from_space(&space))
}

pub fn report_from_space(space: &DerivationSpace) -> CohomologyReport {
    let cap = space.cap;
    let ansatz = Ansatz::new(space.degree, space.window, cap, space.modulo_cc);
    let core = space.window.shrink(CORE_MARGIN);
    let sol_vecs: Vec<Vec<Rational>> = space
        .solutions
        .iter()
        .map(|t| ansatz.vector_from_table(t))
        .collect();
    let inner_vecs: Vec<Vec<Rational>> = space
        .inner
        .iter()
        .map(|t| ansatz.vector_from_table(t))
        .collect();

    let mut sol_span = Echelon::new(ansatz.columns.len());
    for v in &sol_vecs {
        sol_span.insert_dense(v);
    }
    let inner_are_cocycles = inner_vecs.iter().all(|v| sol_span.spans_dense(v));

    let core_cols = ansatz
        .columns
        .iter()
        .filter(|c| core.contains(c.symbol))
        .count();
    let mut inner_core = Echelon::new(core_cols);
    for v in &inner_vecs {
        inner_core.insert_dense(&ansatz.core_projection(v, core));
    }
    let dim_inner_core = inner_core.rank();
    let mut quotient_basis = Vec::new();
    let mut all_core = inner_core.clone();
    for (v, t) in sol_vecs.iter().zip(&space.solutions) {
        if all_core.insert_dense(&ansatz.core_projection(v, core)) {
            quotient_basis.push(t.restrict(core));
        }
    }
    let mut sol_core = Echelon::new(core_cols);
    for v in &sol_vecs {
        sol_core.insert_dense(&ansatz.core_projection(v, core));
    }
    CohomologyReport {
        degree: space.degree,
        window: space.window,
        modulo_cc: space.modulo_cc.modulo_cc,
        core_radius: core.radius(),
        dim_derivations_window: space.solutions.len(),
        dim_inner_window: space.inner.len(),
        dim_derivations_core: sol_core.rank(),
        dim_inner_core,
        quotient_basis,
        inner_are_cocycles,
    }
}

/// Basis of the invariants of a tensor power, in the matching tensor type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum InvariantBasis {
    One(Vec<AlgebraElement>),
    Two(Vec<Tensor2>),
    Three(Vec<Tensor3>),
}

impl InvariantBasis {
    pub fn dim(&self) -> usize {
        match self {
            InvariantBasis::One(b) => b.len(),
            InvariantBasis::Two(b) => b.len(),
            InvariantBasis::Three(b) => b.len(),
        }
    }

    pub fn render(&self) -> Vec<String> {
        match self {
            InvariantBasis::One(b) => b.iter().map(ToString::to_string).collect(),
            InvariantBasis::Two(b) => b.iter().map(ToString::to_string).collect(),
            InvariantBasis::Three(b) => b.iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct InvariantColumn<K> {
    band: i64,
    key: K,
}

/// Tensors with all factors in `window` killed by every generator. Images may
/// leave the window; they are kept as equations.
pub fn invariants_of<K: TensorKey>(window: DegreeWindow, opts: SolveOptions) -> Vec<Combination<K>> {
    let symbols = window.symbols();
    let mut keys: Vec<Vec<BasisSymbol>> = vec![Vec::new()];
    for _ in 0..K::ARITY {
        keys = keys
            .into_iter()
            .flat_map(|prefix| {
                symbols.iter().map(move |&s| {
                    let mut k = prefix.clone();
                    k.push(s);
                    k
                })
            })
            .collect();
    }
    let columns: Vec<InvariantColumn<K>> = keys
        .iter()
        .map(|f| {
            let key = K::from_factors(f);
            InvariantColumn {
                band: -key.height(),
                key,
            }
        })
        .collect();
    let mut sys = LinearSystem::new(columns);
    let cols: Vec<(K, usize)> = sys
        .unknowns()
        .iter()
        .enumerate()
        .map(|(i, c)| (c.key.clone(), i))
        .collect();
    let gens = generator_symbols(GeneratorSet::Full);
    let rows = par::flat_map(&gens, |&g| {
        let mut acc: BTreeMap<K, BTreeMap<usize, Rational>> = BTreeMap::new();
        for (key, col) in &cols {
            for (img, k) in act_symbol_on_key(g, key) {
                *acc.entry(img)
                    .or_default()
                    .entry(*col)
                    .or_insert_with(Rational::zero) += k;
            }
        }
        acc.into_values()
            .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect::<Vec<BTreeMap<usize, Rational>>>()
    });
    for row in rows {
        sys.push_indexed(row, Rational::zero());
    }
    sys.nullspace_with(opts)
        .into_iter()
        .map(|v| {
            cols.iter()
                .zip(v)
                .filter(|(_, x)| !x.is_zero())
                .map(|((k, _), x)| (k.clone(), x))
                .collect()
        })
        .collect()
}

pub fn solve_invariants(power: usize, window: DegreeWindow) -> Result<InvariantBasis, CohomologyError> {
    solve_invariants_with(power, window, SolveOptions::default())
}

pub fn solve_invariants_with(
    power: usize,
    window: DegreeWindow,
    opts: SolveOptions,
) -> Result<InvariantBasis, CohomologyError> {
    match power {
        1 => Ok(InvariantBasis::One(invariants_of::<BasisSymbol>(window, opts))),
        2 => Ok(InvariantBasis::Two(invariants_of::<Pair>(window, opts))),
        3 => Ok(InvariantBasis::Three(invariants_of::<crate::tensor::Triple>(
            window, opts,
        ))),
        n => Err(CohomologyError::UnsupportedPower(n)),
    }
}

/// Outcome of reducing a tensor to a skew representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewReduction {
    pub modulo_cc: bool,
    /// Every generator `g` has `g·v` skew.
    pub hypothesis_holds: bool,
    pub failing_generator: Option<BasisSymbol>,
    /// `v` itself is skew (after the quotient, if requested).
    pub in_image: bool,
    /// `u` with `(1−τ)u = v`, when `v` is skew.
    pub preimage: Option<Tensor2>,
    /// `g·v + τ(g·v)` for the first failing generator, or `v + τv` when the
    /// hypothesis holds but `v` is not skew; zero otherwise.
    pub obstruction: Tensor2,
}

/// Strict skew reduction, no quotient.
pub fn skew_reduce(v: &Tensor2) -> SkewReduction {
    skew_reduce_with(v, QuotientFlag::EXACT)
}

pub fn skew_reduce_with(v: &Tensor2, quotient: QuotientFlag) -> SkewReduction {
    let v = quotient.reduce(v);
    let in_image = is_skew(&v);
    let preimage = skew_preimage(&v);
    for g in generator_symbols(GeneratorSet::Full) {
        let w = quotient.reduce(&diag_act(&AlgebraElement::symbol(g), &v));
        if !is_skew(&w) {
            return SkewReduction {
                modulo_cc: quotient.modulo_cc,
                hypothesis_holds: false,
                failing_generator: Some(g),
                in_image,
                preimage,
                obstruction: quotient.reduce(&(&w + &twist(&w))),
            };
        }
    }
    let obstruction = if in_image {
        Tensor2::zero()
    } else {
        &v + &twist(&v)
    };
    SkewReduction {
        modulo_cc: quotient.modulo_cc,
        hypothesis_holds: true,
        failing_generator: None,
        in_image,
        preimage,
        obstruction,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceSolution {
    pub degree: i64,
    pub v: Tensor2,
}

/// Verdict that a cobracket table is the coboundary of a skew solution of
/// the classical Yang-Baxter equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangularCertificate {
    pub window: DegreeWindow,
    pub core_radius: i64,
    pub slices: Vec<SliceSolution>,
    pub r: Tensor2,
    pub skew_ok: bool,
    pub cybe_ok: bool,
    pub cybe: CybeReport,
    /// Per core symbol: `Δ(x) = x·r`.
    pub cocycle_match: BTreeMap<BasisSymbol, bool>,
}

impl TriangularCertificate {
    pub fn is_valid(&self) -> bool {
        self.skew_ok && self.cybe_ok && self.cocycle_match.values().all(|&ok| ok)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ClassifyOptions {
    pub solve: SolveOptions,
}

/// Finds `v` of degree `degree` with `x·v = Δ_degree(x)` for every core symbol.
fn solve_slice(
    table: &CobracketTable,
    degree: i64,
    core: DegreeWindow,
    cap: i64,
    opts: SolveOptions,
) -> Result<Tensor2, CohomologyError> {
    let coords = graded_pairs(degree, cap);
    let mut sys = LinearSystem::new(coords.iter().copied());
    let symbols = core.symbols();
    let rows = par::flat_map(&symbols, |&x| {
        let target = table
            .get(x)
            .map(|t| t.filtered(|k| k.degree() == x.degree() + degree))
            .unwrap_or_default();
        let mut acc: BTreeMap<Pair, (BTreeMap<usize, Rational>, Rational)> = BTreeMap::new();
        for (i, u) in coords.iter().enumerate() {
            for (img, k) in act_symbol_on_key(x, u) {
                *acc.entry(img)
                    .or_default()
                    .0
                    .entry(i)
                    .or_insert_with(Rational::zero) += k;
            }
        }
        for (k, c) in &target {
            acc.entry(*k).or_default().1 += c;
        }
        acc.into_values().collect::<Vec<_>>()
    });
    for (row, rhs) in rows {
        sys.push_indexed(row, rhs);
    }
    let sol = sys.solve_with(opts);
    let x = sol
        .particular
        .ok_or(CohomologyError::NoInnerRepresentative { degree })?;
    Ok(coords.into_iter().zip(x).filter(|(_, c)| !c.is_zero()).collect())
}

pub fn classify(table: &CobracketTable) -> Result<TriangularCertificate, CohomologyError> {
    classify_with(table, ClassifyOptions::default())
}

/// Recovers `r` from a cocycle table: splits the table into homogeneous
/// slices, realizes each slice as an inner derivation on the core, sums the
/// seeds, replaces the sum by its skew part when the symmetric part is
/// invariant, and checks the Yang-Baxter equation.
pub fn classify_with(
    table: &CobracketTable,
    opts: ClassifyOptions,
) -> Result<TriangularCertificate, CohomologyError> {
    let window = table.window;
    if window.radius() < i64::from(CORE_MARGIN) + 1 {
        return Err(CohomologyError::WindowTooSmall {
            radius: window.radius(),
            required: i64::from(CORE_MARGIN) + 1,
        });
    }
    let compat = check_compatibility(table);
    if let Some(f) = compat.failures.first() {
        return Err(CohomologyError::NotACocycle { x: f.x, y: f.y });
    }
    let core = window.shrink(CORE_MARGIN);
    let cap = window.radius() + CAP_MARGIN;

    let mut degrees: Vec<i64> = table
        .values
        .iter()
        .flat_map(|(s, v)| {
            homogeneous_parts(v)
                .into_keys()
                .map(move |d| d - s.degree())
        })
        .collect();
    degrees.sort_unstable();
    degrees.dedup();

    let solved = par::map(&degrees, |&d| {
        solve_slice(table, d, core, cap, opts.solve).map(|v| SliceSolution { degree: d, v })
    });
    let slices: Vec<SliceSolution> = solved.into_iter().collect::<Result<_, _>>()?;
    let mut r = Tensor2::zero();
    for s in &slices {
        r += &s.v;
    }

    let reduction = skew_reduce_with(&r, QuotientFlag::MODULO_CC);
    let skew_ok = reduction.in_image;
    if skew_ok {
        r = skew_project(&r).skew;
    }
    let cybe = mybe_check(&r);
    let symbols = core.symbols();
    let matches = par::map(&symbols, |&x| {
        table.get(x).cloned().unwrap_or_default() == diag_act(&AlgebraElement::symbol(x), &r)
    });
    Ok(TriangularCertificate {
        window,
        core_radius: core.radius(),
        slices,
        skew_ok,
        cybe_ok: cybe.is_cybe,
        cybe,
        cocycle_match: symbols.into_iter().zip(matches).collect(),
        r,
    })
}
