//! Sparse exact linear algebra over the rationals.
//!
//! Rows are cleared of denominators on entry and eliminated fraction-free:
//! combining a row with a pivot row multiplies both by cofactors of the
//! leading entries and then divides out the content, so intermediate
//! integers stay small. Pivot columns follow the order of the unknown labels,
//! and the kernel basis is the reduced one (free variable `f` set to 1, all
//! other free variables 0, scaled so the first nonzero entry is 1). That basis
//! depends only on the row space, never on the order rows were supplied in.

use std::collections::BTreeMap;

use num::{BigInt, Integer, One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("row references undeclared unknown {0}")]
    UndeclaredUnknown(String),
}

/// Order in which constraint rows are fed to the eliminator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RowOrder {
    #[default]
    AsGiven,
    Reversed,
    Shuffled(u64),
}

impl RowOrder {
    pub fn apply<T>(self, rows: &mut [T]) {
        match self {
            RowOrder::AsGiven => {}
            RowOrder::Reversed => rows.reverse(),
            RowOrder::Shuffled(seed) => rows.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
        }
    }
}

type IntRow = Vec<(usize, BigInt)>;

fn content(row: &IntRow) -> BigInt {
    row.iter()
        .fold(BigInt::zero(), |g, (_, v)| g.gcd(v))
}

fn make_primitive(row: &mut IntRow) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// Clears denominators of a sparse rational row; entries must be sorted by
/// column and may contain zeros (which are dropped).
fn integer_row(row: &[(usize, Rational)]) -> IntRow {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |l, (_, v)| l.lcm(v.denom()));
    let mut out: IntRow = row
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

/// `a * x - b * y` on sparse sorted rows.
fn combine(x: &[(usize, BigInt)], a: &BigInt, y: &[(usize, BigInt)], b: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon form with integer rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, IntRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    fn reduce(&self, mut row: IntRow) -> IntRow {
        while let Some((lead, a)) = row.first().cloned() {
            let Some(p) = self.pivots.get(&lead) else {
                break;
            };
            let b = &p[0].1;
            let g = a.gcd(b);
            let mut next = combine(&row[1..], &(b / &g), &p[1..], &(&a / &g));
            make_primitive(&mut next);
            row = next;
        }
        row
    }

    /// Reduces `row` and stores it as a pivot. On a pivot clash the sparser
    /// of the two rows is kept and the other is reduced further, which keeps
    /// fill-in low whatever the insertion order.
    fn insert_int(&mut self, mut row: IntRow) -> bool {
        loop {
            let Some((lead, a)) = row.first().cloned() else {
                return false;
            };
            if a.is_negative() {
                for (_, x) in row.iter_mut() {
                    *x = -&*x;
                }
            }
            match self.pivots.get_mut(&lead) {
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(p) => {
                    if row.len() < p.len() {
                        std::mem::swap(p, &mut row);
                    }
                    let p = &self.pivots[&lead];
                    let (a, b) = (&row[0].1, &p[0].1);
                    let g = a.gcd(b);
                    let mut next = combine(&row[1..], &(b / &g), &p[1..], &(a / &g));
                    make_primitive(&mut next);
                    row = next;
                }
            }
        }
    }

    /// Inserts a sparse row (sorted by column). Returns whether it was
    /// independent of the rows already present.
    pub fn insert_sparse(&mut self, row: &[(usize, Rational)]) -> bool {
        self.insert_int(integer_row(row))
    }

    pub fn insert_dense(&mut self, row: &[Rational]) -> bool {
        let sparse: Vec<(usize, Rational)> = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        self.insert_sparse(&sparse)
    }

    /// Whether a dense row lies in the current row space.
    pub fn spans_dense(&self, row: &[Rational]) -> bool {
        let sparse: Vec<(usize, Rational)> = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        self.reduce(integer_row(&sparse)).is_empty()
    }

    /// For every column, its value as a sparse combination of the free
    /// variables (indexed by position in `free`).
    fn back_substitute(&self, free: &[usize]) -> Vec<BTreeMap<usize, Rational>> {
        let mut x: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); self.ncols];
        for (k, &f) in free.iter().enumerate() {
            x[f].insert(k, Rational::one());
        }
        for (&p, row) in self.pivots.iter().rev() {
            let lead = Rational::from_integer(row[0].1.clone());
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (j, a) in &row[1..] {
                let a = Rational::from_integer(a.clone());
                for (k, v) in &x[*j] {
                    let e = acc.entry(*k).or_insert_with(Rational::zero);
                    *e += &a * v;
                }
            }
            let scale = -lead.recip();
            x[p] = acc
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (k, v * &scale))
                .collect();
        }
        x
    }

    fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|c| !self.pivots.contains_key(c))
            .collect()
    }

    /// Reduced kernel basis, one vector per free column in increasing order,
    /// each normalized to first nonzero entry 1.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let free = self.free_columns();
        let x = self.back_substitute(&free);
        (0..free.len())
            .map(|k| {
                let mut v: Vec<Rational> = x
                    .iter()
                    .map(|m| m.get(&k).cloned().unwrap_or_else(Rational::zero))
                    .collect();
                normalize_first_nonzero(&mut v);
                v
            })
            .collect()
    }
}

pub fn normalize_first_nonzero(v: &mut [Rational]) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()).cloned() {
        if !first.is_one() {
            let inv = first.recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
        }
    }
}

/// Rank of a family of dense vectors.
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let ncols = vectors.first().map_or(0, Vec::len);
    let mut e = Echelon::new(ncols);
    for v in vectors {
        e.insert_dense(v);
    }
    e.rank()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Canonical particular solution (free variables zero), absent when the
    /// system is inconsistent.
    pub particular: Option<Vec<Rational>>,
    /// Reduced basis of the homogeneous solution space.
    pub kernel: Vec<Vec<Rational>>,
    pub rank: usize,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    pub row_order: RowOrder,
}

/// Sparse rational linear system over labelled unknowns.
///
/// Unknowns are kept in ascending label order, which is also the pivot order.
#[derive(Clone, Debug)]
pub struct LinearSystem<U: Ord + Clone> {
    unknowns: Vec<U>,
    index: BTreeMap<U, usize>,
    rows: Vec<(Vec<(usize, Rational)>, Rational)>,
}

impl<U: Ord + Clone + std::fmt::Debug> LinearSystem<U> {
    pub fn new(unknowns: impl IntoIterator<Item = U>) -> Self {
        let mut unknowns: Vec<U> = unknowns.into_iter().collect();
        unknowns.sort();
        unknowns.dedup();
        let index = unknowns
            .iter()
            .enumerate()
            .map(|(i, u)| (u.clone(), i))
            .collect();
        Self {
            unknowns,
            index,
            rows: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> &[U] {
        &self.unknowns
    }

    pub fn index_of(&self, u: &U) -> Option<usize> {
        self.index.get(u).copied()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Adds `Σ coeff·unknown = rhs`; repeated unknowns are summed.
    pub fn add_row(
        &mut self,
        coeffs: impl IntoIterator<Item = (U, Rational)>,
        rhs: Rational,
    ) -> Result<(), LinalgError> {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (u, c) in coeffs {
            let i = self
                .index_of(&u)
                .ok_or_else(|| LinalgError::UndeclaredUnknown(format!("{u:?}")))?;
            *acc.entry(i).or_insert_with(Rational::zero) += c;
        }
        self.push_indexed(acc, rhs);
        Ok(())
    }

    /// Adds a row already expressed in column indices.
    pub fn push_indexed(&mut self, coeffs: BTreeMap<usize, Rational>, rhs: Rational) {
        let row: Vec<(usize, Rational)> =
            coeffs.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if row.is_empty() && rhs.is_zero() {
            return;
        }
        self.rows.push((row, rhs));
    }

    fn echelon(&self, opts: SolveOptions, augmented: bool) -> Echelon {
        let n = self.unknowns.len();
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        opts.row_order.apply(&mut order);
        let mut e = Echelon::new(if augmented { n + 1 } else { n });
        for i in order {
            let (row, rhs) = &self.rows[i];
            if augmented && !rhs.is_zero() {
                let mut r = row.clone();
                r.push((n, -rhs.clone()));
                e.insert_sparse(&r);
            } else if !row.is_empty() {
                e.insert_sparse(row);
            }
        }
        e
    }

    /// Basis of the solution space of the homogeneous system (right-hand
    /// sides ignored).
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        self.nullspace_with(SolveOptions::default())
    }

    pub fn nullspace_with(&self, opts: SolveOptions) -> Vec<Vec<Rational>> {
        self.echelon(opts, false).kernel_basis()
    }

    pub fn solve(&self) -> Solution {
        self.solve_with(SolveOptions::default())
    }

    pub fn solve_with(&self, opts: SolveOptions) -> Solution {
        let n = self.unknowns.len();
        let e = self.echelon(opts, true);
        let rank = e.pivots.keys().filter(|&&p| p < n).count();
        if e.pivots.contains_key(&n) {
            let homogeneous = self.echelon(opts, false);
            return Solution {
                particular: None,
                kernel: homogeneous.kernel_basis(),
                rank,
            };
        }
        let free = e.free_columns();
        let x = e.back_substitute(&free);
        let column = |k: usize| -> Vec<Rational> {
            x[..n]
                .iter()
                .map(|m| m.get(&k).cloned().unwrap_or_else(Rational::zero))
                .collect()
        };
        let last = free.len() - 1;
        debug_assert_eq!(free[last], n);
        let kernel = (0..last)
            .map(|k| {
                let mut v = column(k);
                normalize_first_nonzero(&mut v);
                v
            })
            .collect();
        Solution {
            particular: Some(column(last)),
            kernel,
            rank,
        }
    }

    /// Evaluates every row at `x` and reports whether all hold.
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        self.rows.iter().all(|(row, rhs)| {
            let lhs: Rational = row.iter().map(|(i, c)| c * &x[*i]).sum();
            &lhs == rhs
        })
    }
}
