//! Independent oracles: dense Gauss-Jordan elimination over the rationals
//! and a word-level expansion of the Yang-Baxter commutators.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num::Zero;
use walg_core::algebra::bracket_symbols;
use walg_core::rational::int;
use walg_core::{BasisSymbol, Rational, Tensor2, Tensor3};

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot = rows[r].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Nullspace basis with one vector per free column (free entry 1, other
/// free entries 0).
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::from_integer(1.into());
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Whether two families of vectors span the same space.
pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>], ncols: usize) -> bool {
    let ra = rank(a, ncols);
    let rb = rank(b, ncols);
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    ra == rb && rank(&both, ncols) == ra
}

type Word = Vec<BasisSymbol>;
type WordTriple = (Word, Word, Word);

/// Sums of triples of noncommutative words.
#[derive(Default)]
struct Cube(BTreeMap<WordTriple, Rational>);

impl Cube {
    fn add(&mut self, key: WordTriple, c: Rational) {
        let e = self.0.entry(key).or_insert_with(|| int(0));
        *e += c;
    }

    /// Rewrites every length-two word `xy` with `x > y` as `yx + [x,y]`.
    fn normal_order(self) -> Cube {
        let mut out = Cube::default();
        let mut todo: Vec<(WordTriple, Rational)> = self.0.into_iter().collect();
        while let Some((key, c)) = todo.pop() {
            let slots = [&key.0, &key.1, &key.2];
            let bad = slots.iter().position(|w| w.len() == 2 && w[0] > w[1]);
            let Some(slot) = bad else {
                out.add(key, c);
                continue;
            };
            let w = slots[slot].clone();
            let mut swapped = key.clone();
            set_slot(&mut swapped, slot, vec![w[1], w[0]]);
            todo.push((swapped, c.clone()));
            for (s, k) in bracket_symbols(w[0], w[1]) {
                let mut reduced = key.clone();
                set_slot(&mut reduced, slot, vec![s]);
                todo.push((reduced, &c * &k));
            }
        }
        out.0.retain(|_, c| *c != int(0));
        out
    }
}

fn set_slot(key: &mut WordTriple, slot: usize, w: Word) {
    match slot {
        0 => key.0 = w,
        1 => key.1 = w,
        _ => key.2 = w,
    }
}

fn cat(a: BasisSymbol, b: BasisSymbol) -> Word {
    vec![a, b]
}

/// `[r12,r13] + [r12,r23] + [r13,r23]` term by term.
pub fn brute_force_c(r: &Tensor2) -> Tensor3 {
    let mut cube = Cube::default();
    for ((ai, bi), x) in r {
        for ((aj, bj), y) in r {
            let k = x * y;
            // [r12, r13]
            cube.add((cat(*ai, *aj), vec![*bi], vec![*bj]), k.clone());
            cube.add((cat(*aj, *ai), vec![*bi], vec![*bj]), -k.clone());
            // [r12, r23]
            cube.add((vec![*ai], cat(*bi, *aj), vec![*bj]), k.clone());
            cube.add((vec![*ai], cat(*aj, *bi), vec![*bj]), -k.clone());
            // [r13, r23]
            cube.add((vec![*ai], vec![*aj], cat(*bi, *bj)), k.clone());
            cube.add((vec![*ai], vec![*aj], cat(*bj, *bi)), -k);
        }
    }
    let ordered = cube.normal_order();
    let mut out = Tensor3::zero();
    for ((a, b, c), k) in ordered.0 {
        assert!(
            a.len() == 1 && b.len() == 1 && c.len() == 1,
            "quadratic words must cancel"
        );
        out.add_term((a[0], b[0], c[0]), k);
    }
    out
}
