mod common;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use walg_core::bialgebra::CheckStatus;
use walg_core::cohomology::{
    classify, derivation_space, graded_pairs, inner_derivation, skew_reduce, skew_reduce_with,
    solve_derivations, solve_invariants, CohomologyError, DerivationOptions, DerivationTable,
    InvariantBasis,
};
use walg_core::linalg::LinearSystem;
use walg_core::rational::{int, rat};
use walg_core::report::verify_bialgebra;
use walg_core::tensor::{is_skew, wedge, Pair};
use walg_core::{
    bracket, check_compatibility, diag_act, AlgebraElement, BasisSymbol, CobracketTable,
    DegreeWindow, QuotientFlag, Rational, Tensor2,
};
use BasisSymbol::*;

fn sym(s: BasisSymbol) -> AlgebraElement {
    AlgebraElement::symbol(s)
}

/// Dense system `g·r = 0` over all window pairs, built from `bracket` alone.
#[test]
fn pair_invariants_match_dense_oracle() {
    let window = DegreeWindow::new(3);
    let symbols = window.symbols();
    let pairs: Vec<Pair> = symbols
        .iter()
        .flat_map(|&a| symbols.iter().map(move |&b| (a, b)))
        .collect();
    let col: BTreeMap<Pair, usize> = pairs.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut rows: BTreeMap<(BasisSymbol, Pair), Vec<Rational>> = BTreeMap::new();
    for g in walg_core::generators(walg_core::GeneratorSet::Full) {
        let gs = *g.keys().next().unwrap();
        for &(a, b) in &pairs {
            for (s, k) in &bracket(&g, &sym(a)) {
                rows.entry((gs, (*s, b)))
                    .or_insert_with(|| vec![int(0); pairs.len()])[col[&(a, b)]] += k;
            }
            for (s, k) in &bracket(&g, &sym(b)) {
                rows.entry((gs, (a, *s)))
                    .or_insert_with(|| vec![int(0); pairs.len()])[col[&(a, b)]] += k;
            }
        }
    }
    let rows: Vec<Vec<Rational>> = rows.into_values().collect();
    let oracle = common::nullspace(&rows, pairs.len());
    let InvariantBasis::Two(basis) = solve_invariants(2, window).unwrap() else {
        panic!("wrong tensor power");
    };
    let dense: Vec<Vec<Rational>> = basis
        .iter()
        .map(|t| pairs.iter().map(|p| t.coeff(p)).collect())
        .collect();
    assert_eq!(oracle.len(), 1);
    assert!(common::same_span(&dense, &oracle, pairs.len()));
    assert_eq!(basis, vec![Tensor2::basis((C, C))]);
}

#[test]
fn cube_invariants() {
    let InvariantBasis::Three(b) = solve_invariants(3, DegreeWindow::new(2)).unwrap() else {
        panic!("wrong tensor power");
    };
    assert_eq!(b.len(), 1);
    assert_eq!(b[0].len(), 1);
    assert!(b[0].contains(&(C, C, C)));
}

#[test]
fn inner_derivation_examples() {
    let w = DegreeWindow::new(4);
    let t = inner_derivation(&Tensor2::basis((W(2), L(0))), w).unwrap();
    assert_eq!(
        t.value(L(1)),
        Tensor2::from_terms([((W(3), L(0)), int(-1)), ((W(2), L(1)), int(1))])
    );
    assert!(t.is_homogeneous());
    assert!(matches!(
        inner_derivation(&(&Tensor2::basis((L(1), L(0))) + &Tensor2::basis((C, C))), w),
        Err(CohomologyError::InhomogeneousSeed)
    ));
}

fn random_seed(rng: &mut ChaCha8Rng, degree: i64, radius: i64) -> Tensor2 {
    let choices: Vec<Pair> = graded_pairs(degree, radius);
    let mut v = Tensor2::zero();
    for _ in 0..4 {
        let k = choices[rng.gen_range(0..choices.len())];
        v.add_term(k, rat(rng.gen_range(-4..=4), rng.gen_range(1..=2)));
    }
    v
}

#[test]
fn coboundaries_are_windowed_solutions() {
    let window = DegreeWindow::new(4);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for degree in [-2, 0, 1] {
        for modulo_cc in [false, true] {
            let space = derivation_space(
                degree,
                window,
                DerivationOptions {
                    modulo_cc,
                    ..Default::default()
                },
            )
            .unwrap();
            for _ in 0..5 {
                let v = random_seed(&mut rng, degree, window.radius() - 2);
                if v.is_zero() {
                    continue;
                }
                let t = inner_derivation(&v, window).unwrap();
                assert!(space.contains(&t), "degree {degree}, v = {v}");
            }
            let mut broken = inner_derivation(&random_seed(&mut rng, degree, 1), window).unwrap();
            broken
                .values
                .insert(L(1), Tensor2::basis((L(1 + degree), L(0))));
            assert!(!space.contains(&broken) || broken.value(L(1)).is_zero());
        }
    }
}

#[test]
fn nonzero_degrees_are_inner_with_derived_sign() {
    let window = DegreeWindow::new(4);
    let core = window.shrink(2);
    for degree in [-1, 1, 2] {
        let space = derivation_space(degree, window, DerivationOptions::default()).unwrap();
        assert!(!space.solutions.is_empty());
        for d in &space.solutions {
            assert!(d.matches_closed_form(core));
            // The opposite sign fails whenever the solution is nonzero on the core.
            let nonzero = core.symbols().into_iter().any(|s| !d.value(s).is_zero());
            if nonzero {
                let gamma = d.value(L(0)).scaled(&rat(1, degree));
                let agrees = core
                    .symbols()
                    .into_iter()
                    .all(|s| d.value(s) == diag_act(&sym(s), &gamma));
                assert!(!agrees);
            }
        }
        let rep = solve_derivations(degree, window, false).unwrap();
        assert_eq!(rep.quotient_dim(), 0);
        assert!(rep.inner_are_cocycles);
    }
}

/// `x ↦ c⊗σ(x) − σ(x)⊗c` where `σ` is the identity on the `W_n` and kills
/// the `L_n` and `c`.
fn c_wedge_sigma(window: DegreeWindow) -> CobracketTable {
    let mut t = CobracketTable::zero(window);
    for s in window.symbols() {
        if let W(_) = s {
            t.set(s, wedge(C, s));
        }
    }
    t
}

#[test]
fn degree_zero_has_a_non_inner_derivation() {
    let window = DegreeWindow::new(6);
    let table = c_wedge_sigma(window);

    // It satisfies the derivation identity on every pair that fits, and is a
    // Lie bialgebra structure on the checkable band.
    let compat = check_compatibility(&table);
    assert!(compat.passed());
    assert!(compat.pairs_checked > 0);
    let rep = verify_bialgebra(&table, 4).unwrap();
    assert_eq!(rep.status, CheckStatus::Pass);

    // No degree-0 seed realizes it on the core: the classifier rejects it.
    assert_eq!(
        classify(&table),
        Err(CohomologyError::NoInnerRepresentative { degree: 0 })
    );

    // The windowed solver sees exactly this class.
    let small = DegreeWindow::new(4);
    let space = derivation_space(0, small, DerivationOptions::default()).unwrap();
    let as_derivation = DerivationTable {
        degree: 0,
        window: small,
        values: c_wedge_sigma(small).values,
        modulo_cc: QuotientFlag::EXACT,
    };
    assert!(space.contains(&as_derivation));
    let rep = solve_derivations(0, small, false).unwrap();
    assert_eq!(rep.quotient_dim(), 1);
    let rep = solve_derivations(0, small, true).unwrap();
    assert_eq!(rep.quotient_dim(), 2);
}

#[test]
fn window_guards() {
    for n in 0..4 {
        assert!(matches!(
            solve_derivations(0, DegreeWindow::new(n), true),
            Err(CohomologyError::WindowTooSmall { .. })
        ));
    }
    assert!(matches!(
        solve_invariants(0, DegreeWindow::new(2)),
        Err(CohomologyError::UnsupportedPower(0))
    ));
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Coef {
    /// Coefficient of `L_p ⊗ L_{-1-p}` in the image of `L_{-1}`.
    Minus(i64),
    /// Coefficient of `L_p ⊗ L_{1-p}` in the image of `L_1`.
    Plus(i64),
}

/// With `D(L_0) = 0`, `D(L_1)` supported on `L_{-1}⊗L_2` and `L_2⊗L_{-1}`, and
/// `D(L_{-1})` an arbitrary `L⊗L` combination, applying `D` to
/// `[L_{-1}, L_1] = -2 L_0` gives one relation per `L_p ⊗ L_{-p}`.
#[test]
fn l_minus_one_relations() {
    let cap = 6i64;
    let minus: Vec<i64> = (-cap..=cap).filter(|p| (-1 - p).abs() <= cap).collect();
    let plus = [-1i64, 2];
    let mut unknowns: Vec<Coef> = minus.iter().map(|&p| Coef::Minus(p)).collect();
    unknowns.extend(plus.iter().map(|&p| Coef::Plus(p)));

    // Rows assembled from the action.
    let mut acc: BTreeMap<Pair, Vec<(Coef, Rational)>> = BTreeMap::new();
    for &p in &minus {
        for (k, c) in &diag_act(&sym(L(1)), &Tensor2::basis((L(p), L(-1 - p)))) {
            acc.entry(*k).or_default().push((Coef::Minus(p), -c));
        }
    }
    for &p in &plus {
        for (k, c) in &diag_act(&sym(L(-1)), &Tensor2::basis((L(p), L(1 - p)))) {
            acc.entry(*k).or_default().push((Coef::Plus(p), c.clone()));
        }
    }
    let mut from_action = LinearSystem::new(unknowns.iter().copied());
    for row in acc.into_values() {
        from_action.add_row(row, int(0)).unwrap();
    }

    // The same relations written out coefficient by coefficient.
    let mut by_hand = LinearSystem::new(unknowns.iter().copied());
    for p in -cap..=cap + 1 {
        let mut row = Vec::new();
        if minus.contains(&(p - 1)) {
            row.push((Coef::Minus(p - 1), int(2 - p)));
        }
        if minus.contains(&p) {
            row.push((Coef::Minus(p), int(2 + p)));
        }
        if p == -1 {
            row.push((Coef::Plus(-1), int(3)));
        }
        if p == 1 {
            row.push((Coef::Plus(2), int(3)));
        }
        by_hand.add_row(row, int(0)).unwrap();
    }

    let a = from_action.nullspace();
    let b = by_hand.nullspace();
    assert_eq!(a, b);

    let idx = |c: Coef| unknowns.iter().position(|u| *u == c).unwrap();
    for v in &a {
        for &p in &minus {
            if !(-2..=1).contains(&p) {
                assert_eq!(v[idx(Coef::Minus(p))], int(0), "p = {p}");
            }
        }
        assert_eq!(
            &v[idx(Coef::Minus(-1))] + &v[idx(Coef::Minus(0))],
            int(0)
        );
        assert_eq!(
            int(3) * &v[idx(Coef::Plus(2))] + &v[idx(Coef::Minus(0))] + int(3) * &v[idx(Coef::Minus(1))],
            int(0)
        );
        assert_eq!(
            int(3) * &v[idx(Coef::Plus(-1))] + int(3) * &v[idx(Coef::Minus(-2))] - &v[idx(Coef::Minus(0))],
            int(0)
        );
    }
}

#[test]
fn skew_reduction_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let d = rng.gen_range(-3..=3);
        let a = random_seed(&mut rng, d, 3);
        let v = &a - &walg_core::twist(&a);
        let red = skew_reduce(&v);
        assert!(red.hypothesis_holds && red.in_image);
        let u = red.preimage.unwrap();
        assert_eq!(&u - &walg_core::twist(&u), v);
        assert!(red.obstruction.is_zero());
    }

    let sym_pair = Tensor2::from_terms([((L(1), W(-1)), int(1)), ((W(-1), L(1)), int(1))]);
    let red = skew_reduce(&sym_pair);
    assert!(!red.hypothesis_holds);
    assert!(!red.obstruction.is_zero());
    assert!(!is_skew(&red.obstruction) || red.obstruction.is_zero());

    let cc = Tensor2::basis((C, C));
    let strict = skew_reduce(&cc);
    assert!(strict.hypothesis_holds && !strict.in_image);
    let relaxed = skew_reduce_with(&cc, QuotientFlag::MODULO_CC);
    assert!(relaxed.hypothesis_holds && relaxed.in_image);
}

#[test]
fn classify_examples() {
    let w = DegreeWindow::new(5);
    let cert = classify(&CobracketTable::zero(w)).unwrap();
    assert!(cert.is_valid() && cert.r.is_zero());

    let mut bad = CobracketTable::zero(w);
    bad.set(L(1), Tensor2::basis((L(1), L(1))));
    assert!(matches!(classify(&bad), Err(CohomologyError::NotACocycle { .. })));

    let r = &wedge(L(0), W(1)) + &wedge(L(0), C).scaled(&rat(2, 3));
    let table = CobracketTable::from_r(&r, w);
    let cert = classify(&table).unwrap();
    assert!(cert.skew_ok && cert.cocycle_match.values().all(|&ok| ok));
    assert_eq!(cert.cybe_ok, walg_core::yang_baxter(&r).is_zero());
    assert_eq!(cert.slices.len(), 2);
    for s in w.shrink(2).symbols() {
        assert_eq!(diag_act(&sym(s), &cert.r), table.get(s).cloned().unwrap());
    }

    // A coboundary whose r fails the Yang-Baxter equation classifies to an
    // invalid certificate rather than an error.
    let table = CobracketTable::from_r(&wedge(L(1), L(-1)), w);
    let cert = classify(&table).unwrap();
    assert!(cert.skew_ok && !cert.cybe_ok && !cert.is_valid());
}
