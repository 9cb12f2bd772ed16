//! The Yang-Baxter operator, coboundary cobrackets and the Lie bialgebra
//! axioms checked on finite cobracket tables.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{bracket, generator_symbols, AlgebraElement, BasisSymbol, DegreeWindow, GeneratorSet};
use crate::par;
use crate::tensor::{cyclic_sum, diag_act, diag_act3, is_skew, Tensor2, Tensor3};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BialgebraError {
    #[error("check radius {requested} exceeds table radius {available}")]
    WindowTooSmall { requested: i64, available: i64 },
}

/// `c(r) = [r¹², r¹³] + [r¹², r²³] + [r¹³, r²³]`, expanded inside the tensor
/// cube: for `r = Σ aᵢ⊗bᵢ` it is
/// `Σᵢⱼ [aᵢ,aⱼ]⊗bᵢ⊗bⱼ + aᵢ⊗[bᵢ,aⱼ]⊗bⱼ + aᵢ⊗aⱼ⊗[bᵢ,bⱼ]`.
pub fn yang_baxter(r: &Tensor2) -> Tensor3 {
    let terms: Vec<_> = r.iter().map(|(k, c)| (*k, c.clone())).collect();
    let rows = par::map(&terms, |((ai, bi), ci)| {
        let mut out = Tensor3::zero();
        let ai_el = AlgebraElement::symbol(*ai);
        let bi_el = AlgebraElement::symbol(*bi);
        for ((aj, bj), cj) in &terms {
            let k = ci * cj;
            let aj_el = AlgebraElement::symbol(*aj);
            let bj_el = AlgebraElement::symbol(*bj);
            for (s, v) in &bracket(&ai_el, &aj_el) {
                out.add_term((*s, *bi, *bj), v * &k);
            }
            for (s, v) in &bracket(&bi_el, &aj_el) {
                out.add_term((*ai, *s, *bj), v * &k);
            }
            for (s, v) in &bracket(&bi_el, &bj_el) {
                out.add_term((*ai, *aj, *s), v * &k);
            }
        }
        out
    });
    rows.iter().fold(Tensor3::zero(), |mut acc, t| {
        acc += t;
        acc
    })
}

/// `Δ_r(x) = x · r`.
pub fn cobracket_of_r(r: &Tensor2, x: &AlgebraElement) -> Tensor2 {
    diag_act(x, r)
}

/// A cobracket given by its values on the basis symbols of a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CobracketTable {
    pub window: DegreeWindow,
    pub values: BTreeMap<BasisSymbol, Tensor2>,
}

impl CobracketTable {
    /// The zero cobracket on `window`.
    pub fn zero(window: DegreeWindow) -> Self {
        Self {
            window,
            values: window
                .symbols()
                .into_iter()
                .map(|s| (s, Tensor2::zero()))
                .collect(),
        }
    }

    /// The table of `Δ_r` on `window`.
    pub fn from_r(r: &Tensor2, window: DegreeWindow) -> Self {
        let symbols = window.symbols();
        let values = par::map(&symbols, |&s| cobracket_of_r(r, &AlgebraElement::symbol(s)));
        Self {
            window,
            values: symbols.into_iter().zip(values).collect(),
        }
    }

    pub fn get(&self, sym: BasisSymbol) -> Option<&Tensor2> {
        self.values.get(&sym)
    }

    pub fn set(&mut self, sym: BasisSymbol, value: Tensor2) {
        self.values.insert(sym, value);
    }

    /// Linear extension to an element; `None` if some symbol is outside the table.
    pub fn apply(&self, x: &AlgebraElement) -> Option<Tensor2> {
        let mut out = Tensor2::zero();
        for (s, c) in x {
            out.add_scaled(self.get(*s)?, c);
        }
        Some(out)
    }

    /// `(1⊗Δ)t`; `None` if a second factor of `t` is outside the table.
    pub fn apply_second(&self, t: &Tensor2) -> Option<Tensor3> {
        let mut out = Tensor3::zero();
        for ((a, b), c) in t {
            for ((p, q), d) in self.get(*b)? {
                out.add_term((*a, *p, *q), c * d);
            }
        }
        Some(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    fn from_bool(ok: bool) -> Self {
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }

    /// Combines two statuses: any failure fails, otherwise any skip skips.
    pub fn and(self, other: CheckStatus) -> CheckStatus {
        use CheckStatus::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Skipped, _) | (_, Skipped) => Skipped,
            _ => Pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoalgebraSymbolVerdict {
    pub symbol: BasisSymbol,
    pub anticocomm: CheckStatus,
    pub cojacobi: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoalgebraVerdict {
    pub check_radius: i64,
    pub per_symbol: Vec<CoalgebraSymbolVerdict>,
}

impl CoalgebraVerdict {
    pub fn all_pass(&self) -> bool {
        self.per_symbol
            .iter()
            .all(|v| v.anticocomm == CheckStatus::Pass && v.cojacobi == CheckStatus::Pass)
    }

    pub fn get(&self, sym: BasisSymbol) -> Option<&CoalgebraSymbolVerdict> {
        self.per_symbol.iter().find(|v| v.symbol == sym)
    }
}

/// Checks anticocommutativity and co-Jacobi on every table symbol with
/// `|index| <= check_radius`. Co-Jacobi is skipped where `(1⊗Δ)Δ(x)` needs a
/// symbol outside the table.
pub fn check_coalgebra(
    table: &CobracketTable,
    check_radius: i64,
) -> Result<CoalgebraVerdict, BialgebraError> {
    if check_radius > table.window.radius() {
        return Err(BialgebraError::WindowTooSmall {
            requested: check_radius,
            available: table.window.radius(),
        });
    }
    let symbols: Vec<BasisSymbol> = DegreeWindow::new(check_radius as u32).symbols();
    let per_symbol = par::map(&symbols, |&s| {
        let delta = table
            .get(s)
            .cloned()
            .unwrap_or_else(Tensor2::zero);
        let cojacobi = match table.apply_second(&delta) {
            Some(t) => CheckStatus::from_bool(cyclic_sum(&t).is_zero()),
            None => CheckStatus::Skipped,
        };
        CoalgebraSymbolVerdict {
            symbol: s,
            anticocomm: CheckStatus::from_bool(is_skew(&delta)),
            cojacobi,
        }
    });
    Ok(CoalgebraVerdict {
        check_radius,
        per_symbol,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairFailure {
    pub x: BasisSymbol,
    pub y: BasisSymbol,
    /// `Δ([x,y]) − x·Δ(y) + y·Δ(x)`.
    pub defect: Tensor2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityVerdict {
    /// Pairs `x < y` checked (those whose bracket stays in the window).
    pub pairs_checked: usize,
    pub pairs_skipped: usize,
    pub failures: Vec<PairFailure>,
    /// Per symbol: fail if it occurs in a failing pair, pass otherwise.
    pub per_symbol: BTreeMap<BasisSymbol, CheckStatus>,
}

impl CompatibilityVerdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verifies `Δ([x,y]) = x·Δ(y) − y·Δ(x)` for all window pairs whose bracket
/// stays in the window.
pub fn check_compatibility(table: &CobracketTable) -> CompatibilityVerdict {
    let symbols = table.window.symbols();
    let pairs: Vec<(BasisSymbol, BasisSymbol)> = symbols
        .iter()
        .enumerate()
        .flat_map(|(i, &x)| symbols[i + 1..].iter().map(move |&y| (x, y)))
        .collect();
    let results = par::map(&pairs, |&(x, y)| {
        let xe = AlgebraElement::symbol(x);
        let ye = AlgebraElement::symbol(y);
        let lhs = table.apply(&bracket(&xe, &ye))?;
        let dx = table.get(x)?;
        let dy = table.get(y)?;
        let defect = &(&lhs - &diag_act(&xe, dy)) + &diag_act(&ye, dx);
        Some(defect)
    });
    let mut failures = Vec::new();
    let mut skipped = 0;
    let mut per_symbol: BTreeMap<BasisSymbol, CheckStatus> =
        symbols.iter().map(|&s| (s, CheckStatus::Pass)).collect();
    for (&(x, y), res) in pairs.iter().zip(results) {
        match res {
            None => skipped += 1,
            Some(defect) if !defect.is_zero() => {
                per_symbol.insert(x, CheckStatus::Fail);
                per_symbol.insert(y, CheckStatus::Fail);
                failures.push(PairFailure { x, y, defect });
            }
            Some(_) => {}
        }
    }
    CompatibilityVerdict {
        pairs_checked: pairs.len() - skipped,
        pairs_skipped: skipped,
        failures,
        per_symbol,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleIdentity {
    /// `(1+ξ+ξ²)(1⊗Δ_r)Δ_r(x)`.
    pub lhs: Tensor3,
    /// `x · c(r)`.
    pub rhs: Tensor3,
    pub equal: bool,
}

/// Evaluates both sides of `(1+ξ+ξ²)(1⊗Δ_r)Δ_r(x) = x·c(r)` independently.
pub fn check_cocycle_identity(r: &Tensor2, x: &AlgebraElement) -> CocycleIdentity {
    let delta_x = cobracket_of_r(r, x);
    let mut inner = Tensor3::zero();
    for ((a, b), c) in &delta_x {
        for ((p, q), d) in &cobracket_of_r(r, &AlgebraElement::symbol(*b)) {
            inner.add_term((*a, *p, *q), c * d);
        }
    }
    let lhs = cyclic_sum(&inner);
    let rhs = diag_act3(x, &yang_baxter(r));
    let equal = lhs == rhs;
    CocycleIdentity { lhs, rhs, equal }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CybeReport {
    pub c_of_r: Tensor3,
    pub is_cybe: bool,
    /// `g · c(r)` for each generator `g` of the full generating set.
    pub mybe_witnesses: BTreeMap<BasisSymbol, Tensor3>,
}

impl CybeReport {
    /// Whether every generator annihilates `c(r)`.
    pub fn is_mybe(&self) -> bool {
        self.mybe_witnesses.values().all(Tensor3::is_zero)
    }
}

pub fn mybe_check(r: &Tensor2) -> CybeReport {
    let c_of_r = yang_baxter(r);
    let mybe_witnesses = generator_symbols(GeneratorSet::Full)
        .into_iter()
        .map(|g| (g, diag_act3(&AlgebraElement::symbol(g), &c_of_r)))
        .collect();
    CybeReport {
        is_cybe: c_of_r.is_zero(),
        c_of_r,
        mybe_witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::BasisSymbol::*;
    use super::*;
    use crate::rational::int;
    use crate::tensor::wedge;

    fn sym(s: BasisSymbol) -> AlgebraElement {
        AlgebraElement::symbol(s)
    }

    #[test]
    fn yang_baxter_trivial_cases() {
        assert!(yang_baxter(&Tensor2::zero()).is_zero());
        assert!(yang_baxter(&Tensor2::basis((C, C))).is_zero());
        assert!(yang_baxter(&wedge(L(0), L(1))).is_zero());
        assert!(!yang_baxter(&wedge(L(1), L(-1))).is_zero());
    }

    #[test]
    fn cobracket_examples() {
        let r = wedge(L(0), L(1));
        assert_eq!(cobracket_of_r(&r, &sym(L(0))), -&r);
        assert!(cobracket_of_r(&r, &sym(C)).is_zero());
        let r = wedge(L(0), C);
        for n in -4..=4 {
            let want = Tensor2::from_terms([((L(n), C), int(n)), ((C, L(n)), int(-n))]);
            assert_eq!(cobracket_of_r(&r, &sym(L(n))), want);
        }
    }

    #[test]
    fn coalgebra_of_triangular_r() {
        let table = CobracketTable::from_r(&wedge(L(0), L(1)), DegreeWindow::new(6));
        let v = check_coalgebra(&table, 3).unwrap();
        assert!(v.all_pass());
        assert!(check_coalgebra(&CobracketTable::zero(DegreeWindow::new(3)), 3)
            .unwrap()
            .all_pass());
        assert!(matches!(
            check_coalgebra(&table, 7),
            Err(BialgebraError::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn symmetric_image_fails_anticocommutativity() {
        let mut table = CobracketTable::zero(DegreeWindow::new(3));
        table.set(L(1), Tensor2::basis((L(0), L(0))));
        let v = check_coalgebra(&table, 3).unwrap();
        assert_eq!(v.get(L(1)).unwrap().anticocomm, CheckStatus::Fail);
        assert_eq!(v.get(L(0)).unwrap().anticocomm, CheckStatus::Pass);
    }

    #[test]
    fn cojacobi_skips_outside_table() {
        let table = CobracketTable::from_r(&wedge(L(0), L(1)), DegreeWindow::new(3));
        let v = check_coalgebra(&table, 3).unwrap();
        // Δ(L_3) involves L_4 in its second factor.
        assert_eq!(v.get(L(3)).unwrap().cojacobi, CheckStatus::Skipped);
        assert!(!v.all_pass());
    }

    #[test]
    fn compatibility_examples() {
        let w = DegreeWindow::new(6);
        let table = CobracketTable::from_r(&wedge(L(0), W(1)), w);
        assert!(check_compatibility(&table).passed());

        let mut table = CobracketTable::zero(w);
        for n in -6..=6i64 {
            table.set(L(n), Tensor2::from_terms([((L(n), C), int(n)), ((C, L(n)), int(-n))]));
            table.set(W(n), Tensor2::from_terms([((W(n), C), int(n)), ((C, W(n)), int(-n))]));
        }
        assert!(check_compatibility(&table).passed());
        assert_eq!(table, CobracketTable::from_r(&wedge(L(0), C), w));

        let mut table = CobracketTable::zero(w);
        table.set(L(1), Tensor2::basis((L(1), L(1))));
        let v = check_compatibility(&table);
        assert!(!v.passed());
        assert!(v.failures.iter().any(|f| (f.x, f.y) == (L(0), L(1))));
    }

    #[test]
    fn cocycle_identity_trivial_cases() {
        let r = wedge(L(0), L(1));
        let id = check_cocycle_identity(&r, &sym(L(2)));
        assert!(id.equal && id.lhs.is_zero());
        let r = wedge(L(1), L(-1));
        let id = check_cocycle_identity(&r, &sym(C));
        assert!(id.equal && id.lhs.is_zero());
        let id = check_cocycle_identity(&r, &sym(L(0)));
        assert!(id.equal);
    }

    #[test]
    fn mybe_examples() {
        let rep = mybe_check(&wedge(L(0), W(1)));
        assert!(rep.is_cybe && rep.is_mybe());
        assert!(mybe_check(&Tensor2::basis((C, C))).is_cybe);
        let rep = mybe_check(&wedge(L(1), L(-1)));
        assert!(!rep.is_cybe && !rep.is_mybe());
    }
}
