//! Verb implementations behind the `walg` binary.
//!
//! Every verb returns an [`Outcome`]: the rendered report plus whether the
//! requested checks passed. Errors map to stable exit codes via
//! [`CliError::exit_code`].

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use walg_core::bialgebra::{BialgebraError, CheckStatus};
use walg_core::cohomology::{
    classify, skew_reduce_with, solve_derivations, solve_invariants, CohomologyError,
    InvariantBasis,
};
use walg_core::report::{to_json, verify_bialgebra, TextReport};
use walg_core::syntax::{parse_element, parse_table, parse_tensor2, SyntaxError};
use walg_core::tensor::wedge;
use walg_core::{
    bracket, cobracket_of_r, diag_act, mybe_check, AlgebraElement, BasisSymbol, CobracketTable,
    CybeReport, DegreeWindow, QuotientFlag, Tensor2, Tensor3,
};

/// Largest `--max-index` accepted by `search-r`.
pub const SEARCH_GUARD: i64 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Syntax(#[from] SyntaxError),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("--max-index {requested} exceeds the search guard {guard}")]
    GuardExceeded { requested: i64, guard: i64 },
    #[error("{0}")]
    WindowTooSmall(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::WindowTooSmall(_) => 3,
            _ => 2,
        }
    }
}

impl From<BialgebraError> for CliError {
    fn from(e: BialgebraError) -> Self {
        CliError::WindowTooSmall(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

fn render<T: Serialize + TextReport>(value: &T, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => to_json(value),
        ReportFormat::Text => value.render_text(),
    }
}

/// A single computed value, for the verbs that only evaluate.
#[derive(Serialize)]
struct ValueReport {
    result: String,
}

impl TextReport for ValueReport {
    fn render_text(&self) -> String {
        format!("{}\n", self.result)
    }
}

fn value(result: String, format: ReportFormat) -> Outcome {
    Outcome {
        output: render(&ValueReport { result }, format),
        passed: true,
    }
}

pub fn bracket_cmd(x: &str, y: &str, format: ReportFormat) -> Result<Outcome, CliError> {
    let x = parse_element(x)?;
    let y = parse_element(y)?;
    Ok(value(bracket(&x, &y).to_string(), format))
}

pub fn act_cmd(x: &str, t: &str, format: ReportFormat) -> Result<Outcome, CliError> {
    let x = parse_element(x)?;
    let t = parse_tensor2(t)?;
    Ok(value(diag_act(&x, &t).to_string(), format))
}

pub fn cobracket_cmd(r: &str, x: &str, format: ReportFormat) -> Result<Outcome, CliError> {
    let r = parse_tensor2(r)?;
    let x = parse_element(x)?;
    Ok(value(cobracket_of_r(&r, &x).to_string(), format))
}

pub fn cybe_check_cmd(r: &str, format: ReportFormat) -> Result<Outcome, CliError> {
    let report = mybe_check(&parse_tensor2(r)?);
    Ok(Outcome {
        passed: report.is_cybe,
        output: render(&report, format),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SymbolChecks {
    pub anticocomm: CheckStatus,
    pub cojacobi: CheckStatus,
    pub compat: CheckStatus,
}

/// Bialgebra verdict for a table, with the Yang-Baxter data when the table
/// came from an r-matrix.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub window: DegreeWindow,
    pub check_radius: i64,
    pub c_of_r: Option<Tensor3>,
    pub is_cybe: Option<bool>,
    pub per_symbol: BTreeMap<BasisSymbol, SymbolChecks>,
    pub pairs_checked: usize,
    pub pairs_skipped: usize,
    pub status: CheckStatus,
}

impl TextReport for VerifyReport {
    fn render_text(&self) -> String {
        let word = |s: CheckStatus| match s {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skipped",
        };
        let mut s = format!(
            "window {} / check radius {}\n",
            self.window.radius(),
            self.check_radius
        );
        if let (Some(c), Some(ok)) = (&self.c_of_r, self.is_cybe) {
            s += &format!("c(r) = {c}\nCYBE: {}\n", if ok { "yes" } else { "no" });
        }
        for (x, v) in &self.per_symbol {
            s += &format!(
                "  {:<6} anticocommutative: {:<7} co-Jacobi: {:<7} cocycle: {}\n",
                x.to_string(),
                word(v.anticocomm),
                word(v.cojacobi),
                word(v.compat)
            );
        }
        s += &format!(
            "cocycle pairs: {} checked, {} skipped\nstatus: {}\n",
            self.pairs_checked,
            self.pairs_skipped,
            word(self.status)
        );
        s
    }
}

pub enum TableSource<'a> {
    R(&'a str),
    Table(&'a str),
}

/// Default check radius leaves a band of two so co-Jacobi stays in scope.
pub fn default_check_radius(window: u32) -> i64 {
    i64::from(window.saturating_sub(2))
}

pub fn verify_bialgebra_cmd(
    source: TableSource<'_>,
    window: u32,
    check_radius: Option<i64>,
    format: ReportFormat,
) -> Result<Outcome, CliError> {
    let w = DegreeWindow::new(window);
    let (table, cybe) = match source {
        TableSource::R(text) => {
            let r = parse_tensor2(text)?;
            (CobracketTable::from_r(&r, w), Some(mybe_check(&r)))
        }
        TableSource::Table(text) => (parse_table(text, w)?, None),
    };
    let check_radius = check_radius.unwrap_or_else(|| default_check_radius(window));
    let rep = verify_bialgebra(&table, check_radius)?;
    let per_symbol = rep
        .coalgebra
        .per_symbol
        .iter()
        .map(|v| {
            let compat = rep
                .compatibility
                .per_symbol
                .get(&v.symbol)
                .copied()
                .unwrap_or(CheckStatus::Skipped);
            (
                v.symbol,
                SymbolChecks {
                    anticocomm: v.anticocomm,
                    cojacobi: v.cojacobi,
                    compat,
                },
            )
        })
        .collect();
    let report = VerifyReport {
        window: w,
        check_radius,
        c_of_r: cybe.as_ref().map(|c: &CybeReport| c.c_of_r.clone()),
        is_cybe: cybe.as_ref().map(|c| c.is_cybe),
        per_symbol,
        pairs_checked: rep.compatibility.pairs_checked,
        pairs_skipped: rep.compatibility.pairs_skipped,
        status: rep.status,
    };
    Ok(Outcome {
        passed: rep.status == CheckStatus::Pass,
        output: render(&report, format),
    })
}

fn cohomology_error(e: CohomologyError) -> CliError {
    match e {
        CohomologyError::WindowTooSmall { .. } => CliError::WindowTooSmall(e.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

pub fn derivations_cmd(
    degree: i64,
    window: u32,
    modulo_cc: bool,
    format: ReportFormat,
) -> Result<Outcome, CliError> {
    let report = solve_derivations(degree, DegreeWindow::new(window), modulo_cc)
        .map_err(cohomology_error)?;
    Ok(Outcome {
        passed: report.quotient_dim() == 0,
        output: render(&report, format),
    })
}

#[derive(Serialize)]
struct InvariantsReport {
    power: usize,
    window: DegreeWindow,
    dim: usize,
    basis: Vec<String>,
    only_central: bool,
}

impl TextReport for InvariantsReport {
    fn render_text(&self) -> String {
        let mut s = format!(
            "invariants of tensor power {} on window {}: dimension {}\n",
            self.power,
            self.window.radius(),
            self.dim
        );
        for b in &self.basis {
            s += &format!("  {b}\n");
        }
        s += &format!(
            "spanned by the central power: {}\n",
            if self.only_central { "yes" } else { "no" }
        );
        s
    }
}

pub fn invariants_cmd(power: usize, window: u32, format: ReportFormat) -> Result<Outcome, CliError> {
    let basis = solve_invariants(power, DegreeWindow::new(window)).map_err(cohomology_error)?;
    let only_central = match &basis {
        InvariantBasis::One(b) => *b == [AlgebraElement::symbol(BasisSymbol::C)],
        InvariantBasis::Two(b) => *b == [Tensor2::basis((BasisSymbol::C, BasisSymbol::C))],
        InvariantBasis::Three(b) => {
            *b == [Tensor3::basis((BasisSymbol::C, BasisSymbol::C, BasisSymbol::C))]
        }
    };
    let report = InvariantsReport {
        power,
        window: DegreeWindow::new(window),
        dim: basis.dim(),
        basis: basis.render(),
        only_central,
    };
    Ok(Outcome {
        passed: only_central,
        output: render(&report, format),
    })
}

pub fn skew_reduce_cmd(v: &str, modulo_cc: bool, format: ReportFormat) -> Result<Outcome, CliError> {
    let v = parse_tensor2(v)?;
    let quotient = if modulo_cc {
        QuotientFlag::MODULO_CC
    } else {
        QuotientFlag::EXACT
    };
    let red = skew_reduce_with(&v, quotient);
    Ok(Outcome {
        passed: red.hypothesis_holds && red.in_image,
        output: render(&red, format),
    })
}

#[derive(Serialize)]
struct Rejection {
    valid: bool,
    reason: String,
}

impl TextReport for Rejection {
    fn render_text(&self) -> String {
        format!("rejected: {}\nvalid: no\n", self.reason)
    }
}

pub fn classify_cmd(table: &str, window: u32, format: ReportFormat) -> Result<Outcome, CliError> {
    let table = parse_table(table, DegreeWindow::new(window))?;
    match classify(&table) {
        Ok(cert) => Ok(Outcome {
            passed: cert.is_valid(),
            output: render(&cert, format),
        }),
        Err(e @ CohomologyError::WindowTooSmall { .. }) => Err(cohomology_error(e)),
        Err(e) => Ok(Outcome {
            passed: false,
            output: render(
                &Rejection {
                    valid: false,
                    reason: e.to_string(),
                },
                format,
            ),
        }),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchHit {
    pub r: Tensor2,
    pub report: CybeReport,
}

#[derive(Serialize)]
struct SearchReport {
    max_index: i64,
    degree: Option<i64>,
    candidates: usize,
    satisfiers: Vec<SearchHit>,
}

impl TextReport for SearchReport {
    fn render_text(&self) -> String {
        let mut s = format!(
            "{} of {} elementary wedges with |index| <= {} satisfy CYBE\n",
            self.satisfiers.len(),
            self.candidates,
            self.max_index
        );
        for h in &self.satisfiers {
            s += &format!("  {}\n", h.r);
        }
        s
    }
}

/// Elementary wedges `x∧y` (with `x < y`) over symbols with
/// `|index| <= max_index` that satisfy CYBE, in symbol order. Not exhaustive
/// over general skew tensors. Returns the hits and the number of candidates.
pub fn search_r(max_index: i64, degree: Option<i64>) -> Result<(Vec<SearchHit>, usize), CliError> {
    if !(0..=SEARCH_GUARD).contains(&max_index) {
        return Err(CliError::GuardExceeded {
            requested: max_index,
            guard: SEARCH_GUARD,
        });
    }
    let symbols = DegreeWindow::new(max_index as u32).symbols();
    let mut candidates = 0;
    let mut hits = Vec::new();
    for (i, &x) in symbols.iter().enumerate() {
        for &y in &symbols[i + 1..] {
            if degree.is_some_and(|d| x.degree() + y.degree() != d) {
                continue;
            }
            candidates += 1;
            let r = wedge(x, y);
            let report = mybe_check(&r);
            if report.is_cybe {
                hits.push(SearchHit { r, report });
            }
        }
    }
    Ok((hits, candidates))
}

pub fn search_r_cmd(
    max_index: i64,
    degree: Option<i64>,
    format: ReportFormat,
) -> Result<Outcome, CliError> {
    let (satisfiers, candidates) = search_r(max_index, degree)?;
    let report = SearchReport {
        max_index,
        degree,
        candidates,
        satisfiers,
    };
    Ok(Outcome {
        passed: true,
        output: render(&report, format),
    })
}

pub fn read_input(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })
}
