//! Machine-readable and human-readable reports.
//!
//! JSON output goes through [`serde_json::Value`], whose object map is
//! ordered, so keys come out sorted and the bytes are deterministic.

use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::DegreeWindow;
use crate::bialgebra::{
    check_coalgebra, check_compatibility, BialgebraError, CheckStatus, CobracketTable,
    CoalgebraVerdict, CompatibilityVerdict, CybeReport,
};
use crate::cohomology::{CohomologyReport, SkewReduction, TriangularCertificate};

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report types serialize to JSON");
    let mut s = serde_json::to_string_pretty(&v).expect("JSON value prints");
    s.push('\n');
    s
}

/// Anticocommutativity, co-Jacobi and the cocycle condition for one table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BialgebraReport {
    pub window: DegreeWindow,
    pub coalgebra: CoalgebraVerdict,
    pub compatibility: CompatibilityVerdict,
    pub status: CheckStatus,
}

pub fn verify_bialgebra(
    table: &CobracketTable,
    check_radius: i64,
) -> Result<BialgebraReport, BialgebraError> {
    let coalgebra = check_coalgebra(table, check_radius)?;
    let compatibility = check_compatibility(table);
    let mut status = if compatibility.passed() {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    for v in &coalgebra.per_symbol {
        status = status.and(v.anticocomm).and(v.cojacobi);
    }
    Ok(BialgebraReport {
        window: table.window,
        coalgebra,
        compatibility,
        status,
    })
}

fn status_word(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::Skipped => "skipped",
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Plain-text rendering for terminal output.
pub trait TextReport {
    fn render_text(&self) -> String;
}

impl TextReport for CybeReport {
    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "c(r) = {}", self.c_of_r);
        let _ = writeln!(s, "CYBE: {}", yes_no(self.is_cybe));
        let _ = writeln!(s, "MYBE: {}", yes_no(self.is_mybe()));
        for (g, w) in &self.mybe_witnesses {
            let _ = writeln!(s, "  {g} . c(r) = {w}");
        }
        s
    }
}

impl TextReport for BialgebraReport {
    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "window {} / check radius {}",
            self.window.radius(),
            self.coalgebra.check_radius
        );
        for v in &self.coalgebra.per_symbol {
            let _ = writeln!(
                s,
                "  {:<6} anticocommutative: {:<7} co-Jacobi: {}",
                v.symbol.to_string(),
                status_word(v.anticocomm),
                status_word(v.cojacobi)
            );
        }
        let c = &self.compatibility;
        let _ = writeln!(
            s,
            "cocycle: {} pairs checked, {} skipped, {} failures",
            c.pairs_checked,
            c.pairs_skipped,
            c.failures.len()
        );
        for f in c.failures.iter().take(10) {
            let _ = writeln!(s, "  ({}, {}): {}", f.x, f.y, f.defect);
        }
        let _ = writeln!(s, "status: {}", status_word(self.status));
        s
    }
}

impl TextReport for CohomologyReport {
    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "degree {} on window {} (core radius {}){}",
            self.degree,
            self.window.radius(),
            self.core_radius,
            if self.modulo_cc { ", modulo c⊗c" } else { "" }
        );
        let _ = writeln!(
            s,
            "derivations: {} on window, {} on core",
            self.dim_derivations_window, self.dim_derivations_core
        );
        let _ = writeln!(
            s,
            "inner:       {} on window, {} on core",
            self.dim_inner_window, self.dim_inner_core
        );
        let _ = writeln!(s, "outer (core): {}", self.quotient_dim());
        for t in &self.quotient_basis {
            for (x, v) in &t.values {
                if !v.is_zero() {
                    let _ = writeln!(s, "  {x} -> {v}");
                }
            }
        }
        s
    }
}

impl TextReport for SkewReduction {
    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "hypothesis: {}", yes_no(self.hypothesis_holds));
        if let Some(g) = self.failing_generator {
            let _ = writeln!(s, "failing generator: {g}");
        }
        let _ = writeln!(s, "in image of 1 - tau: {}", yes_no(self.in_image));
        if self.in_image {
            if let Some(u) = &self.preimage {
                let _ = writeln!(s, "preimage: {u}");
            }
        }
        let _ = writeln!(s, "obstruction: {}", self.obstruction);
        s
    }
}

impl TextReport for TriangularCertificate {
    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "r = {}", self.r);
        for sl in &self.slices {
            let _ = writeln!(s, "  slice {}: {}", sl.degree, sl.v);
        }
        let _ = writeln!(s, "skew: {}", yes_no(self.skew_ok));
        let _ = writeln!(s, "CYBE: {}", yes_no(self.cybe_ok));
        let bad: Vec<String> = self
            .cocycle_match
            .iter()
            .filter(|(_, ok)| !**ok)
            .map(|(x, _)| x.to_string())
            .collect();
        let _ = writeln!(
            s,
            "matches table on core radius {}: {}",
            self.core_radius,
            if bad.is_empty() {
                "yes".to_string()
            } else {
                format!("no ({})", bad.join(", "))
            }
        );
        let _ = writeln!(s, "valid: {}", yes_no(self.is_valid()));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BasisSymbol::*;
    use crate::tensor::wedge;

    #[test]
    fn json_keys_are_sorted() {
        let r = wedge(L(0), L(1));
        let json = to_json(&crate::bialgebra::mybe_check(&r));
        let c = json.find("\"c_of_r\"").unwrap();
        let i = json.find("\"is_cybe\"").unwrap();
        let m = json.find("\"mybe_witnesses\"").unwrap();
        assert!(c < i && i < m);
    }

    #[test]
    fn bialgebra_report_for_coboundary() {
        let w = DegreeWindow::new(4);
        let t = CobracketTable::from_r(&wedge(L(0), L(1)), w);
        let rep = verify_bialgebra(&t, 2).unwrap();
        assert_eq!(rep.status, CheckStatus::Pass);
        assert!(verify_bialgebra(&t, 5).is_err());
    }
}
