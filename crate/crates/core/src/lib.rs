//! Exact symbolic engine for the W-algebra W(2,2).
//!
//! The algebra has basis `{L_n, W_n, c}` with
//!
//! ```text
//! [L_m, L_n] = (m - n) L_{m+n} + (m^3 - m)/12 δ_{m+n,0} c
//! [L_m, W_n] = (m - n) W_{m+n} + (m^3 - m)/12 δ_{m+n,0} c
//! ```
//!
//! and all other brackets zero. Coefficients are exact rationals throughout.
//!
//! Modules, bottom up:
//!
//! * [`algebra`]: basis symbols, elements, the bracket and the grading.
//! * [`tensor`]: tensor square/cube, twist and cyclic maps, the diagonal action.
//! * [`bialgebra`]: the Yang-Baxter operator, coboundary cobrackets, axiom checks.
//! * [`linalg`]: sparse fraction-free elimination over the rationals.
//! * [`cohomology`]: derivation spaces, invariants, skew reduction, classification.
//! * [`syntax`]: the text grammar for elements, tensors and cobracket tables.

pub mod algebra;
pub mod bialgebra;
pub mod cohomology;
pub mod combination;
pub mod linalg;
pub mod par;
pub mod rational;
pub mod report;
pub mod syntax;
pub mod tensor;

pub use algebra::{
    bracket, degree_of, generator_symbols, generators, AlgebraElement, BasisSymbol, Degree,
    DegreeWindow, GeneratorSet, Homogeneity,
};
pub use bialgebra::{
    check_coalgebra, check_cocycle_identity, check_compatibility, cobracket_of_r, mybe_check,
    yang_baxter, CobracketTable, CybeReport,
};
pub use cohomology::{
    classify, inner_derivation, skew_reduce, solve_derivations, solve_invariants,
    CohomologyReport, DerivationTable, TriangularCertificate,
};
pub use combination::Combination;
pub use rational::Rational;
pub use tensor::{
    cyclic, diag_act, diag_act3, reduce_mod_cc, skew_project, twist, QuotientFlag, Tensor2,
    Tensor3,
};
