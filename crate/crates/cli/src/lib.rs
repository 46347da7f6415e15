//! Text formats and the command-line surface for the exact ℚ(i) model:
//! model files, the regular-logic formula language, seeded law suites with
//! JSON reporting, and lattice rendering.

pub mod formula;
pub mod lattice;
pub mod model;
pub mod report;
pub mod scan;

pub use formula::{
    check_entailment, eval_formula, format_formula, parse_formula, typecheck, Formula,
    FormulaError, TypedFormula,
};
pub use lattice::{lattice_graph, to_dot, LatticeError, LatticeGraph};
pub use model::{parse_model, Model, ModelError, NamedMorphism, NamedPredicate};
pub use report::{
    export_report, parse_report, run_law_suite, ExportError, ExportFormat, LawName, Report,
    SuiteConfig, SuiteReport, UnknownLaw,
};
