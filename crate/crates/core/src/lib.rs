//! Static detection of six object-oriented fault patterns in Java sources.
//!
//! Pipeline: [`parser`] turns files into syntax trees, [`model`] links them
//! into a class hierarchy with a method index, [`detectors`] report
//! [`Finding`]s, [`aggregate`] and [`cluster`] group them per class and per
//! error combination, and [`store`]/[`report`] persist and render the result.
//! [`scan`] runs everything over a directory.

pub mod aggregate;
pub mod ast;
pub mod catalog;
pub mod cluster;
pub mod detectors;
pub mod lexer;
pub mod model;
pub mod parser;
pub mod printer;
pub mod report;
pub mod scan;
pub mod seed;
pub mod store;

pub use aggregate::{aggregate, ClassRecord};
pub use catalog::ErrorCode;
pub use cluster::{cluster, Cluster};
pub use detectors::{run_all, Finding, FindingDetail, RuleSet};
pub use lexer::{tokenize, LexError, Token, TokenKind};
pub use model::{build_model, ClassHierarchy, ProgramModel};
pub use parser::{parse_source, parse_unit};
pub use report::{render_report, ReportFormat};
pub use scan::{scan, RunConfig, ScanError, ScanOutcome};
pub use seed::ExternalHierarchySeed;
pub use store::{load_store, save_store, AnalysisStore};
