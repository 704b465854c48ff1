//! Minimal-relation census, triangulation recovery, weight fitting and the
//! aggregate report.

pub mod census;
pub mod fit;
pub mod propagation;
pub mod report;
pub mod triangulation;

pub use census::{jj_dims_check, relation_census, LayerCheck, RelationClass, RelationTypeReport};
pub use fit::{fit_weights, normalized};
pub use propagation::{propagation_check, PropagationReport};
pub use report::{gqt_report, FamilyGuess, GQTReport, ReportOptions, SCHEMA_VERSION};
pub use triangulation::{f_partition, find_all_triangulations, find_triangulation};
