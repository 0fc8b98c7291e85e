//! File formats, batch surveys, reports and mesh export.

mod export;
mod parse;
mod report;
mod survey;

pub use export::{export_mesh, Exportable, MeshFormat};
pub use parse::{parse_polytope_file, reflexive_2d_database, reflexive_3d_database, write_polytope_file, ParseOutcome, PolytopeRecord};
pub use report::{json_report, LIMITATIONS, SCHEMA};
pub use survey::{run_survey, ClassVerdict, SurveyCounts, SurveyReport, REFERENCE_CASE2_FAILURES, REFERENCE_SEGMENT_FAILURES};
