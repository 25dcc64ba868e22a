mod predict;
mod report;
mod tables;

pub use predict::{candidate_fields, predict_even_growth_fields};
pub use report::{analyze, verification_flags, verify_report, AnalysisReport, GrowthRecord, GrowthSet, VerificationFlags};
pub use tables::{ClassificationTables, PHI1, PHI2, PHI_Q2, PHI_Q_2INF};
