pub mod commands;
pub mod fixture;
pub mod report;
