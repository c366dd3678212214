pub mod acceptance;
pub mod cache;
pub mod commands;
pub mod error;
pub mod format;
pub mod lvalues;
pub mod oracle;
pub mod parallel;
