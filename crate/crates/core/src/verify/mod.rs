pub mod fd;
pub mod suites;
