pub mod actions;
pub mod bsgroup;
pub mod exactnum;
pub mod report;
pub mod spaces;
pub mod stability;
pub mod stats;
pub mod vaes;
pub mod suites;
