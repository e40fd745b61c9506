pub mod algebra;
pub mod fixtures;
pub mod hochschild;
pub mod linalg;
pub mod modules;
pub mod mukai;
pub mod report;
pub mod scalars;
pub mod suites;
pub mod tqft;
