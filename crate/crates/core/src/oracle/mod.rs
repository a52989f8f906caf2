//! Independent checks: a follower-basis bilevel solver, the failed certificate lifting for
//! three levels, fixed example instances and seeded generators.

pub mod bilevel;
pub mod demo;
pub mod examples;
pub mod random;

pub use bilevel::{basis_system, bilevel_basis_solve, BasisCertificate, BasisReport, StandardBilevel};
pub use demo::{naive_bilevel, naive_trilevel_demo, DemoRecord};
pub use random::{random_instance, Require};
