//! Kernel for a small cubical type theory: the free de Morgan interval,
//! face-lattice cofibrations, an evaluator with composition and filling,
//! glueing, a bidirectional checker, and a batch CLI.

pub mod check;
pub mod comp;
pub mod eval;
pub mod face;
pub mod interval;
pub mod parse;
pub mod prelude;
pub mod printer;
pub mod readback;
pub mod selftest;
pub mod syntax;
pub mod value;

mod cli;

pub use cli::run_cli;
