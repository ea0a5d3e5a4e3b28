pub mod arith;
pub mod cli;
pub mod curve;
pub mod error;
pub mod field;
pub mod gap;
pub mod numeric;
pub mod parse;
pub mod system;
