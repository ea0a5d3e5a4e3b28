//! Exact arithmetic underneath the adelic machinery.

pub mod factor;
pub mod integer;
pub mod modp;
pub mod poly;

pub use factor::{factor, Factorization};
pub use poly::QPoly;
