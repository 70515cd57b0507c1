//! Polynomial arithmetic: univariate (root isolation, Sturm sequences) and
//! bivariate (resultants, gcd, zero sets, conic classification).

pub mod bi;
pub mod uni;
pub mod zeros;

pub use bi::BiPoly;
pub use uni::UniPoly;
