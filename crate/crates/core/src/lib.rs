//! Exact arithmetic engine for the classical multiple orthogonal polynomials
//! (Laguerre of the first kind, Jacobi–Piñeiro, Hahn) of types I and II.
//!
//! * [`exact`]: rationals, Pochhammer symbols, formal Γ products.
//! * [`hypergeo`]: terminating `pFq` and Kampé de Fériet series and identity checks.
//! * [`families`]: explicit coefficient formulas for the three families.
//! * [`contour`]: residue sums of the contour-integral representations.
//! * [`oracle`]: independent ground truth from moments and exact linear algebra.

pub mod contour;
pub mod error;
pub mod exact;
pub mod families;
pub mod hypergeo;
pub mod oracle;

pub use error::{Error, Result};
