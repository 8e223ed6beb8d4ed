//! Exact-arithmetic analysis of elliptic surfaces over Q(t).
//!
//! A surface is presented by a Weierstrass pair `(A, B)` of polynomials with
//! rational coefficients, defining `y^2 = x^3 + A(t)x + B(t)`, together with a
//! declared degree frame `(m, n)` with `deg A <= m`, `deg B <= n`. The crate
//! classifies singular fibers at all places of Q(t) (including `t = infinity`),
//! computes trivial-lattice data and Mordell-Weil rank bounds via Shioda-Tate,
//! certifies non-torsion sections through the height pairing, performs
//! quadratic twists, and runs density experiments over integer coefficient
//! boxes.
//!
//! All core arithmetic is exact (arbitrary-precision rationals); the only
//! floating-point component is the Mahler-measure estimator, which carries an
//! explicit error estimate.

pub mod cli;
pub mod family;
pub mod kodaira;
pub mod mahler;
pub mod mwlattice;
pub mod poly;
pub mod report;
pub mod twist;
pub mod weierstrass;

mod error;

pub use error::{Error, Result};
pub use poly::{Poly, Rat, Valuation};
pub use weierstrass::WeierstrassPair;
